#pragma once

#include <stdexcept>
#include <string>

namespace pinfloer {

/// Malformed or inconsistent caller data (bad dimensions, non-unit vectors,
/// unreadable files). CLI maps this to exit code 2.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation-level failure: an infeasible constraint system, a violated
/// invariant discovered mid-run. CLI maps this to exit code 1.
class computation_error : public std::runtime_error {
public:
  explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pinfloer

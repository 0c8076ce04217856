#pragma once

#include <stdexcept>
#include <string>

namespace acat {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition/usage violations (bad arguments, mismatched rings, ...).
struct usage_error : error {
  explicit usage_error(const std::string& what) : error(what) {}
};

// Internal consistency failures (d^2 != 0, relation residuals, ...).
// Raised when constructed data falsifies an invariant the library promises.
struct integrity_error : error {
  explicit integrity_error(const std::string& what) : error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw usage_error(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw integrity_error(msg);
}

}  // namespace acat

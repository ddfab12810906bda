#pragma once

#include <stdexcept>
#include <string>

namespace isich {

// Bad user-supplied configuration or parameters. CLI exit code 1.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid data fed to a fitting or analysis routine.
class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (divergence, non-convergence, non-finite state).
// CLI exit code 2.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isich

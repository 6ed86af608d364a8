#ifndef QEMBED_ERRORS_HPP
#define QEMBED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qembed {

// Invalid options, out-of-range parameters, violated call contracts.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Missing, unreadable or malformed data and model files. Exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric routine cannot produce a finite result. Exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qembed

#endif  // QEMBED_ERRORS_HPP

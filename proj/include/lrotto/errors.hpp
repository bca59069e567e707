#pragma once

#include <stdexcept>
#include <string>

namespace lrotto {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind { Usage = 2, Io = 3, Numeric = 4, Domain = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

// Invalid argument outside an operation's mathematical domain (poles, gapless
// ramps, nonconvergent series parameters, out-of-range distances).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

// Malformed configuration: bad shapes, conflicting parameters, invalid grids.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace lrotto

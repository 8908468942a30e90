#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace anisolab {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value lies outside the range where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A vector argument has the wrong number of entries.
class ArityError : public Error {
 public:
  using Error::Error;
};

// Invalid grid, run or campaign configuration. Carries every violation found.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(message), violations_{message} {}
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

// Reading external data (initial profiles, snapshots, manifests) failed.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// The explicit integrator produced a non-finite value.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& message, double time)
      : Error(message), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace anisolab

#pragma once

#include <stdexcept>
#include <string>

namespace uncoordsim {

/// A scenario or sweep description violates one of its invariants.
/// `path()` names the offending field, e.g. "policy.k".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The model reached a state that should be impossible (scheduling in the
/// past, completing on an idle executor, ...). Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace uncoordsim

#pragma once

#include <stdexcept>
#include <string>

namespace sq3 {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested cutoff cannot hold the state within the truncation budget.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int suggested_cutoff)
      : std::runtime_error(what), suggested_cutoff_(suggested_cutoff) {}

  int suggested_cutoff() const noexcept { return suggested_cutoff_; }

 private:
  int suggested_cutoff_;
};

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method hit its work budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sq3

#pragma once

#include <stdexcept>
#include <string>

namespace cinf {

/// Precondition or parameter violation detected at a public entry point.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two signals (or a signal and a design) disagree on length or sample rate.
class MismatchError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Cross-correlation alignment found no peak inside the search window.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pipeline stage rejected its input; carries the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Malformed file or config document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cinf

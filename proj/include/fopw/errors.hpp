// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fopw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Some vertex occurs in more bags than the declared bound allows.
class OccurrenceBoundError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A pigeonhole search found no repeated block inside its window.
class SearchError : public Error {
 public:
  using Error::Error;
};

/// A computed isomorphism witness failed re-validation.
class WitnessError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `offset` is the 1-based column (or line, for the
/// line-oriented file formats) where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A lab-mode simplification step could not be realized with the configured
/// thresholds. `step` names the sub-step that failed.
class LabStepError : public Error {
 public:
  LabStepError(std::string step, const std::string& what)
      : Error(step + ": " + what), step_(std::move(step)) {}

  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

}  // namespace fopw

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace difnet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition (mismatched URL, bad
/// parameter, missing class, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An interaction event whose fields contradict its interaction type.
class MalformedEventError : public InputError {
 public:
  using InputError::InputError;
};

/// Operation requires at least one node.
class EmptyGraphError : public InputError {
 public:
  EmptyGraphError() : InputError("network has no nodes") {}
};

/// A file that does not parse under its declared format. Carries the
/// 1-based line number of the offending line (0 when not line-specific).
class FormatError : public Error {
 public:
  FormatError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs the sink for non-fatal diagnostics and returns the previous one.
/// The default sink prints to stderr. Passing an empty handler restores it.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace difnet

#include "difnet/error.hpp"

#include <iostream>
#include <mutex>

namespace difnet {

namespace {

std::mutex warning_mutex;

void print_to_stderr(std::string_view message) {
  std::cerr << "warning: " << message << '\n';
}

WarningHandler& current_handler() {
  static WarningHandler handler = print_to_stderr;
  return handler;
}

std::string format_location(const std::string& file, std::size_t line,
                            const std::string& what) {
  std::string out = file.empty() ? std::string("<input>") : file;
  if (line > 0) {
    out += ":" + std::to_string(line);
  }
  return out + ": " + what;
}

}  // namespace

FormatError::FormatError(std::string file, std::size_t line,
                         const std::string& what)
    : Error(format_location(file, line, what)),
      file_(std::move(file)),
      line_(line) {}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(warning_mutex);
  WarningHandler previous = std::move(current_handler());
  current_handler() = handler ? std::move(handler) : print_to_stderr;
  return previous;
}

void warn(std::string_view message) {
  std::lock_guard lock(warning_mutex);
  current_handler()(message);
}

}  // namespace difnet

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "difnet/error.hpp"

namespace testutil {

/// Records warnings instead of printing them while alive.
struct WarningCapture {
  std::vector<std::string> messages;
  difnet::WarningHandler previous;

  WarningCapture() {
    previous = difnet::set_warning_handler(
        [this](std::string_view m) { messages.emplace_back(m); });
  }
  ~WarningCapture() { difnet::set_warning_handler(previous); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;
};

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("difnet_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil

#pragma once

// Process-wide warning sink for non-fatal numerical conditions
// (truncation leakage, under-resolved kernels).

#include <functional>
#include <string>
#include <vector>

namespace advdiff {

using WarningHandler = std::function<void(const std::string&)>;

/// Routes a warning to the installed handler (default: stderr).
void warn(const std::string& message);

/// Installs `handler`; returns the previous one. An empty handler silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

/// Collects warnings for the lifetime of the object, restoring the previous handler afterwards.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace advdiff

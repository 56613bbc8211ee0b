#pragma once

#include <functional>
#include <string_view>

namespace hetnet {

using LogSink = std::function<void(std::string_view)>;

// Warnings go to std::clog unless a sink is installed. Thread-safe.
void log_warning(std::string_view message);

// Installs `sink` and returns the previous one (empty = std::clog).
LogSink set_log_sink(LogSink sink);

}  // namespace hetnet

#include "hetnet/log.hpp"

#include <iostream>
#include <mutex>

namespace hetnet {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

LogSink& current_sink() {
    static LogSink sink;
    return sink;
}

}  // namespace

void log_warning(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (current_sink()) {
        current_sink()(message);
    } else {
        std::clog << "warning: " << message << '\n';
    }
}

LogSink set_log_sink(LogSink sink) {
    std::lock_guard lock(sink_mutex());
    return std::exchange(current_sink(), std::move(sink));
}

}  // namespace hetnet

#include "wavescat/types.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace wavescat {

namespace {
std::mutex g_warn_mutex;
WarnHandler g_warn_handler;  // empty -> stderr
}  // namespace

void warn(const std::string& message) {
    std::lock_guard<std::mutex> lock(g_warn_mutex);
    if (g_warn_handler) {
        g_warn_handler(message);
    } else {
        std::cerr << "warning: " << message << std::endl;
    }
}

WarnHandler set_warn_handler(WarnHandler handler) {
    std::lock_guard<std::mutex> lock(g_warn_mutex);
    std::swap(g_warn_handler, handler);
    return handler;
}

}  // namespace wavescat

#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>
#include <string_view>

namespace nsskit::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Verbosity from NSSKIT_LOG (error|warn|info|debug or 0-3); warn by default.
inline Level threshold() {
    static const Level level = [] {
        const char* env = std::getenv("NSSKIT_LOG");
        if (!env) return Level::Warn;
        std::string_view v(env);
        if (v == "error" || v == "0") return Level::Error;
        if (v == "info" || v == "2") return Level::Info;
        if (v == "debug" || v == "3") return Level::Debug;
        return Level::Warn;
    }();
    return level;
}

inline void write(Level level, std::string_view msg) {
    if (static_cast<int>(level) > static_cast<int>(threshold())) return;
    static std::mutex mu;
    static const char* tags[] = {"error", "warn", "info", "debug"};
    std::lock_guard lock(mu);
    std::cerr << "[nsskit " << tags[static_cast<int>(level)] << "] " << msg << '\n';
}

inline void error(std::string_view msg) { write(Level::Error, msg); }
inline void warn(std::string_view msg) { write(Level::Warn, msg); }
inline void info(std::string_view msg) { write(Level::Info, msg); }
inline void debug(std::string_view msg) { write(Level::Debug, msg); }

}  // namespace nsskit::log

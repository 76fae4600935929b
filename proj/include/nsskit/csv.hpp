#pragma once

#include <charconv>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace nsskit::csv {

/// Shortest round-trippable representation, independent of the C locale.
inline std::string format(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

/// Writes a comma-joined row followed by '\n'.
class RowWriter {
public:
    explicit RowWriter(std::ostream& os) : os_(os) {}

    RowWriter& operator<<(double v) { return field(format(v)); }
    RowWriter& operator<<(int v) { return field(std::to_string(v)); }
    RowWriter& operator<<(long v) { return field(std::to_string(v)); }
    RowWriter& operator<<(std::string_view s) { return field(s); }
    RowWriter& operator<<(const char* s) { return field(s); }

    void end() {
        os_ << '\n';
        first_ = true;
    }

private:
    RowWriter& field(std::string_view s) {
        if (!first_) os_ << ',';
        os_ << s;
        first_ = false;
        return *this;
    }

    std::ostream& os_;
    bool first_ = true;
};

}  // namespace nsskit::csv

#pragma once

// Structured text reports: one `key: value` line per field in insertion
// order, then free-form `# ` comment lines.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wep/matrix.hpp"

namespace wep {

class Report {
public:
    void add(std::string_view key, std::string_view value);
    void add(std::string_view key, const char* value) { add(key, std::string_view(value)); }
    void add(std::string_view key, double value);
    void add(std::string_view key, bool value);
    void add(std::string_view key, std::size_t value);
    void add(std::string_view key, int value) { add(key, static_cast<std::size_t>(value)); }
    void add_tolerance(const Tolerance& tol);
    void comment(std::string_view text);

    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> fields_;
    std::vector<std::string> comments_;
};

}  // namespace wep

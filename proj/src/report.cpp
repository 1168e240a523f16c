#include "wep/report.hpp"

#include <cstdio>

namespace wep {

void Report::add(std::string_view key, std::string_view value) { fields_.emplace_back(key, value); }

void Report::add(std::string_view key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", value);
    add(key, std::string_view(buf));
}

void Report::add(std::string_view key, bool value) { add(key, std::string_view(value ? "true" : "false")); }

void Report::add(std::string_view key, std::size_t value) { add(key, std::string_view(std::to_string(value))); }

void Report::add_tolerance(const Tolerance& tol) {
    add("tol.rank_rel", tol.rank_rel);
    add("tol.residual_rel", tol.residual_rel);
    add("tol.herm_abs", tol.herm_abs);
}

void Report::comment(std::string_view text) { comments_.emplace_back(text); }

std::string Report::str() const {
    std::string out;
    for (const auto& [k, v] : fields_) out += k + ": " + v + "\n";
    for (const auto& c : comments_) out += "# " + c + "\n";
    return out;
}

}  // namespace wep

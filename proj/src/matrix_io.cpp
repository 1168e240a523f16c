#include "wep/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wep {

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& field, const std::string& msg) {
    std::string where(source);
    if (line) where += ":" + std::to_string(line);
    if (!field.empty()) where += ": field '" + field + "'";
    throw ParseError(where + ": " + msg);
}

// Line on which the n-th top-level data pair starts, for error context.
std::size_t pair_line(std::string_view text, std::size_t index) {
    const std::size_t key = text.find("\"data\"");
    if (key == std::string_view::npos) return 0;
    std::size_t pos = text.find('[', key);
    if (pos == std::string_view::npos) return 0;
    int depth = 0;
    std::size_t seen = 0;
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (text[i] == '[') {
            if (++depth == 2 && seen++ == index) return line_of(text, i);
        } else if (text[i] == ']') {
            if (--depth == 0) break;
        }
    }
    return line_of(text, pos);
}

std::size_t read_dim(const nlohmann::json& doc, const char* key, std::string_view text, std::string_view source) {
    const std::size_t line = [&] {
        const std::size_t p = text.find(std::string("\"") + key + "\"");
        return p == std::string_view::npos ? std::size_t{0} : line_of(text, p);
    }();
    if (!doc.contains(key)) fail(source, 0, key, "missing");
    const auto& v = doc[key];
    if (!v.is_number_integer() && !v.is_number_unsigned()) fail(source, line, key, "expected a non-negative integer");
    if (v.is_number_integer() && v.get<long long>() < 0) fail(source, line, key, "expected a non-negative integer");
    return v.get<std::size_t>();
}

}  // namespace

CMatrix parse_matrix(std::string_view text, std::string_view source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        fail(source, line_of(text, byte), "", "syntax error: " + std::string(e.what()));
    }
    if (!doc.is_object()) fail(source, 1, "", "expected an object with rows, cols, data");
    const std::size_t rows = read_dim(doc, "rows", text, source);
    const std::size_t cols = read_dim(doc, "cols", text, source);
    if (!doc.contains("data")) fail(source, 0, "data", "missing");
    const auto& data = doc["data"];
    if (!data.is_array()) fail(source, pair_line(text, 0), "data", "expected an array of [re, im] pairs");
    if (data.size() != rows * cols) {
        fail(source, pair_line(text, 0), "data",
             "has " + std::to_string(data.size()) + " entries, expected rows*cols = " + std::to_string(rows * cols));
    }
    std::vector<cplx> entries;
    entries.reserve(data.size());
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto& pair = data[k];
        const std::string field = "data[" + std::to_string(k) + "]";
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            fail(source, pair_line(text, k), field, "expected [re, im] with two numbers");
        }
        const double re = pair[0].get<double>(), im = pair[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) fail(source, pair_line(text, k), field, "non-finite value");
        entries.emplace_back(re, im);
    }
    return CMatrix(rows, cols, std::move(entries));
}

CMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str(), path.string());
}

std::string format_matrix(const CMatrix& a) {
    std::string out = "{\n  \"rows\": " + std::to_string(a.rows()) + ",\n  \"cols\": " + std::to_string(a.cols()) +
                      ",\n  \"data\": [";
    char buf[96];
    for (std::size_t i = 0; a.size() && i < a.rows(); ++i) {
        out += i == 0 ? "\n    " : ",\n    ";
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx z = a(i, j);
            std::snprintf(buf, sizeof buf, "%s[%.16e, %.16e]", j == 0 ? "" : ", ", z.real(), z.imag());
            out += buf;
        }
    }
    out += a.size() ? "\n  ]\n}\n" : "]\n}\n";
    return out;
}

void write_matrix(const std::filesystem::path& path, const CMatrix& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path.string() + ": cannot open for writing");
    out << format_matrix(a);
    if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace wep

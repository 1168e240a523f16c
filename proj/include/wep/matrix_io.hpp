#pragma once

// Matrix files: {"rows": R, "cols": C, "data": [[re, im], ...]} with the data
// row-major. Values are written with 17 significant digits, so a written
// matrix re-parses to identical bits.

#include <filesystem>
#include <string>
#include <string_view>

#include "wep/matrix.hpp"

namespace wep {

/// Malformed matrix file. The message carries the line and field.
class ParseError : public Error {
public:
    using Error::Error;
};

CMatrix parse_matrix(std::string_view text, std::string_view source = "<string>");
CMatrix read_matrix(const std::filesystem::path& path);

std::string format_matrix(const CMatrix& a);
void write_matrix(const std::filesystem::path& path, const CMatrix& a);

}  // namespace wep

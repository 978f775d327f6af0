#pragma once

// Text and JSON files holding a plane code of PG(5, q).
//
// Text layout: header lines "key value...", then one record per plane: the
// 3 x 6 echelon matrix as 18 canonical field integers, optionally followed by
// a provenance tag and a whitespace-free datum.  Records are sorted.

#include <stdexcept>
#include <string>
#include <string_view>

#include "quadcode/construction.hpp"

namespace quadcode {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FileFormat { Text, Json };

struct CodeFile {
    Code code;
    std::string construction = "quadric-veronese";
};

inline constexpr int kCodeFileVersion = 1;

/// Planes are written in sorted order regardless of their order in `f.code`.
std::string serialize(const CodeFile& f, FileFormat fmt = FileFormat::Text);
/// Detects the format from the first non-blank character.  Throws ParseError.
CodeFile parse_code_file(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace quadcode

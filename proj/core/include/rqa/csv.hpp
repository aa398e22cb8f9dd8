#pragma once

#include <filesystem>
#include <string>

namespace rqa {

// Decimal with 12 significant digits; round-trips through parsing.
std::string format_number(double v);

// Write via a temp file in the same directory, then rename into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace rqa

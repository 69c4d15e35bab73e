#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace idr {

/// Decimal rendering used by every output file: 17 significant digits, enough to
/// round-trip any double.
std::string format_real(double value);

/// Writes to a sibling temporary file and renames it over `path`, so readers never see a
/// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

} // namespace idr

#pragma once

#include <filesystem>
#include <string>

namespace autocat::io {

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string num(double x);

/// Parses a whole token as a double; subnormal values are kept.
double parse_double(const std::string& s);

/// Output directory override variable.
inline constexpr const char* kOutputDirEnv = "AUTOCAT_OUTPUT_DIR";

/// The environment override when set, otherwise `fallback`.
std::filesystem::path output_directory(const std::filesystem::path& fallback);

void ensure_directory(const std::filesystem::path& dir);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace autocat::io

#pragma once

#include <filesystem>
#include <string>

namespace faultnet {

// Both throw ErrorKind::Io naming the offending path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace faultnet

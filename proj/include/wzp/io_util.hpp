#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace wzp {

// Writes content to a temp file in the target directory and renames it into
// place, so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace wzp

#pragma once

#include <filesystem>

#include "wzp/image.hpp"

namespace wzp {

// Binary (P5) PGM with maxval <= 255. Comments and arbitrary whitespace in
// the header are accepted; anything else raises AssetError.
Image read_pgm(const std::filesystem::path& path);

// Writes a single-channel image as binary PGM with maxval 255.
void write_pgm(const std::filesystem::path& path, const Image& img);

}  // namespace wzp

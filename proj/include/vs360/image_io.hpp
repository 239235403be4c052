#pragma once

#include <filesystem>

#include "vs360/image.hpp"

namespace vs360 {

// Reads a PNG or JPEG (by extension). PNGs keep their channel count
// (palette/alpha inputs are expanded/stripped to gray or RGB); JPEGs decode
// to their native gray or RGB. Throws std::runtime_error with the path on
// any failure.
Image8 load_image(const std::filesystem::path& path);

// Writes an 8-bit gray or RGB PNG. Output bytes are deterministic for
// identical input.
void save_png(const std::filesystem::path& path, const Image8& img);

}  // namespace vs360

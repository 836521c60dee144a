#pragma once

#include "linea/raster.hpp"

#include <filesystem>

namespace linea {

/// Reads an 8-bit grayscale or RGB PNG, or a binary PGM (P5, maxval <= 255).
/// RGB is reduced with Rec.601 luma weights; samples map linearly v/255.
/// Throws IoError (with the path) on unreadable files or 16-bit data.
GrayImage load_image(const std::filesystem::path& path);

/// 8-bit grayscale PNG, intensities rounded to the nearest of 256 levels.
void save_png(const GrayImage& img, const std::filesystem::path& path);

/// Binary PGM (P5, maxval 255).
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// Dispatches on extension: ".pgm" writes PGM, anything else PNG.
void save_image(const GrayImage& img, const std::filesystem::path& path);

/// Writes a mask with effective pixels at 255 and the rest at 0 (the inverse
/// of the line-art rendering, so masks and frames are never confused).
void save_mask(const LineMask& mask, const std::filesystem::path& path);

} // namespace linea

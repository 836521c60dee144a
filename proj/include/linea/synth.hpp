#pragma once

#include "linea/geometry.hpp"
#include "linea/raster.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace linea {

/// Frames with exactly known content, plus exact correspondences between the
/// first and last frame.
struct SynthScene {
    std::vector<GrayImage> frames;
    std::vector<LineMask> masks;
    CorrespondenceSet exact_corr;
    std::string description;
};

/// Hard-edged annulus: pixel (x, y) is effective iff
/// | |(x, y) - center| - radius | <= stroke / 2.
/// Requires radius > stroke >= 1 and the whole ring inside the canvas.
LineMask render_circle(Point2 center, double radius, Dims size, double stroke);

/// Open polyline: pixels within stroke / 2 of any segment. Requires at least
/// two vertices and stroke >= 1.
LineMask render_polyline(std::span<const Point2> vertices, Dims size, double stroke);

/// Integer translation; pixels leaving the canvas are dropped.
LineMask shift_mask(const LineMask& mask, int dx, int dy);

struct PixelIndex {
    int x = 0;
    int y = 0;

    friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

/// Effective pixels in stroke order: components in raster order of their
/// first pixel, each walked depth-first over 8-neighbours.
std::vector<PixelIndex> stroke_order(const LineMask& mask);

/// Removes contiguous runs along stroke_order totalling floor(fraction * count)
/// pixels. For a fixed seed the erased set grows monotonically with fraction.
/// Requires 0 <= fraction < 1.
LineMask erase_random(const LineMask& mask, double fraction, std::uint64_t seed);

/// n + 2 frames of `shape` at offsets round(k * d / (n + 1)), k = 0..n+1, with
/// up to 512 exact pairs (evenly spaced along the stroke) between the first
/// and last frame. Throws ArgumentError if any frame would clip the shape.
SynthScene translating_scene(const LineMask& shape, int dx, int dy, int n);

/// Mean effective-pixel position; throws DegenerateInputError on an empty mask.
Point2 mask_centroid(const LineMask& mask);

} // namespace linea

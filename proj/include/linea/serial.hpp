#pragma once

// Single-threaded reference versions of the OpenMP kernels. They share no
// loop structure with the parallel paths beyond the 1-D envelope primitive,
// and exist so tests and the benchmark can check the parallel results
// element-for-element.

#include "linea/geometry.hpp"
#include "linea/motion.hpp"
#include "linea/raster.hpp"
#include "linea/tps.hpp"

namespace linea::serial {

DistanceMap distance_transform(const LineMask& mask);

MotionField motion_field(const TpsTransform& tps, int width, int height);

GrayImage backward_warp(const GrayImage& img, const MotionField& flow, const WarpConfig& cfg = {});

/// Un-normalised chamfer sum: sum over b0 of D(b1) plus sum over b1 of D(b0).
double chamfer_sum(const LineMask& b0, const LineMask& b1);

} // namespace linea::serial

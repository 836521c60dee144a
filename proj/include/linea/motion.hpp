#pragma once

#include "linea/geometry.hpp"
#include "linea/raster.hpp"

#include <string_view>
#include <vector>

namespace linea {

enum class BlendMode {
    linear,  // (1 - t) * f0 + t * f1
    min_ink, // darkest sample wins
};

BlendMode parse_blend_mode(std::string_view name);
std::string_view to_string(BlendMode mode) noexcept;

struct WarpConfig {
    double fill = 1.0; // intensity of samples outside the source frame
    BlendMode blend = BlendMode::linear;
};

struct IntermediateFlows {
    MotionField to_frame0; // m_{t->0}
    MotionField to_frame1; // m_{t->1}
};

/// Linear-motion approximation of the flows from the (unknown) frame at time t
/// back to the two key frames:
///   m_t0 = -(1-t) t m01 + t^2 m10
///   m_t1 = (1-t)^2 m01 - t (1-t) m10
/// Both fields are taken as sampled on the intermediate frame's grid.
IntermediateFlows intermediate_flows(const MotionField& m01, const MotionField& m10, double t);

/// Bilinear sample at a sub-pixel position; taps outside the frame read `fill`.
double sample_bilinear(const GrayImage& img, double x, double y, double fill) noexcept;

/// out(x, y) = img sampled at (x + dx, y + dy).
GrayImage backward_warp(const GrayImage& img, const MotionField& flow,
                        const WarpConfig& cfg = {});

GrayImage blend(const GrayImage& f0t, const GrayImage& f1t, double t, BlendMode mode);

/// Uniform inbetween times k / (n + 1) for k = 1..n.
std::vector<double> inbetween_times(int n);

/// The three renderings of every inbetween: frame 0 warped alone, frame 1
/// warped alone, and their blend.
struct InbetweenSequence {
    std::vector<double> times;
    std::vector<GrayImage> forward;
    std::vector<GrayImage> backward;
    std::vector<GrayImage> blended;
};

/// Spline-only inbetweening: fits both spline directions from `corr`
/// (sources on y0, targets on y1), derives the intermediate flows for every
/// t = k/(n+1), warps each key frame and blends.
InbetweenSequence interpolate_sequence(const GrayImage& y0, const GrayImage& y1,
                                       const CorrespondenceSet& corr, int n,
                                       const WarpConfig& cfg = {}, double lambda = 0.0);

} // namespace linea

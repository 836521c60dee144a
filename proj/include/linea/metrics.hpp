#pragma once

#include "linea/raster.hpp"

#include <span>

namespace linea {

/// Reporting factors used by line-art inbetweening benchmark tables.
inline constexpr double kCdScale = 1e5;
inline constexpr double kWcdScale = 1e4;
inline constexpr double kEmdScale = 1e3;

/// Threshold on ink (1 - intensity) used by count_loss by default.
inline constexpr double kDefaultCountEta = 0.9;

struct WcdConfig {
    /// Subtract softplus(0) = ln 2 so that identical masks score exactly 0.
    bool zero_offset = true;
};

struct MetricReport {
    double cd = 0.0;
    double wcd = 0.0;
    double emd = 0.0;
    double cd_scaled = 0.0;
    double wcd_scaled = 0.0;
    double emd_scaled = 0.0;

    /// Fills the scaled fields from the raw ones.
    static MetricReport from_raw(double cd, double wcd, double emd) noexcept;
};

/// Chamfer distance: sum(b0 * D(b1) + b1 * D(b0)) / (2 H W diag).
double chamfer_distance(const LineMask& b0, const LineMask& b1);

/// Numerically stable ln(1 + e^x).
double softplus(double x) noexcept;

double sigmoid(double x) noexcept;

/// Count-mismatch weight sigmoid(|n0 - n1| / min(n0, n1)), in [0.5, 1).
/// When the exact value is closer to 1 than double resolution allows, the
/// largest double below 1 is returned so the open upper bound still holds.
/// Throws DegenerateInputError if either count is zero.
double count_weight(std::size_t n0, std::size_t n1);
double count_weight(const LineMask& b0, const LineMask& b1);

/// Weighted chamfer distance:
///   H(b0, b1) / (H W diag) * (sum_{b0} G(D(b1)) + sum_{b1} G(D(b0)))
/// with G = softplus (minus ln 2 under zero_offset) applied only at effective
/// pixels. Both masks must be non-empty.
double weighted_chamfer_distance(const LineMask& b0, const LineMask& b1,
                                 const WcdConfig& cfg = {});

/// 1-D earth mover's distance between two histograms over bins spread evenly
/// on [0, 1]: sum |CDF_a - CDF_b| / len after normalising both to unit mass.
double emd_1d(std::span<const double> hist_a, std::span<const double> hist_b);

/// Mean of the 1-D EMDs of the column-sum and row-sum marginals.
double emd_axiswise(const LineMask& b0, const LineMask& b1);

/// Mean over frames of the per-pixel mean |D(bin(pred)) - D(bin(gt))|.
double dt_loss(std::span<const GrayImage> pred, std::span<const GrayImage> gt,
               double threshold = kDefaultBinarizeThreshold);

/// Mean over frames of |sum relu(ink(pred) - (1 - eta)) - sum relu(ink(gt) - (1 - eta))|
/// where ink = 1 - intensity.
double count_loss(std::span<const GrayImage> pred, std::span<const GrayImage> gt,
                  double eta = kDefaultCountEta);

/// Mean over frames of the RMS of (|y - 0.5| - 0.5).
double binarization_loss(std::span<const GrayImage> pred);

MetricReport report(const LineMask& pred, const LineMask& gt, const WcdConfig& cfg = {});

} // namespace linea

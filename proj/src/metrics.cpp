#include "linea/metrics.hpp"

#include "linea/error.hpp"
#include "linea/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace linea {

namespace {

void require_same_dims(const LineMask& a, const LineMask& b, const char* who)
{
    if (a.dims() != b.dims())
        throw ArgumentError(std::string(who) + ": mask dimensions differ ("
                            + std::to_string(a.width()) + "x" + std::to_string(a.height())
                            + " vs " + std::to_string(b.width()) + "x"
                            + std::to_string(b.height()) + ")");
}

void require_frame_lists(std::span<const GrayImage> pred, std::span<const GrayImage> gt,
                         const char* who)
{
    if (pred.empty() || pred.size() != gt.size())
        throw ArgumentError(std::string(who) + ": need equal, non-empty frame lists (got "
                            + std::to_string(pred.size()) + " and "
                            + std::to_string(gt.size()) + ")");
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i].dims() != gt[i].dims())
            throw ArgumentError(std::string(who) + ": frame " + std::to_string(i)
                                + " dimension mismatch");
}

// Sum over both masks of g(distance to the other mask), evaluated at
// effective pixels only. Rows are reduced serially for reproducibility.
template <typename Transfer>
double cross_distance_sum(const LineMask& b0, const LineMask& b1, Transfer g)
{
    const DistanceMap d0 = distance_transform(b0);
    const DistanceMap d1 = distance_transform(b1);
    const int w = b0.width();
    std::vector<double> rows(b0.height(), 0.0);
    parallel_for(b0.height(), [&](std::int64_t y) {
        double acc = 0.0;
        for (int x = 0; x < w; ++x) {
            if (b0.at(x, static_cast<int>(y)))
                acc += g(d1.at(x, static_cast<int>(y)));
            if (b1.at(x, static_cast<int>(y)))
                acc += g(d0.at(x, static_cast<int>(y)));
        }
        rows[y] = acc;
    });
    return std::accumulate(rows.begin(), rows.end(), 0.0);
}

std::vector<double> column_marginal(const LineMask& m)
{
    std::vector<double> hist(m.width(), 0.0);
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            hist[x] += m.at(x, y) ? 1.0 : 0.0;
    return hist;
}

std::vector<double> row_marginal(const LineMask& m)
{
    std::vector<double> hist(m.height(), 0.0);
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            hist[y] += m.at(x, y) ? 1.0 : 0.0;
    return hist;
}

double ink_mass(const GrayImage& img, double eta)
{
    const double cut = 1.0 - eta;
    double sum = 0.0;
    for (const double v : img.pixels())
        sum += std::max(0.0, (1.0 - v) - cut);
    return sum;
}

} // namespace

MetricReport MetricReport::from_raw(double cd, double wcd, double emd) noexcept
{
    return {cd, wcd, emd, cd * kCdScale, wcd * kWcdScale, emd * kEmdScale};
}

double chamfer_distance(const LineMask& b0, const LineMask& b1)
{
    require_same_dims(b0, b1, "chamfer_distance");
    const double area = static_cast<double>(b0.dims().area());
    if (area == 0.0)
        throw ArgumentError("chamfer_distance: empty canvas");
    const double sum = cross_distance_sum(b0, b1, [](double d) { return d; });
    return sum / (2.0 * area * diameter(b0.dims()));
}

double softplus(double x) noexcept
{
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) noexcept
{
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double count_weight(std::size_t n0, std::size_t n1)
{
    if (n0 == 0 || n1 == 0)
        throw DegenerateInputError("count_weight: both masks need effective pixels (counts "
                                   + std::to_string(n0) + ", " + std::to_string(n1) + ")");
    const double hi = static_cast<double>(std::max(n0, n1));
    const double lo = static_cast<double>(std::min(n0, n1));
    const double h = sigmoid((hi - lo) / lo);
    return std::min(h, std::nextafter(1.0, 0.0));
}

double count_weight(const LineMask& b0, const LineMask& b1)
{
    return count_weight(effective_count(b0), effective_count(b1));
}

double weighted_chamfer_distance(const LineMask& b0, const LineMask& b1, const WcdConfig& cfg)
{
    require_same_dims(b0, b1, "weighted_chamfer_distance");
    const double weight = count_weight(b0, b1);
    const double offset = cfg.zero_offset ? softplus(0.0) : 0.0;
    const double sum = cross_distance_sum(b0, b1, [offset](double d) { return softplus(d) - offset; });
    const double area = static_cast<double>(b0.dims().area());
    return weight * sum / (area * diameter(b0.dims()));
}

double emd_1d(std::span<const double> hist_a, std::span<const double> hist_b)
{
    if (hist_a.empty() || hist_a.size() != hist_b.size())
        throw ArgumentError("emd_1d: histograms need equal, non-zero lengths (got "
                            + std::to_string(hist_a.size()) + " and "
                            + std::to_string(hist_b.size()) + ")");
    auto mass = [](std::span<const double> h) {
        double s = 0.0;
        for (const double v : h) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ArgumentError("emd_1d: histogram entries must be finite and non-negative");
            s += v;
        }
        return s;
    };
    const double ma = mass(hist_a);
    const double mb = mass(hist_b);
    if (ma <= 0.0 || mb <= 0.0)
        throw DegenerateInputError("emd_1d: zero-mass histogram");

    double cdf_a = 0.0;
    double cdf_b = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < hist_a.size(); ++i) {
        cdf_a += hist_a[i] / ma;
        cdf_b += hist_b[i] / mb;
        total += std::abs(cdf_a - cdf_b);
    }
    return total / static_cast<double>(hist_a.size());
}

double emd_axiswise(const LineMask& b0, const LineMask& b1)
{
    require_same_dims(b0, b1, "emd_axiswise");
    if (effective_count(b0) == 0 || effective_count(b1) == 0)
        throw DegenerateInputError("emd_axiswise: both masks need effective pixels");
    const double ex = emd_1d(column_marginal(b0), column_marginal(b1));
    const double ey = emd_1d(row_marginal(b0), row_marginal(b1));
    return 0.5 * (ex + ey);
}

double dt_loss(std::span<const GrayImage> pred, std::span<const GrayImage> gt, double threshold)
{
    require_frame_lists(pred, gt, "dt_loss");
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const DistanceMap dp = distance_transform(binarize(pred[i], threshold));
        const DistanceMap dg = distance_transform(binarize(gt[i], threshold));
        const auto a = dp.values();
        const auto b = dg.values();
        double sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            sum += std::abs(a[k] - b[k]);
        total += a.empty() ? 0.0 : sum / static_cast<double>(a.size());
    }
    return total / static_cast<double>(pred.size());
}

double count_loss(std::span<const GrayImage> pred, std::span<const GrayImage> gt, double eta)
{
    require_frame_lists(pred, gt, "count_loss");
    if (!(eta > 0.0 && eta < 1.0))
        throw ArgumentError("count_loss: eta must lie in (0, 1)");
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        total += std::abs(ink_mass(pred[i], eta) - ink_mass(gt[i], eta));
    return total / static_cast<double>(pred.size());
}

double binarization_loss(std::span<const GrayImage> pred)
{
    if (pred.empty())
        throw ArgumentError("binarization_loss: need at least one frame");
    double total = 0.0;
    for (const auto& frame : pred) {
        const auto px = frame.pixels();
        double sq = 0.0;
        for (const double v : px) {
            const double r = std::abs(v - 0.5) - 0.5;
            sq += r * r;
        }
        total += px.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(px.size()));
    }
    return total / static_cast<double>(pred.size());
}

MetricReport report(const LineMask& pred, const LineMask& gt, const WcdConfig& cfg)
{
    return MetricReport::from_raw(chamfer_distance(pred, gt),
                                  weighted_chamfer_distance(pred, gt, cfg),
                                  emd_axiswise(pred, gt));
}

} // namespace linea

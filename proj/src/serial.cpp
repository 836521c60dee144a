#include "linea/serial.hpp"

#include "edt_kernel.hpp"
#include "linea/error.hpp"

#include <cmath>
#include <limits>

namespace linea::serial {

DistanceMap distance_transform(const LineMask& mask)
{
    const int w = mask.width();
    const int h = mask.height();
    if (effective_count(mask) == 0)
        return DistanceMap(w, h, std::vector<double>(mask.dims().area(), diameter(mask.dims())));

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> sq(mask.dims().area());
    detail::EnvelopeScratch col(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y)
            col.line[y] = mask.at(x, y) ? 0.0 : inf;
        detail::squared_envelope_1d(col, h);
        for (int y = 0; y < h; ++y)
            sq[static_cast<std::size_t>(y) * w + x] = col.out[y];
    }
    detail::EnvelopeScratch row(w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x)
            row.line[x] = sq[static_cast<std::size_t>(y) * w + x];
        detail::squared_envelope_1d(row, w);
        for (int x = 0; x < w; ++x)
            sq[static_cast<std::size_t>(y) * w + x] = std::sqrt(row.out[x]);
    }
    return DistanceMap(w, h, std::move(sq));
}

MotionField motion_field(const TpsTransform& tps, int width, int height)
{
    if (width < 1 || height < 1)
        throw ArgumentError("motion_field: width and height must be >= 1");
    std::vector<Displacement> flow;
    flow.reserve(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Point2 f = tps({static_cast<double>(x), static_cast<double>(y)});
            flow.push_back({f.x - x, f.y - y});
        }
    }
    return MotionField(width, height, std::move(flow));
}

GrayImage backward_warp(const GrayImage& img, const MotionField& flow, const WarpConfig& cfg)
{
    if (img.dims() != flow.dims())
        throw ArgumentError("backward_warp: dimension mismatch");
    if (!(cfg.fill >= 0.0 && cfg.fill <= 1.0))
        throw ArgumentError("backward_warp: fill must lie in [0, 1]");
    std::vector<double> out;
    out.reserve(img.dims().area());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Displacement& d = flow.at(x, y);
            out.push_back(sample_bilinear(img, x + d.dx, y + d.dy, cfg.fill));
        }
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

double chamfer_sum(const LineMask& b0, const LineMask& b1)
{
    if (b0.dims() != b1.dims())
        throw ArgumentError("chamfer_sum: dimension mismatch");
    const DistanceMap d0 = serial::distance_transform(b0);
    const DistanceMap d1 = serial::distance_transform(b1);
    double sum = 0.0;
    for (int y = 0; y < b0.height(); ++y)
        for (int x = 0; x < b0.width(); ++x)
            sum += (b0.at(x, y) ? d1.at(x, y) : 0.0) + (b1.at(x, y) ? d0.at(x, y) : 0.0);
    return sum;
}

} // namespace linea::serial

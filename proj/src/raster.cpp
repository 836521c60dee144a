#include "linea/raster.hpp"

#include "edt_kernel.hpp"
#include "linea/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace linea {

namespace {

void check_dims(int width, int height, const char* what)
{
    if (width < 0 || height < 0)
        throw ArgumentError(std::string(what) + ": negative dimensions "
                            + std::to_string(width) + "x" + std::to_string(height));
}

bool valid_intensity(double v) noexcept
{
    return v >= 0.0 && v <= 1.0; // rejects NaN too
}

} // namespace

double diameter(Dims dims) noexcept
{
    return std::hypot(static_cast<double>(dims.width), static_cast<double>(dims.height));
}

GrayImage::GrayImage(int width, int height, double value)
{
    check_dims(width, height, "GrayImage");
    if (!valid_intensity(value))
        throw ArgumentError("GrayImage: fill intensity outside [0, 1]");
    dims_ = {width, height};
    data_.assign(dims_.area(), value);
}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
{
    check_dims(width, height, "GrayImage");
    dims_ = {width, height};
    if (data.size() != dims_.area())
        throw ArgumentError("GrayImage: data length " + std::to_string(data.size())
                            + " does not match " + std::to_string(width) + "x"
                            + std::to_string(height));
    const auto bad = std::find_if(data.begin(), data.end(),
                                  [](double v) { return !valid_intensity(v); });
    if (bad != data.end())
        throw ArgumentError("GrayImage: intensity " + std::to_string(*bad) + " at index "
                            + std::to_string(bad - data.begin()) + " outside [0, 1]");
    data_ = std::move(data);
}

void GrayImage::set(int x, int y, double value)
{
    if (!valid_intensity(value))
        throw ArgumentError("GrayImage::set: intensity outside [0, 1]");
    data_[static_cast<std::size_t>(y) * dims_.width + x] = value;
}

LineMask::LineMask(int width, int height, bool value)
{
    check_dims(width, height, "LineMask");
    dims_ = {width, height};
    bits_.assign(dims_.area(), value ? 1 : 0);
}

LineMask::LineMask(int width, int height, std::vector<std::uint8_t> bits)
{
    check_dims(width, height, "LineMask");
    dims_ = {width, height};
    if (bits.size() != dims_.area())
        throw ArgumentError("LineMask: bit count does not match dimensions");
    for (auto& b : bits)
        b = b != 0 ? 1 : 0;
    bits_ = std::move(bits);
}

DistanceMap::DistanceMap(int width, int height, std::vector<double> dist)
{
    check_dims(width, height, "DistanceMap");
    dims_ = {width, height};
    if (dist.size() != dims_.area())
        throw ArgumentError("DistanceMap: value count does not match dimensions");
    dist_ = std::move(dist);
}

LineMask binarize(const GrayImage& img, double threshold)
{
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw ArgumentError("binarize: threshold must lie in (0, 1], got "
                            + std::to_string(threshold));
    const auto px = img.pixels();
    std::vector<std::uint8_t> bits(px.size());
    for (std::size_t i = 0; i < px.size(); ++i)
        bits[i] = px[i] < threshold ? 1 : 0;
    return LineMask(img.width(), img.height(), std::move(bits));
}

GrayImage to_image(const LineMask& mask)
{
    const auto bits = mask.bits();
    std::vector<double> data(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        data[i] = bits[i] ? 0.0 : 1.0;
    return GrayImage(mask.width(), mask.height(), std::move(data));
}

std::size_t effective_count(const LineMask& mask) noexcept
{
    const auto bits = mask.bits();
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

DistanceMap distance_transform(const LineMask& mask)
{
    const int w = mask.width();
    const int h = mask.height();
    if (effective_count(mask) == 0)
        return DistanceMap(w, h, std::vector<double>(mask.dims().area(), diameter(mask.dims())));

    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto bits = mask.bits();
    std::vector<double> sq(mask.dims().area());

    // Columns: squared vertical distance to the nearest site in the same column.
#pragma omp parallel
    {
        detail::EnvelopeScratch scratch(h);
#pragma omp for schedule(static)
        for (int x = 0; x < w; ++x) {
            for (int y = 0; y < h; ++y)
                scratch.line[y] = bits[static_cast<std::size_t>(y) * w + x] ? 0.0 : inf;
            detail::squared_envelope_1d(scratch, h);
            for (int y = 0; y < h; ++y)
                sq[static_cast<std::size_t>(y) * w + x] = scratch.out[y];
        }
    }

    // Rows: combine the column results along x, then take the root.
#pragma omp parallel
    {
        detail::EnvelopeScratch scratch(w);
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            double* row = sq.data() + static_cast<std::size_t>(y) * w;
            std::copy(row, row + w, scratch.line.begin());
            detail::squared_envelope_1d(scratch, w);
            for (int x = 0; x < w; ++x)
                row[x] = std::sqrt(scratch.out[x]);
        }
    }
    return DistanceMap(w, h, std::move(sq));
}

DistanceMap distance_transform_bruteforce(const LineMask& mask)
{
    if (mask.dims().area() > kBruteforceMaxPixels)
        throw ArgumentError("distance_transform_bruteforce: " + std::to_string(mask.width())
                            + "x" + std::to_string(mask.height())
                            + " exceeds the 10^4 pixel guard");
    const int w = mask.width();
    const int h = mask.height();
    std::vector<std::pair<int, int>> sites;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (mask.at(x, y))
                sites.emplace_back(x, y);
    if (sites.empty())
        return DistanceMap(w, h, std::vector<double>(mask.dims().area(), diameter(mask.dims())));

    std::vector<double> dist(mask.dims().area());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& [sx, sy] : sites) {
                const double dx = x - sx;
                const double dy = y - sy;
                best = std::min(best, dx * dx + dy * dy);
            }
            dist[static_cast<std::size_t>(y) * w + x] = std::sqrt(best);
        }
    }
    return DistanceMap(w, h, std::move(dist));
}

} // namespace linea

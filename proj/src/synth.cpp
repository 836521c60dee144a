#include "linea/synth.hpp"

#include "linea/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace linea {

namespace {

constexpr std::size_t kMaxScenePairs = 512;

// Portable bounded draw; std::uniform_int_distribution differs across
// standard libraries and would break cross-platform reproducibility.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t v = 0;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

double segment_distance(Point2 p, Point2 a, Point2 b)
{
    const double vx = b.x - a.x;
    const double vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

} // namespace

LineMask render_circle(Point2 center, double radius, Dims size, double stroke)
{
    if (!(stroke >= 1.0) || !(radius > stroke))
        throw ArgumentError("render_circle: need radius > stroke >= 1");
    const double reach = radius + stroke / 2.0;
    if (center.x - reach < 0.0 || center.y - reach < 0.0 || center.x + reach > size.width - 1
        || center.y + reach > size.height - 1)
        throw ArgumentError("render_circle: circle exceeds the canvas");

    LineMask mask(size.width, size.height);
    for (int y = 0; y < size.height; ++y)
        for (int x = 0; x < size.width; ++x)
            if (std::abs(std::hypot(x - center.x, y - center.y) - radius) <= stroke / 2.0)
                mask.set(x, y, true);
    return mask;
}

LineMask render_polyline(std::span<const Point2> vertices, Dims size, double stroke)
{
    if (vertices.size() < 2)
        throw ArgumentError("render_polyline: need at least two vertices");
    if (!(stroke >= 1.0))
        throw ArgumentError("render_polyline: stroke must be >= 1");
    LineMask mask(size.width, size.height);
    for (int y = 0; y < size.height; ++y) {
        for (int x = 0; x < size.width; ++x) {
            const Point2 p{static_cast<double>(x), static_cast<double>(y)};
            for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
                if (segment_distance(p, vertices[i], vertices[i + 1]) <= stroke / 2.0) {
                    mask.set(x, y, true);
                    break;
                }
            }
        }
    }
    return mask;
}

LineMask shift_mask(const LineMask& mask, int dx, int dy)
{
    LineMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y) && out.contains(x + dx, y + dy))
                out.set(x + dx, y + dy, true);
    return out;
}

std::vector<PixelIndex> stroke_order(const LineMask& mask)
{
    static constexpr int kNeighbours[8][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                              {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    const int w = mask.width();
    std::vector<std::uint8_t> seen(mask.dims().area(), 0);
    std::vector<PixelIndex> order;
    std::vector<PixelIndex> stack;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y) || seen[static_cast<std::size_t>(y) * w + x])
                continue;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const PixelIndex p = stack.back();
                stack.pop_back();
                auto& flag = seen[static_cast<std::size_t>(p.y) * w + p.x];
                if (flag)
                    continue;
                flag = 1;
                order.push_back(p);
                // Reverse push so the first listed neighbour is walked first.
                for (int k = 7; k >= 0; --k) {
                    const int nx = p.x + kNeighbours[k][0];
                    const int ny = p.y + kNeighbours[k][1];
                    if (mask.contains(nx, ny) && mask.at(nx, ny)
                        && !seen[static_cast<std::size_t>(ny) * w + nx])
                        stack.push_back({nx, ny});
                }
            }
        }
    }
    return order;
}

LineMask erase_random(const LineMask& mask, double fraction, std::uint64_t seed)
{
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw ArgumentError("erase_random: fraction must lie in [0, 1)");
    const auto order = stroke_order(mask);
    const std::size_t count = order.size();
    // The epsilon keeps decimal fractions like 0.29 * 100 from flooring to 28.
    const auto total = static_cast<std::size_t>(std::floor(fraction * count + 1e-9));
    LineMask out = mask;
    if (total == 0)
        return out;

    const std::size_t run_min = std::max<std::size_t>(1, count / 40);
    const std::size_t run_max = std::max(run_min, count / 12);
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> erased(count, 0);
    std::size_t removed = 0;
    while (removed < total) {
        std::size_t i = draw_below(rng, count);
        const std::size_t run = run_min + draw_below(rng, run_max - run_min + 1);
        for (std::size_t taken = 0; taken < run && removed < total; i = (i + 1) % count) {
            if (erased[i])
                continue;
            erased[i] = 1;
            out.set(order[i].x, order[i].y, false);
            ++removed;
            ++taken;
        }
    }
    return out;
}

SynthScene translating_scene(const LineMask& shape, int dx, int dy, int n)
{
    if (n < 1)
        throw ArgumentError("translating_scene: need at least one inbetween");
    const std::size_t count = effective_count(shape);
    if (count == 0)
        throw ArgumentError("translating_scene: shape has no effective pixels");

    SynthScene scene;
    for (int k = 0; k <= n + 1; ++k) {
        const double s = static_cast<double>(k) / (n + 1);
        const int ox = static_cast<int>(std::lround(s * dx));
        const int oy = static_cast<int>(std::lround(s * dy));
        LineMask m = shift_mask(shape, ox, oy);
        if (effective_count(m) != count)
            throw ArgumentError("translating_scene: shape leaves the canvas at frame "
                                + std::to_string(k));
        scene.frames.push_back(to_image(m));
        scene.masks.push_back(std::move(m));
    }

    const auto order = stroke_order(shape);
    const std::size_t picks = std::min(order.size(), kMaxScenePairs);
    scene.exact_corr.source_dims = shape.dims();
    scene.exact_corr.target_dims = shape.dims();
    for (std::size_t i = 0; i < picks; ++i) {
        const PixelIndex p = order[i * order.size() / picks];
        scene.exact_corr.pairs.push_back(
            {{static_cast<double>(p.x), static_cast<double>(p.y)},
             {static_cast<double>(p.x + dx), static_cast<double>(p.y + dy)}});
    }
    scene.description = "translation by (" + std::to_string(dx) + ", " + std::to_string(dy)
        + ") over " + std::to_string(n) + " inbetweens";
    return scene;
}

Point2 mask_centroid(const LineMask& mask)
{
    double sx = 0.0;
    double sy = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y)) {
                sx += x;
                sy += y;
                ++n;
            }
    if (n == 0)
        throw DegenerateInputError("mask_centroid: empty mask");
    return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

} // namespace linea

#include "linea/motion.hpp"

#include "linea/error.hpp"
#include "linea/parallel.hpp"
#include "linea/tps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace linea {

namespace {

void require_time(double t, const char* who)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw ArgumentError(std::string(who) + ": t must lie in [0, 1], got " + std::to_string(t));
}

void require_same_dims(Dims a, Dims b, const char* who)
{
    if (a != b)
        throw ArgumentError(std::string(who) + ": dimension mismatch " + std::to_string(a.width)
                            + "x" + std::to_string(a.height) + " vs " + std::to_string(b.width)
                            + "x" + std::to_string(b.height));
}

void require_inside(Point2 p, Dims dims, const char* which)
{
    if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= dims.width - 1 && p.y <= dims.height - 1))
        throw ArgumentError(std::string("interpolate_sequence: ") + which + " point ("
                            + std::to_string(p.x) + ", " + std::to_string(p.y)
                            + ") lies outside its frame");
}

} // namespace

BlendMode parse_blend_mode(std::string_view name)
{
    if (name == "linear")
        return BlendMode::linear;
    if (name == "min-ink" || name == "min_ink")
        return BlendMode::min_ink;
    throw ArgumentError("unknown blend mode '" + std::string(name) + "' (linear|min-ink)");
}

std::string_view to_string(BlendMode mode) noexcept
{
    return mode == BlendMode::linear ? "linear" : "min-ink";
}

IntermediateFlows intermediate_flows(const MotionField& m01, const MotionField& m10, double t)
{
    require_same_dims(m01.dims(), m10.dims(), "intermediate_flows");
    require_time(t, "intermediate_flows");

    const double a0 = -(1.0 - t) * t; // m01 coefficient for m_t0
    const double b0 = t * t;          // m10 coefficient for m_t0
    const double a1 = (1.0 - t) * (1.0 - t);
    const double b1 = -t * (1.0 - t);

    const auto f01 = m01.values();
    const auto f10 = m10.values();
    std::vector<Displacement> to0(f01.size());
    std::vector<Displacement> to1(f01.size());
    parallel_for(static_cast<std::int64_t>(f01.size()), [&](std::int64_t i) {
        to0[i] = {a0 * f01[i].dx + b0 * f10[i].dx, a0 * f01[i].dy + b0 * f10[i].dy};
        to1[i] = {a1 * f01[i].dx + b1 * f10[i].dx, a1 * f01[i].dy + b1 * f10[i].dy};
    });
    return {MotionField(m01.width(), m01.height(), std::move(to0)),
            MotionField(m01.width(), m01.height(), std::move(to1))};
}

double sample_bilinear(const GrayImage& img, double x, double y, double fill) noexcept
{
    const int w = img.width();
    const int h = img.height();
    // Anything this far out cannot touch a pixel; also keeps floor() in int range.
    if (!(x > -1.0 && y > -1.0 && x < w && y < h))
        return fill;

    const double xf = std::floor(x);
    const double yf = std::floor(y);
    const int x0 = static_cast<int>(xf);
    const int y0 = static_cast<int>(yf);
    const double fx = x - xf;
    const double fy = y - yf;

    auto tap = [&](int px, int py) {
        return (px >= 0 && py >= 0 && px < w && py < h) ? img.at(px, py) : fill;
    };
    const double v = (1.0 - fx) * (1.0 - fy) * tap(x0, y0) + fx * (1.0 - fy) * tap(x0 + 1, y0)
        + (1.0 - fx) * fy * tap(x0, y0 + 1) + fx * fy * tap(x0 + 1, y0 + 1);
    return std::clamp(v, 0.0, 1.0);
}

GrayImage backward_warp(const GrayImage& img, const MotionField& flow, const WarpConfig& cfg)
{
    require_same_dims(img.dims(), flow.dims(), "backward_warp");
    if (!(cfg.fill >= 0.0 && cfg.fill <= 1.0))
        throw ArgumentError("backward_warp: fill must lie in [0, 1]");

    const int w = img.width();
    std::vector<double> out(img.dims().area());
    parallel_for(img.height(), [&](std::int64_t y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const Displacement& d = flow.values()[i];
            out[i] = sample_bilinear(img, x + d.dx, static_cast<double>(y) + d.dy, cfg.fill);
        }
    });
    return GrayImage(w, img.height(), std::move(out));
}

GrayImage blend(const GrayImage& f0t, const GrayImage& f1t, double t, BlendMode mode)
{
    require_same_dims(f0t.dims(), f1t.dims(), "blend");
    require_time(t, "blend");
    const auto a = f0t.pixels();
    const auto b = f1t.pixels();
    std::vector<double> out(a.size());
    if (mode == BlendMode::linear) {
        parallel_for(static_cast<std::int64_t>(a.size()), [&](std::int64_t i) {
            out[i] = std::clamp((1.0 - t) * a[i] + t * b[i], 0.0, 1.0);
        });
    } else {
        parallel_for(static_cast<std::int64_t>(a.size()),
                     [&](std::int64_t i) { out[i] = std::min(a[i], b[i]); });
    }
    return GrayImage(f0t.width(), f0t.height(), std::move(out));
}

std::vector<double> inbetween_times(int n)
{
    if (n < 1)
        throw ArgumentError("inbetween count must be >= 1, got " + std::to_string(n));
    std::vector<double> times(n);
    for (int k = 1; k <= n; ++k)
        times[k - 1] = static_cast<double>(k) / (n + 1);
    return times;
}

InbetweenSequence interpolate_sequence(const GrayImage& y0, const GrayImage& y1,
                                       const CorrespondenceSet& corr, int n,
                                       const WarpConfig& cfg, double lambda)
{
    require_same_dims(y0.dims(), y1.dims(), "interpolate_sequence");
    InbetweenSequence seq;
    seq.times = inbetween_times(n);
    for (const auto& c : corr.pairs) {
        require_inside(c.source, y0.dims(), "source");
        require_inside(c.target, y1.dims(), "target");
    }

    const TpsTransform forward_fit = fit_tps(corr, lambda);
    const TpsTransform backward_fit = fit_tps(corr.reversed(), lambda);
    const MotionField m01 = motion_field(forward_fit, y0.width(), y0.height());
    const MotionField m10 = motion_field(backward_fit, y0.width(), y0.height());

    for (const double t : seq.times) {
        const IntermediateFlows flows = intermediate_flows(m01, m10, t);
        seq.forward.push_back(backward_warp(y0, flows.to_frame0, cfg));
        seq.backward.push_back(backward_warp(y1, flows.to_frame1, cfg));
        seq.blended.push_back(blend(seq.forward.back(), seq.backward.back(), t, cfg.blend));
    }
    return seq;
}

} // namespace linea

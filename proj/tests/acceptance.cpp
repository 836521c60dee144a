// Runs the twelve acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include "support/oracles.hpp"

#include "commands.hpp"

#include "linea/matchkit.hpp"
#include "linea/metrics.hpp"
#include "linea/motion.hpp"
#include "linea/synth.hpp"
#include "linea/tps.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace linea;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

CorrespondenceSet pairs_of(const std::vector<Point2>& src, const std::vector<Point2>& dst)
{
    CorrespondenceSet s;
    s.source_dims = s.target_dims = {512, 512};
    for (std::size_t i = 0; i < src.size(); ++i)
        s.pairs.push_back({src[i], dst[i]});
    return s;
}

Outcome tps_exactness()
{
    testing::Rng rng(1001);
    std::vector<CorrespondenceSet> sets;
    for (int i = 0; i < 100; ++i)
        sets.push_back(pairs_of(testing::spread_points(rng, 8, 0, 511, 2),
                                testing::spread_points(rng, 8, 0, 511, 0)));
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& s : sets) {
        const auto t = fit_tps(s);
        std::vector<Point2> src;
        for (const auto& c : s.pairs)
            src.push_back(c.source);
        const auto got = eval_tps(t, src);
        for (std::size_t i = 0; i < got.size(); ++i)
            worst = std::max(worst, distance(got[i], s.pairs[i].target));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-6 && secs < 1.0, "max residual " + num(worst) + " px, " + num(secs) + " s"};
}

Outcome tps_affine()
{
    testing::Rng rng(1002);
    double w_inf = 0.0;
    double query = 0.0;
    double energy = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double m[6] = {testing::uniform(rng, 0.6, 1.4), testing::uniform(rng, -0.4, 0.4),
                             testing::uniform(rng, -40, 40),  testing::uniform(rng, -0.4, 0.4),
                             testing::uniform(rng, 0.6, 1.4), testing::uniform(rng, -40, 40)};
        auto f = [&](Point2 p) { return Point2{m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]}; };
        const auto src = testing::spread_points(rng, 12, 0, 511, 3);
        std::vector<Point2> dst;
        for (auto p : src)
            dst.push_back(f(p));
        const auto t = fit_tps(pairs_of(src, dst));
        w_inf = std::max(w_inf, t.weights().cwiseAbs().maxCoeff());
        energy = std::max(energy, bending_energy(t));
        for (int q = 0; q < 100; ++q) {
            const Point2 p{testing::uniform(rng, 0, 511), testing::uniform(rng, 0, 511)};
            query = std::max(query, distance(t(p), f(p)));
        }
    }
    return {w_inf <= 1e-8 && query <= 1e-6 && energy <= 1e-9,
            "|W|inf " + num(w_inf) + ", query error " + num(query) + " px, energy " + num(energy)};
}

Outcome edt_oracle()
{
    testing::Rng rng(1003);
    std::vector<LineMask> masks;
    for (int i = 0; i < 50; ++i)
        masks.push_back(testing::random_mask(rng, 32, 32, testing::uniform(rng, 0.0, 0.15)));
    for (int i = 0; i < 10; ++i)
        masks.push_back(testing::random_mask(rng, 64, 64, testing::uniform(rng, 0.0, 0.05)));
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& m : masks) {
        const auto a = distance_transform(m);
        const auto b = distance_transform_bruteforce(m);
        for (std::size_t i = 0; i < m.dims().area(); ++i)
            worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 2.0, "max difference " + num(worst) + ", " + num(secs) + " s"};
}

Outcome cd_fixture()
{
    LineMask a(10, 10);
    a.set(0, 0, true);
    LineMask b(10, 10);
    b.set(4, 3, true);
    const double expected = 10.0 / (200.0 * std::sqrt(200.0));
    const double cd = chamfer_distance(a, b);
    const double oracle = testing::chamfer_oracle(a, b);
    const double self = chamfer_distance(b, b);
    return {std::abs(cd - expected) <= 1e-12 && std::abs(oracle - expected) <= 1e-12 && self == 0.0,
            "CD " + num(cd) + " (oracle " + num(oracle) + "), CD(b,b) " + num(self)};
}

Outcome fig3()
{
    const auto t0 = Clock::now();
    const Dims size{128, 128};
    const auto gt = render_circle({63.5, 63.5}, 20, size, 2);
    bool cd_shift = true;
    double prev = -1.0;
    for (int s : {0, 2, 4, 6, 8, 10}) {
        const double cd = chamfer_distance(shift_mask(gt, s, 0), gt);
        cd_shift = cd_shift && cd >= prev;
        prev = cd;
    }
    const auto moved = shift_mask(gt, 10, 0);
    const std::uint64_t seed = 0;
    std::vector<double> cd;
    std::vector<double> wcd;
    for (double f : {0.0, 0.1, 0.2, 0.3}) {
        const auto e = erase_random(moved, f, seed);
        cd.push_back(chamfer_distance(e, gt) * kCdScale);
        wcd.push_back(weighted_chamfer_distance(e, gt) * kWcdScale);
    }
    bool cd_down = true;
    bool wcd_up = true;
    for (int i = 1; i < 4; ++i) {
        cd_down = cd_down && cd[i] < cd[i - 1];
        wcd_up = wcd_up && wcd[i] > wcd[i - 1];
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "seed 0, CD x1e5 " << num(cd[0]) << ">" << num(cd[1]) << ">" << num(cd[2]) << ">" << num(cd[3])
      << ", WCD x1e4 " << num(wcd[0]) << "<" << num(wcd[1]) << "<" << num(wcd[2]) << "<" << num(wcd[3])
      << ", " << num(secs) << " s";
    return {cd_shift && cd_down && wcd_up && secs < 5.0, d.str()};
}

// How often the erasure ordering holds across seeds. Informational only.
std::string fig3_sweep()
{
    const auto gt = render_circle({63.5, 63.5}, 20, {128, 128}, 2);
    const auto moved = shift_mask(gt, 10, 0);
    const double base_cd = chamfer_distance(moved, gt);
    const double base_wcd = weighted_chamfer_distance(moved, gt);
    int cd_ok = 0;
    int wcd_chain = 0;
    int wcd_vs_base = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        double pc = base_cd;
        double pw = base_wcd;
        bool c = true;
        bool w = true;
        bool wb = true;
        for (double f : {0.1, 0.2, 0.3}) {
            const auto e = erase_random(moved, f, static_cast<std::uint64_t>(s));
            const double cd = chamfer_distance(e, gt);
            const double wcd = weighted_chamfer_distance(e, gt);
            c = c && cd < pc;
            w = w && wcd > pw;
            wb = wb && wcd > base_wcd;
            pc = cd;
            pw = wcd;
        }
        cd_ok += c;
        wcd_chain += w;
        wcd_vs_base += wb;
    }
    return "over " + std::to_string(seeds) + " seeds: CD strictly decreasing " + std::to_string(cd_ok)
        + ", WCD strictly increasing " + std::to_string(wcd_chain) + ", every erased WCD above unerased "
        + std::to_string(wcd_vs_base);
}

Outcome count_weight_interval()
{
    testing::Rng rng(1006);
    std::uniform_int_distribution<std::size_t> pick(1, 10'000'000);
    double lo = 1.0;
    double hi = 0.0;
    bool equal_ok = true;
    for (int i = 0; i < 10000; ++i) {
        const auto n0 = pick(rng);
        const auto n1 = i % 4 == 0 ? std::size_t{1} : pick(rng);
        const double h = count_weight(n0, n1);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
        equal_ok = equal_ok && count_weight(n0, n0) == 0.5;
    }
    return {lo >= 0.5 && hi < 1.0 && equal_ok,
            "H in [" + num(lo) + ", 1 - " + num(1.0 - hi) + "], H(n,n) = 0.5 " + (equal_ok ? "always" : "not always")};
}

Outcome emd_oracle()
{
    testing::Rng rng(1007);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = testing::uniform_int(rng, 1, 64);
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = testing::uniform(rng, 0, 1) < 0.3 ? 0.0 : testing::uniform(rng, 0, 5);
            b[i] = testing::uniform(rng, 0, 1) < 0.3 ? 0.0 : testing::uniform(rng, 0, 5);
        }
        a[testing::uniform_int(rng, 0, n - 1)] += 1.0;
        b[testing::uniform_int(rng, 0, n - 1)] += 1.0;
        worst = std::max(worst, std::abs(emd_1d(a, b) - testing::transport_oracle(a, b)));
    }
    const auto shape = render_circle({40.5, 50.5}, 18, {100, 100}, 2);
    const double shifted = emd_axiswise(shape, shift_mask(shape, 6, 0));
    return {worst <= 1e-9 && std::abs(shifted - 0.03) <= 1e-9,
            "max |CDF - transport| " + num(worst) + ", (6,0)-shift EMD " + num(shifted)};
}

Outcome flow_endpoints()
{
    testing::Rng rng(1008);
    bool ok = true;
    for (int trial = 0; trial < 5; ++trial) {
        const auto m01 = testing::random_field(rng, 40, 30, 25);
        const auto m10 = testing::random_field(rng, 40, 30, 25);
        const auto a = intermediate_flows(m01, m10, 0.0);
        const auto b = intermediate_flows(m01, m10, 1.0);
        for (std::size_t i = 0; i < m01.values().size(); ++i) {
            ok = ok && a.to_frame0.values()[i].dx == 0.0 && a.to_frame0.values()[i].dy == 0.0;
            ok = ok && a.to_frame1.values()[i] == m01.values()[i];
            ok = ok && b.to_frame0.values()[i] == m10.values()[i];
            ok = ok && b.to_frame1.values()[i].dx == 0.0 && b.to_frame1.values()[i].dy == 0.0;
        }
    }
    const MotionField plus(8, 8, std::vector<Displacement>(64, {4.0, 0.0}));
    const MotionField minus(8, 8, std::vector<Displacement>(64, {-4.0, 0.0}));
    const auto mid = intermediate_flows(plus, minus, 0.5);
    bool mid_ok = true;
    for (std::size_t i = 0; i < 64; ++i)
        mid_ok = mid_ok && mid.to_frame0.values()[i] == Displacement{-2.0, 0.0}
            && mid.to_frame1.values()[i] == Displacement{2.0, 0.0};
    return {ok && mid_ok, std::string("endpoints ") + (ok ? "exact" : "inexact") + ", midpoint "
                              + (mid_ok ? "(-2,0)/(2,0)" : "wrong")};
}

Outcome warp_identities()
{
    testing::Rng rng(1009);
    const auto img = testing::random_image(rng, 48, 32);
    const bool identity = backward_warp(img, MotionField(48, 32)) == img;

    const MotionField shift(48, 32, std::vector<Displacement>(48 * 32, {2.0, 0.0}));
    const auto shifted = backward_warp(img, shift, {0.5, BlendMode::linear});
    bool shift_ok = true;
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 48; ++x)
            shift_ok = shift_ok && shifted.at(x, y) == (x + 2 < 48 ? img.at(x + 2, y) : 0.5);

    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = testing::random_image(rng, 48, 32);
        const auto b = testing::random_image(rng, 48, 32);
        const auto flow = testing::random_field(rng, 48, 32, 10);
        const double alpha = testing::uniform(rng, 0, 1);
        std::vector<double> mix;
        for (std::size_t i = 0; i < a.pixels().size(); ++i)
            mix.push_back(alpha * a.pixels()[i] + (1 - alpha) * b.pixels()[i]);
        const WarpConfig cfg{0.0, BlendMode::linear};
        const auto wm = backward_warp(GrayImage(48, 32, mix), flow, cfg);
        const auto wa = backward_warp(a, flow, cfg);
        const auto wb = backward_warp(b, flow, cfg);
        for (std::size_t i = 0; i < mix.size(); ++i)
            worst = std::max(worst, std::abs(wm.pixels()[i] - (alpha * wa.pixels()[i] + (1 - alpha) * wb.pixels()[i])));
    }
    return {identity && shift_ok && worst <= 1e-12,
            std::string("zero flow ") + (identity ? "bit-equal" : "differs") + ", integer shift "
                + (shift_ok ? "exact" : "wrong") + ", linearity error " + num(worst)};
}

Outcome end_to_end()
{
    const auto t0 = Clock::now();
    const Dims size{128, 128};
    const auto start = render_circle({57.5, 63.5}, 20, size, 2);
    const auto scene = translating_scene(start, 12, 0, 5);
    const auto seq = interpolate_sequence(scene.frames.front(), scene.frames.back(), scene.exact_corr, 5);
    bool beats = true;
    double worst_ratio = 0.0;
    for (int k = 0; k < 5; ++k) {
        const auto& gt = scene.masks[k + 1];
        const double ours = chamfer_distance(binarize(seq.blended[k]), gt);
        const double base = chamfer_distance(scene.masks[0], gt);
        beats = beats && ours < base;
        worst_ratio = std::max(worst_ratio, ours / base);
    }
    const auto one = translating_scene(start, 12, 0, 1);
    const auto mid = interpolate_sequence(one.frames.front(), one.frames.back(), one.exact_corr, 1);
    const double off = distance(mask_centroid(binarize(mid.blended[0])), {63.5, 63.5});
    const double secs = seconds_since(t0);
    return {beats && off <= 1.0 && secs < 10.0,
            "worst CD ratio vs static " + num(worst_ratio) + ", midpoint centroid off by " + num(off)
                + " px, " + num(secs) + " s"};
}

Outcome flip_symmetry()
{
    const Dims size{96, 96};
    const auto y0 = to_image(render_circle({40.5, 47.5}, 15, size, 2));
    const std::vector<Point2> zig = {{20, 70}, {35, 30}, {50, 60}, {70, 25}};
    const auto y1 = to_image(render_polyline(zig, size, 2));
    CorrespondenceSet corr;
    corr.source_dims = corr.target_dims = size;
    corr.pairs = {{{25.5, 47.5}, {20, 70}}, {{40.5, 32.5}, {35, 30}}, {{55.5, 47.5}, {50, 60}},
                  {{40.5, 62.5}, {70, 25}}, {{30, 38}, {28, 50}}};
    const int n = 5;
    const auto fwd = interpolate_sequence(y0, y1, corr, n);
    const auto rev = interpolate_sequence(y1, y0, corr.reversed(), n);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (std::size_t i = 0; i < fwd.blended[k].pixels().size(); ++i)
            worst = std::max(worst, std::abs(fwd.blended[k].pixels()[i] - rev.blended[n - 1 - k].pixels()[i]));
    return {worst <= 1e-6, "max frame difference " + num(worst)};
}

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file())
            files[fs::relative(e.path(), dir).string()] = testing::slurp(e.path());
    return files;
}

Outcome determinism()
{
    const auto dir = testing::scratch_dir("acceptance_det");
    std::ostringstream sink;
    auto run = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };
    const std::vector<std::vector<std::string>> commands = {
        {"synth", "circle-shift", "--size", "128", "--radius", "20", "--shift", "0,10", "--erase",
         "0,0.1,0.2,0.3", "--seed", "7", "-o", (dir / "circle").string()},
        {"synth", "translate", "--gap", "3", "--dx", "12", "-o", (dir / "scene").string()},
        {"match", (dir / "scene/key0.png").string(), (dir / "scene/key1.png").string(), "-o",
         (dir / "match/corr.json").string()},
    };
    std::map<std::string, std::string> first;
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& c : commands)
            if (run(c) != 0)
                return {false, "command failed: " + c[0] + " " + c[1]};
        auto snap = snapshot(dir);
        if (pass == 0)
            first = std::move(snap);
        else if (snap != first)
            return {false, "outputs differ between runs"};
    }
    return {true, std::to_string(first.size()) + " files byte-identical across two runs"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"TPS exactness", tps_exactness},
        {"TPS affine reproduction", tps_affine},
        {"EDT oracle equivalence", edt_oracle},
        {"CD fixture", cd_fixture},
        {"Circle shift/erasure experiment", fig3},
        {"count_weight interval", count_weight_interval},
        {"EMD oracle equivalence", emd_oracle},
        {"Intermediate flow endpoints", flow_endpoints},
        {"Warp identities", warp_identities},
        {"End-to-end inbetweening", end_to_end},
        {"Temporal flip symmetry", flip_symmetry},
        {"Determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        if (i == 4)
            std::printf("INFO [ 5] %s\n", fig3_sweep().c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}

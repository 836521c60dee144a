#include "linea/matchkit.hpp"

#include "linea/error.hpp"
#include "linea/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace linea {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& why)
{
    throw ParseError("correspondence JSON: field '" + field + "' " + why);
}

double number_at(const json& node, const std::string& field)
{
    if (!node.is_number())
        schema_error(field, "must be a number");
    const double v = node.get<double>();
    if (!std::isfinite(v))
        schema_error(field, "must be finite");
    return v;
}

Dims dims_at(const json& root, const char* key)
{
    if (!root.contains(key))
        schema_error(key, "is missing");
    const json& node = root.at(key);
    if (!node.is_array() || node.size() != 2)
        schema_error(key, "must be [width, height]");
    Dims d;
    for (int i = 0; i < 2; ++i) {
        const std::string field = std::string(key) + "[" + std::to_string(i) + "]";
        if (!node[i].is_number_integer() || node[i].get<long long>() < 1
            || node[i].get<long long>() > std::numeric_limits<int>::max())
            schema_error(field, "must be a positive integer");
        (i == 0 ? d.width : d.height) = node[i].get<int>();
    }
    return d;
}

Point2 point_at(const json& node, const std::string& field)
{
    if (!node.is_array() || node.size() != 2)
        schema_error(field, "must be [x, y]");
    return {number_at(node[0], field + "[0]"), number_at(node[1], field + "[1]")};
}

bool inside(Point2 p, Dims d)
{
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= d.width - 1 && p.y <= d.height - 1;
}

Point2 clamp_into(Point2 p, Dims d)
{
    return {std::clamp(p.x, 0.0, static_cast<double>(d.width - 1)),
            std::clamp(p.y, 0.0, static_cast<double>(d.height - 1))};
}

std::string number_text(double v)
{
    return json(v).dump();
}

std::string point_text(Point2 p)
{
    return "[" + number_text(p.x) + ", " + number_text(p.y) + "]";
}

bool canonical_less(const Correspondence& a, const Correspondence& b)
{
    if (a.source.x != b.source.x)
        return a.source.x < b.source.x;
    if (a.source.y != b.source.y)
        return a.source.y < b.source.y;
    if (a.target.x != b.target.x)
        return a.target.x < b.target.x;
    return a.target.y < b.target.y;
}

// Separable binomial [1 4 6 4 1] / 16 smoothing with clamped borders.
std::vector<double> smooth5(const std::vector<double>& src, Dims d)
{
    static constexpr double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    const int w = d.width;
    const int h = d.height;
    std::vector<double> tmp(src.size());
    std::vector<double> out(src.size());
    parallel_for(h, [&](std::int64_t y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int t = -2; t <= 2; ++t)
                acc += k[t + 2] * src[static_cast<std::size_t>(y) * w + std::clamp(x + t, 0, w - 1)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    });
    parallel_for(h, [&](std::int64_t y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int t = -2; t <= 2; ++t)
                acc += k[t + 2]
                    * tmp[static_cast<std::size_t>(std::clamp(static_cast<int>(y) + t, 0, h - 1)) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    });
    return out;
}

struct Descriptor {
    Point2 at;
    std::vector<double> values; // zero-mean, unit L2 norm
};

std::vector<Descriptor> describe(const std::vector<double>& surface, Dims d,
                                 const std::vector<Keypoint>& kps, int radius)
{
    const int side = 2 * radius + 1;
    std::vector<Descriptor> out;
    out.reserve(kps.size());
    for (const auto& kp : kps) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(side) * side);
        for (int dy = -radius; dy <= radius; ++dy)
            for (int dx = -radius; dx <= radius; ++dx)
                v.push_back(surface[static_cast<std::size_t>(kp.y + dy) * d.width + kp.x + dx]);
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double norm = 0.0;
        for (auto& e : v) {
            e -= mean;
            norm += e * e;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12)
            continue;
        for (auto& e : v)
            e /= norm;
        out.push_back({{static_cast<double>(kp.x), static_cast<double>(kp.y)}, std::move(v)});
    }
    return out;
}

double squared_gap(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = a[i] - b[i];
        s += e * e;
    }
    return s;
}

struct Nearest {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    double second_d2 = std::numeric_limits<double>::infinity();
};

std::vector<Nearest> nearest_neighbours(const std::vector<Descriptor>& from,
                                        const std::vector<Descriptor>& to)
{
    std::vector<Nearest> out(from.size());
    parallel_for(static_cast<std::int64_t>(from.size()), [&](std::int64_t i) {
        Nearest nn;
        for (std::size_t j = 0; j < to.size(); ++j) {
            const double d2 = squared_gap(from[i].values, to[j].values);
            if (d2 < nn.best_d2) {
                nn.second_d2 = nn.best_d2;
                nn.best_d2 = d2;
                nn.best = static_cast<int>(j);
            } else if (d2 < nn.second_d2) {
                nn.second_d2 = d2;
            }
        }
        out[i] = nn;
    });
    return out;
}

} // namespace

void MatchConfig::validate() const
{
    if (max_keypoints < 3)
        throw ArgumentError("MatchConfig: max_keypoints must be >= 3");
    if (patch_radius < 1)
        throw ArgumentError("MatchConfig: patch_radius must be >= 1");
    if (!(ratio_threshold > 0.0 && ratio_threshold <= 1.0))
        throw ArgumentError("MatchConfig: ratio_threshold must lie in (0, 1]");
    if (max_displacement && !(*max_displacement >= 0.0))
        throw ArgumentError("MatchConfig: max_displacement must be non-negative");
    if (!(binarize_threshold > 0.0 && binarize_threshold <= 1.0))
        throw ArgumentError("MatchConfig: binarize_threshold must lie in (0, 1]");
}

CorrespondenceFile parse_correspondences(std::string_view text, std::optional<Dims> dims0,
                                         std::optional<Dims> dims1)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
        throw ParseError("correspondence JSON: syntax error at line " + std::to_string(line)
                         + " (byte " + std::to_string(e.byte) + "): " + e.what());
    }
    if (!root.is_object())
        throw ParseError("correspondence JSON: top level must be an object");
    if (!root.contains("version"))
        schema_error("version", "is missing");
    if (!root.at("version").is_number_integer() || root.at("version").get<long long>() != 1)
        schema_error("version", "must be 1");

    CorrespondenceFile out;
    out.set.source_dims = dims_at(root, "source_dims");
    out.set.target_dims = dims_at(root, "target_dims");
    if (dims0)
        out.set.source_dims = *dims0;
    if (dims1)
        out.set.target_dims = *dims1;

    if (!root.contains("pairs"))
        schema_error("pairs", "is missing");
    const json& pairs = root.at("pairs");
    if (!pairs.is_array())
        schema_error("pairs", "must be an array");

    std::size_t outside = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string field = "pairs[" + std::to_string(i) + "]";
        const json& pair = pairs[i];
        if (!pair.is_array() || pair.size() != 2)
            schema_error(field, "must be [[x0, y0], [x1, y1]]");
        Correspondence c{point_at(pair[0], field + "[0]"), point_at(pair[1], field + "[1]")};
        if (!inside(c.source, out.set.source_dims)) {
            ++outside;
            ++out.clamped;
            c.source = clamp_into(c.source, out.set.source_dims);
        }
        if (!inside(c.target, out.set.target_dims)) {
            ++outside;
            ++out.clamped;
            c.target = clamp_into(c.target, out.set.target_dims);
        }
        out.set.pairs.push_back(c);
    }
    if (!pairs.empty() && outside == 2 * pairs.size())
        throw EmptySetError("correspondence JSON: every point lies outside its frame");
    return out;
}

CorrespondenceFile read_correspondences(const std::filesystem::path& path,
                                        std::optional<Dims> dims0, std::optional<Dims> dims1)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_correspondences(buf.str(), dims0, dims1);
    } catch (const ParseError& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
}

std::string format_correspondences(const CorrespondenceSet& set)
{
    std::vector<Correspondence> pairs = set.pairs;
    std::sort(pairs.begin(), pairs.end(), canonical_less);

    std::string out = "{\n  \"version\": 1,\n";
    out += "  \"source_dims\": [" + std::to_string(set.source_dims.width) + ", "
        + std::to_string(set.source_dims.height) + "],\n";
    out += "  \"target_dims\": [" + std::to_string(set.target_dims.width) + ", "
        + std::to_string(set.target_dims.height) + "],\n";
    if (pairs.empty()) {
        out += "  \"pairs\": []\n}\n";
        return out;
    }
    out += "  \"pairs\": [\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += "    [" + point_text(pairs[i].source) + ", " + point_text(pairs[i].target) + "]";
        out += i + 1 < pairs.size() ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

void write_correspondences(const CorrespondenceSet& set, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << format_correspondences(set);
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

std::vector<double> dt_surface(const GrayImage& img, double cap, double threshold)
{
    const DistanceMap dt = distance_transform(binarize(img, threshold));
    std::vector<double> surface(dt.values().begin(), dt.values().end());
    for (auto& v : surface)
        v = std::min(v, cap) / cap;
    return surface;
}

std::vector<Keypoint> detect_keypoints(const std::vector<double>& surface, Dims d, int border,
                                       int max_count)
{
    const int w = d.width;
    const int h = d.height;
    if (w < 3 || h < 3 || surface.size() != d.area())
        return {};

    auto at = [&](int x, int y) {
        return surface[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w
                       + std::clamp(x, 0, w - 1)];
    };
    std::vector<double> ixx(d.area());
    std::vector<double> iyy(d.area());
    std::vector<double> ixy(d.area());
    parallel_for(h, [&](std::int64_t yy) {
        const int y = static_cast<int>(yy);
        for (int x = 0; x < w; ++x) {
            // Sobel
            const double gx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
            const double gy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            ixx[i] = gx * gx;
            iyy[i] = gy * gy;
            ixy[i] = gx * gy;
        }
    });
    const auto sxx = smooth5(ixx, d);
    const auto syy = smooth5(iyy, d);
    const auto sxy = smooth5(ixy, d);

    std::vector<double> response(d.area());
    double peak = 0.0;
    for (std::size_t i = 0; i < response.size(); ++i) {
        const double tr = sxx[i] + syy[i];
        response[i] = sxx[i] * syy[i] - sxy[i] * sxy[i] - 0.04 * tr * tr;
        peak = std::max(peak, response[i]);
    }
    if (peak <= 0.0)
        return {};

    const double floor_response = 0.01 * peak;
    std::vector<Keypoint> found;
    for (int y = border; y < h - border; ++y) {
        for (int x = border; x < w - border; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double r = response[i];
            if (r <= floor_response)
                continue;
            bool is_max = true;
            for (int dy = -2; dy <= 2 && is_max; ++dy) {
                for (int dx = -2; dx <= 2; ++dx) {
                    if (dx == 0 && dy == 0)
                        continue;
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h)
                        continue;
                    const double o = response[static_cast<std::size_t>(ny) * w + nx];
                    // Plateaus keep only their first pixel in raster order.
                    const bool earlier = dy < 0 || (dy == 0 && dx < 0);
                    if (o > r || (earlier && o == r)) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max)
                found.push_back({x, y, r});
        }
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Keypoint& a, const Keypoint& b) { return a.response > b.response; });
    if (found.size() > static_cast<std::size_t>(max_count))
        found.resize(static_cast<std::size_t>(max_count));
    return found;
}

CorrespondenceSet fallback_match(const GrayImage& y0, const GrayImage& y1, const MatchConfig& cfg)
{
    cfg.validate();
    if (y0.dims() != y1.dims())
        throw ArgumentError("fallback_match: frames differ in size");

    const double cap = static_cast<double>(cfg.patch_radius);
    const auto s0 = dt_surface(y0, cap, cfg.binarize_threshold);
    const auto s1 = dt_surface(y1, cap, cfg.binarize_threshold);
    const bool blank0 = effective_count(binarize(y0, cfg.binarize_threshold)) == 0;
    const bool blank1 = effective_count(binarize(y1, cfg.binarize_threshold)) == 0;

    std::vector<Descriptor> d0;
    std::vector<Descriptor> d1;
    if (!blank0 && !blank1) {
        d0 = describe(s0, y0.dims(),
                      detect_keypoints(s0, y0.dims(), cfg.patch_radius, cfg.max_keypoints),
                      cfg.patch_radius);
        d1 = describe(s1, y1.dims(),
                      detect_keypoints(s1, y1.dims(), cfg.patch_radius, cfg.max_keypoints),
                      cfg.patch_radius);
    }

    CorrespondenceSet out;
    out.source_dims = y0.dims();
    out.target_dims = y1.dims();
    if (!d0.empty() && !d1.empty()) {
        const auto forward = nearest_neighbours(d0, d1);
        const auto backward = nearest_neighbours(d1, d0);
        const double ratio_sq = cfg.ratio_threshold * cfg.ratio_threshold;
        for (std::size_t i = 0; i < d0.size(); ++i) {
            const Nearest& nn = forward[i];
            if (nn.best < 0 || backward[nn.best].best != static_cast<int>(i))
                continue;
            if (!(nn.best_d2 < ratio_sq * nn.second_d2))
                continue;
            const Point2 a = d0[i].at;
            const Point2 b = d1[nn.best].at;
            if (cfg.max_displacement && distance(a, b) > *cfg.max_displacement)
                continue;
            out.pairs.push_back({a, b});
        }
    }
    if (out.pairs.size() < 3)
        throw InsufficientMatchesError(
            "fallback matcher found " + std::to_string(out.pairs.size())
            + " usable correspondences (need 3); supply correspondences from an external matcher");
    std::sort(out.pairs.begin(), out.pairs.end(), canonical_less);
    return out;
}

} // namespace linea

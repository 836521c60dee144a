#include "commands.hpp"

#include "linea/error.hpp"
#include "linea/image_io.hpp"
#include "linea/matchkit.hpp"
#include "linea/metrics.hpp"
#include "linea/motion.hpp"
#include "linea/synth.hpp"
#include "linea/tps.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef LINEA_VERSION
#define LINEA_VERSION "0.0.0"
#endif

namespace linea::cli {

namespace fs = std::filesystem;

namespace {

/// Input problem that lists every offending item rather than the first.
class InputProblem : public Error {
public:
    using Error::Error;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            parts.push_back(item);
    return parts;
}

// Orders "t2" before "t10": digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b)
{
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i]))
            && std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])))
                ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])))
                ++je;
            std::string na = a.substr(i, ie - i);
            std::string nb = b.substr(j, je - j);
            na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
            nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
            if (na.size() != nb.size())
                return na.size() < nb.size();
            if (na != nb)
                return na < nb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j])
                return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if (a.size() - i != b.size() - j)
        return a.size() - i < b.size() - j;
    return a < b;
}

std::vector<fs::path> list_frames(const fs::path& dir, const std::string& suffix)
{
    if (!fs::is_directory(dir))
        throw IoError("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> frames;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        const auto ext = entry.path().extension().string();
        if (ext != ".png" && ext != ".pgm")
            continue;
        const auto stem = entry.path().stem().string();
        if (!suffix.empty()
            && (stem.size() < suffix.size()
                || stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) != 0))
            continue;
        frames.push_back(entry.path());
    }
    std::sort(frames.begin(), frames.end(), [](const fs::path& a, const fs::path& b) {
        return natural_less(a.filename().string(), b.filename().string());
    });
    return frames;
}

void ensure_parent(const fs::path& file)
{
    if (file.has_parent_path())
        fs::create_directories(file.parent_path());
}

void write_text(const fs::path& path, const std::string& text)
{
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

struct EvalRow {
    std::string frame;
    MetricReport metrics;
};

struct EvalOptions {
    double threshold = kDefaultBinarizeThreshold;
    WcdConfig wcd;
    std::string pred_suffix;
};

std::vector<EvalRow> evaluate_dirs(const fs::path& pred_dir, const fs::path& gt_dir,
                                   const EvalOptions& opt)
{
    const auto pred = list_frames(pred_dir, opt.pred_suffix);
    const auto gt = list_frames(gt_dir, "");
    if (pred.empty() || pred.size() != gt.size()) {
        std::string msg = "frame count mismatch: " + std::to_string(pred.size()) + " predicted vs "
            + std::to_string(gt.size()) + " ground-truth frames";
        const auto& longer = pred.size() > gt.size() ? pred : gt;
        for (std::size_t i = std::min(pred.size(), gt.size()); i < longer.size(); ++i)
            msg += "\n  unmatched: " + longer[i].string();
        throw InputProblem(msg);
    }

    std::vector<EvalRow> rows;
    std::string offenders;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const GrayImage p = load_image(pred[i]);
        const GrayImage g = load_image(gt[i]);
        if (p.dims() != g.dims()) {
            offenders += "\n  " + pred[i].string() + " (" + std::to_string(p.width()) + "x"
                + std::to_string(p.height()) + ") vs " + gt[i].string() + " ("
                + std::to_string(g.width()) + "x" + std::to_string(g.height()) + ")";
            continue;
        }
        try {
            rows.push_back({gt[i].stem().string(),
                            report(binarize(p, opt.threshold), binarize(g, opt.threshold), opt.wcd)});
        } catch (const DegenerateInputError& e) {
            offenders += "\n  " + pred[i].string() + ": " + e.what();
        }
    }
    if (!offenders.empty())
        throw InputProblem("cannot evaluate frame pairs:" + offenders);
    return rows;
}

MetricReport mean_of(const std::vector<EvalRow>& rows)
{
    double cd = 0.0;
    double wcd = 0.0;
    double emd = 0.0;
    for (const auto& r : rows) {
        cd += r.metrics.cd;
        wcd += r.metrics.wcd;
        emd += r.metrics.emd;
    }
    const double n = static_cast<double>(rows.size());
    return MetricReport::from_raw(cd / n, wcd / n, emd / n);
}

std::string eval_table(const std::vector<EvalRow>& rows, bool markdown)
{
    static const char* kColumns[] = {"frame", "cd", "wcd", "emd", "cd_x1e5", "wcd_x1e4", "emd_x1e3"};
    std::vector<EvalRow> all = rows;
    all.push_back({"mean", mean_of(rows)});

    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        if (markdown) {
            out += "|";
            for (const auto& c : cells)
                out += " " + c + " |";
        } else {
            for (std::size_t i = 0; i < cells.size(); ++i)
                out += (i ? "," : "") + cells[i];
        }
        out += "\n";
    };
    line(std::vector<std::string>(std::begin(kColumns), std::end(kColumns)));
    if (markdown)
        line(std::vector<std::string>(7, "---"));
    for (const auto& r : all)
        line({r.frame, fmt(r.metrics.cd), fmt(r.metrics.wcd), fmt(r.metrics.emd),
              fmt(r.metrics.cd_scaled), fmt(r.metrics.wcd_scaled), fmt(r.metrics.emd_scaled)});
    return out;
}

void finish(RunManifest manifest, const fs::path& manifest_path)
{
    manifest.tool_version = tool_version();
    write_text(manifest_path, manifest.to_json());
}

fs::path manifest_beside(const fs::path& file)
{
    return fs::path(file.string() + ".manifest.json");
}

// ---------------------------------------------------------------------------

struct MatchArgs {
    std::string frame0;
    std::string frame1;
    std::string output;
    MatchConfig cfg;
    double max_disp = -1.0;
};

int cmd_match(const MatchArgs& a, std::ostream& out)
{
    MatchConfig cfg = a.cfg;
    if (a.max_disp >= 0.0)
        cfg.max_displacement = a.max_disp;
    const GrayImage y0 = load_image(a.frame0);
    const GrayImage y1 = load_image(a.frame1);
    const CorrespondenceSet set = fallback_match(y0, y1, cfg);
    const fs::path out_path(a.output);
    ensure_parent(out_path);
    write_correspondences(set, out_path);

    RunManifest m;
    m.command = "match";
    m.inputs = {a.frame0, a.frame1};
    m.parameters = {{"max_keypoints", std::to_string(cfg.max_keypoints)},
                    {"patch_radius", std::to_string(cfg.patch_radius)},
                    {"ratio", fmt(cfg.ratio_threshold)},
                    {"max_disp", cfg.max_displacement ? fmt(*cfg.max_displacement) : "none"}};
    m.outputs = {out_path.string()};
    finish(m, manifest_beside(out_path));
    out << "wrote " << set.size() << " correspondences to " << out_path.string() << "\n";
    return kSuccess;
}

struct InterpArgs {
    std::string frame0;
    std::string frame1;
    std::string corr;
    int gap = 1;
    double lambda = 0.0;
    std::string blend = "linear";
    std::string emit = "forward,backward,blend";
    std::string outdir;
};

int cmd_interp(const InterpArgs& a, std::ostream& out, std::ostream& err)
{
    WarpConfig cfg;
    cfg.blend = parse_blend_mode(a.blend);
    const auto variants = split(a.emit, ',');
    if (variants.empty())
        throw ArgumentError("--emit needs at least one of forward,backward,blend");
    for (const auto& v : variants)
        if (v != "forward" && v != "backward" && v != "blend")
            throw ArgumentError("unknown --emit variant '" + v + "' (forward|backward|blend)");

    const GrayImage y0 = load_image(a.frame0);
    const GrayImage y1 = load_image(a.frame1);
    const CorrespondenceFile corr = read_correspondences(a.corr, y0.dims(), y1.dims());
    if (corr.clamped > 0)
        err << "warning: clamped " << corr.clamped << " correspondence point(s) into the frame\n";

    const InbetweenSequence seq = interpolate_sequence(y0, y1, corr.set, a.gap, cfg, a.lambda);

    const fs::path dir(a.outdir);
    fs::create_directories(dir);
    RunManifest m;
    m.command = "interp";
    m.inputs = {a.frame0, a.frame1, a.corr};
    m.parameters = {{"gap", std::to_string(a.gap)},
                    {"lambda", fmt(a.lambda)},
                    {"blend", std::string(to_string(cfg.blend))},
                    {"emit", a.emit}};
    for (std::size_t k = 0; k < seq.times.size(); ++k) {
        for (const auto& v : variants) {
            const GrayImage& frame = v == "forward" ? seq.forward[k]
                : v == "backward"                   ? seq.backward[k]
                                                    : seq.blended[k];
            const fs::path file = dir / ("t" + std::to_string(k + 1) + "_" + v + ".png");
            save_png(frame, file);
            m.outputs.push_back(file.string());
        }
    }
    finish(m, dir / "manifest.json");
    out << "wrote " << m.outputs.size() << " frame(s) to " << dir.string() << "\n";
    return kSuccess;
}

struct EvalArgs {
    std::string pred;
    std::string gt;
    std::string output;
    std::string format = "csv";
    double threshold = kDefaultBinarizeThreshold;
    bool no_wcd_offset = false;
    std::string pred_suffix;
};

int cmd_eval(const EvalArgs& a, std::ostream& out)
{
    if (a.format != "csv" && a.format != "md")
        throw ArgumentError("--format must be csv or md");
    EvalOptions opt;
    opt.threshold = a.threshold;
    opt.wcd.zero_offset = !a.no_wcd_offset;
    opt.pred_suffix = a.pred_suffix;
    const auto rows = evaluate_dirs(a.pred, a.gt, opt);
    const fs::path out_path(a.output);
    write_text(out_path, eval_table(rows, a.format == "md"));

    RunManifest m;
    m.command = "eval";
    m.inputs = {a.pred, a.gt};
    m.parameters = {{"threshold", fmt(a.threshold)},
                    {"wcd_zero_offset", opt.wcd.zero_offset ? "true" : "false"},
                    {"format", a.format},
                    {"pred_suffix", a.pred_suffix}};
    m.outputs = {out_path.string()};
    finish(m, manifest_beside(out_path));
    out << "evaluated " << rows.size() << " frame(s) -> " << out_path.string() << "\n";
    return kSuccess;
}

struct BenchArgs {
    std::string gt;
    std::string methods;
    std::string output;
    double threshold = kDefaultBinarizeThreshold;
    bool no_wcd_offset = false;
    std::string pred_suffix;
};

int cmd_bench(const BenchArgs& a, std::ostream& out)
{
    EvalOptions opt;
    opt.threshold = a.threshold;
    opt.wcd.zero_offset = !a.no_wcd_offset;
    opt.pred_suffix = a.pred_suffix;

    std::vector<std::pair<std::string, std::string>> methods;
    for (const auto& item : split(a.methods, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw ArgumentError("--methods entries must look like name=dir, got '" + item + "'");
        methods.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    if (methods.empty())
        throw ArgumentError("--methods needs at least one name=dir entry");

    std::vector<MetricReport> means;
    for (const auto& [name, dir] : methods)
        means.push_back(mean_of(evaluate_dirs(dir, a.gt, opt)));

    double best[3] = {means[0].cd_scaled, means[0].wcd_scaled, means[0].emd_scaled};
    for (const auto& r : means) {
        best[0] = std::min(best[0], r.cd_scaled);
        best[1] = std::min(best[1], r.wcd_scaled);
        best[2] = std::min(best[2], r.emd_scaled);
    }
    auto cell = [](double v, double b) {
        return v == b ? "**" + fmt_fixed(v) + "**" : fmt_fixed(v);
    };
    std::string table = "| method | CD (x1e5) | WCD (x1e4) | EMD (x1e3) |\n| --- | --- | --- | --- |\n";
    for (std::size_t i = 0; i < methods.size(); ++i)
        table += "| " + methods[i].first + " | " + cell(means[i].cd_scaled, best[0]) + " | "
            + cell(means[i].wcd_scaled, best[1]) + " | " + cell(means[i].emd_scaled, best[2]) + " |\n";

    const fs::path out_path(a.output);
    write_text(out_path, table);
    RunManifest m;
    m.command = "bench";
    m.inputs = {a.gt};
    for (const auto& [name, dir] : methods)
        m.inputs.push_back(dir);
    m.parameters = {{"methods", a.methods},
                    {"threshold", fmt(a.threshold)},
                    {"wcd_zero_offset", opt.wcd.zero_offset ? "true" : "false"},
                    {"pred_suffix", a.pred_suffix}};
    m.outputs = {out_path.string()};
    finish(m, manifest_beside(out_path));
    out << "compared " << methods.size() << " method(s) -> " << out_path.string() << "\n";
    return kSuccess;
}

struct CircleShiftArgs {
    int size = 256;
    double radius = 40.0;
    double stroke = 2.0;
    std::string shifts = "0,2,4,6,8,10";
    std::string erase = "0";
    std::uint64_t seed = 0;
    std::string outdir;
};

std::string erase_label(double f)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", f);
    return buf;
}

int cmd_synth_circle_shift(const CircleShiftArgs& a, std::ostream& out)
{
    std::vector<int> shifts;
    for (const auto& s : split(a.shifts, ','))
        shifts.push_back(std::stoi(s));
    std::vector<double> erasures;
    for (const auto& f : split(a.erase, ','))
        erasures.push_back(std::stod(f));
    if (shifts.empty() || erasures.empty())
        throw ArgumentError("--shift and --erase need at least one value each");

    const Dims size{a.size, a.size};
    const double c = (a.size - 1) / 2.0;
    const LineMask gt = render_circle({c, c}, a.radius, size, a.stroke);
    const std::size_t count = effective_count(gt);

    const fs::path dir(a.outdir);
    for (const char* sub : {"pred", "gt", "masks", "corr"})
        fs::create_directories(dir / sub);
    RunManifest m;
    m.command = "synth circle-shift";
    m.parameters = {{"size", std::to_string(a.size)},   {"radius", fmt(a.radius)},
                    {"stroke", fmt(a.stroke)},          {"shift", a.shifts},
                    {"erase", a.erase},                 {"seed", std::to_string(a.seed)}};

    for (const int s : shifts) {
        const LineMask moved = shift_mask(gt, s, 0);
        if (effective_count(moved) != count)
            throw ArgumentError("shift " + std::to_string(s) + " pushes the circle off the canvas");

        CorrespondenceSet corr;
        corr.source_dims = size;
        corr.target_dims = size;
        for (const auto& p : stroke_order(gt))
            corr.pairs.push_back({{static_cast<double>(p.x), static_cast<double>(p.y)},
                                  {static_cast<double>(p.x + s), static_cast<double>(p.y)}});
        const fs::path corr_file = dir / "corr" / ("shift" + std::to_string(s) + ".json");
        write_correspondences(corr, corr_file);
        m.outputs.push_back(corr_file.string());

        for (const double f : erasures) {
            const LineMask pred = erase_random(moved, f, a.seed);
            const std::string name = "shift" + std::to_string(s) + "_erase" + erase_label(f);
            const fs::path pred_file = dir / "pred" / (name + ".png");
            const fs::path gt_file = dir / "gt" / (name + ".png");
            const fs::path mask_file = dir / "masks" / (name + "_pred.png");
            save_png(to_image(pred), pred_file);
            save_png(to_image(gt), gt_file);
            save_mask(pred, mask_file);
            m.outputs.insert(m.outputs.end(),
                             {pred_file.string(), gt_file.string(), mask_file.string()});
        }
    }
    const fs::path gt_mask = dir / "masks" / "gt.png";
    save_mask(gt, gt_mask);
    m.outputs.push_back(gt_mask.string());
    finish(m, dir / "manifest.json");
    out << "wrote circle-shift scenario (" << shifts.size() * erasures.size() << " pairs) to "
        << dir.string() << "\n";
    return kSuccess;
}

struct TranslateArgs {
    int gap = 1;
    int size = 128;
    double radius = 20.0;
    double stroke = 2.0;
    int dx = 12;
    int dy = 0;
    std::string shape = "circle";
    std::string outdir;
};

int cmd_synth_translate(const TranslateArgs& a, std::ostream& out)
{
    const Dims size{a.size, a.size};
    const double c = (a.size - 1) / 2.0;
    const Point2 start{c - a.dx / 2.0, c - a.dy / 2.0};
    LineMask shape;
    if (a.shape == "circle") {
        shape = render_circle(start, a.radius, size, a.stroke);
    } else if (a.shape == "polyline") {
        const double r = a.radius;
        const std::vector<Point2> zigzag = {{start.x - r, start.y + r},
                                            {start.x - r / 2, start.y - r},
                                            {start.x, start.y + r / 2},
                                            {start.x + r / 2, start.y - r / 2},
                                            {start.x + r, start.y + r}};
        shape = render_polyline(zigzag, size, a.stroke);
    } else {
        throw ArgumentError("--shape must be circle or polyline");
    }
    const SynthScene scene = translating_scene(shape, a.dx, a.dy, a.gap);

    const fs::path dir(a.outdir);
    fs::create_directories(dir / "gt");
    fs::create_directories(dir / "masks");
    RunManifest m;
    m.command = "synth translate";
    m.parameters = {{"gap", std::to_string(a.gap)}, {"size", std::to_string(a.size)},
                    {"radius", fmt(a.radius)},      {"stroke", fmt(a.stroke)},
                    {"dx", std::to_string(a.dx)},   {"dy", std::to_string(a.dy)},
                    {"shape", a.shape}};

    const std::size_t last = scene.frames.size() - 1;
    const fs::path key0 = dir / "key0.png";
    const fs::path key1 = dir / "key1.png";
    save_png(scene.frames.front(), key0);
    save_png(scene.frames.back(), key1);
    m.outputs = {key0.string(), key1.string()};
    for (std::size_t k = 1; k < last; ++k) {
        const fs::path file = dir / "gt" / ("t" + std::to_string(k) + ".png");
        save_png(scene.frames[k], file);
        m.outputs.push_back(file.string());
    }
    for (std::size_t k = 0; k <= last; ++k) {
        const fs::path file = dir / "masks" / ("frame" + std::to_string(k) + ".png");
        save_mask(scene.masks[k], file);
        m.outputs.push_back(file.string());
    }
    const fs::path corr = dir / "corr.json";
    write_correspondences(scene.exact_corr, corr);
    m.outputs.push_back(corr.string());
    m.parameters["description"] = scene.description;
    finish(m, dir / "manifest.json");
    out << "wrote translating scene (" << scene.frames.size() << " frames) to " << dir.string()
        << "\n";
    return kSuccess;
}

} // namespace

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["parameters"] = parameters;
    j["tool_version"] = tool_version;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

std::string tool_version()
{
    return std::string("linea ") + LINEA_VERSION;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spline-based line-art inbetweening and line-art metrics", "linea"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    MatchArgs match;
    auto* match_cmd = app.add_subcommand("match", "Match keypoints between two frames");
    match_cmd->add_option("frame0", match.frame0, "First key frame")->required();
    match_cmd->add_option("frame1", match.frame1, "Second key frame")->required();
    match_cmd->add_option("-o,--output", match.output, "Correspondence JSON to write")->required();
    match_cmd->add_option("--max-keypoints", match.cfg.max_keypoints, "Keypoints kept per frame")
        ->capture_default_str();
    match_cmd->add_option("--ratio", match.cfg.ratio_threshold, "Ratio-test threshold")
        ->capture_default_str();
    match_cmd->add_option("--patch-radius", match.cfg.patch_radius, "Descriptor patch radius")
        ->capture_default_str();
    match_cmd->add_option("--max-disp", match.max_disp, "Reject matches moving farther (px)");

    InterpArgs interp;
    auto* interp_cmd = app.add_subcommand("interp", "Spline-only inbetweening of two key frames");
    interp_cmd->add_option("frame0", interp.frame0, "First key frame")->required();
    interp_cmd->add_option("frame1", interp.frame1, "Second key frame")->required();
    interp_cmd->add_option("--corr", interp.corr, "Correspondence JSON")->required();
    interp_cmd->add_option("--gap", interp.gap, "Number of inbetweens")->required();
    interp_cmd->add_option("--lambda", interp.lambda, "Spline ridge regularisation")
        ->capture_default_str();
    interp_cmd->add_option("--blend", interp.blend, "linear|min-ink")->capture_default_str();
    interp_cmd->add_option("--emit", interp.emit, "Variants to write")->capture_default_str();
    interp_cmd->add_option("-o,--output", interp.outdir, "Output directory")->required();

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Per-frame CD / WCD / EMD against ground truth");
    eval_cmd->add_option("--pred", eval.pred, "Predicted frames directory")->required();
    eval_cmd->add_option("--gt", eval.gt, "Ground-truth frames directory")->required();
    eval_cmd->add_option("--threshold", eval.threshold, "Binarisation threshold")
        ->capture_default_str();
    eval_cmd->add_flag("--no-wcd-offset", eval.no_wcd_offset, "Keep the ln 2 softplus offset");
    eval_cmd->add_option("--pred-suffix", eval.pred_suffix,
                         "Only use predicted frames whose name ends with this (e.g. _blend)");
    eval_cmd->add_option("-o,--output", eval.output, "Report file")->required();
    eval_cmd->add_option("--format", eval.format, "csv|md")->capture_default_str();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Compare methods in a Markdown table");
    bench_cmd->add_option("--gt", bench.gt, "Ground-truth frames directory")->required();
    bench_cmd->add_option("--methods", bench.methods, "name1=dir1,name2=dir2,...")->required();
    bench_cmd->add_option("--threshold", bench.threshold, "Binarisation threshold")
        ->capture_default_str();
    bench_cmd->add_flag("--no-wcd-offset", bench.no_wcd_offset, "Keep the ln 2 softplus offset");
    bench_cmd->add_option("--pred-suffix", bench.pred_suffix, "Predicted frame name filter");
    bench_cmd->add_option("-o,--output", bench.output, "Markdown table to write")->required();

    auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic scenarios");
    synth_cmd->require_subcommand(1);
    CircleShiftArgs circle;
    auto* circle_cmd = synth_cmd->add_subcommand("circle-shift", "Shifted/erased circle pairs");
    circle_cmd->add_option("--size", circle.size, "Canvas side (px)")->capture_default_str();
    circle_cmd->add_option("--radius", circle.radius, "Circle radius (px)")->capture_default_str();
    circle_cmd->add_option("--stroke", circle.stroke, "Stroke width (px)")->capture_default_str();
    circle_cmd->add_option("--shift", circle.shifts, "Comma-separated x shifts")->capture_default_str();
    circle_cmd->add_option("--erase", circle.erase, "Comma-separated erased fractions")
        ->capture_default_str();
    circle_cmd->add_option("--seed", circle.seed, "Erasure seed")->capture_default_str();
    circle_cmd->add_option("-o,--output", circle.outdir, "Output directory")->required();

    TranslateArgs translate;
    auto* translate_cmd = synth_cmd->add_subcommand("translate", "Translating shape sequence");
    translate_cmd->add_option("--gap", translate.gap, "Number of inbetweens")->required();
    translate_cmd->add_option("--size", translate.size, "Canvas side (px)")->capture_default_str();
    translate_cmd->add_option("--radius", translate.radius, "Shape radius (px)")->capture_default_str();
    translate_cmd->add_option("--stroke", translate.stroke, "Stroke width (px)")->capture_default_str();
    translate_cmd->add_option("--dx", translate.dx, "Total x translation")->capture_default_str();
    translate_cmd->add_option("--dy", translate.dy, "Total y translation")->capture_default_str();
    translate_cmd->add_option("--shape", translate.shape, "circle|polyline")->capture_default_str();
    translate_cmd->add_option("-o,--output", translate.outdir, "Output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (*match_cmd)
            return cmd_match(match, out);
        if (*interp_cmd)
            return cmd_interp(interp, out, err);
        if (*eval_cmd)
            return cmd_eval(eval, out);
        if (*bench_cmd)
            return cmd_bench(bench, out);
        if (*circle_cmd)
            return cmd_synth_circle_shift(circle, out);
        if (*translate_cmd)
            return cmd_synth_translate(translate, out);
    } catch (const InsufficientMatchesError& e) {
        err << "error: " << e.what()
            << "\nhint: run an external keypoint matcher and pass its output to `linea interp --corr`\n";
        return kInputError;
    } catch (const DegenerateConfigurationError& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const InsufficientPointsError& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: bad numeric value (" << e.what() << ")\n";
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "error: numeric value out of range (" << e.what() << ")\n";
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace linea::cli

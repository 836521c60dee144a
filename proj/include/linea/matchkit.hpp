#pragma once

#include "linea/geometry.hpp"
#include "linea/raster.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linea {

/// Knobs of the built-in matcher. It is a convenience stand-in for a learned
/// keypoint matcher; benchmark-grade runs should ingest external matches.
struct MatchConfig {
    int max_keypoints = 512;
    int patch_radius = 8;
    double ratio_threshold = 0.8;
    std::optional<double> max_displacement;
    double binarize_threshold = kDefaultBinarizeThreshold;

    /// Throws ArgumentError on out-of-range fields.
    void validate() const;
};

struct CorrespondenceFile {
    CorrespondenceSet set;
    std::size_t clamped = 0; // number of points moved onto the image border
};

/// Parses correspondence JSON:
///   {"version":1,"source_dims":[w,h],"target_dims":[w,h],
///    "pairs":[[[x0,y0],[x1,y1]], ...]}
/// Points are clamped into the given frame sizes (the file's own dims when
/// omitted). Throws ParseError naming the byte offset/line or the offending
/// field, and EmptySetError when every point lies outside its frame.
CorrespondenceFile parse_correspondences(std::string_view json,
                                         std::optional<Dims> dims0 = std::nullopt,
                                         std::optional<Dims> dims1 = std::nullopt);

CorrespondenceFile read_correspondences(const std::filesystem::path& path,
                                        std::optional<Dims> dims0 = std::nullopt,
                                        std::optional<Dims> dims1 = std::nullopt);

/// Canonical text: pairs sorted by source x, then source y (then target),
/// one pair per line, shortest round-trip decimal for every coordinate.
std::string format_correspondences(const CorrespondenceSet& set);

void write_correspondences(const CorrespondenceSet& set, const std::filesystem::path& path);

struct Keypoint {
    int x = 0;
    int y = 0;
    double response = 0.0;
};

/// Distance-transform surface the matcher works on: D(binarize(img)) capped
/// at `cap` pixels and scaled into [0, 1].
std::vector<double> dt_surface(const GrayImage& img, double cap, double threshold);

/// Harris-style corners on a row-major surface: 5x5 local maxima of the
/// response above 1% of the frame maximum, at least `border` pixels from the
/// edge, strongest first (ties by row, then column), at most `max_count`.
std::vector<Keypoint> detect_keypoints(const std::vector<double>& surface, Dims dims, int border,
                                       int max_count);

/// Deterministic fallback matcher: DT-surface corners, zero-mean unit-norm
/// DT patches, mutual nearest neighbours with a ratio test, optional
/// displacement gate. Throws InsufficientMatchesError below three pairs.
CorrespondenceSet fallback_match(const GrayImage& y0, const GrayImage& y1,
                                 const MatchConfig& cfg = {});

} // namespace linea

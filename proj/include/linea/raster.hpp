#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace linea {

/// Intensity at or above which a pixel counts as background when binarizing.
inline constexpr double kDefaultBinarizeThreshold = 0.95;

struct Dims {
    int width = 0;
    int height = 0;

    std::size_t area() const noexcept
    {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Image diagonal sqrt(H^2 + W^2); the normaliser of the chamfer metrics and
/// the distance assigned everywhere when a mask has no effective pixels.
double diameter(Dims dims) noexcept;

/// Row-major grayscale frame, 1 = white background, 0 = black ink.
class GrayImage {
public:
    GrayImage() = default;

    /// Constant image.
    GrayImage(int width, int height, double value = 1.0);

    /// Takes ownership of row-major intensities. Throws ArgumentError if the
    /// length is not width*height or any value lies outside [0, 1].
    GrayImage(int width, int height, std::vector<double> data);

    int width() const noexcept { return dims_.width; }
    int height() const noexcept { return dims_.height; }
    Dims dims() const noexcept { return dims_; }

    double at(int x, int y) const noexcept
    {
        return data_[static_cast<std::size_t>(y) * dims_.width + x];
    }

    /// Throws ArgumentError for values outside [0, 1].
    void set(int x, int y, double value);

    std::span<const double> pixels() const noexcept { return data_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    Dims dims_;
    std::vector<double> data_;
};

/// Effective ("ink") pixel map. Stored as bytes so parallel kernels can write
/// neighbouring entries without the std::vector<bool> proxy hazard.
class LineMask {
public:
    LineMask() = default;
    LineMask(int width, int height, bool value = false);
    LineMask(int width, int height, std::vector<std::uint8_t> bits);

    int width() const noexcept { return dims_.width; }
    int height() const noexcept { return dims_.height; }
    Dims dims() const noexcept { return dims_; }

    bool at(int x, int y) const noexcept
    {
        return bits_[static_cast<std::size_t>(y) * dims_.width + x] != 0;
    }
    bool contains(int x, int y) const noexcept
    {
        return x >= 0 && y >= 0 && x < dims_.width && y < dims_.height;
    }
    void set(int x, int y, bool value) noexcept
    {
        bits_[static_cast<std::size_t>(y) * dims_.width + x] = value ? 1 : 0;
    }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const LineMask&, const LineMask&) = default;

private:
    Dims dims_;
    std::vector<std::uint8_t> bits_;
};

/// Per-pixel Euclidean distance (pixel units) to the nearest effective pixel.
class DistanceMap {
public:
    DistanceMap() = default;
    DistanceMap(int width, int height, std::vector<double> dist);

    int width() const noexcept { return dims_.width; }
    int height() const noexcept { return dims_.height; }
    Dims dims() const noexcept { return dims_; }

    double at(int x, int y) const noexcept
    {
        return dist_[static_cast<std::size_t>(y) * dims_.width + x];
    }
    std::span<const double> values() const noexcept { return dist_; }

private:
    Dims dims_;
    std::vector<double> dist_;
};

/// Effective pixels are those strictly darker than `threshold` (ink polarity).
/// Throws ArgumentError unless 0 < threshold <= 1.
LineMask binarize(const GrayImage& img, double threshold = kDefaultBinarizeThreshold);

/// Renders a mask as line art: effective pixels black (0), the rest white (1).
GrayImage to_image(const LineMask& mask);

std::size_t effective_count(const LineMask& mask) noexcept;

/// Exact Euclidean distance transform (separable lower-envelope algorithm,
/// parallel over columns then rows). An empty mask yields diameter() everywhere.
DistanceMap distance_transform(const LineMask& mask);

/// Exhaustive nearest-effective-pixel search. Test oracle only; refuses masks
/// with more than 10^4 pixels.
DistanceMap distance_transform_bruteforce(const LineMask& mask);

inline constexpr std::size_t kBruteforceMaxPixels = 10'000;

} // namespace linea

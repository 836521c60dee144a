#pragma once

#include "linea/raster.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace linea {

/// Image-plane point: x = column, y = row, pixel centres at integers.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Correspondence {
    Point2 source; // frame 0
    Point2 target; // frame 1

    friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// Matched keypoints between two frames of known size.
struct CorrespondenceSet {
    std::vector<Correspondence> pairs;
    Dims source_dims;
    Dims target_dims;

    std::size_t size() const noexcept { return pairs.size(); }
    bool empty() const noexcept { return pairs.empty(); }

    /// Swaps the roles of the two frames.
    CorrespondenceSet reversed() const;

    friend bool operator==(const CorrespondenceSet&, const CorrespondenceSet&) = default;
};

struct Displacement {
    double dx = 0.0;
    double dy = 0.0;

    friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Dense per-pixel displacement. The value stored at (x, y) says the matching
/// point in the other frame is (x + dx, y + dy).
class MotionField {
public:
    MotionField() = default;

    /// All-zero field.
    MotionField(int width, int height);

    /// Throws ArgumentError on a length mismatch or a non-finite component.
    MotionField(int width, int height, std::vector<Displacement> flow);

    int width() const noexcept { return dims_.width; }
    int height() const noexcept { return dims_.height; }
    Dims dims() const noexcept { return dims_; }

    const Displacement& at(int x, int y) const noexcept
    {
        return flow_[static_cast<std::size_t>(y) * dims_.width + x];
    }
    std::span<const Displacement> values() const noexcept { return flow_; }

    friend bool operator==(const MotionField&, const MotionField&) = default;

private:
    Dims dims_;
    std::vector<Displacement> flow_;
};

} // namespace linea

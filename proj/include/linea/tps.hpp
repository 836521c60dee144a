#pragma once

#include "linea/geometry.hpp"

#include <Eigen/Core>

#include <cmath>

#include <span>
#include <vector>

namespace linea {

/// Dense-solve budget for the (n+3)x(n+3) spline system.
inline constexpr std::size_t kMaxControlPoints = 5000;

/// Systems whose reciprocal condition estimate falls below this are rejected.
/// The estimate is taken on the coordinate-normalised system, so it does not
/// depend on the image resolution.
inline constexpr double kMinReciprocalCondition = 1e-13;

/// Radial basis U(r) = r^2 ln r with U(0) = 0, taken from the squared radius.
inline double tps_kernel_sq(double r2) noexcept
{
    return r2 > 0.0 ? 0.5 * r2 * std::log(r2) : 0.0;
}

/// Thin-plate spline F(p) = A [p; 1] + sum_i w_i U(|c_i - p|), mapping frame
/// coordinates around control points c_i. Immutable once built.
class TpsTransform {
public:
    using Affine = Eigen::Matrix<double, 2, 3>;
    using Weights = Eigen::Matrix<double, Eigen::Dynamic, 2>;

    /// Identity map with no kernel terms.
    TpsTransform();

    /// Throws ArgumentError if weights.rows() != controls.size() or lambda < 0.
    TpsTransform(Affine affine, Weights weights, std::vector<Point2> controls, double lambda);

    const Affine& affine() const noexcept { return affine_; }
    const Weights& weights() const noexcept { return weights_; }
    std::span<const Point2> controls() const noexcept { return controls_; }
    double lambda() const noexcept { return lambda_; }

    Point2 operator()(Point2 p) const noexcept;

private:
    Affine affine_;
    Weights weights_;
    std::vector<Point2> controls_;
    double lambda_ = 0.0;
};

/// Solves [[K + lambda I, P], [P^T, 0]] [W; A^T] = [v; 0] with the sources as
/// controls and the targets as v, so F(source_i) ~ target_i.
///
/// Throws InsufficientPointsError for n < 3, ArgumentError for lambda < 0 or
/// n > kMaxControlPoints, and DegenerateConfigurationError (carrying the
/// condition estimate) for singular layouts such as collinear or duplicate
/// controls without regularisation.
TpsTransform fit_tps(const CorrespondenceSet& corr, double lambda = 0.0);

std::vector<Point2> eval_tps(const TpsTransform& tps, std::span<const Point2> points);

/// Displacement F(g) - g on the integer pixel grid of a width x height frame.
MotionField motion_field(const TpsTransform& tps, int width, int height);

/// trace(W^T K W) over both output coordinates, clamped at zero.
double bending_energy(const TpsTransform& tps);

} // namespace linea

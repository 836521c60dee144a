#include "linea/tps.hpp"

#include "linea/error.hpp"
#include "linea/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cstdio>
#include <string>

namespace linea {

CorrespondenceSet CorrespondenceSet::reversed() const
{
    CorrespondenceSet out;
    out.source_dims = target_dims;
    out.target_dims = source_dims;
    out.pairs.reserve(pairs.size());
    for (const auto& c : pairs)
        out.pairs.push_back({c.target, c.source});
    return out;
}

MotionField::MotionField(int width, int height)
{
    if (width < 0 || height < 0)
        throw ArgumentError("MotionField: negative dimensions");
    dims_ = {width, height};
    flow_.assign(dims_.area(), Displacement{});
}

MotionField::MotionField(int width, int height, std::vector<Displacement> flow)
{
    if (width < 0 || height < 0)
        throw ArgumentError("MotionField: negative dimensions");
    dims_ = {width, height};
    if (flow.size() != dims_.area())
        throw ArgumentError("MotionField: flow length does not match dimensions");
    for (const auto& d : flow)
        if (!std::isfinite(d.dx) || !std::isfinite(d.dy))
            throw ArgumentError("MotionField: non-finite displacement");
    flow_ = std::move(flow);
}

TpsTransform::TpsTransform()
    : affine_(Affine::Zero()), weights_(0, 2)
{
    affine_(0, 0) = 1.0;
    affine_(1, 1) = 1.0;
}

TpsTransform::TpsTransform(Affine affine, Weights weights, std::vector<Point2> controls,
                           double lambda)
    : affine_(std::move(affine)), weights_(std::move(weights)), controls_(std::move(controls)),
      lambda_(lambda)
{
    if (static_cast<std::size_t>(weights_.rows()) != controls_.size())
        throw ArgumentError("TpsTransform: weight rows do not match control count");
    if (!(lambda_ >= 0.0))
        throw ArgumentError("TpsTransform: lambda must be non-negative");
}

Point2 TpsTransform::operator()(Point2 p) const noexcept
{
    double fx = affine_(0, 0) * p.x + affine_(0, 1) * p.y + affine_(0, 2);
    double fy = affine_(1, 0) * p.x + affine_(1, 1) * p.y + affine_(1, 2);
    const std::size_t n = controls_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = controls_[i].x - p.x;
        const double dy = controls_[i].y - p.y;
        const double u = tps_kernel_sq(dx * dx + dy * dy);
        fx += weights_(static_cast<Eigen::Index>(i), 0) * u;
        fy += weights_(static_cast<Eigen::Index>(i), 1) * u;
    }
    return {fx, fy};
}

TpsTransform fit_tps(const CorrespondenceSet& corr, double lambda)
{
    const std::size_t n = corr.pairs.size();
    if (n < 3)
        throw InsufficientPointsError("fit_tps: need at least 3 correspondences, got "
                                      + std::to_string(n));
    if (n > kMaxControlPoints)
        throw ArgumentError("fit_tps: " + std::to_string(n) + " correspondences exceed the "
                            + std::to_string(kMaxControlPoints) + "-point dense solve budget");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw ArgumentError("fit_tps: lambda must be a finite non-negative number");
    for (const auto& c : corr.pairs)
        if (!std::isfinite(c.source.x) || !std::isfinite(c.source.y)
            || !std::isfinite(c.target.x) || !std::isfinite(c.target.y))
            throw ArgumentError("fit_tps: non-finite correspondence coordinate");

    // Solve around the centroid with unit spread. The spline is invariant
    // under this similarity: kernel weights rescale by 1/s^2, the ridge term
    // by s^2, and a ln(s) quadratic term collapses to a constant under the
    // side conditions and is folded into the translation below.
    double cx = 0.0;
    double cy = 0.0;
    for (const auto& c : corr.pairs) {
        cx += c.source.x;
        cy += c.source.y;
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);
    double spread = 0.0;
    for (const auto& c : corr.pairs)
        spread = std::max({spread, std::abs(c.source.x - cx), std::abs(c.source.y - cy)});
    if (spread == 0.0)
        throw DegenerateConfigurationError(
            "fit_tps: all control points coincide (reciprocal condition 0)", 0.0);

    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixX2d unit(ni, 2);
    for (Eigen::Index i = 0; i < ni; ++i) {
        unit(i, 0) = (corr.pairs[i].source.x - cx) / spread;
        unit(i, 1) = (corr.pairs[i].source.y - cy) / spread;
    }

    // The affine block is only determined when the controls span the plane;
    // no amount of ridge regularisation fixes a collinear layout.
    {
        Eigen::MatrixXd homogeneous(ni, 3);
        homogeneous << unit, Eigen::VectorXd::Ones(ni);
        const Eigen::Matrix3d gram = homogeneous.transpose() * homogeneous / static_cast<double>(n);
        const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(gram).eigenvalues()(0);
        if (!(smallest > 1e-12)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", std::max(smallest, 0.0));
            throw DegenerateConfigurationError(
                "fit_tps: control points are collinear (affine reciprocal condition estimate "
                    + std::string(buf) + ")",
                std::max(smallest, 0.0));
        }
    }

    const double ridge = lambda / (spread * spread);
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(ni + 3, ni + 3);
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index j = i + 1; j < ni; ++j) {
            const double u = tps_kernel_sq((unit.row(i) - unit.row(j)).squaredNorm());
            system(i, j) = u;
            system(j, i) = u;
        }
        system(i, i) = ridge;
        system(i, ni) = unit(i, 0);
        system(i, ni + 1) = unit(i, 1);
        system(i, ni + 2) = 1.0;
        system(ni, i) = unit(i, 0);
        system(ni + 1, i) = unit(i, 1);
        system(ni + 2, i) = 1.0;
    }

    Eigen::MatrixX2d rhs = Eigen::MatrixX2d::Zero(ni + 3, 2);
    for (Eigen::Index i = 0; i < ni; ++i) {
        rhs(i, 0) = corr.pairs[i].target.x;
        rhs(i, 1) = corr.pairs[i].target.y;
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond >= kMinReciprocalCondition)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", rcond);
        throw DegenerateConfigurationError(
            "fit_tps: degenerate control layout (reciprocal condition estimate "
                + std::string(buf) + "); controls may be collinear or duplicated, try lambda > 0",
            rcond);
    }
    const Eigen::MatrixX2d sol = lu.solve(rhs);
    const double residual = (system * sol - rhs).norm();
    if (!sol.allFinite() || !(residual <= 1e-8 * (1.0 + rhs.norm())))
        throw DegenerateConfigurationError(
            "fit_tps: solve failed to reproduce the system (residual "
                + std::to_string(residual) + "); degenerate control layout",
            rcond);

    const Eigen::MatrixX2d unit_weights = sol.topRows(ni);
    // Rows of sol below the weights hold A'^T in unit coordinates.
    TpsTransform::Affine unit_affine = sol.bottomRows(3).transpose();

    Eigen::Matrix3d to_unit = Eigen::Matrix3d::Identity();
    to_unit(0, 0) = 1.0 / spread;
    to_unit(1, 1) = 1.0 / spread;
    to_unit(0, 2) = -cx / spread;
    to_unit(1, 2) = -cy / spread;
    TpsTransform::Affine affine = unit_affine * to_unit;
    const Eigen::Vector2d fold = std::log(spread)
        * (unit_weights.array().colwise() * unit.rowwise().squaredNorm().array())
              .colwise()
              .sum()
              .transpose();
    affine.col(2) -= fold;

    std::vector<Point2> controls;
    controls.reserve(n);
    for (const auto& c : corr.pairs)
        controls.push_back(c.source);
    return TpsTransform(affine, unit_weights / (spread * spread), std::move(controls), lambda);
}

std::vector<Point2> eval_tps(const TpsTransform& tps, std::span<const Point2> points)
{
    std::vector<Point2> out(points.size());
    parallel_for(static_cast<std::int64_t>(points.size()),
                 [&](std::int64_t i) { out[i] = tps(points[i]); });
    return out;
}

MotionField motion_field(const TpsTransform& tps, int width, int height)
{
    if (width < 1 || height < 1)
        throw ArgumentError("motion_field: width and height must be >= 1");
    std::vector<Displacement> flow(static_cast<std::size_t>(width) * height);
    parallel_for(height, [&](std::int64_t y) {
        Displacement* row = flow.data() + y * width;
        for (int x = 0; x < width; ++x) {
            const Point2 g{static_cast<double>(x), static_cast<double>(y)};
            const Point2 f = tps(g);
            row[x] = {f.x - g.x, f.y - g.y};
        }
    });
    return MotionField(width, height, std::move(flow));
}

double bending_energy(const TpsTransform& tps)
{
    const auto controls = tps.controls();
    const auto n = static_cast<Eigen::Index>(controls.size());
    if (n == 0)
        return 0.0;
    Eigen::MatrixXd kernel(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        kernel(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dx = controls[i].x - controls[j].x;
            const double dy = controls[i].y - controls[j].y;
            kernel(i, j) = kernel(j, i) = tps_kernel_sq(dx * dx + dy * dy);
        }
    }
    const auto& w = tps.weights();
    const double energy = (w.transpose() * kernel * w).trace();
    return std::max(0.0, energy);
}

} // namespace linea

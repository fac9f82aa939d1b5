#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "feasdr/error.hpp"

namespace feasdr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Closed convex set with an exact nearest-point projection.
///
/// Five variants are supported: halfspace {x : <a,x> <= b}, hyperplane
/// {x : <a,x> = b}, euclidean ball, axis-aligned box, and affine subspace
/// {x : Ax = b}. Every variant is nonempty by construction; inconsistent
/// affine systems are rejected. Values are immutable and cheap to copy.
class ConvexSet {
public:
    enum class Kind { halfspace, hyperplane, ball, box, affine_subspace };

    static ConvexSet halfspace(Vector normal, double offset);
    static ConvexSet hyperplane(Vector normal, double offset);
    static ConvexSet ball(Vector center, double radius);
    static ConvexSet box(Vector lower, Vector upper);
    static ConvexSet affine_subspace(Matrix coeffs, Vector rhs);

    Kind kind() const noexcept;
    int dim() const noexcept;

    /// Nearest point of the set to x.
    Vector project(const Vector& x) const;

    /// Euclidean distance ||x - project(x)||, computed in closed form.
    double distance(const Vector& x) const;

    bool contains(const Vector& x, double tol) const;

    /// Membership with the default tolerance 1e-9 * (1 + ||x||).
    bool contains(const Vector& x) const;

    /// Largest s such that the ball of radius s around p is contained in the
    /// set; negative when p is outside. Flat variants (hyperplane, affine
    /// subspace of positive codimension) return 0 for points on the set.
    double interior_margin(const Vector& p) const;

    /// Short tag such as "halfspace(dim=2)", used in error messages.
    std::string describe() const;

    // Variant accessors. Calling one that does not match kind() throws.
    const Vector& normal() const;
    double offset() const;
    const Vector& center() const;
    double radius() const;
    const Vector& lower() const;
    const Vector& upper() const;
    const Matrix& coeffs() const;
    const Vector& rhs() const;

private:
    struct Impl;
    explicit ConvexSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Ordered family of convex sets over a common ambient dimension.
///
/// An optional reference point may be attached: with slack > 0 it certifies
/// that a ball of that radius around the point lies inside every set (so the
/// intersection has nonempty interior); with slack = 0 it certifies plain
/// membership in every set.
class FeasibilityProblem {
public:
    explicit FeasibilityProblem(std::vector<ConvexSet> sets);
    FeasibilityProblem(std::vector<ConvexSet> sets, Vector interior_point, double slack);

    int dim() const noexcept { return dim_; }
    int set_count() const noexcept { return static_cast<int>(sets_.size()); }
    const std::vector<ConvexSet>& sets() const noexcept { return sets_; }
    const ConvexSet& set(int i) const { return sets_.at(static_cast<std::size_t>(i)); }

    const std::optional<Vector>& interior_point() const noexcept { return interior_point_; }
    double slack() const noexcept { return slack_; }

    /// max_i distance(C_i, x); the feasibility residual.
    double max_residual(const Vector& x) const;

private:
    void validate();

    std::vector<ConvexSet> sets_;
    int dim_ = 0;
    std::optional<Vector> interior_point_;
    double slack_ = 0.0;
};

namespace detail {
void require_dim(int expected, const Vector& x, const char* what);
void require_finite(const Vector& x, const char* what);
} // namespace detail

} // namespace feasdr

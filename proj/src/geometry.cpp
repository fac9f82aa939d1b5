#include "feasdr/geometry.hpp"

#include <cmath>
#include <limits>
#include <variant>

namespace feasdr {

namespace {

struct HalfspaceData {
    Vector normal;
    double offset;
    double normal_sqnorm;
};

struct HyperplaneData {
    Vector normal;
    double offset;
    double normal_sqnorm;
};

struct BallData {
    Vector center;
    double radius;
};

struct BoxData {
    Vector lower;
    Vector upper;
};

struct AffineData {
    Matrix coeffs;
    Vector rhs;
    // Rank-revealing factorization; solve() returns the minimum-norm solution,
    // which treats singular directions as unconstrained.
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
};

using SetData =
    std::variant<HalfspaceData, HyperplaneData, BallData, BoxData, AffineData>;

} // namespace

struct ConvexSet::Impl {
    Kind kind;
    int dim;
    SetData data;
};

namespace detail {

void require_finite(const Vector& x, const char* what) {
    if (!x.allFinite())
        fail(ErrorCode::not_finite, std::string(what) + ": non-finite entries");
}

void require_dim(int expected, const Vector& x, const char* what) {
    if (x.size() != expected)
        fail(ErrorCode::dimension_mismatch,
             std::string(what) + ": expected dimension " + std::to_string(expected) +
                 ", got " + std::to_string(x.size()));
}

} // namespace detail

namespace {

void check_normal(const Vector& a, const char* what) {
    detail::require_finite(a, what);
    if (a.size() == 0)
        fail(ErrorCode::invalid_argument, std::string(what) + ": empty normal");
    if (a.norm() == 0.0)
        fail(ErrorCode::invalid_argument, std::string(what) + ": zero normal");
}

} // namespace

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
    check_normal(normal, "halfspace");
    if (!std::isfinite(offset))
        fail(ErrorCode::not_finite, "halfspace: non-finite offset");
    const double sq = normal.squaredNorm();
    auto impl = std::make_shared<Impl>(
        Impl{Kind::halfspace, static_cast<int>(normal.size()),
             HalfspaceData{std::move(normal), offset, sq}});
    return ConvexSet(std::move(impl));
}

ConvexSet ConvexSet::hyperplane(Vector normal, double offset) {
    check_normal(normal, "hyperplane");
    if (!std::isfinite(offset))
        fail(ErrorCode::not_finite, "hyperplane: non-finite offset");
    const double sq = normal.squaredNorm();
    auto impl = std::make_shared<Impl>(
        Impl{Kind::hyperplane, static_cast<int>(normal.size()),
             HyperplaneData{std::move(normal), offset, sq}});
    return ConvexSet(std::move(impl));
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
    detail::require_finite(center, "ball");
    if (center.size() == 0)
        fail(ErrorCode::invalid_argument, "ball: empty center");
    if (!std::isfinite(radius) || radius <= 0.0)
        fail(ErrorCode::invalid_argument, "ball: radius must be positive");
    auto impl = std::make_shared<Impl>(Impl{Kind::ball, static_cast<int>(center.size()),
                                            BallData{std::move(center), radius}});
    return ConvexSet(std::move(impl));
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
    detail::require_finite(lower, "box");
    detail::require_finite(upper, "box");
    if (lower.size() == 0 || lower.size() != upper.size())
        fail(ErrorCode::invalid_argument, "box: lower/upper size mismatch");
    if ((lower.array() > upper.array()).any())
        fail(ErrorCode::invalid_argument, "box: requires lower <= upper componentwise");
    auto impl = std::make_shared<Impl>(Impl{Kind::box, static_cast<int>(lower.size()),
                                            BoxData{std::move(lower), std::move(upper)}});
    return ConvexSet(std::move(impl));
}

ConvexSet ConvexSet::affine_subspace(Matrix coeffs, Vector rhs) {
    if (coeffs.rows() == 0 || coeffs.cols() == 0)
        fail(ErrorCode::invalid_argument, "affine_subspace: empty coefficient matrix");
    if (!coeffs.allFinite() || !rhs.allFinite())
        fail(ErrorCode::not_finite, "affine_subspace: non-finite data");
    if (coeffs.rows() != rhs.size())
        fail(ErrorCode::dimension_mismatch,
             "affine_subspace: rows of A must match length of b");

    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(coeffs);
    // Nonempty iff Ax = b is consistent; check the least-squares residual.
    const Vector lsq = cod.solve(rhs);
    const double res = (coeffs * lsq - rhs).norm();
    if (res > 1e-10 * (1.0 + rhs.norm()))
        fail(ErrorCode::invalid_argument,
             "affine_subspace: system Ax = b is inconsistent (residual " +
                 std::to_string(res) + ")");

    const int n = static_cast<int>(coeffs.cols());
    auto impl = std::make_shared<Impl>(
        Impl{Kind::affine_subspace, n,
             AffineData{std::move(coeffs), std::move(rhs), std::move(cod)}});
    return ConvexSet(std::move(impl));
}

ConvexSet::Kind ConvexSet::kind() const noexcept { return impl_->kind; }
int ConvexSet::dim() const noexcept { return impl_->dim; }

Vector ConvexSet::project(const Vector& x) const {
    detail::require_dim(impl_->dim, x, "project");
    detail::require_finite(x, "project");
    return std::visit(
        [&x](const auto& d) -> Vector {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfspaceData>) {
                const double violation = d.normal.dot(x) - d.offset;
                if (violation <= 0.0) return x;
                return x - (violation / d.normal_sqnorm) * d.normal;
            } else if constexpr (std::is_same_v<T, HyperplaneData>) {
                const double violation = d.normal.dot(x) - d.offset;
                if (violation == 0.0) return x;
                return x - (violation / d.normal_sqnorm) * d.normal;
            } else if constexpr (std::is_same_v<T, BallData>) {
                const Vector diff = x - d.center;
                const double dist = diff.norm();
                if (dist <= d.radius) return x;
                return d.center + (d.radius / dist) * diff;
            } else if constexpr (std::is_same_v<T, BoxData>) {
                return x.cwiseMax(d.lower).cwiseMin(d.upper);
            } else {
                static_assert(std::is_same_v<T, AffineData>);
                const Vector residual = d.coeffs * x - d.rhs;
                if (residual.isZero(0.0)) return x;
                // Minimum-norm correction lies in the row space of A, which is
                // exactly the orthogonal complement of the subspace direction.
                return x - d.cod.solve(residual);
            }
        },
        impl_->data);
}

double ConvexSet::distance(const Vector& x) const {
    detail::require_dim(impl_->dim, x, "distance");
    detail::require_finite(x, "distance");
    return std::visit(
        [&x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfspaceData>) {
                const double violation = d.normal.dot(x) - d.offset;
                return violation <= 0.0 ? 0.0 : violation / std::sqrt(d.normal_sqnorm);
            } else if constexpr (std::is_same_v<T, HyperplaneData>) {
                return std::abs(d.normal.dot(x) - d.offset) / std::sqrt(d.normal_sqnorm);
            } else if constexpr (std::is_same_v<T, BallData>) {
                return std::max(0.0, (x - d.center).norm() - d.radius);
            } else if constexpr (std::is_same_v<T, BoxData>) {
                const Vector below = (d.lower - x).cwiseMax(0.0);
                const Vector above = (x - d.upper).cwiseMax(0.0);
                return std::sqrt(below.squaredNorm() + above.squaredNorm());
            } else {
                static_assert(std::is_same_v<T, AffineData>);
                const Vector residual = d.coeffs * x - d.rhs;
                if (residual.isZero(0.0)) return 0.0;
                return d.cod.solve(residual).norm();
            }
        },
        impl_->data);
}

bool ConvexSet::contains(const Vector& x, double tol) const {
    if (tol < 0.0)
        fail(ErrorCode::invalid_argument, "contains: tolerance must be nonnegative");
    return distance(x) <= tol;
}

bool ConvexSet::contains(const Vector& x) const {
    return distance(x) <= 1e-9 * (1.0 + x.norm());
}

double ConvexSet::interior_margin(const Vector& p) const {
    detail::require_dim(impl_->dim, p, "interior_margin");
    detail::require_finite(p, "interior_margin");
    return std::visit(
        [&p, this](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfspaceData>) {
                return (d.offset - d.normal.dot(p)) / std::sqrt(d.normal_sqnorm);
            } else if constexpr (std::is_same_v<T, HyperplaneData>) {
                return -std::abs(d.normal.dot(p) - d.offset) / std::sqrt(d.normal_sqnorm);
            } else if constexpr (std::is_same_v<T, BallData>) {
                return d.radius - (p - d.center).norm();
            } else if constexpr (std::is_same_v<T, BoxData>) {
                return std::min((p - d.lower).minCoeff(), (d.upper - p).minCoeff());
            } else {
                static_assert(std::is_same_v<T, AffineData>);
                if (d.cod.rank() == 0) return std::numeric_limits<double>::infinity();
                return -this->distance(p);
            }
        },
        impl_->data);
}

std::string ConvexSet::describe() const {
    const char* name = nullptr;
    switch (impl_->kind) {
        case Kind::halfspace: name = "halfspace"; break;
        case Kind::hyperplane: name = "hyperplane"; break;
        case Kind::ball: name = "ball"; break;
        case Kind::box: name = "box"; break;
        case Kind::affine_subspace: name = "affine_subspace"; break;
    }
    return std::string(name) + "(dim=" + std::to_string(impl_->dim) + ")";
}

namespace {
[[noreturn]] void bad_accessor(const char* accessor, const std::string& desc) {
    fail(ErrorCode::invalid_argument,
         std::string(accessor) + " not available for " + desc);
}
} // namespace

const Vector& ConvexSet::normal() const {
    if (auto* h = std::get_if<HalfspaceData>(&impl_->data)) return h->normal;
    if (auto* h = std::get_if<HyperplaneData>(&impl_->data)) return h->normal;
    bad_accessor("normal()", describe());
}

double ConvexSet::offset() const {
    if (auto* h = std::get_if<HalfspaceData>(&impl_->data)) return h->offset;
    if (auto* h = std::get_if<HyperplaneData>(&impl_->data)) return h->offset;
    bad_accessor("offset()", describe());
}

const Vector& ConvexSet::center() const {
    if (auto* b = std::get_if<BallData>(&impl_->data)) return b->center;
    bad_accessor("center()", describe());
}

double ConvexSet::radius() const {
    if (auto* b = std::get_if<BallData>(&impl_->data)) return b->radius;
    bad_accessor("radius()", describe());
}

const Vector& ConvexSet::lower() const {
    if (auto* b = std::get_if<BoxData>(&impl_->data)) return b->lower;
    bad_accessor("lower()", describe());
}

const Vector& ConvexSet::upper() const {
    if (auto* b = std::get_if<BoxData>(&impl_->data)) return b->upper;
    bad_accessor("upper()", describe());
}

const Matrix& ConvexSet::coeffs() const {
    if (auto* a = std::get_if<AffineData>(&impl_->data)) return a->coeffs;
    bad_accessor("coeffs()", describe());
}

const Vector& ConvexSet::rhs() const {
    if (auto* a = std::get_if<AffineData>(&impl_->data)) return a->rhs;
    bad_accessor("rhs()", describe());
}

FeasibilityProblem::FeasibilityProblem(std::vector<ConvexSet> sets)
    : sets_(std::move(sets)) {
    validate();
}

FeasibilityProblem::FeasibilityProblem(std::vector<ConvexSet> sets, Vector interior_point,
                                       double slack)
    : sets_(std::move(sets)), interior_point_(std::move(interior_point)), slack_(slack) {
    validate();
}

void FeasibilityProblem::validate() {
    if (sets_.empty())
        fail(ErrorCode::invalid_argument, "feasibility problem: needs at least one set");
    dim_ = sets_.front().dim();
    for (std::size_t i = 1; i < sets_.size(); ++i) {
        if (sets_[i].dim() != dim_)
            fail(ErrorCode::dimension_mismatch,
                 "feasibility problem: set " + std::to_string(i) + " has dimension " +
                     std::to_string(sets_[i].dim()) + ", expected " + std::to_string(dim_));
    }
    if (interior_point_) {
        detail::require_dim(dim_, *interior_point_, "interior point");
        detail::require_finite(*interior_point_, "interior point");
        if (!std::isfinite(slack_) || slack_ < 0.0)
            fail(ErrorCode::invalid_argument, "feasibility problem: slack must be >= 0");
        const double tol = 1e-9 * (1.0 + interior_point_->norm());
        for (std::size_t i = 0; i < sets_.size(); ++i) {
            const double margin = sets_[i].interior_margin(*interior_point_);
            if (margin + tol < slack_)
                fail(ErrorCode::invalid_argument,
                     "feasibility problem: certified ball of radius " +
                         std::to_string(slack_) + " does not fit inside set " +
                         std::to_string(i) + " (" + sets_[i].describe() + ", margin " +
                         std::to_string(margin) + ")");
        }
    }
}

double FeasibilityProblem::max_residual(const Vector& x) const {
    double worst = 0.0;
    for (const auto& s : sets_) worst = std::max(worst, s.distance(x));
    return worst;
}

} // namespace feasdr

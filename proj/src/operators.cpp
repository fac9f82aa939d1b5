#include "feasdr/operators.hpp"

#include <cmath>
#include <limits>
#include <variant>

namespace feasdr {

namespace {

struct ProjectionNode {
    ConvexSet set;
};
struct ReflectionNode {
    ConvexSet set;
};
struct RelaxationNode {
    Operator inner;
    double lambda;
};
struct TwoSetDrNode {
    ConvexSet first;
    ConvexSet second;
};
struct RSetDrNode {
    std::vector<ConvexSet> sets;
};
struct CompositionNode {
    std::vector<Operator> stages;
};
struct CombinationNode {
    std::vector<std::pair<double, Operator>> terms;
};

using NodeData = std::variant<ProjectionNode, ReflectionNode, RelaxationNode,
                              TwoSetDrNode, RSetDrNode, CompositionNode, CombinationNode>;

Vector reflect(const ConvexSet& set, const Vector& x) {
    return 2.0 * set.project(x) - x;
}

// Shared by the two-set and r-set nodes so that r = 2 matches bitwise.
Vector half_sum_with_composite_reflection(const ConvexSet* sets, std::size_t count,
                                          const Vector& x) {
    Vector y = x;
    for (std::size_t i = 0; i < count; ++i) y = reflect(sets[i], y);
    return 0.5 * (x + y);
}

} // namespace

struct Operator::Node {
    int dim;
    NodeData data;
};

int Operator::dim() const noexcept { return node_->dim; }

Operator Operator::projection(ConvexSet set) {
    const int n = set.dim();
    return Operator(std::make_shared<Node>(Node{n, ProjectionNode{std::move(set)}}));
}

Operator Operator::reflection(ConvexSet set) {
    const int n = set.dim();
    return Operator(std::make_shared<Node>(Node{n, ReflectionNode{std::move(set)}}));
}

Operator Operator::relax(Operator inner, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 2.0))
        fail(ErrorCode::invalid_argument,
             "relax: lambda must lie in [0, 2], got " + std::to_string(lambda));
    const int n = inner.dim();
    return Operator(std::make_shared<Node>(Node{n, RelaxationNode{std::move(inner), lambda}}));
}

Operator Operator::two_set_dr(ConvexSet first, ConvexSet second) {
    if (first.dim() != second.dim())
        fail(ErrorCode::dimension_mismatch,
             "two_set_dr: sets have dimensions " + std::to_string(first.dim()) + " and " +
                 std::to_string(second.dim()));
    const int n = first.dim();
    return Operator(
        std::make_shared<Node>(Node{n, TwoSetDrNode{std::move(first), std::move(second)}}));
}

Operator Operator::r_set_dr(std::vector<ConvexSet> sets) {
    if (sets.size() < 2)
        fail(ErrorCode::invalid_argument,
             "r_set_dr: needs at least 2 sets, got " + std::to_string(sets.size()));
    const int n = sets.front().dim();
    for (const auto& s : sets)
        if (s.dim() != n)
            fail(ErrorCode::dimension_mismatch, "r_set_dr: sets must share one dimension");
    return Operator(std::make_shared<Node>(Node{n, RSetDrNode{std::move(sets)}}));
}

Operator Operator::compose(std::vector<Operator> stages) {
    if (stages.empty())
        fail(ErrorCode::invalid_argument, "compose: needs at least one stage");
    const int n = stages.front().dim();
    for (const auto& s : stages)
        if (s.dim() != n)
            fail(ErrorCode::dimension_mismatch, "compose: stages must share one dimension");
    return Operator(std::make_shared<Node>(Node{n, CompositionNode{std::move(stages)}}));
}

Operator Operator::convex_combination(std::vector<std::pair<double, Operator>> terms) {
    if (terms.empty())
        fail(ErrorCode::invalid_argument, "convex_combination: needs at least one term");
    const int n = terms.front().second.dim();
    double sum = 0.0;
    for (const auto& [w, op] : terms) {
        if (op.dim() != n)
            fail(ErrorCode::dimension_mismatch,
                 "convex_combination: terms must share one dimension");
        if (!(w > 0.0))
            fail(ErrorCode::invalid_argument,
                 "convex_combination: weights must be positive, got " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        fail(ErrorCode::invalid_argument,
             "convex_combination: weights must sum to 1, got " + std::to_string(sum));
    return Operator(std::make_shared<Node>(Node{n, CombinationNode{std::move(terms)}}));
}

Vector Operator::apply(const Vector& x) const {
    detail::require_dim(node_->dim, x, "operator apply");
    detail::require_finite(x, "operator apply");
    Vector out = std::visit(
        [&x](const auto& node) -> Vector {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ProjectionNode>) {
                return node.set.project(x);
            } else if constexpr (std::is_same_v<T, ReflectionNode>) {
                return reflect(node.set, x);
            } else if constexpr (std::is_same_v<T, RelaxationNode>) {
                return (1.0 - node.lambda) * x + node.lambda * node.inner.apply(x);
            } else if constexpr (std::is_same_v<T, TwoSetDrNode>) {
                const ConvexSet pair[2] = {node.first, node.second};
                return half_sum_with_composite_reflection(pair, 2, x);
            } else if constexpr (std::is_same_v<T, RSetDrNode>) {
                return half_sum_with_composite_reflection(node.sets.data(),
                                                          node.sets.size(), x);
            } else if constexpr (std::is_same_v<T, CompositionNode>) {
                Vector y = x;
                for (const auto& stage : node.stages) y = stage.apply(y);
                return y;
            } else {
                static_assert(std::is_same_v<T, CombinationNode>);
                Vector acc = node.terms.front().first *
                             node.terms.front().second.apply(x);
                for (std::size_t i = 1; i < node.terms.size(); ++i)
                    acc += node.terms[i].first * node.terms[i].second.apply(x);
                return acc;
            }
        },
        node_->data);
    if (!out.allFinite())
        fail(ErrorCode::not_finite, "operator apply: non-finite result in " + describe());
    return out;
}

std::string Operator::describe() const {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ProjectionNode>) {
                return "projection(" + node.set.describe() + ")";
            } else if constexpr (std::is_same_v<T, ReflectionNode>) {
                return "reflection(" + node.set.describe() + ")";
            } else if constexpr (std::is_same_v<T, RelaxationNode>) {
                return "relax(" + node.inner.describe() + ", lambda=" +
                       std::to_string(node.lambda) + ")";
            } else if constexpr (std::is_same_v<T, TwoSetDrNode>) {
                return "two_set_dr(" + node.first.describe() + ", " +
                       node.second.describe() + ")";
            } else if constexpr (std::is_same_v<T, RSetDrNode>) {
                return "r_set_dr(r=" + std::to_string(node.sets.size()) + ")";
            } else if constexpr (std::is_same_v<T, CompositionNode>) {
                std::string out = "compose(";
                for (std::size_t i = 0; i < node.stages.size(); ++i) {
                    if (i) out += ", ";
                    out += node.stages[i].describe();
                }
                return out + ")";
            } else {
                static_assert(std::is_same_v<T, CombinationNode>);
                return "convex_combination(" + std::to_string(node.terms.size()) +
                       " terms)";
            }
        },
        node_->data);
}

ProbeReport probe_fne(const Operator& op,
                      const std::vector<std::pair<Vector, Vector>>& samples) {
    if (samples.empty())
        fail(ErrorCode::invalid_argument, "probe_fne: needs at least one sample pair");
    ProbeReport report;
    report.max_violation = -std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : samples) {
        const Vector tx = op.apply(x);
        const Vector ty = op.apply(y);
        const Vector dt = tx - ty;
        const double violation = dt.squaredNorm() - dt.dot(x - y);
        if (violation > report.max_violation) {
            report.max_violation = violation;
            report.witness = std::make_pair(x, y);
        }
    }
    return report;
}

ProbeReport probe_sqne(const Operator& op, const std::vector<Vector>& fixed_points,
                       const std::vector<Vector>& samples, double alpha) {
    if (fixed_points.empty() || samples.empty())
        fail(ErrorCode::invalid_argument, "probe_sqne: needs fixed points and samples");
    for (const auto& z : fixed_points) {
        const double drift = (op.apply(z) - z).norm();
        if (drift > 1e-10 * (1.0 + z.norm()))
            fail(ErrorCode::invalid_argument,
                 "probe_sqne: supplied point is not fixed (||T(z)-z|| = " +
                     std::to_string(drift) + ") for " + op.describe());
    }
    ProbeReport report;
    report.max_violation = -std::numeric_limits<double>::infinity();
    for (const auto& x : samples) {
        const Vector tx = op.apply(x);
        const double step = (tx - x).squaredNorm();
        for (const auto& z : fixed_points) {
            const double violation =
                (tx - z).squaredNorm() + alpha * step - (x - z).squaredNorm();
            if (violation > report.max_violation) {
                report.max_violation = violation;
                report.witness = std::make_pair(x, z);
            }
        }
    }
    return report;
}

} // namespace feasdr

#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "feasdr/geometry.hpp"

namespace feasdr {

/// Immutable, composable operator expression over R^n.
///
/// Building blocks: orthogonal projections P_C, reflections R_C = 2 P_C - Id,
/// lambda-relaxations (1-lambda) Id + lambda T for lambda in [0,2], the
/// two-set Douglas-Rachford operator, its r-set generalization, left-to-right
/// compositions, and convex combinations with constant weights.
///
/// Conventions:
///   - two_set_dr(first, second) reflects into `first` first:
///       T(x) = (x + R_second(R_first(x))) / 2.
///   - r_set_dr({C_1,...,C_r}) reflects in list order:
///       T(x) = (x + R_{C_r}(...R_{C_1}(x)...)) / 2,
///     and agrees bitwise with two_set_dr for r = 2.
///   - compose({U_1,...,U_m}) applies U_1 first.
///   - convex_combination reduces terms in listed order, so trajectories are
///     reproducible bit for bit.
class Operator {
public:
    static Operator projection(ConvexSet set);
    static Operator reflection(ConvexSet set);
    static Operator relax(Operator inner, double lambda);
    static Operator two_set_dr(ConvexSet first, ConvexSet second);
    static Operator r_set_dr(std::vector<ConvexSet> sets);
    static Operator compose(std::vector<Operator> stages);
    static Operator convex_combination(std::vector<std::pair<double, Operator>> terms);

    int dim() const noexcept;

    /// Evaluates the expression tree at x. A non-finite intermediate raises an
    /// error naming the sub-expression that produced it.
    Vector apply(const Vector& x) const;
    Vector operator()(const Vector& x) const { return apply(x); }

    std::string describe() const;

private:
    struct Node;
    explicit Operator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Result of a sampling probe: the largest violation of an operator-class
/// inequality over the supplied samples, with the worst sample attached.
/// max_violation <= 0 means the inequality held everywhere.
struct ProbeReport {
    double max_violation = 0.0;
    std::optional<std::pair<Vector, Vector>> witness;
};

/// Probes firm nonexpansiveness: reports max over pairs (x, y) of
/// ||T(x)-T(y)||^2 - <T(x)-T(y), x-y>.
ProbeReport probe_fne(const Operator& op,
                      const std::vector<std::pair<Vector, Vector>>& samples);

/// Probes alpha-strong quasi-nonexpansiveness against verified fixed points:
/// reports max over (x, z) of ||T(x)-z||^2 + alpha ||T(x)-x||^2 - ||x-z||^2.
/// Each z must satisfy ||T(z)-z|| <= 1e-10 * (1+||z||), else an error is raised.
ProbeReport probe_sqne(const Operator& op, const std::vector<Vector>& fixed_points,
                       const std::vector<Vector>& samples, double alpha);

} // namespace feasdr

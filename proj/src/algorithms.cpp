#include "feasdr/algorithms.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "feasdr/error.hpp"

namespace feasdr {

namespace {

void check_groups(const std::vector<std::vector<int>>& groups, int num_sets,
                  const char* what) {
    if (num_sets < 1)
        fail(ErrorCode::invalid_argument,
             std::string(what) + ": set count must be positive");
    if (groups.empty())
        fail(ErrorCode::invalid_argument, std::string(what) + ": no index groups");
    std::vector<bool> covered(static_cast<std::size_t>(num_sets), false);
    for (std::size_t t = 0; t < groups.size(); ++t) {
        const auto& g = groups[t];
        if (g.size() < 2)
            fail(ErrorCode::invalid_argument,
                 std::string(what) + ": group " + std::to_string(t) +
                     " has fewer than two entries");
        for (int i : g) {
            if (i < 0 || i >= num_sets)
                fail(ErrorCode::invalid_argument,
                     std::string(what) + ": group " + std::to_string(t) +
                         " references set " + std::to_string(i) + ", valid range is 0.." +
                         std::to_string(num_sets - 1));
            covered[static_cast<std::size_t>(i)] = true;
        }
    }
    for (int i = 0; i < num_sets; ++i)
        if (!covered[static_cast<std::size_t>(i)])
            fail(ErrorCode::invalid_argument,
                 std::string(what) + ": set index " + std::to_string(i) +
                     " (0-based) appears in no group; every set must be covered");
}

void check_weights(const std::vector<double>& w, std::size_t expected, const char* what) {
    if (w.size() != expected)
        fail(ErrorCode::invalid_argument,
             std::string(what) + ": expected " + std::to_string(expected) +
                 " weights, got " + std::to_string(w.size()));
    double sum = 0.0;
    for (double v : w) {
        if (!(v > 0.0))
            fail(ErrorCode::invalid_argument,
                 std::string(what) + ": weights must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        fail(ErrorCode::invalid_argument,
             std::string(what) + ": weights must sum to 1, got " + std::to_string(sum));
}

std::vector<double> equal_weights(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

/// Chain of two-set DR factors along a string, wrapping back to its first
/// index; the factor for the leading pair applies first.
Operator string_operator(const FeasibilityProblem& problem, const std::vector<int>& s) {
    std::vector<Operator> factors;
    factors.reserve(s.size());
    for (std::size_t l = 0; l < s.size(); ++l) {
        const int cur = s[l];
        const int next = s[(l + 1) % s.size()];
        factors.push_back(Operator::two_set_dr(problem.set(cur), problem.set(next)));
    }
    return Operator::compose(std::move(factors));
}

/// Weighted average of the block's two-set DR operators, every term applied
/// to the same input point.
Operator block_operator(const FeasibilityProblem& problem, const std::vector<int>& b,
                        const std::vector<double>& w) {
    std::vector<std::pair<double, Operator>> terms;
    terms.reserve(b.size());
    for (std::size_t l = 0; l < b.size(); ++l) {
        const int cur = b[l];
        const int next = b[(l + 1) % b.size()];
        terms.emplace_back(w[l],
                           Operator::two_set_dr(problem.set(cur), problem.set(next)));
    }
    return Operator::convex_combination(std::move(terms));
}

/// Core iteration driver shared by every scheme. Stops are evaluated after
/// each step in the order residual_tol, step_tol, max_iters; the trace keeps
/// every trace_stride-th iterate plus the final one, and sweep_stride > 0
/// additionally records x^0, x^S, x^{2S}, ...
///
/// step_check_stride widens the stagnation test for schemes that cycle
/// through sub-operators: the step_tol comparison happens only every
/// step_check_stride iterations, against the largest step norm seen since the
/// previous comparison. A point fixed by one sub-operator but moved by the
/// next is then not mistaken for a stalled run.
RunRecord run_loop(const FeasibilityProblem& problem, const Vector& x0,
                   const StopConfig& cfg,
                   const std::function<Vector(const Vector&, long)>& step,
                   long sweep_stride, long step_check_stride = 1) {
    cfg.validate();
    detail::require_dim(problem.dim(), x0, "starting point");
    detail::require_finite(x0, "starting point");

    const std::optional<Vector>& ref = problem.interior_point();

    RunRecord rec;
    rec.sweep_stride = sweep_stride;
    Vector x = x0;
    rec.iterates.push_back(x);
    rec.iterate_indices.push_back(0);
    rec.residuals.push_back(problem.max_residual(x));
    if (ref) rec.fejer_distances.push_back((x - *ref).norm());
    if (sweep_stride > 0) rec.sweep_iterates.push_back(x);

    long k = 0;
    StopReason reason = StopReason::max_iters;
    double window_step_max = 0.0;
    while (k < cfg.max_iters) {
        Vector next = step(x, k);
        ++k;
        const double step_norm = (next - x).norm();
        const double residual = problem.max_residual(next);
        x = std::move(next);
        rec.step_norms.push_back(step_norm);
        rec.residuals.push_back(residual);
        if (ref) rec.fejer_distances.push_back((x - *ref).norm());
        if (k % cfg.trace_stride == 0) {
            rec.iterates.push_back(x);
            rec.iterate_indices.push_back(k);
        }
        if (sweep_stride > 0 && k % sweep_stride == 0) rec.sweep_iterates.push_back(x);
        if (residual <= cfg.residual_tol) {
            reason = StopReason::residual_tol;
            break;
        }
        window_step_max = std::max(window_step_max, step_norm);
        if (k % step_check_stride == 0) {
            if (window_step_max <= cfg.step_tol) {
                reason = StopReason::step_tol;
                break;
            }
            window_step_max = 0.0;
        }
    }
    rec.iterations = k;
    rec.stop_reason = reason;
    if (rec.iterate_indices.back() != k) {
        rec.iterates.push_back(x);
        rec.iterate_indices.push_back(k);
    }
    return rec;
}

RunRecord run_fixed_operator(const FeasibilityProblem& problem, const Operator& op,
                             const Vector& x0, const StopConfig& cfg,
                             long sweep_stride = 0) {
    return run_loop(
        problem, x0, cfg, [&op](const Vector& x, long) { return op.apply(x); },
        sweep_stride);
}

} // namespace

StringPlan::StringPlan(std::vector<std::vector<int>> strings, std::vector<double> weights,
                       int num_sets)
    : strings_(std::move(strings)), weights_(std::move(weights)), num_sets_(num_sets) {
    check_groups(strings_, num_sets_, "string plan");
    check_weights(weights_, strings_.size(), "string plan");
}

StringPlan StringPlan::uniform(std::vector<std::vector<int>> strings, int num_sets) {
    const std::size_t n = strings.size();
    return StringPlan(std::move(strings), equal_weights(n == 0 ? 1 : n), num_sets);
}

BlockPlan::BlockPlan(std::vector<std::vector<int>> blocks,
                     std::vector<std::vector<double>> weights, int num_sets)
    : blocks_(std::move(blocks)), weights_(std::move(weights)), num_sets_(num_sets) {
    check_groups(blocks_, num_sets_, "block plan");
    if (weights_.size() != blocks_.size())
        fail(ErrorCode::invalid_argument,
             "block plan: expected one weight group per block");
    for (std::size_t t = 0; t < blocks_.size(); ++t)
        check_weights(weights_[t], blocks_[t].size(),
                      ("block plan, block " + std::to_string(t)).c_str());
}

BlockPlan BlockPlan::uniform(std::vector<std::vector<int>> blocks, int num_sets) {
    std::vector<std::vector<double>> weights;
    weights.reserve(blocks.size());
    for (const auto& b : blocks) weights.push_back(equal_weights(b.empty() ? 1 : b.size()));
    return BlockPlan(std::move(blocks), std::move(weights), num_sets);
}

RunRecord sa_dr(const FeasibilityProblem& problem, const StringPlan& plan,
                const Vector& x0, const StopConfig& cfg) {
    if (plan.num_sets() != problem.set_count())
        fail(ErrorCode::invalid_argument, "string plan was built for a different set count");
    std::vector<std::pair<double, Operator>> terms;
    terms.reserve(plan.strings().size());
    for (std::size_t t = 0; t < plan.strings().size(); ++t)
        terms.emplace_back(plan.weights()[t], string_operator(problem, plan.strings()[t]));
    return run_fixed_operator(problem, Operator::convex_combination(std::move(terms)), x0,
                              cfg);
}

RunRecord bi_dr(const FeasibilityProblem& problem, const BlockPlan& plan, const Vector& x0,
                const StopConfig& cfg) {
    if (plan.num_sets() != problem.set_count())
        fail(ErrorCode::invalid_argument, "block plan was built for a different set count");
    std::vector<Operator> block_ops;
    block_ops.reserve(plan.blocks().size());
    for (std::size_t t = 0; t < plan.blocks().size(); ++t)
        block_ops.push_back(block_operator(problem, plan.blocks()[t], plan.weights()[t]));
    const long cycle = static_cast<long>(block_ops.size());
    // The stagnation test spans a full sweep: one block can hold the point
    // exactly fixed while the next one still moves it.
    return run_loop(
        problem, x0, cfg,
        [&block_ops, cycle](const Vector& x, long k) {
            return block_ops[static_cast<std::size_t>(k % cycle)].apply(x);
        },
        cycle, cycle);
}

RunRecord r_set_dr_scheme(const FeasibilityProblem& problem,
                          const std::vector<double>& weights, const Vector& x0,
                          const StopConfig& cfg) {
    const int m = problem.set_count();
    if (m < 2)
        fail(ErrorCode::invalid_argument,
             "prefix scheme: needs at least two sets, got " + std::to_string(m));
    std::vector<double> w =
        weights.empty() ? equal_weights(static_cast<std::size_t>(m - 1)) : weights;
    check_weights(w, static_cast<std::size_t>(m - 1), "prefix scheme");
    std::vector<std::pair<double, Operator>> terms;
    terms.reserve(w.size());
    for (int r = 2; r <= m; ++r) {
        std::vector<ConvexSet> prefix(problem.sets().begin(), problem.sets().begin() + r);
        terms.emplace_back(w[static_cast<std::size_t>(r - 2)],
                           Operator::r_set_dr(std::move(prefix)));
    }
    return run_fixed_operator(problem, Operator::convex_combination(std::move(terms)), x0,
                              cfg);
}

RunRecord cyclic_dr(const FeasibilityProblem& problem, const Vector& x0,
                    const StopConfig& cfg) {
    std::vector<int> all(static_cast<std::size_t>(problem.set_count()));
    for (int i = 0; i < problem.set_count(); ++i) all[static_cast<std::size_t>(i)] = i;
    if (all.size() < 2)
        fail(ErrorCode::invalid_argument, "cyclic scheme: needs at least two sets");
    return sa_dr(problem, StringPlan::uniform({all}, problem.set_count()), x0, cfg);
}

RunRecord simultaneous_dr(const FeasibilityProblem& problem,
                          const std::vector<double>& weights, const Vector& x0,
                          const StopConfig& cfg) {
    const int m = problem.set_count();
    if (m < 2)
        fail(ErrorCode::invalid_argument, "simultaneous scheme: needs at least two sets");
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    BlockPlan plan =
        weights.empty()
            ? BlockPlan::uniform({all}, m)
            : BlockPlan({all}, {weights}, m);
    return bi_dr(problem, plan, x0, cfg);
}

RunRecord reference_cyclic_projections(const FeasibilityProblem& problem, const Vector& x0,
                                       const StopConfig& cfg,
                                       const std::optional<std::vector<int>>& order) {
    const int m = problem.set_count();
    std::vector<int> ord;
    if (order) {
        ord = *order;
        if (static_cast<int>(ord.size()) != m)
            fail(ErrorCode::invalid_argument,
                 "projection order: expected " + std::to_string(m) + " entries, got " +
                     std::to_string(ord.size()));
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        for (int i : ord) {
            if (i < 0 || i >= m)
                fail(ErrorCode::invalid_argument,
                     "projection order: set " + std::to_string(i) +
                         " out of range 0.." + std::to_string(m - 1));
            if (seen[static_cast<std::size_t>(i)])
                fail(ErrorCode::invalid_argument,
                     "projection order: set " + std::to_string(i) + " listed twice");
            seen[static_cast<std::size_t>(i)] = true;
        }
    } else {
        ord.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) ord[static_cast<std::size_t>(i)] = i;
    }
    std::vector<Operator> stages;
    stages.reserve(ord.size());
    for (int i : ord) stages.push_back(Operator::projection(problem.set(i)));
    return run_fixed_operator(problem, Operator::compose(std::move(stages)), x0, cfg);
}

} // namespace feasdr

#pragma once

#include <optional>
#include <vector>

#include "feasdr/operators.hpp"
#include "feasdr/run_record.hpp"

namespace feasdr {

/// Partition-like index structure for the string-averaging scheme: M ordered
/// index tuples over the problem's sets (0-based), each of length >= 2, with
/// positive per-string weights summing to 1. The union of the strings must
/// cover every set index; duplicates within a string are permitted.
class StringPlan {
public:
    StringPlan(std::vector<std::vector<int>> strings, std::vector<double> weights,
               int num_sets);

    /// Equal weights over the given strings.
    static StringPlan uniform(std::vector<std::vector<int>> strings, int num_sets);

    const std::vector<std::vector<int>>& strings() const noexcept { return strings_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    int num_sets() const noexcept { return num_sets_; }

private:
    std::vector<std::vector<int>> strings_;
    std::vector<double> weights_;
    int num_sets_;
};

/// Index structure for the block-iterative scheme: like StringPlan, but with
/// one weight vector per block (one weight per block entry).
class BlockPlan {
public:
    BlockPlan(std::vector<std::vector<int>> blocks,
              std::vector<std::vector<double>> weights, int num_sets);

    static BlockPlan uniform(std::vector<std::vector<int>> blocks, int num_sets);

    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }
    int num_sets() const noexcept { return num_sets_; }

private:
    std::vector<std::vector<int>> blocks_;
    std::vector<std::vector<double>> weights_;
    int num_sets_;
};

/// String-averaging Douglas-Rachford. Each string (i_1,...,i_g) is traversed
/// by chaining two-set DR factors pairwise along it and wrapping back to the
/// start: first two_set_dr(C_{i_1}, C_{i_2}), ..., then
/// two_set_dr(C_{i_{g-1}}, C_{i_g}), and finally two_set_dr(C_{i_g}, C_{i_1}).
/// The next iterate is the weighted combination of the strings' end points,
/// reduced in string order.
RunRecord sa_dr(const FeasibilityProblem& problem, const StringPlan& plan,
                const Vector& x0, const StopConfig& cfg);

/// Block-iterative Douglas-Rachford with the cyclic control t(k) = k mod M.
/// Within block t = (i_1,...,i_g), the intermediate points
/// z_l = two_set_dr(C_{i_l}, C_{i_{l+1}})(x^k) for l < g and
/// z_g = two_set_dr(C_{i_g}, C_{i_1})(x^k) are all evaluated at the same
/// x^k; the next iterate is their weighted combination. The record's
/// sweep_iterates holds x^0, x^M, x^{2M}, ...
///
/// The step_tol stagnation test runs at sweep boundaries against the largest
/// step norm inside the completed sweep: a point fixed by one block alone is
/// not a stalled run. The residual test still fires after any step.
RunRecord bi_dr(const FeasibilityProblem& problem, const BlockPlan& plan,
                const Vector& x0, const StopConfig& cfg);

/// Prefix scheme over r-set DR operators:
/// x^{k+1} = sum_{r=2}^m w_r * r_set_dr({C_1,...,C_r})(x^k), reduced in
/// increasing r. weights has m-1 entries (for r = 2..m); empty means equal.
RunRecord r_set_dr_scheme(const FeasibilityProblem& problem,
                          const std::vector<double>& weights, const Vector& x0,
                          const StopConfig& cfg);

/// Single-string baseline: sa_dr with the one string (1,...,m).
RunRecord cyclic_dr(const FeasibilityProblem& problem, const Vector& x0,
                    const StopConfig& cfg);

/// Simultaneous baseline: bi_dr with the single block (1,...,m), i.e. one
/// two-set DR operator per consecutive pair (i, i+1 mod m), combined with the
/// given weights (m entries; empty means equal).
RunRecord simultaneous_dr(const FeasibilityProblem& problem,
                          const std::vector<double>& weights, const Vector& x0,
                          const StopConfig& cfg);

/// Cyclic orthogonal projections (POCS), the projection-only reference:
/// one iteration applies every projection once, in `order` (0-based; default
/// 0,1,...,m-1, i.e. x^{k+1} = P_{C_m} ... P_{C_1}(x^k)).
RunRecord reference_cyclic_projections(
    const FeasibilityProblem& problem, const Vector& x0, const StopConfig& cfg,
    const std::optional<std::vector<int>>& order = std::nullopt);

} // namespace feasdr

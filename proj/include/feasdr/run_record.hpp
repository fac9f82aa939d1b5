#pragma once

#include <vector>

#include "feasdr/geometry.hpp"

namespace feasdr {

/// Stopping rule shared by all iterative schemes. A run terminates on the
/// first of: feasibility residual at or below residual_tol, step norm at or
/// below step_tol, or max_iters steps taken. Stops are checked after each
/// step, so even a feasible starting point performs one step.
struct StopConfig {
    double residual_tol = 1e-8;
    double step_tol = 1e-12;
    long max_iters = 100000;
    long trace_stride = 1;

    void validate() const;
};

enum class StopReason { residual_tol, step_tol, max_iters };

const char* to_string(StopReason reason);

/// Per-iteration trace of a run.
///
/// The scalar series cover every iteration: residuals and fejer_distances
/// have one entry per iterate x^0..x^K, step_norms one entry per step
/// ||x^{k} - x^{k-1}|| for k = 1..K. Stored iterates are thinned to every
/// trace_stride-th index (the final iterate is always kept);
/// iterate_indices holds the iteration index of each stored iterate.
/// fejer_distances is empty when the problem carries no reference point.
/// For block-iterative runs, sweep_iterates holds the subsequence
/// y^j = x^{j*M} (M = sweep_stride = number of blocks).
struct RunRecord {
    std::vector<Vector> iterates;
    std::vector<long> iterate_indices;
    std::vector<double> step_norms;
    std::vector<double> residuals;
    std::vector<double> fejer_distances;
    std::vector<Vector> sweep_iterates;
    long sweep_stride = 0;
    StopReason stop_reason = StopReason::max_iters;
    long iterations = 0;

    const Vector& final_point() const { return iterates.back(); }
    double final_residual() const { return residuals.back(); }
};

} // namespace feasdr

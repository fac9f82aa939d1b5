#pragma once

#include <string>

#include "feasdr/run_record.hpp"

namespace feasdr {

/// Outcome of a single diagnostic check: the measured quantity, the bound it
/// was held to, and a short human-readable account of where the worst case
/// occurred.
struct Verdict {
    bool passed = false;
    double metric = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// Checks that the recorded distances to the reference point never increase,
/// up to a relative rounding allowance of slack * (1 + d_k) per step. The
/// metric is the worst exceedance above that allowance (0 when the sequence
/// is monotone enough). Errors if the record carries no reference distances.
Verdict check_fejer(const RunRecord& rec, double slack = 1e-12);

/// Checks that the step norms die out: the metric is the smallest step norm
/// within the final tenth (at least one entry) of the recorded steps, and the
/// check passes when it is at or below tol.
Verdict check_asymptotic_regularity(const RunRecord& rec, double tol);

/// Largest pointwise distance between the two recorded iterate traces,
/// subsampled at the given strides (positions 0, stride, 2*stride, ... of
/// each trace). Errors if the subsampled traces differ in length.
Verdict compare_trajectories(const RunRecord& a, const RunRecord& b, double tol,
                             long stride_a = 1, long stride_b = 1);

} // namespace feasdr

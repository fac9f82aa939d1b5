#include "feasdr/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "feasdr/error.hpp"

namespace feasdr {

Verdict check_fejer(const RunRecord& rec, double slack) {
    if (rec.fejer_distances.empty())
        fail(ErrorCode::invalid_argument,
             "fejer check: run carries no reference distances");
    if (!(slack >= 0.0))
        fail(ErrorCode::invalid_argument, "fejer check: slack must be >= 0");
    Verdict v;
    v.threshold = 0.0;
    double worst = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t k = 0; k + 1 < rec.fejer_distances.size(); ++k) {
        const double d0 = rec.fejer_distances[k];
        const double d1 = rec.fejer_distances[k + 1];
        const double raw = d1 - d0 - slack * (1.0 + d0);
        if (raw > worst) {
            worst = raw;
            worst_at = k;
        }
    }
    v.metric = worst;
    v.passed = worst == 0.0;
    v.detail = v.passed ? "reference distances nonincreasing"
                        : "distance grew by " + std::to_string(worst) +
                              " beyond allowance at step " + std::to_string(worst_at + 1);
    return v;
}

Verdict check_asymptotic_regularity(const RunRecord& rec, double tol) {
    if (rec.step_norms.empty())
        fail(ErrorCode::invalid_argument, "regularity check: run has no steps");
    if (!(tol >= 0.0))
        fail(ErrorCode::invalid_argument, "regularity check: tol must be >= 0");
    const std::size_t n = rec.step_norms.size();
    const std::size_t tail = std::max<std::size_t>(1, (n + 9) / 10);
    double best = rec.step_norms[n - tail];
    for (std::size_t k = n - tail; k < n; ++k) best = std::min(best, rec.step_norms[k]);
    Verdict v;
    v.metric = best;
    v.threshold = tol;
    v.passed = best <= tol;
    v.detail = "smallest step norm over final " + std::to_string(tail) + " of " +
               std::to_string(n) + " steps";
    return v;
}

Verdict compare_trajectories(const RunRecord& a, const RunRecord& b, double tol,
                             long stride_a, long stride_b) {
    if (stride_a < 1 || stride_b < 1)
        fail(ErrorCode::invalid_argument, "trajectory compare: strides must be >= 1");
    if (!(tol >= 0.0))
        fail(ErrorCode::invalid_argument, "trajectory compare: tol must be >= 0");
    const auto sampled = [](const RunRecord& rec, long stride) {
        std::vector<const Vector*> out;
        for (std::size_t i = 0; i < rec.iterates.size();
             i += static_cast<std::size_t>(stride))
            out.push_back(&rec.iterates[i]);
        return out;
    };
    const auto pa = sampled(a, stride_a);
    const auto pb = sampled(b, stride_b);
    if (pa.size() != pb.size())
        fail(ErrorCode::invalid_argument,
             "trajectory compare: traces hold " + std::to_string(pa.size()) + " vs " +
                 std::to_string(pb.size()) + " sampled points");
    Verdict v;
    v.threshold = tol;
    double worst = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        if (pa[i]->size() != pb[i]->size())
            fail(ErrorCode::dimension_mismatch,
                 "trajectory compare: point " + std::to_string(i) +
                     " dimensions disagree");
        const double dev = (*pa[i] - *pb[i]).norm();
        if (dev > worst) {
            worst = dev;
            worst_at = i;
        }
    }
    v.metric = worst;
    v.passed = worst <= tol;
    v.detail = "largest deviation at sampled point " + std::to_string(worst_at) + " of " +
               std::to_string(pa.size());
    return v;
}

} // namespace feasdr

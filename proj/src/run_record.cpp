#include "feasdr/run_record.hpp"

#include <cmath>

#include "feasdr/error.hpp"

namespace feasdr {

void StopConfig::validate() const {
    if (!(residual_tol > 0.0) || !std::isfinite(residual_tol))
        fail(ErrorCode::invalid_argument, "stop config: residual_tol must be > 0");
    if (!(step_tol >= 0.0) || !std::isfinite(step_tol))
        fail(ErrorCode::invalid_argument, "stop config: step_tol must be >= 0");
    if (max_iters < 1)
        fail(ErrorCode::invalid_argument, "stop config: max_iters must be >= 1");
    if (trace_stride < 1)
        fail(ErrorCode::invalid_argument, "stop config: trace_stride must be >= 1");
}

const char* to_string(StopReason reason) {
    switch (reason) {
    case StopReason::residual_tol: return "residual_tol";
    case StopReason::step_tol: return "step_tol";
    case StopReason::max_iters: return "max_iters";
    }
    return "unknown";
}

} // namespace feasdr

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feasdr/geometry.hpp"
#include "feasdr/run_record.hpp"

namespace feasdr {

/// Problem files are JSON: top-level `dim`, `sets` (array of tagged
/// variants), and an optional `interior_point` with its `slack`. Numbers are
/// serialized as shortest round-trip decimals, so save-then-load reproduces
/// every coefficient exactly.
FeasibilityProblem load_problem(const std::string& path);
FeasibilityProblem parse_problem_text(const std::string& text, const std::string& context);
void save_problem(const FeasibilityProblem& problem, const std::string& path);
std::string problem_to_text(const FeasibilityProblem& problem);

/// Provenance recorded next to a run trace.
struct RunMeta {
    std::string algorithm;
    std::string plan;
    std::uint64_t seed = 0;
};

/// Writes the per-iteration scalars as CSV with header
/// `iter,step_norm,residual,fejer_distance` (rows k = 0..K; the k = 0 row has
/// step_norm 0; fejer_distance is `nan` when the run had no reference point)
/// and a JSON sidecar at `<path>.meta.json` holding the RunMeta plus the
/// stop reason. Output is byte-deterministic for identical runs.
void save_run(const RunRecord& rec, const RunMeta& meta, const std::string& path);

/// Column-wise view of a saved run trace.
struct RunTable {
    std::vector<long> iters;
    std::vector<double> step_norms;
    std::vector<double> residuals;
    std::vector<double> fejer_distances;
};
RunTable load_run_csv(const std::string& path);

/// Largest absolute per-row deviation between two saved traces across the
/// step_norm, residual, and fejer_distance columns. Row counts and iter
/// columns must agree; two NaN entries compare equal, a single NaN is an
/// infinite deviation.
double compare_run_tables(const RunTable& a, const RunTable& b);

/// Parses `1,2,3;4,5`-style index groups (1-based in text, 0-based out).
std::vector<std::vector<int>> parse_plan(const std::string& text);

/// Parses `;`-separated groups of comma-separated weights.
std::vector<std::vector<double>> parse_weight_groups(const std::string& text);

/// Shortest round-trip decimal rendering of a double (`nan`/`inf` spelled
/// out), shared by every text emitter so output stays byte-deterministic.
std::string format_double(double v);

} // namespace feasdr

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here on purpose; loosening them is a
// behavior change, not a cleanup.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "feasdr/algorithms.hpp"
#include "feasdr/diagnostics.hpp"
#include "feasdr/generate.hpp"
#include "feasdr/io.hpp"
#include "feasdr/operators.hpp"

using feasdr::BlockPlan;
using feasdr::ConvexSet;
using feasdr::FeasibilityProblem;
using feasdr::InstanceSpec;
using feasdr::Operator;
using feasdr::RunMeta;
using feasdr::RunRecord;
using feasdr::StopConfig;
using feasdr::StopReason;
using feasdr::StringPlan;
using feasdr::Vector;
using feasdr::Verdict;

namespace {

int g_failed = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!ok) ++g_failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Vector vec(std::initializer_list<double> values) {
    Vector out(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) out[i++] = v;
    return out;
}

Vector random_vector(std::mt19937_64& rng, int dim, double lo, double hi) {
    std::uniform_real_distribution<double> coord(lo, hi);
    Vector out(dim);
    for (int i = 0; i < dim; ++i) out[i] = coord(rng);
    return out;
}

FeasibilityProblem make_instance(const std::string& text, std::uint64_t seed) {
    InstanceSpec spec = feasdr::parse_instance_spec(text);
    spec.seed = seed;
    return feasdr::generate(spec);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(const char* pattern, ...) {
    char buf[240];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: operator inequalities. Every ordered two-set operator and
// every prefix chain over 20 random instances (dims 2..10) must satisfy the
// firm-nonexpansiveness probe and the 1-strongly-quasi-nonexpansive probe
// against the instance's certified point, over 1000 sampled point pairs each.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_fne = 0.0;
    double worst_sqne = 0.0;
    std::mt19937_64 rng(97);

    for (int i = 0; i < 20; ++i) {
        const int dim = 2 + i % 9;
        const std::string text =
            i % 2 == 0 ? "polytope:" + std::to_string(dim) + "x" +
                             std::to_string(4 + i % 4) + ":slack=0.25"
                       : "ball_box_mix:" + std::to_string(dim) + "x2,2:slack=0.2";
        const FeasibilityProblem problem =
            make_instance(text, 1000 + static_cast<std::uint64_t>(i));
        const int m = problem.set_count();
        const Vector p = *problem.interior_point();

        std::vector<std::pair<Vector, Vector>> pairs;
        std::vector<Vector> points;
        pairs.reserve(1000);
        points.reserve(1000);
        for (int s = 0; s < 1000; ++s) {
            Vector x = random_vector(rng, dim, -8.0, 8.0);
            Vector y = random_vector(rng, dim, -8.0, 8.0);
            points.push_back(x);
            pairs.emplace_back(std::move(x), std::move(y));
        }

        std::vector<Operator> ops;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b)
                    ops.push_back(Operator::two_set_dr(problem.set(a), problem.set(b)));
        for (int r = 2; r <= m; ++r)
            ops.push_back(Operator::r_set_dr(std::vector<ConvexSet>(
                problem.sets().begin(), problem.sets().begin() + r)));

        for (const Operator& op : ops) {
            worst_fne = std::max(worst_fne, probe_fne(op, pairs).max_violation);
            worst_sqne =
                std::max(worst_sqne, probe_sqne(op, {p}, points, 1.0).max_violation);
        }
    }

    const double secs = seconds_since(t0);
    const bool ok = worst_fne <= 1e-9 && worst_sqne <= 1e-9 && secs < 10.0;
    report(1, ok,
           fmt("pair and prefix-chain operators obey the firm-nonexpansive and "
               "strong-quasi bounds (worst %.2e / %.2e, %.1fs < 10s)",
               worst_fne, worst_sqne, secs));
}

// ---------------------------------------------------------------------------
// Criteria 2, 3, 4 share one batch: 20 certified polytopes (dim 5, 10
// halfspaces, slack 0.3), solved by the string-averaging, block-iterative,
// and prefix-chain schemes from the same start point.
struct BatchOutcome {
    double worst_residual = 0.0;
    bool no_budget_stop = true;
    bool fejer_ok = true;
    double worst_fejer = 0.0;
    double worst_min_step = 0.0;
    double secs = 0.0;
};

BatchOutcome convergence_batch() {
    const auto t0 = std::chrono::steady_clock::now();
    BatchOutcome out;

    const Vector x0 = vec({6.0, -6.0, 6.0, -6.0, 6.0});
    StopConfig cfg;
    cfg.residual_tol = 1e-300; // only an exact landing stops on residual
    cfg.step_tol = 1e-12;
    cfg.max_iters = 10000;
    const std::vector<std::vector<int>> groups = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const FeasibilityProblem problem =
            make_instance("polytope:5x10:slack=0.3", seed);
        RunRecord recs[3] = {
            sa_dr(problem, StringPlan::uniform(groups, 10), x0, cfg),
            bi_dr(problem, BlockPlan::uniform(groups, 10), x0, cfg),
            r_set_dr_scheme(problem, {}, x0, cfg),
        };
        for (const RunRecord& rec : recs) {
            out.worst_residual = std::max(out.worst_residual, rec.final_residual());
            if (rec.stop_reason == StopReason::max_iters) out.no_budget_stop = false;
            const Verdict fejer = feasdr::check_fejer(rec, 1e-12);
            out.fejer_ok = out.fejer_ok && fejer.passed;
            out.worst_fejer = std::max(out.worst_fejer, fejer.metric);
            out.worst_min_step = std::max(
                out.worst_min_step,
                *std::min_element(rec.step_norms.begin(), rec.step_norms.end()));
        }
    }
    out.secs = seconds_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: on line families with a singleton intersection, the projection
// of the stagnation point onto the first set recovers the crossing point.
void criterion_5() {
    double worst = 0.0;
    StopConfig cfg;
    cfg.residual_tol = 1e-9;
    cfg.step_tol = 1e-13;
    cfg.max_iters = 50000;

    for (int i = 0; i < 10; ++i) {
        const int count = 2 + i % 3;
        const FeasibilityProblem problem =
            make_instance("lines_through_point:2x" + std::to_string(count),
                          3000 + static_cast<std::uint64_t>(i));
        const Vector p = *problem.interior_point();
        std::vector<int> all(static_cast<std::size_t>(count));
        for (int j = 0; j < count; ++j) all[static_cast<std::size_t>(j)] = j;
        std::mt19937_64 rng(5000 + static_cast<std::uint64_t>(i));
        const Vector x0 = random_vector(rng, 2, -5.0, 5.0);

        const RunRecord rec =
            bi_dr(problem, BlockPlan::uniform({all}, count), x0, cfg);
        const double err = (problem.set(0).project(rec.final_point()) - p).norm();
        worst = std::max(worst, err);
    }
    report(5, worst <= 1e-6,
           fmt("projected stagnation points recover the crossing point of line "
               "families (worst %.2e <= 1e-6)",
               worst));
}

// ---------------------------------------------------------------------------
// Criterion 6: special-case equivalences.
//   (a) the single-string scheme and the cyclic baseline trace identical
//       iterates over 500 iterations;
//   (b) started inside the first set, the cyclic scheme coincides with pure
//       cyclic projections taken in the order second..last,first;
//   (c) the two-element chain operator equals the two-set operator bitwise.
void criterion_6() {
    // (a)
    // Seed picked for slow contraction, so the trajectory is still moving at
    // iteration 500 instead of landing exactly on its fixed point earlier.
    const FeasibilityProblem lines = make_instance("lines_through_point:2x3", 401);
    StopConfig cfg_a;
    cfg_a.residual_tol = 1e-300;
    cfg_a.step_tol = 0.0;
    cfg_a.max_iters = 500;
    const Vector xa = vec({180.0, -90.0});
    const RunRecord run_cyc = cyclic_dr(lines, xa, cfg_a);
    const RunRecord run_single =
        sa_dr(lines, StringPlan::uniform({{0, 1, 2}}, 3), xa, cfg_a);
    const Verdict a = feasdr::compare_trajectories(run_cyc, run_single, 1e-12);
    const bool ok_a =
        a.passed && run_cyc.iterations == 500 && run_single.iterations == 500;

    // (b) A family with interior would land exactly feasible within a sweep
    // or two and make the comparison vacuous; the line family never reaches
    // residual zero, so both trajectories stay in motion for all 120 steps.
    std::mt19937_64 rng(606);
    const Vector x0 = lines.set(0).project(random_vector(rng, 2, -50.0, 50.0));
    StopConfig cfg_b;
    cfg_b.residual_tol = 1e-300;
    cfg_b.step_tol = 0.0;
    cfg_b.max_iters = 120;
    // Started on the first set, one cyclic pass equals the projections taken
    // second, third, then back onto the first.
    const std::vector<int> order = {1, 2, 0};
    RunRecord dr = cyclic_dr(lines, x0, cfg_b);
    RunRecord pocs = feasdr::reference_cyclic_projections(lines, x0, cfg_b, order);
    if (dr.iterations != pocs.iterations) {
        // The projection-only run can land on its exact floating-point fixed
        // point first; align both records on the shorter budget and compare
        // the whole moving part of the trajectory.
        cfg_b.max_iters = std::min(dr.iterations, pocs.iterations);
        dr = cyclic_dr(lines, x0, cfg_b);
        pocs = feasdr::reference_cyclic_projections(lines, x0, cfg_b, order);
    }
    const Verdict b = feasdr::compare_trajectories(dr, pocs, 1e-10);
    const bool ok_b = b.passed && dr.iterations >= 10;

    // (c)
    const FeasibilityProblem mix = make_instance("ball_box_mix:3x2,2:slack=0.2", 77);
    const Operator pair = Operator::two_set_dr(mix.set(0), mix.set(1));
    const Operator chain = Operator::r_set_dr({mix.set(0), mix.set(1)});
    std::mt19937_64 rng_c(777);
    double worst_c = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const Vector x = random_vector(rng_c, 3, -10.0, 10.0);
        worst_c = std::max(worst_c, (pair(x) - chain(x)).norm());
    }
    const bool ok_c = worst_c == 0.0;

    report(6, ok_a && ok_b && ok_c,
           fmt("single-string, projection-only, and two-element special cases "
               "match their references (a %.1e, b %.1e, c %.1e)",
               a.metric, b.metric, worst_c));
}

// ---------------------------------------------------------------------------
// Criterion 7: hand-traced interval instance. From x0 = 5 between the
// halfspaces x <= 1 and x >= -1, one string-averaging step lands on 1 and one
// block-iterative step lands on 2, both exactly.
void criterion_7() {
    std::vector<ConvexSet> sets;
    sets.push_back(ConvexSet::halfspace(vec({1.0}), 1.0));
    sets.push_back(ConvexSet::halfspace(vec({-1.0}), 1.0));
    const FeasibilityProblem interval(std::move(sets));
    const Vector x0 = vec({5.0});
    StopConfig cfg;
    cfg.residual_tol = 1e-300;
    cfg.step_tol = 0.0;
    cfg.max_iters = 1;

    const RunRecord sa = sa_dr(interval, StringPlan::uniform({{0, 1}}, 2), x0, cfg);
    const RunRecord bi = bi_dr(interval, BlockPlan::uniform({{0, 1}}, 2), x0, cfg);
    const bool ok = sa.iterates[1][0] == 1.0 && bi.iterates[1][0] == 2.0;
    report(7, ok,
           fmt("hand-traced interval steps are exact (string %.17g == 1, block "
               "%.17g == 2)",
               sa.iterates[1][0], bi.iterates[1][0]));
}

// ---------------------------------------------------------------------------
// Criterion 8: determinism. Re-generating and re-solving the same seeded run
// writes byte-identical trace files, sidecar included.
void criterion_8() {
    const auto solve_once = []() {
        const FeasibilityProblem problem = make_instance("polytope:5x10:slack=0.3", 7);
        StopConfig cfg;
        cfg.residual_tol = 1e-300;
        cfg.step_tol = 1e-12;
        cfg.max_iters = 10000;
        return sa_dr(problem,
                     StringPlan::uniform({{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}}, 10),
                     vec({6.0, -6.0, 6.0, -6.0, 6.0}), cfg);
    };
    RunMeta meta;
    meta.algorithm = "sa-dr";
    meta.plan = "1,2,3,4,5;6,7,8,9,10";
    meta.seed = 7;

    const std::string path_a = "acceptance_run_a.csv";
    const std::string path_b = "acceptance_run_b.csv";
    feasdr::save_run(solve_once(), meta, path_a);
    feasdr::save_run(solve_once(), meta, path_b);

    const std::string bytes_a = slurp(path_a);
    const std::string bytes_b = slurp(path_b);
    const std::string meta_a = slurp(path_a + ".meta.json");
    const std::string meta_b = slurp(path_b + ".meta.json");
    const bool ok = !bytes_a.empty() && bytes_a == bytes_b && meta_a == meta_b;
    report(8, ok,
           fmt("re-solving the same seed writes byte-identical traces (%zu bytes)",
               bytes_a.size()));
    for (const std::string& p : {path_a, path_b}) {
        std::remove(p.c_str());
        std::remove((p + ".meta.json").c_str());
    }
}

} // namespace

int main() {
    try {
        criterion_1();
    } catch (const std::exception& e) {
        report(1, false, std::string("operator inequality batch failed: ") + e.what());
    }

    try {
        const BatchOutcome batch = convergence_batch();
        report(2, batch.worst_residual <= 1e-6 && batch.no_budget_stop &&
                      batch.secs < 30.0,
               fmt("all 60 runs reach residual 1e-6 inside the iteration budget "
                   "(worst %.2e, %.1fs < 30s)",
                   batch.worst_residual, batch.secs));
        report(3, batch.fejer_ok,
               fmt("distance to the certified point never increases along any "
                   "run (worst exceedance %.2e)",
                   batch.worst_fejer));
        report(4, batch.worst_min_step <= 1e-8,
               fmt("step norms fall below 1e-8 in every run (worst minimum "
                   "%.2e)",
                   batch.worst_min_step));
    } catch (const std::exception& e) {
        const std::string why = std::string("convergence batch failed: ") + e.what();
        report(2, false, why);
        report(3, false, why);
        report(4, false, why);
    }

    try {
        criterion_5();
    } catch (const std::exception& e) {
        report(5, false, std::string("line-family batch failed: ") + e.what());
    }
    try {
        criterion_6();
    } catch (const std::exception& e) {
        report(6, false, std::string("equivalence batch failed: ") + e.what());
    }
    try {
        criterion_7();
    } catch (const std::exception& e) {
        report(7, false, std::string("interval witness failed: ") + e.what());
    }
    try {
        criterion_8();
    } catch (const std::exception& e) {
        report(8, false, std::string("determinism batch failed: ") + e.what());
    }

    if (g_failed == 0)
        std::printf("all 8 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}

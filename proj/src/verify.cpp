#include "feasdr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include <Eigen/LU>

#include "feasdr/algorithms.hpp"
#include "feasdr/error.hpp"
#include "feasdr/generate.hpp"
#include "feasdr/io.hpp"
#include "feasdr/operators.hpp"
#include "feasdr/rng.hpp"

namespace feasdr {

namespace {

/// Accumulates named verdicts with the three comparison directions used by
/// the suites: metric-below-threshold, metric-at-least-threshold (positive
/// controls), and plain pass/fail flags.
struct Battery {
    VerifyReport report;

    void bound(std::string name, double metric, double threshold, std::string detail) {
        Verdict v;
        v.metric = metric;
        v.threshold = threshold;
        v.passed = metric <= threshold;
        v.detail = std::move(detail);
        report.checks.push_back({std::move(name), std::move(v)});
    }

    void at_least(std::string name, double metric, double threshold, std::string detail) {
        Verdict v;
        v.metric = metric;
        v.threshold = threshold;
        v.passed = metric >= threshold;
        v.detail = std::move(detail);
        report.checks.push_back({std::move(name), std::move(v)});
    }

    void flag(std::string name, bool ok, std::string detail) {
        Verdict v;
        v.metric = ok ? 0.0 : 1.0;
        v.threshold = 0.0;
        v.passed = ok;
        v.detail = std::move(detail);
        report.checks.push_back({std::move(name), std::move(v)});
    }

    void verdict(std::string name, Verdict v) {
        report.checks.push_back({std::move(name), std::move(v)});
    }
};

/// Ten interior-certified instances across dimensions 2..6, alternating
/// halfspace-only polytopes with ball/box mixes.
std::vector<FeasibilityProblem> certified_battery(std::uint64_t seed) {
    std::vector<FeasibilityProblem> out;
    for (int i = 0; i < 5; ++i) {
        InstanceSpec poly;
        poly.family = InstanceSpec::Family::polytope;
        poly.dim = 2 + i;
        poly.halfspaces = 4 + (i % 3);
        poly.slack = 0.25;
        poly.seed = seed * 1009 + static_cast<std::uint64_t>(i);
        out.push_back(generate(poly));

        InstanceSpec mix;
        mix.family = InstanceSpec::Family::ball_box_mix;
        mix.dim = 2 + i;
        mix.balls = 2;
        mix.boxes = 2;
        mix.slack = 0.2;
        mix.seed = seed * 1009 + 500 + static_cast<std::uint64_t>(i);
        out.push_back(generate(mix));
    }
    return out;
}

std::vector<int> all_indices(int m) {
    std::vector<int> all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    return all;
}

/// Two covering groups for an m-set problem (one group when m == 2).
std::vector<std::vector<int>> split_groups(int m) {
    const std::vector<int> all = all_indices(m);
    if (m == 2) return {all};
    if (m == 3) return {{0, 1}, {1, 2}};
    const int h = m / 2;
    return {std::vector<int>(all.begin(), all.begin() + h),
            std::vector<int>(all.begin() + h, all.end())};
}

/// The two-halfspace instance on the real line used for hand-traced values:
/// C1 = {x <= 1}, C2 = {x >= -1}, certified point 0 with slack 1.
FeasibilityProblem r1_instance() {
    Vector a1(1), a2(1), p(1);
    a1 << 1.0;
    a2 << -1.0;
    p << 0.0;
    return FeasibilityProblem(
        {ConvexSet::halfspace(a1, 1.0), ConvexSet::halfspace(a2, 1.0)}, p, 1.0);
}

VerifyReport geometry_suite(std::uint64_t seed) {
    Battery b;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);

    // Set zoo: every variant over several dimensions.
    std::vector<ConvexSet> zoo;
    for (const auto& problem : certified_battery(seed))
        for (const auto& s : problem.sets()) zoo.push_back(s);
    for (int n = 2; n <= 5; ++n) {
        zoo.push_back(ConvexSet::hyperplane(rng.unit_vector(n), rng.uniform(-1.0, 1.0)));
        const int rows = 1 + rng.uniform_int(n - 1);
        Matrix m(rows, n);
        for (int r = 0; r < rows; ++r) m.row(r) = rng.normal_vector(n).transpose();
        zoo.push_back(ConvexSet::affine_subspace(m, rng.normal_vector(rows)));
    }
    {
        // Rank-deficient but consistent affine system (duplicated row).
        Matrix m(2, 3);
        m.row(0) << 1.0, 2.0, -1.0;
        m.row(1) << 2.0, 4.0, -2.0;
        Vector rhs(2);
        rhs << 3.0, 6.0;
        zoo.push_back(ConvexSet::affine_subspace(m, rhs));
    }

    double worst_member = 0.0;
    double worst_idem = 0.0;
    double worst_dist = 0.0;
    double worst_vi = 0.0;
    double worst_lip = 0.0;
    double worst_fne = 0.0;
    for (const auto& s : zoo) {
        const int n = s.dim();
        std::vector<std::pair<Vector, Vector>> pairs;
        for (int t = 0; t < 40; ++t) {
            const Vector x = rng.uniform_vector(n, -8.0, 8.0);
            const Vector y = rng.uniform_vector(n, -8.0, 8.0);
            const Vector px = s.project(x);
            const Vector z = s.project(y);
            worst_member = std::max(worst_member, s.distance(px) / (1.0 + px.norm()));
            worst_idem =
                std::max(worst_idem, (s.project(px) - px).norm() / (1.0 + px.norm()));
            worst_dist = std::max(
                worst_dist, std::abs(s.distance(x) - (x - px).norm()) / (1.0 + x.norm()));
            worst_vi = std::max(
                worst_vi, (x - px).dot(z - px) / ((1.0 + x.norm()) * (1.0 + z.norm())));
            worst_lip = std::max(worst_lip,
                                 (std::abs(s.distance(x) - s.distance(y)) -
                                  (x - y).norm()) /
                                     (1.0 + x.norm() + y.norm()));
            pairs.emplace_back(x, y);
        }
        worst_fne =
            std::max(worst_fne, probe_fne(Operator::projection(s), pairs).max_violation);
    }
    b.bound("projection/lands-in-set", worst_member, 1e-10,
            "scaled distance of projected points to their set");
    b.bound("projection/idempotent", worst_idem, 1e-10,
            "scaled drift of the double projection");
    b.bound("projection/distance-agrees", worst_dist, 1e-10,
            "closed-form distance vs displacement of the projection");
    b.bound("projection/nearest-point-inequality", worst_vi, 1e-10,
            "<x-Px, z-Px> <= 0 over member points z, scaled");
    b.bound("distance/lipschitz", worst_lip, 1e-10,
            "|d(x)-d(y)| never exceeds ||x-y||, scaled");
    b.bound("projection/firmly-nonexpansive", worst_fne, 1e-9,
            "probe over sampled point pairs");

    double worst_margin = 0.0;
    for (const auto& problem : certified_battery(seed + 1)) {
        const Vector& p = *problem.interior_point();
        for (const auto& s : problem.sets())
            worst_margin = std::max(
                worst_margin, (problem.slack() - s.interior_margin(p)) / (1.0 + p.norm()));
    }
    b.bound("generator/certified-margin", worst_margin, 1e-9,
            "slack minus measured margin at the certified point, scaled");
    return b.report;
}

VerifyReport operators_suite(std::uint64_t seed) {
    Battery b;
    Rng rng(seed ^ 0xda3e39cb94b95bdbull);
    const auto problems = certified_battery(seed);

    double worst_pair_fne = 0.0;
    double worst_pair_sqne = 0.0;
    double worst_prefix_fne = 0.0;
    double worst_prefix_sqne = 0.0;
    double worst_combo_fne = 0.0;
    double worst_fixed = 0.0;
    for (const auto& problem : problems) {
        const int n = problem.dim();
        const int m = problem.set_count();
        const Vector& p = *problem.interior_point();

        std::vector<std::pair<Vector, Vector>> pairs;
        std::vector<Vector> samples;
        for (int t = 0; t < 60; ++t) {
            pairs.emplace_back(rng.uniform_vector(n, -10.0, 10.0),
                               rng.uniform_vector(n, -10.0, 10.0));
            samples.push_back(rng.uniform_vector(n, -10.0, 10.0));
        }

        for (int k = 0; k < std::min(m, 3); ++k) {
            const Operator t_pair =
                Operator::two_set_dr(problem.set(k), problem.set((k + 1) % m));
            worst_pair_fne =
                std::max(worst_pair_fne, probe_fne(t_pair, pairs).max_violation);
            worst_pair_sqne = std::max(
                worst_pair_sqne, probe_sqne(t_pair, {p}, samples, 1.0).max_violation);
        }
        for (int r = 2; r <= std::min(m, 4); ++r) {
            const std::vector<ConvexSet> prefix(problem.sets().begin(),
                                                problem.sets().begin() + r);
            const Operator t_r = Operator::r_set_dr(prefix);
            worst_prefix_fne =
                std::max(worst_prefix_fne, probe_fne(t_r, pairs).max_violation);
            worst_prefix_sqne = std::max(
                worst_prefix_sqne, probe_sqne(t_r, {p}, samples, 1.0).max_violation);
        }
        {
            std::vector<std::pair<double, Operator>> terms;
            terms.emplace_back(0.3, Operator::two_set_dr(problem.set(0), problem.set(1)));
            terms.emplace_back(0.7,
                               Operator::two_set_dr(problem.set(m - 1), problem.set(0)));
            worst_combo_fne =
                std::max(worst_combo_fne,
                         probe_fne(Operator::convex_combination(std::move(terms)), pairs)
                             .max_violation);
        }
        {
            std::vector<Operator> factors;
            for (int l = 0; l < m; ++l)
                factors.push_back(
                    Operator::two_set_dr(problem.set(l), problem.set((l + 1) % m)));
            const Operator chain = Operator::compose(std::move(factors));
            worst_fixed =
                std::max(worst_fixed, (chain(p) - p).norm() / (1.0 + p.norm()));
        }
    }
    b.bound("pair_dr/firmly-nonexpansive", worst_pair_fne, 1e-9,
            "probe over ordered set pairs");
    b.bound("pair_dr/strongly-quasi-nonexpansive", worst_pair_sqne, 1e-9,
            "alpha = 1 against the certified common point");
    b.bound("r_set_dr/firmly-nonexpansive", worst_prefix_fne, 1e-9,
            "prefix operators, r = 2..4");
    b.bound("r_set_dr/strongly-quasi-nonexpansive", worst_prefix_sqne, 1e-9,
            "alpha = 1 against the certified common point");
    b.bound("combination/firmly-nonexpansive", worst_combo_fne, 1e-9,
            "averaging preserves the inequality");
    b.bound("composition/common-point-fixed", worst_fixed, 1e-10,
            "certified point is fixed by whole-problem chains, scaled");

    // Operator identities on a fixed polytope.
    const FeasibilityProblem& pr0 = problems.front();
    const Operator base = Operator::two_set_dr(pr0.set(0), pr0.set(1));
    const Operator relax0 = Operator::relax(base, 0.0);
    const Operator relax1 = Operator::relax(base, 1.0);
    const Operator relax2 = Operator::relax(Operator::projection(pr0.set(0)), 2.0);
    const Operator refl0 = Operator::reflection(pr0.set(0));
    const Operator rset2 = Operator::r_set_dr({pr0.set(0), pr0.set(1)});
    double worst_id0 = 0.0;
    double worst_id1 = 0.0;
    double worst_id2 = 0.0;
    double worst_prefix_eq = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Vector x = rng.uniform_vector(pr0.dim(), -10.0, 10.0);
        worst_id0 = std::max(worst_id0, (relax0(x) - x).norm());
        worst_id1 = std::max(worst_id1, (relax1(x) - base(x)).norm());
        worst_id2 = std::max(worst_id2, (relax2(x) - refl0(x)).norm());
        worst_prefix_eq = std::max(worst_prefix_eq, (rset2(x) - base(x)).norm());
    }
    b.bound("relaxation/zero-is-identity", worst_id0, 0.0, "exact");
    b.bound("relaxation/one-is-inner", worst_id1, 0.0, "exact");
    b.bound("relaxation/two-on-projection-is-reflection", worst_id2, 0.0, "exact");
    b.bound("r_set_dr/two-sets-equals-pair_dr", worst_prefix_eq, 0.0, "exact");

    {
        // Reflections are nonexpansive but not firmly so; this witness pair
        // on a single halfspace produces violation exactly 2.
        Vector normal(2);
        normal << 1.0, 0.0;
        const ConvexSet wall = ConvexSet::halfspace(normal, 1.0);
        Vector x(2), y(2);
        x << 2.0, 0.0;
        y << 3.0, 0.0;
        const ProbeReport probe = probe_fne(Operator::reflection(wall), {{x, y}});
        b.at_least("reflection/not-firmly-nonexpansive", probe.max_violation, 2.0 - 1e-12,
                   "witness pair must yield a positive violation");
        b.flag("probe/reports-witness", probe.witness.has_value(),
               "violating probes carry the worst pair");
    }
    {
        bool rejected_high = false;
        try {
            Operator::relax(base, 2.5);
        } catch (const Error& e) {
            rejected_high = e.code() == ErrorCode::invalid_argument;
        }
        bool rejected_low = false;
        try {
            Operator::relax(base, -0.1);
        } catch (const Error& e) {
            rejected_low = e.code() == ErrorCode::invalid_argument;
        }
        b.flag("relaxation/range-enforced", rejected_high && rejected_low,
               "relaxation constants outside [0, 2] are rejected");
    }
    {
        bool rejected = false;
        const Vector bad = *pr0.interior_point() + 100.0 * pr0.set(0).normal();
        try {
            probe_sqne(base, {bad}, {bad}, 1.0);
        } catch (const Error& e) {
            rejected = e.code() == ErrorCode::invalid_argument;
        }
        b.flag("sqne_probe/rejects-non-fixed-reference", rejected,
               "reference points must be verified fixed points");
    }
    return b.report;
}

VerifyReport algorithms_suite(std::uint64_t seed) {
    Battery b;
    Rng rng(seed ^ 0xa0761d6478bd642full);

    // ---- hand-traced values on the two-halfspace instance over the reals
    const FeasibilityProblem r1 = r1_instance();
    Vector x0(1);
    x0 << 5.0;
    const StopConfig defaults;
    {
        const RunRecord rec = sa_dr(r1, StringPlan::uniform({{0, 1}}, 2), x0, defaults);
        b.bound("sa_dr/hand-trace-first-iterate", std::abs(rec.iterates.at(1)[0] - 1.0),
                0.0, "single string from 5.0 lands on 1.0 exactly");
        b.flag("sa_dr/hand-trace-stop",
               rec.stop_reason == StopReason::residual_tol && rec.iterations == 1,
               "feasible after exactly one step");
    }
    {
        const RunRecord rec = bi_dr(r1, BlockPlan::uniform({{0, 1}}, 2), x0, defaults);
        b.bound("bi_dr/hand-trace-first-iterate", std::abs(rec.iterates.at(1)[0] - 2.0),
                0.0, "single block averages 3.0 and 1.0 exactly");
    }
    {
        const RunRecord rec = simultaneous_dr(r1, {}, x0, defaults);
        b.bound("simultaneous_dr/averaged-pair-value",
                std::abs(rec.iterates.at(1)[0] - 2.0), 0.0,
                "two sets: average of both pair operators");
    }
    {
        const RunRecord rec = r_set_dr_scheme(r1, {}, x0, defaults);
        b.bound("r_set_dr_scheme/two-set-degenerate-value",
                std::abs(rec.iterates.at(1)[0] - 3.0), 0.0,
                "m = 2 scheme performs the plain pair iteration");
    }
    {
        StopConfig one = defaults;
        one.max_iters = 1;
        const RunRecord a = sa_dr(r1, StringPlan::uniform({{0, 1}}, 2), x0, one);
        const RunRecord c = bi_dr(r1, BlockPlan::uniform({{0, 1}}, 2), x0, one);
        const Verdict v = compare_trajectories(a, c, 1e-12);
        b.flag("compare/detects-different-schemes", !v.passed && v.metric == 1.0,
               "first iterates 1.0 vs 2.0 must be flagged with deviation 1");
    }
    {
        // Comparator and monotonicity checks on synthetic records.
        RunRecord stationary;
        Vector z(1);
        z << 1.0;
        stationary.iterates = {z, z, z};
        stationary.iterate_indices = {0, 1, 2};
        stationary.step_norms = {0.0, 0.0};
        stationary.residuals = {0.0, 0.0, 0.0};
        stationary.fejer_distances = {1.0, 1.0, 1.0};
        stationary.iterations = 2;
        const Verdict same = compare_trajectories(stationary, stationary, 0.0);
        b.flag("compare/identical-records", same.passed && same.metric == 0.0, "");
        const Verdict mono = check_fejer(stationary, 0.0);
        b.flag("fejer/stationary-passes-with-zero-slack",
               mono.passed && mono.metric == 0.0, "");
        RunRecord drifting = stationary;
        drifting.fejer_distances = {1.0, 1.5, 2.0};
        const Verdict bad = check_fejer(drifting, 1e-12);
        b.flag("fejer/detects-growth", !bad.passed && bad.metric > 0.4,
               "increasing reference distances must fail");
    }

    // ---- monotonicity, regularity, and convergence across schemes
    double worst_fejer = 0.0;
    double worst_tail = 0.0;
    double worst_final = 0.0;
    bool all_stopped = true;
    StopConfig run_cfg;
    run_cfg.residual_tol = 1e-9;
    run_cfg.step_tol = 1e-12;
    run_cfg.max_iters = 20000;
    StopConfig one_step = run_cfg;
    one_step.max_iters = 1;
    const auto problems = certified_battery(seed + 17);
    for (const auto& problem : problems) {
        const int m = problem.set_count();
        const Vector start = rng.uniform_vector(problem.dim(), -5.0, 5.0);
        const StringPlan sp = StringPlan::uniform(split_groups(m), m);
        const BlockPlan bp = BlockPlan::uniform(split_groups(m), m);
        using Runner = std::function<RunRecord(const Vector&, const StopConfig&)>;
        const std::vector<Runner> runners = {
            [&](const Vector& x0, const StopConfig& c) { return sa_dr(problem, sp, x0, c); },
            [&](const Vector& x0, const StopConfig& c) { return bi_dr(problem, bp, x0, c); },
            [&](const Vector& x0, const StopConfig& c) {
                return r_set_dr_scheme(problem, {}, x0, c);
            },
        };
        for (const auto& run : runners) {
            const RunRecord rec = run(start, run_cfg);
            worst_fejer = std::max(worst_fejer, check_fejer(rec, 1e-12).metric);
            // A residual-stopped run may have jumped straight into the
            // feasible set; vanishing steps are then observed on the move the
            // scheme would make next, which must be negligible.
            const double reg =
                rec.stop_reason == StopReason::residual_tol
                    ? run(rec.final_point(), one_step).step_norms.front()
                    : check_asymptotic_regularity(rec, 1e-8).metric;
            worst_tail = std::max(worst_tail, reg);
            worst_final = std::max(worst_final, rec.final_residual());
            all_stopped = all_stopped && rec.stop_reason != StopReason::max_iters;
        }
    }
    b.bound("runs/fejer-monotone", worst_fejer, 0.0,
            "largest per-step growth beyond rounding allowance, all schemes");
    b.bound("runs/asymptotic-regularity", worst_tail, 1e-8,
            "largest tail-minimum or post-stop step norm across runs");
    b.bound("runs/final-residual", worst_final, 1e-6, "");
    b.flag("runs/stop-before-budget", all_stopped,
           "certified runs should stop on a tolerance, not the budget");

    // ---- special-case equivalences
    {
        const FeasibilityProblem& problem = problems.front();
        const int m = problem.set_count();
        StopConfig eq_cfg;
        eq_cfg.residual_tol = 1e-13;
        eq_cfg.step_tol = 1e-13;
        eq_cfg.max_iters = 300;
        const Vector start = rng.uniform_vector(problem.dim(), -5.0, 5.0);
        const RunRecord a =
            sa_dr(problem, StringPlan::uniform({all_indices(m)}, m), start, eq_cfg);
        const RunRecord c = cyclic_dr(problem, start, eq_cfg);
        Verdict v = compare_trajectories(a, c, 1e-12);
        v.detail = "single covering string vs the cyclic baseline";
        b.verdict("cyclic_dr/equals-single-string", v);
    }
    {
        // From a start point inside the first set, every double reflection in
        // the chain collapses to a projection, so one chain application
        // equals one projection sweep in the order 2,...,m,1.
        const FeasibilityProblem& problem = problems.front();
        const int m = problem.set_count();
        const int n = problem.dim();
        std::vector<Operator> chain_factors;
        std::vector<Operator> sweep_factors;
        for (int l = 0; l < m; ++l)
            chain_factors.push_back(
                Operator::two_set_dr(problem.set(l), problem.set((l + 1) % m)));
        for (int i = 1; i < m; ++i)
            sweep_factors.push_back(Operator::projection(problem.set(i)));
        sweep_factors.push_back(Operator::projection(problem.set(0)));
        const Operator chain = Operator::compose(std::move(chain_factors));
        const Operator sweep = Operator::compose(std::move(sweep_factors));
        Vector xc = problem.set(0).project(rng.uniform_vector(n, -6.0, 6.0));
        Vector xp = xc;
        double worst = 0.0;
        for (int it = 0; it < 120; ++it) {
            xc = chain(xc);
            xp = sweep(xp);
            worst = std::max(worst, (xc - xp).norm());
        }
        b.bound("cyclic_dr/collapses-to-projection-sweeps", worst, 1e-10,
                "start point inside the first set");
    }

    // ---- empty-interior families: projected limits identify the intersection
    {
        InstanceSpec lines;
        lines.family = InstanceSpec::Family::lines_through_point;
        lines.dim = 2;
        lines.lines = 2;
        lines.seed = seed + 5;
        const FeasibilityProblem lp = generate(lines);
        const Vector& p = *lp.interior_point();

        b.bound("lines/point-on-every-line",
                std::max(lp.set(0).distance(p), lp.set(1).distance(p)), 0.0,
                "construction point satisfies both line equations exactly");
        Matrix sys(2, 2);
        sys.row(0) = lp.set(0).coeffs().row(0);
        sys.row(1) = lp.set(1).coeffs().row(0);
        Vector rhs(2);
        rhs << lp.set(0).rhs()[0], lp.set(1).rhs()[0];
        const Vector q = sys.fullPivLu().solve(rhs);
        b.bound("lines/intersection-oracle", (q - p).norm(), 1e-10 * (1.0 + p.norm()),
                "stacked 2x2 system solves back to the construction point");

        StopConfig wcfg;
        wcfg.residual_tol = 1e-12;
        wcfg.step_tol = 1e-13;
        wcfg.max_iters = 50000;
        const Vector start = rng.uniform_vector(2, -5.0, 5.0);
        const RunRecord rec = r_set_dr_scheme(lp, {}, start, wcfg);
        const Vector shadow = lp.set(0).project(rec.final_point());
        b.bound("pair_dr/projected-limit-on-first-set", lp.set(0).distance(shadow), 1e-12,
                "");
        b.bound("pair_dr/projected-limit-on-second-set", lp.set(1).distance(shadow), 1e-6,
                "");
        b.bound("pair_dr/projected-limit-near-intersection", (shadow - p).norm(), 1e-6,
                "");
    }
    {
        InstanceSpec lines;
        lines.family = InstanceSpec::Family::lines_through_point;
        lines.dim = 2;
        lines.lines = 3;
        lines.seed = seed + 6;
        const FeasibilityProblem lp = generate(lines);
        const Vector& p = *lp.interior_point();
        const std::vector<std::vector<int>> blocks = {{0, 1}, {1, 2}};
        StopConfig wcfg;
        wcfg.residual_tol = 1e-12;
        wcfg.step_tol = 1e-13;
        wcfg.max_iters = 50000;
        const Vector start = rng.uniform_vector(2, -5.0, 5.0);
        const RunRecord rec = bi_dr(lp, BlockPlan::uniform(blocks, 3), start, wcfg);
        const Vector y = rec.sweep_iterates.back();
        double worst_block = 0.0;
        for (const auto& block : blocks)
            for (int l : block) {
                const Vector shadow = lp.set(l).project(y);
                for (int o : block)
                    worst_block = std::max(worst_block, lp.set(o).distance(shadow));
            }
        b.bound("bi_dr/projected-sweep-limit-in-block", worst_block, 1e-6,
                "projections of the sweep limit are feasible for their block");
        b.bound("bi_dr/sweep-limit-identifies-intersection",
                (lp.set(0).project(y) - p).norm(), 1e-6, "");
    }

    // ---- determinism
    {
        InstanceSpec s;
        s.family = InstanceSpec::Family::polytope;
        s.dim = 2;
        s.halfspaces = 3;
        s.slack = 0.5;
        s.seed = 7;
        const std::string once = problem_to_text(generate(s));
        const std::string twice = problem_to_text(generate(s));
        b.flag("generate/deterministic", once == twice,
               "same seed must reproduce the instance byte for byte");
    }
    {
        const FeasibilityProblem& problem = problems.front();
        const int m = problem.set_count();
        const Vector start = rng.uniform_vector(problem.dim(), -5.0, 5.0);
        const StringPlan plan = StringPlan::uniform(split_groups(m), m);
        const RunRecord first = sa_dr(problem, plan, start, run_cfg);
        const RunRecord second = sa_dr(problem, plan, start, run_cfg);
        const bool same = first.iterations == second.iterations &&
                          (first.final_point().array() == second.final_point().array())
                              .all();
        b.flag("runs/deterministic", same, "identical inputs, identical trajectory");
    }
    return b.report;
}

} // namespace

VerifyReport verify_suite(const std::string& suite, std::uint64_t seed) {
    if (suite == "geometry") return geometry_suite(seed);
    if (suite == "operators") return operators_suite(seed);
    if (suite == "algorithms") return algorithms_suite(seed);
    if (suite == "all") {
        VerifyReport all;
        for (const char* part : {"geometry", "operators", "algorithms"}) {
            VerifyReport r = verify_suite(part, seed);
            for (auto& c : r.checks) all.checks.push_back(std::move(c));
        }
        return all;
    }
    fail(ErrorCode::invalid_argument,
         "unknown suite '" + suite + "' (expected geometry, operators, algorithms, or all)");
}

} // namespace feasdr

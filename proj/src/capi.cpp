#include "feasdr.h"

#include <cstdio>
#include <exception>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "feasdr/algorithms.hpp"
#include "feasdr/error.hpp"
#include "feasdr/generate.hpp"
#include "feasdr/io.hpp"
#include "feasdr/verify.hpp"

struct feasdr_problem {
    feasdr::FeasibilityProblem value;
};

struct feasdr_run {
    feasdr::RunRecord rec;
};

namespace {

thread_local std::string g_last_error;

feasdr_status map_code(feasdr::ErrorCode code) {
    switch (code) {
    case feasdr::ErrorCode::invalid_argument: return FEASDR_ERR_INVALID_ARGUMENT;
    case feasdr::ErrorCode::dimension_mismatch: return FEASDR_ERR_DIMENSION_MISMATCH;
    case feasdr::ErrorCode::not_finite: return FEASDR_ERR_NOT_FINITE;
    case feasdr::ErrorCode::parse: return FEASDR_ERR_PARSE;
    case feasdr::ErrorCode::io: return FEASDR_ERR_IO;
    }
    return FEASDR_ERR_INTERNAL;
}

/// Runs the body, translating exceptions into status codes + last-error text.
template <typename F>
feasdr_status guarded(F&& body) {
    try {
        body();
        return FEASDR_OK;
    } catch (const feasdr::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FEASDR_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return FEASDR_ERR_INTERNAL;
    }
}

feasdr_status invalid(const char* message) {
    g_last_error = message;
    return FEASDR_ERR_INVALID_ARGUMENT;
}

std::string text_or_empty(const char* s) { return s == nullptr ? std::string() : s; }

std::vector<int> all_indices(int m) {
    std::vector<int> all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    return all;
}

/// Weights for algorithms that take one flat comma list.
std::vector<double> flat_weights(const std::string& text) {
    if (text.empty()) return {};
    const auto groups = feasdr::parse_weight_groups(text);
    if (groups.size() != 1)
        feasdr::fail(feasdr::ErrorCode::invalid_argument,
                     "this algorithm takes a single comma-separated weight list");
    return groups.front();
}

void require_no_plan(const std::string& plan, const char* algorithm) {
    if (!plan.empty())
        feasdr::fail(feasdr::ErrorCode::invalid_argument,
                     std::string(algorithm) +
                         " takes no plan (it is defined over all sets in order)");
}

feasdr::RunRecord dispatch_solve(const feasdr::FeasibilityProblem& problem,
                                 const std::string& algorithm, const std::string& plan,
                                 const std::string& weights, const feasdr::Vector& x0,
                                 const feasdr::StopConfig& cfg) {
    using feasdr::BlockPlan;
    using feasdr::StringPlan;
    const int m = problem.set_count();

    if (algorithm == "sa-dr") {
        const auto strings =
            plan.empty() ? std::vector<std::vector<int>>{all_indices(m)}
                         : feasdr::parse_plan(plan);
        const StringPlan sp = weights.empty()
                                  ? StringPlan::uniform(strings, m)
                                  : StringPlan(strings, flat_weights(weights), m);
        return feasdr::sa_dr(problem, sp, x0, cfg);
    }
    if (algorithm == "bi-dr") {
        const auto blocks = plan.empty()
                                ? std::vector<std::vector<int>>{all_indices(m)}
                                : feasdr::parse_plan(plan);
        const BlockPlan bp =
            weights.empty() ? BlockPlan::uniform(blocks, m)
                            : BlockPlan(blocks, feasdr::parse_weight_groups(weights), m);
        return feasdr::bi_dr(problem, bp, x0, cfg);
    }
    if (algorithm == "rset-dr") {
        require_no_plan(plan, "rset-dr");
        return feasdr::r_set_dr_scheme(problem, flat_weights(weights), x0, cfg);
    }
    if (algorithm == "cyclic-dr") {
        require_no_plan(plan, "cyclic-dr");
        if (!weights.empty())
            feasdr::fail(feasdr::ErrorCode::invalid_argument,
                         "cyclic-dr takes no weights (it runs one unweighted chain)");
        return feasdr::cyclic_dr(problem, x0, cfg);
    }
    if (algorithm == "sdr") {
        require_no_plan(plan, "sdr");
        return feasdr::simultaneous_dr(problem, flat_weights(weights), x0, cfg);
    }
    if (algorithm == "pocs") {
        require_no_plan(plan, "pocs");
        if (!weights.empty())
            feasdr::fail(feasdr::ErrorCode::invalid_argument,
                         "pocs takes no weights (it applies every projection once)");
        return feasdr::reference_cyclic_projections(problem, x0, cfg);
    }
    feasdr::fail(feasdr::ErrorCode::invalid_argument,
                 "unknown algorithm '" + algorithm +
                     "' (expected sa-dr, bi-dr, rset-dr, cyclic-dr, sdr, or pocs)");
}

} // namespace

extern "C" {

const char* feasdr_last_error(void) { return g_last_error.c_str(); }

feasdr_status feasdr_problem_load(const char* path, feasdr_problem** out) {
    if (path == nullptr || out == nullptr) return invalid("NULL argument");
    return guarded([&] { *out = new feasdr_problem{feasdr::load_problem(path)}; });
}

feasdr_status feasdr_problem_parse(const char* json_text, feasdr_problem** out) {
    if (json_text == nullptr || out == nullptr) return invalid("NULL argument");
    return guarded([&] {
        *out = new feasdr_problem{feasdr::parse_problem_text(json_text, "problem text")};
    });
}

feasdr_status feasdr_problem_generate(const char* spec, uint64_t seed,
                                      feasdr_problem** out) {
    if (spec == nullptr || out == nullptr) return invalid("NULL argument");
    return guarded([&] {
        feasdr::InstanceSpec parsed = feasdr::parse_instance_spec(spec);
        parsed.seed = seed;
        *out = new feasdr_problem{feasdr::generate(parsed)};
    });
}

feasdr_status feasdr_problem_save(const feasdr_problem* problem, const char* path) {
    if (problem == nullptr || path == nullptr) return invalid("NULL argument");
    return guarded([&] { feasdr::save_problem(problem->value, path); });
}

void feasdr_problem_free(feasdr_problem* problem) { delete problem; }

int feasdr_problem_dim(const feasdr_problem* problem) {
    return problem == nullptr ? 0 : problem->value.dim();
}

int feasdr_problem_set_count(const feasdr_problem* problem) {
    return problem == nullptr ? 0 : problem->value.set_count();
}

int feasdr_problem_has_certified_point(const feasdr_problem* problem) {
    return problem != nullptr && problem->value.interior_point().has_value() ? 1 : 0;
}

feasdr_status feasdr_problem_certified_point(const feasdr_problem* problem, double* out,
                                             size_t len) {
    if (problem == nullptr || out == nullptr) return invalid("NULL argument");
    return guarded([&] {
        const auto& p = problem->value.interior_point();
        if (!p)
            feasdr::fail(feasdr::ErrorCode::invalid_argument,
                         "instance carries no certified point");
        if (static_cast<size_t>(p->size()) != len)
            feasdr::fail(feasdr::ErrorCode::dimension_mismatch,
                         "certified point: buffer length " + std::to_string(len) +
                             ", dimension " + std::to_string(p->size()));
        for (Eigen::Index i = 0; i < p->size(); ++i) out[i] = (*p)[i];
    });
}

feasdr_status feasdr_problem_residual(const feasdr_problem* problem, const double* x,
                                      size_t len, double* out) {
    if (problem == nullptr || x == nullptr || out == nullptr)
        return invalid("NULL argument");
    return guarded([&] {
        const feasdr::Vector v =
            Eigen::Map<const feasdr::Vector>(x, static_cast<Eigen::Index>(len));
        feasdr::detail::require_dim(problem->value.dim(), v, "residual input");
        feasdr::detail::require_finite(v, "residual input");
        *out = problem->value.max_residual(v);
    });
}

feasdr_status feasdr_problem_project(const feasdr_problem* problem, int set_index,
                                     const double* x, size_t len, double* out) {
    if (problem == nullptr || x == nullptr || out == nullptr)
        return invalid("NULL argument");
    return guarded([&] {
        if (set_index < 0 || set_index >= problem->value.set_count())
            feasdr::fail(feasdr::ErrorCode::invalid_argument,
                         "set index " + std::to_string(set_index) +
                             " out of range 0.." +
                             std::to_string(problem->value.set_count() - 1));
        const feasdr::Vector v =
            Eigen::Map<const feasdr::Vector>(x, static_cast<Eigen::Index>(len));
        feasdr::detail::require_dim(problem->value.dim(), v, "projection input");
        feasdr::detail::require_finite(v, "projection input");
        const feasdr::Vector p = problem->value.set(set_index).project(v);
        for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = p[i];
    });
}

void feasdr_solve_options_init(feasdr_solve_options* opts) {
    if (opts == nullptr) return;
    opts->algorithm = "sa-dr";
    opts->plan = nullptr;
    opts->weights = nullptr;
    opts->x0 = nullptr;
    opts->x0_len = 0;
    opts->residual_tol = 1e-8;
    opts->step_tol = 1e-12;
    opts->max_iters = 100000;
    opts->trace_stride = 1;
}

feasdr_status feasdr_solve(const feasdr_problem* problem,
                           const feasdr_solve_options* opts, feasdr_run** out) {
    if (problem == nullptr || opts == nullptr || out == nullptr)
        return invalid("NULL argument");
    if (opts->algorithm == nullptr) return invalid("options carry no algorithm");
    return guarded([&] {
        feasdr::StopConfig cfg;
        cfg.residual_tol = opts->residual_tol;
        cfg.step_tol = opts->step_tol;
        cfg.max_iters = opts->max_iters;
        cfg.trace_stride = opts->trace_stride;

        feasdr::Vector x0;
        if (opts->x0 == nullptr) {
            x0 = feasdr::Vector::Zero(problem->value.dim());
        } else {
            x0 = Eigen::Map<const feasdr::Vector>(
                opts->x0, static_cast<Eigen::Index>(opts->x0_len));
        }
        feasdr::RunRecord rec =
            dispatch_solve(problem->value, opts->algorithm, text_or_empty(opts->plan),
                           text_or_empty(opts->weights), x0, cfg);
        *out = new feasdr_run{std::move(rec)};
    });
}

void feasdr_run_free(feasdr_run* run) { delete run; }

long feasdr_run_iterations(const feasdr_run* run) {
    return run == nullptr ? 0 : run->rec.iterations;
}

const char* feasdr_run_stop_reason(const feasdr_run* run) {
    return run == nullptr ? "" : feasdr::to_string(run->rec.stop_reason);
}

double feasdr_run_final_residual(const feasdr_run* run) {
    return run == nullptr ? -1.0 : run->rec.final_residual();
}

feasdr_status feasdr_run_final_point(const feasdr_run* run, double* out, size_t len) {
    if (run == nullptr || out == nullptr) return invalid("NULL argument");
    return guarded([&] {
        const feasdr::Vector& p = run->rec.final_point();
        if (static_cast<size_t>(p.size()) != len)
            feasdr::fail(feasdr::ErrorCode::dimension_mismatch,
                         "final point: buffer length " + std::to_string(len) +
                             ", dimension " + std::to_string(p.size()));
        for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = p[i];
    });
}

feasdr_status feasdr_run_save(const feasdr_run* run, const char* algorithm,
                              const char* plan, uint64_t seed, const char* path) {
    if (run == nullptr || path == nullptr) return invalid("NULL argument");
    return guarded([&] {
        feasdr::RunMeta meta;
        meta.algorithm = text_or_empty(algorithm);
        meta.plan = text_or_empty(plan);
        meta.seed = seed;
        feasdr::save_run(run->rec, meta, path);
    });
}

feasdr_status feasdr_verify(const char* suite, uint64_t seed, int verbose,
                            int* failures) {
    if (suite == nullptr || failures == nullptr) return invalid("NULL argument");
    return guarded([&] {
        const feasdr::VerifyReport report = feasdr::verify_suite(suite, seed);
        if (verbose != 0) {
            for (const auto& c : report.checks) {
                std::printf("%s %-55s metric %.3e vs %.3e%s%s\n",
                            c.verdict.passed ? "PASS" : "FAIL", c.name.c_str(),
                            c.verdict.metric, c.verdict.threshold,
                            c.verdict.detail.empty() ? "" : "  -- ",
                            c.verdict.detail.c_str());
            }
        }
        *failures = report.failed();
    });
}

feasdr_status feasdr_compare_runs(const char* path_a, const char* path_b,
                                  double* max_deviation) {
    if (path_a == nullptr || path_b == nullptr || max_deviation == nullptr)
        return invalid("NULL argument");
    return guarded([&] {
        const feasdr::RunTable a = feasdr::load_run_csv(path_a);
        const feasdr::RunTable b = feasdr::load_run_csv(path_b);
        *max_deviation = feasdr::compare_run_tables(a, b);
    });
}

} // extern "C"

#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feasdr.h"

namespace {

struct ProblemDeleter {
    void operator()(feasdr_problem* p) const { feasdr_problem_free(p); }
};
struct RunDeleter {
    void operator()(feasdr_run* r) const { feasdr_run_free(r); }
};
using ProblemPtr = std::unique_ptr<feasdr_problem, ProblemDeleter>;
using RunPtr = std::unique_ptr<feasdr_run, RunDeleter>;

int report_error() {
    std::fprintf(stderr, "error: %s\n", feasdr_last_error());
    return 1;
}

/// Parses a comma-separated list of doubles; throws std::runtime_error on junk.
std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("could not parse '" + token + "' as a number");
        }
        if (used != token.size())
            throw std::runtime_error("could not parse '" + token + "' as a number");
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return values;
}

struct SolveArgs {
    std::string algorithm = "sa-dr";
    std::string problem_path;
    std::string generate_spec;
    std::string strings_plan;
    std::string blocks_plan;
    std::string weights;
    std::string x0_text;
    std::string out_path;
    double tol = 1e-8;
    double step_tol = 1e-12;
    long max_iters = 100000;
    std::uint64_t seed = 1;
};

int run_solve(const SolveArgs& args) {
    if (args.problem_path.empty() == args.generate_spec.empty()) {
        std::fprintf(stderr,
                     "error: provide exactly one of --problem FILE or --generate SPEC\n");
        return 1;
    }
    if (!args.strings_plan.empty() && args.algorithm != "sa-dr") {
        std::fprintf(stderr, "error: --strings applies to --algorithm sa-dr only\n");
        return 1;
    }
    if (!args.blocks_plan.empty() && args.algorithm != "bi-dr") {
        std::fprintf(stderr, "error: --blocks applies to --algorithm bi-dr only\n");
        return 1;
    }

    feasdr_problem* raw_problem = nullptr;
    const feasdr_status load_st =
        args.problem_path.empty()
            ? feasdr_problem_generate(args.generate_spec.c_str(), args.seed, &raw_problem)
            : feasdr_problem_load(args.problem_path.c_str(), &raw_problem);
    if (load_st != FEASDR_OK) return report_error();
    ProblemPtr problem(raw_problem);

    std::vector<double> x0;
    if (!args.x0_text.empty()) {
        try {
            x0 = parse_double_list(args.x0_text);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: --x0: %s\n", e.what());
            return 1;
        }
    }

    const std::string plan =
        !args.strings_plan.empty() ? args.strings_plan : args.blocks_plan;

    feasdr_solve_options opts;
    feasdr_solve_options_init(&opts);
    opts.algorithm = args.algorithm.c_str();
    opts.plan = plan.empty() ? nullptr : plan.c_str();
    opts.weights = args.weights.empty() ? nullptr : args.weights.c_str();
    opts.x0 = x0.empty() ? nullptr : x0.data();
    opts.x0_len = x0.size();
    opts.residual_tol = args.tol;
    opts.step_tol = args.step_tol;
    opts.max_iters = args.max_iters;

    feasdr_run* raw_run = nullptr;
    if (feasdr_solve(problem.get(), &opts, &raw_run) != FEASDR_OK)
        return report_error();
    RunPtr run(raw_run);

    const std::string stop_reason = feasdr_run_stop_reason(run.get());
    std::printf("algorithm:      %s\n", args.algorithm.c_str());
    std::printf("iterations:     %ld\n", feasdr_run_iterations(run.get()));
    std::printf("stop_reason:    %s\n", stop_reason.c_str());
    std::printf("final_residual: %.17g\n", feasdr_run_final_residual(run.get()));

    if (!args.out_path.empty()) {
        if (feasdr_run_save(run.get(), args.algorithm.c_str(), plan.c_str(), args.seed,
                            args.out_path.c_str()) != FEASDR_OK)
            return report_error();
        std::printf("trace:          %s\n", args.out_path.c_str());
    }
    return stop_reason == "max_iters" ? 2 : 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    int failures = 0;
    if (feasdr_verify(suite.c_str(), seed, 1, &failures) != FEASDR_OK)
        return report_error();
    if (failures == 0) {
        std::printf("verify: all checks passed (suite %s, seed %llu)\n", suite.c_str(),
                    static_cast<unsigned long long>(seed));
        return 0;
    }
    std::printf("verify: %d check(s) failed (suite %s, seed %llu)\n", failures,
                suite.c_str(), static_cast<unsigned long long>(seed));
    return 1;
}

int run_compare(const std::string& path_a, const std::string& path_b, double tol) {
    double max_deviation = 0.0;
    if (feasdr_compare_runs(path_a.c_str(), path_b.c_str(), &max_deviation) != FEASDR_OK)
        return report_error();
    const bool ok = max_deviation <= tol;
    std::printf("max_deviation: %.17g (tolerance %.17g) -> %s\n", max_deviation, tol,
                ok ? "match" : "mismatch");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex-feasibility solver built on averaged double reflections"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "Run one algorithm on a problem and report the trace");
    solve->add_option("--algorithm", solve_args.algorithm,
                      "One of sa-dr, bi-dr, rset-dr, cyclic-dr, sdr, pocs")
        ->check(CLI::IsMember(
            {"sa-dr", "bi-dr", "rset-dr", "cyclic-dr", "sdr", "pocs"}))
        ->capture_default_str();
    CLI::Option* problem_opt =
        solve->add_option("--problem", solve_args.problem_path, "Problem JSON file");
    CLI::Option* generate_opt = solve->add_option(
        "--generate", solve_args.generate_spec,
        "Instance spec, e.g. polytope:5x10:slack=0.3, ball_box_mix:4x2,3:slack=0.2, "
        "lines_through_point:2x3, explicit:FILE");
    problem_opt->excludes(generate_opt);
    CLI::Option* strings_opt = solve->add_option(
        "--strings", solve_args.strings_plan,
        "1-based index strings for sa-dr, e.g. 1,2,3;4,5 (default: one string over all sets)");
    CLI::Option* blocks_opt = solve->add_option(
        "--blocks", solve_args.blocks_plan,
        "1-based index blocks for bi-dr, e.g. 1,2,3;4,5 (default: one block over all sets)");
    strings_opt->excludes(blocks_opt);
    solve->add_option("--weights", solve_args.weights,
                      "Convex weights; per-group lists separated by ';' where the "
                      "algorithm takes several groups");
    solve->add_option("--x0", solve_args.x0_text,
                      "Starting point as comma-separated numbers (default: origin)");
    solve->add_option("--tol", solve_args.tol, "Residual tolerance (> 0)")
        ->capture_default_str();
    solve->add_option("--step-tol", solve_args.step_tol, "Step-norm tolerance (>= 0)")
        ->capture_default_str();
    solve->add_option("--max-iters", solve_args.max_iters, "Iteration budget")
        ->capture_default_str();
    solve->add_option("--seed", solve_args.seed, "Seed for --generate")
        ->capture_default_str();
    solve->add_option("--out", solve_args.out_path,
                      "Write the iteration trace CSV (plus .meta.json sidecar) here");

    std::string verify_suite = "all";
    std::uint64_t verify_seed = 1;
    CLI::App* verify =
        app.add_subcommand("verify", "Run the self-check property suites");
    verify->add_option("--suite", verify_suite,
                       "One of geometry, operators, algorithms, all")
        ->check(CLI::IsMember({"geometry", "operators", "algorithms", "all"}))
        ->capture_default_str();
    verify->add_option("--seed", verify_seed, "Seed for randomized checks")
        ->capture_default_str();

    std::string compare_a, compare_b;
    double compare_tol = 0.0;
    CLI::App* compare =
        app.add_subcommand("compare", "Compare two run-trace CSV files column-wise");
    compare->add_option("file_a", compare_a, "First run CSV")->required();
    compare->add_option("file_b", compare_b, "Second run CSV")->required();
    compare->add_option("--tol", compare_tol, "Largest allowed per-cell deviation")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (solve->parsed()) return run_solve(solve_args);
    if (verify->parsed()) return run_verify(verify_suite, verify_seed);
    if (compare->parsed()) return run_compare(compare_a, compare_b, compare_tol);
    return 1;
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "feasdr/algorithms.hpp"
#include "feasdr/error.hpp"
#include "feasdr/generate.hpp"
#include "feasdr/io.hpp"

using feasdr::ConvexSet;
using feasdr::Error;
using feasdr::FeasibilityProblem;
using feasdr::InstanceSpec;
using feasdr::Matrix;
using feasdr::RunMeta;
using feasdr::RunRecord;
using feasdr::StopConfig;
using feasdr::Vector;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

FeasibilityProblem interval_problem() {
    std::vector<ConvexSet> sets;
    sets.push_back(ConvexSet::halfspace(vec({1.0}), 1.0));
    sets.push_back(ConvexSet::halfspace(vec({-1.0}), 1.0));
    return FeasibilityProblem(std::move(sets), vec({0.0}), 1.0);
}

std::string temp_path(const std::string& name) {
    return std::string("harness_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("problem files round-trip every set variant losslessly") {
    std::vector<ConvexSet> sets;
    sets.push_back(ConvexSet::halfspace(vec({0.1, -2.0 / 3.0, 1.0}), 0.7));
    sets.push_back(ConvexSet::hyperplane(vec({1.0, 1e-17, -3.5}), -0.25));
    sets.push_back(ConvexSet::ball(vec({M_PI, 0.0, -1.0}), std::sqrt(2.0)));
    sets.push_back(ConvexSet::box(vec({-1, -2, -3}), vec({0.5, 2, 3})));
    Matrix A(2, 3);
    A << 0.25, 1.0 / 3.0, -1, 1, 0, 1e-9;
    sets.push_back(ConvexSet::affine_subspace(A, vec({0.125, -7})));
    const FeasibilityProblem problem(std::move(sets));

    const std::string path = temp_path("roundtrip.json");
    feasdr::save_problem(problem, path);
    const FeasibilityProblem loaded = feasdr::load_problem(path);

    REQUIRE(loaded.set_count() == problem.set_count());
    CHECK(loaded.dim() == 3);
    CHECK_FALSE(loaded.interior_point().has_value());
    // Textual fixed point: re-serialization is byte-identical, which with
    // shortest round-trip decimals means every coefficient survived exactly.
    CHECK(feasdr::problem_to_text(loaded) == feasdr::problem_to_text(problem));
    CHECK(loaded.set(0).normal() == problem.set(0).normal());
    CHECK(loaded.set(2).radius() == problem.set(2).radius());
    CHECK(loaded.set(4).coeffs() == problem.set(4).coeffs());
    std::remove(path.c_str());
}

TEST_CASE("certified problems keep their interior point through files") {
    const FeasibilityProblem problem = interval_problem();
    const std::string path = temp_path("certified.json");
    feasdr::save_problem(problem, path);
    const FeasibilityProblem loaded = feasdr::load_problem(path);
    REQUIRE(loaded.interior_point().has_value());
    CHECK((*loaded.interior_point())[0] == 0.0);
    CHECK(loaded.slack() == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("problem parsing reports precise failures") {
    CHECK_THROWS_WITH_AS(
        feasdr::parse_problem_text(R"({"sets": []})", "t"),
        doctest::Contains("dim"), Error);
    CHECK_THROWS_WITH_AS(
        feasdr::parse_problem_text(
            R"({"dim": 1, "sets": [{"type": "cone", "normal": [1]}]})", "t"),
        doctest::Contains("cone"), Error);
    CHECK_THROWS_AS(feasdr::parse_problem_text("{not json", "t"), Error);
    CHECK_THROWS_AS(feasdr::load_problem("no/such/file.json"), Error);
    // Dimension cross-checks apply to each set entry.
    CHECK_THROWS_AS(feasdr::parse_problem_text(
                        R"({"dim": 2, "sets": [{"type": "halfspace",
                            "normal": [1], "offset": 1}]})",
                        "t"),
                    Error);
}

TEST_CASE("run traces round-trip through CSV") {
    const FeasibilityProblem problem = interval_problem();
    const RunRecord rec =
        cyclic_dr(problem, vec({5.0}), StopConfig{});
    RunMeta meta;
    meta.algorithm = "cyclic-dr";
    meta.plan = "";
    meta.seed = 42;
    const std::string path = temp_path("trace.csv");
    feasdr::save_run(rec, meta, path);

    const feasdr::RunTable table = feasdr::load_run_csv(path);
    REQUIRE(table.iters.size() == rec.residuals.size());
    CHECK(table.iters.front() == 0);
    CHECK(table.step_norms.front() == 0.0); // placeholder on the k = 0 row
    CHECK(table.step_norms[1] == rec.step_norms[0]);
    CHECK(table.residuals.back() == rec.final_residual());
    CHECK(table.fejer_distances[0] == 5.0);
    CHECK(feasdr::compare_run_tables(table, table) == 0.0);

    const std::string sidecar = slurp(path + ".meta.json");
    CHECK(sidecar.find("\"cyclic-dr\"") != std::string::npos);
    CHECK(sidecar.find("\"stop_reason\"") != std::string::npos);
    CHECK(sidecar.find("\"iterations\"") != std::string::npos);
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
}

TEST_CASE("uncertified runs serialize reference distances as nan") {
    std::vector<ConvexSet> sets;
    sets.push_back(ConvexSet::hyperplane(vec({1, 0}), 0.0));
    sets.push_back(ConvexSet::hyperplane(vec({0, 1}), 0.0));
    const FeasibilityProblem problem(std::move(sets)); // no certificate
    const RunRecord rec = cyclic_dr(problem, vec({3, 4}), StopConfig{});
    const std::string path = temp_path("nan_trace.csv");
    feasdr::save_run(rec, RunMeta{}, path);

    const feasdr::RunTable table = feasdr::load_run_csv(path);
    CHECK(std::isnan(table.fejer_distances.front()));
    // Two missing columns compare equal; missing vs present is infinite.
    CHECK(feasdr::compare_run_tables(table, table) == 0.0);

    const FeasibilityProblem certified = interval_problem();
    const RunRecord with_ref = cyclic_dr(certified, vec({5.0}), StopConfig{});
    const std::string other = temp_path("ref_trace.csv");
    feasdr::save_run(with_ref, RunMeta{}, other);
    const feasdr::RunTable table_ref = feasdr::load_run_csv(other);
    REQUIRE(table_ref.iters.size() == table.iters.size());
    CHECK(std::isinf(feasdr::compare_run_tables(table, table_ref)));

    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
    std::remove(other.c_str());
    std::remove((other + ".meta.json").c_str());
}

TEST_CASE("trace files are validated while loading") {
    const std::string path = temp_path("bad.csv");
    {
        std::ofstream out(path);
        out << "iter,step,residual,fejer_distance\n0,0,1,nan\n";
    }
    CHECK_THROWS_WITH_AS(feasdr::load_run_csv(path), doctest::Contains("header"),
                         Error);
    {
        std::ofstream out(path);
        out << "iter,step_norm,residual,fejer_distance\n0,0,1\n";
    }
    CHECK_THROWS_WITH_AS(feasdr::load_run_csv(path), doctest::Contains(":2:"),
                         Error);
    {
        std::ofstream out(path);
        out << "iter,step_norm,residual,fejer_distance\n0,zero,1,nan\n";
    }
    CHECK_THROWS_AS(feasdr::load_run_csv(path), Error);
    std::remove(path.c_str());
}

TEST_CASE("comparison rejects traces of different shape") {
    feasdr::RunTable a;
    a.iters = {0, 1};
    a.step_norms = {0, 1};
    a.residuals = {2, 0};
    a.fejer_distances = {1, 1};
    feasdr::RunTable b = a;
    b.iters = {0, 2};
    CHECK_THROWS_AS(feasdr::compare_run_tables(a, b), Error);
    feasdr::RunTable c = a;
    c.residuals = {2, 0.5};
    CHECK(feasdr::compare_run_tables(a, c) == 0.5);
}

TEST_CASE("plan text parses 1-based groups into 0-based indices") {
    const auto groups = feasdr::parse_plan("1,2,3;4,5");
    REQUIRE(groups.size() == 2);
    CHECK(groups[0] == std::vector<int>{0, 1, 2});
    CHECK(groups[1] == std::vector<int>{3, 4});

    CHECK_THROWS_AS(feasdr::parse_plan(""), Error);
    CHECK_THROWS_AS(feasdr::parse_plan("1,,2"), Error);
    CHECK_THROWS_AS(feasdr::parse_plan("0,1"), Error); // indices start at 1
    CHECK_THROWS_AS(feasdr::parse_plan("1,2;"), Error);
    CHECK_THROWS_AS(feasdr::parse_plan("1,a"), Error);

    const auto weights = feasdr::parse_weight_groups("0.5,0.5;1");
    REQUIRE(weights.size() == 2);
    CHECK(weights[0] == std::vector<double>{0.5, 0.5});
    CHECK(weights[1] == std::vector<double>{1.0});
    CHECK_THROWS_AS(feasdr::parse_weight_groups("0.5,oops"), Error);
}

TEST_CASE("instance specs parse their family parameters") {
    const InstanceSpec poly = feasdr::parse_instance_spec("polytope:5x10:slack=0.3");
    CHECK(poly.family == InstanceSpec::Family::polytope);
    CHECK(poly.dim == 5);
    CHECK(poly.halfspaces == 10);
    CHECK(poly.slack == 0.3);

    const InstanceSpec mix =
        feasdr::parse_instance_spec("ball_box_mix:4x2,3:slack=0.2");
    CHECK(mix.family == InstanceSpec::Family::ball_box_mix);
    CHECK(mix.dim == 4);
    CHECK(mix.balls == 2);
    CHECK(mix.boxes == 3);

    const InstanceSpec lines = feasdr::parse_instance_spec("lines_through_point:2x3");
    CHECK(lines.family == InstanceSpec::Family::lines_through_point);
    CHECK(lines.dim == 2);
    CHECK(lines.lines == 3);

    const InstanceSpec file = feasdr::parse_instance_spec("explicit:some/file.json");
    CHECK(file.family == InstanceSpec::Family::from_file);
    CHECK(file.path == "some/file.json");

    CHECK_THROWS_AS(feasdr::parse_instance_spec("torus:2x2:slack=1"), Error);
    CHECK_THROWS_AS(feasdr::parse_instance_spec("polytope:ax2:slack=1"), Error);
    CHECK_THROWS_AS(feasdr::parse_instance_spec("polytope:2x2"), Error);
    CHECK_THROWS_AS(feasdr::parse_instance_spec("polytope:2x2:slack=0"), Error);
    CHECK_THROWS_AS(feasdr::parse_instance_spec("lines_through_point:1x2"), Error);
    CHECK_THROWS_AS(feasdr::parse_instance_spec("lines_through_point:2x1"), Error);
}

TEST_CASE("generation is a pure function of the spec") {
    InstanceSpec spec = feasdr::parse_instance_spec("polytope:2x3:slack=0.5");
    spec.seed = 7;
    const FeasibilityProblem a = feasdr::generate(spec);
    const FeasibilityProblem b = feasdr::generate(spec);
    CHECK(feasdr::problem_to_text(a) == feasdr::problem_to_text(b));

    spec.seed = 8;
    const FeasibilityProblem c = feasdr::generate(spec);
    CHECK(feasdr::problem_to_text(a) != feasdr::problem_to_text(c));
}

TEST_CASE("generated polytopes certify their interior point by construction") {
    InstanceSpec spec = feasdr::parse_instance_spec("polytope:3x8:slack=0.4");
    spec.seed = 21;
    const FeasibilityProblem problem = feasdr::generate(spec);
    REQUIRE(problem.interior_point().has_value());
    CHECK(problem.set_count() == 8);
    CHECK(problem.slack() == 0.4);
    const Vector& p = *problem.interior_point();
    CHECK(problem.max_residual(p) == 0.0);
    for (const auto& s : problem.sets())
        CHECK(s.interior_margin(p) >= 0.4 - 1e-12);
}

TEST_CASE("ball-box mixes produce the requested composition") {
    InstanceSpec spec = feasdr::parse_instance_spec("ball_box_mix:3x2,3:slack=0.2");
    spec.seed = 5;
    const FeasibilityProblem problem = feasdr::generate(spec);
    REQUIRE(problem.set_count() == 5);
    int balls = 0;
    int boxes = 0;
    for (const auto& s : problem.sets()) {
        if (s.describe().rfind("ball", 0) == 0) ++balls;
        if (s.describe().rfind("box", 0) == 0) ++boxes;
    }
    CHECK(balls == 2);
    CHECK(boxes == 3);
    const Vector& p = *problem.interior_point();
    for (const auto& s : problem.sets()) CHECK(s.interior_margin(p) >= 0.2 - 1e-12);
}

TEST_CASE("line families cross exactly at the sampled point") {
    InstanceSpec spec = feasdr::parse_instance_spec("lines_through_point:2x3");
    spec.seed = 31;
    const FeasibilityProblem problem = feasdr::generate(spec);
    REQUIRE(problem.set_count() == 3);
    REQUIRE(problem.interior_point().has_value());
    const Vector& p = *problem.interior_point();
    CHECK(problem.slack() == 0.0); // membership-only certificate

    for (const auto& s : problem.sets()) {
        CHECK(s.distance(p) == 0.0); // p satisfies each line equation exactly
        CHECK(s.coeffs().rows() == 1);
    }

    // Independent oracle: any two of the lines meet exactly at p, recovered
    // by solving the stacked 2x2 linear system.
    Matrix A(2, 2);
    A.row(0) = problem.set(0).coeffs();
    A.row(1) = problem.set(1).coeffs();
    Vector b(2);
    b[0] = problem.set(0).rhs()[0];
    b[1] = problem.set(1).rhs()[0];
    const Vector crossing = A.fullPivLu().solve(b);
    CHECK((crossing - p).norm() <= 1e-10 * (1.0 + p.norm()));

    // Direction separation keeps the lines well-conditioned: row normals of
    // distinct lines never get too parallel.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Vector ni = problem.set(i).coeffs().row(0);
            const Vector nj = problem.set(j).coeffs().row(0);
            CHECK(std::abs(ni.dot(nj)) / (ni.norm() * nj.norm()) <= 0.98 + 1e-12);
        }
}

TEST_CASE("spec validation rejects out-of-family parameters") {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::polytope;
    spec.dim = 0;
    spec.halfspaces = 3;
    spec.slack = 0.5;
    CHECK_THROWS_AS(feasdr::generate(spec), Error);
    spec.dim = 2;
    spec.halfspaces = 0;
    CHECK_THROWS_AS(feasdr::generate(spec), Error);
    spec.halfspaces = 3;
    spec.slack = -1.0;
    CHECK_THROWS_AS(feasdr::generate(spec), Error);
}

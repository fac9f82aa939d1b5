#include "feasdr/generate.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include <Eigen/QR>

#include "feasdr/error.hpp"
#include "feasdr/io.hpp"
#include "feasdr/rng.hpp"

namespace feasdr {

namespace {

int parse_count(const std::string& s, const std::string& text, const char* what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        fail(ErrorCode::parse,
             "instance spec '" + text + "': bad " + what + " '" + s + "'");
    return v;
}

double parse_slack(const std::string& s, const std::string& text) {
    const std::string prefix = "slack=";
    if (s.rfind(prefix, 0) != 0)
        fail(ErrorCode::parse,
             "instance spec '" + text + "': expected 'slack=<value>', got '" + s + "'");
    const std::string num = s.substr(prefix.size());
    double v = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), v);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size())
        fail(ErrorCode::parse, "instance spec '" + text + "': bad slack '" + num + "'");
    return v;
}

/// Splits `<dim>x<rest>` and returns {dim, rest}.
std::pair<int, std::string> parse_shape(const std::string& s, const std::string& text) {
    const std::size_t x = s.find('x');
    if (x == std::string::npos)
        fail(ErrorCode::parse,
             "instance spec '" + text + "': expected '<dim>x<count>', got '" + s + "'");
    return {parse_count(s.substr(0, x), text, "dimension"), s.substr(x + 1)};
}

FeasibilityProblem generate_polytope(const InstanceSpec& spec) {
    Rng rng(spec.seed);
    const Vector p = rng.uniform_vector(spec.dim, -1.0, 1.0);
    std::vector<ConvexSet> sets;
    sets.reserve(static_cast<std::size_t>(spec.halfspaces));
    for (int i = 0; i < spec.halfspaces; ++i) {
        const Vector a = rng.unit_vector(spec.dim);
        const double extra = rng.uniform(0.0, 1.0);
        sets.push_back(ConvexSet::halfspace(a, a.dot(p) + spec.slack + extra));
    }
    return FeasibilityProblem(std::move(sets), p, spec.slack);
}

FeasibilityProblem generate_ball_box_mix(const InstanceSpec& spec) {
    Rng rng(spec.seed);
    const Vector p = rng.uniform_vector(spec.dim, -1.0, 1.0);
    std::vector<ConvexSet> sets;
    sets.reserve(static_cast<std::size_t>(spec.balls + spec.boxes));
    for (int i = 0; i < spec.balls; ++i) {
        const Vector c = p + rng.uniform_vector(spec.dim, -1.0, 1.0);
        const double r = (c - p).norm() + spec.slack + rng.uniform(0.1, 1.0);
        sets.push_back(ConvexSet::ball(c, r));
    }
    for (int i = 0; i < spec.boxes; ++i) {
        Vector lo(spec.dim);
        Vector hi(spec.dim);
        for (int d = 0; d < spec.dim; ++d) {
            lo[d] = p[d] - spec.slack - rng.uniform(0.1, 1.0);
            hi[d] = p[d] + spec.slack + rng.uniform(0.1, 1.0);
        }
        sets.push_back(ConvexSet::box(std::move(lo), std::move(hi)));
    }
    return FeasibilityProblem(std::move(sets), p, spec.slack);
}

FeasibilityProblem generate_lines(const InstanceSpec& spec) {
    Rng rng(spec.seed);
    const Vector p = rng.uniform_vector(spec.dim, -1.0, 1.0);
    // Directions kept at a pairwise angle (|cos| <= 0.98) so no two lines are
    // near-parallel and the intersection is numerically well determined.
    std::vector<Vector> dirs;
    dirs.reserve(static_cast<std::size_t>(spec.lines));
    int attempts = 0;
    while (static_cast<int>(dirs.size()) < spec.lines) {
        if (++attempts > 10000)
            fail(ErrorCode::invalid_argument,
                 "lines_through_point: cannot separate " + std::to_string(spec.lines) +
                     " directions in dimension " + std::to_string(spec.dim));
        Vector d = rng.unit_vector(spec.dim);
        bool ok = true;
        for (const Vector& prev : dirs)
            if (std::abs(prev.dot(d)) > 0.98) {
                ok = false;
                break;
            }
        if (ok) dirs.push_back(std::move(d));
    }
    std::vector<ConvexSet> sets;
    sets.reserve(dirs.size());
    for (const Vector& d : dirs) {
        // Orthonormal basis of the direction's complement: the trailing
        // columns of Q from the QR factorization of d. The right-hand side is
        // computed as A*p, so p satisfies the equations exactly.
        Matrix dm(spec.dim, 1);
        dm.col(0) = d;
        const Eigen::HouseholderQR<Matrix> qr(dm);
        const Matrix q = qr.householderQ();
        const Matrix coeffs = q.rightCols(spec.dim - 1).transpose();
        sets.push_back(ConvexSet::affine_subspace(coeffs, coeffs * p));
    }
    return FeasibilityProblem(std::move(sets), p, 0.0);
}

} // namespace

void InstanceSpec::validate() const {
    switch (family) {
    case Family::polytope:
        if (dim < 1 || halfspaces < 1)
            fail(ErrorCode::invalid_argument,
                 "instance spec: polytope needs dim >= 1 and at least one halfspace");
        if (!(slack > 0.0))
            fail(ErrorCode::invalid_argument,
                 "instance spec: interior-certified families need slack > 0");
        break;
    case Family::ball_box_mix:
        if (dim < 1 || balls < 0 || boxes < 0 || balls + boxes < 1)
            fail(ErrorCode::invalid_argument,
                 "instance spec: ball_box_mix needs dim >= 1 and at least one set");
        if (!(slack > 0.0))
            fail(ErrorCode::invalid_argument,
                 "instance spec: interior-certified families need slack > 0");
        break;
    case Family::lines_through_point:
        if (dim < 2)
            fail(ErrorCode::invalid_argument,
                 "instance spec: lines_through_point needs dim >= 2");
        if (lines < 2)
            fail(ErrorCode::invalid_argument,
                 "instance spec: lines_through_point needs at least two lines");
        break;
    case Family::from_file:
        if (path.empty())
            fail(ErrorCode::invalid_argument, "instance spec: missing file path");
        break;
    }
}

InstanceSpec parse_instance_spec(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        fail(ErrorCode::parse,
             "instance spec '" + text + "': expected '<family>:<params>'");
    const std::string family = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);

    InstanceSpec spec;
    if (family == "explicit") {
        spec.family = InstanceSpec::Family::from_file;
        spec.path = rest;
        spec.validate();
        return spec;
    }

    const std::size_t colon2 = rest.find(':');
    const std::string shape = colon2 == std::string::npos ? rest : rest.substr(0, colon2);
    const std::string tail = colon2 == std::string::npos ? "" : rest.substr(colon2 + 1);
    const auto [dim, counts] = parse_shape(shape, text);
    spec.dim = dim;

    if (family == "polytope") {
        spec.family = InstanceSpec::Family::polytope;
        spec.halfspaces = parse_count(counts, text, "halfspace count");
        if (tail.empty())
            fail(ErrorCode::parse, "instance spec '" + text + "': missing slack");
        spec.slack = parse_slack(tail, text);
    } else if (family == "ball_box_mix") {
        spec.family = InstanceSpec::Family::ball_box_mix;
        const std::size_t comma = counts.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::parse,
                 "instance spec '" + text + "': expected '<balls>,<boxes>'");
        spec.balls = parse_count(counts.substr(0, comma), text, "ball count");
        spec.boxes = parse_count(counts.substr(comma + 1), text, "box count");
        if (tail.empty())
            fail(ErrorCode::parse, "instance spec '" + text + "': missing slack");
        spec.slack = parse_slack(tail, text);
    } else if (family == "lines_through_point") {
        spec.family = InstanceSpec::Family::lines_through_point;
        spec.lines = parse_count(counts, text, "line count");
        if (!tail.empty())
            fail(ErrorCode::parse,
                 "instance spec '" + text + "': line family takes no slack");
    } else {
        fail(ErrorCode::parse,
             "instance spec '" + text + "': unknown family '" + family + "'");
    }
    spec.validate();
    return spec;
}

FeasibilityProblem generate(const InstanceSpec& spec) {
    spec.validate();
    switch (spec.family) {
    case InstanceSpec::Family::polytope: return generate_polytope(spec);
    case InstanceSpec::Family::ball_box_mix: return generate_ball_box_mix(spec);
    case InstanceSpec::Family::lines_through_point: return generate_lines(spec);
    case InstanceSpec::Family::from_file: return load_problem(spec.path);
    }
    fail(ErrorCode::invalid_argument, "instance spec: unknown family");
}

} // namespace feasdr

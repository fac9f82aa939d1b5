#include "feasdr/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "feasdr/error.hpp"

namespace feasdr {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) fail(ErrorCode::io, "read failure on '" + path + "'");
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::io, "write failure on '" + path + "'");
}

const json& need(const json& j, const char* field, const std::string& where) {
    const auto it = j.find(field);
    if (it == j.end()) fail(ErrorCode::parse, where + ": missing field '" + field + "'");
    return *it;
}

double get_number(const json& j, const char* field, const std::string& where) {
    const json& v = need(j, field, where);
    if (!v.is_number())
        fail(ErrorCode::parse, where + ": field '" + field + "' must be a number");
    return v.get<double>();
}

int get_int(const json& j, const char* field, const std::string& where) {
    const json& v = need(j, field, where);
    if (!v.is_number_integer())
        fail(ErrorCode::parse, where + ": field '" + field + "' must be an integer");
    return v.get<int>();
}

Vector get_vector(const json& j, const char* field, const std::string& where) {
    const json& v = need(j, field, where);
    if (!v.is_array())
        fail(ErrorCode::parse, where + ": field '" + field + "' must be an array");
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (const auto& e : v) {
        if (!e.is_number())
            fail(ErrorCode::parse,
                 where + ": field '" + field + "' entry " + std::to_string(i) +
                     " must be a number");
        out[i++] = e.get<double>();
    }
    return out;
}

Matrix get_matrix(const json& j, const char* field, const std::string& where) {
    const json& v = need(j, field, where);
    if (!v.is_array() || v.empty())
        fail(ErrorCode::parse,
             where + ": field '" + field + "' must be a nonempty array of rows");
    const std::size_t cols = v.front().is_array() ? v.front().size() : 0;
    Matrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
    Eigen::Index r = 0;
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != cols)
            fail(ErrorCode::parse,
                 where + ": field '" + field + "' row " + std::to_string(r) +
                     " must be an array of " + std::to_string(cols) + " numbers");
        Eigen::Index c = 0;
        for (const auto& e : row) {
            if (!e.is_number())
                fail(ErrorCode::parse,
                     where + ": field '" + field + "' row " + std::to_string(r) +
                         " entry " + std::to_string(c) + " must be a number");
            out(r, c++) = e.get<double>();
        }
        ++r;
    }
    return out;
}

ConvexSet set_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) fail(ErrorCode::parse, where + ": set must be an object");
    const json& tv = need(j, "type", where);
    if (!tv.is_string())
        fail(ErrorCode::parse, where + ": field 'type' must be a string");
    const std::string type = tv.get<std::string>();
    if (type == "halfspace")
        return ConvexSet::halfspace(get_vector(j, "normal", where),
                                    get_number(j, "offset", where));
    if (type == "hyperplane")
        return ConvexSet::hyperplane(get_vector(j, "normal", where),
                                     get_number(j, "offset", where));
    if (type == "ball")
        return ConvexSet::ball(get_vector(j, "center", where),
                               get_number(j, "radius", where));
    if (type == "box")
        return ConvexSet::box(get_vector(j, "lower", where), get_vector(j, "upper", where));
    if (type == "affine_subspace")
        return ConvexSet::affine_subspace(get_matrix(j, "coeffs", where),
                                          get_vector(j, "rhs", where));
    fail(ErrorCode::parse, where + ": unknown set variant '" + type + "'");
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

json set_to_json(const ConvexSet& s) {
    json j;
    switch (s.kind()) {
    case ConvexSet::Kind::halfspace:
        j["type"] = "halfspace";
        j["normal"] = vector_to_json(s.normal());
        j["offset"] = s.offset();
        break;
    case ConvexSet::Kind::hyperplane:
        j["type"] = "hyperplane";
        j["normal"] = vector_to_json(s.normal());
        j["offset"] = s.offset();
        break;
    case ConvexSet::Kind::ball:
        j["type"] = "ball";
        j["center"] = vector_to_json(s.center());
        j["radius"] = s.radius();
        break;
    case ConvexSet::Kind::box:
        j["type"] = "box";
        j["lower"] = vector_to_json(s.lower());
        j["upper"] = vector_to_json(s.upper());
        break;
    case ConvexSet::Kind::affine_subspace:
        j["type"] = "affine_subspace";
        j["coeffs"] = matrix_to_json(s.coeffs());
        j["rhs"] = vector_to_json(s.rhs());
        break;
    }
    return j;
}

} // namespace

FeasibilityProblem parse_problem_text(const std::string& text, const std::string& context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse, context + ": " + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::parse, context + ": top level must be an object");
    const int dim = get_int(j, "dim", context);
    if (dim < 1) fail(ErrorCode::parse, context + ": field 'dim' must be >= 1");
    const json& sets_json = need(j, "sets", context);
    if (!sets_json.is_array() || sets_json.empty())
        fail(ErrorCode::parse, context + ": field 'sets' must be a nonempty array");
    std::vector<ConvexSet> sets;
    sets.reserve(sets_json.size());
    std::size_t idx = 0;
    for (const auto& sj : sets_json) {
        const std::string where = context + ": sets[" + std::to_string(idx) + "]";
        ConvexSet s = set_from_json(sj, where);
        if (s.dim() != dim)
            fail(ErrorCode::parse, where + ": set lives in dimension " +
                                       std::to_string(s.dim()) + ", file declares dim " +
                                       std::to_string(dim));
        sets.push_back(std::move(s));
        ++idx;
    }
    if (j.contains("interior_point")) {
        Vector p = get_vector(j, "interior_point", context);
        const double slack =
            j.contains("slack") ? get_number(j, "slack", context) : 0.0;
        return FeasibilityProblem(std::move(sets), std::move(p), slack);
    }
    if (j.contains("slack"))
        fail(ErrorCode::parse, context + ": field 'slack' requires 'interior_point'");
    return FeasibilityProblem(std::move(sets));
}

FeasibilityProblem load_problem(const std::string& path) {
    return parse_problem_text(read_file(path), path);
}

std::string problem_to_text(const FeasibilityProblem& problem) {
    json j;
    j["dim"] = problem.dim();
    json sets = json::array();
    for (const auto& s : problem.sets()) sets.push_back(set_to_json(s));
    j["sets"] = std::move(sets);
    if (problem.interior_point()) {
        j["interior_point"] = vector_to_json(*problem.interior_point());
        j["slack"] = problem.slack();
    }
    return j.dump(2) + "\n";
}

void save_problem(const FeasibilityProblem& problem, const std::string& path) {
    write_file(path, problem_to_text(problem));
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void save_run(const RunRecord& rec, const RunMeta& meta, const std::string& path) {
    const std::size_t rows = rec.residuals.size();
    if (rows == 0 || rec.step_norms.size() + 1 != rows)
        fail(ErrorCode::invalid_argument, "save_run: run record is inconsistent");
    const bool has_ref = !rec.fejer_distances.empty();
    if (has_ref && rec.fejer_distances.size() != rows)
        fail(ErrorCode::invalid_argument, "save_run: run record is inconsistent");
    std::string csv = "iter,step_norm,residual,fejer_distance\n";
    for (std::size_t k = 0; k < rows; ++k) {
        csv += std::to_string(k);
        csv += ',';
        csv += format_double(k == 0 ? 0.0 : rec.step_norms[k - 1]);
        csv += ',';
        csv += format_double(rec.residuals[k]);
        csv += ',';
        csv += format_double(has_ref ? rec.fejer_distances[k]
                                     : std::numeric_limits<double>::quiet_NaN());
        csv += '\n';
    }
    write_file(path, csv);

    json m;
    m["algorithm"] = meta.algorithm;
    m["plan"] = meta.plan;
    m["seed"] = meta.seed;
    m["stop_reason"] = to_string(rec.stop_reason);
    m["iterations"] = rec.iterations;
    write_file(path + ".meta.json", m.dump(2) + "\n");
}

namespace {

double parse_csv_double(const std::string& cell, const std::string& where) {
    double out = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        fail(ErrorCode::parse, where + ": bad number '" + cell + "'");
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string strip(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

} // namespace

RunTable load_run_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        strip(line) != "iter,step_norm,residual,fejer_distance")
        fail(ErrorCode::parse, path + ": missing run-trace header");
    RunTable t;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto cells = split(s, ',');
        const std::string where = path + ":" + std::to_string(lineno);
        if (cells.size() != 4) fail(ErrorCode::parse, where + ": expected 4 columns");
        t.iters.push_back(static_cast<long>(parse_csv_double(cells[0], where)));
        t.step_norms.push_back(parse_csv_double(cells[1], where));
        t.residuals.push_back(parse_csv_double(cells[2], where));
        t.fejer_distances.push_back(parse_csv_double(cells[3], where));
    }
    if (t.iters.empty()) fail(ErrorCode::parse, path + ": no data rows");
    return t;
}

double compare_run_tables(const RunTable& a, const RunTable& b) {
    if (a.iters.size() != b.iters.size())
        fail(ErrorCode::invalid_argument,
             "run compare: traces hold " + std::to_string(a.iters.size()) + " vs " +
                 std::to_string(b.iters.size()) + " rows");
    double worst = 0.0;
    const auto cell = [&worst](double x, double y) {
        const bool nx = std::isnan(x);
        const bool ny = std::isnan(y);
        if (nx && ny) return;
        if (nx || ny) {
            worst = std::numeric_limits<double>::infinity();
            return;
        }
        worst = std::max(worst, std::abs(x - y));
    };
    for (std::size_t i = 0; i < a.iters.size(); ++i) {
        if (a.iters[i] != b.iters[i])
            fail(ErrorCode::invalid_argument,
                 "run compare: iter column differs at row " + std::to_string(i));
        cell(a.step_norms[i], b.step_norms[i]);
        cell(a.residuals[i], b.residuals[i]);
        cell(a.fejer_distances[i], b.fejer_distances[i]);
    }
    return worst;
}

std::vector<std::vector<int>> parse_plan(const std::string& text) {
    std::vector<std::vector<int>> groups;
    for (const std::string& group : split(text, ';')) {
        std::vector<int> g;
        for (const std::string& cell : split(group, ',')) {
            const std::string s = strip(cell);
            if (s.empty())
                fail(ErrorCode::parse, "plan '" + text + "': empty index entry");
            int v = 0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                fail(ErrorCode::parse, "plan '" + text + "': bad index '" + s + "'");
            if (v < 1)
                fail(ErrorCode::parse,
                     "plan '" + text + "': indices are 1-based, got " + s);
            g.push_back(v - 1);
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<std::vector<double>> parse_weight_groups(const std::string& text) {
    std::vector<std::vector<double>> groups;
    for (const std::string& group : split(text, ';')) {
        std::vector<double> g;
        for (const std::string& cell : split(group, ',')) {
            const std::string s = strip(cell);
            if (s.empty())
                fail(ErrorCode::parse, "weights '" + text + "': empty entry");
            g.push_back(parse_csv_double(s, "weights '" + text + "'"));
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

} // namespace feasdr

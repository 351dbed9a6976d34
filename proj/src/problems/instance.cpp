#include "mstat/problems/instance.hpp"

#include "mstat/core/errors.hpp"
#include "mstat/problems/emop.hpp"

#include <fstream>
#include <sstream>

namespace mstat::problems {

using namespace geometry;
using geometry::to_json;

namespace {

std::size_t dim_at(const json& j, const char* key, const std::string& where) { return dim_from_json(require_key(j, key, where), where + "/" + key); }

template <class Fn>
auto rethrow_as_parse(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const StructuralError& e) {
        throw ParseError(where, e.what());
    }
}

Vec sized_vector(const json& j, std::size_t n, const std::string& where) {
    Vec v = vector_from_json(j, where);
    if (v.size() != n) throw ParseError(where, "expected length " + std::to_string(n));
    return v;
}

Mat sized_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    Mat M = matrix_from_json(j, cols, where);
    if (M.size() != rows) throw ParseError(where, "expected " + std::to_string(rows) + " rows");
    return M;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Problem problem_from_json(const json& j) {
    const std::string where = "problem";
    if (!j.is_object()) throw ParseError(where, "problem file must hold a JSON object");
    const auto& tj = require_key(j, "type", where);
    if (!tj.is_string()) throw ParseError(where + "/type", "expected a string");
    Problem out;
    out.type = tj.get<std::string>();

    if (out.type == "example_a" || out.type == "example_b") {
        reject_unknown_keys(j, {"type"}, where);
        if (out.type == "example_a")
            out.program = build_example_a();
        else
            out.oracle_only = build_example_b();
        return out;
    }
    if (out.type == "set") {
        reject_unknown_keys(j, {"type", "set"}, where);
        out.set = union_from_json(require_key(j, "set", where), where + "/set");
        return out;
    }
    if (out.type == "mapping") {
        reject_unknown_keys(j, {"type", "map"}, where);
        out.mapping = mappings::mapping_from_json(require_key(j, "map", where), where + "/map");
        return out;
    }
    if (out.type == "implicit") {
        out.program = stationarity::program_from_json(j, where);
        return out;
    }
    if (out.type == "ccmp") {
        reject_unknown_keys(j, {"type", "n", "kappa", "objective", "M"}, where);
        CcmpInstance in;
        in.n = dim_at(j, "n", where);
        in.kappa = dim_at(j, "kappa", where);
        in.objective = stationarity::objective_from_json(require_key(j, "objective", where), in.n, where + "/objective");
        if (j.contains("M")) {
            in.base_set = union_from_json(j["M"], where + "/M");
            if (in.base_set->dim() != in.n) throw ParseError(where + "/M", "dimension must equal n");
        }
        auto bundle = rethrow_as_parse(where, [&] { return build_ccmp(in); });
        out.program = bundle.program;
        out.ccmp = in;
        out.ccmp_bundle = std::move(bundle);
        return out;
    }
    if (out.type == "bilevel_lq") {
        reject_unknown_keys(j, {"type", "n1", "n2", "m", "Q", "P", "c", "A", "b", "upper_objective", "S"}, where);
        BilevelLqInstance in;
        in.n1 = dim_at(j, "n1", where);
        in.n2 = dim_at(j, "n2", where);
        in.m = dim_at(j, "m", where);
        in.Q = sized_matrix(require_key(j, "Q", where), in.n2, in.n2, where + "/Q");
        in.P = sized_matrix(require_key(j, "P", where), in.n1, in.n2, where + "/P");
        in.c = sized_vector(require_key(j, "c", where), in.n2, where + "/c");
        in.A = sized_matrix(require_key(j, "A", where), in.m, in.n2, where + "/A");
        in.b = sized_vector(require_key(j, "b", where), in.m, where + "/b");
        in.upper = stationarity::objective_from_json(require_key(j, "upper_objective", where), in.n1 + in.n2, where + "/upper_objective");
        if (j.contains("S")) {
            in.leader_set = union_from_json(j["S"], where + "/S");
            if (in.leader_set->dim() != in.n1) throw ParseError(where + "/S", "dimension must equal n1");
        }
        out.program = rethrow_as_parse(where, [&] { return build_bilevel_lq(in).program; });
        out.bilevel = in;
        return out;
    }
    if (out.type == "emop_linear") {
        reject_unknown_keys(j, {"type", "J", "Gamma"}, where);
        auto G = polyhedron_from_json(require_key(j, "Gamma", where), where + "/Gamma");
        Mat J = matrix_from_json(require_key(j, "J", where), G.dim, where + "/J");
        out.program = rethrow_as_parse(where, [&] { return build_emop_linear(J, G); });
        return out;
    }
    throw ParseError(where + "/type", "unknown problem type '" + out.type + "'");
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
    }
    return problem_from_json(j);
}

json to_json(const CcmpInstance& in) {
    json j{{"type", "ccmp"}, {"n", in.n}, {"kappa", in.kappa}, {"objective", stationarity::to_json(in.objective)}};
    if (in.base_set) j["M"] = to_json(*in.base_set);
    return j;
}

json to_json(const BilevelLqInstance& in) {
    json j{{"type", "bilevel_lq"}, {"n1", in.n1}, {"n2", in.n2}, {"m", in.m}, {"Q", to_json(in.Q)}, {"P", to_json(in.P)}, {"c", to_json(in.c)},
           {"A", to_json(in.A)}, {"b", to_json(in.b)}, {"upper_objective", stationarity::to_json(in.upper)}};
    if (in.leader_set) j["S"] = to_json(*in.leader_set);
    return j;
}

}  // namespace mstat::problems

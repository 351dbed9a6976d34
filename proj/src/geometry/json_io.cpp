#include "mstat/geometry/json_io.hpp"

#include "mstat/core/errors.hpp"

#include <algorithm>

namespace mstat::geometry {

json to_json(const Rational& q) { return q.get_str(); }

json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_json(q));
    return a;
}

json to_json(const Mat& m) {
    json a = json::array();
    for (const auto& r : m) a.push_back(to_json(r));
    return a;
}

json to_json(const ConvexPolyhedron& P) {
    return json{{"dim", P.dim}, {"A", to_json(P.A)}, {"b", to_json(P.b)}, {"E", to_json(P.E)}, {"d", to_json(P.d)}};
}

json to_json(const PolyUnion& U) {
    json pieces = json::array();
    for (const auto& p : U.pieces()) pieces.push_back(to_json(p));
    return json{{"dim", U.dim()}, {"pieces", pieces}};
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
        if (!ok) throw ParseError(where + "/" + it.key(), "unknown field");
    }
}

const json& require_key(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + "/" + key, "missing field");
    return *it;
}

Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
    } catch (const ParseError& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where, "expected a rational string \"p/q\" or an integer");
}

std::size_t dim_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

Vec vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], where + "/" + std::to_string(i)));
    return v;
}

Mat matrix_from_json(const json& j, std::size_t cols, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of rows");
    Mat m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto w = where + "/" + std::to_string(i);
        Vec r = vector_from_json(j[i], w);
        if (r.size() != cols) throw ParseError(w, "row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(cols));
        m.push_back(std::move(r));
    }
    return m;
}

ConvexPolyhedron polyhedron_from_json(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"dim", "A", "b", "E", "d"}, where);
    const json& dj = require_key(j, "dim", where);
    auto dim = dim_from_json(dj, where + "/dim");
    ConvexPolyhedron P(dim);
    if (j.contains("A")) P.A = matrix_from_json(j["A"], dim, where + "/A");
    if (j.contains("b")) P.b = vector_from_json(j["b"], where + "/b");
    if (j.contains("E")) P.E = matrix_from_json(j["E"], dim, where + "/E");
    if (j.contains("d")) P.d = vector_from_json(j["d"], where + "/d");
    if (P.A.size() != P.b.size()) throw ParseError(where + "/b", "length differs from the number of rows of A");
    if (P.E.size() != P.d.size()) throw ParseError(where + "/d", "length differs from the number of rows of E");
    return P;
}

PolyUnion union_from_json(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"dim", "pieces"}, where);
    const json& dj = require_key(j, "dim", where);
    auto dim = dim_from_json(dj, where + "/dim");
    const json& pj = require_key(j, "pieces", where);
    if (!pj.is_array()) throw ParseError(where + "/pieces", "expected an array");
    std::vector<ConvexPolyhedron> pieces;
    for (std::size_t i = 0; i < pj.size(); ++i) {
        auto w = where + "/pieces/" + std::to_string(i);
        auto P = polyhedron_from_json(pj[i], w);
        if (P.dim != dim) throw ParseError(w + "/dim", "piece dimension differs from union dimension");
        pieces.push_back(std::move(P));
    }
    if (pieces.empty()) return PolyUnion::empty_set(dim);
    return PolyUnion::from_pieces(dim, std::move(pieces));
}

}  // namespace mstat::geometry

#pragma once

#include "mstat/geometry/polyhedron.hpp"

#include <json.hpp>

#include <string>

namespace mstat::geometry {

using json = nlohmann::json;

json to_json(const Rational& q);
json to_json(const Vec& v);
json to_json(const Mat& m);
json to_json(const ConvexPolyhedron& P);
json to_json(const PolyUnion& U);

// Readers report the offending field through ParseError::where (a JSON pointer).
Rational rational_from_json(const json& j, const std::string& where);
std::size_t dim_from_json(const json& j, const std::string& where);
Vec vector_from_json(const json& j, const std::string& where);
Mat matrix_from_json(const json& j, std::size_t cols, const std::string& where);
ConvexPolyhedron polyhedron_from_json(const json& j, const std::string& where);
PolyUnion union_from_json(const json& j, const std::string& where);

/// Throws ParseError naming the first key of `j` not in `allowed`.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);
const json& require_key(const json& j, const char* key, const std::string& where);

}  // namespace mstat::geometry

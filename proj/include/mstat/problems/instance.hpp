#pragma once

#include "mstat/problems/bilevel.hpp"
#include "mstat/problems/ccmp.hpp"
#include "mstat/problems/examples.hpp"

namespace mstat::problems {

/// A loaded problem file. Programs set `program` (or `oracle_only` for example_b);
/// the "set" and "mapping" types carry a bare polyhedral object for cone and coderivative queries.
struct Problem {
    std::string type;  // ccmp | bilevel_lq | emop_linear | example_a | example_b | implicit | set | mapping
    std::optional<ImplicitProgram> program;
    std::optional<OracleOnlyProgram> oracle_only;
    std::optional<CcmpInstance> ccmp;
    std::optional<CcmpBundle> ccmp_bundle;
    std::optional<BilevelLqInstance> bilevel;
    std::optional<PolyUnion> set;
    std::optional<mappings::PolyMapping> mapping;
};

/// Field-level ParseError on malformed input.
Problem problem_from_json(const geometry::json& j);

/// Reads a JSON file; syntax errors are reported with line and column.
Problem load_problem(const std::string& path);

geometry::json to_json(const CcmpInstance& instance);
geometry::json to_json(const BilevelLqInstance& instance);

}  // namespace mstat::problems

#pragma once

#include "mstat/stationarity/verdict.hpp"

#include <map>

namespace mstat::stationarity {

/// Node status values: "holds", "fails", "uncertified", "vacuous".
struct PipelineNode {
    std::string id;
    std::string status;
    std::string anchor;
    geometry::json detail;
};

struct PipelineEdge {
    std::vector<std::string> from;
    std::string to;
    std::string anchor;
    /// "applies", "vacuous", "hypothesis uncertified", "premise fails"
    std::string status;
};

struct PipelineReport {
    Vec point;
    bool khat_locally_bounded = false;
    Verdict implicit;
    StrataVerdict fuzzy;
    StrataVerdict explicit_;
    std::map<std::string, Verdict> cq;             // z-level conditions
    std::map<std::string, StrataVerdict> cq_strata;  // λ-dependent conditions, one entry per stratum
    std::map<char, std::string> branches;          // 'a'..'d' -> status
    std::vector<PipelineNode> nodes;
    std::vector<PipelineEdge> edges;
    std::vector<std::string> conclusions;
    std::vector<std::string> inconsistencies;
    bool consistent() const { return inconsistencies.empty(); }
};

/// Local-boundedness certificates, all stationarity systems and qualification
/// conditions at z, followed by the implication graph between them.
PipelineReport run_pipeline(const ImplicitProgram& program, const DerivedMaps& maps, const Vec& z);

geometry::json to_json(const PipelineReport& report);

}  // namespace mstat::stationarity

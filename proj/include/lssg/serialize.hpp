#pragma once

// JSON/CSV views of reports, decisions and fixtures. Field names are stable;
// every document carries schema_version.

#include <string>

#include <json.hpp>

#include "lssg/harness.hpp"

namespace lssg {

inline constexpr int kSchemaVersion = 1;

inline nlohmann::json params_to_json(const Params& par) {
    nlohmann::json j{
        {"n", par.n},
        {"delta_max", par.delta_max},
        {"eps", par.eps},
        {"c_k", par.consts.c_k},
        {"c_s", par.consts.c_s},
        {"c_delta", par.consts.c_delta},
        {"ell", par.ell},
        {"ell_interval", {par.ell_lo, par.ell_hi}},
        {"k", par.k},
        {"q", par.q},
        {"p", par.p},
        {"delta", par.delta},
        {"h", par.h},
        {"beta", par.beta},
        {"promise_degenerate", par.promise_degenerate},
    };
    nlohmann::json ov = nlohmann::json::object();
    if (par.overrides.ell) ov["ell"] = *par.overrides.ell;
    if (par.overrides.k) ov["k"] = *par.overrides.k;
    if (par.overrides.q) ov["q"] = *par.overrides.q;
    if (par.overrides.p) ov["p"] = *par.overrides.p;
    j["overrides"] = ov;
    return j;
}

inline nlohmann::json decision_to_json(const OracleDecision& dec) {
    nlohmann::json j{
        {"schema_version", kSchemaVersion},
        {"edge", {dec.e.lo, dec.e.hi}},
        {"answer", dec.answer},
        {"branch", branch_name(dec.branch)},
        {"queries_used", dec.queries_used},
    };
    auto side = [](const CenterInfo& ci) {
        nlohmann::json s{{"remote", ci.remote}};
        if (!ci.remote) {
            s["center"] = ci.center;
            s["dist"] = ci.dist;
        }
        return s;
    };
    nlohmann::json trace{{"u", side(dec.trace.u_info)}, {"v", side(dec.trace.v_info)}};
    auto cluster = [](const ClusterSummary& cs) {
        const char* kind = cs.kind == ClusterKind::whole_cell ? "whole-cell"
                           : cs.kind == ClusterKind::singleton ? "singleton"
                                                               : "subtree";
        return nlohmann::json{{"center", cs.center},
                              {"root", cs.root},
                              {"size", cs.size},
                              {"marked", cs.marked},
                              {"kind", kind},
                              {"marked_adjacent_cells", cs.marked_adjacent_cells}};
    };
    if (dec.trace.u_cluster) trace["u_cluster"] = cluster(*dec.trace.u_cluster);
    if (dec.trace.v_cluster) trace["v_cluster"] = cluster(*dec.trace.v_cluster);
    nlohmann::json evals = nlohmann::json::array();
    for (const RuleEval& ev : dec.trace.rule_evals) {
        nlohmann::json e{{"rule", std::string(1, ev.rule)},
                         {"swapped", ev.swapped},
                         {"passed", ev.passed}};
        if (!ev.note.empty()) e["note"] = ev.note;
        evals.push_back(e);
    }
    trace["rule_evals"] = evals;
    j["trace"] = trace;
    return j;
}

inline nlohmann::json report_to_json(const SpannerReport& rep) {
    nlohmann::json stretch{{"max", rep.stretch.max},
                           {"p95", rep.stretch.p95},
                           {"all_finite", rep.stretch.all_finite}};
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [d, c] : rep.stretch.histogram) hist[std::to_string(d)] = c;
    stretch["histogram"] = hist;
    nlohmann::json j{
        {"schema_version", kSchemaVersion},
        {"seed", rep.seed_hex},
        {"params", params_to_json(rep.params)},
        {"n", rep.n},
        {"m", rep.m},
        {"edge_count", rep.edge_count},
        {"edges_per_vertex", rep.edges_per_vertex},
        {"connected", rep.connected},
        {"cluster_count", rep.cluster_count},
        {"center_count", rep.center_count},
        {"remote_count", rep.remote_count},
        {"boundary_count", rep.boundary_count},
        {"stretch", stretch},
        {"cell_stretch", rep.cell_stretch == kNoVertex ? nlohmann::json(nullptr)
                                                       : nlohmann::json(rep.cell_stretch)},
        {"en_radius_violation", rep.en_radius_violation},
        {"query_stats",
         {{"calls", rep.queries.calls},
          {"min", rep.queries.min},
          {"median", rep.queries.median},
          {"max", rep.queries.max},
          {"total", rep.queries.total}}},
        {"lemma_checks", rep.lemma_checks},
        {"branch_counts", rep.branch_counts},
        {"all_checks_pass", rep.all_checks_pass},
    };
    return j;
}

inline std::string stretch_histogram_csv(const StretchStats& st) {
    std::string out = "stretch,count\n";
    for (const auto& [d, c] : st.histogram)
        out += std::to_string(d) + "," + std::to_string(c) + "\n";
    return out;
}

inline nlohmann::json scaling_to_json(const ScalingReport& rep) {
    nlohmann::json points = nlohmann::json::array();
    for (const ScalingPoint& p : rep.points)
        points.push_back({{"n", p.n},
                          {"median_queries", p.median_queries},
                          {"max_queries", p.max_queries},
                          {"calls", p.calls}});
    return nlohmann::json{
        {"schema_version", kSchemaVersion}, {"points", points}, {"slope", rep.slope}};
}

inline std::string scaling_to_csv(const ScalingReport& rep) {
    std::string out = "n,median_queries,max_queries,calls\n";
    for (const ScalingPoint& p : rep.points)
        out += std::to_string(p.n) + "," + std::to_string(p.median_queries) + "," +
               std::to_string(p.max_queries) + "," + std::to_string(p.calls) + "\n";
    return out;
}

// Fixture document: {"centers": [..], "marks": [..], "ranks": {"id": rank},
// "radii": {"id": r}, "ell": h}. Unknown keys are rejected.
inline Fixture fixture_from_json(const nlohmann::json& j) {
    Fixture fx;
    for (const auto& [key, value] : j.items()) {
        if (key == "centers") {
            fx.centers.emplace(value.begin(), value.end());
        } else if (key == "marks") {
            fx.marks.emplace(value.begin(), value.end());
        } else if (key == "ranks") {
            fx.ranks.emplace();
            for (const auto& [id, r] : value.items())
                (*fx.ranks)[Vertex(std::stoul(id))] = r.get<std::uint64_t>();
        } else if (key == "radii") {
            fx.radii.emplace();
            for (const auto& [id, r] : value.items())
                (*fx.radii)[Vertex(std::stoul(id))] = r.get<double>();
        } else if (key == "ell") {
            fx.ell = value.get<std::uint32_t>();
        } else {
            throw std::invalid_argument("unknown fixture key '" + key + "'");
        }
    }
    return fx;
}

inline Fixture fixture_from_string(const std::string& text) {
    return fixture_from_json(nlohmann::json::parse(text));
}

}  // namespace lssg

#pragma once

// The per-edge oracle: stateless dispatch over the remote spanner, the
// boundary rule, cell BFS trees and the three connection rules, with a
// decision trace and exact query accounting per call.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lssg/connectors.hpp"
#include "lssg/remote.hpp"

namespace lssg {

enum class Branch { en, boundary, bfs_tree, rule_a, rule_b, rule_c, none };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::en: return "en";
        case Branch::boundary: return "boundary";
        case Branch::bfs_tree: return "bfs-tree";
        case Branch::rule_a: return "rule-a";
        case Branch::rule_b: return "rule-b";
        case Branch::rule_c: return "rule-c";
        case Branch::none: return "none";
    }
    return "?";
}

struct RuleEval {
    char rule = '?';      // 'a', 'b' or 'c'
    bool swapped = false; // true when evaluated with (A,B) = (cluster(v), cluster(u))
    bool passed = false;
    std::string note;
};

struct ClusterSummary {
    Vertex center = kNoVertex;
    Vertex root = kNoVertex;
    std::uint64_t size = 0;
    bool marked = false;
    ClusterKind kind = ClusterKind::whole_cell;
    std::vector<Vertex> marked_adjacent_cells;
};

struct DecisionTrace {
    CenterInfo u_info;
    CenterInfo v_info;
    std::optional<ClusterSummary> u_cluster;
    std::optional<ClusterSummary> v_cluster;
    std::vector<RuleEval> rule_evals;
    std::string detail;
};

struct OracleDecision {
    Edge e;
    bool answer = false;
    Branch branch = Branch::none;
    std::uint64_t queries_used = 0;
    DecisionTrace trace;
};

namespace detail {

inline ClusterSummary summarize(const Cluster& c, const AdjacencyView& view) {
    ClusterSummary s;
    s.center = c.center;
    s.root = c.root;
    s.size = c.members.size();
    s.marked = c.marked;
    s.kind = c.kind;
    s.marked_adjacent_cells = view.marked_cells;
    return s;
}

}  // namespace detail

inline OracleDecision lssg_answer(const Graph& g, const RandomSource& src, const Params& par,
                                  Vertex u, Vertex v, QueryCounter& ctr, bool want_notes = false) {
    if (u >= g.n() || v >= g.n()) throw std::invalid_argument("vertex out of range");
    if (u == v) throw std::invalid_argument("not an edge: equal endpoints");
    const std::uint64_t start = ctr.count;
    LocalContext cx(g, src, par, ctr);

    OracleDecision dec;
    dec.e = make_edge(u, v);
    const auto& nu = cx.neighbors(u);
    if (!std::binary_search(nu.begin(), nu.end(), v))
        throw std::invalid_argument("not an edge of the graph");

    CenterInfo ui = cx.find_center(u);
    CenterInfo vi = cx.find_center(v);
    dec.trace.u_info = ui;
    dec.trace.v_info = vi;

    if (ui.remote && vi.remote) {
        dec.branch = Branch::en;
        dec.answer = en_answer(cx, u, v);
    } else if (ui.remote != vi.remote) {
        dec.branch = Branch::boundary;
        dec.answer = true;
    } else if (ui.center == vi.center) {
        dec.branch = Branch::bfs_tree;
        auto pu = cx.bfs_parent(u);
        auto pv = cx.bfs_parent(v);
        dec.answer = (pu && *pu == v) || (pv && *pv == u);
    } else {
        const Cluster& Q = cx.cluster_of(u);
        const Cluster& W = cx.cluster_of(v);
        AdjacencyView view_Q = adjacency_view(cx, Q);
        AdjacencyView view_W = adjacency_view(cx, W);
        dec.trace.u_cluster = detail::summarize(Q, view_Q);
        dec.trace.v_cluster = detail::summarize(W, view_W);

        struct Assignment {
            const Cluster* A;
            const Cluster* B;
            const AdjacencyView* view_A;
            const AdjacencyView* view_B;
            bool swapped;
        };
        const Assignment asg[2] = {{&Q, &W, &view_Q, &view_W, false},
                                   {&W, &Q, &view_W, &view_Q, true}};
        auto record = [&](char rule, bool swapped, bool passed, std::string note = {}) {
            dec.trace.rule_evals.push_back(RuleEval{rule, swapped, passed, std::move(note)});
            return passed;
        };
        dec.branch = Branch::none;
        for (const Assignment& a : asg) {
            if (record('a', a.swapped, rule_marked(*a.A, *a.B, dec.e, *a.view_B))) {
                dec.branch = Branch::rule_a;
                break;
            }
        }
        if (dec.branch == Branch::none) {
            for (const Assignment& a : asg) {
                if (record('b', a.swapped, rule_no_marked_neighbor(*a.A, *a.B, dec.e, *a.view_A))) {
                    dec.branch = Branch::rule_b;
                    break;
                }
            }
        }
        if (dec.branch == Branch::none) {
            for (const Assignment& a : asg) {
                std::vector<std::string> notes;
                bool ok = rule_indirect(cx, *a.A, *a.B, dec.e, *a.view_A, *a.view_B,
                                        want_notes ? &notes : nullptr);
                std::string joined;
                for (const auto& n : notes) joined += (joined.empty() ? "" : "; ") + n;
                if (record('c', a.swapped, ok, std::move(joined))) {
                    dec.branch = Branch::rule_c;
                    break;
                }
            }
        }
        dec.answer = dec.branch != Branch::none;
    }
    dec.queries_used = ctr.count - start;
    return dec;
}

inline std::string explain(const Graph& g, const RandomSource& src, const Params& par, Vertex u,
                           Vertex v) {
    QueryCounter ctr;
    OracleDecision dec = lssg_answer(g, src, par, u, v, ctr, true);
    std::ostringstream os;
    os << "edge {" << dec.e.lo << "," << dec.e.hi << "}: "
       << (dec.answer ? "selected" : "rejected") << " via branch " << branch_name(dec.branch)
       << " using " << dec.queries_used << " queries\n";
    auto show_side = [&](Vertex x, const CenterInfo& ci) {
        os << "  vertex " << x << ": ";
        if (ci.remote)
            os << "remote (no center within " << par.ell << " hops)\n";
        else
            os << "center " << ci.center << " at distance " << ci.dist << "\n";
    };
    show_side(dec.e.lo, dec.e.lo == u ? dec.trace.u_info : dec.trace.v_info);
    show_side(dec.e.hi, dec.e.hi == u ? dec.trace.u_info : dec.trace.v_info);
    auto show_cluster = [&](const char* tag, const std::optional<ClusterSummary>& cs) {
        if (!cs) return;
        os << "  cluster(" << tag << "): root " << cs->root << ", center " << cs->center
           << ", size " << cs->size << (cs->marked ? ", marked" : ", unmarked");
        switch (cs->kind) {
            case ClusterKind::whole_cell: os << ", whole cell"; break;
            case ClusterKind::singleton: os << ", singleton"; break;
            case ClusterKind::subtree: os << ", subtree"; break;
        }
        os << "; marked adjacent cells:";
        if (cs->marked_adjacent_cells.empty()) os << " none";
        for (Vertex c : cs->marked_adjacent_cells) os << ' ' << c;
        os << "\n";
    };
    show_cluster("u", dec.trace.u_cluster);
    show_cluster("v", dec.trace.v_cluster);
    for (const RuleEval& ev : dec.trace.rule_evals) {
        os << "  rule " << ev.rule << (ev.swapped ? " (roles swapped)" : "") << ": "
           << (ev.passed ? "accepts" : "rejects");
        if (!ev.note.empty()) os << "  [" << ev.note << "]";
        os << "\n";
    }
    return os.str();
}

}  // namespace lssg

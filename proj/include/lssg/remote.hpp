#pragma once

// Spanner on the remote set: the exponential-shift construction applied to
// the subgraph induced by R, plus the boundary rule for edges leaving R.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lssg/partition.hpp"

namespace lssg {

struct EnEntry {
    Vertex u = kNoVertex;
    std::uint32_t dist = 0;   // distance within the subgraph induced by R
    double r = 0;             // exponential shift of u
    double m = 0;             // r - dist
    Vertex via = kNoVertex;   // min-id neighbor of v on a shortest path to u
};

struct EnLocalView {
    Vertex v = kNoVertex;
    std::vector<EnEntry> entries;  // sorted by (dist, u); entries[0] is v itself
};

// Radius-h BFS from v inside R. First-hop labels propagate level by level:
// the label of a newly discovered vertex is the minimum over its predecessors,
// which yields the minimum-id neighbor of v on any shortest path.
inline EnLocalView en_view(LocalContext& cx, Vertex v) {
    const Params& par = cx.params();
    if (!cx.find_center(v).remote) throw std::invalid_argument("en_view: vertex is not remote");
    EnLocalView view;
    view.v = v;

    std::unordered_map<Vertex, std::uint32_t> dist;
    std::unordered_map<Vertex, Vertex> via;
    dist.emplace(v, 0);
    std::vector<Vertex> level{v};
    std::vector<std::pair<std::uint32_t, Vertex>> order{{0, v}};
    for (std::uint32_t d = 0; d < par.h && !level.empty(); ++d) {
        std::vector<Vertex> next;
        for (Vertex x : level) {
            Vertex label = d == 0 ? kNoVertex : via.at(x);
            for (Vertex w : cx.neighbors(x)) {
                if (!cx.find_center(w).remote) continue;
                Vertex hop = d == 0 ? w : label;
                auto [it, fresh] = dist.emplace(w, d + 1);
                if (fresh) {
                    via.emplace(w, hop);
                    next.push_back(w);
                    order.emplace_back(d + 1, w);
                } else if (it->second == d + 1 && hop < via.at(w)) {
                    via[w] = hop;
                }
            }
        }
        level = std::move(next);
    }
    std::sort(order.begin(), order.end());
    view.entries.reserve(order.size());
    for (auto [d, u] : order) {
        EnEntry e;
        e.u = u;
        e.dist = d;
        e.r = exp_radius(cx.source(), par, u);
        e.m = e.r - double(d);
        e.via = u == v ? kNoVertex : via.at(u);
        view.entries.push_back(e);
    }
    return view;
}

// C(v): edges toward every source whose shifted distance is within 1 of the
// maximum over the view (the vertex's own shift participates in the max but
// contributes no edge).
inline std::vector<Edge> en_edges(LocalContext& cx, Vertex v) {
    EnLocalView view = en_view(cx, v);
    double best = view.entries.empty() ? 0.0 : view.entries[0].m;
    for (const EnEntry& e : view.entries) best = std::max(best, e.m);
    std::vector<Edge> out;
    for (const EnEntry& e : view.entries) {
        if (e.u == v) continue;
        if (e.m >= best - 1.0) out.push_back(make_edge(v, e.via));
    }
    std::sort(out.begin(), out.end(), EdgeRankLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool en_answer(LocalContext& cx, Vertex u, Vertex v) {
    Edge e = make_edge(u, v);
    auto cu = en_edges(cx, u);
    if (std::binary_search(cu.begin(), cu.end(), e, EdgeRankLess{})) return true;
    auto cv = en_edges(cx, v);
    return std::binary_search(cv.begin(), cv.end(), e, EdgeRankLess{});
}

// An edge with exactly one remote endpoint is always kept.
inline bool boundary_answer(const CenterInfo& ui, const CenterInfo& vi) {
    return ui.remote != vi.remote;
}

// Operation-contract wrappers.
inline EnLocalView en_view(const Graph& g, const RandomSource& src, const Params& par, Vertex v,
                           QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return en_view(cx, v);
}

inline std::vector<Edge> en_edges(const Graph& g, const RandomSource& src, const Params& par,
                                  Vertex v, QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return en_edges(cx, v);
}

inline bool en_answer(const Graph& g, const RandomSource& src, const Params& par, Vertex u,
                      Vertex v, QueryCounter& ctr) {
    if (u >= g.n() || v >= g.n() || !g.has_edge(u, v))
        throw std::invalid_argument("en_answer: not an edge");
    LocalContext cx(g, src, par, ctr);
    if (!cx.find_center(u).remote || !cx.find_center(v).remote)
        throw std::invalid_argument("en_answer: both endpoints must be remote");
    return en_answer(cx, u, v);
}

}  // namespace lssg

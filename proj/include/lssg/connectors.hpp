#pragma once

// Inter-cluster edge selection: adjacency views, participation in
// clusters-of-clusters, and the three connection rules evaluated per edge.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lssg/partition.hpp"

namespace lssg {

struct BoundaryEdge {
    Edge e;
    Vertex inside = kNoVertex;   // endpoint in the cluster
    Vertex outside = kNoVertex;  // endpoint in another cell
    Vertex cell = kNoVertex;     // center of the outside endpoint's cell
};

// What a cluster sees across its boundary: every non-remote edge leaving its
// cell, the minimum-rank edge into each adjacent cell, and which of those
// cells are marked. Edges into the cluster's own cell and into remote
// vertices never appear here.
struct AdjacencyView {
    Vertex root = kNoVertex;
    Vertex center = kNoVertex;
    std::vector<BoundaryEdge> boundary;        // rank-sorted
    std::map<Vertex, BoundaryEdge> min_into_cell;  // cell center -> min-rank edge
    std::vector<Vertex> marked_cells;          // sorted center ids

    bool adjacent_to(Vertex cell) const { return min_into_cell.count(cell) > 0; }
};

inline AdjacencyView adjacency_view(LocalContext& cx, const Cluster& A) {
    AdjacencyView view;
    view.root = A.root;
    view.center = A.center;
    for (Vertex x : A.members) {
        for (Vertex w : cx.neighbors(x)) {
            if (A.contains(w)) continue;
            CenterInfo wi = cx.find_center(w);
            if (wi.remote || wi.center == A.center) continue;
            view.boundary.push_back(BoundaryEdge{make_edge(x, w), x, w, wi.center});
        }
    }
    std::sort(view.boundary.begin(), view.boundary.end(),
              [](const BoundaryEdge& a, const BoundaryEdge& b) { return edge_rank_less(a.e, b.e); });
    for (const BoundaryEdge& be : view.boundary) {
        view.min_into_cell.emplace(be.cell, be);  // first hit per cell is rank-minimal
    }
    for (const auto& [cell, be] : view.min_into_cell) {
        if (is_marked(cx.source(), cx.params(), cell)) view.marked_cells.push_back(cell);
    }
    return view;
}

// The unique cluster C in a marked adjacent cell for which B participates in
// the cluster-of-clusters of C: the one holding the far endpoint of B's
// minimum-rank edge into that cell.
inline const Cluster& participation_target(LocalContext& cx, const AdjacencyView& view_B,
                                           Vertex marked_cell) {
    auto it = view_B.min_into_cell.find(marked_cell);
    if (it == view_B.min_into_cell.end())
        throw std::invalid_argument("participation_target: cell not adjacent to cluster");
    return cx.cluster_of(it->second.outside);
}

// Minimum-rank edge of E(A,B) read off B's view.
inline std::optional<Edge> min_edge_between(const AdjacencyView& view_B, const Cluster& A) {
    for (const BoundaryEdge& be : view_B.boundary)
        if (be.cell == A.center && A.contains(be.outside)) return be.e;
    return std::nullopt;
}

// Connection rule (a): A is marked and e has minimum rank in E(A,B).
inline bool rule_marked(const Cluster& A, const Cluster& B, const Edge& e,
                        const AdjacencyView& view_B) {
    (void)B;
    if (!A.marked) return false;
    auto m = min_edge_between(view_B, A);
    return m && *m == e;
}

// Connection rule (b): no cell adjacent to A is marked, and e has minimum
// rank in E(A, Vor(B)).
inline bool rule_no_marked_neighbor(const Cluster& A, const Cluster& B, const Edge& e,
                                    const AdjacencyView& view_A) {
    if (!view_A.marked_cells.empty()) return false;
    auto it = view_A.min_into_cell.find(B.center);
    return it != view_A.min_into_cell.end() && it->second.e == e;
}

// Connection rule (c): some marked cluster C has A participating in its
// cluster-of-clusters, Vor(A) has minimum rank among the cells adjacent to
// both B and C, and e has minimum rank in E(B, Vor(A)).
inline bool rule_indirect(LocalContext& cx, const Cluster& A, const Cluster& B, const Edge& e,
                          const AdjacencyView& view_A, const AdjacencyView& view_B,
                          std::vector<std::string>* notes = nullptr) {
    {
        auto it = view_B.min_into_cell.find(A.center);
        if (it == view_B.min_into_cell.end() || !(it->second.e == e)) return false;
    }
    for (Vertex mc : view_A.marked_cells) {
        const Cluster& C = participation_target(cx, view_A, mc);
        AdjacencyView view_C = adjacency_view(cx, C);
        // Cells adjacent to both B and C; Vor(A) is always one of them.
        std::optional<CellRank> best;
        for (const auto& [cell, be] : view_C.min_into_cell) {
            if (!view_B.adjacent_to(cell)) continue;
            CellRank r = cell_rank(cx.source(), cell);
            if (!best || r < *best) best = r;
        }
        if (notes) {
            notes->push_back("candidate C root=" + std::to_string(C.root) + " in cell " +
                             std::to_string(mc) + ", min common cell=" +
                             (best ? std::to_string(best->center) : std::string("none")));
        }
        if (best && best->center == A.center) return true;
    }
    return false;
}

}  // namespace lssg

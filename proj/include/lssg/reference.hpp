#pragma once

// Global reference construction of the spanner: the partition, clusters,
// connection rules and remote spanner computed directly over the whole graph
// with plain arrays and no locality constraints. This is the test oracle the
// per-edge answers are checked against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lssg/connectors.hpp"
#include "lssg/oracle.hpp"
#include "lssg/random.hpp"

namespace lssg {

struct RefCluster {
    Vertex root = kNoVertex;
    Vertex center = kNoVertex;
    bool marked = false;
    ClusterKind kind = ClusterKind::whole_cell;
    std::vector<Vertex> members;  // sorted
};

struct GlobalPartition {
    std::vector<Vertex> centers;            // realized S, sorted
    std::vector<std::uint32_t> dist;        // hops to nearest center; kNoVertex when remote
    std::vector<Vertex> center_of;          // kNoVertex when remote
    std::vector<Vertex> parent;             // kNoVertex for centers and remote vertices
    std::vector<std::uint64_t> subtree;     // |T(v)|, 0 for remote
    std::vector<std::uint64_t> cell_size;   // indexed by center id (sparse map semantics)
    std::vector<Vertex> cluster_root;       // kNoVertex for remote
    std::vector<RefCluster> clusters;
    std::unordered_map<Vertex, std::uint32_t> cluster_index;  // root -> index
    std::vector<Vertex> remote;             // sorted
    std::vector<double> radius;             // r_v for remote vertices, else 0
    bool en_radius_violation = false;       // some remote v has r_v >= h

    bool is_remote(Vertex v) const { return center_of[v] == kNoVertex; }
    const RefCluster& cluster_of(Vertex v) const {
        return clusters[cluster_index.at(cluster_root[v])];
    }
};

inline GlobalPartition build_partition(const Graph& g, const RandomSource& src,
                                       const Params& par) {
    const std::uint32_t n = g.n();
    GlobalPartition part;
    part.dist.assign(n, kNoVertex);
    part.center_of.assign(n, kNoVertex);
    part.parent.assign(n, kNoVertex);
    part.subtree.assign(n, 0);
    part.cluster_root.assign(n, kNoVertex);
    part.radius.assign(n, 0.0);

    for (Vertex v = 0; v < n; ++v)
        if (is_center(src, par, v)) part.centers.push_back(v);

    // Multi-source BFS up to ell, level-synchronized; the assigned center of
    // a fresh vertex is the minimum over its already-settled neighbors.
    std::vector<Vertex> frontier = part.centers;
    for (Vertex s : part.centers) {
        part.dist[s] = 0;
        part.center_of[s] = s;
    }
    for (std::uint32_t d = 0; d < par.ell && !frontier.empty(); ++d) {
        std::vector<Vertex> next;
        for (Vertex u : frontier) {
            for (const Vertex* w = g.adj_begin(u); w != g.adj_end(u); ++w) {
                if (part.dist[*w] == kNoVertex) {
                    part.dist[*w] = d + 1;
                    next.push_back(*w);
                }
            }
        }
        for (Vertex w : next) {
            Vertex best = kNoVertex;
            for (const Vertex* y = g.adj_begin(w); y != g.adj_end(w); ++y)
                if (part.dist[*y] == d && part.center_of[*y] < best) best = part.center_of[*y];
            part.center_of[w] = best;
        }
        frontier = std::move(next);
    }

    for (Vertex v = 0; v < n; ++v)
        if (part.center_of[v] == kNoVertex) {
            part.dist[v] = kNoVertex;
            part.remote.push_back(v);
            part.radius[v] = exp_radius(src, par, v);
            if (part.radius[v] >= double(par.h)) part.en_radius_violation = true;
        }

    // BFS-tree parents: minimum-id neighbor one level closer in the same cell.
    std::vector<Vertex> order;  // non-remote vertices by decreasing depth
    order.reserve(n - part.remote.size());
    for (Vertex v = 0; v < n; ++v) {
        if (part.is_remote(v) || part.dist[v] == 0) continue;
        for (const Vertex* w = g.adj_begin(v); w != g.adj_end(v); ++w) {
            if (!part.is_remote(*w) && part.center_of[*w] == part.center_of[v] &&
                part.dist[*w] + 1 == part.dist[v]) {
                part.parent[v] = *w;
                break;  // adjacency is ascending, first hit is min id
            }
        }
        if (part.parent[v] == kNoVertex)
            throw std::logic_error("reference: non-center vertex without a tree parent");
    }
    for (Vertex v = 0; v < n; ++v)
        if (!part.is_remote(v)) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return part.dist[a] > part.dist[b];
    });
    part.cell_size.assign(n, 0);
    for (Vertex v : order) part.subtree[v] = 1;
    for (Vertex v : order) {
        if (part.parent[v] != kNoVertex) part.subtree[part.parent[v]] += part.subtree[v];
        part.cell_size[part.center_of[v]] += 1;
    }

    // Cluster roots.
    for (Vertex v : order) {  // decreasing depth: parents resolve after children is fine either way
        Vertex c = part.center_of[v];
        if (part.cell_size[c] <= par.k) {
            part.cluster_root[v] = c;
        } else if (part.subtree[v] >= par.k) {
            part.cluster_root[v] = v;
        }
    }
    // Remaining vertices take the highest ancestor whose subtree stays below k.
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return part.dist[a] < part.dist[b];
    });
    for (Vertex v : order) {
        if (part.cluster_root[v] != kNoVertex) continue;
        Vertex p = part.parent[v];
        // p exists: in a large cell the center has subtree >= k and resolved above.
        part.cluster_root[v] =
            (part.subtree[p] >= par.k) ? v : part.cluster_root[p];
    }

    // Materialize clusters.
    for (Vertex v = 0; v < n; ++v) {
        if (part.is_remote(v)) continue;
        Vertex root = part.cluster_root[v];
        auto it = part.cluster_index.find(root);
        if (it == part.cluster_index.end()) {
            it = part.cluster_index.emplace(root, std::uint32_t(part.clusters.size())).first;
            RefCluster rc;
            rc.root = root;
            rc.center = part.center_of[root];
            rc.marked = is_marked(src, par, rc.center);
            part.clusters.push_back(std::move(rc));
        }
        part.clusters[it->second].members.push_back(v);
    }
    for (RefCluster& rc : part.clusters) {
        Vertex c = rc.center;
        if (part.cell_size[c] <= par.k) rc.kind = ClusterKind::whole_cell;
        else if (part.subtree[rc.root] >= par.k) rc.kind = ClusterKind::singleton;
        else rc.kind = ClusterKind::subtree;
    }
    return part;
}

struct ReferenceSpanner {
    GlobalPartition part;
    std::vector<Edge> edges;                       // sorted by rank
    std::unordered_set<std::uint64_t> edge_keys;   // for membership tests
    std::uint64_t tree_edges = 0;
    std::uint64_t boundary_edges = 0;
    std::uint64_t en_edges = 0;
    std::uint64_t rule1_edges = 0;
    std::uint64_t rule2_edges = 0;
    std::uint64_t rule3_edges = 0;

    bool contains(const Edge& e) const { return edge_keys.count(edge_key(e)) > 0; }
};

namespace refdetail {

// Per-cluster boundary summary for the global rule pass.
struct ClusterAdj {
    std::map<Vertex, Edge> min_into_cell;                 // cell -> min-rank edge
    std::map<Vertex, Vertex> far_of_min;                  // cell -> far endpoint of that edge
    std::map<std::uint32_t, Edge> min_into_cluster;       // cluster index -> min-rank edge
    std::vector<Vertex> marked_cells;                     // sorted
};

}  // namespace refdetail

// Elkin-Neiman edge set of one remote vertex, computed from global arrays.
inline std::vector<Edge> reference_en_edges(const Graph& g, const GlobalPartition& part,
                                            const Params& par, Vertex v) {
    std::unordered_map<Vertex, std::uint32_t> dist;
    std::unordered_map<Vertex, Vertex> via;
    dist.emplace(v, 0);
    std::vector<Vertex> level{v};
    double best = part.radius[v];
    std::vector<std::pair<Vertex, double>> reached;  // (first hop, shifted value)
    for (std::uint32_t d = 0; d < par.h && !level.empty(); ++d) {
        std::vector<Vertex> next;
        for (Vertex x : level) {
            for (const Vertex* w = g.adj_begin(x); w != g.adj_end(x); ++w) {
                if (!part.is_remote(*w)) continue;
                Vertex hop = d == 0 ? *w : via.at(x);
                auto [it, fresh] = dist.emplace(*w, d + 1);
                if (fresh) {
                    via.emplace(*w, hop);
                    next.push_back(*w);
                } else if (it->second == d + 1 && hop < via.at(*w)) {
                    via[*w] = hop;
                }
            }
        }
        level = std::move(next);
    }
    for (const auto& [u, d] : dist) {
        if (u == v) continue;
        double m = part.radius[u] - double(d);
        best = std::max(best, m);
        reached.emplace_back(u, m);
    }
    std::vector<Edge> out;
    for (const auto& [u, m] : reached)
        if (m >= best - 1.0) out.push_back(make_edge(v, via.at(u)));
    std::sort(out.begin(), out.end(), EdgeRankLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline ReferenceSpanner reference_spanner(const Graph& g, const RandomSource& src,
                                          const Params& par) {
    ReferenceSpanner ref;
    ref.part = build_partition(g, src, par);
    const GlobalPartition& part = ref.part;
    auto add = [&](const Edge& e, std::uint64_t& bucket) {
        if (ref.edge_keys.insert(edge_key(e)).second) {
            ref.edges.push_back(e);
            ++bucket;
        }
    };

    // BFS-tree edges of every cell.
    for (Vertex v = 0; v < g.n(); ++v)
        if (part.parent[v] != kNoVertex) add(make_edge(v, part.parent[v]), ref.tree_edges);

    // Boundary edges and the remote spanner.
    for (const Edge& e : g.edges()) {
        bool ru = part.is_remote(e.lo), rv = part.is_remote(e.hi);
        if (ru != rv) add(e, ref.boundary_edges);
    }
    for (Vertex v : part.remote)
        for (const Edge& e : reference_en_edges(g, part, par, v)) add(e, ref.en_edges);

    // Cluster adjacency summaries over all inter-cell non-remote edges.
    std::vector<refdetail::ClusterAdj> adj(part.clusters.size());
    for (const Edge& e : g.edges()) {
        if (part.is_remote(e.lo) || part.is_remote(e.hi)) continue;
        if (part.center_of[e.lo] == part.center_of[e.hi]) continue;
        auto note = [&](Vertex inside, Vertex outside) {
            std::uint32_t ci = part.cluster_index.at(part.cluster_root[inside]);
            std::uint32_t co = part.cluster_index.at(part.cluster_root[outside]);
            refdetail::ClusterAdj& a = adj[ci];
            Vertex cell = part.center_of[outside];
            auto [it, fresh] = a.min_into_cell.try_emplace(cell, e);
            if (fresh || edge_rank_less(e, it->second)) {
                it->second = e;
                a.far_of_min[cell] = outside;
            }
            auto [jt, fresh2] = a.min_into_cluster.try_emplace(co, e);
            if (!fresh2 && edge_rank_less(e, jt->second)) jt->second = e;
        };
        note(e.lo, e.hi);
        note(e.hi, e.lo);
    }
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (const auto& [cell, e] : adj[i].min_into_cell)
            if (is_marked(src, par, cell)) adj[i].marked_cells.push_back(cell);

    // Rule 1: connect every cluster to every adjacent marked cluster.
    for (std::size_t i = 0; i < adj.size(); ++i) {
        for (const auto& [other, e] : adj[i].min_into_cluster) {
            if (part.clusters[other].marked || part.clusters[i].marked) add(e, ref.rule1_edges);
        }
    }

    // Rule 2: clusters adjacent to no marked cell connect to each adjacent cell.
    for (std::size_t i = 0; i < adj.size(); ++i) {
        if (!adj[i].marked_cells.empty()) continue;
        for (const auto& [cell, e] : adj[i].min_into_cell) add(e, ref.rule2_edges);
    }

    // Rule 3: for each ordered pair (A, B) of adjacent clusters in different
    // cells, with B participating in the cluster-of-clusters of C inside a
    // marked cell: connect A to B when Vor(B) has minimum rank among the
    // cells adjacent to both A and C and A's minimum edge into Vor(B) lands
    // in B.
    for (std::size_t bi = 0; bi < adj.size(); ++bi) {
        for (Vertex mc : adj[bi].marked_cells) {
            Vertex far = adj[bi].far_of_min.at(mc);
            std::uint32_t ci = part.cluster_index.at(part.cluster_root[far]);
            const refdetail::ClusterAdj& cadj = adj[ci];
            for (const auto& [acl, eab] : adj[bi].min_into_cluster) {
                const refdetail::ClusterAdj& aadj = adj[acl];
                Vertex bcell = part.clusters[bi].center;
                auto mit = aadj.min_into_cell.find(bcell);
                if (mit == aadj.min_into_cell.end()) continue;
                // Vor(B) minimum rank among Vor(dA) cap Vor(dC)?
                std::optional<CellRank> best;
                for (const auto& [cell, unused] : aadj.min_into_cell) {
                    if (!cadj.min_into_cell.count(cell)) continue;
                    CellRank r = cell_rank(src, cell);
                    if (!best || r < *best) best = r;
                }
                if (!best || best->center != bcell) continue;
                // Minimum edge of E(A, Vor(B)) must be in E(A, B).
                const Edge& e = mit->second;
                std::uint32_t far_cluster =
                    part.cluster_index.at(part.cluster_root[part.center_of[e.lo] == bcell
                                                                ? e.lo
                                                                : e.hi]);
                if (far_cluster == bi) add(e, ref.rule3_edges);
            }
        }
    }

    std::sort(ref.edges.begin(), ref.edges.end(), EdgeRankLess{});
    return ref;
}

}  // namespace lssg

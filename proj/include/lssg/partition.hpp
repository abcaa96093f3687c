#pragma once

// Local reconstruction of the Voronoi partition on the non-remote subgraph:
// nearest centers, BFS-tree navigation, capped subtree exploration and
// cluster assembly. All work runs through a per-call LocalContext that owns
// the query counter and memoizes discoveries for the duration of one oracle
// call; nothing is shared across calls.

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lssg/graph.hpp"
#include "lssg/random.hpp"

namespace lssg {

struct CenterInfo {
    bool remote = true;
    Vertex center = kNoVertex;
    std::uint32_t dist = 0;
    friend bool operator==(const CenterInfo&, const CenterInfo&) = default;
};

enum class ClusterKind { whole_cell, singleton, subtree };

struct Cluster {
    Vertex center = kNoVertex;
    Vertex root = kNoVertex;
    std::vector<Vertex> members;  // sorted ascending
    bool marked = false;
    ClusterKind kind = ClusterKind::whole_cell;

    bool contains(Vertex v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
};

struct SubtreeProbe {
    std::uint64_t size = 0;                        // capped at k
    std::optional<std::vector<Vertex>> members;    // present iff size < k, sorted
};

class LocalContext {
  public:
    LocalContext(const Graph& g, const RandomSource& src, const Params& par, QueryCounter& ctr)
        : g_(g), src_(src), par_(par), ctr_(ctr) {}

    const Graph& graph() const { return g_; }
    const RandomSource& source() const { return src_; }
    const Params& params() const { return par_; }
    QueryCounter& counter() { return ctr_; }

    // Incidence list of v, discovered once per call and billed
    // min(deg(v)+1, delta) probes on first touch.
    const std::vector<Vertex>& neighbors(Vertex v) {
        auto it = nbr_cache_.find(v);
        if (it != nbr_cache_.end()) return it->second;
        std::uint32_t deg = g_.degree(v);
        ctr_.add(probe_cost(deg, g_.delta_max()));
        std::vector<Vertex> list(g_.adj_begin(v), g_.adj_end(v));
        return nbr_cache_.emplace(v, std::move(list)).first->second;
    }

    // BFS from v in G, stopping at the first level that contains a center;
    // the assigned center is the minimum-id center of that level. Remote if
    // no center shows up within ell hops.
    CenterInfo find_center(Vertex v) {
        if (v >= g_.n()) throw std::invalid_argument("vertex out of range");
        auto it = center_cache_.find(v);
        if (it != center_cache_.end()) return it->second;

        CenterInfo info;
        std::unordered_map<Vertex, std::uint32_t> dist;
        std::vector<Vertex> level{v};
        dist.emplace(v, 0);
        for (std::uint32_t d = 0; d <= par_.ell; ++d) {
            Vertex best = kNoVertex;
            for (Vertex x : level)
                if (is_center(src_, par_, x) && x < best) best = x;
            if (best != kNoVertex) {
                info = CenterInfo{false, best, d};
                break;
            }
            if (d == par_.ell) break;
            std::vector<Vertex> next;
            for (Vertex x : level) {
                for (Vertex w : neighbors(x)) {
                    if (dist.emplace(w, d + 1).second) next.push_back(w);
                }
            }
            level = std::move(next);
            if (level.empty()) break;
        }
        center_cache_.emplace(v, info);
        return info;
    }

    // Parent of u in the BFS tree of its cell: the minimum-id neighbor one
    // hop closer to the center and assigned to the same center. Absent for
    // the center itself.
    std::optional<Vertex> bfs_parent(Vertex u) {
        auto it = parent_cache_.find(u);
        if (it != parent_cache_.end())
            return it->second == kNoVertex ? std::nullopt : std::optional<Vertex>(it->second);
        CenterInfo info = find_center(u);
        if (info.remote) throw std::invalid_argument("bfs_parent: vertex is remote");
        if (info.dist == 0) {
            parent_cache_.emplace(u, kNoVertex);
            return std::nullopt;
        }
        for (Vertex w : neighbors(u)) {
            CenterInfo wi = find_center(w);
            if (!wi.remote && wi.center == info.center && wi.dist + 1 == info.dist) {
                parent_cache_.emplace(u, w);
                return w;
            }
        }
        throw std::logic_error("bfs_parent: no candidate on a shortest path; partition invariant broken");
    }

    // Children of u in its cell tree, ascending.
    std::vector<Vertex> bfs_children(Vertex u) {
        CenterInfo info = find_center(u);
        if (info.remote) throw std::invalid_argument("bfs_children: vertex is remote");
        std::vector<Vertex> out;
        for (Vertex w : neighbors(u)) {
            CenterInfo wi = find_center(w);
            if (wi.remote || wi.center != info.center || wi.dist != info.dist + 1) continue;
            auto pw = bfs_parent(w);
            if (pw && *pw == u) out.push_back(w);
        }
        return out;
    }

    // Explore T(u) until `cap` vertices are seen. Members are returned only
    // when the subtree was exhausted below the cap.
    SubtreeProbe subtree_explore(Vertex u, std::uint64_t cap) {
        std::vector<Vertex> seen{u};
        std::size_t head = 0;
        while (head < seen.size() && seen.size() < cap) {
            Vertex x = seen[head++];
            for (Vertex c : bfs_children(x)) {
                seen.push_back(c);
                if (seen.size() >= cap) break;
            }
        }
        SubtreeProbe res;
        if (seen.size() >= cap) {
            res.size = cap;
            return res;
        }
        // Exhausted: everything reachable was enumerated.
        std::sort(seen.begin(), seen.end());
        res.size = seen.size();
        res.members = std::move(seen);
        return res;
    }

    // Spec-facing probe with the cluster threshold k.
    SubtreeProbe subtree_probe(Vertex u) { return subtree_explore(u, par_.k); }

    // Cluster of a non-remote vertex: the whole cell when it has at most k
    // vertices; the singleton {v} when T(v) already reaches k; otherwise the
    // subtree of the unique ancestor u with |T(u)| < k <= |T(p(u))|.
    const Cluster& cluster_of(Vertex v) {
        CenterInfo info = find_center(v);
        if (info.remote) throw std::invalid_argument("cluster_of: vertex is remote");

        auto cell_it = whole_cell_.find(info.center);
        if (cell_it == whole_cell_.end()) {
            SubtreeProbe cell = subtree_explore(info.center, par_.k + 1);
            Vertex root = kNoVertex;
            if (cell.members) {
                auto cl = std::make_shared<Cluster>();
                cl->center = info.center;
                cl->root = info.center;
                cl->members = std::move(*cell.members);
                cl->marked = is_marked(src_, par_, info.center);
                cl->kind = ClusterKind::whole_cell;
                root = info.center;
                cluster_cache_.emplace(root, std::move(cl));
            }
            cell_it = whole_cell_.emplace(info.center, root).first;
        }
        if (cell_it->second != kNoVertex) return *cluster_cache_.at(cell_it->second);

        // Large cell: find the cluster root for v.
        SubtreeProbe own = subtree_probe(v);
        Vertex root;
        ClusterKind kind;
        std::vector<Vertex> members;
        if (!own.members) {
            root = v;
            kind = ClusterKind::singleton;
            members = {v};
        } else {
            Vertex u = v;
            std::vector<Vertex> umembers = std::move(*own.members);
            while (true) {
                auto p = bfs_parent(u);
                if (!p) throw std::logic_error("cluster_of: walked past the center of a large cell");
                SubtreeProbe up = subtree_probe(*p);
                if (!up.members) break;  // |T(p)| >= k, so u is the cluster root
                u = *p;
                umembers = std::move(*up.members);
            }
            root = u;
            kind = ClusterKind::subtree;
            members = std::move(umembers);
        }
        auto hit = cluster_cache_.find(root);
        if (hit != cluster_cache_.end()) return *hit->second;
        auto cl = std::make_shared<Cluster>();
        cl->center = info.center;
        cl->root = root;
        cl->members = std::move(members);
        cl->marked = is_marked(src_, par_, info.center);
        cl->kind = kind;
        return *cluster_cache_.emplace(root, std::move(cl)).first->second;
    }

  private:
    const Graph& g_;
    const RandomSource& src_;
    const Params& par_;
    QueryCounter& ctr_;
    std::unordered_map<Vertex, std::vector<Vertex>> nbr_cache_;
    std::unordered_map<Vertex, CenterInfo> center_cache_;
    std::unordered_map<Vertex, Vertex> parent_cache_;
    std::unordered_map<Vertex, Vertex> whole_cell_;  // center -> cluster root or kNoVertex
    std::unordered_map<Vertex, std::shared_ptr<Cluster>> cluster_cache_;
};

// Free-function forms matching the operation contracts; each wraps a fresh
// context billing into the caller's counter.
inline CenterInfo find_center(const Graph& g, const RandomSource& src, const Params& par,
                              Vertex v, QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return cx.find_center(v);
}

inline std::optional<Vertex> bfs_parent(const Graph& g, const RandomSource& src,
                                        const Params& par, Vertex u, QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return cx.bfs_parent(u);
}

inline std::vector<Vertex> bfs_children(const Graph& g, const RandomSource& src,
                                        const Params& par, Vertex u, QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return cx.bfs_children(u);
}

inline SubtreeProbe subtree_probe(const Graph& g, const RandomSource& src, const Params& par,
                                  Vertex u, QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return cx.subtree_probe(u);
}

inline Cluster cluster_of(const Graph& g, const RandomSource& src, const Params& par, Vertex v,
                          QueryCounter& ctr) {
    LocalContext cx(g, src, par, ctr);
    return cx.cluster_of(v);
}

}  // namespace lssg

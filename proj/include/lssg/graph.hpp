#pragma once

// Bounded-degree graph stored as sorted incidence lists, plus the counted
// neighbor-query primitive that everything else is billed against.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lssg {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = 0xffffffffu;

// Unordered edge, normalized so lo < hi.
struct Edge {
    Vertex lo = kNoVertex;
    Vertex hi = kNoVertex;
    friend bool operator==(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
    if (a == b) throw std::invalid_argument("edge endpoints must differ");
    return a < b ? Edge{a, b} : Edge{b, a};
}

// Total order on edges: compare min endpoints, then max endpoints.
inline bool edge_rank_less(const Edge& a, const Edge& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
}

struct EdgeRankLess {
    bool operator()(const Edge& a, const Edge& b) const { return edge_rank_less(a, b); }
};

inline std::uint64_t edge_key(const Edge& e) {
    return (std::uint64_t(e.lo) << 32) | e.hi;
}

struct QueryCounter {
    std::uint64_t count = 0;
    void add(std::uint64_t k = 1) { count += k; }
    void reset() { count = 0; }
};

// Probes needed to learn a full incidence list: deg+1 to hit the end marker,
// capped at delta_max where the list cannot be longer.
inline std::uint64_t probe_cost(std::uint32_t degree, std::uint32_t delta_max) {
    return degree < delta_max ? std::uint64_t(degree) + 1 : delta_max;
}

class Graph {
  public:
    Graph(std::uint32_t n, std::uint32_t delta_max, const std::vector<Edge>& edges)
        : n_(n), delta_max_(delta_max) {
        if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
        if (delta_max < 1) throw std::invalid_argument("degree bound must be positive");
        std::vector<std::uint32_t> deg(n, 0);
        for (const Edge& e : edges) {
            if (e.hi >= n) throw std::invalid_argument("edge endpoint out of range");
            if (e.lo == e.hi) throw std::invalid_argument("self-loop");
            ++deg[e.lo];
            ++deg[e.hi];
        }
        offsets_.assign(n + 1, 0);
        for (std::uint32_t v = 0; v < n; ++v) {
            if (deg[v] > delta_max) {
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " exceeds degree bound " + std::to_string(delta_max));
            }
            offsets_[v + 1] = offsets_[v] + deg[v];
        }
        nbrs_.resize(offsets_[n]);
        std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const Edge& e : edges) {
            nbrs_[fill[e.lo]++] = e.hi;
            nbrs_[fill[e.hi]++] = e.lo;
        }
        for (std::uint32_t v = 0; v < n; ++v) {
            auto first = nbrs_.begin() + offsets_[v];
            auto last = nbrs_.begin() + offsets_[v + 1];
            std::sort(first, last);
            if (std::adjacent_find(first, last) != last)
                throw std::invalid_argument("parallel edge at vertex " + std::to_string(v));
        }
    }

    std::uint32_t n() const { return n_; }
    std::uint32_t delta_max() const { return delta_max_; }
    std::uint64_t edge_count() const { return nbrs_.size() / 2; }

    // Structural accessors (loader/reference side, not billed).
    std::uint32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    const Vertex* adj_begin(Vertex v) const { return nbrs_.data() + offsets_[v]; }
    const Vertex* adj_end(Vertex v) const { return nbrs_.data() + offsets_[v + 1]; }
    bool has_edge(Vertex u, Vertex v) const {
        if (u >= n_ || v >= n_) return false;
        return std::binary_search(adj_begin(u), adj_end(u), v);
    }

    // The query-model primitive: i-th neighbor of v in ascending id order,
    // 1-based; absent when deg(v) < i. Each call costs exactly one query.
    std::optional<Vertex> neighbor(Vertex v, std::uint32_t i, QueryCounter& ctr) const {
        if (v >= n_) throw std::invalid_argument("vertex out of range");
        if (i < 1 || i > delta_max_) throw std::invalid_argument("neighbor index out of range");
        ctr.add();
        if (i > degree(v)) return std::nullopt;
        return nbrs_[offsets_[v] + i - 1];
    }

    // All edges in rank order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (Vertex v = 0; v < n_; ++v)
            for (const Vertex* w = adj_begin(v); w != adj_end(v); ++w)
                if (v < *w) out.push_back(Edge{v, *w});
        return out;
    }

  private:
    std::uint32_t n_;
    std::uint32_t delta_max_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> nbrs_;
};

struct BallEntry {
    Vertex v;
    std::uint32_t dist;
    friend bool operator==(const BallEntry&, const BallEntry&) = default;
};

inline constexpr std::uint64_t kUnbounded = ~std::uint64_t(0);

// BFS ball around v restricted to vertices passing `filter`, truncated to the
// first `cap` vertices in (distance, id) order. Probes are billed per expanded
// vertex; the final level is collected but never expanded.
template <typename Filter>
std::vector<BallEntry> ball(const Graph& g, Vertex v, std::uint32_t radius, std::uint64_t cap,
                            Filter&& filter, QueryCounter& ctr) {
    if (v >= g.n()) throw std::invalid_argument("vertex out of range");
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
    std::vector<BallEntry> out;
    if (!filter(v)) return out;
    out.push_back({v, 0});
    std::vector<Vertex> frontier{v};
    std::vector<bool> seen(g.n(), false);
    seen[v] = true;
    for (std::uint32_t d = 1; d <= radius && out.size() < cap && !frontier.empty(); ++d) {
        std::vector<Vertex> next;
        for (Vertex u : frontier) {
            for (std::uint32_t i = 1; i <= g.delta_max(); ++i) {
                auto w = g.neighbor(u, i, ctr);
                if (!w) break;
                if (!seen[*w] && filter(*w)) {
                    seen[*w] = true;
                    next.push_back(*w);
                }
            }
        }
        std::sort(next.begin(), next.end());
        std::vector<Vertex> kept;
        for (Vertex w : next) {
            if (out.size() >= cap) break;
            out.push_back({w, d});
            kept.push_back(w);
        }
        frontier = std::move(kept);
    }
    return out;
}

inline std::vector<BallEntry> ball(const Graph& g, Vertex v, std::uint32_t radius,
                                   std::uint64_t cap, QueryCounter& ctr) {
    return ball(g, v, radius, cap, [](Vertex) { return true; }, ctr);
}

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text format: header "n m delta", then m lines "u v" with u < v, sorted by
// edge rank. '#' starts a comment line. Canonical form has no comments,
// single spaces, and a trailing newline.
inline Graph load_graph(std::istream& in, const std::string& name = "<stream>") {
    auto fail = [&](std::size_t line, const std::string& what) -> void {
        throw LoadError(name + ":" + std::to_string(line) + ": " + what);
    };
    std::string line;
    std::size_t lineno = 0;
    auto next_data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t pos = line.find_first_not_of(" \t");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_data_line()) throw LoadError(name + ": empty file");
    std::uint64_t n = 0, m = 0, delta = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m >> delta) || (hs >> extra)) fail(lineno, "malformed header, want 'n m delta'");
        if (n < 1 || n > 0xfffffffeull) fail(lineno, "vertex count out of range");
        if (delta < 1 || delta > 0xffffffffull) fail(lineno, "degree bound out of range");
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    Edge prev{0, 0};
    for (std::uint64_t i = 0; i < m; ++i) {
        if (!next_data_line()) fail(lineno + 1, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        std::istringstream es(line);
        std::uint64_t u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) fail(lineno, "malformed edge line");
        if (u == v) fail(lineno, "self-loop");
        if (u > v) fail(lineno, "edge endpoints must satisfy u < v");
        if (v >= n) fail(lineno, "endpoint out of range");
        Edge e{Vertex(u), Vertex(v)};
        if (i > 0 && !edge_rank_less(prev, e)) {
            fail(lineno, edge_rank_less(e, prev) ? "edges out of rank order" : "duplicate edge");
        }
        prev = e;
        edges.push_back(e);
    }
    if (next_data_line()) fail(lineno, "trailing content after edge list");
    try {
        return Graph(std::uint32_t(n), std::uint32_t(delta), edges);
    } catch (const std::invalid_argument& e) {
        throw LoadError(name + ": " + e.what());
    }
}

inline void save_graph(const Graph& g, std::ostream& out) {
    out << g.n() << ' ' << g.edge_count() << ' ' << g.delta_max() << '\n';
    for (const Edge& e : g.edges()) out << e.lo << ' ' << e.hi << '\n';
}

inline Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError(path + ": cannot open");
    return load_graph(in, path);
}

inline void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    save_graph(g, out);
}

// Plain reference BFS over the whole graph; test oracle for ball() and the
// distance routines, and the workhorse for stretch measurement.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex src) {
    std::vector<std::uint32_t> dist(g.n(), kNoVertex);
    std::vector<Vertex> queue{src};
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (const Vertex* w = g.adj_begin(u); w != g.adj_end(u); ++w) {
            if (dist[*w] == kNoVertex) {
                dist[*w] = dist[u] + 1;
                queue.push_back(*w);
            }
        }
    }
    return dist;
}

}  // namespace lssg

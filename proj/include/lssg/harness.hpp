#pragma once

// Global verification machinery: full sweeps, connectivity, stretch and
// cell-level stretch measurement, lemma checks, the seed-selection wrapper
// and the query-complexity scaling report.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "lssg/generators.hpp"
#include "lssg/oracle.hpp"
#include "lssg/reference.hpp"

namespace lssg {

struct QueryStats {
    std::uint64_t calls = 0;
    std::uint64_t min = 0;
    std::uint64_t median = 0;
    std::uint64_t max = 0;
    std::uint64_t total = 0;

    static QueryStats from_counts(std::vector<std::uint64_t> counts) {
        QueryStats s;
        if (counts.empty()) return s;
        std::sort(counts.begin(), counts.end());
        s.calls = counts.size();
        s.min = counts.front();
        s.max = counts.back();
        s.median = counts[counts.size() / 2];
        s.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t(0));
        return s;
    }
};

struct SweepResult {
    std::vector<Edge> selected;             // sorted by rank
    std::vector<std::uint64_t> per_call;    // query count per edge, rank order
    std::vector<Branch> branches;           // branch per edge, rank order
    QueryStats stats;
};

// Evaluate the oracle on every edge; each call gets a fresh context. The
// result is independent of worker count and evaluation order.
inline SweepResult sweep(const Graph& g, const RandomSource& src, const Params& par,
                         unsigned jobs = 1) {
    std::vector<Edge> all = g.edges();
    std::vector<char> answers(all.size(), 0);
    std::vector<std::uint64_t> counts(all.size(), 0);
    std::vector<Branch> branches(all.size(), Branch::none);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            QueryCounter ctr;
            OracleDecision d = lssg_answer(g, src, par, all[i].lo, all[i].hi, ctr);
            answers[i] = d.answer ? 1 : 0;
            counts[i] = d.queries_used;
            branches[i] = d.branch;
        }
    };
    if (jobs <= 1 || all.size() < 32) {
        work(0, all.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (all.size() + jobs - 1) / jobs;
        for (unsigned t = 0; t < jobs; ++t) {
            std::size_t lo = std::min(std::size_t(t) * chunk, all.size());
            std::size_t hi = std::min(lo + chunk, all.size());
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    SweepResult res;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (answers[i]) res.selected.push_back(all[i]);
    res.per_call = counts;
    res.branches = branches;
    res.stats = QueryStats::from_counts(counts);
    return res;
}

// Union-find connectivity of (V, edges).
inline bool check_connectivity(std::uint32_t n, const std::vector<Edge>& edges) {
    if (n == 0) return true;
    std::vector<Vertex> parent(n);
    for (Vertex v = 0; v < n; ++v) parent[v] = v;
    std::function<Vertex(Vertex)> find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::uint32_t comps = n;
    for (const Edge& e : edges) {
        Vertex a = find(e.lo), b = find(e.hi);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

struct StretchStats {
    bool all_finite = true;
    std::uint32_t max = 0;
    std::uint32_t p95 = 0;
    std::map<std::uint32_t, std::uint64_t> histogram;  // hop distance -> count
};

inline Graph subgraph_on_edges(std::uint32_t n, std::uint32_t delta,
                               const std::vector<Edge>& edges) {
    return Graph(n, delta, edges);
}

// Hop distance in H between the endpoints of every edge of G not in H.
inline StretchStats measure_stretch(const Graph& g, const std::vector<Edge>& spanner) {
    Graph h = subgraph_on_edges(g.n(), g.delta_max(), spanner);
    std::unordered_set<std::uint64_t> keys;
    for (const Edge& e : spanner) keys.insert(edge_key(e));
    StretchStats st;
    std::vector<std::uint32_t> samples;
    for (const Edge& e : g.edges()) {
        if (keys.count(edge_key(e))) continue;
        auto dist = bfs_distances(h, e.lo);
        if (dist[e.hi] == kNoVertex) {
            st.all_finite = false;
            continue;
        }
        samples.push_back(dist[e.hi]);
        ++st.histogram[dist[e.hi]];
    }
    if (!samples.empty()) {
        std::sort(samples.begin(), samples.end());
        st.max = samples.back();
        st.p95 = samples[std::size_t(std::ceil(0.95 * double(samples.size()))) - 1];
    }
    return st;
}

// Contract Voronoi cells (each remote vertex is its own node) in G and H and
// measure, over the cell-graph edges of G, the hop distance in the contracted
// H. Returns kNoVertex when some cell-graph edge is not even connected in H.
inline std::uint32_t check_cell_stretch(const Graph& g, const GlobalPartition& part,
                                        const std::vector<Edge>& spanner) {
    std::unordered_map<Vertex, Vertex> node_of;  // representative -> contracted id
    auto rep = [&](Vertex v) { return part.is_remote(v) ? v : part.center_of[v]; };
    for (Vertex v = 0; v < g.n(); ++v) node_of.emplace(rep(v), 0);
    Vertex next = 0;
    for (auto& [r, id] : node_of) id = next++;
    auto contract = [&](const std::vector<Edge>& edges) {
        std::vector<std::vector<Vertex>> adj(node_of.size());
        std::unordered_set<std::uint64_t> seen;
        for (const Edge& e : edges) {
            Vertex a = node_of.at(rep(e.lo)), b = node_of.at(rep(e.hi));
            if (a == b) continue;
            Edge ce = make_edge(a, b);
            if (seen.insert(edge_key(ce)).second) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
        return adj;
    };
    auto g_adj = contract(g.edges());
    auto h_adj = contract(spanner);
    std::uint32_t worst = 0;
    std::vector<std::uint32_t> dist(node_of.size());
    for (Vertex a = 0; a < g_adj.size(); ++a) {
        bool need = false;
        for (Vertex b : g_adj[a]) if (b > a) { need = true; break; }
        if (!need) continue;
        std::fill(dist.begin(), dist.end(), kNoVertex);
        dist[a] = 0;
        std::vector<Vertex> queue{a};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex x = queue[head];
            for (Vertex y : h_adj[x])
                if (dist[y] == kNoVertex) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
        }
        for (Vertex b : g_adj[a]) {
            if (b < a) continue;
            if (dist[b] == kNoVertex) return kNoVertex;
            worst = std::max(worst, dist[b]);
        }
    }
    return worst;
}

// Bridges of G via iterative lowpoint computation.
inline std::vector<Edge> find_bridges(const Graph& g) {
    std::uint32_t n = g.n();
    std::vector<std::uint32_t> tin(n, kNoVertex), low(n, 0);
    std::vector<Vertex> parent(n, kNoVertex);
    std::vector<Edge> bridges;
    std::uint32_t timer = 0;
    for (Vertex root = 0; root < n; ++root) {
        if (tin[root] != kNoVertex) continue;
        struct Frame { Vertex v; const Vertex* it; const Vertex* end; };
        std::vector<Frame> stack;
        tin[root] = low[root] = timer++;
        stack.push_back({root, g.adj_begin(root), g.adj_end(root)});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.it == f.end) {
                Vertex v = f.v;
                stack.pop_back();
                if (!stack.empty()) {
                    Vertex p = stack.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > tin[p]) bridges.push_back(make_edge(p, v));
                }
                continue;
            }
            Vertex w = *f.it++;
            if (w == parent[f.v]) {
                parent[f.v] = kNoVertex;  // skip the tree edge only once (parallel-free graphs)
                continue;
            }
            if (tin[w] == kNoVertex) {
                parent[w] = f.v;
                tin[w] = low[w] = timer++;
                stack.push_back({w, g.adj_begin(w), g.adj_end(w)});
            } else {
                low[f.v] = std::min(low[f.v], tin[w]);
            }
        }
    }
    std::sort(bridges.begin(), bridges.end(), EdgeRankLess{});
    return bridges;
}

struct SpannerReport {
    std::string seed_hex;
    Params params;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t edge_count = 0;       // |E'|
    double edges_per_vertex = 0;
    bool connected = false;
    std::uint64_t cluster_count = 0;    // s
    std::uint64_t center_count = 0;     // realized |S|
    std::uint64_t remote_count = 0;     // |R|
    std::uint64_t boundary_count = 0;   // |E(R, R-bar)|
    StretchStats stretch;
    std::uint32_t cell_stretch = 0;     // kNoVertex when disconnected at cell level
    bool en_radius_violation = false;
    QueryStats queries;
    std::map<std::string, bool> lemma_checks;
    std::map<std::string, std::uint64_t> branch_counts;
    bool all_checks_pass = true;
};

// Per-seed deterministic lemma checks; cross-seed statistical bounds live in
// the acceptance suite.
inline std::map<std::string, bool> check_lemmas(const Graph& g, const Params& par,
                                                const ReferenceSpanner& ref,
                                                const SweepResult& sw) {
    std::map<std::string, bool> out;
    const GlobalPartition& part = ref.part;
    out["oracle_matches_reference"] =
        sw.selected.size() == ref.edges.size() &&
        std::equal(sw.selected.begin(), sw.selected.end(), ref.edges.begin());
    out["subgraph"] = ref.edges.size() <= g.edge_count();
    double bound = double(part.centers.size()) +
                   double(g.n()) * double(par.ell) * double(par.delta_max + 1) / double(par.k);
    out["cluster_count_bound"] = double(part.clusters.size()) <= bound;
    bool depth_ok = true, closure_ok = true, partition_ok = true;
    std::vector<std::uint64_t> assigned(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (part.is_remote(v)) continue;
        if (part.dist[v] > par.ell) depth_ok = false;
        Vertex p = part.parent[v];
        if (p != kNoVertex && part.center_of[p] != part.center_of[v]) closure_ok = false;
    }
    for (const RefCluster& rc : part.clusters) {
        if (rc.members.size() > par.k) partition_ok = false;
        for (Vertex v : rc.members) {
            ++assigned[v];
            if (part.center_of[v] != rc.center) partition_ok = false;
        }
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (assigned[v] != (part.is_remote(v) ? 0u : 1u)) partition_ok = false;
    out["depth_bound"] = depth_ok;
    out["shortest_path_closure"] = closure_ok;
    out["clusters_partition_nonremote"] = partition_ok;
    bool trees_in = true;
    for (Vertex v = 0; v < g.n(); ++v)
        if (part.parent[v] != kNoVertex && !ref.contains(make_edge(v, part.parent[v])))
            trees_in = false;
    out["bfs_tree_edges_in_spanner"] = trees_in;
    bool bridges_in = true;
    for (const Edge& b : find_bridges(g))
        if (!ref.contains(b)) bridges_in = false;
    out["bridges_in_spanner"] = bridges_in;
    return out;
}

inline SpannerReport verify_instance(const Graph& g, const RandomSource& src, const Params& par,
                                     unsigned jobs = 1, bool with_stretch = true) {
    SpannerReport rep;
    rep.seed_hex = src.seed.to_hex();
    rep.params = par;
    rep.n = g.n();
    rep.m = g.edge_count();
    ReferenceSpanner ref = reference_spanner(g, src, par);
    SweepResult sw = sweep(g, src, par, jobs);
    rep.edge_count = sw.selected.size();
    rep.edges_per_vertex = double(sw.selected.size()) / double(g.n());
    rep.connected = check_connectivity(g.n(), sw.selected);
    rep.cluster_count = ref.part.clusters.size();
    rep.center_count = ref.part.centers.size();
    rep.remote_count = ref.part.remote.size();
    rep.boundary_count = ref.boundary_edges;
    rep.en_radius_violation = ref.part.en_radius_violation;
    rep.queries = sw.stats;
    if (with_stretch) {
        rep.stretch = measure_stretch(g, sw.selected);
        rep.cell_stretch = check_cell_stretch(g, ref.part, sw.selected);
    }
    rep.lemma_checks = check_lemmas(g, par, ref, sw);
    for (std::size_t i = 0; i < sw.branches.size(); ++i)
        ++rep.branch_counts[branch_name(sw.branches[i])];
    rep.all_checks_pass = rep.connected;
    for (const auto& [name, ok] : rep.lemma_checks)
        if (!ok) rep.all_checks_pass = false;
    if (with_stretch && !rep.stretch.all_finite) rep.all_checks_pass = false;
    return rep;
}

// Definition-level consistency: the positive set must be identical under
// query permutations, repeated queries, and parallel evaluation.
inline bool consistency_check(const Graph& g, const RandomSource& src, const Params& par,
                              unsigned permutations = 3) {
    std::vector<Edge> all = g.edges();
    SweepResult serial = sweep(g, src, par, 1);
    SweepResult parallel = sweep(g, src, par, 2);
    if (serial.selected != parallel.selected) return false;
    DetRng rng(prf64(src.seed, "consistency", g.n(), g.edge_count()));
    for (unsigned t = 0; t < permutations; ++t) {
        std::vector<Edge> shuffled = all;
        rng.shuffle(shuffled);
        std::vector<Edge> positive;
        for (const Edge& e : shuffled) {
            QueryCounter ctr;
            auto d1 = lssg_answer(g, src, par, e.lo, e.hi, ctr);
            auto d2 = lssg_answer(g, src, par, e.hi, e.lo, ctr);  // repeat, swapped endpoints
            if (d1.answer != d2.answer) return false;
            if (d1.answer) positive.push_back(d1.e);
        }
        std::sort(positive.begin(), positive.end(), EdgeRankLess{});
        if (positive != serial.selected) return false;
    }
    return true;
}

struct WrapperResult {
    bool accepted = false;
    Seed256 seed;
    std::uint32_t attempts = 0;
    std::uint64_t edge_count = 0;       // of the accepted (or best) seed
    std::uint64_t budget = 0;
    std::string error;
};

// Restart wrapper: try fresh seeds until the globally selected edge count
// stays within budget_factor * (1+eps) * n.
inline WrapperResult wrapper_select_seed(const Graph& g, double eps, const Constants& consts,
                                         const Overrides& overrides, const Seed256& base_seed,
                                         double budget_factor, std::uint32_t max_attempts = 0) {
    if (max_attempts == 0)
        max_attempts = std::uint32_t(std::ceil(4.0 * std::log2(double(g.n()))));
    WrapperResult res;
    res.budget = std::uint64_t(budget_factor * (1.0 + eps) * double(g.n()));
    std::uint64_t best = ~std::uint64_t(0);
    for (std::uint32_t i = 0; i < max_attempts; ++i) {
        Seed256 s;
        for (int w = 0; w < 4; ++w) s.w[std::size_t(w)] = prf64(base_seed, "wrapper", i, std::uint64_t(w));
        RandomSource src(s);
        Params par = derive_params(g.n(), g.delta_max(), eps, consts, overrides, src);
        ReferenceSpanner ref = reference_spanner(g, src, par);
        res.attempts = i + 1;
        if (ref.edges.size() <= res.budget) {
            res.accepted = true;
            res.seed = s;
            res.edge_count = ref.edges.size();
            return res;
        }
        if (ref.edges.size() < best) {
            best = ref.edges.size();
            res.seed = s;
            res.edge_count = best;
        }
    }
    res.error = "no seed met the budget of " + std::to_string(res.budget) + " edges within " +
                std::to_string(max_attempts) + " attempts; best had " +
                std::to_string(res.edge_count);
    return res;
}

struct ScalingPoint {
    std::uint32_t n = 0;
    std::uint64_t median_queries = 0;
    std::uint64_t max_queries = 0;
    std::uint64_t calls = 0;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    double slope = 0;  // fitted d log(median) / d log(n)
};

// Median per-call query cost across sizes, on edges sampled uniformly from
// random regular graphs, and the least-squares log-log slope.
inline ScalingReport scaling_report(const std::string& kind, std::uint32_t degree, double eps,
                                    const Constants& consts, const std::vector<std::uint32_t>& sizes,
                                    unsigned seeds_per_size, unsigned samples_per_seed,
                                    const Seed256& base_seed) {
    ScalingReport rep;
    for (std::uint32_t n : sizes) {
        Graph g = generate(kind, n, degree, prf64(base_seed, "bench-graph", n));
        std::vector<Edge> all = g.edges();
        std::vector<std::uint64_t> counts;
        for (unsigned s = 0; s < seeds_per_size; ++s) {
            Seed256 seed;
            for (int w = 0; w < 4; ++w)
                seed.w[std::size_t(w)] = prf64(base_seed, "bench-seed", (std::uint64_t(n) << 8) | s, std::uint64_t(w));
            RandomSource src(seed);
            Params par = derive_params(g.n(), g.delta_max(), eps, consts, {}, src);
            DetRng rng(prf64(base_seed, "bench-sample", n, s));
            for (unsigned i = 0; i < samples_per_seed; ++i) {
                const Edge& e = all[rng.below(all.size())];
                QueryCounter ctr;
                lssg_answer(g, src, par, e.lo, e.hi, ctr);
                counts.push_back(ctr.count);
            }
        }
        QueryStats st = QueryStats::from_counts(counts);
        rep.points.push_back({n, st.median, st.max, st.calls});
    }
    // Least squares on (ln n, ln median).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const ScalingPoint& p : rep.points) {
        double x = std::log(double(p.n));
        double y = std::log(double(std::max<std::uint64_t>(p.median_queries, 1)));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double k = double(rep.points.size());
    rep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return rep;
}

}  // namespace lssg

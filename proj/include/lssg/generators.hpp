#pragma once

// Deterministic graph generators for the test corpus and the CLI.

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lssg/graph.hpp"
#include "lssg/random.hpp"

namespace lssg {

// Self-contained deterministic RNG so generated graphs are identical across
// platforms and standard-library versions.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return splitmix64(state_);
    }
    // Uniform in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("bound must be positive");
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % bound;
    }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::uint64_t state_;
};

inline Graph make_path(std::uint32_t n) {
    if (n < 2) throw std::invalid_argument("path needs n >= 2");
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1});
    return Graph(n, 2, edges);
}

inline Graph make_cycle(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1});
    edges.push_back(Edge{0, n - 1});
    return Graph(n, 2, edges);
}

// 2D torus on r x c with r the largest divisor of n at most sqrt(n);
// both sides must come out at least 3 so the torus stays simple.
inline Graph make_grid_torus(std::uint32_t n) {
    std::uint32_t r = std::uint32_t(std::sqrt(double(n)));
    while (r > 1 && n % r != 0) --r;
    std::uint32_t c = n / r;
    if (r < 3 || c < 3)
        throw std::invalid_argument("grid torus needs n with a factorization r*c, r,c >= 3");
    std::vector<Edge> edges;
    auto id = [&](std::uint32_t i, std::uint32_t j) { return i * c + j; };
    for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = 0; j < c; ++j) {
            edges.push_back(make_edge(id(i, j), id(i, (j + 1) % c)));
            edges.push_back(make_edge(id(i, j), id((i + 1) % r, j)));
        }
    return Graph(n, 4, edges);
}

inline bool is_connected(const Graph& g) {
    auto dist = bfs_distances(g, 0);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (dist[v] == kNoVertex) return false;
    return true;
}

// Configuration model with rejection: resample until the pairing is simple
// and the graph connected.
inline Graph make_random_regular(std::uint32_t n, std::uint32_t degree, std::uint64_t seed) {
    if (degree < 2 || degree >= n) throw std::invalid_argument("regular degree out of range");
    if ((std::uint64_t(n) * degree) % 2 != 0)
        throw std::invalid_argument("n*degree must be even");
    DetRng rng(splitmix64(seed ^ 0x7265677566617221ull));
    std::vector<Vertex> stubs(std::size_t(n) * degree);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t j = 0; j < degree; ++j) stubs[std::size_t(v) * degree + j] = v;
    for (int attempt = 0; attempt < 20000; ++attempt) {
        rng.shuffle(stubs);
        std::set<std::pair<Vertex, Vertex>> seen;
        std::vector<Edge> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            Vertex a = stubs[i], b = stubs[i + 1];
            if (a == b) { ok = false; break; }
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second) { ok = false; break; }
            edges.push_back(Edge{key.first, key.second});
        }
        if (!ok) continue;
        Graph g(n, degree, edges);
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("random regular generation did not converge");
}

// Path spine with leaves filled in round-robin up to the degree bound.
inline Graph make_caterpillar(std::uint32_t n, std::uint32_t delta) {
    if (delta < 3) throw std::invalid_argument("caterpillar needs delta >= 3");
    if (n < 2) throw std::invalid_argument("caterpillar needs n >= 2");
    // Smallest spine whose leaf capacity covers the rest.
    std::uint32_t spine = 2;
    auto capacity = [&](std::uint64_t s) { return 2 * std::uint64_t(delta - 1) + (s - 2) * (delta - 2); };
    if (n <= 3) spine = n;  // degenerate: plain path
    else while (capacity(spine) < n - spine) ++spine;
    if (spine > n) spine = n;
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < spine; ++v) edges.push_back(Edge{v, v + 1});
    std::vector<std::uint32_t> load(spine, 0);
    Vertex next_leaf = spine;
    Vertex slot = 0;
    while (next_leaf < n) {
        std::uint32_t cap = (slot == 0 || slot + 1 == spine) ? delta - 1 : delta - 2;
        if (load[slot] < cap) {
            edges.push_back(Edge{slot, next_leaf});
            ++load[slot];
            ++next_leaf;
        }
        slot = (slot + 1) % spine;
    }
    return Graph(n, delta, edges);
}

// Two cliques of size delta joined by a path; dense ends, sparse middle.
inline Graph make_dumbbell(std::uint32_t n, std::uint32_t delta) {
    if (delta < 2) throw std::invalid_argument("dumbbell needs delta >= 2");
    std::uint32_t c = delta;
    if (n < 2 * c) throw std::invalid_argument("dumbbell needs n >= 2*delta");
    std::vector<Edge> edges;
    for (Vertex a = 0; a < c; ++a)
        for (Vertex b = a + 1; b < c; ++b) edges.push_back(Edge{a, b});
    for (Vertex a = n - c; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) edges.push_back(Edge{a, b});
    for (Vertex v = c - 1; v + 1 <= n - c; ++v) edges.push_back(Edge{v, v + 1});
    return Graph(n, delta, edges);
}

inline Graph generate(const std::string& kind, std::uint32_t n, std::uint32_t delta,
                      std::uint64_t seed) {
    if (kind == "path") return make_path(n);
    if (kind == "cycle") return make_cycle(n);
    if (kind == "grid") return make_grid_torus(n);
    if (kind == "random-regular") return make_random_regular(n, delta, seed);
    if (kind == "caterpillar") return make_caterpillar(n, delta);
    if (kind == "dumbbell") return make_dumbbell(n, delta);
    throw std::invalid_argument("unknown graph kind '" + kind + "'");
}

}  // namespace lssg

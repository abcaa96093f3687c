#pragma once

// Shared randomness: every random object the oracle consults (center
// membership, cell ranks, marks, exponential radii, the hop radius ell) is a
// pure function of one master seed, so independent oracle calls agree without
// coordination. A fixture can pin any of these objects for tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "lssg/graph.hpp"

namespace lssg {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

struct Seed256 {
    std::array<std::uint64_t, 4> w{};

    static Seed256 from_hex(std::string_view hex) {
        if (hex.size() > 64) throw std::invalid_argument("seed longer than 64 hex digits");
        if (hex.empty()) throw std::invalid_argument("empty seed");
        Seed256 s;
        // Right-align: "1f" is the value 0x1f in word 0.
        std::string padded(64 - hex.size(), '0');
        padded.append(hex);
        for (int word = 0; word < 4; ++word) {
            std::uint64_t v = 0;
            for (int i = 0; i < 16; ++i) {
                char c = padded[std::size_t(3 - word) * 16 + i];
                v <<= 4;
                if (c >= '0' && c <= '9') v |= std::uint64_t(c - '0');
                else if (c >= 'a' && c <= 'f') v |= std::uint64_t(c - 'a' + 10);
                else if (c >= 'A' && c <= 'F') v |= std::uint64_t(c - 'A' + 10);
                else throw std::invalid_argument("seed is not hex");
            }
            s.w[std::size_t(word)] = v;
        }
        return s;
    }

    static Seed256 from_u64(std::uint64_t x) {
        Seed256 s;
        s.w = {x, splitmix64(x), splitmix64(x ^ 0x5851f42d4c957f2dull), splitmix64(~x)};
        return s;
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(64, '0');
        for (int word = 3; word >= 0; --word) {
            std::uint64_t v = w[std::size_t(word)];
            for (int i = 15; i >= 0; --i) {
                out[std::size_t(3 - word) * 16 + std::size_t(i)] = digits[v & 0xf];
                v >>= 4;
            }
        }
        return out;
    }

    friend bool operator==(const Seed256&, const Seed256&) = default;
};

// Keyed PRF: deterministic 64-bit value per (seed, purpose tag, a, b).
inline std::uint64_t prf64(const Seed256& s, std::string_view tag, std::uint64_t a,
                           std::uint64_t b = 0) {
    std::uint64_t h = fnv1a64(tag);
    h = splitmix64(h ^ s.w[0]);
    h = splitmix64(h ^ s.w[1]);
    h = splitmix64(h ^ s.w[2]);
    h = splitmix64(h ^ s.w[3]);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

// 53-bit uniform in [0,1).
inline double uniform01(std::uint64_t x) { return double(x >> 11) * 0x1.0p-53; }

// Uniform in (0,1]; maps the all-ones draw to exactly 1.
inline double uniform01_positive(std::uint64_t x) {
    return double((x >> 11) + 1) * 0x1.0p-53;
}

inline bool prf_bernoulli(const Seed256& s, std::string_view tag, std::uint64_t id, double prob) {
    if (prob <= 0.0) return false;
    if (prob >= 1.0) return true;
    return uniform01(prf64(s, tag, id)) < prob;
}

// Random total order on cells: 128 PRF bits, ties broken by center id, so the
// order is uniform over permutations (up to negligible collision bias) and
// distinct from the id order used for edge ranks.
struct CellRank {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    Vertex center = kNoVertex;
    friend bool operator==(const CellRank&, const CellRank&) = default;
};

inline bool operator<(const CellRank& a, const CellRank& b) {
    if (a.hi != b.hi) return a.hi < b.hi;
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.center < b.center;
}

// Test fixture: pins specific random objects; everything left unset falls
// through to the PRF derivation.
struct Fixture {
    std::optional<std::unordered_set<Vertex>> centers;
    std::optional<std::unordered_set<Vertex>> marks;
    std::optional<std::unordered_map<Vertex, std::uint64_t>> ranks;
    std::optional<std::unordered_map<Vertex, double>> radii;
    std::optional<std::uint32_t> ell;
};

struct RandomSource {
    Seed256 seed;
    Fixture fixture;

    explicit RandomSource(const Seed256& s) : seed(s) {}
    RandomSource(const Seed256& s, Fixture f) : seed(s), fixture(std::move(f)) {}
};

struct Constants {
    double c_k = 1.0;      // constant in k
    double c_s = 1.0;      // constant in the center sampling rate
    double c_delta = 1.0;  // exponent in delta = n^-c, must be >= 1
};

struct Overrides {
    std::optional<std::uint32_t> ell;
    std::optional<std::uint64_t> k;
    std::optional<double> q;
    std::optional<double> p;
};

struct Params {
    std::uint32_t n = 0;
    std::uint32_t delta_max = 0;
    double eps = 0;
    Constants consts;
    Overrides overrides;  // echoed for reproducibility

    std::uint32_t ell = 0;    // hop radius
    std::uint32_t ell_lo = 0; // sampling interval [ell_lo, ell_hi]
    std::uint32_t ell_hi = 0;
    std::uint64_t k = 0;      // cluster size threshold
    double q = 0;             // per-vertex center probability
    double p = 0;             // cell marking probability
    double delta = 0;         // failure parameter of the remote spanner
    std::uint32_t h = 0;      // remote spanner radius (= ell)
    double beta = 0;          // exponential shift rate ln(n/delta)/h
    bool promise_degenerate = false;  // k > n: promise cannot hold
};

// ceil() guarded against values that are exact integers in real arithmetic
// but land epsilon above in floating point (e.g. 2 ln 4096 / ln 2 = 24).
inline std::uint64_t ceil_stable(double x) {
    if (x <= 0) return 0;
    return std::uint64_t(std::ceil(x - 1e-9));
}

inline Params derive_params(std::uint32_t n, std::uint32_t delta_max, double eps,
                            const Constants& consts, const Overrides& overrides,
                            const RandomSource& src) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (delta_max < 2) throw std::invalid_argument("delta_max must be at least 2");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (consts.c_delta < 1) throw std::invalid_argument("c_delta must be at least 1");
    Params par;
    par.n = n;
    par.delta_max = delta_max;
    par.eps = eps;
    par.consts = consts;
    par.overrides = overrides;

    const double ln_n = std::log(double(n));
    par.ell_lo = std::uint32_t(ceil_stable(2.0 * ln_n / std::log1p(eps)));
    par.ell_hi = par.ell_lo + std::uint32_t(ceil_stable(double(delta_max) / eps));
    if (overrides.ell) {
        par.ell = *overrides.ell;
    } else if (src.fixture.ell) {
        par.ell = *src.fixture.ell;
    } else {
        std::uint64_t span = std::uint64_t(par.ell_hi - par.ell_lo) + 1;
        par.ell = par.ell_lo + std::uint32_t(prf64(src.seed, "ell", 0) % span);
    }
    if (par.ell < 1) throw std::invalid_argument("ell must be at least 1");

    par.k = overrides.k ? *overrides.k
                        : ceil_stable(consts.c_k * std::cbrt(double(n)) * ln_n *
                                      double(par.ell) * double(delta_max) / eps);
    if (par.k < 1) throw std::invalid_argument("k must be at least 1");
    par.q = overrides.q ? *overrides.q
                        : std::min(1.0, consts.c_s * eps / (std::cbrt(double(n)) * ln_n));
    par.p = overrides.p ? *overrides.p : 1.0 / std::cbrt(double(n));
    if (par.q < 0 || par.q > 1 || par.p < 0 || par.p > 1)
        throw std::invalid_argument("probabilities must lie in [0,1]");
    par.delta = std::pow(double(n), -consts.c_delta);
    par.h = par.ell;
    par.beta = std::log(double(n) / par.delta) / double(par.h);
    par.promise_degenerate = par.k > n;
    return par;
}

inline bool is_center(const RandomSource& src, const Params& par, Vertex v) {
    if (v >= par.n) throw std::invalid_argument("vertex out of range");
    if (src.fixture.centers) return src.fixture.centers->count(v) > 0;
    return prf_bernoulli(src.seed, "center", v, par.q);
}

inline CellRank cell_rank(const RandomSource& src, Vertex center_id) {
    if (src.fixture.ranks) {
        auto it = src.fixture.ranks->find(center_id);
        if (it != src.fixture.ranks->end()) return CellRank{0, it->second, center_id};
    }
    return CellRank{prf64(src.seed, "rank", center_id, 0), prf64(src.seed, "rank", center_id, 1),
                    center_id};
}

inline bool is_marked(const RandomSource& src, const Params& par, Vertex center_id) {
    if (src.fixture.marks) return src.fixture.marks->count(center_id) > 0;
    return prf_bernoulli(src.seed, "mark", center_id, par.p);
}

// Exponential shift radius r_v = -ln(U)/beta with U uniform in (0,1].
inline double exp_radius(const RandomSource& src, const Params& par, Vertex v) {
    if (v >= par.n) throw std::invalid_argument("vertex out of range");
    if (src.fixture.radii) {
        auto it = src.fixture.radii->find(v);
        if (it != src.fixture.radii->end()) return it->second;
    }
    double u = uniform01_positive(prf64(src.seed, "en", v));
    return -std::log(u) / par.beta;
}

}  // namespace lssg

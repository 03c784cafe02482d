#pragma once

// Shared builders, random corpus generators, and independent oracles for the
// test suites. The random generators construct categories from families whose
// associativity holds by construction (free categories on acyclic quivers,
// posets, small groups, indiscrete categories) so every draw is valid; the
// validator is still run against each draw.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "relcat/core.hpp"

namespace testutil {

using namespace relcat;

// Deterministic 64-bit generator (xorshift*), platform-independent.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 0x2545F4914F6CDD1Dull;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    bool coin() { return (next() & 1) != 0; }
};

inline FinCat point_cat() {
    FinCatBuilder b;
    b.add_object("pt");
    b.add_morphism("id_pt", "pt", "pt");
    b.set_identity("pt", "id_pt");
    b.set_compose("id_pt", "id_pt", "id_pt");
    return b.finish();
}

inline FinCat walking_arrow() {
    FinCatBuilder b;
    b.add_object("0");
    b.add_object("1");
    b.add_morphism("id0", "0", "0");
    b.add_morphism("id1", "1", "1");
    b.add_morphism("a", "0", "1");
    b.set_identity("0", "id0");
    b.set_identity("1", "id1");
    b.set_compose("id0", "id0", "id0");
    b.set_compose("id1", "id1", "id1");
    b.set_compose("a", "id0", "a");
    b.set_compose("id1", "a", "a");
    return b.finish();
}

inline FinCat bz_n(int n) {  // cyclic group of order n as a one-object category
    FinCatBuilder b;
    b.add_object("x");
    for (int i = 0; i < n; ++i) b.add_morphism("g" + std::to_string(i), "x", "x");
    b.set_identity("x", "g0");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.set_compose("g" + std::to_string(i), "g" + std::to_string(j),
                          "g" + std::to_string((i + j) % n));
    return b.finish();
}

inline FinCat discrete_cat(int n) {
    FinCatBuilder b;
    for (int i = 0; i < n; ++i) b.add_object("o" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        b.add_morphism("id" + std::to_string(i), "o" + std::to_string(i), "o" + std::to_string(i));
    for (int i = 0; i < n; ++i) b.set_identity("o" + std::to_string(i), "id" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        b.set_compose("id" + std::to_string(i), "id" + std::to_string(i), "id" + std::to_string(i));
    return b.finish();
}

inline FinCat indiscrete_cat(int n) {
    FinCatBuilder b;
    auto on = [](int i) { return "o" + std::to_string(i); };
    auto mn = [](int i, int j) { return "m" + std::to_string(i) + "_" + std::to_string(j); };
    for (int i = 0; i < n; ++i) b.add_object(on(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.add_morphism(mn(i, j), on(i), on(j));
    for (int i = 0; i < n; ++i) b.set_identity(on(i), mn(i, i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) b.set_compose(mn(j, k), mn(i, j), mn(i, k));
    return b.finish();
}

inline FinCat chain_poset(int n) {  // the poset 0 < 1 < ... < n
    FinCatBuilder b;
    auto on = [](int i) { return std::to_string(i); };
    auto mn = [](int i, int j) { return "a" + std::to_string(i) + "_" + std::to_string(j); };
    for (int i = 0; i <= n; ++i) b.add_object(on(i));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) b.add_morphism(mn(i, j), on(i), on(j));
    for (int i = 0; i <= n; ++i) b.set_identity(on(i), mn(i, i));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) b.set_compose(mn(j, k), mn(i, j), mn(i, k));
    return b.finish();
}

inline FinCat parallel_pair() {
    FinCatBuilder b;
    b.add_object("x");
    b.add_object("y");
    b.add_morphism("idx", "x", "x");
    b.add_morphism("idy", "y", "y");
    b.add_morphism("f", "x", "y");
    b.add_morphism("g", "x", "y");
    b.set_identity("x", "idx");
    b.set_identity("y", "idy");
    b.set_compose("idx", "idx", "idx");
    b.set_compose("idy", "idy", "idy");
    b.set_compose("f", "idx", "f");
    b.set_compose("idy", "f", "f");
    b.set_compose("g", "idx", "g");
    b.set_compose("idy", "g", "g");
    return b.finish();
}

inline Functor collapse_to_point(const FinCat& c) {
    Functor f;
    f.domain = c;
    f.codomain = point_cat();
    f.omap.assign(c.nobj(), 0);
    f.mmap.assign(c.nmor(), 0);
    return f;
}

/// Poset category from a random DAG (transitively closed), <= max_obj
/// objects. Morphism count is the size of the reflexive-transitive relation.
inline FinCat random_poset(Rng& rng, int max_obj, int max_mor) {
    for (;;) {
        int n = 1 + rng.below(max_obj);
        std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i) rel[i][i] = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(3) == 0) rel[i][j] = 1;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (rel[i][k] && rel[k][j]) rel[i][j] = 1;
        int count = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) count += rel[i][j];
        if (count > max_mor) continue;
        FinCatBuilder b;
        auto on = [](int i) { return "p" + std::to_string(i); };
        auto mn = [](int i, int j) { return "r" + std::to_string(i) + "_" + std::to_string(j); };
        for (int i = 0; i < n; ++i) b.add_object(on(i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rel[i][j]) b.add_morphism(mn(i, j), on(i), on(j));
        for (int i = 0; i < n; ++i) b.set_identity(on(i), mn(i, i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (rel[i][j] && rel[j][k]) b.set_compose(mn(j, k), mn(i, j), mn(i, k));
        return b.finish();
    }
}

/// Free category on a random acyclic quiver: morphisms are paths,
/// composition is concatenation. Retries until the path count fits.
inline FinCat random_free_category(Rng& rng, int max_obj, int max_mor) {
    for (;;) {
        int n = 1 + rng.below(max_obj);
        std::vector<std::array<int, 2>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (rng.below(3) == 0) edges.push_back({i, j});
                if (edges.size() > 6) break;
            }
        // enumerate all paths (vertex sequences are acyclic so this halts)
        struct Path {
            int src, dst;
            std::vector<int> edge_ids;
        };
        std::vector<Path> paths;
        for (int i = 0; i < n; ++i) paths.push_back({i, i, {}});
        std::size_t head = 0;
        bool too_many = false;
        while (head < paths.size()) {
            Path p = paths[head++];
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (edges[e][0] == p.dst) {
                    Path q = p;
                    q.dst = edges[e][1];
                    q.edge_ids.push_back(static_cast<int>(e));
                    paths.push_back(q);
                    if (static_cast<int>(paths.size()) > max_mor) {
                        too_many = true;
                        break;
                    }
                }
            if (too_many) break;
        }
        if (too_many) continue;
        FinCatBuilder b;
        auto on = [](int i) { return "v" + std::to_string(i); };
        auto pn = [](const Path& p) {
            if (p.edge_ids.empty()) return "e" + std::to_string(p.src);
            std::string s = "w";
            for (int e : p.edge_ids) s += "_" + std::to_string(e);
            return s;
        };
        for (int i = 0; i < n; ++i) b.add_object(on(i));
        for (const auto& p : paths) b.add_morphism(pn(p), on(p.src), on(p.dst));
        for (int i = 0; i < n; ++i) b.set_identity(on(i), "e" + std::to_string(i));
        for (const auto& g : paths)
            for (const auto& f : paths) {
                if (f.dst != g.src) continue;
                Path h;
                h.src = f.src;
                h.dst = g.dst;
                h.edge_ids = f.edge_ids;
                h.edge_ids.insert(h.edge_ids.end(), g.edge_ids.begin(), g.edge_ids.end());
                b.set_compose(pn(g), pn(f), pn(h));
            }
        return b.finish();
    }
}

/// Mixed random corpus draw within the given bounds.
inline FinCat random_category(Rng& rng, int max_obj = 5, int max_mor = 14) {
    switch (rng.below(6)) {
    case 0: return random_poset(rng, max_obj, max_mor);
    case 1: return random_free_category(rng, max_obj, max_mor);
    case 2: return indiscrete_cat(1 + rng.below(std::min(max_obj, 3)));
    case 3: return bz_n(2 + rng.below(2));
    case 4: return chain_poset(rng.below(std::min(max_obj - 1, 3)));
    default: return discrete_cat(1 + rng.below(max_obj));
    }
}

/// Random wide composition-closed marking: identities plus the closure of a
/// random arrow subset.
inline RelCat random_relcat(Rng& rng, int max_obj = 4, int max_mor = 10) {
    FinCat c = random_category(rng, max_obj, max_mor);
    RelCat r = relcat_with_identities(c);
    for (int m = 0; m < c.nmor(); ++m)
        if (rng.below(3) == 0) r.weq[m] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int g = 0; g < c.nmor(); ++g)
            for (int f = 0; f < c.nmor(); ++f) {
                if (!c.composable(g, f) || !r.weq[g] || !r.weq[f]) continue;
                if (!r.weq[c.compose(g, f)]) {
                    r.weq[c.compose(g, f)] = 1;
                    changed = true;
                }
            }
    }
    return r;
}

/// Independent oracle: number of length-n chains avoiding identity arrows,
/// by direct recursion over the composition table.
inline long long count_nondegenerate_chains(const FinCat& c, int n) {
    if (n == 0) return c.nobj();
    long long total = 0;
    auto rec = [&](auto&& self, int depth, int at) -> long long {
        if (depth == n) return 1;
        long long acc = 0;
        for (int m = 0; m < c.nmor(); ++m)
            if (c.src[m] == at && !c.is_identity(m)) acc += self(self, depth + 1, c.dst[m]);
        return acc;
    };
    for (int m = 0; m < c.nmor(); ++m)
        if (!c.is_identity(m)) total += rec(rec, 1, c.dst[m]);
    return total;
}

}  // namespace testutil

#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcat/parallel.hpp"
#include "relcat/sset.hpp"
#include "relcat/verdict.hpp"

namespace relcat {

using bigint = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<bigint>>;  // rows x cols

/// Normalized chain complex of a truncated simplicial set. Bases are the
/// nondegenerate simplices; boundaries drop faces that land on degenerate
/// cells. boundary[n] : C_n -> C_{n-1} (rows indexed by C_{n-1} basis).
struct ChainComplex {
    int top = 0;  // complex defined in degrees 0..top
    std::vector<std::vector<int>> basis;      // [n] -> cell indices in the sset
    std::vector<std::vector<int>> basis_pos;  // [n][cell] -> basis position or -1
    std::vector<IntMatrix> boundary;          // [n], n >= 1

    int rank(int n) const {
        return (n < 0 || n > top) ? 0 : static_cast<int>(basis[n].size());
    }
};

inline ChainComplex normalized_chains(const TruncSSet& x) {
    ChainComplex cc;
    cc.top = x.cap;
    cc.basis.resize(x.cap + 1);
    cc.basis_pos.resize(x.cap + 1);
    cc.boundary.resize(x.cap + 1);
    for (int n = 0; n <= x.cap; ++n) {
        cc.basis_pos[n].assign(x.size(n), -1);
        for (int i = 0; i < x.size(n); ++i)
            if (!x.degenerate[n][i]) {
                cc.basis_pos[n][i] = static_cast<int>(cc.basis[n].size());
                cc.basis[n].push_back(i);
            }
    }
    for (int n = 1; n <= x.cap; ++n) {
        cc.boundary[n].assign(cc.rank(n - 1), std::vector<bigint>(cc.rank(n), 0));
        for (int j = 0; j < cc.rank(n); ++j) {
            int cell = cc.basis[n][j];
            for (int k = 0; k <= n; ++k) {
                int f = x.d(n, cell, k);
                int row = cc.basis_pos[n - 1][f];
                if (row < 0) continue;  // degenerate face contributes nothing
                if (k % 2 == 0)
                    cc.boundary[n][row][j] += 1;
                else
                    cc.boundary[n][row][j] -= 1;
            }
        }
    }
    // ∂∂ = 0, verified at construction.
    for (int n = 2; n <= x.cap; ++n) {
        for (int j = 0; j < cc.rank(n); ++j)
            for (int i = 0; i < cc.rank(n - 2); ++i) {
                bigint acc = 0;
                for (int t = 0; t < cc.rank(n - 1); ++t)
                    acc += cc.boundary[n - 1][i][t] * cc.boundary[n][t][j];
                if (acc != 0) throw std::logic_error("normalized_chains: dd != 0");
            }
    }
    return cc;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Invariant factors d_1 | d_2 | ... (positive, may include 1) of an integer
/// matrix, via row/column reduction with minimal-absolute-value pivoting.
inline std::vector<bigint> smith_invariants(IntMatrix a) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<bigint> inv;
    std::size_t r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // pick nonzero entry of minimal |value| in the working block
        std::size_t pr = r0, pc = c0;
        bigint best = 0;
        for (std::size_t i = r0; i < rows; ++i)
            for (std::size_t j = c0; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                bigint v = abs(a[i][j]);
                if (best == 0 || v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (best == 0) break;
        std::swap(a[r0], a[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][c0], a[i][pc]);

        bool clean = true;
        for (std::size_t i = r0 + 1; i < rows; ++i) {
            if (a[i][c0] == 0) continue;
            bigint q = a[i][c0] / a[r0][c0];
            if (q != 0)
                for (std::size_t j = c0; j < cols; ++j) a[i][j] -= q * a[r0][j];
            if (a[i][c0] != 0) clean = false;
        }
        for (std::size_t j = c0 + 1; j < cols; ++j) {
            if (a[r0][j] == 0) continue;
            bigint q = a[r0][j] / a[r0][c0];
            if (q != 0)
                for (std::size_t i = r0; i < rows; ++i) a[i][j] -= q * a[i][c0];
            if (a[r0][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders entered the block; repick pivot

        // pivot must divide the rest of the block, else absorb a bad entry
        bool divides = true;
        for (std::size_t i = r0 + 1; i < rows && divides; ++i)
            for (std::size_t j = c0 + 1; j < cols && divides; ++j)
                if (a[i][j] % a[r0][c0] != 0) {
                    for (std::size_t t = c0; t < cols; ++t) a[r0][t] += a[i][t];
                    divides = false;
                }
        if (!divides) continue;
        inv.push_back(abs(a[r0][c0]));
        ++r0;
        ++c0;
    }
    return inv;
}

inline int matrix_rank(const IntMatrix& a) {
    return static_cast<int>(smith_invariants(a).size());
}

/// Finitely generated abelian group in normal form: Z^betti + sum Z/t_i with
/// t_1 | t_2 | ... and every t_i > 1.
struct AbelianGroup {
    int betti = 0;
    std::vector<bigint> torsion;

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
    std::string describe() const {
        if (trivial()) return "0";
        std::string s;
        if (betti > 0) s = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
        for (const auto& t : torsion) {
            if (!s.empty()) s += "+";
            s += "Z/" + t.str();
        }
        return s;
    }
};

/// Direct sum, renormalized to a divisibility chain.
inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup r;
    r.betti = a.betti + b.betti;
    // renormalize torsion via SNF of a diagonal matrix
    std::vector<bigint> all = a.torsion;
    all.insert(all.end(), b.torsion.begin(), b.torsion.end());
    if (!all.empty()) {
        IntMatrix diag(all.size(), std::vector<bigint>(all.size(), 0));
        for (std::size_t i = 0; i < all.size(); ++i) diag[i][i] = all[i];
        for (auto& d : smith_invariants(diag))
            if (d > 1) r.torsion.push_back(d);
    }
    return r;
}

/// Tensor product of f.g. abelian groups.
inline AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup r;
    r.betti = a.betti * b.betti;
    std::vector<bigint> parts;
    for (const auto& t : a.torsion)
        for (int i = 0; i < b.betti; ++i) parts.push_back(t);
    for (const auto& t : b.torsion)
        for (int i = 0; i < a.betti; ++i) parts.push_back(t);
    for (const auto& t : a.torsion)
        for (const auto& u : b.torsion) parts.push_back(gcd(t, u));
    AbelianGroup tor{0, {}};
    for (const auto& p : parts)
        if (p > 1) tor = direct_sum(tor, AbelianGroup{0, {p}});
    return direct_sum(AbelianGroup{r.betti, {}}, tor);
}

/// Tor(A, B) for f.g. abelian groups: torsion parts pair off by gcd.
inline AbelianGroup tor_product(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup r;
    for (const auto& t : a.torsion)
        for (const auto& u : b.torsion) {
            bigint g = gcd(t, u);
            if (g > 1) r = direct_sum(r, AbelianGroup{0, {g}});
        }
    return r;
}

/// Integral homology per degree.
struct HomologyReport {
    int upto = 0;
    std::vector<AbelianGroup> groups;  // H_0 .. H_upto

    const AbelianGroup& h(int n) const { return groups[n]; }
    bool reduced_trivial_in(int lo, int hi) const {
        for (int n = std::max(lo, 1); n <= hi; ++n)
            if (!groups[n].trivial()) return false;
        return true;
    }
};

/// H_n for n <= upto with exact integer arithmetic. Requires upto < cap so
/// that the boundary out of degree upto+1 is available.
inline HomologyReport homology(const TruncSSet& x, int upto) {
    if (upto > x.cap - 1)
        throw std::invalid_argument("homology: need cap >= upto+1 (cap " + std::to_string(x.cap) +
                                    ", upto " + std::to_string(upto) + ")");
    if (upto < 0) throw std::invalid_argument("homology: negative degree");
    ChainComplex cc = normalized_chains(x);
    HomologyReport rep;
    rep.upto = upto;
    rep.groups.resize(upto + 1);
    std::vector<std::vector<bigint>> inv(upto + 2);
    parallel_for(static_cast<std::size_t>(upto) + 2, [&](std::size_t n) {
        if (n >= 1 && static_cast<int>(n) <= cc.top) inv[n] = smith_invariants(cc.boundary[n]);
    });
    for (int n = 0; n <= upto; ++n) {
        int rank_dn = n == 0 ? 0 : static_cast<int>(inv[n].size());
        int rank_dn1 = static_cast<int>(inv[n + 1].size());
        rep.groups[n].betti = cc.rank(n) - rank_dn - rank_dn1;
        for (const auto& d : inv[n + 1])
            if (d > 1) rep.groups[n].torsion.push_back(d);
    }
    return rep;
}

/// Vertex components under the 1-skeleton edge relation. cap >= 1 required.
inline std::vector<int> pi0(const TruncSSet& x) {
    if (x.cap < 1) throw std::invalid_argument("pi0: cap must be >= 1");
    std::vector<int> uf(x.size(0));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    for (int e = 0; e < x.size(1); ++e) {
        int a = find(x.d(1, e, 0)), b = find(x.d(1, e, 1));
        if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> comp(x.size(0));
    std::map<int, int> renum;
    for (int v = 0; v < x.size(0); ++v) {
        int r = find(v);
        auto it = renum.find(r);
        if (it == renum.end()) {
            int id = static_cast<int>(renum.size());
            renum[r] = id;
            comp[v] = id;
        } else {
            comp[v] = it->second;
        }
    }
    return comp;
}

inline int pi0_count(const TruncSSet& x) {
    auto c = pi0(x);
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

/// Full subcomplex spanned by the vertices of one component.
inline TruncSSet component_of(const TruncSSet& x, int basepoint) {
    std::vector<int> comp = pi0(x);
    int want = comp[basepoint];
    // a simplex belongs iff its 0-th vertex does; all vertices of a simplex
    // lie in one component, via the edge path along its spine
    std::vector<std::vector<int>> keep(x.cap + 1), newidx(x.cap + 1);
    auto vertex0 = [&](int n, int i) {
        int c = i;
        for (int t = n; t >= 1; --t) c = x.d(t, c, t);  // iterated last-vertex drop keeps vertex 0
        return c;
    };
    SSetBuilder b(x.cap);
    for (int n = 0; n <= x.cap; ++n) {
        newidx[n].assign(x.size(n), -1);
        for (int i = 0; i < x.size(n); ++i)
            if (comp[vertex0(n, i)] == want) {
                newidx[n][i] = b.add_cell(n, x.cells[n][i]);
                keep[n].push_back(i);
            }
    }
    for (int n = 1; n <= x.cap; ++n)
        for (int i : keep[n])
            for (int k = 0; k <= n; ++k) b.set_face(n, newidx[n][i], k, newidx[n - 1][x.d(n, i, k)]);
    for (int n = 0; n < x.cap; ++n)
        for (int i : keep[n])
            for (int k = 0; k <= n; ++k)
                b.set_degen(n, newidx[n][i], k, newidx[n + 1][x.s(n, i, k)]);
    return b.finish();
}

// ---------------------------------------------------------------------------
// Edge-path group and bounded Tietze simplification
// ---------------------------------------------------------------------------

/// Finite presentation; relator letters are generator index+1, negatives are
/// inverses.
struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> relators;
};

/// Edge-path presentation of pi_1 at a basepoint: generators are the
/// nondegenerate edges of the component outside a spanning tree, relators
/// come from the nondegenerate 2-simplices (d2 then d0 equals d1).
inline GroupPresentation edge_path_group(const TruncSSet& x, int basepoint) {
    if (x.cap < 2) throw std::invalid_argument("edge_path_group: cap must be >= 2");
    if (basepoint < 0 || basepoint >= x.size(0))
        throw std::invalid_argument("edge_path_group: basepoint not a vertex");
    std::vector<int> comp = pi0(x);
    int want = comp[basepoint];

    // spanning tree by BFS over vertices, scanning edges in index order
    std::vector<int> parent_edge(x.size(0), -1);
    std::vector<char> in_tree_edge(x.size(1), 0), seen(x.size(0), 0);
    std::vector<std::vector<std::pair<int, int>>> adj(x.size(0));  // (neighbor, edge)
    for (int e = 0; e < x.size(1); ++e) {
        if (x.degenerate[1][e]) continue;
        int a = x.d(1, e, 1), b = x.d(1, e, 0);  // edge a -> b
        if (comp[a] != want) continue;
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    std::vector<int> queue{basepoint};
    seen[basepoint] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (auto [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                in_tree_edge[e] = 1;
                parent_edge[w] = e;
                queue.push_back(w);
            }
    }

    GroupPresentation p;
    std::vector<int> gen_of_edge(x.size(1), 0);  // 0 = trivial word; else +-(index+1)
    for (int e = 0; e < x.size(1); ++e) {
        if (x.degenerate[1][e] || in_tree_edge[e]) continue;
        if (comp[x.d(1, e, 1)] != want) continue;
        gen_of_edge[e] = static_cast<int>(p.generators.size()) + 1;
        p.generators.push_back(x.cells[1][e]);
    }
    for (int t = 0; t < x.size(2); ++t) {
        if (x.degenerate[2][t]) continue;
        int e01 = x.d(2, t, 2), e12 = x.d(2, t, 0), e02 = x.d(2, t, 1);
        if (comp[x.d(1, e01, 1)] != want) continue;
        std::vector<int> w;
        auto push = [&](int e, bool inverse) {
            if (x.degenerate[1][e] || gen_of_edge[e] == 0) return;
            w.push_back(inverse ? -gen_of_edge[e] : gen_of_edge[e]);
        };
        push(e01, false);
        push(e12, false);
        push(e02, true);
        if (!w.empty()) p.relators.push_back(std::move(w));
    }
    return p;
}

inline std::string word_to_string(const GroupPresentation& p, const std::vector<int>& w) {
    std::string s;
    for (int l : w) {
        if (!s.empty()) s += ".";
        s += (l > 0 ? "" : "~") + std::to_string(std::abs(l) - 1);
    }
    return s.empty() ? "1" : s;
}

/// Abelianization as an f.g. abelian group (SNF of the exponent matrix).
inline AbelianGroup abelianization(const GroupPresentation& p) {
    std::size_t g = p.generators.size();
    IntMatrix m(g, std::vector<bigint>(std::max<std::size_t>(p.relators.size(), 1), 0));
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (int l : p.relators[r]) m[std::abs(l) - 1][r] += (l > 0 ? 1 : -1);
    std::vector<bigint> inv = smith_invariants(m);
    AbelianGroup a;
    a.betti = static_cast<int>(g - inv.size());
    for (const auto& d : inv)
        if (d > 1) a.torsion.push_back(d);
    return a;
}

namespace detail {

inline void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    for (int l : w) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    // cyclic reduction
    while (out.size() >= 2 && out.front() == -out.back()) {
        out.erase(out.begin());
        out.pop_back();
    }
    w = std::move(out);
}

inline int occurrences(const std::vector<int>& w, int gen) {
    int k = 0;
    for (int l : w)
        if (std::abs(l) == gen) ++k;
    return k;
}

/// Substitute gen := rep (word) in w; inverse occurrences get reversed rep.
inline std::vector<int> substitute(const std::vector<int>& w, int gen,
                                   const std::vector<int>& rep) {
    std::vector<int> out;
    for (int l : w) {
        if (std::abs(l) != gen) {
            out.push_back(l);
        } else if (l > 0) {
            out.insert(out.end(), rep.begin(), rep.end());
        } else {
            for (auto it = rep.rbegin(); it != rep.rend(); ++it) out.push_back(-*it);
        }
    }
    free_reduce(out);
    return out;
}

}  // namespace detail

/// Bounded Tietze simplification. Pass = empty presentation reached within
/// the effort budget; Fail = nontrivial abelianization (finite witness);
/// otherwise Inconclusive. Triviality is undecidable, so the bound is the
/// honesty mechanism.
inline Verdict is_trivial_group(const GroupPresentation& p0, int effort) {
    std::string bounds = "effort=" + std::to_string(effort);
    GroupPresentation p = p0;
    std::vector<char> alive(p.generators.size(), 1);
    int alive_count = static_cast<int>(p.generators.size());
    for (auto& r : p.relators) detail::free_reduce(r);

    const std::size_t max_len = 4096;
    int steps = 0;
    bool progress = true;
    while (progress && steps < effort) {
        progress = false;
        // drop empty relators
        std::erase_if(p.relators, [](const std::vector<int>& r) { return r.empty(); });
        // find a relator with a generator occurring exactly once in it
        int pick_rel = -1, pick_gen = 0;
        std::size_t best_len = max_len + 1;
        for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
            for (int l : p.relators[ri]) {
                int g = std::abs(l);
                if (detail::occurrences(p.relators[ri], g) == 1 &&
                    p.relators[ri].size() < best_len) {
                    pick_rel = static_cast<int>(ri);
                    pick_gen = g;
                    best_len = p.relators[ri].size();
                }
            }
        }
        if (pick_rel >= 0) {
            // r = a x b  =>  x = a^{-1} b^{-1} rotated; build replacement word
            std::vector<int> r = p.relators[pick_rel];
            // rotate so the unique occurrence of pick_gen is first
            std::size_t at = 0;
            while (std::abs(r[at]) != pick_gen) ++at;
            std::rotate(r.begin(), r.begin() + at, r.end());
            std::vector<int> rep;  // word equal to pick_gen
            if (r[0] > 0) {
                for (auto it = r.rbegin(); it != r.rend() - 1; ++it) rep.push_back(-*it);
            } else {
                rep.assign(r.begin() + 1, r.end());
            }
            p.relators.erase(p.relators.begin() + pick_rel);
            bool too_long = false;
            for (auto& w : p.relators) {
                w = detail::substitute(w, pick_gen, rep);
                if (w.size() > max_len) too_long = true;
            }
            if (too_long)
                return Verdict::inconclusive("relator length bound exceeded during elimination",
                                             bounds);
            alive[pick_gen - 1] = 0;
            --alive_count;
            ++steps;
            progress = true;
            continue;
        }
        // dedupe relators (up to inversion)
        std::sort(p.relators.begin(), p.relators.end());
        p.relators.erase(std::unique(p.relators.begin(), p.relators.end()), p.relators.end());
        ++steps;
    }
    if (alive_count == 0 && p.relators.empty()) return Verdict::pass(bounds);

    AbelianGroup ab = abelianization(p0);
    if (!ab.trivial()) return Verdict::fail("abelianization " + ab.describe(), bounds);
    return Verdict::inconclusive(
        "Tietze budget exhausted with " + std::to_string(alive_count) + " generators, " +
            std::to_string(p.relators.size()) + " relators left",
        bounds);
}

// ---------------------------------------------------------------------------
// Certified weak contractibility
// ---------------------------------------------------------------------------

/// Pass iff nonempty, connected, trivial edge-path group (bounded check) and
/// vanishing reduced homology through degree `upto`. The empty space fails.
inline Verdict weakly_contractible(const TruncSSet& x, int upto, int effort) {
    std::string bounds =
        "cap=" + std::to_string(x.cap) + " upto=" + std::to_string(upto) + " effort=" + std::to_string(effort);
    if (x.cap < upto + 1)
        throw std::invalid_argument("weakly_contractible: need cap >= upto+1");
    if (x.empty()) return Verdict::fail("empty simplicial set", bounds);
    int comps = pi0_count(x);
    if (comps != 1)
        return Verdict::fail("pi0 has " + std::to_string(comps) + " classes", bounds);
    if (upto >= 1) {
        HomologyReport h = homology(x, upto);
        for (int n = 1; n <= upto; ++n)
            if (!h.groups[n].trivial())
                return Verdict::fail("H_" + std::to_string(n) + " = " + h.groups[n].describe(),
                                     bounds);
    }
    if (x.cap < 2)
        return Verdict::inconclusive("cap < 2: fundamental group not examined", bounds);
    Verdict pi1 = is_trivial_group(edge_path_group(x, 0), effort);
    if (pi1.is_fail())
        return Verdict::fail("pi1 nontrivial: " + pi1.witness, bounds);
    if (pi1.is_inconclusive()) return Verdict::inconclusive("pi1: " + pi1.reason, bounds);
    return Verdict::pass(bounds);
}

}  // namespace relcat

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcat/parallel.hpp"
#include "relcat/verdict.hpp"

namespace relcat {

/// A finite category given by a total composition table. Objects and
/// morphisms carry string names; all structure maps use dense indices.
/// Immutable after construction; empty categories are legal.
struct FinCat {
    std::vector<std::string> objects;
    std::vector<std::string> morphisms;
    std::vector<int> src, dst;    // per morphism
    std::vector<int> id_of;       // per object -> identity morphism
    std::vector<int> comp;        // comp[g*m+f] = g∘f, -1 if dst(f)!=src(g)

    int nobj() const { return static_cast<int>(objects.size()); }
    int nmor() const { return static_cast<int>(morphisms.size()); }

    int compose(int g, int f) const { return comp[static_cast<std::size_t>(g) * nmor() + f]; }
    bool composable(int g, int f) const { return dst[f] == src[g]; }
    bool is_identity(int m) const { return id_of[src[m]] == m; }

    int find_object(const std::string& name) const {
        for (int i = 0; i < nobj(); ++i)
            if (objects[i] == name) return i;
        return -1;
    }
    int find_morphism(const std::string& name) const {
        for (int i = 0; i < nmor(); ++i)
            if (morphisms[i] == name) return i;
        return -1;
    }

    /// Two-sided inverse, or -1.
    int inverse_of(int m) const {
        for (int n = 0; n < nmor(); ++n) {
            if (src[n] != dst[m] || dst[n] != src[m]) continue;
            if (compose(n, m) == id_of[src[m]] && compose(m, n) == id_of[dst[m]]) return n;
        }
        return -1;
    }
    bool is_iso(int m) const { return inverse_of(m) >= 0; }

    std::vector<int> hom(int x, int y) const {
        std::vector<int> out;
        for (int m = 0; m < nmor(); ++m)
            if (src[m] == x && dst[m] == y) out.push_back(m);
        return out;
    }
};

/// Incremental construction with name-based wiring; finish() freezes the
/// composition table (unset composable pairs stay -1 and fail validate()).
class FinCatBuilder {
public:
    int add_object(const std::string& name) {
        if (oindex_.count(name)) throw std::invalid_argument("duplicate object: " + name);
        oindex_[name] = cat_.nobj();
        cat_.objects.push_back(name);
        return cat_.nobj() - 1;
    }
    int add_morphism(const std::string& name, const std::string& s, const std::string& d) {
        if (mindex_.count(name)) throw std::invalid_argument("duplicate morphism: " + name);
        int si = object(s), di = object(d);
        mindex_[name] = cat_.nmor();
        cat_.morphisms.push_back(name);
        cat_.src.push_back(si);
        cat_.dst.push_back(di);
        return cat_.nmor() - 1;
    }
    void set_identity(const std::string& obj, const std::string& mor) {
        identities_.emplace_back(object(obj), morphism(mor));
    }
    void set_compose(const std::string& g, const std::string& f, const std::string& gf) {
        composites_.push_back({morphism(g), morphism(f), morphism(gf)});
    }
    void set_compose(int g, int f, int gf) { composites_.push_back({g, f, gf}); }

    int object(const std::string& name) const {
        auto it = oindex_.find(name);
        if (it == oindex_.end()) throw std::invalid_argument("unknown object: " + name);
        return it->second;
    }
    int morphism(const std::string& name) const {
        auto it = mindex_.find(name);
        if (it == mindex_.end()) throw std::invalid_argument("unknown morphism: " + name);
        return it->second;
    }
    bool has_object(const std::string& name) const { return oindex_.count(name) != 0; }

    FinCat finish() {
        FinCat c = cat_;
        c.id_of.assign(c.nobj(), -1);
        for (auto [o, m] : identities_) {
            if (c.id_of[o] >= 0) throw std::invalid_argument("identity set twice for " + c.objects[o]);
            c.id_of[o] = m;
        }
        for (int o = 0; o < c.nobj(); ++o)
            if (c.id_of[o] < 0) throw std::invalid_argument("no identity for " + c.objects[o]);
        c.comp.assign(static_cast<std::size_t>(c.nmor()) * c.nmor(), -1);
        for (auto [g, f, gf] : composites_) {
            std::size_t k = static_cast<std::size_t>(g) * c.nmor() + f;
            if (!c.composable(g, f))
                throw std::invalid_argument("composition listed for non-composable pair (" +
                                            c.morphisms[g] + "," + c.morphisms[f] + ")");
            if (c.comp[k] >= 0)
                throw std::invalid_argument("composition listed twice for (" + c.morphisms[g] + "," +
                                            c.morphisms[f] + ")");
            c.comp[k] = gf;
        }
        return c;
    }

private:
    FinCat cat_;
    std::map<std::string, int> oindex_, mindex_;
    std::vector<std::pair<int, int>> identities_;
    struct Comp { int g, f, gf; };
    std::vector<Comp> composites_;
};

/// Checks all FinCat axioms exhaustively: totality of the table on composable
/// pairs, source/target of composites, unit laws, associativity.
inline Verdict validate(const FinCat& c) {
    const int m = c.nmor();
    for (int o = 0; o < c.nobj(); ++o) {
        int e = c.id_of[o];
        if (e < 0 || e >= m) return Verdict::fail("missing identity for object " + c.objects[o]);
        if (c.src[e] != o || c.dst[e] != o)
            return Verdict::fail("identity of " + c.objects[o] + " is not an endomorphism");
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            int gf = c.compose(g, f);
            if (!c.composable(g, f)) {
                if (gf != -1)
                    return Verdict::fail("composite defined for non-composable (" + c.morphisms[g] +
                                         "," + c.morphisms[f] + ")");
                continue;
            }
            if (gf < 0)
                return Verdict::fail("composite missing for (" + c.morphisms[g] + "," + c.morphisms[f] + ")");
            if (gf >= m) return Verdict::fail("composite out of range");
            if (c.src[gf] != c.src[f] || c.dst[gf] != c.dst[g])
                return Verdict::fail("compose(" + c.morphisms[g] + "," + c.morphisms[f] +
                                     ") has wrong source/target");
        }
    for (int f = 0; f < m; ++f) {
        if (c.compose(f, c.id_of[c.src[f]]) != f)
            return Verdict::fail("right unit law fails at " + c.morphisms[f]);
        if (c.compose(c.id_of[c.dst[f]], f) != f)
            return Verdict::fail("left unit law fails at " + c.morphisms[f]);
    }
    // Associativity fans out over h; each worker records the first violating
    // triple in its own slot and the merge picks the lexicographically first.
    std::vector<std::string> bad(m);
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t h) {
        for (int g = 0; g < m && bad[h].empty(); ++g) {
            if (!c.composable(static_cast<int>(h), g)) continue;
            for (int f = 0; f < m; ++f) {
                if (!c.composable(g, f)) continue;
                int left = c.compose(static_cast<int>(h), c.compose(g, f));
                int right = c.compose(c.compose(static_cast<int>(h), g), f);
                if (left != right) {
                    bad[h] = "(" + c.morphisms[h] + "," + c.morphisms[g] + "," + c.morphisms[f] + ")";
                    break;
                }
            }
        }
    });
    for (int h = 0; h < m; ++h)
        if (!bad[h].empty()) return Verdict::fail("associativity fails at " + bad[h]);
    return Verdict::pass();
}

/// Composable chain of length n >= 0; a length-0 chain is an object.
struct Chain {
    int start = -1;            // source object (meaningful for every length)
    std::vector<int> arrows;   // arrows[i]: from vertex i to vertex i+1

    int length() const { return static_cast<int>(arrows.size()); }

    int vertex(const FinCat& c, int i) const {
        return i == 0 ? start : c.dst[arrows[i - 1]];
    }
    int end(const FinCat& c) const { return vertex(c, length()); }

    bool valid(const FinCat& c) const {
        if (start < 0 || start >= c.nobj()) return false;
        int at = start;
        for (int a : arrows) {
            if (a < 0 || a >= c.nmor() || c.src[a] != at) return false;
            at = c.dst[a];
        }
        return true;
    }
    bool has_identity_component(const FinCat& c) const {
        for (int a : arrows)
            if (c.is_identity(a)) return true;
        return false;
    }

    /// Face: drop a vertex (compose at inner vertices). Requires n >= 1.
    Chain face(const FinCat& c, int i) const {
        int n = length();
        Chain r;
        if (i == 0) {
            r.start = vertex(c, 1);
            r.arrows.assign(arrows.begin() + 1, arrows.end());
        } else if (i == n) {
            r.start = start;
            r.arrows.assign(arrows.begin(), arrows.end() - 1);
        } else {
            r.start = start;
            r.arrows.assign(arrows.begin(), arrows.end());
            int merged = c.compose(arrows[i], arrows[i - 1]);
            r.arrows[i - 1] = merged;
            r.arrows.erase(r.arrows.begin() + i);
        }
        return r;
    }
    /// Degeneracy: insert the identity at vertex i.
    Chain degeneracy(const FinCat& c, int i) const {
        Chain r = *this;
        r.arrows.insert(r.arrows.begin() + i, c.id_of[vertex(c, i)]);
        return r;
    }

    std::string name(const FinCat& c) const {
        if (arrows.empty()) return "(" + c.objects[start] + ")";
        std::string s = "(";
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            if (i) s += ",";
            s += c.morphisms[arrows[i]];
        }
        return s + ")";
    }
    bool operator==(const Chain& o) const { return start == o.start && arrows == o.arrows; }
    bool operator<(const Chain& o) const {
        if (length() != o.length()) return length() < o.length();
        if (arrows != o.arrows) return arrows < o.arrows;
        return start < o.start;
    }
};

/// All length-n chains, ordered lexicographically by arrow indices.
inline std::vector<Chain> enumerate_chains(const FinCat& c, int n) {
    std::vector<Chain> out;
    if (n == 0) {
        for (int o = 0; o < c.nobj(); ++o) out.push_back({o, {}});
        return out;
    }
    Chain cur;
    auto rec = [&](auto&& self, int depth, int at) -> void {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (int a = 0; a < c.nmor(); ++a) {
            if (c.src[a] != at) continue;
            cur.arrows.push_back(a);
            if (depth == 0) cur.start = c.src[a];
            self(self, depth + 1, c.dst[a]);
            cur.arrows.pop_back();
        }
    };
    for (int o = 0; o < c.nobj(); ++o) {
        cur.start = o;
        rec(rec, 0, o);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Functor given by total object/morphism maps; domain and codomain are held
/// by value (categories here are small, and value semantics keeps derived
/// constructions self-contained).
struct Functor {
    FinCat domain, codomain;
    std::vector<int> omap, mmap;

    int on_object(int o) const { return omap[o]; }
    int on_morphism(int m) const { return mmap[m]; }
    Chain on_chain(const Chain& ch) const {
        Chain r;
        r.start = omap[ch.start];
        for (int a : ch.arrows) r.arrows.push_back(mmap[a]);
        return r;
    }
};

inline Verdict validate_functor(const Functor& f) {
    const FinCat& C = f.domain;
    const FinCat& D = f.codomain;
    if (static_cast<int>(f.omap.size()) != C.nobj() || static_cast<int>(f.mmap.size()) != C.nmor())
        return Verdict::fail("object/morphism map size mismatch");
    for (int o : f.omap)
        if (o < 0 || o >= D.nobj()) return Verdict::fail("object map out of range");
    for (int m : f.mmap)
        if (m < 0 || m >= D.nmor()) return Verdict::fail("morphism map out of range");
    for (int m = 0; m < C.nmor(); ++m) {
        if (D.src[f.mmap[m]] != f.omap[C.src[m]] || D.dst[f.mmap[m]] != f.omap[C.dst[m]])
            return Verdict::fail("source/target not preserved at " + C.morphisms[m]);
    }
    for (int o = 0; o < C.nobj(); ++o)
        if (f.mmap[C.id_of[o]] != D.id_of[f.omap[o]])
            return Verdict::fail("identity not preserved at " + C.objects[o]);
    for (int g = 0; g < C.nmor(); ++g)
        for (int fm = 0; fm < C.nmor(); ++fm) {
            if (!C.composable(g, fm)) continue;
            if (f.mmap[C.compose(g, fm)] != D.compose(f.mmap[g], f.mmap[fm]))
                return Verdict::fail("composition not preserved at (" + C.morphisms[g] + "," +
                                     C.morphisms[fm] + ")");
        }
    return Verdict::pass();
}

inline Functor identity_functor(const FinCat& c) {
    Functor f;
    f.domain = c;
    f.codomain = c;
    f.omap.resize(c.nobj());
    f.mmap.resize(c.nmor());
    for (int i = 0; i < c.nobj(); ++i) f.omap[i] = i;
    for (int i = 0; i < c.nmor(); ++i) f.mmap[i] = i;
    return f;
}

/// A finite relative category: base plus a wide marked subcategory.
struct RelCat {
    FinCat base;
    std::vector<char> weq;  // per morphism

    bool marked(int m) const { return weq[m] != 0; }
};

inline RelCat relcat_with_identities(const FinCat& c) {
    RelCat r{c, std::vector<char>(c.nmor(), 0)};
    for (int o = 0; o < c.nobj(); ++o) r.weq[c.id_of[o]] = 1;
    return r;
}

inline RelCat relcat_all_marked(const FinCat& c) {
    return RelCat{c, std::vector<char>(c.nmor(), 1)};
}

inline Verdict validate_relcat(const RelCat& r) {
    const FinCat& c = r.base;
    if (static_cast<int>(r.weq.size()) != c.nmor()) return Verdict::fail("marking size mismatch");
    for (int o = 0; o < c.nobj(); ++o)
        if (!r.marked(c.id_of[o]))
            return Verdict::fail("identity of " + c.objects[o] + " is not marked");
    for (int g = 0; g < c.nmor(); ++g)
        for (int f = 0; f < c.nmor(); ++f) {
            if (!c.composable(g, f) || !r.marked(g) || !r.marked(f)) continue;
            if (!r.marked(c.compose(g, f)))
                return Verdict::fail("marking not closed under composition at (" + c.morphisms[g] +
                                     "," + c.morphisms[f] + ")");
        }
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Derived categories
// ---------------------------------------------------------------------------

namespace detail {

/// Ladders sigma -> tau: tuples (u_0..u_n) with u_i * sigma_i = tau_i * u_{i-1}.
inline void enumerate_ladders(const FinCat& c, const Chain& sigma, const Chain& tau,
                              const std::vector<int>* allowed,  // optional per-component filter
                              std::vector<std::vector<int>>& out) {
    int n = sigma.length();
    std::vector<int> u(n + 1, -1);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n + 1) {
            out.push_back(u);
            return;
        }
        for (int m = 0; m < c.nmor(); ++m) {
            if (c.src[m] != sigma.vertex(c, i) || c.dst[m] != tau.vertex(c, i)) continue;
            if (allowed && !(*allowed)[m]) continue;
            if (i > 0 &&
                c.compose(m, sigma.arrows[i - 1]) != c.compose(tau.arrows[i - 1], u[i - 1]))
                continue;
            u[i] = m;
            self(self, i + 1);
        }
        u[i] = -1;
    };
    rec(rec, 0);
}

inline std::string ladder_name(const FinCat& c, const Chain& sigma, const Chain& tau,
                               const std::vector<int>& u) {
    std::string s = "(" + sigma.name(c) + ";";
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) s += ",";
        s += c.morphisms[u[i]];
    }
    return s + ";" + tau.name(c) + ")";
}

}  // namespace detail

/// The category C^[n] of length-n chains and commuting ladders,
/// with componentwise composition. C^[0] is C itself (relabeled).
inline FinCat arrow_category(const FinCat& c, int n) {
    if (n < 0) throw std::invalid_argument("arrow_category: n must be >= 0");
    std::vector<Chain> chains = enumerate_chains(c, n);
    FinCatBuilder b;
    for (const auto& ch : chains) b.add_object(ch.name(c));

    struct Lad { int so, to; std::vector<int> u; };
    std::vector<Lad> lads;
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t j = 0; j < chains.size(); ++j) {
            std::vector<std::vector<int>> us;
            detail::enumerate_ladders(c, chains[i], chains[j], nullptr, us);
            for (auto& u : us) {
                b.add_morphism(detail::ladder_name(c, chains[i], chains[j], u),
                               chains[i].name(c), chains[j].name(c));
                lads.push_back({static_cast<int>(i), static_cast<int>(j), std::move(u)});
            }
        }
    for (std::size_t i = 0; i < chains.size(); ++i) {
        std::vector<int> u(n + 1);
        for (int k = 0; k <= n; ++k) u[k] = c.id_of[chains[i].vertex(c, k)];
        b.set_identity(chains[i].name(c), detail::ladder_name(c, chains[i], chains[i], u));
    }
    for (std::size_t gi = 0; gi < lads.size(); ++gi)
        for (std::size_t fi = 0; fi < lads.size(); ++fi) {
            if (lads[fi].to != lads[gi].so) continue;
            std::vector<int> u(n + 1);
            for (int k = 0; k <= n; ++k) u[k] = c.compose(lads[gi].u[k], lads[fi].u[k]);
            b.set_compose(static_cast<int>(gi), static_cast<int>(fi),
                          b.morphism(detail::ladder_name(c, chains[lads[fi].so], chains[lads[gi].to], u)));
        }
    return b.finish();
}

/// Componentwise extension f^[n]: C^[n] -> D^[n]. The arrow categories are
/// rebuilt here, so the naming scheme ties the maps together.
inline Functor arrow_functor(const Functor& f, int n) {
    Functor r;
    r.domain = arrow_category(f.domain, n);
    r.codomain = arrow_category(f.codomain, n);
    std::vector<Chain> dom_chains = enumerate_chains(f.domain, n);
    r.omap.resize(r.domain.nobj());
    for (std::size_t i = 0; i < dom_chains.size(); ++i) {
        int oi = r.domain.find_object(dom_chains[i].name(f.domain));
        r.omap[oi] = r.codomain.find_object(f.on_chain(dom_chains[i]).name(f.codomain));
    }
    r.mmap.resize(r.domain.nmor());
    for (std::size_t i = 0; i < dom_chains.size(); ++i)
        for (std::size_t j = 0; j < dom_chains.size(); ++j) {
            std::vector<std::vector<int>> us;
            detail::enumerate_ladders(f.domain, dom_chains[i], dom_chains[j], nullptr, us);
            for (auto& u : us) {
                int mi = r.domain.find_morphism(
                    detail::ladder_name(f.domain, dom_chains[i], dom_chains[j], u));
                std::vector<int> fu(u.size());
                for (std::size_t k = 0; k < u.size(); ++k) fu[k] = f.mmap[u[k]];
                r.mmap[mi] = r.codomain.find_morphism(detail::ladder_name(
                    f.codomain, f.on_chain(dom_chains[i]), f.on_chain(dom_chains[j]), fu));
            }
        }
    return r;
}

/// Strict fiber of f^[n] over a length-n chain sigma: chains of the domain
/// mapping exactly to sigma, ladders mapping componentwise to identities.
/// Built directly (the ambient arrow category is never materialized).
inline FinCat strict_fiber(const Functor& f, const Chain& sigma) {
    const FinCat& C = f.domain;
    const FinCat& D = f.codomain;
    if (!sigma.valid(D)) throw std::invalid_argument("strict_fiber: invalid chain");
    int n = sigma.length();
    std::vector<Chain> fib;
    for (const auto& ch : enumerate_chains(C, n))
        if (f.on_chain(ch) == sigma) fib.push_back(ch);

    std::vector<int> vertical(C.nmor());
    for (int m = 0; m < C.nmor(); ++m) vertical[m] = D.is_identity(f.mmap[m]) ? 1 : 0;

    FinCatBuilder b;
    for (const auto& ch : fib) b.add_object(ch.name(C));
    struct Lad { int so, to; std::vector<int> u; };
    std::vector<Lad> lads;
    for (std::size_t i = 0; i < fib.size(); ++i)
        for (std::size_t j = 0; j < fib.size(); ++j) {
            std::vector<std::vector<int>> us;
            detail::enumerate_ladders(C, fib[i], fib[j], &vertical, us);
            for (auto& u : us) {
                bool exact = true;  // components must map to the identities of sigma's vertices
                for (int k = 0; k <= n; ++k)
                    if (f.mmap[u[k]] != D.id_of[sigma.vertex(D, k)]) exact = false;
                if (!exact) continue;
                b.add_morphism(detail::ladder_name(C, fib[i], fib[j], u), fib[i].name(C),
                               fib[j].name(C));
                lads.push_back({static_cast<int>(i), static_cast<int>(j), std::move(u)});
            }
        }
    for (std::size_t i = 0; i < fib.size(); ++i) {
        std::vector<int> u(n + 1);
        for (int k = 0; k <= n; ++k) u[k] = C.id_of[fib[i].vertex(C, k)];
        b.set_identity(fib[i].name(C), detail::ladder_name(C, fib[i], fib[i], u));
    }
    for (std::size_t gi = 0; gi < lads.size(); ++gi)
        for (std::size_t fi = 0; fi < lads.size(); ++fi) {
            if (lads[fi].to != lads[gi].so) continue;
            std::vector<int> u(n + 1);
            for (int k = 0; k <= n; ++k) u[k] = C.compose(lads[gi].u[k], lads[fi].u[k]);
            b.set_compose(static_cast<int>(gi), static_cast<int>(fi),
                          b.morphism(detail::ladder_name(C, fib[lads[fi].so], fib[lads[gi].to], u)));
        }
    return b.finish();
}

/// Essential fiber over an object x: pairs (c, theta: f(c) ~> x) and
/// morphisms u: c -> c' with theta' ∘ f(u) = theta.
inline FinCat essential_fiber(const Functor& f, int x) {
    const FinCat& C = f.domain;
    const FinCat& D = f.codomain;
    if (x < 0 || x >= D.nobj()) throw std::invalid_argument("essential_fiber: bad object");
    struct Ob { int c, theta; };
    std::vector<Ob> obs;
    FinCatBuilder b;
    auto ob_name = [&](int c, int theta) {
        return "(" + C.objects[c] + "," + D.morphisms[theta] + ")";
    };
    for (int c = 0; c < C.nobj(); ++c)
        for (int t = 0; t < D.nmor(); ++t) {
            if (D.src[t] != f.omap[c] || D.dst[t] != x || !D.is_iso(t)) continue;
            b.add_object(ob_name(c, t));
            obs.push_back({c, t});
        }
    struct Mo { int so, to, u; };
    std::vector<Mo> mos;
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = 0; j < obs.size(); ++j)
            for (int u = 0; u < C.nmor(); ++u) {
                if (C.src[u] != obs[i].c || C.dst[u] != obs[j].c) continue;
                if (D.compose(obs[j].theta, f.mmap[u]) != obs[i].theta) continue;
                b.add_morphism("(" + C.morphisms[u] + "," + D.morphisms[obs[i].theta] + "," +
                                   D.morphisms[obs[j].theta] + ")",
                               ob_name(obs[i].c, obs[i].theta), ob_name(obs[j].c, obs[j].theta));
                mos.push_back({static_cast<int>(i), static_cast<int>(j), u});
            }
    for (std::size_t i = 0; i < obs.size(); ++i)
        b.set_identity(ob_name(obs[i].c, obs[i].theta),
                       "(" + C.morphisms[C.id_of[obs[i].c]] + "," + D.morphisms[obs[i].theta] + "," +
                           D.morphisms[obs[i].theta] + ")");
    for (std::size_t gi = 0; gi < mos.size(); ++gi)
        for (std::size_t fi = 0; fi < mos.size(); ++fi) {
            if (mos[fi].to != mos[gi].so) continue;
            int u = C.compose(mos[gi].u, mos[fi].u);
            b.set_compose(static_cast<int>(gi), static_cast<int>(fi),
                          b.morphism("(" + C.morphisms[u] + "," +
                                     D.morphisms[obs[mos[fi].so].theta] + "," +
                                     D.morphisms[obs[mos[gi].to].theta] + ")"));
        }
    return b.finish();
}

/// Wide subcategory on a morphism mask. The mask must contain all identities
/// and be closed under composition.
inline FinCat wide_subcategory(const FinCat& c, const std::vector<char>& keep) {
    FinCatBuilder b;
    for (int o = 0; o < c.nobj(); ++o) b.add_object(c.objects[o]);
    std::vector<int> newidx(c.nmor(), -1);
    for (int m = 0; m < c.nmor(); ++m) {
        if (!keep[m]) continue;
        newidx[m] = b.add_morphism(c.morphisms[m], c.objects[c.src[m]], c.objects[c.dst[m]]);
    }
    for (int o = 0; o < c.nobj(); ++o) {
        if (newidx[c.id_of[o]] < 0)
            throw std::invalid_argument("wide_subcategory: identity not kept at " + c.objects[o]);
        b.set_identity(c.objects[o], c.morphisms[c.id_of[o]]);
    }
    for (int g = 0; g < c.nmor(); ++g)
        for (int f = 0; f < c.nmor(); ++f) {
            if (newidx[g] < 0 || newidx[f] < 0 || !c.composable(g, f)) continue;
            int gf = c.compose(g, f);
            if (newidx[gf] < 0)
                throw std::invalid_argument("wide_subcategory: mask not closed under composition");
            b.set_compose(newidx[g], newidx[f], newidx[gf]);
        }
    return b.finish();
}

/// Maximal subgroupoid K(C): the wide subcategory of invertible morphisms.
inline FinCat max_subgroupoid(const FinCat& c) {
    std::vector<char> keep(c.nmor(), 0);
    for (int m = 0; m < c.nmor(); ++m) keep[m] = c.is_iso(m) ? 1 : 0;
    return wide_subcategory(c, keep);
}

/// Marking pulled back from invertibility: weq = { a : f(a) iso }.
/// Always a valid RelCat since isomorphisms form a wide subcategory.
inline RelCat preimage_marking(const Functor& f) {
    RelCat r{f.domain, std::vector<char>(f.domain.nmor(), 0)};
    for (int m = 0; m < f.domain.nmor(); ++m) r.weq[m] = f.codomain.is_iso(f.mmap[m]) ? 1 : 0;
    return r;
}

/// Category of resolutions: objects are marked arrows w: a -> x with a in A,
/// morphisms are commuting squares (the full subcategory of C^[1] they span).
/// The returned functor projects (a, w: a -> x) to x and a square to its
/// second leg.
inline std::pair<FinCat, Functor> resolution_category(const RelCat& r, const std::vector<int>& A) {
    const FinCat& C = r.base;
    std::vector<char> inA(C.nobj(), 0);
    for (int a : A) {
        if (a < 0 || a >= C.nobj()) throw std::invalid_argument("resolution_category: bad object");
        inA[a] = 1;
    }
    std::vector<int> obs;  // marked arrows out of A
    for (int w = 0; w < C.nmor(); ++w)
        if (r.marked(w) && inA[C.src[w]]) obs.push_back(w);

    FinCatBuilder b;
    auto ob_name = [&](int w) { return "(" + C.objects[C.src[w]] + "," + C.morphisms[w] + ")"; };
    for (int w : obs) b.add_object(ob_name(w));
    struct Sq { int wi, wj, u, v; };
    std::vector<Sq> sqs;
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = 0; j < obs.size(); ++j)
            for (int u = 0; u < C.nmor(); ++u) {
                if (C.src[u] != C.src[obs[i]] || C.dst[u] != C.src[obs[j]]) continue;
                for (int v = 0; v < C.nmor(); ++v) {
                    if (C.src[v] != C.dst[obs[i]] || C.dst[v] != C.dst[obs[j]]) continue;
                    if (C.compose(obs[j], u) != C.compose(v, obs[i])) continue;
                    b.add_morphism("(" + C.morphisms[u] + "," + C.morphisms[v] + ";" + ob_name(obs[i]) +
                                       "->" + ob_name(obs[j]) + ")",
                                   ob_name(obs[i]), ob_name(obs[j]));
                    sqs.push_back({static_cast<int>(i), static_cast<int>(j), u, v});
                }
            }
    auto sq_name = [&](int wi, int wj, int u, int v) {
        return "(" + C.morphisms[u] + "," + C.morphisms[v] + ";" + ob_name(obs[wi]) + "->" +
               ob_name(obs[wj]) + ")";
    };
    for (std::size_t i = 0; i < obs.size(); ++i)
        b.set_identity(ob_name(obs[i]),
                       sq_name(static_cast<int>(i), static_cast<int>(i), C.id_of[C.src[obs[i]]],
                               C.id_of[C.dst[obs[i]]]));
    for (std::size_t gi = 0; gi < sqs.size(); ++gi)
        for (std::size_t fi = 0; fi < sqs.size(); ++fi) {
            if (sqs[fi].wj != sqs[gi].wi) continue;
            b.set_compose(static_cast<int>(gi), static_cast<int>(fi),
                          b.morphism(sq_name(sqs[fi].wi, sqs[gi].wj, C.compose(sqs[gi].u, sqs[fi].u),
                                             C.compose(sqs[gi].v, sqs[fi].v))));
        }
    FinCat tilde = b.finish();

    Functor proj;
    proj.domain = tilde;
    proj.codomain = C;
    proj.omap.resize(tilde.nobj());
    for (std::size_t i = 0; i < obs.size(); ++i) proj.omap[i] = C.dst[obs[i]];
    proj.mmap.resize(tilde.nmor());
    for (std::size_t i = 0; i < sqs.size(); ++i) proj.mmap[i] = sqs[i].v;
    return {std::move(tilde), std::move(proj)};
}

/// Product category with componentwise structure; cells named "(a|b)".
inline FinCat product_category(const FinCat& a, const FinCat& b) {
    FinCatBuilder bld;
    auto oname = [&](int i, int j) { return "(" + a.objects[i] + "|" + b.objects[j] + ")"; };
    auto mname = [&](int i, int j) { return "(" + a.morphisms[i] + "|" + b.morphisms[j] + ")"; };
    for (int i = 0; i < a.nobj(); ++i)
        for (int j = 0; j < b.nobj(); ++j) bld.add_object(oname(i, j));
    for (int i = 0; i < a.nmor(); ++i)
        for (int j = 0; j < b.nmor(); ++j)
            bld.add_morphism(mname(i, j), oname(a.src[i], b.src[j]), oname(a.dst[i], b.dst[j]));
    for (int i = 0; i < a.nobj(); ++i)
        for (int j = 0; j < b.nobj(); ++j)
            bld.set_identity(oname(i, j), mname(a.id_of[i], b.id_of[j]));
    auto midx = [&](int i, int j) { return i * b.nmor() + j; };
    for (int gi = 0; gi < a.nmor(); ++gi)
        for (int gj = 0; gj < b.nmor(); ++gj)
            for (int fi = 0; fi < a.nmor(); ++fi)
                for (int fj = 0; fj < b.nmor(); ++fj) {
                    if (!a.composable(gi, fi) || !b.composable(gj, fj)) continue;
                    bld.set_compose(midx(gi, gj), midx(fi, fj),
                                    midx(a.compose(gi, fi), b.compose(gj, fj)));
                }
    return bld.finish();
}

}  // namespace relcat

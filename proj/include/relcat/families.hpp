#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relcat/core.hpp"
#include "relcat/hammock.hpp"
#include "relcat/homotopy.hpp"
#include "relcat/keylemma.hpp"
#include "relcat/verdict.hpp"

namespace relcat {

/// Marked opfibration data: a functor of relative categories together with a
/// chosen cocartesian lift for every (object, arrow out of its image).
/// Lifts are user data, not searched; the audit verifies their properties.
struct MarkedOpfib {
    RelCat dom;  // (C, V)
    RelCat cod;  // (D, W)
    Functor f;   // on bases
    std::vector<int> lift;  // [c * D.nmor() + alpha] -> morphism of C, or -1

    int lift_of(int c, int alpha) const { return lift[c * cod.base.nmor() + alpha]; }
};

/// Unique factorization through a cocartesian lift: given lambda: c -> c'
/// over alpha and mu: c -> e over beta∘alpha, the morphism nu: c' -> e over
/// beta with nu∘lambda = mu, if unique.
inline std::optional<int> cocartesian_factor(const MarkedOpfib& of, int lambda, int mu, int beta) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    int found = -1;
    for (int nu = 0; nu < C.nmor(); ++nu) {
        if (C.src[nu] != C.dst[lambda] || C.dst[nu] != C.dst[mu]) continue;
        if (of.f.mmap[nu] != beta) continue;
        if (C.compose(nu, lambda) != mu) continue;
        if (found >= 0) return std::nullopt;  // not unique
        found = nu;
    }
    (void)D;
    if (found < 0) return std::nullopt;
    return found;
}

/// Exhaustive 1-categorical cocartesianness of a chosen lift.
inline Verdict is_cocartesian(const MarkedOpfib& of, int c, int alpha) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    int lambda = of.lift_of(c, alpha);
    if (lambda < 0) return Verdict::fail("no lift chosen for (" + C.objects[c] + "," + D.morphisms[alpha] + ")");
    if (C.src[lambda] != c) return Verdict::fail("lift does not start at " + C.objects[c]);
    if (of.f.mmap[lambda] != alpha)
        return Verdict::fail("lift of (" + C.objects[c] + "," + D.morphisms[alpha] +
                             ") does not project to the arrow");
    for (int mu = 0; mu < C.nmor(); ++mu) {
        if (C.src[mu] != c) continue;
        for (int beta = 0; beta < D.nmor(); ++beta) {
            if (D.src[beta] != D.dst[alpha]) continue;
            if (of.f.mmap[mu] != D.compose(beta, alpha)) continue;
            int count = 0;
            for (int nu = 0; nu < C.nmor(); ++nu) {
                if (C.src[nu] != C.dst[lambda] || C.dst[nu] != C.dst[mu]) continue;
                if (of.f.mmap[nu] != beta) continue;
                if (C.compose(nu, lambda) == mu) ++count;
            }
            if (count != 1)
                return Verdict::fail("factorization through lift(" + C.objects[c] + "," +
                                     D.morphisms[alpha] + ") for mu=" + C.morphisms[mu] +
                                     ", beta=" + D.morphisms[beta] + " has " +
                                     std::to_string(count) + " solutions");
        }
    }
    return Verdict::pass();
}

/// Strict fiber of the opfibration over an object of the base, with the
/// restricted marking.
inline RelCat fiber_relcat(const MarkedOpfib& of, int d) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    FinCatBuilder b;
    std::vector<int> objs, mors;
    for (int o = 0; o < C.nobj(); ++o)
        if (of.f.omap[o] == d) {
            b.add_object(C.objects[o]);
            objs.push_back(o);
        }
    for (int m = 0; m < C.nmor(); ++m)
        if (of.f.mmap[m] == D.id_of[d]) {
            b.add_morphism(C.morphisms[m], C.objects[C.src[m]], C.objects[C.dst[m]]);
            mors.push_back(m);
        }
    for (int o : objs) b.set_identity(C.objects[o], C.morphisms[C.id_of[o]]);
    for (std::size_t gi = 0; gi < mors.size(); ++gi)
        for (std::size_t fi = 0; fi < mors.size(); ++fi) {
            if (!C.composable(mors[gi], mors[fi])) continue;
            b.set_compose(static_cast<int>(gi), static_cast<int>(fi),
                          b.morphism(C.morphisms[C.compose(mors[gi], mors[fi])]));
        }
    FinCat fib = b.finish();
    RelCat r{fib, std::vector<char>(fib.nmor(), 0)};
    for (std::size_t i = 0; i < mors.size(); ++i) r.weq[i] = of.dom.marked(mors[i]) ? 1 : 0;
    return r;
}

/// Transport functor alpha_! : C_d -> C_{d'} along alpha, through the chosen
/// lifts. Requires the lift table to be total over the fiber.
inline Functor transport(const MarkedOpfib& of, int alpha) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    int d = D.src[alpha], d2 = D.dst[alpha];
    RelCat fd = fiber_relcat(of, d), fd2 = fiber_relcat(of, d2);
    Functor t;
    t.domain = fd.base;
    t.codomain = fd2.base;
    t.omap.resize(fd.base.nobj());
    t.mmap.resize(fd.base.nmor());
    for (int o = 0; o < fd.base.nobj(); ++o) {
        int c = C.find_object(fd.base.objects[o]);
        int lam = of.lift_of(c, alpha);
        if (lam < 0) throw std::invalid_argument("transport: missing lift");
        t.omap[o] = fd2.base.find_object(C.objects[C.dst[lam]]);
    }
    for (int m = 0; m < fd.base.nmor(); ++m) {
        int v = C.find_morphism(fd.base.morphisms[m]);
        int c0 = C.src[v], c1 = C.dst[v];
        int lam0 = of.lift_of(c0, alpha), lam1 = of.lift_of(c1, alpha);
        auto nu = cocartesian_factor(of, lam0, C.compose(lam1, v), D.id_of[d2]);
        if (!nu) throw std::invalid_argument("transport: factorization failed at " + C.morphisms[v]);
        t.mmap[m] = fd2.base.find_morphism(C.morphisms[*nu]);
    }
    return t;
}

namespace detail {

/// Apply a fiber functor to a zigzag; markings must be preserved by the
/// caller's hypotheses (condition 3).
inline Zigzag map_zigzag(const Functor& t, const Zigzag& z) {
    Zigzag r;
    r.src = t.omap[z.src];
    r.dst = t.omap[z.dst];
    for (const auto& s : z.word) r.word.push_back({t.mmap[s.arrow], s.backward});
    return reduce_zigzag(t.codomain, r);
}

/// Equivalence audit for a functor of relative categories at HoCat +
/// mapping-space level, within caps. Names entries under `prefix`.
inline void audit_localization_equivalence(Report& rep, const std::string& prefix, const RelCat& a,
                                           const RelCat& b, const Functor& t, int width, int height,
                                           int upto, int effort) {
    std::string bounds = "width=" + std::to_string(width) + " height=" + std::to_string(height) +
                         " upto=" + std::to_string(upto);
    HoCat ha = ho_localization(a, width);
    HoCat hb = ho_localization(b, width);

    // essential surjectivity: every target object isomorphic to some image
    {
        Verdict v = Verdict::pass(bounds);
        bool any_unstab = false;
        for (int y = 0; y < b.base.nobj(); ++y) {
            bool hit = false;
            for (int x = 0; x < a.base.nobj() && !hit; ++x) {
                int tx = t.omap[x];
                if (tx == y) { hit = true; break; }
                for (int cl = 0; cl < hb.classes(tx, y) && !hit; ++cl)
                    if (find_inverse_class(hb, tx, y, cl)) hit = true;
                if (!hb.hom(tx, y).stabilized) any_unstab = true;
            }
            if (!hit) {
                v = any_unstab ? Verdict::inconclusive(
                                     "object " + b.base.objects[y] +
                                         " not reached up to isomorphism (unstabilized hom-sets)",
                                     bounds)
                               : Verdict::fail("object " + b.base.objects[y] +
                                                   " not reached up to isomorphism",
                                               bounds);
                break;
            }
        }
        rep.add(prefix + "/essentially-surjective", v);
    }

    // full + faithful via the induced class map, per pair
    for (int x = 0; x < a.base.nobj(); ++x)
        for (int y = 0; y < a.base.nobj(); ++y) {
            std::string pair = "(" + a.base.objects[x] + "," + a.base.objects[y] + ")";
            const auto& hs = ha.hom(x, y);
            int tx = t.omap[x], ty = t.omap[y];
            const auto& ht = hb.hom(tx, ty);
            bool stab = hs.stabilized && ht.stabilized;
            std::vector<int> img(ha.classes(x, y), -1);
            bool overflow = false;
            for (std::size_t i = 0; i < hs.zigzags.size(); ++i) {
                Zigzag m = map_zigzag(t, hs.zigzags[i]);
                int cl = hb.class_of_zigzag(tx, ty, m);
                if (cl < 0) { overflow = true; continue; }
                if (img[hs.class_of[i]] >= 0 && img[hs.class_of[i]] != cl) overflow = true;
                img[hs.class_of[i]] = cl;
            }
            Verdict fullv = Verdict::pass(bounds), faithv = Verdict::pass(bounds);
            if (overflow) {
                fullv = Verdict::inconclusive("image zigzag escaped the width cap", bounds);
                faithv = fullv;
            } else {
                std::vector<char> hit(hb.classes(tx, ty), 0);
                for (int c : img)
                    if (c >= 0) hit[c] = 1;
                for (int c = 0; c < hb.classes(tx, ty); ++c)
                    if (!hit[c]) {
                        fullv = stab ? Verdict::fail("class " + std::to_string(c) + " of image pair not hit",
                                                     bounds)
                                     : Verdict::inconclusive("class not hit (unstabilized)", bounds);
                        break;
                    }
                for (std::size_t p = 0; p < img.size() && !faithv.is_fail(); ++p)
                    for (std::size_t q = p + 1; q < img.size(); ++q)
                        if (img[p] >= 0 && img[p] == img[q]) {
                            faithv = stab ? Verdict::fail("classes of " + pair + " merge in the image",
                                                          bounds)
                                          : Verdict::inconclusive("classes merge (unstabilized)", bounds);
                            break;
                        }
            }
            rep.add(prefix + "/full/" + pair, fullv);
            rep.add(prefix + "/faithful/" + pair, faithv);

            // mapping-space comparison: pi0 through the induced map plus
            // homology groups degreewise
            MappingSpaceTrunc ma = enumerate_hammocks(a, x, y, width, height);
            MappingSpaceTrunc mb = enumerate_hammocks(b, tx, ty, width, height);
            Verdict sv = Verdict::pass(bounds);
            int pa = ma.space.size(0) ? pi0_count(ma.space) : 0;
            int pb = mb.space.size(0) ? pi0_count(mb.space) : 0;
            if (pa != pb) {
                sv = stab ? Verdict::fail("pi0 " + std::to_string(pa) + " vs " + std::to_string(pb),
                                          bounds)
                          : Verdict::inconclusive("pi0 " + std::to_string(pa) + " vs " +
                                                      std::to_string(pb) + " (unstabilized)",
                                                  bounds);
            } else if (!ma.space.empty()) {
                HomologyReport da = homology(ma.space, upto);
                HomologyReport db = homology(mb.space, upto);
                for (int i = 0; i <= upto; ++i)
                    if (!(da.h(i) == db.h(i))) {
                        sv = Verdict::fail("H_" + std::to_string(i) + ": " + da.h(i).describe() +
                                               " vs " + db.h(i).describe(),
                                           bounds);
                        break;
                    }
            }
            rep.add(prefix + "/mapspace/" + pair, sv);
            (void)effort;
        }
}

}  // namespace detail

struct FamilyCaps {
    int width = 4;
    int height = 2;
    int upto = 1;
    int max_pairs = 8;
};

/// The four conditions of a marked cocartesian fibration, each three-valued.
inline Report check_marked_opfib(const MarkedOpfib& of, FamilyCaps caps = {}, int effort = 64) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    Report rep;
    rep.title = "marked-opfib";
    rep.note("width=" + std::to_string(caps.width) + " height=" + std::to_string(caps.height) +
             " upto=" + std::to_string(caps.upto) + " effort=" + std::to_string(effort));

    // (1) every (c, alpha out of f(c)) has a chosen cocartesian lift
    {
        Verdict v = Verdict::pass();
        for (int c = 0; c < C.nobj() && !v.is_fail(); ++c)
            for (int alpha = 0; alpha < D.nmor(); ++alpha) {
                if (D.src[alpha] != of.f.omap[c]) continue;
                Verdict lv = is_cocartesian(of, c, alpha);
                if (lv.is_fail()) {
                    v = Verdict::fail("(" + C.objects[c] + "," + D.morphisms[alpha] + "): " + lv.witness);
                    break;
                }
            }
        rep.add("condition1/cocartesian-lifts", v);
        if (v.is_fail()) return rep;  // the remaining conditions need the lifts
    }

    // (2) lifts of marked arrows are marked
    {
        Verdict v = Verdict::pass();
        for (int c = 0; c < C.nobj() && v.is_pass(); ++c)
            for (int alpha = 0; alpha < D.nmor(); ++alpha) {
                if (D.src[alpha] != of.f.omap[c] || !of.cod.marked(alpha)) continue;
                if (!of.dom.marked(of.lift_of(c, alpha))) {
                    v = Verdict::fail("lift of marked " + D.morphisms[alpha] + " at " + C.objects[c] +
                                      " is unmarked");
                    break;
                }
            }
        rep.add("condition2/marked-lifts", v);
    }

    // (3) transports preserve the marking
    {
        Verdict v = Verdict::pass();
        for (int alpha = 0; alpha < D.nmor() && v.is_pass(); ++alpha) {
            RelCat fd = fiber_relcat(of, D.src[alpha]);
            Functor t = transport(of, alpha);
            RelCat fd2 = fiber_relcat(of, D.dst[alpha]);
            for (int m = 0; m < fd.base.nmor(); ++m)
                if (fd.marked(m) && !fd2.marked(t.mmap[m])) {
                    v = Verdict::fail("transport along " + D.morphisms[alpha] + " of marked " +
                                      fd.base.morphisms[m] + " is unmarked");
                    break;
                }
        }
        rep.add("condition3/transport-preserves-marking", v);
        if (v.is_fail()) return rep;
    }

    // (4) transports along marked arrows are equivalences of localizations
    for (int alpha = 0; alpha < D.nmor(); ++alpha) {
        if (!of.cod.marked(alpha) || D.is_identity(alpha)) continue;
        RelCat fd = fiber_relcat(of, D.src[alpha]);
        RelCat fd2 = fiber_relcat(of, D.dst[alpha]);
        Functor t = transport(of, alpha);
        detail::audit_localization_equivalence(rep, "condition4/" + D.morphisms[alpha], fd, fd2, t,
                                               caps.width, caps.height, caps.upto, effort);
    }
    return rep;
}

/// Horizontal/vertical split of the marking, with the generation audit:
/// every marked arrow must factor as chosen-lift then vertical marked.
struct SplitMarking {
    std::vector<char> v_hor, v_ver;
    Verdict generated;
};

inline SplitMarking split_marking(const MarkedOpfib& of) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    SplitMarking out;
    out.v_hor.assign(C.nmor(), 0);
    out.v_ver.assign(C.nmor(), 0);
    for (int m = 0; m < C.nmor(); ++m) {
        if (!of.dom.marked(m)) continue;
        if (D.is_identity(of.f.mmap[m])) out.v_ver[m] = 1;
        if (of.lift_of(C.src[m], of.f.mmap[m]) == m && of.cod.marked(of.f.mmap[m]))
            out.v_hor[m] = 1;
    }
    out.generated = Verdict::pass();
    for (int m = 0; m < C.nmor(); ++m) {
        if (!of.dom.marked(m)) continue;
        int alpha = of.f.mmap[m];
        int lam = of.lift_of(C.src[m], alpha);
        auto nu = cocartesian_factor(of, lam, m, D.id_of[D.dst[alpha]]);
        if (!nu) {
            out.generated = Verdict::fail("marked " + C.morphisms[m] + " does not factor through its lift");
            break;
        }
        if (!of.dom.marked(*nu)) {
            out.generated = Verdict::fail("vertical part " + C.morphisms[*nu] + " of marked " +
                                          C.morphisms[m] + " is unmarked");
            break;
        }
    }
    return out;
}

/// Composite transports agree with transports of composites up to the
/// canonical isomorphism induced by lift uniqueness.
inline Verdict transport_functoriality_check(const MarkedOpfib& of, int alpha, int beta) {
    const FinCat& C = of.dom.base;
    const FinCat& D = of.cod.base;
    if (!D.composable(beta, alpha)) throw std::invalid_argument("transport_functoriality: not composable");
    int ba = D.compose(beta, alpha);
    for (int c = 0; c < C.nobj(); ++c) {
        if (of.f.omap[c] != D.src[alpha]) continue;
        int lam_ba = of.lift_of(c, ba);
        int lam_a = of.lift_of(c, alpha);
        int lam_b = of.lift_of(C.dst[lam_a], beta);
        int two_step = C.compose(lam_b, lam_a);
        auto nu = cocartesian_factor(of, lam_ba, two_step, D.id_of[D.dst[ba]]);
        auto nu_back = cocartesian_factor(of, two_step, lam_ba, D.id_of[D.dst[ba]]);
        if (!nu || !nu_back)
            return Verdict::fail("no canonical comparison at " + C.objects[c]);
        if (C.compose(*nu_back, *nu) != C.id_of[C.dst[lam_ba]] ||
            C.compose(*nu, *nu_back) != C.id_of[C.dst[two_step]])
            return Verdict::fail("comparison at " + C.objects[c] + " is not an isomorphism");
    }
    return Verdict::pass();
}

/// The projection D x F -> D with the generated marking W x U, lifts
/// (alpha, id).
inline MarkedOpfib product_family(const RelCat& d_rel, const RelCat& f_rel) {
    const FinCat& D = d_rel.base;
    const FinCat& F = f_rel.base;
    FinCat prod = product_category(D, F);
    RelCat dom{prod, std::vector<char>(prod.nmor(), 0)};
    auto midx = [&](int i, int j) { return i * F.nmor() + j; };
    for (int i = 0; i < D.nmor(); ++i)
        for (int j = 0; j < F.nmor(); ++j)
            dom.weq[midx(i, j)] = (d_rel.marked(i) && f_rel.marked(j)) ? 1 : 0;

    Functor p;
    p.domain = prod;
    p.codomain = D;
    p.omap.resize(prod.nobj());
    for (int i = 0; i < D.nobj(); ++i)
        for (int j = 0; j < F.nobj(); ++j) p.omap[i * F.nobj() + j] = i;
    p.mmap.resize(prod.nmor());
    for (int i = 0; i < D.nmor(); ++i)
        for (int j = 0; j < F.nmor(); ++j) p.mmap[midx(i, j)] = i;

    MarkedOpfib of;
    of.dom = dom;
    of.cod = d_rel;
    of.f = p;
    of.lift.assign(static_cast<std::size_t>(prod.nobj()) * D.nmor(), -1);
    for (int i = 0; i < D.nobj(); ++i)
        for (int j = 0; j < F.nobj(); ++j)
            for (int alpha = 0; alpha < D.nmor(); ++alpha) {
                if (D.src[alpha] != i) continue;
                of.lift[(i * F.nobj() + j) * D.nmor() + alpha] = midx(alpha, F.id_of[j]);
            }
    return of;
}

/// Kunneth formula for f.g. abelian groups.
inline AbelianGroup kunneth(const std::vector<AbelianGroup>& ha, const std::vector<AbelianGroup>& hb,
                            int n) {
    AbelianGroup out;
    for (int p = 0; p <= n; ++p) {
        int q = n - p;
        if (p < static_cast<int>(ha.size()) && q < static_cast<int>(hb.size()))
            out = direct_sum(out, tensor(ha[p], hb[q]));
    }
    for (int p = 0; p + 1 <= n; ++p) {
        int q = n - 1 - p;
        if (p < static_cast<int>(ha.size()) && q < static_cast<int>(hb.size()))
            out = direct_sum(out, tor_product(ha[p], hb[q]));
    }
    return out;
}

/// Desk-scale shadow of the family-localization statement in the product
/// case: the fiber marking is W x U, transports are literal, and for sampled
/// pairs the mapping space of the product compares against the product of
/// mapping spaces on pi0 (through componentwise projection) and on homology
/// via the Kunneth formula componentwise.
inline Report product_family_check(const RelCat& d_rel, const RelCat& f_rel, FamilyCaps caps = {},
                                   int effort = 64) {
    MarkedOpfib of = product_family(d_rel, f_rel);
    Report rep = check_marked_opfib(of, caps, effort);
    rep.title = "product-family";
    rep.note("scope: definition conditions audited on the projection; the homotopy-fiber "
             "comparison below is the product case only");
    if (rep.summary() == Outcome::Fail) return rep;

    const FinCat& D = d_rel.base;
    const FinCat& F = f_rel.base;
    const FinCat& prod = of.dom.base;
    std::string bounds = "width=" + std::to_string(caps.width) + " height=" +
                         std::to_string(caps.height) + " upto=" + std::to_string(caps.upto);

    HoCat ho_d = ho_localization(d_rel, caps.width);
    HoCat ho_f = ho_localization(f_rel, caps.width);

    // sampled pairs ((d,x),(d,y)) over the same base object
    std::vector<std::array<int, 3>> pairs;  // (d, x, y)
    for (int d = 0; d < D.nobj(); ++d)
        for (int x = 0; x < F.nobj(); ++x)
            for (int y = 0; y < F.nobj(); ++y) pairs.push_back({d, x, y});
    if (static_cast<int>(pairs.size()) > caps.max_pairs) {
        std::vector<std::array<int, 3>> keep;
        for (int i : detail::seeded_sample(static_cast<int>(pairs.size()), caps.max_pairs, 0xBEEFull))
            keep.push_back(pairs[i]);
        pairs = keep;
        rep.note("product pairs sampled: " + std::to_string(caps.max_pairs));
    }

    for (auto [d, x, y] : pairs) {
        int px = d * F.nobj() + x, py = d * F.nobj() + y;
        std::string pname = "(" + prod.objects[px] + "->" + prod.objects[py] + ")";
        MappingSpaceTrunc m = enumerate_hammocks(of.dom, px, py, caps.width, caps.height);
        MappingSpaceTrunc ma = enumerate_hammocks(d_rel, d, d, caps.width, caps.height);
        MappingSpaceTrunc mb = enumerate_hammocks(f_rel, x, y, caps.width, caps.height);
        bool stab = ho_d.hom(d, d).stabilized && ho_f.hom(x, y).stabilized;

        // componentwise projection of product zigzags
        auto project = [&](const Zigzag& z) {
            Zigzag zd, zf;
            zd.src = d;
            zd.dst = d;
            zf.src = x;
            zf.dst = y;
            for (const auto& s : z.word) {
                int di = s.arrow / F.nmor(), fi = s.arrow % F.nmor();
                zd.word.push_back({di, s.backward});
                zf.word.push_back({fi, s.backward});
            }
            return std::pair<Zigzag, Zigzag>{reduce_zigzag(D, zd), reduce_zigzag(F, zf)};
        };

        Verdict pv = Verdict::pass(bounds);
        std::vector<int> comp = m.space.size(0) ? pi0(m.space) : std::vector<int>{};
        int ncomp = m.space.size(0) ? 1 + *std::max_element(comp.begin(), comp.end()) : 0;
        std::vector<std::pair<int, int>> comp_img(ncomp, {-1, -1});
        std::vector<int> comp_vertex(ncomp, -1);
        bool overflow = false;
        for (int v = 0; v < m.space.size(0); ++v) {
            auto [zd, zf] = project(m.simplices_flat[v].row_zigzag(0));
            int cd = ho_d.class_of_zigzag(d, d, zd);
            int cf = ho_f.class_of_zigzag(x, y, zf);
            if (cd < 0 || cf < 0) { overflow = true; break; }
            std::pair<int, int> img{cd, cf};
            if (comp_img[comp[v]].first >= 0 && comp_img[comp[v]] != img) {
                pv = stab ? Verdict::fail("projection not constant on a component of " + pname, bounds)
                          : Verdict::inconclusive("projection not constant on a component (unstabilized)",
                                                  bounds);
            }
            comp_img[comp[v]] = img;
            if (comp_vertex[comp[v]] < 0) comp_vertex[comp[v]] = v;
        }
        if (overflow) pv = Verdict::inconclusive("projected zigzag escaped the width cap", bounds);
        if (pv.is_pass()) {
            if (!stab) {
                pv = Verdict::inconclusive(
                    "pi0 formula " + (ncomp == ho_d.classes(d, d) * ho_f.classes(x, y)
                                          ? std::string("holds at the cap")
                                          : std::string("mismatch at the cap")) +
                        " but hom-sets are unstabilized",
                    bounds);
            } else if (ncomp != ho_d.classes(d, d) * ho_f.classes(x, y)) {
                pv = Verdict::fail("pi0 " + std::to_string(ncomp) + " vs product " +
                                       std::to_string(ho_d.classes(d, d) * ho_f.classes(x, y)),
                                   bounds);
            } else {
                std::sort(comp_img.begin(), comp_img.end());
                if (std::adjacent_find(comp_img.begin(), comp_img.end()) != comp_img.end())
                    pv = Verdict::fail("pi0 projection not injective for " + pname, bounds);
            }
        }
        rep.add("product/pi0/" + pname, pv);

        // homology per component against the Kunneth assembly of the factors
        if (pv.is_pass()) {
            Verdict hv = Verdict::pass(bounds);
            // factor components and their homologies
            auto comp_homs = [&](const MappingSpaceTrunc& sp, int upto) {
                std::vector<std::vector<AbelianGroup>> out;
                if (!sp.space.size(0)) return out;
                std::vector<int> cc = pi0(sp.space);
                int n = 1 + *std::max_element(cc.begin(), cc.end());
                std::vector<int> rep_vertex(n, -1);
                for (int v = 0; v < sp.space.size(0); ++v)
                    if (rep_vertex[cc[v]] < 0) rep_vertex[cc[v]] = v;
                for (int k = 0; k < n; ++k) {
                    TruncSSet piece = component_of(sp.space, rep_vertex[k]);
                    HomologyReport hr = homology(piece, upto);
                    out.push_back(hr.groups);
                }
                return out;
            };
            auto ha = comp_homs(ma, caps.upto), hb = comp_homs(mb, caps.upto);
            // identify each product component with its (class, class) pair;
            // component classes are indexed compatibly with HoCat classes
            for (int cmp = 0; cmp < ncomp && !hv.is_fail(); ++cmp) {
                TruncSSet piece = component_of(m.space, comp_vertex[cmp]);
                HomologyReport hm = homology(piece, caps.upto);
                auto [cd, cf] = comp_img[cmp];
                if (cd >= static_cast<int>(ha.size()) || cf >= static_cast<int>(hb.size())) {
                    hv = Verdict::inconclusive("factor component missing for Kunneth comparison", bounds);
                    break;
                }
                for (int i = 0; i <= caps.upto; ++i) {
                    AbelianGroup want = kunneth(ha[cd], hb[cf], i);
                    if (!(hm.h(i) == want)) {
                        hv = Verdict::fail("H_" + std::to_string(i) + " of component " +
                                               std::to_string(cmp) + ": " + hm.h(i).describe() +
                                               " vs Kunneth " + want.describe(),
                                           bounds);
                        break;
                    }
                }
            }
            rep.add("product/homology/" + pname, hv);
        } else {
            rep.add("product/homology/" + pname,
                    Verdict::inconclusive("skipped: pi0 comparison did not pass", bounds));
        }
    }
    return rep;
}

}  // namespace relcat

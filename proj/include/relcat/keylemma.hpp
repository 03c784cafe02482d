#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relcat/core.hpp"
#include "relcat/hammock.hpp"
#include "relcat/homotopy.hpp"
#include "relcat/parallel.hpp"
#include "relcat/sset.hpp"
#include "relcat/verdict.hpp"

namespace relcat {

enum class FiberMode { Strict, Essential };

inline const char* to_string(FiberMode m) { return m == FiberMode::Strict ? "strict" : "essential"; }

struct FiberAudit {
    std::string sigma;
    int dim = 0;
    int fiber_objects = 0;
    Verdict verdict;
};

/// Outcome of the fiber-contractibility hypothesis audit: one entry per
/// inspected chain of the codomain, plus the aggregate and the coverage
/// actually achieved (dimensions with > 64 nondegenerate chains are sampled
/// deterministically).
struct KeyLemmaReport {
    std::vector<FiberAudit> fibers;
    Verdict hypothesis;
    std::string fiber_mode;
    std::string caps;
    int audited = 0;
    int total = 0;
    std::optional<Report> conclusion;

    Report as_report() const {
        Report r;
        r.title = "keylemma";
        r.note("caps: " + caps + " fiber_mode=" + fiber_mode);
        r.note("coverage: " + std::to_string(audited) + "/" + std::to_string(total) +
               " nondegenerate chains");
        for (const auto& f : fibers)
            r.add("hypothesis/dim" + std::to_string(f.dim) + "/" + f.sigma +
                      "/objects=" + std::to_string(f.fiber_objects),
                  f.verdict);
        r.add("hypothesis", hypothesis);
        if (conclusion) {
            for (const auto& e : conclusion->entries) r.add("conclusion/" + e.name, e.verdict);
            for (const auto& m : conclusion->meta) r.note(m);
        }
        return r;
    }
};

namespace detail {

/// Deterministic index sample (platform-independent LCG), sorted.
inline std::vector<int> seeded_sample(int total, int want, unsigned long long seed) {
    std::vector<int> all(total);
    for (int i = 0; i < total; ++i) all[i] = i;
    unsigned long long s = seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
    auto next = [&s]() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 16;
    };
    for (int i = total - 1; i > 0; --i) {
        int j = static_cast<int>(next() % static_cast<unsigned long long>(i + 1));
        std::swap(all[i], all[j]);
    }
    all.resize(want);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace detail

/// Hypothesis of the Key Lemma: every fiber over a nondegenerate chain of
/// the codomain (length <= max_dim) has a weakly contractible nerve, each
/// certified up to degree `upto` with the given simplification effort.
inline KeyLemmaReport check_hypothesis(const Functor& f, int max_dim, int upto, int effort,
                                       FiberMode mode = FiberMode::Strict) {
    Verdict fv = validate_functor(f);
    if (!fv.is_pass()) throw std::invalid_argument("check_hypothesis: invalid functor: " + fv.witness);
    const FinCat& D = f.codomain;
    const int sample_bound = 64;
    int nerve_cap = std::max(upto + 1, 2);

    KeyLemmaReport rep;
    rep.fiber_mode = to_string(mode);
    rep.caps = "max_dim=" + std::to_string(max_dim) + " upto=" + std::to_string(upto) +
               " effort=" + std::to_string(effort) + " nerve_cap=" + std::to_string(nerve_cap);

    // Essential fibers are taken through f^[n]; cache those functors per dim.
    std::vector<std::optional<Functor>> arrow_f(max_dim + 1);

    struct Job {
        Chain sigma;
        int dim;
    };
    std::vector<Job> jobs;
    for (int n = 0; n <= max_dim; ++n) {
        std::vector<Chain> nondeg;
        for (const auto& ch : enumerate_chains(D, n))
            if (!ch.has_identity_component(D)) nondeg.push_back(ch);
        rep.total += static_cast<int>(nondeg.size());
        if (static_cast<int>(nondeg.size()) > sample_bound) {
            for (int i : detail::seeded_sample(static_cast<int>(nondeg.size()), sample_bound,
                                               0xC0FFEEull + static_cast<unsigned>(n)))
                jobs.push_back({nondeg[i], n});
        } else {
            for (const auto& ch : nondeg) jobs.push_back({ch, n});
        }
        if (mode == FiberMode::Essential) arrow_f[n] = arrow_functor(f, n);
    }
    rep.audited = static_cast<int>(jobs.size());

    std::vector<FiberAudit> audits(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job& job = jobs[i];
        FinCat fib;
        if (mode == FiberMode::Strict) {
            fib = strict_fiber(f, job.sigma);
        } else {
            const Functor& fn = *arrow_f[job.dim];
            fib = essential_fiber(fn, fn.codomain.find_object(job.sigma.name(D)));
        }
        FiberAudit a;
        a.sigma = job.sigma.name(D);
        a.dim = job.dim;
        a.fiber_objects = fib.nobj();
        a.verdict = weakly_contractible(nerve(fib, nerve_cap), upto, effort);
        audits[i] = std::move(a);
    });
    rep.fibers = std::move(audits);

    rep.hypothesis = Verdict::pass(rep.caps);
    for (const auto& a : rep.fibers) {
        if (a.verdict.is_fail()) {
            rep.hypothesis = Verdict::fail("fiber over " + a.sigma + ": " + a.verdict.witness, rep.caps);
            break;
        }
        if (a.verdict.is_inconclusive() && !rep.hypothesis.is_fail())
            rep.hypothesis = Verdict::inconclusive("fiber over " + a.sigma + ": " + a.verdict.reason,
                                                   rep.caps);
    }
    return rep;
}

struct ConclusionCaps {
    int width = 4;
    int height = 2;
    int upto = 1;
    int max_pairs = 16;
};

/// Conclusion of the Key Lemma, audited at two finite levels with
/// W = preimage_marking(f): the induced functor Ho(C,W) -> D must be an
/// equivalence within the width cap, and sampled hammock mapping spaces must
/// be homotopy-discrete over Hom_D.
inline Report check_conclusion(const Functor& f, ConclusionCaps caps, int effort) {
    const FinCat& C = f.domain;
    const FinCat& D = f.codomain;
    RelCat w = preimage_marking(f);
    std::string bounds = "width=" + std::to_string(caps.width) +
                         " height=" + std::to_string(caps.height) +
                         " upto=" + std::to_string(caps.upto) + " effort=" + std::to_string(effort);
    if (caps.height < caps.upto + 1)
        throw std::invalid_argument("check_conclusion: need height >= upto+1");

    Report rep;
    rep.title = "keylemma-conclusion";
    rep.note("W = arrows inverted by the functor; " + bounds);

    HoCat ho = ho_localization(w, caps.width);

    // essential surjectivity on objects
    {
        Verdict v = Verdict::pass(bounds);
        for (int d = 0; d < D.nobj(); ++d) {
            bool hit = false;
            for (int c = 0; c < C.nobj() && !hit; ++c) {
                int fc = f.omap[c];
                for (int m = 0; m < D.nmor() && !hit; ++m)
                    if (D.src[m] == fc && D.dst[m] == d && D.is_iso(m)) hit = true;
            }
            if (!hit) {
                v = Verdict::fail("object " + D.objects[d] + " not hit up to isomorphism", bounds);
                break;
            }
        }
        rep.add("ho/essentially-surjective", v);
    }

    // fullness and faithfulness of the induced functor, per source pair
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y) {
            const auto& hs = ho.hom(x, y);
            std::vector<int> image(ho.classes(x, y), -1);
            for (std::size_t i = 0; i < hs.zigzags.size(); ++i) {
                int val = evaluate_zigzag(f, hs.zigzags[i]);
                int cl = hs.class_of[i];
                if (image[cl] >= 0 && image[cl] != val)
                    throw std::logic_error("zigzag evaluation not constant on a class");
                image[cl] = val;
            }
            std::string pair = "(" + C.objects[x] + "," + C.objects[y] + ")";
            Verdict full = Verdict::pass(bounds);
            for (int g : D.hom(f.omap[x], f.omap[y])) {
                bool hit = false;
                for (int img : image)
                    if (img == g) hit = true;
                if (!hit) {
                    full = hs.stabilized
                               ? Verdict::fail("no zigzag class maps to " + D.morphisms[g], bounds)
                               : Verdict::inconclusive("hom-set unstabilized; " + D.morphisms[g] +
                                                           " not reached within cap",
                                                       bounds);
                    break;
                }
            }
            rep.add("ho/full/" + pair, full);
            Verdict faith = Verdict::pass(bounds);
            for (std::size_t a = 0; a < image.size() && !faith.is_fail(); ++a)
                for (std::size_t b = a + 1; b < image.size(); ++b)
                    if (image[a] == image[b]) {
                        faith = hs.stabilized
                                    ? Verdict::fail("classes " + std::to_string(a) + "," +
                                                        std::to_string(b) + " of " + pair +
                                                        " share image " + D.morphisms[image[a]],
                                                    bounds)
                                    : Verdict::inconclusive("distinct classes share an image in an "
                                                            "unstabilized hom-set",
                                                            bounds);
                        break;
                    }
            rep.add("ho/faithful/" + pair, faith);
        }

    // space level: homotopy discreteness of sampled mapping spaces
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y) pairs.push_back({x, y});
    if (static_cast<int>(pairs.size()) > caps.max_pairs) {
        std::vector<std::pair<int, int>> keep;
        for (int i : detail::seeded_sample(static_cast<int>(pairs.size()), caps.max_pairs, 0xFACADEull))
            keep.push_back(pairs[i]);
        pairs = keep;
        rep.note("space-level pairs sampled: " + std::to_string(caps.max_pairs) + "/" +
                 std::to_string(C.nobj() * C.nobj()));
    }
    for (auto [x, y] : pairs) {
        std::string pair = "(" + C.objects[x] + "," + C.objects[y] + ")";
        MappingSpaceTrunc ms = enumerate_hammocks(w, x, y, caps.width, caps.height);
        bool stab = ho.hom(x, y).stabilized;

        // pi0 must biject with Hom_D via zigzag evaluation
        std::vector<int> comp = ms.space.size(0) ? pi0(ms.space) : std::vector<int>{};
        int ncomp = ms.space.size(0) ? 1 + *std::max_element(comp.begin(), comp.end()) : 0;
        std::vector<int> comp_val(ncomp, -1);
        std::vector<int> comp_vertex(ncomp, -1);
        for (int vtx = 0; vtx < ms.space.size(0); ++vtx) {
            Zigzag z = ms.simplices_flat[vtx].row_zigzag(0);
            int val = evaluate_zigzag(f, z);
            if (comp_val[comp[vtx]] >= 0 && comp_val[comp[vtx]] != val)
                throw std::logic_error("zigzag evaluation not constant on a component");
            comp_val[comp[vtx]] = val;
            if (comp_vertex[comp[vtx]] < 0) comp_vertex[comp[vtx]] = vtx;
        }
        std::vector<int> homd = D.hom(f.omap[x], f.omap[y]);
        Verdict pv = Verdict::pass(bounds);
        if (ncomp != static_cast<int>(homd.size())) {
            std::string msg = "pi0 " + pair + " = " + std::to_string(ncomp) + " vs |Hom_D| = " +
                              std::to_string(homd.size());
            pv = stab ? Verdict::fail(msg, bounds) : Verdict::inconclusive(msg + " (unstabilized)", bounds);
        } else {
            std::vector<int> sorted = comp_val;
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> want = homd;
            std::sort(want.begin(), want.end());
            if (sorted != want) {
                std::string msg = "pi0 " + pair + " does not biject with Hom_D";
                pv = stab ? Verdict::fail(msg, bounds)
                          : Verdict::inconclusive(msg + " (unstabilized)", bounds);
            }
        }
        rep.add("space/pi0/" + pair, pv);

        // each component weakly contractible up to `upto`
        for (int cmp = 0; cmp < ncomp; ++cmp) {
            TruncSSet piece = component_of(ms.space, comp_vertex[cmp]);
            Verdict v = weakly_contractible(piece, caps.upto, effort);
            rep.add("space/component/" + pair + "/" + std::to_string(cmp), v);
        }
    }
    return rep;
}

/// The proof's first observation: with W the arrows inverted by f, the nerve
/// of W and the nerve of the maximal subgroupoid K(D) must agree on pi0 and
/// H_i for i <= upto. Fibers that fail the hypothesis make this fail too.
inline Verdict groupoid_observation_check(const Functor& f, int upto) {
    const FinCat& C = f.domain;
    const FinCat& D = f.codomain;
    int cap = std::max(upto + 1, 1);
    std::string bounds = "upto=" + std::to_string(upto) + " cap=" + std::to_string(cap);
    std::vector<char> mask(C.nmor(), 0);
    for (int m = 0; m < C.nmor(); ++m) mask[m] = D.is_iso(f.mmap[m]) ? 1 : 0;
    TruncSSet nw = nerve(wide_subcategory(C, mask), cap);
    TruncSSet nk = nerve(max_subgroupoid(D), cap);
    int p0w = nw.size(0) ? pi0_count(nw) : 0;
    int p0k = nk.size(0) ? pi0_count(nk) : 0;
    if (p0w != p0k)
        return Verdict::fail("pi0: N(W) has " + std::to_string(p0w) + ", N(K(D)) has " +
                                 std::to_string(p0k),
                             bounds);
    HomologyReport hw = homology(nw, upto);
    HomologyReport hk = homology(nk, upto);
    for (int i = 0; i <= upto; ++i)
        if (!(hw.h(i) == hk.h(i)))
            return Verdict::fail("H_" + std::to_string(i) + ": N(W) = " + hw.h(i).describe() +
                                     " vs N(K(D)) = " + hk.h(i).describe(),
                                 bounds);
    return Verdict::pass(bounds);
}

/// Rowwise comparison from the proof: row n of the classification diagram
/// N(C, W) against the nerve of K(D^[n]), on pi0 and H_i for i <= upto.
inline Report classification_row_check(const Functor& f, int cap_n, int upto, int effort = 64) {
    const FinCat& D = f.codomain;
    RelCat w = preimage_marking(f);
    int cap_k = upto + 1;
    std::string bounds = "cap_n=" + std::to_string(cap_n) + " upto=" + std::to_string(upto) +
                         " cap_k=" + std::to_string(cap_k);
    Report rep;
    rep.title = "classification-row";
    rep.note(bounds);
    KeyLemmaReport hyp = check_hypothesis(f, cap_n, upto, effort);
    rep.add("hypothesis-status", hyp.hypothesis);

    BiSSet cd = classification_diagram(w, cap_n, cap_k);
    for (int n = 0; n <= cap_n; ++n) {
        TruncSSet row = bisset_row(cd, n);
        TruncSSet target = nerve(max_subgroupoid(arrow_category(D, n)), cap_k);
        std::string name = "row" + std::to_string(n);
        int p0r = row.size(0) ? pi0_count(row) : 0;
        int p0t = target.size(0) ? pi0_count(target) : 0;
        if (p0r != p0t) {
            rep.add(name, Verdict::fail("pi0: " + std::to_string(p0r) + " vs " + std::to_string(p0t),
                                        bounds));
            continue;
        }
        HomologyReport hr = homology(row, upto);
        HomologyReport ht = homology(target, upto);
        Verdict v = Verdict::pass(bounds);
        for (int i = 0; i <= upto; ++i)
            if (!(hr.h(i) == ht.h(i))) {
                v = Verdict::fail("H_" + std::to_string(i) + ": " + hr.h(i).describe() + " vs " +
                                      ht.h(i).describe(),
                                  bounds);
                break;
            }
        rep.add(name, v);
    }
    return rep;
}

struct DemoCaps {
    int max_dim = 2;
    int upto = 1;
    int effort = 64;
    int width = 4;
    int height = 2;
};

/// Replays the resolution argument at finite scale: builds the category of
/// marked arrows out of A with its projection, audits the Key Lemma
/// hypothesis and conclusion for the projection, and reports whether each
/// fiber has a weakly terminal ("special-like") object.
inline Report resolution_localization_demo(const RelCat& r, const std::vector<int>& A,
                                           DemoCaps caps = {}) {
    auto [tilde, proj] = resolution_category(r, A);
    Report rep;
    rep.title = "resolution-localization";
    rep.note("resolution category: " + std::to_string(tilde.nobj()) + " objects, " +
             std::to_string(tilde.nmor()) + " morphisms");

    KeyLemmaReport hyp = check_hypothesis(proj, caps.max_dim, caps.upto, caps.effort);
    for (const auto& fa : hyp.fibers)
        rep.add("hypothesis/dim" + std::to_string(fa.dim) + "/" + fa.sigma, fa.verdict);
    rep.add("hypothesis", hyp.hypothesis);

    // special-like objects per fiber: some object receives a morphism from
    // every object of the fiber
    const FinCat& D = proj.codomain;
    for (int n = 0; n <= caps.max_dim; ++n)
        for (const auto& sigma : enumerate_chains(D, n)) {
            if (sigma.has_identity_component(D)) continue;
            FinCat fib = strict_fiber(proj, sigma);
            bool found = false;
            for (int t = 0; t < fib.nobj() && !found; ++t) {
                bool all = true;
                for (int o = 0; o < fib.nobj(); ++o)
                    if (fib.hom(o, t).empty()) all = false;
                if (all) found = true;
            }
            rep.add("special/dim" + std::to_string(n) + "/" + sigma.name(D),
                    found ? Verdict::pass()
                          : Verdict::fail("no weakly terminal object in the fiber"));
        }

    Report conc = check_conclusion(proj, ConclusionCaps{caps.width, caps.height, caps.upto, 16},
                                   caps.effort);
    for (const auto& e : conc.entries) rep.add("conclusion/" + e.name, e.verdict);
    return rep;
}

}  // namespace relcat

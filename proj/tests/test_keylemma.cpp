#include <catch2/catch_amalgamated.hpp>

#include "relcat/keylemma.hpp"
#include "testutil.hpp"

using namespace relcat;
using namespace testutil;

namespace {

Functor eg_to_bz2() {
    FinCat eg = indiscrete_cat(2);
    FinCat bg = bz_n(2);
    Functor f;
    f.domain = eg;
    f.codomain = bg;
    f.omap = {0, 0};
    f.mmap.assign(4, 0);
    f.mmap[eg.find_morphism("m0_0")] = bg.find_morphism("g0");
    f.mmap[eg.find_morphism("m1_1")] = bg.find_morphism("g0");
    f.mmap[eg.find_morphism("m0_1")] = bg.find_morphism("g1");
    f.mmap[eg.find_morphism("m1_0")] = bg.find_morphism("g1");
    return f;
}

}  // namespace

TEST_CASE("hypothesis passes for the collapse of the walking arrow") {
    KeyLemmaReport rep = check_hypothesis(collapse_to_point(walking_arrow()), 2, 1, 64);
    CHECK(rep.hypothesis.is_pass());
    CHECK(rep.audited == rep.total);
    for (const auto& f : rep.fibers) CHECK(f.verdict.is_pass());
}

TEST_CASE("hypothesis passes in essential fiber mode as well") {
    KeyLemmaReport rep =
        check_hypothesis(collapse_to_point(walking_arrow()), 1, 1, 64, FiberMode::Essential);
    CHECK(rep.hypothesis.is_pass());
    CHECK(rep.fiber_mode == std::string("essential"));
}

TEST_CASE("hypothesis fails for the discrete pair with a pi0 witness") {
    KeyLemmaReport rep = check_hypothesis(collapse_to_point(discrete_cat(2)), 2, 1, 64);
    REQUIRE(rep.hypothesis.is_fail());
    CHECK(rep.hypothesis.witness.find("pi0") != std::string::npos);
}

TEST_CASE("hypothesis passes for the indiscrete pair") {
    KeyLemmaReport rep = check_hypothesis(collapse_to_point(indiscrete_cat(2)), 2, 1, 64);
    CHECK(rep.hypothesis.is_pass());
}

TEST_CASE("conclusion passes for the collapse of the walking arrow") {
    Report rep = check_conclusion(collapse_to_point(walking_arrow()), {4, 2, 1, 16}, 64);
    CHECK(rep.summary() == Outcome::Pass);
}

TEST_CASE("conclusion passes trivially for identity functors") {
    for (const FinCat& c : {walking_arrow(), discrete_cat(2), chain_poset(2), bz_n(2)}) {
        Report rep = check_conclusion(identity_functor(c), {4, 2, 1, 16}, 64);
        CHECK(rep.summary() == Outcome::Pass);
    }
}

TEST_CASE("conclusion fails for the discrete pair: the induced functor is not full") {
    Report rep = check_conclusion(collapse_to_point(discrete_cat(2)), {4, 2, 1, 16}, 64);
    REQUIRE(rep.summary() == Outcome::Fail);
    bool fullness_failed = false;
    for (const auto& e : rep.entries)
        if (e.verdict.is_fail() && e.name.find("ho/full") == 0) fullness_failed = true;
    CHECK(fullness_failed);
}

TEST_CASE("conclusion rejects an insufficient height cap") {
    CHECK_THROWS_AS(check_conclusion(identity_functor(point_cat()), {4, 1, 1, 16}, 64),
                    std::invalid_argument);
}

TEST_CASE("groupoid observation: identity on a poset compares identities with identities") {
    CHECK(groupoid_observation_check(identity_functor(chain_poset(2)), 1).is_pass());
}

TEST_CASE("groupoid observation passes for the walking-arrow collapse at upto 2") {
    CHECK(groupoid_observation_check(collapse_to_point(walking_arrow()), 2).is_pass());
}

TEST_CASE("groupoid observation fails for the two-object cover of BZ/2") {
    Functor f = eg_to_bz2();
    REQUIRE(validate_functor(f).is_pass());
    Verdict v = groupoid_observation_check(f, 1);
    REQUIRE(v.is_fail());
    CHECK(v.witness.find("H_1") != std::string::npos);
    // and indeed the hypothesis fails: the strict fibers are discrete pairs
    CHECK(check_hypothesis(f, 1, 1, 64).hypothesis.is_fail());
}

TEST_CASE("classification rows pass for the walking-arrow collapse") {
    Report rep = classification_row_check(collapse_to_point(walking_arrow()), 1, 1);
    CHECK(rep.summary() == Outcome::Pass);
    CHECK(rep.find("row0") != nullptr);
    CHECK(rep.find("row1") != nullptr);
}

TEST_CASE("classification rows pass for identity functors") {
    for (const FinCat& c : {walking_arrow(), discrete_cat(2)}) {
        Report rep = classification_row_check(identity_functor(c), 1, 1);
        CHECK(rep.summary() == Outcome::Pass);
    }
}

TEST_CASE("classification rows fail for the discrete pair at row 0") {
    Report rep = classification_row_check(collapse_to_point(discrete_cat(2)), 1, 1);
    REQUIRE(rep.summary() == Outcome::Fail);
    const CheckEntry* row0 = rep.find("row0");
    REQUIRE(row0 != nullptr);
    CHECK(row0->verdict.is_fail());
    CHECK(row0->verdict.witness.find("pi0") != std::string::npos);
}

TEST_CASE("resolution demo on the fully marked walking arrow at A = {0}") {
    Report rep = resolution_localization_demo(relcat_all_marked(walking_arrow()), {0});
    CHECK(rep.summary() == Outcome::Pass);
    const CheckEntry* hyp = rep.find("hypothesis");
    REQUIRE(hyp != nullptr);
    CHECK(hyp->verdict.is_pass());
}

TEST_CASE("resolution demo with identity marking and all objects is trivially a localization") {
    FinCat c = chain_poset(2);
    std::vector<int> all(c.nobj());
    std::iota(all.begin(), all.end(), 0);
    Report rep = resolution_localization_demo(relcat_with_identities(c), all);
    CHECK(rep.summary() == Outcome::Pass);
}

TEST_CASE("resolution demo on the fully marked indiscrete pair at A = {a}") {
    Report rep = resolution_localization_demo(relcat_all_marked(indiscrete_cat(2)), {0});
    CHECK(rep.summary() == Outcome::Pass);
}

TEST_CASE("hypothesis Pass never coexists with conclusion Fail on the curated functors") {
    std::vector<Functor> corpus = {
        collapse_to_point(walking_arrow()),
        collapse_to_point(discrete_cat(2)),
        collapse_to_point(indiscrete_cat(2)),
        identity_functor(walking_arrow()),
        identity_functor(discrete_cat(2)),
        identity_functor(bz_n(2)),
        eg_to_bz2(),
    };
    for (const auto& f : corpus) {
        KeyLemmaReport hyp = check_hypothesis(f, 2, 1, 64);
        Report conc = check_conclusion(f, {4, 2, 1, 16}, 64);
        if (hyp.hypothesis.is_pass()) CHECK(conc.summary() != Outcome::Fail);
    }
}

TEST_CASE("sampling kicks in beyond 64 nondegenerate chains per dimension") {
    // the indiscrete category on 3 objects has 6^2 = 36 nondegenerate
    // 2-chains but 6^3 = 216 nondegenerate 3-chains
    Functor f = collapse_to_point(indiscrete_cat(3));
    KeyLemmaReport rep = check_hypothesis(f, 3, 0, 16);
    CHECK(rep.total > rep.audited);
    CHECK(rep.hypothesis.is_pass());
}

TEST_CASE("key lemma report serializes hypothesis entries and coverage") {
    KeyLemmaReport rep = check_hypothesis(collapse_to_point(walking_arrow()), 1, 1, 64);
    Report r = rep.as_report();
    CHECK(r.find("hypothesis") != nullptr);
    bool coverage_note = false;
    for (const auto& m : r.meta)
        if (m.find("coverage") != std::string::npos) coverage_note = true;
    CHECK(coverage_note);
}

#include <catch2/catch_amalgamated.hpp>

#include "relcat/core.hpp"
#include "testutil.hpp"

using namespace relcat;
using namespace testutil;

TEST_CASE("validate accepts the terminal category") {
    CHECK(validate(point_cat()).is_pass());
}

TEST_CASE("validate accepts BZ/2 exhaustively") {
    CHECK(validate(bz_n(2)).is_pass());
}

TEST_CASE("validate rejects a broken associativity table with the triple as witness") {
    FinCatBuilder b;
    b.add_object("x");
    b.add_morphism("e", "x", "x");
    b.add_morphism("p", "x", "x");
    b.add_morphism("q", "x", "x");
    b.set_identity("x", "e");
    b.set_compose("e", "e", "e");
    b.set_compose("e", "p", "p");
    b.set_compose("e", "q", "q");
    b.set_compose("p", "e", "p");
    b.set_compose("q", "e", "q");
    // (p p) p = q p = p but p (p p) = p q = e
    b.set_compose("p", "p", "q");
    b.set_compose("p", "q", "e");
    b.set_compose("q", "p", "p");
    b.set_compose("q", "q", "q");
    Verdict v = validate(b.finish());
    REQUIRE(v.is_fail());
    CHECK(v.witness.find("associativity") != std::string::npos);
    CHECK(v.witness.find("p") != std::string::npos);
}

TEST_CASE("validate rejects a bad unit row") {
    FinCatBuilder b;
    b.add_object("x");
    b.add_morphism("e", "x", "x");
    b.add_morphism("t", "x", "x");
    b.set_identity("x", "e");
    b.set_compose("e", "e", "e");
    b.set_compose("e", "t", "t");
    b.set_compose("t", "e", "e");  // violates the right unit law
    b.set_compose("t", "t", "t");
    Verdict v = validate(b.finish());
    REQUIRE(v.is_fail());
    CHECK(v.witness.find("unit") != std::string::npos);
}

TEST_CASE("arrow category at n = 0 is the category itself") {
    FinCat c = parallel_pair();
    FinCat a0 = arrow_category(c, 0);
    CHECK(a0.nobj() == c.nobj());
    CHECK(a0.nmor() == c.nmor());
    CHECK(validate(a0).is_pass());
}

TEST_CASE("arrow category of the walking arrow at n = 1 is the 3-object poset") {
    FinCat a1 = arrow_category(walking_arrow(), 1);
    REQUIRE(a1.nobj() == 3);
    CHECK(a1.nmor() == 6);  // three identities + three ladder arrows
    CHECK(validate(a1).is_pass());
    for (int x = 0; x < a1.nobj(); ++x)
        for (int y = 0; y < a1.nobj(); ++y) CHECK(a1.hom(x, y).size() <= 1);  // poset-shaped
}

TEST_CASE("arrow category of the terminal category stays terminal") {
    for (int n = 0; n <= 3; ++n) {
        FinCat a = arrow_category(point_cat(), n);
        CHECK(a.nobj() == 1);
        CHECK(a.nmor() == 1);
    }
}

TEST_CASE("arrow categories of random small categories validate up to n = 3") {
    Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        FinCat c = random_category(rng, 3, 6);
        REQUIRE(validate(c).is_pass());
        for (int n = 0; n <= 3; ++n) CHECK(validate(arrow_category(c, n)).is_pass());
    }
}

TEST_CASE("strict fiber of the collapse functor over the identity 1-chain") {
    Functor f = collapse_to_point(walking_arrow());
    Chain sigma{0, {0}};  // the identity arrow of the point
    sigma.arrows[0] = f.codomain.id_of[0];
    FinCat fib = strict_fiber(f, sigma);
    // all of [1]^[1]: three chains, and the constant-0 chain is initial
    REQUIRE(fib.nobj() == 3);
    CHECK(validate(fib).is_pass());
    int initial = -1;
    for (int t = 0; t < fib.nobj(); ++t) {
        bool all = true;
        for (int o = 0; o < fib.nobj(); ++o)
            if (fib.hom(t, o).size() != 1) all = false;
        if (all) initial = t;
    }
    REQUIRE(initial >= 0);
    CHECK(fib.objects[initial].find("id0") != std::string::npos);
}

TEST_CASE("strict fiber of the identity functor is a single point at every chain") {
    FinCat c = chain_poset(2);
    Functor idf = identity_functor(c);
    for (int n = 0; n <= 2; ++n)
        for (const auto& sigma : enumerate_chains(c, n)) {
            FinCat fib = strict_fiber(idf, sigma);
            CHECK(fib.nobj() == 1);
            CHECK(fib.nmor() == 1);
        }
}

TEST_CASE("strict fiber of discrete pair over the point is discrete with two objects") {
    Functor f = collapse_to_point(discrete_cat(2));
    FinCat fib = strict_fiber(f, Chain{0, {}});
    CHECK(fib.nobj() == 2);
    CHECK(fib.nmor() == 2);
}

TEST_CASE("essential fiber of the identity on a poset is a single object") {
    FinCat c = chain_poset(2);
    Functor idf = identity_functor(c);
    for (int x = 0; x < c.nobj(); ++x) {
        FinCat fib = essential_fiber(idf, x);
        CHECK(fib.nobj() == 1);
        CHECK(fib.nmor() == 1);
    }
}

TEST_CASE("essential fiber of indiscrete pair over the point is indiscrete") {
    Functor f = collapse_to_point(indiscrete_cat(2));
    FinCat fib = essential_fiber(f, 0);
    CHECK(fib.nobj() == 2);
    CHECK(fib.nmor() == 4);
    for (int m = 0; m < fib.nmor(); ++m) CHECK(fib.is_iso(m));
}

TEST_CASE("essential fiber of the collapse of the walking arrow is the walking arrow") {
    Functor f = collapse_to_point(walking_arrow());
    FinCat fib = essential_fiber(f, 0);
    CHECK(fib.nobj() == 2);
    CHECK(fib.nmor() == 3);
    CHECK(validate(fib).is_pass());
}

TEST_CASE("maximal subgroupoid of the walking arrow keeps only identities") {
    FinCat k = max_subgroupoid(walking_arrow());
    CHECK(k.nobj() == 2);
    CHECK(k.nmor() == 2);
}

TEST_CASE("maximal subgroupoid of BZ/2 and of indiscrete categories is everything") {
    FinCat b = bz_n(2);
    CHECK(max_subgroupoid(b).nmor() == b.nmor());
    FinCat i = indiscrete_cat(2);
    CHECK(max_subgroupoid(i).nmor() == i.nmor());
}

TEST_CASE("maximal subgroupoid is idempotent on the random corpus") {
    Rng rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        FinCat c = random_category(rng);
        FinCat k = max_subgroupoid(c);
        FinCat kk = max_subgroupoid(k);
        CHECK(k.nobj() == kk.nobj());
        CHECK(k.nmor() == kk.nmor());
    }
}

TEST_CASE("preimage marking of the collapse marks everything") {
    RelCat r = preimage_marking(collapse_to_point(walking_arrow()));
    for (int m = 0; m < r.base.nmor(); ++m) CHECK(r.marked(m));
    CHECK(validate_relcat(r).is_pass());
}

TEST_CASE("preimage marking of a poset identity functor marks only identities") {
    FinCat c = chain_poset(2);
    RelCat r = preimage_marking(identity_functor(c));
    for (int m = 0; m < c.nmor(); ++m) CHECK(r.marked(m) == c.is_identity(m));
}

TEST_CASE("preimage marking of the parallel-pair collapse marks only identities") {
    FinCat pp = parallel_pair();
    FinCat wa = walking_arrow();
    Functor f;
    f.domain = pp;
    f.codomain = wa;
    f.omap = {wa.find_object("0"), wa.find_object("1")};
    f.mmap = {wa.find_morphism("id0"), wa.find_morphism("id1"), wa.find_morphism("a"),
              wa.find_morphism("a")};
    REQUIRE(validate_functor(f).is_pass());
    RelCat r = preimage_marking(f);
    for (int m = 0; m < pp.nmor(); ++m) CHECK(r.marked(m) == pp.is_identity(m));
    CHECK(validate_relcat(r).is_pass());
}

TEST_CASE("preimage markings are valid relative categories on the corpus") {
    Rng rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        FinCat c = random_category(rng);
        CHECK(validate_relcat(preimage_marking(identity_functor(c))).is_pass());
        CHECK(validate_relcat(preimage_marking(collapse_to_point(c))).is_pass());
    }
}

TEST_CASE("resolution category of the fully marked walking arrow at A = {0}") {
    RelCat r = relcat_all_marked(walking_arrow());
    auto [tilde, proj] = resolution_category(r, {0});
    REQUIRE(tilde.nobj() == 2);  // (0, id0) and (0, a)
    CHECK(validate(tilde).is_pass());
    CHECK(validate_functor(proj).is_pass());
    std::vector<char> hit(r.base.nobj(), 0);
    for (int o = 0; o < tilde.nobj(); ++o) hit[proj.omap[o]] = 1;
    for (char h : hit) CHECK(h);  // surjective on objects
}

TEST_CASE("resolution category with identity marking and all objects is the base") {
    FinCat c = chain_poset(2);
    RelCat r = relcat_with_identities(c);
    std::vector<int> all(c.nobj());
    std::iota(all.begin(), all.end(), 0);
    auto [tilde, proj] = resolution_category(r, all);
    CHECK(tilde.nobj() == c.nobj());
    CHECK(tilde.nmor() == c.nmor());
    // the projection is a bijection on objects and morphisms
    std::vector<char> ohit(c.nobj(), 0), mhit(c.nmor(), 0);
    for (int o = 0; o < tilde.nobj(); ++o) ohit[proj.omap[o]] = 1;
    for (int m = 0; m < tilde.nmor(); ++m) mhit[proj.mmap[m]] = 1;
    for (char h : ohit) CHECK(h);
    for (char h : mhit) CHECK(h);
}

TEST_CASE("resolution category of the fully marked indiscrete pair at A = {a}") {
    RelCat r = relcat_all_marked(indiscrete_cat(2));
    auto [tilde, proj] = resolution_category(r, {0});
    CHECK(tilde.nobj() == 2);
    CHECK(tilde.nmor() == 4);
    for (int m = 0; m < tilde.nmor(); ++m) CHECK(tilde.is_iso(m));
    CHECK(validate_functor(proj).is_pass());
}

TEST_CASE("relcat invariants: markings must contain identities and close under composition") {
    FinCat c = chain_poset(2);
    RelCat bad{c, std::vector<char>(c.nmor(), 0)};
    CHECK(validate_relcat(bad).is_fail());
    RelCat open = relcat_with_identities(c);
    open.weq[c.find_morphism("a0_1")] = 1;
    open.weq[c.find_morphism("a1_2")] = 1;
    // a1_2 ∘ a0_1 = a0_2 unmarked
    CHECK(validate_relcat(open).is_fail());
    open.weq[c.find_morphism("a0_2")] = 1;
    CHECK(validate_relcat(open).is_pass());
}

TEST_CASE("empty category is legal everywhere it can appear") {
    FinCatBuilder b;
    FinCat empty = b.finish();
    CHECK(validate(empty).is_pass());
    CHECK(enumerate_chains(empty, 2).empty());
    FinCat a = arrow_category(empty, 1);
    CHECK(a.nobj() == 0);
}

#include <catch2/catch_amalgamated.hpp>

#include "relcat/homotopy.hpp"
#include "relcat/io.hpp"
#include "testutil.hpp"

using namespace relcat;
using namespace testutil;

namespace {

TruncSSet boundary_delta2() {
    return sset_from_facets({"v0", "v1", "v2"}, {{0, 1}, {1, 2}, {0, 2}}, 2);
}

}  // namespace

TEST_CASE("normalized chains of a point") {
    ChainComplex cc = normalized_chains(nerve(point_cat(), 2));
    CHECK(cc.rank(0) == 1);
    CHECK(cc.rank(1) == 0);
    CHECK(cc.rank(2) == 0);
}

TEST_CASE("normalized chains of the interval: boundary of the edge is v1 - v0") {
    TruncSSet d1 = standard_simplex(1, 2);
    ChainComplex cc = normalized_chains(d1);
    REQUIRE(cc.rank(0) == 2);
    REQUIRE(cc.rank(1) == 1);
    bigint sum = cc.boundary[1][0][0] + cc.boundary[1][1][0];
    CHECK(sum == 0);
    CHECK(abs(cc.boundary[1][0][0]) == 1);
}

TEST_CASE("normalized chains of the BZ/2 nerve alternate between 0 and multiplication by 2") {
    ChainComplex cc = normalized_chains(nerve(bz_n(2), 3));
    for (int n = 0; n <= 3; ++n) REQUIRE(cc.rank(n) == 1);
    CHECK(cc.boundary[1][0][0] == 0);
    CHECK(abs(cc.boundary[2][0][0]) == 2);
    CHECK(cc.boundary[3][0][0] == 0);
}

TEST_CASE("homology of the boundary of the 2-simplex is (Z, Z)") {
    HomologyReport h = homology(boundary_delta2(), 1);
    CHECK(h.h(0) == AbelianGroup{1, {}});
    CHECK(h.h(1) == AbelianGroup{1, {}});
}

TEST_CASE("nerves of chain posets are acyclic up to degree 2") {
    for (int n = 1; n <= 3; ++n) {
        HomologyReport h = homology(nerve(chain_poset(n), 3), 2);
        CHECK(h.h(0) == AbelianGroup{1, {}});
        CHECK(h.h(1).trivial());
        CHECK(h.h(2).trivial());
    }
}

TEST_CASE("homology of the BZ/2 nerve at cap 3") {
    HomologyReport h = homology(nerve(bz_n(2), 3), 2);
    CHECK(h.h(0) == AbelianGroup{1, {}});
    CHECK(h.h(1) == AbelianGroup{0, {2}});
    CHECK(h.h(2).trivial());
}

TEST_CASE("homology of the BZ/3 nerve detects Z/3 torsion") {
    HomologyReport h = homology(nerve(bz_n(3), 2), 1);
    CHECK(h.h(1) == AbelianGroup{0, {3}});
}

TEST_CASE("homology rejects an insufficient cap") {
    CHECK_THROWS_AS(homology(nerve(point_cat(), 2), 2), std::invalid_argument);
}

TEST_CASE("pi0 of basic spaces") {
    CHECK(pi0_count(nerve(point_cat(), 1)) == 1);
    CHECK(pi0_count(nerve(discrete_cat(2), 1)) == 2);
    CHECK(pi0_count(nerve(walking_arrow(), 1)) == 1);
}

TEST_CASE("H0 rank equals the number of components on the corpus") {
    Rng rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        TruncSSet x = nerve(random_category(rng), 2);
        if (x.empty()) continue;
        CHECK(homology(x, 1).h(0).betti == pi0_count(x));
    }
}

TEST_CASE("edge-path group of the full 2-simplex simplifies to the trivial group") {
    TruncSSet d2 = sset_from_facets({"v0", "v1", "v2"}, {{0, 1, 2}}, 2);
    GroupPresentation p = edge_path_group(d2, 0);
    CHECK(is_trivial_group(p, 32).is_pass());
}

TEST_CASE("edge-path group of the boundary of the 2-simplex is free of rank 1") {
    GroupPresentation p = edge_path_group(boundary_delta2(), 0);
    CHECK(p.generators.size() == 1);
    CHECK(p.relators.empty());
    Verdict v = is_trivial_group(p, 32);
    REQUIRE(v.is_fail());
    CHECK(abelianization(p) == AbelianGroup{1, {}});
}

TEST_CASE("edge-path group of the BZ/2 nerve abelianizes to Z/2") {
    GroupPresentation p = edge_path_group(nerve(bz_n(2), 2), 0);
    REQUIRE(p.generators.size() == 1);
    REQUIRE(p.relators.size() == 1);
    CHECK(abelianization(p) == AbelianGroup{0, {2}});
    CHECK(is_trivial_group(p, 32).is_fail());
}

TEST_CASE("edge-path group requires cap >= 2 and a real basepoint") {
    CHECK_THROWS_AS(edge_path_group(nerve(point_cat(), 1), 0), std::invalid_argument);
    CHECK_THROWS_AS(edge_path_group(nerve(point_cat(), 2), 5), std::invalid_argument);
}

TEST_CASE("bounded Tietze simplification on the stated presentations") {
    GroupPresentation empty;
    CHECK(is_trivial_group(empty, 4).is_pass());

    GroupPresentation free1;
    free1.generators = {"a"};
    Verdict v1 = is_trivial_group(free1, 4);
    REQUIRE(v1.is_fail());
    CHECK(v1.witness.find("Z") != std::string::npos);

    // <a, b | aba^{-1}b^{-1}, a>: killing a leaves b free, so the verdict is
    // Fail via the abelianization
    GroupPresentation comm;
    comm.generators = {"a", "b"};
    comm.relators = {{1, 2, -1, -2}, {1}};
    Verdict v2 = is_trivial_group(comm, 64);
    REQUIRE(v2.is_fail());
    CHECK(v2.witness.find("Z") != std::string::npos);

    // <a, b | ab, a>: both generators die
    GroupPresentation t;
    t.generators = {"a", "b"};
    t.relators = {{1, 2}, {1}};
    CHECK(is_trivial_group(t, 64).is_pass());
}

TEST_CASE("abelianization matches H1 on the corpus (Hurewicz in degree 1)") {
    Rng rng(123);
    for (int trial = 0; trial < 12; ++trial) {
        TruncSSet x = nerve(random_category(rng), 3);
        if (x.empty() || pi0_count(x) != 1) continue;
        CHECK(abelianization(edge_path_group(x, 0)) == homology(x, 1).h(1));
    }
}

TEST_CASE("weak contractibility of cones, and its failure modes") {
    CHECK(weakly_contractible(nerve(chain_poset(2), 3), 2, 64).is_pass());
    Verdict disc = weakly_contractible(nerve(discrete_cat(2), 3), 2, 64);
    REQUIRE(disc.is_fail());
    CHECK(disc.witness.find("pi0") != std::string::npos);
    CHECK(weakly_contractible(nerve(indiscrete_cat(3), 3), 2, 64).is_pass());
    FinCatBuilder b;
    Verdict empty = weakly_contractible(nerve(b.finish(), 3), 2, 64);
    REQUIRE(empty.is_fail());
    CHECK(empty.witness.find("empty") != std::string::npos);
}

TEST_CASE("weak contractibility carries its caps in the verdict bounds") {
    Verdict v = weakly_contractible(nerve(point_cat(), 3), 2, 7);
    CHECK(v.bounds.find("upto=2") != std::string::npos);
    CHECK(v.bounds.find("effort=7") != std::string::npos);
}

TEST_CASE("cones pass weak contractibility at every degree within the cap") {
    for (int upto = 0; upto <= 2; ++upto)
        CHECK(weakly_contractible(nerve(chain_poset(3), 3), upto, 64).is_pass());
}

TEST_CASE("torsion coefficients form a divisibility chain") {
    Rng rng(321);
    for (int trial = 0; trial < 10; ++trial) {
        TruncSSet x = nerve(random_category(rng), 3);
        if (x.empty()) continue;
        HomologyReport h = homology(x, 2);
        for (int n = 0; n <= 2; ++n)
            for (std::size_t i = 0; i + 1 < h.h(n).torsion.size(); ++i)
                CHECK(h.h(n).torsion[i + 1] % h.h(n).torsion[i] == 0);
    }
}

TEST_CASE("smith invariants of a known matrix") {
    // diag-like example with a unimodular twist: invariants (1, 2)
    IntMatrix m = {{bigint(2), bigint(4)}, {bigint(-2), bigint(0)}};
    auto inv = smith_invariants(m);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 2);
    CHECK(inv[1] == 4);
}

TEST_CASE("abelian group arithmetic: direct sum, tensor, Tor") {
    AbelianGroup z{1, {}}, z2{0, {2}}, z4{0, {4}}, z6{0, {6}};
    CHECK(direct_sum(z2, z4).torsion == std::vector<bigint>{2, 4});
    // Z/2 + Z/6 normalizes to the chain (2, 6); Z/4 + Z/6 to (2, 12)
    CHECK(direct_sum(z4, z6).torsion == std::vector<bigint>{2, 12});
    CHECK(tensor(z, z2) == z2);
    CHECK(tensor(z2, z4) == z2);
    CHECK(tor_product(z2, z4) == z2);
    CHECK(tor_product(z, z2).trivial());
}

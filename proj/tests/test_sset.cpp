#include <catch2/catch_amalgamated.hpp>

#include "relcat/homotopy.hpp"
#include "relcat/sset.hpp"
#include "testutil.hpp"

using namespace relcat;
using namespace testutil;

namespace {

// Levelwise product bisimplicial set: B(n,k) = X_n x Y_k.
BiSSet levelwise_product(const TruncSSet& x, const TruncSSet& y) {
    BiSSet b;
    b.cap_row = x.cap;
    b.cap_col = y.cap;
    b.cells.assign(x.cap + 1, {});
    b.rface.assign(x.cap + 1, {});
    b.rdegen.assign(x.cap + 1, {});
    b.cface.assign(x.cap + 1, {});
    b.cdegen.assign(x.cap + 1, {});
    for (int n = 0; n <= x.cap; ++n) {
        b.cells[n].assign(y.cap + 1, {});
        b.rface[n].assign(y.cap + 1, {});
        b.rdegen[n].assign(y.cap + 1, {});
        b.cface[n].assign(y.cap + 1, {});
        b.cdegen[n].assign(y.cap + 1, {});
        for (int k = 0; k <= y.cap; ++k) {
            for (int i = 0; i < x.size(n); ++i)
                for (int j = 0; j < y.size(k); ++j) {
                    b.cells[n][k].push_back("(" + x.cells[n][i] + "|" + y.cells[k][j] + ")");
                    int id = static_cast<int>(b.cells[n][k].size()) - 1;
                    (void)id;
                    if (n >= 1) {
                        std::vector<int> row(n + 1);
                        for (int a = 0; a <= n; ++a) row[a] = x.d(n, i, a) * y.size(k) + j;
                        b.rface[n][k].push_back(row);
                    }
                    if (n < x.cap) {
                        std::vector<int> row(n + 1);
                        for (int a = 0; a <= n; ++a) row[a] = x.s(n, i, a) * y.size(k) + j;
                        b.rdegen[n][k].push_back(row);
                    }
                    if (k >= 1) {
                        std::vector<int> row(k + 1);
                        for (int a = 0; a <= k; ++a) row[a] = i * y.size(k - 1) + y.d(k, j, a);
                        b.cface[n][k].push_back(row);
                    }
                    if (k < y.cap) {
                        std::vector<int> row(k + 1);
                        for (int a = 0; a <= k; ++a) row[a] = i * y.size(k + 1) + y.s(k, j, a);
                        b.cdegen[n][k].push_back(row);
                    }
                }
        }
    }
    REQUIRE(validate_bisset(b).is_pass());
    return b;
}

}  // namespace

TEST_CASE("nerve of the terminal category has one nondegenerate cell") {
    TruncSSet x = nerve(point_cat(), 3);
    CHECK(x.nondegenerate_count(0) == 1);
    for (int n = 1; n <= 3; ++n) CHECK(x.nondegenerate_count(n) == 0);
    CHECK(validate_sset(x).is_pass());
}

TEST_CASE("nerve of the walking arrow: two vertices, one edge, nothing above") {
    TruncSSet x = nerve(walking_arrow(), 3);
    CHECK(x.nondegenerate_count(0) == 2);
    CHECK(x.nondegenerate_count(1) == 1);
    CHECK(x.nondegenerate_count(2) == 0);
    CHECK(x.nondegenerate_count(3) == 0);
}

TEST_CASE("nerve of BZ/2 has exactly one nondegenerate simplex per dimension") {
    TruncSSet x = nerve(bz_n(2), 3);
    for (int n = 0; n <= 3; ++n) CHECK(x.nondegenerate_count(n) == 1);
}

TEST_CASE("nondegenerate simplex counts match independent chain enumeration") {
    Rng rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        FinCat c = random_category(rng);
        TruncSSet x = nerve(c, 3);
        for (int n = 0; n <= 3; ++n)
            CHECK(x.nondegenerate_count(n) == count_nondegenerate_chains(c, n));
    }
}

TEST_CASE("nerve is invariant under relabeling") {
    FinCat c = chain_poset(2);
    FinCatBuilder b;
    // permuted names, same shape
    b.add_object("Z");
    b.add_object("Y");
    b.add_object("X");
    // X < Y < Z in the relabeled order (reverse of the declaration order)
    b.add_morphism("iZ", "Z", "Z");
    b.add_morphism("iY", "Y", "Y");
    b.add_morphism("iX", "X", "X");
    b.add_morphism("u", "X", "Y");
    b.add_morphism("v", "Y", "Z");
    b.add_morphism("w", "X", "Z");
    b.set_identity("X", "iX");
    b.set_identity("Y", "iY");
    b.set_identity("Z", "iZ");
    b.set_compose("iX", "iX", "iX");
    b.set_compose("iY", "iY", "iY");
    b.set_compose("iZ", "iZ", "iZ");
    b.set_compose("u", "iX", "u");
    b.set_compose("iY", "u", "u");
    b.set_compose("v", "iY", "v");
    b.set_compose("iZ", "v", "v");
    b.set_compose("w", "iX", "w");
    b.set_compose("iZ", "w", "w");
    b.set_compose("v", "u", "w");
    FinCat d = b.finish();
    TruncSSet xc = nerve(c, 3), xd = nerve(d, 3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(xc.size(n) == xd.size(n));
        CHECK(xc.nondegenerate_count(n) == xd.nondegenerate_count(n));
    }
    HomologyReport hc = homology(xc, 2), hd = homology(xd, 2);
    for (int n = 0; n <= 2; ++n) CHECK(hc.h(n) == hd.h(n));
}

TEST_CASE("product with a point is the identity on cell counts") {
    TruncSSet x = nerve(chain_poset(2), 2);
    TruncSSet pt = nerve(point_cat(), 2);
    TruncSSet p = product(x, pt);
    for (int n = 0; n <= 2; ++n) {
        CHECK(p.size(n) == x.size(n));
        CHECK(p.nondegenerate_count(n) == x.nondegenerate_count(n));
    }
}

TEST_CASE("square: nondegenerate shuffle counts of the product of two intervals") {
    TruncSSet d1 = standard_simplex(1, 2);
    TruncSSet p = product(d1, d1);
    CHECK(p.nondegenerate_count(0) == 4);
    CHECK(p.nondegenerate_count(1) == 5);
    CHECK(p.nondegenerate_count(2) == 2);
    CHECK(validate_sset(p).is_pass());
}

TEST_CASE("product with the empty simplicial set is empty") {
    FinCatBuilder b;
    TruncSSet e = nerve(b.finish(), 2);
    TruncSSet x = nerve(walking_arrow(), 2);
    TruncSSet p = product(e, x);
    for (int n = 0; n <= 2; ++n) CHECK(p.size(n) == 0);
}

TEST_CASE("product rejects mismatched caps") {
    TruncSSet a = nerve(point_cat(), 2), b = nerve(point_cat(), 3);
    CHECK_THROWS_AS(product(a, b), std::invalid_argument);
}

TEST_CASE("diagonal of a row-constant bisimplicial set returns the column sset") {
    TruncSSet x = nerve(walking_arrow(), 2);
    TruncSSet d = diagonal(constant_rows(x, 2));
    REQUIRE(d.cap == x.cap);
    for (int n = 0; n <= 2; ++n) {
        REQUIRE(d.size(n) == x.size(n));
        if (n >= 1)
            for (int i = 0; i < d.size(n); ++i)
                for (int k = 0; k <= n; ++k) CHECK(d.d(n, i, k) == x.d(n, i, k));
    }
}

TEST_CASE("diagonal of the levelwise product bisimplicial set is the product") {
    TruncSSet x = nerve(walking_arrow(), 2);
    TruncSSet y = standard_simplex(1, 2);
    TruncSSet dp = diagonal(levelwise_product(x, y));
    TruncSSet p = product(x, y);
    for (int n = 0; n <= 2; ++n) {
        REQUIRE(dp.size(n) == p.size(n));
        CHECK(dp.nondegenerate_count(n) == p.nondegenerate_count(n));
    }
}

TEST_CASE("diagonal of the identity-marked classification diagram is the nerve") {
    for (const FinCat& c : {walking_arrow(), bz_n(2), chain_poset(2)}) {
        BiSSet cd = classification_diagram(relcat_with_identities(c), 2, 2);
        TruncSSet d = diagonal(cd);
        TruncSSet n = nerve(c, 2);
        for (int k = 0; k <= 2; ++k) {
            CHECK(d.size(k) == n.size(k));
            CHECK(d.nondegenerate_count(k) == n.nondegenerate_count(k));
        }
    }
}

TEST_CASE("for groupoids the diagonal at identity marking computes the homology of N(K(C))") {
    for (const FinCat& c : {bz_n(2), discrete_cat(2), indiscrete_cat(2)}) {
        BiSSet cd = classification_diagram(relcat_with_identities(c), 2, 2);
        HomologyReport hd = homology(diagonal(cd), 1);
        HomologyReport hk = homology(nerve(max_subgroupoid(c), 2), 1);
        CHECK(hd.h(0) == hk.h(0));
        CHECK(hd.h(1) == hk.h(1));
    }
}

TEST_CASE("classification diagram with identity marking has discrete rows") {
    FinCat c = walking_arrow();
    BiSSet cd = classification_diagram(relcat_with_identities(c), 1, 2);
    for (int n = 0; n <= 1; ++n) {
        TruncSSet row = bisset_row(cd, n);
        int chains = static_cast<int>(enumerate_chains(c, n).size());
        CHECK(row.nondegenerate_count(0) == chains);
        CHECK(row.nondegenerate_count(1) == 0);
    }
}

TEST_CASE("classification diagram of the fully marked walking arrow has a connected row 0") {
    BiSSet cd = classification_diagram(relcat_all_marked(walking_arrow()), 1, 2);
    TruncSSet row0 = bisset_row(cd, 0);
    CHECK(pi0_count(row0) == 1);
    CHECK(validate_sset(row0).is_pass());
}

TEST_CASE("classification diagram of fully marked BZ/2 has the nerve of BZ/2 as row 0") {
    BiSSet cd = classification_diagram(relcat_all_marked(bz_n(2)), 1, 2);
    TruncSSet row0 = bisset_row(cd, 0);
    TruncSSet nb = nerve(bz_n(2), 2);
    for (int k = 0; k <= 2; ++k) CHECK(row0.size(k) == nb.size(k));
}

TEST_CASE("mapping simplex of a single category is its nerve") {
    FunctorSequence seq;
    seq.categories.push_back(walking_arrow());
    TruncSSet m = mapping_simplex(seq, 3);
    TruncSSet n = nerve(walking_arrow(), 3);
    for (int k = 0; k <= 3; ++k) {
        CHECK(m.size(k) == n.size(k));
        CHECK(m.nondegenerate_count(k) == n.nondegenerate_count(k));
    }
}

TEST_CASE("mapping simplex of two terminal categories is the interval") {
    FunctorSequence seq;
    seq.categories = {point_cat(), point_cat()};
    Functor f;
    f.domain = point_cat();
    f.codomain = point_cat();
    f.omap = {0};
    f.mmap = {0};
    seq.functors = {f};
    TruncSSet m = mapping_simplex(seq, 2);
    TruncSSet d1 = standard_simplex(1, 2);
    for (int k = 0; k <= 2; ++k) {
        CHECK(m.size(k) == d1.size(k));
        CHECK(m.nondegenerate_count(k) == d1.nondegenerate_count(k));
    }
}

TEST_CASE("mapping simplex cell counts match direct pair enumeration") {
    FunctorSequence seq;
    seq.categories = {walking_arrow(), point_cat()};
    seq.functors = {collapse_to_point(walking_arrow())};
    TruncSSet m = mapping_simplex(seq, 2);
    // independent oracle: count pairs (alpha: [k] -> [1], k-chain of C^{alpha(0)})
    for (int k = 0; k <= 2; ++k) {
        long long count = 0;
        // alphas are weakly increasing (k+1)-tuples over {0,1}: start index t
        // encodes the first position taking value 1 (t = k+1 means all zero)
        for (int t = 0; t <= k + 1; ++t) {
            const FinCat& home = (t > 0) ? seq.categories[0] : seq.categories[1];
            count += static_cast<long long>(enumerate_chains(home, k).size());
        }
        CHECK(m.size(k) == count);
    }
    CHECK(validate_sset(m).is_pass());
}

TEST_CASE("mapping simplex colimit presentation: n = 0 and terminal pair") {
    FunctorSequence s0;
    s0.categories.push_back(walking_arrow());
    CHECK(mapping_simplex_colimit_check(s0, 2).is_pass());

    FunctorSequence s1;
    s1.categories = {point_cat(), point_cat()};
    Functor f;
    f.domain = point_cat();
    f.codomain = point_cat();
    f.omap = {0};
    f.mmap = {0};
    s1.functors = {f};
    CHECK(mapping_simplex_colimit_check(s1, 2).is_pass());
}

TEST_CASE("mapping simplex colimit presentation at n = 2 with mixed functors") {
    FunctorSequence seq;
    seq.categories = {walking_arrow(), point_cat(), walking_arrow()};
    Functor f2;
    f2.domain = point_cat();
    f2.codomain = walking_arrow();
    f2.omap = {1};
    f2.mmap = {walking_arrow().find_morphism("id1")};
    seq.functors = {collapse_to_point(walking_arrow()), f2};
    REQUIRE(validate_sequence(seq).is_pass());
    CHECK(mapping_simplex_colimit_check(seq, 2).is_pass());
}

TEST_CASE("random nerves and products pass the simplicial-identity audit") {
    Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        FinCat c = random_category(rng, 4, 10);
        TruncSSet x = nerve(c, 3);
        CHECK(validate_sset(x).is_pass());
        TruncSSet p = product(x, x);
        CHECK(validate_sset(p).is_pass());
    }
}

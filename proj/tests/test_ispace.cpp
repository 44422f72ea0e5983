#include <catch_amalgamated.hpp>

#include "itop/homology.hpp"
#include "itop/ispace.hpp"
#include "oracles.hpp"

using namespace itop;

namespace {

SSet based_circle() {
    SSet c = circle();
    c.basepoint = 0;
    return c;
}

}  // namespace

TEST_CASE("MultiProduct") {
    SSet s0 = sphere0();
    MultiProduct p3({&s0, &s0, &s0});
    CHECK(p3.sset().count(0) == 8);
    CHECK(p3.sset().top_dim() == 0);
    REQUIRE(p3.sset().basepoint);
    CHECK(p3.tuple_of(0, *p3.sset().basepoint) == std::vector<SimplexRef>(3, SimplexRef{0, 0, 0}));

    SSet c = circle();
    MultiProduct t({&c, &c});
    Product q(c, c);
    for (int k = 0; k <= 2; ++k) CHECK(t.sset().count(k) == q.sset().count(k));
    CHECK(homology(t.sset(), 2).same_groups(homology(q.sset(), 2)));

    MultiProduct empty(std::vector<const SSet*>{});
    CHECK(empty.sset().count(0) == 1);
    CHECK(empty.lookup({}, 2) == SSet::degenerate_vertex(0, 2));
}

TEST_CASE("ispace constructors validate") {
    for (int N = 0; N <= 3; ++N) {
        INFO("N = " << N);
        CHECK(validate_ispace(terminal_ispace(N)).empty());
        CHECK(validate_ispace(constant_ispace(circle(), N)).empty());
        for (int n = 0; n <= N; ++n) CHECK(validate_ispace(free_ispace(n, N)).empty());
        CHECK(validate_ispace(power_ispace(sphere0(), N)).empty());
        CHECK(validate_ispace(collapsing_example(N)).empty());
    }
    CHECK(validate_ispace(power_ispace(based_circle(), 2)).empty());
}

TEST_CASE("ispace level sizes") {
    ISpaceT p = power_ispace(sphere0(), 4);
    for (int n = 0; n <= 4; ++n) CHECK(p.level(n).count(0) == (1 << n));
    ISpaceT f = free_ispace(2, 4);
    for (int n = 0; n <= 4; ++n) CHECK(f.level(n).count(0) == oracle::injection_count(2, n));
    ISpaceT t = power_ispace(based_circle(), 2);
    auto h = homology(t.level(2), 2);
    CHECK(h[1] == HomologyGroup{2, {}});
    CHECK(h[2] == HomologyGroup{1, {}});
}

TEST_CASE("ispace mutation is detected") {
    ISpaceT x = power_ispace(sphere0(), 2);
    const TruncatedI& t = x.cat();
    // swap the two coordinates under the inclusion 1 -> 2
    int f = t.id_of(standard_inclusion(1, 2));
    x.action(f).image[0][1] = x.action(t.id_of(Injection{1, 2, {1}})).image[0][1];
    CHECK_FALSE(validate_ispace(x).empty());

    ISpaceT y = terminal_ispace(2);
    y.level(2).basepoint.reset();
    y.level(2).add_vertex();
    y.level(2).basepoint = 1;
    CHECK_FALSE(validate_ispace(y).empty());
}

TEST_CASE("R and j") {
    ISpaceT f = free_ispace(1, 3);
    ISpaceT r = R_functor(f);
    CHECK(r.trunc() == 2);
    CHECK(validate_ispace(r).empty());
    for (int n = 0; n <= 2; ++n) CHECK(r.level(n).count(0) == n + 1);
    ISpaceMap j = j_map(f);
    CHECK(validate_ispace_map(j, restrict_trunc(f, 2), r).empty());

    ISpaceT p = power_ispace(based_circle(), 3);
    CHECK(validate_ispace_map(j_map(p), restrict_trunc(p, 2), R_functor(p)).empty());
    ISpaceMap bad = j_map(p);
    bad.level[1] = p.action(Injection{1, 2, {0}});
    CHECK_FALSE(validate_ispace_map(bad, restrict_trunc(p, 2), R_functor(p)).empty());
}

TEST_CASE("latching") {
    ISpaceT p = power_ispace(sphere0(), 3);
    for (int n = 0; n <= 3; ++n) {
        Latching l = latching(p, n);
        // tuples with at least one basepoint coordinate
        CHECK(l.sset.count(0) == (1 << n) - 1);
        CHECK_FALSE(injectivity_witness(l.map, 0));
    }
    ISpaceT c = power_ispace(based_circle(), 2);
    Latching w = latching(c, 2);
    CHECK(validate_sset(w.sset).empty());
    CHECK(validate_smap(w.map, w.sset, c.level(2)).empty());
    auto h = homology(w.sset, 1);
    CHECK(h[0] == HomologyGroup{1, {}});
    CHECK(h[1] == HomologyGroup{2, {}});

    ISpaceT f = free_ispace(2, 3);
    CHECK(latching(f, 2).sset.count(0) == 0);
    CHECK(latching(f, 3).sset.count(0) == 6);
}

TEST_CASE("flatness") {
    for (int N = 1; N <= 3; ++N) {
        CHECK(is_flat(terminal_ispace(N)).flat);
        CHECK(is_flat(constant_ispace(circle(), N)).flat);
        CHECK(is_flat(free_ispace(1, N)).flat);
        CHECK(is_flat(power_ispace(sphere0(), N)).flat);
    }
    for (int N = 2; N <= 3; ++N) {
        ISpaceT x = collapsing_example(N);
        FlatCertificate c = is_flat(x);
        CHECK_FALSE(c.flat);
        CHECK(c.kind == FlatCertificate::Kind::non_injective);
        CHECK(c.morphism.m == 1);
        CHECK(c.morphism.n == 2);
        CHECK(replay_flat_witness(x, c));
        CHECK_FALSE(replay_flat_witness(power_ispace(sphere0(), N), c));
    }
    CHECK(is_flat(collapsing_example(1)).flat);
}

TEST_CASE("flatness intersection failure") {
    // injective, but both inclusions 1 -> 2 hit the single point of X(2)
    // while X(0) is empty
    ISpaceT x(2);
    x.level(0) = discrete(0);
    x.level(1) = discrete(1);
    x.level(2) = discrete(1);
    x.set_action([](int, const SimplexRef&) { return SimplexRef{0, 0, 0}; });
    REQUIRE(validate_ispace(x).empty());
    FlatCertificate c = is_flat(x);
    CHECK_FALSE(c.flat);
    CHECK(c.kind == FlatCertificate::Kind::intersection);
    CHECK(c.l + c.m + c.n == 2);
    CHECK(c.m == 0);
    CHECK(replay_flat_witness(x, c));
}

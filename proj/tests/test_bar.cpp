#include <catch_amalgamated.hpp>

#include "itop/bar.hpp"
#include "itop/semistability.hpp"

using namespace itop;

namespace {

SSet based_circle() {
    SSet c = circle();
    c.basepoint = 0;
    return c;
}

}  // namespace

TEST_CASE("bar construction of the terminal monoid") {
    CIMonoidT t = terminal_monoid(2);
    BarMonoid b(t, 3);
    for (int n = 0; n <= 2; ++n) {
        CHECK(validate_bisset(b.bisimplicial(n)).empty());
        CHECK(b.ispace().level(n).count(0) == 1);
        for (int k = 1; k <= 3; ++k) CHECK(b.ispace().level(n).count(k) == 0);
    }
    CHECK(validate_ispace(b.ispace()).empty());
}

TEST_CASE("bar degrees of C_1") {
    CIMonoidT c = c1(3);
    BarMonoid b(c, 3);
    for (int n = 0; n <= 3; ++n) {
        INFO("n = " << n);
        CHECK(validate_bisset(b.bisimplicial(n)).empty());
        // B_0 = unit, B_1 = A
        CHECK(b.box(0).ispace().level(n).count(0) == 1);
        CHECK(b.box(1).ispace().level(n).count(0) == c.carrier.level(n).count(0));
    }
    CHECK(validate_ispace(b.ispace()).empty());
    // B(C_1)(n) is the n-fold power of the simplicial circle, through dimension 3
    ISpaceT s = power_ispace(based_circle(), 3, 3);
    for (int n = 0; n <= 3; ++n) {
        auto h = homology(b.ispace().level(n), 2);
        auto g = homology(s.level(n), 2);
        CHECK(h.same_groups(g));
    }
    CHECK(validate_monoid(restrict_monoid(b.monoid(), 2)).empty());
}

TEST_CASE("the chain monoid of C_1") {
    CIMonoidT c = c1(2);
    ChainMonoid h(c, 2);
    const FullTable& t = h.table();
    for (int q = 0; q <= 2; ++q)
        for (const auto& u : t.at(q)) {
            auto cu = h.unfold(u);
            CHECK(h.hocolim().lookup(cu.chain, cu.x) == u);
            CHECK(h.mul(h.unit(q), u) == u);
            CHECK(h.mul(u, h.unit(q)) == u);
        }
}

TEST_CASE("bar comparison on small inputs") {
    CIMonoidT t = terminal_monoid(2);
    auto rt = bar_comparison(t, 1);
    REQUIRE(rt.at.size() == 2);
    for (auto& c : rt.at) {
        CHECK(c.bar_hocolim.reduced_trivial());
        CHECK(c.two_sided.reduced_trivial());
        CHECK(c.hocolim_bar.reduced_trivial());
        CHECK(c.iso());
    }
    CHECK(rt.stable);
}

TEST_CASE("bar comparison for C_1") {
    auto r = bar_comparison(c1(3), 1);
    REQUIRE(r.at.size() == 2);
    const HomologyReport expect{{HomologyGroup{1, {}}, HomologyGroup{1, {}}}};
    auto gp = grothendieck_group(pi0_monoid(c1(3)).pres);
    for (auto& c : r.at) {
        INFO("N = " << c.trunc);
        CHECK(c.bar_hocolim.groups == expect.groups);
        CHECK(c.two_sided.groups == expect.groups);
        CHECK(c.hocolim_bar.groups == expect.groups);
        CHECK(c.hocolim_bar.groups[1] == gp);
        CHECK(c.iso());
    }
    CHECK(r.stable);
}

TEST_CASE("comparison maps are simplicial") {
    CIMonoidT c = c1(2);
    BarMonoid bar(c, 2);
    Hocolim bh(bar.ispace(), IndexCat::I, 2);
    CIMonoidT point = terminal_monoid(2);
    ChainMonoid h(c, 2), bi(point, 2);
    ChainBar two(h, &bi, 2), one(h, nullptr, 2);
    CHECK(validate_sset(two.sset()).empty());
    CHECK(validate_sset(one.sset()).empty());
    CHECK(validate_smap(assemble_chains(two, h, bar, bh), two.sset(), bh.sset()).empty());
    CHECK(validate_smap(collapse_modules(two, one), two.sset(), one.sset()).empty());
}

TEST_CASE("bar comparison for M") {
    CHECK_THROWS_AS(bar_comparison(example_monoid_M(2), 1), Refusal);
    auto r = bar_comparison(subset_model_M(3), 1);
    for (auto& c : r.at) {
        CHECK(c.hocolim_bar.groups[1] == HomologyGroup{1, {}});
        CHECK(c.iso());
    }
    CHECK(r.stable);
}

TEST_CASE("iterated bar spectrum") {
    auto t = iterated_bar_spectrum(terminal_monoid(2), 2, 1);
    for (auto& l : t) CHECK(l.homology.reduced_trivial());
    auto c = iterated_bar_spectrum(c1(3), 1, 1);
    CHECK(c[0].homology.groups[0] == HomologyGroup{4, {}});
    CHECK(c[1].homology.groups[0] == HomologyGroup{1, {}});
    CHECK(c[1].homology.groups[1] == HomologyGroup{1, {}});
}

TEST_CASE("B(A) is not refuted as semistable") {
    CIMonoidT c = c1(3);
    BarMonoid b(c, 2);
    auto v = semistability_diagnostic(b.ispace(), 0, 2);
    CHECK(v.kind != SemistabilityVerdict::Kind::refuted);
}

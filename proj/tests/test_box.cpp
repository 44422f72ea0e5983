#include <catch_amalgamated.hpp>

#include <set>

#include "itop/box.hpp"
#include "itop/homology.hpp"
#include "oracles.hpp"

using namespace itop;

namespace {

SSet based_circle() {
    SSet c = circle();
    c.basepoint = 0;
    return c;
}

// pairs (alpha(S), alpha(n1 + T)) over all elements of the disjoint union
// for X = Y = (S^0)^., read off by brute force
std::size_t subset_box_classes(int n) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n1 + n2 <= n; ++n2)
            for (auto& a : enumerate_injections(n1 + n2, n))
                for (int s = 0; s < (1 << n1); ++s)
                    for (int t = 0; t < (1 << n2); ++t) {
                        std::vector<int> A(n, 0), B(n, 0);
                        for (int i = 0; i < n1; ++i)
                            if (s >> i & 1) A[a(i)] = 1;
                        for (int i = 0; i < n2; ++i)
                            if (t >> i & 1) B[a(n1 + i)] = 1;
                        seen.emplace(A, B);
                    }
    return seen.size();
}

// F_m [] F_n -> F_{m+n}: ((a, b, alpha), f, g) -> alpha o (f | g)
ISpaceMap free_concat(const Box& b, int m, int n) {
    ISpaceMap out;
    for (int k = 0; k <= b.trunc(); ++k) {
        SMap s;
        s.image.resize(1);
        for (int id = 0; id < b.ispace().level(k).count(0); ++id) {
            auto [ob, t] = b.representative(k, 0, id);
            Injection f = enumerate_injections(m, ob.sizes[0])[t[0].base];
            Injection g = enumerate_injections(n, ob.sizes[1])[t[1].base];
            s.image[0].push_back({0, 0, injection_rank(compose(ob.alpha, concat(f, g)))});
        }
        out.level.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("box unit") {
    for (int N = 1; N <= 3; ++N) {
        ISpaceT f0 = free_ispace(0, N);
        for (const ISpaceT& y : {power_ispace(sphere0(), N), free_ispace(1, N), collapsing_example(N)}) {
            Box b = box(f0, y);
            CHECK(validate_ispace(b.ispace()).empty());
            CHECK_FALSE(level_iso_witness(left_unit(b), b.ispace(), y));
        }
    }
    ISpaceT y = power_ispace(based_circle(), 2);
    Box b = box(free_ispace(0, 2), y);
    CHECK_FALSE(level_iso_witness(left_unit(b), b.ispace(), y));
}

TEST_CASE("box of free I-spaces") {
    const int N = 4;
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; m + n <= 3; ++n) {
            INFO("m = " << m << ", n = " << n);
            ISpaceT fm = free_ispace(m, N), fn = free_ispace(n, N);
            Box b = box(fm, fn);
            for (int k = 0; k <= N; ++k) CHECK(b.ispace().level(k).count(0) == oracle::injection_count(m + n, k));
            CHECK_FALSE(level_iso_witness(free_concat(b, m, n), b.ispace(), free_ispace(m + n, N)));
        }
    ISpaceT f1 = free_ispace(1, 2);
    CHECK(box(f1, f1).ispace().level(2).count(0) == 2);
}

TEST_CASE("box of subset I-spaces against enumeration") {
    ISpaceT c = power_ispace(sphere0(), 3);
    Box b = box(c, c);
    CHECK(validate_ispace(b.ispace()).empty());
    for (int n = 0; n <= 3; ++n) CHECK(b.ispace().level(n).count(0) == subset_box_classes(n));
    CHECK(b.ispace().level(2).count(0) == 9);
    REQUIRE(b.ispace().level(2).basepoint);
}

TEST_CASE("box symmetry") {
    ISpaceT x = power_ispace(sphere0(), 3);
    ISpaceT y = free_ispace(1, 3);
    Box xy = box(x, y), yx = box(y, x);
    ISpaceMap s = box_symmetry(xy, yx);
    CHECK_FALSE(level_iso_witness(s, xy.ispace(), yx.ispace()));
    ISpaceMap back = box_symmetry(yx, xy);
    CHECK(compose_maps(back, s).level == identity_map(xy.ispace()).level);

    ISpaceT k = power_ispace(based_circle(), 2);
    ISpaceT f1 = free_ispace(1, 2);
    Box a = box(k, f1), c = box(f1, k);
    CHECK(validate_ispace(a.ispace()).empty());
    CHECK_FALSE(level_iso_witness(box_symmetry(a, c), a.ispace(), c.ispace()));
}

TEST_CASE("box maps and rho") {
    ISpaceT x = power_ispace(sphere0(), 3);
    ISpaceT f0 = free_ispace(0, 3);
    Box b = box(x, f0);
    ProductISpace p(x, f0);
    ISpaceMap r = rho(b, p);
    CHECK(validate_ispace_map(r, b.ispace(), p.ispace()).empty());
    CHECK_FALSE(level_iso_witness(r, b.ispace(), p.ispace()));

    Box xx = box(x, x);
    ProductISpace pp(x, x);
    ISpaceMap rr = rho(xx, pp);
    CHECK(validate_ispace_map(rr, xx.ispace(), pp.ispace()).empty());
    // 3^n disjoint pairs inside 4^n pairs
    CHECK(injectivity_witness(rr.level[3], 0) == std::nullopt);
    CHECK(pp.ispace().level(3).count(0) == 64);

    ISpaceMap id = identity_map(x);
    ISpaceMap bm = box_map(xx, xx, {&id, &id});
    CHECK(bm.level == identity_map(xx.ispace()).level);
}

TEST_CASE("pushout identity for R and box") {
    for (int N = 1; N <= 3; ++N) {
        INFO("N = " << N);
        ISpaceT s = power_ispace(sphere0(), N);
        ISpaceT f1 = free_ispace(1, N);
        ISpaceT f0 = free_ispace(0, N);
        CHECK(check_pushout_identity(s, s).commutes());
        CHECK(check_pushout_identity(f1, s).commutes());
        CHECK(check_pushout_identity(s, f0).commutes());
        CHECK(check_pushout_identity(collapsing_example(N), f1).commutes());
    }
    CHECK(check_pushout_identity(power_ispace(based_circle(), 2), free_ispace(1, 2)).commutes());
}

TEST_CASE("box preserves flatness") {
    ISpaceT s = power_ispace(sphere0(), 3);
    ISpaceT f1 = free_ispace(1, 3);
    CHECK(is_flat(box(s, s).ispace()).flat);
    CHECK(is_flat(box(s, f1).ispace()).flat);
    CHECK(is_flat(ProductISpace(s, f1).ispace()).flat);
}

TEST_CASE("k-ary box") {
    ISpaceT s = power_ispace(sphere0(), 3);
    Box b0({}, 3);
    for (int n = 0; n <= 3; ++n) CHECK(b0.ispace().level(n).count(0) == 1);
    Box b1({&s});
    ISpaceMap ev;
    for (int n = 0; n <= 3; ++n) {
        SMap m;
        m.image.resize(1);
        for (int id = 0; id < b1.ispace().level(n).count(0); ++id) {
            auto [ob, t] = b1.representative(n, 0, id);
            m.image[0].push_back(s.action(ob.alpha).apply(t[0]));
        }
        ev.level.push_back(std::move(m));
    }
    CHECK_FALSE(level_iso_witness(ev, b1.ispace(), s));
    Box b3({&s, &s, &s});
    CHECK(validate_ispace(b3.ispace()).empty());
    // ordered triples of disjoint subsets
    for (int n = 0; n <= 3; ++n) {
        int p = 1;
        for (int i = 0; i < n; ++i) p *= 4;
        CHECK(b3.ispace().level(n).count(0) == p);
    }
}

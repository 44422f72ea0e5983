#include <catch_amalgamated.hpp>

#include <random>

#include "itop/bisset.hpp"
#include "itop/fincat.hpp"
#include "itop/homology.hpp"
#include "itop/sset.hpp"
#include "oracles.hpp"

using namespace itop;

namespace {

std::vector<oracle::Dense> dense_boundaries(const SSet& x, int top) {
    ChainComplex c = normalized_chains(x, top);
    std::vector<oracle::Dense> d(top + 1);
    for (int k = 1; k <= top; ++k) {
        d[k].assign(c.rank[k - 1], std::vector<oracle::Big>(c.rank[k], 0));
        for (int j = 0; j < c.rank[k]; ++j)
            for (auto& [r, v] : c.boundary[k].columns[j]) d[k][r][j] = v;
    }
    return d;
}

void check_against_oracle(const SSet& x, int deg) {
    auto rep = homology(x, deg);
    std::vector<int> dims;
    for (int k = 0; k <= deg + 1; ++k) dims.push_back(x.count(k));
    auto ref = oracle::homology_from_dense(dims, dense_boundaries(x, deg + 1), deg);
    for (int k = 0; k <= deg; ++k) {
        CHECK(rep[k].rank == ref[k].rank);
        CHECK(rep[k].torsion == ref[k].torsion);
    }
}

HomologyGroup Z(int r = 1) { return {r, {}}; }
HomologyGroup Zmod(int n) { return {0, {BigInt(n)}}; }
HomologyGroup zero() { return {}; }

const std::vector<std::vector<int>> kZ2 = {{0, 1}, {1, 0}};

}  // namespace

TEST_CASE("degeneracy masks compose and factor") {
    // s_1 s_0 on a vertex: collapse everything
    CHECK(surj_degen(surj_degen(0, 0), 1) == 0b11);
    // s_0 then s_0 gives positions {0,1}
    CHECK(surj_degen(surj_degen(0, 0), 0) == 0b11);
    // d_0 s_0 = id
    auto f = surj_face(1, 0b1, 0);
    CHECK(!f.lost);
    CHECK(f.mask == 0);
    // d_1 s_0 = id on a 1-simplex s_0 x (x an edge): collapse set {0} in dim 2
    auto g = surj_face(2, 0b01, 1);
    CHECK(!g.lost);
    CHECK(g.mask == 0);
    // d_2 s_0 = s_0 d_1
    auto h = surj_face(2, 0b01, 2);
    CHECK(h.lost);
    CHECK(h.missed == 1);
    CHECK(h.mask == 0b1);
    CHECK(surj_compose(2, 0b01, 0b1) == 0b11);
    CHECK(surj_factor(3, 0b101, 0b001) == 0b10);
}

TEST_CASE("validate_sset") {
    SSet d1 = delta(1);
    CHECK(d1.count(0) == 2);
    CHECK(d1.count(1) == 1);
    CHECK(validate_sset(d1).empty());
    CHECK(validate_sset(circle()).empty());
    CHECK(validate_sset(delta(3)).empty());

    // swapping one face pointer of the 2-simplex breaks exactly one identity class
    SSet d2 = delta(2);
    SimplexRef f0 = d2.face_nd(2, 0, 0);
    SimplexRef f1 = d2.face_nd(2, 0, 1);
    d2.set_face_nd(2, 0, 0, f1);
    d2.set_face_nd(2, 0, 1, f0);
    CHECK_FALSE(validate_sset(d2).empty());

    // on Delta^1 swapping d0 and d1 of the edge gives a valid set again; swapping
    // a face to a wrong vertex type is the single violation case
    SSet bad = delta(1);
    bad.set_face_nd(1, 0, 0, {1, 0, 0});
    CHECK(validate_sset(bad).size() == 1);
}

TEST_CASE("products") {
    Product p(delta(1), point());
    CHECK(p.sset().count(0) == 2);
    CHECK(p.sset().count(1) == 1);
    CHECK(p.sset().count(2) == 0);

    Product sq(delta(1), delta(1));
    // brute-force count of nondegenerate pairs with disjoint collapse sets
    std::vector<int> brute(3, 0);
    SSet d1 = delta(1);
    for (int k = 0; k <= 2; ++k)
        for (auto& a : d1.simplices(k))
            for (auto& b : d1.simplices(k))
                if ((a.deg & b.deg) == 0) ++brute[k];
    CHECK(sq.sset().count(0) == 4);
    CHECK(sq.sset().count(1) == 5);
    CHECK(sq.sset().count(2) == 2);
    for (int k = 0; k <= 2; ++k) CHECK(sq.sset().count(k) == brute[k]);
    CHECK(validate_sset(sq.sset()).empty());
    CHECK(validate_smap(sq.proj1(), sq.sset(), d1).empty());
    CHECK(validate_smap(sq.proj2(), sq.sset(), d1).empty());

    Product torus(circle(), circle());
    CHECK(validate_sset(torus.sset()).empty());
    auto h = homology(torus.sset(), 2);
    CHECK(h[0] == Z());
    CHECK(h[1] == Z(2));
    CHECK(h[2] == Z());
    check_against_oracle(torus.sset(), 2);

    Product cube(Product(delta(1), delta(1)).sset(), delta(1));
    CHECK(cube.sset().count(3) == 6);
    CHECK(validate_sset(cube.sset()).empty());
    CHECK(homology(cube.sset(), 3).reduced_trivial());
}

TEST_CASE("quotients") {
    SSet d1 = delta(1);
    SubSet all{{1, 1}, {1}};
    auto q = quotient(d1, all);
    CHECK(q.sset.count(0) == 1);
    CHECK(q.sset.count(1) == 0);

    SubSet bdry{{1, 1}, {0}};
    auto s1 = quotient(d1, bdry);
    CHECK(s1.sset.count(0) == 1);
    CHECK(s1.sset.count(1) == 1);
    CHECK(validate_sset(s1.sset).empty());
    CHECK(homology(s1.sset, 1)[1] == Z());

    SSet d2 = delta(2);
    SubSet skel{{1, 1, 1}, {1, 1, 1}, {0}};
    auto s2 = quotient(d2, skel);
    CHECK(s2.sset.count(0) == 1);
    CHECK(s2.sset.count(1) == 0);
    CHECK(s2.sset.count(2) == 1);
    CHECK(validate_sset(s2.sset).empty());
    auto h = homology(s2.sset, 2);
    CHECK(h[1].is_zero());
    CHECK(h[2] == Z());
    CHECK(validate_smap(s2.projection, d2, s2.sset).empty());

    SubSet not_closed{{0, 0, 0}, {1, 0, 0}, {0}};
    CHECK_THROWS_AS(quotient(d2, not_closed), InvalidInput);
}

TEST_CASE("pi0") {
    CHECK(pi0(discrete(2)).count() == 2);
    CHECK(pi0(circle()).count() == 1);
    SSet u = disjoint_union(delta(1), point());
    auto c = pi0(u);
    CHECK(c.count() == 2);
    CHECK(c.rep == std::vector<int>{0, 2});
    // brute force: vertices joined by an edge share a class
    for (int e = 0; e < u.count(1); ++e)
        CHECK(c.of_vertex[u.face_nd(1, e, 0).base] == c.of_vertex[u.face_nd(1, e, 1).base]);
}

TEST_CASE("homology basics") {
    auto hp = homology(point(), 3);
    CHECK(hp[0] == Z());
    for (int k = 1; k <= 3; ++k) CHECK(hp[k].is_zero());
    auto hc = homology(circle(), 2);
    CHECK(hc[0] == Z());
    CHECK(hc[1] == Z());
    CHECK(hc[2].is_zero());
    auto hs = homology(boundary_delta(3), 2);
    CHECK(hs[2] == Z());
    CHECK(hs[1].is_zero());
    check_against_oracle(boundary_delta(4), 3);
}

TEST_CASE("nerves") {
    FinCategory one = group_category({{0}});
    auto n1 = nerve(one, 3);
    CHECK(n1.sset.total_count() == 1);

    FinCategory z2 = group_category(kZ2);
    CHECK(validate_category(z2).empty());
    auto nz = nerve(z2, 4);
    CHECK(validate_sset(nz.sset).empty());
    auto h = homology(nz.sset, 3);
    CHECK(h[0] == Z());
    CHECK(h[1] == Zmod(2));
    CHECK(h[2] == zero());
    CHECK(h[3] == Zmod(2));
    auto ref = oracle::group_homology(kZ2, 3);
    for (int k = 0; k <= 3; ++k) {
        CHECK(h[k].rank == ref[k].rank);
        CHECK(h[k].torsion == ref[k].torsion);
    }
    check_against_oracle(nz.sset, 3);

    // Z/3 as a further oracle comparison
    std::vector<std::vector<int>> z3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    auto h3 = homology(nerve(group_category(z3), 4).sset, 3);
    auto r3 = oracle::group_homology(z3, 3);
    for (int k = 0; k <= 3; ++k) CHECK(h3[k].torsion == r3[k].torsion);

    // categories with an initial object are contractible
    auto lo = nerve(linear_order(3), 4);
    CHECK(validate_sset(lo.sset).empty());
    CHECK(homology(lo.sset, 3).reduced_trivial());

    // a broken composition table is rejected
    FinCategory bad = group_category({{0, 1, 2}, {1, 2, 1}, {2, 2, 1}});
    CHECK_FALSE(validate_category(bad).empty());
    CHECK_THROWS_AS(nerve(bad, 2), InvalidInput);
}

TEST_CASE("truncated sets refuse high-degree homology") {
    auto nz = nerve(group_category(kZ2), 2);
    CHECK_THROWS_AS(homology(nz.sset, 2), BudgetExceeded);
}

TEST_CASE("smith invariants vs Bareiss rank") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + rng() % 6, n = 1 + rng() % 6;
        SparseMatrix s(m, n);
        oracle::Dense d(m, std::vector<oracle::Big>(n, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (rng() % 3 == 0) {
                    int v = static_cast<int>(rng() % 7) - 3;
                    s.add(i, j, v);
                    d[i][j] = v;
                }
        s.finalize();
        auto r = smith_invariants(s);
        CHECK(r.rank == oracle::bareiss_rank(d));
        std::vector<BigInt> ref;
        for (auto& e : oracle::elementary_divisors(d))
            if (e > 1) ref.push_back(e);
        CHECK(r.torsion == ref);
    }
}

TEST_CASE("smith invariants fall back to arbitrary precision") {
    SparseMatrix s(2, 2);
    const std::int64_t big = std::int64_t(1) << 62;
    s.add(0, 0, big);
    s.add(0, 1, 3);
    s.add(1, 0, 5);
    s.add(1, 1, big);
    s.finalize();
    auto r = smith_invariants(s);
    CHECK(r.used_bigint);
    CHECK(r.rank == 2);
    oracle::Dense d{{oracle::Big(big), 3}, {5, oracle::Big(big)}};
    CHECK(r.rank == oracle::bareiss_rank(d));
}

TEST_CASE("map verdicts") {
    SSet d1 = delta(1);
    SMap incl;
    incl.image = {{{0, 0, 0}}};
    SSet pt = point();
    auto v = map_verdict(incl, pt, d1, 2);
    CHECK(v.iso);
    SMap incl2;
    incl2.image = {{{0, 0, 0}}};
    auto w = map_verdict(incl2, pt, discrete(2), 1);
    CHECK_FALSE(w.iso);
    CHECK(w.failure == 0);
}

TEST_CASE("bisimplicial diagonals") {
    SSet d1 = delta(1);
    BiSSet ext = external_product(d1, d1, 3);
    CHECK(validate_bisset(ext).empty());
    Normalized dg = diag_full(ext);
    CHECK(validate_sset(dg.sset).empty());
    Product pr(d1, d1);
    for (int k = 0; k <= 2; ++k) CHECK(dg.sset.count(k) == pr.sset().count(k));
    // element (a, c) of the diagonal corresponds to the pair of tables entries
    FullTable t(d1, 3);
    SMap iso;
    iso.image.resize(3);
    for (int k = 0; k <= 2; ++k) {
        iso.image[k].resize(dg.sset.count(k));
        const int n = t.size(k);
        for (int e = 0; e < n * n; ++e) {
            const SimplexRef& r = dg.ref[k][e];
            if (!r.degenerate()) iso.image[k][r.base] = pr.lookup(t.at(k)[e / n], t.at(k)[e % n]);
        }
    }
    CHECK(validate_smap(iso, dg.sset, pr.sset(), 2).empty());
    CHECK_FALSE(injectivity_witness(iso, 2).has_value());

    // constant in one direction gives the other direction back
    SSet c = circle();
    Normalized hc = diag_full(horizontal_constant(c, 3));
    for (int k = 0; k <= 3; ++k) CHECK(hc.sset.count(k) == c.count(k));
    CHECK(homology(hc.sset, 2)[1] == Z());
}

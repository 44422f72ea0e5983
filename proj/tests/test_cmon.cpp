#include <catch_amalgamated.hpp>

#include <set>

#include "itop/cmon.hpp"
#include "oracles.hpp"

using namespace itop;

TEST_CASE("monoid axioms of the basic examples") {
    for (int N = 0; N <= 3; ++N) {
        INFO("N = " << N);
        CHECK(validate_monoid(terminal_monoid(N)).empty());
        CHECK(validate_monoid(c1(N)).empty());
        CHECK(validate_monoid(example_monoid_M(N)).empty());
        CHECK(validate_monoid(integers_monoid(N)).empty());
    }
    // Z/3
    CHECK(validate_monoid(constant_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 2)).empty());
}

TEST_CASE("C_1 is the subset I-space") {
    CIMonoidT c = c1(3);
    ISpaceT s = power_ispace(sphere0(), 3);
    for (int n = 0; n <= 3; ++n) CHECK(c.carrier.level(n).count(0) == s.level(n).count(0));
    CHECK(c.label(3, 5) == "{1,3}");
    CHECK(c.mul(1, 2, {0, 0, 1}, {0, 0, 2}).base == 0b101);
}

TEST_CASE("monoid validation catches mutations") {
    CIMonoidT c = c1(2);
    // drop the shift in the second variable: not natural, not commutative
    c.mult[1][1].image[0][c.prod[1][1]->lookup({0, 0, 0}, {0, 0, 1}).base] = {0, 0, 1};
    auto d = validate_monoid(c);
    CHECK_FALSE(d.empty());
    bool comm = false;
    for (auto& s : d) comm = comm || s.find("commutativity fails at (1,1)") != std::string::npos;
    CHECK(comm);

    CIMonoidT m = example_monoid_M(2);
    m.unit = 1;  // 0' is not a unit
    auto e = validate_monoid(m);
    REQUIRE_FALSE(e.empty());
    CHECK(e[0].find("unitality") != std::string::npos);
}

namespace {

CommMonoidPres pres(std::vector<std::string> g, std::vector<std::pair<ExpVec, ExpVec>> r) { return {std::move(g), std::move(r)}; }

// vectors reachable from v by rewriting, bounded in total size
std::set<ExpVec> rewrite_closure(const CommMonoidPres& p, const ExpVec& v, int cap) {
    std::set<ExpVec> seen{v};
    std::vector<ExpVec> todo{v};
    while (!todo.empty()) {
        ExpVec x = todo.back();
        todo.pop_back();
        for (auto& [l, r] : p.rels)
            for (int dir = 0; dir < 2; ++dir) {
                const ExpVec& a = dir ? r : l;
                const ExpVec& b = dir ? l : r;
                ExpVec y = x;
                bool ok = true;
                int tot = 0;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    y[i] += b[i] - a[i];
                    ok = ok && x[i] >= a[i];
                    tot += y[i];
                }
                if (ok && tot <= cap && seen.insert(y).second) todo.push_back(y);
            }
    }
    return seen;
}

}  // namespace

TEST_CASE("pi_0 presentations") {
    auto t = pi0_monoid(terminal_monoid(3));
    CHECK(t.pres.gens.empty());
    CHECK(t.pres.rels.empty());
    CHECK(grothendieck_group(t.pres).is_zero());

    for (int N = 1; N <= 3; ++N) {
        auto c = pi0_monoid(c1(N));
        CHECK(c.classes() == N + 1);
        REQUIRE(c.pres.gens.size() == 1);
        CHECK(c.pres.rels.empty());
        for (int k = 0; k <= N; ++k) CHECK(c.expr[c.class_of[k][(1 << k) - 1]] == ExpVec{k});
        CHECK(grothendieck_group(c.pres) == HomologyGroup{1, {}});
    }

    for (int N = 1; N <= 4; ++N) {
        INFO("N = " << N);
        auto m = pi0_monoid(example_monoid_M(N));
        REQUIRE(m.pres.gens == std::vector<std::string>{"0'", "1"});
        // a = 1, b = 0': 2b = 0 and a + b = a
        std::set<std::pair<ExpVec, ExpVec>> rels(m.pres.rels.begin(), m.pres.rels.end());
        CHECK(rels == std::set<std::pair<ExpVec, ExpVec>>{{{2, 0}, {0, 0}}, {{1, 1}, {0, 1}}});
        CHECK(grothendieck_group(m.pres) == HomologyGroup{1, {}});
    }

    auto z = pi0_monoid(integers_monoid(3));
    CHECK(grothendieck_group(z.pres) == HomologyGroup{1, {}});
    auto z3 = pi0_monoid(constant_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 2));
    CHECK(grothendieck_group(z3.pres) == HomologyGroup{0, {3}});
}

TEST_CASE("pi_0 multiplication is commutative") {
    for (const CIMonoidT& a : {c1(3), example_monoid_M(3), integers_monoid(3)}) {
        auto m = pi0_monoid(a);
        const int cap = 8;
        for (int x = 0; x < m.classes(); ++x)
            for (int y = 0; y < m.classes(); ++y) {
                // products of vertices in the two orders are congruent
                ExpVec s = m.expr[x];
                for (std::size_t i = 0; i < s.size(); ++i) s[i] += m.expr[y][i];
                CHECK(rewrite_closure(m.pres, s, cap).count(s));
            }
        // mu in both orders lands in the same class
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; p + q <= 3; ++q)
                for (int u = 0; u < a.carrier.level(p).count(0); ++u)
                    for (int v = 0; v < a.carrier.level(q).count(0); ++v)
                        CHECK(m.class_of[p + q][a.mul(p, q, {0, 0, u}, {0, 0, v}).base] ==
                              m.class_of[p + q][a.mul(q, p, {0, 0, v}, {0, 0, u}).base]);
    }
}

TEST_CASE("Grothendieck groups of presentations") {
    CHECK(grothendieck_group(pres({"g"}, {})) == HomologyGroup{1, {}});
    CHECK(grothendieck_group(pres({"a", "b"}, {{{0, 2}, {0, 0}}, {{1, 1}, {1, 0}}})) == HomologyGroup{1, {}});
    CHECK(grothendieck_group(pres({"g", "h"}, {})) == HomologyGroup{2, {}});
    CHECK(grothendieck_group(pres({"g"}, {{{4}, {0}}, {{6}, {0}}})) == HomologyGroup{0, {2}});
}

TEST_CASE("unit verdicts") {
    auto free1 = pres({"g"}, {});
    auto w = unit_witness(free1, {0}, 3);
    CHECK(w.kind == UnitWitness::Kind::unit);
    auto g = unit_witness(free1, {1}, 3);
    REQUIRE(g.kind == UnitWitness::Kind::non_unit);
    CHECK(g.grading == std::vector<int>{1});
    CHECK(replay_unit_witness(free1, {1}, g));

    auto m = pres({"a", "b"}, {{{0, 2}, {0, 0}}, {{1, 1}, {1, 0}}});
    auto b = unit_witness(m, {0, 1}, 3);
    REQUIRE(b.kind == UnitWitness::Kind::unit);
    CHECK(b.inverse == ExpVec{0, 1});
    CHECK(replay_unit_witness(m, {0, 1}, b));
    auto a = unit_witness(m, {1, 0}, 3);
    CHECK(a.kind == UnitWitness::Kind::non_unit);
    CHECK(replay_unit_witness(m, {1, 0}, a));
    // a tampered witness does not replay
    UnitWitness bad = b;
    bad.inverse = {1, 0};
    CHECK_FALSE(replay_unit_witness(m, {0, 1}, bad));

    // 2g = 0 with an inverse of length 1 only found for bound >= 1
    auto z2 = pres({"g"}, {{{2}, {0}}});
    CHECK(unit_witness(z2, {1}, 0).kind == UnitWitness::Kind::unknown);
    CHECK(unit_witness(z2, {1}, 1).kind == UnitWitness::Kind::unit);
}

TEST_CASE("units of commutative I-space monoids") {
    auto c = units(c1(3), 3);
    CHECK(c.ok());
    for (int n = 0; n <= 3; ++n) {
        CHECK(c.units.carrier.level(n).count(0) == 1);
        CHECK(c.nonunits.level(n).count(0) == (1 << n) - 1);
    }
    CHECK(is_grouplike(c.units, 3) == true);

    auto m = units(example_monoid_M(3), 3);
    CHECK(m.ok());
    std::set<int> unit_classes;
    for (int cl = 0; cl < m.pi0.classes(); ++cl)
        if (m.verdicts.is_unit(cl)) unit_classes.insert(cl);
    CHECK(unit_classes.size() == 2);
    CHECK(m.units.carrier.level(3).count(0) == 2);
    CHECK(m.units.labels[3] == std::vector<std::string>{"0", "0'"});

    auto z3 = constant_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 2);
    auto u = units(z3, 2);
    CHECK(u.ok());
    for (int n = 0; n <= 2; ++n) CHECK(u.nonunits.level(n).count(0) == 0);

    // inverse of 2 in Z/3 has length 2 over the generator 1
    CHECK_THROWS_AS(units(constant_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 2), 0), Refusal);
}

TEST_CASE("grouplike and virtually surjective") {
    CHECK(is_grouplike(terminal_monoid(3), 2) == true);
    CHECK(is_grouplike(c1(3), 2) == false);
    CHECK(is_grouplike(integers_monoid(3), 2) == std::nullopt);
    CHECK(is_grouplike(integers_monoid(3), 3) == true);
    CHECK(is_grouplike(constant_monoid({{0, 1}, {1, 0}}, 2), 2) == true);

    CIMonoidT c = c1(3);
    CIMonoidT t = terminal_monoid(3);
    CHECK(is_virtually_surjective(monoid_identity(c), c, c).surjective);
    CHECK(is_virtually_surjective(to_terminal(c, t), c, t).surjective);
    auto u = units(c, 3);
    auto vs = is_virtually_surjective(u.units_inclusion, u.units, c);
    CHECK_FALSE(vs.surjective);
    CHECK(vs.cokernel == HomologyGroup{1, {}});
}

TEST_CASE("free commutative monoid on F_1") {
    for (int N = 1; N <= 3; ++N) {
        INFO("N = " << N);
        ISpaceT f1 = free_ispace(1, N);
        FreeCMonoid c = free_cmonoid(f1);
        CHECK(c.exact);
        CHECK(validate_monoid(c.monoid).empty());
        long long expect = 0;
        for (int n = 0; n <= N; ++n) {
            // sum_k |I(k, n)| / k!
            expect = 0;
            for (int k = 0; k <= n; ++k) expect += oracle::injection_count(k, n) / oracle::injection_count(k, k);
            CHECK(c.monoid.carrier.level(n).count(0) == expect);
            CHECK(expect == (1 << n));
        }
        // the word (1, ..., 1; alpha) goes to the image of alpha
        CIMonoidT s = c1(N);
        MonoidMap f;
        for (int n = 0; n <= N; ++n) {
            SMap m;
            m.image.resize(1);
            for (auto& [ob, t] : c.word[n]) {
                int mask = 0;
                for (int i = 0; i < ob.alpha.m; ++i) mask |= 1 << ob.alpha(i);
                m.image[0].push_back({0, 0, mask});
            }
            f.level.level.push_back(std::move(m));
        }
        CHECK(validate_monoid_map(f, c.monoid, s).empty());
        CHECK_FALSE(level_iso_witness(f.level, c.monoid.carrier, s.carrier));
    }
}

TEST_CASE("free commutative monoid on the empty I-space") {
    ISpaceT e(3);
    for (int n = 0; n <= 3; ++n) e.level(n) = discrete(0);
    e.set_action([](int, const SimplexRef& s) { return s; });
    FreeCMonoid c = free_cmonoid(e);
    CHECK(validate_monoid(c.monoid).empty());
    ISpaceT f0 = free_ispace(0, 3);
    ISpaceMap iso;
    for (int n = 0; n <= 3; ++n) {
        REQUIRE(c.monoid.carrier.level(n).count(0) == 1);
        SMap m;
        m.image = {{SimplexRef{0, 0, 0}}};
        iso.level.push_back(std::move(m));
    }
    CHECK_FALSE(level_iso_witness(iso, c.monoid.carrier, f0));
}

TEST_CASE("free commutative monoid on two generators and on a based circle") {
    ISpaceT f1 = free_ispace(1, 3);
    ISpaceT two(3);
    for (int n = 0; n <= 3; ++n) two.level(n) = discrete(2 * n);
    const TruncatedI& t = two.cat();
    // F_1 u F_1: point (i, colour)
    two.set_action([&t](int f, const SimplexRef& s) {
        return SimplexRef{0, 0, 2 * t.morphism(f)(s.base / 2) + s.base % 2};
    });
    REQUIRE(validate_ispace(two).empty());
    FreeCMonoid c = free_cmonoid(two);
    CHECK(validate_monoid(c.monoid).empty());
    // each element of n is unused or carries one of two colours
    int p = 1;
    for (int n = 0; n <= 3; ++n, p *= 3) CHECK(c.monoid.carrier.level(n).count(0) == p);
    auto pi = pi0_monoid(c.monoid);
    CHECK(pi.pres.gens.size() == 2);
    CHECK(pi.pres.rels.empty());

    ISpaceT k = constant_ispace(circle(), 2);
    CHECK_THROWS_AS(free_cmonoid(k), BudgetExceeded);
}

TEST_CASE("flat subset model of M") {
    for (int N = 1; N <= 3; ++N) {
        CIMonoidT a = subset_model_M(N);
        CHECK(validate_monoid(a).empty());
        CHECK(is_flat(a.carrier).flat);
        auto m = pi0_monoid(a);
        CHECK(m.classes() == N + 2);
        CHECK(grothendieck_group(m.pres) == HomologyGroup{1, {}});
        auto u = units(a, 3);
        CHECK(u.ok());
        for (int n = 0; n <= N; ++n) CHECK(u.units.carrier.level(n).count(0) == 2);
    }
    CHECK_FALSE(is_flat(example_monoid_M(2).carrier).flat);
}

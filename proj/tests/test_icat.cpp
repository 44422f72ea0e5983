#include <catch_amalgamated.hpp>

#include <set>

#include "itop/homology.hpp"
#include "itop/icat.hpp"
#include "oracles.hpp"

using namespace itop;

namespace {

Injection inj(int n, std::vector<int> one_based) {
    Injection f{static_cast<int>(one_based.size()), n, {}};
    for (int v : one_based) f.image.push_back(v - 1);
    return f;
}

// objects of (concat | n) by exhaustive search over all triples with an
// arbitrary function checked for injectivity
long long concat_objects_brute(int n) {
    long long total = 0;
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n1 + n2 <= n; ++n2) total += oracle::injection_count(n1 + n2, n);
    return total;
}

}  // namespace

TEST_CASE("enumerate_injections") {
    CHECK(enumerate_injections(0, 5).size() == 1);
    CHECK(enumerate_injections(1, 3).size() == 3);
    auto two = enumerate_injections(2, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].is_identity());
    CHECK(two[1] == shuffle(1, 1));
    CHECK(enumerate_injections(3, 2).empty());
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= n; ++m) {
            auto all = enumerate_injections(m, n);
            CHECK(static_cast<long long>(all.size()) == oracle::injection_count(m, n));
            CHECK(static_cast<long long>(all.size()) == injection_count(m, n));
            CHECK(std::is_sorted(all.begin(), all.end(), [](auto& a, auto& b) { return a.image < b.image; }));
            for (std::size_t i = 0; i < all.size(); ++i) CHECK(injection_rank(all[i]) == static_cast<int>(i));
        }
}

TEST_CASE("compose, concat, shuffle") {
    Injection f = inj(3, {2, 3});
    CHECK(compose(identity_injection(3), f) == f);
    CHECK(compose(shuffle(1, 1), shuffle(1, 1)) == identity_injection(2));
    CHECK(compose(standard_inclusion(2, 3), shuffle(1, 1)) == inj(3, {2, 1}));
    CHECK_THROWS_AS(compose(f, f), InvalidInput);

    CHECK(concat(identity_injection(1), identity_injection(1)) == identity_injection(2));
    Injection empty{0, 0, {}};
    CHECK(concat(empty, f) == f);
    CHECK(concat(f, empty) == f);
    CHECK(concat(inj(2, {2}), identity_injection(1)) == inj(3, {2, 3}));

    CHECK(shuffle(1, 1) == inj(2, {2, 1}));
    CHECK(shuffle(0, 3) == identity_injection(3));
    CHECK(shuffle(2, 1) == inj(3, {2, 3, 1}));

    // associativity of concat and tau_{n,m} tau_{m,n} = id, exhaustively on small arities
    std::vector<Injection> small;
    for (int n = 0; n <= 2; ++n)
        for (int m = 0; m <= n; ++m)
            for (auto& g : enumerate_injections(m, n)) small.push_back(g);
    for (auto& a : small)
        for (auto& b : small)
            for (auto& c : small) CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; m + n <= 3; ++n) {
            CHECK(compose(shuffle(n, m), shuffle(m, n)) == identity_injection(m + n));
            // hexagon: tau_{l, m+n} = (id_m | tau_{l,n}) o (tau_{l,m} | id_n)
            for (int l = 0; l + m + n <= 3; ++l) {
                Injection lhs = shuffle(l, m + n);
                Injection rhs = compose(concat(identity_injection(m), shuffle(l, n)),
                                        concat(shuffle(l, m), identity_injection(n)));
                CHECK(lhs == rhs);
            }
            // naturality: (g | f) o tau = tau o (f | g)
            for (auto& f : enumerate_injections(m, m + 1))
                for (auto& g : enumerate_injections(n, n))
                    CHECK(compose(concat(g, f), shuffle(m, n)) == compose(shuffle(m + 1, n), concat(f, g)));
        }
}

TEST_CASE("TruncatedI tables") {
    for (int N = 0; N <= 4; ++N) {
        TruncatedI t(N);
        CHECK(validate_truncated(t).empty());
        CHECK(validate_category(t.as_category()).empty());
        for (int n = 0; n <= N; ++n) CHECK(t.morphism(t.identity(n)).is_identity());
    }
    CHECK(TruncatedI(4).morphisms() == 89);
}

TEST_CASE("comma categories") {
    auto c02 = comma_under(0, 2);
    CHECK(c02.cat.objects == 3);
    CHECK(validate_category(c02.cat).empty());
    auto c22 = comma_under(2, 2);
    CHECK(c22.cat.objects == 2);
    // a free Sigma_2-torsor: every hom set is a singleton
    CHECK(c22.cat.morphisms() == 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            int cnt = 0;
            for (int f : c22.cat.out[a]) cnt += c22.cat.dst[f] == b;
            CHECK(cnt == 1);
        }

    for (int N = 1; N <= 4; ++N)
        for (int n = 0; n <= N; ++n) {
            auto c = comma_under(n, N);
            CHECK(validate_category(c.cat).empty());
            long long objs = 0;
            for (int m = n; m <= N; ++m) objs += oracle::injection_count(n, m);
            CHECK(c.cat.objects == objs);
        }
    auto h = homology(nerve(comma_under(1, 3).cat, 3).sset, 2);
    CHECK(h.reduced_trivial());

    CHECK(comma_concat(0).cat.objects == 1);
    for (int n = 0; n <= 3; ++n) {
        auto c = comma_concat(n);
        CHECK(validate_category(c.cat).empty());
        CHECK(c.cat.objects == concat_objects_brute(n));
    }
    CHECK(comma_concat(1).cat.objects == 3);
    CHECK(comma_concat(2).cat.objects == 11);
}

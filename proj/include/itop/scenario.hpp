// Scenario registry and JSON reports.
#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "itop/bar.hpp"
#include "itop/fincat.hpp"
#include "itop/gamma.hpp"
#include "itop/semistability.hpp"

namespace itop {

using json = nlohmann::ordered_json;

struct RunConfig {
    int trunc = 3;
    int deg = 1;
    int chains = -1;  // -1: deg + 1
    int unit_bound = 4;
    int jobs = 1;
    std::vector<std::string> scenarios;  // empty: all
    std::string out;
    bool timings = false;

    int chain_bound() const { return chains < 0 ? deg + 1 : chains; }
    void check() const {
        if (trunc < 1) throw InvalidInput("config: trunc must be >= 1");
        if (deg < 0) throw InvalidInput("config: deg must be >= 0");
        if (chain_bound() < deg + 1) throw InvalidInput("config: chains must be >= deg + 1");
        if (unit_bound < 0) throw InvalidInput("config: unit-bound must be >= 0");
        if (jobs < 1) throw InvalidInput("config: jobs must be >= 1");
    }
};

inline json to_json(const RunConfig& c) {
    return {{"trunc", c.trunc}, {"deg", c.deg}, {"chains", c.chain_bound()}, {"unit_bound", c.unit_bound}};
}

inline json to_json(const HomologyGroup& g) {
    json t = json::array();
    for (auto& x : g.torsion) t.push_back(x.str());
    return {{"rank", g.rank}, {"torsion", t}, {"text", to_string(g)}};
}

inline json to_json(const HomologyReport& r) {
    json a = json::array();
    for (auto& g : r.groups) a.push_back(to_json(g));
    return a;
}

inline json to_json(const MapVerdict& v) {
    json j{{"iso", v.iso}, {"deg", v.deg}, {"source", to_json(v.source)}, {"target", to_json(v.target)}};
    j["failure"] = v.failure ? json(*v.failure) : json(nullptr);
    return j;
}

enum class Outcome { pass, fail, skipped };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        default: return "skipped";
    }
}

struct CheckResult {
    std::string name, expected, computed;
    Outcome verdict = Outcome::fail;
    std::optional<bool> stable;  // recomputed at N - 1
    std::string detail;
};

struct ScenarioReport {
    std::string name;
    RunConfig config;
    std::vector<CheckResult> checks;
    double millis = 0;
    bool passed() const {
        for (auto& c : checks)
            if (c.verdict == Outcome::fail) return false;
        return true;
    }
};

inline json to_json(const ScenarioReport& r, bool timings = false) {
    json checks = json::array();
    for (auto& c : r.checks) {
        json j{{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"verdict", to_string(c.verdict)}};
        j["stable"] = c.stable ? json(*c.stable) : json(nullptr);
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(std::move(j));
    }
    json j{{"scenario", r.name}, {"config", to_json(r.config)}, {"passed", r.passed()}, {"checks", checks}};
    if (timings) j["millis"] = r.millis;
    return j;
}

struct Scenario {
    std::string name;
    std::string summary;
    int min_trunc = 1;
    std::function<void(const RunConfig&, ScenarioReport&)> run;
};

namespace detail {

inline CheckResult expect(std::string name, std::string expected, std::string computed) {
    CheckResult c{std::move(name), std::move(expected), std::move(computed)};
    c.verdict = c.expected == c.computed ? Outcome::pass : Outcome::fail;
    return c;
}

inline CheckResult expect_true(std::string name, bool ok, std::string detail = {}) {
    CheckResult c{std::move(name), "true", ok ? "true" : "false"};
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    c.detail = std::move(detail);
    return c;
}

inline std::string classes_string(int n) {
    std::string s = "{";
    for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(i);
    return s + "}";
}

/// Generator and relation counts of pi_0 (C_1)_hI and its classes by exponent.
inline std::string c1_pi0_summary(int N) {
    auto p = pi0_monoid(c1(N));
    std::string s = std::to_string(p.pres.gens.size()) + " generator(s), " + std::to_string(p.pres.rels.size()) + " relation(s), classes {";
    std::vector<int> ks;
    for (auto& e : p.expr) ks.push_back(e.empty() ? 0 : e[0]);
    std::sort(ks.begin(), ks.end());
    for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i]);
    return s + "}";
}

inline std::string c1_pi0_expected(int N) { return "1 generator(s), 0 relation(s), classes " + classes_string(N + 1); }

// multiplication table of the symmetric group on n letters
inline std::vector<std::vector<int>> symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = 0; b < perms.size(); ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

/// Subsets of size k of n, as a component of hocolim_I(C_1).
inline HomologyReport c1_component_homology(int N, int k, int deg, int jobs) {
    ISpaceT c = power_ispace(sphere0(), N);
    Hocolim h(c, IndexCat::I, deg + 1);
    SimplexRef v = h.lookup({k}, {0, 0, (1 << k) - 1});
    Components comps = pi0(h.sset());
    std::vector<char> keep(comps.count(), 0);
    keep[comps.of_vertex[v.base]] = 1;
    SSet comp = restrict_to(h.sset(), component_selection(h.sset(), comps, keep)).sset;
    return homology(comp, deg, jobs);
}

inline std::string homology_text(const HomologyReport& r) { return to_string(r); }

inline int rational_rank(std::vector<std::vector<boost::multiprecision::cpp_rational>> a) {
    const int m = static_cast<int>(a.size()), n = m ? static_cast<int>(a[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < m; ++i) {
            if (a[i][c] == 0) continue;
            const boost::multiprecision::cpp_rational f = a[i][c] / a[r][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace detail

inline const std::vector<Scenario>& scenario_registry() {
    using namespace detail;
    static const std::vector<Scenario> reg = {
        {"terminal-sanity", "the terminal I-space and monoid are trivial everywhere", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             ISpaceT t = terminal_ispace(cfg.trunc);
             r.checks.push_back(expect_true("validate", validate_ispace(t).empty()));
             Hocolim h(t, IndexCat::I, cfg.chain_bound());
             r.checks.push_back(expect_true("hocolim_I contractible", homology(h.sset(), cfg.deg, cfg.jobs).reduced_trivial()));
             auto p = pi0_monoid(terminal_monoid(cfg.trunc));
             r.checks.push_back(expect("pi0 monoid", "< |>", to_string(p.pres)));
             r.checks.push_back(expect("Grothendieck group", "0", to_string(grothendieck_group(p.pres))));
             r.checks.push_back(expect_true("flat", is_flat(t).flat));
         }},
        {"c1-pi0", "pi0 of hocolim_I(C_1) is free on one generator", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             auto c = expect("pi0 presentation", c1_pi0_expected(cfg.trunc), c1_pi0_summary(cfg.trunc));
             auto p = pi0_monoid(c1(cfg.trunc));
             if (cfg.trunc >= 2) c.stable = to_string(pi0_monoid(c1(cfg.trunc - 1)).pres) == to_string(p.pres);
             r.checks.push_back(c);
             ISpaceT s = power_ispace(sphere0(), cfg.trunc);
             Hocolim h(s, IndexCat::I, 1);
             r.checks.push_back(expect("|pi0 hocolim_I|", std::to_string(cfg.trunc + 1), std::to_string(pi0(h.sset()).count())));
             r.checks.push_back(expect("Grothendieck group", "Z", to_string(grothendieck_group(p.pres))));
         }},
        {"c1-bsigma2", "the degree-2 component of hocolim_I(C_1) is B(Sigma_2)", 2,
         [](const RunConfig& cfg, ScenarioReport& r) {
             const int D = std::max(cfg.deg, 1);
             auto h = c1_component_homology(cfg.trunc, 2, D, cfg.jobs);
             std::string expect_s = "H0=Z";
             for (int k = 1; k <= D; ++k) expect_s += ", H" + std::to_string(k) + "=" + (k % 2 ? "Z/2" : "0");
             auto c = expect("component homology", expect_s, homology_text(h));
             if (cfg.trunc >= 3) c.stable = c1_component_homology(cfg.trunc - 1, 2, D, cfg.jobs).same_groups(h);
             r.checks.push_back(c);
         }},
        {"comma-nerves", "nerves of (n | I_<=N) are contractible", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             const int D = std::min(cfg.deg, 2);
             for (int N = 1; N <= cfg.trunc; ++N)
                 for (int n = 0; n <= N; ++n) {
                     auto c = comma_under(n, N);
                     auto h = homology(nerve(c.cat, D + 1).sset, D, cfg.jobs);
                     r.checks.push_back(expect_true("B(" + std::to_string(n) + " | I<=" + std::to_string(N) + ")", h.reduced_trivial(),
                                                    homology_text(h)));
                 }
         }},
        {"grothendieck", "group completions of small presentations", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             CommMonoidPres ab{{"a", "b"}, {{{0, 2}, {0, 0}}, {{1, 1}, {1, 0}}}};
             r.checks.push_back(expect("<a,b | 2b = 0, a+b = a>", "Z", to_string(grothendieck_group(ab))));
             CommMonoidPres g{{"g"}, {}};
             r.checks.push_back(expect("<g |>", "Z", to_string(grothendieck_group(g))));
             auto m = pi0_monoid(example_monoid_M(cfg.trunc));
             auto c = expect("pi0 of constant M", "<0', 1 | 2[0'] = 0, [0']+[1] = [1]>", to_string(m.pres));
             if (cfg.trunc >= 2) c.stable = to_string(pi0_monoid(example_monoid_M(cfg.trunc - 1)).pres) == to_string(m.pres);
             r.checks.push_back(c);
             r.checks.push_back(expect("Grothendieck group of M", "Z", to_string(grothendieck_group(m.pres))));
         }},
        {"flatness", "flatness certificates and the collapsing counterexample", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             const int N = cfg.trunc;
             r.checks.push_back(expect_true("C_1 flat", is_flat(c1(N).carrier).flat));
             for (int n = 0; n <= 3; ++n) r.checks.push_back(expect_true("F_" + std::to_string(n) + " flat", is_flat(free_ispace(n, N)).flat));
             r.checks.push_back(expect_true("(S^0)^. flat", is_flat(power_ispace(sphere0(), N)).flat));
             if (N < 2) {
                 r.checks.push_back({"collapsing example refuted", "false", "", Outcome::skipped, {}, "needs N >= 2"});
                 return;
             }
             ISpaceT x = collapsing_example(N);
             auto f = is_flat(x);
             r.checks.push_back(expect("collapsing example flat", "false", f.flat ? "true" : "false"));
             r.checks.back().detail = f.detail;
             r.checks.push_back(expect_true("witness replays", replay_flat_witness(x, f)));
         }},
        {"semistability", "semistability diagnostics", 2,
         [](const RunConfig& cfg, ScenarioReport& r) {
             const int N = cfg.trunc;
             auto c = semistability_diagnostic(power_ispace(sphere0(), N), 0, cfg.chain_bound(), cfg.jobs);
             std::string w = c.witness ? std::to_string(c.witness->pi0_source) + " vs " + std::to_string(c.witness->pi0_target) : "none";
             r.checks.push_back(expect("C_1", "refuted", to_string(c.kind)));
             r.checks.back().detail = c.detail;
             r.checks.push_back(expect("C_1 pi0 witness", std::to_string(1 << N) + " vs " + std::to_string(N + 1), w));
             r.checks.push_back(expect_true("C_1 witness replays", replay_semistability_witness(power_ispace(sphere0(), N), c)));
             for (auto [name, k] : {std::pair{"constant point", point()}, {"constant S^1", circle()}, {"constant S^0", sphere0()}}) {
                 auto v = semistability_diagnostic(constant_ispace(k, N), cfg.deg, cfg.chain_bound(), cfg.jobs);
                 r.checks.push_back(expect(name, "evidence-for", to_string(v.kind)));
             }
             auto f = semistability_diagnostic(free_ispace(1, N), 0, cfg.chain_bound(), cfg.jobs);
             r.checks.push_back(expect("F_1", "evidence-for", to_string(f.kind)));
             r.checks.back().detail = f.detail;
         }},
        {"c1-bar", "bar constructions of C_1 agree", 2,
         [](const RunConfig& cfg, ScenarioReport& r) {
             auto b = bar_comparison(c1(cfg.trunc), cfg.deg, cfg.jobs);
             auto gp = grothendieck_group(pi0_monoid(c1(cfg.trunc)).pres);
             const auto& top = b.at.back();
             std::string expect_s = "H0=Z, H1=" + to_string(gp);
             for (int k = 2; k <= cfg.deg; ++k) expect_s += ", H" + std::to_string(k) + "=" + to_string(top.bar_hocolim[k]);
             for (auto [name, h] : {std::pair{"B(A_hI)", &top.bar_hocolim}, {"B(BI, A_hI, BI)", &top.two_sided}, {"B(A)_hI", &top.hocolim_bar}}) {
                 auto c = expect(name, expect_s, homology_text(*h));
                 c.stable = b.stable;
                 r.checks.push_back(c);
             }
             auto iso = expect_true("comparison maps are isomorphisms", b.iso());
             iso.stable = b.stable;
             r.checks.push_back(iso);
         }},
        {"units-M", "units of the constant monoid M", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             auto d = units(example_monoid_M(cfg.trunc), cfg.unit_bound);
             std::string u;
             for (auto& s : d.units.labels[cfg.trunc]) u += (u.empty() ? "" : ",") + s;
             r.checks.push_back(expect("units", "0,0'", u));
             r.checks.push_back(expect_true("A = units + non-units", d.ok()));
         }},
        {"c1-gamma", "the Gamma-space of C_1 is special, not very special", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             GammaSpaceT x = gamma_of_monoid(c1(cfg.trunc), 3, cfg.chain_bound());
             auto v = is_special(x, cfg.deg, cfg.unit_bound, cfg.jobs);
             r.checks.push_back(expect("special", "special-evidence", to_string(v.kind)));
             r.checks.back().detail = v.detail;
             for (auto& c : v.checks)
                 r.checks.push_back(expect("pi0 at (" + std::to_string(c.k) + "," + std::to_string(c.l) + ")", std::to_string(c.pi0_target),
                                           std::to_string(c.pi0_source)));
             r.checks.push_back(expect("very special", "false", v.very_special ? (*v.very_special ? "true" : "false") : "unknown"));
         }},
        {"eckmann-hilton", "both pi0 products agree on bi-Gamma-spaces", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             const int N = std::min(cfg.trunc, 2);
             for (auto [name, a] : {std::pair{"C_1", c1(N)}, {"constant M", example_monoid_M(N)}}) {
                 BiGammaT b = bi_gamma_from(a, 2, cfg.chain_bound());
                 r.checks.push_back(expect_true(std::string(name) + " bi-Gamma valid", validate_bigamma(b).empty()));
                 auto e = eckmann_hilton_check(b);
                 r.checks.push_back(expect_true(std::string(name) + " products coincide", e.coincide,
                                                std::to_string(e.pairs) + " class pairs"));
             }
         }},
        {"properties", "structural property sweep", 1,
         [](const RunConfig& cfg, ScenarioReport& r) {
             const int NN = std::min(cfg.trunc, 4);
             std::vector<std::pair<std::string, ISpaceT>> xs = {
                 {"terminal", terminal_ispace(NN)},          {"F_1", free_ispace(1, NN)},
                 {"F_2", free_ispace(2, NN)},                {"(S^0)^.", power_ispace(sphere0(), NN)},
                 {"constant S^1", constant_ispace(circle(), NN)}, {"collapsing", collapsing_example(std::max(NN, 2))}};
             for (auto& [name, x] : xs) r.checks.push_back(expect_true("functoriality " + name, validate_ispace(x).empty()));
             r.checks.push_back(expect_true("functoriality C_1 monoid", validate_monoid(c1(NN)).empty()));
             {
                 ISpaceT s3 = power_ispace(sphere0(), std::min(NN, 3)), f3 = free_ispace(1, std::min(NN, 3));
                 r.checks.push_back(expect_true("functoriality (S^0)^. [] F_1", validate_ispace(box(s3, f3).ispace()).empty()));
                 BarMonoid b(c1(std::min(NN, 3)), 2);
                 r.checks.push_back(expect_true("functoriality B(C_1)", validate_ispace(b.ispace()).empty()));
             }

             std::vector<std::pair<std::string, SSet>> ss = {{"Delta^3", delta(3)}, {"dDelta^3", boundary_delta(3)},
                                                             {"S^1 x S^1", product(circle(), circle())}};
             ss.emplace_back("hocolim_I (S^0)^.", Hocolim(power_ispace(sphere0(), std::min(NN, 3)), IndexCat::I, 3).sset());
             ss.emplace_back("nerve Sigma_3", nerve(group_category(symmetric_group(3)), 3).sset);
             for (auto& [name, s] : ss) {
                 r.checks.push_back(expect_true("simplicial identities " + name, validate_sset(s).empty()));
                 r.checks.push_back(expect_true("dd = 0 " + name, boundary_squares_to_zero(normalized_chains(s, std::min(3, s.top_dim())))));
             }

             std::mt19937 rng(11);
             bool agree = true;
             for (int trial = 0; trial < 60; ++trial) {
                 const int m = 1 + rng() % 7, n = 1 + rng() % 7;
                 SparseMatrix sm(m, n);
                 std::vector<std::vector<boost::multiprecision::cpp_rational>> q(m, std::vector<boost::multiprecision::cpp_rational>(n, 0));
                 for (int i = 0; i < m; ++i)
                     for (int j = 0; j < n; ++j)
                         if (rng() % 3 == 0) {
                             const int v = static_cast<int>(rng() % 9) - 4;
                             sm.add(i, j, v);
                             q[i][j] = v;
                         }
                 sm.finalize();
                 agree = agree && smith_invariants(sm).rank == rational_rank(q);
             }
             r.checks.push_back(expect_true("SNF rank = rational rank", agree));

             const int M = std::min(NN, 3);
             ISpaceT s = power_ispace(sphere0(), M), f1 = free_ispace(1, M), f0 = free_ispace(0, M);
             Box u = box(f0, s);
             r.checks.push_back(expect_true("box unit", !level_iso_witness(left_unit(u), u.ispace(), s)));
             Box sf = box(s, f1), fs = box(f1, s);
             r.checks.push_back(expect_true("box symmetry", !level_iso_witness(box_symmetry(sf, fs), sf.ispace(), fs.ispace())));
             r.checks.push_back(expect_true("pushout identity", check_pushout_identity(s, s).commutes() &&
                                                                   check_pushout_identity(f1, s).commutes() &&
                                                                   check_pushout_identity(collapsing_example(std::max(M, 2)), f1).commutes()));
         }},
    };
    return reg;
}

inline const Scenario* find_scenario(const std::string& name) {
    for (auto& s : scenario_registry())
        if (s.name == name) return &s;
    return nullptr;
}

inline ScenarioReport run_scenario(const std::string& name, const RunConfig& cfg) {
    cfg.check();
    const Scenario* s = find_scenario(name);
    if (!s) throw InvalidInput("unknown scenario: " + name);
    ScenarioReport r;
    r.name = name;
    r.config = cfg;
    if (cfg.trunc < s->min_trunc) {
        r.checks.push_back({"scenario", "", "", Outcome::skipped, {}, "skipped(insufficient truncation)"});
        return r;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
        s->run(cfg, r);
    } catch (const BudgetExceeded& e) {
        r.checks.push_back({"budget", "", "", Outcome::fail, {}, std::string("budget exceeded: ") + e.what()});
    } catch (const Refusal& e) {
        r.checks.push_back({"refusal", "", "", Outcome::fail, {}, std::string("refused: ") + e.what()});
    } catch (const ArithmeticOverflow& e) {
        r.checks.push_back({"overflow", "", "", Outcome::fail, {}, std::string("overflow: ") + e.what()});
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Selected scenarios (all when none are selected), in registry order.
inline std::vector<ScenarioReport> run_all(const RunConfig& cfg) {
    cfg.check();
    std::vector<std::string> names = cfg.scenarios;
    if (names.empty())
        for (auto& s : scenario_registry()) names.push_back(s.name);
    for (auto& n : names)
        if (!find_scenario(n)) throw InvalidInput("unknown scenario: " + n);
    RunConfig inner = cfg;
    inner.jobs = 1;
    std::vector<ScenarioReport> out(names.size());
    if (cfg.jobs > 1) {
        std::vector<std::future<ScenarioReport>> fut;
        for (auto& n : names) fut.push_back(std::async(std::launch::async, [&inner, n] { return run_scenario(n, inner); }));
        for (std::size_t i = 0; i < fut.size(); ++i) out[i] = fut[i].get();
    } else {
        for (std::size_t i = 0; i < names.size(); ++i) out[i] = run_scenario(names[i], cfg);
    }
    return out;
}

inline json to_json(const std::vector<ScenarioReport>& rs, bool timings = false) {
    json a = json::array();
    bool ok = true;
    for (auto& r : rs) {
        a.push_back(to_json(r, timings));
        ok = ok && r.passed();
    }
    return {{"passed", ok}, {"reports", a}};
}

}  // namespace itop

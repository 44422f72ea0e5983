// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cstdio>
#include <functional>

#include "itop/scenario.hpp"
#include "oracles.hpp"

using namespace itop;

namespace {

struct Criterion {
    int id;
    const char* what;
    double limit_s;
    std::function<bool(std::string&)> run;
};

RunConfig config(int N, int D) {
    RunConfig c;
    c.trunc = N;
    c.deg = D;
    c.unit_bound = 4;
    return c;
}

// every check of the scenario passes; the first failure goes to `why`
bool scenario_ok(const std::string& name, const RunConfig& cfg, std::string& why) {
    auto r = run_scenario(name, cfg);
    for (auto& c : r.checks)
        if (c.verdict == Outcome::fail) {
            why = c.name + ": expected " + c.expected + ", computed " + c.computed + (c.detail.empty() ? "" : " (" + c.detail + ")");
            return false;
        }
    return true;
}

std::string oracle_text(const std::vector<oracle::Group>& g) {
    HomologyReport r;
    for (auto& x : g) {
        HomologyGroup h{x.rank, {}};
        for (auto& t : x.torsion) h.torsion.push_back(BigInt(t));
        r.groups.push_back(h);
    }
    return to_string(r);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "pi0 hocolim_I(C_1) at N=3 is free on one generator, classes {0,1,2,3}", 10,
         [](std::string& why) { return scenario_ok("c1-pi0", config(3, 1), why); }},
        {2, "degree-2 component of hocolim_I(C_1) at N=3 matches the Sigma_2 bar resolution", 120,
         [](std::string& why) {
             auto h = detail::c1_component_homology(3, 2, 1, 1);
             const std::string ref = oracle_text(oracle::group_homology({{0, 1}, {1, 0}}, 1));
             if (to_string(h) != ref || ref != "H0=Z, H1=Z/2") {
                 why = to_string(h) + " vs oracle " + ref;
                 return false;
             }
             return scenario_ok("c1-bsigma2", config(3, 1), why);
         }},
        {3, "B(n | I<=N) has vanishing reduced homology in degrees <= 2, n <= N <= 4", 120,
         [](std::string& why) { return scenario_ok("comma-nerves", config(4, 2), why); }},
        {4, "Grothendieck groups of <a,b | 2b=0, a+b=a> and <g |> are Z", 1,
         [](std::string& why) { return scenario_ok("grothendieck", config(3, 1), why); }},
        {5, "flatness certificates and the replayable collapsing counterexample", 30,
         [](std::string& why) { return scenario_ok("flatness", config(3, 1), why); }},
        {6, "semistability: C_1 refuted (8 vs 4), constant I-spaces and F_1 evidence-for", 60,
         [](std::string& why) { return scenario_ok("semistability", config(3, 1), why); }},
        {7, "bar comparison for C_1 at N=3, D=1", 300,
         [](std::string& why) {
             auto gp = grothendieck_group(pi0_monoid(c1(3)).pres);
             if (to_string(gp) != "Z") {
                 why = "Grothendieck oracle gives " + to_string(gp);
                 return false;
             }
             return scenario_ok("c1-bar", config(3, 1), why);
         }},
        {8, "units of constant M are {0, 0'} and A = units + non-units", 5,
         [](std::string& why) { return scenario_ok("units-M", config(3, 1), why); }},
        {9, "(C_1)_Gamma is special-evidence, not very special, N=3, k+l <= 3", 180,
         [](std::string& why) { return scenario_ok("c1-gamma", config(3, 1), why); }},
        {10, "Eckmann-Hilton on bi_gamma_from(C_1) and bi_gamma_from(constant M), K=2", 60,
         [](std::string& why) { return scenario_ok("eckmann-hilton", config(2, 1), why); }},
        {11, "property suites", 600,
         [](std::string& why) { return scenario_ok("properties", config(4, 1), why); }},
    };

    int failed = 0;
    for (auto& c : criteria) {
        std::string why;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && s > c.limit_s) {
            ok = false;
            why = "time limit exceeded";
        }
        std::printf("criterion %2d: %s  %s (%.2fs, limit %.0fs)%s%s\n", c.id, ok ? "PASS" : "FAIL", c.what, s, c.limit_s,
                    why.empty() ? "" : ": ", why.c_str());
        failed += !ok;
    }
    return failed == 0 ? 0 : 1;
}

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "itop/scenario.hpp"

using namespace itop;

namespace {

SSet based(SSet s) {
    s.basepoint = 0;
    return s;
}

ISpaceT named_ispace(const std::string& name, int N) {
    if (name == "terminal") return terminal_ispace(N);
    if (name == "c1" || name == "s0-power") return power_ispace(sphere0(), N);
    if (name == "circle-power") return power_ispace(based(circle()), N);
    if (name == "const-point") return constant_ispace(point(), N);
    if (name == "const-circle") return constant_ispace(circle(), N);
    if (name == "const-s0") return constant_ispace(sphere0(), N);
    if (name == "collapse") return collapsing_example(N);
    if (name.size() == 2 && name[0] == 'f' && std::isdigit(static_cast<unsigned char>(name[1]))) return free_ispace(name[1] - '0', N);
    throw InvalidInput("unknown I-space: " + name +
                       " (terminal, c1, s0-power, circle-power, const-point, const-circle, const-s0, collapse, f0..f9)");
}

CIMonoidT named_monoid(const std::string& name, int N) {
    if (name == "terminal") return terminal_monoid(N);
    if (name == "c1") return c1(N);
    if (name == "M") return example_monoid_M(N);
    if (name == "M-subset") return subset_model_M(N);
    if (name == "Z") return integers_monoid(N);
    if (name == "Z3") return constant_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, N);
    throw InvalidInput("unknown monoid: " + name + " (terminal, c1, M, M-subset, Z, Z3)");
}

std::optional<SSet> named_sset(const std::string& name) {
    if (name == "point") return point();
    if (name == "s0") return sphere0();
    if (name == "circle") return circle();
    if (name == "torus") return product(circle(), circle());
    if (name.rfind("delta", 0) == 0 && name.size() == 6) return delta(name[5] - '0');
    if (name.rfind("boundary", 0) == 0 && name.size() == 9) return boundary_delta(name[8] - '0');
    return std::nullopt;
}

IndexCat parse_over(const std::string& s) {
    if (s == "I") return IndexCat::I;
    if (s == "N") return IndexCat::N;
    throw InvalidInput("--over must be I or N");
}

json sset_summary(const SSet& s) {
    json counts = json::array();
    for (int k = 0; k <= s.top_dim(); ++k) counts.push_back(s.count(k));
    return {{"nondegenerate", counts}, {"finite", s.finite()}, {"components", pi0(s).count()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"itop: finite computations with I-spaces and their monoids"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string over = "I";
    bool timings = false, eh = false;
    std::vector<std::string> names;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--trunc", cfg.trunc, "truncation N")->capture_default_str();
        sub->add_option("--deg", cfg.deg, "homology degree D")->capture_default_str();
        sub->add_option("--chains", cfg.chains, "chain-length bound S (default D + 1)");
        sub->add_option("--unit-bound", cfg.unit_bound, "word-length bound of the unit search")->capture_default_str();
        sub->add_option("--jobs", cfg.jobs, "parallelism width")->capture_default_str();
        sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    };

    auto* validate = app.add_subcommand("validate", "validate an I-space or a monoid");
    auto* hocolim = app.add_subcommand("hocolim", "homotopy colimit of an I-space");
    auto* homol = app.add_subcommand("homology", "homology of a simplicial set, or of hocolim_I of an I-space");
    auto* flat = app.add_subcommand("flat", "flatness certificate");
    auto* semi = app.add_subcommand("semistable", "semistability diagnostic");
    auto* p0 = app.add_subcommand("pi0", "presentation of pi0 of a monoid and its group completion");
    auto* un = app.add_subcommand("units", "units decomposition of a monoid");
    auto* bar = app.add_subcommand("bar", "bar construction comparison");
    auto* gam = app.add_subcommand("gamma", "speciality of the Gamma-space of a monoid");
    auto* scen = app.add_subcommand("scenario", "run registered scenarios (all when none named)");
    for (auto* s : {validate, hocolim, homol, flat, semi, p0, un, bar, gam, scen}) common(s);
    for (auto* s : {validate, hocolim, homol, flat, semi, p0, un, bar, gam}) s->add_option("name", names, "object name")->required();
    scen->add_option("names", cfg.scenarios, "scenario names");
    scen->add_flag("--timings", timings, "include wall-clock timings");
    scen->add_flag("--list", eh, "list registered scenarios");
    hocolim->add_option("--over", over, "index category, I or N")->capture_default_str();
    homol->add_option("--over", over, "index category, I or N")->capture_default_str();
    gam->add_flag("--eckmann-hilton", eh, "check both pi0 products on the bi-Gamma-space (K = 2)");

    CLI11_PARSE(app, argc, argv);

    json out;
    bool ok = true;
    try {
        cfg.check();
        const int N = cfg.trunc, D = cfg.deg, S = cfg.chain_bound();
        const std::string name = names.empty() ? "" : names[0];
        if (validate->parsed()) {
            std::vector<std::string> d;
            if (name.rfind("monoid:", 0) == 0)
                d = validate_monoid(named_monoid(name.substr(7), N));
            else
                d = validate_ispace(named_ispace(name, N));
            ok = d.empty();
            out = {{"object", name}, {"valid", ok}, {"diagnostics", d}};
        } else if (hocolim->parsed()) {
            Hocolim h(named_ispace(name, N), parse_over(over), S);
            out = sset_summary(h.sset());
            out["homology"] = to_json(homology(h.sset(), D, cfg.jobs));
        } else if (homol->parsed()) {
            if (auto s = named_sset(name)) {
                out = {{"object", name}, {"homology", to_json(homology(*s, D, cfg.jobs))}};
            } else {
                Hocolim h(named_ispace(name, N), parse_over(over), S);
                out = {{"object", "hocolim_" + over + "(" + name + ")"}, {"homology", to_json(homology(h.sset(), D, cfg.jobs))}};
            }
        } else if (flat->parsed()) {
            ISpaceT x = named_ispace(name, N);
            auto c = is_flat(x);
            out = {{"object", name}, {"flat", c.flat}, {"detail", c.detail}};
            if (!c.flat) out["witness_replays"] = replay_flat_witness(x, c);
        } else if (semi->parsed()) {
            ISpaceT x = named_ispace(name, N);
            auto v = semistability_diagnostic(x, D, S, cfg.jobs);
            json checks = json::array();
            for (auto& c : v.checks)
                checks.push_back({{"map", to_string(c.map)}, {"trunc", c.trunc}, {"iso", c.verdict.iso},
                                  {"pi0_source", c.pi0_source}, {"pi0_target", c.pi0_target}});
            out = {{"object", name}, {"verdict", to_string(v.kind)}, {"detail", v.detail}, {"checks", checks}};
            if (v.witness) out["witness_replays"] = replay_semistability_witness(x, v);
        } else if (p0->parsed()) {
            auto p = pi0_monoid(named_monoid(name, N));
            out = {{"object", name}, {"classes", p.class_names}, {"presentation", to_string(p.pres)},
                   {"grothendieck", to_string(grothendieck_group(p.pres))}};
        } else if (un->parsed()) {
            auto d = units(named_monoid(name, N), cfg.unit_bound);
            json cls = json::array();
            for (int c = 0; c < d.pi0.classes(); ++c) cls.push_back({{"class", d.pi0.class_names[c]}, {"unit", d.verdicts.is_unit(c)}});
            out = {{"object", name}, {"classes", cls}, {"units", d.units.labels[N]}, {"decomposition_ok", d.ok()},
                   {"diagnostics", d.diagnostics}};
            ok = d.ok();
        } else if (bar->parsed()) {
            auto b = bar_comparison(named_monoid(name, N), D, cfg.jobs);
            json at = json::array();
            for (auto& c : b.at)
                at.push_back({{"trunc", c.trunc}, {"B(A_hI)", to_string(c.bar_hocolim)}, {"B(BI,A_hI,BI)", to_string(c.two_sided)},
                              {"B(A)_hI", to_string(c.hocolim_bar)}, {"iso", c.iso()}});
            out = {{"object", name}, {"at", at}, {"stable", b.stable}, {"iso", b.iso()}};
        } else if (gam->parsed()) {
            CIMonoidT a = named_monoid(name, N);
            if (eh) {
                auto e = eckmann_hilton_check(bi_gamma_from(a, 2, S));
                out = {{"object", name}, {"coincide", e.coincide}, {"pairs", e.pairs}, {"first", e.first}, {"second", e.second}};
                ok = e.coincide;
            } else {
                auto v = is_special(gamma_of_monoid(a, 3, S), D, cfg.unit_bound, cfg.jobs);
                json checks = json::array();
                for (auto& c : v.checks)
                    checks.push_back({{"k", c.k}, {"l", c.l}, {"iso", c.verdict.iso}, {"pi0_source", c.pi0_source}, {"pi0_target", c.pi0_target}});
                out = {{"object", name}, {"verdict", to_string(v.kind)}, {"detail", v.detail}, {"checks", checks},
                       {"pi0", to_string(v.pi0)}};
                out["very_special"] = v.very_special ? json(*v.very_special) : json(nullptr);
            }
        } else if (scen->parsed()) {
            if (eh) {
                for (auto& s : scenario_registry()) std::cout << s.name << "  " << s.summary << "\n";
                return 0;
            }
            auto rs = run_all(cfg);
            out = to_json(rs, timings);
            ok = out["passed"].get<bool>();
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        out = {{"error", e.what()}};
        ok = false;
    }

    const std::string text = out.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return 2;
        }
        f << text;
    }
    return ok ? 0 : 1;
}

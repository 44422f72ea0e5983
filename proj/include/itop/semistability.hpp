// Semistability diagnostics at finite truncation.
//
// Both comparison maps X_hN -> X_hI and (j_X)_hN are computed at the
// truncations N - 1 and N. A map failing at both refutes, all maps holding
// at both is evidence, anything else is inconclusive.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "itop/hocolim.hpp"

namespace itop {

enum class Comparison { n_to_i, j_map };

inline const char* to_string(Comparison c) { return c == Comparison::n_to_i ? "hN->hI" : "j_hN"; }

struct ComparisonResult {
    Comparison map = Comparison::n_to_i;
    int trunc = 0;
    MapVerdict verdict;
    int pi0_source = 0, pi0_target = 0;
};

struct SemistabilityVerdict {
    enum class Kind { evidence_for, refuted, inconclusive } kind = Kind::inconclusive;
    int trunc = 0, deg = 0, chains = 0;
    std::vector<ComparisonResult> checks;
    std::optional<ComparisonResult> witness;  // the failure at the top truncation
    std::string detail;
};

inline const char* to_string(SemistabilityVerdict::Kind k) {
    switch (k) {
        case SemistabilityVerdict::Kind::evidence_for: return "evidence-for";
        case SemistabilityVerdict::Kind::refuted: return "refuted";
        default: return "inconclusive";
    }
}

/// One comparison map at truncation M of `x` (which must have truncation >= M).
inline ComparisonResult compare_at(const ISpaceT& x, Comparison which, int M, int deg, int chains, int jobs = 1) {
    ComparisonResult r;
    r.map = which;
    r.trunc = M;
    ISpaceT xm = restrict_trunc(x, M);
    if (which == Comparison::n_to_i) {
        Hocolim hn(xm, IndexCat::N, chains), hi(xm, IndexCat::I, chains);
        r.verdict = map_verdict(induced_map(hn, hi), hn.sset(), hi.sset(), deg, jobs);
        r.pi0_source = pi0(hn.sset()).count();
        r.pi0_target = pi0(hi.sset()).count();
    } else {
        if (M < 1) throw InvalidInput("j comparison needs truncation at least 1");
        ISpaceT lower = restrict_trunc(x, M - 1);
        ISpaceT r1 = R_functor(xm);
        ISpaceMap j = j_map(xm);
        Hocolim a(lower, IndexCat::N, chains), b(r1, IndexCat::N, chains);
        r.verdict = map_verdict(induced_map(a, b, &j), a.sset(), b.sset(), deg, jobs);
        r.pi0_source = pi0(a.sset()).count();
        r.pi0_target = pi0(b.sset()).count();
    }
    return r;
}

inline SemistabilityVerdict semistability_diagnostic(const ISpaceT& x, int deg, int chains = -1, int jobs = 1) {
    SemistabilityVerdict v;
    v.trunc = x.trunc();
    v.deg = deg;
    v.chains = std::max(chains, deg + 1);
    const int N = x.trunc();
    if (N < 1) {
        v.detail = "truncation too small for two successive comparisons";
        return v;
    }
    bool all_iso = true;
    for (Comparison c : {Comparison::n_to_i, Comparison::j_map}) {
        const int lo = c == Comparison::j_map ? std::max(1, N - 1) : N - 1;
        std::vector<ComparisonResult> rs;
        for (int M = lo; M <= N; ++M) rs.push_back(compare_at(x, c, M, deg, v.chains, jobs));
        const bool two = rs.size() == 2;
        bool fail_all = two, iso_all = two;
        for (auto& r : rs) {
            fail_all = fail_all && !r.verdict.iso;
            iso_all = iso_all && r.verdict.iso;
        }
        all_iso = all_iso && iso_all;
        if (fail_all && !v.witness) v.witness = rs.back();
        for (auto& r : rs) v.checks.push_back(std::move(r));
    }
    if (v.witness) {
        v.kind = SemistabilityVerdict::Kind::refuted;
        const auto& w = *v.witness;
        const int d = *w.verdict.failure;
        v.detail = std::string(to_string(w.map)) + " is not an isomorphism in degree " + std::to_string(d) +
                   " at truncations " + std::to_string(w.trunc - 1) + " and " + std::to_string(w.trunc) + ": " +
                   to_string(w.verdict.source[d]) + " vs " + to_string(w.verdict.target[d]);
    } else if (all_iso) {
        v.kind = SemistabilityVerdict::Kind::evidence_for;
        v.detail = "all comparison maps are isomorphisms in degrees <= " + std::to_string(deg) +
                   " at two successive truncations";
    } else {
        v.detail = "comparison maps disagree across truncations";
    }
    return v;
}

/// Recomputes the cited comparison and confirms the failure.
inline bool replay_semistability_witness(const ISpaceT& x, const SemistabilityVerdict& v) {
    if (!v.witness) return false;
    const auto& w = *v.witness;
    auto again = compare_at(x, w.map, w.trunc, v.deg, v.chains);
    return !again.verdict.iso && again.verdict.failure == w.verdict.failure &&
           again.pi0_source == w.pi0_source && again.pi0_target == w.pi0_target;
}

}  // namespace itop

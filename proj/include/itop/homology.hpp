// Normalized chains and integral homology.
#pragma once

#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "itop/error.hpp"
#include "itop/snf.hpp"
#include "itop/sset.hpp"

namespace itop {

/// Chain complex C_0 .. C_top with boundary[k]: C_k -> C_{k-1}.
struct ChainComplex {
    std::vector<int> rank;
    std::vector<SparseMatrix> boundary;  // boundary[0] is the zero map
    int top() const { return static_cast<int>(rank.size()) - 1; }
};

/// Normalized chains on nondegenerate simplices of dimension <= top.
inline ChainComplex normalized_chains(const SSet& x, int top) {
    ChainComplex c;
    c.rank.resize(top + 1);
    c.boundary.resize(top + 1);
    for (int k = 0; k <= top; ++k) c.rank[k] = x.count(k);
    c.boundary[0] = SparseMatrix(0, c.rank[0]);
    for (int k = 1; k <= top; ++k) {
        SparseMatrix m(c.rank[k - 1], c.rank[k]);
        for (int id = 0; id < c.rank[k]; ++id)
            for (int i = 0; i <= k; ++i) {
                const SimplexRef& f = x.face_nd(k, id, i);
                if (!f.degenerate()) m.add(f.base, id, (i % 2) ? -1 : 1);
            }
        m.finalize();
        c.boundary[k] = std::move(m);
    }
    return c;
}

/// Chain map induced on normalized chains, as matrices C_k(X) -> C_k(Y).
inline std::vector<SparseMatrix> chain_map(const SMap& f, const SSet& x, const SSet& y, int top) {
    std::vector<SparseMatrix> out;
    for (int k = 0; k <= top; ++k) {
        SparseMatrix m(y.count(k), x.count(k));
        for (int id = 0; id < x.count(k); ++id) {
            const SimplexRef& r = f.image[k][id];
            if (!r.degenerate()) m.add(r.base, id, 1);
        }
        m.finalize();
        out.push_back(std::move(m));
    }
    return out;
}

/// Mapping cone: Cone_k = C_{k-1}(X) + C_k(Y), d(x, y) = (-dx, f(x) + dy).
inline ChainComplex mapping_cone(const ChainComplex& cx, const ChainComplex& cy, const std::vector<SparseMatrix>& f) {
    const int top = std::min(cx.top() + 1, cy.top());
    ChainComplex c;
    c.rank.resize(top + 1);
    for (int k = 0; k <= top; ++k) c.rank[k] = (k >= 1 ? cx.rank[k - 1] : 0) + cy.rank[k];
    c.boundary.resize(top + 1);
    c.boundary[0] = SparseMatrix(0, c.rank[0]);
    for (int k = 1; k <= top; ++k) {
        const int xk = cx.rank[k - 1];            // x part of the source
        const int xk1 = k >= 2 ? cx.rank[k - 2] : 0;  // x part of the target
        SparseMatrix m(c.rank[k - 1], c.rank[k]);
        for (int j = 0; j < xk; ++j) {
            if (k >= 2)
                for (auto& [r, v] : cx.boundary[k - 1].columns[j]) m.add(r, j, -v);
            for (auto& [r, v] : f[k - 1].columns[j]) m.add(xk1 + r, j, v);
        }
        for (int j = 0; j < cy.rank[k]; ++j)
            for (auto& [r, v] : cy.boundary[k].columns[j]) m.add(xk1 + r, xk + j, v);
        m.finalize();
        c.boundary[k] = std::move(m);
    }
    return c;
}

/// Product of two consecutive boundaries vanishes.
inline bool boundary_squares_to_zero(const ChainComplex& c) {
    for (int k = 2; k <= c.top(); ++k) {
        const auto& a = c.boundary[k - 1];
        const auto& b = c.boundary[k];
        for (int j = 0; j < b.cols; ++j) {
            std::vector<std::pair<int, std::int64_t>> acc;
            for (auto& [r, v] : b.columns[j])
                for (auto& [r2, v2] : a.columns[r]) acc.emplace_back(r2, v * v2);
            std::sort(acc.begin(), acc.end());
            for (std::size_t i = 0; i < acc.size();) {
                std::int64_t s = 0;
                std::size_t e = i;
                for (; e < acc.size() && acc[e].first == acc[i].first; ++e) s += acc[e].second;
                if (s != 0) return false;
                i = e;
            }
        }
    }
    return true;
}

struct HomologyGroup {
    int rank = 0;
    std::vector<BigInt> torsion;
    bool operator==(const HomologyGroup&) const = default;
    bool is_zero() const { return rank == 0 && torsion.empty(); }
};

inline std::string to_string(const HomologyGroup& g) {
    if (g.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (g.rank > 0) {
        os << "Z";
        if (g.rank > 1) os << "^" << g.rank;
        first = false;
    }
    for (auto& t : g.torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return os.str();
}

struct HomologyReport {
    std::vector<HomologyGroup> groups;  // degrees 0..D
    int skeleton_dim = 0;               // highest chain dimension used
    int trunc = -1;                     // ambient truncation N, if any
    int chain_bound = -1;               // chain-length bound S, if any
    std::optional<bool> stable;         // unchanged from the next-smaller truncation

    int degree() const { return static_cast<int>(groups.size()) - 1; }
    const HomologyGroup& operator[](int k) const { return groups[k]; }

    /// Reduced homology vanishes (H_0 = Z, higher groups zero).
    bool reduced_trivial() const {
        if (groups.empty()) return false;
        if (!(groups[0].rank == 1 && groups[0].torsion.empty())) return false;
        for (std::size_t k = 1; k < groups.size(); ++k)
            if (!groups[k].is_zero()) return false;
        return true;
    }
    bool same_groups(const HomologyReport& o) const { return groups == o.groups; }
};

inline std::string to_string(const HomologyReport& r) {
    std::ostringstream os;
    for (int k = 0; k <= r.degree(); ++k) os << (k ? ", " : "") << "H" << k << "=" << to_string(r.groups[k]);
    return os.str();
}

/// Homology of a chain complex in degrees 0..deg; needs boundary up to deg+1.
inline HomologyReport chain_homology(const ChainComplex& c, int deg, int jobs = 1) {
    if (c.top() < deg + 1) throw BudgetExceeded("chain complex too short for requested degree");
    std::vector<SnfResult> snf(deg + 2);
    if (jobs > 1) {
        std::vector<std::future<SnfResult>> fut;
        for (int k = 1; k <= deg + 1; ++k)
            fut.push_back(std::async(std::launch::async, [&c, k] { return smith_invariants(c.boundary[k]); }));
        for (int k = 1; k <= deg + 1; ++k) snf[k] = fut[k - 1].get();
    } else {
        for (int k = 1; k <= deg + 1; ++k) snf[k] = smith_invariants(c.boundary[k]);
    }
    HomologyReport rep;
    rep.skeleton_dim = deg + 1;
    for (int k = 0; k <= deg; ++k) {
        HomologyGroup g;
        g.rank = c.rank[k] - snf[k].rank - snf[k + 1].rank;
        g.torsion = snf[k + 1].torsion;
        rep.groups.push_back(std::move(g));
    }
    return rep;
}

/// Checks that x is explicit up to dimension d.
inline void require_dimension(const SSet& x, int d, const char* what) {
    if (!x.finite() && x.top_dim() < d)
        throw BudgetExceeded(std::string(what) + ": simplices of dimension " + std::to_string(d) +
                             " were not built (chain-length bound " + std::to_string(x.top_dim()) + ")");
}

inline HomologyReport homology(const SSet& x, int deg, int jobs = 1) {
    require_dimension(x, deg + 1, "homology");
    ChainComplex c = normalized_chains(x, deg + 1);
    return chain_homology(c, deg, jobs);
}

/// Homology of the cofibre of f, i.e. relative homology of the map.
inline HomologyReport cone_homology(const SMap& f, const SSet& x, const SSet& y, int deg, int jobs = 1) {
    require_dimension(x, deg, "map homology");
    require_dimension(y, deg + 1, "map homology");
    ChainComplex cx = normalized_chains(x, deg);
    ChainComplex cy = normalized_chains(y, deg + 1);
    auto fm = chain_map(f, x, y, deg);
    return chain_homology(mapping_cone(cx, cy, fm), deg, jobs);
}

struct MapVerdict {
    bool iso = false;             // f_* iso in all degrees <= deg
    int deg = 0;
    std::optional<int> failure;   // first degree where f_* is not an iso
    std::string witness;
    HomologyReport source, target, cone;
};

/// Decides whether f induces isomorphisms on H_k for k <= deg.
///
/// H_k(cone) = 0 for k <= deg gives surjectivity up to deg and injectivity
/// below; in the top degree an abstract isomorphism H_deg(X) = H_deg(Y)
/// upgrades the surjection to an isomorphism.
inline MapVerdict map_verdict(const SMap& f, const SSet& x, const SSet& y, int deg, int jobs = 1) {
    MapVerdict v;
    v.deg = deg;
    v.source = homology(x, deg, jobs);
    v.target = homology(y, deg, jobs);
    v.cone = cone_homology(f, x, y, deg, jobs);
    for (int k = 0; k <= deg; ++k) {
        if (!v.cone[k].is_zero()) {
            // a nonzero relative class in degree k breaks surjectivity at k or injectivity at k-1
            int at = k;
            if (k > 0 && v.source[k - 1] != v.target[k - 1]) at = k - 1;
            if (!v.failure || at < *v.failure) {
                v.failure = at;
                v.witness = "relative homology H" + std::to_string(k) + " = " + to_string(v.cone[k]);
            }
            break;
        }
    }
    if (!v.failure && v.source[deg] != v.target[deg]) {
        v.failure = deg;
        v.witness = "H" + std::to_string(deg) + " differs: " + to_string(v.source[deg]) + " vs " + to_string(v.target[deg]);
    }
    v.iso = !v.failure.has_value();
    return v;
}

}  // namespace itop

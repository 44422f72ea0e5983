// Finite categories given by composition tables, and their nerves.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "itop/error.hpp"
#include "itop/sset.hpp"
#include "itop/util.hpp"

namespace itop {

struct FinCategory {
    int objects = 0;
    std::vector<int> src, dst;              // per morphism
    std::vector<int> identity;              // per object
    std::vector<std::vector<int>> out;      // morphisms by source object
    std::vector<std::string> object_names;  // optional labels
    // comp(g, f) = g o f, or -1 if not composable
    std::vector<std::unordered_map<int, int>> comp_table;  // indexed by f

    int morphisms() const { return static_cast<int>(src.size()); }

    int add_object(std::string name = {}) {
        object_names.push_back(std::move(name));
        identity.push_back(-1);
        out.emplace_back();
        return objects++;
    }
    int add_morphism(int s, int d) {
        src.push_back(s);
        dst.push_back(d);
        comp_table.emplace_back();
        out[s].push_back(morphisms() - 1);
        return morphisms() - 1;
    }
    void set_comp(int g, int f, int gf) { comp_table[f][g] = gf; }

    int comp(int g, int f) const {
        if (dst[f] != src[g]) return -1;
        auto it = comp_table[f].find(g);
        return it == comp_table[f].end() ? -1 : it->second;
    }
    bool is_identity(int f) const { return identity[src[f]] == f; }
};

/// Identity, totality and associativity diagnostics; empty iff a category.
inline std::vector<std::string> validate_category(const FinCategory& c) {
    std::vector<std::string> d;
    for (int o = 0; o < c.objects; ++o) {
        int i = c.identity[o];
        if (i < 0 || c.src[i] != o || c.dst[i] != o) d.push_back("object " + std::to_string(o) + " lacks an identity");
    }
    if (!d.empty()) return d;
    for (int f = 0; f < c.morphisms(); ++f) {
        if (c.comp(c.identity[c.dst[f]], f) != f || c.comp(f, c.identity[c.src[f]]) != f)
            d.push_back("identity law fails for morphism " + std::to_string(f));
        for (int g : c.out[c.dst[f]]) {
            int gf = c.comp(g, f);
            if (gf < 0 || c.src[gf] != c.src[f] || c.dst[gf] != c.dst[g]) {
                d.push_back("composite of " + std::to_string(g) + " and " + std::to_string(f) + " missing or mistyped");
                continue;
            }
            for (int h : c.out[c.dst[g]]) {
                int a = c.comp(h, gf);
                int hg = c.comp(h, g);
                int b = hg < 0 ? -2 : c.comp(hg, f);
                if (a != b)
                    d.push_back("associativity fails for (" + std::to_string(h) + ", " + std::to_string(g) + ", " +
                                std::to_string(f) + ")");
            }
        }
    }
    return d;
}

/// One-object category of a finite group given by a multiplication table
/// (element 0 is the identity).
inline FinCategory group_category(const std::vector<std::vector<int>>& mult) {
    FinCategory c;
    c.add_object("*");
    const int n = static_cast<int>(mult.size());
    for (int g = 0; g < n; ++g) c.add_morphism(0, 0);
    c.identity[0] = 0;
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) c.set_comp(g, f, mult[g][f]);
    return c;
}

/// The linear order 0 < 1 < ... < n as a category.
inline FinCategory linear_order(int n) {
    FinCategory c;
    for (int i = 0; i <= n; ++i) c.add_object(std::to_string(i));
    std::vector<std::vector<int>> id(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) id[i][j] = c.add_morphism(i, j);
    for (int i = 0; i <= n; ++i) c.identity[i] = id[i][i];
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) c.set_comp(id[j][k], id[i][j], id[i][k]);
    return c;
}

struct Nerve {
    SSet sset;
    // chains[k][id]: the k non-identity arrows of a nondegenerate k-simplex
    // (for k = 0 a single object id)
    std::vector<std::vector<std::vector<int>>> chains;
};

/// Nerve truncated at dimension `dmax`. A k-simplex is a chain
/// c_0 -> c_1 -> ... -> c_k; d_0 drops the first arrow, d_k the last, inner
/// faces compose. Simplices with identity arrows are degenerate.
inline Nerve nerve(const FinCategory& c, int dmax) {
    auto diags = validate_category(c);
    if (!diags.empty()) throw InvalidInput("nerve: " + diags.front());
    Nerve nv;
    nv.sset = SSet(dmax);
    nv.chains.resize(dmax + 1);
    std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index(dmax + 1);
    for (int o = 0; o < c.objects; ++o) {
        nv.sset.add_vertex();
        nv.chains[0].push_back({o});
    }
    std::vector<std::vector<int>> nonid_out(c.objects);
    for (int f = 0; f < c.morphisms(); ++f)
        if (!c.is_identity(f)) nonid_out[c.src[f]].push_back(f);
    auto ref_of = [&](const std::vector<int>& arrows, int k) -> SimplexRef {
        std::vector<int> kept;
        DegMask mask = 0;
        for (int j = 0; j < k; ++j) {
            if (c.is_identity(arrows[j]))
                mask |= 1u << j;
            else
                kept.push_back(arrows[j]);
        }
        int d = static_cast<int>(kept.size());
        if (d == 0) return SSet::degenerate_vertex(c.src[arrows[0]], k);
        return {k, mask, index[d].at(kept)};
    };
    for (int k = 1; k <= dmax; ++k) {
        if (k == 1) {
            for (int f = 0; f < c.morphisms(); ++f) {
                if (c.is_identity(f)) continue;
                SimplexRef faces[2] = {{0, 0, c.dst[f]}, {0, 0, c.src[f]}};
                index[1].emplace(std::vector<int>{f}, nv.sset.add_simplex(1, faces));
                nv.chains[1].push_back({f});
            }
            continue;
        }
        for (const auto& prev : nv.chains[k - 1]) {
            for (int f : nonid_out[c.dst[prev.back()]]) {
                std::vector<int> ch = prev;
                ch.push_back(f);
                std::vector<SimplexRef> faces(k + 1);
                faces[0] = ref_of(std::vector<int>(ch.begin() + 1, ch.end()), k - 1);
                faces[k] = ref_of(std::vector<int>(ch.begin(), ch.end() - 1), k - 1);
                for (int i = 1; i < k; ++i) {
                    std::vector<int> fc;
                    for (int j = 0; j < k; ++j) {
                        if (j == i - 1) {
                            fc.push_back(c.comp(ch[i], ch[i - 1]));
                            ++j;
                        } else {
                            fc.push_back(ch[j]);
                        }
                    }
                    faces[i] = ref_of(fc, k - 1);
                }
                index[k].emplace(ch, nv.sset.add_simplex(k, faces));
                nv.chains[k].push_back(std::move(ch));
            }
        }
    }
    nv.sset.set_finite(nv.chains[dmax].empty() && dmax > 0);
    return nv;
}

}  // namespace itop

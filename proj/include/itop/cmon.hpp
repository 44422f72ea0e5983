// Commutative I-space monoids at finite truncation.
#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itop/box.hpp"
#include "itop/homology.hpp"
#include "itop/snf.hpp"
#include "itop/ispace.hpp"

namespace itop {

/// mu_{m,n}: X(m) x X(n) -> X(m+n) for m + n <= N, and a unit vertex of X(0).
struct CIMonoidT {
    ISpaceT carrier;
    int unit = 0;
    std::vector<std::vector<std::shared_ptr<const Product>>> prod;  // prod[m][n]
    std::vector<std::vector<SMap>> mult;                            // mult[m][n]
    std::vector<std::vector<std::string>> labels;                   // optional vertex labels per level

    int trunc() const { return carrier.trunc(); }

    /// mu on simplices of equal dimension (degenerate ones allowed).
    SimplexRef mul(int m, int n, const SimplexRef& x, const SimplexRef& y) const {
        return mult[m][n].apply(prod[m][n]->lookup(x, y));
    }

    std::string label(int n, int v) const {
        if (n < static_cast<int>(labels.size()) && v < static_cast<int>(labels[n].size())) return labels[n][v];
        return std::to_string(n) + ":" + std::to_string(v);
    }

    using Rule = std::function<SimplexRef(int m, int n, const SimplexRef& x, const SimplexRef& y)>;

    /// Builds mu from a rule evaluated on the nondegenerate simplices of
    /// each product X(m) x X(n).
    static CIMonoidT from_rule(ISpaceT carrier, int unit, const Rule& rule) {
        CIMonoidT a;
        const int N = carrier.trunc();
        a.carrier = std::move(carrier);
        a.unit = unit;
        a.prod.resize(N + 1);
        a.mult.resize(N + 1);
        for (int m = 0; m <= N; ++m)
            for (int n = 0; m + n <= N; ++n) {
                auto p = std::make_shared<const Product>(a.carrier.level(m), a.carrier.level(n));
                SMap f;
                f.image.resize(p->sset().top_dim() + 1);
                for (int k = 0; k <= p->sset().top_dim(); ++k)
                    for (int id = 0; id < p->sset().count(k); ++id) {
                        auto [x, y] = p->pair_of(k, id);
                        f.image[k].push_back(rule(m, n, x, y));
                    }
                a.prod[m].push_back(std::move(p));
                a.mult[m].push_back(std::move(f));
            }
        return a;
    }
};

/// Levelwise maps of carriers compatible with units and multiplication.
struct MonoidMap {
    ISpaceMap level;
};

namespace detail {

// all tuples of full simplices of one dimension with no common degeneracy
inline void for_each_nd_tuple(const std::vector<const FullTable*>& t, int q,
                              const std::function<void(const std::vector<SimplexRef>&)>& fn) {
    const int r = static_cast<int>(t.size());
    std::vector<int> idx(r, 0);
    for (auto* x : t)
        if (x->size(q) == 0) return;
    std::vector<SimplexRef> cur(r);
    while (true) {
        DegMask common = low_bits(q);
        for (int i = 0; i < r; ++i) {
            cur[i] = t[i]->at(q)[idx[i]];
            common &= cur[i].deg;
        }
        if (common == 0 || q == 0) fn(cur);
        int i = r - 1;
        while (i >= 0 && ++idx[i] == t[i]->size(q)) idx[i--] = 0;
        if (i < 0) return;
    }
}

inline int product_top(const SSet& a, const SSet& b) {
    return (a.finite() && b.finite()) ? a.top_dim() + b.top_dim() : std::min(a.top_dim(), b.top_dim());
}

}  // namespace detail

/// Unitality, associativity, commutativity and naturality of mu,
/// exhaustively at truncation. One diagnostic per failing square.
inline std::vector<std::string> validate_monoid(const CIMonoidT& a) {
    std::vector<std::string> d = validate_ispace(a.carrier);
    if (!d.empty()) return d;
    const ISpaceT& x = a.carrier;
    const TruncatedI& t = x.cat();
    const int N = a.trunc();
    auto at = [](int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; };
    if (a.unit < 0 || a.unit >= x.level(0).count(0)) return {"unit is not a vertex of X(0)"};
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n)
            for (auto& s : validate_smap(a.mult[m][n], a.prod[m][n]->sset(), x.level(m + n)))
                d.push_back("mu" + at(m, n) + ": " + s);
    if (!d.empty()) return d;

    std::vector<FullTable> tab;
    int top = 0;
    for (int n = 0; n <= N; ++n) top = std::max(top, x.level(n).top_dim());
    for (int n = 0; n <= N; ++n) tab.emplace_back(x.level(n), 2 * top);

    for (int n = 0; n <= N; ++n) {
        bool ok = true;
        for (int k = 0; k <= x.level(n).top_dim() && ok; ++k)
            for (int id = 0; id < x.level(n).count(k) && ok; ++id) {
                SimplexRef s{k, 0, id};
                SimplexRef u = SSet::degenerate_vertex(a.unit, k);
                if (a.mul(0, n, u, s) != s || a.mul(n, 0, s, u) != s) ok = false;
            }
        if (!ok) d.push_back("unitality fails at level " + std::to_string(n));
    }
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n) {
            const int qtop = detail::product_top(x.level(m), x.level(n));
            bool comm = true;
            const SMap& tau = x.action(shuffle(m, n));
            for (int q = 0; q <= qtop && comm; ++q)
                detail::for_each_nd_tuple({&tab[m], &tab[n]}, q, [&](const std::vector<SimplexRef>& p) {
                    if (comm && tau.apply(a.mul(m, n, p[0], p[1])) != a.mul(n, m, p[1], p[0])) comm = false;
                });
            if (!comm) d.push_back("commutativity fails at " + at(m, n));
            for (int p = 0; m + n + p <= N; ++p) {
                bool assoc = true;
                int q3 = std::min(qtop, detail::product_top(x.level(n), x.level(p)));
                if (x.level(m).finite() && x.level(n).finite() && x.level(p).finite())
                    q3 = x.level(m).top_dim() + x.level(n).top_dim() + x.level(p).top_dim();
                q3 = std::min(q3, 2 * top);
                for (int q = 0; q <= q3 && assoc; ++q)
                    detail::for_each_nd_tuple({&tab[m], &tab[n], &tab[p]}, q, [&](const std::vector<SimplexRef>& s) {
                        if (!assoc) return;
                        if (a.mul(m + n, p, a.mul(m, n, s[0], s[1]), s[2]) != a.mul(m, n + p, s[0], a.mul(n, p, s[1], s[2])))
                            assoc = false;
                    });
                if (!assoc) d.push_back("associativity fails at (" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(p) + ")");
            }
        }
    // naturality in both variables; generated by actions in one variable at a time
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n) {
            const int qtop = detail::product_top(x.level(m), x.level(n));
            bool nat = true;
            for (int m2 = m; m2 + n <= N && nat; ++m2)
                for (int f = t.hom_begin(m, m2); f < t.hom_begin(m, m2) + t.hom_size(m, m2) && nat; ++f) {
                    const Injection& af = t.morphism(f);
                    const SMap& lhs_act = x.action(concat(af, identity_injection(n)));
                    for (int q = 0; q <= qtop && nat; ++q)
                        detail::for_each_nd_tuple({&tab[m], &tab[n]}, q, [&](const std::vector<SimplexRef>& p) {
                            if (nat && a.mul(m2, n, x.action(f).apply(p[0]), p[1]) != lhs_act.apply(a.mul(m, n, p[0], p[1])))
                                nat = false;
                        });
                }
            for (int n2 = n; m + n2 <= N && nat; ++n2)
                for (int f = t.hom_begin(n, n2); f < t.hom_begin(n, n2) + t.hom_size(n, n2) && nat; ++f) {
                    const Injection& bf = t.morphism(f);
                    const SMap& rhs_act = x.action(concat(identity_injection(m), bf));
                    for (int q = 0; q <= qtop && nat; ++q)
                        detail::for_each_nd_tuple({&tab[m], &tab[n]}, q, [&](const std::vector<SimplexRef>& p) {
                            if (nat && a.mul(m, n2, p[0], x.action(f).apply(p[1])) != rhs_act.apply(a.mul(m, n, p[0], p[1])))
                                nat = false;
                        });
                }
            if (!nat) d.push_back("naturality fails at " + at(m, n));
        }
    return d;
}

/// Naturality, unit and multiplication compatibility of a monoid map.
inline std::vector<std::string> validate_monoid_map(const MonoidMap& f, const CIMonoidT& a, const CIMonoidT& b) {
    auto d = validate_ispace_map(f.level, a.carrier, b.carrier);
    if (!d.empty()) return d;
    if (f.level.level[0].apply({0, 0, a.unit}) != SimplexRef{0, 0, b.unit}) d.push_back("unit not preserved");
    const int N = std::min(a.trunc(), b.trunc());
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n) {
            const Product& p = *a.prod[m][n];
            bool ok = true;
            for (int k = 0; k <= p.sset().top_dim() && ok; ++k)
                for (int id = 0; id < p.sset().count(k) && ok; ++id) {
                    auto [x, y] = p.pair_of(k, id);
                    SimplexRef lhs = f.level.level[m + n].apply(a.mul(m, n, x, y));
                    SimplexRef rhs = b.mul(m, n, f.level.level[m].apply(x), f.level.level[n].apply(y));
                    if (lhs != rhs) ok = false;
                }
            if (!ok) d.push_back("multiplication not preserved at (" + std::to_string(m) + "," + std::to_string(n) + ")");
        }
    return d;
}

// ---------------------------------------------------------------- constructors

/// The terminal commutative I-space monoid.
inline CIMonoidT terminal_monoid(int N) {
    CIMonoidT a = CIMonoidT::from_rule(terminal_ispace(N), 0, [](int, int, const SimplexRef& x, const SimplexRef&) {
        return SSet::degenerate_vertex(0, x.dim);
    });
    return a;
}

inline std::string subset_label(int mask, int n) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1) {
            s += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

/// C_1: subsets of {1..n}, direct image, mu(S, T) = S u (T + m). Vertex ids
/// are the bitmasks; the empty subset is the unit and the basepoint.
inline CIMonoidT c1(int N) {
    ISpaceT x(N);
    for (int n = 0; n <= N; ++n) {
        x.level(n) = discrete(1 << n);
        x.level(n).basepoint = 0;
    }
    const TruncatedI& t = x.cat();
    x.set_action([&t](int f, const SimplexRef& s) {
        const Injection& a = t.morphism(f);
        int img = 0;
        for (int i = 0; i < a.m; ++i)
            if (s.base >> i & 1) img |= 1 << a(i);
        return SimplexRef{0, 0, img};
    });
    CIMonoidT a = CIMonoidT::from_rule(std::move(x), 0, [](int m, int, const SimplexRef& s, const SimplexRef& u) {
        return SimplexRef{0, 0, s.base | (u.base << m)};
    });
    a.labels.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        for (int v = 0; v < (1 << n); ++v) a.labels[n].push_back(subset_label(v, n));
    return a;
}

/// A commutative monoid with an additive weight; level n of the associated
/// I-space monoid holds the elements of weight <= n and injections act as
/// inclusions. With all weights zero this is the constant monoid.
struct WeightedMonoid {
    std::vector<std::string> names;
    std::vector<int> weight;
    std::function<int(int, int)> add;  // element indices
    int zero = 0;
};

inline CIMonoidT filtered_constant_monoid(const WeightedMonoid& w, int N) {
    const int E = static_cast<int>(w.names.size());
    std::vector<std::vector<int>> elems(N + 1);
    std::vector<std::vector<int>> vid(N + 1, std::vector<int>(E, -1));
    ISpaceT x(N);
    for (int n = 0; n <= N; ++n) {
        for (int e = 0; e < E; ++e)
            if (w.weight[e] <= n) {
                vid[n][e] = static_cast<int>(elems[n].size());
                elems[n].push_back(e);
            }
        x.level(n) = discrete(static_cast<int>(elems[n].size()));
        x.level(n).basepoint = vid[n][w.zero];
    }
    const TruncatedI& t = x.cat();
    x.set_action([&](int f, const SimplexRef& s) { return SimplexRef{0, 0, vid[t.dst(f)][elems[t.src(f)][s.base]]}; });
    if (vid[0][w.zero] < 0) throw InvalidInput("filtered_constant_monoid: zero must have weight 0");
    CIMonoidT a = CIMonoidT::from_rule(std::move(x), vid[0][w.zero], [&](int m, int n, const SimplexRef& s, const SimplexRef& u) {
        const int e = w.add(elems[m][s.base], elems[n][u.base]);
        if (vid[m + n][e] < 0) throw InvalidInput("filtered_constant_monoid: weight is not subadditive");
        return SimplexRef{0, 0, vid[m + n][e]};
    });
    a.labels.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        for (int e : elems[n]) a.labels[n].push_back(w.names[e]);
    return a;
}

/// Finite commutative monoid given by an addition table, as a constant monoid.
inline CIMonoidT constant_monoid(const std::vector<std::vector<int>>& table, int N, std::vector<std::string> names = {}) {
    WeightedMonoid w;
    const int E = static_cast<int>(table.size());
    for (int e = 0; e < E; ++e) {
        w.names.push_back(e < static_cast<int>(names.size()) ? names[e] : std::to_string(e));
        w.weight.push_back(0);
    }
    w.add = [table](int a, int b) { return table[a][b]; };
    return filtered_constant_monoid(w, N);
}

/// M = N_0 u {0'} with 0' + 0' = 0, 0 + 0' = 0', 0' + n = n (n >= 1),
/// weight of n is n.
inline CIMonoidT example_monoid_M(int N) {
    WeightedMonoid w;
    // element 0 is 0, element 1 is 0', element 1 + k is k
    w.names = {"0", "0'"};
    w.weight = {0, 0};
    for (int k = 1; k <= N; ++k) {
        w.names.push_back(std::to_string(k));
        w.weight.push_back(k);
    }
    const int E = static_cast<int>(w.names.size());
    w.add = [E](int a, int b) {
        auto val = [](int e) { return e <= 1 ? 0 : e - 1; };
        const int s = val(a) + val(b);
        if (s == 0) return (a == 1) != (b == 1) ? 1 : 0;
        if (s + 1 >= E) throw InvalidInput("example monoid: sum beyond truncation");
        return s + 1;
    };
    return filtered_constant_monoid(w, N);
}

/// A flat model of M: subsets of n together with a point 0' at every level,
/// 0' + 0' = empty, 0' + S = S for nonempty S.
inline CIMonoidT subset_model_M(int N) {
    ISpaceT x(N);
    for (int n = 0; n <= N; ++n) {
        x.level(n) = discrete((1 << n) + 1);
        x.level(n).basepoint = 0;
    }
    const TruncatedI& t = x.cat();
    x.set_action([&t](int f, const SimplexRef& s) {
        const Injection& a = t.morphism(f);
        if (s.base == (1 << a.m)) return SimplexRef{0, 0, 1 << a.n};
        int img = 0;
        for (int i = 0; i < a.m; ++i)
            if (s.base >> i & 1) img |= 1 << a(i);
        return SimplexRef{0, 0, img};
    });
    CIMonoidT a = CIMonoidT::from_rule(std::move(x), 0, [](int m, int n, const SimplexRef& s, const SimplexRef& u) {
        const bool ps = s.base == (1 << m), pu = u.base == (1 << n);
        if (ps && pu) return SimplexRef{0, 0, 0};
        if (ps) return SimplexRef{0, 0, u.base == 0 ? 1 << (m + n) : u.base << m};
        if (pu) return SimplexRef{0, 0, s.base == 0 ? 1 << (m + n) : s.base};
        return SimplexRef{0, 0, s.base | (u.base << m)};
    });
    a.labels.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        for (int v = 0; v < (1 << n); ++v) a.labels[n].push_back(subset_label(v, n));
        a.labels[n].push_back("0'");
    }
    return a;
}

/// The integers with weight |z|.
inline CIMonoidT integers_monoid(int N) {
    WeightedMonoid w;
    for (int z = -N; z <= N; ++z) {
        w.names.push_back(std::to_string(z));
        w.weight.push_back(std::abs(z));
    }
    w.zero = N;
    w.add = [N](int a, int b) {
        const int s = (a - N) + (b - N);
        if (s < -N || s > N) throw InvalidInput("integers monoid: sum beyond truncation");
        return s + N;
    };
    return filtered_constant_monoid(w, N);
}

// ---------------------------------------------------------------- pi_0 monoids

using ExpVec = std::vector<int>;

/// Generators and relations L = R between exponent vectors over N_0.
struct CommMonoidPres {
    std::vector<std::string> gens;
    std::vector<std::pair<ExpVec, ExpVec>> rels;
};

inline std::string to_string(const ExpVec& v, const std::vector<std::string>& gens) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (v[i] != 1) s += std::to_string(v[i]);
        const bool word = !gens[i].empty() && std::isalpha(static_cast<unsigned char>(gens[i][0]));
        s += word ? gens[i] : "[" + gens[i] + "]";
    }
    return s.empty() ? "0" : s;
}

inline std::string to_string(const CommMonoidPres& p) {
    std::string s = "<";
    for (std::size_t i = 0; i < p.gens.size(); ++i) s += (i ? ", " : "") + p.gens[i];
    s += " |";
    for (std::size_t i = 0; i < p.rels.size(); ++i)
        s += (i ? ", " : " ") + to_string(p.rels[i].first, p.gens) + " = " + to_string(p.rels[i].second, p.gens);
    return s + ">";
}

/// pi_0 of the homotopy colimit over I with its presentation. Classes are
/// components of the levels merged along all injections; expr writes each
/// class in the surviving generators.
struct Pi0Monoid {
    CommMonoidPres pres;
    std::vector<std::vector<int>> class_of;  // level n, vertex -> class
    std::vector<std::string> class_names;
    std::vector<ExpVec> expr;
    int unit_class = 0;
    int classes() const { return static_cast<int>(class_names.size()); }
};

namespace detail {

inline bool is_unit_vector(const ExpVec& v, int& c) {
    c = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] != 1 || c >= 0) return false;
        c = static_cast<int>(i);
    }
    return c >= 0;
}

inline void tidy_relations(std::vector<std::pair<ExpVec, ExpVec>>& rels) {
    std::set<std::pair<ExpVec, ExpVec>> seen;
    std::vector<std::pair<ExpVec, ExpVec>> out;
    for (auto [l, r] : rels) {
        if (l == r) continue;
        if (l < r) std::swap(l, r);
        if (seen.insert({l, r}).second) out.emplace_back(std::move(l), std::move(r));
    }
    rels = std::move(out);
}

// (l, r) is (u, v) + (w, w) for another relation and some w >= 0
inline bool is_translate(const std::pair<ExpVec, ExpVec>& a, const std::pair<ExpVec, ExpVec>& b) {
    auto check = [&](const ExpVec& u, const ExpVec& v) {
        bool nonzero = false;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const int w = a.first[i] - u[i];
            if (w < 0 || a.second[i] - v[i] != w) return false;
            nonzero = nonzero || w > 0;
        }
        return nonzero;
    };
    return check(b.first, b.second) || check(b.second, b.first);
}

}  // namespace detail

/// Eliminates generators defined by a relation c = w (w free of c, largest c
/// first), then drops trivial, duplicate and translated relations. `expr` is
/// rewritten alongside.
inline void minimize(CommMonoidPres& p, std::vector<ExpVec>& expr) {
    while (true) {
        detail::tidy_relations(p.rels);
        int best = -1;
        ExpVec def;
        for (auto& [l, r] : p.rels)
            for (int side = 0; side < 2; ++side) {
                const ExpVec& a = side ? r : l;
                const ExpVec& b = side ? l : r;
                int c;
                if (detail::is_unit_vector(a, c) && b[c] == 0 && c > best) {
                    best = c;
                    def = b;
                }
            }
        if (best < 0) break;
        auto subst = [&](ExpVec& v) {
            const int k = v[best];
            if (k)
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += k * def[i];
            v.erase(v.begin() + best);
        };
        for (auto& [l, r] : p.rels) {
            subst(l);
            subst(r);
        }
        for (auto& v : expr) subst(v);
        p.gens.erase(p.gens.begin() + best);
    }
    std::vector<std::pair<ExpVec, ExpVec>> kept;
    for (std::size_t i = 0; i < p.rels.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < p.rels.size() && !redundant; ++j)
            redundant = i != j && detail::is_translate(p.rels[i], p.rels[j]);
        if (!redundant) kept.push_back(p.rels[i]);
    }
    p.rels = std::move(kept);
}

inline Pi0Monoid pi0_monoid(const CIMonoidT& a) {
    const ISpaceT& x = a.carrier;
    const TruncatedI& t = x.cat();
    const int N = a.trunc();
    std::vector<Components> comps;
    std::vector<int> offset{0};
    for (int n = 0; n <= N; ++n) {
        comps.push_back(pi0(x.level(n)));
        offset.push_back(offset.back() + comps.back().count());
    }
    UnionFind uf(offset.back());
    for (int f = 0; f < t.morphisms(); ++f) {
        const int m = t.src(f), n = t.dst(f);
        for (int v = 0; v < x.level(m).count(0); ++v)
            uf.unite(offset[m] + comps[m].of_vertex[v], offset[n] + comps[n].of_vertex[x.action(f).image[0][v].base]);
    }
    Pi0Monoid out;
    std::vector<int> cls(offset.back(), -1), of_root(offset.back(), -1);
    for (int n = 0; n <= N; ++n)
        for (int c = 0; c < comps[n].count(); ++c) {
            int& k = of_root[uf.find(offset[n] + c)];
            if (k < 0) {
                k = out.classes();
                out.class_names.push_back(a.label(n, comps[n].rep[c]));
            }
            cls[offset[n] + c] = k;
        }
    out.class_of.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        for (int v = 0; v < x.level(n).count(0); ++v) out.class_of[n].push_back(cls[offset[n] + comps[n].of_vertex[v]]);
    out.unit_class = out.class_of[0][a.unit];

    const int C = out.classes();
    auto e = [C](int c) {
        ExpVec v(C, 0);
        v[c] = 1;
        return v;
    };
    out.pres.gens = out.class_names;
    out.pres.rels.emplace_back(e(out.unit_class), ExpVec(C, 0));
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n)
            for (int cx : comps[m].rep)
                for (int cy : comps[n].rep) {
                    ExpVec l = e(out.class_of[m][cx]);
                    l[out.class_of[n][cy]] += 1;
                    const int r = out.class_of[m + n][a.mul(m, n, {0, 0, cx}, {0, 0, cy}).base];
                    out.pres.rels.emplace_back(std::move(l), e(r));
                }
    for (int c = 0; c < C; ++c) out.expr.push_back(e(c));
    minimize(out.pres, out.expr);
    return out;
}

/// Cokernel of the relation matrix: rank and torsion of the group completion.
inline HomologyGroup grothendieck_group(const CommMonoidPres& p) {
    const int g = static_cast<int>(p.gens.size());
    SparseMatrix m(g, static_cast<int>(p.rels.size()));
    for (std::size_t j = 0; j < p.rels.size(); ++j)
        for (int i = 0; i < g; ++i) m.add(i, static_cast<int>(j), p.rels[j].first[i] - p.rels[j].second[i]);
    m.finalize();
    SnfResult r = smith_invariants(m);
    return {g - r.rank, r.torsion};
}

// ---------------------------------------------------------------- units

struct RewriteStep {
    int rel = 0;
    bool forward = true;  // replace first by second
};

struct UnitWitness {
    enum class Kind { unit, non_unit, unknown } kind = Kind::unknown;
    ExpVec inverse;                  // v + inverse rewrites to 0 along path
    std::vector<RewriteStep> path;
    std::vector<int> grading;        // additive, constant on relations, positive on v
};

inline const char* to_string(UnitWitness::Kind k) {
    switch (k) {
        case UnitWitness::Kind::unit: return "unit";
        case UnitWitness::Kind::non_unit: return "non-unit";
        default: return "unknown";
    }
}

namespace detail {

inline bool apply_step(ExpVec& x, const CommMonoidPres& p, const RewriteStep& s) {
    const ExpVec& from = s.forward ? p.rels[s.rel].first : p.rels[s.rel].second;
    const ExpVec& to = s.forward ? p.rels[s.rel].second : p.rels[s.rel].first;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < from[i]) return false;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += to[i] - from[i];
    return true;
}

inline int total(const ExpVec& v) {
    int s = 0;
    for (int a : v) s += a;
    return s;
}

// rewriting path from start to 0 inside vectors of total <= cap
inline std::optional<std::vector<RewriteStep>> path_to_zero(const CommMonoidPres& p, const ExpVec& start, int cap,
                                                            std::size_t max_states) {
    const ExpVec zero(start.size(), 0);
    std::map<ExpVec, std::pair<ExpVec, RewriteStep>> parent;
    std::vector<ExpVec> queue{start};
    parent.emplace(start, std::pair{start, RewriteStep{-1, true}});
    for (std::size_t h = 0; h < queue.size(); ++h) {
        ExpVec cur = queue[h];
        if (cur == zero) {
            std::vector<RewriteStep> path;
            while (cur != start) {
                auto& [prev, step] = parent.at(cur);
                path.push_back(step);
                cur = prev;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (int r = 0; r < static_cast<int>(p.rels.size()); ++r)
            for (bool fw : {true, false}) {
                ExpVec next = cur;
                if (!apply_step(next, p, {r, fw}) || total(next) > cap || parent.count(next)) continue;
                if (parent.size() >= max_states) return std::nullopt;
                parent.emplace(next, std::pair{cur, RewriteStep{r, fw}});
                queue.push_back(std::move(next));
            }
    }
    return std::nullopt;
}

}  // namespace detail

/// Inverse search over words of length <= bound, then a search for an
/// N_0-grading with weights <= bound that is positive on v.
inline UnitWitness unit_witness(const CommMonoidPres& p, const ExpVec& v, int bound) {
    UnitWitness w;
    const int g = static_cast<int>(p.gens.size());
    int side = 0;
    for (auto& [l, r] : p.rels) side = std::max({side, detail::total(l), detail::total(r)});
    const std::size_t max_states = 200000;
    ExpVec word(g, 0);
    auto try_word = [&] {
        ExpVec x = v;
        for (int i = 0; i < g; ++i) x[i] += word[i];
        auto path = detail::path_to_zero(p, x, detail::total(x) + side, max_states);
        if (!path) return false;
        w.kind = UnitWitness::Kind::unit;
        w.inverse = word;
        w.path = std::move(*path);
        return true;
    };
    // multisets of exactly `left` generators, shortest inverses first
    std::function<bool(int, int)> words = [&](int from, int left) {
        if (left == 0) return try_word();
        for (int i = from; i < g; ++i) {
            ++word[i];
            if (words(i, left - 1)) return true;
            --word[i];
        }
        return false;
    };
    for (int len = 0; len <= bound; ++len)
        if (words(0, len)) return w;

    const int K = std::max(1, bound);
    double combos = 1;
    for (int i = 0; i < g; ++i) combos *= K + 1;
    if (combos > 2e6) return w;
    std::vector<int> phi(g, 0);
    auto eval = [&](const ExpVec& a) {
        long long s = 0;
        for (int i = 0; i < g; ++i) s += static_cast<long long>(phi[i]) * a[i];
        return s;
    };
    while (true) {
        bool ok = eval(v) > 0;
        for (auto& [l, r] : p.rels)
            if (ok && eval(l) != eval(r)) ok = false;
        if (ok) {
            w.kind = UnitWitness::Kind::non_unit;
            w.grading = phi;
            return w;
        }
        int i = 0;
        while (i < g && ++phi[i] > K) phi[i++] = 0;
        if (i == g) break;
    }
    return w;
}

inline bool replay_unit_witness(const CommMonoidPres& p, const ExpVec& v, const UnitWitness& w) {
    const std::size_t g = p.gens.size();
    if (w.kind == UnitWitness::Kind::unit) {
        if (w.inverse.size() != g) return false;
        ExpVec x = v;
        for (std::size_t i = 0; i < g; ++i) x[i] += w.inverse[i];
        for (auto& s : w.path)
            if (s.rel < 0 || s.rel >= static_cast<int>(p.rels.size()) || !detail::apply_step(x, p, s)) return false;
        return detail::total(x) == 0;
    }
    if (w.kind == UnitWitness::Kind::non_unit) {
        if (w.grading.size() != g) return false;
        auto eval = [&](const ExpVec& a) {
            long long s = 0;
            for (std::size_t i = 0; i < g; ++i) s += static_cast<long long>(w.grading[i]) * a[i];
            return s;
        };
        for (int c : w.grading)
            if (c < 0) return false;
        for (auto& [l, r] : p.rels)
            if (eval(l) != eval(r)) return false;
        return eval(v) > 0;
    }
    return false;
}

struct UnitVerdict {
    std::vector<UnitWitness> per_class;
    std::vector<int> unresolved() const {
        std::vector<int> u;
        for (std::size_t c = 0; c < per_class.size(); ++c)
            if (per_class[c].kind == UnitWitness::Kind::unknown) u.push_back(static_cast<int>(c));
        return u;
    }
    bool is_unit(int c) const { return per_class[c].kind == UnitWitness::Kind::unit; }
};

inline UnitVerdict unit_verdicts(const Pi0Monoid& m, int bound) {
    UnitVerdict v;
    for (const ExpVec& e : m.expr) v.per_class.push_back(unit_witness(m.pres, e, bound));
    return v;
}

/// Sub I-space on the components whose class is selected. The caller
/// guarantees closure under the action.
struct SubISpace {
    ISpaceT ispace;
    ISpaceMap inclusion;
    std::vector<std::vector<std::vector<int>>> new_id;  // level, dim, id
};

inline SubISpace sub_ispace(const ISpaceT& x, const std::vector<std::vector<int>>& class_of, const std::vector<char>& keep) {
    const int N = x.trunc();
    SubISpace s{ISpaceT(N), {}, {}};
    for (int n = 0; n <= N; ++n) {
        const SSet& lv = x.level(n);
        SubSet a(lv.top_dim() + 1);
        // faces of a simplex lie in the component of its vertices
        for (int k = 0; k <= lv.top_dim(); ++k) {
            a[k].resize(lv.count(k));
            for (int id = 0; id < lv.count(k); ++id) {
                SimplexRef r{k, 0, id};
                for (int d = k; d > 0; --d) r = lv.face(r, 0);
                a[k][id] = keep[class_of[n][r.base]];
            }
        }
        Restriction r = restrict_to(lv, a);
        s.ispace.level(n) = std::move(r.sset);
        s.inclusion.level.push_back(std::move(r.inclusion));
        s.new_id.push_back(std::move(r.new_id));
    }
    auto inject = [&](int n, const SimplexRef& y) {
        const int id = s.new_id[n][y.base_dim()][y.base];
        if (id < 0) throw InvalidInput("sub_ispace: selection is not closed");
        return SimplexRef{y.dim, y.deg, id};
    };
    const TruncatedI& t = x.cat();
    s.ispace.set_action([&](int f, const SimplexRef& y) {
        return inject(t.dst(f), x.action(f).apply(s.inclusion.level[t.src(f)].apply(y)));
    });
    return s;
}

/// A ~ A^x u A-hat with the checks of the decomposition.
struct UnitsDecomposition {
    Pi0Monoid pi0;
    UnitVerdict verdicts;
    CIMonoidT units;
    ISpaceT nonunits;
    MonoidMap units_inclusion;
    ISpaceMap nonunits_inclusion;
    bool partition = false;  // every simplex in exactly one part
    bool closed = false;     // both parts closed under the action, A^x under mu
    bool absorbing = false;  // A . A-hat and A-hat . A land in A-hat
    std::vector<std::string> diagnostics;
    bool ok() const { return partition && closed && absorbing && diagnostics.empty(); }
};

inline UnitsDecomposition units(const CIMonoidT& a, int bound) {
    UnitsDecomposition d;
    d.pi0 = pi0_monoid(a);
    d.verdicts = unit_verdicts(d.pi0, bound);
    if (auto u = d.verdicts.unresolved(); !u.empty()) {
        std::string s = "units: unresolved classes within bound " + std::to_string(bound) + ":";
        for (int c : u) s += " " + d.pi0.class_names[c];
        throw Refusal(s);
    }
    const int N = a.trunc();
    const ISpaceT& x = a.carrier;
    std::vector<char> keep(d.pi0.classes()), rest(d.pi0.classes());
    for (int c = 0; c < d.pi0.classes(); ++c) {
        keep[c] = d.verdicts.is_unit(c);
        rest[c] = !keep[c];
    }
    const TruncatedI& t = x.cat();
    d.closed = true;
    for (int f = 0; f < t.morphisms(); ++f)
        for (int v = 0; v < x.level(t.src(f)).count(0); ++v)
            if (keep[d.pi0.class_of[t.src(f)][v]] != keep[d.pi0.class_of[t.dst(f)][x.action(f).image[0][v].base]]) d.closed = false;
    d.absorbing = true;
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n)
            for (int u = 0; u < x.level(m).count(0); ++u)
                for (int v = 0; v < x.level(n).count(0); ++v) {
                    const int c = d.pi0.class_of[m + n][a.mul(m, n, {0, 0, u}, {0, 0, v}).base];
                    const bool ku = keep[d.pi0.class_of[m][u]], kv = keep[d.pi0.class_of[n][v]];
                    if ((!ku || !kv) && keep[c]) d.absorbing = false;
                    if (ku && kv && !keep[c]) d.closed = false;
                }
    if (!d.closed) {
        d.diagnostics.push_back("unit components are not closed");
        return d;
    }
    SubISpace su = sub_ispace(x, d.pi0.class_of, keep);
    SubISpace sn = sub_ispace(x, d.pi0.class_of, rest);
    d.partition = true;
    for (int n = 0; n <= N; ++n)
        for (int k = 0; k <= x.level(n).top_dim(); ++k)
            for (int id = 0; id < x.level(n).count(k); ++id)
                if ((su.new_id[n][k][id] >= 0) == (sn.new_id[n][k][id] >= 0)) d.partition = false;
    su.ispace.level(0).basepoint = su.new_id[0][0][a.unit];
    const int unit = *su.ispace.level(0).basepoint;
    auto inc = su.inclusion;
    auto ids = su.new_id;
    ISpaceT carrier = std::move(su.ispace);
    d.units = CIMonoidT::from_rule(std::move(carrier), unit, [&](int m, int n, const SimplexRef& p, const SimplexRef& q) {
        SimplexRef r = a.mul(m, n, inc.level[m].apply(p), inc.level[n].apply(q));
        return SimplexRef{r.dim, r.deg, ids[m + n][r.base_dim()][r.base]};
    });
    d.units.labels.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        for (int v = 0; v < x.level(n).count(0); ++v)
            if (ids[n][0][v] >= 0) d.units.labels[n].push_back(a.label(n, v));
    d.units_inclusion.level = std::move(inc);
    d.nonunits = std::move(sn.ispace);
    d.nonunits_inclusion = std::move(sn.inclusion);
    for (auto& s : validate_monoid(d.units)) d.diagnostics.push_back("units: " + s);
    for (auto& s : validate_monoid_map(d.units_inclusion, d.units, a)) d.diagnostics.push_back("inclusion: " + s);
    for (auto& s : validate_ispace(d.nonunits)) d.diagnostics.push_back("non-units: " + s);
    return d;
}

/// True iff every pi_0 class is a unit; nullopt if some class is unresolved.
inline std::optional<bool> is_grouplike(const CIMonoidT& a, int bound) {
    Pi0Monoid m = pi0_monoid(a);
    UnitVerdict v = unit_verdicts(m, bound);
    bool all = true;
    for (int c = 0; c < m.classes(); ++c) {
        if (v.per_class[c].kind == UnitWitness::Kind::non_unit) return false;
        all = all && v.is_unit(c);
    }
    if (!all) return std::nullopt;
    return true;
}

struct VirtualSurjectivity {
    bool surjective = false;
    HomologyGroup cokernel;
};

/// Cokernel of the induced map of Grothendieck groups.
inline VirtualSurjectivity is_virtually_surjective(const MonoidMap& f, const CIMonoidT& a, const CIMonoidT& b) {
    if (auto d = validate_monoid_map(f, a, b); !d.empty()) throw InvalidInput("is_virtually_surjective: " + d.front());
    Pi0Monoid pa = pi0_monoid(a), pb = pi0_monoid(b);
    const int g = static_cast<int>(pb.pres.gens.size());
    std::vector<ExpVec> cols;
    for (auto& [l, r] : pb.pres.rels) {
        ExpVec c(g);
        for (int i = 0; i < g; ++i) c[i] = l[i] - r[i];
        cols.push_back(std::move(c));
    }
    const int N = std::min(a.trunc(), b.trunc());
    for (int n = 0; n <= N; ++n)
        for (int v = 0; v < a.carrier.level(n).count(0); ++v)
            cols.push_back(pb.expr[pb.class_of[n][f.level.level[n].image[0][v].base]]);
    SparseMatrix m(g, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < g; ++i) m.add(i, static_cast<int>(j), cols[j][i]);
    m.finalize();
    SnfResult r = smith_invariants(m);
    VirtualSurjectivity out;
    out.cokernel = {g - r.rank, r.torsion};
    out.surjective = out.cokernel.is_zero();
    return out;
}

inline MonoidMap monoid_identity(const CIMonoidT& a) { return {identity_map(a.carrier)}; }

inline MonoidMap to_terminal(const CIMonoidT& a, const CIMonoidT& terminal) {
    MonoidMap f;
    for (int n = 0; n <= a.trunc(); ++n) {
        SMap s;
        const SSet& lv = a.carrier.level(n);
        s.image.resize(lv.top_dim() + 1);
        for (int k = 0; k <= lv.top_dim(); ++k) s.image[k].assign(lv.count(k), SSet::degenerate_vertex(terminal.unit, k));
        f.level.level.push_back(std::move(s));
    }
    return f;
}

// ---------------------------------------------------------------- free monoids

struct FreeCMonoid {
    CIMonoidT monoid;
    bool exact = false;  // X(0) empty: no word is cut off by the truncation
    std::vector<std::vector<int>> word_length;                                     // level, vertex
    std::vector<std::vector<std::pair<Box::Object, std::vector<SimplexRef>>>> word;  // level, vertex
};

/// The coproduct over k <= N of X^{box k} / Sigma_k, multiplied by
/// concatenating words.
inline FreeCMonoid free_cmonoid(const ISpaceT& x, int max_dim = -1) {
    const int N = x.trunc();
    std::vector<std::unique_ptr<Box>> boxes;
    std::vector<const ISpaceT*> fs;
    for (int k = 0; k <= N; ++k) {
        boxes.push_back(std::make_unique<Box>(fs, N, max_dim));
        fs.push_back(&x);
    }
    struct Owner {
        int k, id;
    };
    // cls[n][k][d][box id] -> orbit index; offset[n][k][d] -> first id of the block
    std::vector<std::vector<std::vector<std::vector<int>>>> cls(N + 1);
    std::vector<std::vector<std::vector<int>>> offset(N + 1);
    std::vector<std::vector<std::vector<Owner>>> owner(N + 1);
    ISpaceT out(N);
    for (int n = 0; n <= N; ++n) {
        int top = 0;
        bool fin = true;
        for (int k = 0; k <= N; ++k) {
            top = std::max(top, boxes[k]->ispace().level(n).top_dim());
            fin = fin && boxes[k]->ispace().level(n).finite();
        }
        cls[n].resize(N + 1);
        offset[n].assign(N + 1, std::vector<int>(top + 1, 0));
        for (int k = 0; k <= N; ++k) {
            const Box& b = *boxes[k];
            const SSet& lv = b.ispace().level(n);
            cls[n][k].resize(lv.top_dim() + 1);
            for (int d = 0; d <= lv.top_dim(); ++d) {
                UnionFind uf(lv.count(d));
                for (int id = 0; id < lv.count(d); ++id) {
                    auto [ob, t] = b.representative(n, d, id);
                    for (int i = 0; i + 1 < k; ++i) {
                        int before = 0, after = 0;
                        for (int j = 0; j < i; ++j) before += ob.sizes[j];
                        for (int j = i + 2; j < k; ++j) after += ob.sizes[j];
                        auto sizes = ob.sizes;
                        auto tp = t;
                        std::swap(sizes[i], sizes[i + 1]);
                        std::swap(tp[i], tp[i + 1]);
                        Injection p = concat(concat(identity_injection(before), shuffle(ob.sizes[i + 1], ob.sizes[i])),
                                             identity_injection(after));
                        SimplexRef r = b.lookup(sizes, compose(ob.alpha, p), tp, d);
                        if (r.degenerate()) throw InvalidInput("free_cmonoid: symmetry does not preserve nondegeneracy");
                        uf.unite(id, r.base);
                    }
                }
                cls[n][k][d] = uf.classes();
            }
        }
        SSet& lv = out.level(n);
        lv = SSet(top);
        lv.set_finite(fin);
        owner[n].resize(top + 1);
        for (int d = 0; d <= top; ++d)
            for (int k = 0; k <= N; ++k) {
                offset[n][k][d] = lv.count(d);
                const SSet& bl = boxes[k]->ispace().level(n);
                if (d > bl.top_dim()) continue;
                std::vector<int> rep;
                for (int id = 0; id < bl.count(d); ++id)
                    if (cls[n][k][d][id] == static_cast<int>(rep.size())) rep.push_back(id);
                for (int id : rep) {
                    std::vector<SimplexRef> faces;
                    for (int i = 0; d > 0 && i <= d; ++i) {
                        SimplexRef f = bl.face({d, 0, id}, i);
                        faces.push_back({f.dim, f.deg, offset[n][k][f.base_dim()] + cls[n][k][f.base_dim()][f.base]});
                    }
                    lv.add_simplex(d, faces);
                    owner[n][d].push_back({k, id});
                }
            }
    }
    auto to_free = [&](int k, int n, const SimplexRef& r) {
        return SimplexRef{r.dim, r.deg, offset[n][k][r.base_dim()] + cls[n][k][r.base_dim()][r.base]};
    };
    const TruncatedI& t = out.cat();
    out.set_action([&](int f, const SimplexRef& s) {
        const Owner o = owner[t.src(f)][s.dim][s.base];
        return to_free(o.k, t.dst(f), boxes[o.k]->ispace().action(f).image[s.dim][o.id]);
    });
    for (int n = 0; n <= N; ++n) out.level(n).basepoint = to_free(0, n, {0, 0, 0}).base;

    // the word of a full q-simplex as a tuple of full q-simplices
    auto decode = [&](int n, const SimplexRef& s) {
        const int d = s.base_dim();
        const Owner o = owner[n][d][s.base];
        auto rep = boxes[o.k]->representative(n, d, o.id);
        for (auto& c : rep.second) c = {s.dim, surj_compose(s.dim, s.deg, c.deg), c.base};
        return std::pair{o.k, rep};
    };
    FreeCMonoid fm;
    fm.exact = x.level(0).count(0) == 0;
    const int unit = *out.level(0).basepoint;
    fm.monoid = CIMonoidT::from_rule(std::move(out), unit, [&](int m, int n, const SimplexRef& a, const SimplexRef& b) {
        auto [k1, wa] = decode(m, a);
        auto [k2, wb] = decode(n, b);
        if (k1 + k2 > N)
            throw BudgetExceeded("free_cmonoid: product of words of length " + std::to_string(k1) + " and " +
                                 std::to_string(k2) + " exceeds the truncation " + std::to_string(N));
        auto sizes = wa.first.sizes;
        sizes.insert(sizes.end(), wb.first.sizes.begin(), wb.first.sizes.end());
        auto tup = wa.second;
        tup.insert(tup.end(), wb.second.begin(), wb.second.end());
        return to_free(k1 + k2, m + n, boxes[k1 + k2]->lookup(sizes, concat(wa.first.alpha, wb.first.alpha), tup, a.dim));
    });
    fm.word_length.resize(N + 1);
    fm.word.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        for (auto& o : owner[n][0]) {
            fm.word_length[n].push_back(o.k);
            fm.word[n].push_back(boxes[o.k]->representative(n, 0, o.id));
        }
    return fm;
}

}  // namespace itop

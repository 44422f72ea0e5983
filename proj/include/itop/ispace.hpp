// Truncated I-spaces: level simplicial sets with an action of every
// injection between levels <= N.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itop/icat.hpp"
#include "itop/sset.hpp"

namespace itop {

class ISpaceT {
public:
    ISpaceT() = default;
    explicit ISpaceT(int N) : N_(N), I_(TruncatedI::get(N)), level_(N + 1), action_(I_->morphisms()) {}

    int trunc() const { return N_; }
    const TruncatedI& cat() const { return *I_; }
    std::shared_ptr<const TruncatedI> cat_ptr() const { return I_; }

    const SSet& level(int n) const { return level_[n]; }
    SSet& level(int n) { return level_[n]; }
    const SMap& action(int morphism) const { return action_[morphism]; }
    SMap& action(int morphism) { return action_[morphism]; }
    const SMap& action(const Injection& f) const { return action_[I_->id_of(f)]; }

    SimplexRef apply(int morphism, const SimplexRef& s) const { return action_[morphism].apply(s); }

    /// Basepoints at every level (a based I-space).
    bool based() const {
        for (auto& l : level_)
            if (!l.basepoint) return false;
        return true;
    }

    /// Largest explicit dimension over all levels.
    int top_dim() const {
        int d = 0;
        for (auto& l : level_) d = std::max(d, l.top_dim());
        return d;
    }
    bool finite() const {
        for (auto& l : level_)
            if (!l.finite()) return false;
        return true;
    }

    /// Fill every action from a rule on nondegenerate simplices.
    void set_action(const std::function<SimplexRef(int morphism, const SimplexRef&)>& rule) {
        for (int f = 0; f < I_->morphisms(); ++f) {
            const SSet& s = level_[I_->src(f)];
            SMap& m = action_[f];
            m.image.assign(s.top_dim() + 1, {});
            for (int k = 0; k <= s.top_dim(); ++k)
                for (int id = 0; id < s.count(k); ++id) m.image[k].push_back(rule(f, {k, 0, id}));
        }
    }

private:
    int N_ = 0;
    std::shared_ptr<const TruncatedI> I_;
    std::vector<SSet> level_;
    std::vector<SMap> action_;
};

/// Structure, identity and composition checks; exhaustive over all
/// composable pairs of the truncation.
inline std::vector<std::string> validate_ispace(const ISpaceT& x) {
    std::vector<std::string> d;
    const TruncatedI& t = x.cat();
    for (int n = 0; n <= x.trunc(); ++n)
        for (auto& s : validate_sset(x.level(n))) d.push_back("level " + std::to_string(n) + ": " + s);
    if (!d.empty()) return d;
    for (int f = 0; f < t.morphisms(); ++f) {
        auto v = validate_smap(x.action(f), x.level(t.src(f)), x.level(t.dst(f)));
        for (auto& s : v) d.push_back("action of " + to_string(t.morphism(f)) + ": " + s);
    }
    if (!d.empty()) return d;
    for (int n = 0; n <= x.trunc(); ++n)
        if (x.action(t.identity(n)) != SMap::identity(x.level(n)))
            d.push_back("identity of " + std::to_string(n) + " does not act as the identity");
    for (int f = 0; f < t.morphisms(); ++f)
        for (int g : t.out(t.dst(f))) {
            if (x.action(t.comp(g, f)) != SMap::compose(x.action(g), x.action(f)))
                d.push_back("X(g o f) != X(g) X(f) for g = " + to_string(t.morphism(g)) + ", f = " +
                            to_string(t.morphism(f)));
        }
    if (x.based())
        for (int f = 0; f < t.morphisms(); ++f) {
            SimplexRef b = x.apply(f, {0, 0, *x.level(t.src(f)).basepoint});
            if (b.base != *x.level(t.dst(f)).basepoint)
                d.push_back("action of " + to_string(t.morphism(f)) + " does not preserve basepoints");
        }
    return d;
}

/// A family of level maps X(n) -> Y(n).
struct ISpaceMap {
    std::vector<SMap> level;
};

/// Naturality of a family of level maps, exhaustively.
inline std::vector<std::string> validate_ispace_map(const ISpaceMap& f, const ISpaceT& x, const ISpaceT& y) {
    std::vector<std::string> d;
    const int N = std::min(x.trunc(), y.trunc());
    for (int n = 0; n <= N; ++n)
        for (auto& s : validate_smap(f.level[n], x.level(n), y.level(n))) d.push_back("level " + std::to_string(n) + ": " + s);
    if (!d.empty()) return d;
    const TruncatedI& t = x.cat();
    for (int a = 0; a < t.morphisms(); ++a) {
        if (t.dst(a) > N) continue;
        const int m = t.src(a);
        const int ya = y.cat().id_of(t.morphism(a));
        if (SMap::compose(f.level[t.dst(a)], x.action(a)) != SMap::compose(y.action(ya), f.level[m]))
            d.push_back("naturality fails for " + to_string(t.morphism(a)));
    }
    return d;
}

inline ISpaceMap identity_map(const ISpaceT& x) {
    ISpaceMap f;
    for (int n = 0; n <= x.trunc(); ++n) f.level.push_back(SMap::identity(x.level(n)));
    return f;
}

/// First reason a family of level maps fails to be a levelwise isomorphism.
inline std::optional<std::string> level_iso_witness(const ISpaceMap& f, const ISpaceT& x, const ISpaceT& y) {
    auto d = validate_ispace_map(f, x, y);
    if (!d.empty()) return d.front();
    for (std::size_t n = 0; n < f.level.size(); ++n) {
        const std::string at = "level " + std::to_string(n) + ": ";
        const int top = std::max(x.level(n).top_dim(), y.level(n).top_dim());
        if (auto w = injectivity_witness(f.level[n], top)) return at + *w;
        for (int k = 0; k <= top; ++k) {
            const int hit = k < static_cast<int>(f.level[n].image.size()) ? static_cast<int>(f.level[n].image[k].size()) : 0;
            if (hit != y.level(n).count(k)) return at + "not surjective in dimension " + std::to_string(k);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- constructors

/// Constant I-space at K (all injections act as identities).
inline ISpaceT constant_ispace(const SSet& k, int N) {
    ISpaceT x(N);
    for (int n = 0; n <= N; ++n) x.level(n) = k;
    x.set_action([](int, const SimplexRef& s) { return s; });
    return x;
}

inline ISpaceT terminal_ispace(int N) {
    SSet p = point();
    p.basepoint = 0;
    return constant_ispace(p, N);
}

/// F_n = I(n, -): levelwise discrete, acting by post-composition.
inline ISpaceT free_ispace(int n, int N) {
    if (n > N) throw InvalidInput("free_ispace: n > N");
    ISpaceT x(N);
    const TruncatedI& t = x.cat();
    for (int k = 0; k <= N; ++k) x.level(k) = discrete(static_cast<int>(injection_count(n, k)));
    x.set_action([&t, n](int f, const SimplexRef& s) {
        const Injection& a = t.morphism(f);
        Injection b = enumerate_injections(n, a.m)[s.base];
        return SimplexRef{0, 0, injection_rank(compose(a, b))};
    });
    return x;
}

/// K^.(n) = K^n: an injection a: m -> n places coordinate i at a(i) and fills
/// the remaining coordinates with the basepoint.
inline ISpaceT power_ispace(const SSet& k, int N, int max_dim = -1) {
    if (!k.basepoint) throw InvalidInput("power_ispace: K must be based");
    ISpaceT x(N);
    std::vector<MultiProduct> powers;
    for (int n = 0; n <= N; ++n) {
        powers.emplace_back(std::vector<const SSet*>(n, &k), max_dim);
        x.level(n) = powers.back().sset();
    }
    const TruncatedI& t = x.cat();
    const int bp = *k.basepoint;
    x.set_action([&](int f, const SimplexRef& s) {
        const Injection& a = t.morphism(f);
        const auto& tup = powers[a.m].tuple_of(s.dim, s.base);
        std::vector<SimplexRef> out(a.n, SSet::degenerate_vertex(bp, s.dim));
        for (int i = 0; i < a.m; ++i) out[a.image[i]] = tup[i];
        return powers[a.n].lookup(out, s.dim);
    });
    return x;
}

/// Counterexample to flatness: X(0) empty, X(1) two points, a point above.
inline ISpaceT collapsing_example(int N) {
    ISpaceT x(N);
    x.level(0) = discrete(0);
    for (int n = 1; n <= N; ++n) x.level(n) = discrete(n == 1 ? 2 : 1);
    x.set_action([&x](int f, const SimplexRef& s) {
        const int d = x.cat().dst(f);
        return SimplexRef{0, 0, d == 1 ? s.base : 0};
    });
    return x;
}

/// Restriction to the objects 0..M.
inline ISpaceT restrict_trunc(const ISpaceT& x, int M) {
    if (M > x.trunc()) throw InvalidInput("restrict_trunc: bound exceeds truncation");
    ISpaceT y(M);
    for (int n = 0; n <= M; ++n) y.level(n) = x.level(n);
    for (int f = 0; f < y.cat().morphisms(); ++f) y.action(f) = x.action(y.cat().morphism(f));
    return y;
}

inline ISpaceMap restrict_trunc(const ISpaceMap& f, int M) {
    ISpaceMap g;
    g.level.assign(f.level.begin(), f.level.begin() + M + 1);
    return g;
}

// ---------------------------------------------------------------- R and j

/// The injection n -> 1 + n, i -> i + 1.
inline Injection shift_inclusion(int k, int n) { return concat(Injection{0, k, {}}, identity_injection(n)); }

/// R^k X (n) = X(k + n), with a acting as X(id_k | a); truncation N - k.
inline ISpaceT R_functor(const ISpaceT& x, int k = 1) {
    if (x.trunc() < k) throw InvalidInput("R_functor: truncation too small");
    ISpaceT r(x.trunc() - k);
    for (int n = 0; n <= r.trunc(); ++n) r.level(n) = x.level(k + n);
    for (int f = 0; f < r.cat().morphisms(); ++f)
        r.action(f) = x.action(concat(identity_injection(k), r.cat().morphism(f)));
    return r;
}

/// j_X: X -> R^k X induced by n -> k + n (on levels 0..N-k).
inline ISpaceMap j_map(const ISpaceT& x, int k = 1) {
    ISpaceMap j;
    for (int n = 0; n + k <= x.trunc(); ++n) j.level.push_back(x.action(shift_inclusion(k, n)));
    return j;
}

// ---------------------------------------------------------------- latching

struct Latching {
    SSet sset;
    SMap map;  // L_n(X) -> X(n)
};

/// L_n(X): colimit of X(m) over the injections m -> n with m < n.
inline Latching latching(const ISpaceT& x, int n) {
    const TruncatedI& t = x.cat();
    Latching out;
    const int top = n == 0 ? 0 : [&] {
        int d = 0;
        for (int m = 0; m < n; ++m) d = std::max(d, x.level(m).top_dim());
        return d;
    }();
    std::vector<int> objs;  // morphism ids beta: m -> n, m < n
    for (int b : t.into(n))
        if (t.src(b) < n) objs.push_back(b);
    std::vector<FullTable> tab;
    std::vector<int> obj_of_morph(t.morphisms(), -1);
    for (std::size_t o = 0; o < objs.size(); ++o) obj_of_morph[objs[o]] = static_cast<int>(o);
    for (int b : objs) tab.emplace_back(x.level(t.src(b)), top);
    std::vector<std::vector<int>> offset(top + 1, std::vector<int>(objs.size() + 1, 0));
    std::vector<std::vector<int>> cls(top + 1);
    std::vector<std::vector<std::pair<int, int>>> rep(top + 1);
    std::vector<int> ncls(top + 1, 0);
    for (int q = 0; q <= top; ++q) {
        for (std::size_t o = 0; o < objs.size(); ++o) offset[q][o + 1] = offset[q][o] + tab[o].size(q);
        UnionFind uf(offset[q].back());
        // (beta' o g, s) ~ (beta', X(g) s) for g: m -> m'
        for (std::size_t o2 = 0; o2 < objs.size(); ++o2) {
            const int b2 = objs[o2];
            for (int g : t.into(t.src(b2))) {
                if (t.is_identity(g)) continue;
                const int o1 = obj_of_morph[t.comp(b2, g)];
                for (int e = 0; e < tab[o1].size(q); ++e) {
                    SimplexRef img = x.apply(g, tab[o1].at(q)[e]);
                    uf.unite(offset[q][o1] + e, offset[q][o2] + tab[o2].index(img));
                }
            }
        }
        cls[q] = uf.classes(&ncls[q]);
        rep[q].assign(ncls[q], {-1, -1});
        for (std::size_t o = 0; o < objs.size(); ++o)
            for (int e = 0; e < tab[o].size(q); ++e) {
                auto& r = rep[q][cls[q][offset[q][o] + e]];
                if (r.first < 0) r = {static_cast<int>(o), e};
            }
    }
    auto class_of = [&](int q, int o, const SimplexRef& s) { return cls[q][offset[q][o] + tab[o].index(s)]; };
    FullSSetData data;
    data.max_dim = top;
    data.finite = true;
    data.counts = ncls;
    data.face = [&](int q, int c, int i) {
        auto [o, e] = rep[q][c];
        return class_of(q - 1, o, x.level(t.src(objs[o])).face(tab[o].at(q)[e], i));
    };
    data.degen = [&](int q, int c, int j) {
        auto [o, e] = rep[q][c];
        return class_of(q + 1, o, SSet::degen(tab[o].at(q)[e], j));
    };
    Normalized nz = normalize(data);
    out.sset = std::move(nz.sset);
    out.map.image.resize(top + 1);
    for (int q = 0; q <= top; ++q) {
        out.map.image[q].resize(out.sset.count(q));
        for (int c = 0; c < ncls[q]; ++c) {
            const SimplexRef& r = nz.ref[q][c];
            if (r.degenerate()) continue;
            auto [o, e] = rep[q][c];
            out.map.image[q][r.base] = x.apply(objs[o], tab[o].at(q)[e]);
        }
    }
    return out;
}

// ---------------------------------------------------------------- flatness

struct FlatCertificate {
    bool flat = true;
    enum class Kind { none, non_injective, intersection } kind = Kind::none;
    Injection morphism;      // non_injective
    int l = 0, m = 0, n = 0;  // intersection
    int dim = 0, simplex = 0; // offending simplex of the target
    std::string detail;
};

namespace detail {
inline std::set<std::pair<int, int>> image_set(const SMap& f) {
    std::set<std::pair<int, int>> s;
    for (std::size_t k = 0; k < f.image.size(); ++k)
        for (auto& r : f.image[k])
            if (!r.degenerate()) s.emplace(static_cast<int>(k), r.base);
    return s;
}
}  // namespace detail

/// Explicit flatness criterion: all structure maps injective and, for
/// l + m + n <= N, im X(l+m) and im X(m+n) meet in im X(m) inside X(l+m+n).
inline FlatCertificate is_flat(const ISpaceT& x) {
    FlatCertificate c;
    const TruncatedI& t = x.cat();
    for (int f = 0; f < t.morphisms(); ++f) {
        auto w = injectivity_witness(x.action(f), x.level(t.src(f)).top_dim());
        if (w) {
            c.flat = false;
            c.kind = FlatCertificate::Kind::non_injective;
            c.morphism = t.morphism(f);
            c.detail = "X" + to_string(c.morphism) + " is not injective: " + *w;
            return c;
        }
    }
    const int N = x.trunc();
    for (int l = 0; l <= N; ++l)
        for (int m = 0; l + m <= N; ++m)
            for (int n = 0; l + m + n <= N; ++n) {
                const int total = l + m + n;
                auto left = detail::image_set(x.action(standard_inclusion(l + m, total)));
                auto right = detail::image_set(x.action(shift_inclusion(l, m + n)));
                auto mid = detail::image_set(x.action(concat(Injection{0, l, {}}, standard_inclusion(m, m + n))));
                for (auto& s : left)
                    if (right.count(s) && !mid.count(s)) {
                        c.flat = false;
                        c.kind = FlatCertificate::Kind::intersection;
                        c.l = l;
                        c.m = m;
                        c.n = n;
                        c.dim = s.first;
                        c.simplex = s.second;
                        c.detail = "simplex " + std::to_string(s.first) + "/" + std::to_string(s.second) + " of X(" +
                                   std::to_string(total) + ") lies in both images but not in the image of X(" +
                                   std::to_string(m) + ")";
                        return c;
                    }
            }
    return c;
}

/// Re-runs the check cited by a not-flat certificate.
inline bool replay_flat_witness(const ISpaceT& x, const FlatCertificate& c) {
    using K = FlatCertificate::Kind;
    if (c.kind == K::non_injective) return injectivity_witness(x.action(c.morphism), kMaxSimplicialDim).has_value();
    if (c.kind == K::intersection) {
        const int total = c.l + c.m + c.n;
        auto s = std::make_pair(c.dim, c.simplex);
        auto left = detail::image_set(x.action(standard_inclusion(c.l + c.m, total)));
        auto right = detail::image_set(x.action(shift_inclusion(c.l, c.m + c.n)));
        auto mid = detail::image_set(x.action(concat(Injection{0, c.l, {}}, standard_inclusion(c.m, c.m + c.n))));
        return left.count(s) && right.count(s) && !mid.count(s);
    }
    return false;
}

}  // namespace itop

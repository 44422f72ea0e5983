// Gamma-spaces and bi-Gamma-spaces at finite bounds.
//
// A based function k+ -> l+ is stored as the images of 1..k in {0..l}, with
// 0 the basepoint.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "itop/bisset.hpp"
#include "itop/box.hpp"
#include "itop/cmon.hpp"
#include "itop/hocolim.hpp"

namespace itop {

using BasedFn = std::vector<int>;

inline std::vector<BasedFn> based_functions(int k, int l) {
    std::vector<BasedFn> out;
    BasedFn f(k, 0);
    while (true) {
        out.push_back(f);
        int i = k - 1;
        while (i >= 0 && ++f[i] > l) f[i--] = 0;
        if (i < 0) return out;
    }
}

inline BasedFn compose_fn(const BasedFn& g, const BasedFn& f) {
    BasedFn h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] == 0 ? 0 : g[f[i] - 1];
    return h;
}

inline BasedFn identity_fn(int k) {
    BasedFn f(k);
    for (int i = 0; i < k; ++i) f[i] = i + 1;
    return f;
}

/// (k + l)+ -> k+ (which = 0) or -> l+ (which = 1).
inline BasedFn projection_fn(int k, int l, int which) {
    BasedFn f(k + l, 0);
    for (int i = 0; i < k + l; ++i) {
        if (which == 0 && i < k) f[i] = i + 1;
        if (which == 1 && i >= k) f[i] = i - k + 1;
    }
    return f;
}

inline BasedFn fold_fn(int k) { return BasedFn(k, 1); }

/// (i, j) in k+ ^ l+ is (i - 1) l + j in (kl)+.
inline int smash_index(int i, int j, int l) { return (i == 0 || j == 0) ? 0 : (i - 1) * l + j; }

/// f ^ g: (k l)+ -> (k2 l2)+.
inline BasedFn smash_fn(const BasedFn& f, int k2, const BasedFn& g, int l2) {
    (void)k2;
    const int k = static_cast<int>(f.size()), l = static_cast<int>(g.size());
    BasedFn h(k * l);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= l; ++j) h[smash_index(i, j, l) - 1] = smash_index(f[i - 1], g[j - 1], l2);
    return h;
}

/// Values X(k+) for k <= K with actions computed on demand.
class GammaSpaceT {
public:
    using Action = std::function<SMap(int l, const BasedFn& f)>;

    GammaSpaceT() = default;
    GammaSpaceT(int K, std::vector<SSet> levels, Action act) : K_(K), levels_(std::move(levels)), act_(std::move(act)) {}

    int bound() const { return K_; }
    const SSet& level(int k) const { return levels_.at(k); }
    /// X(f) for f: k+ -> l+, k = f.size().
    const SMap& action(int l, const BasedFn& f) const {
        auto key = f;
        key.push_back(-1 - l);
        auto it = cache_->find(key);
        if (it == cache_->end()) it = cache_->emplace(key, act_(l, f)).first;
        return it->second;
    }

    /// Truncation of the monoid behind the values, or -1.
    int trunc = -1;
    /// Component weights per level, vertexwise; empty when untruncated.
    std::vector<std::vector<int>> weight;

private:
    int K_ = 0;
    std::vector<SSet> levels_;
    Action act_;
    std::shared_ptr<std::map<std::vector<int>, SMap>> cache_ = std::make_shared<std::map<std::vector<int>, SMap>>();
};

/// Functoriality, basepoints and X(0+) = point, exhaustive over all based
/// functions between levels <= min(K, limit).
inline std::vector<std::string> validate_gamma(const GammaSpaceT& x, int limit = 3) {
    std::vector<std::string> d;
    const int K = std::min(x.bound(), limit);
    const SSet& z = x.level(0);
    if (z.count(0) != 1) d.push_back("X(0+) is not a point");
    for (int k = 1; k <= z.top_dim(); ++k)
        if (z.count(k) != 0) d.push_back("X(0+) is not a point");
    auto fn = [](const BasedFn& f) {
        std::string s = "(";
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
        return s + ")";
    };
    for (int k = 0; k <= K; ++k) {
        if (!x.level(k).basepoint) d.push_back("X(" + std::to_string(k) + "+) is not based");
        if (x.action(k, identity_fn(k)).image != SMap::identity(x.level(k)).image) d.push_back("identity fails at " + std::to_string(k));
        for (int l = 0; l <= K; ++l)
            for (const auto& f : based_functions(k, l)) {
                const SMap& a = x.action(l, f);
                for (auto& s : validate_smap(a, x.level(k), x.level(l))) d.push_back("X" + fn(f) + ": " + s);
                if (x.level(k).basepoint && x.level(l).basepoint &&
                    a.image[0][*x.level(k).basepoint] != SimplexRef{0, 0, *x.level(l).basepoint})
                    d.push_back("X" + fn(f) + " is not based");
                for (int m = 0; m <= K; ++m)
                    for (const auto& g : based_functions(l, m))
                        if (x.action(m, compose_fn(g, f)).image != SMap::compose(x.action(m, g), a).image)
                            d.push_back("composition fails for " + fn(g) + " after " + fn(f));
            }
    }
    return d;
}

/// Gamma^k(l+) = based functions k+ -> l+, acting by post-composition.
inline GammaSpaceT representable(int k, int K) {
    if (k > K) throw InvalidInput("representable: k > K");
    std::vector<SSet> levels;
    std::vector<std::map<BasedFn, int>> index(K + 1);
    std::vector<std::vector<BasedFn>> elems(K + 1);
    for (int l = 0; l <= K; ++l) {
        elems[l] = based_functions(k, l);
        for (std::size_t i = 0; i < elems[l].size(); ++i) index[l][elems[l][i]] = static_cast<int>(i);
        SSet s = discrete(static_cast<int>(elems[l].size()));
        s.basepoint = 0;  // the constant function
        levels.push_back(std::move(s));
    }
    auto act = [index, elems](int m, const BasedFn& f) {
        const int l = static_cast<int>(f.size());
        SMap a;
        a.image.resize(1);
        for (const auto& e : elems[l]) a.image[0].push_back({0, 0, index[m].at(compose_fn(f, e))});
        return a;
    };
    return GammaSpaceT(K, std::move(levels), act);
}

// ---------------------------------------------------------------- A_Gamma

namespace detail {

struct MonoidGamma {
    CIMonoidT a;
    std::vector<std::unique_ptr<Box>> boxes;  // k != 1
    std::vector<BasedHocolim> hocolims;

    const ISpaceT& power(int k) const { return k == 1 ? a.carrier : boxes[k]->ispace(); }

    std::pair<Box::Object, std::vector<SimplexRef>> decode(int k, int n, const SimplexRef& s) const {
        if (k == 1) return {Box::Object{{n}, identity_injection(n)}, {s}};
        const int d = s.base_dim();
        auto rep = boxes[k]->representative(n, d, s.base);
        for (auto& c : rep.second) c = {s.dim, surj_compose(s.dim, s.deg, c.deg), c.base};
        return rep;
    }

    SimplexRef encode(int l, const std::vector<int>& sizes, const Injection& alpha, const std::vector<SimplexRef>& t, int q) const {
        if (l == 1) return a.carrier.action(alpha).apply(t[0]);
        return boxes[l]->lookup(sizes, alpha, t, q);
    }

    // A^{box k} -> A^{box l}: factors over j multiplied in order, factors over 0 dropped
    ISpaceMap power_map(int l, const BasedFn& f) const {
        const int k = static_cast<int>(f.size());
        const ISpaceT& src = power(k);
        ISpaceMap out;
        for (int n = 0; n <= a.trunc(); ++n) {
            const SSet& lv = src.level(n);
            SMap m;
            m.image.resize(lv.top_dim() + 1);
            for (int q = 0; q <= lv.top_dim(); ++q)
                for (int id = 0; id < lv.count(q); ++id) {
                    auto [ob, t] = decode(k, n, {q, 0, id});
                    std::vector<int> start(k, 0);
                    for (int i = 1; i < k; ++i) start[i] = start[i - 1] + ob.sizes[i - 1];
                    std::vector<int> sizes(l, 0), perm;
                    std::vector<SimplexRef> tup(l);
                    for (int j = 1; j <= l; ++j) {
                        SimplexRef acc = SSet::degenerate_vertex(a.unit, q);
                        for (int i = 0; i < k; ++i) {
                            if (f[i] != j) continue;
                            acc = a.mul(sizes[j - 1], ob.sizes[i], acc, t[i]);
                            sizes[j - 1] += ob.sizes[i];
                            for (int r = 0; r < ob.sizes[i]; ++r) perm.push_back(start[i] + r);
                        }
                        tup[j - 1] = acc;
                    }
                    int total = 0;
                    for (int s : ob.sizes) total += s;
                    Injection p{static_cast<int>(perm.size()), total, perm};
                    m.image[q].push_back(encode(l, sizes, compose(ob.alpha, p), tup, q));
                }
            out.level.push_back(std::move(m));
        }
        return out;
    }
};

// least level reached by each component of a based hocolim, vertexwise
inline std::vector<int> component_weights(const BasedHocolim& h) {
    const SSet& s = h.sset();
    Components c = pi0(s);
    std::vector<int> w(c.count(), 1 << 20);
    const SSet& u = h.unbased.sset();
    for (int v = 0; v < u.count(0); ++v) {
        const int n = h.unbased.cell(0, v).chain[0];
        const int comp = c.of_vertex[h.q.projection.image[0][v].base];
        w[comp] = std::min(w[comp], n);
    }
    std::vector<int> out(s.count(0));
    for (int v = 0; v < s.count(0); ++v) out[v] = w[c.of_vertex[v]];
    return out;
}

}  // namespace detail

/// A_Gamma(k+) = (A^{box k})_h*I with basepoints at the unit, for k <= K,
/// chain bound S.
inline GammaSpaceT gamma_of_monoid(const CIMonoidT& a, int K, int S) {
    auto g = std::make_shared<detail::MonoidGamma>();
    g->a = a;
    const int N = a.trunc();
    for (int n = 0; n <= N; ++n)
        g->a.carrier.level(n).basepoint = a.carrier.action(a.carrier.cat().inclusion(0, n)).image[0][a.unit].base;
    std::vector<const ISpaceT*> fs;
    for (int k = 0; k <= K; ++k) {
        g->boxes.push_back(k == 1 ? nullptr : std::make_unique<Box>(fs, N, S));
        fs.push_back(&g->a.carrier);
    }
    std::vector<SSet> levels;
    for (int k = 0; k <= K; ++k) {
        g->hocolims.push_back(hocolim_based(g->power(k), IndexCat::I, S));
        levels.push_back(g->hocolims.back().sset());
    }
    GammaSpaceT x(K, std::move(levels), [g](int l, const BasedFn& f) {
        ISpaceMap m = g->power_map(l, f);
        return induced_map(g->hocolims[f.size()], g->hocolims[l], &m);
    });
    x.trunc = N;
    for (auto& h : g->hocolims) x.weight.push_back(detail::component_weights(h));
    return x;
}

// ---------------------------------------------------------------- special

struct SpecialCheck {
    int k = 0, l = 0;
    MapVerdict verdict;
    int pi0_source = 0, pi0_target = 0;
};

struct SpecialVerdict {
    enum class Kind { special_evidence, refuted, inconclusive } kind = Kind::inconclusive;
    int deg = 0;
    std::vector<SpecialCheck> checks;
    std::optional<SpecialCheck> witness;
    std::optional<bool> very_special;
    CommMonoidPres pi0;               // pi_0 X(1+) under the fold map
    std::vector<ExpVec> pi0_expr;     // per component of X(1+)
    UnitVerdict units;
    std::string detail;
};

inline const char* to_string(SpecialVerdict::Kind k) {
    switch (k) {
        case SpecialVerdict::Kind::special_evidence: return "special-evidence";
        case SpecialVerdict::Kind::refuted: return "refuted";
        default: return "inconclusive";
    }
}

/// X((k + l)+) -> X(k+) x X(l+), the target cut down to components of total
/// weight <= N for truncated inputs.
inline SpecialCheck special_check(const GammaSpaceT& x, int k, int l, int D, int jobs = 1) {
    SpecialCheck c;
    c.k = k;
    c.l = l;
    const SSet& src = x.level(k + l);
    Product p(x.level(k), x.level(l));
    const SMap& p1 = x.action(k, projection_fn(k, l, 0));
    const SMap& p2 = x.action(l, projection_fn(k, l, 1));
    SMap f;
    f.image.resize(src.top_dim() + 1);
    for (int q = 0; q <= src.top_dim(); ++q)
        for (int id = 0; id < src.count(q); ++id) f.image[q].push_back(p.lookup(p1.image[q][id], p2.image[q][id]));
    SSet target = p.sset();
    if (x.trunc >= 0) {
        Components comps = pi0(p.sset());
        std::vector<char> keep(comps.count(), 0);
        for (int v = 0; v < p.sset().count(0); ++v) {
            auto [u, w] = p.pair_of(0, v);
            if (x.weight[k][u.base] + x.weight[l][w.base] <= x.trunc) keep[comps.of_vertex[v]] = 1;
        }
        Restriction r = restrict_to(p.sset(), component_selection(p.sset(), comps, keep));
        for (int q = 0; q <= src.top_dim(); ++q)
            for (auto& s : f.image[q]) {
                const int id = r.new_id[s.base_dim()][s.base];
                if (id < 0) throw InvalidInput("special_check: projections leave the weight filter");
                s.base = id;
            }
        target = std::move(r.sset);
    }
    c.verdict = map_verdict(f, src, target, D, jobs);
    c.pi0_source = pi0(src).count();
    c.pi0_target = pi0(target).count();
    return c;
}

namespace detail {

// pi_0 X(1+) with [p1 z] + [p2 z] = [fold z] for components z of X(2+)
inline std::pair<CommMonoidPres, std::vector<ExpVec>> gamma_pi0_monoid(const GammaSpaceT& x) {
    Components c1 = pi0(x.level(1)), c2 = pi0(x.level(2));
    const SMap& p1 = x.action(1, projection_fn(1, 1, 0));
    const SMap& p2 = x.action(1, projection_fn(1, 1, 1));
    const SMap& fold = x.action(1, fold_fn(2));
    const int C = c1.count();
    CommMonoidPres p;
    for (int i = 0; i < C; ++i) p.gens.push_back("c" + std::to_string(i));
    auto e = [C](int i) {
        ExpVec v(C, 0);
        v[i] = 1;
        return v;
    };
    p.rels.emplace_back(e(c1.of_vertex[*x.level(1).basepoint]), ExpVec(C, 0));
    for (int z : c2.rep) {
        ExpVec l = e(c1.of_vertex[p1.image[0][z].base]);
        l[c1.of_vertex[p2.image[0][z].base]] += 1;
        p.rels.emplace_back(std::move(l), e(c1.of_vertex[fold.image[0][z].base]));
    }
    std::vector<ExpVec> expr;
    for (int i = 0; i < C; ++i) expr.push_back(e(i));
    minimize(p, expr);
    return {p, expr};
}

}  // namespace detail

inline SpecialVerdict is_special(const GammaSpaceT& x, int D, int unit_bound = 4, int jobs = 1) {
    SpecialVerdict v;
    v.deg = D;
    try {
        for (int kl = 2; kl <= x.bound(); ++kl)
            for (int k = 1; k < kl; ++k) {
                v.checks.push_back(special_check(x, k, kl - k, D, jobs));
                if (!v.checks.back().verdict.iso && !v.witness) v.witness = v.checks.back();
            }
    } catch (const BudgetExceeded& e) {
        v.detail = e.what();
        return v;
    }
    if (v.witness) {
        v.kind = SpecialVerdict::Kind::refuted;
        const auto& w = *v.witness;
        const int d = *w.verdict.failure;
        v.detail = "X(" + std::to_string(w.k + w.l) + "+) -> X(" + std::to_string(w.k) + "+) x X(" + std::to_string(w.l) +
                   "+) is not an isomorphism in degree " + std::to_string(d) + ": " + to_string(w.verdict.source[d]) +
                   " vs " + to_string(w.verdict.target[d]);
    } else {
        v.kind = SpecialVerdict::Kind::special_evidence;
        v.detail = "all projection maps are isomorphisms in degrees <= " + std::to_string(D);
    }
    if (x.bound() >= 2) {
        auto [p, expr] = detail::gamma_pi0_monoid(x);
        v.pi0 = p;
        v.pi0_expr = expr;
        for (const auto& e : expr) v.units.per_class.push_back(unit_witness(p, e, unit_bound));
        bool all = true, none = false;
        for (auto& w : v.units.per_class) {
            all = all && w.kind == UnitWitness::Kind::unit;
            none = none || w.kind == UnitWitness::Kind::non_unit;
        }
        if (none)
            v.very_special = false;
        else if (all)
            v.very_special = true;
    }
    return v;
}

inline bool replay_special_witness(const GammaSpaceT& x, const SpecialVerdict& v) {
    if (!v.witness) return false;
    auto c = special_check(x, v.witness->k, v.witness->l, v.deg);
    return !c.verdict.iso && c.verdict.failure == v.witness->verdict.failure && c.pi0_source == v.witness->pi0_source &&
           c.pi0_target == v.witness->pi0_target;
}

// ---------------------------------------------------------------- prolongation

/// X(K): degreewise X(K_q) on the finite based sets of full simplices of K,
/// then the diagonal, through dimension S.
inline SSet prolong(const GammaSpaceT& x, const SSet& kbase, int S) {
    if (!kbase.basepoint) throw InvalidInput("prolong: the argument is not based");
    FullTable tk(kbase, S + 1);
    const SimplexRef base{0, 0, *kbase.basepoint};
    // numbering of K_q: basepoint 0, other full simplices 1.. in table order
    std::vector<std::vector<int>> num(S + 1);
    std::vector<int> size(S + 1, 0);
    for (int q = 0; q <= S; ++q) {
        const SimplexRef bq = SSet::degenerate_vertex(base.base, q);
        for (const auto& s : tk.at(q)) num[q].push_back(s == bq ? 0 : ++size[q]);
        if (size[q] > x.bound())
            throw BudgetExceeded("prolong: " + std::to_string(size[q]) + " non-basepoint " + std::to_string(q) +
                                 "-simplices exceed the bound " + std::to_string(x.bound()));
    }
    auto fn_of = [&](int q, int r, const std::function<SimplexRef(const SimplexRef&)>& op) {
        BasedFn f(size[q]);
        for (int e = 0; e < tk.size(q); ++e)
            if (num[q][e]) f[num[q][e] - 1] = num[r][tk.index(op(tk.at(q)[e]))];
        return f;
    };
    std::vector<FullTable> lv;
    for (int p = 0; p <= S; ++p) lv.emplace_back(x.level(size[p]), S);
    BiSSet b(S);
    for (int p = 0; p <= S; ++p) {
        std::vector<BasedFn> faces, degens;
        for (int i = 0; p > 0 && i <= p; ++i) faces.push_back(fn_of(p, p - 1, [&](const SimplexRef& s) { return kbase.face(s, i); }));
        for (int j = 0; p < S && j <= p; ++j) degens.push_back(fn_of(p, p + 1, [&](const SimplexRef& s) { return SSet::degen(s, j); }));
        const SSet& xs = x.level(size[p]);
        for (int q = 0; q <= S; ++q) {
            b.counts[p][q] = lv[p].size(q);
            for (const auto& s : lv[p].at(q)) {
                for (int i = 0; p > 0 && i <= p; ++i) b.face_h[p][q].push_back(lv[p - 1].index(x.action(size[p - 1], faces[i]).apply(s)));
                for (int i = 0; q > 0 && i <= q; ++i) b.face_v[p][q].push_back(lv[p].index(xs.face(s, i)));
                for (int j = 0; p < S && j <= p; ++j) b.degen_h[p][q].push_back(lv[p + 1].index(x.action(size[p + 1], degens[j]).apply(s)));
                for (int j = 0; q < S && j <= q; ++j) b.degen_v[p][q].push_back(lv[p].index(SSet::degen(s, j)));
            }
        }
    }
    Normalized nz = diag_full(b);
    nz.sset.basepoint = nz.ref[0][lv[0].index({0, 0, *x.level(size[0]).basepoint})].base;
    return nz.sset;
}

// ---------------------------------------------------------------- bi-Gamma

/// X(k+, l+) = A_Gamma((k l)+) with actions through the smash product.
class BiGammaT {
public:
    BiGammaT(GammaSpaceT g, int K) : g_(std::move(g)), K_(K) {
        if (g_.bound() < K * K) throw InvalidInput("bi-gamma: underlying bound below K^2");
    }
    int bound() const { return K_; }
    const GammaSpaceT& gamma() const { return g_; }
    const SSet& level(int k, int l) const { return g_.level(k * l); }
    const SMap& first(const BasedFn& f, int k2, int l) const { return g_.action(k2 * l, smash_fn(f, k2, identity_fn(l), l)); }
    const SMap& second(int k, const BasedFn& g, int l2) const { return g_.action(k * l2, smash_fn(identity_fn(k), k, g, l2)); }
    int weight(int k, int l, int v) const { return g_.trunc < 0 ? 0 : g_.weight[k * l][v]; }
    int trunc() const { return g_.trunc; }

private:
    GammaSpaceT g_;
    int K_;
};

inline BiGammaT bi_gamma_from(const CIMonoidT& a, int K, int S) { return BiGammaT(gamma_of_monoid(a, K * K, S), K); }

/// Boundary values are points and the two actions commute, on all based
/// functions between sizes <= K.
inline std::vector<std::string> validate_bigamma(const BiGammaT& x) {
    std::vector<std::string> d;
    const int K = x.bound();
    for (int k = 0; k <= K; ++k)
        if (x.level(k, 0).count(0) != 1 || x.level(0, k).count(0) != 1) d.push_back("boundary value is not a point");
    for (int k = 0; k <= K; ++k)
        for (int k2 = 0; k2 <= K; ++k2)
            for (const auto& f : based_functions(k, k2))
                for (int l = 0; l <= K; ++l)
                    for (int l2 = 0; l2 <= K; ++l2)
                        for (const auto& g : based_functions(l, l2)) {
                            SMap a = SMap::compose(x.second(k2, g, l2), x.first(f, k2, l));
                            SMap b = SMap::compose(x.first(f, k2, l2), x.second(k, g, l2));
                            if (a.image != b.image) d.push_back("the two actions do not commute");
                        }
    return d;
}

struct EckmannHilton {
    bool coincide = false;
    int pairs = 0;  // class pairs on which both products are defined
    std::vector<std::vector<int>> first, second;  // class products, -1 if undefined
};

namespace detail {

// x . y = [fold z] for the unique z over (x, y); the domain of the fold is
// X(2+, 1+) (var 0) or X(1+, 2+) (var 1)
inline std::vector<std::vector<int>> bigamma_product(const BiGammaT& x, int var) {
    const SSet& one = x.level(1, 1);
    const SSet& two = var == 0 ? x.level(2, 1) : x.level(1, 2);
    Components c1 = pi0(one), c2 = pi0(two);
    auto act = [&](const BasedFn& f) -> const SMap& { return var == 0 ? x.first(f, 1, 1) : x.second(1, f, 1); };
    const SMap& p1 = act(projection_fn(1, 1, 0));
    const SMap& p2 = act(projection_fn(1, 1, 1));
    const SMap& fold = act(fold_fn(2));
    const int C = c1.count();
    std::vector<std::vector<int>> prod(C, std::vector<int>(C, -1));
    std::vector<int> w(C, 0);
    for (int v = 0; v < one.count(0); ++v) w[c1.of_vertex[v]] = x.weight(1, 1, v);
    for (int z : c2.rep) {
        const int a = c1.of_vertex[p1.image[0][z].base], b = c1.of_vertex[p2.image[0][z].base];
        const int r = c1.of_vertex[fold.image[0][z].base];
        if (prod[a][b] >= 0 && prod[a][b] != r)
            throw Refusal("eckmann_hilton_check: pi_0 of X(2+) over the pair (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not a single class");
        prod[a][b] = r;
    }
    for (int a = 0; a < C; ++a)
        for (int b = 0; b < C; ++b)
            if (prod[a][b] < 0 && (x.trunc() < 0 || w[a] + w[b] <= x.trunc()))
                throw Refusal("eckmann_hilton_check: the pair (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") is not hit by pi_0 of X(2+)");
    return prod;
}

}  // namespace detail

/// Both monoid structures on pi_0 X(1+, 1+), compared on all class pairs.
inline EckmannHilton eckmann_hilton_check(const BiGammaT& x) {
    if (x.bound() < 2) throw InvalidInput("eckmann_hilton_check: needs K >= 2");
    EckmannHilton e;
    e.first = detail::bigamma_product(x, 0);
    e.second = detail::bigamma_product(x, 1);
    e.coincide = true;
    for (std::size_t a = 0; a < e.first.size(); ++a)
        for (std::size_t b = 0; b < e.first.size(); ++b) {
            if (e.first[a][b] < 0 && e.second[a][b] < 0) continue;
            ++e.pairs;
            if (e.first[a][b] != e.second[a][b]) e.coincide = false;
        }
    return e;
}

}  // namespace itop

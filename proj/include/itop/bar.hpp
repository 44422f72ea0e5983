// Bar constructions of commutative I-space monoids and the comparison of
// B(A)_hI with B(A_hI) through B(BI, A_hI, BI).
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "itop/bisset.hpp"
#include "itop/cmon.hpp"
#include "itop/hocolim.hpp"

namespace itop {

/// A restricted to truncation M.
inline CIMonoidT restrict_monoid(const CIMonoidT& a, int M) {
    if (M > a.trunc()) throw InvalidInput("restrict_monoid: truncation above the input");
    CIMonoidT r;
    r.carrier = restrict_trunc(a.carrier, M);
    r.unit = a.unit;
    r.prod.resize(M + 1);
    r.mult.resize(M + 1);
    for (int m = 0; m <= M; ++m)
        for (int n = 0; m + n <= M; ++n) {
            r.prod[m].push_back(a.prod[m][n]);
            r.mult[m].push_back(a.mult[m][n]);
        }
    r.labels = a.labels;
    r.labels.resize(std::min<std::size_t>(r.labels.size(), M + 1));
    return r;
}

/// B(A): the levelwise diagonal of [k] -> A^{box k}, through bar degree S.
/// Bar degree k uses the k-fold box product; faces drop the outer factors or
/// multiply neighbours, degeneracies insert the unit.
class BarMonoid {
public:
    BarMonoid(const CIMonoidT& a, int S) : a_(&a), S_(S) {
        if (S < 0) throw InvalidInput("bar: negative degree bound");
        const int N = a.trunc();
        std::vector<const ISpaceT*> fs;
        for (int k = 0; k <= S; ++k) {
            boxes_.push_back(std::make_unique<Box>(fs, N, S));
            fs.push_back(&a.carrier);
        }
        tab_.resize(S + 1);
        for (int k = 0; k <= S; ++k)
            for (int n = 0; n <= N; ++n) tab_[k].emplace_back(boxes_[k]->ispace().level(n), S);
        ISpaceT x(N);
        nz_.resize(N + 1);
        nd_elem_.resize(N + 1);
        for (int n = 0; n <= N; ++n) {
            nz_[n] = diag_full(bisimplicial(n));
            x.level(n) = nz_[n].sset;
            x.level(n).basepoint = nz_[n].ref[0][0].base;
            nd_elem_[n].resize(S + 1);
            for (int q = 0; q <= S; ++q) {
                nd_elem_[n][q].assign(x.level(n).count(q), -1);
                for (int e = 0; e < static_cast<int>(nz_[n].ref[q].size()); ++e)
                    if (!nz_[n].ref[q][e].degenerate()) nd_elem_[n][q][nz_[n].ref[q][e].base] = e;
            }
        }
        const TruncatedI& t = x.cat();
        x.set_action([&](int f, const SimplexRef& s) {
            const int m = t.src(f), n = t.dst(f), q = s.dim;
            const SimplexRef& b = tab_[q][m].at(q)[nd_elem_[m][q][s.base]];
            return nz_[n].ref[q][tab_[q][n].index(boxes_[q]->ispace().action(f).apply(b))];
        });
        const int unit = *x.level(0).basepoint;
        monoid_ = CIMonoidT::from_rule(std::move(x), unit, [&](int m, int n, const SimplexRef& u, const SimplexRef& v) {
            return nz_[m + n].ref[u.dim][tab_[u.dim][m + n].index(box_product(m, n, element(m, u), element(n, v)))];
        });
    }

    const CIMonoidT& monoid() const { return monoid_; }
    const ISpaceT& ispace() const { return monoid_.carrier; }
    int degree_bound() const { return S_; }
    const Box& box(int k) const { return *boxes_[k]; }

    /// Bisimplicial set (bar degree, internal degree) at level n.
    BiSSet bisimplicial(int n) const {
        BiSSet b(S_);
        for (int p = 0; p <= S_; ++p)
            for (int q = 0; q <= S_; ++q) {
                const FullTable& tb = tab_[p][n];
                const SSet& lv = boxes_[p]->ispace().level(n);
                b.counts[p][q] = tb.size(q);
                for (const SimplexRef& s : tb.at(q)) {
                    for (int i = 0; p > 0 && i <= p; ++i) b.face_h[p][q].push_back(tab_[p - 1][n].index(hface(p, n, s, i)));
                    for (int i = 0; q > 0 && i <= q; ++i) b.face_v[p][q].push_back(tb.index(lv.face(s, i)));
                    for (int j = 0; p < S_ && j <= p; ++j) b.degen_h[p][q].push_back(tab_[p + 1][n].index(hdegen(p, n, s, j)));
                    for (int j = 0; q < S_ && j <= q; ++j) b.degen_v[p][q].push_back(tb.index(SSet::degen(s, j)));
                }
            }
        return b;
    }

    /// The bar-degree-q element behind a full q-simplex of B(A)(n), as a
    /// full q-simplex of the q-fold box product.
    SimplexRef element(int n, const SimplexRef& s) const {
        const int d = s.base_dim();
        const SimplexRef& b = tab_[d][n].at(d)[nd_elem_[n][d][s.base]];
        // pull the degeneracy of s back through its diagonal normal form
        SimplexRef full = b;
        for (int j : deg_word_ascending(s.deg)) full = hdegen(full.dim, n, SSet::degen(full, j), j);
        return full;
    }

    /// Full q-simplex of B(A)(n) for an element of bar degree q.
    SimplexRef diag_ref(int n, const SimplexRef& b) const { return nz_[n].ref[b.dim][tab_[b.dim][n].index(b)]; }

    /// Representative (object, tuple of full q-simplices) of a full
    /// q-simplex of the p-fold box product at level n.
    std::pair<Box::Object, std::vector<SimplexRef>> decode(int p, int n, const SimplexRef& s) const {
        const int d = s.base_dim();
        auto rep = boxes_[p]->representative(n, d, s.base);
        for (auto& c : rep.second) c = {s.dim, surj_compose(s.dim, s.deg, c.deg), c.base};
        return rep;
    }

private:
    static std::vector<int> deg_word_ascending(DegMask m) {
        std::vector<int> w;
        for (int j = 0; j < 32; ++j)
            if ((m >> j) & 1u) w.push_back(j);
        return w;
    }

    SimplexRef hface(int p, int n, const SimplexRef& s, int i) const {
        auto [ob, t] = decode(p, n, s);
        auto sizes = ob.sizes;
        Injection alpha = ob.alpha;
        if (i == 0 || i == p) {
            const int k = i == 0 ? 0 : p - 1;
            int rest = 0;
            for (int j = 0; j < p; ++j)
                if (j != k) rest += sizes[j];
            Injection drop = i == 0 ? concat(Injection{0, sizes[0], {}}, identity_injection(rest))
                                    : concat(identity_injection(rest), Injection{0, sizes[k], {}});
            alpha = compose(alpha, drop);
            sizes.erase(sizes.begin() + k);
            t.erase(t.begin() + k);
        } else {
            t[i - 1] = a_->mul(sizes[i - 1], sizes[i], t[i - 1], t[i]);
            sizes[i - 1] += sizes[i];
            sizes.erase(sizes.begin() + i);
            t.erase(t.begin() + i);
        }
        return boxes_[p - 1]->lookup(sizes, alpha, t, s.dim);
    }

    SimplexRef hdegen(int p, int n, const SimplexRef& s, int j) const {
        auto [ob, t] = decode(p, n, s);
        auto sizes = ob.sizes;
        sizes.insert(sizes.begin() + j, 0);
        t.insert(t.begin() + j, SSet::degenerate_vertex(a_->unit, s.dim));
        return boxes_[p + 1]->lookup(sizes, ob.alpha, t, s.dim);
    }

    // A^{box q}(m) x A^{box q}(n) -> A^{box q}(m + n), factorwise multiplication
    SimplexRef box_product(int m, int n, const SimplexRef& u, const SimplexRef& v) const {
        const int q = u.dim;
        auto [ou, tu] = decode(q, m, u);
        auto [ov, tv] = decode(q, n, v);
        int su = 0, sv = 0;
        for (int i = 0; i < q; ++i) {
            su += ou.sizes[i];
            sv += ov.sizes[i];
        }
        // block i of the result is block i of u followed by block i of v
        std::vector<int> perm, sizes;
        std::vector<SimplexRef> t;
        int pu = 0, pv = su;
        for (int i = 0; i < q; ++i) {
            for (int r = 0; r < ou.sizes[i]; ++r) perm.push_back(pu++);
            for (int r = 0; r < ov.sizes[i]; ++r) perm.push_back(pv++);
            sizes.push_back(ou.sizes[i] + ov.sizes[i]);
            t.push_back(a_->mul(ou.sizes[i], ov.sizes[i], tu[i], tv[i]));
        }
        Injection p{su + sv, su + sv, perm};
        return boxes_[q]->lookup(sizes, compose(concat(ou.alpha, ov.alpha), p), t, q);
    }

    const CIMonoidT* a_;
    int S_;
    std::vector<std::unique_ptr<Box>> boxes_;
    std::vector<std::vector<FullTable>> tab_;  // [bar degree][level]
    std::vector<Normalized> nz_;
    std::vector<std::vector<std::vector<int>>> nd_elem_;  // level, dim, nondegenerate id -> diagonal element
    CIMonoidT monoid_;
};

// ---------------------------------------------------------------- A_hI as a partial monoid

/// Full simplices of hocolim_I A with the product induced by concatenation
/// in I. The product of simplices whose chain targets sum beyond N is
/// undefined; the bar constructions below filter by that weight.
class ChainMonoid {
public:
    ChainMonoid(const CIMonoidT& a, int S) : a_(&a), h_(a.carrier, IndexCat::I, S), tab_(h_.sset(), S) {
        weight_.resize(S + 1);
        for (int q = 0; q <= S; ++q)
            for (const auto& s : tab_.at(q)) weight_[q].push_back(unfold(s).chain[0]);
    }

    const Hocolim& hocolim() const { return h_; }
    const SSet& sset() const { return h_.sset(); }
    const FullTable& table() const { return tab_; }
    const CIMonoidT& monoid() const { return *a_; }
    int weight(int q, int e) const { return weight_[q][e]; }

    /// The chain of length q and the q-simplex of a full q-simplex.
    Hocolim::Cell unfold(const SimplexRef& s) const {
        const int d = s.base_dim();
        const Hocolim::Cell& c = h_.cell(d, s.base);
        const TruncatedI& t = h_.diagram().cat();
        auto object = [&](int j) { return j == 0 ? c.chain[0] : t.src(c.chain[j]); };
        Hocolim::Cell out;
        out.chain.push_back(c.chain[0]);
        for (int i = 1; i <= s.dim; ++i) {
            const int si = surj_value(s.deg, i);
            out.chain.push_back(((s.deg >> (i - 1)) & 1u) ? t.identity(object(si)) : c.chain[si]);
        }
        out.x = {s.dim, surj_compose(s.dim, s.deg, c.x.deg), c.x.base};
        return out;
    }

    static std::vector<int> concat_chains(const TruncatedI& t, const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c{a[0] + b[0]};
        for (std::size_t j = 1; j < a.size(); ++j) c.push_back(t.id_of(concat(t.morphism(a[j]), t.morphism(b[j]))));
        return c;
    }

    SimplexRef mul(const SimplexRef& u, const SimplexRef& v) const {
        auto cu = unfold(u), cv = unfold(v);
        if (cu.chain[0] + cv.chain[0] > a_->trunc()) throw BudgetExceeded("chain product beyond the truncation");
        const TruncatedI& t = h_.diagram().cat();
        SimplexRef x = a_->mul(h_.source(cu.chain), h_.source(cv.chain), cu.x, cv.x);
        return h_.lookup(concat_chains(t, cu.chain, cv.chain), x);
    }

    /// u . v with v's simplex forgotten (v acting on a module built on the
    /// terminal monoid), or the other way round.
    SimplexRef act(const SimplexRef& u, const ChainMonoid& other, const SimplexRef& v, bool other_first) const {
        auto cu = unfold(u), cv = other.unfold(v);
        const TruncatedI& t = h_.diagram().cat();
        auto chain = other_first ? concat_chains(t, cv.chain, cu.chain) : concat_chains(t, cu.chain, cv.chain);
        return h_.lookup(chain, SSet::degenerate_vertex(a_->unit, u.dim));
    }

    SimplexRef unit(int q) const {
        std::vector<int> chain{0};
        for (int i = 0; i < q; ++i) chain.push_back(h_.diagram().cat().identity(0));
        return h_.lookup(chain, SSet::degenerate_vertex(a_->unit, q));
    }

private:
    const CIMonoidT* a_;
    Hocolim h_;
    FullTable tab_;
    std::vector<std::vector<int>> weight_;
};

/// B(M, H, N) for H = A_hI with M = N = BI (two-sided) or M = N = point,
/// as the diagonal, filtered by total chain weight <= N.
class ChainBar {
public:
    ChainBar(const ChainMonoid& h, const ChainMonoid* bi, int S) : h_(&h), bi_(bi), S_(S) {
        const int N = h.monoid().trunc();
        elems_.resize(S + 1);
        index_.resize(S + 1);
        for (int q = 0; q <= S; ++q) {
            const int comps = q + (bi ? 2 : 0);
            std::vector<int> cur;
            auto rec = [&](auto&& self, int i, int w) -> void {
                if (i == comps) {
                    index_[q].emplace(cur, static_cast<int>(elems_[q].size()));
                    elems_[q].push_back(cur);
                    return;
                }
                const ChainMonoid& c = component(i, comps);
                for (int e = 0; e < c.table().size(q); ++e) {
                    const int we = c.weight(q, e);
                    if (w + we > N) continue;
                    cur.push_back(e);
                    self(self, i + 1, w + we);
                    cur.pop_back();
                }
            };
            rec(rec, 0, 0);
        }
        FullSSetData data;
        data.max_dim = S;
        data.finite = false;
        for (int q = 0; q <= S; ++q) data.counts.push_back(static_cast<int>(elems_[q].size()));
        data.face = [this](int q, int e, int i) { return face(q, e, i); };
        data.degen = [this](int q, int e, int j) { return degen(q, e, j); };
        nz_ = normalize(data);
    }

    const SSet& sset() const { return nz_.sset; }
    bool two_sided() const { return bi_ != nullptr; }
    const ChainMonoid* module() const { return bi_; }
    /// Components of a diagonal element as full simplices.
    std::vector<SimplexRef> components(int q, int e) const {
        std::vector<SimplexRef> out;
        const int comps = static_cast<int>(elems_[q][e].size());
        for (int i = 0; i < comps; ++i) out.push_back(component(i, comps).table().at(q)[elems_[q][e][i]]);
        return out;
    }
    int element_of(int q, const std::vector<SimplexRef>& c) const {
        std::vector<int> key;
        const int comps = static_cast<int>(c.size());
        for (int i = 0; i < comps; ++i) key.push_back(component(i, comps).table().index(c[i]));
        auto it = index_[q].find(key);
        if (it == index_[q].end()) throw BudgetExceeded("bar element beyond the weight filter");
        return it->second;
    }
    const SimplexRef& ref(int q, int e) const { return nz_.ref[q][e]; }
    int elements(int q) const { return static_cast<int>(elems_[q].size()); }

private:
    const ChainMonoid& component(int i, int comps) const {
        return (bi_ && (i == 0 || i == comps - 1)) ? *bi_ : *h_;
    }

    int face(int q, int e, int i) const {
        auto c = components(q, e);
        const int comps = static_cast<int>(c.size());
        for (int k = 0; k < comps; ++k) c[k] = component(k, comps).sset().face(c[k], i);
        if (bi_) {
            if (i == 0) {
                c[0] = bi_->act(c[0], *h_, c[1], false);
                c.erase(c.begin() + 1);
            } else if (i == q) {
                c[q + 1] = bi_->act(c[q + 1], *h_, c[q], true);
                c.erase(c.begin() + q);
            } else {
                c[i] = h_->mul(c[i], c[i + 1]);
                c.erase(c.begin() + i + 1);
            }
        } else {
            if (i == 0)
                c.erase(c.begin());
            else if (i == q)
                c.erase(c.begin() + q - 1);
            else {
                c[i - 1] = h_->mul(c[i - 1], c[i]);
                c.erase(c.begin() + i);
            }
        }
        return element_of(q - 1, c);
    }

    int degen(int q, int e, int j) const {
        auto c = components(q, e);
        for (auto& s : c) s = SSet::degen(s, j);
        c.insert(c.begin() + j + (bi_ ? 1 : 0), h_->unit(q + 1));
        return element_of(q + 1, c);
    }

    const ChainMonoid* h_;
    const ChainMonoid* bi_;
    int S_;
    std::vector<std::vector<std::vector<int>>> elems_;
    std::vector<std::map<std::vector<int>, int>> index_;
    Normalized nz_;
};

/// Collapsing the module components: B(BI, H, BI) -> B(H).
inline SMap collapse_modules(const ChainBar& two, const ChainBar& one) {
    SMap f;
    const SSet& s = two.sset();
    f.image.resize(s.top_dim() + 1);
    std::vector<std::vector<int>> elem(s.top_dim() + 1);
    for (int q = 0; q <= s.top_dim(); ++q) {
        elem[q].assign(s.count(q), -1);
        for (int e = 0; e < two.elements(q); ++e)
            if (!two.ref(q, e).degenerate()) elem[q][two.ref(q, e).base] = e;
        for (int id = 0; id < s.count(q); ++id) {
            auto c = two.components(q, elem[q][id]);
            c.erase(c.begin());
            c.pop_back();
            f.image[q].push_back(one.ref(q, one.element_of(q, c)));
        }
    }
    return f;
}

/// B(BI, H, BI) -> B(A)_hI: concatenate all chains and place the simplices
/// of A as the middle blocks of a box element.
inline SMap assemble_chains(const ChainBar& two, const ChainMonoid& h, const BarMonoid& bar, const Hocolim& target) {
    SMap f;
    const SSet& s = two.sset();
    const TruncatedI& t = h.hocolim().diagram().cat();
    f.image.resize(s.top_dim() + 1);
    for (int q = 0; q <= s.top_dim(); ++q) {
        std::vector<int> elem(s.count(q), -1);
        for (int e = 0; e < two.elements(q); ++e)
            if (!two.ref(q, e).degenerate()) elem[two.ref(q, e).base] = e;
        for (int id = 0; id < s.count(q); ++id) {
            auto comps = two.components(q, elem[id]);
            std::vector<Hocolim::Cell> cells;
            cells.push_back(two.module()->unfold(comps.front()));
            for (std::size_t i = 1; i + 1 < comps.size(); ++i) cells.push_back(h.unfold(comps[i]));
            cells.push_back(two.module()->unfold(comps.back()));
            std::vector<int> chain = cells[0].chain;
            for (std::size_t i = 1; i < cells.size(); ++i) chain = ChainMonoid::concat_chains(t, chain, cells[i].chain);
            std::vector<int> sizes;
            std::vector<SimplexRef> tuple;
            int mid = 0;
            for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
                sizes.push_back(h.hocolim().source(cells[i].chain));
                tuple.push_back(cells[i].x);
                mid += sizes.back();
            }
            const int left = h.hocolim().source(cells.front().chain);
            const int right = h.hocolim().source(cells.back().chain);
            Injection alpha = concat(concat(Injection{0, left, {}}, identity_injection(mid)), Injection{0, right, {}});
            const int n = left + mid + right;
            SimplexRef b = bar.box(q).lookup(sizes, alpha, tuple, q);
            f.image[q].push_back(target.lookup(chain, bar.diag_ref(n, b)));
        }
    }
    return f;
}

// ---------------------------------------------------------------- comparison

struct BarComparison {
    int trunc = 0, deg = 0;
    HomologyReport bar_hocolim;  // B(A)_hI
    HomologyReport two_sided;    // B(BI, A_hI, BI)
    HomologyReport hocolim_bar;  // B(A_hI)
    MapVerdict to_bar_hocolim, to_hocolim_bar;
    bool iso() const { return to_bar_hocolim.iso && to_hocolim_bar.iso; }
};

/// The three simplicial sets and both comparison maps at the truncation of A.
inline BarComparison bar_comparison_at(const CIMonoidT& a, int D, int jobs = 1) {
    const int S = D + 1;
    BarComparison out;
    out.trunc = a.trunc();
    out.deg = D;
    BarMonoid bar(a, S);
    Hocolim bh(bar.ispace(), IndexCat::I, S);
    CIMonoidT point = terminal_monoid(a.trunc());
    ChainMonoid h(a, S), bi(point, S);
    ChainBar two(h, &bi, S), one(h, nullptr, S);
    SMap left = assemble_chains(two, h, bar, bh);
    SMap right = collapse_modules(two, one);
    out.to_bar_hocolim = map_verdict(left, two.sset(), bh.sset(), D, jobs);
    out.to_hocolim_bar = map_verdict(right, two.sset(), one.sset(), D, jobs);
    out.two_sided = out.to_bar_hocolim.source;
    out.bar_hocolim = out.to_bar_hocolim.target;
    out.hocolim_bar = out.to_hocolim_bar.target;
    return out;
}

struct BarComparisonReport {
    std::vector<BarComparison> at;  // truncations N - 1 and N
    bool stable = false;            // homology agrees across the two truncations
    bool iso() const {
        for (auto& c : at)
            if (!c.iso()) return false;
        return !at.empty();
    }
};

/// Requires a flat carrier.
inline BarComparisonReport bar_comparison(const CIMonoidT& a, int D, int jobs = 1) {
    auto cert = is_flat(a.carrier);
    if (!cert.flat) throw Refusal("bar_comparison: the underlying I-space is not flat: " + cert.detail);
    BarComparisonReport r;
    if (a.trunc() >= 1) r.at.push_back(bar_comparison_at(restrict_monoid(a, a.trunc() - 1), D, jobs));
    r.at.push_back(bar_comparison_at(a, D, jobs));
    if (r.at.size() == 2) {
        const auto& x = r.at[0];
        const auto& y = r.at[1];
        r.stable = x.bar_hocolim.same_groups(y.bar_hocolim) && x.two_sided.same_groups(y.two_sided) &&
                   x.hocolim_bar.same_groups(y.hocolim_bar);
    }
    return r;
}

struct SpectrumLevel {
    int level = 0;
    SSet space;  // B^level(A)_h*I
    HomologyReport homology;
};

/// Based homotopy colimits of the iterated bar constructions.
inline std::vector<SpectrumLevel> iterated_bar_spectrum(const CIMonoidT& a, int n_max, int D, int jobs = 1) {
    if (n_max > 2) throw BudgetExceeded("iterated bar: at most two iterations");
    const int S = D + 1;
    std::vector<SpectrumLevel> out;
    std::vector<std::unique_ptr<BarMonoid>> bars;
    const CIMonoidT* cur = &a;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            bars.push_back(std::make_unique<BarMonoid>(*cur, S));
            cur = &bars.back()->monoid();
        }
        ISpaceT x = cur->carrier;
        for (int m = 0; m <= x.trunc(); ++m) x.level(m).basepoint = x.action(x.cat().inclusion(0, m)).image[0][cur->unit].base;
        BasedHocolim b = hocolim_based(x, IndexCat::I, S);
        SpectrumLevel l;
        l.level = n;
        l.space = b.sset();
        l.homology = homology(l.space, D, jobs);
        out.push_back(std::move(l));
    }
    return out;
}

}  // namespace itop

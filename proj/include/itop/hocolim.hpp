// Bousfield-Kan homotopy colimits of truncated I-spaces over I and over the
// subcategory N of standard inclusions.
//
// An s-simplex is a pair (n_0 <- n_1 <- ... <- n_s, x) with a_j: n_j -> n_{j-1}
// and x an s-simplex of X(n_s). The face d_0 drops a_1, inner faces compose
// a_i a_{i+1}, and d_s drops a_s and applies X(a_s). Degeneracies insert
// identities. Chains are stored as [n_0, a_1, ..., a_s] with global ids of
// the truncated category.
#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "itop/homology.hpp"
#include "itop/ispace.hpp"

namespace itop {

enum class IndexCat { I, N };

inline const char* to_string(IndexCat c) { return c == IndexCat::I ? "I" : "N"; }

/// Allowed morphisms of the index category, grouped by target.
struct IndexView {
    std::shared_ptr<const TruncatedI> cat;
    IndexCat kind = IndexCat::I;
    std::vector<std::vector<int>> into;

    IndexView(std::shared_ptr<const TruncatedI> t, IndexCat k) : cat(std::move(t)), kind(k) {
        if (!cat) return;
        const int N = cat->bound();
        into.resize(N + 1);
        for (int n = 0; n <= N; ++n) {
            if (k == IndexCat::I)
                into[n] = cat->into(n);
            else
                for (int m = 0; m <= n; ++m) into[n].push_back(cat->inclusion(m, n));
        }
    }
    int objects() const { return static_cast<int>(into.size()); }
    bool has_nontrivial_endomorphisms() const {
        for (int n = 0; n < objects(); ++n)
            for (int f : into[n])
                if (cat->src(f) == n && !cat->is_identity(f)) return true;
        return false;
    }
};

class Hocolim {
public:
    Hocolim() = default;
    /// Simplices up to dimension S (the chain-length bound).
    Hocolim(const ISpaceT& x, IndexCat over, int S) : x_(&x), view_(x.cat_ptr(), over), S_(S) {
        if (S < 0 || S > kMaxSimplicialDim) throw BudgetExceeded("hocolim: chain-length bound out of range");
        bool fin = x.finite() && !view_.has_nontrivial_endomorphisms() && S > view_.objects() - 1 + x.top_dim();
        const int top = S;
        tables_.reserve(x.trunc() + 1);
        for (int n = 0; n <= x.trunc(); ++n) tables_.emplace_back(x.level(n), top);
        sset_ = SSet(top);
        sset_.set_finite(fin);
        index_.resize(top + 1);
        cells_.resize(top + 1);
        std::vector<std::vector<int>> chains;  // all chains of length s
        for (int n = 0; n <= x.trunc(); ++n) chains.push_back({n});
        for (int s = 0; s <= top; ++s) {
            if (s > 0) {
                std::vector<std::vector<int>> next;
                for (const auto& c : chains)
                    for (int a : view_.into[source(c)]) {
                        auto d = c;
                        d.push_back(a);
                        next.push_back(std::move(d));
                    }
                chains = std::move(next);
            }
            for (const auto& c : chains) {
                DegMask idmask = 0;
                for (int j = 0; j < s; ++j)
                    if (view_.cat->is_identity(c[j + 1])) idmask |= 1u << j;
                for (const SimplexRef& xs : tables_[source(c)].at(s)) {
                    if (xs.deg & idmask) continue;
                    std::vector<SimplexRef> faces;
                    for (int i = 0; s > 0 && i <= s; ++i) faces.push_back(face_full(c, xs, i));
                    const int id = sset_.add_simplex(s, faces);
                    index_[s].emplace(key(c, xs), id);
                    cells_[s].push_back({c, xs});
                }
            }
        }
    }

    const SSet& sset() const { return sset_; }
    const ISpaceT& diagram() const { return *x_; }
    IndexCat over() const { return view_.kind; }
    int chain_bound() const { return S_; }

    struct Cell {
        std::vector<int> chain;  // [n_0, a_1, ..., a_s]
        SimplexRef x;            // in X(n_s)
    };
    const Cell& cell(int k, int id) const { return cells_[k][id]; }

    /// Normal form of an arbitrary pair (chain, x) with x of dimension s.
    SimplexRef lookup(const std::vector<int>& chain, const SimplexRef& x) const {
        const int s = static_cast<int>(chain.size()) - 1;
        if (s > S_) throw BudgetExceeded("hocolim: simplex beyond the chain-length bound");
        DegMask J = 0;
        std::vector<int> red{chain[0]};
        for (int j = 0; j < s; ++j) {
            if (view_.cat->is_identity(chain[j + 1]) && (x.deg >> j & 1u))
                J |= 1u << j;
            else
                red.push_back(chain[j + 1]);
        }
        SimplexRef xr{s - deg_count(J), surj_factor(s, x.deg, J), x.base};
        auto it = index_[xr.dim].find(key(red, xr));
        if (it == index_[xr.dim].end()) throw InvalidInput("hocolim lookup: chain outside the index category");
        return {s, J, it->second};
    }

    /// Simplices (chain, x) with x a degeneracy of the basepoint: the nerve
    /// of the index category embedded via basepoints.
    SubSet base_subspace() const {
        SubSet a(sset_.top_dim() + 1);
        for (int k = 0; k <= sset_.top_dim(); ++k) {
            a[k].resize(sset_.count(k));
            for (int id = 0; id < sset_.count(k); ++id) {
                const Cell& c = cells_[k][id];
                const auto& bp = x_->level(source(c.chain)).basepoint;
                if (!bp) throw InvalidInput("hocolim: diagram is not based");
                a[k][id] = c.x.base_dim() == 0 && c.x.base == *bp;
            }
        }
        return a;
    }

    /// The object n_s at which the diagram is evaluated.
    int source(const std::vector<int>& c) const { return c.size() == 1 ? c[0] : view_.cat->src(c.back()); }

private:
    SimplexRef face_full(const std::vector<int>& c, const SimplexRef& x, int i) const {
        const int s = static_cast<int>(c.size()) - 1;
        const SSet& xs = x_->level(source(c));
        std::vector<int> d;
        SimplexRef y = xs.face(x, i);
        if (i == 0) {
            d.push_back(view_.cat->src(c[1]));
            d.insert(d.end(), c.begin() + 2, c.end());
        } else if (i < s) {
            d.assign(c.begin(), c.begin() + i);
            d.push_back(view_.cat->comp(c[i], c[i + 1]));
            d.insert(d.end(), c.begin() + i + 2, c.end());
        } else {
            d.assign(c.begin(), c.end() - 1);
            y = x_->apply(c[s], y);
        }
        return lookup(d, y);
    }

    static std::vector<std::uint64_t> key(const std::vector<int>& c, const SimplexRef& x) {
        std::vector<std::uint64_t> k(c.begin(), c.end());
        k.push_back(simplex_key(x));
        return k;
    }

    const ISpaceT* x_ = nullptr;
    IndexView view_{nullptr, IndexCat::I};
    int S_ = 0;
    std::vector<FullTable> tables_;
    SSet sset_;
    std::vector<std::unordered_map<std::vector<std::uint64_t>, int, VecHash>> index_;
    std::vector<std::vector<Cell>> cells_;
};

/// The map of homotopy colimits induced by a natural transformation f
/// (identity if null) and the inclusion of index categories.
inline SMap induced_map(const Hocolim& src, const Hocolim& dst, const ISpaceMap* f = nullptr) {
    if (src.over() == IndexCat::I && dst.over() == IndexCat::N)
        throw InvalidInput("induced_map: no index functor from I to N");
    const SSet& s = src.sset();
    SMap m;
    m.image.resize(s.top_dim() + 1);
    for (int k = 0; k <= s.top_dim(); ++k)
        for (int id = 0; id < s.count(k); ++id) {
            const auto& c = src.cell(k, id);
            SimplexRef y = f ? f->level[src.source(c.chain)].apply(c.x) : c.x;
            m.image[k].push_back(dst.lookup(c.chain, y));
        }
    return m;
}

/// Quotient of the unbased homotopy colimit by the embedded nerve.
struct BasedHocolim {
    Hocolim unbased;
    QuotientResult q;
    const SSet& sset() const { return q.sset; }
};

inline BasedHocolim hocolim_based(const ISpaceT& x, IndexCat over, int S) {
    if (!x.based()) throw InvalidInput("hocolim_based: diagram is not based");
    BasedHocolim b{Hocolim(x, over, S), {}};
    b.q = quotient(b.unbased.sset(), b.unbased.base_subspace());
    return b;
}

/// A map of unbased colimits preserving the embedded nerves, passed to the
/// quotients.
inline SMap quotient_map(const SMap& f, const SSet& src, const QuotientResult& qs, const QuotientResult& qt) {
    SMap m;
    m.image.resize(qs.sset.top_dim() + 1);
    for (int k = 0; k <= qs.sset.top_dim(); ++k) m.image[k].assign(qs.sset.count(k), SimplexRef{});
    m.image[0][*qs.sset.basepoint] = {0, 0, *qt.sset.basepoint};
    for (int k = 0; k <= src.top_dim(); ++k)
        for (int id = 0; id < src.count(k); ++id) {
            const SimplexRef& p = qs.projection.image[k][id];
            if (p.degenerate() || (k == 0 && p.base == *qs.sset.basepoint)) continue;
            m.image[k][p.base] = qt.projection.apply(f.apply({k, 0, id}));
        }
    return m;
}

inline SMap induced_map(const BasedHocolim& src, const BasedHocolim& dst, const ISpaceMap* f = nullptr) {
    return quotient_map(induced_map(src.unbased, dst.unbased, f), src.unbased.sset(), src.q, dst.q);
}

}  // namespace itop

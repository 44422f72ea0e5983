// Box products of truncated I-spaces, computed as explicit colimits over
// the comma categories of block sums n_1 + ... + n_r -> n.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itop/ispace.hpp"

namespace itop {

class Box {
public:
    struct Object {
        std::vector<int> sizes;
        Injection alpha;  // sizes[0] + ... + sizes[r-1] -> n
    };

    Box() = default;
    /// r-fold box product; the empty product is the unit I(0, -).
    Box(std::vector<const ISpaceT*> factors, int trunc = -1, int max_dim = -1) : factors_(std::move(factors)) {
        N_ = trunc;
        for (auto* f : factors_) N_ = N_ < 0 ? f->trunc() : std::min(N_, f->trunc());
        if (N_ < 0) throw InvalidInput("box: truncation required for the empty product");
        if (factors_.empty() && trunc >= 0) N_ = trunc;
        I_ = TruncatedI::get(N_);
        out_ = ISpaceT(N_);
        levels_.resize(N_ + 1);
        for (int n = 0; n <= N_; ++n) build_level(n, max_dim);
        for (int n = 0; n <= N_; ++n) out_.level(n) = levels_[n].nz.sset;
        out_.set_action([this](int f, const SimplexRef& s) {
            const Injection& b = I_->morphism(f);
            const Level& L = levels_[b.m];
            auto [o, e] = L.rep[s.dim][L.class_of_nd[s.dim][s.base]];
            const Object& ob = L.objects[o];
            return lookup(ob.sizes, compose(b, ob.alpha), L.tuple(*this, s.dim, o, e), s.dim);
        });
        bool based = true;
        for (auto* f : factors_)
            if (!f->level(0).basepoint) based = false;
        if (based)
            for (int n = 0; n <= N_; ++n) {
                std::vector<SimplexRef> bp;
                for (auto* f : factors_) bp.push_back({0, 0, *f->level(0).basepoint});
                out_.level(n).basepoint = lookup(std::vector<int>(arity(), 0), Injection{0, n, {}}, bp, 0).base;
            }
    }

    const ISpaceT& ispace() const { return out_; }
    int arity() const { return static_cast<int>(factors_.size()); }
    int trunc() const { return N_; }
    const ISpaceT& factor(int i) const { return *factors_[i]; }

    /// The class of the element (sizes, alpha, t) at level alpha.n; t holds
    /// q-simplices of the factor levels X_i(sizes[i]).
    SimplexRef lookup(const std::vector<int>& sizes, const Injection& alpha, const std::vector<SimplexRef>& t,
                      int q) const {
        DegMask common = low_bits(q);
        for (const auto& s : t) common &= s.deg;
        if (arity() > 0 && common != 0) {
            std::vector<SimplexRef> red;
            for (const auto& s : t) red.push_back({q - deg_count(common), surj_factor(q, s.deg, common), s.base});
            SimplexRef r = lookup(sizes, alpha, red, q - deg_count(common));
            return {q, surj_compose(q, common, r.deg), r.base};
        }
        const Level& L = levels_[alpha.n];
        if (arity() == 0 && q > L.nz.sset.top_dim()) return SSet::degenerate_vertex(L.nz.ref[0][0].base, q);
        if (q > L.nz.sset.top_dim()) throw BudgetExceeded("box: dimension beyond the computed skeleton");
        auto key = sizes;
        key.push_back(injection_rank(alpha));
        auto it = L.object_id.find(key);
        if (it == L.object_id.end()) throw InvalidInput("box lookup: not an object of the comma category");
        const int o = it->second;
        std::size_t e = 0;
        for (int i = 0; i < arity(); ++i) {
            const FullTable& tab = tables_[i][sizes[i]];
            const int idx = tab.index(t[i]);
            if (idx < 0) throw InvalidInput("box lookup: simplex outside the factor");
            e = e * tab.size(q) + idx;
        }
        return L.nz.ref[q][L.cls[q][L.offset[q][o] + e]];
    }

    /// Canonical representative of a nondegenerate simplex of level n.
    std::pair<Object, std::vector<SimplexRef>> representative(int n, int k, int id) const {
        const Level& L = levels_[n];
        auto [o, e] = L.rep[k][L.class_of_nd[k][id]];
        return {L.objects[o], L.tuple(*this, k, o, e)};
    }

    /// Objects of the comma category at level n in their fixed order.
    const std::vector<Object>& objects(int n) const { return levels_[n].objects; }

private:
    struct Level {
        std::vector<Object> objects;
        std::map<std::vector<int>, int> object_id;  // sizes + rank(alpha)
        std::vector<std::vector<std::size_t>> offset;  // offset[q][o]
        std::vector<std::vector<int>> cls;             // cls[q][element]
        std::vector<std::vector<std::pair<int, std::size_t>>> rep;  // rep[q][class]
        std::vector<std::vector<int>> class_of_nd;     // class_of_nd[q][nondegenerate id]
        Normalized nz;

        std::vector<SimplexRef> tuple(const Box& b, int q, int o, std::size_t e) const {
            const int r = b.arity();
            std::vector<SimplexRef> t(r);
            for (int i = r - 1; i >= 0; --i) {
                const FullTable& tab = b.tables_[i][objects[o].sizes[i]];
                t[i] = tab.at(q)[e % tab.size(q)];
                e /= tab.size(q);
            }
            return t;
        }
    };

    void ensure_tables(int top) {
        const int r = arity();
        if (tables_.empty()) tables_.resize(r);
        for (int i = 0; i < r; ++i) {
            tables_[i].resize(N_ + 1);
            for (int m = 0; m <= N_; ++m)
                if (tables_[i][m].max_dim() < top) tables_[i][m] = FullTable(factors_[i]->level(m), top);
        }
    }

    void enumerate_objects(Level& L, int n) {
        const int r = arity();
        std::vector<int> sizes(r, 0);
        auto rec = [&](auto&& self, int i, int used) -> void {
            if (i == r) {
                for (auto& a : enumerate_injections(used, n)) {
                    auto key = sizes;
                    key.push_back(injection_rank(a));
                    L.object_id.emplace(key, static_cast<int>(L.objects.size()));
                    L.objects.push_back({sizes, a});
                }
                return;
            }
            for (int s = 0; used + s <= n; ++s) {
                sizes[i] = s;
                self(self, i + 1, used + s);
            }
        };
        rec(rec, 0, 0);
    }

    void build_level(int n, int max_dim) {
        Level& L = levels_[n];
        enumerate_objects(L, n);
        const int r = arity();
        bool fin = true;
        int hi = 0, lo = kMaxSimplicialDim;
        for (auto& ob : L.objects) {
            int sum = 0, mn = kMaxSimplicialDim;
            for (int i = 0; i < r; ++i) {
                const SSet& x = factors_[i]->level(ob.sizes[i]);
                fin = fin && x.finite();
                sum += x.top_dim();
                mn = std::min(mn, x.top_dim());
            }
            hi = std::max(hi, sum);
            lo = std::min(lo, r == 0 ? 0 : mn);
        }
        int top = fin ? hi : lo;
        if (max_dim >= 0 && max_dim < top) {
            top = max_dim;
            fin = false;
        }
        if (top > kMaxSimplicialDim) throw BudgetExceeded("box: dimension exceeds the configured bound");
        ensure_tables(top);
        const int no = static_cast<int>(L.objects.size());
        L.offset.assign(top + 1, std::vector<std::size_t>(no + 1, 0));
        L.cls.resize(top + 1);
        L.rep.resize(top + 1);
        std::vector<int> ncls(top + 1, 0);
        for (int q = 0; q <= top; ++q) {
            for (int o = 0; o < no; ++o) {
                std::size_t c = 1;
                for (int i = 0; i < r; ++i) c *= tables_[i][L.objects[o].sizes[i]].size(q);
                L.offset[q][o + 1] = L.offset[q][o] + c;
            }
            UnionFind uf(L.offset[q][no]);
            // (alpha' o (1 | b | 1), t) ~ (alpha', t with t_i replaced by X_i(b) t_i)
            for (int o2 = 0; o2 < no; ++o2) {
                const Object& tgt = L.objects[o2];
                for (int i = 0; i < r; ++i) {
                    int before = 0;
                    for (int j = 0; j < i; ++j) before += tgt.sizes[j];
                    int after = 0;
                    for (int j = i + 1; j < r; ++j) after += tgt.sizes[j];
                    for (int b : I_->into(tgt.sizes[i])) {
                        if (I_->is_identity(b)) continue;
                        const Injection& bi = I_->morphism(b);
                        auto sizes = tgt.sizes;
                        sizes[i] = bi.m;
                        Injection a = compose(tgt.alpha, concat(concat(identity_injection(before), bi), identity_injection(after)));
                        auto key = sizes;
                        key.push_back(injection_rank(a));
                        const int o1 = L.object_id.at(key);
                        const std::size_t cnt = L.offset[q][o1 + 1] - L.offset[q][o1];
                        for (std::size_t e = 0; e < cnt; ++e) {
                            auto t = L.tuple(*this, q, o1, e);
                            t[i] = factors_[i]->apply(b, t[i]);
                            uf.unite(L.offset[q][o1] + e, L.offset[q][o2] + flat_index(tgt.sizes, t, q));
                        }
                    }
                }
            }
            L.cls[q] = uf.classes(&ncls[q]);
            L.rep[q].assign(ncls[q], {-1, 0});
            for (int o = 0; o < no; ++o)
                for (std::size_t e = 0; e < L.offset[q][o + 1] - L.offset[q][o]; ++e) {
                    auto& rp = L.rep[q][L.cls[q][L.offset[q][o] + e]];
                    if (rp.first < 0) rp = {o, e};
                }
        }
        FullSSetData data;
        data.max_dim = top;
        data.finite = fin;
        data.counts = ncls;
        auto class_of = [&](int q, int o, const std::vector<SimplexRef>& t) {
            return L.cls[q][L.offset[q][o] + flat_index(L.objects[o].sizes, t, q)];
        };
        data.face = [&](int q, int c, int f) {
            auto [o, e] = L.rep[q][c];
            auto t = L.tuple(*this, q, o, e);
            for (int i = 0; i < r; ++i) t[i] = factors_[i]->level(L.objects[o].sizes[i]).face(t[i], f);
            return class_of(q - 1, o, t);
        };
        data.degen = [&](int q, int c, int j) {
            auto [o, e] = L.rep[q][c];
            auto t = L.tuple(*this, q, o, e);
            for (auto& s : t) s = SSet::degen(s, j);
            return class_of(q + 1, o, t);
        };
        L.nz = normalize(data);
        L.class_of_nd.resize(top + 1);
        for (int q = 0; q <= top; ++q) {
            L.class_of_nd[q].assign(L.nz.sset.count(q), -1);
            for (int c = 0; c < ncls[q]; ++c)
                if (!L.nz.ref[q][c].degenerate()) L.class_of_nd[q][L.nz.ref[q][c].base] = c;
        }
    }

    std::size_t flat_index(const std::vector<int>& sizes, const std::vector<SimplexRef>& t, int q) const {
        std::size_t e = 0;
        for (int i = 0; i < arity(); ++i) {
            const FullTable& tab = tables_[i][sizes[i]];
            e = e * tab.size(q) + tab.index(t[i]);
        }
        return e;
    }

    int N_ = 0;
    std::vector<const ISpaceT*> factors_;
    std::shared_ptr<const TruncatedI> I_;
    std::vector<std::vector<FullTable>> tables_;  // tables_[i][m]
    std::vector<Level> levels_;
    ISpaceT out_;
};

/// Binary convenience wrapper.
inline Box box(const ISpaceT& x, const ISpaceT& y, int max_dim = -1) { return Box({&x, &y}, -1, max_dim); }

/// f_1 [] ... [] f_r : box `src` -> box `dst`, factorwise maps.
inline ISpaceMap box_map(const Box& src, const Box& dst, const std::vector<const ISpaceMap*>& f) {
    ISpaceMap out;
    const int N = std::min(src.trunc(), dst.trunc());
    for (int n = 0; n <= N; ++n) {
        const SSet& l = src.ispace().level(n);
        SMap m;
        m.image.resize(l.top_dim() + 1);
        for (int k = 0; k <= l.top_dim(); ++k)
            for (int id = 0; id < l.count(k); ++id) {
                auto [ob, t] = src.representative(n, k, id);
                for (std::size_t i = 0; i < t.size(); ++i) t[i] = f[i]->level[ob.sizes[i]].apply(t[i]);
                m.image[k].push_back(dst.lookup(ob.sizes, ob.alpha, t, k));
            }
        out.level.push_back(std::move(m));
    }
    return out;
}

/// Levelwise product X x Y.
class ProductISpace {
public:
    ProductISpace(const ISpaceT& x, const ISpaceT& y, int max_dim = -1) : out_(std::min(x.trunc(), y.trunc())) {
        const int N = out_.trunc();
        for (int n = 0; n <= N; ++n) {
            prods_.emplace_back(x.level(n), y.level(n), max_dim);
            out_.level(n) = prods_.back().sset();
            if (x.level(n).basepoint && y.level(n).basepoint)
                out_.level(n).basepoint = prods_.back().lookup({0, 0, *x.level(n).basepoint}, {0, 0, *y.level(n).basepoint}).base;
        }
        const TruncatedI& t = out_.cat();
        out_.set_action([&](int f, const SimplexRef& s) {
            const Injection& a = t.morphism(f);
            auto [p, q] = prods_[a.m].pair_of(s.dim, s.base);
            return prods_[a.n].lookup(x.action(a).apply(p), y.action(a).apply(q));
        });
    }
    const ISpaceT& ispace() const { return out_; }
    const Product& level_product(int n) const { return prods_[n]; }

private:
    ISpaceT out_;
    std::vector<Product> prods_;
};

/// rho: X [] Y -> X x Y from the projections to the terminal I-space.
inline ISpaceMap rho(const Box& b, const ProductISpace& p) {
    if (b.arity() != 2) throw InvalidInput("rho: binary box product expected");
    ISpaceMap out;
    const ISpaceT& x = b.factor(0);
    const ISpaceT& y = b.factor(1);
    for (int n = 0; n <= b.trunc(); ++n) {
        const SSet& l = b.ispace().level(n);
        SMap m;
        m.image.resize(l.top_dim() + 1);
        for (int k = 0; k <= l.top_dim(); ++k)
            for (int id = 0; id < l.count(k); ++id) {
                auto [ob, t] = b.representative(n, k, id);
                const int n1 = ob.sizes[0], n2 = ob.sizes[1];
                Injection a1 = compose(ob.alpha, standard_inclusion(n1, n1 + n2));
                Injection a2 = compose(ob.alpha, concat(Injection{0, n1, {}}, identity_injection(n2)));
                m.image[k].push_back(p.level_product(n).lookup(x.action(a1).apply(t[0]), y.action(a2).apply(t[1])));
            }
        out.level.push_back(std::move(m));
    }
    return out;
}

/// Unit isomorphism I(0,-) [] Y -> Y.
inline ISpaceMap left_unit(const Box& b) {
    ISpaceMap out;
    const ISpaceT& y = b.factor(1);
    for (int n = 0; n <= b.trunc(); ++n) {
        const SSet& l = b.ispace().level(n);
        SMap m;
        m.image.resize(l.top_dim() + 1);
        for (int k = 0; k <= l.top_dim(); ++k)
            for (int id = 0; id < l.count(k); ++id) {
                auto [ob, t] = b.representative(n, k, id);
                const int n1 = ob.sizes[0], n2 = ob.sizes[1];
                m.image[k].push_back(y.action(compose(ob.alpha, concat(Injection{0, n1, {}}, identity_injection(n2)))).apply(t[1]));
            }
        out.level.push_back(std::move(m));
    }
    return out;
}

/// Symmetry X [] Y -> Y [] X built from the block shuffles.
inline ISpaceMap box_symmetry(const Box& xy, const Box& yx) {
    ISpaceMap out;
    for (int n = 0; n <= xy.trunc(); ++n) {
        const SSet& l = xy.ispace().level(n);
        SMap m;
        m.image.resize(l.top_dim() + 1);
        for (int k = 0; k <= l.top_dim(); ++k)
            for (int id = 0; id < l.count(k); ++id) {
                auto [ob, t] = xy.representative(n, k, id);
                const int n1 = ob.sizes[0], n2 = ob.sizes[1];
                m.image[k].push_back(yx.lookup({n2, n1}, compose(ob.alpha, shuffle(n2, n1)), {t[1], t[0]}, k));
            }
        out.level.push_back(std::move(m));
    }
    return out;
}

/// xi^{k,l}: R^k X [] R^l Y -> R^{k+l}(X [] Y). `src` is the box of R^k X
/// and R^l Y, `dst` the box of X and Y.
inline ISpaceMap xi_map(const Box& src, const Box& dst, int k, int l) {
    ISpaceMap out;
    const int N = std::min(src.trunc(), dst.trunc() - k - l);
    for (int p = 0; p <= N; ++p) {
        const SSet& lv = src.ispace().level(p);
        SMap m;
        m.image.resize(lv.top_dim() + 1);
        for (int q = 0; q <= lv.top_dim(); ++q)
            for (int id = 0; id < lv.count(q); ++id) {
                auto [ob, t] = src.representative(p, q, id);
                const int a = ob.sizes[0], b = ob.sizes[1];
                Injection chi = concat(concat(identity_injection(k), shuffle(a, l)), identity_injection(b));
                Injection g = compose(concat(identity_injection(k + l), ob.alpha), chi);
                m.image[q].push_back(dst.lookup({k + a, l + b}, g, t, q));
            }
        out.level.push_back(std::move(m));
    }
    return out;
}

inline ISpaceMap compose_maps(const ISpaceMap& g, const ISpaceMap& f) {
    ISpaceMap h;
    for (std::size_t n = 0; n < std::min(f.level.size(), g.level.size()); ++n)
        h.level.push_back(SMap::compose(g.level[n], f.level[n]));
    return h;
}

struct PushoutIdentityReport {
    bool via_right = false;  // xi^{0,1} o (X [] j_Y) == j_{X [] Y}
    bool via_left = false;   // xi^{1,0} o (j_X [] Y) == j_{X [] Y}
    bool commutes() const { return via_right && via_left; }
};

/// Both composites X [] Y -> R(X [] Y) of the square against j_{X [] Y}.
inline PushoutIdentityReport check_pushout_identity(const ISpaceT& x, const ISpaceT& y) {
    const int N = std::min(x.trunc(), y.trunc());
    if (N < 1) throw InvalidInput("check_pushout_identity: truncation at least 1 required");
    ISpaceT x1 = restrict_trunc(x, N - 1), y1 = restrict_trunc(y, N - 1);
    ISpaceT rx = R_functor(restrict_trunc(x, N)), ry = R_functor(restrict_trunc(y, N));
    Box xy = box(x, y);
    Box xy1 = box(x1, y1);
    Box x_ry = box(x1, ry);
    Box rx_y = box(rx, y1);
    ISpaceMap jx = j_map(x), jy = j_map(y);
    ISpaceMap idx = identity_map(x1), idy = identity_map(y1);
    ISpaceMap j_box = j_map(xy.ispace());

    PushoutIdentityReport r;
    ISpaceMap right = compose_maps(xi_map(x_ry, xy, 0, 1), box_map(xy1, x_ry, {&idx, &jy}));
    ISpaceMap left = compose_maps(xi_map(rx_y, xy, 1, 0), box_map(xy1, rx_y, {&jx, &idy}));
    r.via_right = right.level == j_box.level;
    r.via_left = left.level == j_box.level;
    return r;
}

}  // namespace itop

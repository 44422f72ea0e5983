// Finite simplicial sets in Eilenberg-Zilber normal form.
//
// Only nondegenerate simplices are stored. A general simplex is a SimplexRef
// (degeneracy mask, nondegenerate base); faces and degeneracies of such
// references are computed from the stored faces of nondegenerate simplices.
#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "itop/degeneracy.hpp"
#include "itop/error.hpp"
#include "itop/util.hpp"

namespace itop {

struct SimplexRef {
    int dim = 0;
    DegMask deg = 0;
    int base = 0;

    int base_dim() const { return dim - deg_count(deg); }
    bool degenerate() const { return deg != 0; }
    auto operator<=>(const SimplexRef&) const = default;
};

/// Key of a simplex within a fixed dimension.
inline std::uint64_t simplex_key(const SimplexRef& s) {
    return (static_cast<std::uint64_t>(s.deg) << 32) | static_cast<std::uint32_t>(s.base);
}

inline std::string to_string(const SimplexRef& s) {
    std::ostringstream os;
    os << "s[";
    bool first = true;
    for (int j : deg_word(s.deg)) {
        os << (first ? "" : ",") << j;
        first = false;
    }
    os << "](" << s.base_dim() << "/" << s.base << ")";
    return os.str();
}

class SSet {
public:
    SSet() : counts_(1, 0), faces_(1) {}
    explicit SSet(int top_dim) : counts_(top_dim + 1, 0), faces_(top_dim + 1) {}

    int top_dim() const { return static_cast<int>(counts_.size()) - 1; }
    int count(int k) const { return k >= 0 && k <= top_dim() ? counts_[k] : 0; }
    std::size_t total_count() const {
        std::size_t n = 0;
        for (int c : counts_) n += static_cast<std::size_t>(c);
        return n;
    }

    /// True when no nondegenerate simplices exist above top_dim. A truncated
    /// set is only known faithfully up to top_dim.
    bool finite() const { return finite_; }
    void set_finite(bool f) { finite_ = f; }

    std::optional<int> basepoint;

    void extend_top_dim(int d) {
        if (d > top_dim()) {
            counts_.resize(d + 1, 0);
            faces_.resize(d + 1);
        }
    }

    int add_vertex() { return counts_[0]++; }

    int add_simplex(int k, std::span<const SimplexRef> faces) {
        if (k == 0) return add_vertex();
        if (k > top_dim()) extend_top_dim(k);
        assert(static_cast<int>(faces.size()) == k + 1);
        faces_[k].insert(faces_[k].end(), faces.begin(), faces.end());
        return counts_[k]++;
    }

    SimplexRef nd(int k, int id) const { return {k, 0, id}; }

    const SimplexRef& face_nd(int k, int id, int i) const {
        return faces_[k][static_cast<std::size_t>(id) * (k + 1) + i];
    }
    std::span<const SimplexRef> faces_nd(int k, int id) const {
        return {faces_[k].data() + static_cast<std::size_t>(id) * (k + 1), static_cast<std::size_t>(k + 1)};
    }
    void set_face_nd(int k, int id, int i, SimplexRef r) {
        faces_[k][static_cast<std::size_t>(id) * (k + 1) + i] = r;
    }

    SimplexRef face(const SimplexRef& s, int i) const {
        const int k = s.dim;
        const FaceOfSurj r = surj_face(k, s.deg, i);
        if (!r.lost) return {k - 1, r.mask, s.base};
        const SimplexRef& z = face_nd(s.base_dim(), s.base, r.missed);
        return {k - 1, surj_compose(k - 1, r.mask, z.deg), z.base};
    }

    static SimplexRef degen(const SimplexRef& s, int j) { return {s.dim + 1, surj_degen(s.deg, j), s.base}; }

    /// The j-th vertex of a simplex.
    int vertex(const SimplexRef& s, int j) const {
        int v = surj_value(s.deg, j);
        SimplexRef y{s.base_dim(), 0, s.base};
        while (y.dim > 0) {
            if (v < y.dim) {
                y = face(y, y.dim);
            } else {
                y = face(y, 0);
                --v;
            }
        }
        return y.base;
    }

    /// Fully degenerate k-simplex on a vertex.
    static SimplexRef degenerate_vertex(int v, int k) { return {k, low_bits(k), v}; }

    /// All k-simplices (degenerate included): nondegenerate first, then by
    /// decreasing base dimension, increasing mask, increasing base id.
    std::vector<SimplexRef> simplices(int k) const {
        std::vector<SimplexRef> out;
        for (int d = std::min(k, top_dim()); d >= 0; --d)
            for (DegMask m : masks_with_count(k, k - d))
                for (int b = 0; b < count(d); ++b) out.push_back({k, m, b});
        return out;
    }

private:
    std::vector<int> counts_;
    std::vector<std::vector<SimplexRef>> faces_;
    bool finite_ = true;
};

/// Simplicial map given on nondegenerate simplices.
struct SMap {
    std::vector<std::vector<SimplexRef>> image;  // image[k][id]

    SimplexRef apply(const SimplexRef& s) const {
        const SimplexRef& y = image[s.base_dim()][s.base];
        return {s.dim, surj_compose(s.dim, s.deg, y.deg), y.base};
    }
    int top_dim() const { return static_cast<int>(image.size()) - 1; }

    static SMap identity(const SSet& x) {
        SMap f;
        f.image.resize(x.top_dim() + 1);
        for (int k = 0; k <= x.top_dim(); ++k)
            for (int i = 0; i < x.count(k); ++i) f.image[k].push_back(x.nd(k, i));
        return f;
    }

    static SMap compose(const SMap& g, const SMap& f) {
        SMap h;
        h.image.resize(f.image.size());
        for (std::size_t k = 0; k < f.image.size(); ++k)
            for (const auto& r : f.image[k]) h.image[k].push_back(g.apply(r));
        return h;
    }

    bool operator==(const SMap&) const = default;
};

/// Index of all simplices (degenerate included) of an SSet up to a dimension.
class FullTable {
public:
    FullTable() = default;
    FullTable(const SSet& x, int max_dim) : lists_(max_dim + 1), index_(max_dim + 1) {
        for (int k = 0; k <= max_dim; ++k) {
            lists_[k] = x.simplices(k);
            index_[k].reserve(lists_[k].size());
            for (std::size_t i = 0; i < lists_[k].size(); ++i)
                index_[k].emplace(simplex_key(lists_[k][i]), static_cast<int>(i));
        }
    }
    int max_dim() const { return static_cast<int>(lists_.size()) - 1; }
    const std::vector<SimplexRef>& at(int k) const { return lists_[k]; }
    int size(int k) const { return static_cast<int>(lists_[k].size()); }
    int index(const SimplexRef& s) const {
        auto it = index_[s.dim].find(simplex_key(s));
        return it == index_[s.dim].end() ? -1 : it->second;
    }

private:
    std::vector<std::vector<SimplexRef>> lists_;
    std::vector<std::unordered_map<std::uint64_t, int>> index_;
};

/// Input to `normalize`: a simplicial set given by all its simplices.
struct FullSSetData {
    int max_dim = 0;
    bool finite = true;
    std::vector<int> counts;  // counts[q]
    std::function<int(int q, int e, int i)> face;
    std::function<int(int q, int e, int j)> degen;  // only used for q < max_dim
};

struct Normalized {
    SSet sset;
    std::vector<std::vector<SimplexRef>> ref;  // ref[q][element]
};

/// Convert an explicit simplex table to Eilenberg-Zilber normal form.
/// Nondegenerate simplices keep the relative order of their elements.
inline Normalized normalize(const FullSSetData& data) {
    Normalized out;
    out.sset = SSet(data.max_dim);
    out.sset.set_finite(data.finite);
    out.ref.resize(data.max_dim + 1);
    static constexpr SimplexRef kUnset{-1, 0, -1};
    for (int q = 0; q <= data.max_dim; ++q) {
        auto& refs = out.ref[q];
        refs.assign(data.counts[q], kUnset);
        if (q > 0) {
            for (int e = 0; e < data.counts[q - 1]; ++e)
                for (int j = 0; j < q; ++j) {
                    int t = data.degen(q - 1, e, j);
                    if (refs[t].dim < 0) refs[t] = SSet::degen(out.ref[q - 1][e], j);
                }
        }
        std::vector<SimplexRef> faces(q + 1);
        for (int e = 0; e < data.counts[q]; ++e) {
            if (refs[e].dim >= 0) continue;
            for (int i = 0; q > 0 && i <= q; ++i) faces[i] = out.ref[q - 1][data.face(q, e, i)];
            int id = out.sset.add_simplex(q, faces);
            refs[e] = {q, 0, id};
        }
    }
    return out;
}

// ---------------------------------------------------------------- constructors

inline SSet point() {
    SSet x(0);
    x.add_vertex();
    return x;
}

inline SSet discrete(int n) {
    SSet x(0);
    for (int i = 0; i < n; ++i) x.add_vertex();
    return x;
}

/// Two points, based at vertex 0.
inline SSet sphere0() {
    SSet x = discrete(2);
    x.basepoint = 0;
    return x;
}

/// One vertex and one edge with both faces on it.
inline SSet circle() {
    SSet x(1);
    x.add_vertex();
    SimplexRef f[2] = {{0, 0, 0}, {0, 0, 0}};
    x.add_simplex(1, f);
    x.basepoint = 0;
    return x;
}

namespace detail {
inline void subsets_of_size(int n, int size, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v <= n; ++v) {
        cur.push_back(v);
        subsets_of_size(n, size, v + 1, cur, out);
        cur.pop_back();
    }
}

/// Standard simplex on vertices {0..n}, optionally without its interior
/// (top_keep < n) restricted to faces of dimension <= top_keep.
inline SSet simplex_skeleton(int n, int top_keep) {
    SSet x(std::max(0, top_keep));
    std::vector<std::unordered_map<std::vector<int>, int, VecHash>> ids(top_keep + 1);
    for (int k = 0; k <= top_keep; ++k) {
        std::vector<std::vector<int>> subs;
        std::vector<int> cur;
        subsets_of_size(n, k + 1, 0, cur, subs);
        for (const auto& s : subs) {
            std::vector<SimplexRef> faces;
            for (int i = 0; k > 0 && i <= k; ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + i);
                faces.push_back({k - 1, 0, ids[k - 1].at(f)});
            }
            ids[k].emplace(s, x.add_simplex(k, faces));
        }
    }
    return x;
}
}  // namespace detail

inline SSet delta(int n) { return detail::simplex_skeleton(n, n); }

/// Boundary of the n-simplex (n >= 1).
inline SSet boundary_delta(int n) { return detail::simplex_skeleton(n, n - 1); }

/// Standard simplex restricted to its k-skeleton.
inline SSet delta_skeleton(int n, int k) { return detail::simplex_skeleton(n, std::min(n, k)); }

// ---------------------------------------------------------------- validation

/// Structural and simplicial-identity diagnostics; empty iff valid.
inline std::vector<std::string> validate_sset(const SSet& x, int max_check_dim = -1) {
    std::vector<std::string> diags;
    auto name = [](int k, int id) { return std::to_string(k) + "/" + std::to_string(id); };
    auto ref_ok = [&](const SimplexRef& r, int want_dim) {
        if (r.dim != want_dim) return false;
        int bd = r.base_dim();
        if (bd < 0 || bd > x.top_dim()) return false;
        if ((r.deg & ~low_bits(r.dim)) != 0) return false;
        return r.base >= 0 && r.base < x.count(bd);
    };
    for (int k = 1; k <= x.top_dim(); ++k)
        for (int id = 0; id < x.count(k); ++id)
            for (int i = 0; i <= k; ++i)
                if (!ref_ok(x.face_nd(k, id, i), k - 1))
                    diags.push_back("malformed face d_" + std::to_string(i) + " of " + name(k, id));
    if (!diags.empty()) return diags;
    const int top = max_check_dim < 0 ? x.top_dim() : std::min(max_check_dim, x.top_dim());
    for (int k = 2; k <= top; ++k)
        for (const SimplexRef& s : x.simplices(k))
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i) {
                    SimplexRef lhs = x.face(x.face(s, j), i);
                    SimplexRef rhs = x.face(x.face(s, i), j - 1);
                    if (lhs != rhs)
                        diags.push_back("d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                                        std::to_string(j - 1) + " d_" + std::to_string(i) + " on " +
                                        to_string(s) + " in dim " + std::to_string(k));
                }
    if (x.basepoint && (*x.basepoint < 0 || *x.basepoint >= x.count(0)))
        diags.push_back("basepoint out of range");
    return diags;
}

/// Checks that f commutes with faces on all simplices up to `max_dim`.
inline std::vector<std::string> validate_smap(const SMap& f, const SSet& src, const SSet& dst, int max_dim = -1) {
    std::vector<std::string> diags;
    const int top = max_dim < 0 ? src.top_dim() : std::min(max_dim, src.top_dim());
    if (f.top_dim() < top) {
        diags.push_back("map undefined above dim " + std::to_string(f.top_dim()));
        return diags;
    }
    for (int k = 0; k <= top; ++k) {
        if (static_cast<int>(f.image[k].size()) != src.count(k)) {
            diags.push_back("map has wrong size in dim " + std::to_string(k));
            return diags;
        }
        for (const auto& r : f.image[k])
            if (r.dim != k || r.base_dim() > dst.top_dim() || r.base < 0 || r.base >= dst.count(r.base_dim())) {
                diags.push_back("map image out of range in dim " + std::to_string(k));
                return diags;
            }
    }
    for (int k = 1; k <= top; ++k)
        for (int id = 0; id < src.count(k); ++id)
            for (int i = 0; i <= k; ++i) {
                SimplexRef a = f.apply(src.face({k, 0, id}, i));
                SimplexRef b = dst.face(f.apply({k, 0, id}), i);
                if (a != b)
                    diags.push_back("f d_" + std::to_string(i) + " != d_" + std::to_string(i) + " f on " +
                                    std::to_string(k) + "/" + std::to_string(id));
            }
    return diags;
}

/// A simplicial map is a monomorphism iff it sends nondegenerate simplices
/// injectively to nondegenerate simplices.
inline std::optional<std::string> injectivity_witness(const SMap& f, int max_dim) {
    for (int k = 0; k <= std::min(max_dim, f.top_dim()); ++k) {
        std::unordered_map<int, int> seen;
        for (int id = 0; id < static_cast<int>(f.image[k].size()); ++id) {
            const SimplexRef& r = f.image[k][id];
            if (r.degenerate())
                return "simplex " + std::to_string(k) + "/" + std::to_string(id) + " maps to a degenerate simplex";
            auto [it, fresh] = seen.emplace(r.base, id);
            if (!fresh)
                return "simplices " + std::to_string(k) + "/" + std::to_string(it->second) + " and " +
                       std::to_string(k) + "/" + std::to_string(id) + " have the same image";
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- components

struct Components {
    std::vector<int> of_vertex;  // class index per vertex
    std::vector<int> rep;        // smallest vertex per class
    int count() const { return static_cast<int>(rep.size()); }
};

/// Path components: the coequalizer of d_0, d_1 on 1-simplices.
inline Components pi0(const SSet& x) {
    UnionFind uf(x.count(0));
    for (int e = 0; e < x.count(1); ++e)
        uf.unite(x.face_nd(1, e, 0).base, x.face_nd(1, e, 1).base);
    Components c;
    int n = 0;
    c.of_vertex = uf.classes(&n);
    c.rep.assign(n, -1);
    for (int v = 0; v < x.count(0); ++v)
        if (c.rep[c.of_vertex[v]] < 0) c.rep[c.of_vertex[v]] = v;
    return c;
}

// ---------------------------------------------------------------- sub-objects

/// Selection of nondegenerate simplices per dimension.
using SubSet = std::vector<std::vector<char>>;

inline bool is_subcomplex(const SSet& x, const SubSet& a) {
    for (int k = 1; k <= x.top_dim(); ++k)
        for (int id = 0; id < x.count(k); ++id) {
            if (!a[k][id]) continue;
            for (const SimplexRef& f : x.faces_nd(k, id))
                if (!a[f.base_dim()][f.base]) return false;
        }
    return true;
}

struct Restriction {
    SSet sset;
    SMap inclusion;                        // sub -> x
    std::vector<std::vector<int>> new_id;  // x id -> sub id or -1
};

/// The sub-simplicial set on the selected simplices (must be face closed).
inline Restriction restrict_to(const SSet& x, const SubSet& a) {
    if (!is_subcomplex(x, a)) throw InvalidInput("selection is not closed under faces");
    Restriction r;
    r.sset = SSet(x.top_dim());
    r.sset.set_finite(x.finite());
    r.new_id.resize(x.top_dim() + 1);
    r.inclusion.image.resize(x.top_dim() + 1);
    for (int k = 0; k <= x.top_dim(); ++k) {
        r.new_id[k].assign(x.count(k), -1);
        for (int id = 0; id < x.count(k); ++id) {
            if (!a[k][id]) continue;
            std::vector<SimplexRef> faces;
            for (int i = 0; k > 0 && i <= k; ++i) {
                const SimplexRef& f = x.face_nd(k, id, i);
                faces.push_back({f.dim, f.deg, r.new_id[f.base_dim()][f.base]});
            }
            r.new_id[k][id] = r.sset.add_simplex(k, faces);
            r.inclusion.image[k].push_back(x.nd(k, id));
        }
    }
    if (x.basepoint && a[0][*x.basepoint]) r.sset.basepoint = r.new_id[0][*x.basepoint];
    return r;
}

/// Selection of the simplices lying in the given path components.
inline SubSet component_selection(const SSet& x, const Components& comps, const std::vector<char>& keep_class) {
    SubSet a(x.top_dim() + 1);
    for (int k = 0; k <= x.top_dim(); ++k) {
        a[k].resize(x.count(k));
        for (int id = 0; id < x.count(k); ++id) {
            int v = x.vertex({k, 0, id}, 0);
            a[k][id] = keep_class[comps.of_vertex[v]];
        }
    }
    return a;
}

struct QuotientResult {
    SSet sset;  // basepoint is the collapsed class
    SMap projection;
};

/// Collapse a face-closed sub-simplicial set to a point.
inline QuotientResult quotient(const SSet& x, const SubSet& a) {
    if (!is_subcomplex(x, a)) throw InvalidInput("quotient: subobject is not closed under faces");
    QuotientResult q;
    q.sset = SSet(x.top_dim());
    q.sset.set_finite(x.finite());
    const int star = q.sset.add_vertex();
    q.sset.basepoint = star;
    std::vector<std::vector<int>> id_of(x.top_dim() + 1);
    q.projection.image.resize(x.top_dim() + 1);
    for (int k = 0; k <= x.top_dim(); ++k) {
        id_of[k].assign(x.count(k), -1);
        for (int id = 0; id < x.count(k); ++id) {
            if (a[k][id]) {
                q.projection.image[k].push_back(SSet::degenerate_vertex(star, k));
                continue;
            }
            if (k == 0) {
                id_of[0][id] = q.sset.add_vertex();
            } else {
                std::vector<SimplexRef> faces;
                for (const SimplexRef& f : x.faces_nd(k, id)) {
                    int bd = f.base_dim();
                    if (a[bd][f.base])
                        faces.push_back(SSet::degenerate_vertex(star, k - 1));
                    else
                        faces.push_back({f.dim, f.deg, id_of[bd][f.base]});
                }
                id_of[k][id] = q.sset.add_simplex(k, faces);
            }
            q.projection.image[k].push_back({k, 0, id_of[k][id]});
        }
    }
    return q;
}

// ---------------------------------------------------------------- products

/// Categorical product with its shuffle decomposition.
///
/// Nondegenerate k-simplices are pairs (x, y) of k-simplices whose degeneracy
/// masks are disjoint, ordered by (index of x, index of y) in each factor's
/// FullTable order.
class Product {
public:
    Product() = default;
    Product(const SSet& x, const SSet& y, int max_dim = -1) {
        int top = (x.finite() && y.finite()) ? x.top_dim() + y.top_dim() : std::min(x.top_dim(), y.top_dim());
        bool fin = x.finite() && y.finite();
        if (max_dim >= 0 && max_dim < top) {
            top = max_dim;
            fin = fin && (x.top_dim() + y.top_dim() <= max_dim);
        }
        top_ = top;
        if (top > kMaxSimplicialDim) throw BudgetExceeded("product dimension exceeds the configured bound");
        tx_ = FullTable(x, top);
        ty_ = FullTable(y, top);
        sset_ = SSet(top);
        sset_.set_finite(fin);
        index_.resize(top + 1);
        pairs_.resize(top + 1);
        proj1_.image.resize(top + 1);
        proj2_.image.resize(top + 1);
        for (int k = 0; k <= top; ++k) {
            const auto& xs = tx_.at(k);
            const auto& ys = ty_.at(k);
            for (int a = 0; a < static_cast<int>(xs.size()); ++a)
                for (int b = 0; b < static_cast<int>(ys.size()); ++b) {
                    if (xs[a].deg & ys[b].deg) continue;
                    std::vector<SimplexRef> faces;
                    for (int i = 0; k > 0 && i <= k; ++i) faces.push_back(lookup(x.face(xs[a], i), y.face(ys[b], i)));
                    int id = sset_.add_simplex(k, faces);
                    index_[k].emplace(std::make_pair(simplex_key(xs[a]), simplex_key(ys[b])), id);
                    pairs_[k].emplace_back(xs[a], ys[b]);
                    proj1_.image[k].push_back(xs[a]);
                    proj2_.image[k].push_back(ys[b]);
                }
        }
        if (x.basepoint && y.basepoint) sset_.basepoint = lookup({0, 0, *x.basepoint}, {0, 0, *y.basepoint}).base;
    }

    const SSet& sset() const { return sset_; }
    const SMap& proj1() const { return proj1_; }
    const SMap& proj2() const { return proj2_; }
    int top_dim() const { return top_; }

    /// The simplex (x, y) of the product in normal form.
    SimplexRef lookup(const SimplexRef& x, const SimplexRef& y) const {
        const int k = x.dim;
        const DegMask common = x.deg & y.deg;
        SimplexRef xr{k - deg_count(common), surj_factor(k, x.deg, common), x.base};
        SimplexRef yr{xr.dim, surj_factor(k, y.deg, common), y.base};
        auto it = index_[xr.dim].find(std::make_pair(simplex_key(xr), simplex_key(yr)));
        if (it == index_[xr.dim].end()) throw InvalidInput("product lookup outside the product");
        return {k, common, it->second};
    }

    const std::pair<SimplexRef, SimplexRef>& pair_of(int k, int id) const { return pairs_[k][id]; }

private:
    int top_ = 0;
    FullTable tx_, ty_;
    SSet sset_;
    std::vector<std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, int, PairHash>> index_;
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs_;
    SMap proj1_, proj2_;
};

inline SSet product(const SSet& x, const SSet& y, int max_dim = -1) { return Product(x, y, max_dim).sset(); }

/// Product of a pair of maps into a product.
inline SMap pairing(const SMap& f, const SMap& g, const SSet& src, const Product& target) {
    SMap h;
    h.image.resize(src.top_dim() + 1);
    for (int k = 0; k <= src.top_dim(); ++k)
        for (int id = 0; id < src.count(k); ++id)
            h.image[k].push_back(target.lookup(f.apply({k, 0, id}), g.apply({k, 0, id})));
    return h;
}

/// Product of finitely many simplicial sets; the empty product is a point.
/// Nondegenerate k-simplices are tuples of k-simplices whose collapse sets
/// have empty common intersection, ordered lexicographically by table index.
class MultiProduct {
public:
    MultiProduct() = default;
    MultiProduct(std::vector<const SSet*> factors, int max_dim = -1) : factors_(std::move(factors)) {
        bool fin = true;
        int sum = 0, mn = kMaxSimplicialDim;
        for (auto* f : factors_) {
            fin = fin && f->finite();
            sum += f->top_dim();
            mn = std::min(mn, f->top_dim());
        }
        int top = factors_.empty() ? 0 : (fin ? sum : mn);
        if (max_dim >= 0 && max_dim < top) {
            top = max_dim;
            fin = false;
        }
        if (top > kMaxSimplicialDim) throw BudgetExceeded("product dimension exceeds the configured bound");
        top_ = top;
        for (auto* f : factors_) tables_.emplace_back(*f, top);
        sset_ = SSet(top);
        sset_.set_finite(fin);
        index_.resize(top + 1);
        tuples_.resize(top + 1);
        const int r = static_cast<int>(factors_.size());
        for (int k = 0; k <= top; ++k) {
            std::vector<int> idx(r, 0);
            bool done = false;
            for (int i = 0; i < r; ++i)
                if (tables_[i].size(k) == 0) done = true;
            while (!done) {
                DegMask common = low_bits(k);
                std::vector<SimplexRef> t(r);
                for (int i = 0; i < r; ++i) {
                    t[i] = tables_[i].at(k)[idx[i]];
                    common &= t[i].deg;
                }
                if (r == 0) common = 0;
                if (common == 0) {
                    std::vector<SimplexRef> faces;
                    for (int f = 0; k > 0 && f <= k; ++f) {
                        std::vector<SimplexRef> ft(r);
                        for (int i = 0; i < r; ++i) ft[i] = factors_[i]->face(t[i], f);
                        faces.push_back(lookup(ft, k - 1));
                    }
                    int id = sset_.add_simplex(k, faces);
                    index_[k].emplace(key(t), id);
                    tuples_[k].push_back(std::move(t));
                }
                int i = r - 1;
                while (i >= 0 && ++idx[i] == tables_[i].size(k)) idx[i--] = 0;
                if (i < 0) done = true;
            }
        }
        bool based = !factors_.empty();
        std::vector<SimplexRef> bp;
        for (auto* f : factors_) {
            if (!f->basepoint) based = false;
            else bp.push_back({0, 0, *f->basepoint});
        }
        if (factors_.empty()) sset_.basepoint = 0;
        else if (based) sset_.basepoint = lookup(bp, 0).base;
    }

    const SSet& sset() const { return sset_; }
    int arity() const { return static_cast<int>(factors_.size()); }
    const std::vector<SimplexRef>& tuple_of(int k, int id) const { return tuples_[k][id]; }

    /// The simplex with the given coordinates (all of dimension k).
    SimplexRef lookup(const std::vector<SimplexRef>& t, int k) const {
        DegMask common = low_bits(k);
        for (auto& x : t) common &= x.deg;
        if (t.empty()) common = low_bits(k);
        std::vector<SimplexRef> r(t.size());
        const int d = k - deg_count(common);
        for (std::size_t i = 0; i < t.size(); ++i) r[i] = {d, surj_factor(k, t[i].deg, common), t[i].base};
        auto it = index_[d].find(key(r));
        if (it == index_[d].end()) throw InvalidInput("product lookup outside the product");
        return {k, common, it->second};
    }

private:
    static std::vector<std::uint64_t> key(const std::vector<SimplexRef>& t) {
        std::vector<std::uint64_t> k;
        for (auto& x : t) k.push_back(simplex_key(x));
        return k;
    }
    int top_ = 0;
    std::vector<const SSet*> factors_;
    std::vector<FullTable> tables_;
    SSet sset_;
    std::vector<std::unordered_map<std::vector<std::uint64_t>, int, VecHash>> index_;
    std::vector<std::vector<std::vector<SimplexRef>>> tuples_;
};

/// Disjoint union; ids of the second summand are shifted.
inline SSet disjoint_union(const SSet& x, const SSet& y) {
    SSet u(std::max(x.top_dim(), y.top_dim()));
    u.set_finite(x.finite() && y.finite());
    for (int k = 0; k <= u.top_dim(); ++k) {
        for (int id = 0; id < x.count(k); ++id) {
            auto f = k == 0 ? std::span<const SimplexRef>{} : x.faces_nd(k, id);
            u.add_simplex(k, f);
        }
        for (int id = 0; id < y.count(k); ++id) {
            std::vector<SimplexRef> faces;
            for (int i = 0; k > 0 && i <= k; ++i) {
                SimplexRef f = y.face_nd(k, id, i);
                f.base += x.count(f.base_dim());
                faces.push_back(f);
            }
            u.add_simplex(k, faces);
        }
    }
    return u;
}

/// Graphviz rendering of the 1-skeleton.
inline std::string to_dot(const SSet& x, const std::string& name = "X") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int v = 0; v < x.count(0); ++v) os << "  v" << v << ";\n";
    for (int e = 0; e < x.count(1); ++e)
        os << "  v" << x.face_nd(1, e, 1).base << " -> v" << x.face_nd(1, e, 0).base << " [label=\"e" << e << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace itop

// Bisimplicial sets given by explicit tables, and their diagonals.
#pragma once

#include <vector>

#include "itop/sset.hpp"

namespace itop {

/// B_{p,q} for p, q <= max_dim. Horizontal operators change p, vertical
/// operators change q.
struct BiSSet {
    int max_dim = 0;
    std::vector<std::vector<int>> counts;  // counts[p][q]
    // face_h[p][q][e * (p + 1) + i] lands in (p - 1, q); likewise for the others
    std::vector<std::vector<std::vector<int>>> face_h, face_v, degen_h, degen_v;

    explicit BiSSet(int d = 0)
        : max_dim(d),
          counts(d + 1, std::vector<int>(d + 1, 0)),
          face_h(d + 1, std::vector<std::vector<int>>(d + 1)),
          face_v(face_h),
          degen_h(face_h),
          degen_v(face_h) {}

    int dh(int p, int q, int e, int i) const { return face_h[p][q][e * (p + 1) + i]; }
    int dv(int p, int q, int e, int i) const { return face_v[p][q][e * (q + 1) + i]; }
    int sh(int p, int q, int e, int j) const { return degen_h[p][q][e * (p + 1) + j]; }
    int sv(int p, int q, int e, int j) const { return degen_v[p][q][e * (q + 1) + j]; }
};

/// Simplicial identities in both directions and commutation of the two.
inline std::vector<std::string> validate_bisset(const BiSSet& b) {
    std::vector<std::string> d;
    const int n = b.max_dim;
    auto at = [](int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; };
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            for (int e = 0; e < b.counts[p][q]; ++e) {
                for (int j = 1; j <= p && p >= 2; ++j)
                    for (int i = 0; i < j; ++i)
                        if (b.dh(p - 1, q, b.dh(p, q, e, j), i) != b.dh(p - 1, q, b.dh(p, q, e, i), j - 1))
                            d.push_back("horizontal face identity fails at " + at(p, q));
                for (int j = 1; j <= q && q >= 2; ++j)
                    for (int i = 0; i < j; ++i)
                        if (b.dv(p, q - 1, b.dv(p, q, e, j), i) != b.dv(p, q - 1, b.dv(p, q, e, i), j - 1))
                            d.push_back("vertical face identity fails at " + at(p, q));
                for (int i = 0; p >= 1 && i <= p; ++i)
                    for (int j = 0; q >= 1 && j <= q; ++j)
                        if (b.dv(p - 1, q, b.dh(p, q, e, i), j) != b.dh(p, q - 1, b.dv(p, q, e, j), i))
                            d.push_back("horizontal and vertical faces do not commute at " + at(p, q));
                for (int j = 0; p < n && j <= p; ++j) {
                    int s = b.sh(p, q, e, j);
                    if (b.dh(p + 1, q, s, j) != e || b.dh(p + 1, q, s, j + 1) != e)
                        d.push_back("horizontal degeneracy is not split by faces at " + at(p, q));
                }
                for (int j = 0; q < n && j <= q; ++j) {
                    int s = b.sv(p, q, e, j);
                    if (b.dv(p, q + 1, s, j) != e || b.dv(p, q + 1, s, j + 1) != e)
                        d.push_back("vertical degeneracy is not split by faces at " + at(p, q));
                }
            }
    return d;
}

/// Diagonal: k-simplices B_{k,k}, d_i = d_i^h d_i^v, s_j = s_j^h s_j^v.
inline Normalized diag_full(const BiSSet& b) {
    FullSSetData data;
    data.max_dim = b.max_dim;
    data.finite = false;
    for (int k = 0; k <= b.max_dim; ++k) data.counts.push_back(b.counts[k][k]);
    data.face = [&b](int q, int e, int i) { return b.dh(q, q - 1, b.dv(q, q, e, i), i); };
    data.degen = [&b](int q, int e, int j) { return b.sh(q, q + 1, b.sv(q, q, e, j), j); };
    return normalize(data);
}

inline SSet diag(const BiSSet& b) { return diag_full(b).sset; }

/// The external product (p, q) -> X_p x Y_q.
inline BiSSet external_product(const SSet& x, const SSet& y, int max_dim) {
    BiSSet b(max_dim);
    FullTable tx(x, max_dim), ty(y, max_dim);
    for (int p = 0; p <= max_dim; ++p)
        for (int q = 0; q <= max_dim; ++q) {
            const int nx = tx.size(p), ny = ty.size(q);
            b.counts[p][q] = nx * ny;
            for (int a = 0; a < nx; ++a)
                for (int c = 0; c < ny; ++c) {
                    const SimplexRef& xs = tx.at(p)[a];
                    const SimplexRef& ys = ty.at(q)[c];
                    for (int i = 0; p > 0 && i <= p; ++i) b.face_h[p][q].push_back(tx.index(x.face(xs, i)) * ny + c);
                    for (int i = 0; q > 0 && i <= q; ++i)
                        b.face_v[p][q].push_back(a * ty.size(q - 1) + ty.index(y.face(ys, i)));
                    for (int j = 0; p < max_dim && j <= p; ++j)
                        b.degen_h[p][q].push_back(tx.index(SSet::degen(xs, j)) * ny + c);
                    for (int j = 0; q < max_dim && j <= q; ++j)
                        b.degen_v[p][q].push_back(a * ty.size(q + 1) + ty.index(SSet::degen(ys, j)));
                }
        }
    return b;
}

/// Bisimplicial set constant in the vertical direction.
inline BiSSet horizontal_constant(const SSet& x, int max_dim) { return external_product(x, point(), max_dim); }

}  // namespace itop

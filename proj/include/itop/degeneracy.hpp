// Bit-mask encoding of monotone surjections [k] -> [d].
//
// A surjection is stored as the set of "collapse positions": bit j is set
// iff sigma(j) == sigma(j + 1). This is exactly the index set of the
// Eilenberg-Zilber degeneracy word s_{i_1} ... s_{i_p} (i_1 > ... > i_p),
// so a degenerate simplex is (mask, nondegenerate base).
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace itop {

using DegMask = std::uint32_t;

inline constexpr int kMaxSimplicialDim = 30;

constexpr DegMask low_bits(int n) { return n <= 0 ? 0u : (n >= 32 ? ~0u : ((1u << n) - 1u)); }

constexpr int deg_count(DegMask m) { return std::popcount(m); }

/// Value sigma(i) of the surjection with collapse set `m`.
constexpr int surj_value(DegMask m, int i) { return i - std::popcount(m & low_bits(i)); }

/// Scatter the low bits of `src` into the set bit positions of `sel`.
constexpr DegMask deposit_bits(DegMask src, DegMask sel) {
    DegMask out = 0;
    for (DegMask bit = 1; sel != 0; bit <<= 1) {
        DegMask lowest = sel & (~sel + 1);
        if (src & bit) out |= lowest;
        sel &= sel - 1;
    }
    return out;
}

/// Gather the bits of `src` at the set positions of `sel` into the low bits.
constexpr DegMask extract_bits(DegMask src, DegMask sel) {
    DegMask out = 0;
    DegMask bit = 1;
    while (sel != 0) {
        DegMask lowest = sel & (~sel + 1);
        if (src & lowest) out |= bit;
        bit <<= 1;
        sel &= sel - 1;
    }
    return out;
}

struct FaceOfSurj {
    DegMask mask;   // collapse set of the (corestricted) composite on [k-1]
    bool lost;      // true iff sigma * delta_i misses a value
    int missed;     // that value (only meaningful when lost)
};

/// sigma * delta_i for sigma: [k] -> [d] with collapse set m, 0 <= i <= k.
/// When i is a singleton fibre the composite is delta_missed * sigma'' and
/// `mask` describes sigma''.
constexpr FaceOfSurj surj_face(int k, DegMask m, int i) {
    const bool left = i > 0 && (m >> (i - 1)) & 1u;
    const bool right = i < k && (m >> i) & 1u;
    DegMask out = 0;
    if (i >= 2) out |= m & low_bits(i - 1);
    if (i >= 1 && i <= k - 1 && left && right) out |= 1u << (i - 1);
    if (i <= k - 2) out |= (m >> 1) & ~low_bits(i) & low_bits(k - 1);
    const bool lost = !left && !right;
    return {out, lost, lost ? surj_value(m, i) : -1};
}

/// sigma * sigma_j: apply the degeneracy s_j to a k-simplex with collapse set m.
constexpr DegMask surj_degen(DegMask m, int j) {
    return (m & low_bits(j)) | (1u << j) | ((m & ~low_bits(j)) << 1);
}

/// Collapse set of tau * sigma where sigma: [k] -> [p] has collapse set ms and
/// tau: [p] -> [q] has collapse set mt.
constexpr DegMask surj_compose(int k, DegMask ms, DegMask mt) {
    return ms | deposit_bits(mt, ~ms & low_bits(k));
}

/// Given sigma with collapse set m and J contained in m, return the collapse
/// set of sigma' with sigma = sigma' * rho_J.
constexpr DegMask surj_factor(int k, DegMask m, DegMask j) {
    return extract_bits(m, ~j & low_bits(k));
}

/// Strictly decreasing degeneracy word of a mask.
inline std::vector<int> deg_word(DegMask m) {
    std::vector<int> w;
    for (int j = 31; j >= 0; --j)
        if ((m >> j) & 1u) w.push_back(j);
    return w;
}

inline DegMask mask_from_word(const std::vector<int>& w) {
    DegMask m = 0;
    for (int j : w) m |= 1u << j;
    return m;
}

/// All masks over k positions with exactly `count` bits, in increasing order.
inline std::vector<DegMask> masks_with_count(int k, int count) {
    std::vector<DegMask> out;
    if (count < 0 || count > k) return out;
    for (DegMask m = 0; m < (1u << k); ++m)
        if (deg_count(m) == count) out.push_back(m);
    return out;
}

}  // namespace itop

// Independent reference computations used by the test suite.
#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<Big>>;

/// Rank over Q by fraction-free (Bareiss) elimination.
inline int bareiss_rank(Dense a) {
    const std::size_t m = a.size();
    if (m == 0) return 0;
    const std::size_t n = a[0].size();
    Big prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

/// Elementary divisors by a textbook dense Smith reduction using extended
/// gcd row and column combinations.
inline std::vector<Big> elementary_divisors(Dense a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<Big> diag;
    auto xgcd = [](const Big& x, const Big& y, Big& s, Big& t) {
        Big r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            Big q = r0 / r1;
            Big tmp = r0 - q * r1; r0 = r1; r1 = tmp;
            tmp = s0 - q * s1; s0 = s1; s1 = tmp;
            tmp = t0 - q * t1; t0 = t1; t1 = tmp;
        }
        s = s0; t = t0;
        return r0;
    };
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t pr = m, pc = n;
        for (std::size_t i = t; i < m && pr == m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0) { pr = i; pc = j; break; }
        if (pr == m) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                Big s, u;
                Big g = xgcd(a[t][t], a[i][t], s, u);
                if (a[i][t] % a[t][t] == 0) {
                    g = a[t][t];
                    s = 1;
                    u = 0;
                }
                Big p = a[t][t] / g, q = a[i][t] / g;
                for (std::size_t j = t; j < n; ++j) {
                    Big x = a[t][j], y = a[i][j];
                    a[t][j] = s * x + u * y;
                    a[i][j] = -q * x + p * y;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Big s, u;
                Big g = xgcd(a[t][t], a[t][j], s, u);
                if (a[t][j] % a[t][t] == 0) {
                    g = a[t][t];
                    s = 1;
                    u = 0;
                }
                Big p = a[t][t] / g, q = a[t][j] / g;
                for (std::size_t i = t; i < m; ++i) {
                    Big x = a[i][t], y = a[i][j];
                    a[i][t] = s * x + u * y;
                    a[i][j] = -q * x + p * y;
                }
                changed = true;
            }
            for (std::size_t i = t + 1; i < m && !changed; ++i)
                if (a[i][t] != 0) changed = true;
            if (!changed) {
                // enforce divisibility of the rest by the pivot
                for (std::size_t i = t + 1; i < m && !changed; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
                            changed = true;
                            break;
                        }
            }
        }
        Big d = a[t][t];
        diag.push_back(d < 0 ? Big(-d) : d);
    }
    return diag;
}

struct Group {
    int rank = 0;
    std::vector<Big> torsion;
};

/// Homology from dense boundary matrices d[k]: C_k -> C_{k-1} (rows C_{k-1}).
inline std::vector<Group> homology_from_dense(const std::vector<int>& dims, const std::vector<Dense>& d, int deg) {
    std::vector<Group> out;
    for (int k = 0; k <= deg; ++k) {
        int rk = k >= 1 ? bareiss_rank(d[k]) : 0;
        int rk1 = bareiss_rank(d[k + 1]);
        Group g;
        g.rank = dims[k] - rk - rk1;
        for (auto& e : elementary_divisors(d[k + 1]))
            if (e > 1) g.torsion.push_back(e);
        out.push_back(g);
    }
    return out;
}

/// Homology of a finite group from the unnormalized bar complex
/// C_n = Z[G^n], d = sum of (-1)^i d_i with trivial coefficients.
inline std::vector<Group> group_homology(const std::vector<std::vector<int>>& mult, int deg) {
    const int g = static_cast<int>(mult.size());
    std::vector<int> dims;
    for (int n = 0, p = 1; n <= deg + 1; ++n, p *= g) dims.push_back(p);
    auto decode = [&](int code, int n) {
        std::vector<int> t(n);
        for (int i = n - 1; i >= 0; --i) {
            t[i] = code % g;
            code /= g;
        }
        return t;
    };
    auto encode = [&](const std::vector<int>& t) {
        int c = 0;
        for (int v : t) c = c * g + v;
        return c;
    };
    std::vector<Dense> d(deg + 2);
    for (int n = 1; n <= deg + 1; ++n) {
        d[n].assign(dims[n - 1], std::vector<Big>(dims[n], 0));
        for (int c = 0; c < dims[n]; ++c) {
            auto t = decode(c, n);
            std::vector<int> f(t.begin() + 1, t.end());
            d[n][encode(f)][c] += 1;
            for (int i = 1; i < n; ++i) {
                std::vector<int> h;
                for (int j = 0; j < n; ++j) {
                    if (j == i - 1) {
                        h.push_back(mult[t[j]][t[j + 1]]);
                        ++j;
                    } else {
                        h.push_back(t[j]);
                    }
                }
                d[n][encode(h)][c] += (i % 2) ? -1 : 1;
            }
            std::vector<int> l(t.begin(), t.end() - 1);
            d[n][encode(l)][c] += (n % 2) ? -1 : 1;
        }
    }
    d[0] = Dense();
    return homology_from_dense(dims, d, deg);
}

/// Brute-force count of injections m -> n by filtering all functions.
inline long long injection_count(int m, int n) {
    long long total = 0;
    std::vector<int> f(m, 0);
    if (m == 0) return 1;
    if (n == 0) return 0;
    for (;;) {
        std::set<int> s(f.begin(), f.end());
        if (static_cast<int>(s.size()) == m) ++total;
        int i = 0;
        while (i < m && ++f[i] == n) f[i++] = 0;
        if (i == m) break;
    }
    return total;
}

}  // namespace oracle

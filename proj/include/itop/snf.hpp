// Smith normal form invariants of sparse integer matrices.
//
// Unit pivots are eliminated sparsely first; whatever is left is reduced
// densely. Arithmetic runs on checked 64-bit integers and restarts with
// arbitrary precision if an intermediate value would overflow.
#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "itop/error.hpp"

namespace itop {

using BigInt = boost::multiprecision::cpp_int;

/// Column-major sparse matrix; each column is sorted by row, no zero entries.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> columns;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), columns(c) {}

    /// Adds v to entry (r, c); the column must be re-sorted with `finalize`.
    void add(int r, int c, std::int64_t v) { columns[c].emplace_back(r, v); }

    void finalize() {
        for (auto& col : columns) {
            std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
            std::vector<std::pair<int, std::int64_t>> merged;
            for (auto& e : col) {
                if (!merged.empty() && merged.back().first == e.first) {
                    merged.back().second += e.second;
                } else {
                    merged.push_back(e);
                }
            }
            std::erase_if(merged, [](auto& e) { return e.second == 0; });
            col = std::move(merged);
        }
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (auto& c : columns) n += c.size();
        return n;
    }
};

struct SnfResult {
    int rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next
    bool used_bigint = false;
};

namespace detail {

struct Overflow {};

inline std::int64_t ck_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t ck_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline BigInt ck_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt ck_sub(const BigInt& a, const BigInt& b) { return a - b; }

inline std::int64_t abs_of(std::int64_t a) {
    if (a == INT64_MIN) throw Overflow{};
    return a < 0 ? -a : a;
}
inline BigInt abs_of(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
inline bool is_unit(const BigInt& a) { return a == 1 || a == -1; }

// Floor-free quotient truncated toward zero; remainders are handled by
// repeated pivot selection so the sign convention does not matter.
inline std::int64_t quot(std::int64_t a, std::int64_t b) {
    if (a == INT64_MIN && b == -1) throw Overflow{};
    return a / b;
}
inline BigInt quot(const BigInt& a, const BigInt& b) { return a / b; }

template <class Int>
using Col = std::vector<std::pair<int, Int>>;

/// c := c - f * p (both sorted).
template <class Int>
void axpy(Col<Int>& c, const Int& f, const Col<Int>& p, std::vector<int>* gained) {
    Col<Int> out;
    out.reserve(c.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < c.size() || j < p.size()) {
        if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
            out.push_back(std::move(c[i++]));
        } else if (i == c.size() || p[j].first < c[i].first) {
            out.emplace_back(p[j].first, ck_sub(Int(0), ck_mul(f, p[j].second)));
            if (gained) gained->push_back(p[j].first);
            ++j;
        } else {
            Int v = ck_sub(c[i].second, ck_mul(f, p[j].second));
            if (v != 0) out.emplace_back(c[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    c = std::move(out);
}

template <class Int>
const Int* entry(const Col<Int>& c, int row) {
    auto it = std::lower_bound(c.begin(), c.end(), row, [](auto& e, int r) { return e.first < r; });
    return (it != c.end() && it->first == row) ? &it->second : nullptr;
}

/// Dense reduction to diagonal form; returns the nonzero diagonal.
template <class Int>
std::vector<Int> dense_diagonal(std::vector<std::vector<Int>> a) {
    std::vector<Int> diag;
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // pivot of minimal absolute value
        std::size_t pr = m, pc = n;
        Int best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pr == m || abs_of(a[i][j]) < best)) {
                    best = abs_of(a[i][j]);
                    pr = i;
                    pc = j;
                    if (is_unit(best)) goto found;
                }
    found:
        if (pr == m) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                Int q = quot(a[i][t], a[t][t]);
                for (std::size_t j = t; j < n; ++j)
                    if (a[t][j] != 0) a[i][j] = ck_sub(a[i][j], ck_mul(q, a[t][j]));
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Int q = quot(a[t][j], a[t][t]);
                for (std::size_t i = t; i < m; ++i)
                    if (a[i][t] != 0) a[i][j] = ck_sub(a[i][j], ck_mul(q, a[i][t]));
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
            // move the smallest remaining entry of row/column t to the pivot
            std::size_t bi = t, bj = t;
            Int b = abs_of(a[t][t]);
            for (std::size_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0 && abs_of(a[i][t]) < b) {
                    b = abs_of(a[i][t]);
                    bi = i;
                    bj = t;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0 && abs_of(a[t][j]) < b) {
                    b = abs_of(a[t][j]);
                    bi = t;
                    bj = j;
                }
            if (bi != t) std::swap(a[t], a[bi]);
            if (bj != t)
                for (auto& row : a) std::swap(row[t], row[bj]);
        }
        diag.push_back(abs_of(a[t][t]));
    }
    return diag;
}

template <class Int>
SnfResult snf_impl(const SparseMatrix& mat) {
    const int nc = mat.cols;
    std::vector<Col<Int>> cols(nc);
    std::vector<std::vector<int>> row_cols(mat.rows);
    for (int c = 0; c < nc; ++c) {
        for (auto& [r, v] : mat.columns[c]) {
            cols[c].emplace_back(r, Int(v));
            row_cols[r].push_back(c);
        }
    }
    std::vector<char> alive(nc, 1);
    using Item = std::pair<std::size_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (int c = 0; c < nc; ++c)
        if (!cols[c].empty()) heap.emplace(cols[c].size(), c);
    int rank = 0;
    std::vector<int> touched;
    std::vector<int> gained;
    while (!heap.empty()) {
        auto [len, c] = heap.top();
        heap.pop();
        if (!alive[c] || cols[c].size() != len || cols[c].empty()) continue;
        int pivot_row = -1;
        std::size_t best = 0;
        for (auto& [r, v] : cols[c])
            if (is_unit(v) && (pivot_row < 0 || row_cols[r].size() < best)) {
                pivot_row = r;
                best = row_cols[r].size();
            }
        if (pivot_row < 0) continue;  // deferred until modified
        const Int pv = *entry(cols[c], pivot_row);
        touched = row_cols[pivot_row];
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int o : touched) {
            if (o == c || !alive[o]) continue;
            const Int* e = entry(cols[o], pivot_row);
            if (!e) continue;
            Int f = ck_mul(*e, pv);
            gained.clear();
            axpy(cols[o], f, cols[c], &gained);
            for (int r : gained) row_cols[r].push_back(o);
            heap.emplace(cols[o].size(), o);
        }
        alive[c] = 0;
        row_cols[pivot_row].clear();
        ++rank;
    }
    std::vector<int> rest;
    std::vector<int> row_id(mat.rows, -1);
    int nr = 0;
    for (int c = 0; c < nc; ++c)
        if (alive[c] && !cols[c].empty()) {
            rest.push_back(c);
            for (auto& e : cols[c])
                if (row_id[e.first] < 0) row_id[e.first] = nr++;
        }
    SnfResult res;
    res.rank = rank;
    if (!rest.empty()) {
        std::vector<std::vector<Int>> dense(nr, std::vector<Int>(rest.size(), Int(0)));
        for (std::size_t j = 0; j < rest.size(); ++j)
            for (auto& [r, v] : cols[rest[j]]) dense[row_id[r]][j] = v;
        std::vector<Int> d = dense_diagonal(std::move(dense));
        res.rank += static_cast<int>(d.size());
        std::vector<BigInt> big;
        for (auto& x : d) big.emplace_back(x);
        // gcd/lcm normalization to the divisibility chain
        for (std::size_t i = 0; i < big.size(); ++i)
            for (std::size_t j = i + 1; j < big.size(); ++j) {
                BigInt g = boost::multiprecision::gcd(big[i], big[j]);
                BigInt l = big[i] / g * big[j];
                big[i] = g;
                big[j] = l;
            }
        for (auto& x : big)
            if (x > 1) res.torsion.push_back(x);
    }
    return res;
}

}  // namespace detail

/// Rank and nontrivial invariant factors of an integer matrix.
inline SnfResult smith_invariants(const SparseMatrix& m) {
    try {
        return detail::snf_impl<std::int64_t>(m);
    } catch (const detail::Overflow&) {
        SnfResult r = detail::snf_impl<BigInt>(m);
        r.used_bigint = true;
        return r;
    }
}

}  // namespace itop

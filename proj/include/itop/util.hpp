#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace itop {

/// Union-find with path halving; `find` returns the smallest element of a
/// class only after `canonicalize()`.
class UnionFind {
public:
    UnionFind() = default;
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t size() const { return parent_.size(); }

    std::size_t add() {
        parent_.push_back(parent_.size());
        return parent_.size() - 1;
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Union keeping the smaller root, so the root of a class is its minimum.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

    /// Class index per element, classes numbered by increasing minimum.
    std::vector<int> classes(int* count = nullptr) {
        std::vector<int> cls(parent_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t r = find(i);
            if (cls[r] < 0) cls[r] = next++;
            cls[i] = cls[r];
        }
        if (count) *count = next;
        return cls;
    }

private:
    std::vector<std::size_t> parent_;
};

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    v *= 0x9E3779B97F4A7C15ull;
    v ^= v >> 29;
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
}

struct VecHash {
    template <class T>
    std::size_t operator()(const std::vector<T>& v) const {
        std::uint64_t h = v.size();
        for (const auto& x : v) h = hash_mix(h, static_cast<std::uint64_t>(x));
        return static_cast<std::size_t>(h);
    }
};

struct PairHash {
    template <class A, class B>
    std::size_t operator()(const std::pair<A, B>& p) const {
        return static_cast<std::size_t>(hash_mix(hash_mix(1, static_cast<std::uint64_t>(p.first)),
                                                 static_cast<std::uint64_t>(p.second)));
    }
};

}  // namespace itop

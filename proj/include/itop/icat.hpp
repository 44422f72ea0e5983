// The category I of finite sets n = {1..n} and injections, truncated at N.
//
// Injections store their image 0-based; JSON uses the 1-based convention.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "itop/error.hpp"
#include "itop/fincat.hpp"

namespace itop {

struct Injection {
    int m = 0;
    int n = 0;
    std::vector<int> image;  // image[i] in [0, n)

    int operator()(int i) const { return image[i]; }
    bool is_identity() const {
        if (m != n) return false;
        for (int i = 0; i < m; ++i)
            if (image[i] != i) return false;
        return true;
    }
    auto operator<=>(const Injection&) const = default;
};

inline bool valid_injection(const Injection& f) {
    if (f.m < 0 || f.m > f.n || static_cast<int>(f.image.size()) != f.m) return false;
    std::vector<char> seen(f.n, 0);
    for (int v : f.image) {
        if (v < 0 || v >= f.n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

inline std::string to_string(const Injection& f) {
    std::string s = "(";
    for (int i = 0; i < f.m; ++i) s += (i ? "," : "") + std::to_string(f.image[i] + 1);
    return s + "):" + std::to_string(f.m) + "->" + std::to_string(f.n);
}

inline Injection identity_injection(int n) {
    Injection f{n, n, std::vector<int>(n)};
    std::iota(f.image.begin(), f.image.end(), 0);
    return f;
}

/// The standard inclusion m -> n, i -> i.
inline Injection standard_inclusion(int m, int n) {
    if (m > n) throw InvalidInput("standard_inclusion: m > n");
    Injection f{m, n, std::vector<int>(m)};
    std::iota(f.image.begin(), f.image.end(), 0);
    return f;
}

/// All injections m -> n in lexicographic order of image sequences.
inline std::vector<Injection> enumerate_injections(int m, int n) {
    std::vector<Injection> out;
    if (m < 0 || n < 0 || m > n) return out;
    std::vector<int> cur;
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back({m, n, cur});
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cur.push_back(v);
            self(self);
            cur.pop_back();
            used[v] = 0;
        }
    };
    rec(rec);
    return out;
}

/// g o f
inline Injection compose(const Injection& g, const Injection& f) {
    if (f.n != g.m) throw InvalidInput("compose: arity mismatch " + to_string(g) + " o " + to_string(f));
    Injection h{f.m, g.n, std::vector<int>(f.m)};
    for (int i = 0; i < f.m; ++i) h.image[i] = g.image[f.image[i]];
    return h;
}

/// Block sum f | g: m1 + m2 -> n1 + n2.
inline Injection concat(const Injection& f, const Injection& g) {
    Injection h{f.m + g.m, f.n + g.n, f.image};
    for (int v : g.image) h.image.push_back(v + f.n);
    return h;
}

/// tau_{m,n}: m + n -> n + m moving the first m elements past the last n.
inline Injection shuffle(int m, int n) {
    Injection t{m + n, m + n, std::vector<int>(m + n)};
    for (int i = 0; i < m; ++i) t.image[i] = n + i;
    for (int j = 0; j < n; ++j) t.image[m + j] = j;
    return t;
}

/// Number of injections m -> n.
inline long long injection_count(int m, int n) {
    if (m > n) return 0;
    long long c = 1;
    for (int i = 0; i < m; ++i) c *= n - i;
    return c;
}

/// Lexicographic rank of an injection among enumerate_injections(m, n).
inline int injection_rank(const Injection& f) {
    long long r = 0;
    std::vector<char> used(f.n, 0);
    for (int i = 0; i < f.m; ++i) {
        int smaller = 0;
        for (int v = 0; v < f.image[i]; ++v)
            if (!used[v]) ++smaller;
        r += smaller * injection_count(f.m - i - 1, f.n - i - 1);
        used[f.image[i]] = 1;
    }
    return static_cast<int>(r);
}

/// I restricted to objects 0..N with global morphism ids and a composition table.
class TruncatedI {
public:
    explicit TruncatedI(int N) : N_(N) {
        if (N < 0) throw InvalidInput("TruncatedI: negative bound");
        offset_.assign(N + 1, std::vector<int>(N + 1, 0));
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= n; ++m) {
                offset_[m][n] = static_cast<int>(morph_.size());
                for (auto& f : enumerate_injections(m, n)) morph_.push_back(std::move(f));
            }
        const int total = static_cast<int>(morph_.size());
        comp_.assign(static_cast<std::size_t>(total) * total, -1);
        into_.resize(N + 1);
        out_.resize(N + 1);
        for (int f = 0; f < total; ++f) {
            into_[morph_[f].n].push_back(f);
            out_[morph_[f].m].push_back(f);
        }
        for (int f = 0; f < total; ++f)
            for (int g : out_[morph_[f].n]) comp_[static_cast<std::size_t>(g) * total + f] = id_of(compose(morph_[g], morph_[f]));
    }

    int bound() const { return N_; }
    int morphisms() const { return static_cast<int>(morph_.size()); }
    const Injection& morphism(int id) const { return morph_[id]; }
    int src(int id) const { return morph_[id].m; }
    int dst(int id) const { return morph_[id].n; }
    int id_of(const Injection& f) const { return offset_[f.m][f.n] + injection_rank(f); }
    int identity(int n) const { return offset_[n][n]; }  // rank 0 is the identity
    int inclusion(int m, int n) const { return offset_[m][n]; }  // rank 0 is the standard inclusion
    int hom_begin(int m, int n) const { return offset_[m][n]; }
    int hom_size(int m, int n) const { return static_cast<int>(injection_count(m, n)); }
    int comp(int g, int f) const { return comp_[static_cast<std::size_t>(g) * morphisms() + f]; }
    const std::vector<int>& into(int n) const { return into_[n]; }
    const std::vector<int>& out(int m) const { return out_[m]; }
    bool is_identity(int id) const { return morph_[id].is_identity(); }

    /// Shared cached instance for small bounds.
    static std::shared_ptr<const TruncatedI> get(int N) {
        static std::mutex mu;
        static std::map<int, std::shared_ptr<const TruncatedI>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& p = cache[N];
        if (!p) p = std::make_shared<const TruncatedI>(N);
        return p;
    }

    FinCategory as_category() const {
        FinCategory c;
        for (int n = 0; n <= N_; ++n) c.add_object(std::to_string(n));
        for (int f = 0; f < morphisms(); ++f) c.add_morphism(src(f), dst(f));
        for (int n = 0; n <= N_; ++n) c.identity[n] = identity(n);
        for (int f = 0; f < morphisms(); ++f)
            for (int g : out_[dst(f)]) c.set_comp(g, f, comp(g, f));
        return c;
    }

private:
    int N_;
    std::vector<Injection> morph_;
    std::vector<std::vector<int>> offset_;
    std::vector<int> comp_;
    std::vector<std::vector<int>> into_, out_;
};

/// Closure of the table under composition and identities.
inline std::vector<std::string> validate_truncated(const TruncatedI& t) {
    std::vector<std::string> d;
    for (int n = 0; n <= t.bound(); ++n)
        for (int m = 0; m <= n; ++m)
            if (t.hom_size(m, n) != static_cast<int>(enumerate_injections(m, n).size()))
                d.push_back("hom set size mismatch for " + std::to_string(m) + "->" + std::to_string(n));
    for (int f = 0; f < t.morphisms(); ++f) {
        if (!valid_injection(t.morphism(f))) d.push_back("invalid injection " + std::to_string(f));
        for (int g : t.out(t.dst(f))) {
            int gf = t.comp(g, f);
            if (gf < 0 || t.morphism(gf) != compose(t.morphism(g), t.morphism(f)))
                d.push_back("composition table wrong at (" + std::to_string(g) + "," + std::to_string(f) + ")");
        }
    }
    return d;
}

/// The comma category (n | I<=N): objects (m, alpha: n -> m), morphisms
/// beta with beta o alpha = alpha'.
struct CommaUnder {
    FinCategory cat;
    std::vector<Injection> objects;  // alpha per object
};

inline CommaUnder comma_under(int n, int N) {
    if (n > N) throw InvalidInput("comma_under: n > N");
    auto t = TruncatedI::get(N);
    CommaUnder c;
    std::map<Injection, int> obj_id;
    for (int m = n; m <= N; ++m)
        for (auto& a : enumerate_injections(n, m)) {
            obj_id[a] = c.cat.add_object(to_string(a));
            c.objects.push_back(a);
        }
    std::map<std::pair<int, int>, int> mor;  // (object, injection id) -> morphism
    std::vector<int> beta_of;
    for (int o = 0; o < c.cat.objects; ++o) {
        const Injection& a = c.objects[o];
        for (int b : t->out(a.n)) {
            Injection target = compose(t->morphism(b), a);
            int d = obj_id.at(target);
            int id = c.cat.add_morphism(o, d);
            mor[{o, b}] = id;
            beta_of.push_back(b);
            if (t->is_identity(b)) c.cat.identity[o] = id;
        }
    }
    for (int f = 0; f < c.cat.morphisms(); ++f)
        for (int g : c.cat.out[c.cat.dst[f]]) c.cat.set_comp(g, f, mor.at({c.cat.src[f], t->comp(beta_of[g], beta_of[f])}));
    return c;
}

/// The comma category (concat | n): objects (n1, n2, alpha: n1 + n2 -> n),
/// morphisms (b1, b2): (n1, n2, alpha) -> (n1', n2', alpha') with
/// alpha' o (b1 | b2) = alpha.
struct CommaConcat {
    struct Object {
        int n1, n2;
        Injection alpha;
    };
    FinCategory cat;
    std::vector<Object> objects;
    std::vector<std::pair<Injection, Injection>> morphism_data;
};

inline CommaConcat comma_concat(int n) {
    CommaConcat c;
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n1 + n2 <= n; ++n2)
            for (auto& a : enumerate_injections(n1 + n2, n)) {
                c.cat.add_object(std::to_string(n1) + "+" + std::to_string(n2) + ":" + to_string(a));
                c.objects.push_back({n1, n2, a});
            }
    std::map<std::tuple<int, int, Injection, Injection>, int> mor;
    for (int o = 0; o < c.cat.objects; ++o) {
        const auto& s = c.objects[o];
        for (int p = 0; p < c.cat.objects; ++p) {
            const auto& d = c.objects[p];
            if (d.n1 < s.n1 || d.n2 < s.n2) continue;
            for (auto& b1 : enumerate_injections(s.n1, d.n1))
                for (auto& b2 : enumerate_injections(s.n2, d.n2)) {
                    if (compose(d.alpha, concat(b1, b2)) != s.alpha) continue;
                    int id = c.cat.add_morphism(o, p);
                    mor[{o, p, b1, b2}] = id;
                    c.morphism_data.emplace_back(b1, b2);
                    if (o == p && b1.is_identity() && b2.is_identity()) c.cat.identity[o] = id;
                }
        }
    }
    for (int f = 0; f < c.cat.morphisms(); ++f)
        for (int g : c.cat.out[c.cat.dst[f]]) {
            auto& [f1, f2] = c.morphism_data[f];
            auto& [g1, g2] = c.morphism_data[g];
            c.cat.set_comp(g, f, mor.at({c.cat.src[f], c.cat.dst[g], compose(g1, f1), compose(g2, f2)}));
        }
    return c;
}

}  // namespace itop

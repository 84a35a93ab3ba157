#pragma once

#include <complex>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "littlewood/characters.hpp"
#include "littlewood/group.hpp"

namespace lw {

/// Complex-valued function constant on conjugacy classes, with an optional
/// exact rational-real layer used by the exact lambda/phi paths.
struct ClassFunction {
    FiniteGroup G;
    std::vector<std::complex<double>> v;      // one value per class
    std::optional<std::vector<Rat>> exact_re;  // set when all values are rational reals

    bool has_exact() const { return exact_re.has_value(); }
    int64_t k() const { return int64_t(v.size()); }

    static ClassFunction zeros(const FiniteGroup& G) {
        ClassFunction f;
        f.G = G;
        f.v.assign(size_t(G.classes().k()), {0.0, 0.0});
        f.exact_re = std::vector<Rat>(size_t(G.classes().k()), Rat(0));
        return f;
    }

    static ClassFunction from_exact(const FiniteGroup& G, std::vector<Rat> vals) {
        ClassFunction f;
        f.G = G;
        if (int64_t(vals.size()) != G.classes().k())
            throw std::invalid_argument("class function length mismatch");
        f.v.resize(vals.size());
        for (size_t i = 0; i < vals.size(); ++i) f.v[i] = {to_double(vals[i]), 0.0};
        f.exact_re = std::move(vals);
        return f;
    }

    static ClassFunction from_complex(const FiniteGroup& G,
                                      std::vector<std::complex<double>> vals) {
        ClassFunction f;
        f.G = G;
        if (int64_t(vals.size()) != G.classes().k())
            throw std::invalid_argument("class function length mismatch");
        f.v = std::move(vals);
        return f;
    }

    static ClassFunction indicator(const FiniteGroup& G, const std::vector<char>& in_D) {
        ClassFunction f = zeros(G);
        for (size_t c = 0; c < in_D.size(); ++c)
            if (in_D[c]) {
                f.v[c] = {1.0, 0.0};
                (*f.exact_re)[c] = 1;
            }
        return f;
    }

    static ClassFunction constant(const FiniteGroup& G, const Rat& value) {
        ClassFunction f = zeros(G);
        for (size_t c = 0; c < f.v.size(); ++c) {
            f.v[c] = {to_double(value), 0.0};
            (*f.exact_re)[c] = value;
        }
        return f;
    }

    ClassFunction& operator+=(const ClassFunction& o) {
        for (size_t c = 0; c < v.size(); ++c) v[c] += o.v[c];
        if (exact_re && o.exact_re)
            for (size_t c = 0; c < v.size(); ++c) (*exact_re)[c] += (*o.exact_re)[c];
        else
            exact_re.reset();
        return *this;
    }
    ClassFunction& operator-=(const ClassFunction& o) {
        for (size_t c = 0; c < v.size(); ++c) v[c] -= o.v[c];
        if (exact_re && o.exact_re)
            for (size_t c = 0; c < v.size(); ++c) (*exact_re)[c] -= (*o.exact_re)[c];
        else
            exact_re.reset();
        return *this;
    }
    friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
    friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }

    ClassFunction& scale(const Rat& s) {
        double sd = to_double(s);
        for (auto& z : v) z *= sd;
        if (exact_re)
            for (auto& r : *exact_re) r *= s;
        return *this;
    }
    ClassFunction& scale(double s) {
        for (auto& z : v) z *= s;
        exact_re.reset();
        return *this;
    }

    /// Pointwise product (both on the same group).
    friend ClassFunction pointwise(const ClassFunction& a, const ClassFunction& b) {
        ClassFunction f;
        f.G = a.G;
        f.v.resize(a.v.size());
        for (size_t c = 0; c < a.v.size(); ++c) f.v[c] = a.v[c] * b.v[c];
        if (a.exact_re && b.exact_re) {
            f.exact_re = std::vector<Rat>(a.v.size());
            for (size_t c = 0; c < a.v.size(); ++c)
                (*f.exact_re)[c] = (*a.exact_re)[c] * (*b.exact_re)[c];
        }
        return f;
    }

    /// Mean value mu(f) = (1/|G|) sum_g f(g).
    std::complex<double> mu() const {
        const ConjugacyData& cd = G.classes();
        std::complex<double> s(0, 0);
        for (ClassIdx c = 0; c < cd.k(); ++c) s += double(cd.size(c)) * v[size_t(c)];
        return s / double(G.order());
    }
    std::optional<Rat> mu_exact() const {
        if (!exact_re) return std::nullopt;
        const ConjugacyData& cd = G.classes();
        Rat s(0);
        for (ClassIdx c = 0; c < cd.k(); ++c) s += Rat(cd.size(c)) * (*exact_re)[size_t(c)];
        return s / Rat(G.order());
    }

    double max_abs() const {
        double m = 0;
        for (auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
};

/// Per-group character table cache (tables are immutable and shareable).
inline std::shared_ptr<const CharacterTable> get_table(const FiniteGroup& G) {
    static std::mutex mu;
    static std::unordered_map<const GroupImpl*, std::shared_ptr<const CharacterTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(&G.impl());
    if (it != cache.end()) return it->second;
    auto sp = std::make_shared<const CharacterTable>(CharacterTable::best(G));
    if (cache.size() >= 64) cache.erase(cache.begin());
    cache.emplace(&G.impl(), sp);
    return sp;
}

}  // namespace lw

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "littlewood/rational.hpp"

namespace lw {

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
/// Computed as (x^m - 1) / prod_{d|m, d<m} Phi_d, memoized.
inline const std::vector<Int>& cyclotomic_poly(int m) {
    static std::map<int, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Fill all divisors of m bottom-up: Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e.
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0 || cache.count(d)) continue;
        std::vector<Int> p(d + 1, 0);
        p[0] = -1;
        p[d] = 1;
        for (int e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            const std::vector<Int>& q = cache.at(e);
            std::vector<Int> quot(p.size() - q.size() + 1, 0);
            for (int i = int(quot.size()) - 1; i >= 0; --i) {
                Int c = p[i + q.size() - 1];  // q is monic
                quot[i] = c;
                if (c != 0)
                    for (size_t j = 0; j < q.size(); ++j) p[i + j] -= c * q[j];
            }
            p = std::move(quot);
        }
        cache.emplace(d, std::move(p));
    }
    return cache.at(m);
}

/// An element of Q(zeta_m), stored sparsely as sum_j coeff_j * zeta_m^j.
/// The representation is not canonical until reduced mod Phi_m.
class Cyclo {
public:
    Cyclo() : m_(1) {}
    explicit Cyclo(int m) : m_(m) {
        if (m < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    }
    Cyclo(int m, const Rat& rational) : Cyclo(m) {
        if (rational != 0) terms_.emplace_back(0, rational);
    }

    static Cyclo root_of_unity(int m, long exp, const Rat& coeff = Rat(1)) {
        Cyclo z(m);
        if (coeff != 0) z.terms_.emplace_back(int(((exp % m) + m) % m), coeff);
        return z;
    }

    int order() const { return m_; }
    bool structurally_zero() const { return terms_.empty(); }

    Cyclo& operator+=(const Cyclo& o) {
        if (o.m_ != m_) {
            *this = promoted(lcm64(m_, o.m_));
            return *this += o.promoted(m_);
        }
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Cyclo& operator-=(const Cyclo& o) {
        Cyclo neg = o;
        for (auto& [e, c] : neg.terms_) c = -c;
        return *this += neg;
    }
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }

    Cyclo& operator*=(const Rat& s) {
        if (s == 0) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Cyclo operator*(Cyclo a, const Rat& s) { return a *= s; }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        if (a.m_ != b.m_) {
            int m = int(lcm64(a.m_, b.m_));
            return a.promoted(m) * b.promoted(m);
        }
        Cyclo out(a.m_);
        std::vector<Rat> dense(a.m_, Rat(0));
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) dense[(ea + eb) % a.m_] += ca * cb;
        for (int e = 0; e < a.m_; ++e)
            if (dense[e] != 0) out.terms_.emplace_back(e, dense[e]);
        return out;
    }

    Cyclo conj() const {
        Cyclo out(m_);
        for (auto& [e, c] : terms_) out.add_term(e == 0 ? 0 : m_ - e, c);
        return out;
    }

    /// Coefficients in the power basis 1, zeta, ..., zeta^{phi(m)-1} (canonical).
    std::vector<Rat> reduced() const {
        const std::vector<Int>& phi = cyclotomic_poly(m_);
        int deg = int(phi.size()) - 1;
        std::vector<Rat> dense(m_, Rat(0));
        for (auto& [e, c] : terms_) dense[e] += c;
        // remainder of dense by monic phi
        for (int i = m_ - 1; i >= deg; --i) {
            if (dense[i] == 0) continue;
            Rat c = dense[i];
            for (int j = 0; j <= deg; ++j) dense[i - deg + j] -= c * Rat(phi[j]);
        }
        dense.resize(deg);
        return dense;
    }

    bool is_zero() const {
        if (terms_.empty()) return true;
        for (const Rat& c : reduced())
            if (c != 0) return false;
        return true;
    }

    std::optional<Rat> as_rational() const {
        std::vector<Rat> r = reduced();
        for (size_t i = 1; i < r.size(); ++i)
            if (r[i] != 0) return std::nullopt;
        return r.empty() ? Rat(0) : r[0];
    }

    /// |z| when it is provably rational (z*conj(z) reduces to a rational square).
    std::optional<Rat> abs_exact() const {
        Cyclo a2 = (*this) * conj();
        auto r = a2.as_rational();
        if (!r) return std::nullopt;
        return rat_sqrt_exact(*r);
    }

    std::complex<double> to_complex() const {
        std::complex<double> z(0.0, 0.0);
        const double w = 2.0 * M_PI / double(m_);
        for (auto& [e, c] : terms_)
            z += to_double(c) * std::complex<double>(std::cos(w * e), std::sin(w * e));
        return z;
    }

    size_t term_count() const { return terms_.size(); }

private:
    Cyclo promoted(int64_t m) const {
        Cyclo out{int(m)};
        int64_t f = m / m_;
        for (auto& [e, c] : terms_) out.add_term(int(e * f), c);
        return out;
    }

    void add_term(int e, const Rat& c) {
        if (c == 0) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const auto& t, int x) { return t.first < x; });
        if (it != terms_.end() && it->first == e) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        } else {
            terms_.emplace(it, e, c);
        }
    }

    int m_;
    std::vector<std::pair<int, Rat>> terms_;  // sorted by exponent
};

}  // namespace lw

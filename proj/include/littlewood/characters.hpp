#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "littlewood/cyclotomic.hpp"
#include "littlewood/group.hpp"

namespace lw {

using Partition = std::vector<int>;  // weakly decreasing positive parts

// ---------------------------------------------------------------------------
// Murnaghan-Nakayama rule via beta-numbers.
// ---------------------------------------------------------------------------

namespace mn_detail {

inline std::vector<int> beta_set(const Partition& lambda, int rows) {
    // b_i = lambda_i + (rows - 1 - i), padded with zero parts
    std::vector<int> b(static_cast<size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        int part = i < int(lambda.size()) ? lambda[size_t(i)] : 0;
        b[size_t(i)] = part + (rows - 1 - i);
    }
    return b;  // strictly decreasing
}

inline Partition partition_from_beta(std::vector<int> b) {
    std::sort(b.rbegin(), b.rend());
    Partition lam;
    int rows = int(b.size());
    for (int i = 0; i < rows; ++i) {
        int part = b[size_t(i)] - (rows - 1 - i);
        if (part > 0) lam.push_back(part);
    }
    return lam;
}

inline int64_t mn_rec(const Partition& lambda, const std::vector<int>& mu, size_t mu_pos,
                      std::map<std::pair<Partition, size_t>, int64_t>* memo,
                      const std::vector<int>* mu_ref) {
    if (mu_pos == mu_ref->size()) return lambda.empty() ? 1 : 0;
    auto key = std::make_pair(lambda, mu_pos);
    auto it = memo->find(key);
    if (it != memo->end()) return it->second;

    int m = (*mu_ref)[mu_pos];
    int rows = int(lambda.size()) + m;  // enough beta slots
    std::vector<int> b = beta_set(lambda, rows);
    std::vector<bool> inb(size_t(b.front() + m + 1), false);
    for (int x : b) inb[size_t(x)] = true;

    int64_t total = 0;
    for (size_t i = 0; i < b.size(); ++i) {
        int from = b[i], to = b[i] - m;
        if (to < 0 || inb[size_t(to)]) continue;
        // height = number of beta elements strictly between to and from
        int ht = 0;
        for (int x : b)
            if (x > to && x < from) ++ht;
        std::vector<int> nb = b;
        nb[i] = to;
        Partition next = partition_from_beta(std::move(nb));
        int64_t sub = mn_rec(next, mu, mu_pos + 1, memo, mu_ref);
        total += (ht % 2 == 0) ? sub : -sub;
    }
    (*memo)[key] = total;
    return total;
}

}  // namespace mn_detail

/// Exact symmetric-group character value chi_lambda(mu) by recursive
/// border-strip removal; |lambda| must equal |mu|.
inline int64_t mn_value(const Partition& lambda, const std::vector<int>& mu) {
    int64_t nl = 0, nm = 0;
    for (int p : lambda) {
        if (p <= 0) throw std::invalid_argument("partition parts must be positive");
        nl += p;
    }
    for (size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) throw std::invalid_argument("partition must be weakly decreasing");
    for (int p : mu) nm += p;
    if (nl != nm) throw std::invalid_argument("partition and cycle type must have equal size");
    std::vector<int> mu_sorted = mu;
    std::sort(mu_sorted.rbegin(), mu_sorted.rend());
    std::map<std::pair<Partition, size_t>, int64_t> memo;
    return mn_detail::mn_rec(lambda, mu_sorted, 0, &memo, &mu_sorted);
}

// ---------------------------------------------------------------------------
// Character tables.
// ---------------------------------------------------------------------------

struct TableReport {
    double row_residual = 0.0;
    double col_residual = 0.0;
    bool dim_square_ok = false;
    bool pass = false;
};

class CharacterTable {
public:
    FiniteGroup group;
    std::string engine;  // "abelian" | "mn" | "dixon"
    bool exact = false;

    int64_t k() const { return k_; }
    int64_t dim(int64_t pi) const { return implicit_ ? 1 : dims_[size_t(pi)]; }
    int64_t cyclo_order() const { return m_; }
    bool implicit_abelian() const { return implicit_; }

    std::complex<double> value(int64_t pi, int64_t c) const {
        if (!implicit_) return vals_[size_t(pi)][size_t(c)];
        return roots_[size_t(char_exponent(pi, c))];
    }

    Cyclo exact_value(int64_t pi, int64_t c) const {
        if (!exact) throw std::logic_error("table is not exact");
        if (!implicit_) return evals_[size_t(pi)][size_t(c)];
        return Cyclo::root_of_unity(int(m_), long(char_exponent(pi, c)));
    }

    /// Implicit-abelian internals, used by the sparse Fourier path.
    const std::vector<int64_t>& abelian_factors() const { return afactors_; }
    const std::vector<int64_t>& abelian_weights() const { return aweights_; }
    const std::vector<std::complex<double>>& unit_roots() const { return roots_; }

    int64_t char_exponent(int64_t pi, int64_t c) const {
        // chi_a(x) = zeta_m ^ sum_i a_i x_i (m/d_i)
        int64_t e = 0;
        for (size_t i = 0; i < afactors_.size(); ++i) {
            int64_t ai = pi / astrides_[i];
            pi %= astrides_[i];
            int64_t xi = c / astrides_[i];
            c %= astrides_[i];
            e = (e + __int128(ai) * xi % m_ * aweights_[i]) % m_;
        }
        return e;
    }

    // -- engines ------------------------------------------------------------

    static CharacterTable abelian(const FiniteGroup& G) {
        auto* ab = dynamic_cast<const AbelianGroup*>(&G.impl());
        if (!ab) {
            if (!G.is_abelian())
                throw std::invalid_argument("abelian engine requires an abelian group");
            throw std::invalid_argument(
                "abelian engine needs an invariant-factor presentation; use the dixon engine");
        }
        CharacterTable t;
        t.group = G;
        t.engine = "abelian";
        t.exact = true;
        t.implicit_ = true;
        t.k_ = G.order();
        t.afactors_ = ab->factors();
        t.m_ = 1;
        for (int64_t d : t.afactors_) t.m_ = lcm64(t.m_, d);
        t.aweights_.resize(t.afactors_.size());
        t.astrides_.resize(t.afactors_.size());
        int64_t s = 1;
        for (size_t i = t.afactors_.size(); i-- > 0;) {
            t.astrides_[i] = s;
            s *= t.afactors_[i];
        }
        for (size_t i = 0; i < t.afactors_.size(); ++i) t.aweights_[i] = t.m_ / t.afactors_[i];
        t.roots_.resize(size_t(t.m_));
        for (int64_t j = 0; j < t.m_; ++j) {
            double a = 2.0 * M_PI * double(j) / double(t.m_);
            t.roots_[size_t(j)] = {std::cos(a), std::sin(a)};
        }
        return t;
    }

    static CharacterTable symmetric(const FiniteGroup& G) {
        auto* sym = dynamic_cast<const SymmetricGroup*>(&G.impl());
        if (!sym) throw std::invalid_argument("mn engine requires a symmetric group");
        int n = sym->degree();
        const ConjugacyData& cd = G.classes();
        CharacterTable t;
        t.group = G;
        t.engine = "mn";
        t.exact = true;
        t.m_ = 1;
        t.k_ = cd.k();
        // irreps ordered by partition, descending lexicographic: (n) first
        auto parts = partitions_of(n);
        std::sort(parts.begin(), parts.end(), [](const Partition& a, const Partition& b) { return a > b; });
        t.partitions_ = parts;
        t.dims_.resize(parts.size());
        t.vals_.assign(parts.size(), std::vector<std::complex<double>>(size_t(t.k_)));
        t.evals_.assign(parts.size(), std::vector<Cyclo>(size_t(t.k_)));
        for (size_t p = 0; p < parts.size(); ++p) {
            for (ClassIdx c = 0; c < t.k_; ++c) {
                int64_t v = mn_value(parts[p], sym->type_of_class(c));
                t.vals_[p][size_t(c)] = double(v);
                t.evals_[p][size_t(c)] = Cyclo(1, Rat(v));
            }
            t.dims_[p] = int64_t(t.vals_[p][0].real());
        }
        int64_t sq = 0;
        for (int64_t d : t.dims_) sq += d * d;
        if (sq != G.order()) throw std::logic_error("mn table dimension check failed");
        return t;
    }

    static CharacterTable dixon(const FiniteGroup& G);

    /// Engine dispatch: exact abelian when the presentation allows, MN for
    /// symmetric groups, Dixon otherwise.
    static CharacterTable best(const FiniteGroup& G) {
        if (dynamic_cast<const AbelianGroup*>(&G.impl())) return abelian(G);
        if (dynamic_cast<const SymmetricGroup*>(&G.impl())) return symmetric(G);
        return dixon(G);
    }

    static CharacterTable from_dense(const FiniteGroup& G,
                                     std::vector<std::vector<std::complex<double>>> values,
                                     std::string engine = "dense") {
        CharacterTable t;
        t.group = G;
        t.engine = std::move(engine);
        t.exact = false;
        t.k_ = int64_t(values.size());
        t.vals_ = std::move(values);
        t.dims_.resize(size_t(t.k_));
        for (int64_t p = 0; p < t.k_; ++p)
            t.dims_[size_t(p)] = int64_t(std::llround(t.vals_[size_t(p)][0].real()));
        return t;
    }

    const Partition& partition_of(int64_t pi) const { return partitions_.at(size_t(pi)); }

    TableReport verify(int64_t sample_cap = 200) const;

private:
    int64_t k_ = 0;
    std::vector<int64_t> dims_;
    std::vector<std::vector<std::complex<double>>> vals_;
    std::vector<std::vector<Cyclo>> evals_;
    std::vector<Partition> partitions_;  // mn engine only
    bool implicit_ = false;
    std::vector<int64_t> afactors_, aweights_, astrides_;
    int64_t m_ = 1;
    std::vector<std::complex<double>> roots_;
};

/// Report-only orthogonality / dimension verification.
inline TableReport CharacterTable::verify(int64_t sample_cap) const {
    TableReport r;
    const ConjugacyData& cd = group.classes();
    int64_t n = group.order();
    // row orthogonality on all pairs up to a sample cap
    int64_t kk = k();
    auto inner = [&](int64_t p1, int64_t p2) {
        std::complex<double> s(0, 0);
        for (ClassIdx c = 0; c < kk; ++c)
            s += double(cd.size(c)) * value(p1, c) * std::conj(value(p2, c));
        return s / double(n);
    };
    if (kk <= sample_cap) {
        for (int64_t a = 0; a < kk; ++a)
            for (int64_t b = a; b < kk; ++b) {
                double target = a == b ? 1.0 : 0.0;
                r.row_residual = std::max(r.row_residual, std::abs(inner(a, b) - target));
            }
        // column orthogonality: sum_pi chi(c1) conj(chi(c2)) = |G|/|c1| delta
        for (ClassIdx c1 = 0; c1 < kk; ++c1)
            for (ClassIdx c2 = c1; c2 < kk; ++c2) {
                std::complex<double> s(0, 0);
                for (int64_t p = 0; p < kk; ++p) s += value(p, c1) * std::conj(value(p, c2));
                double target = c1 == c2 ? double(n) / double(cd.size(c1)) : 0.0;
                r.col_residual = std::max(r.col_residual, std::abs(s - target));
            }
    } else {
        uint64_t s = 0x853c49e6748fea9bull;
        for (int i = 0; i < 2000; ++i) {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            int64_t a = int64_t(s % uint64_t(kk));
            int64_t b = int64_t((s >> 17) % uint64_t(kk));
            double target = a == b ? 1.0 : 0.0;
            r.row_residual = std::max(r.row_residual, std::abs(inner(a, b) - target));
        }
        r.col_residual = r.row_residual;
    }
    int64_t sq = 0;
    for (int64_t p = 0; p < kk; ++p) {
        sq += dim(p) * dim(p);
        double id = std::abs(value(p, 0) - double(dim(p)));
        r.row_residual = std::max(r.row_residual, id);
    }
    r.dim_square_ok = (sq == n);
    r.pass = r.dim_square_ok && r.row_residual < 1e-8 && r.col_residual < 1e-7;
    return r;
}

}  // namespace lw

#include "littlewood/dixon.hpp"

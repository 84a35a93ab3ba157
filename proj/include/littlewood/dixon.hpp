#pragma once

#include "littlewood/characters.hpp"

#include <cmath>
#include <map>

namespace lw {
namespace modp {

inline uint64_t mulp(uint64_t a, uint64_t b, uint64_t p) { return (__uint128_t(a) * b) % p; }
inline uint64_t addp(uint64_t a, uint64_t b, uint64_t p) { return (a + b) % p; }
inline uint64_t subp(uint64_t a, uint64_t b, uint64_t p) { return (a + p - b) % p; }
inline uint64_t powp(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulp(r, a, p);
        a = mulp(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t invp(uint64_t a, uint64_t p) { return powp(a, p - 2, p); }

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<uint64_t>;  // coefficients, low degree first

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
    // f monic; empty operands mean the zero polynomial
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulp(a[i], b[j], p)) % p;
    }
    size_t df = f.size() - 1;
    for (size_t i = c.size(); i-- > df;) {
        if (!c[i]) continue;
        uint64_t q = c[i];
        for (size_t j = 0; j < f.size(); ++j)
            c[i - df + j] = subp(c[i - df + j], mulp(q, f[j], p), p);
    }
    c.resize(df);
    poly_trim(c);
    return c;
}
inline Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}
inline Poly poly_gcd(Poly a, Poly b, uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a mod b
        uint64_t lead = invp(b.back(), p);
        while (a.size() >= b.size()) {
            uint64_t q = mulp(a.back(), lead, p);
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[off + j] = subp(a[off + j], mulp(q, b[j], p), p);
            poly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty() && a.back() != 1) {
        uint64_t lead = invp(a.back(), p);
        for (auto& c : a) c = mulp(c, lead, p);
    }
    return a;
}

/// All distinct roots of f in F_p (f arbitrary; multiplicities discarded).
inline std::vector<uint64_t> poly_roots(const Poly& f_in, uint64_t p) {
    Poly f = f_in;
    poly_trim(f);
    std::vector<uint64_t> roots;
    if (f.size() <= 1) return roots;
    if (f.size() == 2) {
        roots.push_back(mulp(subp(0, f[0], p), invp(f[1], p), p));
        return roots;
    }
    // product of distinct linear factors: gcd(x^p - x, f)
    Poly xp = poly_powmod(Poly{0, 1}, p, f, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = subp(xp[1], 1, p);
    Poly g = poly_gcd(xp, f, p);
    if (g.size() <= 1) return roots;
    // deterministic sequence of shifts for equal-degree splitting
    uint64_t shift = 1;
    std::vector<Poly> stack{g};
    while (!stack.empty()) {
        Poly h = stack.back();
        stack.pop_back();
        if (h.size() == 2) {
            roots.push_back(mulp(subp(0, h[0], p), invp(h[1], p), p));
            continue;
        }
        // (x + a)^((p-1)/2) - 1 splits the roots into two halves
        Poly base{shift % p, 1};
        shift = shift * 6364136223846793005ull + 1442695040888963407ull;
        Poly t = poly_powmod(base, (p - 1) / 2, h, p);
        if (t.empty()) t = Poly{0};
        t[0] = subp(t[0], 1, p);
        Poly d = poly_gcd(t, h, p);
        if (d.size() <= 1 || d.size() == h.size()) {
            stack.push_back(h);  // unlucky shift; try the next one
            continue;
        }
        // h / d
        Poly q;
        Poly r = h;
        uint64_t lead = invp(d.back(), p);
        q.assign(r.size() - d.size() + 1, 0);
        for (size_t i = q.size(); i-- > 0;) {
            uint64_t c = mulp(r[i + d.size() - 1], lead, p);
            q[i] = c;
            if (c)
                for (size_t j = 0; j < d.size(); ++j)
                    r[i + j] = subp(r[i + j], mulp(c, d[j], p), p);
        }
        stack.push_back(d);
        stack.push_back(q);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

using Mat = std::vector<std::vector<uint64_t>>;

/// Characteristic polynomial mod p via Hessenberg reduction, monic, low first.
inline Poly charpoly(Mat A, uint64_t p) {
    size_t n = A.size();
    // similarity reduction to upper Hessenberg
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t piv = j + 1;
        while (piv < n && A[piv][j] == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            std::swap(A[piv], A[j + 1]);
            for (size_t r = 0; r < n; ++r) std::swap(A[r][piv], A[r][j + 1]);
        }
        uint64_t ipiv = invp(A[j + 1][j], p);
        for (size_t i = j + 2; i < n; ++i) {
            if (!A[i][j]) continue;
            uint64_t t = mulp(A[i][j], ipiv, p);
            for (size_t c = 0; c < n; ++c) A[i][c] = subp(A[i][c], mulp(t, A[j + 1][c], p), p);
            for (size_t r = 0; r < n; ++r) A[r][j + 1] = addp(A[r][j + 1], mulp(t, A[r][i], p), p);
        }
    }
    // p_m = (x - H[m-1][m-1]) p_{m-1} - sum_i H[i-1][m-1] (prod_j H[j][j-1]) p_{i-1}
    std::vector<Poly> ps(n + 1);
    ps[0] = Poly{1};
    for (size_t m = 1; m <= n; ++m) {
        Poly pm(m + 1, 0);
        const Poly& prev = ps[m - 1];
        uint64_t hd = A[m - 1][m - 1];
        for (size_t t = 0; t < prev.size(); ++t) {
            pm[t + 1] = addp(pm[t + 1], prev[t], p);
            pm[t] = subp(pm[t], mulp(hd, prev[t], p), p);
        }
        uint64_t sub = 1;
        for (size_t i = m - 1; i >= 1; --i) {
            sub = mulp(sub, A[i][i - 1], p);
            uint64_t coef = mulp(A[i - 1][m - 1], sub, p);
            if (coef) {
                const Poly& pi = ps[i - 1];
                for (size_t t = 0; t < pi.size(); ++t) pm[t] = subp(pm[t], mulp(coef, pi[t], p), p);
            }
        }
        ps[m] = std::move(pm);
    }
    return ps[n];
}

/// Basis of the null space of A (rows x cols), as column coordinate vectors.
inline std::vector<std::vector<uint64_t>> kernel_basis(Mat A, uint64_t p) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<int64_t> pivot_col_of_row(rows, -1);
    std::vector<int64_t> pivot_row_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[r]);
        uint64_t ip = invp(A[r][c], p);
        for (size_t j = c; j < cols; ++j) A[r][j] = mulp(A[r][j], ip, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            uint64_t t = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] = subp(A[i][j], mulp(t, A[r][j], p), p);
        }
        pivot_col_of_row[r] = int64_t(c);
        pivot_row_of_col[c] = int64_t(r);
        ++r;
    }
    std::vector<std::vector<uint64_t>> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        std::vector<uint64_t> v(cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < rows; ++i)
            if (pivot_col_of_row[i] >= 0 && A[i][c] != 0)
                v[size_t(pivot_col_of_row[i])] = subp(0, A[i][c], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace modp

// ---------------------------------------------------------------------------
// Dixon-Schneider: class-sum eigenvectors over F_p lifted to cyclotomics.
// ---------------------------------------------------------------------------

inline CharacterTable CharacterTable::dixon(const FiniteGroup& G) {
    using namespace modp;
    const ConjugacyData& cd = G.classes();
    const int64_t k = cd.k();
    const int64_t n = G.order();
    if (k > 200) throw std::runtime_error("dixon: class count exceeds budget (200)");
    if (n > kEnumBudget) throw std::runtime_error("dixon: group order exceeds budget");

    const int64_t e = G.exponent();
    uint64_t p = uint64_t(e) + 1;
    const double plim = 2.0 * std::sqrt(double(n));
    while (!(is_prime_u64(p) && double(p) > plim)) p += uint64_t(e);

    // primitive e-th root of unity mod p
    uint64_t gen = 2;
    {
        std::vector<uint64_t> qs;
        uint64_t m = p - 1;
        for (uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                qs.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) qs.push_back(m);
        for (;; ++gen) {
            bool ok = true;
            for (uint64_t q : qs)
                if (powp(gen, (p - 1) / q, p) == 1) { ok = false; break; }
            if (ok) break;
        }
    }
    const uint64_t zeta_e = powp(gen, (p - 1) / uint64_t(e), p);

    // class bookkeeping
    std::vector<Elem> reps(static_cast<size_t>(k));
    std::vector<uint64_t> csize(static_cast<size_t>(k));
    for (ClassIdx c = 0; c < k; ++c) {
        reps[size_t(c)] = cd.rep(c);
        csize[size_t(c)] = uint64_t(cd.size(c));
    }

    // class matrix N_i with (N_i)[j][l] = #{x in C_i : x^{-1} rep_l in C_j},
    // computed lazily
    std::map<int64_t, Mat> nmat;
    auto class_matrix = [&](int64_t i) -> const Mat& {
        auto it = nmat.find(i);
        if (it != nmat.end()) return it->second;
        Mat N(size_t(k), std::vector<uint64_t>(size_t(k), 0));
        auto mem = cd.members(i);
        std::vector<Elem> invx(mem.size());
        for (size_t t = 0; t < mem.size(); ++t) invx[t] = G.inv(mem[t]);
        for (ClassIdx l = 0; l < k; ++l) {
            Elem zl = reps[size_t(l)];
            for (Elem ix : invx) ++N[size_t(cd.class_of(G.mul(ix, zl)))][size_t(l)];
        }
        for (auto& row : N)
            for (auto& v : row) v %= p;
        return nmat.emplace(i, std::move(N)).first->second;
    };

    // split F_p^k into simultaneous eigenspaces
    struct Space {
        std::vector<std::vector<uint64_t>> basis;  // vectors of length k
    };
    std::vector<Space> spaces{Space{}};
    spaces[0].basis.resize(size_t(k));
    for (int64_t i = 0; i < k; ++i) {
        spaces[0].basis[size_t(i)].assign(size_t(k), 0);
        spaces[0].basis[size_t(i)][size_t(i)] = 1;
    }

    // order classes by descending size: large classes tend to separate faster
    std::vector<int64_t> order_idx(static_cast<size_t>(k));
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(),
              [&](int64_t a, int64_t b) { return csize[size_t(a)] > csize[size_t(b)]; });

    auto all_split = [&]() {
        for (auto& s : spaces)
            if (s.basis.size() > 1) return false;
        return true;
    };

    for (int64_t oi : order_idx) {
        if (all_split()) break;
        if (oi == 0) continue;  // identity class acts as I
        const Mat& N = class_matrix(oi);
        std::vector<Space> next;
        for (auto& sp : spaces) {
            size_t d = sp.basis.size();
            if (d == 1) {
                next.push_back(std::move(sp));
                continue;
            }
            // coordinates of N*w in the basis of sp: echelonize the basis once
            // images
            std::vector<std::vector<uint64_t>> img(d, std::vector<uint64_t>(size_t(k), 0));
            for (size_t b = 0; b < d; ++b)
                for (int64_t r = 0; r < k; ++r) {
                    uint64_t acc = 0;
                    const auto& row = N[size_t(r)];
                    const auto& w = sp.basis[b];
                    for (int64_t c2 = 0; c2 < k; ++c2)
                        if (w[size_t(c2)]) acc = (acc + mulp(row[size_t(c2)], w[size_t(c2)], p)) % p;
                    img[b][size_t(r)] = acc;
                }
            // solve [basis | img_b] for coordinates: build matrix with basis
            // columns, Gaussian elimination once with d right-hand sides
            Mat M(size_t(k), std::vector<uint64_t>(d + d, 0));
            for (size_t b = 0; b < d; ++b)
                for (int64_t r = 0; r < k; ++r) {
                    M[size_t(r)][b] = sp.basis[b][size_t(r)];
                    M[size_t(r)][d + b] = img[b][size_t(r)];
                }
            // eliminate
            size_t rr = 0;
            std::vector<size_t> pivrow(d);
            for (size_t c = 0; c < d && rr < size_t(k); ++c) {
                size_t pr = rr;
                while (pr < size_t(k) && M[pr][c] == 0) ++pr;
                if (pr == size_t(k)) throw std::logic_error("dixon: degenerate subspace basis");
                std::swap(M[pr], M[rr]);
                uint64_t ip = invp(M[rr][c], p);
                for (size_t j = c; j < 2 * d; ++j) M[rr][j] = mulp(M[rr][j], ip, p);
                for (size_t i2 = 0; i2 < size_t(k); ++i2) {
                    if (i2 == rr || M[i2][c] == 0) continue;
                    uint64_t t = M[i2][c];
                    for (size_t j = c; j < 2 * d; ++j)
                        M[i2][j] = subp(M[i2][j], mulp(t, M[rr][j], p), p);
                }
                pivrow[c] = rr;
                ++rr;
            }
            Mat A(d, std::vector<uint64_t>(d, 0));  // restriction of N to sp
            for (size_t b = 0; b < d; ++b)
                for (size_t c = 0; c < d; ++c) A[c][b] = M[pivrow[c]][d + b];
            // eigen split of A
            Poly cp = charpoly(A, p);
            auto roots = poly_roots(cp, p);
            if (roots.size() <= 1) {
                next.push_back(std::move(sp));
                continue;
            }
            size_t found = 0;
            for (uint64_t r0 : roots) {
                Mat Ash = A;
                for (size_t i2 = 0; i2 < d; ++i2) Ash[i2][i2] = subp(Ash[i2][i2], r0, p);
                auto ker = kernel_basis(Ash, p);
                if (ker.empty()) throw std::logic_error("dixon: eigenvalue without eigenvector");
                Space ns;
                for (auto& coord : ker) {
                    std::vector<uint64_t> v(size_t(k), 0);
                    for (size_t b = 0; b < d; ++b)
                        if (coord[b])
                            for (int64_t r2 = 0; r2 < k; ++r2)
                                v[size_t(r2)] =
                                    (v[size_t(r2)] + mulp(coord[b], sp.basis[b][size_t(r2)], p)) % p;
                    ns.basis.push_back(std::move(v));
                }
                found += ns.basis.size();
                next.push_back(std::move(ns));
            }
            if (found != d) throw std::logic_error("dixon: class matrix not diagonalizable");
        }
        spaces = std::move(next);
    }
    if (!all_split()) throw std::logic_error("dixon: subspaces failed to separate");

    // each space is spanned by the omega-vector (omega_0 = 1 after scaling)
    std::vector<std::vector<uint64_t>> omega(static_cast<size_t>(k));
    for (size_t s = 0; s < spaces.size(); ++s) {
        auto v = spaces[s].basis[0];
        if (v[0] == 0) throw std::logic_error("dixon: eigenvector with zero identity coordinate");
        uint64_t sc = invp(v[0], p);
        for (auto& x : v) x = mulp(x, sc, p);
        omega[s] = std::move(v);
    }

    // degrees: sum_i omega_i omega_{i*} / |C_i| = |G| / d^2  (mod p)
    std::vector<ClassIdx> invc(static_cast<size_t>(k));
    for (ClassIdx c = 0; c < k; ++c) invc[size_t(c)] = cd.inv_class(c);
    std::vector<uint64_t> dims(size_t(k), 0);
    const int64_t dmax = int64_t(std::sqrt(double(n))) + 1;
    for (size_t s = 0; s < size_t(k); ++s) {
        uint64_t T = 0;
        for (ClassIdx c = 0; c < k; ++c)
            T = (T + mulp(mulp(omega[s][size_t(c)], omega[s][size_t(invc[size_t(c)])], p),
                          invp(csize[size_t(c)] % p, p), p)) %
                p;
        if (T == 0) throw std::logic_error("dixon: degree recovery failed");
        uint64_t d2 = mulp(uint64_t(n % int64_t(p)), invp(T, p), p);
        uint64_t d = 0;
        for (int64_t cand = 1; cand <= dmax; ++cand)
            if (mulp(uint64_t(cand), uint64_t(cand), p) == d2) { d = uint64_t(cand); break; }
        if (!d) throw std::logic_error("dixon: no integer degree matches");
        dims[s] = d;
    }

    // character values mod p, then lift to Z[zeta_e]
    std::vector<std::vector<uint64_t>> chi_mod(static_cast<size_t>(k), std::vector<uint64_t>(size_t(k)));
    for (size_t s = 0; s < size_t(k); ++s)
        for (ClassIdx c = 0; c < k; ++c)
            chi_mod[s][size_t(c)] = mulp(mulp(dims[s], omega[s][size_t(c)], p),
                                         invp(csize[size_t(c)] % p, p), p);

    // power maps per class
    std::vector<int64_t> ords(static_cast<size_t>(k));
    std::vector<std::vector<ClassIdx>> powclass(static_cast<size_t>(k));
    for (ClassIdx c = 0; c < k; ++c) {
        int64_t o = G.element_order(reps[size_t(c)]);
        ords[size_t(c)] = o;
        powclass[size_t(c)].resize(size_t(o));
        for (int64_t t = 0; t < o; ++t) powclass[size_t(c)][size_t(t)] = G.class_power(c, t);
    }

    CharacterTable tab;
    tab.group = G;
    tab.engine = "dixon";
    tab.exact = true;
    tab.k_ = k;
    tab.m_ = e;
    tab.dims_.resize(size_t(k));
    tab.vals_.assign(size_t(k), std::vector<std::complex<double>>(size_t(k)));
    tab.evals_.assign(size_t(k), std::vector<Cyclo>(size_t(k)));

    for (size_t s = 0; s < size_t(k); ++s) tab.dims_[s] = int64_t(dims[s]);
    for (ClassIdx c = 0; c < k; ++c) {
        const int64_t o = ords[size_t(c)];
        const uint64_t zo = powp(zeta_e, uint64_t(e / o), p);  // primitive o-th root
        const uint64_t io = invp(uint64_t(o) % p, p);
        std::vector<uint64_t> zpow(static_cast<size_t>(o));
        zpow[0] = 1;
        for (int64_t t = 1; t < o; ++t) zpow[size_t(t)] = mulp(zpow[size_t(t - 1)], zo, p);
        for (size_t s = 0; s < size_t(k); ++s) {
            Cyclo val{int(e)};
            int64_t total = 0;
            for (int64_t j = 0; j < o; ++j) {
                uint64_t acc = 0;
                for (int64_t t = 0; t < o; ++t) {
                    uint64_t zji = zpow[size_t((o - (j * t) % o) % o)];  // zo^{-jt}
                    acc = (acc + mulp(chi_mod[s][size_t(powclass[size_t(c)][size_t(t)])], zji, p)) % p;
                }
                uint64_t nj = mulp(acc, io, p);
                if (nj > dims[s])
                    throw std::runtime_error("dixon: lift failure (multiplicity out of range)");
                total += int64_t(nj);
                if (nj) val += Cyclo::root_of_unity(int(e), long(j * (e / o)), Rat(int64_t(nj)));
            }
            if (total != int64_t(dims[s]))
                throw std::runtime_error("dixon: lift failure (multiplicities do not sum to degree)");
            tab.evals_[s][size_t(c)] = val;
            tab.vals_[s][size_t(c)] = val.to_complex();
        }
    }

    // canonical irrep order: (dim, lexicographically descending value vector)
    std::vector<size_t> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    auto lexless = [&](size_t a, size_t b) {
        if (tab.dims_[a] != tab.dims_[b]) return tab.dims_[a] < tab.dims_[b];
        for (int64_t c = 0; c < k; ++c) {
            const auto &za = tab.vals_[a][size_t(c)], &zb = tab.vals_[b][size_t(c)];
            if (za.real() != zb.real()) return za.real() > zb.real();
            if (za.imag() != zb.imag()) return za.imag() > zb.imag();
        }
        return false;
    };
    std::sort(perm.begin(), perm.end(), lexless);
    CharacterTable out = tab;
    for (size_t s = 0; s < size_t(k); ++s) {
        out.dims_[s] = tab.dims_[perm[s]];
        out.vals_[s] = tab.vals_[perm[s]];
        out.evals_[s] = tab.evals_[perm[s]];
    }

    // orthogonality must hold before the table is released
    TableReport rep = out.verify();
    if (!rep.pass) throw std::runtime_error("dixon: orthogonality verification failed");
    return out;
}

}  // namespace lw

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "littlewood/classfun.hpp"

namespace lw {

/// Size guards for the exact cyclotomic paths; beyond these the float path
/// with a propagated error bound is used.
struct ExactLimits {
    int64_t max_km = 1 << 20;     // abelian: classes x cyclotomic order
    int64_t max_mk2 = 4'000'000;  // dense: order x classes^2
};

struct FourierCoeffs {
    std::shared_ptr<const CharacterTable> table;
    std::vector<std::complex<double>> c;
    std::optional<std::vector<Cyclo>> exact;
    double err = 0.0;  // uniform per-coefficient bound (float path)
};

namespace fdetail {

/// Sparse evaluation against an implicit abelian table. Characters are
/// walked in mixed-radix order with an incrementally maintained exponent.
inline void abelian_accumulate(const CharacterTable& t, ClassIdx x,
                               const std::complex<double>& fx,
                               std::vector<std::complex<double>>& acc) {
    const auto& factors = t.abelian_factors();
    const auto& weights = t.abelian_weights();
    const auto& roots = t.unit_roots();
    const int64_t m = t.cyclo_order();
    const size_t r = factors.size();
    // digit steps for this element
    std::vector<int64_t> step(r), digit(r, 0);
    {
        ClassIdx e = x;
        for (size_t i = r; i-- > 0;) {
            int64_t xi = e % factors[i];
            e /= factors[i];
            step[i] = (__int128(xi) * weights[i]) % m;
        }
    }
    int64_t exp = 0;
    const int64_t k = t.k();
    for (int64_t a = 0;;) {
        // conj(chi_a(x)) = zeta^{-exp}
        acc[size_t(a)] += fx * roots[size_t((m - exp % m) % m)];
        if (++a >= k) break;
        size_t i = r;
        while (i-- > 0) {
            exp += step[i];
            if (exp >= m) exp -= m;
            if (++digit[i] < factors[i]) break;
            digit[i] = 0;  // carry; rollover contributes step too (mod m)
        }
    }
}

inline void abelian_accumulate_exact(const CharacterTable& t, ClassIdx x, const Rat& fx,
                                     std::vector<std::vector<Rat>>& coef) {
    const auto& factors = t.abelian_factors();
    const auto& weights = t.abelian_weights();
    const int64_t m = t.cyclo_order();
    const size_t r = factors.size();
    std::vector<int64_t> step(r), digit(r, 0);
    {
        ClassIdx e = x;
        for (size_t i = r; i-- > 0;) {
            int64_t xi = e % factors[i];
            e /= factors[i];
            step[i] = (__int128(xi) * weights[i]) % m;
        }
    }
    int64_t exp = 0;
    const int64_t k = t.k();
    for (int64_t a = 0;;) {
        coef[size_t(a)][size_t((m - exp % m) % m)] += fx;
        if (++a >= k) break;
        size_t i = r;
        while (i-- > 0) {
            exp += step[i];
            if (exp >= m) exp -= m;
            if (++digit[i] < factors[i]) break;
            digit[i] = 0;
        }
    }
}

}  // namespace fdetail

/// Fourier transform: fhat(pi) = (1/|G|) sum_c |c| f(c) conj(chi_pi(c)).
inline FourierCoeffs fourier(const ClassFunction& f, std::shared_ptr<const CharacterTable> t,
                             const ExactLimits& lim = {}) {
    if (!f.G.same_as(t->group))
        throw std::invalid_argument("class function and table live on different groups");
    const ConjugacyData& cd = f.G.classes();
    const int64_t k = cd.k();
    const int64_t n = f.G.order();
    FourierCoeffs out;
    out.table = t;
    out.c.assign(size_t(k), {0.0, 0.0});

    double mass = 0;  // sum |c| |f(c)| / |G|
    for (ClassIdx c = 0; c < k; ++c) mass += double(cd.size(c)) * std::abs(f.v[size_t(c)]);
    mass /= double(n);

    if (t->implicit_abelian()) {
        // sparse support walk; an additive shift by the dominant value keeps
        // the support small for indicator-like functions
        const bool use_exact = f.has_exact() && k * t->cyclo_order() <= lim.max_km;
        std::complex<double> shift(0, 0);
        Rat shift_exact(0);
        if (use_exact) {
            std::map<Rat, int64_t> freq;
            for (auto& r : *f.exact_re) ++freq[r];
            Rat best(0);
            int64_t bestn = 0;
            for (auto& [val, cnt] : freq)
                if (cnt > bestn) { bestn = cnt; best = val; }
            if (bestn > k / 2) {
                shift_exact = best;
                shift = {to_double(best), 0.0};
            }
        } else {
            std::map<std::pair<double, double>, int64_t> freq;
            for (auto& z : f.v) ++freq[{z.real(), z.imag()}];
            std::pair<double, double> best{0, 0};
            int64_t bestn = 0;
            for (auto& [val, cnt] : freq)
                if (cnt > bestn) { bestn = cnt; best = val; }
            if (bestn > k / 2) shift = {best.first, best.second};
        }
        std::vector<std::complex<double>> acc(size_t(k), {0, 0});
        std::vector<std::vector<Rat>> coef;
        if (use_exact) coef.assign(size_t(k), std::vector<Rat>(size_t(t->cyclo_order()), Rat(0)));
        int64_t support = 0;
        for (ClassIdx c = 0; c < k; ++c) {
            std::complex<double> fx = f.v[size_t(c)] - shift;
            bool zero = use_exact ? ((*f.exact_re)[size_t(c)] == shift_exact)
                                  : (fx == std::complex<double>(0, 0));
            if (zero) continue;
            ++support;
            fdetail::abelian_accumulate(*t, c, fx, acc);
            if (use_exact)
                fdetail::abelian_accumulate_exact(*t, c, (*f.exact_re)[size_t(c)] - shift_exact, coef);
        }
        for (ClassIdx a = 0; a < k; ++a) out.c[size_t(a)] = acc[size_t(a)] / double(n);
        out.c[0] += shift;  // the shift contributes to the trivial character only
        if (use_exact) {
            out.exact = std::vector<Cyclo>(size_t(k));
            const int m = int(t->cyclo_order());
            for (ClassIdx a = 0; a < k; ++a) {
                Cyclo z{m};
                for (int64_t j = 0; j < m; ++j)
                    if (coef[size_t(a)][size_t(j)] != 0)
                        z += Cyclo::root_of_unity(m, long(j), coef[size_t(a)][size_t(j)] / Rat(n));
                if (a == 0) z += Cyclo(m, shift_exact);
                (*out.exact)[size_t(a)] = std::move(z);
            }
        }
        out.err = 1e-15 * mass * double(support + 4);
        return out;
    }

    // dense path
    for (int64_t pi = 0; pi < k; ++pi) {
        std::complex<double> s(0, 0);
        for (ClassIdx c = 0; c < k; ++c)
            s += double(cd.size(c)) * f.v[size_t(c)] * std::conj(t->value(pi, c));
        out.c[size_t(pi)] = s / double(n);
    }
    out.err = mass * (1e-15 * double(k) + (t->exact ? 1e-12 : 1e-9));
    if (t->exact && f.has_exact() && t->cyclo_order() * k * k <= lim.max_mk2) {
        out.exact = std::vector<Cyclo>(size_t(k));
        for (int64_t pi = 0; pi < k; ++pi) {
            Cyclo s{int(t->cyclo_order())};
            for (ClassIdx c = 0; c < k; ++c) {
                const Rat& fx = (*f.exact_re)[size_t(c)];
                if (fx == 0) continue;
                s += t->exact_value(pi, c).conj() * (fx * Rat(cd.size(c)));
            }
            (*out.exact)[size_t(pi)] = s * Rat(1, n);
        }
    }
    return out;
}

inline FourierCoeffs fourier(const ClassFunction& f) { return fourier(f, get_table(f.G)); }

/// Reconstruct f from coefficients: f = sum_pi fhat(pi) chi_pi (check aid).
inline ClassFunction fourier_inverse(const FourierCoeffs& fc) {
    const CharacterTable& t = *fc.table;
    std::vector<std::complex<double>> vals(size_t(t.k()), {0, 0});
    for (ClassIdx c = 0; c < t.k(); ++c)
        for (int64_t pi = 0; pi < t.k(); ++pi) vals[size_t(c)] += fc.c[size_t(pi)] * t.value(pi, c);
    return ClassFunction::from_complex(t.group, std::move(vals));
}

struct NormReport {
    double lambda = 0;
    std::optional<Rat> lambda_exact;
    std::complex<double> mu{0, 0};
    std::optional<Rat> mu_exact;
    std::vector<int64_t> support;  // irrep indices with nonzero coefficient
    double bound_cauchy_schwarz = 0;
    double bound_trivial = 0;
    double err = 0;  // propagated bound on |lambda - true| (float path)
};

/// lambda(f) = sum_pi |fhat(pi)| dim(pi), plus support and standard bounds.
inline NormReport lambda_norm(const ClassFunction& f, std::shared_ptr<const CharacterTable> t,
                              const ExactLimits& lim = {}) {
    FourierCoeffs fc = fourier(f, t, lim);
    const ConjugacyData& cd = f.G.classes();
    NormReport r;
    const int64_t k = t->k();
    double maxc = 0;
    for (auto& z : fc.c) maxc = std::max(maxc, std::abs(z));
    const double zero_thresh = 1e-10 * maxc;

    bool exact_ok = fc.exact.has_value();
    Rat lam_exact(0);
    double lam = 0, errsum = 0;
    for (int64_t pi = 0; pi < k; ++pi) {
        double a = std::abs(fc.c[size_t(pi)]);
        lam += double(t->dim(pi)) * a;
        errsum += double(t->dim(pi)) * fc.err;
        bool in_support;
        if (fc.exact)
            in_support = !(*fc.exact)[size_t(pi)].is_zero();
        else
            in_support = a > zero_thresh;
        if (in_support) r.support.push_back(pi);
        if (exact_ok) {
            auto ae = (*fc.exact)[size_t(pi)].abs_exact();
            if (ae)
                lam_exact += Rat(t->dim(pi)) * (*ae);
            else
                exact_ok = false;
        }
    }
    r.lambda = lam;
    r.err = errsum;
    if (exact_ok) {
        r.lambda_exact = lam_exact;
        r.lambda = to_double(lam_exact);
    }
    r.mu = f.mu();
    r.mu_exact = f.mu_exact();

    double cs = 0, triv = 0;
    for (ClassIdx c = 0; c < cd.k(); ++c) {
        double a = std::abs(f.v[size_t(c)]);
        cs += double(cd.size(c)) * a * a;
        triv += double(cd.size(c)) * a;
    }
    r.bound_cauchy_schwarz = std::sqrt(cs);
    r.bound_trivial = triv;

    // Prop 5: lambda >= max_c |f(c)|
    if (r.lambda + 1e-6 * (1 + r.lambda) + r.err < f.max_abs())
        throw std::logic_error("lambda norm below sup-norm: numerical failure");
    return r;
}

inline NormReport lambda_norm(const ClassFunction& f) { return lambda_norm(f, get_table(f.G)); }

/// Littlewood complexity of a class-index set.
inline NormReport lambda_of_set(const FiniteGroup& G, const std::vector<char>& in_D) {
    return lambda_norm(ClassFunction::indicator(G, in_D));
}

/// Sum of singular values of the left-convolution operator L(f) on L^2(G):
/// M[y][z] = f(z y^{-1}) / |G| over the orthonormal basis of scaled deltas.
inline double trace_norm_oracle(const ClassFunction& f, int64_t budget = 2000) {
    const FiniteGroup& G = f.G;
    const int64_t n = G.order();
    if (n > budget) throw std::runtime_error("trace-norm oracle budget exceeded");
    const ConjugacyData& cd = G.classes();
    bool realf = true;
    for (auto& z : f.v) realf &= (z.imag() == 0.0);
    if (realf) {
        Eigen::MatrixXd M(n, n);
        for (int64_t y = 0; y < n; ++y) {
            Elem yi = G.inv(y);
            for (int64_t z = 0; z < n; ++z)
                M(z, y) = f.v[size_t(cd.class_of(G.mul(z, yi)))].real() / double(n);
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
        return svd.singularValues().sum();
    }
    Eigen::MatrixXcd M(n, n);
    for (int64_t y = 0; y < n; ++y) {
        Elem yi = G.inv(y);
        for (int64_t z = 0; z < n; ++z)
            M(z, y) = f.v[size_t(cd.class_of(G.mul(z, yi)))] / double(n);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues().sum();
}

// ---------------------------------------------------------------------------
// Transport maps.
// ---------------------------------------------------------------------------

/// f restricted to a subgroup H; lambda_H(f|_H) <= lambda_G(f) holds.
inline ClassFunction restrict_to(const ClassFunction& f, const SubgroupHandle& H) {
    if (!f.G.same_as(H.parent)) throw std::invalid_argument("restrict: subgroup of another group");
    const auto& view = H.view();
    const ConjugacyData& hc = H.group.classes();
    const ConjugacyData& gc = f.G.classes();
    std::vector<std::complex<double>> vals(size_t(hc.k()));
    std::vector<Rat> evals(size_t(hc.k()));
    for (ClassIdx c = 0; c < hc.k(); ++c) {
        ClassIdx gcls = gc.class_of(view.parent_elem(hc.rep(c)));
        vals[size_t(c)] = f.v[size_t(gcls)];
        if (f.exact_re) evals[size_t(c)] = (*f.exact_re)[size_t(gcls)];
    }
    ClassFunction out = ClassFunction::from_complex(H.group, std::move(vals));
    if (f.exact_re) out.exact_re = std::move(evals);
    return out;
}

/// Induction by the standard averaged formula:
/// (Ind_H^G f)(x) = (1/|H|) sum_{y in G, y x y^{-1} in H} f(y x y^{-1}).
inline ClassFunction induce(const ClassFunction& fH, const SubgroupHandle& H) {
    const FiniteGroup& G = H.parent;
    const auto& view = H.view();
    const ConjugacyData& gc = G.classes();
    const ConjugacyData& hc = H.group.classes();
    if (!G.enumerable()) throw std::runtime_error("induce: parent group too large");
    std::vector<std::complex<double>> vals(size_t(gc.k()), {0, 0});
    std::vector<Rat> evals(size_t(gc.k()), Rat(0));
    bool exact = fH.has_exact();
    for (ClassIdx c = 0; c < gc.k(); ++c) {
        Elem x = gc.rep(c);
        for (Elem y = 0; y < G.order(); ++y) {
            Elem z = G.mul(G.mul(y, x), G.inv(y));
            auto sub = view.sub_elem(z);
            if (!sub) continue;
            ClassIdx hcls = hc.class_of(*sub);
            vals[size_t(c)] += fH.v[size_t(hcls)];
            if (exact) evals[size_t(c)] += (*fH.exact_re)[size_t(hcls)];
        }
        vals[size_t(c)] /= double(H.group.order());
        if (exact) evals[size_t(c)] /= Rat(H.group.order());
    }
    ClassFunction out = ClassFunction::from_complex(G, std::move(vals));
    if (exact) out.exact_re = std::move(evals);
    return out;
}

/// Pullback along the quotient projection; lambda is preserved exactly.
inline ClassFunction inflate(const ClassFunction& fQ, const QuotientHandle& Q) {
    const FiniteGroup& G = Q.parent;
    const ConjugacyData& gc = G.classes();
    const ConjugacyData& qc = Q.group.classes();
    std::vector<std::complex<double>> vals(size_t(gc.k()));
    std::vector<Rat> evals(size_t(gc.k()));
    for (ClassIdx c = 0; c < gc.k(); ++c) {
        ClassIdx qcls = qc.class_of(Q.project(gc.rep(c)));
        vals[size_t(c)] = fQ.v[size_t(qcls)];
        if (fQ.exact_re) evals[size_t(c)] = (*fQ.exact_re)[size_t(qcls)];
    }
    ClassFunction out = ClassFunction::from_complex(G, std::move(vals));
    if (fQ.exact_re) out.exact_re = std::move(evals);
    return out;
}

/// Outer product f1 x f2 on a product group built from the same factors.
inline ClassFunction tensor(const ClassFunction& f1, const ClassFunction& f2,
                            const FiniteGroup& G12) {
    auto* prod = dynamic_cast<const ProductGroup*>(&G12.impl());
    if (!prod || !prod->left().same_as(f1.G) || !prod->right().same_as(f2.G))
        throw std::invalid_argument("tensor: product group does not match the factors");
    const ConjugacyData& pc = G12.classes();
    const ConjugacyData& c1 = f1.G.classes();
    const ConjugacyData& c2 = f2.G.classes();
    int64_t n2 = f2.G.order();
    std::vector<std::complex<double>> vals(size_t(pc.k()));
    bool exact = f1.has_exact() && f2.has_exact();
    std::vector<Rat> evals(exact ? size_t(pc.k()) : 0);
    for (ClassIdx c = 0; c < pc.k(); ++c) {
        Elem rep = pc.rep(c);
        ClassIdx a = c1.class_of(rep / n2), b = c2.class_of(rep % n2);
        vals[size_t(c)] = f1.v[size_t(a)] * f2.v[size_t(b)];
        if (exact) evals[size_t(c)] = (*f1.exact_re)[size_t(a)] * (*f2.exact_re)[size_t(b)];
    }
    ClassFunction out = ClassFunction::from_complex(G12, std::move(vals));
    if (exact) out.exact_re = std::move(evals);
    return out;
}

// ---------------------------------------------------------------------------
// Serre's reduction (subgroup + quotient bound with checked hypotheses).
// ---------------------------------------------------------------------------

struct SerreReport {
    bool hyp_class_size = false;       // (a) |C(d)| constant over D
    bool hyp_intersection = false;     // (b) |C(d) cap H| constant and positive
    bool hyp_u_stable = false;         // (c) U (D cap H) = D cap H
    bool applicable = false;           // (a) and (b) and (c)
    Rat factor{0};                     // |C(d)| / |C(d) cap H|
    double lambda_quotient = 0;        // lambda_{H/U}(s(D cap H))
    std::optional<Rat> lambda_quotient_exact;
    double bound = 0;                  // factor * lambda_quotient
    bool hyp_argument = false;         // (d) argument-constancy condition
    bool equality = false;             // lambda_G(D) == bound (when computed)
    double lambda_g = -1;              // -1 when not computed
};

inline SerreReport serre_reduce(const FiniteGroup& G, const std::vector<char>& in_D,
                                const SubgroupHandle& H, const SubgroupHandle& U,
                                bool compute_lambda_g = true) {
    if (!H.parent.same_as(G)) throw std::invalid_argument("serre: H must be a subgroup of G");
    if (!U.parent.same_as(H.group))
        throw std::invalid_argument("serre: U must be given as a subgroup of H");
    const ConjugacyData& gc = G.classes();
    SerreReport rep;
    std::vector<ClassIdx> dcls;
    for (ClassIdx c = 0; c < gc.k(); ++c)
        if (in_D[size_t(c)]) dcls.push_back(c);
    if (dcls.empty()) throw std::invalid_argument("serre: D is empty");

    // (a)
    int64_t csz = gc.size(dcls[0]);
    rep.hyp_class_size = true;
    for (ClassIdx c : dcls)
        if (gc.size(c) != csz) rep.hyp_class_size = false;

    // (b): count H-elements in each D-class
    const auto& hview = H.view();
    std::map<ClassIdx, int64_t> hcount;
    std::vector<Elem> dh;  // D cap H, as H-element indices
    for (Elem h = 0; h < H.group.order(); ++h) {
        ClassIdx c = gc.class_of(hview.parent_elem(h));
        if (in_D[size_t(c)]) {
            ++hcount[c];
            dh.push_back(h);
        }
    }
    int64_t isz = dcls.size() && hcount.count(dcls[0]) ? hcount[dcls[0]] : 0;
    rep.hyp_intersection = isz > 0;
    for (ClassIdx c : dcls)
        if (!hcount.count(c) || hcount[c] != isz) rep.hyp_intersection = false;

    // (c): U (D cap H) = D cap H inside H
    std::vector<char> in_dh(size_t(H.group.order()), 0);
    for (Elem h : dh) in_dh[size_t(h)] = 1;
    rep.hyp_u_stable = true;
    const auto& uview = U.view();
    for (Elem uu = 0; uu < U.group.order() && rep.hyp_u_stable; ++uu) {
        Elem uh = uview.parent_elem(uu);  // as element of H
        for (Elem h : dh)
            if (!in_dh[size_t(H.group.mul(uh, h))]) { rep.hyp_u_stable = false; break; }
    }

    rep.applicable = rep.hyp_class_size && rep.hyp_intersection && rep.hyp_u_stable;
    if (!rep.applicable) return rep;

    rep.factor = Rat(csz, isz);

    // quotient H/U and the image of D cap H
    std::vector<Elem> u_in_h;
    for (Elem uu = 0; uu < U.group.order(); ++uu) u_in_h.push_back(uview.parent_elem(uu));
    auto Usub = subgroup_from_elements(H.group, u_in_h, "U");
    auto Q = quotient(H.group, Usub);
    const ConjugacyData& qc = Q.group.classes();
    std::vector<char> in_s(size_t(qc.k()), 0);
    for (Elem h : dh) in_s[size_t(qc.class_of(Q.project(h)))] = 1;

    auto qrep = lambda_of_set(Q.group, in_s);
    rep.lambda_quotient = qrep.lambda;
    rep.lambda_quotient_exact = qrep.lambda_exact;
    rep.bound = to_double(rep.factor) * rep.lambda_quotient;

    // (d): for every pi in Ghat, the transform of 1_{s(D cap H)} has constant
    // argument on the H/U-irreps whose pullback appears in pi|_H
    {
        auto tG = get_table(G);
        auto tQ = get_table(Q.group);
        auto fs = fourier(ClassFunction::indicator(Q.group, in_s), tQ);
        const ConjugacyData& hcd = H.group.classes();
        // multiplicity of (rho o s) in pi|_H: (1/|H|) sum_h chi_pi(h) conj(chi_rho(s(h)))
        rep.hyp_argument = true;
        for (int64_t pi = 0; pi < tG->k() && rep.hyp_argument; ++pi) {
            std::complex<double> fixed(0, 0);
            bool have = false;
            for (int64_t rho = 0; rho < tQ->k(); ++rho) {
                std::complex<double> m(0, 0);
                for (ClassIdx hc2 = 0; hc2 < hcd.k(); ++hc2) {
                    Elem h = hcd.rep(hc2);
                    ClassIdx gcls = gc.class_of(hview.parent_elem(h));
                    ClassIdx qcls = qc.class_of(Q.project(h));
                    m += double(hcd.size(hc2)) * tG->value(pi, gcls) * std::conj(tQ->value(rho, qcls));
                }
                m /= double(H.group.order());
                if (std::abs(m) < 1e-8) continue;       // rho o s not in pi|_H
                std::complex<double> z = fs.c[size_t(rho)];
                if (std::abs(z) < 1e-12) continue;      // outside spectral support
                std::complex<double> dir = z / std::abs(z);
                if (!have) {
                    fixed = dir;
                    have = true;
                } else if (std::abs(dir - fixed) > 1e-8) {
                    rep.hyp_argument = false;
                    break;
                }
            }
        }
    }

    if (compute_lambda_g) {
        auto grep = lambda_of_set(G, in_D);
        rep.lambda_g = grep.lambda;
        rep.equality = std::abs(rep.lambda_g - rep.bound) <= 1e-6 * (1 + rep.bound);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Coset certificates (the lambda(D) = 1 characterization).
// ---------------------------------------------------------------------------

struct CosetCert {
    Elem a;
    std::vector<Elem> H;  // sorted subgroup elements
};

/// For a nonempty element set D: returns (a, H) with D = aH, H normal, and a
/// central modulo H, or nothing when D is not such a coset.
inline std::optional<CosetCert> coset_certificate(const FiniteGroup& G,
                                                  const std::vector<Elem>& D) {
    if (D.empty()) throw std::invalid_argument("coset certificate: empty set");
    std::set<Elem> hset;
    for (Elem x : D)
        for (Elem y : D) hset.insert(G.mul(x, G.inv(y)));
    if (hset.size() != D.size()) return std::nullopt;
    std::vector<Elem> H(hset.begin(), hset.end());
    // subgroup check
    for (Elem a : H) {
        if (!hset.count(G.inv(a))) return std::nullopt;
        for (Elem b : H)
            if (!hset.count(G.mul(a, b))) return std::nullopt;
    }
    // D = aH
    Elem a0 = D.front();
    std::set<Elem> coset;
    for (Elem h : H) coset.insert(G.mul(a0, h));
    for (Elem x : D)
        if (!coset.count(x)) return std::nullopt;
    // normality and centrality of a modulo H (on generators)
    for (Elem g : G.generators()) {
        for (Elem h : H)
            if (!hset.count(G.mul(G.mul(g, h), G.inv(g)))) return std::nullopt;
        Elem comm = G.mul(G.mul(a0, g), G.mul(G.inv(a0), G.inv(g)));
        if (!hset.count(comm)) return std::nullopt;
    }
    return CosetCert{a0, H};
}

// ---------------------------------------------------------------------------
// Large-sieve weight function.
// ---------------------------------------------------------------------------

struct SieveWeight {
    ClassFunction phi;
    NormReport lambda_phi;
    NormReport lambda_phi2;
    double bound = 0;  // (|G|/|D|) lambda(D), for comparison
};

inline SieveWeight sieve_weight(const FiniteGroup& G, const std::vector<char>& in_D) {
    const ConjugacyData& cd = G.classes();
    int64_t dsz = 0;
    for (ClassIdx c = 0; c < cd.k(); ++c)
        if (in_D[size_t(c)]) dsz += cd.size(c);
    int64_t n = G.order();
    if (dsz == 0 || dsz == n) throw std::invalid_argument("sieve weight needs 0 < |D| < |G|");
    double on = std::sqrt(double(n - dsz) / double(dsz));
    double off = -std::sqrt(double(dsz) / double(n - dsz));
    std::vector<std::complex<double>> vals(size_t(cd.k()));
    for (ClassIdx c = 0; c < cd.k(); ++c) vals[size_t(c)] = {in_D[size_t(c)] ? on : off, 0.0};
    SieveWeight out;
    out.phi = ClassFunction::from_complex(G, std::move(vals));
    if (std::abs(out.phi.mu()) > 1e-12)
        throw std::logic_error("sieve weight: mean is not zero");
    out.lambda_phi = lambda_norm(out.phi);
    out.lambda_phi2 = lambda_norm(pointwise(out.phi, out.phi));
    auto drep = lambda_of_set(G, in_D);
    out.bound = double(n) / double(dsz) * drep.lambda;
    if (n >= 2 * dsz) {
        if (out.lambda_phi.lambda >= out.bound + 1e-9 * (1 + out.bound))
            throw std::logic_error("sieve weight: lambda(phi) exceeds the norm bound");
        if (out.lambda_phi2.lambda >= out.bound + 1e-9 * (1 + out.bound))
            throw std::logic_error("sieve weight: lambda(phi^2) exceeds the norm bound");
    }
    return out;
}

}  // namespace lw

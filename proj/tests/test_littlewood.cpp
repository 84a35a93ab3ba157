#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "littlewood/setspec.hpp"

using namespace lw;

namespace {

ClassFunction random_real_cf(const FiniteGroup& G, std::mt19937_64& rng, bool rational = false) {
    std::uniform_int_distribution<int> num(-8, 8);
    std::vector<Rat> vals(size_t(G.classes().k()));
    for (auto& r : vals) r = Rat(num(rng), 1 + std::abs(num(rng)));
    (void)rational;
    return ClassFunction::from_exact(G, std::move(vals));
}

}  // namespace

TEST_CASE("fourier basics") {
    auto S3 = parse_group("S3");
    auto t = get_table(S3);

    // f = 1_G: transform concentrated on the trivial irrep
    auto all = ClassFunction::indicator(S3, {1, 1, 1});
    auto fc = fourier(all, t);
    CHECK(std::abs(fc.c[0] - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(fc.c[1]) < 1e-12);
    CHECK(std::abs(fc.c[2]) < 1e-12);

    // f = 1_e: fhat(pi) = dim pi / |G|
    auto delta = ClassFunction::indicator(S3, {1, 0, 0});
    auto fd = fourier(delta, t);
    for (int64_t pi = 0; pi < 3; ++pi)
        CHECK(std::abs(fd.c[size_t(pi)] - std::complex<double>(double(t->dim(pi)) / 6.0, 0)) < 1e-12);

    // f = 1_{3-cycles}: hand DFT gives (1/3, -1/3, 1/3) on (trivial, std, sign)
    auto cyc = parse_set(S3, "ncycle");
    auto f3 = ClassFunction::indicator(S3, cyc.in_D);
    auto f3c = fourier(f3, t);
    REQUIRE(t->dim(0) == 1);  // trivial
    REQUIRE(t->dim(1) == 2);  // standard
    REQUIRE(t->dim(2) == 1);  // sign
    CHECK(std::abs(f3c.c[0] - std::complex<double>(1.0 / 3, 0)) < 1e-12);
    CHECK(std::abs(f3c.c[1] - std::complex<double>(-1.0 / 3, 0)) < 1e-12);
    CHECK(std::abs(f3c.c[2] - std::complex<double>(1.0 / 3, 0)) < 1e-12);

    // reconstruction
    auto back = fourier_inverse(f3c);
    for (size_t c = 0; c < 3; ++c) CHECK(std::abs(back.v[c] - f3.v[c]) < 1e-9);

    // Parseval
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_real_cf(S3, rng);
        auto fc2 = fourier(f, t);
        double lhs = 0, rhs = 0;
        for (auto& z : fc2.c) lhs += std::norm(z);
        const auto& cd = S3.classes();
        for (ClassIdx c = 0; c < 3; ++c) rhs += double(cd.size(c)) * std::norm(f.v[size_t(c)]);
        rhs /= 6.0;
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1 + rhs));
    }
}

TEST_CASE("lambda values from the abelian computations") {
    // generators of Z/6: lambda = 2^omega(6) phi(6)/6 = 4/3
    auto C6 = parse_group("C6");
    auto gen6 = parse_set(C6, "gen");
    auto rep = lambda_of_set(C6, gen6.in_D);
    REQUIRE(rep.lambda_exact.has_value());
    CHECK(*rep.lambda_exact == Rat(4, 3));

    // {1,3} in Z/4 is a coset: lambda = 1
    auto C4 = parse_group("C4");
    auto d13 = parse_set(C4, "coset:1,{0,2}");
    CHECK(d13.element_count == 2);
    auto rep4 = lambda_of_set(C4, d13.in_D);
    REQUIRE(rep4.lambda_exact.has_value());
    CHECK(*rep4.lambda_exact == 1);

    // complement notation agrees
    auto comp = parse_set(C4, "!coset:1,{0,2}");
    CHECK(comp.element_count == 2);
}

TEST_CASE("lambda of n-cycles in S_n (Murnaghan-Nakayama route)") {
    for (int n = 3; n <= 7; ++n) {
        auto G = parse_group("S" + std::to_string(n));
        auto d = parse_set(G, "ncycle");
        auto rep = lambda_of_set(G, d.in_D);
        REQUIRE(rep.lambda_exact.has_value());
        Rat expect(int64_t(1) << (n - 1), n);
        CHECK(*rep.lambda_exact == expect);
    }
}

TEST_CASE("trace norm oracle") {
    auto S3 = parse_group("S3");
    auto all = ClassFunction::indicator(S3, {1, 1, 1});
    CHECK(std::abs(trace_norm_oracle(all) - 1.0) < 1e-10);
    auto delta = ClassFunction::indicator(S3, {1, 0, 0});
    CHECK(std::abs(trace_norm_oracle(delta) - 1.0) < 1e-10);

    auto S4 = parse_group("S4");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_real_cf(S4, rng);
        auto rep = lambda_norm(f);
        double oracle = trace_norm_oracle(f);
        CHECK(std::abs(rep.lambda - oracle) <= 1e-8 * (1 + rep.lambda));
    }
}

TEST_CASE("restriction") {
    auto S3 = parse_group("S3");
    auto d = parse_set(S3, "ncycle");
    auto f = ClassFunction::indicator(S3, d.in_D);
    auto lamG = lambda_norm(f).lambda;

    // A3 = <3-cycle>
    auto A3 = subgroup(S3, {S3.classes().rep(1)});
    REQUIRE(A3.group.order() == 3);
    auto fr = restrict_to(f, A3);
    auto lamH = lambda_norm(fr);
    REQUIRE(lamH.lambda_exact.has_value());
    CHECK(*lamH.lambda_exact == Rat(4, 3));  // equality case
    CHECK(lamH.lambda <= lamG + 1e-9);

    // restriction to the whole group is the identity
    std::vector<Elem> allelems(6);
    std::iota(allelems.begin(), allelems.end(), 0);
    auto full = subgroup_from_elements(S3, allelems);
    auto fr2 = restrict_to(f, full);
    for (size_t c = 0; c < 3; ++c) CHECK(fr2.v[c] == f.v[c]);

    // 4-cycles of S4 restricted to <(1,2,3,4)>: lambda = 1 <= 2
    auto S4 = parse_group("S4");
    const auto& s4 = dynamic_cast<const SymmetricGroup&>(S4.impl());
    std::vector<int> c4perm{1, 2, 3, 0};
    auto C4sub = subgroup(S4, {s4.rank(c4perm)});
    REQUIRE(C4sub.group.order() == 4);
    auto d4 = parse_set(S4, "ncycle");
    auto f4 = ClassFunction::indicator(S4, d4.in_D);
    auto r4 = lambda_norm(restrict_to(f4, C4sub));
    CHECK(r4.lambda <= 2.0 + 1e-9);
    CHECK(std::abs(r4.lambda - 1.0) < 1e-9);  // computed: restriction is the coset of order-4 elements
}

TEST_CASE("induction") {
    auto S3 = parse_group("S3");
    auto A3 = subgroup(S3, {S3.classes().rep(1)});
    auto oneA3 = ClassFunction::indicator(A3.group, {1, 1, 1});
    auto ind = induce(oneA3, A3);
    // Ind_{A3}^{S3} 1 = 2 * 1_{A3}
    CHECK(std::abs(ind.v[0] - std::complex<double>(2, 0)) < 1e-12);
    CHECK(std::abs(ind.v[1] - std::complex<double>(2, 0)) < 1e-12);
    CHECK(std::abs(ind.v[2]) < 1e-12);
    auto lam = lambda_norm(ind);
    CHECK(std::abs(lam.lambda - 2.0) < 1e-9);  // equality in the induction bound

    // Ind_H^H f = f
    auto fh = ClassFunction::indicator(A3.group, {0, 1, 1});
    std::vector<Elem> a3all{0, 1, 2};
    auto A3self = subgroup_from_elements(A3.group, a3all);
    auto same = induce(fh, A3self);
    for (size_t c = 0; c < 3; ++c) CHECK(std::abs(same.v[c] - fh.v[c]) < 1e-12);

    // Ind_{1}^{C4} 1 = 4 * 1_e, lambda = 4
    auto C4 = parse_group("C4");
    auto triv = subgroup(C4, {});
    REQUIRE(triv.group.order() == 1);
    auto one = ClassFunction::indicator(triv.group, {1});
    auto ind2 = induce(one, triv);
    CHECK(std::abs(ind2.v[0] - std::complex<double>(4, 0)) < 1e-12);
    for (size_t c = 1; c < 4; ++c) CHECK(std::abs(ind2.v[c]) < 1e-12);
    CHECK(std::abs(lambda_norm(ind2).lambda - 4.0) < 1e-9);

    // Prop 10 bound on random functions
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_real_cf(A3.group, rng);
        double lamH = lambda_norm(f).lambda;
        double lamG = lambda_norm(induce(f, A3)).lambda;
        CHECK(lamG <= 2.0 * lamH + 1e-8 * (1 + lamH));
    }
}

TEST_CASE("inflation") {
    auto S3 = parse_group("S3");
    auto A3 = subgroup(S3, {S3.classes().rep(1)});
    auto Q = quotient(S3, A3);
    // indicator of the nontrivial coset pulls back to the transpositions
    auto fq = ClassFunction::indicator(Q.group, {0, 1});
    auto f = inflate(fq, Q);
    CHECK(std::abs(f.v[0]) < 1e-12);
    CHECK(std::abs(f.v[1]) < 1e-12);
    CHECK(std::abs(f.v[2] - std::complex<double>(1, 0)) < 1e-12);
    auto lam = lambda_norm(f);
    auto lamq = lambda_norm(fq);
    CHECK(std::abs(lam.lambda - lamq.lambda) < 1e-12);
    CHECK(std::abs(lam.lambda - 1.0) < 1e-12);

    // constant 1 inflates to constant 1
    auto c1 = ClassFunction::indicator(Q.group, {1, 1});
    auto f1 = inflate(c1, Q);
    for (size_t c = 0; c < 3; ++c) CHECK(std::abs(f1.v[c] - std::complex<double>(1, 0)) < 1e-12);

    // 1_{1 mod 2} on Z/6 -> Z/2 inflated: a coset, lambda = 1
    auto C6 = parse_group("C6");
    auto H3 = subgroup(C6, {2});
    REQUIRE(H3.group.order() == 3);
    auto Q2 = quotient(C6, H3);
    REQUIRE(Q2.group.order() == 2);
    auto fodd = inflate(ClassFunction::indicator(Q2.group, {0, 1}), Q2);
    CHECK(std::abs(lambda_norm(fodd).lambda - 1.0) < 1e-12);
}

TEST_CASE("tensor products") {
    auto S3 = parse_group("S3");
    auto P = direct_product(S3, S3);
    auto d = parse_set(S3, "ncycle");
    auto f = ClassFunction::indicator(S3, d.in_D);
    auto ff = tensor(f, f, P);
    auto rep = lambda_norm(ff);
    CHECK(std::abs(rep.lambda - 16.0 / 9) < 1e-9);

    // f (x) 1_{G2} leaves lambda unchanged
    auto ones = ClassFunction::indicator(S3, {1, 1, 1});
    auto f1 = tensor(f, ones, P);
    CHECK(std::abs(lambda_norm(f1).lambda - 4.0 / 3) < 1e-9);

    // generators of Z/6 (x) coset in Z/4: (4/3) * 1
    auto C6 = parse_group("C6");
    auto C4 = parse_group("C4");
    auto P2 = direct_product(C6, C4);
    auto g6 = ClassFunction::indicator(C6, parse_set(C6, "gen").in_D);
    auto c4 = ClassFunction::indicator(C4, parse_set(C4, "coset:1,{0,2}").in_D);
    auto fp = tensor(g6, c4, P2);
    auto rep2 = lambda_norm(fp);
    CHECK(std::abs(rep2.lambda - 4.0 / 3) < 1e-9);
}

TEST_CASE("serre reduction on GL2(3)") {
    auto G = parse_group("GL2(3)");
    // A unipotent u: order 3, trace 2, repeated eigenvalue. The Borel is the
    // normalizer of <u>; U = <u> inside it.
    Elem u = -1;
    for (Elem x = 0; x < G.order(); ++x) {
        if (*G.impl().trace_label(x) == 2 && !G.impl().regular_semisimple(x) &&
            G.element_order(x) == 3) { u = x; break; }
    }
    REQUIRE(u >= 0);
    auto usub = subgroup(G, {u});
    REQUIRE(usub.group.order() == 3);
    std::vector<Elem> borel;
    for (Elem x = 0; x < G.order(); ++x) {
        bool norm = true;
        for (Elem h : usub.view().parent_elems())
            if (!usub.contains(G.mul(G.mul(x, h), G.inv(x)))) { norm = false; break; }
        if (norm) borel.push_back(x);
    }
    REQUIRE(int64_t(borel.size()) == 12);
    auto B = subgroup_from_elements(G, borel, "Borel");
    std::vector<Elem> uni;
    for (Elem h = 0; h < B.group.order(); ++h)
        if (usub.contains(B.view().parent_elem(h))) uni.push_back(h);
    REQUIRE(uni.size() == 3);
    auto U = subgroup_from_elements(B.group, uni, "U");

    auto D = parse_set(G, "trace=0,dr");
    REQUIRE(D.element_count == 12);  // one full class of size |G|/|T| = 12
    auto rep = serre_reduce(G, D.in_D, B, U);
    CHECK(rep.hyp_class_size);
    CHECK(rep.hyp_intersection);
    CHECK(rep.hyp_u_stable);
    REQUIRE(rep.applicable);
    CHECK(rep.factor == Rat(2));
    CHECK(std::abs(rep.lambda_quotient - 1.0) < 1e-9);
    CHECK(std::abs(rep.bound - 2.0) < 1e-9);
    CHECK(rep.hyp_argument);
    CHECK(std::abs(rep.lambda_g - 2.0) < 1e-6);
    CHECK(rep.equality);
}

TEST_CASE("serre degenerate and violating inputs") {
    auto S3 = parse_group("S3");
    std::vector<Elem> all(6);
    std::iota(all.begin(), all.end(), 0);
    auto H = subgroup_from_elements(S3, all);
    auto Utriv = subgroup(H.group, {});
    // D = one class, H = G, U = 1: factor 1, bound = lambda(D)
    auto d = parse_set(S3, "ncycle");
    auto rep = serre_reduce(S3, d.in_D, H, Utriv);
    REQUIRE(rep.applicable);
    CHECK(rep.factor == 1);
    CHECK(std::abs(rep.bound - 4.0 / 3) < 1e-9);
    CHECK(rep.equality);

    // D with two class sizes: hypothesis (a) fails
    auto d2 = parse_set(S3, "union:1,2");
    auto rep2 = serre_reduce(S3, d2.in_D, H, Utriv);
    CHECK(!rep2.hyp_class_size);
    CHECK(!rep2.applicable);

    CHECK_THROWS(serre_reduce(S3, {0, 0, 0}, H, Utriv));
}

TEST_CASE("coset certificates") {
    auto C4 = parse_group("C4");
    auto cert = coset_certificate(C4, {1, 3});
    REQUIRE(cert.has_value());
    CHECK(cert->a == 1);
    CHECK(cert->H == std::vector<Elem>{0, 2});

    auto S3 = parse_group("S3");
    auto a3 = S3.classes().members(0);
    for (Elem e : S3.classes().members(1)) a3.push_back(e);
    std::sort(a3.begin(), a3.end());
    auto cert2 = coset_certificate(S3, a3);
    REQUIRE(cert2.has_value());
    CHECK(cert2->a == a3.front());

    auto cyc = S3.classes().members(1);  // the 3-cycles alone: not a coset
    CHECK(!coset_certificate(S3, cyc).has_value());
    CHECK_THROWS(coset_certificate(S3, {}));
}

TEST_CASE("sieve weight") {
    auto C4 = parse_group("C4");
    auto sw = sieve_weight(C4, {1, 0, 0, 0});
    CHECK(std::abs(sw.phi.v[0].real() - std::sqrt(3.0)) < 1e-12);
    for (size_t c = 1; c < 4; ++c)
        CHECK(std::abs(sw.phi.v[c].real() + 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(sw.phi.mu()) < 1e-12);

    auto S3 = parse_group("S3");
    auto d = parse_set(S3, "ncycle");
    auto sw3 = sieve_weight(S3, d.in_D);
    CHECK(sw3.lambda_phi.lambda <= 4.0 + 1e-9);
    CHECK(sw3.lambda_phi2.lambda <= 4.0 + 1e-9);

    auto C2 = parse_group("C2");
    auto swc = sieve_weight(C2, {0, 1});
    CHECK(std::abs(swc.lambda_phi.lambda - 1.0) < 1e-12);

    CHECK_THROWS(sieve_weight(C4, {0, 0, 0, 0}));
    CHECK_THROWS(sieve_weight(C4, {1, 1, 1, 1}));
}

TEST_CASE("norm axioms and elementary bounds (randomized smoke)") {
    auto S4 = parse_group("S4");
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = random_real_cf(S4, rng);
        auto g = random_real_cf(S4, rng);
        double lf = lambda_norm(f).lambda;
        double lg = lambda_norm(g).lambda;
        CHECK(lambda_norm(f + g).lambda <= lf + lg + 1e-9 * (1 + lf + lg));
        auto sc = f;
        sc.scale(Rat(-3, 2));
        CHECK(std::abs(lambda_norm(sc).lambda - 1.5 * lf) < 1e-9 * (1 + lf));
        CHECK(lambda_norm(pointwise(f, g)).lambda <= lf * lg + 1e-8 * (1 + lf * lg));
        // trivial and Cauchy-Schwarz bounds
        auto rep = lambda_norm(f);
        CHECK(rep.lambda <= rep.bound_cauchy_schwarz + 1e-9 * (1 + rep.lambda));
        CHECK(rep.bound_cauchy_schwarz <= rep.bound_trivial + 1e-9);
        CHECK(rep.lambda + 1e-9 >= f.max_abs());
    }
    // lambda(f) = 0 iff f = 0
    auto z = ClassFunction::zeros(S4);
    CHECK(lambda_norm(z).lambda == 0.0);
}

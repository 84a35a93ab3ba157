#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>

#include "littlewood/characters.hpp"
#include "littlewood/group_parse.hpp"

using namespace lw;

TEST_CASE("murnaghan-nakayama values") {
    // hook diagram with l=3 rows at an n-cycle: (-1)^{l-1}
    CHECK(mn_value({2, 1, 1}, {4}) == 1);
    // dimension of (3,1): binom(3,1) = 3
    CHECK(mn_value({3, 1}, {1, 1, 1, 1}) == 3);
    // non-hook at an n-cycle vanishes
    CHECK(mn_value({2, 2}, {4}) == 0);
    // (4,1) at a 5-cycle: hook with l=2
    CHECK(mn_value({4, 1}, {5}) == -1);
    // sanity: trivial and sign
    CHECK(mn_value({5}, {3, 2}) == 1);
    CHECK(mn_value({1, 1, 1, 1, 1}, {3, 2}) == -1);
    CHECK_THROWS(mn_value({2, 1}, {4}));
}

TEST_CASE("abelian tables") {
    auto C2 = parse_group("C2");
    auto t2 = CharacterTable::abelian(C2);
    CHECK(t2.value(0, 0) == std::complex<double>(1, 0));
    CHECK(t2.value(0, 1) == std::complex<double>(1, 0));
    CHECK(t2.value(1, 0) == std::complex<double>(1, 0));
    CHECK(std::abs(t2.value(1, 1) - std::complex<double>(-1, 0)) < 1e-15);

    auto C3 = parse_group("C3");
    auto t3 = CharacterTable::abelian(C3);
    std::complex<double> w = std::polar(1.0, 2 * M_PI / 3);
    CHECK(std::abs(t3.value(1, 1) - w) < 1e-14);
    CHECK(std::abs(t3.value(2, 1) - w * w) < 1e-14);
    CHECK(std::abs(t3.value(1, 2) - w * w) < 1e-14);

    auto V = parse_group("C2xC2");
    auto tv = CharacterTable::abelian(V);
    for (int64_t a = 0; a < 4; ++a)
        for (int64_t x = 0; x < 4; ++x) {
            double re = tv.value(a, x).real();
            CHECK(std::abs(tv.value(a, x).imag()) < 1e-15);
            CHECK(std::abs(std::abs(re) - 1.0) < 1e-15);
        }

    // character group closed under pointwise product (dual index adds)
    auto C12 = parse_group("C12");
    auto t12 = CharacterTable::abelian(C12);
    for (int64_t a = 0; a < 12; ++a)
        for (int64_t b = 0; b < 12; ++b)
            for (int64_t x : {1, 5, 7}) {
                auto lhs = t12.value(a, x) * t12.value(b, x);
                auto rhs = t12.value(C12.mul(a, b), x);
                CHECK(std::abs(lhs - rhs) < 1e-13);
            }

    CHECK(t12.verify().pass);
    CHECK(t12.verify().row_residual < 1e-12);
    CHECK_THROWS(CharacterTable::abelian(parse_group("S3")));
}

TEST_CASE("symmetric tables") {
    auto t3 = CharacterTable::symmetric(parse_group("S3"));
    CHECK(t3.dim(0) == 1);  // partition (3)
    CHECK(t3.dim(1) == 2);  // partition (2,1)
    CHECK(t3.dim(2) == 1);  // partition (1,1,1)
    CHECK(t3.verify().pass);

    auto t4 = CharacterTable::symmetric(parse_group("S4"));
    std::multiset<int64_t> dims;
    int64_t sq = 0;
    for (int64_t p = 0; p < t4.k(); ++p) {
        dims.insert(t4.dim(p));
        sq += t4.dim(p) * t4.dim(p);
    }
    CHECK(dims == std::multiset<int64_t>{1, 1, 2, 3, 3});
    CHECK(sq == 24);

    // chi_{(4,1)} at the 5-cycle class of S5
    auto S5 = parse_group("S5");
    auto t5 = CharacterTable::symmetric(S5);
    const auto& s5 = dynamic_cast<const SymmetricGroup&>(S5.impl());
    ClassIdx c5 = s5.class_of_type({5});
    int64_t pi41 = -1;
    for (int64_t p = 0; p < t5.k(); ++p)
        if (t5.partition_of(p) == Partition{4, 1}) pi41 = p;
    REQUIRE(pi41 >= 0);
    CHECK(t5.value(pi41, c5) == std::complex<double>(-1, 0));
    CHECK(t5.verify().pass);

    CHECK_THROWS(CharacterTable::symmetric(parse_group("C6")));
}

TEST_CASE("dixon on S3 matches MN up to row order") {
    auto S3 = parse_group("S3");
    auto tmn = CharacterTable::symmetric(S3);
    auto tdx = CharacterTable::dixon(S3);
    REQUIRE(tdx.k() == tmn.k());
    // match rows by value vectors
    for (int64_t p = 0; p < tmn.k(); ++p) {
        bool found = false;
        for (int64_t q = 0; q < tdx.k(); ++q) {
            double diff = 0;
            for (ClassIdx c = 0; c < tmn.k(); ++c)
                diff += std::abs(tmn.value(p, c) - tdx.value(q, c));
            if (diff < 1e-9) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("dixon on small groups") {
    auto Q8 = parse_group("Q8");
    auto t = CharacterTable::dixon(Q8);
    std::multiset<int64_t> dims;
    for (int64_t p = 0; p < t.k(); ++p) dims.insert(t.dim(p));
    CHECK(dims == std::multiset<int64_t>{1, 1, 1, 1, 2});
    CHECK(t.verify().pass);

    auto D5 = parse_group("D5");
    auto td = CharacterTable::dixon(D5);
    std::multiset<int64_t> dd;
    for (int64_t p = 0; p < td.k(); ++p) dd.insert(td.dim(p));
    CHECK(dd == std::multiset<int64_t>{1, 1, 2, 2});
    CHECK(td.verify().pass);

    // abelian group through the generic engine
    auto C6 = parse_group("C6");
    auto tc = CharacterTable::dixon(C6);
    CHECK(tc.k() == 6);
    CHECK(tc.verify().pass);
}

TEST_CASE("dixon on GL2(3)") {
    auto G = parse_group("GL2(3)");
    auto t = CharacterTable::dixon(G);
    REQUIRE(t.k() == 8);
    std::multiset<int64_t> dims;
    int64_t sq = 0;
    for (int64_t p = 0; p < 8; ++p) {
        dims.insert(t.dim(p));
        sq += t.dim(p) * t.dim(p);
    }
    CHECK(dims == std::multiset<int64_t>{1, 1, 2, 2, 2, 3, 3, 4});
    CHECK(sq == 48);
    CHECK(t.verify().pass);
}

TEST_CASE("verify_table flags corruption") {
    auto S3 = parse_group("S3");
    auto t = CharacterTable::symmetric(S3);
    std::vector<std::vector<std::complex<double>>> vals;
    for (int64_t p = 0; p < t.k(); ++p) {
        vals.emplace_back();
        for (ClassIdx c = 0; c < t.k(); ++c) vals.back().push_back(t.value(p, c));
    }
    vals[1][2] += 0.05;  // perturb one entry
    auto bad = CharacterTable::from_dense(S3, vals);
    CHECK(!bad.verify().pass);

    auto t5 = CharacterTable::symmetric(parse_group("S5"));
    CHECK(t5.verify().pass);
}

TEST_CASE("MN and Dixon agree on S4..S6 up to reordering") {
    for (int n : {4, 5, 6}) {
        auto G = parse_group("S" + std::to_string(n));
        auto tmn = CharacterTable::symmetric(G);
        auto tdx = CharacterTable::dixon(G);
        REQUIRE(tmn.k() == tdx.k());
        std::set<int64_t> used;
        for (int64_t p = 0; p < tmn.k(); ++p) {
            int64_t match = -1;
            for (int64_t q = 0; q < tdx.k(); ++q) {
                if (used.count(q)) continue;
                double diff = 0;
                for (ClassIdx c = 0; c < tmn.k(); ++c)
                    diff += std::abs(tmn.value(p, c) - tdx.value(q, c));
                if (diff < 1e-8) { match = q; break; }
            }
            REQUIRE(match >= 0);
            used.insert(match);
        }
    }
}

TEST_CASE("exact cyclotomic values agree with float values") {
    auto G = parse_group("GL2(3)");
    auto t = CharacterTable::dixon(G);
    for (int64_t p = 0; p < t.k(); ++p)
        for (ClassIdx c = 0; c < t.k(); ++c)
            CHECK(std::abs(t.exact_value(p, c).to_complex() - t.value(p, c)) < 1e-11);

    auto C8 = parse_group("C8");
    auto t8 = CharacterTable::abelian(C8);
    for (int64_t p = 0; p < 8; ++p)
        for (ClassIdx c = 0; c < 8; ++c)
            CHECK(std::abs(t8.exact_value(p, c).to_complex() - t8.value(p, c)) < 1e-14);
}

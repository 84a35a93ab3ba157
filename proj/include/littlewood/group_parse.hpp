#pragma once

#include <cctype>
#include <fstream>
#include <sstream>

#include "littlewood/group.hpp"

namespace lw {

/// Structured group description; see parse_group for the surface syntax.
struct GroupSpec {
    enum class Kind {
        Cyclic, Abelian, Symmetric, Alternating, Dihedral,
        GL2, SL2, TorusDiag, TorusSymp, TorusGSymp,
        PermGens, Product, MulTable, Units, Quaternion8
    };
    Kind kind;
    std::vector<int64_t> params;             // family parameters
    std::vector<std::vector<int>> perm_gens; // 0-based images
    int perm_degree = 0;
    std::string path;                        // mul-table file
    std::vector<GroupSpec> factors;          // product
};

namespace detail {

inline int64_t parse_int(const std::string& s) {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

/// "(1,2,3)(4,5)" -> permutation as 0-based image vector on the inferred degree.
inline std::vector<int> parse_cycles(const std::string& s, int& degree) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') throw std::invalid_argument("expected '(' in permutation '" + s + "'");
        size_t j = s.find(')', i);
        if (j == std::string::npos) throw std::invalid_argument("unbalanced cycle in '" + s + "'");
        std::string body = s.substr(i + 1, j - i - 1);
        std::vector<int> cyc;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            int v = int(parse_int(tok));
            if (v < 1) throw std::invalid_argument("permutation points are 1-based");
            cyc.push_back(v - 1);
            degree = std::max(degree, v);
        }
        if (cyc.size() < 1) throw std::invalid_argument("empty cycle");
        cycles.push_back(cyc);
        i = j + 1;
    }
    std::vector<int> img;
    auto apply = [&](int deg) {
        img.resize(size_t(deg));
        std::iota(img.begin(), img.end(), 0);
        for (auto& cyc : cycles)
            for (size_t t = 0; t < cyc.size(); ++t) {
                int from = cyc[t], to = cyc[(t + 1) % cyc.size()];
                img[size_t(from)] = to;
            }
    };
    apply(degree);
    // a point may appear only once across all cycles
    std::vector<int> count(size_t(degree), 0);
    for (auto& cyc : cycles)
        for (int v : cyc)
            if (++count[size_t(v)] > 1)
                throw std::invalid_argument("point repeated in permutation '" + s + "'");
    return img;
}

inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

/// Group mini-language:
///   C6, C2xC4, S5, A5, D8, Q8, U15, GL2(7), SL2(5),
///   T-diag(n,l), T-symp(l), T-gsymp(l),
///   perm:(1,2,3)(4,5);(1,2), prod:<spec>*<spec>, mul:<path>
inline GroupSpec parse_group_spec(const std::string& in) {
    using K = GroupSpec::Kind;
    std::string s = in;
    GroupSpec g;
    auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };

    if (starts("prod:")) {
        g.kind = K::Product;
        auto parts = detail::split_top(s.substr(5), '*');
        if (parts.size() < 2) throw std::invalid_argument("prod: needs at least two factors");
        for (auto& p : parts) g.factors.push_back(parse_group_spec(p));
        return g;
    }
    if (starts("mul:")) {
        g.kind = K::MulTable;
        g.path = s.substr(4);
        return g;
    }
    if (starts("perm:")) {
        g.kind = K::PermGens;
        int degree = 1;
        auto raw = detail::split_top(s.substr(5), ';');
        // first pass fixes the common degree, second builds full image vectors
        for (auto& t : raw) {
            int d = degree;
            detail::parse_cycles(t, d);
            degree = std::max(degree, d);
        }
        for (auto& t : raw) {
            int d = degree;
            g.perm_gens.push_back(detail::parse_cycles(t, d));
        }
        g.perm_degree = degree;
        return g;
    }
    if (s == "Q8") {
        g.kind = K::Quaternion8;
        return g;
    }
    if (starts("T-diag(") || starts("T-symp(") || starts("T-gsymp(")) {
        size_t open = s.find('(');
        if (s.back() != ')') throw std::invalid_argument("bad torus spec '" + s + "'");
        std::string kindstr = s.substr(0, open);
        auto args = detail::split_top(s.substr(open + 1, s.size() - open - 2), ',');
        if (kindstr == "T-diag") {
            if (args.size() != 2) throw std::invalid_argument("T-diag needs (n,l)");
            g.kind = K::TorusDiag;
            g.params = {detail::parse_int(args[0]), detail::parse_int(args[1])};
        } else {
            if (args.size() != 1) throw std::invalid_argument(kindstr + " needs (l)");
            g.kind = kindstr == "T-symp" ? K::TorusSymp : K::TorusGSymp;
            g.params = {detail::parse_int(args[0])};
        }
        return g;
    }
    if (starts("GL2(") || starts("SL2(")) {
        if (s.back() != ')') throw std::invalid_argument("bad matrix spec '" + s + "'");
        g.kind = starts("GL2(") ? K::GL2 : K::SL2;
        g.params = {detail::parse_int(s.substr(4, s.size() - 5))};
        return g;
    }
    if (s.size() >= 2 && (s[0] == 'C') && std::isdigit(s[1])) {
        auto parts = detail::split_top(s, 'x');
        std::vector<int64_t> facs;
        for (auto& p : parts) {
            if (p.size() < 2 || p[0] != 'C') throw std::invalid_argument("bad abelian spec '" + s + "'");
            facs.push_back(detail::parse_int(p.substr(1)));
        }
        g.kind = facs.size() == 1 ? K::Cyclic : K::Abelian;
        g.params = facs;
        return g;
    }
    if (s.size() >= 2 && s[0] == 'S' && std::isdigit(s[1])) {
        g.kind = K::Symmetric;
        g.params = {detail::parse_int(s.substr(1))};
        return g;
    }
    if (s.size() >= 2 && s[0] == 'A' && std::isdigit(s[1])) {
        g.kind = K::Alternating;
        g.params = {detail::parse_int(s.substr(1))};
        return g;
    }
    if (s.size() >= 2 && s[0] == 'D' && std::isdigit(s[1])) {
        g.kind = K::Dihedral;
        g.params = {detail::parse_int(s.substr(1))};
        return g;
    }
    if (s.size() >= 2 && s[0] == 'U' && std::isdigit(s[1])) {
        g.kind = K::Units;
        g.params = {detail::parse_int(s.substr(1))};
        return g;
    }
    throw std::invalid_argument("unrecognized group spec '" + in + "'");
}

inline FiniteGroup build_group(const GroupSpec& spec) {
    using K = GroupSpec::Kind;
    auto positive = [&](int64_t v, const char* what) {
        if (v < 1) throw std::invalid_argument(std::string(what) + " must be positive");
        return v;
    };
    switch (spec.kind) {
        case K::Cyclic:
            return FiniteGroup(std::make_shared<CyclicGroup>(positive(spec.params[0], "cyclic order")));
        case K::Abelian: {
            for (int64_t d : spec.params) positive(d, "abelian factor");
            return FiniteGroup(std::make_shared<AbelianGroup>(spec.params));
        }
        case K::Symmetric:
            return FiniteGroup(std::make_shared<SymmetricGroup>(int(positive(spec.params[0], "degree"))));
        case K::Alternating: {
            int n = int(positive(spec.params[0], "degree"));
            if (n > 8) throw std::invalid_argument("A_n beyond n=8 exceeds enumeration budget");
            std::vector<std::vector<int>> gens;
            for (int i = 2; i < n; ++i) {
                std::vector<int> img(static_cast<size_t>(n));
                std::iota(img.begin(), img.end(), 0);
                img[0] = 1;
                img[1] = i;
                img[size_t(i)] = 0;
                gens.push_back(img);  // 3-cycle (1,2,i+1)
            }
            if (gens.empty()) {
                auto id = std::vector<int>(size_t(n));
                std::iota(id.begin(), id.end(), 0);
                gens.push_back(id);
            }
            return FiniteGroup(std::make_shared<PermGroup>(n, gens, "A" + std::to_string(n)));
        }
        case K::Dihedral:
            return FiniteGroup(std::make_shared<DihedralGroup>(positive(spec.params[0], "dihedral parameter")));
        case K::GL2:
            return FiniteGroup(std::make_shared<Matrix2Group>(spec.params[0], false));
        case K::SL2:
            return FiniteGroup(std::make_shared<Matrix2Group>(spec.params[0], true));
        case K::TorusDiag:
            return FiniteGroup(std::make_shared<TorusGroup>(TorusGroup::Kind::Diag,
                                                            int(positive(spec.params[0], "rank")),
                                                            spec.params[1]));
        case K::TorusSymp:
            return FiniteGroup(std::make_shared<TorusGroup>(TorusGroup::Kind::Symp, 2, spec.params[0]));
        case K::TorusGSymp:
            return FiniteGroup(std::make_shared<TorusGroup>(TorusGroup::Kind::GSymp, 3, spec.params[0]));
        case K::Units:
            return FiniteGroup(std::make_shared<UnitGroup>(positive(spec.params[0], "modulus")));
        case K::PermGens: {
            for (auto& g : spec.perm_gens) {
                std::vector<bool> seen(g.size(), false);
                for (int v : g) {
                    if (v < 0 || v >= int(g.size()) || seen[size_t(v)])
                        throw std::invalid_argument("permutation generator is not a bijection");
                    seen[size_t(v)] = true;
                }
            }
            return FiniteGroup(std::make_shared<PermGroup>(spec.perm_degree, spec.perm_gens, "perm-group"));
        }
        case K::Product: {
            FiniteGroup acc = build_group(spec.factors[0]);
            for (size_t i = 1; i < spec.factors.size(); ++i)
                acc = direct_product(acc, build_group(spec.factors[i]));
            return acc;
        }
        case K::MulTable: {
            std::ifstream in(spec.path);
            if (!in) throw std::invalid_argument("cannot open multiplication table file: " + spec.path);
            int64_t n;
            if (!(in >> n) || n < 1) throw std::invalid_argument("bad multiplication table header");
            std::vector<int32_t> t;
            t.reserve(size_t(n * n));
            int64_t v;
            while (in >> v) t.push_back(int32_t(v));
            if (int64_t(t.size()) != n * n)
                throw std::invalid_argument("multiplication table needs order^2 entries");
            return FiniteGroup(std::make_shared<MulTableGroup>(n, std::move(t)));
        }
        case K::Quaternion8: {
            // elements 1,-1,i,-i,j,-j,k,-k as indices 0..7
            auto code = [](int sign, int axis) { return (axis << 1) | (sign < 0 ? 1 : 0); };
            // axis: 0->1, 1->i, 2->j, 3->k
            auto quat_mul = [&](int a, int b) {
                int sa = (a & 1) ? -1 : 1, xa = a >> 1;
                int sb = (b & 1) ? -1 : 1, xb = b >> 1;
                static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
                static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
                return code(sa * sb * sign[xa][xb], axis[xa][xb]);
            };
            std::vector<int32_t> t(64);
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b) t[size_t(a * 8 + b)] = int32_t(quat_mul(a, b));
            return FiniteGroup(std::make_shared<MulTableGroup>(8, std::move(t), "Q8"));
        }
    }
    throw std::logic_error("unhandled group kind");
}

inline FiniteGroup parse_group(const std::string& s) { return build_group(parse_group_spec(s)); }

}  // namespace lw

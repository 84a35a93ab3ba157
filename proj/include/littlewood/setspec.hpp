#pragma once

#include <fstream>
#include <set>

#include "littlewood/group_parse.hpp"
#include "littlewood/littlewood.hpp"

namespace lw {

/// A conjugation-invariant subset, as a class bitmap plus derived counts.
struct ClassSet {
    FiniteGroup G;
    std::vector<char> in_D;  // per class
    int64_t element_count = 0;
    int64_t class_count = 0;

    static ClassSet from_bitmap(const FiniteGroup& G, std::vector<char> bm) {
        ClassSet s;
        s.G = G;
        s.in_D = std::move(bm);
        const ConjugacyData& cd = G.classes();
        for (ClassIdx c = 0; c < cd.k(); ++c)
            if (s.in_D[size_t(c)]) {
                ++s.class_count;
                s.element_count += cd.size(c);
            }
        return s;
    }

    bool empty() const { return element_count == 0; }

    /// Element list (enumerable groups only).
    std::vector<Elem> elements() const {
        const ConjugacyData& cd = G.classes();
        std::vector<Elem> out;
        for (ClassIdx c = 0; c < cd.k(); ++c)
            if (in_D[size_t(c)])
                for (Elem e : cd.members(c)) out.push_back(e);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool inversion_closed() const {
        const ConjugacyData& cd = G.classes();
        for (ClassIdx c = 0; c < cd.k(); ++c)
            if (in_D[size_t(c)] != in_D[size_t(cd.inv_class(c))]) return false;
        return true;
    }
};

namespace setdetail {

inline ClassSet from_elements(const FiniteGroup& G, const std::vector<Elem>& elems) {
    const ConjugacyData& cd = G.classes();
    std::vector<char> bm(size_t(cd.k()), 0);
    int64_t count = 0;
    std::set<Elem> uniq(elems.begin(), elems.end());
    for (Elem e : uniq) {
        if (e < 0 || e >= G.order()) throw std::invalid_argument("element index out of range");
        bm[size_t(cd.class_of(e))] = 1;
        ++count;
    }
    ClassSet s = ClassSet::from_bitmap(G, std::move(bm));
    if (s.element_count != count)
        throw std::invalid_argument("element set is not conjugation-invariant");
    return s;
}

inline std::vector<int64_t> parse_int_list(const std::string& s) {
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(detail::parse_int(tok));
    return out;
}

}  // namespace setdetail

/// Set mini-language:
///   class:<element>, union:c1,c2,..., gen, ncycle, fix=0, fix>=k,
///   trace=a[,dr], coset:a,{e1,e2,...}, !<set>, file:<path>, all,
///   interval:lo,hi (residue-labeled groups)
inline ClassSet parse_set(const FiniteGroup& G, const std::string& in) {
    const ConjugacyData& cd = G.classes();
    const int64_t k = cd.k();
    std::string s = in;
    auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };

    if (!s.empty() && s[0] == '!') {
        ClassSet inner = parse_set(G, s.substr(1));
        std::vector<char> bm(size_t(k));
        for (ClassIdx c = 0; c < k; ++c) bm[size_t(c)] = !inner.in_D[size_t(c)];
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (s == "all") {
        return ClassSet::from_bitmap(G, std::vector<char>(size_t(k), 1));
    }
    if (starts("class:")) {
        Elem e = detail::parse_int(s.substr(6));
        if (e < 0 || e >= G.order()) throw std::invalid_argument("class: element out of range");
        std::vector<char> bm(size_t(k), 0);
        bm[size_t(cd.class_of(e))] = 1;
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (starts("union:")) {
        std::vector<char> bm(size_t(k), 0);
        for (int64_t c : setdetail::parse_int_list(s.substr(6))) {
            if (c < 0 || c >= k) throw std::invalid_argument("union: class index out of range");
            bm[size_t(c)] = 1;
        }
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (s == "gen") {
        if (!G.is_abelian()) throw std::invalid_argument("gen: requires an abelian (cyclic) group");
        std::vector<char> bm(size_t(k), 0);
        for (ClassIdx c = 0; c < k; ++c)
            if (G.element_order(cd.rep(c)) == G.order()) bm[size_t(c)] = 1;
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (s == "ncycle") {
        auto* sym = dynamic_cast<const SymmetricGroup*>(&G.impl());
        if (!sym) throw std::invalid_argument("ncycle: requires a symmetric group");
        std::vector<char> bm(size_t(k), 0);
        bm[size_t(sym->class_of_type({sym->degree()}))] = 1;
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (starts("fix=") || starts("fix>=")) {
        bool ge = starts("fix>=");
        int64_t bound = detail::parse_int(s.substr(ge ? 5 : 4));
        std::vector<char> bm(size_t(k), 0);
        for (ClassIdx c = 0; c < k; ++c) {
            auto fp = G.impl().fixed_points(cd.rep(c));
            if (!fp) throw std::invalid_argument("fix: group has no permutation labels");
            bm[size_t(c)] = ge ? (*fp >= bound) : (*fp == bound);
        }
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (starts("trace=")) {
        std::string body = s.substr(6);
        bool dr = false;
        if (body.size() > 3 && body.substr(body.size() - 3) == ",dr") {
            dr = true;
            body = body.substr(0, body.size() - 3);
        }
        int64_t a = detail::parse_int(body);
        if (!G.impl().has_trace_label())
            throw std::invalid_argument("trace: group has no trace labels");
        auto q = G.impl().field_size();
        int64_t amod = q ? ((a % *q) + *q) % *q : a;
        std::vector<char> bm(size_t(k), 0);
        for (ClassIdx c = 0; c < k; ++c) {
            auto tr = G.impl().trace_label(cd.rep(c));
            if (!tr) continue;
            if (*tr == amod && (!dr || G.impl().regular_semisimple(cd.rep(c)))) bm[size_t(c)] = 1;
        }
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    if (starts("coset:")) {
        std::string body = s.substr(6);
        size_t brace = body.find(",{");
        if (brace == std::string::npos || body.back() != '}')
            throw std::invalid_argument("coset: expected coset:a,{e1,e2,...}");
        Elem a = detail::parse_int(body.substr(0, brace));
        auto hs = setdetail::parse_int_list(body.substr(brace + 2, body.size() - brace - 3));
        std::vector<Elem> elems;
        for (int64_t h : hs) elems.push_back(G.mul(a, h));
        return setdetail::from_elements(G, elems);
    }
    if (starts("file:")) {
        std::ifstream infile(s.substr(5));
        if (!infile) throw std::invalid_argument("cannot open element list file");
        std::vector<Elem> elems;
        int64_t e;
        while (infile >> e) elems.push_back(e);
        return setdetail::from_elements(G, elems);
    }
    if (starts("interval:")) {
        auto lohi = setdetail::parse_int_list(s.substr(9));
        if (lohi.size() != 2) throw std::invalid_argument("interval: expected interval:lo,hi");
        std::vector<char> bm(size_t(k), 0);
        bool any_label = false;
        for (ClassIdx c = 0; c < k; ++c) {
            auto r = G.impl().residue_label(cd.rep(c));
            if (!r) continue;
            any_label = true;
            if (*r >= lohi[0] && *r <= lohi[1]) bm[size_t(c)] = 1;
        }
        if (!any_label) throw std::invalid_argument("interval: group has no residue labels");
        return ClassSet::from_bitmap(G, std::move(bm));
    }
    throw std::invalid_argument("unrecognized set spec '" + in + "'");
}

}  // namespace lw

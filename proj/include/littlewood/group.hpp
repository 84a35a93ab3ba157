#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "littlewood/rational.hpp"

namespace lw {

using Elem = int64_t;
using ClassIdx = int64_t;

/// Hard cap on explicit element enumeration (matrix groups, closures, ...).
inline constexpr int64_t kEnumBudget = 100000;

class GroupImpl;

/// Conjugacy structure of a finite group. Classes are canonically ordered:
/// identity class first, then ascending (size, smallest member index).
class ConjugacyData {
public:
    static ConjugacyData implicit_abelian(int64_t order, std::function<Elem(Elem)> inv) {
        ConjugacyData cd;
        cd.implicit_ = true;
        cd.order_ = order;
        cd.inv_fn_ = std::move(inv);
        return cd;
    }

    /// Summary mode: per-class arrays, element lookup through a callback,
    /// members unavailable.
    static ConjugacyData summary(std::vector<Elem> rep, std::vector<int64_t> size,
                                 std::vector<ClassIdx> inv_class,
                                 std::function<ClassIdx(Elem)> class_of) {
        ConjugacyData cd;
        cd.rep_ = std::move(rep);
        cd.size_ = std::move(size);
        cd.invc_ = std::move(inv_class);
        cd.class_of_fn_ = std::move(class_of);
        cd.order_ = std::accumulate(cd.size_.begin(), cd.size_.end(), int64_t(0));
        return cd;
    }

    /// Full mode from a raw class assignment; canonicalizes the ordering.
    static ConjugacyData from_assignment(std::vector<int32_t> raw_class_of, Elem identity,
                                         const std::function<Elem(Elem)>& inv);

    int64_t k() const { return implicit_ ? order_ : int64_t(rep_.size()); }
    int64_t group_order() const { return order_; }

    Elem rep(ClassIdx c) const { return implicit_ ? c : rep_[c]; }
    int64_t size(ClassIdx c) const { return implicit_ ? 1 : size_[c]; }
    ClassIdx inv_class(ClassIdx c) const { return implicit_ ? inv_fn_(c) : invc_[c]; }

    ClassIdx class_of(Elem e) const {
        if (implicit_) return e;
        if (!class_of_.empty()) return class_of_[size_t(e)];
        return class_of_fn_(e);
    }

    bool has_members() const { return implicit_ || !members_.empty(); }
    std::vector<Elem> members(ClassIdx c) const {
        if (implicit_) return {c};
        if (members_.empty()) throw std::runtime_error("class member lists unavailable for this group");
        return members_[c];
    }

private:
    bool implicit_ = false;
    int64_t order_ = 0;
    std::vector<Elem> rep_;
    std::vector<int64_t> size_;
    std::vector<ClassIdx> invc_;
    std::vector<int32_t> class_of_;
    std::vector<std::vector<Elem>> members_;
    std::function<ClassIdx(Elem)> class_of_fn_;
    std::function<ClassIdx(ClassIdx)> inv_fn_;
};

/// Abstract finite group with indexed elements; index 0 is the identity.
class GroupImpl {
public:
    virtual ~GroupImpl() = default;

    virtual int64_t order() const = 0;
    virtual Elem mul(Elem a, Elem b) const = 0;
    virtual Elem inv(Elem a) const = 0;
    virtual std::string name() const = 0;
    virtual bool is_abelian() const = 0;
    virtual std::vector<Elem> generators() const = 0;

    /// True when per-element iteration is feasible within budget.
    virtual bool enumerable() const { return order() <= kEnumBudget; }

    Elem power(Elem g, long long m) const {
        if (m < 0) { g = inv(g); m = -m; }
        Elem acc = 0;
        while (m) {
            if (m & 1) acc = mul(acc, g);
            g = mul(g, g);
            m >>= 1;
        }
        return acc;
    }

    virtual int64_t element_order(Elem g) const {
        Elem x = g;
        int64_t o = 1;
        while (x != 0) {
            x = mul(x, g);
            ++o;
            if (o > order()) throw std::logic_error("element order exceeded group order");
        }
        return o;
    }

    virtual int64_t exponent() const {
        const ConjugacyData& cd = classes();
        int64_t e = 1;
        for (ClassIdx c = 0; c < cd.k(); ++c) e = lcm64(e, element_order(cd.rep(c)));
        return e;
    }

    const ConjugacyData& classes() const {
        std::call_once(class_once_, [this] {
            classes_ = std::make_unique<ConjugacyData>(
                is_abelian() ? ConjugacyData::implicit_abelian(order(), [this](Elem e) { return inv(e); })
                             : compute_classes());
        });
        return *classes_;
    }

    virtual ClassIdx class_power(ClassIdx c, long long m) const {
        const ConjugacyData& cd = classes();
        return cd.class_of(power(cd.rep(c), m));
    }

    /// Optional per-element labels; families that carry them override.
    virtual std::optional<int64_t> trace_label(Elem) const { return std::nullopt; }
    virtual bool has_trace_label() const { return false; }
    virtual bool regular_semisimple(Elem) const { return false; }
    virtual std::optional<int64_t> fixed_points(Elem) const { return std::nullopt; }
    virtual std::optional<int64_t> residue_label(Elem) const { return std::nullopt; }
    virtual std::optional<int64_t> field_size() const { return std::nullopt; }

    std::vector<Elem> center() const {
        if (!enumerable()) {
            if (is_abelian()) throw std::runtime_error("center(): group too large");
        }
        if (is_abelian()) {
            std::vector<Elem> z(static_cast<size_t>(order()));
            std::iota(z.begin(), z.end(), 0);
            return z;
        }
        std::vector<Elem> z;
        auto gens = generators();
        for (Elem x = 0; x < order(); ++x) {
            bool ok = true;
            for (Elem g : gens)
                if (mul(x, g) != mul(g, x)) { ok = false; break; }
            if (ok) z.push_back(x);
        }
        return z;
    }

protected:
    /// Default engine: conjugation-orbit BFS with the generator set.
    virtual ConjugacyData compute_classes() const;

private:
    mutable std::once_flag class_once_;
    mutable std::unique_ptr<ConjugacyData> classes_;
};

inline ConjugacyData ConjugacyData::from_assignment(std::vector<int32_t> raw, Elem identity,
                                                    const std::function<Elem(Elem)>& inv) {
    int32_t kraw = 0;
    for (int32_t c : raw) kraw = std::max(kraw, c + 1);
    std::vector<int64_t> size(kraw, 0);
    std::vector<Elem> minel(kraw, int64_t(raw.size()));
    for (size_t e = 0; e < raw.size(); ++e) {
        ++size[raw[e]];
        minel[raw[e]] = std::min<Elem>(minel[raw[e]], Elem(e));
    }
    std::vector<int32_t> perm(kraw);
    std::iota(perm.begin(), perm.end(), 0);
    int32_t idc = raw[size_t(identity)];
    std::sort(perm.begin(), perm.end(), [&](int32_t a, int32_t b) {
        if ((a == idc) != (b == idc)) return a == idc;
        if (size[a] != size[b]) return size[a] < size[b];
        return minel[a] < minel[b];
    });
    std::vector<int32_t> newidx(kraw);
    for (int32_t i = 0; i < kraw; ++i) newidx[perm[i]] = i;

    ConjugacyData cd;
    cd.order_ = int64_t(raw.size());
    cd.rep_.resize(kraw);
    cd.size_.resize(kraw);
    cd.members_.resize(kraw);
    cd.class_of_.resize(raw.size());
    for (size_t e = 0; e < raw.size(); ++e) {
        int32_t c = newidx[raw[e]];
        cd.class_of_[e] = c;
        cd.members_[c].push_back(Elem(e));
    }
    for (int32_t c = 0; c < kraw; ++c) {
        cd.rep_[c] = cd.members_[c].front();  // members pushed in ascending order
        cd.size_[c] = int64_t(cd.members_[c].size());
    }
    cd.invc_.resize(kraw);
    for (int32_t c = 0; c < kraw; ++c) cd.invc_[c] = cd.class_of_[size_t(inv(cd.rep_[c]))];
    return cd;
}

inline ConjugacyData GroupImpl::compute_classes() const {
    int64_t n = order();
    if (!enumerable()) throw std::runtime_error("conjugacy enumeration budget exceeded for " + name());
    std::vector<int32_t> cls(size_t(n), -1);
    auto gens = generators();
    int32_t next = 0;
    std::vector<Elem> stack;
    for (Elem x = 0; x < n; ++x) {
        if (cls[size_t(x)] >= 0) continue;
        int32_t c = next++;
        cls[size_t(x)] = c;
        stack.assign(1, x);
        while (!stack.empty()) {
            Elem y = stack.back();
            stack.pop_back();
            for (Elem g : gens) {
                Elem z = mul(mul(g, y), inv(g));
                if (cls[size_t(z)] < 0) {
                    cls[size_t(z)] = c;
                    stack.push_back(z);
                }
            }
        }
    }
    return ConjugacyData::from_assignment(std::move(cls), 0, [this](Elem e) { return inv(e); });
}

/// Value-semantics handle to an immutable group.
class FiniteGroup {
public:
    FiniteGroup() = default;
    explicit FiniteGroup(std::shared_ptr<const GroupImpl> p) : p_(std::move(p)) {}

    const GroupImpl& impl() const { return *p_; }
    std::shared_ptr<const GroupImpl> ptr() const { return p_; }
    bool valid() const { return bool(p_); }
    bool same_as(const FiniteGroup& o) const { return p_ == o.p_; }

    int64_t order() const { return p_->order(); }
    Elem mul(Elem a, Elem b) const { return p_->mul(a, b); }
    Elem inv(Elem a) const { return p_->inv(a); }
    Elem power(Elem g, long long m) const { return p_->power(g, m); }
    int64_t element_order(Elem g) const { return p_->element_order(g); }
    int64_t exponent() const { return p_->exponent(); }
    std::string name() const { return p_->name(); }
    bool is_abelian() const { return p_->is_abelian(); }
    bool enumerable() const { return p_->enumerable(); }
    std::vector<Elem> generators() const { return p_->generators(); }
    const ConjugacyData& classes() const { return p_->classes(); }
    ClassIdx class_power(ClassIdx c, long long m) const { return p_->class_power(c, m); }
    std::vector<Elem> center() const { return p_->center(); }

private:
    std::shared_ptr<const GroupImpl> p_;
};

// ---------------------------------------------------------------------------
// Abelian groups given by a factor list (Z/d1 x ... x Z/dk), mixed-radix index.
// ---------------------------------------------------------------------------

class AbelianGroup : public GroupImpl {
public:
    explicit AbelianGroup(std::vector<int64_t> factors, std::string name = "")
        : factors_(std::move(factors)), name_(std::move(name)) {
        if (factors_.empty()) factors_.push_back(1);
        order_ = 1;
        for (int64_t d : factors_) {
            if (d < 1) throw std::invalid_argument("abelian factor must be positive");
            order_ *= d;
        }
        strides_.resize(factors_.size());
        int64_t s = 1;
        for (size_t i = factors_.size(); i-- > 0;) {
            strides_[i] = s;
            s *= factors_[i];
        }
        if (name_.empty()) {
            for (size_t i = 0; i < factors_.size(); ++i)
                name_ += (i ? "x" : "") + ("C" + std::to_string(factors_[i]));
        }
    }

    int64_t order() const override { return order_; }
    bool is_abelian() const override { return true; }
    std::string name() const override { return name_; }
    bool enumerable() const override { return true; }

    const std::vector<int64_t>& factors() const { return factors_; }

    std::vector<int64_t> tuple_of(Elem e) const {
        std::vector<int64_t> t(factors_.size());
        for (size_t i = 0; i < factors_.size(); ++i) {
            t[i] = e / strides_[i];
            e %= strides_[i];
        }
        return t;
    }
    Elem elem_of(const std::vector<int64_t>& t) const {
        Elem e = 0;
        for (size_t i = 0; i < factors_.size(); ++i) {
            int64_t v = ((t[i] % factors_[i]) + factors_[i]) % factors_[i];
            e += v * strides_[i];
        }
        return e;
    }

    Elem mul(Elem a, Elem b) const override {
        Elem e = 0;
        for (size_t i = 0; i < factors_.size(); ++i) {
            int64_t xa = a / strides_[i], xb = b / strides_[i];
            a %= strides_[i];
            b %= strides_[i];
            e += ((xa + xb) % factors_[i]) * strides_[i];
        }
        return e;
    }
    Elem inv(Elem a) const override {
        Elem e = 0;
        for (size_t i = 0; i < factors_.size(); ++i) {
            int64_t x = a / strides_[i];
            a %= strides_[i];
            e += ((factors_[i] - x) % factors_[i]) * strides_[i];
        }
        return e;
    }

    int64_t element_order(Elem g) const override {
        int64_t o = 1;
        for (size_t i = 0; i < factors_.size(); ++i) {
            int64_t x = g / strides_[i];
            g %= strides_[i];
            o = lcm64(o, factors_[i] / gcd64(x, factors_[i]));
        }
        return o;
    }
    int64_t exponent() const override {
        int64_t e = 1;
        for (int64_t d : factors_) e = lcm64(e, d);
        return e;
    }

    ClassIdx class_power(ClassIdx c, long long m) const override {
        Elem e = 0;
        Elem g = c;
        for (size_t i = 0; i < factors_.size(); ++i) {
            int64_t x = g / strides_[i];
            g %= strides_[i];
            int64_t mm = ((m % factors_[i]) + factors_[i]) % factors_[i];
            e += int64_t((__int128(x) * mm) % factors_[i]) * strides_[i];
        }
        return e;
    }

    std::vector<Elem> generators() const override {
        std::vector<Elem> g;
        for (size_t i = 0; i < factors_.size(); ++i)
            if (factors_[i] > 1) g.push_back(strides_[i]);
        if (g.empty()) g.push_back(0);
        return g;
    }

    std::optional<int64_t> residue_label(Elem e) const override {
        if (factors_.size() == 1) return e;
        return std::nullopt;
    }

protected:
    std::vector<int64_t> factors_;
    std::vector<int64_t> strides_;
    int64_t order_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Symmetric groups via lexicographic rank/unrank (n <= 10); conjugacy data
// is computed from cycle types without enumerating elements.
// ---------------------------------------------------------------------------

inline int64_t factorial64(int n) {
    int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// All partitions of n, each weakly decreasing.
inline std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> go = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            go(rem - p, p);
            cur.pop_back();
        }
    };
    go(n, n);
    return out;
}

class SymmetricGroup : public GroupImpl {
public:
    explicit SymmetricGroup(int n) : n_(n) {
        if (n < 1 || n > 10) throw std::invalid_argument("S_n supported for 1 <= n <= 10");
        order_ = factorial64(n);
    }

    int64_t order() const override { return order_; }
    bool is_abelian() const override { return n_ <= 2; }
    std::string name() const override { return "S" + std::to_string(n_); }
    bool enumerable() const override { return order_ <= kEnumBudget; }
    int degree() const { return n_; }

    std::vector<int> unrank(Elem r) const {
        std::vector<int> avail(n_), p(n_);
        std::iota(avail.begin(), avail.end(), 0);
        int64_t f = order_;
        for (int i = 0; i < n_; ++i) {
            f /= (n_ - i);
            int64_t q = r / f;
            r %= f;
            p[i] = avail[size_t(q)];
            avail.erase(avail.begin() + q);
        }
        return p;
    }
    Elem rank(const std::vector<int>& p) const {
        int64_t r = 0, f = order_;
        std::vector<int> avail(n_);
        std::iota(avail.begin(), avail.end(), 0);
        for (int i = 0; i < n_; ++i) {
            f /= (n_ - i);
            auto it = std::find(avail.begin(), avail.end(), p[i]);
            r += (it - avail.begin()) * f;
            avail.erase(it);
        }
        return r;
    }

    Elem mul(Elem a, Elem b) const override {
        auto pa = unrank(a), pb = unrank(b);
        std::vector<int> pc(n_);
        for (int i = 0; i < n_; ++i) pc[i] = pa[size_t(pb[i])];
        return rank(pc);
    }
    Elem inv(Elem a) const override {
        auto p = unrank(a);
        std::vector<int> q(n_);
        for (int i = 0; i < n_; ++i) q[size_t(p[i])] = i;
        return rank(q);
    }

    std::vector<Elem> generators() const override {
        if (n_ == 1) return {0};
        std::vector<int> t(n_), c(n_);
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[0], t[1]);
        for (int i = 0; i < n_; ++i) c[i] = (i + 1) % n_;
        if (n_ == 2) return {rank(t)};
        return {rank(t), rank(c)};
    }

    std::vector<int> cycle_type(const std::vector<int>& p) const {
        std::vector<bool> seen(n_, false);
        std::vector<int> type;
        for (int i = 0; i < n_; ++i) {
            if (seen[i]) continue;
            int len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = p[size_t(j)];
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.rbegin(), type.rend());
        return type;
    }

    /// Size of the conjugacy class with the given cycle type: n!/z_mu.
    static int64_t class_size_of_type(int n, const std::vector<int>& type) {
        int64_t z = 1;
        std::map<int, int> mult;
        for (int L : type) ++mult[L];
        for (auto& [L, a] : mult) {
            for (int i = 0; i < a; ++i) z *= L;
            z *= factorial64(a);
        }
        return factorial64(n) / z;
    }

    /// Lexicographically minimal permutation of a given cycle type: fixed
    /// points first, then cycles in ascending length, each on a consecutive
    /// block mapped cyclically.
    std::vector<int> min_perm_of_type(std::vector<int> type) const {
        std::sort(type.begin(), type.end());
        std::vector<int> p(n_);
        int pos = 0;
        for (int L : type) {
            for (int i = 0; i < L; ++i) p[size_t(pos + i)] = pos + (i + 1) % L;
            pos += L;
        }
        return p;
    }

    ClassIdx class_of_type(const std::vector<int>& type) const {
        classes();  // ensure maps built
        auto it = type_to_class_.find(type);
        if (it == type_to_class_.end()) throw std::logic_error("unknown cycle type");
        return it->second;
    }
    const std::vector<int>& type_of_class(ClassIdx c) const {
        classes();
        return class_types_[size_t(c)];
    }

    ClassIdx class_power(ClassIdx c, long long m) const override {
        classes();
        std::vector<int> t;
        for (int L : class_types_[size_t(c)]) {
            int g = int(gcd64(L, m == 0 ? L : (m < 0 ? -m : m)));
            if (m == 0) g = L;
            for (int i = 0; i < g; ++i) t.push_back(L / g);
        }
        std::sort(t.rbegin(), t.rend());
        return class_of_type(t);
    }

    std::optional<int64_t> fixed_points(Elem e) const override {
        auto p = unrank(e);
        int64_t f = 0;
        for (int i = 0; i < n_; ++i) f += (p[i] == i);
        return f;
    }

protected:
    ConjugacyData compute_classes() const override {
        if (order_ <= kEnumBudget) {
            // materialize: member lists are wanted by downstream consumers
            auto parts = partitions_of(n_);
            std::map<std::vector<int>, int32_t> raw_idx;
            for (auto& t : parts) raw_idx.emplace(t, int32_t(raw_idx.size()));
            std::vector<int32_t> raw(static_cast<size_t>(order_));
            for (Elem e = 0; e < order_; ++e) raw[size_t(e)] = raw_idx.at(cycle_type(unrank(e)));
            auto cd = ConjugacyData::from_assignment(std::move(raw), 0,
                                                     [this](Elem e) { return inv(e); });
            class_types_.resize(size_t(cd.k()));
            for (ClassIdx c = 0; c < cd.k(); ++c) {
                class_types_[size_t(c)] = cycle_type(unrank(cd.rep(c)));
                type_to_class_[class_types_[size_t(c)]] = c;
            }
            return cd;
        }
        auto parts = partitions_of(n_);
        struct Row {
            std::vector<int> type;
            int64_t size;
            Elem minrank;
        };
        std::vector<Row> rows;
        for (auto& t : parts)
            rows.push_back({t, class_size_of_type(n_, t), rank(min_perm_of_type(t))});
        std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
            bool ia = a.minrank == 0, ib = b.minrank == 0;
            if (ia != ib) return ia;
            if (a.size != b.size) return a.size < b.size;
            return a.minrank < b.minrank;
        });
        std::vector<Elem> rep;
        std::vector<int64_t> size;
        for (size_t c = 0; c < rows.size(); ++c) {
            class_types_.push_back(rows[c].type);
            type_to_class_[rows[c].type] = ClassIdx(c);
            rep.push_back(rows[c].minrank);
            size.push_back(rows[c].size);
        }
        std::vector<ClassIdx> invc(rows.size());
        std::iota(invc.begin(), invc.end(), 0);  // cycle type is inversion-invariant
        return ConjugacyData::summary(std::move(rep), std::move(size), std::move(invc),
                                      [this](Elem e) { return class_of_type(cycle_type(unrank(e))); });
    }

private:
    int n_;
    int64_t order_;
    mutable std::vector<std::vector<int>> class_types_;
    mutable std::map<std::vector<int>, ClassIdx> type_to_class_;
};

// ---------------------------------------------------------------------------
// Permutation groups generated by explicit permutations (elements enumerated).
// ---------------------------------------------------------------------------

class PermGroup : public GroupImpl {
public:
    PermGroup(int degree, std::vector<std::vector<int>> gens, std::string name)
        : n_(degree), name_(std::move(name)) {
        std::vector<int> id(n_);
        std::iota(id.begin(), id.end(), 0);
        std::map<std::vector<int>, int64_t> seen;
        std::vector<std::vector<int>> elems{id};
        seen[id] = 0;
        for (size_t head = 0; head < elems.size(); ++head) {
            for (auto& g : gens) {
                std::vector<int> h(n_);
                for (int i = 0; i < n_; ++i) h[i] = g[size_t(elems[head][size_t(i)])];
                if (!seen.count(h)) {
                    if (int64_t(elems.size()) >= kEnumBudget)
                        throw std::runtime_error("permutation group closure exceeds budget");
                    seen[h] = int64_t(elems.size());
                    elems.push_back(h);
                }
            }
        }
        // std::map iteration gives lex order; identity is lex-minimal.
        elems_.reserve(elems.size());
        for (auto& [p, idx] : seen) {
            (void)idx;
            elems_.push_back(p);
        }
        for (size_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = int64_t(i);
        gen_idx_.clear();
        for (auto& g : gens) gen_idx_.push_back(index_.at(g));
        abelian_ = true;
        for (Elem a : gen_idx_)
            for (Elem b : gen_idx_)
                if (mul(a, b) != mul(b, a)) { abelian_ = false; break; }
    }

    int64_t order() const override { return int64_t(elems_.size()); }
    bool is_abelian() const override { return abelian_; }
    std::string name() const override { return name_; }
    std::vector<Elem> generators() const override { return gen_idx_.empty() ? std::vector<Elem>{0} : gen_idx_; }
    int degree() const { return n_; }
    const std::vector<int>& perm(Elem e) const { return elems_[size_t(e)]; }

    Elem mul(Elem a, Elem b) const override {
        const auto& pa = elems_[size_t(a)];
        const auto& pb = elems_[size_t(b)];
        std::vector<int> pc(n_);
        for (int i = 0; i < n_; ++i) pc[i] = pa[size_t(pb[size_t(i)])];
        return index_.at(pc);
    }
    Elem inv(Elem a) const override {
        const auto& p = elems_[size_t(a)];
        std::vector<int> q(n_);
        for (int i = 0; i < n_; ++i) q[size_t(p[size_t(i)])] = i;
        return index_.at(q);
    }

    std::optional<int64_t> fixed_points(Elem e) const override {
        const auto& p = elems_[size_t(e)];
        int64_t f = 0;
        for (int i = 0; i < n_; ++i) f += (p[size_t(i)] == i);
        return f;
    }

private:
    int n_;
    std::string name_;
    std::vector<std::vector<int>> elems_;
    std::map<std::vector<int>, Elem> index_;
    std::vector<Elem> gen_idx_;
    bool abelian_ = false;
};

// ---------------------------------------------------------------------------
// Dihedral group of order 2n: indices 0..n-1 are rotations, n..2n-1 reflections.
// ---------------------------------------------------------------------------

class DihedralGroup : public GroupImpl {
public:
    explicit DihedralGroup(int64_t n) : n_(n) {
        if (n < 1) throw std::invalid_argument("dihedral parameter must be positive");
    }
    int64_t order() const override { return 2 * n_; }
    bool is_abelian() const override { return n_ <= 2; }
    std::string name() const override { return "D" + std::to_string(n_); }
    std::vector<Elem> generators() const override {
        if (n_ == 1) return {1};
        return {1, n_};
    }

    Elem mul(Elem a, Elem b) const override {
        bool ra = a >= n_, rb = b >= n_;
        int64_t xa = ra ? a - n_ : a, xb = rb ? b - n_ : b;
        if (!ra && !rb) return (xa + xb) % n_;
        if (!ra && rb) return n_ + (xb - xa % n_ + n_) % n_;  // r^xa * s r^xb = s r^(xb - xa)
        if (ra && !rb) return n_ + (xa + xb) % n_;            // s r^xa * r^xb = s r^(xa+xb)
        return (xb - xa % n_ + n_) % n_;                      // s r^xa * s r^xb = r^(xb-xa)
    }
    Elem inv(Elem a) const override {
        if (a < n_) return (n_ - a) % n_;
        return a;
    }

    std::optional<int64_t> fixed_points(Elem e) const override {
        if (n_ < 3) return std::nullopt;
        if (e < n_) return e == 0 ? n_ : 0;
        int64_t k = e - n_;  // reflection i -> -(i+k) mod n; fixed iff 2i = -k
        if (n_ % 2 == 1) return 1;
        return (k % 2 == 0) ? 2 : 0;
    }

private:
    int64_t n_;
};

// ---------------------------------------------------------------------------
// GL2/SL2 over a prime field, enumerated; identity re-indexed to 0.
// ---------------------------------------------------------------------------

class Matrix2Group : public GroupImpl {
public:
    Matrix2Group(int64_t q, bool special) : q_(q), special_(special) {
        if (!is_prime(q)) throw std::invalid_argument("field size must be prime");
        int64_t q4 = q * q * q * q;
        key_to_idx_.assign(size_t(q4), -1);
        int64_t idkey = pack(1, 0, 0, 1);
        elems_.push_back(idkey);
        for (int64_t key = 0; key < q4; ++key) {
            auto [a, b, c, d] = unpack(key);
            int64_t det = ((a * d - b * c) % q + q) % q;
            bool keep = special_ ? det == 1 : det != 0;
            if (keep && key != idkey) elems_.push_back(key);
            if (int64_t(elems_.size()) > kEnumBudget)
                throw std::runtime_error("matrix group exceeds enumeration budget");
        }
        for (size_t i = 0; i < elems_.size(); ++i) key_to_idx_[size_t(elems_[i])] = int64_t(i);
        qr_.assign(size_t(q), false);
        for (int64_t x = 0; x < q; ++x) qr_[size_t(x * x % q)] = true;
    }

    int64_t order() const override { return int64_t(elems_.size()); }
    bool is_abelian() const override {
        auto g = generators();
        for (Elem a : g)
            for (Elem b : g)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }
    std::string name() const override {
        return (special_ ? "SL2(" : "GL2(") + std::to_string(q_) + ")";
    }
    std::optional<int64_t> field_size() const override { return q_; }

    Elem mul(Elem x, Elem y) const override {
        auto [a, b, c, d] = unpack(elems_[size_t(x)]);
        auto [e, f, g, h] = unpack(elems_[size_t(y)]);
        return key_to_idx_[size_t(pack((a * e + b * g) % q_, (a * f + b * h) % q_,
                                       (c * e + d * g) % q_, (c * f + d * h) % q_))];
    }
    Elem inv(Elem x) const override {
        auto [a, b, c, d] = unpack(elems_[size_t(x)]);
        int64_t det = ((a * d - b * c) % q_ + q_) % q_;
        int64_t di = mod_inverse(det, q_);
        return key_to_idx_[size_t(pack(d * di % q_, (q_ - b) * di % q_,
                                       (q_ - c) * di % q_, a * di % q_))];
    }

    std::vector<Elem> generators() const override {
        std::call_once(gen_once_, [this] { gens_ = compute_generators(); });
        return gens_;
    }

private:
    std::vector<Elem> compute_generators() const {
        // Greedy: extend until the closure is the whole group.
        std::vector<Elem> gens;
        std::vector<char> in(size_t(order()), 0);
        std::vector<Elem> closure{0};
        in[0] = 1;
        size_t head = 0;
        for (Elem cand = 1; cand < order(); ++cand) {
            if (in[size_t(cand)]) continue;
            gens.push_back(cand);
            closure.push_back(cand);
            in[size_t(cand)] = 1;
            for (; head < closure.size(); ++head)
                for (Elem g : gens) {
                    Elem z = mul(closure[head], g);
                    if (!in[size_t(z)]) {
                        in[size_t(z)] = 1;
                        closure.push_back(z);
                    }
                }
            if (int64_t(closure.size()) == order()) break;
            head = 0;  // re-scan with the enlarged generating set
        }
        return gens;
    }

public:
    std::optional<int64_t> trace_label(Elem x) const override {
        auto [a, b, c, d] = unpack(elems_[size_t(x)]);
        (void)b;
        (void)c;
        return (a + d) % q_;
    }
    bool has_trace_label() const override { return true; }

    /// Distinct eigenvalues in F_q: tr^2 - 4 det is a nonzero square.
    bool regular_semisimple(Elem x) const override {
        auto [a, b, c, d] = unpack(elems_[size_t(x)]);
        int64_t disc = (((a - d) * (a - d) + 4 * b * c) % q_ + q_) % q_;
        return disc != 0 && qr_[size_t(disc)];
    }

    static bool is_prime(int64_t p) {
        if (p < 2) return false;
        for (int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }
    static int64_t mod_inverse(int64_t a, int64_t m) {
        int64_t g = m, x = 0, x1 = 1, a1 = a % m;
        while (a1) {
            int64_t qq = g / a1;
            g -= qq * a1;
            std::swap(g, a1);
            x -= qq * x1;
            std::swap(x, x1);
        }
        return ((x % m) + m) % m;
    }

private:
    int64_t pack(int64_t a, int64_t b, int64_t c, int64_t d) const {
        return ((a * q_ + b) * q_ + c) * q_ + d;
    }
    std::tuple<int64_t, int64_t, int64_t, int64_t> unpack(int64_t key) const {
        int64_t d = key % q_;
        key /= q_;
        int64_t c = key % q_;
        key /= q_;
        int64_t b = key % q_;
        key /= q_;
        return {key, b, c, d};
    }

    int64_t q_;
    bool special_;
    std::vector<int64_t> elems_;
    std::vector<int64_t> key_to_idx_;
    std::vector<bool> qr_;
    mutable std::once_flag gen_once_;
    mutable std::vector<Elem> gens_;
};

// ---------------------------------------------------------------------------
// Split tori inside GL_n as labeled abelian groups (entries are powers of a
// fixed primitive root mod l).
// ---------------------------------------------------------------------------

inline int64_t primitive_root_mod(int64_t p) {
    // smallest primitive root of a prime p
    std::vector<int64_t> qs;
    int64_t m = p - 1;
    for (int64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            qs.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) qs.push_back(m);
    auto powm = [&](int64_t b, int64_t e) {
        int64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = int64_t(__int128(r) * b % p);
            b = int64_t(__int128(b) * b % p);
            e >>= 1;
        }
        return r;
    };
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int64_t q : qs)
            if (powm(g, (p - 1) / q) == 1) { ok = false; break; }
        if (ok) return g;
    }
    return 1;  // p == 2
}

class TorusGroup : public AbelianGroup {
public:
    enum class Kind { Diag, Symp, GSymp };

    TorusGroup(Kind kind, int nslots, int64_t ell)
        : AbelianGroup(make_factors(kind, nslots, ell), make_name(kind, nslots, ell)),
          kind_(kind), nslots_(nslots), ell_(ell), root_(primitive_root_mod(ell)) {
        pow_.resize(size_t(ell_ - 1));
        int64_t x = 1;
        for (int64_t i = 0; i < ell_ - 1; ++i) {
            pow_[size_t(i)] = x;
            x = x * root_ % ell_;
        }
    }

    std::optional<int64_t> field_size() const override { return ell_; }
    bool has_trace_label() const override { return true; }

    /// Diagonal entries of the matrix realization of element e.
    std::vector<int64_t> diag_entries(Elem e) const {
        std::vector<int64_t> t = tuple_of(e);
        int64_t m = ell_ - 1;
        switch (kind_) {
            case Kind::Diag: {
                std::vector<int64_t> d(t.size());
                for (size_t i = 0; i < t.size(); ++i) d[i] = pow_[size_t(t[i])];
                return d;
            }
            case Kind::Symp: {
                int64_t x = pow_[size_t(t[0])], y = pow_[size_t(t[1])];
                return {x, y, mod_inv(y), mod_inv(x)};
            }
            case Kind::GSymp: {
                // quotient coords (a,b,c) -> exponents (a, a+b, a+c)
                int64_t e1 = t[0], e2 = (t[0] + t[1]) % m, e3 = (t[0] + t[2]) % m;
                int64_t z = pow_[size_t(e1)], x = pow_[size_t(e2)], y = pow_[size_t(e3)];
                return {z * x % ell_, z * y % ell_, z * mod_inv(y) % ell_, z * mod_inv(x) % ell_};
            }
        }
        return {};
    }

    std::optional<int64_t> trace_label(Elem e) const override {
        auto d = diag_entries(e);
        int64_t s = 0;
        for (int64_t x : d) s = (s + x) % ell_;
        return s;
    }

    bool regular_semisimple(Elem e) const override {
        auto d = diag_entries(e);
        std::sort(d.begin(), d.end());
        return std::adjacent_find(d.begin(), d.end()) == d.end();
    }

private:
    static std::vector<int64_t> make_factors(Kind kind, int nslots, int64_t ell) {
        if (!Matrix2Group::is_prime(ell)) throw std::invalid_argument("field size must be prime");
        int64_t m = ell - 1;
        switch (kind) {
            case Kind::Diag:
                if (nslots < 1) throw std::invalid_argument("torus rank must be >= 1");
                return std::vector<int64_t>(size_t(nslots), m);
            case Kind::Symp:
                return {m, m};
            case Kind::GSymp:
                if (ell < 3) throw std::invalid_argument("similitude torus needs an odd prime");
                return {m / 2, m, m};
        }
        return {};
    }
    static std::string make_name(Kind kind, int nslots, int64_t ell) {
        switch (kind) {
            case Kind::Diag: return "T-diag(" + std::to_string(nslots) + "," + std::to_string(ell) + ")";
            case Kind::Symp: return "T-symp(" + std::to_string(ell) + ")";
            case Kind::GSymp: return "T-gsymp(" + std::to_string(ell) + ")";
        }
        return "";
    }
    int64_t mod_inv(int64_t x) const { return Matrix2Group::mod_inverse(x, ell_); }

    Kind kind_;
    int nslots_;
    int64_t ell_;
    int64_t root_;
    std::vector<int64_t> pow_;
};

// ---------------------------------------------------------------------------
// Cyclic group with residue labels (Z/n additive).
// ---------------------------------------------------------------------------

class CyclicGroup : public AbelianGroup {
public:
    explicit CyclicGroup(int64_t n) : AbelianGroup({n}, "C" + std::to_string(n)) {}
    std::optional<int64_t> residue_label(Elem e) const override { return e; }
};

// ---------------------------------------------------------------------------
// Unit group (Z/nZ)^* with residue labels, via CRT + primitive roots.
// ---------------------------------------------------------------------------

class UnitGroup : public AbelianGroup {
public:
    explicit UnitGroup(int64_t n)
        : AbelianGroup(structure(n), "U" + std::to_string(n)), n_(n) {
        // residue tables per factor via the stored generator residues
        res_of_elem_.clear();
        build_tables();
    }

    int64_t modulus() const { return n_; }

    std::optional<int64_t> residue_label(Elem e) const override { return res_of_elem_[size_t(e)]; }

    std::optional<Elem> elem_of_residue(int64_t r) const {
        r = ((r % n_) + n_) % n_;
        auto it = elem_of_res_.find(r);
        if (it == elem_of_res_.end()) return std::nullopt;
        return it->second;
    }

private:
    static std::vector<std::pair<int64_t, int64_t>>& gen_scratch() {
        thread_local std::vector<std::pair<int64_t, int64_t>> g;
        return g;
    }

    /// Invariant factors (one per CRT cyclic piece) and per-piece generator
    /// residues mod n, stored into gen_scratch() during construction.
    static std::vector<int64_t> structure(int64_t n) {
        if (n < 1) throw std::invalid_argument("modulus must be positive");
        auto& gens = gen_scratch();
        gens.clear();
        std::vector<int64_t> factors;
        int64_t m = n;
        auto add_piece = [&](int64_t ord, int64_t gen_mod_pe, int64_t pe) {
            // lift gen to a residue mod n that is 1 mod n/pe (CRT)
            int64_t rest = n / pe;
            int64_t r;
            if (rest == 1) {
                r = gen_mod_pe % n;
            } else {
                int64_t inv1 = Matrix2Group::mod_inverse(rest % pe, pe);
                // r = 1 + rest * t with t = (gen-1)/rest mod pe
                int64_t t = (gen_mod_pe - 1 % pe + pe) % pe;
                t = t * inv1 % pe;
                r = (1 + __int128(rest) * t % n) % n;
            }
            factors.push_back(ord);
            gens.emplace_back(ord, r);
        };
        for (int64_t p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            int64_t pe = 1;
            int e = 0;
            while (m % p == 0) {
                m /= p;
                pe *= p;
                ++e;
            }
            if (p == 2) {
                if (e == 2) add_piece(2, 3, 4);
                if (e >= 3) {
                    add_piece(2, pe - 1, pe);
                    add_piece(pe / 4, 5, pe);
                }
            } else {
                int64_t g = primitive_root_mod(p);
                // ensure g is a primitive root mod p^e
                int64_t ord = pe / p * (p - 1);
                if (e > 1) {
                    auto powm = [&](int64_t b, int64_t ex) {
                        int64_t r = 1;
                        b %= pe;
                        while (ex) {
                            if (ex & 1) r = int64_t(__int128(r) * b % pe);
                            b = int64_t(__int128(b) * b % pe);
                            ex >>= 1;
                        }
                        return r;
                    };
                    if (powm(g, ord / p) == 1) g += p;
                }
                add_piece(ord, g % pe, pe);
            }
        }
        if (m > 1) {
            int64_t p = m;
            add_piece(p - 1, primitive_root_mod(p), p);
        }
        if (factors.empty()) factors.push_back(1);
        return factors;
    }

    void build_tables() {
        auto gens = gen_scratch();
        res_of_elem_.assign(size_t(order()), 1 % n_);
        for (Elem e = 0; e < order(); ++e) {
            auto t = tuple_of(e);
            __int128 r = 1 % n_;
            for (size_t i = 0; i < t.size(); ++i) {
                int64_t g = (i < gens.size()) ? gens[i].second : 1;
                int64_t x = 1, b = g % n_, ex = t[i];
                while (ex) {
                    if (ex & 1) x = int64_t(__int128(x) * b % n_);
                    b = int64_t(__int128(b) * b % n_);
                    ex >>= 1;
                }
                r = r * x % n_;
            }
            res_of_elem_[size_t(e)] = int64_t(r);
            elem_of_res_[int64_t(r)] = e;
        }
        if (int64_t(elem_of_res_.size()) != order())
            throw std::logic_error("unit group parameterization is not a bijection");
    }

    int64_t n_;
    std::vector<int64_t> res_of_elem_;
    std::unordered_map<int64_t, Elem> elem_of_res_;
};

// ---------------------------------------------------------------------------
// Explicit multiplication table group.
// ---------------------------------------------------------------------------

class MulTableGroup : public GroupImpl {
public:
    MulTableGroup(int64_t n, std::vector<int32_t> table, std::string name = "mul-table")
        : n_(n), t_(std::move(table)), name_(std::move(name)) {
        if (int64_t(t_.size()) != n_ * n_) throw std::invalid_argument("multiplication table size mismatch");
        validate();
    }

    int64_t order() const override { return n_; }
    bool is_abelian() const override { return abelian_; }
    std::string name() const override { return name_; }
    Elem mul(Elem a, Elem b) const override { return t_[size_t(a * n_ + b)]; }
    Elem inv(Elem a) const override { return inv_[size_t(a)]; }
    std::vector<Elem> generators() const override { return gens_; }

private:
    void validate() {
        for (int32_t v : t_)
            if (v < 0 || v >= n_) throw std::invalid_argument("multiplication table entry out of range");
        for (Elem a = 0; a < n_; ++a)
            if (mul(0, a) != a || mul(a, 0) != a)
                throw std::invalid_argument("inconsistent multiplication table: element 0 is not an identity");
        // rows and columns must be permutations
        for (Elem a = 0; a < n_; ++a) {
            std::vector<bool> row(size_t(n_), false), col(size_t(n_), false);
            for (Elem b = 0; b < n_; ++b) {
                row[size_t(mul(a, b))] = true;
                col[size_t(mul(b, a))] = true;
            }
            for (Elem b = 0; b < n_; ++b)
                if (!row[size_t(b)] || !col[size_t(b)])
                    throw std::invalid_argument("inconsistent multiplication table: not a Latin square");
        }
        inv_.assign(size_t(n_), -1);
        for (Elem a = 0; a < n_; ++a) {
            for (Elem b = 0; b < n_; ++b)
                if (mul(a, b) == 0 && mul(b, a) == 0) { inv_[size_t(a)] = b; break; }
            if (inv_[size_t(a)] < 0)
                throw std::invalid_argument("inconsistent multiplication table: missing inverse");
        }
        // associativity: full check for small orders, seeded spot checks beyond
        if (n_ <= 64) {
            for (Elem a = 0; a < n_; ++a)
                for (Elem b = 0; b < n_; ++b)
                    for (Elem c = 0; c < n_; ++c)
                        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                            throw std::invalid_argument("inconsistent multiplication table: not associative");
        } else {
            uint64_t s = 0x9e3779b97f4a7c15ull;
            for (int i = 0; i < 200000; ++i) {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                Elem a = Elem(s % uint64_t(n_));
                Elem b = Elem((s >> 17) % uint64_t(n_));
                Elem c = Elem((s >> 31) % uint64_t(n_));
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("inconsistent multiplication table: not associative");
            }
        }
        // greedy generating set
        std::vector<char> in(size_t(n_), 0);
        in[0] = 1;
        std::vector<Elem> closure{0};
        for (Elem cand = 1; cand < n_; ++cand) {
            if (in[size_t(cand)]) continue;
            gens_.push_back(cand);
            std::vector<Elem> stack = closure;
            stack.push_back(cand);
            in[size_t(cand)] = 1;
            closure.push_back(cand);
            size_t head = 0;
            while (head < closure.size()) {
                for (Elem g : gens_) {
                    Elem z = mul(closure[head], g);
                    if (!in[size_t(z)]) { in[size_t(z)] = 1; closure.push_back(z); }
                }
                ++head;
            }
            if (int64_t(closure.size()) == n_) break;
        }
        if (gens_.empty()) gens_.push_back(0);
        abelian_ = true;
        for (Elem a = 0; a < n_ && abelian_; ++a)
            for (Elem b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) { abelian_ = false; break; }
    }

    int64_t n_;
    std::vector<int32_t> t_;
    std::string name_;
    std::vector<Elem> inv_;
    std::vector<Elem> gens_;
    bool abelian_ = false;
};

// ---------------------------------------------------------------------------
// Direct products; classes are pairs of component classes.
// ---------------------------------------------------------------------------

class ProductGroup : public GroupImpl {
public:
    ProductGroup(FiniteGroup g1, FiniteGroup g2) : g1_(std::move(g1)), g2_(std::move(g2)) {
        n2_ = g2_.order();
    }
    int64_t order() const override { return g1_.order() * g2_.order(); }
    bool is_abelian() const override { return g1_.is_abelian() && g2_.is_abelian(); }
    std::string name() const override { return g1_.name() + "*" + g2_.name(); }
    Elem mul(Elem a, Elem b) const override {
        return g1_.mul(a / n2_, b / n2_) * n2_ + g2_.mul(a % n2_, b % n2_);
    }
    Elem inv(Elem a) const override { return g1_.inv(a / n2_) * n2_ + g2_.inv(a % n2_); }
    std::vector<Elem> generators() const override {
        std::vector<Elem> g;
        for (Elem x : g1_.generators()) g.push_back(x * n2_);
        for (Elem y : g2_.generators()) g.push_back(y);
        return g;
    }
    const FiniteGroup& left() const { return g1_; }
    const FiniteGroup& right() const { return g2_; }

protected:
    ConjugacyData compute_classes() const override {
        const ConjugacyData& c1 = g1_.classes();
        const ConjugacyData& c2 = g2_.classes();
        struct Row {
            ClassIdx a, b;
            int64_t size;
            Elem minrep;
        };
        std::vector<Row> rows;
        for (ClassIdx a = 0; a < c1.k(); ++a)
            for (ClassIdx b = 0; b < c2.k(); ++b)
                rows.push_back({a, b, c1.size(a) * c2.size(b), c1.rep(a) * n2_ + c2.rep(b)});
        std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
            bool ix = x.minrep == 0, iy = y.minrep == 0;
            if (ix != iy) return ix;
            if (x.size != y.size) return x.size < y.size;
            return x.minrep < y.minrep;
        });
        std::map<std::pair<ClassIdx, ClassIdx>, ClassIdx> lookup;
        std::vector<Elem> rep;
        std::vector<int64_t> size;
        for (size_t i = 0; i < rows.size(); ++i) {
            lookup[{rows[i].a, rows[i].b}] = ClassIdx(i);
            rep.push_back(rows[i].minrep);
            size.push_back(rows[i].size);
        }
        std::vector<ClassIdx> invc(rows.size());
        for (size_t i = 0; i < rows.size(); ++i)
            invc[i] = lookup.at({c1.inv_class(rows[i].a), c2.inv_class(rows[i].b)});
        auto c1p = g1_.ptr();
        auto c2p = g2_.ptr();
        int64_t n2 = n2_;
        return ConjugacyData::summary(std::move(rep), std::move(size), std::move(invc),
                                      [lookup, c1p, c2p, n2](Elem e) {
                                          return lookup.at({c1p->classes().class_of(e / n2),
                                                            c2p->classes().class_of(e % n2)});
                                      });
    }

private:
    FiniteGroup g1_, g2_;
    int64_t n2_;
};

// ---------------------------------------------------------------------------
// Subgroups and quotients.
// ---------------------------------------------------------------------------

/// BFS closure of a generator set inside an enumerable group; sorted ascending.
inline std::vector<Elem> closure_of(const FiniteGroup& G, const std::vector<Elem>& gens) {
    std::unordered_map<Elem, char> in;
    std::vector<Elem> out{0};
    in[0] = 1;
    size_t head = 0;
    while (head < out.size()) {
        Elem x = out[head++];
        for (Elem g : gens) {
            for (Elem z : {G.mul(x, g), G.mul(x, G.inv(g))}) {
                if (!in.count(z)) {
                    in[z] = 1;
                    out.push_back(z);
                    if (int64_t(out.size()) > kEnumBudget)
                        throw std::runtime_error("subgroup closure exceeds budget");
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

class SubgroupView : public GroupImpl {
public:
    SubgroupView(FiniteGroup parent, std::vector<Elem> elems, std::string name)
        : parent_(std::move(parent)), elems_(std::move(elems)), name_(std::move(name)) {
        for (size_t i = 0; i < elems_.size(); ++i) idx_[elems_[i]] = Elem(i);
        if (elems_.empty() || elems_[0] != 0)
            throw std::invalid_argument("subgroup must contain the identity as least element");
        // inverse check on all elements; product closure full up to 5000
        // elements, sampled (seeded) beyond
        for (Elem a : elems_)
            if (!idx_.count(parent_.inv(a)))
                throw std::invalid_argument("subgroup not closed under inverse");
        if (int64_t(elems_.size()) <= 5000) {
            for (Elem a : elems_)
                for (Elem b : elems_)
                    if (!idx_.count(parent_.mul(a, b)))
                        throw std::invalid_argument("subgroup not closed under product");
        } else {
            uint64_t s = 0x2545f4914f6cdd1dull;
            for (int i = 0; i < 2000000; ++i) {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                Elem a = elems_[size_t(s % elems_.size())];
                Elem b = elems_[size_t((s >> 20) % elems_.size())];
                if (!idx_.count(parent_.mul(a, b)))
                    throw std::invalid_argument("subgroup not closed under product");
            }
        }
        abelian_ = true;
        auto gens = generators();
        for (Elem a : gens) {
            for (Elem b : gens)
                if (mul(a, b) != mul(b, a)) { abelian_ = false; break; }
            if (!abelian_) break;
        }
    }

    int64_t order() const override { return int64_t(elems_.size()); }
    bool is_abelian() const override { return abelian_; }
    std::string name() const override { return name_; }
    Elem mul(Elem a, Elem b) const override {
        return idx_.at(parent_.mul(elems_[size_t(a)], elems_[size_t(b)]));
    }
    Elem inv(Elem a) const override { return idx_.at(parent_.inv(elems_[size_t(a)])); }
    std::vector<Elem> generators() const override {
        std::vector<char> in(elems_.size(), 0);
        in[0] = 1;
        std::vector<Elem> gens, closure{0};
        for (Elem cand = 1; cand < order(); ++cand) {
            if (in[size_t(cand)]) continue;
            gens.push_back(cand);
            in[size_t(cand)] = 1;
            closure.push_back(cand);
            size_t head = 0;
            while (head < closure.size()) {
                for (Elem g : gens) {
                    Elem z = mul(closure[head], g);
                    if (!in[size_t(z)]) { in[size_t(z)] = 1; closure.push_back(z); }
                    z = mul(closure[head], inv(g));
                    if (!in[size_t(z)]) { in[size_t(z)] = 1; closure.push_back(z); }
                }
                ++head;
            }
            if (closure.size() == elems_.size()) break;
        }
        if (gens.empty()) gens.push_back(0);
        return gens;
    }

    Elem parent_elem(Elem sub) const { return elems_[size_t(sub)]; }
    std::optional<Elem> sub_elem(Elem parent) const {
        auto it = idx_.find(parent);
        if (it == idx_.end()) return std::nullopt;
        return it->second;
    }
    const std::vector<Elem>& parent_elems() const { return elems_; }
    const FiniteGroup& parent() const { return parent_; }
    std::optional<int64_t> fixed_points(Elem e) const override {
        return parent_.impl().fixed_points(elems_[size_t(e)]);
    }
    std::optional<int64_t> trace_label(Elem e) const override {
        return parent_.impl().trace_label(elems_[size_t(e)]);
    }
    bool has_trace_label() const override { return parent_.impl().has_trace_label(); }
    bool regular_semisimple(Elem e) const override {
        return parent_.impl().regular_semisimple(elems_[size_t(e)]);
    }
    std::optional<int64_t> field_size() const override { return parent_.impl().field_size(); }

private:
    FiniteGroup parent_;
    std::vector<Elem> elems_;
    std::string name_;
    std::unordered_map<Elem, Elem> idx_;
    bool abelian_ = false;
};

struct SubgroupHandle {
    FiniteGroup parent;
    FiniteGroup group;  // impl is a SubgroupView
    const SubgroupView& view() const { return static_cast<const SubgroupView&>(group.impl()); }
    bool contains(Elem parent_elem) const { return view().sub_elem(parent_elem).has_value(); }
};

inline SubgroupHandle subgroup(const FiniteGroup& G, const std::vector<Elem>& gens,
                               const std::string& name = "") {
    for (Elem g : gens)
        if (g < 0 || g >= G.order()) throw std::invalid_argument("generator not in group");
    auto elems = closure_of(G, gens);
    auto impl = std::make_shared<SubgroupView>(G, elems,
                                               name.empty() ? ("H<" + G.name() + ">") : name);
    return SubgroupHandle{G, FiniteGroup(impl)};
}

inline SubgroupHandle subgroup_from_elements(const FiniteGroup& G, std::vector<Elem> elems,
                                             const std::string& name = "") {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto impl = std::make_shared<SubgroupView>(G, elems,
                                               name.empty() ? ("H<" + G.name() + ">") : name);
    return SubgroupHandle{G, FiniteGroup(impl)};
}

inline bool is_normal(const FiniteGroup& G, const SubgroupHandle& H) {
    for (Elem g : G.generators())
        for (Elem h : H.view().parent_elems())
            if (!H.contains(G.mul(G.mul(g, h), G.inv(g)))) return false;
    return true;
}

class QuotientGroup : public GroupImpl {
public:
    QuotientGroup(FiniteGroup parent, SubgroupHandle normal)
        : parent_(std::move(parent)), normal_(std::move(normal)) {
        if (!is_normal(parent_, normal_)) throw std::invalid_argument("subgroup is not normal");
        int64_t n = parent_.order();
        proj_raw_.assign(size_t(n), -1);
        const auto& nel = normal_.view().parent_elems();
        std::vector<Elem> reps;
        for (Elem x = 0; x < n; ++x) {
            if (proj_raw_[size_t(x)] >= 0) continue;
            Elem r = Elem(reps.size());
            reps.push_back(x);  // x is minimal in its coset (scan order)
            for (Elem h : nel) proj_raw_[size_t(parent_.mul(x, h))] = r;
        }
        reps_ = std::move(reps);
        if (parent_.order() % int64_t(reps_.size()) != 0)
            throw std::logic_error("coset partition inconsistent");
        // homomorphism check on generators
        for (Elem a : parent_.generators())
            for (Elem b : parent_.generators())
                if (proj_raw_[size_t(parent_.mul(a, b))] !=
                    mul(proj_raw_[size_t(a)], proj_raw_[size_t(b)]))
                    throw std::logic_error("projection is not a homomorphism");
        abelian_ = true;
        auto gens = generators();
        for (Elem a : gens)
            for (Elem b : gens)
                if (mul(a, b) != mul(b, a)) { abelian_ = false; break; }
    }

    int64_t order() const override { return int64_t(reps_.size()); }
    bool is_abelian() const override { return abelian_; }
    std::string name() const override { return parent_.name() + "/" + normal_.group.name(); }
    Elem mul(Elem a, Elem b) const override {
        return proj_raw_[size_t(parent_.mul(reps_[size_t(a)], reps_[size_t(b)]))];
    }
    Elem inv(Elem a) const override { return proj_raw_[size_t(parent_.inv(reps_[size_t(a)]))]; }
    std::vector<Elem> generators() const override {
        std::vector<Elem> g;
        for (Elem x : parent_.generators()) g.push_back(proj_raw_[size_t(x)]);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        if (!g.empty() && g.front() == 0 && g.size() > 1) g.erase(g.begin());
        return g;
    }
    Elem project(Elem parent_elem) const { return proj_raw_[size_t(parent_elem)]; }
    Elem rep_of(Elem q) const { return reps_[size_t(q)]; }
    const FiniteGroup& parent() const { return parent_; }

private:
    FiniteGroup parent_;
    SubgroupHandle normal_;
    std::vector<Elem> proj_raw_;
    std::vector<Elem> reps_;
    bool abelian_ = false;
};

struct QuotientHandle {
    FiniteGroup parent;
    FiniteGroup group;  // impl is a QuotientGroup
    const QuotientGroup& q() const { return static_cast<const QuotientGroup&>(group.impl()); }
    Elem project(Elem e) const { return q().project(e); }
};

inline QuotientHandle quotient(const FiniteGroup& G, const SubgroupHandle& N) {
    auto impl = std::make_shared<QuotientGroup>(G, N);
    return QuotientHandle{G, FiniteGroup(impl)};
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    return FiniteGroup(std::make_shared<ProductGroup>(a, b));
}

}  // namespace lw

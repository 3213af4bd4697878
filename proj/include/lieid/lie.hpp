#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "config.hpp"
#include "word.hpp"

namespace lieid {

/// Multiplicity of each generator index. Zero multiplicities are never stored.
class MultiDeg {
public:
    using Map = std::map<std::uint32_t, std::uint32_t>;

    MultiDeg() = default;
    MultiDeg(std::initializer_list<std::pair<const std::uint32_t, std::uint32_t>> init) {
        for (const auto& [i, m] : init) add(i, m);
    }

    /// Variable i+1 gets entry i.
    static MultiDeg positional(const std::vector<std::uint32_t>& mults) {
        MultiDeg d;
        for (std::size_t i = 0; i < mults.size(); ++i) d.add(static_cast<std::uint32_t>(i + 1), mults[i]);
        return d;
    }

    /// The multilinear multidegree 1^n.
    static MultiDeg ones(std::uint32_t n) { return positional(std::vector<std::uint32_t>(n, 1)); }

    void add(std::uint32_t index, std::uint32_t mult = 1) {
        if (index == 0) throw std::invalid_argument("generator index 0 is not allowed");
        if (mult) m_[index] += mult;
    }

    std::uint32_t operator[](std::uint32_t index) const {
        auto it = m_.find(index);
        return it == m_.end() ? 0 : it->second;
    }

    unsigned total() const {
        unsigned t = 0;
        for (const auto& [i, m] : m_) t += m;
        return t;
    }

    bool empty() const noexcept { return m_.empty(); }
    std::size_t num_variables() const noexcept { return m_.size(); }
    const Map& entries() const noexcept { return m_; }

    std::vector<std::uint32_t> support() const {
        std::vector<std::uint32_t> s;
        for (const auto& [i, m] : m_) s.push_back(i);
        return s;
    }

    bool divides(const MultiDeg& o) const {
        for (const auto& [i, m] : m_)
            if (o[i] < m) return false;
        return true;
    }

    bool is_multilinear() const {
        for (const auto& [i, m] : m_)
            if (m != 1) return false;
        return true;
    }

    friend MultiDeg operator+(MultiDeg a, const MultiDeg& b) {
        for (const auto& [i, m] : b.m_) a.m_[i] += m;
        return a;
    }

    /// Requires b.divides(a).
    friend MultiDeg operator-(MultiDeg a, const MultiDeg& b) {
        for (const auto& [i, m] : b.m_) {
            auto it = a.m_.find(i);
            if (it == a.m_.end() || it->second < m) throw std::invalid_argument("multidegree underflow");
            if ((it->second -= m) == 0) a.m_.erase(it);
        }
        return a;
    }

    friend MultiDeg operator*(std::uint32_t k, MultiDeg a) {
        if (k == 0) return {};
        for (auto& [i, m] : a.m_) m *= k;
        return a;
    }

    friend auto operator<=>(const MultiDeg&, const MultiDeg&) = default;

    /// "{1:2,2:1}"
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (const auto& [i, m] : m_) {
            if (!first) s += ',';
            first = false;
            s += std::to_string(i) + ':' + std::to_string(m);
        }
        return s + '}';
    }

    /// Sorted letters with repetition, e.g. {1:2,3:1} -> [1,1,3].
    std::vector<std::uint32_t> letters() const {
        std::vector<std::uint32_t> out;
        for (const auto& [i, m] : m_) out.insert(out.end(), m, i);
        return out;
    }

private:
    Map m_;
};

namespace detail {

struct Node {
    const Node* left = nullptr;
    const Node* right = nullptr;
    std::uint32_t index = 0;  // leaves only
    std::uint32_t degree = 1;
    mutable std::atomic<const AssocPoly*> expansion{nullptr};

    ~Node() { delete expansion.load(); }
};

// Hash-consing table: structurally equal trees share one node, so tree
// equality is pointer equality. Nodes live for the whole program.
class NodeTable {
public:
    const Node* leaf(std::uint32_t index) {
        return intern(leaves_, index, [&] {
            auto n = std::make_unique<Node>();
            n->index = index;
            return n;
        });
    }

    const Node* pair(const Node* l, const Node* r) {
        const auto key = std::pair{l, r};
        return intern(pairs_, key, [&] {
            auto n = std::make_unique<Node>();
            n->left = l;
            n->right = r;
            n->degree = l->degree + r->degree;
            return n;
        });
    }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<const Node*, const Node*>& p) const noexcept {
            auto a = reinterpret_cast<std::uintptr_t>(p.first);
            auto b = reinterpret_cast<std::uintptr_t>(p.second);
            return std::hash<std::uintptr_t>{}(a * 0x9E3779B97F4A7C15ULL ^ (b + (a << 6) + (a >> 2)));
        }
    };

    template <class MapT, class Key, class Make>
    const Node* intern(MapT& map, const Key& key, Make make) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = map.find(key); it != map.end()) return it->second.get();
        }
        std::unique_lock lock(mutex_);
        auto [it, inserted] = map.try_emplace(key);
        if (inserted) it->second = make();
        return it->second.get();
    }

    std::shared_mutex mutex_;
    std::unordered_map<std::uint32_t, std::unique_ptr<Node>> leaves_;
    std::unordered_map<std::pair<const Node*, const Node*>, std::unique_ptr<Node>, PairHash> pairs_;
};

inline NodeTable& node_table() {
    static NodeTable table;
    return table;
}

} // namespace detail

/// A bracketing tree over generator indices. Values are interned handles;
/// copying is free and equality is identity of the underlying tree.
class LieMonomial {
public:
    static constexpr std::uint32_t kMaxIndex = Word::kMaxLetter;

    static LieMonomial leaf(std::uint32_t index) {
        if (index < 1 || index > kMaxIndex)
            throw std::out_of_range("generator index " + std::to_string(index) + " outside [1, 255]");
        return LieMonomial(detail::node_table().leaf(index));
    }

    static LieMonomial pair(LieMonomial l, LieMonomial r) {
        return LieMonomial(detail::node_table().pair(l.node_, r.node_));
    }

    bool is_leaf() const noexcept { return node_->left == nullptr; }
    std::uint32_t index() const noexcept { return node_->index; }
    LieMonomial left() const noexcept { return LieMonomial(node_->left); }
    LieMonomial right() const noexcept { return LieMonomial(node_->right); }
    unsigned degree() const noexcept { return node_->degree; }

    /// Canonical order: leaves by index; trees by (degree, left, right).
    friend std::strong_ordering operator<=>(const LieMonomial& a, const LieMonomial& b) noexcept {
        return compare(a.node_, b.node_);
    }
    friend bool operator==(const LieMonomial& a, const LieMonomial& b) noexcept { return a.node_ == b.node_; }

    const detail::Node* node() const noexcept { return node_; }

private:
    explicit LieMonomial(const detail::Node* n) : node_(n) {}

    static std::strong_ordering compare(const detail::Node* a, const detail::Node* b) noexcept {
        if (a == b) return std::strong_ordering::equal;
        if (a->degree != b->degree) return a->degree <=> b->degree;
        if (a->left == nullptr) return a->index <=> b->index;
        if (auto c = compare(a->left, b->left); c != 0) return c;
        return compare(a->right, b->right);
    }

    const detail::Node* node_;
};

inline MultiDeg multidegree(LieMonomial m) {
    MultiDeg d;
    auto visit = [&](auto&& self, LieMonomial x) -> void {
        if (x.is_leaf()) {
            d.add(x.index());
            return;
        }
        self(self, x.left());
        self(self, x.right());
    };
    visit(visit, m);
    return d;
}

/// Memoized expansion [u,v] -> uv + vu into the free associative algebra.
inline const AssocPoly& assoc_expand(LieMonomial m) {
    const detail::Node* n = m.node();
    if (const AssocPoly* cached = n->expansion.load(std::memory_order_acquire)) return *cached;
    check_degree(m.degree(), "assoc_expand");
    std::unique_ptr<AssocPoly> value;
    if (m.is_leaf())
        value = std::make_unique<AssocPoly>(Word::letter(m.index()));
    else
        value = std::make_unique<AssocPoly>(commutator(assoc_expand(m.left()), assoc_expand(m.right())));
    const AssocPoly* expected = nullptr;
    if (n->expansion.compare_exchange_strong(expected, value.get(), std::memory_order_acq_rel))
        return *value.release();
    return *expected;
}

/// Formal GF(2) sum of Lie monomials, kept sorted in canonical order.
/// Zero in the free Lie algebra is decided by assoc_expand, not by emptiness.
class LiePoly {
public:
    LiePoly() = default;
    LiePoly(LieMonomial m) : terms_{m} {}  // NOLINT(google-explicit-constructor)

    static LiePoly from_terms(std::vector<LieMonomial> terms) {
        LiePoly p;
        std::sort(terms.begin(), terms.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms.size();) {
            std::size_t j = i;
            while (j < terms.size() && terms[j] == terms[i]) ++j;
            if ((j - i) % 2 == 1) terms[out++] = terms[i];
            i = j;
        }
        terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(out), terms.end());
        p.terms_ = std::move(terms);
        return p;
    }

    static LiePoly var(std::uint32_t i) { return LiePoly(LieMonomial::leaf(i)); }

    const std::vector<LieMonomial>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    /// No terms at all (syntactic zero).
    bool empty() const noexcept { return terms_.empty(); }

    LiePoly& operator+=(const LiePoly& o) {
        std::vector<LieMonomial> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                      std::back_inserter(out));
        terms_ = std::move(out);
        return *this;
    }
    friend LiePoly operator+(LiePoly a, const LiePoly& b) { return a += b; }

    friend bool operator==(const LiePoly&, const LiePoly&) = default;

    unsigned max_degree() const {
        unsigned d = 0;
        for (auto m : terms_) d = std::max(d, m.degree());
        return d;
    }

    std::set<std::uint32_t> indices() const {
        std::set<std::uint32_t> s;
        for (auto m : terms_)
            for (auto i : multidegree(m).support()) s.insert(i);
        return s;
    }

    /// Common multidegree of all terms, or nothing if the terms disagree or there are none.
    std::optional<MultiDeg> homogeneous_multidegree() const {
        if (terms_.empty()) return std::nullopt;
        MultiDeg d = multidegree(terms_.front());
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (multidegree(terms_[i]) != d) return std::nullopt;
        return d;
    }

    /// Split into multihomogeneous components.
    std::map<MultiDeg, LiePoly> components() const {
        std::map<MultiDeg, std::vector<LieMonomial>> parts;
        for (auto m : terms_) parts[multidegree(m)].push_back(m);
        std::map<MultiDeg, LiePoly> out;
        for (auto& [d, ts] : parts) out.emplace(d, from_terms(std::move(ts)));
        return out;
    }

private:
    std::vector<LieMonomial> terms_;
};

/// Bilinear extension of the pair constructor. No Jacobi or alternating reduction.
inline LiePoly bracket(const LiePoly& p, const LiePoly& q) {
    std::vector<LieMonomial> out;
    out.reserve(p.size() * q.size());
    for (auto u : p.terms())
        for (auto v : q.terms()) out.push_back(LieMonomial::pair(u, v));
    return LiePoly::from_terms(std::move(out));
}

/// ((m0 m1) m2) ... mk
inline LieMonomial left_norm(std::span<const LieMonomial> ms) {
    if (ms.empty()) throw std::invalid_argument("left_norm of an empty list");
    LieMonomial acc = ms.front();
    for (std::size_t i = 1; i < ms.size(); ++i) acc = LieMonomial::pair(acc, ms[i]);
    return acc;
}

inline LieMonomial left_norm(std::initializer_list<LieMonomial> ms) {
    return left_norm(std::span<const LieMonomial>(ms.begin(), ms.size()));
}

/// Left-normalized monomial of single letters.
inline LieMonomial left_norm_letters(std::span<const std::uint32_t> letters) {
    if (letters.empty()) throw std::invalid_argument("left_norm of an empty list");
    LieMonomial acc = LieMonomial::leaf(letters.front());
    for (std::size_t i = 1; i < letters.size(); ++i) acc = LieMonomial::pair(acc, LieMonomial::leaf(letters[i]));
    return acc;
}

inline LieMonomial left_norm_letters(std::initializer_list<std::uint32_t> letters) {
    return left_norm_letters(std::span<const std::uint32_t>(letters.begin(), letters.size()));
}

inline AssocPoly assoc_expand(const LiePoly& p) {
    std::vector<Word> all;
    for (auto m : p.terms()) {
        const auto& e = assoc_expand(m);
        all.insert(all.end(), e.words().begin(), e.words().end());
    }
    return AssocPoly::from_words(std::move(all));
}

inline bool is_zero(const LiePoly& p) { return assoc_expand(p).empty(); }

/// p == q in the free Lie algebra.
inline bool equivalent(const LiePoly& p, const LiePoly& q) { return is_zero(p + q); }

using Substitution = std::map<std::uint32_t, LiePoly>;

/// Simultaneous substitution x_i -> s[i], expanded bilinearly over every bracket.
inline LiePoly substitute(const LiePoly& p, const Substitution& s) {
    std::unordered_map<const detail::Node*, LiePoly> memo;
    auto go = [&](auto&& self, LieMonomial m) -> LiePoly {
        if (auto it = memo.find(m.node()); it != memo.end()) return it->second;
        LiePoly r;
        if (m.is_leaf()) {
            auto it = s.find(m.index());
            if (it == s.end())
                throw std::invalid_argument("substitution missing index " + std::to_string(m.index()));
            r = it->second;
        } else {
            r = bracket(self(self, m.left()), self(self, m.right()));
        }
        memo.emplace(m.node(), r);
        return r;
    };
    LiePoly out;
    for (auto m : p.terms()) out += go(go, m);
    return out;
}

/// Renaming x_i -> x_{perm(i)}; indices absent from the map stay fixed.
inline LiePoly rename(const LiePoly& p, const std::map<std::uint32_t, std::uint32_t>& perm) {
    Substitution s;
    for (auto i : p.indices()) {
        auto it = perm.find(i);
        s.emplace(i, LiePoly::var(it == perm.end() ? i : it->second));
    }
    return substitute(p, s);
}

/// Linearization of p in the variable v: substitute v -> sum(parts) and keep the
/// component where each part has the multiplicity given by target (absent = 0).
inline LiePoly polarize(const LiePoly& p, std::uint32_t v, const std::vector<std::uint32_t>& parts,
                        const MultiDeg& target) {
    if (parts.size() < 2) throw std::invalid_argument("polarize needs at least two parts");
    const auto used = p.indices();
    std::set<std::uint32_t> part_set(parts.begin(), parts.end());
    if (part_set.size() != parts.size()) throw std::invalid_argument("polarize parts must be distinct");
    for (auto f : parts)
        if (used.contains(f) || f == v) throw std::invalid_argument("polarize part x" + std::to_string(f) + " is not fresh");
    for (const auto& [i, m] : target.entries())
        if (!part_set.contains(i)) throw std::invalid_argument("polarize target names a non-part index");

    std::optional<std::uint32_t> d;
    for (auto m : p.terms()) {
        const auto dm = multidegree(m)[v];
        if (d && *d != dm) throw std::invalid_argument("polarize input is not homogeneous in the variable");
        d = dm;
    }
    if (!d || *d == 0) throw std::invalid_argument("polarize input must have positive degree in the variable");
    if (target.total() != *d) throw std::invalid_argument("polarize target multiplicities must sum to the degree");

    LiePoly sum;
    for (auto f : parts) sum += LiePoly::var(f);
    Substitution s;
    for (auto i : used) s.emplace(i, i == v ? sum : LiePoly::var(i));
    const LiePoly expanded = substitute(p, s);

    std::vector<LieMonomial> keep;
    for (auto m : expanded.terms()) {
        const auto dm = multidegree(m);
        bool ok = true;
        for (auto f : parts)
            if (dm[f] != target[f]) {
                ok = false;
                break;
            }
        if (ok) keep.push_back(m);
    }
    return LiePoly::from_terms(std::move(keep));
}

} // namespace lieid

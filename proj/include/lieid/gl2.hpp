#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "config.hpp"
#include "lie.hpp"

namespace lieid::gl2 {

using VarId = std::uint32_t;

/// Commutative polynomial over GF(2). A monomial is a sorted multiset of
/// variable ids, i.e. each variable repeated by its exponent.
class PolyGF2 {
public:
    using Mono = std::vector<VarId>;

    PolyGF2() = default;

    static PolyGF2 one() { return from_monomials({Mono{}}); }
    static PolyGF2 var(VarId v) { return from_monomials({Mono{v}}); }

    static PolyGF2 from_monomials(std::vector<Mono> ms) {
        for (auto& m : ms) std::sort(m.begin(), m.end());
        std::sort(ms.begin(), ms.end());
        PolyGF2 p;
        for (std::size_t i = 0; i < ms.size();) {
            std::size_t j = i;
            while (j < ms.size() && ms[j] == ms[i]) ++j;
            if ((j - i) % 2 == 1) p.monos_.push_back(std::move(ms[i]));
            i = j;
        }
        return p;
    }

    const std::vector<Mono>& monomials() const noexcept { return monos_; }
    bool is_zero() const noexcept { return monos_.empty(); }
    std::size_t size() const noexcept { return monos_.size(); }

    static std::uint32_t exponent(const Mono& m, VarId v) {
        auto [lo, hi] = std::equal_range(m.begin(), m.end(), v);
        return static_cast<std::uint32_t>(hi - lo);
    }

    PolyGF2& operator+=(const PolyGF2& o) {
        std::vector<Mono> out;
        out.reserve(monos_.size() + o.monos_.size());
        std::set_symmetric_difference(monos_.begin(), monos_.end(), o.monos_.begin(), o.monos_.end(),
                                      std::back_inserter(out));
        monos_ = std::move(out);
        return *this;
    }
    friend PolyGF2 operator+(PolyGF2 a, const PolyGF2& b) { return a += b; }

    friend PolyGF2 operator*(const PolyGF2& a, const PolyGF2& b) {
        std::vector<Mono> out;
        out.reserve(a.size() * b.size());
        for (const auto& u : a.monos_)
            for (const auto& v : b.monos_) {
                Mono m;
                m.reserve(u.size() + v.size());
                std::merge(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(m));
                out.push_back(std::move(m));
            }
        return from_monomials(std::move(out));
    }

    /// Value under an assignment of every variable to 0 or 1.
    bool evaluate(const std::map<VarId, bool>& at) const {
        bool acc = false;
        for (const auto& m : monos_) {
            bool term = true;
            for (auto v : m) {
                auto it = at.find(v);
                term = term && it != at.end() && it->second;
            }
            acc ^= term;
        }
        return acc;
    }

    friend bool operator==(const PolyGF2&, const PolyGF2&) = default;

private:
    std::vector<Mono> monos_;
};

/// 2x2 matrix with polynomial entries, row-major: 11, 12, 21, 22.
struct GMat2 {
    std::array<PolyGF2, 4> e;

    const PolyGF2& at(int r, int c) const { return e[2 * r + c]; }
    PolyGF2& at(int r, int c) { return e[2 * r + c]; }

    bool is_zero() const {
        return std::all_of(e.begin(), e.end(), [](const PolyGF2& p) { return p.is_zero(); });
    }

    friend GMat2 operator+(const GMat2& a, const GMat2& b) {
        GMat2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }

    friend GMat2 operator*(const GMat2& a, const GMat2& b) {
        GMat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
        return r;
    }

    friend bool operator==(const GMat2&, const GMat2&) = default;
};

/// Unit matrix E_{ij} (1-based).
inline GMat2 unit(int i, int j) {
    GMat2 m;
    m.at(i - 1, j - 1) = PolyGF2::one();
    return m;
}

inline GMat2 zero_matrix() { return GMat2{}; }

// Basis of gl2 used for substitution tests: a = E22, b = E12, c = E21;
// together with bc = E11 + E22 they span gl2.
inline GMat2 mat_a() { return unit(2, 2); }
inline GMat2 mat_b() { return unit(1, 2); }
inline GMat2 mat_c() { return unit(2, 1); }

/// AB + BA.
inline GMat2 lie_mat(const GMat2& a, const GMat2& b) { return a * b + b * a; }

/// Four fresh indeterminates 4i, 4i+1, 4i+2, 4i+3 (entries 11, 12, 21, 22).
inline GMat2 generic_matrix(std::uint32_t i) {
    GMat2 m;
    for (VarId k = 0; k < 4; ++k) m.e[k] = PolyGF2::var(4 * i + k);
    return m;
}

/// Trace zero in characteristic two: both diagonal entries are the same indeterminate.
inline GMat2 generic_sl2_matrix(std::uint32_t i) {
    GMat2 m;
    m.e[0] = m.e[3] = PolyGF2::var(4 * i);
    m.e[1] = PolyGF2::var(4 * i + 1);
    m.e[2] = PolyGF2::var(4 * i + 2);
    return m;
}

using Assignment = std::map<std::uint32_t, GMat2>;

/// Brackets become lie_mat, sums become entrywise sums.
inline GMat2 eval(const LiePoly& p, const Assignment& assign) {
    std::unordered_map<const lieid::detail::Node*, GMat2> memo;
    auto go = [&](auto&& self, LieMonomial m) -> GMat2 {
        if (auto it = memo.find(m.node()); it != memo.end()) return it->second;
        GMat2 r;
        if (m.is_leaf()) {
            auto it = assign.find(m.index());
            if (it == assign.end()) throw std::invalid_argument("eval: no matrix for x" + std::to_string(m.index()));
            r = it->second;
        } else {
            r = lie_mat(self(self, m.left()), self(self, m.right()));
        }
        memo.emplace(m.node(), r);
        return r;
    };
    GMat2 acc;
    for (auto m : p.terms()) acc = acc + go(go, m);
    return acc;
}

enum class Algebra { gl2, sl2 };

inline const char* to_string(Algebra a) { return a == Algebra::gl2 ? "gl2" : "sl2"; }

namespace detail {

// Evaluates associative words at generic matrices. A matrix entry of a word is
// a sum over index paths; each path contributes one monomial, encoded as the
// sorted byte string (slot * 4 + entry) prefixed by the output entry, packed
// into 128 bits. Equal keys cancel.
class WordEvaluator {
public:
    using Key = unsigned __int128;

    struct KeyHash {
        std::size_t operator()(Key k) const noexcept {
            auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
            std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0xD6E8FEB86659FD93ULL);
            h ^= h >> 31;
            return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
        }
    };

    WordEvaluator(const std::vector<std::uint32_t>& indices, Algebra algebra) : algebra_(algebra) {
        if (indices.size() > 63) throw std::invalid_argument("too many distinct variables for evaluation");
        std::uint8_t s = 0;
        for (auto i : indices) slot_[i] = s++;
    }

    /// Monomial keys of the generic evaluation of w (after cancellation).
    std::vector<Key> keys(const Word& w) const {
        const std::size_t k = w.size();
        if (k == 0 || k > 15) throw std::invalid_argument("word length outside evaluator range");
        std::array<std::uint8_t, 16> slots{};
        for (std::size_t t = 0; t < k; ++t) slots[t] = slot_.at(w[t]);
        std::unordered_map<Key, bool, KeyHash> acc;
        std::array<std::uint8_t, 16> bytes{};
        const std::uint32_t paths = 1U << (k + 1);
        for (std::uint32_t path = 0; path < paths; ++path) {
            // bit t of path is the row/column index p_t, t = 0..k
            for (std::size_t t = 0; t < k; ++t) {
                const unsigned r = (path >> t) & 1U, c = (path >> (t + 1)) & 1U;
                unsigned entry = 2 * r + c;
                if (algebra_ == Algebra::sl2 && entry == 3) entry = 0;
                bytes[t] = static_cast<std::uint8_t>(slots[t] * 4 + entry);
            }
            std::sort(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(k));
            const unsigned out_entry = 2 * (path & 1U) + ((path >> k) & 1U);
            Key key = out_entry;
            for (std::size_t t = 0; t < k; ++t) key = (key << 8) | bytes[t];
            auto [it, inserted] = acc.try_emplace(key, true);
            if (!inserted) it->second = !it->second;
        }
        std::vector<Key> out;
        for (const auto& [key, on] : acc)
            if (on) out.push_back(key);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Algebra algebra_;
    std::map<std::uint32_t, std::uint8_t> slot_;
};

inline std::vector<std::uint32_t> indices_of(const LiePoly& p) {
    auto s = p.indices();
    return {s.begin(), s.end()};
}

} // namespace detail

/// Whether p vanishes on generic matrices of the chosen algebra. Over an
/// infinite field of characteristic two this decides identity-hood.
inline bool is_identity(const LiePoly& p, Algebra algebra) {
    check_degree(p.max_degree(), std::string("is_identity_") + to_string(algebra));
    const AssocPoly expansion = assoc_expand(p);
    if (expansion.empty()) return true;
    detail::WordEvaluator ev(detail::indices_of(p), algebra);
    std::unordered_set<detail::WordEvaluator::Key, detail::WordEvaluator::KeyHash> acc;
    for (const auto& w : expansion.words())
        for (auto k : ev.keys(w))
            if (!acc.insert(k).second) acc.erase(k);
    return acc.empty();
}

inline bool is_identity_gl2(const LiePoly& p) { return is_identity(p, Algebra::gl2); }
inline bool is_identity_sl2(const LiePoly& p) { return is_identity(p, Algebra::sl2); }

/// f^(i,j): x_i -> b, x_j -> c, every other x_k (1 <= k <= n) -> a.
inline GMat2 sub_ij(const LiePoly& p, std::uint32_t i, std::uint32_t j, std::uint32_t n) {
    if (!(1 <= i && i < j && j <= n)) throw std::out_of_range("sub_ij requires 1 <= i < j <= n");
    for (auto k : p.indices())
        if (k > n) throw std::out_of_range("sub_ij: x" + std::to_string(k) + " outside 1..n");
    Assignment assign;
    for (std::uint32_t k = 1; k <= n; ++k) assign[k] = k == i ? mat_b() : k == j ? mat_c() : mat_a();
    return eval(p, assign);
}

/// Whether f^(i,j) vanishes for every 1 <= i < j <= n.
inline bool all_sub_ij_vanish(const LiePoly& p, std::uint32_t n) {
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = i + 1; j <= n; ++j)
            if (!sub_ij(p, i, j, n).is_zero()) return false;
    return true;
}

} // namespace lieid::gl2

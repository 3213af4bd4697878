#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lie.hpp"
#include "word.hpp"

namespace lieid::gf2 {

/// Dense bit vector, packed into 64-bit blocks.
class GF2Vector {
public:
    GF2Vector() = default;
    explicit GF2Vector(std::size_t size) : size_(size), blocks_((size + 63) / 64, 0) {}

    static GF2Vector from_bits(const std::vector<int>& bits) {
        GF2Vector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & 1) v.set(i);
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t i) const noexcept { return (blocks_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) noexcept { blocks_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void flip(std::size_t i) noexcept { blocks_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool is_zero() const noexcept {
        return std::all_of(blocks_.begin(), blocks_.end(), [](std::uint64_t b) { return b == 0; });
    }

    /// First set position at or after `from`, or size() if none.
    std::size_t first_set(std::size_t from = 0) const noexcept {
        if (from >= size_) return size_;
        std::size_t blk = from >> 6;
        std::uint64_t cur = blocks_[blk] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return std::min(size_, (blk << 6) + static_cast<std::size_t>(std::countr_zero(cur)));
            if (++blk == blocks_.size()) return size_;
            cur = blocks_[blk];
        }
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
        return c;
    }

    /// this ^= o, touching only blocks from the one containing `from`.
    void xor_from(const GF2Vector& o, std::size_t from = 0) noexcept {
        for (std::size_t b = from >> 6; b < blocks_.size(); ++b) blocks_[b] ^= o.blocks_[b];
    }

    GF2Vector& operator^=(const GF2Vector& o) {
        if (o.size_ != size_) throw std::invalid_argument("GF2Vector length mismatch");
        xor_from(o);
        return *this;
    }
    friend GF2Vector operator^(GF2Vector a, const GF2Vector& b) { return a ^= b; }

    friend bool operator==(const GF2Vector&, const GF2Vector&) = default;

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t i = first_set(); i < size_; i = first_set(i + 1)) out.push_back(i);
        return out;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    const std::vector<std::uint64_t>& blocks() const noexcept { return blocks_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> blocks_;
};

/// All words of one multidegree, sorted length-then-lex; gives coordinates.
class WordIndex {
public:
    explicit WordIndex(MultiDeg mdeg) : mdeg_(std::move(mdeg)) {
        check_degree(mdeg_.total(), "WordIndex");
        auto letters = mdeg_.letters();
        if (letters.empty()) return;
        do {
            words_.push_back(Word::from_letters(letters));
        } while (std::next_permutation(letters.begin(), letters.end()));
    }

    const MultiDeg& multidegree() const noexcept { return mdeg_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<Word>& words() const noexcept { return words_; }

    std::optional<std::size_t> position(const Word& w) const {
        auto it = std::lower_bound(words_.begin(), words_.end(), w);
        if (it == words_.end() || *it != w) return std::nullopt;
        return static_cast<std::size_t>(it - words_.begin());
    }

    GF2Vector to_vector(const AssocPoly& p) const {
        GF2Vector v(words_.size());
        for (const auto& w : p.words()) {
            auto pos = position(w);
            if (!pos) throw std::invalid_argument("word " + w.to_string() + " not in index " + mdeg_.to_string());
            v.set(*pos);
        }
        return v;
    }

    AssocPoly to_poly(const GF2Vector& v) const {
        if (v.size() != words_.size()) throw std::invalid_argument("vector does not match word index");
        std::vector<Word> ws;
        for (auto i : v.ones()) ws.push_back(words_[i]);
        return AssocPoly::from_words(std::move(ws));
    }

private:
    MultiDeg mdeg_;
    std::vector<Word> words_;
};

/// One shared index per multidegree, so subspaces at the same multidegree compare.
inline std::shared_ptr<const WordIndex> word_index(const MultiDeg& d) {
    static std::mutex mutex;
    static std::map<MultiDeg, std::shared_ptr<const WordIndex>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }
    auto idx = std::make_shared<const WordIndex>(d);
    std::lock_guard lock(mutex);
    return cache.try_emplace(d, std::move(idx)).first->second;
}

/// Subspace stored as a reduced row-echelon basis. Pivot of a row is its first
/// set position; pivots strictly increase and each pivot column has a single 1.
class GF2Subspace {
public:
    GF2Subspace() = default;
    explicit GF2Subspace(std::size_t width, std::shared_ptr<const WordIndex> index = nullptr)
        : width_(width), index_(std::move(index)) {
        if (index_ && index_->size() != width_) throw std::invalid_argument("subspace width does not match index");
    }
    explicit GF2Subspace(std::shared_ptr<const WordIndex> index)
        : GF2Subspace(index ? index->size() : 0, index) {}

    std::size_t width() const noexcept { return width_; }
    std::size_t dim() const noexcept { return rows_.size(); }
    const std::vector<GF2Vector>& basis() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    const std::shared_ptr<const WordIndex>& index() const noexcept { return index_; }

    void check_compatible(const GF2Subspace& o) const {
        if (o.width_ != width_) throw std::invalid_argument("subspace width mismatch");
        if (index_ && o.index_ && index_ != o.index_ && index_->multidegree() != o.index_->multidegree())
            throw std::invalid_argument("subspaces live on different word indices");
    }

    /// v minus its projection onto the pivot columns.
    GF2Vector reduce(GF2Vector v) const {
        if (v.size() != width_) throw std::invalid_argument("vector length does not match subspace width");
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (v.get(pivots_[r])) v.xor_from(rows_[r], pivots_[r]);
        return v;
    }

    bool contains(const GF2Vector& v) const { return reduce(v).is_zero(); }

    /// Adds v to the span; returns true if the dimension grew.
    bool insert(GF2Vector v) {
        v = reduce(std::move(v));
        const std::size_t p = v.first_set();
        if (p == width_) return false;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (rows_[r].get(p)) rows_[r].xor_from(v, p);
        auto at = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + at, p);
        rows_.insert(rows_.begin() + at, std::move(v));
        return true;
    }

    /// Fast path when the ambient space is already exhausted.
    bool full() const noexcept { return rows_.size() == width_; }

private:
    std::size_t width_ = 0;
    std::shared_ptr<const WordIndex> index_;
    std::vector<GF2Vector> rows_;
    std::vector<std::size_t> pivots_;
};

inline GF2Subspace span(std::size_t width, const std::vector<GF2Vector>& vs,
                        std::shared_ptr<const WordIndex> index = nullptr) {
    GF2Subspace s(width, std::move(index));
    for (const auto& v : vs) {
        if (v.size() != width) throw std::invalid_argument("span: vector length mismatch");
        s.insert(v);
    }
    return s;
}

inline GF2Subspace span(std::shared_ptr<const WordIndex> index, const std::vector<GF2Vector>& vs) {
    const auto w = index->size();
    return span(w, vs, std::move(index));
}

inline bool contains(const GF2Subspace& s, const GF2Vector& v) { return s.contains(v); }
inline std::size_t dim(const GF2Subspace& s) { return s.dim(); }

inline bool subset(const GF2Subspace& s, const GF2Subspace& t) {
    s.check_compatible(t);
    return std::all_of(s.basis().begin(), s.basis().end(), [&](const auto& v) { return t.contains(v); });
}

inline bool equal(const GF2Subspace& s, const GF2Subspace& t) {
    s.check_compatible(t);
    return s.dim() == t.dim() && subset(s, t);
}

/// Sum of two subspaces.
inline GF2Subspace join(const GF2Subspace& s, const GF2Subspace& t) {
    s.check_compatible(t);
    GF2Subspace out = s;
    for (const auto& v : t.basis()) out.insert(v);
    return out;
}

/// Null space {x : <row, x> = 0 for every row}, in RREF.
inline GF2Subspace kernel(const std::vector<GF2Vector>& rows, std::size_t width) {
    GF2Subspace echelon(width);
    for (const auto& r : rows) {
        if (r.size() != width) throw std::invalid_argument("kernel: row width mismatch");
        echelon.insert(r);
    }
    std::vector<bool> is_pivot(width, false);
    for (auto p : echelon.pivots()) is_pivot[p] = true;
    GF2Subspace out(width);
    for (std::size_t free = 0; free < width; ++free) {
        if (is_pivot[free]) continue;
        GF2Vector x(width);
        x.set(free);
        for (std::size_t r = 0; r < echelon.dim(); ++r)
            if (echelon.basis()[r].get(free)) x.set(echelon.pivots()[r]);
        out.insert(std::move(x));
    }
    return out;
}

/// All coefficient vectors c with sum c_i vs[i] = 0, as a subspace of GF(2)^vs.size().
inline GF2Subspace dependencies(const std::vector<GF2Vector>& vs) {
    const std::size_t k = vs.size();
    GF2Subspace out(k);
    if (k == 0) return out;
    const std::size_t w = vs.front().size();
    // Rows are [v_i | e_i]; elimination only pivots on the left block.
    std::vector<GF2Vector> rows;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < k; ++i) {
        if (vs[i].size() != w) throw std::invalid_argument("dependencies: vector length mismatch");
        GF2Vector row(w + k);
        for (auto j : vs[i].ones()) row.set(j);
        row.set(w + i);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (row.get(pivots[r])) row.xor_from(rows[r], pivots[r]);
        const std::size_t p = row.first_set();
        if (p >= w) {
            GF2Vector dep(k);
            for (std::size_t j = row.first_set(w); j < w + k; j = row.first_set(j + 1)) dep.set(j - w);
            out.insert(std::move(dep));
            continue;
        }
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].get(p)) rows[r].xor_from(row, p);
        rows.push_back(std::move(row));
        pivots.push_back(p);
    }
    return out;
}

/// Some x with sum x_i vs[i] = target, or nothing.
inline std::optional<GF2Vector> solve(const std::vector<GF2Vector>& vs, const GF2Vector& target) {
    std::vector<GF2Vector> aug = vs;
    aug.push_back(target);
    const GF2Subspace deps = dependencies(aug);
    const std::size_t k = vs.size();
    for (const auto& d : deps.basis())
        if (d.get(k)) {
            GF2Vector x(k);
            for (std::size_t i = 0; i < k; ++i)
                if (d.get(i)) x.set(i);
            return x;
        }
    return std::nullopt;
}

/// s ∩ t, computed from the dependencies between the two bases.
inline GF2Subspace intersect(const GF2Subspace& s, const GF2Subspace& t) {
    s.check_compatible(t);
    std::vector<GF2Vector> all = s.basis();
    all.insert(all.end(), t.basis().begin(), t.basis().end());
    const GF2Subspace deps = dependencies(all);
    GF2Subspace out(s.width(), s.index() ? s.index() : t.index());
    for (const auto& d : deps.basis()) {
        GF2Vector v(s.width());
        for (std::size_t i = 0; i < s.dim(); ++i)
            if (d.get(i)) v ^= s.basis()[i];
        out.insert(std::move(v));
    }
    return out;
}

} // namespace lieid::gf2

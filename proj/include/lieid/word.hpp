#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieid {

/// Associative word over letters 1..255, at most 16 letters long.
///
/// Letters are packed left-aligned into a 128-bit integer, one byte each, so
/// that concatenation is a shift-or and, for words of equal length, numeric
/// order coincides with lexicographic order.
class Word {
public:
    using Bits = unsigned __int128;
    static constexpr std::size_t kMaxLength = 16;
    static constexpr std::uint32_t kMaxLetter = 255;

    Word() = default;

    static Word letter(std::uint32_t i) {
        if (i < 1 || i > kMaxLetter)
            throw std::out_of_range("word letter " + std::to_string(i) + " outside [1, 255]");
        Word w;
        w.bits_ = static_cast<Bits>(i) << shift(0);
        w.len_ = 1;
        return w;
    }

    static Word from_letters(std::initializer_list<std::uint32_t> letters) {
        return from_letters(std::vector<std::uint32_t>(letters));
    }

    static Word from_letters(const std::vector<std::uint32_t>& letters) {
        Word w;
        for (auto l : letters) w = w * letter(l);
        return w;
    }

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }

    std::uint32_t operator[](std::size_t t) const noexcept {
        return static_cast<std::uint32_t>((bits_ >> shift(t)) & 0xFF);
    }

    std::vector<std::uint32_t> letters() const {
        std::vector<std::uint32_t> out(len_);
        for (std::size_t t = 0; t < len_; ++t) out[t] = (*this)[t];
        return out;
    }

    friend Word operator*(const Word& a, const Word& b) {
        if (a.len_ + b.len_ > kMaxLength) throw std::length_error("word longer than 16 letters");
        if (b.len_ == 0) return a;
        Word w;
        w.bits_ = a.bits_ | (b.bits_ >> (8 * a.len_));
        w.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
        return w;
    }

    /// Length first, then lexicographic.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
        if (a.len_ != b.len_) return a.len_ <=> b.len_;
        if (a.bits_ == b.bits_) return std::strong_ordering::equal;
        return a.bits_ < b.bits_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    friend bool operator==(const Word& a, const Word& b) noexcept {
        return a.len_ == b.len_ && a.bits_ == b.bits_;
    }

    std::size_t hash() const noexcept {
        const auto lo = static_cast<std::uint64_t>(bits_);
        const auto hi = static_cast<std::uint64_t>(bits_ >> 64);
        std::uint64_t h = hi * 0x9E3779B97F4A7C15ULL ^ (lo + 0x632BE59BD9B4E019ULL + len_);
        h ^= h >> 29;
        h *= 0xBF58476D1CE4E5B9ULL;
        return static_cast<std::size_t>(h ^ (h >> 32));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t t = 0; t < len_; ++t) {
            if (t) s += ' ';
            s += 'x' + std::to_string((*this)[t]);
        }
        return s;
    }

private:
    static constexpr unsigned shift(std::size_t t) noexcept { return static_cast<unsigned>(8 * (15 - t)); }

    Bits bits_ = 0;
    std::uint8_t len_ = 0;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

/// Element of the free associative algebra over GF(2): a set of words.
class AssocPoly {
public:
    AssocPoly() = default;

    explicit AssocPoly(Word w) : words_{w} {}

    /// Builds from an arbitrary word list; equal words cancel in pairs.
    static AssocPoly from_words(std::vector<Word> words) {
        AssocPoly p;
        p.words_ = std::move(words);
        p.normalize();
        return p;
    }

    const std::vector<Word>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

    bool contains(const Word& w) const { return std::binary_search(words_.begin(), words_.end(), w); }

    AssocPoly& operator+=(const AssocPoly& o) {
        std::vector<Word> out;
        out.reserve(words_.size() + o.words_.size());
        std::set_symmetric_difference(words_.begin(), words_.end(), o.words_.begin(), o.words_.end(),
                                      std::back_inserter(out));
        words_ = std::move(out);
        return *this;
    }

    friend AssocPoly operator+(AssocPoly a, const AssocPoly& b) { return a += b; }

    friend AssocPoly operator*(const AssocPoly& a, const AssocPoly& b) {
        std::vector<Word> out;
        out.reserve(a.size() * b.size());
        for (const auto& u : a.words_)
            for (const auto& v : b.words_) out.push_back(u * v);
        return from_words(std::move(out));
    }

    /// uv + vu, the Lie bracket in characteristic two.
    friend AssocPoly commutator(const AssocPoly& a, const AssocPoly& b) {
        std::vector<Word> out;
        out.reserve(2 * a.size() * b.size());
        for (const auto& u : a.words_)
            for (const auto& v : b.words_) {
                out.push_back(u * v);
                out.push_back(v * u);
            }
        return from_words(std::move(out));
    }

    friend bool operator==(const AssocPoly&, const AssocPoly&) = default;

    std::string to_string() const {
        if (words_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (i) s += " + ";
            s += words_[i].to_string();
        }
        return s;
    }

private:
    void normalize() {
        std::sort(words_.begin(), words_.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < words_.size();) {
            std::size_t j = i;
            while (j < words_.size() && words_[j] == words_[i]) ++j;
            if ((j - i) % 2 == 1) words_[out++] = words_[i];
            i = j;
        }
        words_.resize(out);
    }

    std::vector<Word> words_;
};

} // namespace lieid

#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lie.hpp"

namespace lieid::expr {

/// Malformed expression text; position is a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

namespace detail {

// expr := term { "+" term } ; term := factor { factor } ;
// factor := VAR | "(" term ")" ; VAR := "x" DIGITS
class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    LiePoly parse() {
        skip_ws();
        if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
        if (s_[pos_] == '0') {
            ++pos_;
            skip_ws();
            if (pos_ != s_.size()) throw ParseError(pos_, "'0' must stand alone");
            return {};
        }
        std::vector<LieMonomial> terms;
        terms.push_back(term());
        while (true) {
            skip_ws();
            if (pos_ == s_.size()) break;
            if (s_[pos_] != '+') throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
            ++pos_;
            terms.push_back(term());
        }
        return LiePoly::from_terms(std::move(terms));
    }

private:
    LieMonomial term() {
        skip_ws();
        const std::size_t start = pos_;
        std::vector<LieMonomial> factors;
        while (true) {
            skip_ws();
            if (pos_ == s_.size() || (s_[pos_] != 'x' && s_[pos_] != '(')) break;
            factors.push_back(factor());
        }
        if (factors.empty()) {
            if (pos_ < s_.size() && s_[pos_] == ')') throw ParseError(start, "empty product");
            throw ParseError(pos_, pos_ == s_.size() ? "expected a factor, found end of input"
                                                     : std::string("expected a factor, found '") + s_[pos_] + "'");
        }
        return left_norm(factors);
    }

    LieMonomial factor() {
        if (s_[pos_] == '(') {
            ++pos_;
            LieMonomial m = term();
            skip_ws();
            if (pos_ == s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return m;
        }
        const std::size_t start = pos_++;  // 'x'
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError(digits, "expected digits after 'x'");
        if (pos_ - digits > 6) throw ParseError(start, "variable index too large");
        const auto index = std::stoul(std::string(s_.substr(digits, pos_ - digits)));
        if (index == 0) throw ParseError(start, "variable index 0 is not allowed");
        if (index > LieMonomial::kMaxIndex)
            throw ParseError(start, "variable index exceeds " + std::to_string(LieMonomial::kMaxIndex));
        return LieMonomial::leaf(static_cast<std::uint32_t>(index));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline void print_factor(std::string& out, LieMonomial m);

// Left spine printed flat: ((f0 f1) f2) -> "f0 f1 f2".
inline void print_run(std::string& out, LieMonomial m) {
    std::vector<LieMonomial> rights;
    while (!m.is_leaf()) {
        rights.push_back(m.right());
        m = m.left();
    }
    out += 'x';
    out += std::to_string(m.index());
    for (auto it = rights.rbegin(); it != rights.rend(); ++it) {
        out += ' ';
        print_factor(out, *it);
    }
}

inline void print_factor(std::string& out, LieMonomial m) {
    if (m.is_leaf()) {
        out += 'x';
        out += std::to_string(m.index());
        return;
    }
    out += '(';
    print_run(out, m);
    out += ')';
}

} // namespace detail

inline LiePoly parse(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string print(LieMonomial m) {
    std::string out;
    detail::print_run(out, m);
    return out;
}

inline std::string print(const LiePoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += " + ";
        detail::print_run(out, p.terms()[i]);
    }
    return out;
}

} // namespace lieid::expr

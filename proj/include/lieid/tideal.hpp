#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "config.hpp"
#include "expr.hpp"
#include "gf2.hpp"
#include "gl2.hpp"
#include "lie.hpp"

namespace lieid::tideal {

using gf2::GF2Subspace;
using gf2::GF2Vector;
using gf2::WordIndex;

// ---------------------------------------------------------------------------
// Components

/// The multidegree-δ part of the free Lie algebra.
struct Component {
    MultiDeg mdeg;
    std::shared_ptr<const WordIndex> index;
    GF2Subspace space;
    /// Every left-normalized monomial whose leaves are an arrangement of δ.
    std::vector<LieMonomial> monomials;
    /// The monomials that entered the echelon form; their expansions are a basis.
    std::vector<LieMonomial> basis;
    std::vector<GF2Vector> basis_vectors;

    GF2Vector vector_of(const LiePoly& p) const { return index->to_vector(assoc_expand(p)); }
};

namespace detail {

template <class Value>
class Cache {
public:
    template <class Make>
    std::shared_ptr<const Value> get(const std::string& key, Make make) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = map_.find(key); it != map_.end()) return it->second;
        }
        auto value = std::make_shared<const Value>(make());
        std::lock_guard lock(mutex_);
        return map_.try_emplace(key, std::move(value)).first->second;
    }

    void clear() {
        std::lock_guard lock(mutex_);
        map_.clear();
    }

private:
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const Value>> map_;
};

inline Cache<Component>& component_cache() {
    static Cache<Component> c;
    return c;
}

/// Nonzero μ with μ <= δ componentwise (μ = δ included).
inline std::vector<MultiDeg> sub_multidegrees(const MultiDeg& d) {
    std::vector<MultiDeg> out{MultiDeg{}};
    for (const auto& [i, m] : d.entries()) {
        std::vector<MultiDeg> next;
        for (const auto& base : out)
            for (std::uint32_t c = 0; c <= m; ++c) {
                MultiDeg x = base;
                x.add(i, c);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    out.erase(out.begin());  // the empty multidegree
    return out;
}

} // namespace detail

inline std::shared_ptr<const Component> component(const MultiDeg& d) {
    if (d.empty()) throw std::invalid_argument("component of the empty multidegree");
    check_degree(d.total(), "component");
    return detail::component_cache().get(d.to_string(), [&] {
        Component c;
        c.mdeg = d;
        c.index = gf2::word_index(d);
        c.space = GF2Subspace(c.index);
        auto letters = d.letters();
        do {
            c.monomials.push_back(left_norm_letters(letters));
        } while (std::next_permutation(letters.begin(), letters.end()));
        for (auto m : c.monomials) {
            GF2Vector v = c.index->to_vector(assoc_expand(m));
            if (c.space.insert(v)) {
                c.basis.push_back(m);
                c.basis_vectors.push_back(std::move(v));
            }
        }
        return c;
    });
}

/// Expresses a vector of F_δ as a sum of component basis monomials.
inline LiePoly to_lie(const MultiDeg& d, const GF2Vector& v) {
    auto comp = component(d);
    auto x = gf2::solve(comp->basis_vectors, v);
    if (!x) throw std::invalid_argument("vector is not in the Lie component " + d.to_string());
    std::vector<LieMonomial> terms;
    for (auto i : x->ones()) terms.push_back(comp->basis[i]);
    return LiePoly::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Generator sets

struct Generator {
    std::string name;
    LiePoly poly;
    MultiDeg mdeg;
};

/// Multihomogeneous generators of a T-ideal, plus the closure policy: with
/// polarization on, every partial linearization of each generator is used.
class GeneratorSet {
public:
    explicit GeneratorSet(bool polarize = true) : polarize_(polarize) {}

    /// Non-homogeneous input is split into its multihomogeneous components,
    /// which generate the same T-ideal over an infinite field.
    GeneratorSet& add(const std::string& name, const LiePoly& p) {
        auto parts = p.components();
        std::size_t k = 0;
        for (auto& [d, part] : parts) {
            if (is_zero(part)) continue;
            std::string n = parts.size() == 1 ? name : name + "[" + std::to_string(k) + "]";
            gens_.push_back({std::move(n), part, d});
            ++k;
        }
        return *this;
    }

    GeneratorSet& add(const GeneratorSet& o) {
        gens_.insert(gens_.end(), o.gens_.begin(), o.gens_.end());
        return *this;
    }

    const std::vector<Generator>& generators() const noexcept { return gens_; }
    bool polarize() const noexcept { return polarize_; }
    void set_polarize(bool on) noexcept { polarize_ = on; }
    std::size_t size() const noexcept { return gens_.size(); }

    /// Cache key: policy plus the printed generators.
    std::string fingerprint() const {
        std::string s = polarize_ ? "P|" : "N|";
        for (const auto& g : gens_) s += expr::print(g.poly) + "|";
        return s;
    }

    /// One expression per line; '#' starts a comment; "polarize: on|off".
    static GeneratorSet parse(std::string_view text) {
        GeneratorSet s;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            auto e = line.find_last_not_of(" \t\r");
            line = line.substr(b, e - b + 1);
            if (line.rfind("polarize:", 0) == 0) {
                auto v = line.substr(9);
                v.erase(0, v.find_first_not_of(" \t"));
                if (v == "on")
                    s.polarize_ = true;
                else if (v == "off")
                    s.polarize_ = false;
                else
                    throw std::invalid_argument("line " + std::to_string(lineno) + ": polarize expects on|off");
                continue;
            }
            try {
                s.add("line" + std::to_string(lineno), expr::parse(line));
            } catch (const expr::ParseError& err) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": " + err.what());
            }
        }
        return s;
    }

    static GeneratorSet load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot read generator file " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

private:
    bool polarize_;
    std::vector<Generator> gens_;
};

/// {(x1 x2)(x3 x4) x5}, whose T-ideal defines the quotient 𝔉.
inline GeneratorSet f_relations() {
    auto x = [](std::uint32_t i) { return LieMonomial::leaf(i); };
    GeneratorSet s;
    s.add("a", LiePoly(left_norm({LieMonomial::pair(x(1), x(2)), LieMonomial::pair(x(3), x(4)), x(5)})));
    return s;
}

struct FnFamily {
    unsigned n;
    LiePoly poly;
};

/// f_n = (12)(34...n) + (13)(24...n) + (14)(23...n).
inline FnFamily make_fn(unsigned n) {
    if (n < 4) throw std::invalid_argument("f_n needs n >= 4");
    check_degree(n, "make_fn");
    auto term = [n](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
        std::vector<std::uint32_t> tail{c, d};
        for (std::uint32_t k = 5; k <= n; ++k) tail.push_back(k);
        return LieMonomial::pair(left_norm_letters({a, b}), left_norm_letters(tail));
    };
    return {n, LiePoly::from_terms({term(1, 2, 3, 4), term(1, 3, 2, 4), term(1, 4, 2, 3)})};
}

/// (x1 x2)(x1 x2 ... xk), k >= 3.
inline LiePoly generator_b(unsigned k) {
    if (k < 3) throw std::invalid_argument("generator (b) needs k > 2");
    std::vector<std::uint32_t> tail;
    for (std::uint32_t i = 1; i <= k; ++i) tail.push_back(i);
    return LiePoly(LieMonomial::pair(left_norm_letters({1, 2}), left_norm_letters(tail)));
}

/// (x1 ... xn)(x1 x2), n >= 2.
inline LiePoly power_word_identity(unsigned n) {
    if (n < 2) throw std::invalid_argument("(1...n)(12) needs n >= 2");
    std::vector<std::uint32_t> head;
    for (std::uint32_t i = 1; i <= n; ++i) head.push_back(i);
    return LiePoly(LieMonomial::pair(left_norm_letters(head), left_norm_letters({1, 2})));
}

/// The four families (a), (b), (c), (d), truncated to generators of total
/// degree <= maxgen: (b) for k = 3..maxgen-2, (d) for m = 5..maxgen.
inline GeneratorSet theorem_generators(unsigned maxgen) {
    GeneratorSet s = f_relations();
    for (unsigned k = 3; k + 2 <= maxgen; ++k) s.add("b" + std::to_string(k), generator_b(k));
    s.add("c", make_fn(4).poly);
    for (unsigned m = 5; m <= maxgen; ++m) s.add("d" + std::to_string(m), make_fn(m).poly);
    return s;
}

// ---------------------------------------------------------------------------
// Consequence spans

namespace detail {

/// A generator with every variable replaced by fresh variables 1..r, where
/// fresh variable j occurs with multiplicity mult[j-1].
struct PolarizedForm {
    LiePoly poly;
    std::vector<std::uint32_t> mult;
    unsigned degree = 0;
};

inline void partitions(std::uint32_t n, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                       std::vector<std::vector<std::uint32_t>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (std::uint32_t p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    partitions(n, n, cur, out);
    return out;
}

inline std::vector<PolarizedForm> polarized_forms(const Generator& g, bool polarize) {
    const auto vars = g.mdeg.support();
    std::vector<std::vector<std::vector<std::uint32_t>>> choices;
    for (auto v : vars) {
        if (polarize)
            choices.push_back(partitions(g.mdeg[v]));
        else
            choices.push_back({{g.mdeg[v]}});
    }
    std::vector<PolarizedForm> out;
    std::vector<std::size_t> pick(vars.size(), 0);
    while (true) {
        Substitution s;
        std::vector<std::uint32_t> mult;
        MultiDeg target;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            LiePoly sum;
            for (auto e : choices[k][pick[k]]) {
                const auto fresh = static_cast<std::uint32_t>(mult.size() + 1);
                mult.push_back(e);
                target.add(fresh, e);
                sum += LiePoly::var(fresh);
            }
            s.emplace(vars[k], sum);
        }
        std::vector<LieMonomial> keep;
        const LiePoly expanded = substitute(g.poly, s);
        for (auto m : expanded.terms())
            if (multidegree(m) == target) keep.push_back(m);
        LiePoly form = LiePoly::from_terms(std::move(keep));
        if (!is_zero(form)) out.push_back({std::move(form), std::move(mult), g.mdeg.total()});

        std::size_t k = 0;
        while (k < vars.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
        if (k == vars.size()) break;
    }
    return out;
}

struct ConsequenceState {
    std::vector<PolarizedForm> forms;
    unsigned min_degree = ~0U;
    std::mutex mutex;
    std::map<MultiDeg, std::shared_ptr<const GF2Subspace>> spans;
};

inline std::shared_ptr<ConsequenceState> consequence_state(const GeneratorSet& s) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<ConsequenceState>> states;
    const auto key = s.fingerprint();
    std::lock_guard lock(mutex);
    auto& st = states[key];
    if (!st) {
        st = std::make_shared<ConsequenceState>();
        for (const auto& g : s.generators())
            for (auto& f : polarized_forms(g, s.polarize())) {
                st->min_degree = std::min(st->min_degree, f.degree);
                st->forms.push_back(std::move(f));
            }
    }
    return st;
}

inline AssocPoly expand_at(LieMonomial m, const std::vector<const AssocPoly*>& values) {
    if (m.is_leaf()) return *values[m.index() - 1];
    return commutator(expand_at(m.left(), values), expand_at(m.right(), values));
}

// All ways to give fresh variable j a nonzero multidegree mu_j with
// sum_j mult[j] * mu_j == d.
inline void assign_multidegrees(const std::vector<std::uint32_t>& mult, std::size_t j, const MultiDeg& remaining,
                                std::vector<MultiDeg>& cur, const std::function<void()>& emit) {
    if (j == mult.size()) {
        if (remaining.empty()) emit();
        return;
    }
    unsigned still_needed = 0;
    for (std::size_t l = j + 1; l < mult.size(); ++l) still_needed += mult[l];
    const auto e = mult[j];
    if (j + 1 == mult.size()) {
        MultiDeg mu;
        for (const auto& [i, m] : remaining.entries()) {
            if (m % e) return;
            mu.add(i, m / e);
        }
        if (mu.empty()) return;
        cur.push_back(mu);
        emit();
        cur.pop_back();
        return;
    }
    MultiDeg cap;
    for (const auto& [i, m] : remaining.entries()) cap.add(i, m / e);
    if (cap.empty()) return;
    for (const auto& mu : sub_multidegrees(cap)) {
        if (remaining.total() - e * mu.total() < still_needed) continue;
        cur.push_back(mu);
        assign_multidegrees(mult, j + 1, remaining - e * mu, cur, emit);
        cur.pop_back();
    }
}

} // namespace detail

/// The δ-component of the T-ideal generated by S, in F_δ word coordinates.
///
/// Built as I_δ = span(instances at δ) + sum_x [I_{δ-x}, x]: an instance is a
/// polarized generator with each fresh variable replaced by a basis element of
/// the Lie component of its assigned multidegree. Generators of total degree
/// above total(δ) have no instance at δ, so the truncation is exact.
inline GF2Subspace consequences(const GeneratorSet& s, const MultiDeg& d) {
    if (d.empty()) throw std::invalid_argument("consequences of the empty multidegree");
    check_degree(d.total(), "consequences");
    auto state = detail::consequence_state(s);
    {
        std::lock_guard lock(state->mutex);
        if (auto it = state->spans.find(d); it != state->spans.end()) return *it->second;
    }

    auto index = gf2::word_index(d);
    GF2Subspace span(index);
    if (d.total() >= state->min_degree) {
        for (const auto& [x, m] : d.entries()) {
            MultiDeg lower = d;
            lower = lower - MultiDeg{{x, 1}};
            if (lower.empty() || lower.total() < state->min_degree) continue;
            const GF2Subspace below = consequences(s, lower);
            const AssocPoly letter(Word::letter(x));
            for (const auto& v : below.basis())
                span.insert(index->to_vector(commutator(below.index()->to_poly(v), letter)));
        }
        for (const auto& form : state->forms) {
            if (form.degree > d.total()) continue;
            std::vector<MultiDeg> mus;
            detail::assign_multidegrees(form.mult, 0, d, mus, [&] {
                std::vector<std::shared_ptr<const Component>> comps;
                for (const auto& mu : mus) {
                    comps.push_back(component(mu));
                    if (comps.back()->basis.empty()) return;
                }
                std::vector<std::size_t> pick(mus.size(), 0);
                std::vector<const AssocPoly*> values(mus.size());
                while (true) {
                    for (std::size_t j = 0; j < mus.size(); ++j) values[j] = &assoc_expand(comps[j]->basis[pick[j]]);
                    std::vector<Word> all;
                    for (auto t : form.poly.terms()) {
                        auto e = detail::expand_at(t, values);
                        all.insert(all.end(), e.words().begin(), e.words().end());
                    }
                    span.insert(index->to_vector(AssocPoly::from_words(std::move(all))));
                    std::size_t j = 0;
                    while (j < mus.size() && ++pick[j] == comps[j]->basis.size()) pick[j++] = 0;
                    if (j == mus.size()) break;
                }
            });
        }
    }

    auto shared = std::make_shared<const GF2Subspace>(std::move(span));
    std::lock_guard lock(state->mutex);
    return *state->spans.try_emplace(d, shared).first->second;
}

// ---------------------------------------------------------------------------
// Identity spaces

namespace detail {

inline Cache<GF2Subspace>& identity_cache() {
    static Cache<GF2Subspace> c;
    return c;
}

} // namespace detail

/// Kernel of evaluation at generic matrices, restricted to F_δ.
inline GF2Subspace identities(const MultiDeg& d, gl2::Algebra algebra = gl2::Algebra::gl2) {
    if (d.empty()) throw std::invalid_argument("identities of the empty multidegree");
    check_degree(d.total(), "identities");
    return *detail::identity_cache().get(d.to_string() + gl2::to_string(algebra), [&] {
        auto comp = component(d);
        GF2Subspace out(comp->index);
        if (comp->basis.empty()) return out;

        gl2::detail::WordEvaluator ev(d.support(), algebra);
        std::unordered_map<gl2::detail::WordEvaluator::Key, std::uint32_t, gl2::detail::WordEvaluator::KeyHash> column;
        std::vector<std::vector<std::uint32_t>> word_cols(comp->index->size());
        std::vector<bool> done(comp->index->size(), false);
        auto cols_of = [&](std::size_t pos) -> const std::vector<std::uint32_t>& {
            if (!done[pos]) {
                for (auto k : ev.keys(comp->index->words()[pos])) {
                    auto [it, inserted] = column.try_emplace(k, static_cast<std::uint32_t>(column.size()));
                    word_cols[pos].push_back(it->second);
                }
                done[pos] = true;
            }
            return word_cols[pos];
        };

        std::vector<std::vector<std::uint32_t>> sparse;
        for (const auto& v : comp->basis_vectors) {
            std::vector<std::uint32_t> cols;
            for (auto pos : v.ones()) {
                const auto& c = cols_of(pos);
                cols.insert(cols.end(), c.begin(), c.end());
            }
            std::sort(cols.begin(), cols.end());
            std::vector<std::uint32_t> odd;
            for (std::size_t i = 0; i < cols.size();) {
                std::size_t j = i;
                while (j < cols.size() && cols[j] == cols[i]) ++j;
                if ((j - i) % 2) odd.push_back(cols[i]);
                i = j;
            }
            sparse.push_back(std::move(odd));
        }
        const std::size_t width = column.size();
        std::vector<GF2Vector> rows;
        rows.reserve(sparse.size());
        for (const auto& cols : sparse) {
            GF2Vector r(width);
            for (auto c : cols) r.set(c);
            rows.push_back(std::move(r));
        }
        const GF2Subspace deps = gf2::dependencies(rows);
        for (const auto& dep : deps.basis()) {
            GF2Vector v(comp->index->size());
            for (auto i : dep.ones()) v ^= comp->basis_vectors[i];
            out.insert(std::move(v));
        }
        return out;
    });
}

// ---------------------------------------------------------------------------
// Quotient 𝔉 and lemma-level checks

/// p == 0 in 𝔉, i.e. p lies in the T-ideal of (x1 x2)(x3 x4) x5.
inline bool f_quotient_zero(const LiePoly& p) {
    if (p.empty() || is_zero(p)) return true;
    auto d = p.homogeneous_multidegree();
    if (!d) throw std::invalid_argument("f_quotient_zero needs a multihomogeneous input");
    check_degree(d->total(), "f_quotient_zero");
    const auto rel = consequences(f_relations(), *d);
    return rel.contains(gf2::word_index(*d)->to_vector(assoc_expand(p)));
}

struct GenerationReport {
    MultiDeg mdeg;
    std::size_t consequences_dim = 0;
    std::size_t identities_dim = 0;
    bool sound = false;  // consequences ⊆ identities
    bool equal = false;
};

inline GenerationReport check_generation(const MultiDeg& d, unsigned maxgen) {
    check_degree(d.total(), "check_generation");
    if (maxgen < d.total()) throw std::invalid_argument("maxgen must be at least total(δ)");
    const auto c = consequences(theorem_generators(maxgen), d);
    const auto i = identities(d);
    GenerationReport r;
    r.mdeg = d;
    r.consequences_dim = c.dim();
    r.identities_dim = i.dim();
    r.sound = gf2::subset(c, i);
    r.equal = r.sound && c.dim() == i.dim();
    return r;
}

/// Multidegrees of the given total up to renaming: partitions, largest first.
inline std::vector<MultiDeg> multidegrees_up_to_renaming(unsigned total) {
    std::vector<MultiDeg> out;
    for (const auto& p : detail::partitions(total)) out.push_back(MultiDeg::positional(p));
    return out;
}

/// All positional multidegrees of the given total (compositions).
inline std::vector<MultiDeg> all_multidegrees(unsigned total) {
    std::vector<MultiDeg> out;
    if (total == 0) return out;
    for (std::uint32_t mask = 0; mask < (1U << (total - 1)); ++mask) {
        std::vector<std::uint32_t> parts{1};
        for (unsigned b = 0; b + 1 < total; ++b) {
            if (mask >> b & 1U)
                parts.push_back(1);
            else
                ++parts.back();
        }
        out.push_back(MultiDeg::positional(parts));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline LiePoly permute(const LiePoly& p, const std::vector<std::uint32_t>& images) {
    std::map<std::uint32_t, std::uint32_t> m;
    for (std::size_t i = 0; i < images.size(); ++i) m[static_cast<std::uint32_t>(i + 1)] = images[i];
    return rename(p, m);
}

struct MultilinearSpanReport {
    unsigned n = 0;
    std::size_t span_dim = 0;        // span of f_n under S_n
    std::size_t identities_dim = 0;  // identities(1^n) in the free Lie algebra
    std::size_t relations_dim = 0;   // consequences of (12)(34)5 at 1^n
    std::size_t quotient_dim = 0;    // dim identities(1^n) in 𝔉
    bool equal_in_quotient = false;  // span + relations == identities
    bool equal_exact = false;        // span == identities
};

/// Compares span{f_n∘σ} with identities(1^n), both exactly and modulo the
/// relations of 𝔉 (where the multilinear statement lives).
inline MultilinearSpanReport check_multilinear_span(unsigned n) {
    if (n < 4) throw std::invalid_argument("check_multilinear_span needs n >= 4");
    check_degree(n, "check_multilinear_span");
    const auto d = MultiDeg::ones(n);
    auto index = gf2::word_index(d);
    const LiePoly fn = make_fn(n).poly;
    GF2Subspace span(index);
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1U);
    do {
        span.insert(index->to_vector(assoc_expand(permute(fn, perm))));
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto ids = identities(d);
    const auto rel = consequences(f_relations(), d);
    MultilinearSpanReport r;
    r.n = n;
    r.span_dim = span.dim();
    r.identities_dim = ids.dim();
    r.relations_dim = rel.dim();
    r.quotient_dim = ids.dim() - gf2::intersect(rel, ids).dim();
    r.equal_in_quotient = gf2::equal(gf2::join(span, rel), gf2::join(ids, rel));
    r.equal_exact = gf2::equal(span, ids);
    return r;
}

// ---------------------------------------------------------------------------
// Two-bracket form coordinates: f = sum_{4<=i<=n} a_{i2} (i 3 4 .. î .. n)(2 1)
//                          + sum_{3<=i!=j<=n} a_{ij} (i 2 3 .. î .. ĵ .. n)(j 1)

struct EqfLabel {
    std::uint32_t i;
    std::uint32_t j;  // j == 2 marks the a_{i2} family
    friend bool operator==(const EqfLabel&, const EqfLabel&) = default;
};

/// Coordinate order: a_{r2} for r = 4..n, then a_{ij}, 3 <= i != j <= n, lexicographic.
inline std::vector<EqfLabel> eqf_labels(unsigned n) {
    if (n < 4) throw std::invalid_argument("two-bracket coordinates need n >= 4");
    std::vector<EqfLabel> out;
    for (std::uint32_t r = 4; r <= n; ++r) out.push_back({r, 2});
    for (std::uint32_t i = 3; i <= n; ++i)
        for (std::uint32_t j = 3; j <= n; ++j)
            if (i != j) out.push_back({i, j});
    return out;
}

inline LieMonomial eqf_term(unsigned n, EqfLabel l) {
    std::vector<std::uint32_t> head{l.i};
    if (l.j == 2) {
        for (std::uint32_t k = 3; k <= n; ++k)
            if (k != l.i) head.push_back(k);
        return LieMonomial::pair(left_norm_letters(head), left_norm_letters({2, 1}));
    }
    for (std::uint32_t k = 2; k <= n; ++k)
        if (k != l.i && k != l.j) head.push_back(k);
    return LieMonomial::pair(left_norm_letters(head), left_norm_letters({l.j, 1}));
}

inline LiePoly eqf_poly(unsigned n, const GF2Vector& alpha) {
    const auto labels = eqf_labels(n);
    if (alpha.size() != labels.size()) throw std::invalid_argument("coefficient vector has the wrong length");
    std::vector<LieMonomial> terms;
    for (auto k : alpha.ones()) terms.push_back(eqf_term(n, labels[k]));
    return LiePoly::from_terms(std::move(terms));
}

inline std::size_t eqf_position(unsigned n, EqfLabel l) {
    const auto labels = eqf_labels(n);
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw std::out_of_range("no such two-bracket coefficient");
    return static_cast<std::size_t>(it - labels.begin());
}

/// Rows of the linear conditions a_sr = a_rs (3 <= s < r <= n) and
/// a_r2 = sum_{3<=j!=r<=n} a_rj (4 <= r <= n).
inline std::vector<GF2Vector> lfact2_system(unsigned n) {
    const auto w = eqf_labels(n).size();
    std::vector<GF2Vector> rows;
    for (std::uint32_t s = 3; s <= n; ++s)
        for (std::uint32_t r = s + 1; r <= n; ++r) {
            GF2Vector row(w);
            row.flip(eqf_position(n, {s, r}));
            row.flip(eqf_position(n, {r, s}));
            rows.push_back(std::move(row));
        }
    for (std::uint32_t r = 4; r <= n; ++r) {
        GF2Vector row(w);
        row.flip(eqf_position(n, {r, 2}));
        for (std::uint32_t j = 3; j <= n; ++j)
            if (j != r) row.flip(eqf_position(n, {r, j}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline GF2Subspace lfact2_solve(unsigned n) { return gf2::kernel(lfact2_system(n), eqf_labels(n).size()); }

/// {a : f_a is an identity}, computed from identities(1^n) directly.
inline GF2Subspace eqf_identity_coefficients(unsigned n) {
    const auto d = MultiDeg::ones(n);
    check_degree(n, "eqf_identity_coefficients");
    auto index = gf2::word_index(d);
    const auto ids = identities(d);
    std::vector<GF2Vector> residues;
    for (auto l : eqf_labels(n)) residues.push_back(ids.reduce(index->to_vector(assoc_expand(eqf_term(n, l)))));
    return gf2::dependencies(residues);
}

/// Coefficients a with p + f_a == 0 in 𝔉. Throws if p is not an identity of
/// multidegree 1^n, or if no representation exists.
inline GF2Vector eqf_represent(const LiePoly& p, unsigned n) {
    const auto labels = eqf_labels(n);
    const auto d = MultiDeg::ones(n);
    check_degree(n, "eqf_represent");
    auto index = gf2::word_index(d);
    if (!p.empty() && !is_zero(p)) {
        if (p.homogeneous_multidegree() != d) throw std::invalid_argument("eqf_represent needs multidegree 1^n");
        if (!gl2::is_identity_gl2(p)) throw std::invalid_argument("eqf_represent needs an identity of gl2");
    }
    const auto rel = consequences(f_relations(), d);
    std::vector<GF2Vector> residues;
    for (auto l : labels) residues.push_back(rel.reduce(index->to_vector(assoc_expand(eqf_term(n, l)))));
    const GF2Vector target = rel.reduce(index->to_vector(assoc_expand(p)));
    auto x = gf2::solve(residues, target);
    if (!x) throw std::runtime_error("identity has no two-bracket representation modulo the relations of F");
    return *x;
}

struct NonMembershipReport {
    unsigned n = 0;
    MultiDeg mdeg;
    bool contained_without = true;  // w_n in span without (1..n)(12): expected false
    bool contained_with = false;    // expected true
    std::size_t dim_without = 0;
    std::size_t dim_with = 0;
    bool passed() const { return !contained_without && contained_with; }
};

/// w_n = (y1..yn)(y1y2) against the T-ideal of (12)(34)5 and (1..k)(12), k != n.
inline NonMembershipReport lfid2_nonmembership(unsigned n) {
    if (n < 3) throw std::invalid_argument("lfid2_nonmembership needs n >= 3");
    MultiDeg d{{1, 2}, {2, 2}};
    for (std::uint32_t k = 3; k <= n; ++k) d.add(k);
    check_degree(d.total(), "lfid2_nonmembership");
    GeneratorSet without = f_relations();
    // (1..k)(12) has degree k + 2; larger k have no instance at δ.
    for (unsigned k = 3; k + 2 <= d.total(); ++k)
        if (k != n) without.add("w" + std::to_string(k), power_word_identity(k));
    GeneratorSet with = without;
    with.add("w" + std::to_string(n), power_word_identity(n));

    const GF2Vector w = gf2::word_index(d)->to_vector(assoc_expand(power_word_identity(n)));
    const auto c0 = consequences(without, d);
    const auto c1 = consequences(with, d);
    NonMembershipReport r;
    r.n = n;
    r.mdeg = d;
    r.contained_without = c0.contains(w);
    r.contained_with = c1.contains(w);
    r.dim_without = c0.dim();
    r.dim_with = c1.dim();
    return r;
}

// ---------------------------------------------------------------------------
// Spanning sets of 𝔉² and (𝔉²)²

struct SpanningReport {
    MultiDeg mdeg;
    int part = 0;
    std::size_t candidates = 0;  // monomials passing the index conditions
    std::size_t target_dim = 0;  // dimension of the space to be spanned
    std::size_t spanned_dim = 0;
    bool passed = false;
};

namespace detail {

inline bool valley(const std::vector<std::uint32_t>& s) { return s[0] > s[1] && (s.size() < 3 || s[1] <= s[2]); }

inline bool ordered_tail(const std::vector<std::uint32_t>& s) {
    if (s[0] <= s[1]) return false;
    for (std::size_t t = 1; t + 1 < s.size(); ++t)
        if (s[t] > s[t + 1]) return false;
    return true;
}

/// Lift of (𝔉²)² at δ: brackets of two degree >= 2 elements plus the relations.
inline GF2Subspace square_of_square(const MultiDeg& d) {
    auto index = gf2::word_index(d);
    GF2Subspace out = consequences(f_relations(), d);
    for (const auto& mu : sub_multidegrees(d)) {
        if (mu.total() < 2 || d.total() - mu.total() < 2) continue;
        const auto cu = component(mu), cv = component(d - mu);
        for (auto u : cu->basis)
            for (auto v : cv->basis) out.insert(index->to_vector(commutator(assoc_expand(u), assoc_expand(v))));
    }
    return out;
}

} // namespace detail

/// Spanning sets of 𝔉² (part 1), of 𝔉² modulo (𝔉²)² (part 2) and of (𝔉²)²
/// (part 3), all modulo the relations of 𝔉.
inline SpanningReport lf_spanning_check(const MultiDeg& d, int part) {
    if (part < 1 || part > 3) throw std::invalid_argument("lf_spanning_check part must be 1, 2 or 3");
    check_degree(d.total(), "lf_spanning_check");
    SpanningReport r;
    r.mdeg = d;
    r.part = part;
    if (d.total() < 2) throw std::invalid_argument("lf_spanning_check needs total degree >= 2");
    auto comp = component(d);
    auto index = comp->index;
    const auto rel = consequences(f_relations(), d);

    GF2Subspace spanned = rel;
    GF2Subspace target(index);
    auto letters = d.letters();
    if (part == 1 || part == 2) {
        target = comp->space;
        if (part == 2) spanned = detail::square_of_square(d);
        do {
            if (part == 1 ? detail::valley(letters) : detail::ordered_tail(letters)) {
                ++r.candidates;
                spanned.insert(index->to_vector(assoc_expand(left_norm_letters(letters))));
            }
        } while (std::next_permutation(letters.begin(), letters.end()));
    } else {
        target = detail::square_of_square(d);
        const std::size_t len = letters.size();
        if (len >= 4) {
            do {
                const std::size_t k = len - 2;
                std::vector<std::uint32_t> head(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(k));
                const auto p = letters[k], q = letters[k + 1];
                bool ok = detail::ordered_tail(head) && p > q && head[1] >= q;
                if (k >= 3) ok = ok && q <= head[2];
                if (head[1] == q) ok = ok && head[0] >= p;
                if (ok) {
                    ++r.candidates;
                    auto m = LieMonomial::pair(left_norm_letters(head), left_norm_letters({p, q}));
                    spanned.insert(index->to_vector(assoc_expand(m)));
                }
            } while (std::next_permutation(letters.begin(), letters.end()));
        }
    }
    r.target_dim = target.dim();
    r.spanned_dim = spanned.dim();
    r.passed = gf2::equal(spanned, target);
    return r;
}

struct CubeReport {
    MultiDeg mdeg;
    std::size_t products = 0;
    bool passed = false;  // every [[u,v],w] with u,v,w in 𝔉² vanishes in 𝔉
};

/// (𝔉²)³ = 0 at δ.
inline CubeReport lf_cube_vanishes(const MultiDeg& d) {
    check_degree(d.total(), "lf_cube_vanishes");
    CubeReport r;
    r.mdeg = d;
    auto index = gf2::word_index(d);
    const auto rel = consequences(f_relations(), d);
    r.passed = true;
    for (const auto& mu : detail::sub_multidegrees(d)) {
        if (mu.total() < 4 || d.total() - mu.total() < 2) continue;
        const auto cw = component(d - mu);
        for (const auto& nu : detail::sub_multidegrees(mu)) {
            if (nu.total() < 2 || mu.total() - nu.total() < 2) continue;
            const auto cu = component(nu), cv = component(mu - nu);
            for (auto u : cu->basis)
                for (auto v : cv->basis) {
                    const auto uv = commutator(assoc_expand(u), assoc_expand(v));
                    for (auto w : cw->basis) {
                        ++r.products;
                        if (!rel.contains(index->to_vector(commutator(uv, assoc_expand(w))))) r.passed = false;
                    }
                }
        }
    }
    return r;
}

} // namespace lieid::tideal

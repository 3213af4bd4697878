#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "expr.hpp"
#include "gf2.hpp"
#include "gl2.hpp"
#include "lie.hpp"
#include "tideal.hpp"

// Named reproduction checks for the structural lemmas about gl2 identities
// in characteristic two, at desk-scale multidegrees.
namespace lieid::lemmas {

struct CheckResult {
    std::string lemma;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    unsigned max_theorem_degree = 6;
    /// Adds the slower cases: LFid2 at n = 5 and the generation check at 1^7.
    bool extended = false;
    std::uint64_t seed = 20161016;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::vector<CheckResult> run_l1e2(const Options&) {
    std::vector<CheckResult> out;
    const LiePoly a = tideal::f_relations().generators().front().poly;
    out.push_back({"L1e2", "(12)(34)5 is an identity", gl2::is_identity_gl2(a), expr::print(a)});
    for (unsigned n = 2; n <= 6; ++n) {
        const auto p = tideal::power_word_identity(n);
        out.push_back({"L1e2", "(1..n)(12) is an identity, n=" + std::to_string(n), gl2::is_identity_gl2(p),
                       expr::print(p)});
    }
    return out;
}

/// (x y g1..gn)(u v) + (x y gσ1..gσr)(u v gσ(r+1)..gσn) for random letters.
inline LiePoly random_lfid_instance(std::mt19937_64& rng, std::string& label) {
    std::uniform_int_distribution<unsigned> len(1, 3);
    const unsigned n = len(rng);
    std::uniform_int_distribution<unsigned> cut(0, n);
    const unsigned r = cut(rng);
    std::uniform_int_distribution<std::uint32_t> letter(1, 5);
    auto distinct_pair = [&] {
        std::uint32_t a = letter(rng), b = letter(rng);
        while (b == a) b = letter(rng);
        return std::pair{a, b};
    };
    const auto [xx, yy] = distinct_pair();
    const auto [u, v] = distinct_pair();
    std::vector<std::uint32_t> g(n);
    for (auto& gi : g) gi = letter(rng);
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);

    std::vector<std::uint32_t> lhs_head{xx, yy};
    lhs_head.insert(lhs_head.end(), g.begin(), g.end());
    std::vector<std::uint32_t> rhs_head{xx, yy}, rhs_tail{u, v};
    for (unsigned k = 0; k < n; ++k) (k < r ? rhs_head : rhs_tail).push_back(g[sigma[k]]);
    const LiePoly lhs = LieMonomial::pair(left_norm_letters(lhs_head), left_norm_letters({u, v}));
    const LiePoly rhs = LieMonomial::pair(left_norm_letters(rhs_head), left_norm_letters(rhs_tail));
    label = expr::print(lhs) + " = " + expr::print(rhs);
    return lhs + rhs;
}

inline std::vector<CheckResult> run_lfid(const Options& opt) {
    std::vector<CheckResult> out;
    const LiePoly p = LieMonomial::pair(left_norm_letters({1, 2, 5}), left_norm_letters({3, 4})) +
                      LiePoly(LieMonomial::pair(left_norm_letters({1, 2}), left_norm_letters({3, 4, 5})));
    out.push_back({"LFid", "(125)(34) = (12)(345) in F", tideal::f_quotient_zero(p), expr::print(p)});
    std::mt19937_64 rng(opt.seed);
    for (int k = 0; k < 5; ++k) {
        std::string label;
        const LiePoly q = random_lfid_instance(rng, label);
        out.push_back({"LFid", "part (2) random instance " + std::to_string(k + 1), tideal::f_quotient_zero(q), label});
    }
    return out;
}

inline std::vector<CheckResult> run_lf(const Options&) {
    std::vector<CheckResult> out;
    for (int part = 1; part <= 3; ++part) {
        bool ok = true;
        std::size_t count = 0;
        std::string failures;
        for (unsigned t = 2; t <= 5; ++t)
            for (const auto& d : tideal::all_multidegrees(t)) {
                const auto r = tideal::lf_spanning_check(d, part);
                ++count;
                if (!r.passed) {
                    ok = false;
                    failures += " " + d.to_string();
                }
            }
        out.push_back({"LF", "part (" + std::to_string(part) + ") spanning set, total degree <= 5", ok,
                       std::to_string(count) + " multidegrees" + (ok ? "" : "; failed:" + failures)});
    }
    bool ok = true;
    std::size_t products = 0;
    for (const auto& d : tideal::all_multidegrees(6)) {
        const auto r = tideal::lf_cube_vanishes(d);
        products += r.products;
        ok = ok && r.passed;
    }
    out.push_back({"LF", "part (4) (F^2)^3 = 0 at total degree 6", ok, std::to_string(products) + " products"});
    return out;
}

inline std::vector<CheckResult> run_lfid2(const Options& opt) {
    std::vector<CheckResult> out;
    const unsigned top = opt.extended ? 5 : 4;
    for (unsigned n = 3; n <= top; ++n) {
        const auto r = tideal::lfid2_nonmembership(n);
        out.push_back({"LFid2", "(1..n)(12) outside the T-ideal of the other (1..k)(12), n=" + std::to_string(n),
                       r.passed(),
                       "without: " + yes_no(r.contained_without) + ", with: " + yes_no(r.contained_with) +
                           ", dims " + std::to_string(r.dim_without) + "/" + std::to_string(r.dim_with)});
    }
    for (unsigned n = 3; n <= 4; ++n) {
        const LiePoly w = tideal::power_word_identity(n);
        const std::uint32_t a = n + 1, b = n + 2, c = n + 3, e = n + 4;
        const LiePoly in1 = polarize(w, 1, {a, b}, MultiDeg{{a, 1}, {b, 1}});
        const LiePoly in2 = polarize(w, 2, {a, b}, MultiDeg{{a, 1}, {b, 1}});
        const LiePoly both = polarize(in1, 2, {c, e}, MultiDeg{{c, 1}, {e, 1}});
        const bool ok = tideal::f_quotient_zero(in1) && tideal::f_quotient_zero(in2) && tideal::f_quotient_zero(both);
        out.push_back({"LFid2", "linearizations of (1..n)(12) vanish in F, n=" + std::to_string(n), ok,
                       "partial in x1, partial in x2, complete"});
    }
    return out;
}

inline std::vector<CheckResult> run_l9mine(const Options&) {
    std::vector<CheckResult> out;
    for (unsigned n = 4; n <= 6; ++n) {
        const auto d = MultiDeg::ones(n);
        const auto ids = tideal::identities(d);
        const auto sol = tideal::lfact2_solve(n);
        bool ok = true;
        for (const auto& v : ids.basis()) {
            const LiePoly p = tideal::to_lie(d, v);
            const auto alpha = tideal::eqf_represent(p, n);
            ok = ok && sol.contains(alpha) && tideal::f_quotient_zero(p + tideal::eqf_poly(n, alpha));
        }
        out.push_back({"L9mine", "every identity of multidegree 1^n has a two-bracket form, n=" + std::to_string(n), ok,
                       std::to_string(ids.dim()) + " basis identities represented"});
    }
    return out;
}

inline std::vector<CheckResult> run_lfact1(const Options& opt) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(opt.seed + 1);
    for (unsigned n = 4; n <= 5; ++n) {
        const auto w = tideal::eqf_labels(n).size();
        const auto sol = tideal::lfact2_solve(n);
        bool ok = true;
        int identities = 0;
        for (int trial = 0; trial < 40; ++trial) {
            gf2::GF2Vector alpha(w);
            if (trial % 2 == 0) {
                for (const auto& b : sol.basis())
                    if (rng() & 1U) alpha ^= b;
            } else {
                for (std::size_t k = 0; k < w; ++k)
                    if (rng() & 1U) alpha.set(k);
            }
            const LiePoly f = tideal::eqf_poly(n, alpha);
            const bool generic = gl2::is_identity_gl2(f);
            identities += generic;
            ok = ok && generic == gl2::all_sub_ij_vanish(f, n);
        }
        out.push_back({"Lfact1", "f^(i,j) criterion agrees with generic matrices, n=" + std::to_string(n), ok,
                       "40 inputs, " + std::to_string(identities) + " identities"});
    }
    return out;
}

inline std::vector<CheckResult> run_lfact2(const Options&) {
    std::vector<CheckResult> out;
    for (unsigned n = 4; n <= 6; ++n) {
        const auto sol = tideal::lfact2_solve(n);
        const auto direct = tideal::eqf_identity_coefficients(n);
        const bool ok = gf2::equal(sol, direct) && sol.dim() == (n - 2) * (n - 3) / 2;
        out.push_back({"Lfact2", "linear conditions cut out the identities among two-bracket forms, n=" + std::to_string(n),
                       ok, "solution dimension " + std::to_string(sol.dim())});
    }
    return out;
}

inline std::vector<CheckResult> run_lmultlin(const Options&) {
    std::vector<CheckResult> out;
    for (unsigned n = 4; n <= 6; ++n) {
        const auto r = tideal::check_multilinear_span(n);
        out.push_back({"Lmultlin", "permuted f_n span the multilinear identities in F, n=" + std::to_string(n),
                       r.equal_in_quotient,
                       "span " + std::to_string(r.span_dim) + ", identities " + std::to_string(r.identities_dim) +
                           ", relations " + std::to_string(r.relations_dim) + ", in F " +
                           std::to_string(r.quotient_dim)});
    }
    return out;
}

inline std::vector<CheckResult> run_theorem(const Options& opt) {
    std::vector<CheckResult> out;
    for (unsigned t = 1; t <= opt.max_theorem_degree; ++t) {
        bool ok = true;
        std::string dims;
        for (const auto& d : tideal::multidegrees_up_to_renaming(t)) {
            const auto r = tideal::check_generation(d, t);
            ok = ok && r.equal;
            dims += " " + d.to_string() + ":" + std::to_string(r.identities_dim) + (r.equal ? "" : "!");
        }
        out.push_back({"theorem", "generators span every identity component, total degree " + std::to_string(t), ok,
                       dims.substr(1)});
    }
    if (opt.extended && opt.max_theorem_degree < 7) {
        const auto r = tideal::check_generation(MultiDeg::ones(7), 7);
        out.push_back({"theorem", "generators span the identity component at 1^7", r.equal,
                       "dimension " + std::to_string(r.identities_dim)});
    }
    return out;
}

using Runner = std::function<std::vector<CheckResult>(const Options&)>;

inline const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> r{
        {"L1e2", run_l1e2},   {"LFid", run_lfid},     {"LF", run_lf},           {"LFid2", run_lfid2},
        {"L9mine", run_l9mine}, {"Lfact1", run_lfact1}, {"Lfact2", run_lfact2}, {"Lmultlin", run_lmultlin},
        {"theorem", run_theorem},
    };
    return r;
}

} // namespace detail

inline std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& [name, run] : detail::registry()) out.push_back(name);
    return out;
}

/// Throws std::invalid_argument for an unknown lemma name.
inline std::vector<CheckResult> run(const std::string& name, const Options& opt = {}) {
    for (const auto& [n, r] : detail::registry())
        if (n == name) return r(opt);
    throw std::invalid_argument("unknown lemma '" + name + "'");
}

} // namespace lieid::lemmas

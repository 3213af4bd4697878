#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "lieid/expr.hpp"
#include "lieid/gf2.hpp"
#include "lieid/lie.hpp"
#include "lieid/tideal.hpp"
#include "oracles.hpp"

using namespace lieid;

namespace {

LieMonomial x(std::uint32_t i) { return LieMonomial::leaf(i); }
LiePoly P(const char* s) { return expr::parse(s); }
Word W(std::initializer_list<std::uint32_t> l) { return Word::from_letters(l); }

LiePoly jacobi(LieMonomial u, LieMonomial v, LieMonomial w) {
    return LiePoly::from_terms({LieMonomial::pair(LieMonomial::pair(u, v), w), LieMonomial::pair(LieMonomial::pair(v, w), u),
                                LieMonomial::pair(LieMonomial::pair(w, u), v)});
}

} // namespace

TEST(Word, PackingAndOrder) {
    const Word w = W({3, 1, 2});
    EXPECT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0], 3u);
    EXPECT_EQ(w.to_string(), "x3 x1 x2");
    EXPECT_LT(W({9}), W({1, 1}));  // length first
    EXPECT_LT(W({1, 2}), W({2, 1}));
    EXPECT_EQ(W({1}) * W({2, 3}), W({1, 2, 3}));
    EXPECT_THROW(Word::letter(0), std::out_of_range);
    EXPECT_THROW(Word::letter(256), std::out_of_range);
    std::vector<std::uint32_t> sixteen(16, 7);
    const Word full = Word::from_letters(sixteen);
    EXPECT_THROW((void)(full * W({1})), std::length_error);
}

TEST(AssocPoly, PairsCancel) {
    const auto p = AssocPoly::from_words({W({1, 2}), W({2, 1}), W({1, 2})});
    EXPECT_EQ(p.size(), 1u);
    EXPECT_TRUE(p.contains(W({2, 1})));
    EXPECT_TRUE((p + p).empty());
    EXPECT_EQ(commutator(AssocPoly(W({1})), AssocPoly(W({2}))), AssocPoly::from_words({W({1, 2}), W({2, 1})}));
    EXPECT_EQ(AssocPoly().to_string(), "0");
}

TEST(MultiDeg, Arithmetic) {
    const MultiDeg d{{1, 2}, {2, 1}};
    EXPECT_EQ(d.total(), 3u);
    EXPECT_EQ(d.to_string(), "{1:2,2:1}");
    EXPECT_EQ(d.letters(), (std::vector<std::uint32_t>{1, 1, 2}));
    EXPECT_TRUE(MultiDeg({{1, 1}}).divides(d));
    EXPECT_FALSE(d.is_multilinear());
    EXPECT_TRUE(MultiDeg::ones(4).is_multilinear());
    EXPECT_EQ((d - MultiDeg{{1, 2}}), (MultiDeg{{2, 1}}));
    EXPECT_THROW((void)(d - MultiDeg{{3, 1}}), std::invalid_argument);
    EXPECT_EQ(2 * d, (MultiDeg{{1, 4}, {2, 2}}));
    EXPECT_EQ(MultiDeg::positional({0, 2}), (MultiDeg{{2, 2}}));
    EXPECT_THROW(MultiDeg({{0, 1}}), std::invalid_argument);
}

TEST(Bracket, Examples) {
    EXPECT_EQ(bracket(LiePoly::var(1), LiePoly::var(2)), LiePoly(LieMonomial::pair(x(1), x(2))));
    EXPECT_TRUE(bracket(P("x1 x2"), LiePoly()).empty());
    const LiePoly sq = bracket(LiePoly::var(1), LiePoly::var(1));
    EXPECT_FALSE(sq.empty());  // no tree-level reduction
    EXPECT_TRUE(assoc_expand(sq).empty());
}

TEST(LeftNorm, Examples) {
    EXPECT_EQ(left_norm({x(1), x(2), x(3)}), LieMonomial::pair(LieMonomial::pair(x(1), x(2)), x(3)));
    EXPECT_EQ(left_norm({x(5)}), x(5));
    const auto a = left_norm({LieMonomial::pair(x(1), x(2)), LieMonomial::pair(x(3), x(4)), x(5)});
    EXPECT_EQ(expr::print(a), "x1 x2 (x3 x4) x5");
    EXPECT_THROW(left_norm(std::span<const LieMonomial>{}), std::invalid_argument);
}

TEST(Multidegree, Examples) {
    EXPECT_EQ(multidegree(left_norm_letters({1, 2, 1})), (MultiDeg{{1, 2}, {2, 1}}));
    EXPECT_EQ(multidegree(x(7)), (MultiDeg{{7, 1}}));
    const LiePoly b3 = P("(x1 x2)(x1 x2 x3)");
    for (auto m : b3.terms()) EXPECT_EQ(multidegree(m), (MultiDeg{{1, 2}, {2, 2}, {3, 1}}));
}

TEST(AssocExpand, Examples) {
    EXPECT_EQ(assoc_expand(P("x1 x2")), AssocPoly::from_words({W({1, 2}), W({2, 1})}));
    EXPECT_EQ(assoc_expand(P("x1 x2 x3")),
              AssocPoly::from_words({W({1, 2, 3}), W({2, 1, 3}), W({3, 1, 2}), W({3, 2, 1})}));
    EXPECT_TRUE(is_zero(P("x1 x2 x3 + x2 x3 x1 + x3 x1 x2")));
    EXPECT_FALSE(is_zero(P("x1 x2")));
    EXPECT_TRUE(is_zero(bracket(LiePoly::var(1), LiePoly::var(1))));
    EXPECT_TRUE(equivalent(P("x1 x2"), P("x2 x1")));
}

TEST(AssocExpand, MatchesOracle) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const LiePoly p = oracle::random_poly(rng, {1, 2, 2, 3, 4}, 4);
        oracle::Words expected = oracle::expand(p);
        std::vector<Word> ws;
        for (const auto& w : expected) ws.push_back(Word::from_letters(w));
        EXPECT_EQ(assoc_expand(p), AssocPoly::from_words(ws));
    }
}

TEST(AssocExpand, RespectsDegreeCap) {
    ScopedDegreeCap cap(4);
    EXPECT_NO_THROW(assoc_expand(P("x1 x2 x3 x4")));
    EXPECT_THROW(assoc_expand(P("x1 x2 x3 x4 x5")), DegreeCapExceeded);
}

TEST(DegreeCap, Bounds) {
    EXPECT_THROW(set_degree_cap(0), std::invalid_argument);
    EXPECT_THROW(set_degree_cap(13), std::invalid_argument);
    const unsigned before = degree_cap();
    {
        ScopedDegreeCap c(10);
        EXPECT_EQ(degree_cap(), 10u);
    }
    EXPECT_EQ(degree_cap(), before);
}

TEST(Substitute, Examples) {
    EXPECT_EQ(substitute(P("x1 x2"), {{1, P("x3")}, {2, P("x4")}}), P("x3 x4"));
    EXPECT_EQ(substitute(P("x1 x2"), {{1, P("x1 + x3")}, {2, P("x2")}}), P("x1 x2 + x3 x2"));
    EXPECT_THROW(substitute(P("x1 x2"), {{1, P("x3")}}), std::invalid_argument);
    EXPECT_EQ(rename(P("x1 x2 x3"), {{1, 3}, {3, 1}}), P("x3 x2 x1"));
}

TEST(Polarize, Examples) {
    const LiePoly sq = bracket(LiePoly::var(1), LiePoly::var(1));
    const LiePoly lin = polarize(sq, 1, {5, 6}, MultiDeg{{5, 1}, {6, 1}});
    EXPECT_EQ(lin, P("x5 x6 + x6 x5"));
    EXPECT_TRUE(is_zero(lin));
}

TEST(Polarize, Errors) {
    const LiePoly p = P("x1 x2 x1");
    EXPECT_THROW(polarize(p, 1, {5}, MultiDeg{{5, 2}}), std::invalid_argument);
    EXPECT_THROW(polarize(p, 1, {2, 6}, MultiDeg{{2, 1}, {6, 1}}), std::invalid_argument);
    EXPECT_THROW(polarize(p, 1, {5, 6}, MultiDeg{{5, 1}}), std::invalid_argument);
    EXPECT_THROW(polarize(p, 1, {5, 6}, MultiDeg{{5, 1}, {7, 1}}), std::invalid_argument);
    EXPECT_THROW(polarize(p, 3, {5, 6}, MultiDeg{{5, 1}}), std::invalid_argument);
    EXPECT_THROW(polarize(P("x1 x2 + x1 x2 x1"), 1, {5, 6}, MultiDeg{{5, 1}}), std::invalid_argument);
}

// The components over all targets add up to the full substitution
// v -> x8 + x9, and collapsing a component back gives binom(d, a) p.
TEST(Polarize, ComponentsSumBack) {
    std::mt19937_64 rng(5);
    for (std::uint32_t d = 1; d <= 3; ++d)
        for (int t = 0; t < 10; ++t) {
            std::vector<std::uint32_t> letters(d, 1);
            letters.push_back(2);
            letters.push_back(3);
            const LiePoly p = oracle::random_poly(rng, letters, 3);
            if (p.empty()) continue;
            LiePoly sum;
            for (std::uint32_t a = 0; a <= d; ++a) {
                LiePoly part;
                if (a == 0 || a == d) {
                    part = rename(p, {{1, a == d ? 8u : 9u}});
                } else {
                    MultiDeg target;
                    target.add(8, a);
                    target.add(9, d - a);
                    part = polarize(p, 1, {8, 9}, target);
                    const bool odd = ((d == 3) ? 3u : 2u) % 2 == 1;  // binom(d, a) for 0 < a < d <= 3
                    const LiePoly back = rename(part, {{8, 1}, {9, 1}});
                    EXPECT_EQ(assoc_expand(back), odd ? assoc_expand(p) : AssocPoly()) << expr::print(p);
                }
                sum += part;
            }
            const LiePoly full = substitute(p, {{1, P("x8 + x9")}, {2, P("x2")}, {3, P("x3")}});
            EXPECT_EQ(assoc_expand(sum), assoc_expand(full)) << expr::print(p);
        }
}

TEST(LieLaws, AnticommutativeAlternatingJacobi) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto u = oracle::random_tree(rng, {1, 2});
        const auto v = oracle::random_tree(rng, {3, 1, 4});
        const auto w = oracle::random_tree(rng, {2, 5});
        EXPECT_TRUE(is_zero(LiePoly::from_terms({LieMonomial::pair(u, v), LieMonomial::pair(v, u)})));
        EXPECT_TRUE(is_zero(LiePoly(LieMonomial::pair(v, v))));
        EXPECT_TRUE(is_zero(jacobi(u, v, w)));
    }
}

// Left-normalized monomials have the same rank as all bracketings, for
// every multidegree of total degree <= 6 up to renaming.
TEST(LieLaws, LeftNormalizedSpanAllTrees) {
    for (unsigned total = 1; total <= 6; ++total)
        for (const auto& d : tideal::multidegrees_up_to_renaming(total)) {
            const auto idx = gf2::word_index(d);
            gf2::GF2Subspace trees(idx), normed(idx);
            for (auto m : oracle::all_trees(d.letters())) trees.insert(idx->to_vector(assoc_expand(LiePoly(m))));
            auto letters = d.letters();
            do {
                normed.insert(idx->to_vector(assoc_expand(LiePoly(left_norm_letters(letters)))));
            } while (std::next_permutation(letters.begin(), letters.end()));
            EXPECT_EQ(trees.dim(), normed.dim()) << d.to_string();
            EXPECT_TRUE(gf2::equal(trees, normed)) << d.to_string();
        }
}

TEST(LieLaws, RankAgreesWithOracle) {
    for (const MultiDeg d : {MultiDeg{{1, 2}, {2, 2}}, MultiDeg{{1, 3}, {2, 1}}, MultiDeg{{1, 2}, {2, 2}, {3, 1}},
                             MultiDeg::ones(4), MultiDeg::ones(5)}) {
        std::vector<oracle::Words> rows;
        auto letters = d.letters();
        do {
            rows.push_back(oracle::expand(left_norm_letters(letters)));
        } while (std::next_permutation(letters.begin(), letters.end()));
        EXPECT_EQ(oracle::rank(rows), tideal::component(d)->space.dim()) << d.to_string();
    }
}

TEST(LiePoly, CanonicalOrderAndComponents) {
    const LiePoly p = P("x1 x2 x3 + x1 x2 + x4");
    EXPECT_EQ(expr::print(p), "x4 + x1 x2 + x1 x2 x3");
    EXPECT_EQ(p.max_degree(), 3u);
    EXPECT_FALSE(p.homogeneous_multidegree());
    EXPECT_EQ(p.components().size(), 3u);
    EXPECT_EQ(P("x1 x2 + x2 x1").homogeneous_multidegree(), (MultiDeg{{1, 1}, {2, 1}}));
    EXPECT_EQ(LiePoly().max_degree(), 0u);
}

TEST(LieMonomial, HashConsing) {
    EXPECT_EQ(left_norm_letters({1, 2, 3}), left_norm_letters({1, 2, 3}));
    EXPECT_NE(left_norm_letters({1, 2, 3}), left_norm_letters({1, 3, 2}));
    EXPECT_THROW(LieMonomial::leaf(0), std::out_of_range);
    EXPECT_THROW(LieMonomial::leaf(256), std::out_of_range);
}

TEST(LieMonomial, ConcurrentInterningAndExpansion) {
    std::vector<std::thread> pool;
    std::vector<std::size_t> sizes(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([t, &sizes] {
            std::mt19937_64 rng(static_cast<std::uint64_t>(t % 2));
            std::size_t acc = 0;
            for (int k = 0; k < 200; ++k) acc += assoc_expand(oracle::random_poly(rng, {1, 2, 3, 4, 5}, 3)).size();
            sizes[static_cast<std::size_t>(t)] = acc;
        });
    for (auto& th : pool) th.join();
    for (int t = 2; t < 8; ++t) EXPECT_EQ(sizes[static_cast<std::size_t>(t)], sizes[static_cast<std::size_t>(t % 2)]);
}

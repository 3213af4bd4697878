#include <gtest/gtest.h>

#include <random>

#include "lieid/expr.hpp"
#include "lieid/gf2.hpp"
#include "lieid/tideal.hpp"
#include "oracles.hpp"

using namespace lieid;
using namespace lieid::gf2;

namespace {

GF2Vector random_vector(std::mt19937_64& rng, std::size_t w, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    GF2Vector v(w);
    for (std::size_t i = 0; i < w; ++i)
        if (bit(rng)) v.set(i);
    return v;
}

std::vector<GF2Vector> random_set(std::mt19937_64& rng, std::size_t count, std::size_t w) {
    std::vector<GF2Vector> vs;
    for (std::size_t i = 0; i < count; ++i) vs.push_back(random_vector(rng, w, 0.3));
    return vs;
}

void expect_rref(const GF2Subspace& s) {
    for (std::size_t r = 0; r < s.dim(); ++r) {
        const auto& row = s.basis()[r];
        EXPECT_FALSE(row.is_zero());
        EXPECT_EQ(row.first_set(), s.pivots()[r]);
        if (r) EXPECT_LT(s.pivots()[r - 1], s.pivots()[r]);
        for (std::size_t o = 0; o < s.dim(); ++o)
            if (o != r) EXPECT_FALSE(s.basis()[o].get(s.pivots()[r]));
    }
}

} // namespace

TEST(GF2Vector, Basics) {
    GF2Vector v(130);
    EXPECT_TRUE(v.is_zero());
    v.set(0);
    v.set(129);
    EXPECT_EQ(v.count(), 2u);
    EXPECT_EQ(v.first_set(1), 129u);
    EXPECT_EQ(v.first_set(130), 130u);
    v.flip(0);
    EXPECT_EQ(v.ones(), (std::vector<std::size_t>{129}));
    GF2Vector w(130);
    w.set(129);
    v ^= w;
    EXPECT_TRUE(v.is_zero());
    EXPECT_THROW(v ^= GF2Vector(3), std::invalid_argument);
    EXPECT_EQ(GF2Vector::from_bits({1, 0, 1}).to_string(), "101");
}

TEST(WordIndex, SortedPermutations) {
    const auto idx = word_index(MultiDeg{{1, 2}, {2, 1}});
    ASSERT_EQ(idx->size(), 3u);
    EXPECT_EQ(idx->words()[0], Word::from_letters({1, 1, 2}));
    EXPECT_EQ(idx->words()[2], Word::from_letters({2, 1, 1}));
    EXPECT_EQ(idx, word_index(MultiDeg{{1, 2}, {2, 1}}));
    EXPECT_EQ(word_index(MultiDeg::ones(5))->size(), 120u);
    EXPECT_THROW(idx->to_vector(AssocPoly(Word::from_letters({1, 2}))), std::invalid_argument);
    const AssocPoly p = AssocPoly::from_words({Word::from_letters({1, 2, 1})});
    EXPECT_EQ(idx->to_poly(idx->to_vector(p)), p);
}

TEST(Span, Examples) {
    const auto idx = word_index(MultiDeg::ones(3));
    EXPECT_EQ(span(idx, {}).dim(), 0u);
    GF2Vector v(idx->size());
    v.set(2);
    EXPECT_EQ(span(idx, {v, v}).dim(), 1u);
    std::vector<GF2Vector> lefts;
    auto letters = oracle::iota_letters(3);
    do {
        lefts.push_back(idx->to_vector(assoc_expand(LiePoly(left_norm_letters(letters)))));
    } while (std::next_permutation(letters.begin(), letters.end()));
    EXPECT_EQ(lefts.size(), 6u);
    EXPECT_EQ(span(idx, lefts).dim(), 2u);
    EXPECT_THROW(span(idx->size() + 1, lefts), std::invalid_argument);
}

TEST(Contains, Examples) {
    std::mt19937_64 rng(1);
    const auto vs = random_set(rng, 4, 20);
    const auto s = span(20, vs);
    EXPECT_TRUE(contains(s, GF2Vector(20)));
    EXPECT_TRUE(contains(span(20, {vs[0]}), vs[0]));
    EXPECT_THROW(s.contains(GF2Vector(21)), std::invalid_argument);
}

TEST(Contains, ConsequenceOfRelation) {
    const auto d = MultiDeg::ones(5);
    const auto c = tideal::consequences(tideal::f_relations(), d);
    const LiePoly p = expr::parse("(x1 x2 x5)(x3 x4) + (x1 x2)(x3 x4 x5)");
    EXPECT_TRUE(contains(c, c.index()->to_vector(assoc_expand(p))));
}

TEST(Compare, Examples) {
    std::mt19937_64 rng(2);
    const auto s = span(30, random_set(rng, 6, 30));
    EXPECT_TRUE(equal(s, s));
    EXPECT_TRUE(subset(span(30, {}), s));
    EXPECT_FALSE(subset(s, span(30, {})));
    EXPECT_EQ(dim(tideal::identities(MultiDeg::ones(4))), 1u);
    EXPECT_THROW(equal(s, span(31, {})), std::invalid_argument);
    const auto a = word_index(MultiDeg::ones(3));
    const auto b = word_index(MultiDeg{{1, 1}, {2, 1}, {4, 1}});
    EXPECT_THROW(subset(GF2Subspace(a), GF2Subspace(b)), std::invalid_argument);
}

TEST(Kernel, Examples) {
    std::vector<GF2Vector> eye;
    for (std::size_t i = 0; i < 5; ++i) {
        GF2Vector r(5);
        r.set(i);
        eye.push_back(r);
    }
    EXPECT_EQ(kernel(eye, 5).dim(), 0u);
    EXPECT_EQ(kernel({GF2Vector(7)}, 7).dim(), 7u);
    EXPECT_THROW(kernel({GF2Vector(3)}, 4), std::invalid_argument);

    // Over (a42, a43, a34): a43+a34 = a42+a34 = a42+a43 = 0.
    const auto k = kernel({GF2Vector::from_bits({0, 1, 1}), GF2Vector::from_bits({1, 0, 1}),
                           GF2Vector::from_bits({1, 1, 0})},
                          3);
    ASSERT_EQ(k.dim(), 1u);
    EXPECT_EQ(k.basis()[0], GF2Vector::from_bits({1, 1, 1}));
}

TEST(Kernel, MatchesBruteForce) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        const std::size_t w = 1 + rng() % 12, h = rng() % 10;
        std::vector<std::vector<int>> raw;
        std::vector<GF2Vector> rows;
        for (std::size_t r = 0; r < h; ++r) {
            const auto v = random_vector(rng, w);
            rows.push_back(v);
            std::vector<int> bits(w);
            for (std::size_t j = 0; j < w; ++j) bits[j] = v.get(j);
            raw.push_back(bits);
        }
        const auto k = kernel(rows, w);
        expect_rref(k);
        EXPECT_EQ(std::size_t{1} << k.dim(), oracle::brute_kernel_size(raw, w));
        for (const auto& x : k.basis())
            for (const auto& r : rows) {
                GF2Vector y = x;
                std::size_t dot = 0;
                for (auto j : y.ones()) dot += r.get(j);
                EXPECT_EQ(dot % 2, 0u);
            }
    }
}

TEST(Subspace, RrefInvariants) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const std::size_t w = 1 + rng() % 150;
        const auto vs = random_set(rng, rng() % 40, w);
        const auto s = span(w, vs);
        expect_rref(s);
        EXPECT_TRUE(equal(span(w, s.basis()), s));  // idempotence
        EXPECT_EQ(span(w, s.basis()).basis(), s.basis());
        for (const auto& v : vs) EXPECT_TRUE(s.contains(v));
        const auto probe = random_vector(rng, w);
        auto more = s.basis();
        more.push_back(probe);
        EXPECT_EQ(s.contains(probe), span(w, more).dim() == s.dim());
    }
}

TEST(Subspace, IntersectionDimensionFormula) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 80; ++t) {
        const std::size_t w = 2 + rng() % 24;
        const auto a = span(w, random_set(rng, rng() % 12, w));
        const auto b = span(w, random_set(rng, rng() % 12, w));
        const auto meet = intersect(a, b);
        expect_rref(meet);
        EXPECT_EQ(join(a, b).dim() + meet.dim(), a.dim() + b.dim());
        EXPECT_TRUE(subset(meet, a));
        EXPECT_TRUE(subset(meet, b));
    }
}

TEST(Dependencies, AndSolve) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 40; ++t) {
        const std::size_t w = 1 + rng() % 20;
        const auto vs = random_set(rng, rng() % 15, w);
        const auto deps = dependencies(vs);
        EXPECT_EQ(deps.dim() + span(w, vs).dim(), vs.size());
        for (const auto& d : deps.basis()) {
            GF2Vector acc(w);
            for (auto i : d.ones()) acc ^= vs[i];
            EXPECT_TRUE(acc.is_zero());
        }
        const auto target = random_vector(rng, w);
        const auto x = solve(vs, target);
        EXPECT_EQ(x.has_value(), span(w, vs).contains(target));
        if (x) {
            GF2Vector acc(w);
            for (auto i : x->ones()) acc ^= vs[i];
            EXPECT_EQ(acc, target);
        }
    }
    EXPECT_EQ(dependencies({}).dim(), 0u);
}

#include <gtest/gtest.h>

#include <random>

#include "lacunary/decompose.hpp"
#include "test_util.hpp"

using namespace lacunary;
using testutil::code_of;

namespace {

bool has_result(const DecomposeReport& rep, const DensePoly& g, const SparsePoly& h) {
    for (const auto& r : rep.results)
        if (r.outer == g && r.inner == h)
            return true;
    return false;
}

} // namespace

TEST(Trivial, Examples) {
    auto a = trivial_decompose(SparsePoly{{6, 1}, {4, 3}, {2, 1}});
    ASSERT_TRUE(a);
    EXPECT_EQ(a->outer, (DensePoly{0, 1, 3, 1}));
    EXPECT_EQ(a->inner, SparsePoly::monomial(1, 2));
    EXPECT_EQ(a->kind, DecompositionKind::Trivial);
    EXPECT_FALSE(trivial_decompose(SparsePoly{{3, 1}, {1, 1}, {0, 1}}));
    auto b = trivial_decompose(SparsePoly::monomial(1, 10));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->outer, (DensePoly{0, 0, 1}));
    EXPECT_EQ(b->inner, SparsePoly::monomial(1, 5));
    EXPECT_FALSE(trivial_decompose(SparsePoly::monomial(1, 7)));
    EXPECT_EQ(code_of([] { trivial_decompose(SparsePoly::constant(3)); }), ErrorCode::UndefinedInput);
}

TEST(Trivial, OuterOverDenseCap) {
    SparsePoly f{{Exponent("200000000000"), 1}, {2, 1}};
    EXPECT_EQ(code_of([&] { trivial_decompose(f); }), ErrorCode::CapExceeded);
}

TEST(RootCandidate, Examples) {
    EXPECT_EQ(sparse_root_candidate(SparsePoly{{4, 1}, {3, 2}, {2, 1}}, 2), (SparsePoly{{2, 1}, {1, 1}}));
    EXPECT_EQ(sparse_root_candidate(SparsePoly{{4, 1}, {0, 1}}, 2), SparsePoly::monomial(1, 2));
    EXPECT_EQ(sparse_root_candidate(SparsePoly::monomial(1, 2000), 2), SparsePoly::monomial(1, 1000));
}

TEST(RootCandidate, Preconditions) {
    EXPECT_EQ(code_of([] { sparse_root_candidate(SparsePoly{{4, 2}, {0, 1}}, 2); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { sparse_root_candidate(SparsePoly{{5, 1}, {0, 1}}, 2); }), ErrorCode::Precondition);
}

TEST(RootCandidate, BudgetIsReported) {
    SparsePoly f{{3000, 1}, {2999, 1}, {1, 1}};
    EXPECT_EQ(code_of([&] { sparse_root_candidate(f, 3, 50); }), ErrorCode::CandidateBudget);
}

TEST(RecoverOuter, Examples) {
    EXPECT_EQ(recover_outer(SparsePoly{{6, 1}, {4, 2}, {2, 1}}, SparsePoly{{3, 1}, {1, 1}}), (DensePoly{0, 0, 1}));
    EXPECT_EQ(recover_outer(SparsePoly{{4, 1}, {0, 1}}, SparsePoly::monomial(1, 2)), (DensePoly{1, 0, 1}));
    EXPECT_FALSE(recover_outer(SparsePoly{{4, 1}, {1, 1}, {0, 1}}, SparsePoly::monomial(1, 2)));
}

TEST(SparseDecompose, Examples) {
    auto a = sparse_decompose(SparsePoly{{4, 1}, {3, 2}, {2, 1}});
    ASSERT_EQ(a.results.size(), 1u);
    EXPECT_EQ(a.results[0].outer, (DensePoly{0, 0, 1}));
    EXPECT_EQ(a.results[0].inner, (SparsePoly{{2, 1}, {1, 1}}));
    EXPECT_EQ(a.results[0].kind, DecompositionKind::Proper);

    auto b = sparse_decompose(SparsePoly::monomial(1, 7));
    EXPECT_TRUE(b.results.empty());

    auto c = sparse_decompose(SparsePoly{{6, 1}, {5, 2}, {4, 1}, {0, 7}});
    EXPECT_TRUE(has_result(c, DensePoly{7, 0, 1}, SparsePoly{{3, 1}, {2, 1}}));

    auto d = sparse_decompose(SparsePoly{{6, 1}, {4, 2}, {2, 1}});
    EXPECT_TRUE(has_result(d, DensePoly{0, 0, 1}, SparsePoly{{3, 1}, {1, 1}}));
    EXPECT_TRUE(has_result(d, DensePoly{0, 1, 2, 1}, SparsePoly::monomial(1, 2)));
    EXPECT_EQ(d.results.front().kind, DecompositionKind::Proper); // d = 2 before d = 3
}

TEST(SparseDecompose, ResultsRecomposeAndRespectBound) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 40; ++it) {
        SparsePoly h;
        h.add_term(20 + rng() % 200, 1);
        h.add_term(1 + rng() % 19, c(rng) == 0 ? 1 : c(rng));
        DensePoly g{Rational(c(rng)), Rational(c(rng)), Rational(c(rng)), Rational(1 + rng() % 3)};
        SparsePoly f = compose_outer(g, h);
        auto rep = sparse_decompose(f);
        ASSERT_FALSE(rep.results.empty());
        for (const auto& r : rep.results) {
            ASSERT_EQ(compose_outer(r.outer, r.inner), f);
            ASSERT_TRUE(r.inner.is_monic());
            ASSERT_EQ(r.inner.coeff(0), 0);
            if (r.kind == DecompositionKind::Proper)
                ASSERT_LE(Exponent(r.divisor_d), rep.outer_degree_bound);
        }
    }
}

TEST(SparseDecompose, HugeExponents) {
    Exponent big("1000000000000000000001");
    SparsePoly h{{big, 1}, {5, 3}};
    SparsePoly f = compose_outer(DensePoly{1, 0, -2, 1}, h);
    auto rep = sparse_decompose(f);
    EXPECT_TRUE(has_result(rep, DensePoly{1, 0, -2, 1}, h));
    // exponent gcd 5 with a gigantic outer polynomial: noted, not materialized
    Exponent big5("1000000000000000000000");
    SparsePoly h5{{big5, 1}, {5, 3}};
    auto rep5 = sparse_decompose(compose_outer(DensePoly{1, 0, -2, 1}, h5));
    EXPECT_TRUE(has_result(rep5, DensePoly{1, 0, -2, 1}, h5));
    EXPECT_NE(rep5.note.find("not materialized"), std::string::npos);
    EXPECT_TRUE(rep5.decomposable());
}

TEST(SparseDecompose, ModularScreenDoesNotChangeVerdicts) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> c(-4, 4);
    DecomposeOptions plain;
    plain.modular_filter = false;
    for (int it = 0; it < 40; ++it) {
        SparsePoly f;
        for (int k = 0; k < 4; ++k)
            f.add_term(rng() % 60, c(rng));
        if (f.is_zero() || f.degree() == 0)
            continue;
        auto a = sparse_decompose(f), b = sparse_decompose(f, plain);
        ASSERT_EQ(a.results.size(), b.results.size());
        for (std::size_t i = 0; i < a.results.size(); ++i) {
            ASSERT_EQ(a.results[i].outer, b.results[i].outer);
            ASSERT_EQ(a.results[i].inner, b.results[i].inner);
        }
    }
}

TEST(Oracle, Examples) {
    auto a = dense_decompose_oracle(DensePoly{0, 0, 0, 0, 1});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].outer, (DensePoly{0, 0, 1}));
    EXPECT_EQ(a[0].inner, SparsePoly::monomial(1, 2));

    auto b = dense_decompose_oracle(DensePoly{0, 0, 1, 0, 2, 0, 1});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0].outer, (DensePoly{0, 0, 1}));
    EXPECT_EQ(b[0].inner, (SparsePoly{{3, 1}, {1, 1}}));
    EXPECT_EQ(b[1].outer, (DensePoly{0, 1, 2, 1}));
    EXPECT_EQ(b[1].inner, SparsePoly::monomial(1, 2));

    EXPECT_TRUE(dense_decompose_oracle(DensePoly{1, 1, 0, 1}).empty());
    DensePoly big = DensePoly::monomial(1, 70);
    EXPECT_EQ(code_of([&] { dense_decompose_oracle(big); }), ErrorCode::CapExceeded);
}

TEST(Oracle, AgreesWithSparseVerdicts) {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 80; ++it) {
        DensePoly f;
        if (it % 2) {
            std::vector<Rational> hc{0}, gc;
            const int r = 2 + static_cast<int>(rng() % 4), s = 2 + static_cast<int>(rng() % 4);
            for (int k = 1; k < r; ++k)
                hc.push_back(c(rng));
            hc.push_back(1);
            for (int k = 0; k < s; ++k)
                gc.push_back(c(rng));
            gc.push_back(1);
            f = compose(DensePoly(gc), DensePoly(hc));
        } else {
            std::vector<Rational> fc;
            const int n = 2 + static_cast<int>(rng() % 30);
            for (int k = 0; k < n; ++k)
                fc.push_back(rng() % 3 == 0 ? Rational(c(rng)) : Rational(0));
            fc.push_back(1);
            f = DensePoly(fc);
        }
        const bool sparse_says = !sparse_decompose(SparsePoly::from_dense(f)).results.empty();
        const bool oracle_says = !dense_decompose_oracle(f).empty();
        ASSERT_EQ(sparse_says, oracle_says) << f.str();
    }
}

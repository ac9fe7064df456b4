#include <gtest/gtest.h>

#include <random>
#include <set>

#include "lacunary/param_enum.hpp"
#include "test_util.hpp"

using namespace lacunary;
using testutil::code_of;

namespace {

std::vector<std::string> term_strings(const std::vector<SymbolicTerm>& terms, const MasterShape& shape) {
    std::vector<std::string> out;
    for (const auto& t : terms)
        out.push_back(term_string(t, shape));
    return out;
}

const CatalogEntry& entry_with(const Catalog& cat, const std::vector<std::vector<std::size_t>>& groups) {
    for (const auto& e : cat.entries)
        if (e.partition.groups == groups)
            return e;
    throw std::runtime_error("partition not in catalog");
}

Rational nonzero(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(1, 5);
    return Rational(rng() % 2 ? c(rng) : -c(rng));
}

/// Random point on the entry's coefficient variety with every c symbol nonzero.
SymbolPoint random_point(const Catalog& cat, const CatalogEntry& e, std::mt19937_64& rng) {
    const MasterShape& sh = cat.shape;
    SymbolPoint pt;
    for (unsigned k = 0; k < sh.B; ++k) {
        pt.c1.push_back(nonzero(rng));
        pt.c2.push_back(nonzero(rng));
    }
    std::vector<Rational> ab(sh.l + sh.ell + 1, 0);
    std::uniform_int_distribution<int> w(-3, 3);
    for (const auto& v : linear_solutions(e.system, sh, pt.c1, pt.c2)) {
        const int coef = w(rng);
        for (std::size_t i = 0; i < ab.size(); ++i)
            ab[i] += coef * v[i];
    }
    pt.a.assign(ab.begin(), ab.begin() + sh.l);
    pt.b.assign(ab.begin() + sh.l, ab.end());
    return pt;
}

} // namespace

TEST(Expand, SmallestShape) {
    MasterShape sh{1, 2, 1};
    auto terms = expand_master_identity(sh);
    ASSERT_EQ(terms.size(), 4u);
    EXPECT_EQ(term_strings(terms, sh), (std::vector<std::string>{"a1*c21^2*x^(m1+2*n21)", "-b0*c21^2*x^(2*n21)",
                                                               "-b1*c11*c21*x^(n11+n21)", "-b2*c11^2*x^(2*n11)"}));
}

TEST(Expand, MultinomialScalarsAndBounds) {
    MasterShape sh{2, 3, 2};
    auto terms = expand_master_identity(sh);
    Rational total_b3 = 0;
    for (const auto& t : terms) {
        for (long c : t.degree.coeffs) {
            ASSERT_GE(c, 0);
            ASSERT_LE(c, static_cast<long>(sh.ell));
        }
        for (const auto& [sym, e] : t.monomial)
            ASSERT_LE(e, sh.ell);
        if (t.monomial.count({SymbolKind::B, 3}))
            total_b3 += t.scalar;
    }
    // -b3 (c11 + c12)^3: scalars sum to -2^3
    EXPECT_EQ(total_b3, -8);
}

TEST(Expand, Guards) {
    EXPECT_EQ(code_of([] { expand_master_identity({4, 2, 1}); }), ErrorCode::SizeGuard);
    EXPECT_EQ(code_of([] { expand_master_identity({1, 5, 1}); }), ErrorCode::SizeGuard);
    EnumCaps wide;
    wide.max_ell = 5;
    EXPECT_EQ(expand_master_identity({1, 5, 1}, wide).size(), 7u);
    EXPECT_EQ(code_of([] { expand_master_identity({1, 1, 1}); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { expand_master_identity({0, 2, 1}); }), ErrorCode::Precondition);
}

TEST(Partitions, SingleTerm) {
    MasterShape sh{1, 2, 1};
    std::vector<SymbolicTerm> one{expand_master_identity(sh)[0]};
    EXPECT_EQ(enumerate_partitions(one, sh).size(), 1u);
    EXPECT_EQ(code_of([&] { enumerate_partitions({}, sh); }), ErrorCode::Precondition);
}

TEST(Partitions, TwoTerms) {
    MasterShape sh{1, 2, 1};
    auto all = expand_master_identity(sh);
    // distinct degree forms: together or apart
    EXPECT_EQ(enumerate_partitions({all[1], all[3]}, sh).size(), 2u);
    // identical degree forms can never be apart
    PartitionStats stats;
    EXPECT_EQ(enumerate_partitions({all[1], all[1]}, sh, {}, &stats).size(), 1u);
    EXPECT_EQ(stats.pruned_forced_merge, 1u);
}

TEST(Partitions, SmallestCatalogContents) {
    MasterShape sh{1, 2, 1};
    auto terms = expand_master_identity(sh);
    PartitionStats stats;
    auto parts = enumerate_partitions(terms, sh, {}, &stats);
    EXPECT_EQ(stats.visited, 15u); // Bell(4)
    EXPECT_EQ(parts.size(), 6u);
    EXPECT_NE(std::find(parts.begin(), parts.end(), PartitionScheme{{{0}, {1, 2, 3}}}), parts.end());
    EnumCaps tiny;
    tiny.max_partitions = 10;
    EXPECT_EQ(code_of([&] { enumerate_partitions(terms, sh, tiny); }), ErrorCode::SizeGuard);
}

TEST(DegreeSystem, SolvesWithHermiteBasis) {
    // variables m1, m2, n11, n21; groups force m1 = 2 n11 and m2 = n11
    MasterShape sh{2, 2, 1};
    auto mk = [&](std::vector<long> c) { return SymbolicTerm{1, {}, {std::move(c)}}; };
    std::vector<SymbolicTerm> terms{mk({0, 0, 2, 0}), mk({1, 0, 0, 0}), mk({0, 0, 1, 0}), mk({0, 1, 0, 0})};
    auto lat = solve_degree_system(PartitionScheme{{{0, 1}, {2, 3}}}, terms, sh);
    ASSERT_TRUE(lat);
    EXPECT_EQ(lat->rank, 2u);
    EXPECT_EQ(lat->basis, (IntMatrix{{2, 1, 1, 0}, {0, 0, 0, 1}}));
    EXPECT_EQ(lat->alpha, (IntMatrix{{2, 0}, {1, 0}}));
    EXPECT_EQ(lat->beta, (IntMatrix{{1, 0}, {0, 1}}));
}

TEST(DegreeSystem, EmptySystemIsFullLattice) {
    MasterShape sh{1, 2, 1};
    auto terms = expand_master_identity(sh);
    auto lat = solve_degree_system(PartitionScheme{{{0}, {1}, {2}, {3}}}, terms, sh);
    ASSERT_TRUE(lat);
    EXPECT_EQ(lat->rank, sh.var_count());
}

TEST(DegreeSystem, KeepsSolutionsThatAreNegativeSomewhere) {
    // m1 + 2 n21 = 2 n11 forces m1 = 2(n11 - n21), negative when n21 > n11
    MasterShape sh{1, 2, 1};
    auto terms = expand_master_identity(sh);
    auto lat = solve_degree_system(PartitionScheme{{{0, 3}, {1}, {2}}}, terms, sh);
    ASSERT_TRUE(lat);
    auto v = lattice_coordinates(lat->basis, {-2, 0, 1});
    EXPECT_TRUE(v);
}

TEST(DegreeSystem, ZeroLatticeGivesNone) {
    MasterShape sh{1, 2, 1};
    auto mk = [&](std::vector<long> c) { return SymbolicTerm{1, {}, {std::move(c)}}; };
    std::vector<SymbolicTerm> terms{mk({1, 0, 0}), mk({0, 0, 0}), mk({0, 1, 0}), mk({0, 0, 1})};
    EXPECT_FALSE(solve_degree_system(PartitionScheme{{{0, 1, 2, 3}}}, terms, sh));
}

TEST(CoeffSystem, Examples) {
    MasterShape sh{1, 2, 1};
    auto terms = expand_master_identity(sh);
    auto sys = coefficient_system(PartitionScheme{{{0}, {1}, {2, 3}}}, terms);
    ASSERT_EQ(sys.equations.size(), 3u);
    EXPECT_EQ(sys.equations[2].str(), "b1*c11*c21 + b2*c11^2 = 0");
    EXPECT_EQ(sys.equations[1].str(), "b0*c21^2 = 0");
    EXPECT_FALSE(sys.equations[1].relation());
    auto full = coefficient_system(PartitionScheme{{{0, 1, 2, 3}}}, terms);
    EXPECT_EQ(full.equations[0].relation(), "a1*c21^2 = b0*c21^2 + b1*c11*c21 + b2*c11^2");
}

TEST(Catalog, DeterministicAndSized) {
    auto a = build_catalog({1, 2, 1}), b = build_catalog({1, 2, 1});
    ASSERT_EQ(a.entries.size(), 6u);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].id, i);
        EXPECT_EQ(a.entries[i].partition, b.entries[i].partition);
        EXPECT_EQ(a.entries[i].lattice.basis, b.entries[i].lattice.basis);
    }
    EXPECT_EQ(build_catalog({2, 2, 1}).entries.size(), 22u);
}

TEST(Catalog, LatticesRespectGroups) {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> w(-6, 6);
    for (MasterShape sh : {MasterShape{1, 2, 1}, MasterShape{2, 2, 1}, MasterShape{1, 3, 1}}) {
        Catalog cat = build_catalog(sh);
        for (const auto& e : cat.entries) {
            for (int it = 0; it < 20; ++it) {
                std::vector<Integer> u(e.lattice.rank);
                for (auto& x : u)
                    x = w(rng);
                auto x = e.lattice.exponents(u);
                for (const auto& g : e.partition.groups)
                    for (auto i : g)
                        ASSERT_EQ(cat.terms[i].degree.at(x), cat.terms[g[0]].degree.at(x));
            }
        }
    }
}

TEST(Instantiate, SquaresOfMonomials) {
    Catalog cat = build_catalog({1, 2, 1});
    const CatalogEntry& e = entry_with(cat, {{0, 3}, {1}, {2}});
    SymbolPoint pt{{1}, {0, 0, 1}, {1}, {1}};
    for (long n : {3L, 5L}) {
        auto u = lattice_coordinates(e.lattice.basis, {2 * n, n, 0});
        ASSERT_TRUE(u);
        Instantiation inst = instantiate(cat, e, pt, *u);
        EXPECT_EQ(inst.f, SparsePoly::monomial(1, 2 * n));
        ASSERT_TRUE(inst.h);
        EXPECT_EQ(*inst.h, SparsePoly::monomial(1, n));
        EXPECT_EQ(compose_outer(inst.g, *inst.h), inst.f);
    }
    Instantiation zero = instantiate(cat, e, pt, std::vector<Integer>(e.lattice.rank, 0));
    EXPECT_EQ(zero.f, SparsePoly::constant(1));
}

TEST(Instantiate, PolynomialCaseWhenDenominatorIsConstant) {
    Catalog cat = build_catalog({1, 2, 1});
    const CatalogEntry& e = entry_with(cat, {{0, 3}, {1}, {2}});
    SymbolPoint pt{{12}, {0, 0, 3}, {2}, {1}};
    auto u = lattice_coordinates(e.lattice.basis, {8, 4, 0});
    ASSERT_TRUE(u);
    Instantiation inst = instantiate(cat, e, pt, *u);
    EXPECT_EQ(inst.h2, SparsePoly::constant(1));
    EXPECT_EQ(inst.f, SparsePoly::monomial(12, 8));
    EXPECT_EQ(compose_outer(inst.g, *inst.h), inst.f);
}

TEST(Instantiate, Rejections) {
    Catalog cat = build_catalog({1, 2, 1});
    const CatalogEntry& e = entry_with(cat, {{0, 3}, {1}, {2}});
    SymbolPoint bad{{2}, {0, 0, 1}, {1}, {1}};
    auto u = lattice_coordinates(e.lattice.basis, {6, 3, 0});
    EXPECT_EQ(code_of([&] { instantiate(cat, e, bad, *u); }), ErrorCode::InvalidPoint);
    SymbolPoint good{{1}, {0, 0, 1}, {1}, {1}};
    auto neg = lattice_coordinates(e.lattice.basis, {-2, 0, 1});
    EXPECT_EQ(code_of([&] { instantiate(cat, e, good, *neg); }), ErrorCode::LaurentRejected);
    SymbolPoint short_point{{1}, {0, 1}, {1}, {1}};
    EXPECT_EQ(code_of([&] { instantiate(cat, e, short_point, *u); }), ErrorCode::InvalidPoint);
}

TEST(Instantiate, RandomPointsRecomposeAndQuotientsAreIntegral) {
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<int> w(0, 6);
    for (MasterShape sh : {MasterShape{1, 2, 1}, MasterShape{2, 2, 1}}) {
        Catalog cat = build_catalog(sh);
        int done = 0;
        for (int it = 0; it < 2000 && done < 60; ++it) {
            const CatalogEntry& e = cat.entries[rng() % cat.entries.size()];
            SymbolPoint pt = random_point(cat, e, rng);
            std::vector<Integer> u(e.lattice.rank);
            for (auto& x : u)
                x = w(rng);
            try {
                Instantiation inst = instantiate(cat, e, pt, u);
                ++done;
                const bool g_nonconstant = inst.g.degree() >= 1;
                const bool f_nonconstant = !inst.f.is_zero() && inst.f.degree() > 0;
                if (g_nonconstant && f_nonconstant) {
                    ASSERT_TRUE(inst.h) << "quotient not polynomial in entry " << e.id;
                    ASSERT_EQ(compose_outer(inst.g, *inst.h), inst.f);
                }
            } catch (const Error& err) {
                ASSERT_EQ(err.code(), ErrorCode::LaurentRejected);
            }
        }
        EXPECT_EQ(done, 60);
    }
}

TEST(Locate, FindsGeneratedIdentities) {
    Catalog cat = build_catalog({1, 2, 1});
    // x^6 = (x^3)^2 with h1 = x^5, h2 = x^2
    SymbolPoint pt{{1}, {0, 0, 1}, {1}, {1}};
    auto loc = locate(cat, pt, {6, 5, 2});
    ASSERT_TRUE(loc);
    const CatalogEntry& e = cat.entries[loc->entry_id];
    EXPECT_EQ(e.partition, (PartitionScheme{{{0, 3}, {1}, {2}}}));
    Instantiation inst = instantiate(cat, e, pt, loc->u);
    EXPECT_EQ(inst.exponents, (std::vector<Integer>{6, 5, 2}));
    EXPECT_EQ(*inst.h, SparsePoly::monomial(1, 3));
    // same degrees, coefficients off the variety
    EXPECT_FALSE(locate(cat, SymbolPoint{{2}, {0, 0, 1}, {1}, {1}}, {6, 5, 2}));
}

TEST(Corollary, Membership) {
    EXPECT_TRUE(corollary_membership({1, 2, 1}, {4, 3, 2}));
    EXPECT_TRUE(corollary_membership({1, 2, 1}, {6, 4, 2}));
    EXPECT_FALSE(corollary_membership({1, 1}, {3, 1}));
    EXPECT_EQ(code_of([] { corollary_membership({1, 0}, {3, 1}); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { corollary_membership({1, 1}, {1, 3}); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { corollary_membership({1, 1}, {3}); }), ErrorCode::Precondition);
}

TEST(Corollary, BoxScanMatchesFamilies) {
    auto rep = corollary_box_scan({1, 2, 1}, 10);
    std::set<std::vector<unsigned long>> predicted;
    for (unsigned long m1 = 1; m1 <= 10; ++m1)
        for (unsigned long m2 = 1; m2 < m1; ++m2)
            for (unsigned long m3 = 1; m3 < m2; ++m3) {
                const bool square = m1 % 2 == 0 && m3 % 2 == 0 && 2 * m2 == m1 + m3;
                const bool gcd_family = std::gcd(std::gcd(m1, m2), m3) > 1;
                if (square || gcd_family)
                    predicted.insert({m1, m2, m3});
            }
    EXPECT_EQ(std::set<std::vector<unsigned long>>(rep.decomposable.begin(), rep.decomposable.end()), predicted);
    EXPECT_TRUE(rep.closure_holds);
    const std::vector<unsigned long> base{4, 3, 2};
    EXPECT_NE(std::find_if(rep.closure.begin(), rep.closure.end(),
                           [&](const ClosureCheck& c) { return c.m == base && c.t == 2 && c.multiple_decomposable; }),
              rep.closure.end());
    EXPECT_EQ(code_of([] { corollary_box_scan({1, 0, 1}, 5); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { corollary_box_scan({1, 1, 1}, 1000); }), ErrorCode::SizeGuard);
}

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <nhkit/algebra.hpp>
#include <nhkit/io.hpp>

using namespace nhkit;

namespace {

std::array<double, 8> dual(double f, double m, double h, double p1, double p2, double k1, double k2, double j)
{
    return {f, m, h, p1, p2, k1, k2, j};
}

std::vector<StructureTable> all_tables()
{
    std::vector<StructureTable> out;
    for (const bool ext : {false, true})
        for (const auto name : {AlgebraName::dS_plus, AlgebraName::dS_minus, AlgebraName::NH_plus, AlgebraName::NH_minus,
                                AlgebraName::Galilei, AlgebraName::Poincare})
            for (const double tau : {0.5, 1.0, 2.0}) out.push_back(build_table(name, ext, {3.0, 2.0, tau}));
    return out;
}

}  // namespace

TEST(BuildTable, OscillatingTimeTranslationBracket)
{
    const auto t = build_table(AlgebraName::NH_minus, false, {1, 1, 1.0});
    EXPECT_EQ(t.bracket(P1, H, K1), -1.0);
    EXPECT_EQ(t.bracket(P2, H, K2), -1.0);
    EXPECT_EQ(t.bracket(K1, H, P1), 1.0);
}

TEST(BuildTable, GalileiMomentaCommuteWithTime)
{
    const auto t = build_table(AlgebraName::Galilei, false);
    for (int k = 0; k < t.dim; ++k) EXPECT_EQ(t(t.index(P1), t.index(H), k), 0.0);
}

TEST(BuildTable, ExtendedMomentumBracketScalesWithTau)
{
    const auto t = build_table(AlgebraName::NH_minus, true, {1, 1, 2.0});
    EXPECT_DOUBLE_EQ(t.bracket(P1, P2, F), 0.25);
    EXPECT_EQ(t.bracket(K1, P1, M), 1.0);
    EXPECT_EQ(t.bracket(K2, P2, M), 1.0);
    EXPECT_EQ(t.bracket(K1, K2, F), 1.0);
}

TEST(BuildTable, ExpandingSignFlipped)
{
    const auto t = build_table(AlgebraName::NH_plus, false, {1, 1, 2.0});
    EXPECT_DOUBLE_EQ(t.bracket(P1, H, K1), 0.25);
}

TEST(BuildTable, TrivialExtensionFlagged)
{
    const auto p = build_table(AlgebraName::Poincare, true, {3.0, 1.0, 1.0});
    EXPECT_TRUE(p.extension_trivial);
    EXPECT_EQ(p.dim, 6);
    EXPECT_FALSE(build_table(AlgebraName::NH_minus, true).extension_trivial);
}

TEST(BuildTable, RejectsNonpositiveParameters)
{
    EXPECT_THROW(build_table(AlgebraName::NH_minus, false, {1, 1, 0.0}), std::invalid_argument);
    EXPECT_THROW(build_table(AlgebraName::dS_plus, false, {-1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(algebra_from_string("SL2"), std::invalid_argument);
}

TEST(BuildTable, CentralGeneratorsHaveNoBrackets)
{
    for (const double tau : {0.5, 1.0, 2.0}) {
        const auto t = build_table(AlgebraName::NH_minus, true, {1, 1, tau});
        for (int z : {0, 1})
            for (int i = 0; i < 8; ++i)
                for (int k = 0; k < 8; ++k) {
                    EXPECT_EQ(t(z, i, k), 0.0);
                    EXPECT_EQ(t(i, z, k), 0.0);
                }
    }
}

TEST(Jacobi, AllTablesSatisfyIdentity)
{
    for (const auto& t : all_tables()) {
        SCOPED_TRACE(std::string(to_string(t.name)));
        EXPECT_LE(jacobi_residual(t), 1e-13);
    }
}

TEST(Jacobi, AntisymmetryIsExact)
{
    for (const auto& t : all_tables())
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j)
                for (int k = 0; k < t.dim; ++k) ASSERT_EQ(t(i, j, k), -t(j, i, k));
}

TEST(Jacobi, CorruptedTableDetected)
{
    auto t = build_table(AlgebraName::NH_minus, true, {1, 1, 1.0});
    t.set(P1, H, K1, +1.0);
    EXPECT_GT(jacobi_residual(t), 0.5);
}

TEST(Contract, LargeSpeedMatchesNewtonHooke)
{
    const auto target = build_table(AlgebraName::NH_minus, false, {1, 1, 1.0});
    EXPECT_LE(max_deviation(contract(AlgebraName::dS_minus, 1e6, 1e6), target), 1e-11);
    const auto plus = build_table(AlgebraName::NH_plus, false, {1, 1, 1.0});
    EXPECT_LE(max_deviation(contract(AlgebraName::dS_plus, 1e6, 1e6), plus), 1e-11);
}

TEST(Contract, DeviationShrinksQuadratically)
{
    const auto target = build_table(AlgebraName::NH_minus, false, {1, 1, 1.0});
    const double d3 = max_deviation(contract(AlgebraName::dS_minus, 1e3, 1e3), target);
    const double d4 = max_deviation(contract(AlgebraName::dS_minus, 1e4, 1e4), target);
    EXPECT_NEAR(d3 / d4, 100.0, 1.0);
}

TEST(Contract, BoostBracketCarriesInverseSpeedSquared)
{
    const auto t = contract(AlgebraName::dS_minus, 1e3, 1e3);
    EXPECT_NEAR(t.bracket(K1, K2, J), -1e-6, 1e-18);
}

TEST(Contract, RejectsNonDeSitter) { EXPECT_THROW(contract(AlgebraName::Galilei, 1, 1), std::invalid_argument); }

TEST(Kirillov, ZeroPointHasRankZero)
{
    const auto T = build_table(AlgebraName::NH_minus, true);
    const auto K = kirillov_matrix(T, dual(0, 0, 0, 0, 0, 0, 0, 0));
    EXPECT_EQ(K.B.norm(), 0.0);
    EXPECT_EQ(rank(K), 0);
}

TEST(Kirillov, NullExtensionMomentumPointRankFour)
{
    const auto T = build_table(AlgebraName::NH_minus, true);
    EXPECT_EQ(rank(kirillov_matrix(T, dual(0, 0, 0, 1, 0, 0, 0, 0))), 4);
}

TEST(Kirillov, DegenerateStratumPointRankTwo)
{
    const auto T = build_table(AlgebraName::NH_minus, true);
    EXPECT_EQ(rank(kirillov_matrix(T, dual(1, 1, 0, 1, 0, 0, 1, 0))), 2);
}

TEST(Kirillov, GenericPointRankFour)
{
    const auto T = build_table(AlgebraName::NH_minus, true);
    EXPECT_EQ(rank(kirillov_matrix(T, dual(2, 1, 0.3, 0.2, -0.5, 0.7, 0.1, 0.4))), 4);
}

TEST(Kirillov, ClassIPointRankTwo)
{
    // k = tau perp(p) with f = m = 0
    const auto T = build_table(AlgebraName::NH_minus, true);
    EXPECT_EQ(rank(kirillov_matrix(T, dual(0, 0, 0.2, 0.6, 0.3, -0.3, 0.6, 0.1))), 2);
}

TEST(Kirillov, RequiresExtendedTable)
{
    EXPECT_THROW(kirillov_matrix(build_table(AlgebraName::NH_minus, false), {}), std::invalid_argument);
}

TEST(KirillovProperty, AntisymmetricWithEvenRank)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    const auto T = build_table(AlgebraName::NH_minus, true, {1, 1, 0.7});
    for (int s = 0; s < 500; ++s) {
        std::array<double, 8> xi;
        for (auto& x : xi) x = u(rng);
        if (s % 3 == 0) xi[0] = xi[1] = 0.0;
        const auto K = kirillov_matrix(T, xi);
        ASSERT_EQ((K.B + K.B.transpose()).norm(), 0.0);
        ASSERT_EQ(rank(K) % 2, 0);
    }
}

TEST(TableJson, RoundTripPreservesBrackets)
{
    for (const auto& t : all_tables()) {
        const auto back = table_from_json(to_json(t));
        EXPECT_EQ(back.name, t.name);
        EXPECT_EQ(back.dim, t.dim);
        EXPECT_EQ(max_deviation(back, t), 0.0);
    }
}

TEST(TableJson, ListsUpperTriangleOnly)
{
    const auto j = to_json(build_table(AlgebraName::NH_minus, true));
    for (const auto& b : j["brackets"]) EXPECT_LT(b["i"].get<int>(), b["j"].get<int>());
    EXPECT_EQ(j["params"]["tau"], 1.0);
}

TEST(TableJson, RejectsBadIndex)
{
    json j = to_json(build_table(AlgebraName::Galilei, false));
    j["brackets"].push_back({{"i", 0}, {"j", 9}, {"k", 1}, {"value", 1.0}});
    EXPECT_THROW(table_from_json(j), SchemaError);
}

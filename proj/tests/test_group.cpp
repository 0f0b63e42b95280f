#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <nhkit/group.hpp>
#include <nhkit/io.hpp>

using namespace nhkit;

namespace {

constexpr double pi = std::numbers::pi;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t s) : g(s) {}
    double u(double r) { return std::uniform_real_distribution<double>(-r, r)(g); }
    GroupElementd element(double tau, Variant var, double r = 2.0)
    {
        auto e = GroupElementd::identity(tau, var);
        e.alpha = u(r);
        e.theta = u(r);
        e.b = u(r);
        e.a = {u(r), u(r)};
        e.v = {u(r), u(r)};
        e.phi = u(r);
        return e;
    }
};

GroupElementd make(double b, Vec2d a, Vec2d v, double phi, double tau = 1.0)
{
    auto g = GroupElementd::identity(tau);
    g.b = b;
    g.a = a;
    g.v = v;
    g.phi = phi;
    return g;
}

}  // namespace

TEST(Compose, IdentityIsNeutral)
{
    Rng R(1);
    for (const auto var : {Variant::Oscillating, Variant::Expanding}) {
        const auto g = R.element(1.3, var);
        const auto e = GroupElementd::identity(1.3, var);
        EXPECT_EQ(distance(compose(e, g), g), 0.0);
        EXPECT_LE(distance(compose(g, e), g), 1e-15);
    }
}

TEST(Compose, TimeThenTranslationGolden)
{
    const auto T = make(pi / 2, {}, {}, 0), A = make(0, {1, 0}, {}, 0);
    const auto ta = compose(T, A);
    EXPECT_NEAR(ta.b, pi / 2, 1e-15);
    EXPECT_NEAR(ta.a.x1, 1.0, 1e-15);
    EXPECT_NEAR(ta.a.x2, 0.0, 1e-15);
    EXPECT_NEAR(std::hypot(ta.v.x1, ta.v.x2), 0.0, 1e-15);
    EXPECT_NEAR(ta.alpha, 0.0, 1e-15);
    EXPECT_NEAR(ta.theta, 0.0, 1e-15);
    // the translation transported through a quarter period turns into a boost
    const auto at = compose(A, T);
    EXPECT_NEAR(at.b, pi / 2, 1e-15);
    EXPECT_NEAR(std::hypot(at.a.x1, at.a.x2), 0.0, 1e-15);
    EXPECT_NEAR(at.v.x1, -1.0, 1e-15);
    EXPECT_NEAR(at.v.x2, 0.0, 1e-15);
    EXPECT_NEAR(at.theta, 0.0, 1e-15);
}

TEST(Compose, BoostsCommuteUpToCocycle)
{
    // [K1, K2] = F: two orthogonal boosts differ by an alpha phase
    const auto B1 = make(0, {}, {1, 0}, 0), B2 = make(0, {}, {0, 1}, 0);
    const auto x = compose(B1, B2), y = compose(B2, B1);
    EXPECT_NEAR(x.alpha - y.alpha, 1.0, 1e-15);
    EXPECT_NEAR(x.theta - y.theta, 0.0, 1e-15);
}

TEST(Compose, MismatchRejected)
{
    const auto g = GroupElementd::identity(1.0), h = GroupElementd::identity(2.0);
    EXPECT_THROW(compose(g, h), std::invalid_argument);
    EXPECT_THROW(compose(g, GroupElementd::identity(1.0, Variant::Expanding)), std::invalid_argument);
}

TEST(Inverse, IdentityAndBoostGolden)
{
    EXPECT_EQ(distance(inverse(GroupElementd::identity()), GroupElementd::identity()), 0.0);
    const auto g = make(0, {}, {1, 0}, 0);
    const auto gi = inverse(g);
    EXPECT_EQ(gi.theta, 0.0);
    EXPECT_EQ(gi.v.x1, -1.0);
    EXPECT_EQ(gi.a.x1, 0.0);
    EXPECT_EQ(gi.b, 0.0);
}

TEST(ActSpacetime, BoostAtQuarterPeriod)
{
    const auto [t, x] = act_spacetime(make(0, {}, {1, 0}, 0), pi / 2, Vec2d{0, 0});
    EXPECT_DOUBLE_EQ(t, pi / 2);
    EXPECT_NEAR(x.x1, 1.0, 1e-15);
    EXPECT_NEAR(x.x2, 0.0, 1e-15);
}

TEST(ActSpacetime, IdentityAndCentralParametersActTrivially)
{
    Rng R(3);
    for (const auto var : {Variant::Oscillating, Variant::Expanding})
        for (int s = 0; s < 100; ++s) {
            const auto g = R.element(0.8, var);
            const double t = R.u(2);
            const Vec2d x{R.u(2), R.u(2)};
            const auto [t0, x0] = act_spacetime(GroupElementd::identity(0.8, var), t, x);
            EXPECT_EQ(t0, t);
            EXPECT_EQ(x0, x);
            const auto [t1, x1] = act_spacetime(g, t, x);
            const auto [t2, x2] = act_spacetime(g.unextended(), t, x);
            EXPECT_EQ(t1, t2);
            EXPECT_EQ(x1, x2);
        }
}

class GroupProperty : public ::testing::TestWithParam<std::tuple<Variant, double>> {};

TEST_P(GroupProperty, Associativity)
{
    const auto [var, tau] = GetParam();
    Rng R(11);
    for (int s = 0; s < 2000; ++s) {
        const auto g1 = R.element(tau, var), g2 = R.element(tau, var), g3 = R.element(tau, var);
        const double tolerance = var == Variant::Oscillating ? 1e-10 : 1e-6;
        ASSERT_LE(distance(compose(compose(g1, g2), g3), compose(g1, compose(g2, g3)), true), tolerance);
    }
}

TEST_P(GroupProperty, LongDoubleAssociativity)
{
    const auto [var, tau] = GetParam();
    Rng R(12);
    for (int s = 0; s < 500; ++s) {
        auto cast = [](const GroupElementd& g) {
            GroupElement<long double> h;
            h.alpha = g.alpha;
            h.theta = g.theta;
            h.b = g.b;
            h.a = {g.a.x1, g.a.x2};
            h.v = {g.v.x1, g.v.x2};
            h.phi = g.phi;
            h.tau = g.tau;
            h.variant = g.variant;
            return h;
        };
        const auto g1 = cast(R.element(tau, var)), g2 = cast(R.element(tau, var)), g3 = cast(R.element(tau, var));
        ASSERT_LE(static_cast<double>(distance(compose(compose(g1, g2), g3), compose(g1, compose(g2, g3)), true)), 1e-10);
        ASSERT_LE(static_cast<double>(distance(compose(g1, inverse(g1)), GroupElement<long double>::identity(g1.tau, var))), 1e-12);
        ASSERT_LE(static_cast<double>(distance(inverse(inverse(g1)), g1, true)), 1e-12);
    }
}

TEST_P(GroupProperty, InverseAxioms)
{
    const auto [var, tau] = GetParam();
    Rng R(13);
    const auto e = GroupElementd::identity(tau, var);
    const double tolerance = var == Variant::Oscillating ? 1e-12 : 1e-6;
    for (int s = 0; s < 2000; ++s) {
        const auto g = R.element(tau, var);
        ASSERT_LE(distance(compose(g, inverse(g)), e), tolerance);
        ASSERT_LE(distance(compose(inverse(g), g), e), tolerance);
        ASSERT_LE(distance(inverse(inverse(g)), g), tolerance);
    }
}

TEST_P(GroupProperty, UnextendedProjectionIsHomomorphism)
{
    const auto [var, tau] = GetParam();
    Rng R(14);
    for (int s = 0; s < 1000; ++s) {
        const auto g1 = R.element(tau, var), g2 = R.element(tau, var);
        ASSERT_LE(distance(compose(g1, g2).unextended(), compose(g1.unextended(), g2.unextended()).unextended(), true), 1e-12);
    }
}

TEST_P(GroupProperty, LeftAction)
{
    const auto [var, tau] = GetParam();
    Rng R(15);
    for (int s = 0; s < 2000; ++s) {
        const auto g1 = R.element(tau, var), g2 = R.element(tau, var);
        const double t = R.u(2);
        const Vec2d x{R.u(2), R.u(2)};
        const auto [ta, xa] = act_spacetime(g2, t, x);
        const auto [tb, xb] = act_spacetime(g1, ta, xa);
        const auto [tc, xc] = act_spacetime(compose(g1, g2), t, x);
        const double scale = std::fmax(1.0, std::sqrt(norm2(xc)));
        ASSERT_NEAR(tb, tc, 1e-12);
        ASSERT_LE(std::sqrt(norm2(xb - xc)) / scale, 1e-11);
    }
}

INSTANTIATE_TEST_SUITE_P(Variants, GroupProperty,
                         ::testing::Combine(::testing::Values(Variant::Oscillating, Variant::Expanding),
                                            ::testing::Values(0.5, 1.0, 2.0)));

TEST(OneParameter, SubgroupsAdd)
{
    for (int gen = 0; gen < 8; ++gen) {
        const auto x = compose(one_parameter<double>(gen, 0.3, 1.2), one_parameter<double>(gen, 0.5, 1.2));
        EXPECT_LE(distance(x, one_parameter<double>(gen, 0.8, 1.2)), 1e-15) << gen;
    }
    EXPECT_THROW(one_parameter<double>(8, 1.0), std::invalid_argument);
}

TEST(GroupJson, RoundTrip)
{
    Rng R(5);
    const auto g = R.element(0.7, Variant::Expanding);
    const auto back = group_element_from_json(to_json(g));
    EXPECT_EQ(distance(g, back), 0.0);
    EXPECT_EQ(back.variant, Variant::Expanding);
    EXPECT_EQ(back.tau, 0.7);
    EXPECT_THROW(group_element_from_json(json{{"variant", "hyperbolic"}}), SchemaError);
    EXPECT_THROW(group_element_from_json(json{{"tau", -1.0}}), SchemaError);
}

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tatecm;
using tatecm::testing::P;
using tatecm::testing::polys;
using tatecm::testing::random_form;

TEST(Groebner, LinearForms)
{
    auto R = make_ring({"x", "y"});
    GroebnerBasis G = buchberger(polys(R, {"x+y", "x-y"}));
    ASSERT_EQ(G.generators().size(), 2u);
    EXPECT_TRUE(G.same_ideal(buchberger(polys(R, {"x", "y"}))));
}

TEST(Groebner, CofactorsReproduceBasis)
{
    auto R = make_ring({"x", "y", "z"});
    auto gens = polys(R, {"x^2 - y*z", "x*y - z^2", "y^2 - x*z"});
    GroebnerBasis G = buchberger(gens);
    for (std::size_t k = 0; k < G.generators().size(); ++k) {
        Polynomial sum(R);
        for (std::size_t i = 0; i < gens.size(); ++i)
            sum += G.cofactors()[k][i] * gens[i];
        EXPECT_EQ(sum, G.generators()[k]);
    }
    for (const auto& g : gens)
        EXPECT_TRUE(G.ideal_member(g));
    EXPECT_FALSE(G.ideal_member(P(R, "x*z")));
}

TEST(Groebner, NormalFormIsIdealInvariant)
{
    auto R = make_ring({"x", "y", "z"});
    std::mt19937 rng(3);
    auto gens = polys(R, {"x^2+y*z", "y^3-x*z^2"});
    GroebnerBasis G = buchberger(gens);
    for (int k = 0; k < 50; ++k) {
        Polynomial a = random_form(R, 4, rng);
        Polynomial shifted = a + random_form(R, 2, rng) * gens[0] + random_form(R, 1, rng) * gens[1];
        EXPECT_EQ(G.normal_form(a), G.normal_form(shifted));
    }
}

TEST(Groebner, QuotientDegreeBasis)
{
    auto R = make_ring({"x", "y"});
    GroebnerBasis G = buchberger(polys(R, {"x^2", "y^2"}));
    const auto& b2 = G.degree_basis(2);
    ASSERT_EQ(b2.size(), 1u);
    EXPECT_EQ(Polynomial::monomial(R, b2.monomials[0]), P(R, "x*y"));
    EXPECT_EQ(G.degree_basis(3).size(), 0u);
    EXPECT_EQ(G.degree_basis(1).size(), 2u);
}

TEST(Groebner, LiftThrough)
{
    auto R = make_ring({"x", "y"});
    auto q = lift_through(P(R, "x^4 + x^2*y^2"), polys(R, {"x^2", "y^2"}));
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[0], P(R, "x^2 + y^2"));
    EXPECT_TRUE(q[1].is_zero());
    try {
        lift_through(P(R, "x*y"), polys(R, {"x^2", "y^2"}));
        FAIL() << "expected NotInIdeal";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInIdeal);
    }
}

TEST(Groebner, LiftThroughRandom)
{
    auto R = make_ring({"x", "y", "z"});
    std::mt19937 rng(5);
    auto f = polys(R, {"x^2 - y*z", "y^2", "z^3 + x*y*z"});
    for (int k = 0; k < 30; ++k) {
        Polynomial g = random_form(R, 2, rng) * f[0] + random_form(R, 2, rng) * f[1] + random_form(R, 1, rng) * f[2];
        if (g.is_zero())
            continue;
        auto q = lift_through(g, f);
        Polynomial sum(R);
        for (std::size_t i = 0; i < f.size(); ++i)
            sum += q[i] * f[i];
        EXPECT_EQ(sum, g);
    }
}

TEST(Groebner, RegularSequences)
{
    auto R = make_ring({"x", "y", "z"});
    EXPECT_TRUE(is_regular_sequence(polys(R, {"x^2", "y^2", "z^2"})));
    EXPECT_TRUE(is_regular_sequence(polys(R, {"x*y", "x+y"})));
    EXPECT_FALSE(is_regular_sequence(polys(R, {"x*y", "x*z"})));
    EXPECT_EQ(krull_dimension(buchberger(polys(R, {"x*y", "x*z"}))), 2);
}

#include <gtest/gtest.h>

#include "support.hpp"
#include "tatecm/shamash.hpp"

using namespace tatecm;
using tatecm::testing::P;
using tatecm::testing::polys;

TEST(Shamash, DividedPowerBasis)
{
    auto b = divided_power_basis(2, 2);
    EXPECT_EQ(b, (std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}}));
    EXPECT_EQ(divided_power_basis(3, 3).size(), 10u);
}

TEST(Shamash, ResidueFieldOfCompleteIntersection)
{
    auto R = make_ring({"x", "y"});
    auto F = es_resolution(polys(R, {"x", "y"}), polys(R, {"x^2", "y^2"}), std::nullopt, 6);
    EXPECT_EQ(F.complex.ranks(), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7}));
    auto cert = verify_resolution(F, 8);
    EXPECT_TRUE(cert.ok()) << cert.failure;
    EXPECT_TRUE(cert.minimal);
}

TEST(Shamash, InstanceC)
{
    auto R = make_ring({"x", "y", "z"});
    std::vector<std::vector<Polynomial>> A{polys(R, {"x", "0"}), polys(R, {"0", "y"}), polys(R, {"0", "0"})};
    auto F = es_resolution(polys(R, {"x^2", "y^2", "z^2"}), polys(R, {"x^3", "y^3"}), A, 6);
    auto cert = verify_resolution(F, 12);
    EXPECT_TRUE(cert.ok()) << cert.failure;
    EXPECT_TRUE(cert.minimal);
}

TEST(Shamash, Hypersurface)
{
    auto R = make_ring({"x", "y"});
    auto F = es_resolution(polys(R, {"x", "y"}), polys(R, {"x^2+y^2"}), std::nullopt, 6);
    EXPECT_EQ(F.complex.ranks(), (std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2}));
    EXPECT_TRUE(verify_resolution(F, 8).ok());
}

TEST(Shamash, LengthZero)
{
    auto R = make_ring({"x", "y"});
    auto F = es_resolution(polys(R, {"x", "y"}), polys(R, {"x^2"}), std::nullopt, 0);
    EXPECT_EQ(F.complex.ranks(), (std::vector<std::size_t>{1}));
}

TEST(Shamash, KoszulLayerIsKoszulComplex)
{
    auto R = make_ring({"x", "y", "z"});
    auto F = es_resolution(polys(R, {"x^2", "y^2", "z^2"}), polys(R, {"x^3", "y^3"}), std::nullopt, 4);
    ChainComplex K = koszul_complex(F.lift.f, F.complex.over());
    for (int i = 1; i <= 3; ++i) {
        auto rows = F.koszul_layer(i - 1), cols = F.koszul_layer(i);
        EXPECT_EQ(F.complex.diff(i).submatrix(rows, cols), K.diff(i));
    }
}

TEST(Shamash, SabotageDetected)
{
    auto R = make_ring({"x", "y"});
    auto F = es_resolution(polys(R, {"x", "y"}), polys(R, {"x^2", "y^2"}), std::nullopt, 4);
    // drop the vertical part of d_2
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    for (int i = 0; i <= 4; ++i) {
        terms.push_back(F.complex.term(i));
        if (i > 0)
            diffs.push_back(F.complex.diff(i));
    }
    auto cols = F.koszul_layer(2);
    for (std::size_t c = 0; c < diffs[1].cols(); ++c)
        if (std::find(cols.begin(), cols.end(), c) == cols.end())
            for (std::size_t r = 0; r < diffs[1].rows(); ++r)
                diffs[1].set_reduced(r, c, Polynomial(R));
    try {
        make_complex(F.complex.over(), 0, terms, diffs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAComplex);
    }
}

TEST(Shamash, Rejections)
{
    auto R = make_ring({"x", "y"});
    auto kind = [&](std::vector<std::string> f, std::vector<std::string> g) {
        try {
            es_resolution(polys(R, f), polys(R, g), std::nullopt, 2);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::FormatError;
    };
    EXPECT_EQ(kind({"x", "y"}, {"x*y", "x^2"}), ErrorKind::NotRegular);
    EXPECT_EQ(kind({"x^2", "y"}, {"x"}), ErrorKind::ContainmentFails);
    EXPECT_EQ(kind({"x*y", "x^2"}, {"x^2"}), ErrorKind::NotRegular);
}

#include <gtest/gtest.h>

#include "support.hpp"
#include "tatecm/harness.hpp"
#include "tatecm/oracle.hpp"
#include "tatecm/serialize.hpp"

using namespace tatecm;
using nlohmann::json;
using tatecm::testing::polys;

namespace {

std::string data(const std::string& name)
{
    return std::string(TATECM_DATA_DIR) + "/" + name;
}

const json& built_t()
{
    static const json doc = run_build(load_instance(data("instance_t.json")));
    return doc;
}

}  // namespace

TEST(Serialize, RoundTripIsExact)
{
    const json& cj = built_t().at("complex");
    ChainComplex C = complex_from_json(cj);
    EXPECT_EQ(complex_to_json(C).dump(), cj.dump());

    auto R = make_ring({"x", "y", "z"});
    ChainComplex K = koszul_complex(polys(R, {"x^2", "y^2", "-3*z^2+x*y"}), polynomial_base(R));
    ChainComplex back = complex_from_json(complex_to_json(K));
    for (int i = 1; i <= 3; ++i)
        EXPECT_EQ(back.diff(i), K.diff(i));
    EXPECT_EQ(back.betti(), K.betti());
}

TEST(Serialize, RejectsDamagedShape)
{
    json cj = built_t().at("complex");
    cj["differentials"][0]["entries"].push_back(json::array({"x"}));
    EXPECT_THROW(complex_from_json(cj), Error);
    json missing = built_t().at("complex");
    missing.erase("lo");
    EXPECT_THROW(complex_from_json(missing), Error);
}

TEST(Instance, RejectsUnknownField)
{
    json j = load_json(data("instance_t.json"));
    j["extra"] = 1;
    try {
        parse_instance(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FormatError);
        EXPECT_EQ(exit_code_for(e.kind()), 4);
    }
}

TEST(Instance, NotInIdeal)
{
    try {
        run_build(load_instance(data("not_in_ideal.json")));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInIdeal);
        EXPECT_EQ(exit_code_for(e.kind()), 2);
    }
}

TEST(Build, InstanceT)
{
    const json& doc = built_t();
    EXPECT_TRUE(doc.at("certificates").at("ok").get<bool>());
    EXPECT_EQ(doc.at("phi")[0].at("entries")[0][0].get<std::string>(), "x*y");
    BettiTable b = betti_from_json(doc.at("betti"));
    std::vector<std::size_t> ranks;
    for (const auto& [i, d] : b)
        ranks.push_back(d.size());
    EXPECT_EQ(ranks, (std::vector<std::size_t>{4, 3, 2, 1, 1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(doc.at("mcm").at("generators").get<int>(), 1);
}

TEST(Build, Deterministic)
{
    const auto inst = load_instance(data("instance_c.json"));
    EXPECT_EQ(run_build(inst).dump(1), run_build(inst).dump(1));
}

TEST(Verify, PassesOnBuiltComplex)
{
    VerifyReport rep = run_verify(built_t());
    EXPECT_TRUE(rep.ok()) << rep.text();
    // both ends of the window are open
    EXPECT_NE(rep.text().find("WindowEdge"), std::string::npos);
}

TEST(Verify, CorruptedEntryHasWitness)
{
    json doc = built_t();
    doc["complex"]["differentials"][5]["entries"][0][0] = "x+y";
    VerifyReport rep = run_verify(doc);
    EXPECT_FALSE(rep.ok());
    EXPECT_NE(rep.text().find("FAIL  d^2 = 0"), std::string::npos) << rep.text();
    EXPECT_NE(rep.text().find("entry ("), std::string::npos);
}

TEST(Verify, UnitEntryIsNotMinimal)
{
    auto R = make_ring({"x"});
    BaseRing S = polynomial_base(R);
    GradedFreeModule a{S, {0}, {}};
    ChainComplex C = make_complex(S, 0, {a, a}, {tatecm::testing::matrix(a, a, {{"1"}})});
    VerifyReport rep = run_verify(complex_to_json(C));
    EXPECT_FALSE(rep.ok());
    EXPECT_NE(rep.text().find("FAIL  minimal"), std::string::npos);
}

TEST(Oracle, Koszul)
{
    auto R = make_ring({"x", "y"});
    json K = complex_to_json(koszul_complex(polys(R, {"x", "y"}), polynomial_base(R)));
    for (int d = 0; d <= 4; ++d)
        EXPECT_EQ(oracle_homology(K, 1, d), 0);
    EXPECT_EQ(oracle_homology(K, 0, 0), 1);
    EXPECT_EQ(oracle_homology(K, 0, 1), 0);

    auto R3 = make_ring({"x", "y", "z"});
    json K3 = complex_to_json(koszul_complex(polys(R3, {"x^2", "y^2", "z^2"}), polynomial_base(R3)));
    EXPECT_EQ(oracle_homology(K3, 0, 2), 3);
    EXPECT_EQ(oracle_homology(K3, 0, 3), 1);
}

TEST(Oracle, AgreesWithSparsePath)
{
    for (const char* name : {"instance_t.json", "instance_c.json", "hypersurface.json"}) {
        const json doc = run_build(load_instance(data(name)));
        const json& cj = doc.at("complex");
        ChainComplex C = complex_from_json(cj);
        DenseOracle oracle(cj);
        const int dmax = doc.at("certificates").at("dmax").get<int>();
        for (int i = C.lo() + 1; i < C.hi(); ++i) {
            const int dlo = degree_span(C, i, i).first;
            auto sparse = homology_dims(C, i, dlo, dmax);
            for (int d = dlo; d <= dmax; ++d)
                EXPECT_EQ(oracle.homology(i, d), sparse[static_cast<std::size_t>(d - dlo)]) << name << " " << i << " " << d;
        }
        EXPECT_THROW(oracle.homology(C.lo(), 0), Error);
    }
}

TEST(Oracle, SeesNonzeroHomology)
{
    auto R = make_ring({"x", "y"});
    BaseRing S = make_base_ring(polys(R, {"x*y"}));
    GradedFreeModule a{S, {0}, {}}, b{S, {1}, {}};
    ChainComplex C = make_complex(S, 0, {a, b}, {tatecm::testing::matrix(a, b, {{"x"}})});
    json cj = complex_to_json(C);
    for (int d = 0; d <= 4; ++d) {
        EXPECT_EQ(oracle_homology(cj, 0, d), homology_dim(C, 0, d)) << d;
        EXPECT_EQ(oracle_homology(cj, 1, d), homology_dim(C, 1, d)) << d;
    }
    EXPECT_EQ(oracle_homology(cj, 1, 2), 1);  // y in degree 2
}

TEST(Report, BettiLayout)
{
    BettiTable b{{0, {0}}, {1, {2, 2}}};
    const std::string t = format_betti(b);
    EXPECT_NE(t.find("total    1    2"), std::string::npos) << t;
    EXPECT_NE(t.find("1:    .    2"), std::string::npos) << t;
}

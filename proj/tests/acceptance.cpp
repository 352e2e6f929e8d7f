// Acceptance criteria, one pass/fail line each. With an argument only that criterion runs.
#include <climits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "tatecm/harness.hpp"
#include "tatecm/homotopy.hpp"
#include "tatecm/oracle.hpp"
#include "tatecm/serialize.hpp"

using namespace tatecm;
using nlohmann::json;
using tatecm::testing::polys;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string data(const std::string& name)
{
    return std::string(TATECM_DATA_DIR) + "/" + name;
}

const std::vector<std::string> kInstances{"instance_t.json", "instance_c.json", "hypersurface.json",
                                          "squares_5_2.json", "squares_4_1.json"};

struct Built {
    ShamashResolution F;
    TateResolution T;
};

Built build_from(const std::string& file, std::optional<std::pair<int, int>> window = std::nullopt)
{
    const ProblemInstance inst = load_instance(data(file));
    RingPtr R = make_ring(inst.variables, inst.field_char);
    std::vector<Polynomial> f, g;
    for (const auto& s : inst.f)
        f.push_back(parse_polynomial(s, R));
    for (const auto& s : inst.g)
        g.push_back(parse_polynomial(s, R));
    std::optional<std::vector<std::vector<Polynomial>>> A;
    if (inst.A) {
        A.emplace();
        for (const auto& row : *inst.A)
            A->push_back(polys(R, row));
    }
    const int lo = window ? window->first : inst.window_lo;
    const int hi = window ? window->second : inst.window_hi;
    const int m = static_cast<int>(f.size() - g.size());
    auto F = es_resolution(f, g, A, required_length(m, lo, hi));
    auto T = tate_splice(F, lo, hi, inst.max_internal_degree.value_or(12));
    return {std::move(F), std::move(T)};
}

std::string ranks_string(const std::vector<std::size_t>& r)
{
    std::ostringstream out;
    for (std::size_t k = 0; k < r.size(); ++k)
        out << (k ? "," : "") << r[k];
    return out.str();
}

// Dense and sparse homology vanish on the interior of C up to dmax.
Outcome interior_exact(const ChainComplex& C, int dmax, const std::string& what)
{
    if (auto fail = acyclicity_failure(C, C.lo(), C.hi(), dmax))
        return {false, what + ": sparse H_" + std::to_string(fail->first) + " nonzero in degree " +
                           std::to_string(fail->second)};
    DenseOracle oracle(complex_to_json(C));
    for (int i = C.lo() + 1; i < C.hi(); ++i)
        for (int d = degree_span(C, i, i).first; d <= dmax; ++d)
            if (oracle.homology(i, d) != 0)
                return {false, what + ": dense H_" + std::to_string(i) + " nonzero in degree " + std::to_string(d)};
    return {};
}

Outcome example_one()
{
    Built b = build_from("instance_t.json");
    const auto& T = b.T;
    Outcome out;
    const std::string entry = T.phi.at(0)(0, 0).to_string();
    if (entry != "x*y")
        return {false, "splice entry " + entry};
    const std::vector<std::size_t> want{4, 3, 2, 1, 1, 2, 3, 4, 5, 6};
    if (T.minimal.ranks() != want)
        return {false, "ranks " + ranks_string(T.minimal.ranks())};
    const int dmax = T.cert.dmax;
    if (auto r = interior_exact(T.minimal, dmax, "T"); !r.ok)
        return r;
    const ChainComplex Tstar = dual(T.minimal);
    const auto span = degree_span(Tstar, Tstar.lo(), Tstar.hi());
    if (auto r = interior_exact(Tstar, span.second + 2, "Hom(T,R)"); !r.ok)
        return r;
    return {true, "entry x*y, ranks " + ranks_string(want) + ", T and Hom(T,R) exact (sparse and dense)"};
}

Outcome generator_count()
{
    const std::vector<std::pair<std::string, std::pair<int, int>>> cases{
        {"instance_c.json", {3, 2}}, {"squares_5_2.json", {5, 2}}, {"squares_4_1.json", {4, 1}}};
    const std::vector<long> expected{1, 3, 2};
    Outcome out;
    std::ostringstream detail;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto [n, c] = cases[k].second;
        const long formula = mcm_generator_count(n, c);
        const json doc = run_build(load_instance(data(cases[k].first)));
        const long built = doc.at("mcm").at("generators").get<long>();
        detail << (k ? "; " : "") << "(" << n << "," << c << ") formula " << formula << " built " << built;
        if (formula != expected[k] || built != expected[k])
            out.ok = false;
    }
    out.detail = detail.str();
    return out;
}

Outcome sigma_certificate()
{
    std::ostringstream detail;
    for (const char* file : {"instance_t.json", "instance_c.json"}) {
        Built b = build_from(file, std::pair{-1, 1});
        const LiftMatrix& A = b.F.lift;
        HomotopySystem H = koszul_homotopies(koszul_complex(A.f, polynomial_base(A.f[0].ring())), A);
        SigmaCertificate cert = sigma_c_chain_map(H, make_base_ring(A.g), 10, true);
        if (!cert.ok())
            return {false, std::string(file) + ": chain map " + (cert.chain_map ? "yes" : "no") + ", H0->Hc iso " +
                               (cert.h0_hc_iso ? "yes" : "no")};
        detail << file << " ok ";
    }
    return {true, detail.str() + "(degrees <= 10)"};
}

Outcome tor_identity()
{
    auto R2 = make_ring({"x", "y"});
    auto R3 = make_ring({"x", "y", "z"});
    if (!tor_identity_check(polys(R2, {"x^2", "y^2"}), polys(R2, {"x", "y"}), 2, 10))
        return {false, "instance T"};
    if (!tor_identity_check(polys(R3, {"x^3", "y^3"}), polys(R3, {"x^2", "y^2", "z^2"}), 2, 10))
        return {false, "instance C"};
    // random monomial complete intersections J = (x^a, y^b, z^e), g = powers inside J
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> ex(1, 3), extra(0, 2);
    const int a = ex(rng), b = ex(rng), e = ex(rng);
    auto pw = [](const std::string& v, int k) { return v + "^" + std::to_string(k); };
    std::vector<std::string> J{pw("x", a), pw("y", b), pw("z", e)};
    std::vector<std::string> g{pw("x", a + extra(rng)), pw("y", b + extra(rng))};
    if (!tor_identity_check(polys(R3, g), polys(R3, J), 2, 10))
        return {false, "random monomial instance J=(" + J[0] + "," + J[1] + "," + J[2] + ")"};
    return {true, "T, C and J=(" + J[0] + "," + J[1] + "," + J[2] + "), g=(" + g[0] + "," + g[1] + ")"};
}

Outcome hypersurface()
{
    Built b = build_from("hypersurface.json");
    const ChainComplex& T = b.T.minimal;
    const Polynomial& g = b.F.lift.g[0];
    if (!two_periodic(T, 2, T.hi()) || !two_periodic(T, T.lo(), -1))
        return {false, "not 2-periodic in the tails"};
    for (int i = T.lo() + 1; i < T.hi(); ++i) {
        if (i >= -1 && i <= 1)
            continue;  // products through the splice carry the signs of phi
        auto m = factorization_matrix(T, i, g);
        if (!m)
            return {false, "d_" + std::to_string(i) + " d_" + std::to_string(i + 1) + " is not a multiple of g"};
        for (std::size_t r = 0; r < m->size(); ++r)
            for (std::size_t c = 0; c < (*m)[r].size(); ++c)
                if ((*m)[r][c] != (r == c ? 1 : 0))
                    return {false, "d_" + std::to_string(i) + " d_" + std::to_string(i + 1) + " is not g times identity"};
    }
    return {true, "2-periodic, d_i d_{i+1} = g*id for i <= -2 and i >= 2"};
}

Outcome minimality()
{
    std::ostringstream detail;
    for (const auto& file : kInstances) {
        Built b = build_from(file);
        // I in mJ: every lift entry lies in the maximal ideal
        bool contained = true;
        for (const auto& row : b.F.lift.A)
            for (const auto& a : row)
                contained = contained && a.constant_term() == 0;
        if (!contained)
            continue;
        if (!b.T.cert.minimal_before) {
            const auto& w = *b.T.cert.unit_witness;
            return {false, file + ": unit at d_" + std::to_string(w.position) + " (" + std::to_string(w.row) + "," +
                               std::to_string(w.col) + ") = " + w.entry};
        }
        detail << file << " ";
    }
    return {true, "no unit entries before minimization: " + detail.str()};
}

Outcome duality()
{
    std::ostringstream detail;
    for (const char* file : {"instance_t.json", "instance_c.json"}) {
        Built b = build_from(file, std::pair{-4, 4});
        const int m = b.T.m;
        const int lo = -4 + m - 1, hi = 4 + m - 1;
        const int L = std::max(hi, 0) + 1;
        ShamashResolution G = es_resolution(b.F.lift, b.F.complex.over(), std::max(L, required_length(m, lo, hi)));
        TateResolution Tv = general_splice(G.complex, G.complex, m, lo, hi, b.T.cert.dmax);
        if (!Tv.cert.ok())
            return {false, std::string(file) + ": dual splice fails its certificates"};
        BettiTable db = dual_betti(b.T.minimal, m);
        int ilo = INT_MAX, ihi = INT_MIN;
        for (const auto& [i, d] : db) {
            ilo = std::min(ilo, i);
            ihi = std::max(ihi, i);
        }
        auto s = betti_shift(db, Tv.minimal.betti(), ilo, ihi);
        if (!s)
            return {false, std::string(file) + ": Betti tables differ on positions " + std::to_string(ilo) + ".." +
                               std::to_string(ihi)};
        detail << file << " (internal shift " << *s << ") ";
    }
    return {true, detail.str()};
}

Outcome orthogonality()
{
    std::mt19937 rng(99);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{3, 2}, {4, 2}, {4, 3}};
    for (int trial = 0; trial < 20; ++trial) {
        const auto [n, c] = shapes[static_cast<std::size_t>(trial) % shapes.size()];
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            names.push_back("x" + std::to_string(i + 1));
        LiftMatrix A = tatecm::testing::random_lift(make_ring(names), c, rng);
        validate_lift(A);
        if (!orthogonality_check(A))
            return {false, "trial " + std::to_string(trial)};
    }
    return {true, "20 random lifts"};
}

Outcome oracle_equivalence()
{
    long checked = 0;
    for (const auto& file : kInstances) {
        const json doc = run_build(load_instance(data(file)));
        const json& cj = doc.at("complex");
        ChainComplex C = complex_from_json(cj);
        DenseOracle oracle(cj);
        const int dmax = doc.at("certificates").at("dmax").get<int>();
        for (int i = C.lo() + 1; i < C.hi(); ++i) {
            const int dlo = degree_span(C, i, i).first;
            const auto sparse = homology_dims(C, i, dlo, dmax);
            for (int d = dlo; d <= dmax; ++d, ++checked)
                if (oracle.homology(i, d) != sparse[static_cast<std::size_t>(d - dlo)])
                    return {false, file + ": (" + std::to_string(i) + "," + std::to_string(d) + ")"};
        }
    }
    return {true, std::to_string(checked) + " (i,d) pairs over " + std::to_string(kInstances.size()) + " instances"};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path();
    for (const auto& file : kInstances) {
        const ProblemInstance inst = load_instance(data(file));
        const auto a = dir / ("tatecm_det_a_" + file), b = dir / ("tatecm_det_b_" + file);
        save_json(a.string(), run_build(inst));
        save_json(b.string(), run_build(inst));
        const bool same = slurp(a) == slurp(b);
        std::filesystem::remove(a);
        std::filesystem::remove(b);
        if (!same)
            return {false, file};
    }
    return {true, std::to_string(kInstances.size()) + " instances byte-identical"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"residue field over k[x,y]/(x^2,y^2)", example_one},
    {"MCM generator count", generator_count},
    {"sigma certificate", sigma_certificate},
    {"Tor identity", tor_identity},
    {"hypersurface matrix factorization", hypersurface},
    {"minimality under I in mJ", minimality},
    {"duality", duality},
    {"Cramer orthogonality", orthogonality},
    {"oracle equivalence", oracle_equivalence},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::size_t> which;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > static_cast<int>(kCriteria.size())) {
            std::cerr << "criterion must be 1.." << kCriteria.size() << '\n';
            return 2;
        }
        which.push_back(static_cast<std::size_t>(k - 1));
    } else {
        for (std::size_t k = 0; k < kCriteria.size(); ++k)
            which.push_back(k);
    }
    bool all = true;
    for (std::size_t k : which) {
        Outcome o;
        try {
            o = kCriteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.ok;
        std::cout << "criterion " << k + 1 << " " << (o.ok ? "PASS" : "FAIL") << "  " << kCriteria[k].first << ": "
                  << o.detail << std::endl;
    }
    return all ? 0 : 1;
}

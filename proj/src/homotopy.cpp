#include "tatecm/homotopy.hpp"

#include <algorithm>
#include <bit>

namespace tatecm {

namespace {

PolyMatrix scalar_map(const GradedFreeModule& m, const Polynomial& g, int degree)
{
    PolyMatrix out(m, m, degree);
    for (std::size_t j = 0; j < m.rank(); ++j)
        out.set(j, j, g);
    return out;
}

int degree_of(const Polynomial& g)
{
    if (g.is_zero() || !g.is_homogeneous())
        throw Error(ErrorKind::InhomogeneousInput, g.to_string() + " is not a nonzero form");
    return *g.total_degree();
}

}  // namespace

PolyMatrix HomotopySystem::component(std::size_t j, int i) const
{
    const int k = i - K.lo();
    if (k >= 0 && static_cast<std::size_t>(k) < tau.at(j).size())
        return tau[j][static_cast<std::size_t>(k)];
    return PolyMatrix(K.term(i + 1), K.term(i), degree_of(g.at(j)));
}

std::optional<EntryWitness> homotopy_witness(const ChainComplex& K, const Polynomial& g,
                                             const std::vector<PolyMatrix>& tau)
{
    const int e = degree_of(g);
    auto tau_at = [&](int i) {
        const int k = i - K.lo();
        if (k >= 0 && static_cast<std::size_t>(k) < tau.size())
            return tau[static_cast<std::size_t>(k)];
        return PolyMatrix(K.term(i + 1), K.term(i), e);
    };
    const int top = K.bounded_above() ? K.hi() : K.hi() - 1;
    for (int i = K.lo(); i <= top; ++i) {
        PolyMatrix lhs = K.diff(i + 1) * tau_at(i);
        if (i > K.lo() || K.bounded_below())
            lhs = lhs + tau_at(i - 1) * K.diff(i);
        PolyMatrix diff = lhs - scalar_map(K.term(i), g, e);
        if (auto w = diff.first_nonzero()) {
            w->position = i;
            return w;
        }
    }
    return std::nullopt;
}

std::vector<PolyMatrix> solve_homotopy(const ChainComplex& K, const Polynomial& g)
{
    const int e = degree_of(g);
    if (!K.bounded_below())
        throw Error(ErrorKind::InvalidArgument, "solve_homotopy needs a complex bounded below");
    std::vector<PolyMatrix> tau;
    for (int i = K.lo(); i < K.hi(); ++i) {
        PolyMatrix rhs = scalar_map(K.term(i), g, e);
        if (i > K.lo())
            rhs = rhs - tau.back() * K.diff(i);
        auto t = lift_through_map(K.diff(i + 1), rhs);
        if (!t)
            throw Error(ErrorKind::NoSolution, "no homotopy component on K_" + std::to_string(i) + " for " +
                                                   g.to_string());
        tau.push_back(std::move(*t));
    }
    if (auto w = homotopy_witness(K, g, tau))
        throw Error(ErrorKind::NoSolution, "homotopy identity fails on K_" + std::to_string(w->position) +
                                               " (window too short or " + g.to_string() + " not in the annihilator)");
    return tau;
}

HomotopySystem koszul_homotopies(const ChainComplex& K, const LiftMatrix& A)
{
    HomotopySystem H{K, A.g, {}, HomotopyProvenance::KoszulWedge};
    for (std::size_t j = 0; j < A.c(); ++j)
        H.tau.push_back(koszul_homotopy(K, A.f, A.g[j], A.column(j)));
    return H;
}

HomotopySystem solved_homotopies(const ChainComplex& K, const std::vector<Polynomial>& g)
{
    HomotopySystem H{K, g, {}, HomotopyProvenance::Solved};
    for (const auto& gj : g)
        H.tau.push_back(solve_homotopy(K, gj));
    return H;
}

PolyMatrix sigma_map(const HomotopySystem& H, Subset T, int i)
{
    PolyMatrix out = PolyMatrix::identity(H.K.term(i));
    int pos = i;
    for (int t = 31; t >= 0; --t) {
        if (!(T & (Subset{1} << t)))
            continue;
        out = H.component(static_cast<std::size_t>(t), pos) * out;
        ++pos;
    }
    return out;
}

SigmaCertificate sigma_c_chain_map(const HomotopySystem& H, const BaseRing& R, int dmax, bool report_only)
{
    const int c = static_cast<int>(H.g.size());
    if (c < 1 || H.K.hi() - H.K.lo() < c)
        throw Error(ErrorKind::InvalidArgument, "sigma_c needs 1 <= c <= length of the resolution");
    const Subset all = (Subset{1} << c) - 1;
    ChainComplex RK = H.K.change_ring(R);
    ChainComplex target = shift(RK, -c);
    SigmaCertificate cert;
    cert.dmax = dmax;
    cert.sigma.lo = RK.lo();
    cert.sigma.hi = RK.hi() - c;
    for (int i = cert.sigma.lo; i <= cert.sigma.hi; ++i)
        cert.sigma.comps.push_back(sigma_map(H, all, i).change_ring(R));
    auto check = is_chain_map(cert.sigma, RK, target);
    cert.chain_map = check.ok;
    cert.chain_witness = check.witness;
    if (!cert.chain_map) {
        if (report_only)
            return cert;
        const auto& w = *check.witness;
        throw Error(ErrorKind::ChainMapFails, "sigma_c square at position " + std::to_string(w.position) + " entry (" +
                                                  std::to_string(w.row) + "," + std::to_string(w.col) + ") = " + w.entry);
    }
    auto [dlo, dhi] = degree_span(RK, RK.lo(), RK.lo());
    cert.failing_degree = induced_iso_failure(cert.sigma.at(RK.lo()), RK, target, RK.lo(), dlo, std::max(dlo, dmax));
    cert.h0_hc_iso = !cert.failing_degree;
    if (!cert.h0_hc_iso && !report_only)
        throw Error(ErrorKind::H0HcNotIso, "H_0 -> H_c is not an isomorphism in degree " +
                                               std::to_string(*cert.failing_degree));
    return cert;
}

bool tor_identity_check(const std::vector<Polynomial>& g, const std::vector<Polynomial>& J, int slot, int dmax)
{
    const RingPtr& ring = g.at(0).ring();
    BaseRing M = make_base_ring(J);
    ChainComplex E = koszul_complex(g, polynomial_base(ring)).change_ring(M);
    const int c = static_cast<int>(g.size());
    int shift_deg = 0;
    for (const auto& gj : g)
        shift_deg += degree_of(gj);
    if (slot < 0 || slot > c)
        return false;
    for (int d = 0; d <= dmax; ++d) {
        const int tor = homology_dim(E, slot, d);
        const int md = d - shift_deg < 0 ? 0 : static_cast<int>(M->degree_basis(d - shift_deg).size());
        if (tor != md)
            return false;
    }
    return true;
}

bool koszul_self_duality(const ChainComplex& E)
{
    const std::size_t c = static_cast<std::size_t>(E.hi());
    // h_i : E_i -> (E_{c-i})^*, e_T -> sign(T, T^c) e*_{T^c}
    auto hodge = [&](std::size_t i) {
        const auto src = exterior_basis(c, i);
        const auto tgt = exterior_basis(c, c - i);
        std::vector<std::pair<std::size_t, int>> out;
        const Subset all = (Subset{1} << c) - 1;
        for (Subset T : src.subsets)
            out.emplace_back(static_cast<std::size_t>(tgt.index_of(all & ~T)), complement_sign(T, c));
        return out;
    };
    for (std::size_t i = 1; i <= c; ++i) {
        const PolyMatrix& d = E.diff_ref(static_cast<int>(i));                    // E_i -> E_{i-1}
        const PolyMatrix dt = E.diff_ref(static_cast<int>(c - i + 1)).transpose();  // E*_{c-i} -> E*_{c-i+1}
        const auto h_src = hodge(i), h_tgt = hodge(i - 1);
        int global = 0;
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t col = 0; col < d.cols(); ++col) {
                // (h d)(r', col) vs (dt h)(r', col) with r' = h_tgt(r)
                const Polynomial lhs = h_tgt[r].second > 0 ? d(r, col) : -d(r, col);
                const Polynomial rhs_raw = dt(h_tgt[r].first, h_src[col].first);
                const Polynomial rhs = h_src[col].second > 0 ? rhs_raw : -rhs_raw;
                if (lhs.is_zero() && rhs.is_zero())
                    continue;
                int s = 0;
                if (lhs == rhs)
                    s = 1;
                else if (lhs == -rhs)
                    s = -1;
                if (s == 0 || (global != 0 && s != global))
                    return false;
                global = s;
            }
    }
    return true;
}

}  // namespace tatecm

#include "tatecm/shamash.hpp"

#include <numeric>

namespace tatecm {

namespace {

void compositions(std::size_t c, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (cur.size() + 1 == c) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = 0; a <= k; ++a) {
        cur.push_back(a);
        compositions(c, k - a, cur, out);
        cur.pop_back();
    }
}

int degree_of(const Polynomial& p)
{
    return *p.total_degree();
}

}  // namespace

int ShamashGenerator::k() const noexcept
{
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

std::string ShamashGenerator::label() const
{
    std::string out = "y(";
    for (std::size_t j = 0; j < alpha.size(); ++j)
        out += (j ? "," : "") + std::to_string(alpha[j]);
    return out + ")" + subset_label(subset);
}

std::vector<std::vector<int>> divided_power_basis(std::size_t c, int k)
{
    std::vector<std::vector<int>> out;
    if (c == 0) {
        if (k == 0)
            out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    compositions(c, k, cur, out);
    return out;
}

std::vector<std::size_t> ShamashResolution::koszul_layer(int i) const
{
    std::vector<std::size_t> out;
    const auto& gens = generators.at(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (gens[j].k() == 0)
            out.push_back(j);
    return out;
}

ShamashResolution es_resolution(const LiftMatrix& lift, const BaseRing& R, int L)
{
    if (L < 0 || L > kMaxShamashLength)
        throw Error(ErrorKind::InvalidArgument, "resolution length must lie in [0, 40]");
    const std::size_t n = lift.n(), c = lift.c();
    std::vector<int> fdeg, gdeg;
    for (const auto& p : lift.f)
        fdeg.push_back(degree_of(p));
    for (const auto& p : lift.g)
        gdeg.push_back(degree_of(p));

    std::vector<std::vector<ShamashGenerator>> gens(static_cast<std::size_t>(L) + 1);
    std::vector<GradedFreeModule> terms;
    for (int i = 0; i <= L; ++i) {
        GradedFreeModule m{R, {}, {}};
        for (int k = 0; 2 * k <= i; ++k) {
            const int e = i - 2 * k;
            if (e > static_cast<int>(n))
                continue;
            const auto subsets = exterior_basis(n, static_cast<std::size_t>(e));
            for (const auto& alpha : divided_power_basis(c, k))
                for (Subset T : subsets.subsets) {
                    ShamashGenerator gen{alpha, T};
                    int deg = 0;
                    for (std::size_t j = 0; j < c; ++j)
                        deg += alpha[j] * gdeg[j];
                    for (std::size_t t = 0; t < n; ++t)
                        if (T & (Subset{1} << t))
                            deg += fdeg[t];
                    m.degrees.push_back(deg);
                    m.labels.push_back(gen.label());
                    gens[static_cast<std::size_t>(i)].push_back(std::move(gen));
                }
        }
        terms.push_back(std::move(m));
    }

    std::vector<PolyMatrix> diffs;
    for (int i = 1; i <= L; ++i) {
        const auto& src = gens[static_cast<std::size_t>(i)];
        const auto& tgt = gens[static_cast<std::size_t>(i - 1)];
        auto find = [&](const std::vector<int>& alpha, Subset T) {
            for (std::size_t r = 0; r < tgt.size(); ++r)
                if (tgt[r].subset == T && tgt[r].alpha == alpha)
                    return r;
            throw Error(ErrorKind::ShapeError, "missing Shamash generator");
        };
        PolyMatrix d(terms[static_cast<std::size_t>(i - 1)], terms[static_cast<std::size_t>(i)], 0);
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto& [alpha, T] = src[col];
            // Koszul part y^(alpha) (x) delta(e_T)
            int s = 0;
            for (std::size_t t = 0; t < n; ++t) {
                if (!(T & (Subset{1} << t)))
                    continue;
                const std::size_t r = find(alpha, T & ~(Subset{1} << t));
                d.set(r, col, s % 2 == 0 ? lift.f[t] : -lift.f[t]);
                ++s;
            }
            // vertical part y^(alpha - e_j) (x) (a_j ^ e_T)
            for (std::size_t j = 0; j < c; ++j) {
                if (alpha[j] == 0)
                    continue;
                std::vector<int> lower = alpha;
                --lower[j];
                for (std::size_t t = 0; t < n; ++t) {
                    const Subset bit = Subset{1} << t;
                    if ((T & bit) || lift.A[t][j].is_zero())
                        continue;
                    const std::size_t r = find(lower, T | bit);
                    const int sign = wedge_sign(bit, T);
                    d.set(r, col, d(r, col) + (sign > 0 ? lift.A[t][j] : -lift.A[t][j]));
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    // Finite length is a truncation of an infinite resolution unless c = 0.
    ChainComplex C(R, 0, std::move(terms), std::move(diffs), true, c == 0 && L >= static_cast<int>(n));
    return ShamashResolution{std::move(C), lift, std::move(gens)};
}

ShamashResolution es_resolution(const std::vector<Polynomial>& f, const std::vector<Polynomial>& g,
                                const std::optional<std::vector<std::vector<Polynomial>>>& A, int L)
{
    if (f.empty() || g.empty())
        throw Error(ErrorKind::InvalidArgument, "f and g must be nonempty");
    if (!is_regular_sequence(f))
        throw Error(ErrorKind::NotRegular, "f is not a regular sequence");
    if (!is_regular_sequence(g))
        throw Error(ErrorKind::NotRegular, "g is not a regular sequence");
    GroebnerBasis J = buchberger(f);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (!J.ideal_member(g[j]))
            throw Error(ErrorKind::ContainmentFails, "g_" + std::to_string(j + 1) + " = " + g[j].to_string() +
                                                         " is not in (f)");
    LiftMatrix lift = A ? LiftMatrix{f, g, *A} : compute_lift(f, g);
    validate_lift(lift);
    return es_resolution(lift, make_base_ring(g), L);
}

ResolutionCertificate verify_resolution(const ShamashResolution& F, int dmax)
{
    ResolutionCertificate cert;
    const ChainComplex& C = F.complex;
    if (auto w = C.square_witness()) {
        cert.failure = "d^2 != 0 at position " + std::to_string(w->position);
        cert.witness = w;
        return cert;
    }
    cert.square_zero = true;
    cert.acyclic = true;
    for (int i = 1; i < C.hi() && cert.acyclic; ++i)
        for (int d = 0; d <= dmax; ++d)
            if (int h = homology_dim(C, i, d); h != 0) {
                cert.acyclic = false;
                cert.failure = "H_" + std::to_string(i) + " has dimension " + std::to_string(h) + " in degree " +
                               std::to_string(d);
                break;
            }
    GroebnerBasis J = buchberger(F.lift.f);
    cert.h0_matches = true;
    for (int d = 0; d <= dmax; ++d)
        if (homology_dim(C, 0, d) != static_cast<int>(J.degree_basis(d).size())) {
            cert.h0_matches = false;
            if (cert.failure.empty())
                cert.failure = "H_0 differs from S/(f) in degree " + std::to_string(d);
            break;
        }
    cert.minimal = true;
    for (int i = C.lo() + 1; i <= C.hi(); ++i)
        if (auto w = C.diff_ref(i).first_unit()) {
            cert.minimal = false;
            break;
        }
    return cert;
}

}  // namespace tatecm

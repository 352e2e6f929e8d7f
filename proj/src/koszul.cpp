#include "tatecm/koszul.hpp"

#include <algorithm>
#include <bit>

namespace tatecm {

namespace {

void enumerate_subsets(std::size_t n, std::size_t k, std::size_t start, Subset cur, std::vector<Subset>& out)
{
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t t = start; t + k <= n; ++t)
        enumerate_subsets(n, k - 1, t + 1, cur | (Subset{1} << t), out);
}

int subset_weight(Subset s, const std::vector<int>& fdeg)
{
    int w = 0;
    for (std::size_t t = 0; t < fdeg.size(); ++t)
        if (s & (Subset{1} << t))
            w += fdeg[t];
    return w;
}

std::vector<int> degrees_of(const std::vector<Polynomial>& f)
{
    std::vector<int> out;
    for (const auto& p : f) {
        if (p.is_zero() || !p.is_homogeneous())
            throw Error(ErrorKind::InhomogeneousInput, "Koszul input " + p.to_string() + " is not a nonzero form");
        out.push_back(*p.total_degree());
    }
    return out;
}

}  // namespace

long ExteriorBasis::index_of(Subset s) const
{
    // Lexicographic order of sorted tuples is not monotone in the bitmask, so search.
    auto it = std::find(subsets.begin(), subsets.end(), s);
    return it == subsets.end() ? -1 : it - subsets.begin();
}

ExteriorBasis exterior_basis(std::size_t n, std::size_t k)
{
    if (n > kMaxExteriorRank)
        throw Error(ErrorKind::InvalidArgument, "exterior rank above " + std::to_string(kMaxExteriorRank));
    ExteriorBasis b{n, k, {}};
    if (k <= n)
        enumerate_subsets(n, k, 0, 0, b.subsets);
    return b;
}

int wedge_sign(Subset a, Subset b) noexcept
{
    if (a & b)
        return 0;
    int inversions = 0;
    for (Subset rest = b; rest; rest &= rest - 1) {
        const int t = std::countr_zero(rest);
        const Subset above = t >= 31 ? 0 : ~((Subset{2} << t) - 1);
        inversions += std::popcount(a & above);
    }
    return inversions % 2 ? -1 : 1;
}

int complement_sign(Subset t, std::size_t n) noexcept
{
    const Subset all = n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1;
    return wedge_sign(t, all & ~t);
}

std::string subset_label(Subset s)
{
    std::string out = "e(";
    bool first = true;
    for (std::size_t t = 0; t < 32; ++t)
        if (s & (Subset{1} << t)) {
            if (!first)
                out += ",";
            out += std::to_string(t + 1);
            first = false;
        }
    return out + ")";
}

ExteriorVector ExteriorVector::wedge(const ExteriorVector& o) const
{
    ExteriorVector out{n, k + o.k, weight + o.weight, {}};
    for (const auto& [s, p] : coeffs)
        for (const auto& [t, q] : o.coeffs) {
            const int sign = wedge_sign(s, t);
            if (sign == 0)
                continue;
            Polynomial term = p * q;
            if (sign < 0)
                term = -term;
            auto it = out.coeffs.find(s | t);
            if (it == out.coeffs.end())
                out.coeffs.emplace(s | t, std::move(term));
            else
                it->second += term;
        }
    std::erase_if(out.coeffs, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

bool ExteriorVector::is_zero() const
{
    return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

ExteriorVector exterior_vector(const std::vector<Polynomial>& a, int weight)
{
    ExteriorVector v{a.size(), 1, weight, {}};
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            v.coeffs.emplace(Subset{1} << i, a[i]);
    return v;
}

ChainComplex koszul_complex(const std::vector<Polynomial>& f, const BaseRing& over)
{
    const std::size_t n = f.size();
    if (n > kMaxExteriorRank)
        throw Error(ErrorKind::InvalidArgument, "at most 24 Koszul generators");
    const auto fdeg = degrees_of(f);
    std::vector<GradedFreeModule> terms;
    std::vector<ExteriorBasis> bases;
    for (std::size_t k = 0; k <= n; ++k) {
        bases.push_back(exterior_basis(n, k));
        GradedFreeModule m{over, {}, {}};
        for (Subset s : bases.back().subsets) {
            m.degrees.push_back(subset_weight(s, fdeg));
            m.labels.push_back(subset_label(s));
        }
        terms.push_back(std::move(m));
    }
    std::vector<PolyMatrix> diffs;
    for (std::size_t k = 1; k <= n; ++k) {
        PolyMatrix d(terms[k - 1], terms[k], 0);
        for (std::size_t c = 0; c < bases[k].size(); ++c) {
            const Subset T = bases[k].subsets[c];
            int s = 0;
            for (std::size_t t = 0; t < n; ++t) {
                if (!(T & (Subset{1} << t)))
                    continue;
                const long r = bases[k - 1].index_of(T & ~(Subset{1} << t));
                d.set(static_cast<std::size_t>(r), c, s % 2 == 0 ? f[t] : -f[t]);
                ++s;
            }
        }
        diffs.push_back(std::move(d));
    }
    return ChainComplex(over, 0, std::move(terms), std::move(diffs), true, true);
}

PolyMatrix wedge_map(const ExteriorVector& v, std::size_t i, const ChainComplex& K)
{
    const std::size_t n = v.n;
    const auto src = exterior_basis(n, i);
    const auto tgt = exterior_basis(n, i + v.k);
    const GradedFreeModule source = K.term(static_cast<int>(i));
    const GradedFreeModule target = K.term(static_cast<int>(i + v.k));
    PolyMatrix W(target, source, v.weight);
    if (i + v.k > n)
        return W;
    for (std::size_t c = 0; c < src.size(); ++c)
        for (const auto& [s, p] : v.coeffs) {
            const int sign = wedge_sign(s, src.subsets[c]);
            if (sign == 0)
                continue;
            const auto r = static_cast<std::size_t>(tgt.index_of(s | src.subsets[c]));
            W.set(r, c, W(r, c) + (sign > 0 ? p : -p));
        }
    return W;
}

std::vector<PolyMatrix> koszul_homotopy(const ChainComplex& K, const std::vector<Polynomial>& f,
                                        const Polynomial& g, const std::vector<Polynomial>& a)
{
    if (a.size() != f.size())
        throw Error(ErrorKind::ShapeError, "coefficient vector length differs from f");
    Polynomial sum(g.ring());
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += a[i] * f[i];
    if (!(sum == g))
        throw Error(ErrorKind::LiftIdentityFails, "sum a_i f_i = " + sum.to_string() + " differs from " + g.to_string());
    const int weight = g.total_degree().value_or(0);
    ExteriorVector v = exterior_vector(a, weight);
    std::vector<PolyMatrix> tau;
    for (std::size_t i = 0; i < f.size(); ++i)
        tau.push_back(wedge_map(v, i, K));
    return tau;
}

std::vector<Polynomial> LiftMatrix::column(std::size_t j) const
{
    std::vector<Polynomial> out;
    for (const auto& row : A)
        out.push_back(row.at(j));
    return out;
}

ExteriorVector LiftMatrix::column_vector(std::size_t j) const
{
    return exterior_vector(column(j), *g.at(j).total_degree());
}

void validate_lift(const LiftMatrix& L)
{
    if (L.A.size() != L.n())
        throw Error(ErrorKind::ShapeError, "A needs one row per f");
    for (const auto& row : L.A)
        if (row.size() != L.c())
            throw Error(ErrorKind::ShapeError, "A needs one column per g");
    for (std::size_t j = 0; j < L.c(); ++j) {
        const Polynomial& g = L.g[j];
        if (g.is_zero() || !g.is_homogeneous())
            throw Error(ErrorKind::InhomogeneousInput, "g_" + std::to_string(j + 1) + " is not a nonzero form");
        Polynomial sum(g.ring());
        for (std::size_t i = 0; i < L.n(); ++i) {
            const Polynomial& a = L.A[i][j];
            if (!a.is_zero() && (!a.is_homogeneous() || *a.total_degree() != *g.total_degree() - *L.f[i].total_degree()))
                throw Error(ErrorKind::DegreeMismatch, "A[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                                                           "] = " + a.to_string() + " has the wrong degree");
            sum += a * L.f[i];
        }
        if (!(sum == g))
            throw Error(ErrorKind::LiftIdentityFails, "column " + std::to_string(j + 1) + " gives " + sum.to_string() +
                                                          " instead of " + g.to_string());
    }
}

LiftMatrix compute_lift(const std::vector<Polynomial>& f, const std::vector<Polynomial>& g)
{
    LiftMatrix L{f, g, std::vector<std::vector<Polynomial>>(f.size())};
    for (const auto& gj : g) {
        auto q = lift_through(gj, f);
        for (std::size_t i = 0; i < f.size(); ++i)
            L.A[i].push_back(std::move(q[i]));
    }
    return L;
}

ExteriorVector alpha_element(const LiftMatrix& A)
{
    if (A.c() == 0)
        throw Error(ErrorKind::InvalidArgument, "alpha needs at least one g");
    ExteriorVector alpha = A.column_vector(0);
    for (std::size_t j = 1; j < A.c(); ++j)
        alpha = alpha.wedge(A.column_vector(j));
    return alpha;
}

}  // namespace tatecm

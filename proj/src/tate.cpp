#include "tatecm/tate.hpp"

#include <algorithm>
#include <climits>
#include <random>

namespace tatecm {

namespace {

// Top nonzero degree of an Artinian base ring, nullopt otherwise.
std::optional<int> top_degree(const GroebnerBasis& G)
{
    if (G.is_zero_ideal() || krull_dimension(G) != 0)
        return std::nullopt;
    int d = 0;
    while (G.degree_basis(d + 1).size() > 0)
        ++d;
    return d;
}

std::pair<int, int> degree_range(const GradedFreeModule& m)
{
    if (m.rank() == 0)
        return {0, -1};
    auto [lo, hi] = std::minmax_element(m.degrees.begin(), m.degrees.end());
    return {*lo, *hi};
}

// Calls emit(row, col, sign) for phi'_i in the subset bases of Lambda^{m-i} and Lambda^i.
template <class Emit>
void phi_prime_entries(const ExteriorVector& alpha, int i, int m, Emit&& emit)
{
    const std::size_t n = alpha.n;
    int eps = 1;
    for (int j = 1; j <= i; ++j)
        if ((m + j + 1) % 2 != 0)
            eps = -eps;
    const auto src = exterior_basis(n, static_cast<std::size_t>(i));
    const auto tgt = exterior_basis(n, static_cast<std::size_t>(m - i));
    const Subset all = n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1;
    for (std::size_t c = 0; c < src.size(); ++c)
        for (const auto& [U, coef] : alpha.coeffs) {
            const int s1 = wedge_sign(U, src.subsets[c]);
            if (s1 == 0)
                continue;
            const Subset V = U | src.subsets[c];
            const int s2 = complement_sign(V, n);
            const long r = tgt.index_of(all & ~V);
            emit(static_cast<std::size_t>(r), c, coef, eps * s1 * s2);
        }
}

void add_entry(PolyMatrix& M, std::size_t r, std::size_t c, const Polynomial& p, int sign)
{
    M.set(r, c, M(r, c) + (sign > 0 ? p : -p));
}

// Completes a splice once phi is known.
TateResolution finish_splice(const ChainComplex& F, const ChainComplex& D, ChainMap phi, int m, int twist, int lo,
                             int hi, int dmax, bool strict)
{
    TateResolution T{mapping_cone(phi, F, D, lo, hi), ChainComplex(F.over(), 0, {F.term(0)}, {}, true, true),
                     std::move(phi), m, twist, {}};
    TateCertificates& cert = T.cert;
    cert.dmax = dmax;

    auto check = is_chain_map(T.phi, F, D);
    cert.chain_map = check.ok;
    cert.chain_witness = check.witness;
    if (!check.ok && strict) {
        const auto& w = *check.witness;
        throw Error(ErrorKind::NotChainMap, "phi square at position " + std::to_string(w.position) + " entry (" +
                                                std::to_string(w.row) + "," + std::to_string(w.col) + ") = " + w.entry);
    }

    cert.unit_witness = std::nullopt;
    for (int i = T.complex.lo() + 1; i <= T.complex.hi() && !cert.unit_witness; ++i)
        if (auto w = T.complex.diff_ref(i).first_unit()) {
            w->position = i;
            cert.unit_witness = w;
        }
    cert.minimal_before = !cert.unit_witness;

    cert.acyclic_failure = acyclicity_failure(T.complex, lo, hi, dmax);
    cert.acyclic = !cert.acyclic_failure;
    if (!cert.acyclic && strict)
        throw Error(ErrorKind::AcyclicityFails, "H_" + std::to_string(cert.acyclic_failure->first) +
                                                    " is nonzero in degree " +
                                                    std::to_string(cert.acyclic_failure->second));

    const auto top = top_degree(*F.over());
    const auto [flo, fhi] = degree_range(F.term(0));
    const int h0_hi = top ? fhi + *top : std::max(dmax, flo);
    cert.h0_failing_degree = induced_iso_failure(T.phi.at(0), F, D, 0, flo, h0_hi);
    cert.h0_iso = !cert.h0_failing_degree;
    if (!cert.h0_iso && strict)
        throw Error(ErrorKind::H0IsoFails, "phi_0 is not an isomorphism on H_0 in degree " +
                                               std::to_string(*cert.h0_failing_degree));

    T.minimal = minimize(T.complex);
    cert.minimize_preserves_homology = true;
    for (int i = lo + 1; i < hi && cert.minimize_preserves_homology; ++i) {
        const auto [dlo, dhi] = degree_range(T.complex.term(i));
        if (dlo > dhi)
            continue;
        for (int d = dlo; d <= std::min(dhi, dlo + 2); ++d)
            if (homology_dim(T.complex, i, d) != homology_dim(T.minimal, i, d)) {
                cert.minimize_preserves_homology = false;
                break;
            }
    }
    return T;
}

// Degree-0 maps F_0 -> D_0 carrying boundaries into boundaries, tried until one induces an
// isomorphism on H_0.
PolyMatrix find_phi0(const ChainComplex& F, const ChainComplex& D, int dlo, int dhi)
{
    const GradedFreeModule F0 = F.term(0), D0 = D.term(0);
    const PolyMatrix dF = F.diff(1), dD = D.diff(1);
    const auto& field = F.over()->ring()->field;
    const GroebnerBasis& base = *F.over();

    // unknowns: for each F_0 generator c, the degree s_c piece of D_0
    std::vector<ModulePiece> pieces;
    std::vector<std::size_t> offsets{0};
    for (int s : F0.degrees) {
        pieces.emplace_back(D0, s);
        offsets.push_back(offsets.back() + pieces.back().dim());
    }
    const std::size_t nunknowns = offsets.back();

    // constraints: phi_0 d^F_1 e_j lies in im d^D_1, one block per F_1 generator
    std::vector<std::size_t> block_offsets{0};
    std::vector<ModulePiece> targets;
    std::map<int, std::unique_ptr<SpanSolver>> images;
    for (int t : dF.source().degrees) {
        targets.emplace_back(D0, t);
        block_offsets.push_back(block_offsets.back() + targets.back().dim());
        auto& slot = images[t];
        if (!slot) {
            SparseMatrix B = graded_piece(dD, t);
            slot = std::make_unique<SpanSolver>(field, B.rows, false);
            for (const auto& col : B.columns)
                slot->add(col);
        }
    }
    SparseMatrix constraint(block_offsets.back(), nunknowns);
    for (std::size_t c = 0; c < F0.rank(); ++c) {
        const ModulePiece& pc = pieces[c];
        for (std::size_t r = 0; r < D0.rank(); ++r) {
            const QuotientDegreeBasis* b = pc.basis(r);
            if (!b)
                continue;
            for (std::size_t k = 0; k < b->size(); ++k) {
                const Monomial& mu = b->monomials[k];
                SparseVec stacked;
                for (std::size_t j = 0; j < dF.cols(); ++j) {
                    const Polynomial& entry = dF(c, j);
                    if (entry.is_zero())
                        continue;
                    std::vector<Polynomial> col(D0.rank(), Polynomial(F.over()->ring()));
                    col[r] = base.normal_form(entry.times_monomial(mu));
                    SparseVec v = images[dF.source().degrees[j]]->reduce(targets[j].coords(col));
                    for (const auto& [idx, val] : v)
                        stacked.emplace_back(static_cast<std::uint32_t>(block_offsets[j] + idx), val);
                }
                std::sort(stacked.begin(), stacked.end());
                constraint.columns[offsets[c] + pc.offset(r) + k] = std::move(stacked);
            }
        }
    }
    const auto kernel = kernel_basis(constraint, field);

    auto to_matrix = [&](const SparseVec& v) {
        PolyMatrix phi(D0, F0, 0);
        for (std::size_t c = 0; c < F0.rank(); ++c) {
            SparseVec part;
            for (const auto& [idx, val] : v)
                if (idx >= offsets[c] && idx < offsets[c + 1])
                    part.emplace_back(static_cast<std::uint32_t>(idx - offsets[c]), val);
            auto col = pieces[c].column(part);
            for (std::size_t r = 0; r < col.size(); ++r)
                phi.set_reduced(r, c, std::move(col[r]));
        }
        return phi;
    };
    for (const auto& v : kernel) {
        PolyMatrix phi = to_matrix(v);
        if (!induced_iso_failure(phi, F, D, 0, dlo, dhi))
            return phi;
    }
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::uint32_t> coef(1, field.characteristic() - 1);
    for (int attempt = 0; attempt < 32 && kernel.size() > 1; ++attempt) {
        SparseVec acc;
        for (const auto& v : kernel)
            acc = sparse_add_scaled(acc, v, coef(rng), field);
        PolyMatrix phi = to_matrix(acc);
        if (!induced_iso_failure(phi, F, D, 0, dlo, dhi))
            return phi;
    }
    throw Error(ErrorKind::LiftFails, "no map F_0 -> D_0 induces an isomorphism on H_0");
}

}  // namespace

ChainComplex upper_half(const ChainComplex& F, int m, int twist_by)
{
    return twist(shift(dual(F), m), twist_by);
}

ChainMap phi_prime(const ChainComplex& K, const ExteriorVector& alpha, int m, const ChainComplex& DK)
{
    ChainMap phi{0, m, {}};
    for (int i = 0; i <= m; ++i) {
        PolyMatrix comp(DK.term(i), K.term(i), 0);
        phi_prime_entries(alpha, i, m, [&](std::size_t r, std::size_t c, const Polynomial& p, int sign) {
            add_entry(comp, r, c, p, sign);
        });
        phi.comps.push_back(std::move(comp));
    }
    return phi;
}

ChainMap phi_es(const ShamashResolution& F, const ChainComplex& D)
{
    const int m = static_cast<int>(F.n()) - static_cast<int>(F.c());
    const ExteriorVector alpha = alpha_element(F.lift);
    ChainMap phi{0, m, {}};
    for (int i = 0; i <= m; ++i) {
        PolyMatrix comp(D.term(i), F.complex.term(i), 0);
        const auto cols = F.koszul_layer(i);
        const auto rows = F.koszul_layer(m - i);
        phi_prime_entries(alpha, i, m, [&](std::size_t r, std::size_t c, const Polynomial& p, int sign) {
            add_entry(comp, rows[r], cols[c], p, sign);
        });
        phi.comps.push_back(std::move(comp));
    }
    return phi;
}

int tate_twist(const LiftMatrix& A)
{
    int s = 0;
    for (const auto& f : A.f)
        s += *f.total_degree();
    for (const auto& g : A.g)
        s -= *g.total_degree();
    return s;
}

int required_length(int m, int lo, int hi)
{
    return std::max({hi, m - lo - 1, m + 1});
}

TateResolution tate_splice(const ShamashResolution& F, int lo, int hi, int dmax, bool strict)
{
    const int m = static_cast<int>(F.n()) - static_cast<int>(F.c());
    if (m < 0)
        throw Error(ErrorKind::InvalidArgument, "more g than f");
    if (lo >= 0 || hi < 1)
        throw Error(ErrorKind::WindowTooSmall, "window must contain positions -1, 0 and 1");
    if (F.length() < required_length(m, lo, hi))
        throw Error(ErrorKind::WindowTooSmall, "resolution of length " + std::to_string(F.length()) +
                                                   " is too short for the window, need " +
                                                   std::to_string(required_length(m, lo, hi)));
    const int tw = tate_twist(F.lift);
    ChainComplex D = upper_half(F.complex, m, tw);
    ChainMap phi = phi_es(F, D);
    return finish_splice(F.complex, D, std::move(phi), m, tw, lo, hi, dmax, strict);
}

TateResolution general_splice(const ChainComplex& F, const ChainComplex& G, int m, int lo, int hi, int dmax,
                              bool strict)
{
    if (m < 0)
        throw Error(ErrorKind::InvalidArgument, "codimension must be nonnegative");
    if (F.lo() != 0 || G.lo() != 0 || !F.bounded_below() || !G.bounded_below())
        throw Error(ErrorKind::InvalidArgument, "resolutions must start at position 0");
    if (F.hi() == 0 && F.bounded_above())
        throw Error(ErrorKind::InvalidArgument, "M is free; its essential approximation is zero");
    if (lo >= 0 || hi < 1)
        throw Error(ErrorKind::WindowTooSmall, "window must contain positions -1, 0 and 1");
    if ((F.hi() < hi && !F.bounded_above()) || (G.hi() < required_length(m, lo, hi) && !G.bounded_above()))
        throw Error(ErrorKind::WindowTooSmall, "resolutions too short for the window");

    const auto top = top_degree(*F.over());
    const auto [flo, fhi] = degree_range(F.term(0));
    const int dhi = top ? fhi + *top : std::max(dmax, flo);

    // align the start of H_0 of the dual half with that of M
    ChainComplex D0 = upper_half(G, m, 0);
    auto first_nonzero = [&](const ChainComplex& C, int from, int to) -> std::optional<int> {
        for (int d = from; d <= to; ++d)
            if (homology_dim(C, 0, d) > 0)
                return d;
        return std::nullopt;
    };
    const auto m_start = first_nonzero(F, flo, dhi);
    const auto [glo, ghi] = degree_range(D0.term(0));
    const int span = dhi - flo;
    const auto d_start = first_nonzero(D0, glo, ghi + (top ? *top : span));
    if (!m_start || !d_start)
        throw Error(ErrorKind::LiftFails, "H_0 of one half vanishes in the searched degrees");
    const int tw = *m_start - *d_start;
    ChainComplex D = upper_half(G, m, tw);

    ChainMap phi{0, m, {}};
    phi.comps.push_back(find_phi0(F, D, flo, dhi));
    for (int i = 1; i <= m; ++i) {
        PolyMatrix rhs = phi.comps.back() * F.diff(i);
        auto next = lift_through_map(D.diff(i), rhs);
        if (!next)
            throw Error(ErrorKind::LiftFails, "cannot extend phi to position " + std::to_string(i));
        phi.comps.push_back(std::move(*next));
    }
    return finish_splice(F, D, std::move(phi), m, tw, lo, hi, dmax, strict);
}

ChainComplex minimize(const ChainComplex& C)
{
    const int lo = C.lo(), hi = C.hi();
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(C.term_ref(i));
        if (i > lo)
            diffs.push_back(C.diff_ref(i));
    }
    std::vector<int> order;
    for (int i = lo + 1; i <= hi; ++i)
        order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [](int a, int b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
    });
    auto idx = [&](int i) { return static_cast<std::size_t>(i - lo); };
    auto all_but = [](std::size_t n, std::size_t skip) {
        std::vector<std::size_t> v;
        for (std::size_t k = 0; k < n; ++k)
            if (k != skip)
                v.push_back(k);
        return v;
    };
    const auto& F = C.over()->ring()->field;
    for (;;) {
        bool found = false;
        for (int i : order) {
            PolyMatrix& d = diffs[idx(i) - 1];
            const bool any = d.first_unit().has_value();
            // leftmost unit: smallest column, then smallest row
            std::optional<std::pair<std::size_t, std::size_t>> pivot;
            for (std::size_t c = 0; c < d.cols() && !pivot && any; ++c)
                for (std::size_t r = 0; r < d.rows(); ++r)
                    if (d(r, c).constant_term() != 0) {
                        pivot = {r, c};
                        break;
                    }
            if (!pivot)
                continue;
            const auto [r0, c0] = *pivot;
            const std::uint32_t uinv = F.inv(d(r0, c0).constant_term());
            const auto rows = all_but(d.rows(), r0), cols = all_but(d.cols(), c0);
            PolyMatrix nd = d.submatrix(rows, cols);
            for (std::size_t a = 0; a < rows.size(); ++a) {
                const Polynomial& left = d(rows[a], c0);
                if (left.is_zero())
                    continue;
                for (std::size_t b = 0; b < cols.size(); ++b) {
                    const Polynomial& top = d(r0, cols[b]);
                    if (top.is_zero())
                        continue;
                    nd.set(a, b, nd(a, b) - (left * top).scaled(uinv));
                }
            }
            auto every = [](std::size_t n) {
                std::vector<std::size_t> v(n);
                for (std::size_t k = 0; k < n; ++k)
                    v[k] = k;
                return v;
            };
            if (i + 1 <= hi) {
                PolyMatrix& up = diffs[idx(i + 1) - 1];
                up = up.submatrix(all_but(up.rows(), c0), every(up.cols()));
            }
            if (i - 1 > lo) {
                PolyMatrix& down = diffs[idx(i - 1) - 1];
                down = down.submatrix(every(down.rows()), all_but(down.cols(), r0));
            }
            d = std::move(nd);
            terms[idx(i)] = d.source();
            terms[idx(i - 1)] = d.target();
            found = true;
            break;
        }
        if (!found)
            break;
    }
    return ChainComplex(C.over(), lo, std::move(terms), std::move(diffs), C.bounded_below(), C.bounded_above());
}

McmPresentation mcm_presentation(const ChainComplex& minimal)
{
    if (minimal.lo() > 0 || minimal.hi() < 1)
        throw Error(ErrorKind::WindowTooSmall, "window must contain positions 0 and 1");
    McmPresentation out{minimal.diff_ref(1), minimal.term_ref(0).rank(), {}, false};
    for (int d : minimal.term_ref(0).degrees)
        out.twists.push_back(-d);
    out.minimal = !out.presentation.first_unit();
    return out;
}

namespace {

long binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    long r = 1;
    for (long j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

}  // namespace

long mcm_generator_count(int n, int c)
{
    if (c < 1 || c > n)
        throw Error(ErrorKind::InvalidArgument, "need 1 <= c <= n");
    long total = 1;
    const int top = n - c - 1;
    for (int i = 1; 2 * i <= top; ++i)
        total += binomial(n, c + 1 + 2 * i) * binomial(c - 1 + i, i);
    return total;
}

long tate_layout_generator_count(int n, int c)
{
    if (c < 1 || c > n)
        throw Error(ErrorKind::InvalidArgument, "need 1 <= c <= n");
    const int j = n - c - 1;  // position of F in D_1 = F*_{m-1}
    long upper = 0;
    for (int k = 0; 2 * k <= j; ++k)
        upper += binomial(c - 1 + k, k) * binomial(n, j - 2 * k);
    return 1 + upper;
}

bool orthogonality_check(const LiftMatrix& A, const ExteriorVector& alpha)
{
    const RingPtr& ring = A.f.at(0).ring();
    ChainComplex K = koszul_complex(A.f, polynomial_base(ring));
    const std::size_t n = A.n();
    for (std::size_t j = 0; j < A.c(); ++j) {
        const ExteriorVector a = A.column_vector(j);
        for (std::size_t i = 0; i + 1 + alpha.k <= n; ++i)
            if (!(wedge_map(alpha, i + 1, K) * wedge_map(a, i, K)).is_zero())
                return false;
    }
    return true;
}

bool orthogonality_check(const LiftMatrix& A)
{
    return orthogonality_check(A, alpha_element(A));
}

std::optional<std::pair<int, int>> acyclicity_failure(const ChainComplex& C, int lo, int hi, int dmax)
{
    const auto top = top_degree(*C.over());
    for (int i = lo + 1; i < hi; ++i) {
        const auto [dlo, dhi] = degree_range(C.term(i));
        if (dlo > dhi)
            continue;
        const int upper = top ? dhi + *top : dmax;
        for (int d = dlo; d <= upper; ++d)
            if (homology_dim(C, i, d) != 0)
                return std::make_pair(i, d);
    }
    return std::nullopt;
}

std::optional<int> betti_shift(const BettiTable& a, const BettiTable& b, int lo, int hi)
{
    std::optional<int> shift;
    for (int i = lo; i <= hi; ++i) {
        auto ia = a.find(i), ib = b.find(i);
        const std::vector<int> empty;
        const auto& da = ia == a.end() ? empty : ia->second;
        const auto& db = ib == b.end() ? empty : ib->second;
        if (da.size() != db.size())
            return std::nullopt;
        for (std::size_t k = 0; k < da.size(); ++k) {
            const int e = db[k] - da[k];
            if (shift && *shift != e)
                return std::nullopt;
            shift = e;
        }
    }
    return shift.value_or(0);
}

BettiTable dual_betti(const ChainComplex& minimal, int m)
{
    ChainComplex D = shift(dual(minimal), m - 1);
    BettiTable out;
    for (int i = D.lo() + 1; i < D.hi(); ++i) {
        auto degs = D.term_ref(i).degrees;
        std::sort(degs.begin(), degs.end());
        out[i] = std::move(degs);
    }
    return out;
}

bool two_periodic(const ChainComplex& C, int lo, int hi)
{
    for (int i = std::max(lo, C.lo() + 1); i + 2 <= std::min(hi, C.hi()); ++i) {
        const PolyMatrix& a = C.diff_ref(i);
        const PolyMatrix& b = C.diff_ref(i + 2);
        if (a.rows() != b.rows() || a.cols() != b.cols())
            return false;
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                if (!(a(r, c) == b(r, c)))
                    return false;
    }
    return true;
}

std::optional<std::vector<std::vector<std::int64_t>>> factorization_matrix(const ChainComplex& C, int i,
                                                                          const Polynomial& g)
{
    const BaseRing S = polynomial_base(g.ring());
    PolyMatrix prod = C.diff_ref(i).change_ring(S) * C.diff_ref(i + 1).change_ring(S);
    const auto& F = g.field();
    const Term& lead = g.lead();
    std::vector<std::vector<std::int64_t>> out(prod.rows(), std::vector<std::int64_t>(prod.cols(), 0));
    for (std::size_t r = 0; r < prod.rows(); ++r)
        for (std::size_t c = 0; c < prod.cols(); ++c) {
            const Polynomial& p = prod(r, c);
            const std::uint32_t lambda = F.mul(p.coefficient(lead.mono), F.inv(lead.coef));
            if (!(p == g.scaled(lambda)))
                return std::nullopt;
            out[r][c] = F.symmetric(lambda);
        }
    return out;
}

SyzygyCheck syzygy_cross_check(const ChainComplex& F, const ChainComplex& minimal, int m, int dmax)
{
    SyzygyCheck out;
    const int k = std::max(2, m);
    out.k = k;
    ChainComplex P = resolve(F.diff(1), k + 1, dmax);
    const PolyMatrix dk1 = P.diff(k + 1);  // zero when the resolution stopped early
    const PolyMatrix dual_map = dk1.transpose();
    int lo = INT_MAX;
    for (int d : dual_map.source().degrees)
        lo = std::min(lo, d);
    if (lo == INT_MAX)
        return out;
    // (Omega^k M)^* = ker of the dual map, then its minimal resolution
    std::vector<PolyMatrix> chain{kernel_generators(dual_map, lo, dmax)};
    for (int step = 1; step <= k + 1; ++step) {
        const PolyMatrix& last = chain.back();
        int l = INT_MAX;
        for (int d : last.source().degrees)
            l = std::min(l, d);
        if (l == INT_MAX)
            break;
        chain.push_back(kernel_generators(last, l, dmax));
    }
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    // chain[j] has source Q_j; Omega^k is presented by Q_{k+1} -> Q_k.
    auto q = [&](int j) {
        return j < static_cast<int>(chain.size()) ? sorted(chain[static_cast<std::size_t>(j)].source().degrees)
                                                  : std::vector<int>{};
    };
    out.syzygy[0] = q(k);
    out.syzygy[1] = q(k + 1);
    std::vector<int> t1, t2;
    for (int d : minimal.term(-1).degrees)
        t1.push_back(-d);
    for (int d : minimal.term(-2).degrees)
        t2.push_back(-d);
    out.dual[0] = sorted(t1);
    out.dual[1] = sorted(t2);
    out.direct[0] = sorted(minimal.term(0).degrees);
    out.direct[1] = sorted(minimal.term(1).degrees);
    out.dual_shift = betti_shift(out.dual, out.syzygy, 0, 1);
    out.direct_shift = betti_shift(out.direct, out.syzygy, 0, 1);
    return out;
}

}  // namespace tatecm

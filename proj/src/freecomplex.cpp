#include "tatecm/freecomplex.hpp"

#include <algorithm>
#include <climits>

namespace tatecm {

namespace {

bool same_degrees(const GradedFreeModule& a, const GradedFreeModule& b)
{
    return a.degrees == b.degrees;
}

// Dense accumulator over a module piece that remembers which slots were touched.
class Accumulator {
public:
    Accumulator(std::size_t dim, const PrimeField& F) : F_(&F), vals_(dim, 0), seen_(dim, 0) {}

    void add(std::size_t idx, std::uint32_t v)
    {
        if (!seen_[idx]) {
            seen_[idx] = 1;
            touched_.push_back(idx);
        }
        vals_[idx] = F_->add(vals_[idx], v);
    }

    // Adds c * (mono reduced modulo the base) into generator slot gen of the piece.
    void add_monomial(const ModulePiece& piece, const GroebnerBasis& base, std::size_t gen, const Monomial& mono,
                      std::uint32_t c)
    {
        const std::size_t off = piece.offset(gen);
        if (base.is_zero_ideal()) {
            long idx = piece.basis(gen)->index_of(mono);
            add(off + static_cast<std::size_t>(idx), c);
            return;
        }
        for (const auto& [idx, v] : base.monomial_coords(mono))
            add(off + idx, F_->mul(v, c));
    }

    SparseVec take()
    {
        std::sort(touched_.begin(), touched_.end());
        SparseVec out;
        for (auto idx : touched_) {
            if (vals_[idx])
                out.emplace_back(static_cast<std::uint32_t>(idx), vals_[idx]);
            vals_[idx] = 0;
            seen_[idx] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    const PrimeField* F_;
    std::vector<std::uint32_t> vals_;
    std::vector<char> seen_;
    std::vector<std::size_t> touched_;
};

int entry_degree(const PolyMatrix& M, std::size_t r, std::size_t c)
{
    return M.source().degrees[c] - M.target().degrees[r] + M.degree();
}

}  // namespace

// ---------------------------------------------------------------------------------------
// GradedFreeModule

GradedFreeModule GradedFreeModule::dual() const
{
    GradedFreeModule out{over, {}, {}};
    for (int d : degrees)
        out.degrees.push_back(-d);
    for (const auto& l : labels)
        out.labels.push_back(l + "*");
    return out;
}

GradedFreeModule GradedFreeModule::twisted(int e) const
{
    GradedFreeModule out = *this;
    for (int& d : out.degrees)
        d += e;
    return out;
}

std::string GradedFreeModule::label(std::size_t j) const
{
    if (j < labels.size())
        return labels[j];
    return "e" + std::to_string(j);
}

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b, const std::string& prefix_a,
                            const std::string& prefix_b)
{
    GradedFreeModule out{a.over, a.degrees, {}};
    out.degrees.insert(out.degrees.end(), b.degrees.begin(), b.degrees.end());
    if (!a.labels.empty() || !b.labels.empty() || !prefix_a.empty() || !prefix_b.empty()) {
        for (std::size_t j = 0; j < a.rank(); ++j)
            out.labels.push_back(prefix_a + a.label(j));
        for (std::size_t j = 0; j < b.rank(); ++j)
            out.labels.push_back(prefix_b + b.label(j));
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(GradedFreeModule target, GradedFreeModule source, int degree)
    : target_(std::move(target)), source_(std::move(source)), degree_(degree)
{
    if (!target_.over || !source_.over)
        throw Error(ErrorKind::InvalidArgument, "module without base ring");
    if (target_.over != source_.over && !target_.over->same_ideal(*source_.over))
        throw Error(ErrorKind::ContextMismatch, "source and target over different rings");
    entries_.assign(rows() * cols(), Polynomial(target_.over->ring()));
}

PolyMatrix PolyMatrix::identity(const GradedFreeModule& m)
{
    PolyMatrix I(m, m, 0);
    for (std::size_t j = 0; j < m.rank(); ++j)
        I.set_reduced(j, j, Polynomial::constant(m.over->ring(), 1));
    return I;
}

void PolyMatrix::set(std::size_t r, std::size_t c, const Polynomial& p)
{
    entries_[r * cols() + c] = over()->is_zero_ideal() ? p : over()->normal_form(p);
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const
{
    if (cols() != o.rows() || !same_degrees(source_, o.target_))
        throw Error(ErrorKind::ShapeError, "composition of incompatible maps");
    PolyMatrix out(target_, o.source_, degree_ + o.degree_);
    const RingPtr& R = ring();
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < o.cols(); ++c) {
            std::vector<Term> acc;
            for (std::size_t k = 0; k < cols(); ++k) {
                const Polynomial& a = (*this)(r, k);
                const Polynomial& b = o(k, c);
                if (a.is_zero() || b.is_zero())
                    continue;
                for (const auto& ta : a.terms())
                    for (const auto& tb : b.terms())
                        acc.push_back({ta.mono * tb.mono, R->field.mul(ta.coef, tb.coef)});
            }
            if (!acc.empty())
                out.set(r, c, Polynomial(R, std::move(acc)));
        }
    return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const
{
    if (rows() != o.rows() || cols() != o.cols() || degree_ != o.degree_)
        throw Error(ErrorKind::ShapeError, "sum of incompatible maps");
    PolyMatrix out(target_, source_, degree_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        out.entries_[k] = entries_[k] + o.entries_[k];
    return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const
{
    if (rows() != o.rows() || cols() != o.cols() || degree_ != o.degree_)
        throw Error(ErrorKind::ShapeError, "difference of incompatible maps");
    PolyMatrix out(target_, source_, degree_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        out.entries_[k] = entries_[k] - o.entries_[k];
    return out;
}

PolyMatrix PolyMatrix::scaled(std::uint32_t c) const
{
    PolyMatrix out(target_, source_, degree_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        out.entries_[k] = entries_[k].scaled(c);
    return out;
}

PolyMatrix PolyMatrix::transpose() const
{
    PolyMatrix out(source_.dual(), target_.dual(), degree_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c)
            out.set_reduced(c, r, (*this)(r, c));
    return out;
}

PolyMatrix PolyMatrix::change_ring(const BaseRing& over) const
{
    GradedFreeModule t = target_, s = source_;
    t.over = over;
    s.over = over;
    PolyMatrix out(std::move(t), std::move(s), degree_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c)
            if (!(*this)(r, c).is_zero())
                out.set(r, c, (*this)(r, c));
    return out;
}

PolyMatrix PolyMatrix::with_modules(GradedFreeModule target, GradedFreeModule source) const
{
    if (target.rank() != rows() || source.rank() != cols())
        throw Error(ErrorKind::ShapeError, "with_modules: rank mismatch");
    PolyMatrix out(std::move(target), std::move(source), degree_);
    out.entries_ = entries_;
    return out;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const
{
    GradedFreeModule t{target_.over, {}, {}}, s{source_.over, {}, {}};
    for (auto r : rs) {
        t.degrees.push_back(target_.degrees.at(r));
        if (!target_.labels.empty())
            t.labels.push_back(target_.labels[r]);
    }
    for (auto c : cs) {
        s.degrees.push_back(source_.degrees.at(c));
        if (!source_.labels.empty())
            s.labels.push_back(source_.labels[c]);
    }
    PolyMatrix out(std::move(t), std::move(s), degree_);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
            out.set_reduced(i, j, (*this)(rs[i], cs[j]));
    return out;
}

bool PolyMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<EntryWitness> PolyMatrix::first_nonzero() const
{
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c)
            if (!(*this)(r, c).is_zero())
                return EntryWitness{0, r, c, (*this)(r, c).to_string()};
    return std::nullopt;
}

std::optional<EntryWitness> PolyMatrix::first_unit() const
{
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c)
            if ((*this)(r, c).constant_term() != 0)
                return EntryWitness{0, r, c, (*this)(r, c).to_string()};
    return std::nullopt;
}

void PolyMatrix::validate() const
{
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c) {
            const Polynomial& p = (*this)(r, c);
            if (p.is_zero())
                continue;
            if (!p.is_homogeneous() || *p.total_degree() != entry_degree(*this, r, c))
                throw Error(ErrorKind::DegreeMismatch, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                                           ") = " + p.to_string() + " should have degree " +
                                                           std::to_string(entry_degree(*this, r, c)));
        }
}

bool PolyMatrix::operator==(const PolyMatrix& o) const
{
    return degree_ == o.degree_ && same_degrees(target_, o.target_) && same_degrees(source_, o.source_) &&
           entries_ == o.entries_;
}

PolyMatrix block_matrix(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d,
                        const GradedFreeModule& target, const GradedFreeModule& source)
{
    const std::size_t r1 = a.rows(), c1 = a.cols();
    if (b.rows() != r1 || c.cols() != c1 || d.rows() != c.rows() || d.cols() != b.cols() ||
        target.rank() != r1 + c.rows() || source.rank() != c1 + b.cols())
        throw Error(ErrorKind::ShapeError, "block_matrix: inconsistent blocks");
    PolyMatrix out(target, source, a.degree());
    auto place = [&](const PolyMatrix& m, std::size_t ro, std::size_t co) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t k = 0; k < m.cols(); ++k)
                if (!m(r, k).is_zero())
                    out.set_reduced(ro + r, co + k, m(r, k));
    };
    place(a, 0, 0);
    place(b, 0, c1);
    place(c, r1, 0);
    place(d, r1, c1);
    return out;
}

// ---------------------------------------------------------------------------------------
// ModulePiece and graded pieces

ModulePiece::ModulePiece(const GradedFreeModule& m, int d) : module_(&m), degree_(d)
{
    offsets_.push_back(0);
    for (int g : m.degrees) {
        const QuotientDegreeBasis* b = d - g >= 0 ? &m.over->degree_basis(d - g) : nullptr;
        bases_.push_back(b);
        offsets_.push_back(offsets_.back() + (b ? b->size() : 0));
    }
}

SparseVec ModulePiece::coords(const std::vector<Polynomial>& column) const
{
    const GroebnerBasis& base = *module_->over;
    Accumulator acc(dim(), base.ring()->field);
    for (std::size_t j = 0; j < column.size(); ++j)
        for (const auto& t : column[j].terms()) {
            if (!bases_[j] || static_cast<int>(t.mono.deg) != degree_ - module_->degrees[j])
                throw Error(ErrorKind::DegreeMismatch, "column entry of the wrong degree");
            acc.add_monomial(*this, base, j, t.mono, t.coef);
        }
    return acc.take();
}

std::vector<Polynomial> ModulePiece::column(const SparseVec& v) const
{
    const RingPtr& R = module_->over->ring();
    std::vector<std::vector<Term>> terms(module_->rank());
    std::size_t gen = 0;
    for (const auto& [idx, val] : v) {
        while (offsets_[gen + 1] <= idx)
            ++gen;
        terms[gen].push_back({bases_[gen]->monomials[idx - offsets_[gen]], val});
    }
    std::vector<Polynomial> out;
    out.reserve(terms.size());
    for (auto& t : terms)
        out.emplace_back(R, std::move(t));
    return out;
}

namespace {

// Image of (mono * e_c) under M as coordinates in the target piece.
SparseVec apply_to_monomial(const PolyMatrix& M, std::size_t c, const Monomial& mono, const ModulePiece& tgt,
                            Accumulator& acc)
{
    const GroebnerBasis& base = *M.over();
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (const auto& t : M(r, c).terms())
            acc.add_monomial(tgt, base, r, mono * t.mono, t.coef);
    return acc.take();
}

// Coordinates of mono * column in the given piece.
SparseVec column_times_monomial(const std::vector<Polynomial>& column, const Monomial& mono, const ModulePiece& piece,
                                const GroebnerBasis& base, Accumulator& acc)
{
    for (std::size_t r = 0; r < column.size(); ++r)
        for (const auto& t : column[r].terms())
            acc.add_monomial(piece, base, r, mono * t.mono, t.coef);
    return acc.take();
}

std::vector<Polynomial> column_of(const PolyMatrix& M, std::size_t c)
{
    std::vector<Polynomial> out;
    out.reserve(M.rows());
    for (std::size_t r = 0; r < M.rows(); ++r)
        out.push_back(M(r, c));
    return out;
}

}  // namespace

SparseMatrix graded_piece(const PolyMatrix& M, int d)
{
    ModulePiece src(M.source(), d);
    ModulePiece tgt(M.target(), d + M.degree());
    SparseMatrix out(tgt.dim(), src.dim());
    Accumulator acc(tgt.dim(), M.ring()->field);
    for (std::size_t c = 0; c < M.cols(); ++c) {
        const QuotientDegreeBasis* b = src.basis(c);
        if (!b)
            continue;
        for (std::size_t k = 0; k < b->size(); ++k)
            out.columns[src.offset(c) + k] = apply_to_monomial(M, c, b->monomials[k], tgt, acc);
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(BaseRing over, int lo, std::vector<GradedFreeModule> terms, std::vector<PolyMatrix> diffs,
                           bool bounded_below, bool bounded_above)
    : over_(std::move(over)), lo_(lo), hi_(lo + static_cast<int>(terms.size()) - 1), terms_(std::move(terms)),
      diffs_(std::move(diffs)), bounded_below_(bounded_below), bounded_above_(bounded_above)
{
    if (terms_.empty())
        throw Error(ErrorKind::ShapeError, "complex with an empty window");
    if (diffs_.size() + 1 != terms_.size())
        throw Error(ErrorKind::ShapeError, "complex needs one differential between consecutive terms");
}

bool ChainComplex::knows(int i) const noexcept
{
    return (i >= lo_ && i <= hi_) || (i < lo_ && bounded_below_) || (i > hi_ && bounded_above_);
}

GradedFreeModule ChainComplex::term(int i) const
{
    if (i >= lo_ && i <= hi_)
        return terms_[static_cast<std::size_t>(i - lo_)];
    if (!knows(i))
        throw Error(ErrorKind::WindowEdge, "position " + std::to_string(i) + " lies outside the window [" +
                                               std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    return GradedFreeModule::zero(over_);
}

PolyMatrix ChainComplex::diff(int i) const
{
    if (has_diff(i))
        return diff_ref(i);
    return PolyMatrix(term(i - 1), term(i), 0);
}

std::vector<std::size_t> ChainComplex::ranks() const
{
    std::vector<std::size_t> out;
    for (const auto& t : terms_)
        out.push_back(t.rank());
    return out;
}

std::map<int, std::vector<int>> ChainComplex::betti() const
{
    std::map<int, std::vector<int>> out;
    for (int i = lo_; i <= hi_; ++i) {
        auto degs = terms_[static_cast<std::size_t>(i - lo_)].degrees;
        std::sort(degs.begin(), degs.end());
        out[i] = std::move(degs);
    }
    return out;
}

ChainComplex ChainComplex::window(int lo, int hi) const
{
    if (lo > hi)
        throw Error(ErrorKind::InvalidArgument, "empty window");
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(term(i));
        if (i > lo)
            diffs.push_back(diff(i));
    }
    return ChainComplex(over_, lo, std::move(terms), std::move(diffs), bounded_below_ && lo <= lo_,
                        bounded_above_ && hi >= hi_);
}

ChainComplex ChainComplex::change_ring(const BaseRing& over) const
{
    std::vector<GradedFreeModule> terms = terms_;
    for (auto& t : terms)
        t.over = over;
    std::vector<PolyMatrix> diffs;
    for (const auto& d : diffs_)
        diffs.push_back(d.change_ring(over));
    return ChainComplex(over, lo_, std::move(terms), std::move(diffs), bounded_below_, bounded_above_);
}

std::optional<EntryWitness> ChainComplex::square_witness() const
{
    for (int i = lo_ + 2; i <= hi_; ++i) {
        PolyMatrix sq = diff_ref(i - 1) * diff_ref(i);
        if (auto w = sq.first_nonzero()) {
            w->position = i;
            return w;
        }
    }
    return std::nullopt;
}

ChainComplex make_complex(BaseRing over, int lo, std::vector<GradedFreeModule> terms, std::vector<PolyMatrix> diffs,
                          bool bounded_below, bool bounded_above)
{
    if (diffs.size() + 1 != terms.size())
        throw Error(ErrorKind::ShapeError, "expected " + std::to_string(terms.empty() ? 0 : terms.size() - 1) +
                                               " differentials, got " + std::to_string(diffs.size()));
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        const int i = lo + static_cast<int>(k) + 1;
        const PolyMatrix& d = diffs[k];
        if (!same_degrees(d.source(), terms[k + 1]) || !same_degrees(d.target(), terms[k]))
            throw Error(ErrorKind::ShapeError, "d_" + std::to_string(i) + " does not match its terms");
        if (d.degree() != 0)
            throw Error(ErrorKind::DegreeMismatch, "d_" + std::to_string(i) + " is not of degree zero");
        try {
            d.validate();
        } catch (const Error& e) {
            throw Error(ErrorKind::DegreeMismatch, "d_" + std::to_string(i) + ": " + e.what());
        }
    }
    ChainComplex C(std::move(over), lo, std::move(terms), std::move(diffs), bounded_below, bounded_above);
    if (auto w = C.square_witness())
        throw Error(ErrorKind::NotAComplex, "d_" + std::to_string(w->position - 1) + " d_" +
                                                std::to_string(w->position) + " has entry (" + std::to_string(w->row) +
                                                "," + std::to_string(w->col) + ") = " + w->entry);
    return C;
}

// ---------------------------------------------------------------------------------------
// Operations on complexes

ChainComplex dual(const ChainComplex& C)
{
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    for (int j = -C.hi(); j <= -C.lo(); ++j) {
        terms.push_back(C.term_ref(-j).dual());
        if (j > -C.hi())
            diffs.push_back(C.diff_ref(1 - j).transpose());
    }
    return ChainComplex(C.over(), -C.hi(), std::move(terms), std::move(diffs), C.bounded_above(), C.bounded_below());
}

ChainComplex shift(const ChainComplex& C, int k)
{
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    const bool negate = (k % 2) != 0;
    for (int i = C.lo(); i <= C.hi(); ++i) {
        terms.push_back(C.term_ref(i));
        if (i > C.lo())
            diffs.push_back(negate ? -C.diff_ref(i) : C.diff_ref(i));
    }
    return ChainComplex(C.over(), C.lo() + k, std::move(terms), std::move(diffs), C.bounded_below(),
                        C.bounded_above());
}

ChainComplex twist(const ChainComplex& C, int e)
{
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    for (int i = C.lo(); i <= C.hi(); ++i) {
        terms.push_back(C.term_ref(i).twisted(e));
        if (i > C.lo())
            diffs.push_back(C.diff_ref(i).with_modules(terms[terms.size() - 2], terms.back()));
    }
    return ChainComplex(C.over(), C.lo(), std::move(terms), std::move(diffs), C.bounded_below(), C.bounded_above());
}

ChainMapCheck is_chain_map(const ChainMap& phi, const ChainComplex& C, const ChainComplex& D)
{
    const int lo = std::max({phi.lo, C.lo(), D.lo()});
    const int hi = std::min({phi.hi + 1, C.hi(), D.hi()});
    for (int i = lo + 1; i <= hi; ++i) {
        if (!phi.has(i) && !phi.has(i - 1))
            continue;
        const PolyMatrix dC = C.diff_ref(i);
        const PolyMatrix dD = D.diff_ref(i);
        PolyMatrix left = phi.has(i - 1) ? phi.at(i - 1) * dC : PolyMatrix(D.term_ref(i - 1), C.term_ref(i), 0);
        PolyMatrix right = phi.has(i) ? dD * phi.at(i) : PolyMatrix(D.term_ref(i - 1), C.term_ref(i), 0);
        PolyMatrix diff = left - right;
        if (auto w = diff.first_nonzero()) {
            w->position = i;
            return {false, w};
        }
    }
    return {true, std::nullopt};
}

ChainComplex mapping_cone(const ChainMap& phi, const ChainComplex& F, const ChainComplex& D, int lo, int hi)
{
    std::vector<GradedFreeModule> terms;
    std::vector<PolyMatrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(direct_sum(F.term(i), D.term(i + 1)));
        if (i == lo)
            continue;
        const GradedFreeModule Fi = F.term(i), Fp = F.term(i - 1), Di = D.term(i), Dn = D.term(i + 1);
        PolyMatrix a = F.diff(i);
        PolyMatrix b(Fp, Dn, 0);
        PolyMatrix c = phi.has(i) ? phi.at(i) : PolyMatrix(Di, Fi, 0);
        if (i % 2 != 0)
            c = -c;
        PolyMatrix d = D.diff(i + 1);
        diffs.push_back(block_matrix(a, b, c, d, terms[terms.size() - 2], terms.back()));
    }
    const bool below = F.bounded_below() && D.bounded_below() && lo <= std::min(F.lo(), D.lo() - 1);
    const bool above = F.bounded_above() && D.bounded_above() && hi >= std::max(F.hi(), D.hi() - 1);
    return ChainComplex(F.over(), lo, std::move(terms), std::move(diffs), below, above);
}

// ---------------------------------------------------------------------------------------
// Homology

namespace {

void require_homology_position(const ChainComplex& C, int i)
{
    if (!C.knows(i - 1) || !C.knows(i) || !C.knows(i + 1))
        throw Error(ErrorKind::WindowEdge, "homology at position " + std::to_string(i) +
                                               " needs both neighbours, window is [" + std::to_string(C.lo()) + ", " +
                                               std::to_string(C.hi()) + "]");
}

}  // namespace

int homology_dim(const ChainComplex& C, int i, int d)
{
    require_homology_position(C, i);
    const auto& F = C.over()->ring()->field;
    const GradedFreeModule Ci = C.term(i);
    ModulePiece piece(Ci, d);
    const std::size_t dim = piece.dim();
    if (dim == 0)
        return 0;
    const PolyMatrix out = C.diff(i);
    const PolyMatrix in = C.diff(i + 1);
    const std::size_t r_out = rank(graded_piece(out, d), F);
    const std::size_t r_in = rank(graded_piece(in, d - in.degree()), F);
    return static_cast<int>(dim - r_out - r_in);
}

std::vector<int> homology_dims(const ChainComplex& C, int i, int dlo, int dhi)
{
    require_homology_position(C, i);
    std::vector<int> out;
    for (int d = dlo; d <= dhi; ++d)
        out.push_back(homology_dim(C, i, d));
    return out;
}

std::pair<int, int> degree_span(const ChainComplex& C, int ilo, int ihi)
{
    int lo = INT_MAX, hi = INT_MIN;
    for (int i = std::max(ilo, C.lo()); i <= std::min(ihi, C.hi()); ++i)
        for (int d : C.term_ref(i).degrees) {
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    if (lo > hi)
        return {0, 0};
    return {lo, hi};
}

std::optional<int> induced_iso_failure(const PolyMatrix& phi_i, const ChainComplex& C, const ChainComplex& D, int i,
                                       int dlo, int dhi)
{
    require_homology_position(C, i);
    require_homology_position(D, i);
    const auto& F = C.over()->ring()->field;
    const PolyMatrix dC = C.diff(i), dCin = C.diff(i + 1);
    const PolyMatrix dD = D.diff(i), dDin = D.diff(i + 1);
    for (int d = dlo; d <= dhi; ++d) {
        const int e = d + phi_i.degree();
        const int hC = homology_dim(C, i, d);
        const int hD = homology_dim(D, i, e);
        if (hC != hD)
            return d;
        if (hC == 0)
            continue;
        auto cycles = kernel_basis(graded_piece(dC, d), F);
        SparseMatrix phi = graded_piece(phi_i, d);
        SparseMatrix bD = graded_piece(dDin, e - dDin.degree());
        SpanSolver span(F, phi.rows, false);
        for (const auto& col : bD.columns)
            span.add(col);
        const std::size_t base = span.rank();
        for (const auto& z : cycles) {
            Accumulator acc(phi.rows, F);
            for (const auto& [k, v] : z)
                for (const auto& [r, w] : phi.columns[k])
                    acc.add(r, F.mul(v, w));
            span.add(acc.take());
        }
        if (static_cast<int>(span.rank() - base) != hC)
            return d;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------
// Lifting and kernels

std::optional<PolyMatrix> lift_through_map(const PolyMatrix& d, const PolyMatrix& B)
{
    if (!same_degrees(d.target(), B.target()))
        throw Error(ErrorKind::ShapeError, "lift_through_map: targets differ");
    const auto& F = d.ring()->field;
    const int ydeg = B.degree() - d.degree();
    PolyMatrix Y(d.source(), B.source(), ydeg);
    std::map<int, std::unique_ptr<SpanSolver>> solvers;
    for (std::size_t c = 0; c < B.cols(); ++c) {
        const int s = B.source().degrees[c] + ydeg;
        auto& slot = solvers[s];
        if (!slot) {
            SparseMatrix M = graded_piece(d, s);
            slot = std::make_unique<SpanSolver>(F, M.rows, true);
            for (const auto& col : M.columns)
                slot->add(col);
        }
        ModulePiece tgt(d.target(), s + d.degree());
        auto x = slot->solve(tgt.coords(column_of(B, c)));
        if (!x)
            return std::nullopt;
        ModulePiece src(d.source(), s);
        auto col = src.column(*x);
        for (std::size_t r = 0; r < col.size(); ++r)
            Y.set_reduced(r, c, std::move(col[r]));
    }
    return Y;
}

namespace {

// Greedy degree-by-degree selection of generators for the submodule spanned by
// `candidates` (each a column in `module` of the given degree).
struct Generated {
    std::vector<std::vector<Polynomial>> columns;
    std::vector<int> degrees;
};

class GeneratorSelector {
public:
    explicit GeneratorSelector(const GradedFreeModule& module) : module_(&module) {}

    // Starts degree s: spans everything generated so far in that degree.
    void begin_degree(int s)
    {
        piece_ = std::make_unique<ModulePiece>(*module_, s);
        const auto& base = *module_->over;
        span_ = std::make_unique<SpanSolver>(base.ring()->field, piece_->dim(), false);
        Accumulator acc(piece_->dim(), base.ring()->field);
        for (std::size_t g = 0; g < found_.columns.size(); ++g) {
            const int t = found_.degrees[g];
            if (t > s)
                continue;
            for (const auto& mono : base.degree_basis(s - t).monomials) {
                span_->add(column_times_monomial(found_.columns[g], mono, *piece_, base, acc));
                if (span_->rank() == piece_->dim())
                    return;
            }
        }
    }

    const ModulePiece& piece() const { return *piece_; }

    // Offers a vector of the current degree; keeps it as a generator when new.
    bool offer(const SparseVec& v)
    {
        if (!span_->add(v))
            return false;
        found_.columns.push_back(piece_->column(v));
        found_.degrees.push_back(piece_->degree());
        return true;
    }

    bool full() const { return span_->rank() == piece_->dim(); }

    const Generated& found() const { return found_; }

private:
    const GradedFreeModule* module_;
    std::unique_ptr<ModulePiece> piece_;
    std::unique_ptr<SpanSolver> span_;
    Generated found_;
};

PolyMatrix matrix_from_columns(const GradedFreeModule& target, const Generated& g, const std::string& label)
{
    GradedFreeModule src{target.over, g.degrees, {}};
    if (!label.empty())
        for (std::size_t j = 0; j < g.degrees.size(); ++j)
            src.labels.push_back(label + std::to_string(j));
    PolyMatrix Z(target, std::move(src), 0);
    for (std::size_t c = 0; c < g.columns.size(); ++c)
        for (std::size_t r = 0; r < target.rank(); ++r)
            Z.set_reduced(r, c, g.columns[c][r]);
    return Z;
}

}  // namespace

PolyMatrix kernel_generators(const PolyMatrix& d, int dlo, int dhi)
{
    const auto& F = d.ring()->field;
    GeneratorSelector sel(d.source());
    for (int s = dlo; s <= dhi; ++s) {
        sel.begin_degree(s);
        if (sel.piece().dim() == 0 || sel.full())
            continue;
        for (const auto& v : kernel_basis(graded_piece(d, s), F)) {
            sel.offer(v);
            if (sel.full())
                break;
        }
    }
    return matrix_from_columns(d.source(), sel.found(), "");
}

PolyMatrix minimal_generators(const PolyMatrix& B)
{
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t c = 0; c < B.cols(); ++c) {
        bool zero = true;
        for (std::size_t r = 0; r < B.rows(); ++r)
            zero = zero && B(r, c).is_zero();
        if (!zero)
            by_degree[B.source().degrees[c] + B.degree()].push_back(c);
    }
    GeneratorSelector sel(B.target());
    std::vector<std::size_t> kept;
    for (const auto& [s, cols] : by_degree) {
        sel.begin_degree(s);
        for (auto c : cols)
            if (sel.offer(sel.piece().coords(column_of(B, c))))
                kept.push_back(c);
    }
    std::vector<std::size_t> rows(B.rows());
    for (std::size_t r = 0; r < rows.size(); ++r)
        rows[r] = r;
    return B.submatrix(rows, kept);
}

ChainComplex resolve(const PolyMatrix& presentation, int length, int dmax)
{
    if (length < 1)
        throw Error(ErrorKind::InvalidArgument, "resolution length must be at least 1");
    PolyMatrix d1 = minimal_generators(presentation);
    std::vector<GradedFreeModule> terms{d1.target(), d1.source()};
    std::vector<PolyMatrix> diffs{d1};
    bool finished = d1.cols() == 0;
    for (int k = 1; k < length && !finished; ++k) {
        const PolyMatrix& dk = diffs.back();
        int lo = INT_MAX;
        for (int g : dk.source().degrees)
            lo = std::min(lo, g);
        PolyMatrix next = kernel_generators(dk, lo, dmax);
        if (next.cols() == 0) {
            finished = true;
            break;
        }
        terms.push_back(next.source());
        diffs.push_back(std::move(next));
    }
    return ChainComplex(presentation.over(), 0, std::move(terms), std::move(diffs), true, finished);
}

}  // namespace tatecm

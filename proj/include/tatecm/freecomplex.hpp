#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatecm/groebner.hpp"
#include "tatecm/linalg.hpp"

namespace tatecm {

/// Free module over S or R = S/I, the direct sum of R(-degrees[j]). Generator j sits in
/// internal degree degrees[j]; its twist in the R(t) notation is -degrees[j].
struct GradedFreeModule {
    BaseRing over;
    std::vector<int> degrees;
    std::vector<std::string> labels;  // empty, or one per generator

    std::size_t rank() const noexcept { return degrees.size(); }
    GradedFreeModule dual() const;
    GradedFreeModule twisted(int e) const;
    std::string label(std::size_t j) const;

    static GradedFreeModule zero(BaseRing over) { return {std::move(over), {}, {}}; }
};

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b, const std::string& prefix_a = "",
                            const std::string& prefix_b = "");

/// Location and value of an offending matrix entry.
struct EntryWitness {
    int position = 0;  // homological degree, when attached to a complex or map
    std::size_t row = 0;
    std::size_t col = 0;
    std::string entry;
};

/// Homogeneous map source -> target raising internal degree by `degree`. Entry (r, c) has
/// degree source.degrees[c] - target.degrees[r] + degree. Over R entries are kept in normal
/// form modulo I.
class PolyMatrix {
public:
    PolyMatrix(GradedFreeModule target, GradedFreeModule source, int degree = 0);

    static PolyMatrix identity(const GradedFreeModule& m);

    const GradedFreeModule& target() const noexcept { return target_; }
    const GradedFreeModule& source() const noexcept { return source_; }
    const BaseRing& over() const noexcept { return target_.over; }
    const RingPtr& ring() const noexcept { return target_.over->ring(); }
    int degree() const noexcept { return degree_; }
    std::size_t rows() const noexcept { return target_.rank(); }
    std::size_t cols() const noexcept { return source_.rank(); }

    const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols() + c]; }
    /// Stores the normal form of p.
    void set(std::size_t r, std::size_t c, const Polynomial& p);
    /// Stores p verbatim; caller guarantees normal form.
    void set_reduced(std::size_t r, std::size_t c, Polynomial p) { entries_[r * cols() + c] = std::move(p); }

    /// Composition (*this) o other.
    PolyMatrix operator*(const PolyMatrix& other) const;
    PolyMatrix operator+(const PolyMatrix& other) const;
    PolyMatrix operator-(const PolyMatrix& other) const;
    PolyMatrix operator-() const { return scaled(ring()->field.neg(1)); }
    PolyMatrix scaled(std::uint32_t c) const;
    PolyMatrix transpose() const;

    /// Same entries read over another base ring (reduced there).
    PolyMatrix change_ring(const BaseRing& over) const;
    PolyMatrix with_modules(GradedFreeModule target, GradedFreeModule source) const;
    PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    bool is_zero() const;
    std::optional<EntryWitness> first_nonzero() const;
    /// First entry with a nonzero constant term.
    std::optional<EntryWitness> first_unit() const;
    /// Throws DegreeMismatch on an inhomogeneous or wrongly graded entry.
    void validate() const;

    bool operator==(const PolyMatrix& o) const;

private:
    GradedFreeModule target_;
    GradedFreeModule source_;
    int degree_;
    std::vector<Polynomial> entries_;
};

/// Block matrix [[a, b], [c, d]] with a: S1 -> T1, b: S2 -> T1, c: S1 -> T2, d: S2 -> T2.
PolyMatrix block_matrix(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d,
                        const GradedFreeModule& target, const GradedFreeModule& source);

/// Degree-d piece of a free module: coordinates over the standard monomial bases.
class ModulePiece {
public:
    ModulePiece(const GradedFreeModule& m, int d);

    std::size_t dim() const noexcept { return offsets_.back(); }
    std::size_t offset(std::size_t gen) const { return offsets_[gen]; }
    const QuotientDegreeBasis* basis(std::size_t gen) const { return bases_[gen]; }
    int degree() const noexcept { return degree_; }

    /// Coordinates of a column (one normal-form entry per generator, homogeneous of the
    /// right degrees).
    SparseVec coords(const std::vector<Polynomial>& column) const;
    std::vector<Polynomial> column(const SparseVec& v) const;

private:
    const GradedFreeModule* module_;
    int degree_;
    std::vector<std::size_t> offsets_;
    std::vector<const QuotientDegreeBasis*> bases_;
};

/// Field matrix of M restricted to the degree-d piece of its source (landing in degree
/// d + M.degree() of the target). Rows index the target piece, columns the source piece.
SparseMatrix graded_piece(const PolyMatrix& M, int d);

/// Window [lo, hi] of a complex of graded free modules with d_i: C_i -> C_{i-1} for
/// lo < i <= hi. bounded_below/above mean the complex is genuinely zero past that end.
class ChainComplex {
public:
    ChainComplex(BaseRing over, int lo, std::vector<GradedFreeModule> terms, std::vector<PolyMatrix> diffs,
                 bool bounded_below, bool bounded_above);

    const BaseRing& over() const noexcept { return over_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }
    bool bounded_below() const noexcept { return bounded_below_; }
    bool bounded_above() const noexcept { return bounded_above_; }

    bool knows(int i) const noexcept;
    /// Throws WindowEdge for an unknown position; zero module outside a bounded end.
    GradedFreeModule term(int i) const;
    const GradedFreeModule& term_ref(int i) const { return terms_.at(static_cast<std::size_t>(i - lo_)); }
    /// d_i : C_i -> C_{i-1}; zero where one side is known to vanish.
    PolyMatrix diff(int i) const;
    const PolyMatrix& diff_ref(int i) const { return diffs_.at(static_cast<std::size_t>(i - lo_ - 1)); }
    bool has_diff(int i) const noexcept { return i > lo_ && i <= hi_; }

    std::vector<std::size_t> ranks() const;
    /// Generator degrees of every term in the window.
    std::map<int, std::vector<int>> betti() const;

    ChainComplex window(int lo, int hi) const;
    ChainComplex change_ring(const BaseRing& over) const;

    /// First position where d_{i-1} d_i is nonzero modulo the base ideal.
    std::optional<EntryWitness> square_witness() const;

private:
    BaseRing over_;
    int lo_;
    int hi_;
    std::vector<GradedFreeModule> terms_;
    std::vector<PolyMatrix> diffs_;
    bool bounded_below_;
    bool bounded_above_;
};

/// Validating constructor: checks shapes, grading and d^2 = 0 (NotAComplex with witness).
ChainComplex make_complex(BaseRing over, int lo, std::vector<GradedFreeModule> terms, std::vector<PolyMatrix> diffs,
                          bool bounded_below = true, bool bounded_above = true);

/// Family of maps C_i -> D_i for lo <= i <= hi; zero elsewhere.
struct ChainMap {
    int lo = 0;
    int hi = -1;
    std::vector<PolyMatrix> comps;

    bool has(int i) const noexcept { return i >= lo && i <= hi; }
    const PolyMatrix& at(int i) const { return comps.at(static_cast<std::size_t>(i - lo)); }
};

/// Dual complex: term -i is Hom(C_i, R) with negated degrees; d is transposed.
ChainComplex dual(const ChainComplex& C);
/// term_i of the result is term_{i-k} of C; differentials carry the sign (-1)^k.
ChainComplex shift(const ChainComplex& C, int k);
/// Adds e to every generator degree.
ChainComplex twist(const ChainComplex& C, int e);

struct ChainMapCheck {
    bool ok = true;
    std::optional<EntryWitness> witness;
};

/// phi_{i-1} d^C_i == d^D_i phi_i modulo the base ideal wherever both sides are defined.
ChainMapCheck is_chain_map(const ChainMap& phi, const ChainComplex& C, const ChainComplex& D);

/// Cone with term_i = F_i (+) D_{i+1} and differential [[dF_i, 0], [(-1)^i phi_i, dD_{i+1}]],
/// so that the 1 -> 0 block reads F_1 (+) D_2 -> F_0 (+) D_1. Restricted to [lo, hi].
ChainComplex mapping_cone(const ChainMap& phi, const ChainComplex& F, const ChainComplex& D, int lo, int hi);

/// dim H_i in internal degrees dlo..dhi (inclusive). Throws WindowEdge at a truncated end.
std::vector<int> homology_dims(const ChainComplex& C, int i, int dlo, int dhi);
int homology_dim(const ChainComplex& C, int i, int d);

/// Smallest and largest generator degree over the given homological range.
std::pair<int, int> degree_span(const ChainComplex& C, int ilo, int ihi);

/// Y with d o Y == B (over the common base ring), solved column by column in each degree.
std::optional<PolyMatrix> lift_through_map(const PolyMatrix& d, const PolyMatrix& B);

/// Minimal homogeneous generators of ker(d) found in internal degrees dlo..dhi; returns
/// Z: K -> d.source().
PolyMatrix kernel_generators(const PolyMatrix& d, int dlo, int dhi);

/// Minimal generators of the submodule spanned by the columns of B, degree by degree.
PolyMatrix minimal_generators(const PolyMatrix& B);

/// Minimal free resolution of coker(presentation) to the given length, kernels searched in
/// internal degrees up to dmax.
ChainComplex resolve(const PolyMatrix& presentation, int length, int dmax);

/// Per internal degree d in [dlo, dhi]: whether phi_i induces an isomorphism
/// H_i(C)_d -> H_i(D)_{d + deg phi}. Returns the first failing degree, if any.
std::optional<int> induced_iso_failure(const PolyMatrix& phi_i, const ChainComplex& C, const ChainComplex& D, int i,
                                       int dlo, int dhi);

}  // namespace tatecm

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tatecm/arith.hpp"

namespace tatecm {

/// Sparse vector over F_p: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Column-major sparse matrix over F_p.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SparseVec> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    std::uint32_t at(std::size_t r, std::size_t c) const;
};

/// Incremental echelon basis of a span of vectors in F_p^dim. Each added vector is either
/// independent of the earlier ones (becoming a pivot) or dependent, in which case the
/// relation expressing it through earlier inputs is recorded when tracking is enabled.
class SpanSolver {
public:
    SpanSolver(const PrimeField& F, std::size_t dim, bool track_combinations);

    /// Adds the next input vector; returns true when it enlarged the span.
    bool add(const SparseVec& v);

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t inputs() const noexcept { return inputs_; }

    /// Remainder of v after reduction by the pivots; zero iff v is in the span.
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    /// Coefficients c over the inputs with sum c_k input_k = v, if v is in the span.
    /// Requires tracking.
    std::optional<SparseVec> solve(const SparseVec& v) const;

    /// One relation per dependent input: coefficients over inputs summing to zero, with
    /// coefficient 1 on the dependent input itself. Requires tracking.
    const std::vector<SparseVec>& relations() const noexcept { return relations_; }

private:
    struct Pivot {
        SparseVec vec;   // pivot entry (first index) normalized to 1
        SparseVec comb;  // vec == sum comb_k input_k
    };

    void reduce_dense(std::vector<std::uint64_t>& acc, std::vector<std::uint64_t>* comb) const;

    const PrimeField* F_;
    std::size_t dim_;
    bool track_;
    std::size_t inputs_ = 0;
    std::vector<long> pivot_of_row_;  // row index -> pivot slot or -1
    std::vector<Pivot> pivots_;
    std::vector<SparseVec> relations_;
};

std::size_t rank(const SparseMatrix& m, const PrimeField& F);

/// Basis of {x : m x = 0}.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m, const PrimeField& F);

/// Some x with m x = b, or nullopt.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b, const PrimeField& F);

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, std::uint32_t c, const PrimeField& F);

}  // namespace tatecm

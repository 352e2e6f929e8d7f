#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tatecm/freecomplex.hpp"

namespace tatecm {

inline constexpr std::size_t kMaxExteriorRank = 24;

using Subset = std::uint32_t;  // bit t set <=> t is in the subset (0-based)

/// k-subsets of {0..n-1}, ordered lexicographically as sorted tuples.
struct ExteriorBasis {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<Subset> subsets;

    std::size_t size() const noexcept { return subsets.size(); }
    long index_of(Subset s) const;
};

ExteriorBasis exterior_basis(std::size_t n, std::size_t k);

/// Sign of e_A ^ e_B = sign * e_{A u B}; zero when A and B meet.
int wedge_sign(Subset a, Subset b) noexcept;

/// Sign of e_T ^ e_{complement} = sign * e_1 ^ ... ^ e_n.
int complement_sign(Subset t, std::size_t n) noexcept;

/// "e(1,3)" with 1-based indices; "e()" for the empty subset.
std::string subset_label(Subset s);

/// Element of the exterior power of S^n, homogeneous when e'_i is given degree fdeg[i]:
/// coefficient on T has degree weight - sum_{t in T} fdeg[t].
struct ExteriorVector {
    std::size_t n = 0;
    std::size_t k = 0;
    int weight = 0;
    std::map<Subset, Polynomial> coeffs;

    ExteriorVector wedge(const ExteriorVector& o) const;
    bool is_zero() const;
};

/// Sum_i a[i] e'_i of the given weight.
ExteriorVector exterior_vector(const std::vector<Polynomial>& a, int weight);

/// Koszul complex of f over `over` on positions 0..n; generator e_T of degree sum deg f_T.
ChainComplex koszul_complex(const std::vector<Polynomial>& f, const BaseRing& over);

/// Matrix of w -> v ^ w from K_i to K_{i+k}, in the bases of the Koszul complex K.
PolyMatrix wedge_map(const ExteriorVector& v, std::size_t i, const ChainComplex& K);

/// g = sum a_i f_i, verified; returns tau_i = wedge by sum a_i e'_i for i = 0..n-1.
std::vector<PolyMatrix> koszul_homotopy(const ChainComplex& K, const std::vector<Polynomial>& f,
                                        const Polynomial& g, const std::vector<Polynomial>& a);

/// g_j = sum_i A[i][j] f_i; A is n x c.
struct LiftMatrix {
    std::vector<Polynomial> f;
    std::vector<Polynomial> g;
    std::vector<std::vector<Polynomial>> A;

    std::size_t n() const noexcept { return f.size(); }
    std::size_t c() const noexcept { return g.size(); }
    std::vector<Polynomial> column(std::size_t j) const;
    ExteriorVector column_vector(std::size_t j) const;
};

/// Checks g_j == sum_i A[i][j] f_i and the grading of A. Throws LiftIdentityFails or
/// DegreeMismatch.
void validate_lift(const LiftMatrix& A);

/// A computed by division, column by column. Throws NotInIdeal.
LiftMatrix compute_lift(const std::vector<Polynomial>& f, const std::vector<Polynomial>& g);

/// alpha = a_1 ^ ... ^ a_c, whose coefficient on T is the maximal minor of A on rows T.
ExteriorVector alpha_element(const LiftMatrix& A);

}  // namespace tatecm

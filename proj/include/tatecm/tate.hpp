#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tatecm/shamash.hpp"

namespace tatecm {

/// Generator degrees per homological position, sorted.
using BettiTable = std::map<int, std::vector<int>>;

struct TateCertificates {
    bool chain_map = false;
    std::optional<EntryWitness> chain_witness;
    bool acyclic = false;
    std::optional<std::pair<int, int>> acyclic_failure;  // (position, internal degree)
    bool h0_iso = false;
    std::optional<int> h0_failing_degree;
    bool minimal_before = false;  // no unit entry before minimization
    std::optional<EntryWitness> unit_witness;
    bool minimize_preserves_homology = false;
    int dmax = 0;

    bool ok() const noexcept { return chain_map && acyclic && h0_iso && minimize_preserves_homology; }
};

struct TateResolution {
    ChainComplex complex;  // the cone on the window, before minimization
    ChainComplex minimal;
    ChainMap phi;
    int m = 0;      // codimension of M
    int twist = 0;  // internal degree added to the dualized upper half
    TateCertificates cert;
};

/// D_i = F*_{m-i} with every generator degree raised by `twist`.
ChainComplex upper_half(const ChainComplex& F, int m, int twist);

/// Component i: e_T -> eps_i h(alpha ^ e_T) with h(e_V) = sign(V, V^c) e*_{V^c}, for the Koszul
/// complex K = R (x) Koszul(f) and its upper half D_K = upper_half(K, m, twist).
ChainMap phi_prime(const ChainComplex& K, const ExteriorVector& alpha, int m, const ChainComplex& DK);

/// phi = pi* o phi' o pi on the Eisenbud-Shamash resolution: phi' on the Koszul layer, zero on
/// the layers k >= 1.
ChainMap phi_es(const ShamashResolution& F, const ChainComplex& D);

/// Sum of deg f minus sum of deg g.
int tate_twist(const LiftMatrix& A);

/// Length of F needed for the window [lo, hi] of the splice with codimension m.
int required_length(int m, int lo, int hi);

/// Cone of phi_es restricted to [lo, hi], minimized, with certificates up to internal degree
/// dmax. F must be long enough (WindowTooSmall otherwise). With strict set, a failing
/// certificate throws NotChainMap, AcyclicityFails or H0IsoFails.
TateResolution tate_splice(const ShamashResolution& F, int lo, int hi, int dmax, bool strict = false);

/// Splice of a resolution F of M with the dual of a resolution G of M-dual, shifted by m.
/// phi_0 is found by linear algebra, the rest lifted; the upper half twist is chosen so that
/// H_0 of both halves start in the same degree.
TateResolution general_splice(const ChainComplex& F, const ChainComplex& G, int m, int lo, int hi, int dmax,
                              bool strict = false);

/// Cancels unit entries, scanning differentials from the splice outward.
ChainComplex minimize(const ChainComplex& C);

struct McmPresentation {
    PolyMatrix presentation;  // T_1 -> T_0 of the minimized complex
    std::size_t generators = 0;
    std::vector<int> twists;  // R(t) twists of the generators, t = -degree
    bool minimal = false;
};

McmPresentation mcm_presentation(const ChainComplex& minimal);

/// Printed closed form 1 + sum_{1 <= i <= (n-c-1)/2} C(n, c+1+2i) C(c-1+i, i).
long mcm_generator_count(int n, int c);

/// rank F_0 + rank F_{n-c-1} of the Eisenbud-Shamash layout, the rank of T_0 of the splice.
long tate_layout_generator_count(int n, int c);

/// wedge(alpha) o wedge(a_j) == 0 over S on every Koszul term, for every column j.
bool orthogonality_check(const LiftMatrix& A);
bool orthogonality_check(const LiftMatrix& A, const ExteriorVector& alpha);

/// First (position, degree) with nonzero homology for lo < i < hi, degrees from the lowest
/// generator degree of C_i up to dmax (or the top degree of an Artinian base ring).
std::optional<std::pair<int, int>> acyclicity_failure(const ChainComplex& C, int lo, int hi, int dmax);

/// Degree shift e with b[i] == a[i] + e for every i in [lo, hi]; nullopt when none exists.
std::optional<int> betti_shift(const BettiTable& a, const BettiTable& b, int lo, int hi);

/// Betti table of shift(dual(T), m - 1) on its interior.
BettiTable dual_betti(const ChainComplex& minimal, int m);

/// d_i == d_{i+2} entrywise for every i, i+2 in [lo, hi].
bool two_periodic(const ChainComplex& C, int lo, int hi);

/// Lifts d_i d_{i+1} to S and returns it divided by g when it is g times a constant matrix.
std::optional<std::vector<std::vector<std::int64_t>>> factorization_matrix(const ChainComplex& C, int i,
                                                                          const Polynomial& g);

struct SyzygyCheck {
    int k = 0;
    BettiTable syzygy;  // presentation of Omega^k((Omega^k M)*): positions 0, 1
    BettiTable direct;  // T_0, T_1 of the minimized Tate resolution
    BettiTable dual;    // T_{-1}^*, T_{-2}^*, the presentation of the dual of coker d_1
    std::optional<int> direct_shift;
    std::optional<int> dual_shift;
    bool ok() const noexcept { return dual_shift.has_value(); }
};

/// Minimal presentation of the minimal k-th syzygy of the dual of the k-th syzygy of
/// M = coker(d_1 of F), k = max(2, m), compared with both readings of the Tate resolution.
/// The construction yields the dual of the MCM approximation, so `dual` is the one that
/// has to match; `direct` matches when that approximation is self-dual up to twist.
SyzygyCheck syzygy_cross_check(const ChainComplex& F, const ChainComplex& minimal, int m, int dmax);

}  // namespace tatecm

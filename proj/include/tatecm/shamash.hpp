#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tatecm/koszul.hpp"

namespace tatecm {

inline constexpr int kMaxShamashLength = 40;

/// Generator y^(alpha) (x) e_T of the divided power / exterior layout.
struct ShamashGenerator {
    std::vector<int> alpha;  // exponent vector, |alpha| = k
    Subset subset = 0;

    int k() const noexcept;
    std::string label() const;
};

/// Exponent vectors of total k in c slots, lexicographically ascending.
std::vector<std::vector<int>> divided_power_basis(std::size_t c, int k);

struct ShamashResolution {
    ChainComplex complex;  // over R = S/(g), positions 0..L
    LiftMatrix lift;
    std::vector<std::vector<ShamashGenerator>> generators;  // per position

    std::size_t n() const noexcept { return lift.n(); }
    std::size_t c() const noexcept { return lift.c(); }
    int length() const noexcept { return complex.hi(); }
    /// Positions of the k = 0 (Koszul) generators in term i.
    std::vector<std::size_t> koszul_layer(int i) const;
};

/// Validates f, g regular with (g) in (f) and A (computed by division when absent), then
/// builds the resolution to length L over R = S/(g).
ShamashResolution es_resolution(const std::vector<Polynomial>& f, const std::vector<Polynomial>& g,
                                const std::optional<std::vector<std::vector<Polynomial>>>& A, int L);

/// Same construction from a validated lift over a given base ring; no regularity checks.
ShamashResolution es_resolution(const LiftMatrix& lift, const BaseRing& R, int L);

struct ResolutionCertificate {
    bool square_zero = false;
    bool acyclic = false;
    bool h0_matches = false;
    bool minimal = false;
    std::string failure;
    std::optional<EntryWitness> witness;

    bool ok() const noexcept { return square_zero && acyclic && h0_matches; }
};

/// d^2 = 0 mod I; H_i = 0 for 0 < i < L in degrees <= dmax; H_0 has the Hilbert function of
/// S/(f); minimality reported separately.
ResolutionCertificate verify_resolution(const ShamashResolution& F, int dmax);

}  // namespace tatecm

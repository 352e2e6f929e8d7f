#pragma once

#include <optional>
#include <vector>

#include "tatecm/koszul.hpp"

namespace tatecm {

enum class HomotopyProvenance { KoszulWedge, Solved };

/// Homotopies tau[j] for multiplication by g[j] on a bounded S-free complex K:
/// tau[j][i - K.lo()] maps K_i -> K_{i+1}, raising degree by deg g[j].
struct HomotopySystem {
    ChainComplex K;
    std::vector<Polynomial> g;
    std::vector<std::vector<PolyMatrix>> tau;
    HomotopyProvenance provenance = HomotopyProvenance::Solved;

    /// tau_j on K_i, zero outside the stored range.
    PolyMatrix component(std::size_t j, int i) const;
};

/// First violation of d tau + tau d = g id, reported at the term where it occurs.
std::optional<EntryWitness> homotopy_witness(const ChainComplex& K, const Polynomial& g,
                                             const std::vector<PolyMatrix>& tau);

/// Degreewise linear solve for a homotopy; throws NoSolution.
std::vector<PolyMatrix> solve_homotopy(const ChainComplex& K, const Polynomial& g);

HomotopySystem koszul_homotopies(const ChainComplex& K, const LiftMatrix& A);
HomotopySystem solved_homotopies(const ChainComplex& K, const std::vector<Polynomial>& g);

/// sigma_T on K_i: tau_{t1} o ... o tau_{ts} for T = {t1 < ... < ts} (tau_{ts} applied
/// first); the identity for T empty.
PolyMatrix sigma_map(const HomotopySystem& H, Subset T, int i);

struct SigmaCertificate {
    ChainMap sigma;  // over R, R(x)K -> shift(R(x)K, -c)
    bool chain_map = false;
    std::optional<EntryWitness> chain_witness;
    bool h0_hc_iso = false;
    std::optional<int> failing_degree;
    int dmax = 0;

    bool ok() const noexcept { return chain_map && h0_hc_iso; }
};

/// sigma_c = tau_1 o ... o tau_c reduced modulo (g), with its two certificates checked up
/// to internal degree dmax. Throws ChainMapFails or H0HcNotIso unless `report_only`.
SigmaCertificate sigma_c_chain_map(const HomotopySystem& H, const BaseRing& R, int dmax, bool report_only = false);

/// dim Tor_slot^S(S/(g), S/J)_d == dim (S/J)_{d - deg E_c} for 0 <= d <= dmax, computed from
/// Koszul(g) tensored with S/J.
bool tor_identity_check(const std::vector<Polynomial>& g, const std::vector<Polynomial>& J, int slot, int dmax);

/// d_i of Koszul(g) matches the transpose of d_{c+1-i} under e_T -> +-e*_{complement}, up to one
/// sign per position.
bool koszul_self_duality(const ChainComplex& E);

}  // namespace tatecm

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "tatecm/arith.hpp"

namespace tatecm {

/// Field basis of (S/I)_d made of standard monomials, descending in grevlex.
struct QuotientDegreeBasis {
    int degree = 0;
    std::vector<Monomial> monomials;

    std::size_t size() const noexcept { return monomials.size(); }
    /// Position of m in `monomials`, or -1 when m is not a standard monomial.
    long index_of(const Monomial& m) const;
};

/// Reduced grevlex Groebner basis of a homogeneous ideal, with the cofactors expressing
/// each basis element in the original generators. An empty generator list stands for the
/// zero ideal, i.e. the polynomial ring S itself.
class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens, std::vector<Polynomial> original,
                  std::vector<std::vector<Polynomial>> cofactors);
    GroebnerBasis(GroebnerBasis&& o) noexcept;
    GroebnerBasis(const GroebnerBasis&) = delete;
    GroebnerBasis& operator=(const GroebnerBasis&) = delete;

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Polynomial>& generators() const noexcept { return gens_; }
    const std::vector<Polynomial>& original() const noexcept { return original_; }
    /// gens[k] == sum_i cofactors[k][i] * original[i]
    const std::vector<std::vector<Polynomial>>& cofactors() const noexcept { return cofactors_; }
    std::vector<int> ideal_degrees() const;

    bool is_zero_ideal() const noexcept { return gens_.empty(); }
    bool is_unit_ideal() const noexcept;

    Polynomial normal_form(const Polynomial& a) const;
    bool ideal_member(const Polynomial& a) const { return normal_form(a).is_zero(); }

    /// Division by the basis, in generator order; returns quotients w.r.t. generators().
    std::vector<Polynomial> divide(const Polynomial& a, Polynomial& remainder) const;

    /// Cached; thread-safe.
    const QuotientDegreeBasis& degree_basis(int d) const;

    /// Normal form of a monomial as coordinates in degree_basis(m.deg). Cached; thread-safe.
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& monomial_coords(const Monomial& m) const;

    bool same_ideal(const GroebnerBasis& o) const;

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::vector<Polynomial> original_;
    std::vector<std::vector<Polynomial>> cofactors_;

    mutable std::mutex cache_mu_;
    mutable std::map<int, std::unique_ptr<QuotientDegreeBasis>> basis_cache_;
    mutable std::unordered_map<Monomial, std::unique_ptr<std::vector<std::pair<std::uint32_t, std::uint32_t>>>,
                               MonomialHash>
        coord_cache_;
};

using BaseRing = std::shared_ptr<const GroebnerBasis>;

/// Buchberger with the normal selection strategy; output is reduced, monic and certified.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens);
BaseRing make_base_ring(const std::vector<Polynomial>& gens);
/// The polynomial ring itself as a base ring (zero ideal).
BaseRing polynomial_base(const RingPtr& ring);

inline Polynomial normal_form(const Polynomial& a, const GroebnerBasis& G) { return G.normal_form(a); }
inline bool ideal_member(const Polynomial& a, const GroebnerBasis& G) { return G.ideal_member(a); }
inline const QuotientDegreeBasis& quotient_degree_basis(const GroebnerBasis& G, int d) { return G.degree_basis(d); }

/// Coefficients q with g = sum q_i f_i, q_i homogeneous of degree deg g - deg f_i.
/// Throws NotInIdeal when g is not in (f).
std::vector<Polynomial> lift_through(const Polynomial& g, const std::vector<Polynomial>& f);

/// Krull dimension of S/(gens) from the lead-term ideal; -1 for the unit ideal.
int krull_dimension(const GroebnerBasis& G);

bool is_regular_sequence(const std::vector<Polynomial>& f);

}  // namespace tatecm

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tatecm/error.hpp"

namespace tatecm {

/// Integers modulo a prime p. Elements are plain uint32 values kept in [0, p).
class PrimeField {
public:
    static constexpr std::uint32_t kDefaultPrime = 32003;

    explicit PrimeField(std::uint32_t p = kDefaultPrime);

    std::uint32_t characteristic() const noexcept { return p_; }

    std::uint32_t reduce(std::int64_t v) const noexcept
    {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

    /// Representative in (-p/2, p/2], used for printing.
    std::int64_t symmetric(std::uint32_t a) const noexcept
    {
        return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
    }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

inline constexpr std::size_t kMaxVars = 16;

/// Ordered variable names plus coefficient field. Shared by every polynomial over it.
struct PolyRing {
    PrimeField field;
    std::vector<std::string> vars;

    std::size_t nvars() const noexcept { return vars.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool operator==(const PolyRing&) const = default;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> vars, std::uint32_t p = PrimeField::kDefaultPrime);

/// Dense exponent vector; slots past the ring's variable count stay zero.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};
    std::uint32_t deg = 0;

    static Monomial from(std::span<const int> exps);
    static Monomial variable(std::size_t i);

    bool divides(const Monomial& other) const noexcept;
    Monomial operator*(const Monomial& other) const noexcept;
    /// Requires divides(other) for `other / *this`.
    Monomial quotient_of(const Monomial& other) const noexcept;
    Monomial lcm(const Monomial& other) const noexcept;
    bool coprime(const Monomial& other) const noexcept;

    bool operator==(const Monomial&) const = default;
};

/// Graded reverse lexicographic comparison: negative, zero or positive.
int grevlex_cmp(const Monomial& a, const Monomial& b) noexcept;

struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grevlex_cmp(a, b) > 0; }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// All monomials of total degree d in n variables, descending in grevlex.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d);

struct Term {
    Monomial mono;
    std::uint32_t coef;
    bool operator==(const Term&) const = default;
};

/// Sparse polynomial in canonical form: terms strictly descending in grevlex, no zero
/// coefficients.
class Polynomial {
public:
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
    Polynomial(RingPtr ring, std::vector<Term> terms);  // canonicalizes

    static Polynomial constant(RingPtr ring, std::int64_t c);
    static Polynomial monomial(RingPtr ring, const Monomial& m, std::uint32_t coef = 1);
    static Polynomial variable(RingPtr ring, std::size_t i);

    const RingPtr& ring() const noexcept { return ring_; }
    const PrimeField& field() const noexcept { return ring_->field; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    const Term& lead() const { return terms_.front(); }

    /// Total degree; std::nullopt for the zero polynomial.
    std::optional<int> total_degree() const;
    bool is_homogeneous() const noexcept;
    /// Coefficient of the constant monomial.
    std::uint32_t constant_term() const noexcept;
    std::uint32_t coefficient(const Monomial& m) const noexcept;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

    Polynomial scaled(std::uint32_t c) const;
    Polynomial times_monomial(const Monomial& m, std::uint32_t c = 1) const;
    Polynomial monic() const;

    /// Keeps the terms of degree exactly d.
    Polynomial homogeneous_part(int d) const;

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_ && *ring_ == *o.ring_; }

    std::string to_string() const;

private:
    void check_same(const Polynomial& o) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

enum class PolyOp { add, sub, mul };

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);

/// Parses `+ - * ^`, parentheses, integer literals and the ring's variable names.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

std::string monomial_to_string(const Monomial& m, const PolyRing& ring);

}  // namespace tatecm

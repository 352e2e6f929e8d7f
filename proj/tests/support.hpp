#pragma once

#include <random>
#include <string>
#include <vector>

#include "tatecm/freecomplex.hpp"
#include "tatecm/koszul.hpp"

namespace tatecm::testing {

inline std::vector<Polynomial> polys(const RingPtr& R, const std::vector<std::string>& texts)
{
    std::vector<Polynomial> out;
    for (const auto& t : texts)
        out.push_back(parse_polynomial(t, R));
    return out;
}

inline Polynomial P(const RingPtr& R, const std::string& text) { return parse_polynomial(text, R); }

// Random homogeneous polynomial of degree d with a handful of terms.
inline Polynomial random_form(const RingPtr& R, int d, std::mt19937& rng, int max_terms = 4)
{
    auto monos = monomials_of_degree(R->nvars(), d);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<std::uint32_t> coef(1, R->field.characteristic() - 1);
    std::vector<Term> terms;
    for (int k = 0; k < max_terms; ++k)
        terms.push_back({monos[pick(rng)], coef(rng)});
    return Polynomial(R, std::move(terms));
}

// Matrix with entries given row by row as strings.
inline PolyMatrix matrix(const GradedFreeModule& target, const GradedFreeModule& source,
                         const std::vector<std::vector<std::string>>& rows, int degree = 0)
{
    PolyMatrix M(target, source, degree);
    const RingPtr& R = target.over->ring();
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            M.set(r, c, parse_polynomial(rows[r][c], R));
    return M;
}

// Random valid lift: f = squares of the variables, A random of degree 1, g = A^T f.
inline LiftMatrix random_lift(const RingPtr& R, std::size_t c, std::mt19937& rng)
{
    const std::size_t n = R->nvars();
    LiftMatrix L;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial v = Polynomial::variable(R, i);
        L.f.push_back(v * v);
    }
    L.A.assign(n, {});
    for (std::size_t j = 0; j < c; ++j) {
        Polynomial g(R);
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial a = random_form(R, 1, rng, 2);
            L.A[i].push_back(a);
            g += a * L.f[i];
        }
        L.g.push_back(g);
    }
    return L;
}

}  // namespace tatecm::testing

#include "tatecm/groebner.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace tatecm {

long QuotientDegreeBasis::index_of(const Monomial& m) const
{
    auto it = std::lower_bound(monomials.begin(), monomials.end(), m, GrevlexGreater{});
    if (it != monomials.end() && *it == m)
        return it - monomials.begin();
    return -1;
}

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens, std::vector<Polynomial> original,
                             std::vector<std::vector<Polynomial>> cofactors)
    : ring_(std::move(ring)), gens_(std::move(gens)), original_(std::move(original)), cofactors_(std::move(cofactors))
{
}

GroebnerBasis::GroebnerBasis(GroebnerBasis&& o) noexcept
    : ring_(std::move(o.ring_)), gens_(std::move(o.gens_)), original_(std::move(o.original_)),
      cofactors_(std::move(o.cofactors_))
{
}

std::vector<int> GroebnerBasis::ideal_degrees() const
{
    std::vector<int> out;
    for (const auto& f : original_)
        out.push_back(f.total_degree().value_or(-1));
    return out;
}

bool GroebnerBasis::is_unit_ideal() const noexcept
{
    return gens_.size() == 1 && gens_[0].lead().mono.deg == 0;
}

namespace {

// Sparse working polynomial keyed by monomial, largest first.
using WorkPoly = std::map<Monomial, std::uint32_t, GrevlexGreater>;

WorkPoly to_work(const Polynomial& p)
{
    WorkPoly w;
    for (const auto& t : p.terms())
        w.emplace_hint(w.end(), t.mono, t.coef);
    return w;
}

void sub_multiple(WorkPoly& w, const Polynomial& g, const Monomial& m, std::uint32_t c, const PrimeField& F)
{
    for (const auto& t : g.terms()) {
        Monomial mm = t.mono * m;
        std::uint32_t v = F.mul(t.coef, c);
        auto [it, inserted] = w.try_emplace(mm, F.neg(v));
        if (!inserted) {
            it->second = F.sub(it->second, v);
            if (it->second == 0)
                w.erase(it);
        }
    }
}

// Full reduction of `a` by `basis`, optionally tracking quotients.
Polynomial reduce_full(const Polynomial& a, const std::vector<Polynomial>& basis, std::vector<Polynomial>* quotients)
{
    const auto& ring = a.ring();
    const auto& F = ring->field;
    WorkPoly w = to_work(a);
    std::vector<Term> rem;
    std::vector<std::vector<Term>> q;
    if (quotients)
        q.resize(basis.size());
    while (!w.empty()) {
        auto it = w.begin();
        Monomial m = it->first;
        std::uint32_t c = it->second;
        bool reduced = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto& g = basis[k];
            if (g.lead().mono.divides(m)) {
                Monomial mult = g.lead().mono.quotient_of(m);
                std::uint32_t coef = F.mul(c, F.inv(g.lead().coef));
                if (quotients)
                    q[k].push_back({mult, coef});
                sub_multiple(w, g, mult, coef, F);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.push_back({m, c});
            w.erase(w.begin());
        }
    }
    if (quotients) {
        quotients->clear();
        for (auto& terms : q)
            quotients->emplace_back(ring, std::move(terms));
    }
    return Polynomial(ring, std::move(rem));
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

void check_homogeneous(const std::vector<Polynomial>& gens)
{
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (!gens[k].is_homogeneous())
            throw Error(ErrorKind::InhomogeneousInput, "generator " + std::to_string(k) + " is not homogeneous: " +
                                                           gens[k].to_string());
}

}  // namespace

Polynomial GroebnerBasis::normal_form(const Polynomial& a) const
{
    if (gens_.empty() || a.is_zero())
        return a;
    if (a.ring() != ring_ && !(*a.ring() == *ring_))
        throw Error(ErrorKind::ContextMismatch, "normal form across rings");
    return reduce_full(a, gens_, nullptr);
}

std::vector<Polynomial> GroebnerBasis::divide(const Polynomial& a, Polynomial& remainder) const
{
    std::vector<Polynomial> q;
    remainder = reduce_full(a, gens_, &q);
    return q;
}

const QuotientDegreeBasis& GroebnerBasis::degree_basis(int d) const
{
    std::lock_guard lock(cache_mu_);
    auto& slot = basis_cache_[d];
    if (!slot) {
        auto b = std::make_unique<QuotientDegreeBasis>();
        b->degree = d;
        for (const auto& m : monomials_of_degree(ring_->nvars(), d)) {
            bool standard = true;
            for (const auto& g : gens_)
                if (g.lead().mono.divides(m)) {
                    standard = false;
                    break;
                }
            if (standard)
                b->monomials.push_back(m);
        }
        slot = std::move(b);
    }
    return *slot;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>>& GroebnerBasis::monomial_coords(const Monomial& m) const
{
    {
        std::lock_guard lock(cache_mu_);
        auto it = coord_cache_.find(m);
        if (it != coord_cache_.end())
            return *it->second;
    }
    Polynomial nf = normal_form(Polynomial::monomial(ring_, m));
    const auto& basis = degree_basis(static_cast<int>(m.deg));
    auto coords = std::make_unique<std::vector<std::pair<std::uint32_t, std::uint32_t>>>();
    for (const auto& t : nf.terms()) {
        long idx = basis.index_of(t.mono);
        coords->emplace_back(static_cast<std::uint32_t>(idx), t.coef);
    }
    std::lock_guard lock(cache_mu_);
    auto [it, inserted] = coord_cache_.try_emplace(m, std::move(coords));
    return *it->second;
}

bool GroebnerBasis::same_ideal(const GroebnerBasis& o) const
{
    if (!(*ring_ == *o.ring_) || gens_.size() != o.gens_.size())
        return false;
    // Reduced bases of the same ideal agree up to order.
    for (const auto& g : gens_)
        if (std::find(o.gens_.begin(), o.gens_.end(), g) == o.gens_.end())
            return false;
    return true;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& input)
{
    if (input.empty())
        throw Error(ErrorKind::InvalidArgument, "buchberger needs at least one generator (use polynomial_base)");
    const RingPtr ring = input.front().ring();
    const auto& F = ring->field;
    check_homogeneous(input);
    const std::size_t n = input.size();

    // Working basis with cofactor vectors in terms of the input.
    std::vector<Polynomial> basis;
    std::vector<std::vector<Polynomial>> cof;
    auto unit_vec = [&](std::size_t k) {
        std::vector<Polynomial> v(n, Polynomial(ring));
        v[k] = Polynomial::constant(ring, 1);
        return v;
    };
    auto combine = [&](std::vector<Polynomial>& acc, const std::vector<Polynomial>& v, const Polynomial& mult) {
        for (std::size_t k = 0; k < n; ++k)
            if (!v[k].is_zero())
                acc[k] = acc[k] + v[k] * mult;
    };
    // Reduce p (with cofactor vector pc) by the current basis, tracking cofactors.
    auto reduce_tracked = [&](Polynomial p, std::vector<Polynomial> pc) {
        std::vector<Polynomial> q;
        Polynomial r = reduce_full(p, basis, &q);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!q[k].is_zero())
                combine(pc, cof[k], -q[k]);
        return std::make_pair(r, pc);
    };

    std::vector<Pair> pairs;
    auto add_element = [&](Polynomial p, std::vector<Polynomial> pc) {
        std::uint32_t inv = F.inv(p.lead().coef);
        p = p.scaled(inv);
        for (auto& c : pc)
            c = c.scaled(inv);
        std::size_t idx = basis.size();
        for (std::size_t k = 0; k < idx; ++k)
            pairs.push_back({k, idx, basis[k].lead().mono.lcm(p.lead().mono)});
        basis.push_back(std::move(p));
        cof.push_back(std::move(pc));
    };

    for (std::size_t k = 0; k < n; ++k) {
        auto [r, rc] = reduce_tracked(input[k], unit_vec(k));
        if (!r.is_zero())
            add_element(std::move(r), std::move(rc));
    }

    while (!pairs.empty()) {
        // Normal selection: lowest lcm degree, then lexicographic pair index.
        auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return std::tie(a.lcm.deg, a.i, a.j) < std::tie(b.lcm.deg, b.i, b.j);
        });
        Pair pr = *best;
        pairs.erase(best);
        const auto& gi = basis[pr.i];
        const auto& gj = basis[pr.j];
        if (gi.lead().mono.coprime(gj.lead().mono))
            continue;
        Monomial mi = gi.lead().mono.quotient_of(pr.lcm);
        Monomial mj = gj.lead().mono.quotient_of(pr.lcm);
        Polynomial s = gi.times_monomial(mi) - gj.times_monomial(mj);
        std::vector<Polynomial> sc(n, Polynomial(ring));
        combine(sc, cof[pr.i], Polynomial::monomial(ring, mi));
        combine(sc, cof[pr.j], Polynomial::monomial(ring, mj, F.neg(1)));
        auto [r, rc] = reduce_tracked(std::move(s), std::move(sc));
        if (!r.is_zero())
            add_element(std::move(r), std::move(rc));
    }

    // Minimalize: drop elements whose lead term is divisible by another lead term.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        bool redundant = false;
        for (std::size_t l = 0; l < basis.size() && !redundant; ++l) {
            if (l == k)
                continue;
            const auto& ml = basis[l].lead().mono;
            const auto& mk = basis[k].lead().mono;
            if (ml.divides(mk) && (!(ml == mk) || l < k))
                redundant = true;
        }
        if (!redundant)
            keep.push_back(k);
    }
    std::vector<Polynomial> minimal;
    std::vector<std::vector<Polynomial>> minimal_cof;
    for (auto k : keep) {
        minimal.push_back(basis[k]);
        minimal_cof.push_back(cof[k]);
    }
    // Inter-reduce tails.
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<Polynomial> others;
        std::vector<std::size_t> other_idx;
        for (std::size_t l = 0; l < minimal.size(); ++l)
            if (l != k) {
                others.push_back(minimal[l]);
                other_idx.push_back(l);
            }
        std::vector<Polynomial> q;
        Polynomial r = reduce_full(minimal[k], others, &q);
        for (std::size_t t = 0; t < others.size(); ++t)
            if (!q[t].is_zero())
                combine(minimal_cof[k], minimal_cof[other_idx[t]], -q[t]);
        minimal[k] = r;
    }
    // Generator order follows insertion order, so division steps respect the input order.
    std::vector<Polynomial> gens = std::move(minimal);
    std::vector<std::vector<Polynomial>> gens_cof = std::move(minimal_cof);

    // Certificate: every S-pair reduces to zero.
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            const auto& a = gens[i].lead().mono;
            const auto& b = gens[j].lead().mono;
            if (a.coprime(b))
                continue;
            Monomial l = a.lcm(b);
            Polynomial s = gens[i].times_monomial(a.quotient_of(l)) - gens[j].times_monomial(b.quotient_of(l));
            if (!reduce_full(s, gens, nullptr).is_zero())
                throw Error(ErrorKind::InvalidArgument, "internal: Groebner certificate failed");
        }
    return GroebnerBasis(ring, std::move(gens), input, std::move(gens_cof));
}

BaseRing make_base_ring(const std::vector<Polynomial>& gens)
{
    std::vector<Polynomial> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero())
            nonzero.push_back(g);
    if (nonzero.empty()) {
        if (gens.empty())
            throw Error(ErrorKind::InvalidArgument, "make_base_ring needs a ring context");
        return polynomial_base(gens.front().ring());
    }
    return std::make_shared<const GroebnerBasis>(buchberger(nonzero));
}

BaseRing polynomial_base(const RingPtr& ring)
{
    return std::make_shared<const GroebnerBasis>(ring, std::vector<Polynomial>{}, std::vector<Polynomial>{},
                                                 std::vector<std::vector<Polynomial>>{});
}

std::vector<Polynomial> lift_through(const Polynomial& g, const std::vector<Polynomial>& f)
{
    if (f.empty())
        throw Error(ErrorKind::InvalidArgument, "lift_through needs generators");
    const RingPtr ring = f.front().ring();
    if (!g.is_homogeneous())
        throw Error(ErrorKind::InhomogeneousInput, "lifted element is not homogeneous");
    std::vector<Polynomial> result(f.size(), Polynomial(ring));
    if (g.is_zero())
        return result;
    GroebnerBasis G = buchberger(f);
    Polynomial rem(ring);
    auto q = G.divide(g, rem);
    if (!rem.is_zero())
        throw Error(ErrorKind::NotInIdeal, g.to_string() + " is not in the ideal");
    for (std::size_t k = 0; k < q.size(); ++k)
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!q[k].is_zero() && !G.cofactors()[k][i].is_zero())
                result[i] += q[k] * G.cofactors()[k][i];
    int dg = *g.total_degree();
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto df = f[i].total_degree();
        result[i] = df ? result[i].homogeneous_part(dg - *df) : Polynomial(ring);
    }
    Polynomial check(ring);
    for (std::size_t i = 0; i < f.size(); ++i)
        check += result[i] * f[i];
    if (!(check == g))
        throw Error(ErrorKind::NotInIdeal, "internal: lift identity failed for " + g.to_string());
    return result;
}

int krull_dimension(const GroebnerBasis& G)
{
    if (G.is_unit_ideal())
        return -1;
    const std::size_t nv = G.ring()->nvars();
    std::vector<std::uint32_t> supports;
    for (const auto& g : G.generators()) {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < nv; ++i)
            if (g.lead().mono.exp[i])
                s |= 1u << i;
        supports.push_back(s);
    }
    // Largest set U of variables such that no lead term is a monomial in U alone.
    int best = 0;
    for (std::uint32_t u = 0; u < (1u << nv); ++u) {
        int size = __builtin_popcount(u);
        if (size <= best)
            continue;
        bool independent = true;
        for (auto s : supports)
            if ((s & ~u) == 0) {
                independent = false;
                break;
            }
        if (independent)
            best = size;
    }
    return best;
}

bool is_regular_sequence(const std::vector<Polynomial>& f)
{
    if (f.empty())
        return true;
    for (const auto& p : f)
        if (p.is_zero() || *p.total_degree() == 0)
            return false;
    GroebnerBasis G = buchberger(f);
    int dim = krull_dimension(G);
    return dim == static_cast<int>(f.front().ring()->nvars()) - static_cast<int>(f.size());
}

}  // namespace tatecm

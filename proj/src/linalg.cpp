#include "tatecm/linalg.hpp"

#include <algorithm>

namespace tatecm {

std::uint32_t SparseMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& col = columns[c];
    auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(static_cast<std::uint32_t>(r), 0u));
    if (it != col.end() && it->first == r)
        return it->second;
    return 0;
}

SpanSolver::SpanSolver(const PrimeField& F, std::size_t dim, bool track_combinations)
    : F_(&F), dim_(dim), track_(track_combinations), pivot_of_row_(dim, -1)
{
}

void SpanSolver::reduce_dense(std::vector<std::uint64_t>& acc, std::vector<std::uint64_t>* comb) const
{
    const std::uint64_t p = F_->characteristic();
    for (std::size_t r = 0; r < dim_; ++r) {
        std::uint64_t v = acc[r] % p;
        acc[r] = v;
        if (v == 0)
            continue;
        long slot = pivot_of_row_[r];
        if (slot < 0)
            continue;
        const Pivot& pv = pivots_[static_cast<std::size_t>(slot)];
        std::uint64_t factor = p - v;  // acc -= v * pivot
        for (const auto& [idx, val] : pv.vec)
            acc[idx] = (acc[idx] + factor * val) % p;
        if (comb)
            for (const auto& [idx, val] : pv.comb)
                (*comb)[idx] = ((*comb)[idx] + factor * val) % p;
    }
}

bool SpanSolver::add(const SparseVec& v)
{
    const std::size_t me = inputs_++;
    std::vector<std::uint64_t> acc(dim_, 0);
    for (const auto& [i, x] : v)
        acc[i] = x;
    std::vector<std::uint64_t> comb;
    if (track_) {
        comb.assign(inputs_, 0);
        comb[me] = 1;
    }
    reduce_dense(acc, track_ ? &comb : nullptr);
    SparseVec rest;
    for (std::size_t r = 0; r < dim_; ++r)
        if (acc[r])
            rest.emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(acc[r]));
    auto to_sparse = [](const std::vector<std::uint64_t>& d) {
        SparseVec s;
        for (std::size_t k = 0; k < d.size(); ++k)
            if (d[k])
                s.emplace_back(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(d[k]));
        return s;
    };
    if (rest.empty()) {
        if (track_)
            relations_.push_back(to_sparse(comb));
        return false;
    }
    std::uint32_t inv = F_->inv(rest.front().second);
    for (auto& e : rest)
        e.second = F_->mul(e.second, inv);
    Pivot pv;
    pv.vec = std::move(rest);
    if (track_) {
        for (auto& c : comb)
            c = F_->mul(static_cast<std::uint32_t>(c), inv);
        pv.comb = to_sparse(comb);
    }
    pivot_of_row_[pv.vec.front().first] = static_cast<long>(pivots_.size());
    pivots_.push_back(std::move(pv));
    return true;
}

SparseVec SpanSolver::reduce(const SparseVec& v) const
{
    std::vector<std::uint64_t> acc(dim_, 0);
    for (const auto& [i, x] : v)
        acc[i] = x;
    reduce_dense(acc, nullptr);
    SparseVec rest;
    for (std::size_t r = 0; r < dim_; ++r)
        if (acc[r])
            rest.emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(acc[r]));
    return rest;
}

std::optional<SparseVec> SpanSolver::solve(const SparseVec& v) const
{
    if (!track_)
        throw Error(ErrorKind::InvalidArgument, "SpanSolver::solve needs combination tracking");
    std::vector<std::uint64_t> acc(dim_, 0);
    for (const auto& [i, x] : v)
        acc[i] = x;
    std::vector<std::uint64_t> comb(inputs_, 0);
    reduce_dense(acc, &comb);
    for (auto x : acc)
        if (x)
            return std::nullopt;
    // acc_final = v - sum comb_k input_k = 0 with comb accumulated with negated factors,
    // so v = -comb.
    SparseVec out;
    for (std::size_t k = 0; k < comb.size(); ++k)
        if (comb[k])
            out.emplace_back(static_cast<std::uint32_t>(k), F_->neg(static_cast<std::uint32_t>(comb[k])));
    return out;
}

std::size_t rank(const SparseMatrix& m, const PrimeField& F)
{
    SpanSolver s(F, m.rows, false);
    for (const auto& c : m.columns) {
        s.add(c);
        if (s.rank() == m.rows)
            break;
    }
    return s.rank();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m, const PrimeField& F)
{
    SpanSolver s(F, m.rows, true);
    for (const auto& c : m.columns)
        s.add(c);
    return s.relations();
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b, const PrimeField& F)
{
    SpanSolver s(F, m.rows, true);
    for (const auto& c : m.columns)
        s.add(c);
    return s.solve(b);
}

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, std::uint32_t c, const PrimeField& F)
{
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            std::uint32_t v = F.mul(b[j].second, c);
            if (v)
                out.emplace_back(b[j].first, v);
            ++j;
        } else {
            std::uint32_t v = F.add(a[i].second, F.mul(b[j].second, c));
            if (v)
                out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace tatecm

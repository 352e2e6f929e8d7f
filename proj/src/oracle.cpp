#include "tatecm/oracle.hpp"

#include <algorithm>

#include "tatecm/arith.hpp"
#include "tatecm/error.hpp"

namespace tatecm {

using nlohmann::json;

namespace {

std::uint64_t power(std::uint64_t b, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
        if (e & 1)
            r = r * b % p;
    return r;
}

void enumerate(std::size_t n, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (cur.size() + 1 == n) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = d; a >= 0; --a) {
        cur.push_back(a);
        enumerate(n, d - a, cur, out);
        cur.pop_back();
    }
}

// Row reduction in place; returns the rank. Rows are dense vectors mod p.
std::size_t row_reduce(std::vector<std::vector<std::uint64_t>>& rows, std::size_t ncols, std::uint64_t p,
                       std::vector<std::size_t>* pivots = nullptr)
{
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t pick = rank;
        while (pick < rows.size() && rows[pick][col] == 0)
            ++pick;
        if (pick == rows.size())
            continue;
        std::swap(rows[rank], rows[pick]);
        const std::uint64_t inv = power(rows[rank][col], p - 2, p);
        for (auto& v : rows[rank])
            v = v * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0)
                continue;
            const std::uint64_t f = rows[r][col];
            for (std::size_t k = col; k < ncols; ++k)
                rows[r][k] = (rows[r][k] + (p - f) * rows[rank][k]) % p;
        }
        if (pivots)
            pivots->push_back(col);
        ++rank;
    }
    return rank;
}

}  // namespace

struct DenseOracle::Piece {
    std::vector<std::vector<int>> monomials;
    std::map<std::vector<int>, std::size_t> index;
    std::vector<std::vector<std::uint64_t>> ideal;  // reduced row echelon form of I_e
    std::vector<std::size_t> pivots;
    std::vector<long> quotient_slot;  // column -> position among non-pivot columns, or -1
    std::size_t quotient_dim = 0;
};

DenseOracle::DenseOracle(const json& j)
{
    try {
        p_ = j.at("field_char").get<std::uint64_t>();
        const auto vars = j.at("variables").get<std::vector<std::string>>();
        nvars_ = vars.size();
        RingPtr ring = make_ring(vars, static_cast<std::uint32_t>(p_));
        auto to_terms = [&](const std::string& s) {
            std::vector<std::pair<Exponent, std::uint64_t>> out;
            const Polynomial poly = parse_polynomial(s, ring);
            for (const auto& t : poly.terms())
                out.emplace_back(Exponent(t.mono.exp.begin(), t.mono.exp.begin() + nvars_), t.coef);
            return out;
        };
        for (const auto& s : j.at("ideal"))
            ideal_.push_back(to_terms(s.get<std::string>()));
        lo_ = j.at("lo").get<int>();
        hi_ = j.at("hi").get<int>();
        bounded_below_ = j.at("bounded_below").get<bool>();
        bounded_above_ = j.at("bounded_above").get<bool>();
        for (const auto& t : j.at("terms")) {
            std::vector<int> degs;
            for (int tw : t.at("twists").get<std::vector<int>>())
                degs.push_back(-tw);
            degrees_.push_back(std::move(degs));
        }
        for (const auto& dj : j.at("differentials")) {
            std::vector<std::vector<Entry>> m;
            for (const auto& row : dj.at("entries")) {
                std::vector<Entry> r;
                for (const auto& s : row)
                    r.push_back({to_terms(s.get<std::string>())});
                m.push_back(std::move(r));
            }
            d_.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::FormatError, e.what());
    }
    if (degrees_.size() != static_cast<std::size_t>(hi_ - lo_ + 1) || d_.size() != degrees_.size() - 1)
        throw Error(ErrorKind::FormatError, "window and term count disagree");
}

DenseOracle::~DenseOracle() = default;

const DenseOracle::Piece& DenseOracle::piece(int e)
{
    auto& slot = pieces_[e];
    if (slot)
        return *slot;
    slot = std::make_unique<Piece>();
    Piece& P = *slot;
    if (e >= 0) {
        std::vector<int> cur;
        if (nvars_ == 0) {
            if (e == 0)
                P.monomials.push_back({});
        } else {
            enumerate(nvars_, e, cur, P.monomials);
        }
    }
    for (std::size_t k = 0; k < P.monomials.size(); ++k)
        P.index[P.monomials[k]] = k;
    const std::size_t n = P.monomials.size();
    for (const auto& g : ideal_) {
        if (g.empty())
            continue;
        int dg = 0;
        for (int a : g.front().first)
            dg += a;
        if (dg > e)
            continue;
        std::vector<std::vector<int>> mults;
        std::vector<int> cur;
        if (nvars_ > 0)
            enumerate(nvars_, e - dg, cur, mults);
        for (const auto& mu : mults) {
            std::vector<std::uint64_t> row(n, 0);
            for (const auto& [ex, c] : g) {
                std::vector<int> prod(nvars_);
                for (std::size_t v = 0; v < nvars_; ++v)
                    prod[v] = ex[v] + mu[v];
                row[P.index.at(prod)] = c;
            }
            P.ideal.push_back(std::move(row));
        }
    }
    const std::size_t r = row_reduce(P.ideal, n, p_, &P.pivots);
    P.ideal.resize(r);
    P.quotient_slot.assign(n, -1);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : P.pivots)
        is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            P.quotient_slot[c] = static_cast<long>(P.quotient_dim++);
    return P;
}

std::size_t DenseOracle::dim(int i, int d)
{
    if (i < lo_ || i > hi_)
        return 0;
    std::size_t total = 0;
    for (int a : degrees_[static_cast<std::size_t>(i - lo_)])
        total += piece(d - a).quotient_dim;
    return total;
}

int DenseOracle::rank_of(int i, int d)
{
    if (i <= lo_ || i > hi_)
        return 0;
    const auto& src = degrees_[static_cast<std::size_t>(i - lo_)];
    const auto& tgt = degrees_[static_cast<std::size_t>(i - lo_ - 1)];
    const auto& M = d_[static_cast<std::size_t>(i - lo_ - 1)];
    std::vector<std::size_t> row_offset{0};
    for (int b : tgt)
        row_offset.push_back(row_offset.back() + piece(d - b).quotient_dim);
    const std::size_t nrows = row_offset.back();
    // one image vector per basis element of (C_i)_d, stored as a row
    std::vector<std::vector<std::uint64_t>> images;
    for (std::size_t c = 0; c < src.size(); ++c) {
        const Piece& dom = piece(d - src[c]);
        for (std::size_t k = 0; k < dom.monomials.size(); ++k) {
            if (dom.quotient_slot[k] < 0)
                continue;
            const auto& mu = dom.monomials[k];
            std::vector<std::uint64_t> img(nrows, 0);
            for (std::size_t r = 0; r < tgt.size(); ++r) {
                const auto& entry = M[r][c].terms;
                if (entry.empty())
                    continue;
                const Piece& cod = piece(d - tgt[r]);
                std::vector<std::uint64_t> v(cod.monomials.size(), 0);
                for (const auto& [ex, coef] : entry) {
                    std::vector<int> prod(nvars_);
                    for (std::size_t t = 0; t < nvars_; ++t)
                        prod[t] = ex[t] + mu[t];
                    auto it = cod.index.find(prod);
                    if (it == cod.index.end())
                        throw Error(ErrorKind::DegreeMismatch, "entry of d_" + std::to_string(i) + " has the wrong degree");
                    v[it->second] = (v[it->second] + coef) % p_;
                }
                for (std::size_t q = 0; q < cod.ideal.size(); ++q) {
                    const std::uint64_t f = v[cod.pivots[q]];
                    if (f == 0)
                        continue;
                    for (std::size_t t = 0; t < v.size(); ++t)
                        v[t] = (v[t] + (p_ - f) * cod.ideal[q][t]) % p_;
                }
                for (std::size_t t = 0; t < v.size(); ++t)
                    if (cod.quotient_slot[t] >= 0)
                        img[row_offset[r] + static_cast<std::size_t>(cod.quotient_slot[t])] = v[t];
            }
            images.push_back(std::move(img));
        }
    }
    return static_cast<int>(row_reduce(images, nrows, p_));
}

int DenseOracle::homology(int i, int d)
{
    if ((i <= lo_ && !bounded_below_) || (i >= hi_ && !bounded_above_))
        throw Error(ErrorKind::WindowEdge, "H_" + std::to_string(i) + " needs a neighbour outside the window");
    if (i < lo_ || i > hi_)
        return 0;
    return static_cast<int>(dim(i, d)) - rank_of(i, d) - rank_of(i + 1, d);
}

int oracle_homology(const json& complex, int i, int d)
{
    DenseOracle o(complex);
    return o.homology(i, d);
}

}  // namespace tatecm

#include "tatecm/arith.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tatecm {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::InhomogeneousInput: return "InhomogeneousInput";
    case ErrorKind::NotInIdeal: return "NotInIdeal";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::WindowEdge: return "WindowEdge";
    case ErrorKind::LiftIdentityFails: return "LiftIdentityFails";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::ChainMapFails: return "ChainMapFails";
    case ErrorKind::H0HcNotIso: return "H0HcNotIso";
    case ErrorKind::ContainmentFails: return "ContainmentFails";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::AcyclicityFails: return "AcyclicityFails";
    case ErrorKind::H0IsoFails: return "H0IsoFails";
    case ErrorKind::LiftFails: return "LiftFails";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_prime(std::uint32_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidField, std::to_string(p) + " is not prime");
    if (p > (1u << 31))
        throw Error(ErrorKind::InvalidField, "characteristic must fit in 31 bits");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept
{
    std::uint32_t r = 1 % p_;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a == 0)
        throw Error(ErrorKind::InvalidArgument, "inverse of zero");
    return pow(a, p_ - 2);
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name)
            return i;
    return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> vars, std::uint32_t p)
{
    if (vars.size() > kMaxVars)
        throw Error(ErrorKind::InvalidArgument, "at most 16 variables are supported");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw Error(ErrorKind::InvalidArgument, "duplicate variable " + vars[i]);
    return std::make_shared<const PolyRing>(PolyRing{PrimeField(p), std::move(vars)});
}

// ---- monomials ----

Monomial Monomial::from(std::span<const int> exps)
{
    if (exps.size() > kMaxVars)
        throw Error(ErrorKind::InvalidArgument, "exponent vector too long");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0)
            throw Error(ErrorKind::NegativeExponent, "negative exponent in monomial");
        m.exp[i] = static_cast<std::uint16_t>(exps[i]);
        m.deg += exps[i];
    }
    return m;
}

Monomial Monomial::variable(std::size_t i)
{
    Monomial m;
    m.exp[i] = 1;
    m.deg = 1;
    return m;
}

bool Monomial::divides(const Monomial& other) const noexcept
{
    if (deg > other.deg)
        return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > other.exp[i])
            return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const noexcept
{
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        m.exp[i] = static_cast<std::uint16_t>(exp[i] + other.exp[i]);
    m.deg = deg + other.deg;
    return m;
}

Monomial Monomial::quotient_of(const Monomial& other) const noexcept
{
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        m.exp[i] = static_cast<std::uint16_t>(other.exp[i] - exp[i]);
    m.deg = other.deg - deg;
    return m;
}

Monomial Monomial::lcm(const Monomial& other) const noexcept
{
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        m.exp[i] = std::max(exp[i], other.exp[i]);
        m.deg += m.exp[i];
    }
    return m;
}

bool Monomial::coprime(const Monomial& other) const noexcept
{
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] && other.exp[i])
            return false;
    return true;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) noexcept
{
    if (a.deg != b.deg)
        return a.deg > b.deg ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;) {
        if (a.exp[i] != b.exp[i])
            return a.exp[i] < b.exp[i] ? 1 : -1;
    }
    return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exp) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void enumerate_monomials(std::size_t nvars, std::size_t var, int remaining, Monomial& cur, std::vector<Monomial>& out)
{
    if (var + 1 == nvars) {
        cur.exp[var] = static_cast<std::uint16_t>(remaining);
        out.push_back(cur);
        cur.exp[var] = 0;
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur.exp[var] = static_cast<std::uint16_t>(e);
        enumerate_monomials(nvars, var + 1, remaining - e, cur, out);
    }
    cur.exp[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d)
{
    std::vector<Monomial> out;
    if (d < 0)
        return out;
    if (nvars == 0) {
        if (d == 0)
            out.emplace_back();
        return out;
    }
    Monomial cur;
    cur.deg = static_cast<std::uint32_t>(d);
    enumerate_monomials(nvars, 0, d, cur, out);
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

// ---- polynomials ----

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring))
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; });
    const auto& F = ring_->field;
    for (auto& t : terms) {
        t.coef = t.coef % F.characteristic();
        if (!terms_.empty() && terms_.back().mono == t.mono) {
            terms_.back().coef = F.add(terms_.back().coef, t.coef);
            if (terms_.back().coef == 0)
                terms_.pop_back();
        } else if (t.coef != 0) {
            terms_.push_back(t);
        }
    }
}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c)
{
    std::uint32_t v = ring->field.reduce(c);
    Polynomial p(std::move(ring));
    if (v)
        p.terms_.push_back({Monomial{}, v});
    return p;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, std::uint32_t coef)
{
    Polynomial p(std::move(ring));
    coef %= p.field().characteristic();
    if (coef)
        p.terms_.push_back({m, coef});
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i)
{
    if (i >= ring->nvars())
        throw Error(ErrorKind::InvalidArgument, "variable index out of range");
    return monomial(std::move(ring), Monomial::variable(i), 1);
}

std::optional<int> Polynomial::total_degree() const
{
    if (terms_.empty())
        return std::nullopt;
    // grevlex is degree-compatible, so the lead term has maximal degree.
    return static_cast<int>(terms_.front().mono.deg);
}

bool Polynomial::is_homogeneous() const noexcept
{
    for (const auto& t : terms_)
        if (t.mono.deg != terms_.front().mono.deg)
            return false;
    return true;
}

std::uint32_t Polynomial::constant_term() const noexcept
{
    if (!terms_.empty() && terms_.back().mono.deg == 0)
        return terms_.back().coef;
    return 0;
}

std::uint32_t Polynomial::coefficient(const Monomial& m) const noexcept
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return grevlex_cmp(t.mono, x) > 0; });
    if (it != terms_.end() && it->mono == m)
        return it->coef;
    return 0;
}

void Polynomial::check_same(const Polynomial& o) const
{
    if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
        throw Error(ErrorKind::ContextMismatch, "polynomials live in different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    check_same(o);
    const auto& F = field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = grevlex_cmp(terms_[i].mono, o.terms_[j].mono);
        if (c > 0)
            r.terms_.push_back(terms_[i++]);
        else if (c < 0)
            r.terms_.push_back(o.terms_[j++]);
        else {
            std::uint32_t s = F.add(terms_[i].coef, o.terms_[j].coef);
            if (s)
                r.terms_.push_back({terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    r.terms_.insert(r.terms_.end(), terms_.begin() + i, terms_.end());
    r.terms_.insert(r.terms_.end(), o.terms_.begin() + j, o.terms_.end());
    return r;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(*this);
    for (auto& t : r.terms_)
        t.coef = field().neg(t.coef);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    check_same(o);
    if (is_zero() || o.is_zero())
        return Polynomial(ring_);
    if (o.terms_.size() == 1)
        return times_monomial(o.terms_[0].mono, o.terms_[0].coef);
    if (terms_.size() == 1)
        return o.times_monomial(terms_[0].mono, terms_[0].coef);
    std::vector<Term> prods;
    prods.reserve(terms_.size() * o.terms_.size());
    const auto& F = field();
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            prods.push_back({a.mono * b.mono, F.mul(a.coef, b.coef)});
    return Polynomial(ring_, std::move(prods));
}

Polynomial Polynomial::scaled(std::uint32_t c) const
{
    c %= field().characteristic();
    if (c == 0)
        return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_)
        t.coef = field().mul(t.coef, c);
    return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, std::uint32_t c) const
{
    c %= field().characteristic();
    if (c == 0)
        return Polynomial(ring_);
    Polynomial r(*this);
    // Multiplying by a monomial preserves grevlex order.
    for (auto& t : r.terms_) {
        t.mono = t.mono * m;
        t.coef = field().mul(t.coef, c);
    }
    return r;
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return *this;
    return scaled(field().inv(lead().coef));
}

Polynomial Polynomial::homogeneous_part(int d) const
{
    Polynomial r(ring_);
    for (const auto& t : terms_)
        if (static_cast<int>(t.mono.deg) == d)
            r.terms_.push_back(t);
    return r;
}

std::string monomial_to_string(const Monomial& m, const PolyRing& ring)
{
    std::string s;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        if (!m.exp[i])
            continue;
        if (!s.empty())
            s += '*';
        s += ring.vars[i];
        if (m.exp[i] > 1)
            s += '^' + std::to_string(m.exp[i]);
    }
    return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& t = terms_[k];
        std::int64_t c = field().symmetric(t.coef);
        bool neg = c < 0;
        std::uint64_t mag = static_cast<std::uint64_t>(neg ? -c : c);
        if (k == 0) {
            if (neg)
                s += '-';
        } else {
            s += neg ? '-' : '+';
        }
        if (t.mono.deg == 0) {
            s += std::to_string(mag);
        } else {
            if (mag != 1)
                s += std::to_string(mag) + '*';
            s += monomial_to_string(t.mono, *ring_);
        }
    }
    return s;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op)
{
    switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown operation");
}

// ---- parser ----

namespace {

class Parser {
public:
    Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

    Polynomial parse()
    {
        skip_ws();
        if (pos_ == text_.size())
            fail("empty expression");
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorKind::SyntaxError, msg + " at byte " + std::to_string(pos_));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr()
    {
        Polynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term()
    {
        Polynomial acc = unary();
        while (accept('*'))
            acc = acc * unary();
        return acc;
    }

    Polynomial unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (!accept('^'))
            return base;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '-')
            throw Error(ErrorKind::NegativeExponent, "negative exponent at byte " + std::to_string(pos_));
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected exponent");
        std::uint64_t e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (e > 4096)
                fail("exponent too large");
            ++pos_;
        }
        Polynomial r = Polynomial::constant(ring_, 1);
        for (std::uint64_t k = 0; k < e; ++k)
            r = r * base;
        return r;
    }

    Polynomial primary()
    {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')'))
                fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto& F = ring_->field;
            std::uint32_t v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = F.add(F.mul(v, 10 % F.characteristic()), F.reduce(text_[pos_] - '0'));
                ++pos_;
            }
            return Polynomial::constant(ring_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            auto idx = ring_->index_of(name);
            if (!idx)
                throw Error(ErrorKind::UnknownVariable,
                            "'" + std::string(name) + "' at byte " + std::to_string(start));
            return Polynomial::variable(ring_, *idx);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring)
{
    return Parser(text, ring).parse();
}

}  // namespace tatecm

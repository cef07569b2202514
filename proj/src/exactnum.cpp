#include "beurling/exactnum.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace beurling {

// ---------------------------------------------------------------------------
// QuadSurd

namespace {

void require_same_radicand(const QuadSurd& a, const QuadSurd& b) {
    if (a.d != b.d)
        throw DomainError("quadratic surds over different radicands: " + std::to_string(a.d) + " vs " +
                          std::to_string(b.d));
}

int sgn(const mpz_class& v) { return ::sgn(v); }
int sgn(const mpq_class& v) { return ::sgn(v); }

} // namespace

QuadSurd quad_mul(const QuadSurd& a, const QuadSurd& b) {
    require_same_radicand(a, b);
    return {a.d, a.x * b.x + a.d * a.y * b.y, a.x * b.y + a.y * b.x};
}

QuadSurd quad_pow(const QuadSurd& a, unsigned long k) {
    QuadSurd result{a.d, 1, 0};
    QuadSurd base = a;
    while (k > 0) {
        if (k & 1UL) result = quad_mul(result, base);
        k >>= 1;
        if (k > 0) base = quad_mul(base, base);
    }
    return result;
}

QuadSurd quad_add(const QuadSurd& a, const QuadSurd& b) {
    require_same_radicand(a, b);
    return {a.d, a.x + b.x, a.y + b.y};
}

QuadSurd quad_sub(const QuadSurd& a, const QuadSurd& b) {
    require_same_radicand(a, b);
    return {a.d, a.x - b.x, a.y - b.y};
}

QuadSurd quad_conj(const QuadSurd& a) { return {a.d, a.x, -a.y}; }

mpz_class quad_norm(const QuadSurd& a) { return a.x * a.x - a.d * a.y * a.y; }

int quad_sign(const QuadSurd& a) {
    return field_sign(FieldElement{a.d, mpq_class(a.x), mpq_class(a.y)});
}

int quad_cmp_abs(const QuadSurd& a, const QuadSurd& b) {
    require_same_radicand(a, b);
    QuadSurd pa = quad_sign(a) < 0 ? QuadSurd{a.d, -a.x, -a.y} : a;
    QuadSurd pb = quad_sign(b) < 0 ? QuadSurd{b.d, -b.x, -b.y} : b;
    return quad_sign(quad_sub(pa, pb));
}

Interval enclose(const QuadSurd& a, Precision prec) {
    return Interval::point(a.x, prec) + Interval::point(a.y, prec) * sqrt(Interval::point(a.d, prec));
}

std::string to_string(const QuadSurd& a) {
    std::string s = a.x.get_str();
    if (a.y >= 0)
        s += "+" + a.y.get_str();
    else
        s += "-" + mpz_class(-a.y).get_str();
    return s + "*sqrt(" + std::to_string(a.d) + ")";
}

bool is_squarefree(long n) {
    if (n < 1) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw DomainError("isqrt of a negative integer");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const mpz_class& n, mpz_class* root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root) *root = isqrt(n);
    return true;
}

int field_sign(const FieldElement& v) {
    const int sx = sgn(v.x);
    const int sy = v.d == 1 ? 0 : sgn(v.y);
    if (v.d == 1) return sgn(v.x + v.y);
    if (sx == 0) return sy;
    if (sy == 0 || sx == sy) return sx;
    const mpq_class lhs = v.x * v.x;
    const mpq_class rhs = v.y * v.y * v.d;
    return lhs > rhs ? sx : sy;
}

// ---------------------------------------------------------------------------
// Constants

Constant Constant::log(const mpz_class& n) {
    if (n < 1) throw DomainError("log constant of a non-positive integer");
    Constant c;
    c.kind = Kind::Log;
    c.a = n;
    return c;
}

Constant Constant::atan(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("arctan constant with zero denominator");
    Constant c;
    c.kind = Kind::Atan;
    c.a = den < 0 ? mpz_class(-num) : num;
    c.b = den < 0 ? mpz_class(-den) : den;
    mpz_class g = gcd(c.a, c.b);
    if (g > 1) {
        c.a /= g;
        c.b /= g;
    }
    return c;
}

std::string Constant::to_string() const {
    switch (kind) {
    case Kind::Log: return "log(" + a.get_str() + ")";
    case Kind::Atan: return "atan(" + a.get_str() + (b == 1 ? std::string() : "/" + b.get_str()) + ")";
    case Kind::Pi: return "pi";
    }
    return "?";
}

bool operator<(const Constant& x, const Constant& y) {
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

namespace {

struct MemoKey {
    Constant constant;
    Precision prec;
    friend bool operator<(const MemoKey& l, const MemoKey& r) {
        if (l.prec != r.prec) return l.prec < r.prec;
        return l.constant < r.constant;
    }
};

std::mutex memo_mutex;
std::map<MemoKey, Interval>& memo_table() {
    static std::map<MemoKey, Interval> table;
    return table;
}

Interval compute_constant(const Constant& c, Precision prec) {
    switch (c.kind) {
    case Constant::Kind::Log: return log(Interval::point(c.a, prec));
    case Constant::Kind::Atan: return atan(Interval::point(c.a, prec) / Interval::point(c.b, prec));
    case Constant::Kind::Pi: return Interval::pi(prec);
    }
    throw DomainError("unknown constant");
}

std::atomic<long> g_initial_precision{64};
std::atomic<long> g_cap_precision{4096};

} // namespace

Interval constant_enclosure(const Constant& c, Precision prec) {
    const MemoKey key{c, prec};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo_table().find(key);
        if (it != memo_table().end()) return it->second;
    }
    Interval value = compute_constant(c, prec);
    std::lock_guard<std::mutex> lock(memo_mutex);
    return memo_table().emplace(key, std::move(value)).first->second;
}

PrecisionPolicy default_precision() {
    return {static_cast<Precision>(g_initial_precision.load()), static_cast<Precision>(g_cap_precision.load())};
}

void set_default_precision(PrecisionPolicy policy) {
    if (policy.initial < MPFR_PREC_MIN || policy.cap < policy.initial)
        throw DomainError("precision cap must be at least the initial precision");
    g_initial_precision = policy.initial;
    g_cap_precision = policy.cap;
}

Ordering3 Ordering3::reversed() const {
    Ordering3 r = *this;
    if (kind == Kind::Less) r.kind = Kind::Greater;
    else if (kind == Kind::Greater) r.kind = Kind::Less;
    return r;
}

std::string Ordering3::to_string() const {
    switch (kind) {
    case Kind::Less: return "Less";
    case Kind::Equal: return "Equal";
    case Kind::Greater: return "Greater";
    case Kind::Unresolved: return "Unresolved(" + std::to_string(precision) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// RealScalar

namespace {

constexpr unsigned long kTrialLimit = 1000000;

/// Factorization by trial division; an unfactored cofactor is kept whole.
std::vector<std::pair<mpz_class, unsigned long>> factor(mpz_class n) {
    std::vector<std::pair<mpz_class, unsigned long>> out;
    if (n <= 1) return out;
    auto strip = [&](unsigned long p) {
        unsigned long k = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++k;
        }
        if (k) out.emplace_back(mpz_class(p), k);
    };
    strip(2);
    for (unsigned long p = 3; p <= kTrialLimit; p += 2) {
        if (n == 1) break;
        if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) break;
        strip(p);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

void add_into(std::map<mpz_class, mpq_class>& m, const mpz_class& key, const mpq_class& v) {
    if (v == 0) return;
    auto [it, inserted] = m.try_emplace(key, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) m.erase(it);
    }
}

void add_into(std::map<Constant, mpq_class>& m, const Constant& key, const mpq_class& v) {
    if (v == 0) return;
    auto [it, inserted] = m.try_emplace(key, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) m.erase(it);
    }
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpq_class pow_q(const mpz_class& base, const mpz_class& e) {
    if (!e.fits_slong_p()) throw DomainError("exponent too large");
    const long k = e.get_si();
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

} // namespace

void RealScalar::absorb_rational(const mpq_class& q, const mpq_class& exponent) {
    if (q <= 0) throw DomainError("value must be positive: " + q.get_str());
    for (auto& [p, k] : factor(q.get_num())) add_into(powers_, p, exponent * mpq_class(k));
    for (auto& [p, k] : factor(q.get_den())) add_into(powers_, p, -exponent * mpq_class(k));
}

void RealScalar::absorb_surd(long d, mpz_class x, mpz_class y) {
    if (y == 0) {
        absorb_rational(mpq_class(x));
        return;
    }
    if (x == 0) {
        absorb_rational(mpq_class(y));
        absorb_rational(mpq_class(d), mpq_class(1, 2));
        return;
    }
    mpz_class g = gcd(x, y);
    x /= g;
    y /= g;
    if (quad_sign(QuadSurd{d, x, y}) < 0) {
        x = -x;
        y = -y;
        g = -g;
    }
    absorb_rational(mpq_class(g));
    auto it = surds_.find(d);
    if (it == surds_.end()) {
        surds_.emplace(d, std::make_pair(x, y));
        return;
    }
    QuadSurd prod = quad_mul(QuadSurd{d, it->second.first, it->second.second}, QuadSurd{d, x, y});
    surds_.erase(it);
    absorb_surd(d, prod.x, prod.y);
}

void RealScalar::absorb_exponent(const Constant& c, const mpq_class& coeff) {
    if (coeff == 0) return;
    switch (c.kind) {
    case Constant::Kind::Log: absorb_rational(mpq_class(c.a), coeff); return;
    case Constant::Kind::Atan:
        if (c.a == 0) return;
        if (c.a == c.b) {
            add_into(exp_, Constant::pi(), coeff / 4);
            return;
        }
        if (c.a == -c.b) {
            add_into(exp_, Constant::pi(), -coeff / 4);
            return;
        }
        add_into(exp_, c, coeff);
        return;
    case Constant::Kind::Pi: add_into(exp_, c, coeff); return;
    }
}

RealScalar RealScalar::rational(const mpq_class& q) {
    RealScalar r;
    mpq_class c = q;
    c.canonicalize();
    r.absorb_rational(c);
    return r;
}

RealScalar RealScalar::surd(const QuadSurd& s, const mpq_class& scale) {
    return surd(scale * mpq_class(s.x), scale * mpq_class(s.y), s.d);
}

RealScalar RealScalar::surd(const mpq_class& x, const mpq_class& y, long d) {
    if (d < 1) throw DomainError("surd radicand must be positive");
    // Pull the square part of d into y.
    long core = d;
    mpz_class outside = 1;
    for (long p = 2; p * p <= core; ++p) {
        while (core % (p * p) == 0) {
            core /= p * p;
            outside *= p;
        }
    }
    const mpq_class yy = y * mpq_class(outside);
    if (core == 1 || yy == 0) return rational(x + yy);
    // Clear denominators: (x + y sqrt d) = (X + Y sqrt d) / L.
    mpz_class l = lcm(x.get_den(), yy.get_den());
    mpz_class X = x.get_num() * (l / x.get_den());
    mpz_class Y = yy.get_num() * (l / yy.get_den());
    if (quad_sign(QuadSurd{core, X, Y}) <= 0) throw DomainError("surd value must be positive");
    RealScalar r;
    r.absorb_surd(core, X, Y);
    r.absorb_rational(mpq_class(mpz_class(1), l));
    return r;
}

RealScalar RealScalar::ratpow(const mpq_class& base, const mpq_class& exponent) {
    RealScalar r;
    mpq_class b = base;
    b.canonicalize();
    mpq_class e = exponent;
    e.canonicalize();
    r.absorb_rational(b, e);
    return r;
}

RealScalar RealScalar::expform(const mpq_class& offset, const std::map<Constant, mpq_class>& coeffs) {
    RealScalar r;
    r.offset_ = offset;
    r.offset_.canonicalize();
    for (const auto& [c, k] : coeffs) r.absorb_exponent(c, k);
    return r;
}

RealScalar::Kind RealScalar::kind() const {
    const bool has_exp = !exp_.empty() || offset_ != 0;
    const bool all_int = std::all_of(powers_.begin(), powers_.end(), [](const auto& kv) { return is_integer(kv.second); });
    if (has_exp) return surds_.empty() ? Kind::ExpForm : Kind::Product;
    if (!surds_.empty()) return (surds_.size() == 1 && all_int) ? Kind::Surd : Kind::Product;
    return all_int ? Kind::Rational : Kind::RatPow;
}

std::string RealScalar::kind_name(Kind k) {
    switch (k) {
    case Kind::Rational: return "rational";
    case Kind::Surd: return "surd";
    case Kind::RatPow: return "ratpow";
    case Kind::ExpForm: return "expform";
    case Kind::Product: return "product";
    }
    return "?";
}

RealScalar& RealScalar::operator*=(const RealScalar& other) {
    for (const auto& [b, e] : other.powers_) add_into(powers_, b, e);
    for (const auto& [d, xy] : other.surds_) absorb_surd(d, xy.first, xy.second);
    offset_ += other.offset_;
    for (const auto& [c, k] : other.exp_) add_into(exp_, c, k);
    return *this;
}

RealScalar RealScalar::operator*(const RealScalar& other) const {
    RealScalar r = *this;
    r *= other;
    return r;
}

RealScalar RealScalar::inverse() const {
    RealScalar r;
    for (const auto& [b, e] : powers_) r.powers_.emplace(b, -e);
    r.offset_ = -offset_;
    for (const auto& [c, k] : exp_) r.exp_.emplace(c, -k);
    for (const auto& [d, xy] : surds_) {
        const mpz_class norm = xy.first * xy.first - d * xy.second * xy.second;
        const int s = sgn(norm);
        r.absorb_surd(d, s * xy.first, -s * xy.second);
        r.absorb_rational(mpq_class(mpz_class(1), mpz_class(abs(norm))));
    }
    return r;
}

RealScalar RealScalar::pow(const mpq_class& e) const {
    if (!is_integer(e) && !surds_.empty()) throw DomainError("non-integer power of a quadratic surd is not representable");
    if (e == 0) return one();
    if (!surds_.empty()) {
        const mpz_class n = e.get_num();
        if (!n.fits_slong_p()) throw DomainError("power exponent too large");
        long k = n.get_si();
        RealScalar base = k < 0 ? inverse() : *this;
        k = k < 0 ? -k : k;
        RealScalar result;
        while (k > 0) {
            if (k & 1) result *= base;
            k >>= 1;
            if (k > 0) base *= base;
        }
        return result;
    }
    RealScalar r;
    for (const auto& [b, x] : powers_) r.powers_.emplace(b, x * e);
    r.offset_ = offset_ * e;
    for (const auto& [c, k] : exp_) r.exp_.emplace(c, k * e);
    return r;
}

bool RealScalar::is_one() const { return powers_.empty() && surds_.empty() && offset_ == 0 && exp_.empty(); }

std::optional<mpq_class> RealScalar::as_rational() const {
    if (!surds_.empty() || offset_ != 0 || !exp_.empty()) return std::nullopt;
    mpq_class r = 1;
    for (const auto& [b, e] : powers_) {
        if (!is_integer(e)) return std::nullopt;
        r *= pow_q(b, e.get_num());
    }
    return r;
}

std::optional<FieldElement> RealScalar::as_field_element() const {
    if (offset_ != 0 || !exp_.empty() || surds_.size() > 1) return std::nullopt;
    mpq_class rat = 1;
    mpz_class half = 1;
    for (const auto& [b, e] : powers_) {
        const mpz_class fl = floor_q(e);
        const mpq_class frac = e - mpq_class(fl);
        if (frac != 0 && frac != mpq_class(1, 2)) return std::nullopt;
        rat *= pow_q(b, fl);
        if (frac != 0) half *= b;
    }
    if (!half.fits_slong_p()) return std::nullopt;
    long h = half.get_si();
    if (h > 1 && !is_squarefree(h)) return std::nullopt;
    if (surds_.empty()) {
        if (h == 1) return FieldElement{1, rat, 0};
        return FieldElement{h, 0, rat};
    }
    const auto& [d, xy] = *surds_.begin();
    if (h == 1) return FieldElement{d, rat * mpq_class(xy.first), rat * mpq_class(xy.second)};
    if (h == d) return FieldElement{d, rat * mpq_class(xy.second * d), rat * mpq_class(xy.first)};
    return std::nullopt;
}

Interval RealScalar::enclose(Precision prec) const {
    mpq_class rat = 1;
    Interval exponent = Interval::point(offset_, prec);
    bool has_exponent = offset_ != 0 || !exp_.empty();
    for (const auto& [b, e] : powers_) {
        const mpz_class fl = floor_q(e);
        rat *= pow_q(b, fl);
        const mpq_class frac = e - mpq_class(fl);
        if (frac != 0) {
            exponent = exponent + scale(constant_enclosure(Constant::log(b), prec), frac);
            has_exponent = true;
        }
    }
    for (const auto& [c, k] : exp_) exponent = exponent + scale(constant_enclosure(c, prec), k);
    Interval value = Interval::point(rat, prec);
    if (has_exponent) value = value * exp(exponent);
    for (const auto& [d, xy] : surds_) value = value * beurling::enclose(QuadSurd{d, xy.first, xy.second}, prec);
    return value;
}

Interval RealScalar::log_enclose(Precision prec) const {
    Interval total = Interval::point(offset_, prec);
    for (const auto& [b, e] : powers_) total = total + scale(constant_enclosure(Constant::log(b), prec), e);
    for (const auto& [c, k] : exp_) total = total + scale(constant_enclosure(c, prec), k);
    for (const auto& [d, xy] : surds_) {
        Interval s = beurling::enclose(QuadSurd{d, xy.first, xy.second}, prec);
        if (!s.positive()) {
            // Near-cancelling surd: use log(|norm|) - log(conjugate).
            const mpz_class norm = abs(xy.first * xy.first - d * xy.second * xy.second);
            Interval conj = abs(beurling::enclose(QuadSurd{d, xy.first, -xy.second}, prec));
            total = total + log(Interval::point(norm, prec)) - log(conj);
        } else {
            total = total + log(s);
        }
    }
    return total;
}

std::pair<mpq_class, mpq_class> RealScalar::ratpow_view() const {
    if (powers_.empty()) return {mpq_class(1), mpq_class(1)};
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (const auto& [b, e] : powers_) {
        num_gcd = gcd(num_gcd, e.get_num());
        den_lcm = lcm(den_lcm, e.get_den());
    }
    mpq_class g(num_gcd, den_lcm);
    g.canonicalize();
    // Orient the exponent so the base exceeds one.
    mpq_class base = 1;
    for (const auto& [b, e] : powers_) {
        const mpq_class k = e / g;
        base *= pow_q(b, k.get_num());
    }
    if (base < 1) {
        base = 1 / base;
        g = -g;
    }
    return {base, g};
}

namespace {

std::string exponent_text(const mpq_class& offset, const std::vector<std::pair<std::string, mpq_class>>& terms) {
    std::string out;
    auto append = [&](const mpq_class& k, const std::string& name) {
        const bool neg = k < 0;
        const mpq_class mag = neg ? mpq_class(-k) : k;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        if (name.empty())
            out += q_str(mag);
        else if (mag == 1)
            out += name;
        else
            out += q_str(mag) + "*" + name;
    };
    if (offset != 0) append(offset, "");
    for (const auto& [name, k] : terms) append(k, name);
    if (out.empty()) out = "0";
    return out;
}

std::string field_text(const mpq_class& x, const mpq_class& y, long d) {
    std::string s = q_str(x);
    s += y < 0 ? "-" + q_str(-y) : "+" + q_str(y);
    return s + "*sqrt(" + std::to_string(d) + ")";
}

} // namespace

std::string RealScalar::to_string() const {
    switch (kind()) {
    case Kind::Rational: return q_str(*as_rational());
    case Kind::Surd: {
        const auto fe = as_field_element();
        if (fe && fe->d != 1) return field_text(fe->x, fe->y, fe->d);
        break;
    }
    case Kind::RatPow: {
        auto [base, e] = ratpow_view();
        return "pow(" + q_str(base) + "," + q_str(e) + ")";
    }
    case Kind::ExpForm: {
        std::vector<std::pair<std::string, mpq_class>> terms;
        for (const auto& [b, e] : powers_) terms.emplace_back(Constant::log(b).to_string(), e);
        for (const auto& [c, k] : exp_) terms.emplace_back(c.to_string(), k);
        return "exp(" + exponent_text(offset_, terms) + ")";
    }
    case Kind::Product: break;
    }
    // Mixed product: base powers, then surds, then the exponential factor.
    std::vector<std::string> parts;
    if (!powers_.empty()) {
        RealScalar p;
        p.powers_ = powers_;
        parts.push_back(p.to_string());
    }
    for (const auto& [d, xy] : surds_) parts.push_back("(" + field_text(mpq_class(xy.first), mpq_class(xy.second), d) + ")");
    if (offset_ != 0 || !exp_.empty()) {
        std::vector<std::pair<std::string, mpq_class>> terms;
        for (const auto& [c, k] : exp_) terms.emplace_back(c.to_string(), k);
        parts.push_back("exp(" + exponent_text(offset_, terms) + ")");
    }
    if (parts.empty()) return "1";
    std::string out = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

bool operator==(const RealScalar& a, const RealScalar& b) {
    return a.powers_ == b.powers_ && a.surds_ == b.surds_ && a.offset_ == b.offset_ && a.exp_ == b.exp_;
}

bool structural_less(const RealScalar& a, const RealScalar& b) {
    if (a == b) return false;
    return a.to_string() < b.to_string();
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

std::optional<FieldElement> common_field_difference(const std::vector<std::pair<const RealScalar*, int>>& terms) {
    long d = 1;
    FieldElement acc{1, 0, 0};
    for (const auto& [v, s] : terms) {
        auto fe = v->as_field_element();
        if (!fe) return std::nullopt;
        if (fe->d != 1) {
            if (d != 1 && d != fe->d) return std::nullopt;
            d = fe->d;
        }
        acc.x += s * fe->x;
        acc.y += s * fe->y;
    }
    acc.d = d;
    return acc;
}

Ordering3 from_sign(int s, Precision prec) {
    Ordering3 o;
    o.precision = prec;
    o.kind = s < 0 ? Ordering3::Kind::Less : (s > 0 ? Ordering3::Kind::Greater : Ordering3::Kind::Equal);
    return o;
}

} // namespace

Ordering3 compare(const RealScalar& a, const RealScalar& b, PrecisionPolicy policy) {
    if (a == b) return from_sign(0, policy.initial);
    if (auto diff = common_field_difference({{&a, 1}, {&b, -1}})) return from_sign(field_sign(*diff), policy.initial);

    const RealScalar quotient = a * b.inverse();
    if (quotient.is_one()) return from_sign(0, policy.initial);
    if (auto fe = quotient.as_field_element()) {
        fe->x -= 1;
        return from_sign(field_sign(*fe), policy.initial);
    }
    for (Precision p = policy.initial; p <= policy.cap; p *= 2) {
        const Interval l = quotient.log_enclose(p);
        if (l.positive()) return from_sign(1, p);
        if (l.negative()) return from_sign(-1, p);
    }
    return Ordering3{Ordering3::Kind::Unresolved, policy.cap};
}

Ordering3 compare_gap(const RealScalar& hi, const RealScalar& lo, const RealScalar& delta, PrecisionPolicy policy) {
    if (auto diff = common_field_difference({{&hi, 1}, {&lo, -1}, {&delta, -1}}))
        return from_sign(field_sign(*diff), policy.initial);
    for (Precision p = policy.initial; p <= policy.cap; p *= 2) {
        const Interval g = hi.enclose(p) - lo.enclose(p) - delta.enclose(p);
        if (g.positive()) return from_sign(1, p);
        if (g.negative()) return from_sign(-1, p);
    }
    return Ordering3{Ordering3::Kind::Unresolved, policy.cap};
}

Interval enclose_difference(const RealScalar& a, const RealScalar& b, Precision prec) {
    if (auto diff = common_field_difference({{&a, 1}, {&b, -1}})) {
        Interval v = Interval::point(diff->x, prec);
        if (diff->d != 1 && diff->y != 0)
            v = v + Interval::point(diff->y, prec) * sqrt(Interval::point(diff->d, prec));
        return v;
    }
    return a.enclose(prec) - b.enclose(prec);
}

Interval refine_difference(const RealScalar& a, const RealScalar& b, long bits, PrecisionPolicy policy) {
    BigFloat target(64);
    mpfr_set_ui_2exp(target.get(), 1, -bits, MPFR_RNDN);
    Interval iv = enclose_difference(a, b, policy.initial);
    for (Precision p = policy.initial * 2; p <= policy.cap && iv.width() >= target; p *= 2)
        iv = enclose_difference(a, b, p);
    return iv;
}

// ---------------------------------------------------------------------------
// Decimal output

namespace {

std::string fixed_point(const mpz_class& scaled, int digits) {
    const bool neg = scaled < 0;
    std::string s = mpz_class(neg ? -scaled : scaled).get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
    return (neg ? "-" : "") + s;
}

std::string upper_bound_text(const BigFloat& err) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.3RUe", err.get());
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

mpz_class pow10(int digits) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    return p;
}

} // namespace

Decimal to_decimal(const Interval& iv, int digits) {
    if (digits < 1) throw DomainError("digits must be at least 1");
    const Precision prec = iv.precision() + 8;
    BigFloat mid = iv.midpoint();
    BigFloat scaled(prec);
    mpfr_mul_z(scaled.get(), mid.get(), pow10(digits).get_mpz_t(), MPFR_RNDN);
    mpz_class rounded;
    mpfr_get_z(rounded.get_mpz_t(), scaled.get(), MPFR_RNDN);

    // err = max(rounded/10^d - lo, hi - rounded/10^d), rounded up.
    const mpq_class r(rounded, pow10(digits));
    BigFloat up(prec), down(prec), a(prec), b(prec);
    mpfr_set_q(up.get(), r.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(down.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_sub(a.get(), up.get(), iv.lo().get(), MPFR_RNDU);
    mpfr_sub(b.get(), iv.hi().get(), down.get(), MPFR_RNDU);
    BigFloat err = a > b ? a : b;
    if (err.sign() < 0) mpfr_set_zero(err.get(), 1);
    Decimal out;
    out.text = fixed_point(rounded, digits);
    out.exact = iv.is_point() && err.is_zero();
    out.error_bound = out.exact ? "0" : upper_bound_text(err);
    return out;
}

Decimal to_decimal(const RealScalar& a, int digits) {
    if (digits < 1) throw DomainError("digits must be at least 1");
    if (auto q = a.as_rational()) {
        const mpq_class scaled = *q * mpq_class(pow10(digits));
        // Round half up.
        mpz_class rounded;
        mpz_class twice_num = 2 * scaled.get_num() + scaled.get_den();
        mpz_fdiv_q(rounded.get_mpz_t(), twice_num.get_mpz_t(), mpz_class(2 * scaled.get_den()).get_mpz_t());
        Decimal out;
        out.text = fixed_point(rounded, digits);
        const mpq_class err = abs(mpq_class(rounded, pow10(digits)) - *q);
        out.exact = err == 0;
        if (out.exact) {
            out.error_bound = "0";
        } else {
            BigFloat e(64);
            mpfr_set_q(e.get(), err.get_mpq_t(), MPFR_RNDU);
            out.error_bound = upper_bound_text(e);
        }
        return out;
    }
    // Width below 10^-digits / 4 leaves room for the final rounding.
    mpq_class target(mpz_class(1), 4 * pow10(digits));
    BigFloat tgt(64);
    mpfr_set_q(tgt.get(), target.get_mpq_t(), MPFR_RNDD);
    Precision p = std::max<Precision>(64, static_cast<Precision>(digits * 4 + 32));
    Interval iv = a.enclose(p);
    while (iv.width() >= tgt && p < (1 << 20)) {
        p *= 2;
        iv = a.enclose(p);
    }
    return to_decimal(iv, digits);
}

} // namespace beurling

#include "beurling/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace beurling {

BigFloat::BigFloat(Precision prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    char* buf = nullptr;
    mpfr_asprintf(&buf, fmt.c_str(), value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Interval::Interval(Precision prec) : lo_(prec), hi_(prec) {}

Interval Interval::point(const mpz_class& value, Precision prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::point(const mpq_class& value, Precision prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::point(long value, Precision prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_.get(), value, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), value, MPFR_RNDU);
    return r;
}

Interval Interval::from_bounds(const BigFloat& lo, const BigFloat& hi) {
    if (lo > hi) throw std::invalid_argument("interval bounds out of order");
    Interval r(std::max(lo.precision(), hi.precision()));
    mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    return r;
}

Interval Interval::pi(Precision prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

bool Interval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

BigFloat Interval::width() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
}

BigFloat Interval::midpoint() const {
    BigFloat m(precision() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

bool Interval::floor(mpz_class& out) const {
    if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get())) return false;
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo_.get(), MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi_.get(), MPFR_RNDD);
    if (a != b) return false;
    out = a;
    return true;
}

std::string Interval::to_string(int digits) const {
    return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

namespace {

Precision joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

} // namespace

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(joint(a, b));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(joint(a, b));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a) {
    Interval r(a.precision());
    mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    const Precision prec = joint(a, b);
    Interval r(prec);
    if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) {
        mpfr_mul(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_mul(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    BigFloat t(prec);
    mpfr_srcptr al[2] = {a.lo_.get(), a.hi_.get()};
    mpfr_srcptr bl[2] = {b.lo_.get(), b.hi_.get()};
    bool first = true;
    for (auto x : al) {
        for (auto y : bl) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
    Interval inv(b.precision());
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
}

Interval abs(const Interval& x) {
    if (x.lo().sign() >= 0) return x;
    if (x.hi().sign() <= 0) return -x;
    BigFloat zero(x.precision());
    BigFloat top(x.precision());
    mpfr_neg(top.get(), x.lo().get(), MPFR_RNDU);
    if (top < x.hi()) top = x.hi();
    return Interval::from_bounds(zero, top);
}

namespace {

using MonoFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Interval monotone(const Interval& x, MonoFn fn) {
    BigFloat lo(x.precision());
    BigFloat hi(x.precision());
    fn(lo.get(), x.lo().get(), MPFR_RNDD);
    fn(hi.get(), x.hi().get(), MPFR_RNDU);
    return Interval::from_bounds(lo, hi);
}

} // namespace

Interval sqrt(const Interval& x) {
    if (x.lo().sign() < 0) throw std::domain_error("sqrt of an interval with negative part");
    return monotone(x, mpfr_sqrt);
}

Interval exp(const Interval& x) { return monotone(x, mpfr_exp); }

Interval log(const Interval& x) {
    if (!x.positive()) throw std::domain_error("log of an interval not bounded away from zero");
    return monotone(x, mpfr_log);
}

Interval atan(const Interval& x) { return monotone(x, mpfr_atan); }

Interval sin(const Interval& x) {
    const Precision prec = x.precision();
    BigFloat one(prec);
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    BigFloat minus_one(prec);
    mpfr_set_si(minus_one.get(), -1, MPFR_RNDN);
    const Interval fallback = Interval::from_bounds(minus_one, one);

    // Monotone when cos keeps a certified sign at both ends of a short interval.
    BigFloat w = x.width();
    if (mpfr_cmp_d(w.get(), 1.0) >= 0) return fallback;
    auto cos_sign = [&](const BigFloat& at) {
        BigFloat lo(prec), hi(prec);
        mpfr_cos(lo.get(), at.get(), MPFR_RNDD);
        mpfr_cos(hi.get(), at.get(), MPFR_RNDU);
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    };
    const int s_lo = cos_sign(x.lo());
    const int s_hi = cos_sign(x.hi());
    if (s_lo == 0 || s_lo != s_hi) return fallback;

    BigFloat a_lo(prec), a_hi(prec), b_lo(prec), b_hi(prec);
    mpfr_sin(a_lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_sin(a_hi.get(), x.lo().get(), MPFR_RNDU);
    mpfr_sin(b_lo.get(), x.hi().get(), MPFR_RNDD);
    mpfr_sin(b_hi.get(), x.hi().get(), MPFR_RNDU);
    if (s_lo > 0) return Interval::from_bounds(a_lo, b_hi);
    return Interval::from_bounds(b_lo, a_hi);
}

Interval scale(const Interval& x, const mpq_class& factor) {
    return x * Interval::point(factor, x.precision());
}

} // namespace beurling

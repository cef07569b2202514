#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>

namespace beurling {

using Precision = mpfr_prec_t;

/// Owning wrapper around an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(Precision prec = 64);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    Precision precision() const { return mpfr_get_prec(value_); }

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

private:
    mpfr_t value_;
};

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
/// lower endpoint down and the upper endpoint up, so the true value of any
/// expression built from enclosures stays inside the result.
class Interval {
public:
    explicit Interval(Precision prec = 64);

    static Interval point(const mpz_class& value, Precision prec);
    static Interval point(const mpq_class& value, Precision prec);
    static Interval point(long value, Precision prec);
    static Interval from_bounds(const BigFloat& lo, const BigFloat& hi);
    static Interval pi(Precision prec);
    /// Hull of both arguments.
    static Interval hull(const Interval& a, const Interval& b);

    Precision precision() const { return lo_.precision(); }
    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }

    bool positive() const { return lo_.sign() > 0; }
    bool negative() const { return hi_.sign() < 0; }
    bool contains_zero() const { return !positive() && !negative(); }
    bool contains(const mpq_class& q) const;
    bool is_point() const { return lo_ == hi_; }

    /// Upper bound on hi - lo.
    BigFloat width() const;
    /// Midpoint, rounded to nearest (not an enclosure).
    BigFloat midpoint() const;

    /// Returns true and sets `out` when floor is constant over the interval.
    bool floor(mpz_class& out) const;

    std::string to_string(int digits = 20) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Requires 0 not in b.
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);

private:
    BigFloat lo_;
    BigFloat hi_;
};

Interval abs(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval atan(const Interval& x);
/// Sine of an interval narrower than pi/2; falls back to [-1, 1] otherwise.
Interval sin(const Interval& x);
Interval scale(const Interval& x, const mpq_class& factor);

/// Certified orderings between intervals.
inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }
inline bool certainly_greater(const Interval& a, const Interval& b) { return a.lo() > b.hi(); }

} // namespace beurling

#pragma once

#include "beurling/interval.hpp"

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beurling {

/// Raised when an operation's mathematical precondition fails.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an identity-based certificate does not hold. Must never fire
/// for inputs that satisfy the constructions' hypotheses.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bounded search finished without a result.
class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Quadratic surds x + y*sqrt(d) with integer coordinates.

struct QuadSurd {
    long d = 2;
    mpz_class x;
    mpz_class y;

    friend bool operator==(const QuadSurd& a, const QuadSurd& b) {
        return a.d == b.d && a.x == b.x && a.y == b.y;
    }
};

QuadSurd quad_mul(const QuadSurd& a, const QuadSurd& b);
QuadSurd quad_pow(const QuadSurd& a, unsigned long k);
QuadSurd quad_add(const QuadSurd& a, const QuadSurd& b);
QuadSurd quad_sub(const QuadSurd& a, const QuadSurd& b);
QuadSurd quad_conj(const QuadSurd& a);
mpz_class quad_norm(const QuadSurd& a);
/// Exact sign of x + y*sqrt(d).
int quad_sign(const QuadSurd& a);
/// Exact three-way comparison of |a| and |b|.
int quad_cmp_abs(const QuadSurd& a, const QuadSurd& b);
Interval enclose(const QuadSurd& a, Precision prec);
std::string to_string(const QuadSurd& a);

bool is_squarefree(long n);

// ---------------------------------------------------------------------------

struct GaussianInt {
    mpz_class re;
    mpz_class im;

    friend bool operator==(const GaussianInt& a, const GaussianInt& b) { return a.re == b.re && a.im == b.im; }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianInt conj() const { return {re, -im}; }
    mpz_class norm() const { return re * re + im * im; }
};

// ---------------------------------------------------------------------------
// Labeled transcendental constants: log p, arctan(a/b), pi.

struct Constant {
    enum class Kind { Log, Atan, Pi };
    Kind kind = Kind::Pi;
    mpz_class a; // Log: the argument; Atan: numerator
    mpz_class b; // Atan: denominator (> 0)

    static Constant log(const mpz_class& n);
    static Constant atan(const mpz_class& num, const mpz_class& den);
    static Constant pi() { return {}; }

    std::string to_string() const;

    friend bool operator==(const Constant& x, const Constant& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const Constant& x, const Constant& y);
};

/// Enclosure of a constant, memoized per precision. Safe for concurrent use.
Interval constant_enclosure(const Constant& c, Precision prec);

// ---------------------------------------------------------------------------

struct PrecisionPolicy {
    Precision initial = 64;
    Precision cap = 4096;
};

/// Process-wide default used when callers do not pass a policy.
PrecisionPolicy default_precision();
void set_default_precision(PrecisionPolicy policy);

struct Ordering3 {
    enum class Kind { Less, Equal, Greater, Unresolved };
    Kind kind = Kind::Unresolved;
    /// Precision at which the answer was reached (or the cap, when unresolved).
    Precision precision = 0;

    bool less() const { return kind == Kind::Less; }
    bool equal() const { return kind == Kind::Equal; }
    bool greater() const { return kind == Kind::Greater; }
    bool unresolved() const { return kind == Kind::Unresolved; }
    Ordering3 reversed() const;
    std::string to_string() const;
};

/// An element of Q(sqrt(d)) as x + y*sqrt(d); d == 1 marks a plain rational.
struct FieldElement {
    long d = 1;
    mpq_class x;
    mpq_class y;
};

/// Exact sign of x + y*sqrt(d) with rational coordinates.
int field_sign(const FieldElement& v);

/// A positive real held in exact multiplicative normal form:
///
///     prod_b b^(e_b) * prod_d (x_d + y_d sqrt(d)) * exp(offset + sum c_K K)
///
/// with rational exponents e_b over integer bases (primes when factoring
/// succeeds), primitive integer surds, and an exponent that is a rational
/// combination of arctangents and pi. Logarithmic constants in an exponent are
/// folded into the base powers, so e^(log p) and p share one representation.
///
/// The reported kind() is the variant tag the value was built as or
/// simplified to; Product marks mixed values produced by semigroup products.
class RealScalar {
public:
    enum class Kind { Rational, Surd, RatPow, ExpForm, Product };

    RealScalar() = default; // the value 1

    static RealScalar one() { return {}; }
    static RealScalar rational(const mpq_class& q);
    static RealScalar integer(long n) { return rational(mpq_class(n)); }
    /// scale * (s.x + s.y sqrt(s.d)); s.d need not be squarefree.
    static RealScalar surd(const QuadSurd& s, const mpq_class& scale = 1);
    /// (x + y sqrt(d)) for rational coordinates.
    static RealScalar surd(const mpq_class& x, const mpq_class& y, long d);
    static RealScalar ratpow(const mpq_class& base, const mpq_class& exponent);
    static RealScalar expform(const mpq_class& offset, const std::map<Constant, mpq_class>& coeffs);

    Kind kind() const;
    static std::string kind_name(Kind k);

    RealScalar operator*(const RealScalar& other) const;
    RealScalar& operator*=(const RealScalar& other);
    RealScalar inverse() const;
    /// Rational power. Non-integer powers of surd factors are not representable.
    RealScalar pow(const mpq_class& e) const;

    bool is_one() const;
    std::optional<mpq_class> as_rational() const;
    /// The value as an element of Q(sqrt(d)) when it lies in a real quadratic field.
    std::optional<FieldElement> as_field_element() const;

    /// Exponent decomposition: log(value) = rational offset + sum coeff*constant
    /// + sum log(surd). Used by exponent-space comparisons.
    bool has_surd() const { return !surds_.empty(); }

    Interval enclose(Precision prec) const;
    Interval log_enclose(Precision prec) const;

    /// Canonical text in the generator grammar.
    std::string to_string() const;

    /// RatPow view: base^exponent with the exponent the rational content of
    /// all base exponents. Only meaningful for Rational and RatPow kinds.
    std::pair<mpq_class, mpq_class> ratpow_view() const;

    friend bool operator==(const RealScalar& a, const RealScalar& b);
    friend bool operator!=(const RealScalar& a, const RealScalar& b) { return !(a == b); }
    /// Arbitrary but total structural order (for deduplication).
    friend bool structural_less(const RealScalar& a, const RealScalar& b);

private:
    void absorb_rational(const mpq_class& q, const mpq_class& exponent = 1);
    void absorb_surd(long d, mpz_class x, mpz_class y);
    void absorb_exponent(const Constant& c, const mpq_class& coeff);

    std::map<mpz_class, mpq_class> powers_;
    std::map<long, std::pair<mpz_class, mpz_class>> surds_;
    mpq_class offset_;
    std::map<Constant, mpq_class> exp_;
};

Ordering3 compare(const RealScalar& a, const RealScalar& b, PrecisionPolicy policy = default_precision());

/// Sign of (hi - lo) - delta: certifies whether a gap reaches a threshold.
Ordering3 compare_gap(const RealScalar& hi, const RealScalar& lo, const RealScalar& delta,
                      PrecisionPolicy policy = default_precision());

/// Enclosure of a - b at the given precision; exact point when both lie in a
/// common quadratic field.
Interval enclose_difference(const RealScalar& a, const RealScalar& b, Precision prec);

/// Enclosure of a - b refined until its width is below 2^-bits_below_one or
/// the cap is reached.
Interval refine_difference(const RealScalar& a, const RealScalar& b, long bits, PrecisionPolicy policy = default_precision());

struct Decimal {
    std::string text;
    /// Decimal upper bound on |text - true value|; "0" when exact.
    std::string error_bound;
    bool exact = false;
};

/// Rounds to `digits` places with a certified error below 10^-digits.
Decimal to_decimal(const RealScalar& a, int digits);
/// Same, for an already computed enclosure (midpoint and half-width).
Decimal to_decimal(const Interval& iv, int digits);

/// Largest integer r with r*r <= n.
mpz_class isqrt(const mpz_class& n);
bool is_square(const mpz_class& n, mpz_class* root = nullptr);

} // namespace beurling

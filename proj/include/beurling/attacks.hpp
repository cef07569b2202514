#pragma once

#include "beurling/cfrac.hpp"
#include "beurling/exactnum.hpp"
#include "beurling/primeset.hpp"

#include <optional>
#include <string>

namespace beurling::attacks {

using primeset::ExcludedSet;

struct SieveConfig {
    /// Primes of E up to T are sieved by residue class; larger ones by trial division.
    long T = 1000;
    /// Rational case: largest z tried. Irrational case: largest nPrime tried.
    mpz_class bound = 10'000'000;
    /// Irrational case: enforce odd nPrime, mPrime even when 2 is not excluded.
    bool always_odd = false;
};

struct RationalProvenance {
    unsigned long m = 0; // exponent with delta * b^m > 2
    mpz_class u;
    mpz_class v;
    long d = 1;
    mpz_class z;
};

struct IrrationalProvenance {
    size_t k = 0;          // index of the lower-labelled convergent's pair
    cfrac::Convergent lower; // a_k / r_k < alpha
    cfrac::Convergent upper; // alpha < a_{k+1} / r_{k+1}
    mpz_class x;
    mpz_class y;
    bool parity_rule = false;
    /// x < delta r_{k+1} / 2 and y < delta r_k / 2.
    bool within_bounds = false;
};

struct Witness {
    enum class Case { Rational, Irrational };
    Case kind = Case::Rational;
    mpq_class delta;
    RealScalar alpha;
    /// Rational case: (x, y) with |alpha^m x - y| small. Irrational: alpha*nPrime vs mPrime.
    mpz_class n_prime;
    mpz_class m_prime;
    Interval gap;
    /// Rational case: the gap d / b^m exactly.
    std::optional<mpq_class> exact_gap;
    std::optional<RationalProvenance> rational;
    std::optional<IrrationalProvenance> irrational;
};

/// alpha = a/b in lowest terms, not an integer, alpha > 1.
Witness attack_rational(const ExcludedSet& E, const mpz_class& a, const mpz_class& b, const mpq_class& delta,
                        const SieveConfig& config = {});

/// The E-free pair with the smallest (nPrime, mPrime) such that mPrime/nPrime
/// is a positive mediant of two consecutive convergents of alpha and
/// |alpha nPrime - mPrime| < delta is certified.
Witness attack_irrational(const ExcludedSet& E, const RealScalar& alpha, const mpq_class& delta,
                          const SieveConfig& config = {}, PrecisionPolicy policy = default_precision());

/// Independent re-check: trial division by every p in E and the certified gap.
bool revalidate(const Witness& w, const ExcludedSet& E, PrecisionPolicy policy = default_precision());

struct DensityDiag {
    mpq_class eta;       // 1/2 prod (1 - 2/p), p in E, p > 2
    mpq_class eta_prime; // 1/2 prod (1 - 1/p)
    mpq_class case1_eta; // prod (1 - 2/p)
    long suggested_T = 2;
    mpz_class suggested_budget;
};

DensityDiag density_diag(const ExcludedSet& E);

} // namespace beurling::attacks

#pragma once

#include "beurling/exactnum.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace beurling::cfrac {

struct CFExpansion {
    RealScalar value;
    std::vector<mpz_class> quotients;
    /// Number of leading quotients proven correct.
    size_t certified = 0;
    /// Set when the value is rational and the expansion terminated.
    bool exhausted = false;
    /// Precision used for the last extraction pass (0 for exact paths).
    Precision precision = 0;
};

struct Convergent {
    mpz_class a; // numerator
    mpz_class r; // denominator
    size_t index = 0;
};

/// Evaluates some real at a requested precision.
using Evaluator = std::function<Interval(Precision)>;

CFExpansion expand(const RealScalar& x, size_t count, PrecisionPolicy policy = default_precision());

/// Expansion of a value known only through enclosures; the value field stays 1.
CFExpansion expand(const Evaluator& x, size_t count, PrecisionPolicy policy = default_precision());

std::vector<Convergent> convergents(const CFExpansion& cf);

/// Largest partial quotient over the certified prefix (index >= 1).
mpz_class max_partial_quotient(const CFExpansion& cf);

struct PowerAttackResult {
    bool found = false;
    mpz_class a;
    mpz_class b;
    /// Enclosure of |alpha b^c - a^c|.
    Interval residual;
    bool residual_exact_zero = false;
    /// Every candidate tried, in order: (a, b, residual).
    std::vector<std::tuple<mpz_class, mpz_class, Interval>> trail;
};

struct PowerAttackOptions {
    /// Also scan every b <= bmax instead of convergent denominators only.
    bool exhaustive = false;
    PrecisionPolicy policy = default_precision();
};

/// Searches approximants a/b of alpha^(1/c) with b <= bmax and reports the
/// candidate with the smallest certified residual |alpha b^c - a^c|; `found`
/// is set when that residual is certified below eps.
PowerAttackResult power_attack(const RealScalar& alpha, const mpq_class& c, const mpq_class& eps, const mpz_class& bmax,
                               const PowerAttackOptions& options = {});

/// Enclosure of |alpha * b^c - a^c|, exact zero flagged through `exact_zero`.
Interval power_residual(const RealScalar& alpha, const mpq_class& c, const mpz_class& a, const mpz_class& b,
                        Precision prec, bool* exact_zero = nullptr);

} // namespace beurling::cfrac

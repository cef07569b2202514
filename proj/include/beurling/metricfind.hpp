#pragma once

#include "beurling/semigroup.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace beurling::metricfind {

using semigroup::ExponentVec;
using semigroup::GeneratorSet;

/// Bounds on S = sum over B' of 1/sqrt(m).
struct SqrtSumBound {
    BigFloat lower;  // enumerated partial sum up to N, rounded down
    BigFloat upper;  // Euler product, rounded up
    mpz_class cutoff;
    std::string method = "euler-product";
    size_t terms = 0;
};

SqrtSumBound sqrt_sum(const GeneratorSet& gprime, const mpz_class& N, PrecisionPolicy policy = default_precision());

/// 1 + log 6, rounded outward.
Interval harmonic_constant(Precision prec);

/// 6 c delta e^(-t/2) S_upper^2: the total measure bound on bad beta in [t, 2t].
Interval measure_bound(const mpq_class& delta, const mpq_class& t, const BigFloat& s_upper, Precision prec = 128);

struct BadInterval {
    ExponentVec m;
    ExponentVec n;
    RealScalar m_value;
    RealScalar n_value;
    long k = 1;
    /// Enclosure of (log n - log m) / k.
    Interval center;
    /// Outward-rounded interval after clipping to [t, 2t].
    mpq_class lo;
    mpq_class hi;
};

struct BadIntervalSet {
    mpq_class t;
    mpq_class delta;
    mpz_class cutoff;
    std::vector<BadInterval> intervals;
    /// Sum of the listed interval lengths (an upper bound on their union).
    mpq_class listed_measure;
    /// Certified bound on bad beta coming from pairs with n above the cutoff.
    Interval residual;
    /// The full 6 c delta e^(-t/2) S^2 bound, for comparison.
    Interval total_bound;
    SqrtSumBound sqrt_sum;
    std::vector<std::pair<mpq_class, mpq_class>> survivors;
    size_t pairs_considered = 0;
};

/// Integer k range (inclusive) containing every k with L/(3t) < k < 2L/t for
/// an enclosure L of log n - log m.
std::pair<long, long> k_range(const Interval& L, const mpq_class& t);

/// Bad beta interval of one triple clipped to [t, 2t], or nothing if it misses.
std::optional<std::pair<mpq_class, mpq_class>> triple_interval(const Interval& L, const Interval& n_value, long k,
                                                               const mpq_class& delta, const mpq_class& t);

BadIntervalSet bad_intervals(const GeneratorSet& gprime, const mpq_class& delta, const mpq_class& t,
                             const mpz_class& N, PrecisionPolicy policy = default_precision());

struct FindOptions {
    /// t is accepted once margin * bound(t) < t.
    mpq_class margin = 4;
    mpz_class cutoff = 1'000'000;
    long t_max = 400;
};

struct AlphaCertificate {
    mpq_class t;
    mpq_class beta;
    RealScalar alpha; // e^beta
    Interval alpha_enclosure;
    std::pair<mpq_class, mpq_class> surviving;
    BadIntervalSet bad;
    semigroup::GapReport check;
    RealScalar verify_limit;
};

AlphaCertificate find_alpha(const GeneratorSet& gprime, const mpq_class& delta, const RealScalar& x_verify,
                            const FindOptions& options = {}, PrecisionPolicy policy = default_precision());

} // namespace beurling::metricfind

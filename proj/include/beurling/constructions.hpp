#pragma once

#include "beurling/exactnum.hpp"
#include "beurling/semigroup.hpp"

#include <string>
#include <utility>
#include <vector>

namespace beurling::constructions {

using semigroup::Element;
using semigroup::GeneratorSet;

/// Prime squares p^2 <= limit adjoined with alpha = (a sqrt(q) + b)^2.
struct QuadAlphaSystem {
    long a = 1;
    long b = 1;
    long q = 2;
    long limit = 0;
    QuadSurd alpha_surd; // (a^2 q + b^2) + 2ab sqrt(q)
    RealScalar alpha;
    GeneratorSet generators;
    /// generator index -> prime p for p^2 generators; 0 marks alpha.
    std::vector<long> generator_prime;
};

QuadAlphaSystem quad_alpha(long a, long b, long q, long limit);

struct PellRecord {
    long p = 0;
    QuadSurd f; // minimal x + y sqrt(2), |norm| = p
    QuadSurd g; // f^2
};

struct Example1System {
    long limit = 0;
    std::vector<PellRecord> records;
    GeneratorSet generators;
    std::vector<size_t> generator_record; // generator index -> record index
    /// max f(p)/sqrt(p) over the records, and where it is attained.
    std::optional<Interval> max_ratio;
    long max_ratio_prime = 0;
};

Example1System example1_generators(long limit);

struct GaussianRecord {
    long p = 0;
    long a = 0; // p = a^2 + b^2, 0 < a < b
    long b = 0;
    GaussianInt rho;      // b + i a
    Constant angle;       // h(p) = arctan(a/b)
    long winding = 0;     // k with log p < h + 2 k pi < log p + 2 pi
    Interval f;           // enclosure of h + 2 k pi
    RealScalar g;         // e^(h + 2 k pi)
};

struct Example2System {
    long limit = 0;
    std::vector<GaussianRecord> records;
    GeneratorSet generators;
    std::vector<size_t> generator_record;
};

Example2System example2_generators(long limit);

/// {p^c : p <= limit} for 1 < c < 2.
GeneratorSet cpow_generators(const mpq_class& c, long limit);

/// Exact proof object that one pair of semigroup elements is at distance
/// exceeding the lacunarity threshold.
struct GapCertificate {
    enum class Kind { Quad, Example1, Example2 };
    Kind kind = Kind::Quad;
    /// Exact integers and surds, rendered as decimal text, in display order.
    std::vector<std::pair<std::string, std::string>> exact;
    /// Named enclosures of intermediate quantities.
    std::vector<std::pair<std::string, Interval>> enclosures;
    /// Certified lower bound on |b - b'|; its lo() is the claim.
    Interval bound;
    /// Independently evaluated |b - b'|.
    Interval direct_gap;
    /// bound >= 1 certified and bound <= direct gap cross-checked.
    bool passed = false;

    static std::string kind_name(Kind k);
};

/// |alpha^k m^2 - n^2| via (vm + n + um sqrt q)(vm - n + um sqrt q) with
/// (a sqrt q + b)^k = u sqrt q + v. k = 0 is accepted and certifies the
/// integer pair m^2, n^2.
GapCertificate certify_quad_gap(const QuadAlphaSystem& sys, long k, const mpz_class& m, const mpz_class& n);

/// Certificate for two enumerated elements of a quad system: the common
/// power of alpha is divided out, the reduced pair is certified, and the
/// bound is scaled back.
GapCertificate certify_quad_elements(const QuadAlphaSystem& sys, const Element& x, const Element& y);

/// f(n) for a product of the system's primes; throws DomainError otherwise.
QuadSurd example1_f(const Example1System& sys, const mpz_class& n);
GapCertificate certify_example1_pair(const Example1System& sys, const mpz_class& m, const mpz_class& n);

GaussianInt example2_rho(const Example2System& sys, const mpz_class& n);
RealScalar example2_g(const Example2System& sys, const mpz_class& n);
GapCertificate certify_example2_pair(const Example2System& sys, const mpz_class& m, const mpz_class& n);

/// The integer index n of an element: product of the primes behind its
/// generators with multiplicity.
mpz_class example1_index(const Example1System& sys, const Element& e);
mpz_class example2_index(const Example2System& sys, const Element& e);

} // namespace beurling::constructions

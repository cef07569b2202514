#pragma once

#include "beurling/exactnum.hpp"

#include <set>
#include <utility>
#include <vector>

namespace beurling::primeset {

/// Literal residue filter: keeps n with n mod modulus in `residues`.
struct PrimeClassFilter {
    long modulus = 1;
    std::set<long> residues;

    PrimeClassFilter() = default;
    PrimeClassFilter(long m, std::set<long> r);
    bool accepts(long n) const { return residues.count(((n % modulus) + modulus) % modulus) != 0; }
};

/// The finite set of primes excluded from P.
class ExcludedSet {
public:
    ExcludedSet() = default;
    explicit ExcludedSet(std::vector<long> primes);

    const std::vector<long>& primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }
    bool contains(long p) const;
    /// True when no member of the set divides n.
    bool is_free(const mpz_class& n) const;

private:
    std::vector<long> primes_;
};

bool is_prime(long n);

std::vector<long> sieve(long limit, const std::optional<PrimeClassFilter>& filter = std::nullopt);

/// p = a^2 + b^2 with 0 < a < b, for a prime p = 1 (mod 4).
std::pair<long, long> two_squares(long p);

/// Minimal x + y sqrt(2) with x, y > 0 and |x^2 - 2y^2| = p, for a prime
/// p = +-1 (mod 8).
QuadSurd min_pell_rep(long p);

/// (x, y) -> (|x - 2y|, |y - x|): multiplication by the unit 1 - sqrt(2)
/// followed by taking absolute values of the coordinates.
QuadSurd unit_reduce(const QuadSurd& s);

} // namespace beurling::primeset

#include "beurling/primeset.hpp"

#include <algorithm>

namespace beurling::primeset {

PrimeClassFilter::PrimeClassFilter(long m, std::set<long> r) : modulus(m) {
    if (m < 1) throw DomainError("filter modulus must be positive");
    for (long x : r) residues.insert(((x % m) + m) % m);
}

ExcludedSet::ExcludedSet(std::vector<long> primes) : primes_(std::move(primes)) {
    for (long p : primes_)
        if (!is_prime(p)) throw DomainError("excluded set member is not prime: " + std::to_string(p));
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool ExcludedSet::contains(long p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

bool ExcludedSet::is_free(const mpz_class& n) const {
    for (long p : primes_) {
        if (mpz_cmp_ui(n.get_mpz_t(), static_cast<unsigned long>(p)) < 0) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    return true;
}

bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> sieve(long limit, const std::optional<PrimeClassFilter>& filter) {
    if (limit < 2) return {};
    std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
    std::vector<long> out;
    for (long i = 2; i <= limit; ++i) {
        if (composite[static_cast<size_t>(i)]) continue;
        if (!filter || filter->accepts(i)) out.push_back(i);
        for (long j = i * i; j <= limit; j += i) composite[static_cast<size_t>(j)] = true;
    }
    return out;
}

std::pair<long, long> two_squares(long p) {
    if (p % 4 != 1 || !is_prime(p)) throw DomainError("two_squares needs a prime p = 1 (mod 4), got " + std::to_string(p));
    for (long a = 1; 2 * a * a < p; ++a) {
        mpz_class b;
        if (is_square(mpz_class(p - a * a), &b)) return {a, b.get_si()};
    }
    throw std::logic_error("no two-square decomposition found for " + std::to_string(p));
}

QuadSurd unit_reduce(const QuadSurd& s) {
    return {2, abs(s.x - 2 * s.y), abs(s.y - s.x)};
}

QuadSurd min_pell_rep(long p) {
    const long r = ((p % 8) + 8) % 8;
    if ((r != 1 && r != 7) || !is_prime(p))
        throw DomainError("min_pell_rep needs a prime p = +-1 (mod 8), got " + std::to_string(p));
    // Any representation with positive coordinates, smallest y first.
    std::optional<QuadSurd> start;
    for (long y = 1; !start && y <= 4 * p; ++y) {
        const mpz_class twice = mpz_class(2) * y * y;
        mpz_class x;
        if (is_square(twice + p, &x) && x > 0) start = QuadSurd{2, x, y};
        else if (twice > p && is_square(twice - p, &x) && x > 0) start = QuadSurd{2, x, y};
    }
    if (!start) throw std::logic_error("no Pell-norm representation found for " + std::to_string(p));

    // Descend along the reduction orbit while the value decreases and both
    // coordinates stay positive.
    QuadSurd best = *start;
    for (;;) {
        QuadSurd next = unit_reduce(best);
        if (next.x <= 0 || next.y <= 0) break;
        if (quad_cmp_abs(next, best) >= 0) break;
        best = next;
    }
    return best;
}

} // namespace beurling::primeset

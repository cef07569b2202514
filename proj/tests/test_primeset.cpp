#include "helpers.hpp"

#include "beurling/primeset.hpp"

using namespace beurling;
using namespace beurling::primeset;

TEST_CASE("sieve counts") {
    CHECK(sieve(100).size() == 25);
    CHECK(sieve(1000).size() == 168);
    CHECK(sieve(10000).size() == 1229);
    CHECK(sieve(1).empty());
    const auto p = sieve(30);
    CHECK(std::is_sorted(p.begin(), p.end()));
    for (long x : p) CHECK(is_prime(x));
}

TEST_CASE("sieve with residue filters") {
    CHECK(sieve(30, PrimeClassFilter(8, {1, 7})) == std::vector<long>{7, 17, 23});
    CHECK(sieve(30, PrimeClassFilter(4, {1})) == std::vector<long>{5, 13, 17, 29});
    // Residues are reduced modulo the modulus.
    CHECK(PrimeClassFilter(4, {5}).residues == std::set<long>{1});
}

TEST_CASE("two_squares") {
    CHECK(two_squares(13) == std::pair<long, long>{2, 3});
    CHECK(two_squares(29) == std::pair<long, long>{2, 5});
    CHECK(two_squares(5) == std::pair<long, long>{1, 2});
    for (long p : sieve(10000, PrimeClassFilter(4, {1}))) {
        const auto [a, b] = two_squares(p);
        REQUIRE(a * a + b * b == p);
        REQUIRE(0 < a);
        REQUIRE(a < b);
    }
    CHECK_THROWS_AS(two_squares(7), DomainError);
}

TEST_CASE("min_pell_rep fixtures") {
    CHECK(min_pell_rep(7) == QuadSurd{2, 1, 2});
    CHECK(min_pell_rep(17) == QuadSurd{2, 1, 3});
    CHECK(min_pell_rep(23) == QuadSurd{2, 5, 1});
    CHECK_THROWS_AS(min_pell_rep(5), DomainError);
}

TEST_CASE("min_pell_rep agrees with brute force up to 10^4") {
    const Precision prec = 64;
    BigFloat worst(prec);
    for (long p : sieve(10000, PrimeClassFilter(8, {1, 7}))) {
        // Brute force: minimal x + y sqrt 2 over 0 < x, y <= p with |x^2 - 2y^2| = p.
        std::optional<QuadSurd> best;
        for (long y = 1; y <= p; ++y) {
            const mpz_class t = 2 * mpz_class(y) * y;
            for (const mpz_class& cand : {mpz_class(t + p), mpz_class(t - p)}) {
                mpz_class x;
                if (cand > 0 && is_square(cand, &x) && x <= p) {
                    const QuadSurd s{2, x, y};
                    if (!best || quad_cmp_abs(s, *best) < 0) best = s;
                }
            }
            // x + y sqrt 2 > y sqrt 2, so larger y cannot win.
            if (best && enclose(*best, prec).hi() < Interval::point(mpq_class(y) * 1414 / 1000, prec).lo()) break;
        }
        REQUIRE(best);
        const QuadSurd f = min_pell_rep(p);
        REQUIRE(f == *best);
        const Interval ratio = enclose(f, prec) / sqrt(Interval::point(p, prec));
        if (ratio.hi() > worst) worst = ratio.hi();
    }
    CHECK(worst < Interval::point(2L, prec).lo());
}

TEST_CASE("unit_reduce is multiplication by the unit up to sign") {
    const QuadSurd s{2, 9, 4};
    const QuadSurd r = unit_reduce(s);
    CHECK(r == QuadSurd{2, 1, 5});
    CHECK(abs(quad_norm(r)) == abs(quad_norm(s)));
}

TEST_CASE("ExcludedSet") {
    const ExcludedSet E({5, 3, 3});
    CHECK(E.primes() == std::vector<long>{3, 5});
    CHECK(E.contains(3));
    CHECK_FALSE(E.contains(7));
    CHECK(E.is_free(mpz_class(5957)));
    CHECK_FALSE(E.is_free(mpz_class(6)));
    CHECK(ExcludedSet().is_free(mpz_class(30)));
}

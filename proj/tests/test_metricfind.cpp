#include "helpers.hpp"

#include "beurling/metricfind.hpp"

using namespace beurling;
using namespace beurling::metricfind;
using semigroup::GeneratorSet;

namespace {

GeneratorSet ints(std::vector<long> v) {
    std::vector<RealScalar> g;
    for (long x : v) g.push_back(RealScalar::integer(x));
    return GeneratorSet::make(g, "list");
}

constexpr Precision P = 128;

Interval pt(const mpq_class& q) { return Interval::point(q, P); }

} // namespace

TEST_CASE("sqrt_sum fixtures") {
    const SqrtSumBound four = sqrt_sum(ints({4}), 1'000'000);
    CHECK(four.upper == Interval::point(2L, P).hi());
    CHECK(four.lower <= four.upper);
    CHECK(four.lower >= Interval::point(mpq_class(1998, 1000), P).lo());

    const SqrtSumBound e = sqrt_sum(ints({}), 10);
    CHECK(e.lower == Interval::point(1L, P).lo());
    CHECK(e.upper == Interval::point(1L, P).hi());

    const SqrtSumBound s = sqrt_sum(ints({8, 27}), 1'000'000);
    CHECK(testing::near(Interval::from_bounds(s.upper, s.upper), "1.915569726409336573", "1e-17"));
    CHECK(s.lower >= Interval::point(1L, P).lo());
    CHECK(s.lower <= s.upper);
    CHECK(s.method == "euler-product");
}

TEST_CASE("harmonic constant and total bound") {
    CHECK(testing::near(harmonic_constant(P), "2.791759469228055000812", "1e-20"));
    const SqrtSumBound s = sqrt_sum(ints({8, 27}), 1'000'000);
    CHECK(testing::near(measure_bound(1, 8, s.upper), "1.125763724694599589", "1e-17"));
}

TEST_CASE("bad_intervals on the empty set") {
    const BadIntervalSet b = bad_intervals(ints({}), 1, 8, 1);
    CHECK(b.intervals.empty());
    REQUIRE(b.survivors.size() == 1);
    CHECK(b.survivors[0] == std::pair<mpq_class, mpq_class>{8, 16});
    CHECK(b.residual.hi().is_zero());
}

TEST_CASE("bad_intervals preconditions") {
    CHECK_THROWS_WITH_AS(bad_intervals(ints({8, 27}), 1, 3, 100), doctest::Contains("4*delta"), DomainError);
    CHECK_THROWS_AS(bad_intervals(ints({8, 27}), 0, 8, 100), DomainError);
}

TEST_CASE("bad_intervals for {8, 27}") {
    const BadIntervalSet b = bad_intervals(ints({8, 27}), 1, 8, 1'000'000);
    CHECK_FALSE(b.intervals.empty());
    const Interval listed_plus = pt(b.listed_measure) + b.residual;
    CHECK(certainly_less(listed_plus, b.total_bound));
    CHECK(certainly_less(b.total_bound, pt(8)));

    // Survivors are disjoint, sorted, inside [8, 16], and cover at least 8 - listed.
    mpq_class covered = 0, prev = 8;
    for (const auto& [lo, hi] : b.survivors) {
        CHECK(lo >= prev);
        CHECK(hi <= 16);
        CHECK(lo < hi);
        covered += hi - lo;
        prev = hi;
    }
    CHECK(covered >= 8 - b.listed_measure);

    const Interval delta = pt(1);
    for (size_t i = 0; i < b.intervals.size(); i += std::max<size_t>(1, b.intervals.size() / 25)) {
        const BadInterval& iv = b.intervals[i];
        const Interval m = iv.m_value.enclose(P), n = iv.n_value.enclose(P);
        // Triple admissibility.
        CHECK(certainly_greater(n, scale(exp(pt(8)), mpq_class(1, 2)) * m));
        const Interval L = log(n) - log(m);
        const Interval kk = Interval::point(iv.k, P);
        CHECK(certainly_greater(L / kk, pt(4)));
        CHECK(certainly_less(L / kk, pt(24)));
        // The centre itself is bad: |e^(k beta) m - n| < delta.
        if (certainly_greater(iv.center, pt(8)) && certainly_less(iv.center, pt(16))) {
            const Interval gap = abs(exp(kk * iv.center) * m - n);
            CHECK(certainly_less(gap, delta));
        }
        // Listed length never exceeds 3 delta / (k n).
        CHECK_FALSE(certainly_greater(pt(iv.hi - iv.lo), scale(delta / (kk * n), 3) + pt(mpq_class(1, 1000000) * mpq_class(1, 1000000) * mpq_class(1, 1000000))));
    }
}

TEST_CASE("k range is complete") {
    const GeneratorSet g = ints({8, 27});
    const auto el = semigroup::enumerate(g, RealScalar::integer(100000));
    const mpq_class t = 8;
    size_t pairs = 0;
    for (size_t j = 0; j < el.size(); ++j)
        for (size_t i = 0; i < j; ++i) {
            const Interval m = el[i].value.enclose(P), n = el[j].value.enclose(P);
            if (!certainly_greater(n, scale(exp(pt(t)), mpq_class(1, 2)) * m)) continue;
            ++pairs;
            const Interval L = log(n) - log(m);
            const auto [klo, khi] = k_range(L, t);
            for (long k : {klo - 1, khi + 1}) {
                if (k < 1) continue;
                CHECK_FALSE(triple_interval(L, n, k, 1, t));
            }
        }
    CHECK(pairs > 5);
}

TEST_CASE("sampled survivors are not excluded by any enumerated triple") {
    const GeneratorSet g = ints({8, 27});
    const BadIntervalSet b = bad_intervals(g, 1, 8, 100000);
    const auto el = semigroup::enumerate(g, RealScalar::integer(100000));
    size_t sampled = 0;
    for (size_t s = 0; s < b.survivors.size(); s += 3) {
        const mpq_class beta = (b.survivors[s].first + b.survivors[s].second) / 2;
        ++sampled;
        for (size_t j = 0; j < el.size(); ++j)
            for (size_t i = 0; i < j; ++i) {
                const Interval m = el[i].value.enclose(P), n = el[j].value.enclose(P);
                const Interval L = log(n) - log(m);
                const auto [klo, khi] = k_range(L, 8);
                for (long k = klo; k <= khi; ++k) {
                    const Interval gap = abs(exp(Interval::point(k, P) * pt(beta)) * m - n);
                    CHECK_FALSE(certainly_less(gap, pt(1)));
                }
            }
    }
    CHECK(sampled > 2);
}

TEST_CASE("find_alpha for {8, 27}") {
    const AlphaCertificate c = find_alpha(ints({8, 27}), 1, RealScalar::integer(100000));
    CHECK(c.t == 8);
    CHECK(c.beta > c.surviving.first);
    CHECK(c.beta < c.surviving.second);
    CHECK(c.beta >= 8);
    CHECK(c.beta <= 16);
    CHECK(mpz_popcount(c.beta.get_den().get_mpz_t()) != 1);
    CHECK(c.check.violations.empty());
    CHECK(c.check.unresolved.empty());
    mpz_class fl;
    REQUIRE(c.alpha_enclosure.floor(fl));
    CHECK(c.alpha_enclosure.lo() > Interval::point(fl, P).hi());
    CHECK(certainly_greater(c.alpha_enclosure, exp(pt(8))));
    CHECK(certainly_less(c.alpha_enclosure, exp(pt(16))));
}

TEST_CASE("find_alpha on small systems") {
    const AlphaCertificate e = find_alpha(ints({}), mpq_class(1, 2), RealScalar::integer(1000));
    CHECK(e.t > 2);
    CHECK(e.check.violations.empty());
    const AlphaCertificate f = find_alpha(ints({4}), 1, RealScalar::integer(10000));
    CHECK(f.t == 8);
    CHECK(f.check.violations.empty());
}

TEST_CASE("find_alpha rejects non-lacunary input") {
    CHECK_THROWS_AS(find_alpha(ints({2, 3}), 2, RealScalar::integer(100)), DomainError);
    CHECK_THROWS_AS(find_alpha(ints({8}), 0, RealScalar::integer(100)), DomainError);
}

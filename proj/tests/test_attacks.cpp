#include "helpers.hpp"

#include "beurling/attacks.hpp"

using namespace beurling;
using namespace beurling::attacks;
using testing::near;

namespace {

RealScalar one_plus_sqrt2() { return RealScalar::surd(QuadSurd{2, 1, 1}); }

/// Smallest (n, m) with n, m E-free, m/n a mediant-style approximation and
/// |alpha n - m| < delta, found by brute force over n.
bool trial_free(const mpz_class& n, const std::vector<long>& E) {
    for (long p : E)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    return true;
}

} // namespace

TEST_CASE("rational attack fixtures") {
    const Witness w = attack_rational(ExcludedSet({3}), 5, 2, mpq_class(1, 10));
    REQUIRE(w.rational);
    CHECK(w.rational->m == 5);
    CHECK(w.rational->d == 1);
    CHECK(w.n_prime == 61);
    CHECK(w.m_prime == 5957);
    CHECK(w.rational->z == 0);
    REQUIRE(w.exact_gap);
    CHECK(*w.exact_gap == mpq_class(1, 32));
    CHECK(w.gap.contains(mpq_class(1, 32)));
    CHECK(revalidate(w, ExcludedSet({3})));

    const Witness e = attack_rational(ExcludedSet(), 3, 2, mpq_class(3, 10));
    CHECK(e.rational->m == 3);
    CHECK(*e.exact_gap == mpq_class(1, 8));

    CHECK_THROWS_AS(attack_rational(ExcludedSet({3}), 4, 2, mpq_class(1, 10)), DomainError);
    CHECK_THROWS_AS(attack_rational(ExcludedSet({3}), 2, 3, mpq_class(1, 10)), DomainError);
}

TEST_CASE("rational attack exactness and shrinking gaps") {
    const std::vector<std::tuple<long, long, std::vector<long>>> cases = {
        {5, 2, {3}}, {7, 3, {2, 5}}, {9, 4, {5, 7, 11}}, {3, 2, {}}, {11, 7, {3}}};
    for (const auto& [a, b, ev] : cases) {
        const ExcludedSet E(ev);
        std::optional<mpq_class> prev;
        for (const mpq_class delta : {mpq_class(1, 10), mpq_class(1, 100), mpq_class(1, 1000)}) {
            const Witness w = attack_rational(E, a, b, delta);
            REQUIRE(w.rational);
            const auto& p = *w.rational;
            mpz_class bm, am;
            mpz_pow_ui(bm.get_mpz_t(), mpz_class(b).get_mpz_t(), p.m);
            mpz_pow_ui(am.get_mpz_t(), mpz_class(a).get_mpz_t(), p.m);
            CHECK(p.d == ((a * b) % 2 == 1 ? 2 : 1));
            // |a^m x - b^m y| = d exactly.
            CHECK(abs(am * w.n_prime - bm * w.m_prime) == p.d);
            CHECK(*w.exact_gap == mpq_class(p.d, bm));
            CHECK(*w.exact_gap < delta);
            CHECK(trial_free(w.n_prime, ev));
            CHECK(trial_free(w.m_prime, ev));
            CHECK(mpz_odd_p(w.n_prime.get_mpz_t()));
            CHECK(mpz_odd_p(w.m_prime.get_mpz_t()));
            if (prev) CHECK(*w.exact_gap < *prev);
            prev = *w.exact_gap;
        }
    }
}

TEST_CASE("irrational attack fixtures") {
    const ExcludedSet E({3});
    const Witness a = attack_irrational(E, one_plus_sqrt2(), mpq_class(1, 2));
    CHECK(a.n_prime == 7);
    CHECK(a.m_prime == 17);
    CHECK(near(a.gap, "0.1005050633883346", "1e-15"));

    // (29, 70) also qualifies; (17, 41) has the smaller key and is chosen.
    const Witness b = attack_irrational(E, one_plus_sqrt2(), mpq_class(1, 10));
    CHECK(b.n_prime == 17);
    CHECK(b.m_prime == 41);
    CHECK(certainly_less(b.gap, Interval::point(mpq_class(1, 10), 64)));

    const Witness c = attack_irrational(E, one_plus_sqrt2(), mpq_class(1, 100));
    CHECK(c.n_prime == 70);
    CHECK(c.m_prime == 169);
    CHECK(near(c.gap, "0.005050633883346", "1e-14"));

    CHECK(certainly_less(c.gap, b.gap));
    CHECK(certainly_less(b.gap, a.gap));
    for (const auto* w : {&a, &b, &c}) CHECK(revalidate(*w, E));
}

TEST_CASE("irrational witnesses are minimal among mediant keys") {
    // No E-free pair with a smaller n achieves the threshold.
    const ExcludedSet E({3});
    const Witness w = attack_irrational(E, one_plus_sqrt2(), mpq_class(1, 10));
    const Interval alpha = one_plus_sqrt2().enclose(128);
    for (long n = 1; n < w.n_prime.get_si(); ++n) {
        if (n % 3 == 0) continue;
        for (long m = 1; m <= 3 * n; ++m) {
            if (m % 3 == 0) continue;
            const Interval g = abs(alpha * Interval::point(n, 128) - Interval::point(m, 128));
            CHECK_FALSE(certainly_less(g, Interval::point(mpq_class(1, 10), 128)));
        }
    }
}

TEST_CASE("irrational provenance and parity") {
    for (const auto& [alpha, ev] : std::vector<std::pair<RealScalar, std::vector<long>>>{
             {one_plus_sqrt2(), {2, 3}},
             {RealScalar::ratpow(2, mpq_class(2, 3)), {2, 5}},
             {RealScalar::expform(0, {{Constant::pi(), 1}}), {2, 7}}}) {
        const ExcludedSet E(ev);
        for (const mpq_class delta : {mpq_class(1, 2), mpq_class(1, 20), mpq_class(1, 200)}) {
            const Witness w = attack_irrational(E, alpha, delta);
            REQUIRE(w.irrational);
            const auto& p = *w.irrational;
            CHECK(p.parity_rule);
            CHECK(mpz_odd_p(w.n_prime.get_mpz_t()));
            CHECK(mpz_odd_p(w.m_prime.get_mpz_t()));
            CHECK(w.n_prime == p.x * p.lower.r + p.y * p.upper.r);
            CHECK(w.m_prime == p.x * p.lower.a + p.y * p.upper.a);
            // Mediant sandwich and lower/upper orientation.
            const Interval av = alpha.enclose(256);
            const Interval lo = Interval::point(mpq_class(p.lower.a, p.lower.r), 256);
            const Interval hi = Interval::point(mpq_class(p.upper.a, p.upper.r), 256);
            const Interval mu = Interval::point(mpq_class(w.m_prime, w.n_prime), 256);
            CHECK(certainly_less(lo, av));
            CHECK(certainly_less(av, hi));
            if (p.x > 0 && p.y > 0) {
                CHECK(certainly_less(lo, mu));
                CHECK(certainly_less(mu, hi));
            }
            CHECK(certainly_less(w.gap, Interval::point(delta, 64)));
            CHECK(revalidate(w, E));
        }
    }
}

TEST_CASE("always-odd option") {
    const Witness w = attack_irrational(ExcludedSet({3}), one_plus_sqrt2(), mpq_class(1, 100),
                                        SieveConfig{1000, 10'000'000, true});
    CHECK(mpz_odd_p(w.n_prime.get_mpz_t()));
    CHECK(mpz_odd_p(w.m_prime.get_mpz_t()));
    CHECK(certainly_less(w.gap, Interval::point(mpq_class(1, 100), 64)));
}

TEST_CASE("search bounds produce NotFound") {
    CHECK_THROWS_AS(attack_irrational(ExcludedSet({3}), one_plus_sqrt2(), mpq_class(1, 100), SieveConfig{1000, 50}),
                    NotFound);
    CHECK_THROWS_AS(attack_irrational(ExcludedSet({3}), RealScalar::integer(3), mpq_class(1, 100)), DomainError);
}

TEST_CASE("density diagnostics") {
    const DensityDiag e = density_diag(ExcludedSet());
    CHECK(e.eta == mpq_class(1, 2));
    CHECK(e.eta_prime == mpq_class(1, 2));
    CHECK(e.case1_eta == 1);
    const DensityDiag a = density_diag(ExcludedSet({3}));
    CHECK(a.eta == mpq_class(1, 6));
    CHECK(a.eta_prime == mpq_class(1, 3));
    CHECK(a.case1_eta == mpq_class(1, 3));
    const DensityDiag b = density_diag(ExcludedSet({3, 5}));
    CHECK(b.eta == mpq_class(1, 10));
    CHECK(b.eta_prime == mpq_class(4, 15));
    CHECK(b.case1_eta == mpq_class(1, 5));
    for (const auto& ev : std::vector<std::vector<long>>{{2}, {2, 3, 5, 7}, {101, 103}}) {
        const DensityDiag d = density_diag(ExcludedSet(ev));
        CHECK(d.eta > 0);
        CHECK(d.eta <= d.eta_prime);
        CHECK(d.eta_prime <= mpq_class(1, 2));
        CHECK(d.suggested_T >= 2);
    }
}

#include "helpers.hpp"

#include "beurling/constructions.hpp"
#include "beurling/primeset.hpp"

using namespace beurling;
using namespace beurling::constructions;
using testing::near;

namespace {

std::string field(const GapCertificate& c, const std::string& key) {
    for (const auto& [k, v] : c.exact)
        if (k == key) return v;
    FAIL("missing certificate field " << key);
    return {};
}

Interval enclosure(const GapCertificate& c, const std::string& key) {
    for (const auto& [k, v] : c.enclosures)
        if (k == key) return v;
    FAIL("missing certificate enclosure " << key);
    return Interval();
}

} // namespace

TEST_CASE("quad_alpha fixtures") {
    const auto s = quad_alpha(1, 1, 2, 50);
    CHECK(s.alpha_surd == QuadSurd{2, 3, 2});
    CHECK(near(s.alpha, "5.828427124746190", "1e-14"));
    REQUIRE(s.generators.size() == 5);
    CHECK(s.generators.generators[0] == RealScalar::integer(4));
    CHECK(s.generators.generators[1] == s.alpha);
    CHECK(s.generators.generators[4] == RealScalar::integer(49));
    CHECK(s.generator_prime == std::vector<long>{2, 0, 3, 5, 7});

    CHECK(quad_alpha(1, 2, 2, 50).alpha_surd == QuadSurd{2, 6, 4});
    CHECK_THROWS_AS(quad_alpha(1, 1, 4, 50), DomainError);
    CHECK_THROWS_AS(quad_alpha(0, 1, 2, 50), DomainError);
}

TEST_CASE("certify_quad_gap fixtures") {
    const auto s = quad_alpha(1, 1, 2, 50);
    const auto a = certify_quad_gap(s, 1, 2, 5);
    CHECK(field(a, "u") == "1");
    CHECK(field(a, "v") == "1");
    CHECK(field(a, "I") == "1");
    CHECK(a.passed);
    CHECK(near(a.bound, "1.686291501015239", "1e-14"));

    const auto b = certify_quad_gap(s, 2, 1, 6);
    CHECK(field(b, "u") == "2");
    CHECK(field(b, "v") == "3");
    CHECK(field(b, "I") == "1");
    CHECK(near(b.bound, "2.029437251522859", "1e-14"));

    const auto c = certify_quad_gap(s, 1, 1, 2);
    CHECK(field(c, "I") == "-1");
    CHECK(near(c.bound, "1.828427124746190", "1e-14"));
    CHECK(c.passed);
}

TEST_CASE("quad certificates are total on small pairs") {
    const auto s = quad_alpha(1, 1, 2, 100);
    size_t count = 0;
    QuadSurd ak{2, 1, 0};
    for (long k = 1; k <= 5; ++k) {
        ak = quad_mul(ak, s.alpha_surd);
        for (long m = 1;; ++m) {
            const Interval v = enclose(quad_mul(ak, QuadSurd{2, m * m, 0}), 128);
            if (v.lo() > Interval::point(10000L, 128).hi()) break;
            mpz_class r = isqrt(mpz_class(v.midpoint().to_double() > 0 ? static_cast<long>(v.midpoint().to_double()) : 0));
            for (mpz_class n = std::max<mpz_class>(1, r - 3); n <= r + 3; ++n) {
                const Interval gap = abs(v - Interval::point(mpz_class(n * n), 128));
                if (!certainly_less(gap, Interval::point(10L, 128))) continue;
                const auto cert = certify_quad_gap(s, k, m, n);
                CHECK(field(cert, "I") != "0");
                CHECK(cert.passed);
                CHECK(cert.bound.lo() <= gap.hi());
                ++count;
            }
        }
    }
    CHECK(count > 10);
}

TEST_CASE("example1 system fixtures") {
    const auto s20 = example1_generators(20);
    REQUIRE(s20.records.size() == 2);
    CHECK(s20.records[0].p == 7);
    CHECK(s20.records[0].g == QuadSurd{2, 9, 4});
    CHECK(s20.records[1].g == QuadSurd{2, 19, 6});
    const auto s25 = example1_generators(25);
    REQUIRE(s25.records.size() == 3);
    CHECK(s25.records[2].g == QuadSurd{2, 27, 10});
    CHECK(example1_generators(6).generators.empty());
    for (const auto& r : example1_generators(2000).records) {
        CHECK(abs(quad_norm(r.f)) == r.p);
        CHECK(r.g.x > 0);
        CHECK(r.g.y > 0);
    }
}

TEST_CASE("certify_example1_pair fixtures") {
    const auto s = example1_generators(100);
    const auto a = certify_example1_pair(s, 7, 17);
    CHECK(field(a, "I") == "-2");
    CHECK(near(a.bound, "12.82842712474619", "1e-13"));
    CHECK(a.passed);
    const auto b = certify_example1_pair(s, 7, 49);
    CHECK(field(b, "f_n") == "9+4*sqrt(2)");
    CHECK(field(b, "I") == "56");
    CHECK(near(b.bound, "200.1665222413704620", "1e-12"));
    const auto c = certify_example1_pair(s, 17, 23);
    CHECK(field(c, "I") == "8");
    CHECK(near(c.bound, "13.65685424949238", "1e-13"));
    CHECK_THROWS_AS(certify_example1_pair(s, 7, 15), DomainError);
}

TEST_CASE("example1 f is multiplicative") {
    const auto s = example1_generators(50);
    REQUIRE(s.records.size() >= 5);
    std::vector<long> ps;
    for (size_t i = 0; i < 5; ++i) ps.push_back(s.records[i].p);
    for (long p : ps)
        for (long q : ps)
            for (long r : ps) {
                const mpz_class n = mpz_class(p) * q * r;
                CHECK(example1_f(s, n) == quad_mul(example1_f(s, mpz_class(p) * q), example1_f(s, r)));
            }
}

TEST_CASE("example2 system fixtures") {
    const auto s = example2_generators(13);
    REQUIRE(s.records.size() == 2);
    const auto& r5 = s.records[0];
    CHECK(r5.p == 5);
    CHECK(r5.rho == GaussianInt{2, 1});
    CHECK(r5.winding == 1);
    CHECK(near(r5.f, "6.746832916180392593", "1e-15"));
    CHECK(near(r5.g, "851.3581656041116435", "1e-14"));
    const auto& r13 = s.records[1];
    CHECK(r13.rho == GaussianInt{3, 2});
    CHECK(near(r13.f, "6.871187910727154028", "1e-15"));
    CHECK(near(r13.g, "964.0931424358682790", "1e-14"));
    CHECK(example2_generators(4).generators.empty());
}

TEST_CASE("example2 records satisfy the winding window") {
    const auto s = example2_generators(1000);
    const Precision p = 128;
    const Interval two_pi = scale(Interval::pi(p), 2);
    for (const auto& r : s.records) {
        const Interval lp = log(Interval::point(r.p, p));
        CHECK(certainly_less(lp, r.f));
        CHECK(certainly_less(r.f, lp + two_pi));
        const Interval h = constant_enclosure(r.angle, p);
        CHECK(h.positive());
        CHECK(certainly_less(h, scale(Interval::pi(p), mpq_class(1, 2))));
        // Only one k fits: shifting by one turn leaves the window.
        CHECK_FALSE(certainly_less(lp, r.f - two_pi));
        CHECK_FALSE(certainly_less(r.f + two_pi, lp + two_pi));
        CHECK(compare(r.g, RealScalar::expform(0, {{Constant::pi(), 2}}) * RealScalar::integer(r.p)).less());
    }
}

TEST_CASE("certify_example2_pair fixtures") {
    const auto s = example2_generators(100);
    const auto a = certify_example2_pair(s, 5, 13);
    CHECK(field(a, "D") == "1");
    CHECK(a.passed);
    CHECK(near(enclosure(a, "sin_target"), "0.12403473458920845619", "1e-18"));
    CHECK(near(enclosure(a, "abs_sin"), "0.12403473458920845619", "1e-18"));
    CHECK(near(a.direct_gap, "112.7349768317566354", "1e-12"));
    const auto b = certify_example2_pair(s, 5, 25);
    CHECK(field(b, "rho_n") == "3+4i");
    CHECK(field(b, "D") == "5");
    CHECK(b.passed);
    const auto c = certify_example2_pair(s, 13, 65);
    CHECK(field(c, "rho_n") == "4+7i");
    CHECK(field(c, "D") == "13");
    CHECK(c.passed);
}

TEST_CASE("example2 rho and f are multiplicative / additive") {
    const auto s = example2_generators(40);
    REQUIRE(s.records.size() >= 5);
    std::vector<long> ps;
    for (size_t i = 0; i < 5; ++i) ps.push_back(s.records[i].p);
    for (long p : ps)
        for (long q : ps) {
            const mpz_class n = mpz_class(p) * q;
            CHECK(example2_rho(s, n) == example2_rho(s, p) * example2_rho(s, q));
            CHECK(example2_g(s, n) == example2_g(s, p) * example2_g(s, q));
        }
}

TEST_CASE("cpow generators") {
    const auto g = cpow_generators(mpq_class(3, 2), 10);
    REQUIRE(g.size() == 4);
    CHECK(near(g.generators[0], "2.828427124746190", "1e-14"));
    CHECK(near(g.generators[3], "18.52025917745213", "1e-13"));
    CHECK(cpow_generators(mpq_class(3, 2), 1).empty());
    const auto h = cpow_generators(mpq_class(4, 3), 5);
    REQUIRE(h.size() == 3);
    CHECK(near(h.generators[2], "8.549879733383485", "1e-14"));
    CHECK_THROWS_AS(cpow_generators(mpq_class(2), 10), DomainError);
    CHECK_THROWS_AS(cpow_generators(mpq_class(1), 10), DomainError);
}

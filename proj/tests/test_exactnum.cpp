#include "helpers.hpp"

using namespace beurling;
using namespace testing;

TEST_CASE("quad_mul fixtures") {
    CHECK(quad_mul({2, 1, 1}, {2, 1, 1}) == QuadSurd{2, 3, 2});
    CHECK(quad_mul({2, 1, 2}, {2, 1, -2}) == QuadSurd{2, -7, 0});
    CHECK(quad_mul({2, 3, 2}, {2, 1, 0}) == QuadSurd{2, 3, 2});
    CHECK_THROWS_AS(quad_mul({2, 1, 1}, {3, 1, 1}), DomainError);
}

TEST_CASE("quad_norm fixtures") {
    CHECK(quad_norm({2, 3, 2}) == 1);
    CHECK(quad_norm({2, 1, 2}) == -7);
    CHECK(quad_norm({2, 5, 1}) == 23);
}

TEST_CASE("quad_pow and exact sign") {
    CHECK(quad_pow({2, 1, 1}, 4) == QuadSurd{2, 17, 12});
    CHECK(quad_pow({2, 1, 1}, 0) == QuadSurd{2, 1, 0});
    CHECK(quad_sign({2, 1, -1}) < 0);
    CHECK(quad_sign({2, 3, -2}) > 0);
    CHECK(quad_sign({2, 0, 0}) == 0);
    CHECK(quad_cmp_abs({2, 3, 2}, {2, 6, 0}) < 0);
}

TEST_CASE("compare fixtures") {
    CHECK(compare(S(3, 2), Q("583/100")).less());
    const QuadSurd r2{2, 0, 1};
    CHECK(compare(RealScalar::surd(quad_mul(r2, r2)), Q("2")).equal());
    CHECK(compare(RealScalar::ratpow(2, mpq_class(2, 3)), Q("1587401/1000000")).greater());
    CHECK(compare(Q("3/2"), Q("3/2")).equal());
    CHECK(compare(Q("3/2"), Q("5/3")).less());
}

TEST_CASE("compare resolves equal values written differently") {
    // 8^(1/3) = 2, sqrt(8) = 2 sqrt 2, e^(log 2) = 2.
    CHECK(compare(RealScalar::ratpow(8, mpq_class(1, 3)), Q("2")).equal());
    CHECK(compare(RealScalar::ratpow(8, mpq_class(1, 2)), S(0, 2)).equal());
    CHECK(compare(RealScalar::expform(0, {{Constant::log(2), 1}}), Q("2")).equal());
    CHECK(compare(RealScalar::ratpow(4, mpq_class(3, 2)) * RealScalar::ratpow(2, -3), Q("1")).equal());
}

TEST_CASE("compare of distinct exponential forms is never Equal by overlap") {
    const RealScalar a = RealScalar::expform(0, {{Constant::atan(1, 2), 1}, {Constant::pi(), 2}});
    const RealScalar b = RealScalar::expform(0, {{Constant::atan(2, 3), 1}, {Constant::pi(), 2}});
    const Ordering3 o = compare(a, b);
    CHECK(o.less());
    CHECK(compare(b, a).greater());
    // Identical forms built separately are structurally equal.
    const RealScalar a2 = RealScalar::expform(0, {{Constant::pi(), 2}, {Constant::atan(1, 2), 1}});
    CHECK(compare(a, a2).equal());
}

TEST_CASE("compare reports Unresolved at a tiny cap") {
    // e against a 40-digit rational approximation.
    const RealScalar a = RealScalar::expform(1, {});
    const RealScalar b = RealScalar::rational(testing::dec("2.718281828459045235360287471352662497757"));
    const Ordering3 o = compare(a, b, PrecisionPolicy{64, 128});
    CHECK(o.unresolved());
    CHECK(o.precision == 128);
    CHECK(compare(a, b, PrecisionPolicy{64, 4096}).greater());
}

TEST_CASE("to_decimal fixtures") {
    const Decimal d = to_decimal(S(3, 2), 6);
    CHECK(d.text == "5.828427");
    CHECK_FALSE(d.exact);
    CHECK(to_decimal(Q("5/2"), 3).text == "2.500");
    CHECK(to_decimal(Q("5/2"), 3).exact);
    CHECK(to_decimal(Q("1/3"), 4).text == "0.3333");
    CHECK(to_decimal(Q("2/3"), 4).text == "0.6667");
    const RealScalar g5 = RealScalar::expform(0, {{Constant::atan(1, 2), 1}, {Constant::pi(), 2}});
    CHECK(to_decimal(g5, 4).text == "851.3582");
}

TEST_CASE("kinds and canonical text") {
    CHECK(Q("3/2").kind() == RealScalar::Kind::Rational);
    CHECK(S(3, 2).kind() == RealScalar::Kind::Surd);
    CHECK(RealScalar::ratpow(2, mpq_class(3, 2)).kind() == RealScalar::Kind::RatPow);
    CHECK(RealScalar::expform(0, {{Constant::pi(), 1}}).kind() == RealScalar::Kind::ExpForm);
    CHECK(Q("3/2").to_string() == "3/2");
    CHECK(S(3, 2).to_string() == "3+2*sqrt(2)");
    CHECK(RealScalar::ratpow(2, mpq_class(3, 2)).to_string() == "pow(2,3/2)");
    // Integer powers collapse to rationals.
    CHECK(RealScalar::ratpow(2, 3).as_rational() == mpq_class(8));
}

TEST_CASE("surd arithmetic in the normal form") {
    const RealScalar a = S(1, 1);
    CHECK(a * a == S(3, 2));
    CHECK(compare(a * a.inverse(), RealScalar::one()).equal());
    CHECK(a.pow(2) == S(3, 2));
    // 2 + 2 sqrt 2 factors as 2 (1 + sqrt 2).
    CHECK(S(2, 2) == Q("2") * S(1, 1));
    const auto fe = (S(3, 2) * Q("1/2")).as_field_element();
    REQUIRE(fe);
    CHECK(fe->d == 2);
    CHECK(fe->x == mpq_class(3, 2));
    CHECK(fe->y == 1);
}

TEST_CASE("field_sign") {
    CHECK(field_sign({2, mpq_class(-17, 12), 1}) < 0);   // sqrt 2 < 17/12
    CHECK(field_sign({2, mpq_class(-7, 5), 1}) > 0);     // sqrt 2 > 7/5
    CHECK(field_sign({1, mpq_class(0), 0}) == 0);
}

TEST_CASE("enclosures contain the oracle values") {
    CHECK(near(S(3, 2), "5.82842712474619009760337744841939615713934375", "1e-40"));
    CHECK(near(RealScalar::ratpow(2, mpq_class(2, 3)), "1.58740105196819947475170563927230826039149332", "1e-40"));
    CHECK(near(RealScalar::expform(0, {{Constant::atan(1, 2), 1}, {Constant::pi(), 2}}),
               "851.358165604111643515563915684691996847192443", "1e-38"));
    CHECK(near(RealScalar::expform(0, {{Constant::atan(2, 3), 1}, {Constant::pi(), 2}}),
               "964.093142435868278968611443086728713590303614", "1e-38"));
}

TEST_CASE("difference enclosures") {
    // |12 + 8 sqrt 2 - 25|
    const Interval d = refine_difference(Q("25"), S(12, 8), 100);
    CHECK(near(d, "1.68629150101523960958649", "1e-22"));
    CHECK(enclose_difference(S(3, 2), S(3, 2), 64).is_point());
    CHECK(compare_gap(Q("25"), S(12, 8), Q("1")).greater());
    CHECK(compare_gap(Q("5/2"), Q("3/2"), Q("1")).equal());
}

TEST_CASE("integer helpers") {
    CHECK(isqrt(mpz_class(99)) == 9);
    CHECK(isqrt(mpz_class(100)) == 10);
    mpz_class r;
    CHECK(is_square(mpz_class(169), &r));
    CHECK(r == 13);
    CHECK_FALSE(is_square(mpz_class(170)));
    CHECK(is_squarefree(30));
    CHECK_FALSE(is_squarefree(12));
}

#pragma once

#include "beurling/exactnum.hpp"

#include <doctest.h>

namespace testing {

using namespace beurling;

inline mpq_class dec_plain(const std::string& s);

/// Parses "1.2345" and "1e-20" style literals exactly.
inline mpq_class dec(const std::string& text) {
    std::string s = text;
    long exp10 = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
        exp10 = std::stol(s.substr(e + 1));
        s = s.substr(0, e);
    }
    mpz_class scale = 1;
    for (long i = 0; i < std::abs(exp10); ++i) scale *= 10;
    const mpq_class base = dec_plain(s);
    return exp10 >= 0 ? mpq_class(base * scale) : mpq_class(base / scale);
}

inline mpq_class dec_plain(const std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return mpq_class(s, 10);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    mpq_class q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
}

/// True when the enclosure lies within `tol` of `expected`.
inline bool near(const Interval& iv, const std::string& expected, const std::string& tol) {
    const Precision p = iv.precision();
    const Interval e = Interval::point(dec(expected), p);
    const Interval t = Interval::point(dec(tol), p);
    const Interval d = abs(iv - e);
    return d.hi() <= t.lo();
}

inline bool near(const RealScalar& v, const std::string& expected, const std::string& tol) {
    return near(v.enclose(256), expected, tol);
}

inline RealScalar Q(const char* s) { return RealScalar::rational(mpq_class(s)); }
inline RealScalar S(long x, long y, long d = 2) { return RealScalar::surd(QuadSurd{d, x, y}); }

} // namespace testing

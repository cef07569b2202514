#include "beurling/constructions.hpp"

#include "beurling/primeset.hpp"

#include <algorithm>

namespace beurling::constructions {

namespace {

constexpr Precision kCertPrec = 192;

std::string trace(const GapCertificate& c) {
    std::string s;
    for (const auto& [k, v] : c.exact) s += " " + k + "=" + v;
    return s;
}

/// Splits n over the given primes; throws when something is left over.
std::vector<std::pair<size_t, unsigned long>> factor_over(mpz_class n, const std::vector<long>& primes,
                                                          const char* what) {
    if (n < 1) throw DomainError(std::string(what) + ": index must be positive");
    std::vector<std::pair<size_t, unsigned long>> out;
    for (size_t i = 0; i < primes.size() && n > 1; ++i) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(primes[i]))) {
            n /= primes[i];
            ++e;
        }
        if (e) out.emplace_back(i, e);
    }
    if (n != 1) throw DomainError(std::string(what) + ": index has a prime factor outside the system");
    return out;
}

template <class Sys>
std::vector<long> record_primes(const Sys& sys) {
    std::vector<long> ps;
    for (const auto& r : sys.records) ps.push_back(r.p);
    return ps;
}

template <class Sys>
mpz_class index_of(const Sys& sys, const Element& e) {
    mpz_class n = 1;
    for (const auto& [idx, k] : e.exponents) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(sys.records.at(sys.generator_record.at(idx)).p), k);
        n *= pk;
    }
    return n;
}

/// Generator order differs from record order once sorted by value.
template <class Sys>
std::vector<size_t> map_generators(const Sys& sys, const std::vector<RealScalar>& values) {
    std::vector<size_t> out;
    for (const auto& g : sys.generators.generators) {
        const auto it = std::find(values.begin(), values.end(), g);
        out.push_back(static_cast<size_t>(it - values.begin()));
    }
    return out;
}

} // namespace

std::string GapCertificate::kind_name(Kind k) {
    switch (k) {
    case Kind::Quad: return "quad";
    case Kind::Example1: return "example1";
    case Kind::Example2: return "example2";
    }
    return "?";
}

// ---------------------------------------------------------------------------

QuadAlphaSystem quad_alpha(long a, long b, long q, long limit) {
    if (a < 1 || b < 1) throw DomainError("quadalpha needs a, b >= 1");
    if (q < 2 || !is_squarefree(q)) throw DomainError("quadalpha needs squarefree q >= 2, got " + std::to_string(q));
    QuadAlphaSystem s;
    s.a = a;
    s.b = b;
    s.q = q;
    s.limit = limit;
    s.alpha_surd = quad_pow(QuadSurd{q, b, a}, 2);
    if (s.alpha_surd.y == 0) throw DomainError("alpha has no surd part");
    s.alpha = RealScalar::surd(s.alpha_surd);

    std::vector<RealScalar> gens;
    // Prime squares up to the limit.
    for (long p : primeset::sieve(limit < 4 ? 1 : isqrt(mpz_class(limit)).get_si()))
        gens.push_back(RealScalar::integer(p * p));
    gens.push_back(s.alpha);
    s.generators = GeneratorSet::make(gens, "quadalpha");
    for (const auto& g : s.generators.generators) {
        long p = 0;
        if (auto r = g.as_rational()) p = isqrt(r->get_num()).get_si();
        s.generator_prime.push_back(p);
    }
    return s;
}

GapCertificate certify_quad_gap(const QuadAlphaSystem& sys, long k, const mpz_class& m, const mpz_class& n) {
    if (k < 0) throw DomainError("certify_quad_gap needs k >= 0");
    if (m < 1 || n < 1) throw DomainError("certify_quad_gap needs m, n >= 1");
    const long q = sys.q;
    const QuadSurd beta = quad_pow(QuadSurd{q, sys.b, sys.a}, static_cast<unsigned long>(k));
    const mpz_class& v = beta.x;
    const mpz_class& u = beta.y;

    GapCertificate c;
    c.kind = GapCertificate::Kind::Quad;
    const mpz_class vm_n = v * m - n;
    const mpz_class um = u * m;
    const mpz_class I = vm_n * vm_n - um * um * q;
    const QuadSurd num{q, v * m + n, um};
    const QuadSurd den{q, vm_n, -um};
    const QuadSurd ak = quad_pow(sys.alpha_surd, static_cast<unsigned long>(k));
    const QuadSurd diff{q, ak.x * m * m - n * n, ak.y * m * m};

    c.exact = {{"k", std::to_string(k)},       {"m", m.get_str()},          {"n", n.get_str()},
               {"u", u.get_str()},             {"v", v.get_str()},          {"I", I.get_str()},
               {"numerator", to_string(num)}, {"denominator", to_string(den)}, {"difference", to_string(diff)}};

    if (I == 0) throw CertificationError("quad certificate: integer factor vanished;" + trace(c));
    if (den.x == 0 && den.y == 0) throw CertificationError("quad certificate: zero denominator;" + trace(c));
    if (quad_cmp_abs(num, den) <= 0) throw CertificationError("quad certificate: numerator does not dominate;" + trace(c));
    // alpha^k m^2 - n^2 = num * I / den, checked without division.
    if (!(quad_mul(diff, den) == quad_mul(num, QuadSurd{q, I, 0})))
        throw CertificationError("quad certificate: identity check failed;" + trace(c));

    const Interval ratio = abs(enclose(num, kCertPrec)) / abs(enclose(den, kCertPrec));
    c.enclosures.emplace_back("ratio", ratio);
    c.bound = ratio * abs(Interval::point(I, kCertPrec));
    c.direct_gap = abs(enclose(diff, kCertPrec));
    c.passed = c.bound.lo() > Interval::point(1L, kCertPrec).hi() && c.bound.lo() <= c.direct_gap.hi();
    return c;
}

GapCertificate certify_quad_elements(const QuadAlphaSystem& sys, const Element& x, const Element& y) {
    auto split = [&](const Element& e, long& k, mpz_class& m) {
        k = 0;
        m = 1;
        for (const auto& [idx, ex] : e.exponents) {
            const long p = sys.generator_prime.at(idx);
            if (p == 0) {
                k += static_cast<long>(ex);
            } else {
                mpz_class pk;
                mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), ex);
                m *= pk;
            }
        }
    };
    long kx = 0, ky = 0;
    mpz_class mx, my;
    split(x, kx, mx);
    split(y, ky, my);
    const bool swap = kx < ky;
    const long j = std::min(kx, ky);
    GapCertificate c = swap ? certify_quad_gap(sys, ky - j, my, mx) : certify_quad_gap(sys, kx - j, mx, my);
    c.exact.emplace_back("common_alpha_power", std::to_string(j));
    if (j > 0) {
        const Interval scale_by = enclose(quad_pow(sys.alpha_surd, static_cast<unsigned long>(j)), kCertPrec);
        c.bound = c.bound * scale_by;
        c.direct_gap = abs(refine_difference(x.value, y.value, 120));
        c.passed = c.passed && c.bound.lo() <= c.direct_gap.hi();
    }
    return c;
}

// ---------------------------------------------------------------------------

Example1System example1_generators(long limit) {
    Example1System s;
    s.limit = limit;
    std::vector<RealScalar> values;
    for (long p : primeset::sieve(limit, primeset::PrimeClassFilter(8, {1, 7}))) {
        PellRecord r;
        r.p = p;
        r.f = primeset::min_pell_rep(p);
        r.g = quad_mul(r.f, r.f);
        if (r.g.x <= 0 || r.g.y <= 0) throw CertificationError("example1: g(p) has a nonpositive coordinate");
        const Interval ratio = enclose(r.f, kCertPrec) / sqrt(Interval::point(p, kCertPrec));
        if (!s.max_ratio || ratio.hi() > s.max_ratio->hi()) {
            s.max_ratio = s.max_ratio ? Interval::from_bounds(std::max(s.max_ratio->lo(), ratio.lo()), ratio.hi()) : ratio;
            s.max_ratio_prime = p;
        } else if (ratio.lo() > s.max_ratio->lo()) {
            s.max_ratio = Interval::from_bounds(ratio.lo(), s.max_ratio->hi());
        }
        values.push_back(RealScalar::surd(r.g));
        s.records.push_back(r);
    }
    s.generators = GeneratorSet::make(values, "example1");
    s.generator_record = map_generators(s, values);
    return s;
}

QuadSurd example1_f(const Example1System& sys, const mpz_class& n) {
    QuadSurd f{2, 1, 0};
    for (const auto& [i, e] : factor_over(n, record_primes(sys), "example1"))
        f = quad_mul(f, quad_pow(sys.records[i].f, e));
    return f;
}

mpz_class example1_index(const Example1System& sys, const Element& e) { return index_of(sys, e); }

GapCertificate certify_example1_pair(const Example1System& sys, const mpz_class& m, const mpz_class& n) {
    if (m == n) throw DomainError("certify_example1_pair needs m != n");
    const QuadSurd fm = example1_f(sys, m);
    const QuadSurd fn = example1_f(sys, n);
    const mpz_class &u = fm.x, &v = fm.y, &x = fn.x, &y = fn.y;
    const mpz_class I = (u - x) * (u - x) - 2 * (v - y) * (v - y);
    const QuadSurd num{2, u + x, v + y};
    const QuadSurd den{2, u - x, -(v - y)};
    const QuadSurd diff = quad_sub(quad_mul(fm, fm), quad_mul(fn, fn));

    GapCertificate c;
    c.kind = GapCertificate::Kind::Example1;
    c.exact = {{"m", m.get_str()},           {"n", n.get_str()},
               {"f_m", to_string(fm)},       {"f_n", to_string(fn)},
               {"I", I.get_str()},           {"numerator", to_string(num)},
               {"denominator", to_string(den)}, {"difference", to_string(diff)}};
    if (I == 0) throw CertificationError("example1 certificate: integer factor vanished;" + trace(c));
    if (quad_cmp_abs(num, den) <= 0)
        throw CertificationError("example1 certificate: numerator does not dominate;" + trace(c));
    if (!(quad_mul(diff, den) == quad_mul(num, QuadSurd{2, I, 0})))
        throw CertificationError("example1 certificate: identity check failed;" + trace(c));

    const Interval ratio = abs(enclose(num, kCertPrec)) / abs(enclose(den, kCertPrec));
    c.enclosures.emplace_back("ratio", ratio);
    c.bound = ratio * abs(Interval::point(I, kCertPrec));
    c.direct_gap = abs(enclose(diff, kCertPrec));
    c.passed = c.bound.lo() > Interval::point(1L, kCertPrec).hi() && c.bound.lo() <= c.direct_gap.hi();
    return c;
}

// ---------------------------------------------------------------------------

Example2System example2_generators(long limit) {
    Example2System s;
    s.limit = limit;
    std::vector<RealScalar> values;
    const PrecisionPolicy policy = default_precision();
    for (long p : primeset::sieve(limit, primeset::PrimeClassFilter(4, {1}))) {
        GaussianRecord r;
        r.p = p;
        std::tie(r.a, r.b) = primeset::two_squares(p);
        r.rho = GaussianInt{r.b, r.a};
        r.angle = Constant::atan(r.a, r.b);

        bool done = false;
        for (Precision prec = policy.initial; prec <= policy.cap && !done; prec *= 2) {
            const Interval lp = log(Interval::point(p, prec));
            const Interval h = constant_enclosure(r.angle, prec);
            const Interval two_pi = scale(Interval::pi(prec), 2);
            mpz_class fl;
            if (!((lp - h) / two_pi).floor(fl)) continue;
            const long k = fl.get_si() + 1;
            const Interval f = h + scale(two_pi, k);
            if (!(f - lp).positive() || !(lp + two_pi - f).positive()) continue;
            r.winding = k;
            r.f = f;
            done = true;
        }
        if (!done) throw CertificationError("example2: winding integer not certified for p=" + std::to_string(p));
        r.g = RealScalar::expform(0, {{r.angle, 1}, {Constant::pi(), 2 * r.winding}});
        const RealScalar cap = RealScalar::expform(0, {{Constant::pi(), 2}}) * RealScalar::integer(p);
        if (!compare(r.g, cap, policy).less())
            throw CertificationError("example2: g(p) < e^(2 pi) p not certified for p=" + std::to_string(p));
        values.push_back(r.g);
        s.records.push_back(r);
    }
    s.generators = GeneratorSet::make(values, "example2");
    s.generator_record = map_generators(s, values);
    return s;
}

GaussianInt example2_rho(const Example2System& sys, const mpz_class& n) {
    GaussianInt r{1, 0};
    for (const auto& [i, e] : factor_over(n, record_primes(sys), "example2"))
        for (unsigned long t = 0; t < e; ++t) r = r * sys.records[i].rho;
    return r;
}

RealScalar example2_g(const Example2System& sys, const mpz_class& n) {
    RealScalar g;
    for (const auto& [i, e] : factor_over(n, record_primes(sys), "example2"))
        g *= sys.records[i].g.pow(mpq_class(static_cast<long>(e)));
    return g;
}

mpz_class example2_index(const Example2System& sys, const Element& e) { return index_of(sys, e); }

GapCertificate certify_example2_pair(const Example2System& sys, const mpz_class& m, const mpz_class& n) {
    if (m == n) throw DomainError("certify_example2_pair needs m != n");
    const GaussianInt rm = example2_rho(sys, m);
    const GaussianInt rn = example2_rho(sys, n);
    const GaussianInt cross = rm * rn.conj();
    const mpz_class signed_area = cross.im;
    const mpz_class D = abs(signed_area);
    const RealScalar gm = example2_g(sys, m);
    const RealScalar gn = example2_g(sys, n);

    GapCertificate c;
    c.kind = GapCertificate::Kind::Example2;
    c.exact = {{"m", m.get_str()},
               {"n", n.get_str()},
               {"rho_m", rm.re.get_str() + "+" + rm.im.get_str() + "i"},
               {"rho_n", rn.re.get_str() + "+" + rn.im.get_str() + "i"},
               {"D", D.get_str()},
               {"g_m", gm.to_string()},
               {"g_n", gn.to_string()}};
    if (D == 0) throw CertificationError("example2 certificate: lattice determinant vanished;" + trace(c));

    const PrecisionPolicy policy = default_precision();
    // g(m) g(n) >= mn because every f(p) exceeds log p.
    const Ordering3 floor_check = compare(gm * gn, RealScalar::rational(mpq_class(m * n)), policy);
    if (!floor_check.greater() && !floor_check.equal())
        throw CertificationError("example2 certificate: g(m) g(n) >= mn not certified;" + trace(c));

    const RealScalar quotient = gm * gn.inverse();
    for (Precision prec = kCertPrec; prec <= std::max<Precision>(policy.cap, kCertPrec); prec *= 2) {
        const Interval df = quotient.log_enclose(prec);
        const Interval root = sqrt(Interval::point(mpz_class(m * n), prec));
        const Interval s = sin(df);
        const Interval lattice = root * s; // must contain the signed area exactly
        const Interval chain = root * abs(df);
        const Interval target = Interval::point(mpq_class(D), prec) / root;
        if (!lattice.contains(mpq_class(signed_area)) && prec * 2 <= policy.cap) continue;
        if (!lattice.contains(mpq_class(signed_area)))
            throw CertificationError("example2 certificate: lattice area identity failed;" + trace(c));
        if (!(chain.lo() >= Interval::point(D, prec).hi()) && prec * 2 <= policy.cap) continue;
        c.enclosures = {{"exponent_difference", df}, {"abs_sin", abs(s)}, {"sin_target", target}, {"sqrt_mn_times_df", chain}};
        c.bound = Interval::point(D, prec);
        c.direct_gap = abs(refine_difference(gm, gn, 120, policy));
        c.passed = chain.lo() >= c.bound.hi() && c.direct_gap.lo() >= c.bound.hi() && D >= 1;
        return c;
    }
    throw CertificationError("example2 certificate: enclosures did not converge;" + trace(c));
}

// ---------------------------------------------------------------------------

GeneratorSet cpow_generators(const mpq_class& c, long limit) {
    if (!(c > 1 && c < 2)) throw DomainError("cpow needs 1 < c < 2, got " + c.get_str());
    std::vector<RealScalar> gens;
    for (long p : primeset::sieve(limit)) gens.push_back(RealScalar::ratpow(mpq_class(p), c));
    return GeneratorSet::make(gens, "cpow");
}

} // namespace beurling::constructions

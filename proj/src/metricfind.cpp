#include "beurling/metricfind.hpp"

#include <algorithm>

namespace beurling::metricfind {

namespace {

constexpr Precision kPrec = 128;

mpq_class to_q(const BigFloat& f) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), f.get());
    return q;
}

bool is_dyadic(const mpq_class& q) {
    const mpz_class& d = q.get_den();
    return mpz_popcount(d.get_mpz_t()) == 1;
}

/// t > 4 delta and e^t > 3 delta, or a message naming the failed inequality.
std::string precondition_failure(const mpq_class& delta, const mpq_class& t) {
    if (!(t > 4 * delta)) return "t > 4*delta fails (t = " + t.get_str() + ", delta = " + delta.get_str() + ")";
    const Interval et = exp(Interval::point(t, kPrec));
    if (!(et.lo() > Interval::point(mpq_class(3 * delta), kPrec).hi()))
        return "t > log(3*delta) fails (t = " + t.get_str() + ")";
    return {};
}

} // namespace

Interval harmonic_constant(Precision prec) { return Interval::point(1L, prec) + log(Interval::point(6L, prec)); }

Interval measure_bound(const mpq_class& delta, const mpq_class& t, const BigFloat& s_upper, Precision prec) {
    const Interval s = Interval::from_bounds(s_upper, s_upper);
    const Interval decay = exp(Interval::point(mpq_class(-t / 2), prec));
    return scale(harmonic_constant(prec), 6 * delta) * decay * s * s;
}

SqrtSumBound sqrt_sum(const GeneratorSet& gprime, const mpz_class& N, PrecisionPolicy policy) {
    if (N < 1) throw DomainError("sqrt_sum cutoff must be at least 1");
    Interval product = Interval::point(1L, kPrec);
    const Interval one = Interval::point(1L, kPrec);
    for (const auto& g : gprime.generators) {
        if (!compare(g, RealScalar::one(), policy).greater()) throw DomainError("generator must exceed 1: " + g.to_string());
        const Interval root = sqrt(g.enclose(kPrec));
        product = product * (one + one / (root - one));
    }
    SqrtSumBound s;
    s.cutoff = N;
    s.upper = product.hi();
    Interval partial = Interval::point(0L, kPrec);
    for (const auto& e : semigroup::enumerate(gprime, RealScalar::rational(mpq_class(N)), policy)) {
        partial = partial + one / sqrt(e.value.enclose(kPrec));
        ++s.terms;
    }
    s.lower = partial.lo();
    if (s.lower > s.upper) throw CertificationError("sqrt_sum: partial sum exceeds the Euler product");
    return s;
}

std::pair<long, long> k_range(const Interval& L, const mpq_class& t) {
    const Interval lo = L / Interval::point(mpq_class(3 * t), kPrec);
    const Interval hi = scale(L, 2) / Interval::point(t, kPrec);
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo.lo().get(), MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi.hi().get(), MPFR_RNDU);
    return {std::max(1L, a.get_si()), b.get_si()};
}

std::optional<std::pair<mpq_class, mpq_class>> triple_interval(const Interval& L, const Interval& n_value, long k,
                                                               const mpq_class& delta, const mpq_class& t) {
    const Precision p = L.precision();
    const Interval kk = Interval::point(k, p);
    const Interval center = L / kk;
    const Interval r = Interval::point(delta, p) / (kk * n_value);
    mpq_class lo = to_q((center - scale(r, 2)).lo());
    mpq_class hi = to_q((center + r).hi());
    lo = std::max(lo, t);
    hi = std::min(hi, mpq_class(2 * t));
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

BadIntervalSet bad_intervals(const GeneratorSet& gprime, const mpq_class& delta, const mpq_class& t,
                             const mpz_class& N, PrecisionPolicy policy) {
    if (delta <= 0) throw DomainError("delta must be positive");
    if (N < 1) throw DomainError("cutoff must be at least 1");
    if (auto why = precondition_failure(delta, t); !why.empty()) throw DomainError(why);

    BadIntervalSet out;
    out.t = t;
    out.delta = delta;
    out.cutoff = N;
    out.sqrt_sum = sqrt_sum(gprime, N, policy);

    const std::vector<semigroup::Element> el = semigroup::enumerate(gprime, RealScalar::rational(mpq_class(N)), policy);
    std::vector<Interval> logs, vals;
    for (const auto& e : el) {
        logs.push_back(e.value.log_enclose(kPrec));
        vals.push_back(e.value.enclose(kPrec));
    }
    const Interval half_et = scale(exp(Interval::point(t, kPrec)), mpq_class(1, 2));

    for (size_t j = 0; j < el.size(); ++j) {
        for (size_t i = 0; i < j; ++i) {
            // Pairs need n > e^t m / 2; values are sorted so later m only get worse.
            if (!certainly_greater(vals[j], vals[i] * half_et)) {
                if (certainly_less(vals[j], vals[i] * half_et)) break;
            }
            ++out.pairs_considered;
            const Interval L = logs[j] - logs[i];
            const auto [k_lo, k_hi] = k_range(L, t);
            for (long k = k_lo; k <= k_hi; ++k) {
                auto iv = triple_interval(L, vals[j], k, delta, t);
                if (!iv) continue;
                BadInterval b;
                b.m = el[i].exponents;
                b.n = el[j].exponents;
                b.m_value = el[i].value;
                b.n_value = el[j].value;
                b.k = k;
                b.center = L / Interval::point(k, kPrec);
                b.lo = iv->first;
                b.hi = iv->second;
                out.listed_measure += b.hi - b.lo;
                out.intervals.push_back(std::move(b));
            }
        }
    }
    std::sort(out.intervals.begin(), out.intervals.end(), [](const BadInterval& a, const BadInterval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });

    // Survivors: complement of the union inside [t, 2t].
    mpq_class cursor = t;
    const mpq_class end = 2 * t;
    for (const auto& b : out.intervals) {
        if (b.lo > cursor) out.survivors.emplace_back(cursor, b.lo);
        cursor = std::max(cursor, b.hi);
    }
    if (cursor < end) out.survivors.emplace_back(cursor, end);

    const Interval s_up = Interval::from_bounds(out.sqrt_sum.upper, out.sqrt_sum.upper);
    const Interval s_lo = Interval::from_bounds(out.sqrt_sum.lower, out.sqrt_sum.lower);
    Interval tail = s_up - s_lo;
    if (tail.lo().sign() < 0) tail = Interval::from_bounds(BigFloat(kPrec), tail.hi());
    const Interval decay = exp(Interval::point(mpq_class(-t / 2), kPrec));
    out.residual = scale(harmonic_constant(kPrec), 6 * delta) * decay * s_up * tail;
    out.total_bound = measure_bound(delta, t, out.sqrt_sum.upper);
    return out;
}

AlphaCertificate find_alpha(const GeneratorSet& gprime, const mpq_class& delta, const RealScalar& x_verify,
                            const FindOptions& options, PrecisionPolicy policy) {
    if (delta <= 0) throw DomainError("delta must be positive");
    const RealScalar delta_s = RealScalar::rational(delta);
    {
        const semigroup::GapReport base = semigroup::gap_report(gprime, x_verify, delta_s, policy);
        if (!base.violations.empty() || !base.unresolved.empty())
            throw DomainError("the given generators are not delta-lacunary up to the verification limit");
    }

    const SqrtSumBound s = sqrt_sum(gprime, options.cutoff, policy);
    std::optional<mpq_class> t;
    for (long cand = 1; cand <= options.t_max; ++cand) {
        const mpq_class tq(cand);
        if (!precondition_failure(delta, tq).empty()) continue;
        const Interval b = scale(measure_bound(delta, tq, s.upper), options.margin);
        if (b.hi() < Interval::point(cand, kPrec).lo()) {
            t = tq;
            break;
        }
    }
    if (!t) throw NotFound("no admissible t up to " + std::to_string(options.t_max) + ": measure bound stays above t");

    AlphaCertificate cert;
    cert.t = *t;
    cert.verify_limit = x_verify;
    cert.bad = bad_intervals(gprime, delta, *t, options.cutoff, policy);

    const std::pair<mpq_class, mpq_class>* widest = nullptr;
    for (const auto& sv : cert.bad.survivors)
        if (!widest || sv.second - sv.first > widest->second - widest->first) widest = &sv;
    const BigFloat res_hi = cert.bad.residual.hi();
    if (!widest || !(Interval::point(mpq_class(widest->second - widest->first), kPrec).lo() >
                     scale(cert.bad.residual, 2).hi()))
        throw NotFound("no surviving interval wider than twice the residual " + res_hi.to_string(6));
    cert.surviving = *widest;

    // A non-dyadic rational near the centre: (3j + 1) / 3000.
    const mpq_class centre = (widest->first + widest->second) / 2;
    mpz_class j;
    mpz_fdiv_q(j.get_mpz_t(), mpz_class(centre.get_num() * 1000).get_mpz_t(), centre.get_den().get_mpz_t());
    std::optional<mpq_class> beta;
    for (long off = 0; off < 2000 && !beta; ++off) {
        for (long sgn : {1L, -1L}) {
            mpq_class b(3 * (j + sgn * off) + 1, 3000);
            b.canonicalize();
            if (b > widest->first && b < widest->second && !is_dyadic(b)) {
                beta = b;
                break;
            }
        }
    }
    if (!beta) {
        beta = centre;
        if (is_dyadic(*beta)) beta = (2 * widest->first + widest->second) / 3;
    }
    cert.beta = *beta;
    cert.alpha = RealScalar::expform(cert.beta, {});

    // e^beta must not be an integer: its floor has to be certified with room on both sides.
    bool ok = false;
    for (Precision p = policy.initial; p <= policy.cap && !ok; p *= 2) {
        const Interval a = cert.alpha.enclose(p);
        mpz_class fl;
        ok = a.floor(fl) && a.lo() > Interval::point(fl, p).hi();
        if (ok) cert.alpha_enclosure = a;
    }
    if (!ok) throw CertificationError("could not certify e^beta is not an integer");

    std::vector<RealScalar> gens = gprime.generators;
    gens.push_back(cert.alpha);
    const GeneratorSet full = GeneratorSet::make(gens, "metric", policy);
    cert.check = semigroup::gap_report(full, x_verify, delta_s, policy);
    if (!cert.check.violations.empty()) {
        const bool beyond = compare(x_verify, RealScalar::rational(mpq_class(options.cutoff)), policy).greater();
        throw CertificationError(beyond ? "residual collision: a gap below delta involves values past the cutoff"
                                        : "empirical check failed inside the enumerated range");
    }
    return cert;
}

} // namespace beurling::metricfind

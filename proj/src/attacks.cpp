#include "beurling/attacks.hpp"

#include <algorithm>

namespace beurling::attacks {

namespace {

bool is_odd(const mpz_class& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

bool e_free(const mpz_class& n, const ExcludedSet& E) { return E.is_free(n); }

/// Residues of z (mod p) for which p divides c0 + c1 * z.
std::vector<char> forbidden_residues(long p, const mpz_class& c0, const mpz_class& c1) {
    std::vector<char> bad(static_cast<size_t>(p), 0);
    const long r0 = mpz_fdiv_ui(c0.get_mpz_t(), static_cast<unsigned long>(p));
    const long r1 = mpz_fdiv_ui(c1.get_mpz_t(), static_cast<unsigned long>(p));
    for (long z = 0; z < p; ++z)
        if ((r0 + r1 * z) % p == 0) bad[static_cast<size_t>(z)] = 1;
    return bad;
}

} // namespace

Witness attack_rational(const ExcludedSet& E, const mpz_class& a, const mpz_class& b, const mpq_class& delta,
                        const SieveConfig& config) {
    if (b == 0) throw DomainError("alpha denominator is zero");
    mpq_class alpha(a, b);
    alpha.canonicalize();
    if (alpha.get_den() == 1) throw DomainError("alpha = " + alpha.get_str() + " is an integer");
    if (alpha <= 1) throw DomainError("alpha must exceed 1");
    if (delta <= 0) throw DomainError("delta must be positive");
    const mpz_class A = alpha.get_num();
    const mpz_class B = alpha.get_den();

    unsigned long m = 1;
    mpz_class bm = B;
    while (delta * bm <= 2) {
        ++m;
        bm *= B;
    }
    mpz_class am;
    mpz_pow_ui(am.get_mpz_t(), A.get_mpz_t(), m);
    const long d = is_odd(A * B) ? 2 : 1;

    // Smallest positive u with a^m u = d (mod b^m), then shift to odd u, v.
    mpz_class inv, u;
    mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
    u = (d * inv) % bm;
    if (u <= 0) u += bm;
    mpz_class v = (am * u - d) / bm;
    for (int i = 0; i < 4 && !(is_odd(u) && is_odd(v)); ++i) {
        u += bm;
        v += am;
    }
    if (!(is_odd(u) && is_odd(v)) || am * u - bm * v != d)
        throw CertificationError("attack_rational: could not fix odd Bezout pair");

    const mpz_class step_x = 2 * bm;
    const mpz_class step_y = 2 * am;
    std::vector<std::pair<long, std::vector<char>>> small;
    for (long p : E.primes()) {
        if (p > config.T) continue;
        std::vector<char> bx = forbidden_residues(p, u, step_x);
        const std::vector<char> by = forbidden_residues(p, v, step_y);
        for (size_t i = 0; i < bx.size(); ++i) bx[i] = static_cast<char>(bx[i] | by[i]);
        small.emplace_back(p, std::move(bx));
    }

    for (mpz_class z = 0; z <= config.bound; ++z) {
        bool skip = false;
        for (const auto& [p, bad] : small)
            if (bad[mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p))]) {
                skip = true;
                break;
            }
        if (skip) continue;
        const mpz_class x = u + step_x * z;
        const mpz_class y = v + step_y * z;
        if (!e_free(x, E) || !e_free(y, E)) continue;

        Witness w;
        w.kind = Witness::Case::Rational;
        w.delta = delta;
        w.alpha = RealScalar::rational(alpha);
        w.n_prime = x;
        w.m_prime = y;
        w.exact_gap = mpq_class(d, bm);
        w.exact_gap->canonicalize();
        w.gap = Interval::point(*w.exact_gap, 128);
        w.rational = RationalProvenance{m, u, v, d, z};
        // Exact re-check of |alpha^m x - y| = d / b^m.
        mpq_class lhs = mpq_class(am, bm) * x - y;
        if (abs(lhs) != *w.exact_gap) throw CertificationError("attack_rational: gap identity failed");
        return w;
    }
    throw NotFound("attack_rational: no E-free pair with z <= " + config.bound.get_str());
}

// ---------------------------------------------------------------------------

Witness attack_irrational(const ExcludedSet& E, const RealScalar& alpha, const mpq_class& delta,
                          const SieveConfig& config, PrecisionPolicy policy) {
    if (delta <= 0) throw DomainError("delta must be positive");
    if (alpha.as_rational()) throw DomainError("alpha is rational; use the rational attack");
    if (!compare(alpha, RealScalar::one(), policy).greater()) throw DomainError("alpha must exceed 1");

    // Convergents until the denominators pass the search bound.
    std::vector<cfrac::Convergent> conv;
    for (size_t count = 16;; count *= 2) {
        const cfrac::CFExpansion cf = cfrac::expand(alpha, count, policy);
        if (cf.exhausted) throw DomainError("alpha has a terminating expansion");
        conv = cfrac::convergents(cf);
        if (conv.empty()) throw DomainError("alpha: no certified partial quotients");
        if (conv.back().r > config.bound || cf.certified < count) break;
    }
    struct Pair {
        size_t k;
        cfrac::Convergent lower, upper;
    };
    std::vector<Pair> pairs;
    for (size_t k = 0; k + 1 < conv.size(); ++k) {
        const auto& c0 = conv[k];
        const auto& c1 = conv[k + 1];
        if (c0.a * c1.r < c1.a * c0.r)
            pairs.push_back({k, c0, c1});
        else
            pairs.push_back({k, c1, c0});
    }

    const bool parity = E.contains(2) || config.always_odd;
    const RealScalar delta_s = RealScalar::rational(delta);
    BigFloat delta_hi(128);
    mpfr_set_q(delta_hi.get(), delta.get_mpq_t(), MPFR_RNDU);
    BigFloat delta_lo(128);
    mpfr_set_q(delta_lo.get(), delta.get_mpq_t(), MPFR_RNDD);
    const Interval alpha_iv = alpha.enclose(std::max<Precision>(policy.initial, 192));

    for (mpz_class n = 1; n <= config.bound; ++n) {
        if (parity && !is_odd(n)) continue;
        if (!e_free(n, E)) continue;
        Interval na = alpha_iv * Interval::point(n, alpha_iv.precision());
        mpz_class fl;
        for (Precision p = alpha_iv.precision() * 2; !na.floor(fl) && p <= policy.cap; p *= 2)
            na = alpha.enclose(p) * Interval::point(n, p);
        if (!na.floor(fl)) throw DomainError("attack_irrational: floor(n alpha) unresolved at n = " + n.get_str());
        for (mpz_class m : {mpz_class(fl), mpz_class(fl + 1)}) {
            if (m < 1) continue;
            if (parity && !is_odd(m)) continue;
            const Interval gap = abs(na - Interval::point(m, na.precision()));
            if (gap.lo() >= delta_hi) continue;
            if (!e_free(m, E)) continue;

            const Pair* hit = nullptr;
            mpz_class x, y;
            for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
                if (it->lower.r + it->upper.r > n) continue;
                const mpz_class xx = n * it->upper.a - m * it->upper.r;
                const mpz_class yy = it->lower.r * m - it->lower.a * n;
                if (xx >= 1 && yy >= 1) {
                    hit = &*it;
                    x = xx;
                    y = yy;
                    break;
                }
            }
            if (!hit) continue;

            const RealScalar an = alpha * RealScalar::rational(mpq_class(n));
            const RealScalar ms = RealScalar::rational(mpq_class(m));
            Ordering3 o;
            if (gap.hi() < delta_lo) {
                o.kind = Ordering3::Kind::Less;
            } else {
                const Ordering3 side = compare(an, ms, policy);
                o = side.greater() ? compare_gap(an, ms, delta_s, policy) : compare_gap(ms, an, delta_s, policy);
            }
            if (!o.less()) continue;

            Witness w;
            w.kind = Witness::Case::Irrational;
            w.delta = delta;
            w.alpha = alpha;
            w.n_prime = n;
            w.m_prime = m;
            w.gap = abs(refine_difference(an, ms, 96, policy));
            IrrationalProvenance pv;
            pv.k = hit->k;
            pv.lower = hit->lower;
            pv.upper = hit->upper;
            pv.x = x;
            pv.y = y;
            pv.parity_rule = parity;
            pv.within_bounds = mpq_class(2 * x) < delta * hit->upper.r && mpq_class(2 * y) < delta * hit->lower.r;
            w.irrational = pv;
            return w;
        }
    }
    throw NotFound("attack_irrational: no E-free positive mediant within delta for nPrime <= " +
                   config.bound.get_str());
}

bool revalidate(const Witness& w, const ExcludedSet& E, PrecisionPolicy policy) {
    for (long p : E.primes()) {
        if (mpz_divisible_ui_p(w.n_prime.get_mpz_t(), static_cast<unsigned long>(p))) return false;
        if (mpz_divisible_ui_p(w.m_prime.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    const RealScalar delta = RealScalar::rational(w.delta);
    if (w.kind == Witness::Case::Rational) {
        const auto q = w.alpha.as_rational();
        if (!q || !w.rational) return false;
        mpq_class am = 1;
        for (unsigned long i = 0; i < w.rational->m; ++i) am *= *q;
        const mpq_class gap = abs(am * w.n_prime - w.m_prime);
        return gap < w.delta && gap == *w.exact_gap;
    }
    const RealScalar an = w.alpha * RealScalar::rational(mpq_class(w.n_prime));
    const RealScalar ms = RealScalar::rational(mpq_class(w.m_prime));
    const Ordering3 side = compare(an, ms, policy);
    const Ordering3 o = side.greater() ? compare_gap(an, ms, delta, policy) : compare_gap(ms, an, delta, policy);
    if (!o.less()) return false;
    if (w.irrational) {
        const auto& pv = *w.irrational;
        // Mediant sandwich and the coordinates that produce it.
        const mpq_class mu(w.m_prime, w.n_prime);
        if (!(mpq_class(pv.lower.a, pv.lower.r) < mu && mu < mpq_class(pv.upper.a, pv.upper.r))) return false;
        if (pv.x * pv.lower.r + pv.y * pv.upper.r != w.n_prime) return false;
        if (pv.x * pv.lower.a + pv.y * pv.upper.a != w.m_prime) return false;
    }
    return true;
}

DensityDiag density_diag(const ExcludedSet& E) {
    DensityDiag d;
    d.case1_eta = 1;
    mpq_class prime_prod = 1;
    for (long p : E.primes()) {
        if (p <= 2) continue;
        d.case1_eta *= mpq_class(p - 2, p);
        prime_prod *= mpq_class(p - 1, p);
    }
    d.case1_eta.canonicalize();
    d.eta = d.case1_eta / 2;
    d.eta_prime = prime_prod / 2;
    d.eta.canonicalize();
    d.eta_prime.canonicalize();

    // Smallest T with sum_{p in E, p > T} 1/p < eta / 3.
    const mpq_class target = d.case1_eta / 3;
    std::vector<long> ps = E.primes();
    d.suggested_T = 2;
    for (size_t i = 0; i <= ps.size(); ++i) {
        mpq_class tail = 0;
        for (size_t j = i; j < ps.size(); ++j) tail += mpq_class(1, ps[j]);
        if (tail < target) {
            d.suggested_T = i == 0 ? 2 : std::max(2L, ps[i - 1]);
            break;
        }
    }
    mpz_class budget;
    mpz_cdiv_q(budget.get_mpz_t(), mpz_class(100 * d.eta.get_den()).get_mpz_t(), d.eta.get_num().get_mpz_t());
    d.suggested_budget = budget;
    return d;
}

} // namespace beurling::attacks

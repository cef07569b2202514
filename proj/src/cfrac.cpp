#include "beurling/cfrac.hpp"

namespace beurling::cfrac {

namespace {

CFExpansion expand_rational(const RealScalar& value, mpq_class q, size_t count) {
    CFExpansion cf;
    cf.value = value;
    while (cf.quotients.size() < count) {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        cf.quotients.push_back(fl);
        q -= fl;
        if (q == 0) {
            cf.exhausted = true;
            break;
        }
        q = 1 / q;
    }
    cf.certified = cf.quotients.size();
    return cf;
}

/// Exact floor of x + y sqrt(d).
mpz_class field_floor(const FieldElement& v) {
    // Start from a floating estimate, then correct with exact sign tests.
    Interval iv = Interval::point(v.x, 128) + Interval::point(v.y, 128) * sqrt(Interval::point(v.d, 128));
    mpz_class f;
    mpfr_get_z(f.get_mpz_t(), iv.midpoint().get(), MPFR_RNDD);
    for (;;) {
        FieldElement below{v.d, v.x - f, v.y};
        if (field_sign(below) < 0) {
            --f;
            continue;
        }
        FieldElement above{v.d, v.x - f - 1, v.y};
        if (field_sign(above) >= 0) {
            ++f;
            continue;
        }
        return f;
    }
}

CFExpansion expand_field(const RealScalar& value, FieldElement v, size_t count) {
    CFExpansion cf;
    cf.value = value;
    while (cf.quotients.size() < count) {
        const mpz_class f = field_floor(v);
        cf.quotients.push_back(f);
        v.x -= f;
        if (v.x == 0 && v.y == 0) {
            cf.exhausted = true;
            break;
        }
        // 1 / (x + y sqrt d) = (x - y sqrt d) / (x^2 - d y^2)
        const mpq_class n = v.x * v.x - v.d * v.y * v.y;
        v = FieldElement{v.d, v.x / n, -v.y / n};
    }
    cf.certified = cf.quotients.size();
    return cf;
}

/// One pass at fixed precision; returns the certified quotients.
std::vector<mpz_class> extract(Interval iv, size_t count) {
    std::vector<mpz_class> out;
    while (out.size() < count) {
        mpz_class f;
        if (!iv.floor(f)) break;
        out.push_back(f);
        Interval rem = iv - Interval::point(f, iv.precision());
        if (rem.contains_zero() || !rem.positive()) break;
        iv = Interval::point(1L, iv.precision()) / rem;
    }
    return out;
}

} // namespace

CFExpansion expand(const Evaluator& x, size_t count, PrecisionPolicy policy) {
    if (count == 0) throw DomainError("expansion count must be at least 1");
    CFExpansion best;
    for (Precision p = policy.initial; p <= policy.cap; p *= 2) {
        std::vector<mpz_class> q = extract(x(p), count);
        if (q.size() >= best.quotients.size()) {
            best.quotients = std::move(q);
            best.precision = p;
        }
        if (best.quotients.size() >= count) break;
    }
    best.certified = best.quotients.size();
    return best;
}

CFExpansion expand(const RealScalar& x, size_t count, PrecisionPolicy policy) {
    if (count == 0) throw DomainError("expansion count must be at least 1");
    if (auto q = x.as_rational()) return expand_rational(x, *q, count);
    if (auto fe = x.as_field_element()) return expand_field(x, *fe, count);
    CFExpansion cf = expand([&x](Precision p) { return x.enclose(p); }, count, policy);
    cf.value = x;
    return cf;
}

std::vector<Convergent> convergents(const CFExpansion& cf) {
    std::vector<Convergent> out;
    mpz_class a_prev = 1, r_prev = 0;
    mpz_class a_cur = 0, r_cur = 1;
    for (size_t i = 0; i < cf.certified; ++i) {
        const mpz_class& q = cf.quotients[i];
        mpz_class a_next = q * a_prev + a_cur;
        mpz_class r_next = q * r_prev + r_cur;
        // Shift: (a_cur, r_cur) <- previous, (a_prev, r_prev) <- newest.
        a_cur = a_prev;
        r_cur = r_prev;
        a_prev = a_next;
        r_prev = r_next;
        out.push_back({a_next, r_next, i});
    }
    return out;
}

mpz_class max_partial_quotient(const CFExpansion& cf) {
    mpz_class m = 0;
    for (size_t i = 1; i < cf.certified; ++i)
        if (cf.quotients[i] > m) m = cf.quotients[i];
    return m;
}

Interval power_residual(const RealScalar& alpha, const mpq_class& c, const mpz_class& a, const mpz_class& b,
                        Precision prec, bool* exact_zero) {
    const RealScalar lhs = alpha * RealScalar::ratpow(mpq_class(b), c);
    const RealScalar rhs = RealScalar::ratpow(mpq_class(a), c);
    if (exact_zero) *exact_zero = false;
    if (compare(lhs, rhs, {prec, prec}).equal()) {
        if (exact_zero) *exact_zero = true;
        return Interval::point(0L, prec);
    }
    return abs(enclose_difference(lhs, rhs, prec));
}

PowerAttackResult power_attack(const RealScalar& alpha, const mpq_class& c, const mpq_class& eps, const mpz_class& bmax,
                               const PowerAttackOptions& options) {
    if (!(c > 1 && c < 2)) throw DomainError("power_attack needs 1 < c < 2");
    if (eps <= 0) throw DomainError("power_attack needs eps > 0");
    if (bmax < 1) throw DomainError("power_attack needs bmax >= 1");
    if (!compare(alpha, RealScalar::one(), options.policy).greater()) throw DomainError("power_attack needs alpha > 1");

    const mpq_class inv_c = 1 / c;
    Evaluator root_eval;
    std::optional<RealScalar> root;
    try {
        root = alpha.pow(inv_c);
    } catch (const DomainError&) {
        root_eval = [alpha, inv_c](Precision p) { return exp(scale(alpha.log_enclose(p), inv_c)); };
    }

    // Enough quotients for the denominators to pass bmax.
    std::vector<std::pair<mpz_class, mpz_class>> candidates;
    if (options.exhaustive) {
        const Precision p = std::max<Precision>(options.policy.initial, 128);
        const Interval r = root ? root->enclose(p) : root_eval(p);
        for (mpz_class b = 1; b <= bmax; ++b) {
            const Interval scaled = r * Interval::point(b, p);
            mpz_class lo, hi;
            mpfr_get_z(lo.get_mpz_t(), scaled.lo().get(), MPFR_RNDD);
            mpfr_get_z(hi.get_mpz_t(), scaled.hi().get(), MPFR_RNDU);
            for (mpz_class a = lo; a <= hi + 1; ++a)
                if (a >= 1) candidates.emplace_back(a, b);
        }
    } else {
        size_t count = 32;
        for (;;) {
            CFExpansion cf = root ? expand(*root, count, options.policy) : expand(root_eval, count, options.policy);
            std::vector<Convergent> conv = convergents(cf);
            const bool covered = !conv.empty() && conv.back().r > bmax;
            if (covered || cf.exhausted || cf.certified < count) {
                for (const auto& k : conv)
                    if (k.r <= bmax && k.a >= 1) candidates.emplace_back(k.a, k.r);
                break;
            }
            count *= 2;
        }
    }

    PowerAttackResult result;
    result.residual = Interval(64);
    bool have_best = false;
    for (const auto& [a, b] : candidates) {
        bool zero = false;
        Interval res = power_residual(alpha, c, a, b, std::max<Precision>(options.policy.initial, 160), &zero);
        result.trail.emplace_back(a, b, res);
        const bool take = !have_best || (zero && !result.residual_exact_zero) ||
                          (!zero && !result.residual_exact_zero && res.hi() < result.residual.hi());
        if (take) {
            result.a = a;
            result.b = b;
            result.residual = res;
            result.residual_exact_zero = zero;
            have_best = true;
        }
    }
    if (have_best) {
        BigFloat e(128);
        mpfr_set_q(e.get(), eps.get_mpq_t(), MPFR_RNDD);
        result.found = result.residual_exact_zero || result.residual.hi() < e;
    }
    return result;
}

} // namespace beurling::cfrac

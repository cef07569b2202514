#include "beurling/semigroup.hpp"

#include <algorithm>

namespace beurling::semigroup {

GeneratorSet GeneratorSet::make(std::vector<RealScalar> gens, std::string label, PrecisionPolicy policy) {
    for (const auto& g : gens) {
        const Ordering3 o = compare(g, RealScalar::one(), policy);
        if (!o.greater()) throw DomainError("generator must exceed 1: " + g.to_string());
    }
    std::sort(gens.begin(), gens.end(), [&](const RealScalar& a, const RealScalar& b) {
        const Ordering3 o = compare(a, b, policy);
        if (o.less()) return true;
        if (o.greater()) return false;
        return structural_less(a, b);
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    GeneratorSet out;
    out.generators = std::move(gens);
    out.label = std::move(label);
    return out;
}

bool lex_less(const ExponentVec& a, const ExponentVec& b) {
    size_t i = 0;
    size_t j = 0;
    while (i < a.size() || j < b.size()) {
        const size_t ia = i < a.size() ? a[i].first : SIZE_MAX;
        const size_t jb = j < b.size() ? b[j].first : SIZE_MAX;
        const size_t idx = std::min(ia, jb);
        const unsigned long ea = ia == idx ? a[i].second : 0;
        const unsigned long eb = jb == idx ? b[j].second : 0;
        if (ea != eb) return ea < eb;
        if (ia == idx) ++i;
        if (jb == idx) ++j;
    }
    return false;
}

std::string to_string(const ExponentVec& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i].first) + ":" + std::to_string(v[i].second);
    }
    return s + "}";
}

RealScalar evaluate(const GeneratorSet& g, const ExponentVec& v) {
    RealScalar r;
    for (const auto& [idx, e] : v) r *= g.generators.at(idx).pow(mpq_class(static_cast<long>(e)));
    return r;
}

Enumerator::Enumerator(const GeneratorSet& g, RealScalar bound, PrecisionPolicy policy)
    : gens_(g), bound_(std::move(bound)), bound_approx_(bound_.enclose(policy.initial)), policy_(policy) {
    if (!compare(bound_, RealScalar::one(), policy).greater() && !(bound_ == RealScalar::one()))
        throw DomainError("enumeration bound must be at least 1");
    for (const auto& gen : gens_.generators) gen_approx_.push_back(gen.enclose(policy.initial));
    heap_.push_back(Candidate{{}, RealScalar::one(), Interval::point(1L, policy.initial), 0});
}

bool Enumerator::heap_after(const Candidate& a, const Candidate& b) {
    // std heap keeps the "largest" on top; we want the smallest value first.
    if (certainly_less(a.approx, b.approx)) return false;
    if (certainly_greater(a.approx, b.approx)) return true;
    const Ordering3 o = compare(a.value, b.value, policy_);
    if (o.less()) return false;
    if (o.greater()) return true;
    if (o.unresolved()) unresolved_.push_back({a.exponents, b.exponents, "queue order", o.precision});
    return lex_less(b.exponents, a.exponents);
}

void Enumerator::expand(const Candidate& c) {
    for (size_t j = c.max_index; j < gens_.size(); ++j) {
        Candidate child;
        child.value = c.value * gens_.generators[j];
        child.approx = c.approx * gen_approx_[j];
        child.exponents = c.exponents;
        if (!child.exponents.empty() && child.exponents.back().first == j)
            ++child.exponents.back().second;
        else
            child.exponents.emplace_back(j, 1UL);
        child.max_index = j;

        if (certainly_greater(child.approx, bound_approx_)) break;
        if (!certainly_less(child.approx, bound_approx_)) {
            const Ordering3 o = compare(child.value, bound_, policy_);
            if (o.greater()) break;
            if (o.unresolved()) {
                unresolved_.push_back({child.exponents, {}, "bound check", o.precision});
                continue;
            }
        }
        heap_.push_back(std::move(child));
        std::push_heap(heap_.begin(), heap_.end(),
                       [this](const Candidate& a, const Candidate& b) { return heap_after(a, b); });
    }
}

std::optional<Element> Enumerator::next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), [this](const Candidate& a, const Candidate& b) { return heap_after(a, b); });
    Candidate top = std::move(heap_.back());
    heap_.pop_back();
    expand(top);

    Element e{top.exponents, top.value, false};
    if (last_ && !certainly_less(last_approx_, top.approx)) {
        const Ordering3 o = compare(last_->value, e.value, policy_);
        if (o.equal()) {
            e.collision = true;
            ++collisions_;
        }
    }
    last_ = e;
    last_approx_ = top.approx;
    return e;
}

std::vector<Element> enumerate(const GeneratorSet& g, const RealScalar& bound, PrecisionPolicy policy,
                               std::vector<UnresolvedPair>* unresolved) {
    Enumerator it(g, bound, policy);
    std::vector<Element> out;
    while (auto e = it.next()) out.push_back(std::move(*e));
    if (unresolved) *unresolved = it.unresolved();
    return out;
}

Counts counting(const GeneratorSet& g, const RealScalar& x, PrecisionPolicy policy) {
    Counts c;
    Enumerator it(g, x, policy);
    while (it.next()) ++c.b;
    c.unresolved = it.unresolved().size();
    for (const auto& gen : g.generators) {
        const Ordering3 o = compare(gen, x, policy);
        if (o.unresolved()) ++c.unresolved;
        else if (!o.greater()) ++c.g;
    }
    return c;
}

namespace {

long dyadic_bucket(const Interval& gap) {
    const BigFloat& at = gap.lo().sign() > 0 ? gap.lo() : gap.hi();
    return static_cast<long>(mpfr_get_exp(at.get())) - 1;
}

} // namespace

GapReport gap_report(const std::vector<Element>& elements, const RealScalar& bound, const RealScalar& delta,
                     PrecisionPolicy policy) {
    GapReport r;
    r.limit = bound;
    r.delta = delta;
    r.count = elements.size();
    for (size_t i = 0; i + 1 < elements.size(); ++i) {
        const Element& lo = elements[i];
        const Element& hi = elements[i + 1];
        GapPair pair{lo, hi, Interval::point(0L, policy.initial), hi.collision};
        if (!pair.exact_zero) pair.gap = refine_difference(hi.value, lo.value, 72, policy);

        if (pair.exact_zero) {
            ++r.zero_gaps;
        } else {
            ++r.histogram[dyadic_bucket(pair.gap)];
        }

        if (!r.min_gap || pair.gap.hi() < r.min_gap->gap.hi()) r.min_gap = pair;
        r.min_gap_enclosure = r.min_gap_enclosure
                                  ? Interval::from_bounds(std::min(r.min_gap_enclosure->lo(), pair.gap.lo()),
                                                          std::min(r.min_gap_enclosure->hi(), pair.gap.hi()))
                                  : pair.gap;

        if (pair.exact_zero) {
            r.violations.push_back(pair);
            continue;
        }
        const Ordering3 o = compare_gap(hi.value, lo.value, delta, policy);
        if (o.less()) r.violations.push_back(pair);
        else if (o.unresolved()) r.unresolved.push_back({lo.exponents, hi.exponents, "gap vs delta", o.precision});
    }
    return r;
}

GapReport gap_report(const GeneratorSet& g, const RealScalar& bound, const RealScalar& delta, PrecisionPolicy policy) {
    std::vector<UnresolvedPair> unresolved;
    std::vector<Element> elements = enumerate(g, bound, policy, &unresolved);
    GapReport r = gap_report(elements, bound, delta, policy);
    r.unresolved.insert(r.unresolved.begin(), unresolved.begin(), unresolved.end());
    return r;
}

} // namespace beurling::semigroup

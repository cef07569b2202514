#pragma once

// Independent reference enumeration: every exponent vector with product <= X,
// found by depth-first search over direct MPFR products of the generator
// enclosures. Exact comparison is used only when the enclosure straddles X.

#include "beurling/semigroup.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace testing {

using beurling::Interval;
using beurling::RealScalar;
using beurling::semigroup::ExponentVec;
using beurling::semigroup::GeneratorSet;

struct BruteElement {
    ExponentVec exponents;
    Interval value;
};

inline std::vector<BruteElement> brute_force(const GeneratorSet& g, const RealScalar& X, beurling::Precision prec = 512) {
    std::vector<Interval> gv;
    for (const auto& x : g.generators) gv.push_back(x.enclose(prec));
    const Interval xv = X.enclose(prec);
    std::vector<BruteElement> out;
    std::vector<unsigned long> e(g.size(), 0);

    auto within = [&](const Interval& v) {
        if (certainly_less(v, xv)) return true;
        if (certainly_greater(v, xv)) return false;
        ExponentVec ev;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) ev.emplace_back(i, e[i]);
        return !beurling::compare(beurling::semigroup::evaluate(g, ev), X).greater();
    };
    auto rec = [&](auto&& self, size_t i, const Interval& v) -> void {
        if (i == g.size()) {
            ExponentVec ev;
            for (size_t j = 0; j < e.size(); ++j)
                if (e[j]) ev.emplace_back(j, e[j]);
            out.push_back({ev, v});
            return;
        }
        Interval cur = v;
        e[i] = 0;
        while (true) {
            self(self, i + 1, cur);
            cur = cur * gv[i];
            ++e[i];
            if (!within(cur)) break;
        }
        e[i] = 0;
    };
    if (within(Interval::point(1L, prec))) rec(rec, 0, Interval::point(1L, prec));
    return out;
}

/// A random generator expression in the list grammar, always > 1.
inline std::string random_generator(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::ostringstream s;
    switch (pick(0, 5)) {
    case 0: s << pick(2, 30); break;
    case 1: {
        const int q = pick(2, 7);
        s << q + pick(1, 3 * q) << "/" << q;
        break;
    }
    case 2: {
        const int d = std::vector<int>{2, 3, 5, 6, 7}[pick(0, 4)];
        s << pick(1, 6) << "+" << pick(1, 4) << "*sqrt(" << d << ")";
        break;
    }
    case 3: {
        const int q = pick(2, 5);
        s << "pow(" << pick(2, 12) << "," << pick(1, 3 * q) << "/" << q << ")";
        break;
    }
    case 4: s << "exp(" << pick(1, 9) << "/" << pick(2, 4) << ")"; break;
    default: {
        const char* forms[] = {"exp(pi)", "exp(atan(1/2)+pi)", "exp(1/2*pi)", "exp(1/2*log(7)+1/3)", "pow(3/2,5/2)",
                               "sqrt(7)", "exp(atan(2/3)+1)"};
        s << forms[pick(0, 6)];
    }
    }
    return s.str();
}

} // namespace testing

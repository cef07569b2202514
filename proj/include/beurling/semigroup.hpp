#pragma once

#include "beurling/exactnum.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace beurling::semigroup {

/// Generators sorted ascending, structurally deduplicated, each certified > 1.
struct GeneratorSet {
    std::vector<RealScalar> generators;
    std::string label = "list";

    static GeneratorSet make(std::vector<RealScalar> gens, std::string label,
                             PrecisionPolicy policy = default_precision());
    size_t size() const { return generators.size(); }
    bool empty() const { return generators.empty(); }
};

/// Sparse generator-index -> exponent map, sorted by index, no zero entries.
using ExponentVec = std::vector<std::pair<size_t, unsigned long>>;

/// Lexicographic order on the dense exponent vectors.
bool lex_less(const ExponentVec& a, const ExponentVec& b);
std::string to_string(const ExponentVec& v);

struct Element {
    ExponentVec exponents;
    RealScalar value;
    /// Provably equal in value to the previously emitted element.
    bool collision = false;
};

/// Product of the generators raised to the given exponents.
RealScalar evaluate(const GeneratorSet& g, const ExponentVec& v);

/// An ordering decision that hit the precision cap.
struct UnresolvedPair {
    ExponentVec first;
    ExponentVec second;
    std::string context;
    Precision precision = 0;
};

/// Best-first enumeration of all products <= bound in certified
/// nondecreasing order. Children of a candidate multiply by generators whose
/// index is at least the candidate's largest used index, so each exponent
/// vector is produced exactly once. Single-owner; not thread safe.
class Enumerator {
public:
    Enumerator(const GeneratorSet& g, RealScalar bound, PrecisionPolicy policy = default_precision());

    std::optional<Element> next();

    const std::vector<UnresolvedPair>& unresolved() const { return unresolved_; }
    size_t collisions() const { return collisions_; }

private:
    struct Candidate {
        ExponentVec exponents;
        RealScalar value;
        Interval approx;
        size_t max_index = 0;
    };

    bool heap_after(const Candidate& a, const Candidate& b);
    void expand(const Candidate& c);

    const GeneratorSet& gens_;
    RealScalar bound_;
    Interval bound_approx_;
    std::vector<Interval> gen_approx_;
    PrecisionPolicy policy_;
    std::vector<Candidate> heap_;
    std::optional<Element> last_;
    Interval last_approx_;
    std::vector<UnresolvedPair> unresolved_;
    size_t collisions_ = 0;
};

std::vector<Element> enumerate(const GeneratorSet& g, const RealScalar& bound,
                               PrecisionPolicy policy = default_precision(),
                               std::vector<UnresolvedPair>* unresolved = nullptr);

struct Counts {
    size_t b = 0;
    size_t g = 0;
    size_t unresolved = 0;
};

/// B(x) counts b0 = 1; G(x) counts generators <= x.
Counts counting(const GeneratorSet& g, const RealScalar& x, PrecisionPolicy policy = default_precision());

struct GapPair {
    Element lower;
    Element upper;
    Interval gap;
    bool exact_zero = false;
};

struct GapReport {
    RealScalar limit;
    RealScalar delta;
    size_t count = 0;
    std::optional<GapPair> min_gap;
    /// Enclosure of the minimum over all consecutive gaps.
    std::optional<Interval> min_gap_enclosure;
    /// floor(log2(gap)) -> count; zero gaps are counted separately.
    std::map<long, size_t> histogram;
    size_t zero_gaps = 0;
    std::vector<GapPair> violations;
    std::vector<UnresolvedPair> unresolved;
};

GapReport gap_report(const GeneratorSet& g, const RealScalar& bound, const RealScalar& delta,
                     PrecisionPolicy policy = default_precision());

/// Gap analysis over an already enumerated prefix.
GapReport gap_report(const std::vector<Element>& elements, const RealScalar& bound, const RealScalar& delta,
                     PrecisionPolicy policy = default_precision());

} // namespace beurling::semigroup

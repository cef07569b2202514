#pragma once

#include "beurling/exactnum.hpp"
#include "beurling/primeset.hpp"
#include "beurling/semigroup.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beurling::cli {

/// Syntax error in a generator spec or numeric argument; `position` is a
/// 0-based offset into the input.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, size_t position);
    size_t position() const { return position_; }

private:
    size_t position_;
};

struct GenSpec {
    enum class Kind { Primes, CPow, QuadAlpha, Example1, Example2, List };
    Kind kind = Kind::List;
    std::string source;

    long limit = 0;
    std::optional<primeset::PrimeClassFilter> filter; // primes
    mpq_class c;                                      // cpow
    long a = 0, b = 0, q = 0;                         // quadalpha
    std::vector<RealScalar> values;                   // list

    /// Canonical text; parsing it again yields an equal spec.
    std::string canonical() const;
    /// Builds the generator set (validates every generator > 1).
    semigroup::GeneratorSet generators() const;

    friend bool operator==(const GenSpec& x, const GenSpec& y);
};

GenSpec parse_genspec(const std::string& text);

/// A single value in the list grammar: rationals (also decimals), surds
/// x+y*sqrt(d), pow(b,e), exp(linear form in log, atan, pi), and products.
RealScalar parse_value(const std::string& text);

/// Integer, fraction p/q, or terminating decimal.
mpq_class parse_rational(const std::string& text);

/// Exit codes. Malformed arguments count as precondition errors.
enum ExitCode : int {
    kOk = 0,
    kNotFound = 2,
    kPrecondition = 3,
    kCertification = 4,
    kUnresolved = 5,
};

/// Runs one command line (args excludes the program name) and writes the
/// report to `out`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace beurling::cli

#include "beurling/cli.hpp"

#include "beurling/constructions.hpp"

#include <cctype>

namespace beurling::cli {

ParseError::ParseError(const std::string& what, size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    size_t pos() const { return i_; }

    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool at_end() {
        ws();
        return i_ >= s_.size();
    }

    bool peek(char c) {
        ws();
        return i_ < s_.size() && s_[i_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++i_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool peek_word(const std::string& w) {
        ws();
        if (s_.compare(i_, w.size(), w) != 0) return false;
        const size_t after = i_ + w.size();
        return after >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[after]));
    }

    bool accept_word(const std::string& w) {
        if (!peek_word(w)) return false;
        i_ += w.size();
        return true;
    }

    std::string word() {
        ws();
        const size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (start == i_) fail("expected a name");
        return s_.substr(start, i_ - start);
    }

    bool peek_number() {
        ws();
        if (i_ >= s_.size()) return false;
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) return true;
        return c == '-' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]));
    }

    mpz_class integer() {
        ws();
        const size_t start = i_;
        if (i_ < s_.size() && s_[i_] == '-') ++i_;
        const size_t digits = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (digits == i_) {
            i_ = start;
            fail("expected an integer");
        }
        return mpz_class(s_.substr(start, i_ - start));
    }

    long small_integer() {
        const size_t at = pos();
        const mpz_class z = integer();
        if (!z.fits_slong_p()) throw ParseError("integer out of range", at);
        return z.get_si();
    }

    /// integer, integer/integer, or decimal with an optional fraction part.
    mpq_class rational() {
        ws();
        const size_t start = i_;
        mpz_class whole = integer();
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            const size_t fs = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (fs == i_) fail("expected digits after '.'");
            const std::string frac = s_.substr(fs, i_ - fs);
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            const bool neg = s_[start] == '-';
            mpq_class q(whole * scale + (neg ? -1 : 1) * mpz_class(frac), scale);
            q.canonicalize();
            return q;
        }
        if (i_ < s_.size() && s_[i_] == '/') {
            ++i_;
            const size_t at = i_;
            const mpz_class den = integer();
            if (den <= 0) throw ParseError("denominator must be positive", at);
            mpq_class q(whole, den);
            q.canonicalize();
            return q;
        }
        return mpq_class(whole);
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, i_); }

private:
    const std::string& s_;
    size_t i_ = 0;
};

RealScalar positive_surd(const mpq_class& x, const mpq_class& y, long d, size_t at) {
    if (d < 2) throw ParseError("sqrt argument must be at least 2", at);
    if (field_sign(FieldElement{d, x, y}) <= 0) throw ParseError("value must be positive", at);
    return RealScalar::surd(x, y, d);
}

RealScalar parse_product(Parser& p);

/// Linear form: offset + sum of coefficient * {log(n), atan(q), pi}.
RealScalar parse_exponent(Parser& p) {
    mpq_class offset = 0;
    std::map<Constant, mpq_class> coeffs;
    bool first = true;
    for (;;) {
        int sign = 1;
        if (!first) {
            if (p.accept('+'))
                sign = 1;
            else if (p.accept('-'))
                sign = -1;
            else
                break;
        } else if (p.peek('-') && !p.peek_number()) {
            p.accept('-');
            sign = -1;
        }
        first = false;

        mpq_class k = 1;
        bool have_number = false;
        if (p.peek_number()) {
            k = p.rational();
            have_number = true;
            if (!p.accept('*')) {
                offset += sign * k;
                continue;
            }
        }
        const size_t at = p.pos();
        std::optional<Constant> c;
        if (p.accept_word("pi")) {
            c = Constant::pi();
        } else if (p.accept_word("log")) {
            p.expect('(');
            const size_t arg_at = p.pos();
            const mpz_class n = p.integer();
            if (n < 2) throw ParseError("log argument must be an integer >= 2", arg_at);
            p.expect(')');
            c = Constant::log(n);
        } else if (p.accept_word("atan")) {
            p.expect('(');
            const mpq_class r = p.rational();
            p.expect(')');
            c = Constant::atan(r.get_num(), r.get_den());
        } else {
            (void)have_number;
            throw ParseError("expected pi, log(n) or atan(q)", at);
        }
        coeffs[*c] += sign * k;
    }
    return RealScalar::expform(offset, coeffs);
}

RealScalar parse_factor(Parser& p) {
    const size_t at = p.pos();
    if (p.accept('(')) {
        RealScalar v = parse_product(p);
        p.expect(')');
        return v;
    }
    if (p.accept_word("pow")) {
        p.expect('(');
        const size_t base_at = p.pos();
        const mpq_class b = p.rational();
        if (b <= 0) throw ParseError("pow base must be positive", base_at);
        p.expect(',');
        const mpq_class e = p.rational();
        p.expect(')');
        return RealScalar::ratpow(b, e);
    }
    if (p.accept_word("exp")) {
        p.expect('(');
        RealScalar v = parse_exponent(p);
        p.expect(')');
        return v;
    }
    if (p.accept_word("sqrt")) {
        p.expect('(');
        const long d = p.small_integer();
        p.expect(')');
        return positive_surd(0, 1, d, at);
    }
    if (!p.peek_number()) p.fail("expected a value");
    const mpq_class x = p.rational();
    // Optional surd tail: x (+|-) [y*] sqrt(d)
    if (p.peek('+') || p.peek('-')) {
        const int sign = p.accept('+') ? 1 : (p.accept('-'), -1);
        mpq_class y = 1;
        if (p.peek_number()) {
            y = p.rational();
            p.expect('*');
        }
        if (!p.accept_word("sqrt")) p.fail("expected sqrt(d)");
        p.expect('(');
        const long d = p.small_integer();
        p.expect(')');
        return positive_surd(x, sign * y, d, at);
    }
    if (x <= 0) throw ParseError("value must be positive", at);
    return RealScalar::rational(x);
}

RealScalar parse_product(Parser& p) {
    RealScalar v = parse_factor(p);
    while (p.accept('*')) v *= parse_factor(p);
    return v;
}

std::string filter_text(const primeset::PrimeClassFilter& f) {
    std::string s = ", mod=" + std::to_string(f.modulus) + ", res=";
    bool first = true;
    for (long r : f.residues) {
        if (!first) s += "|";
        s += std::to_string(r);
        first = false;
    }
    return s;
}

} // namespace

mpq_class parse_rational(const std::string& text) {
    Parser p(text);
    const mpq_class q = p.rational();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return q;
}

RealScalar parse_value(const std::string& text) {
    Parser p(text);
    RealScalar v = parse_product(p);
    if (!p.at_end()) p.fail("unexpected trailing input");
    return v;
}

GenSpec parse_genspec(const std::string& text) {
    Parser p(text);
    GenSpec g;
    g.source = text;
    const size_t at = p.pos();
    const std::string head = p.word();
    if (head == "list") {
        g.kind = GenSpec::Kind::List;
        p.expect(':');
        p.expect('[');
        if (!p.accept(']')) {
            do g.values.push_back(parse_product(p));
            while (p.accept(','));
            p.expect(']');
        }
        // Every listed value must exceed 1.
        for (const auto& v : g.values)
            if (!compare(v, RealScalar::one()).greater())
                throw DomainError("generator must exceed 1: " + v.to_string());
    } else if (head == "primes") {
        g.kind = GenSpec::Kind::Primes;
        p.expect('(');
        g.limit = p.small_integer();
        if (p.accept(',')) {
            long modulus = 0;
            std::set<long> residues;
            for (int field = 0; field < 2; ++field) {
                const size_t key_at = p.pos();
                const std::string key = p.word();
                p.expect('=');
                if (key == "mod") {
                    const size_t mod_at = p.pos();
                    modulus = p.small_integer();
                    if (modulus < 1) throw ParseError("mod must be positive", mod_at);
                } else if (key == "res") {
                    do residues.insert(p.small_integer());
                    while (p.accept('|'));
                } else {
                    throw ParseError("unknown key '" + key + "'", key_at);
                }
                if (field == 0) p.expect(',');
            }
            if (modulus == 0 || residues.empty()) p.fail("primes filter needs both mod= and res=");
            std::set<long> reduced;
            for (long r : residues) reduced.insert(((r % modulus) + modulus) % modulus);
            g.filter = primeset::PrimeClassFilter(modulus, reduced);
        }
        p.expect(')');
    } else if (head == "cpow") {
        g.kind = GenSpec::Kind::CPow;
        p.expect('(');
        const size_t c_at = p.pos();
        g.c = p.rational();
        if (!(g.c > 1 && g.c < 2)) throw ParseError("cpow exponent must lie strictly between 1 and 2", c_at);
        p.expect(',');
        g.limit = p.small_integer();
        p.expect(')');
    } else if (head == "quadalpha") {
        g.kind = GenSpec::Kind::QuadAlpha;
        p.expect('(');
        const size_t a_at = p.pos();
        g.a = p.small_integer();
        p.expect(',');
        g.b = p.small_integer();
        p.expect(',');
        const size_t q_at = p.pos();
        g.q = p.small_integer();
        p.expect(',');
        g.limit = p.small_integer();
        p.expect(')');
        if (g.a < 1 || g.b < 1) throw ParseError("quadalpha needs a, b >= 1", a_at);
        if (g.q < 2 || !is_squarefree(g.q)) throw ParseError("q must be squarefree and at least 2", q_at);
    } else if (head == "example1" || head == "example2") {
        g.kind = head == "example1" ? GenSpec::Kind::Example1 : GenSpec::Kind::Example2;
        p.expect('(');
        g.limit = p.small_integer();
        p.expect(')');
    } else {
        throw ParseError("unknown generator family '" + head + "'", at);
    }
    if (!p.at_end()) p.fail("unexpected trailing input");
    return g;
}

std::string GenSpec::canonical() const {
    switch (kind) {
    case Kind::Primes:
        return "primes(" + std::to_string(limit) + (filter ? filter_text(*filter) : std::string()) + ")";
    case Kind::CPow: return "cpow(" + c.get_str() + ", " + std::to_string(limit) + ")";
    case Kind::QuadAlpha:
        return "quadalpha(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(q) + ", " +
               std::to_string(limit) + ")";
    case Kind::Example1: return "example1(" + std::to_string(limit) + ")";
    case Kind::Example2: return "example2(" + std::to_string(limit) + ")";
    case Kind::List: {
        std::string s = "list:[";
        for (size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].to_string();
        return s + "]";
    }
    }
    return {};
}

semigroup::GeneratorSet GenSpec::generators() const {
    switch (kind) {
    case Kind::Primes: {
        std::vector<RealScalar> gens;
        for (long p : primeset::sieve(limit, filter)) gens.push_back(RealScalar::integer(p));
        return semigroup::GeneratorSet::make(gens, canonical());
    }
    case Kind::CPow: {
        auto g = constructions::cpow_generators(c, limit);
        g.label = canonical();
        return g;
    }
    case Kind::QuadAlpha: {
        auto g = constructions::quad_alpha(a, b, q, limit).generators;
        g.label = canonical();
        return g;
    }
    case Kind::Example1: {
        auto g = constructions::example1_generators(limit).generators;
        g.label = canonical();
        return g;
    }
    case Kind::Example2: {
        auto g = constructions::example2_generators(limit).generators;
        g.label = canonical();
        return g;
    }
    case Kind::List: return semigroup::GeneratorSet::make(values, canonical());
    }
    return {};
}

bool operator==(const GenSpec& x, const GenSpec& y) {
    if (x.kind != y.kind || x.limit != y.limit || x.c != y.c || x.a != y.a || x.b != y.b || x.q != y.q) return false;
    if (x.filter.has_value() != y.filter.has_value()) return false;
    if (x.filter && (x.filter->modulus != y.filter->modulus || x.filter->residues != y.filter->residues)) return false;
    return x.values == y.values;
}

} // namespace beurling::cli

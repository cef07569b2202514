#include "beurling/cli.hpp"

#include "beurling/attacks.hpp"
#include "beurling/cfrac.hpp"
#include "beurling/constructions.hpp"
#include "beurling/metricfind.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace beurling::cli {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Serialization helpers

std::string rounded(const BigFloat& f, int digits, bool up) {
    const std::string fmt = "%." + std::to_string(digits) + (up ? "RUg" : "RDg");
    char* buf = nullptr;
    mpfr_asprintf(&buf, fmt.c_str(), f.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

json interval_json(const Interval& iv, int digits) {
    return json::array({rounded(iv.lo(), digits, false), rounded(iv.hi(), digits, true)});
}

json decimal_json(const Decimal& d) { return {{"decimal", d.text}, {"error", d.error_bound}}; }
json decimal_json(const RealScalar& v, int digits) { return decimal_json(to_decimal(v, digits)); }
json decimal_json(const Interval& iv, int digits) { return decimal_json(to_decimal(iv, digits)); }

json exponents_json(const semigroup::ExponentVec& v) {
    json a = json::array();
    for (const auto& [i, e] : v) a.push_back(json::array({i, e}));
    return a;
}

json generators_json(const semigroup::GeneratorSet& g, int digits) {
    json a = json::array();
    for (size_t i = 0; i < g.size(); ++i) {
        json e = {{"index", i},
                  {"value", g.generators[i].to_string()},
                  {"kind", RealScalar::kind_name(g.generators[i].kind())}};
        e.update(decimal_json(g.generators[i], digits));
        a.push_back(e);
    }
    return a;
}

json certificate_json(const constructions::GapCertificate& c, int digits) {
    json exact = json::object();
    for (const auto& [k, v] : c.exact) exact[k] = v;
    json encl = json::object();
    for (const auto& [k, v] : c.enclosures) encl[k] = interval_json(v, digits);
    return {{"kind", constructions::GapCertificate::kind_name(c.kind)},
            {"exact", exact},
            {"enclosures", encl},
            {"bound", interval_json(c.bound, digits)},
            {"direct_gap", interval_json(c.direct_gap, digits)},
            {"passed", c.passed}};
}

json unresolved_json(const std::vector<semigroup::UnresolvedPair>& u, size_t max_list) {
    json a = json::array();
    for (size_t i = 0; i < u.size() && i < max_list; ++i)
        a.push_back({{"first", exponents_json(u[i].first)},
                     {"second", exponents_json(u[i].second)},
                     {"context", u[i].context},
                     {"precision", u[i].precision}});
    return a;
}

json gap_pair_json(const semigroup::GapPair& p, int digits) {
    json j = {{"lower", p.lower.value.to_string()},
              {"upper", p.upper.value.to_string()},
              {"lower_exponents", exponents_json(p.lower.exponents)},
              {"upper_exponents", exponents_json(p.upper.exponents)},
              {"gap", interval_json(p.gap, digits)},
              {"exact_zero", p.exact_zero}};
    j.update(decimal_json(p.gap, digits));
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string exponents_text(const semigroup::ExponentVec& v) { return semigroup::to_string(v); }

// ---------------------------------------------------------------------------

struct Outcome {
    int code = kOk;
    json result;
    size_t unresolved = 0;
    std::optional<std::string> csv;
};

struct CommonOptions {
    std::string format = "json";
    int digits = 12;
    size_t max_list = 50;
};

long resolve_cap(long flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("BEURLING_MAX_PRECISION_BITS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("BEURLING_MAX_PRECISION_BITS is not a positive integer: ") + env);
    }
    return 4096;
}

class PrecisionGuard {
public:
    explicit PrecisionGuard(PrecisionPolicy p) : saved_(default_precision()) { set_default_precision(p); }
    ~PrecisionGuard() { set_default_precision(saved_); }

private:
    PrecisionPolicy saved_;
};

void require_json(const CommonOptions& o) {
    if (o.format != "json") throw DomainError("csv output is only available for enumerate and gaps");
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_enumerate(const std::string& gen, const std::string& limit, const CommonOptions& o) {
    const GenSpec spec = parse_genspec(gen);
    const semigroup::GeneratorSet g = spec.generators();
    const RealScalar bound = parse_value(limit);
    semigroup::Enumerator it(g, bound);
    std::vector<semigroup::Element> el;
    while (auto e = it.next()) el.push_back(std::move(*e));

    Outcome out;
    out.unresolved = it.unresolved().size();
    if (o.format == "csv") {
        std::string csv = "index,exponents,value,decimal,error,collision\n";
        for (size_t i = 0; i < el.size(); ++i) {
            const Decimal d = to_decimal(el[i].value, o.digits);
            csv += std::to_string(i) + "," + csv_escape(exponents_text(el[i].exponents)) + "," +
                   csv_escape(el[i].value.to_string()) + "," + d.text + "," + d.error_bound + "," +
                   (el[i].collision ? "true" : "false") + "\n";
        }
        out.csv = csv;
    }
    json elems = json::array();
    for (const auto& e : el) {
        json j = {{"exponents", exponents_json(e.exponents)}, {"value", e.value.to_string()}};
        j.update(decimal_json(e.value, o.digits));
        j["collision"] = e.collision;
        elems.push_back(j);
    }
    out.result = {{"generators", generators_json(g, o.digits)},
                  {"count", el.size()},
                  {"collisions", it.collisions()},
                  {"elements", elems},
                  {"unresolved_pairs", unresolved_json(it.unresolved(), o.max_list)}};
    return out;
}

Outcome cmd_gaps(const std::string& gen, const std::string& limit, const std::string& delta, const CommonOptions& o) {
    const GenSpec spec = parse_genspec(gen);
    const semigroup::GeneratorSet g = spec.generators();
    const RealScalar bound = parse_value(limit);
    const RealScalar d = parse_value(delta);
    std::vector<semigroup::UnresolvedPair> unresolved;
    const std::vector<semigroup::Element> el = semigroup::enumerate(g, bound, default_precision(), &unresolved);
    semigroup::GapReport r = semigroup::gap_report(el, bound, d);
    r.unresolved.insert(r.unresolved.begin(), unresolved.begin(), unresolved.end());

    Outcome out;
    out.unresolved = r.unresolved.size();
    if (o.format == "csv") {
        std::string csv = "index,lower,upper,gap_lo,gap_hi,decimal,error,below_delta\n";
        std::set<std::pair<std::string, std::string>> bad;
        for (const auto& v : r.violations) bad.emplace(v.lower.value.to_string(), v.upper.value.to_string());
        for (size_t i = 0; i + 1 < el.size(); ++i) {
            const Interval gap = el[i + 1].collision ? Interval::point(0L, 64)
                                                     : refine_difference(el[i + 1].value, el[i].value, 72);
            const Decimal dd = to_decimal(gap, o.digits);
            const auto key = std::make_pair(el[i].value.to_string(), el[i + 1].value.to_string());
            csv += std::to_string(i) + "," + csv_escape(key.first) + "," + csv_escape(key.second) + "," +
                   rounded(gap.lo(), o.digits, false) + "," + rounded(gap.hi(), o.digits, true) + "," + dd.text + "," +
                   dd.error_bound + "," + (bad.count(key) ? "true" : "false") + "\n";
        }
        out.csv = csv;
    }

    json hist = json::array();
    for (const auto& [k, c] : r.histogram) hist.push_back({{"log2_floor", k}, {"count", c}});
    json viol = json::array();
    for (size_t i = 0; i < r.violations.size() && i < o.max_list; ++i) viol.push_back(gap_pair_json(r.violations[i], o.digits));
    out.result = {{"generators", g.size()},
                  {"count", r.count},
                  {"min_gap", r.min_gap ? gap_pair_json(*r.min_gap, o.digits) : json(nullptr)},
                  {"min_gap_enclosure", r.min_gap_enclosure ? interval_json(*r.min_gap_enclosure, o.digits) : json(nullptr)},
                  {"histogram", hist},
                  {"zero_gaps", r.zero_gaps},
                  {"violation_count", r.violations.size()},
                  {"violations", viol},
                  {"unresolved_pairs", unresolved_json(r.unresolved, o.max_list)}};
    return out;
}

/// Certificates for the first `k` consecutive pairs of B up to `values`.
template <class Certify>
json certify_consecutive(const semigroup::GeneratorSet& g, const RealScalar& values, size_t k, int digits,
                         Certify certify, bool& all_passed) {
    json certs = json::array();
    if (k == 0) return certs;
    semigroup::Enumerator it(g, values);
    std::optional<semigroup::Element> prev;
    while (certs.size() < k) {
        auto e = it.next();
        if (!e) break;
        if (prev) {
            const constructions::GapCertificate c = certify(*prev, *e);
            all_passed = all_passed && c.passed;
            certs.push_back(certificate_json(c, digits));
        }
        prev = std::move(e);
    }
    return certs;
}

Outcome cmd_construct(const std::string& which, const std::map<std::string, std::string>& opt, size_t pairs,
                      const CommonOptions& o) {
    require_json(o);
    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = opt.find(key);
        return it == opt.end() || it->second.empty() ? fallback : it->second;
    };
    auto get_long = [&](const std::string& key, const std::string& fallback) {
        const mpq_class q = parse_rational(get(key, fallback));
        if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw DomainError("--" + key + " must be an integer");
        return q.get_num().get_si();
    };
    Outcome out;
    bool passed = true;
    const long limit = get_long("limit", "100");

    if (which == "quadalpha") {
        const auto sys = constructions::quad_alpha(get_long("a", "1"), get_long("b", "1"), get_long("q", "2"), limit);
        const RealScalar values = parse_value(get("values", "10000"));
        json certs = certify_consecutive(sys.generators, values, pairs, o.digits,
                                         [&](const auto& x, const auto& y) {
                                             return constructions::certify_quad_elements(sys, x, y);
                                         },
                                         passed);
        json alpha = {{"value", sys.alpha.to_string()}};
        alpha.update(decimal_json(sys.alpha, o.digits));
        out.result = {{"system", {{"family", "quadalpha"},
                                  {"a", sys.a},
                                  {"b", sys.b},
                                  {"q", sys.q},
                                  {"limit", sys.limit},
                                  {"alpha", alpha},
                                  {"generators", generators_json(sys.generators, o.digits)}}},
                      {"certificates", certs}};
    } else if (which == "example1") {
        const auto sys = constructions::example1_generators(limit);
        const RealScalar values = parse_value(get("values", "10000"));
        json certs = certify_consecutive(sys.generators, values, pairs, o.digits,
                                         [&](const auto& x, const auto& y) {
                                             return constructions::certify_example1_pair(
                                                 sys, constructions::example1_index(sys, x),
                                                 constructions::example1_index(sys, y));
                                         },
                                         passed);
        json recs = json::array();
        for (const auto& r : sys.records) recs.push_back({{"p", r.p}, {"f", to_string(r.f)}, {"g", to_string(r.g)}});
        json sysj = {{"family", "example1"}, {"limit", sys.limit}, {"records", recs}};
        if (sys.max_ratio) {
            sysj["max_f_over_sqrt_p"] = interval_json(*sys.max_ratio, o.digits);
            sysj["max_f_over_sqrt_p_at"] = sys.max_ratio_prime;
        }
        sysj["generators"] = generators_json(sys.generators, o.digits);
        out.result = {{"system", sysj}, {"certificates", certs}};
    } else if (which == "example2") {
        const auto sys = constructions::example2_generators(limit);
        const RealScalar values = parse_value(get("values", "1000000"));
        json certs = certify_consecutive(sys.generators, values, pairs, o.digits,
                                         [&](const auto& x, const auto& y) {
                                             return constructions::certify_example2_pair(
                                                 sys, constructions::example2_index(sys, x),
                                                 constructions::example2_index(sys, y));
                                         },
                                         passed);
        json recs = json::array();
        for (const auto& r : sys.records) {
            json g = {{"value", r.g.to_string()}};
            g.update(decimal_json(r.g, o.digits));
            recs.push_back({{"p", r.p},
                            {"a", r.a},
                            {"b", r.b},
                            {"rho", r.rho.re.get_str() + "+" + r.rho.im.get_str() + "i"},
                            {"angle", r.angle.to_string()},
                            {"winding", r.winding},
                            {"f", interval_json(r.f, o.digits)},
                            {"g", g}});
        }
        out.result = {{"system", {{"family", "example2"},
                                  {"limit", sys.limit},
                                  {"records", recs},
                                  {"generators", generators_json(sys.generators, o.digits)}}},
                      {"certificates", certs}};
    } else if (which == "cpow") {
        const mpq_class c = parse_rational(get("c", "3/2"));
        const auto g = constructions::cpow_generators(c, limit);
        json sysj = {{"family", "cpow"}, {"c", c.get_str()}, {"limit", limit}, {"generators", generators_json(g, o.digits)}};
        if (opt.count("values") && !g.empty()) {
            const RealScalar values = parse_value(get("values", "1000"));
            const auto r = semigroup::gap_report(g, values, RealScalar::one());
            out.unresolved = r.unresolved.size();
            sysj["min_gap"] = r.min_gap ? gap_pair_json(*r.min_gap, o.digits) : json(nullptr);
            const Interval expected = RealScalar::ratpow(2, c).enclose(128) - Interval::point(1L, 128);
            sysj["expected_min_gap"] = interval_json(expected, o.digits);
        }
        out.result = {{"system", sysj}, {"certificates", json::array()}};
    } else {
        throw DomainError("unknown construction '" + which + "'");
    }
    out.result["all_passed"] = passed;
    if (!passed) out.code = kCertification;
    return out;
}

json witness_json(const attacks::Witness& w, int digits) {
    json j = {{"case", w.kind == attacks::Witness::Case::Rational ? "rational" : "irrational"},
              {"alpha", w.alpha.to_string()},
              {"delta", w.delta.get_str()},
              {"n_prime", w.n_prime.get_str()},
              {"m_prime", w.m_prime.get_str()},
              {"gap", interval_json(w.gap, digits)}};
    if (w.exact_gap) j["exact_gap"] = w.exact_gap->get_str();
    if (w.rational) {
        const auto& p = *w.rational;
        j["x"] = w.n_prime.get_str();
        j["y"] = w.m_prime.get_str();
        j["provenance"] = {{"m", p.m}, {"u", p.u.get_str()}, {"v", p.v.get_str()}, {"d", p.d}, {"z", p.z.get_str()}};
    }
    if (w.irrational) {
        const auto& p = *w.irrational;
        j["provenance"] = {{"k", p.k},
                           {"lower", {p.lower.a.get_str(), p.lower.r.get_str()}},
                           {"upper", {p.upper.a.get_str(), p.upper.r.get_str()}},
                           {"x", p.x.get_str()},
                           {"y", p.y.get_str()},
                           {"parity_rule", p.parity_rule},
                           {"within_bounds", p.within_bounds}};
    }
    return j;
}

Outcome cmd_attack_rational(const std::string& alpha, const std::vector<long>& exclude, const std::string& delta,
                            const std::string& bound, long T, const CommonOptions& o) {
    require_json(o);
    const mpq_class a = parse_rational(alpha);
    const attacks::ExcludedSet E(exclude);
    attacks::SieveConfig cfg;
    cfg.T = T;
    cfg.bound = mpz_class(bound);
    const attacks::Witness w = attacks::attack_rational(E, a.get_num(), a.get_den(), parse_rational(delta), cfg);
    Outcome out;
    out.result = {{"witness", witness_json(w, o.digits)}, {"revalidated", attacks::revalidate(w, E)}};
    const auto dd = attacks::density_diag(E);
    out.result["density"] = {{"eta", dd.eta.get_str()}, {"eta_prime", dd.eta_prime.get_str()}, {"case1_eta", dd.case1_eta.get_str()}};
    return out;
}

Outcome cmd_attack_irrational(const std::string& alpha, const std::vector<long>& exclude, const std::string& delta,
                              const std::string& bound, bool always_odd, const CommonOptions& o) {
    require_json(o);
    const attacks::ExcludedSet E(exclude);
    attacks::SieveConfig cfg;
    cfg.bound = mpz_class(bound);
    cfg.always_odd = always_odd;
    const attacks::Witness w = attacks::attack_irrational(E, parse_value(alpha), parse_rational(delta), cfg);
    Outcome out;
    out.result = {{"witness", witness_json(w, o.digits)}, {"revalidated", attacks::revalidate(w, E)}};
    const auto dd = attacks::density_diag(E);
    out.result["density"] = {{"eta", dd.eta.get_str()}, {"eta_prime", dd.eta_prime.get_str()}, {"case1_eta", dd.case1_eta.get_str()}};
    return out;
}

Outcome cmd_attack_cpow(const std::string& alpha, const std::string& c, const std::string& eps, const std::string& bmax,
                        bool exhaustive, const CommonOptions& o) {
    require_json(o);
    cfrac::PowerAttackOptions po;
    po.exhaustive = exhaustive;
    const cfrac::PowerAttackResult r =
        cfrac::power_attack(parse_value(alpha), parse_rational(c), parse_rational(eps), mpz_class(bmax), po);
    json trail = json::array();
    for (const auto& [a, b, res] : r.trail) {
        const Interval scaled = res * sqrt(Interval::point(b, res.precision()));
        trail.push_back({{"a", a.get_str()},
                         {"b", b.get_str()},
                         {"residual", interval_json(res, o.digits)},
                         {"residual_times_sqrt_b", interval_json(scaled, o.digits)}});
    }
    Outcome out;
    out.result = {{"found", r.found},
                  {"a", r.a.get_str()},
                  {"b", r.b.get_str()},
                  {"residual", interval_json(r.residual, o.digits)},
                  {"residual_decimal", decimal_json(r.residual, o.digits)},
                  {"residual_exact_zero", r.residual_exact_zero},
                  {"trail", trail}};
    if (!r.found) out.code = kNotFound;
    return out;
}

Outcome cmd_find_alpha(const std::string& gen, const std::string& delta, const std::string& verify,
                       const std::string& cutoff, const std::string& margin, const CommonOptions& o) {
    require_json(o);
    const GenSpec spec = parse_genspec(gen);
    metricfind::FindOptions fo;
    fo.cutoff = mpz_class(cutoff);
    fo.margin = parse_rational(margin);
    const auto cert = metricfind::find_alpha(spec.generators(), parse_rational(delta), parse_value(verify), fo);

    json survivors = json::array();
    for (size_t i = 0; i < cert.bad.survivors.size() && i < o.max_list; ++i)
        survivors.push_back({cert.bad.survivors[i].first.get_str(), cert.bad.survivors[i].second.get_str()});
    const Interval listed = Interval::point(cert.bad.listed_measure, 128);
    json alpha = {{"value", cert.alpha.to_string()}, {"enclosure", interval_json(cert.alpha_enclosure, o.digits)}};
    alpha.update(decimal_json(cert.alpha_enclosure, 4));

    Outcome out;
    out.unresolved = cert.check.unresolved.size();
    out.result = {
        {"t", cert.t.get_str()},
        {"beta", cert.beta.get_str()},
        {"alpha", alpha},
        {"surviving_interval",
         {{"exact", {cert.surviving.first.get_str(), cert.surviving.second.get_str()}},
          {"enclosure", interval_json(Interval::from_bounds(Interval::point(cert.surviving.first, 128).lo(),
                                                            Interval::point(cert.surviving.second, 128).hi()),
                                      o.digits)}}},
        {"sqrt_sum",
         {{"lower", rounded(cert.bad.sqrt_sum.lower, o.digits, false)},
          {"upper", rounded(cert.bad.sqrt_sum.upper, o.digits, true)},
          {"cutoff", cert.bad.sqrt_sum.cutoff.get_str()},
          {"terms", cert.bad.sqrt_sum.terms},
          {"method", cert.bad.sqrt_sum.method}}},
        {"measure_bound", interval_json(cert.bad.total_bound, o.digits)},
        {"listed_bad_measure", interval_json(listed, o.digits)},
        {"residual", interval_json(cert.bad.residual, o.digits)},
        {"listed_plus_residual", interval_json(listed + cert.bad.residual, o.digits)},
        {"bad_interval_count", cert.bad.intervals.size()},
        {"pairs_considered", cert.bad.pairs_considered},
        {"survivor_count", cert.bad.survivors.size()},
        {"survivors", survivors},
        {"check",
         {{"limit", cert.verify_limit.to_string()},
          {"count", cert.check.count},
          {"violation_count", cert.check.violations.size()},
          {"min_gap", cert.check.min_gap ? gap_pair_json(*cert.check.min_gap, o.digits) : json(nullptr)},
          {"unresolved_pairs", unresolved_json(cert.check.unresolved, o.max_list)}}}};
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Beurling generalized integer toolkit", "beurling"};
    app.require_subcommand(1);
    app.fallthrough();

    long max_bits = 0;
    bool timing = false;
    CommonOptions common;
    app.add_option("--max-precision-bits", max_bits, "Precision cap for certified comparisons");
    app.add_flag("--timing", timing, "Include wall-clock timing in the report");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--digits", common.digits, "Decimal digits in output")->check(CLI::Range(1, 1000));
    app.add_option("--max-list", common.max_list, "Longest list echoed in reports");

    std::string gen, limit, delta = "1", verify, alpha, c, eps, bmax, bound = "10000000", cutoff = "1000000",
                                 margin = "4";
    std::vector<long> exclude;
    long T = 1000;
    size_t pairs = 0;
    bool exhaustive = false, always_odd = false;
    std::map<std::string, std::string> cons;

    auto* en = app.add_subcommand("enumerate", "List B up to a bound in increasing order");
    en->add_option("--gen", gen, "Generator spec")->required();
    en->add_option("--limit", limit, "Upper bound")->required();

    auto* gp = app.add_subcommand("gaps", "Consecutive-gap analysis");
    gp->add_option("--gen", gen, "Generator spec")->required();
    gp->add_option("--limit", limit, "Upper bound")->required();
    gp->add_option("--delta", delta, "Gap threshold");

    auto* co = app.add_subcommand("construct", "Build a lacunary system and certify gaps");
    co->require_subcommand(1);
    for (const char* fam : {"quadalpha", "example1", "example2", "cpow"}) {
        auto* s = co->add_subcommand(fam, std::string("Build the ") + fam + " system");
        for (const char* key : {"a", "b", "q", "c", "limit", "values"})
            s->add_option(std::string("--") + key, cons[key]);
        s->add_option("--certify-pairs", pairs, "Certify this many consecutive pairs");
    }

    auto* at = app.add_subcommand("attack", "Search for gap-collapsing witnesses");
    at->require_subcommand(1);
    auto* ar = at->add_subcommand("rational", "Rational alpha");
    ar->add_option("--alpha", alpha)->required();
    ar->add_option("--exclude", exclude)->delimiter(',');
    ar->add_option("--delta", delta)->required();
    ar->add_option("--bound", bound, "Largest z tried");
    ar->add_option("--small-prime-threshold", T);
    auto* ai = at->add_subcommand("irrational", "Irrational alpha");
    ai->add_option("--alpha", alpha)->required();
    ai->add_option("--exclude", exclude)->delimiter(',');
    ai->add_option("--delta", delta)->required();
    ai->add_option("--bound", bound, "Largest nPrime tried");
    ai->add_flag("--always-odd", always_odd);
    auto* ac = at->add_subcommand("cpow", "Power attack on {p^c} plus alpha");
    ac->add_option("--alpha", alpha)->required();
    ac->add_option("--c", c)->required();
    ac->add_option("--eps", eps)->required();
    ac->add_option("--bmax", bmax)->required();
    ac->add_flag("--exhaustive", exhaustive);

    auto* me = app.add_subcommand("metric", "Measure-theoretic alpha finder");
    me->require_subcommand(1);
    auto* fa = me->add_subcommand("find-alpha", "Find a gap-preserving alpha");
    fa->add_option("--gen", gen)->required();
    fa->add_option("--delta", delta)->required();
    fa->add_option("--verify", verify)->required();
    fa->add_option("--cutoff", cutoff);
    fa->add_option("--margin", margin);

    json report;
    report["schema"] = 1;
    report["command"] = nullptr;
    report["argv"] = args;

    auto finish = [&](int code, const std::string& status) {
        report["status"] = status;
        out << report.dump(2) << "\n";
        return code;
    };
    auto fail = [&](int code, const std::string& status, const std::string& kind, const std::string& message) {
        report["result"] = nullptr;
        report["error"] = {{"kind", kind}, {"message", message}};
        err << message << "\n";
        return finish(code, status);
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return fail(kPrecondition, "precondition", "usage", e.what());
    }

    std::string command;
    for (const CLI::App* s = &app; !s->get_subcommands().empty();) {
        s = s->get_subcommands().front();
        command += (command.empty() ? "" : " ") + s->get_name();
    }
    report["command"] = command;

    const auto start = std::chrono::steady_clock::now();
    try {
        const long cap = resolve_cap(max_bits);
        if (cap < 64) throw DomainError("precision cap must be at least 64 bits");
        PrecisionGuard guard(PrecisionPolicy{64, static_cast<Precision>(cap)});
        report["config"] = {{"max_precision_bits", cap}, {"digits", common.digits}, {"format", common.format}};

        Outcome o;
        if (command == "enumerate") {
            report["config"]["generators"] = parse_genspec(gen).canonical();
            report["config"]["limit"] = limit;
            o = cmd_enumerate(gen, limit, common);
        } else if (command == "gaps") {
            report["config"]["generators"] = parse_genspec(gen).canonical();
            report["config"]["limit"] = limit;
            report["config"]["delta"] = delta;
            o = cmd_gaps(gen, limit, delta, common);
        } else if (command.rfind("construct ", 0) == 0) {
            std::map<std::string, std::string> given;
            for (const auto& [k, v] : cons)
                if (!v.empty()) given[k] = v;
            report["config"]["options"] = given;
            report["config"]["certify_pairs"] = pairs;
            o = cmd_construct(command.substr(10), given, pairs, common);
        } else if (command == "attack rational") {
            report["config"]["exclude"] = exclude;
            report["config"]["bound"] = bound;
            o = cmd_attack_rational(alpha, exclude, delta, bound, T, common);
        } else if (command == "attack irrational") {
            report["config"]["exclude"] = exclude;
            report["config"]["bound"] = bound;
            o = cmd_attack_irrational(alpha, exclude, delta, bound, always_odd, common);
        } else if (command == "attack cpow") {
            report["config"]["exhaustive"] = exhaustive;
            o = cmd_attack_cpow(alpha, c, eps, bmax, exhaustive, common);
        } else if (command == "metric find-alpha") {
            report["config"]["generators"] = parse_genspec(gen).canonical();
            report["config"]["cutoff"] = cutoff;
            report["config"]["margin"] = margin;
            o = cmd_find_alpha(gen, delta, verify, cutoff, margin, common);
        } else {
            return fail(kPrecondition, "precondition", "usage", "incomplete command: " + command);
        }

        if (o.csv) {
            out << *o.csv;
            return o.unresolved ? kUnresolved : o.code;
        }
        report["result"] = o.result;
        report["unresolved"] = o.unresolved;
        if (timing)
            report["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        int code = o.code;
        if (code == kOk && o.unresolved) code = kUnresolved;
        static const std::map<int, std::string> names = {{kOk, "ok"},
                                                         {kNotFound, "not_found"},
                                                         {kCertification, "certification"},
                                                         {kUnresolved, "unresolved"}};
        return finish(code, names.at(code));
    } catch (const ParseError& e) {
        return fail(kPrecondition, "precondition", "parse", e.what());
    } catch (const DomainError& e) {
        return fail(kPrecondition, "precondition", "domain", e.what());
    } catch (const NotFound& e) {
        return fail(kNotFound, "not_found", "not_found", e.what());
    } catch (const CertificationError& e) {
        return fail(kCertification, "certification", "certification", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kPrecondition, "precondition", "argument", e.what());
    }
}

} // namespace beurling::cli

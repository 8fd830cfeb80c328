#pragma once
// commands.hpp - rendering and dispatch behind the opvolterra command line.
// Each command returns its output text and the process exit code so it can
// be exercised without spawning a process.

#include "apply.hpp"
#include "bfile.hpp"
#include "exactnum.hpp"
#include "numquad.hpp"
#include "opalgebra.hpp"
#include "serialize.hpp"
#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

namespace opvolterra::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Invalid user input; mapped to kUsage by the front end.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandOutput {
    std::string text;
    int exit_code = kOk;
};

enum class Format { text, csv, json };

inline Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw UsageError("unknown format '" + s + "' (expected text, csv or json)");
}

/// --format if given, else OPVOLTERRA_FORMAT, else text.
inline Format resolve_format(const std::optional<std::string>& flag) {
    if (flag) return parse_format(*flag);
    if (const char* env = std::getenv("OPVOLTERRA_FORMAT"); env != nullptr && *env != '\0') return parse_format(env);
    return Format::text;
}

inline CommandOutput bessel_table(int n_max, Format fmt) {
    if (n_max < 0) throw UsageError("--n-max must be >= 0");
    const BesselTriangle t = bessel_recurrence_table(n_max);
    std::ostringstream os;
    if (fmt == Format::json) {
        os << to_json(t).dump() << "\n";
        return {os.str()};
    }
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? (fmt == Format::csv ? "," : " ") : "") << row[k].str();
        os << "\n";
    }
    return {os.str()};
}

inline CommandOutput expand(const std::string& op, int n, Format fmt) {
    Json terms;
    std::string pretty;
    if (op == "xI") {
        if (n < 1) throw UsageError("expand --op xI needs --n >= 1");
        const OperatorSum s = expand_xI_closed(n);
        terms = to_json(s);
        pretty = to_string(s);
    } else if (op == "xD") {
        if (n < 0) throw UsageError("expand --op xD needs --n >= 0");
        const DerivativeSum s = expand_xD(n);
        terms = to_json(s);
        pretty = to_string(s);
    } else {
        throw UsageError("unknown operator '" + op + "' (expected xI or xD)");
    }
    if (fmt == Format::json) return {Json{{"op", op}, {"n", n}, {"pretty", pretty}, {"terms", terms}}.dump() + "\n"};
    return {pretty + "\n"};
}

/// Parsed --family argument.
struct Family {
    enum class Kind { monomial, exp, log1p, power };
    Kind kind = Kind::exp;
    int exponent = 0;    // monomial
    double alpha = 1.0;  // power

    static Family parse(const std::string& s) {
        Family f;
        auto tail = [&](std::size_t prefix) {
            if (s.size() <= prefix) throw UsageError("family '" + s + "' is missing its parameter");
            return s.substr(prefix);
        };
        try {
            if (s == "exp") {
                f.kind = Kind::exp;
            } else if (s == "log1p") {
                f.kind = Kind::log1p;
            } else if (s.rfind("monomial:", 0) == 0) {
                f.kind = Kind::monomial;
                std::size_t used = 0;
                const std::string p = tail(9);
                f.exponent = std::stoi(p, &used);
                if (used != p.size() || f.exponent < 0) throw UsageError("monomial exponent must be a nonnegative integer");
            } else if (s.rfind("power:", 0) == 0) {
                f.kind = Kind::power;
                std::size_t used = 0;
                const std::string p = tail(6);
                f.alpha = std::stod(p, &used);
                if (used != p.size()) throw UsageError("power alpha must be a number");
                if (!(f.alpha > 0) || !std::isfinite(f.alpha)) throw UsageError("power alpha must be > 0");
            } else {
                throw UsageError("unknown family '" + s + "' (expected monomial:M, exp, log1p or power:ALPHA)");
            }
        } catch (const std::logic_error&) {
            throw UsageError("cannot parse family '" + s + "'");
        }
        return f;
    }
};

inline CommandOutput apply(const std::string& family_text, int n, std::optional<double> at, Format fmt) {
    const Family fam = Family::parse(family_text);
    if (n < 1) throw UsageError("apply needs --n >= 1");
    if (at && (!(*at >= 0) || !std::isfinite(*at))) throw UsageError("--at must be a finite value >= 0");

    Json j{{"family", family_text}, {"n", n}};
    std::string pretty;
    std::optional<double> value;
    std::optional<OracleReport> oracle;
    const QuadratureRule rule(64);
    std::function<double(double)> integrand;
    QuadratureOptions qopt;

    switch (fam.kind) {
        case Family::Kind::monomial: {
            const Poly p = apply_to_monomial(expand_xI_closed(n), fam.exponent);
            pretty = to_string(p);
            j["closed_form"] = to_json(ClosedForm{p});
            if (at) value = p.eval(Rational::from_double(*at)).to_double();
            integrand = [e = fam.exponent](double t) { return std::pow(t, e); };
            break;
        }
        case Family::Kind::exp: {
            const ExpForm f = apply_exp(n);
            pretty = to_string(f);
            j["closed_form"] = to_json(ClosedForm{f});
            if (at) value = f.eval(*at);
            integrand = [](double t) { return std::exp(t); };
            break;
        }
        case Family::Kind::log1p: {
            const LogForm f = apply_log1p(n);
            pretty = to_string(f);
            j["closed_form"] = to_json(ClosedForm{f});
            if (at) value = f.eval(*at);
            integrand = [](double t) { return std::log1p(t); };
            break;
        }
        case Family::Kind::power: {
            const PowerClosedForm pc = power_closed_form(n, fam.alpha);
            std::ostringstream os;
            os.precision(17);
            if (pc.exact_coefficient) {
                pretty = to_string(Poly::monomial(*pc.exact_coefficient, static_cast<int>(pc.exponent)));
            } else {
                os << pc.coefficient << " x^" << pc.exponent;
                pretty = os.str();
            }
            Json cf{{"kind", "power"}, {"coefficient", pc.coefficient}, {"exponent", pc.exponent}};
            if (pc.exact_coefficient) cf["exact_coefficient"] = pc.exact_coefficient->str();
            j["closed_form"] = cf;
            if (at) value = pc.coefficient * std::pow(*at, pc.exponent);
            integrand = [a = fam.alpha](double t) { return std::pow(t, a - 1); };
            qopt.graded_levels = graded_levels_for_power(fam.alpha);
            break;
        }
    }
    if (at) {
        oracle = fam.kind == Family::Kind::power ? kernel_apply(integrand, n, *at, rule, qopt)
                                                 : nested_xI(integrand, n, *at, rule, qopt);
    }

    j["pretty"] = pretty;
    if (fmt == Format::json) {
        if (at) {
            j["at"] = *at;
            j["value"] = *value;
            j["oracle"] = to_json(*oracle);
            j["abs_diff"] = std::abs(*value - oracle->value);
        }
        return {j.dump() + "\n"};
    }
    std::ostringstream os;
    os << pretty << "\n";
    if (at) {
        os.precision(15);
        os << "value at x=" << *at << ": " << *value << "\n";
        os << "oracle (" << to_string(oracle->method) << "): " << oracle->value << "\n";
        os.precision(3);
        os << "abs diff: " << std::scientific << std::abs(*value - oracle->value) << "\n";
    }
    return {os.str()};
}

inline std::string render_suites_text(const std::vector<SuiteResult>& suites, bool verbose) {
    std::ostringstream os;
    for (const auto& s : suites) {
        os << (s.passed() ? "PASS " : "FAIL ") << s.suite_name << ": " << (s.cases.size() - s.failures()) << "/"
           << s.cases.size() << " cases";
        os.precision(3);
        os << " (" << std::fixed << s.elapsed_seconds << " s)\n";
        os.unsetf(std::ios::floatfield);
        for (const auto& c : s.cases) {
            if (c.passed && !verbose) continue;
            os << "  " << (c.passed ? "ok   " : "FAIL ") << c.case_id << ": " << c.detail;
            if (c.residual) os << " [residual " << *c.residual << "]";
            os << "\n";
        }
    }
    return os.str();
}

inline CommandOutput verify(const std::string& suite, const VerifyConfig& cfg, Format fmt, bool verbose = false) {
    if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw UsageError("unknown suite '" + suite + "'");
    if (cfg.exact_n_max < 1 || cfg.numeric_n_max < 1) throw UsageError("suite bounds must be >= 1");
    const auto suites = run_suites(suite, cfg);
    bool ok = true;
    for (const auto& s : suites) ok = ok && s.passed();
    CommandOutput out;
    out.exit_code = ok ? kOk : kCheckFailed;
    if (fmt == Format::json) {
        Json arr = Json::array();
        for (const auto& s : suites) arr.push_back(to_json(s));
        out.text = Json{{"passed", ok}, {"suites", arr}}.dump(2) + "\n";
    } else {
        out.text = render_suites_text(suites, verbose);
    }
    return out;
}

inline CommandOutput oeis_check_file(const std::string& seq, const std::string& path, Format fmt) {
    if (seq != "A001498" && seq != "A000806") throw UsageError("unsupported sequence '" + seq + "'");
    SuiteResult r;
    try {
        r = oeis_check(seq, load_bfile(path));
    } catch (const BFileError& e) {
        throw UsageError(e.what());
    }
    CommandOutput out;
    out.exit_code = r.passed() ? kOk : kCheckFailed;
    out.text = fmt == Format::json ? to_json(r).dump(2) + "\n" : render_suites_text({r}, true);
    return out;
}

}  // namespace opvolterra::cli

#pragma once
// verify.hpp - verification suites over the exact and numeric layers, with
// optional fault injection for mutation smoke tests.

#include "apply.hpp"
#include "exactnum.hpp"
#include "numquad.hpp"
#include "opalgebra.hpp"
#include "serialize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace opvolterra {

struct CaseResult {
    std::string case_id;
    bool passed = false;
    std::string detail;
    std::optional<double> residual;

    friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

struct SuiteResult {
    std::string suite_name;
    std::vector<CaseResult> cases;
    double elapsed_seconds = 0.0;

    /// False iff any case failed.
    [[nodiscard]] bool passed() const {
        return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
    }
    [[nodiscard]] std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.passed; }));
    }

    friend bool operator==(const SuiteResult&, const SuiteResult&) = default;
};

inline Json to_json(const SuiteResult& s) {
    Json cases = Json::array();
    for (const auto& c : s.cases) {
        cases.push_back({{"case_id", c.case_id},
                         {"status", c.passed ? "pass" : "fail"},
                         {"detail", c.detail},
                         {"residual", c.residual ? Json(*c.residual) : Json(nullptr)}});
    }
    return {{"suite_name", s.suite_name}, {"passed", s.passed()}, {"elapsed_seconds", s.elapsed_seconds}, {"cases", cases}};
}

inline SuiteResult suite_result_from_json(const Json& j) {
    SuiteResult s;
    s.suite_name = j.at("suite_name").get<std::string>();
    s.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    for (const auto& c : j.at("cases")) {
        CaseResult r;
        r.case_id = c.at("case_id").get<std::string>();
        const auto status = c.at("status").get<std::string>();
        if (status != "pass" && status != "fail") throw std::invalid_argument("case status must be pass or fail");
        r.passed = status == "pass";
        r.detail = c.at("detail").get<std::string>();
        if (!c.at("residual").is_null()) r.residual = c.at("residual").get<double>();
        s.cases.push_back(std::move(r));
    }
    return s;
}

/// A single corrupted value fed into the suites.
struct Fault {
    enum class Kind { bessel_entry, rewrite_coeff };
    Kind kind = Kind::bessel_entry;
    int n = 0;
    int k = 0;       // bessel: column; rewrite: x_pow
    int i_pow = 0;   // rewrite only
    long delta = 1;

    /// "bessel:N:K[:DELTA]" or "rewrite:N:XPOW:IPOW[:DELTA]".
    static Fault parse(const std::string& text) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        auto num = [&](std::size_t i) { return std::stol(parts.at(i)); };
        Fault f;
        if (!parts.empty() && parts[0] == "bessel" && (parts.size() == 3 || parts.size() == 4)) {
            f.kind = Kind::bessel_entry;
            f.n = static_cast<int>(num(1));
            f.k = static_cast<int>(num(2));
            if (parts.size() == 4) f.delta = num(3);
        } else if (!parts.empty() && parts[0] == "rewrite" && (parts.size() == 4 || parts.size() == 5)) {
            f.kind = Kind::rewrite_coeff;
            f.n = static_cast<int>(num(1));
            f.k = static_cast<int>(num(2));
            f.i_pow = static_cast<int>(num(3));
            if (parts.size() == 5) f.delta = num(4);
        } else {
            throw std::invalid_argument("fault must be bessel:N:K[:D] or rewrite:N:XPOW:IPOW[:D], got '" + text + "'");
        }
        if (f.delta == 0) throw std::invalid_argument("fault delta must be nonzero");
        return f;
    }
};

struct VerifyConfig {
    int exact_n_max = 12;
    int numeric_n_max = 5;
    int jobs = 1;
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int random_alpha_count = 50;
    std::uint64_t seed = 20240611;
    int quadrature_order = 64;
    std::optional<Fault> fault;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"bessel", "theorem1", "combiden", "gamma", "dobinski",
                                                "expsum", "kernel",   "grunert",  "log1p"};
    return names;
}

namespace detail {

using CaseTask = std::function<CaseResult()>;

inline std::vector<CaseResult> run_cases(const std::vector<std::pair<std::string, CaseTask>>& tasks, int jobs) {
    std::vector<CaseResult> out(tasks.size());
    auto run_one = [&](std::size_t i) {
        try {
            out[i] = tasks[i].second();
        } catch (const std::exception& e) {
            out[i].passed = false;
            out[i].detail = std::string("exception: ") + e.what();
        }
        out[i].case_id = tasks[i].first;
    };
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || tasks.size() < 2) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, tasks.size()); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
        });
    }
    pool.clear();
    return out;
}

inline CaseResult verdict(bool ok, std::string detail, std::optional<double> residual = std::nullopt) {
    CaseResult r;
    r.passed = ok;
    r.detail = std::move(detail);
    r.residual = residual;
    return r;
}

inline bool close(double a, double b, double abs_tol, double rel_tol) {
    return std::abs(a - b) <= std::max(abs_tol, rel_tol * std::max(std::abs(a), std::abs(b)));
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Rows 0..5 of the Bessel-number table as printed in the literature.
inline const std::vector<std::vector<long>>& reference_rows() {
    static const std::vector<std::vector<long>> rows{
        {1}, {1, 1}, {1, 3, 3}, {1, 6, 15, 15}, {1, 10, 45, 105, 105}, {1, 15, 105, 420, 945, 945}};
    return rows;
}

inline BesselTriangle table_under_test(int n_max, const VerifyConfig& cfg) {
    BesselTriangle t = bessel_recurrence_table(n_max);
    if (cfg.fault && cfg.fault->kind == Fault::Kind::bessel_entry && cfg.fault->n <= n_max && cfg.fault->k >= 0 &&
        cfg.fault->k <= cfg.fault->n && cfg.fault->n >= 0)
        t.rows[cfg.fault->n][cfg.fault->k] += cfg.fault->delta;
    return t;
}

struct NamedFunction {
    std::string name;
    RealFunction f;
};

inline std::vector<NamedFunction> oracle_family() {
    return {{"1", [](double) { return 1.0; }},
            {"t", [](double t) { return t; }},
            {"t^2", [](double t) { return t * t; }},
            {"e^t", [](double t) { return std::exp(t); }},
            {"ln(1+t)", [](double t) { return std::log1p(t); }}};
}

}  // namespace detail

inline SuiteResult run_bessel_suite(const VerifyConfig& cfg) {
    const int n_max = std::max(cfg.exact_n_max, 5);
    const auto table = std::make_shared<BesselTriangle>(detail::table_under_test(n_max, cfg));
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 0; n <= n_max; ++n) {
        tasks.emplace_back("row " + std::to_string(n), [table, n] {
            for (int k = 0; k <= n; ++k) {
                if (table->at(n, k) != bessel_closed(n, k))
                    return detail::verdict(false, "a(" + std::to_string(n) + "," + std::to_string(k) + "): recurrence " +
                                                      table->at(n, k).str() + " != closed form " + bessel_closed(n, k).str());
            }
            if (n >= 1 && table->at(n, n) != double_factorial(2 * n - 1))
                return detail::verdict(false, "a(n,n) != (2n-1)!!");
            if (n < static_cast<int>(detail::reference_rows().size())) {
                const auto& ref = detail::reference_rows()[n];
                for (int k = 0; k <= n; ++k) {
                    if (table->at(n, k) != ref[k]) return detail::verdict(false, "row differs from reference table");
                }
            }
            return detail::verdict(true, "recurrence == closed form");
        });
    }
    const auto start = std::chrono::steady_clock::now();
    SuiteResult s{"bessel", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_theorem1_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const int n_max = std::max(cfg.exact_n_max, 1);
    auto rewritten = std::make_shared<std::vector<OperatorSum>>(power_by_rewrite_sequence(n_max));
    if (cfg.fault && cfg.fault->kind == Fault::Kind::rewrite_coeff && cfg.fault->n >= 1 && cfg.fault->n <= n_max)
        (*rewritten)[cfg.fault->n - 1].add(cfg.fault->k, cfg.fault->i_pow, Rational(cfg.fault->delta));
    const auto table = std::make_shared<BesselTriangle>(detail::table_under_test(n_max, cfg));
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 1; n <= n_max; ++n) {
        tasks.emplace_back("n=" + std::to_string(n), [rewritten, table, n] {
            const OperatorSum closed = expand_xI_closed(n, *table);
            const OperatorSum& rw = (*rewritten)[n - 1];
            if (rw == closed) return detail::verdict(true, to_string(closed).substr(0, 80));
            return detail::verdict(false, "rewrite: " + to_string(rw) + " | closed: " + to_string(closed));
        });
    }
    SuiteResult s{"theorem1", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_combiden_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const int n_max = std::max(cfg.exact_n_max, 1);
    const auto table = std::make_shared<BesselTriangle>(detail::table_under_test(n_max, cfg));
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 1; n <= n_max; ++n) {
        tasks.emplace_back("n=" + std::to_string(n), [table, n] {
            for (int i = 0; i <= n; ++i) {
                if (!verify_combiden(n, i, *table)) return detail::verdict(false, "fails at i=" + std::to_string(i));
            }
            return detail::verdict(true, "all 0 <= i <= n");
        });
    }
    SuiteResult s{"combiden", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline std::vector<double> random_alphas(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    std::vector<double> out;
    for (int i = 0; i < cfg.random_alpha_count; ++i) out.push_back(10.0 - dist(rng));  // (0, 10]
    return out;
}

inline SuiteResult run_gamma_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int alpha = 2; alpha <= 20; alpha += 2) {
        for (int n = 1; n <= cfg.exact_n_max; ++n) {
            tasks.emplace_back("exact alpha=" + std::to_string(alpha) + " n=" + std::to_string(n), [alpha, n] {
                const auto c = verify_gamma_identity(n, alpha);
                return detail::verdict(c.exact && c.holds, c.lhs_exact->str() + " vs " + c.rhs_exact->str(), c.residual);
            });
        }
    }
    const double tol = cfg.rel_tol;
    for (double alpha : random_alphas(cfg)) {
        for (int n = 1; n <= cfg.numeric_n_max; ++n) {
            std::ostringstream id;
            id.precision(17);
            id << "real alpha=" << alpha << " n=" << n;
            tasks.emplace_back(id.str(), [alpha, n, tol] {
                const auto c = verify_gamma_identity(n, alpha, tol);
                return detail::verdict(c.holds, "relative residual", c.residual);
            });
        }
    }
    SuiteResult s{"gamma", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_dobinski_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 0; n <= cfg.exact_n_max; ++n) {
        tasks.emplace_back("n=" + std::to_string(n), [n] {
            const auto d = verify_dobinski(n);
            const bool seq_ok = d.p_at_1 == Rational(a000806(n));
            return detail::verdict(d.holds && seq_ok,
                                   "p(1)=" + d.p_at_1.short_str() + " q(1)=" + d.q_at_1.short_str() +
                                       " y_n(-1)=" + d.expected_p.short_str());
        });
    }
    SuiteResult s{"dobinski", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_expsum_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 0; n <= cfg.exact_n_max; ++n) {
        tasks.emplace_back("n=" + std::to_string(n), [n] {
            auto [lhs, rhs] = exp_sum_identity_sides(n);
            return detail::verdict(lhs == rhs, "degree " + std::to_string(rhs.degree()));
        });
    }
    SuiteResult s{"expsum", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_kernel_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 1; n <= cfg.exact_n_max; ++n) {
        tasks.emplace_back("exact n=" + std::to_string(n) + " m<=8", [n] {
            const OperatorSum ops = expand_xI_closed(n);
            for (int m = 0; m <= 8; ++m) {
                if (kernel_poly_apply(Poly::monomial(1, m), n) != apply_to_monomial(ops, m))
                    return detail::verdict(false, "mismatch at m=" + std::to_string(m));
            }
            return detail::verdict(true, "kernel == termwise expansion");
        });
    }
    const auto rule = std::make_shared<QuadratureRule>(cfg.quadrature_order);
    const double abs_tol = cfg.abs_tol;
    const double rel_tol = cfg.rel_tol;
    for (const auto& fn : detail::oracle_family()) {
        for (int n = 1; n <= cfg.numeric_n_max; ++n) {
            for (double x : {0.5, 1.0, 2.0}) {
                std::ostringstream id;
                id << "numeric f=" << fn.name << " n=" << n << " x=" << x;
                tasks.emplace_back(id.str(), [fn, n, x, rule, abs_tol, rel_tol] {
                    const double nested = nested_xI(fn.f, n, x, *rule).value;
                    const double kernel = kernel_apply(fn.f, n, x, *rule).value;
                    const double termwise = cauchy_termwise(fn.f, expand_xI_closed(n), x, *rule).value;
                    const double res = std::max({detail::rel_diff(nested, kernel), detail::rel_diff(nested, termwise),
                                                 detail::rel_diff(kernel, termwise)});
                    const bool ok = detail::close(nested, kernel, abs_tol, rel_tol) &&
                                    detail::close(nested, termwise, abs_tol, rel_tol) &&
                                    detail::close(kernel, termwise, abs_tol, rel_tol);
                    std::ostringstream d;
                    d.precision(17);
                    d << "nested=" << nested << " kernel=" << kernel << " termwise=" << termwise;
                    return detail::verdict(ok, d.str(), res);
                });
            }
        }
    }
    for (double alpha : {0.3, 1.3, 2.5, 7.7}) {
        for (int n = 1; n <= cfg.numeric_n_max; ++n) {
            std::ostringstream id;
            id << "power alpha=" << alpha << " n=" << n;
            tasks.emplace_back(id.str(), [alpha, n, rule, abs_tol, rel_tol] {
                QuadratureOptions opt;
                opt.graded_levels = graded_levels_for_power(alpha);
                const double x = 1.5;
                const double numeric = kernel_apply([alpha](double t) { return std::pow(t, alpha - 1); }, n, x, *rule, opt).value;
                const auto closed = power_closed_form(n, alpha);
                const double expected = closed.coefficient * std::pow(x, closed.exponent);
                return detail::verdict(detail::close(numeric, expected, abs_tol, rel_tol), "kernel vs Gamma closed form",
                                       detail::rel_diff(numeric, expected));
            });
        }
    }
    SuiteResult s{"kernel", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_grunert_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 0; n <= cfg.exact_n_max; ++n) {
        tasks.emplace_back("n=" + std::to_string(n), [n, m_max = cfg.exact_n_max] {
            const DerivativeSum ops = expand_xD(n);
            for (int m = 0; m <= m_max; ++m) {
                BigInt eig = 1;
                for (int i = 0; i < n; ++i) eig *= m;
                if (apply_derivative_sum(ops, m) != Poly::monomial(Rational(eig), m))
                    return detail::verdict(false, "(xD)^n x^m != m^n x^m at m=" + std::to_string(m));
            }
            return detail::verdict(true, "x^m eigenfunctions");
        });
    }
    SuiteResult s{"grunert", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_log1p_suite(const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, detail::CaseTask>> tasks;
    for (int n = 1; n <= cfg.exact_n_max; ++n) {
        tasks.emplace_back("coefficients n=" + std::to_string(n), [n] {
            return detail::verdict(log1p_coefficient_identity(n), "a(n-1,k)/(n+k)! == 1/((n-k-1)! 2^k k! (n+k))");
        });
    }
    const auto rule = std::make_shared<QuadratureRule>(cfg.quadrature_order);
    const double abs_tol = cfg.abs_tol;
    const double rel_tol = cfg.rel_tol;
    for (int n = 1; n <= cfg.numeric_n_max; ++n) {
        tasks.emplace_back("numeric n=" + std::to_string(n), [n, rule, abs_tol, rel_tol] {
            const LogForm form = apply_log1p(n);
            double worst = 0.0;
            bool ok = true;
            for (double x : {0.5, 1.0, 2.0}) {
                const double exact = form.eval(x);
                const double oracle = nested_xI([](double t) { return std::log1p(t); }, n, x, *rule).value;
                worst = std::max(worst, detail::rel_diff(exact, oracle));
                ok = ok && detail::close(exact, oracle, abs_tol, rel_tol);
            }
            return detail::verdict(ok, "closed form vs nested oracle at x in {1/2, 1, 2}", worst);
        });
    }
    SuiteResult s{"log1p", detail::run_cases(tasks, cfg.jobs), 0.0};
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

inline SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "bessel") return run_bessel_suite(cfg);
    if (name == "theorem1") return run_theorem1_suite(cfg);
    if (name == "combiden") return run_combiden_suite(cfg);
    if (name == "gamma") return run_gamma_suite(cfg);
    if (name == "dobinski") return run_dobinski_suite(cfg);
    if (name == "expsum") return run_expsum_suite(cfg);
    if (name == "kernel") return run_kernel_suite(cfg);
    if (name == "grunert") return run_grunert_suite(cfg);
    if (name == "log1p") return run_log1p_suite(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

/// "all" expands to every suite in suite_names() order.
inline std::vector<SuiteResult> run_suites(const std::string& name, const VerifyConfig& cfg) {
    std::vector<SuiteResult> out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.push_back(run_suite(s, cfg));
    } else {
        out.push_back(run_suite(name, cfg));
    }
    return out;
}

}  // namespace opvolterra

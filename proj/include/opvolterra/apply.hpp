#pragma once
// apply.hpp - closed-form action of normal-ordered operator sums on
// monomials, t^(alpha-1), e^t and ln(1+t).
//
// Exponential results live in Q[x] + Q[x] e^x and logarithmic results in
// Q[x] + Q[x] ln(1+x), so every identity on these families is checked
// exactly.

#include "exactnum.hpp"
#include "opalgebra.hpp"
#include "poly.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace opvolterra {

// ---------------------------------------------------------------------------
// Monomials and power functions

/// I^m (t^e) = e!/(e+m)! x^{e+m}.
inline Poly cauchy_iterate_monomial(int m_iter, int exponent) {
    if (m_iter < 0 || exponent < 0) throw std::domain_error("cauchy_iterate_monomial: negative argument");
    return Poly::monomial(Rational(factorial(exponent), factorial(exponent + m_iter)), exponent + m_iter);
}

inline Poly apply_to_monomial(const OperatorSum& ops, int exponent) {
    Poly out;
    for (const auto& [key, c] : ops.terms()) out += cauchy_iterate_monomial(key.op_pow, exponent).shifted(key.x_pow) * c;
    return out;
}

inline Poly apply_to_poly(const OperatorSum& ops, const Poly& p) {
    Poly out;
    for (int j = 0; j <= p.degree(); ++j) {
        if (!p.coeffs()[j].is_zero()) out += apply_to_monomial(ops, j) * p.coeffs()[j];
    }
    return out;
}

struct PowerClosedForm {
    double coefficient = 0.0;
    double exponent = 0.0;
    /// Present when alpha is an even positive integer.
    std::optional<Rational> exact_coefficient;
};

namespace detail {

inline std::optional<int> as_positive_even(double alpha) {
    if (alpha <= 0 || alpha > 1e6 || std::nearbyint(alpha) != alpha) return std::nullopt;
    const auto a = static_cast<int>(alpha);
    if (a % 2 != 0) return std::nullopt;
    return a;
}

}  // namespace detail

/// (xI)^n t^(alpha-1) = Gamma(alpha/2) / (2^n Gamma(n + alpha/2)) x^(alpha+2n-1).
inline PowerClosedForm power_closed_form(int n, double alpha) {
    if (n < 1) throw std::domain_error("power_closed_form: n must be >= 1");
    if (!(alpha > 0) || !std::isfinite(alpha)) throw std::domain_error("power_closed_form: alpha must be > 0");
    PowerClosedForm out;
    out.exponent = alpha + 2.0 * n - 1.0;
    out.coefficient = std::exp(std::lgamma(alpha / 2) - std::lgamma(n + alpha / 2) - n * std::log(2.0));
    if (auto even = detail::as_positive_even(alpha)) {
        // Gamma(m) / (2^n Gamma(n+m)) with m = alpha/2
        const int m = *even / 2;
        BigInt den = factorial(n + m - 1);
        den <<= n;
        out.exact_coefficient = Rational(factorial(m - 1), den);
    }
    return out;
}

struct GammaIdentityCheck {
    bool holds = false;
    bool exact = false;
    /// |lhs - rhs| / |lhs|; zero for an exact pass.
    double residual = 0.0;
    std::optional<Rational> lhs_exact;
    std::optional<Rational> rhs_exact;
};

/// Gamma(a/2) / (2^n Gamma(a) Gamma(n+a/2)) against
/// sum_{k<n} (-1)^k a(n-1,k) / Gamma(a+n+k). Exact for even integer alpha,
/// log-Gamma floating point otherwise (holds iff residual <= rel_tol).
inline GammaIdentityCheck verify_gamma_identity(int n, double alpha, double rel_tol = 1e-9) {
    if (n < 1) throw std::domain_error("verify_gamma_identity: n must be >= 1");
    if (!(alpha > 0) || !std::isfinite(alpha)) throw std::domain_error("verify_gamma_identity: alpha must be > 0");
    GammaIdentityCheck out;
    if (auto even = detail::as_positive_even(alpha)) {
        const int a = *even;
        const int m = a / 2;
        BigInt lhs_den = factorial(a - 1) * factorial(n + m - 1);
        lhs_den <<= n;
        Rational lhs(factorial(m - 1), lhs_den);
        Rational rhs;
        for (int k = 0; k < n; ++k) {
            Rational term(bessel_closed(n - 1, k), factorial(a + n + k - 1));
            rhs += k % 2 == 0 ? term : -term;
        }
        out.exact = true;
        out.holds = lhs == rhs;
        out.residual = out.holds ? 0.0 : std::abs(((lhs - rhs) / lhs).to_double());
        out.lhs_exact = std::move(lhs);
        out.rhs_exact = std::move(rhs);
        return out;
    }
    const double lhs = std::exp(std::lgamma(alpha / 2) - n * std::log(2.0) - std::lgamma(alpha) - std::lgamma(n + alpha / 2));
    long double rhs = 0;
    for (int k = 0; k < n; ++k) {
        const long double term = bessel_closed(n - 1, k).convert_to<long double>() *
                                 std::exp(-std::lgamma(static_cast<long double>(alpha) + n + k));
        rhs += k % 2 == 0 ? term : -term;
    }
    out.residual = static_cast<double>(std::abs((static_cast<long double>(lhs) - rhs) / lhs));
    out.holds = out.residual <= rel_tol;
    return out;
}

// ---------------------------------------------------------------------------
// Exponential

/// p(x) e^x + q(x).
struct ExpForm {
    Poly p;
    Poly q;

    ExpForm& operator+=(const ExpForm& o) {
        p += o.p;
        q += o.q;
        return *this;
    }
    friend ExpForm operator+(ExpForm a, const ExpForm& b) { return a += b; }
    friend ExpForm operator*(ExpForm a, const Rational& c) {
        a.p *= c;
        a.q *= c;
        return a;
    }
    friend bool operator==(const ExpForm&, const ExpForm&) = default;

    [[nodiscard]] ExpForm times_x(int k) const { return {p.shifted(k), q.shifted(k)}; }
    [[nodiscard]] ExpForm derivative() const { return {p.derivative() + p, q.derivative()}; }
    /// Polynomials are evaluated exactly at x; only e^x is rounded.
    [[nodiscard]] double eval(double x) const {
        using Float = boost::multiprecision::cpp_bin_float_100;
        const Rational rx = Rational::from_double(x);
        const Float v = p.eval(rx).to_float<Float>() * exp(Float(rx.to_float<Float>())) + q.eval(rx).to_float<Float>();
        return v.convert_to<double>();
    }
};

/// e^x truncated after x^{terms-1}.
inline Poly exp_partial_sum(int terms) {
    std::vector<Rational> c;
    c.reserve(terms);
    for (int j = 0; j < terms; ++j) c.emplace_back(BigInt(1), factorial(j));
    return Poly(std::move(c));
}

/// I^m (e^t) = e^x - sum_{j<m} x^j/j!.
inline ExpForm cauchy_iterate_exp(int m_iter) {
    if (m_iter < 0) throw std::domain_error("cauchy_iterate_exp: negative iteration count");
    return {Poly::constant(1), -exp_partial_sum(m_iter)};
}

inline ExpForm apply_to_exp(const OperatorSum& ops) {
    ExpForm out;
    for (const auto& [key, c] : ops.terms()) out += cauchy_iterate_exp(key.op_pow).times_x(key.x_pow) * c;
    return out;
}

inline ExpForm apply_exp(int n) { return apply_to_exp(expand_xI_closed(n)); }

/// Both sides of sum_k (-1)^k a(n,k) x^{n-k} sum_{j<=n+k} x^j/j!
///   = sum_k (-1)^{n-k} (2(n-k)-1)!!/(2k)!! x^{2k}.
inline std::pair<Poly, Poly> exp_sum_identity_sides(int n) {
    if (n < 0) throw std::domain_error("exp_sum_identity: negative n");
    Poly lhs;
    Poly rhs;
    for (int k = 0; k <= n; ++k) {
        const Rational a(bessel_closed(n, k));
        lhs += exp_partial_sum(n + k + 1).shifted(n - k) * (k % 2 == 0 ? a : -a);
        const Rational r(double_factorial(2 * (n - k) - 1), double_factorial(2 * k));
        rhs += Poly::monomial((n - k) % 2 == 0 ? r : -r, 2 * k);
    }
    return {std::move(lhs), std::move(rhs)};
}

inline bool verify_exp_sum_identity(int n) {
    auto [lhs, rhs] = exp_sum_identity_sides(n);
    return lhs == rhs;
}

/// sum_k (-1)^{n-k} (2(n-k)-1)!!/(2k)!!, the polynomial side at x = 1.
inline Rational double_factorial_sum(int n) {
    Rational s;
    for (int k = 0; k <= n; ++k) {
        const Rational r(double_factorial(2 * (n - k) - 1), double_factorial(2 * k));
        s += (n - k) % 2 == 0 ? r : -r;
    }
    return s;
}

struct DobinskiCheck {
    /// (xI)^{n+1}(e^t)(1) = p_at_1 e + q_at_1.
    Rational p_at_1;
    Rational q_at_1;
    Rational expected_p;  // y_n(-1)
    Rational expected_q;  // minus the double-factorial sum
    bool holds = false;
};

/// Checks a(n) = y_n(-1) = (1/e)[(xI)^{n+1}(e^t)(1) + S_n] in Q + Q e.
inline DobinskiCheck verify_dobinski(int n) {
    if (n < 0) throw std::domain_error("verify_dobinski: negative n");
    const ExpForm f = apply_exp(n + 1);
    DobinskiCheck out;
    out.p_at_1 = f.p.eval(Rational(1));
    out.q_at_1 = f.q.eval(Rational(1));
    out.expected_p = bessel_poly_eval(n, Rational(-1));
    out.expected_q = -double_factorial_sum(n);
    out.holds = out.p_at_1 == out.expected_p && out.q_at_1 == out.expected_q;
    return out;
}

// ---------------------------------------------------------------------------
// ln(1+t)

/// p(x) ln(1+x) + q(x).
struct LogForm {
    Poly p;
    Poly q;

    LogForm& operator+=(const LogForm& o) {
        p += o.p;
        q += o.q;
        return *this;
    }
    friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
    friend LogForm operator*(LogForm a, const Rational& c) {
        a.p *= c;
        a.q *= c;
        return a;
    }
    friend bool operator==(const LogForm&, const LogForm&) = default;

    [[nodiscard]] LogForm times_x(int k) const { return {p.shifted(k), q.shifted(k)}; }

    /// d/dx (p ln(1+x) + q) = p' ln(1+x) + p/(1+x) + q'. Requires p(-1) = 0
    /// so the result stays in the same ring.
    [[nodiscard]] LogForm derivative() const {
        return {p.derivative(), q.derivative() + p.divided_by_linear(Rational(-1))};
    }

    /// Polynomials are evaluated exactly at x; only ln(1+x) is rounded.
    [[nodiscard]] double eval(double x) const {
        using Float = boost::multiprecision::cpp_bin_float_100;
        const Rational rx = Rational::from_double(x);
        const Float v = p.eval(rx).to_float<Float>() * log(Float(1) + rx.to_float<Float>()) + q.eval(rx).to_float<Float>();
        return v.convert_to<double>();
    }
};

/// A_m(x) = sum_{k=1}^m C(m,k) (H_m - H_{m-k}) x^k.
inline Poly medina_moll_polynomial(int m, const HarmonicCache& h) {
    std::vector<Rational> c(m + 1);
    for (int k = 1; k <= m; ++k) c[k] = Rational(binomial(m, k)) * (h[m] - h[m - k]);
    return Poly(std::move(c));
}

inline Poly medina_moll_polynomial(int m) { return medina_moll_polynomial(m, HarmonicCache(m)); }

/// I^m ln(1+t) = ((1+x)^m ln(1+x) - A_m(x)) / m!.
inline LogForm medina_moll_antiderivative(int m_iter, const HarmonicCache& h) {
    if (m_iter < 1) throw std::domain_error("medina_moll_antiderivative: m must be >= 1");
    const Rational inv(BigInt(1), factorial(m_iter));
    return {pow(Poly{1, 1}, m_iter) * inv, -medina_moll_polynomial(m_iter, h) * inv};
}

inline LogForm medina_moll_antiderivative(int m_iter) { return medina_moll_antiderivative(m_iter, HarmonicCache(m_iter)); }

inline LogForm apply_to_log1p(const OperatorSum& ops) {
    int max_iter = 0;
    for (const auto& [key, c] : ops.terms()) max_iter = std::max(max_iter, key.op_pow);
    const HarmonicCache h(max_iter);
    LogForm out;
    for (const auto& [key, c] : ops.terms()) {
        LogForm t = key.op_pow == 0 ? LogForm{Poly::constant(1), {}} : medina_moll_antiderivative(key.op_pow, h);
        out += t.times_x(key.x_pow) * c;
    }
    return out;
}

/// The coefficient (-1)^k / ((n-k-1)! 2^k k! (n+k)) of x^{n-k}(1+x)^{n+k} ln(1+x).
inline Rational log1p_display_coefficient(int n, int k) {
    BigInt den = factorial(n - k - 1) * factorial(k) * (n + k);
    den <<= k;
    const Rational c(BigInt(1), den);
    return k % 2 == 0 ? c : -c;
}

/// a(n-1,k)/(n+k)! == 1/((n-k-1)! 2^k k! (n+k)) for every 0 <= k < n.
inline bool log1p_coefficient_identity(int n) {
    if (n < 1) throw std::domain_error("log1p_coefficient_identity: n must be >= 1");
    for (int k = 0; k < n; ++k) {
        const Rational lhs(bessel_closed(n - 1, k), factorial(n + k));
        if (lhs != log1p_display_coefficient(n, k).abs()) return false;
    }
    return true;
}

/// Assembles sum_k c_k x^{n-k} [(1+x)^{n+k} ln(1+x) - A_{n+k}(x)] with the
/// display coefficients c_k.
inline LogForm log1p_display_form(int n) {
    const HarmonicCache h(2 * n);
    LogForm out;
    for (int k = 0; k < n; ++k) {
        const Rational c = log1p_display_coefficient(n, k);
        out.p += pow(Poly{1, 1}, n + k).shifted(n - k) * c;
        out.q -= medina_moll_polynomial(n + k, h).shifted(n - k) * c;
    }
    return out;
}

/// (xI)^n ln(1+t) by termwise Medina-Moll antiderivatives. Throws
/// std::logic_error if the result disagrees with the display-coefficient
/// assembly.
inline LogForm apply_log1p(int n) {
    LogForm out = apply_to_log1p(expand_xI_closed(n));
    if (!log1p_coefficient_identity(n) || out != log1p_display_form(n))
        throw std::logic_error("apply_log1p: termwise result disagrees with display coefficients at n = " + std::to_string(n));
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string to_string(const ExpForm& f) {
    std::string out;
    if (!f.p.is_zero()) {
        const bool single = std::count_if(f.p.coeffs().begin(), f.p.coeffs().end(), [](const Rational& c) { return !c.is_zero(); }) == 1;
        const std::string ps = to_string(f.p);
        if (single && ps != "1" && ps != "-1") out = ps + " e^x";
        else if (ps == "1") out = "e^x";
        else if (ps == "-1") out = "-e^x";
        else out = "(" + ps + ") e^x";
    }
    if (!f.q.is_zero()) {
        const std::string qs = to_string(f.q);
        if (out.empty()) out = qs;
        else if (qs.front() == '-') out += " - " + qs.substr(1);
        else out += " + " + qs;
    }
    return out.empty() ? "0" : out;
}

inline std::string to_string(const LogForm& f) {
    std::string out;
    if (!f.p.is_zero()) {
        const std::string ps = to_string(f.p);
        out = ps == "1" ? "ln(1+x)" : "(" + ps + ") ln(1+x)";
    }
    if (!f.q.is_zero()) {
        const std::string qs = to_string(f.q);
        if (out.empty()) out = qs;
        else if (qs.front() == '-') out += " - " + qs.substr(1);
        else out += " + " + qs;
    }
    return out.empty() ? "0" : out;
}

}  // namespace opvolterra

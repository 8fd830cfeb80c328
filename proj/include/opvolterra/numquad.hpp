#pragma once
// numquad.hpp - floating-point oracles for (xI)^n f: literal nested
// recursion, Cauchy's single-integral form and the closed kernel
// x (x^2 - t^2)^{n-1} / (2(n-1))!!, plus an exact kernel instantiation on
// polynomials that shares no code with apply.hpp.

#include "exactnum.hpp"
#include "opalgebra.hpp"
#include "poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace opvolterra {

/// Gauss-Legendre rule on [-1, 1].
class QuadratureRule {
public:
    explicit QuadratureRule(int order = 64) : order_(order) {
        if (order < 1) throw std::domain_error("QuadratureRule: order must be >= 1");
        nodes_.resize(order);
        weights_.resize(order);
        const int half = (order + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                auto [p, d] = legendre_with_derivative(order, z);
                dp = d;
                const double step = p / d;
                z -= step;
                if (std::abs(step) < 1e-15) break;
            }
            dp = legendre_with_derivative(order, z).second;
            const double w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes_[i] = -z;
            nodes_[order - 1 - i] = z;
            weights_[i] = w;
            weights_[order - 1 - i] = w;
        }
    }

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

    /// Returns (P_n(z), P_n'(z)).
    static std::pair<double, double> legendre_with_derivative(int n, double z) {
        double p0 = 1.0;
        double p1 = z;
        if (n == 0) return {1.0, 0.0};
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double d = n * (z * p1 - p0) / (z * z - 1.0);
        return {p1, d};
    }

private:
    int order_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

enum class OracleMethod { nested, cauchy, kernel, symbolic };

inline const char* to_string(OracleMethod m) {
    switch (m) {
        case OracleMethod::nested: return "nested";
        case OracleMethod::cauchy: return "cauchy";
        case OracleMethod::kernel: return "kernel";
        case OracleMethod::symbolic: return "symbolic";
    }
    return "?";
}

struct OracleReport {
    OracleMethod method = OracleMethod::nested;
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

using RealFunction = std::function<double(double)>;

struct QuadratureOptions {
    /// Extra panels [0, x r^L], [x r^L, x r^{L-1}], ..., [x r, x] for
    /// integrands with an algebraic singularity at t = 0.
    int graded_levels = 0;
    double grading_ratio = 0.15;
    /// Repeat on halved panels and report |difference| as the error estimate.
    bool estimate_error = true;
};

/// Grading depth for an integrand ~ t^(alpha-1) near 0: the unresolved
/// piece [0, x r^L] carries relative weight about r^(L alpha).
inline int graded_levels_for_power(double alpha, double rel_tol = 1e-13, double ratio = QuadratureOptions{}.grading_ratio) {
    if (!(alpha > 0)) throw std::domain_error("graded_levels_for_power: alpha must be > 0");
    const double need = std::ceil(std::log(rel_tol) / (alpha * std::log(ratio)));
    // r^L must stay a normal double.
    const double cap = std::floor(std::log(1e-300) / std::log(ratio));
    return static_cast<int>(std::clamp(need, 1.0, cap));
}

namespace detail {

inline std::vector<double> panel_breaks(double x, const QuadratureOptions& opt, int split) {
    std::vector<double> coarse{0.0};
    for (int l = opt.graded_levels; l >= 1; --l) coarse.push_back(x * std::pow(opt.grading_ratio, l));
    coarse.push_back(x);
    std::vector<double> out{0.0};
    for (std::size_t i = 1; i < coarse.size(); ++i) {
        const double a = coarse[i - 1];
        const double b = coarse[i];
        for (int s = 1; s <= split; ++s) out.push_back(a + (b - a) * s / split);
    }
    return out;
}

inline double checked(const RealFunction& f, double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand value " << v << " at node t = " << t;
        throw std::domain_error(os.str());
    }
    return v;
}

// Composite rule for int_0^x g(t) dt.
inline double composite(const RealFunction& g, double x, const QuadratureRule& rule, const QuadratureOptions& opt,
                        int split, long& evals) {
    const auto breaks = panel_breaks(x, opt, split);
    double sum = 0.0;
    for (std::size_t p = 1; p < breaks.size(); ++p) {
        const double a = breaks[p - 1];
        const double half = (breaks[p] - a) / 2;
        double panel = 0.0;
        for (int i = 0; i < rule.order(); ++i) panel += rule.weights()[i] * checked(g, a + half * (rule.nodes()[i] + 1.0));
        evals += rule.order();
        sum += half * panel;
    }
    return sum;
}

inline OracleReport single_integral(OracleMethod method, const RealFunction& g, double x, const QuadratureRule& rule,
                                    const QuadratureOptions& opt) {
    if (!(x >= 0) || !std::isfinite(x)) throw std::domain_error("oracle: x must be a finite value >= 0");
    OracleReport r;
    r.method = method;
    if (x == 0.0) return r;
    const double coarse = composite(g, x, rule, opt, 1, r.evaluations);
    if (!opt.estimate_error) {
        r.value = coarse;
        return r;
    }
    r.value = composite(g, x, rule, opt, 2, r.evaluations);
    r.abs_error_estimate = std::abs(r.value - coarse);
    return r;
}

// S[i][j] = int_{-1}^{tau_i} l_j(s) ds for the Lagrange basis on the rule's
// nodes, via the discrete Legendre expansion of l_j.
inline std::vector<std::vector<double>> integration_matrix(const QuadratureRule& rule) {
    const int n = rule.order();
    std::vector<std::vector<double>> leg(n, std::vector<double>(n + 1));
    for (int i = 0; i < n; ++i) {
        const double z = rule.nodes()[i];
        leg[i][0] = 1.0;
        if (n >= 1) leg[i][1] = z;
        for (int k = 2; k <= n; ++k) leg[i][k] = ((2.0 * k - 1.0) * z * leg[i][k - 1] - (k - 1.0) * leg[i][k - 2]) / k;
    }
    std::vector<std::vector<double>> s(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        const double z = rule.nodes()[i];
        for (int j = 0; j < n; ++j) {
            double acc = (z + 1.0) / 2.0;
            for (int m = 1; m < n; ++m) acc += leg[j][m] * (leg[i][m + 1] - leg[i][m - 1]) / 2.0;
            s[i][j] = rule.weights()[j] * acc;
        }
    }
    return s;
}

inline double nested_on_grid(const RealFunction& f, int n, double x, const QuadratureRule& rule,
                             const std::vector<std::vector<double>>& smat, const std::vector<double>& breaks,
                             long& evals) {
    const int q = rule.order();
    const std::size_t panels = breaks.size() - 1;
    std::vector<double> t(panels * q);
    std::vector<double> g(panels * q);
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = breaks[p];
        const double half = (breaks[p + 1] - a) / 2;
        for (int i = 0; i < q; ++i) {
            t[p * q + i] = a + half * (rule.nodes()[i] + 1.0);
            g[p * q + i] = checked(f, t[p * q + i]);
        }
    }
    evals += static_cast<long>(t.size());
    auto full_integral = [&](const std::vector<double>& v) {
        double sum = 0.0;
        for (std::size_t p = 0; p < panels; ++p) {
            const double half = (breaks[p + 1] - breaks[p]) / 2;
            double panel = 0.0;
            for (int i = 0; i < q; ++i) panel += rule.weights()[i] * v[p * q + i];
            sum += half * panel;
        }
        return sum;
    };
    // g_k(s) = s * int_0^s g_{k-1}, tabulated on the fixed node grid
    for (int level = 1; level < n; ++level) {
        std::vector<double> next(g.size());
        double before = 0.0;
        for (std::size_t p = 0; p < panels; ++p) {
            const double half = (breaks[p + 1] - breaks[p]) / 2;
            double panel = 0.0;
            for (int i = 0; i < q; ++i) {
                double partial = 0.0;
                for (int j = 0; j < q; ++j) partial += smat[i][j] * g[p * q + j];
                next[p * q + i] = t[p * q + i] * (before + half * partial);
                panel += rule.weights()[i] * g[p * q + i];
            }
            before += half * panel;
        }
        g = std::move(next);
    }
    return x * full_integral(g);
}

}  // namespace detail

/// (xI)^n f(x) by the literal recursion, memoized level by level on a fixed
/// composite node grid.
inline OracleReport nested_xI(const RealFunction& f, int n, double x, const QuadratureRule& rule,
                              const QuadratureOptions& opt = {}) {
    if (n < 1) throw std::domain_error("nested_xI: n must be >= 1");
    if (!(x >= 0) || !std::isfinite(x)) throw std::domain_error("nested_xI: x must be a finite value >= 0");
    OracleReport r;
    r.method = OracleMethod::nested;
    if (x == 0.0) return r;
    const auto smat = detail::integration_matrix(rule);
    const double coarse = detail::nested_on_grid(f, n, x, rule, smat, detail::panel_breaks(x, opt, 1), r.evaluations);
    if (!opt.estimate_error) {
        r.value = coarse;
        return r;
    }
    r.value = detail::nested_on_grid(f, n, x, rule, smat, detail::panel_breaks(x, opt, 2), r.evaluations);
    r.abs_error_estimate = std::abs(r.value - coarse);
    return r;
}

/// I^m f(x) = int_0^x (x-t)^{m-1}/(m-1)! f(t) dt.
inline OracleReport cauchy_single(const RealFunction& f, int m, double x, const QuadratureRule& rule,
                                  const QuadratureOptions& opt = {}) {
    if (m < 1) throw std::domain_error("cauchy_single: m must be >= 1");
    const double scale = std::exp(-std::lgamma(static_cast<double>(m)));
    auto g = [&](double t) { return std::pow(x - t, m - 1) * scale * f(t); };
    auto r = detail::single_integral(OracleMethod::cauchy, g, x, rule, opt);
    return r;
}

/// (xI)^n f(x) = int_0^x x (x^2 - t^2)^{n-1} / (2(n-1))!! f(t) dt.
inline OracleReport kernel_apply(const RealFunction& f, int n, double x, const QuadratureRule& rule,
                                 const QuadratureOptions& opt = {}) {
    if (n < 1) throw std::domain_error("kernel_apply: n must be >= 1");
    const double inv_df = 1.0 / double_factorial(2 * (n - 1)).convert_to<double>();
    auto g = [&](double t) { return x * std::pow(x * x - t * t, n - 1) * inv_df * f(t); };
    return detail::single_integral(OracleMethod::kernel, g, x, rule, opt);
}

/// Sum over the words c x^a I^b of c x^a (I^b f)(x), each I^b by cauchy_single.
inline OracleReport cauchy_termwise(const RealFunction& f, const OperatorSum& ops, double x, const QuadratureRule& rule,
                                    const QuadratureOptions& opt = {}) {
    OracleReport out;
    out.method = OracleMethod::cauchy;
    for (const auto& [key, c] : ops.terms()) {
        const double cx = c.to_double() * std::pow(x, key.x_pow);
        if (key.op_pow == 0) {
            out.value += cx * f(x);
            out.evaluations += 1;
            continue;
        }
        const auto r = cauchy_single(f, key.op_pow, x, rule, opt);
        out.value += cx * r.value;
        out.abs_error_estimate += std::abs(cx) * r.abs_error_estimate;
        out.evaluations += r.evaluations;
    }
    return out;
}

/// Exact kernel action on a polynomial: expands (x^2 - t^2)^{n-1} binomially
/// and integrates t^{j+2i} termwise.
inline Poly kernel_poly_apply(const Poly& p, int n) {
    if (n < 1) throw std::domain_error("kernel_poly_apply: n must be >= 1");
    const Rational inv_df(BigInt(1), double_factorial(2 * (n - 1)));
    std::vector<Rational> out;
    for (int j = 0; j <= p.degree(); ++j) {
        const Rational& pj = p.coeffs()[j];
        if (pj.is_zero()) continue;
        for (int i = 0; i <= n - 1; ++i) {
            // x * x^{2(n-1-i)} * (-1)^i C(n-1,i) * x^{j+2i+1}/(j+2i+1)
            const int degree = 1 + 2 * (n - 1 - i) + j + 2 * i + 1;
            Rational c = pj * inv_df * Rational(binomial(n - 1, i), BigInt(j + 2 * i + 1));
            if (i % 2 == 1) c = -c;
            if (static_cast<int>(out.size()) <= degree) out.resize(degree + 1);
            out[degree] += c;
        }
    }
    return Poly(std::move(out));
}

}  // namespace opvolterra

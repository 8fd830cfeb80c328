#pragma once
// poly.hpp - dense univariate polynomials over Rational.

#include "exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace opvolterra {

/// coeffs()[j] is the coefficient of x^j; trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rational> c) : coeffs_(c) { trim(); }
    explicit Poly(std::vector<Rational> c) : coeffs_(std::move(c)) { trim(); }

    static Poly monomial(Rational c, int degree) {
        if (degree < 0) throw std::domain_error("Poly::monomial: negative degree");
        std::vector<Rational> v(degree + 1);
        v[degree] = std::move(c);
        return Poly(std::move(v));
    }
    static Poly constant(Rational c) { return monomial(std::move(c), 0); }

    [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    [[nodiscard]] Rational coeff(int j) const {
        if (j < 0 || j > degree()) return Rational();
        return coeffs_[j];
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) { return *this += -o; }
    Poly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& v : coeffs_) v *= c;
        return *this;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.coeffs_) v = -v;
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Multiplies by x^k.
    [[nodiscard]] Poly shifted(int k) const {
        if (k < 0) throw std::domain_error("Poly::shifted: negative shift");
        if (is_zero()) return {};
        std::vector<Rational> v(k);
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return Poly(std::move(v));
    }

    /// Exact division by x^k; throws when a low coefficient is nonzero.
    [[nodiscard]] Poly divided_by_x_power(int k) const {
        for (int j = 0; j < k && j <= degree(); ++j) {
            if (!coeffs_[j].is_zero()) throw std::domain_error("Poly: not divisible by x^k");
        }
        if (k > degree()) return {};
        return Poly(std::vector<Rational>(coeffs_.begin() + k, coeffs_.end()));
    }

    [[nodiscard]] Poly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> v(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j) v[j - 1] = coeffs_[j] * Rational(static_cast<long long>(j));
        return Poly(std::move(v));
    }

    /// Antiderivative vanishing at 0.
    [[nodiscard]] Poly antiderivative() const {
        if (is_zero()) return {};
        std::vector<Rational> v(coeffs_.size() + 1);
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            v[j + 1] = coeffs_[j] / Rational(static_cast<long long>(j + 1));
        return Poly(std::move(v));
    }

    [[nodiscard]] Rational eval(const Rational& x) const {
        Rational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    [[nodiscard]] double eval(double x) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
        return acc;
    }

    /// Quotient of exact division by (x - root); throws on nonzero remainder.
    [[nodiscard]] Poly divided_by_linear(const Rational& root) const {
        if (is_zero()) return {};
        std::vector<Rational> q(coeffs_.size() - 1);
        Rational carry;
        for (int j = degree(); j >= 1; --j) {
            carry = coeffs_[j] + carry * root;
            q[j - 1] = carry;
        }
        if (!(coeffs_[0] + carry * root).is_zero()) throw std::domain_error("Poly: nonzero remainder");
        return Poly(std::move(q));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

inline Poly pow(const Poly& p, int e) {
    if (e < 0) throw std::domain_error("pow(Poly): negative exponent");
    Poly r = Poly::constant(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

namespace detail {

inline std::string power_of(const std::string& var, int e) {
    if (e == 0) return "";
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
}

// Appends "c var^e" in the " + "/" - " convention; magnitude-1 coefficients
// are elided and fractional ones are written as "num var^e/den".
inline void append_term(std::string& out, const Rational& c, const std::string& body) {
    const bool negative = c.sign() < 0;
    if (out.empty()) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    const Rational mag = c.abs();
    const std::string num = mag.num().str();
    if (body.empty()) {
        out += mag.short_str();
        return;
    }
    if (num != "1") out += num + " ";
    out += body;
    if (!mag.is_integer()) out += "/" + mag.den().str();
}

}  // namespace detail

/// Descending-degree rendering, e.g. "x^4/3" or "x^2 - x".
inline std::string to_string(const Poly& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int j = p.degree(); j >= 0; --j) {
        if (p.coeffs()[j].is_zero()) continue;
        detail::append_term(out, p.coeffs()[j], detail::power_of(var, j));
    }
    return out;
}

}  // namespace opvolterra

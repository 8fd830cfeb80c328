#pragma once
// exactnum.hpp - exact integers, rationals and the combinatorial number
// families used by the operator calculus (Bessel numbers, Stirling numbers,
// double/falling factorials, harmonic numbers).

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace opvolterra {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    [[nodiscard]] const BigInt& num() const noexcept { return num_; }
    [[nodiscard]] const BigInt& den() const noexcept { return den_; }

    [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
    [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] int sign() const noexcept { return num_.sign(); }

    [[nodiscard]] Rational abs() const {
        Rational r = *this;
        if (r.num_ < 0) r.num_ = -r.num_;
        return r;
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (den_ == o.den_) {
            num_ += o.num_;
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ *= o.den_;
        }
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    [[nodiscard]] double to_double() const { return to_float<boost::multiprecision::cpp_bin_float_50>().convert_to<double>(); }

    template <class Float>
    [[nodiscard]] Float to_float() const {
        return Float(num_) / Float(den_);
    }

    /// Exact value of a finite double (every finite double is dyadic).
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw std::domain_error("Rational::from_double: non-finite value");
        int exp2 = 0;
        const double mant = std::frexp(v, &exp2);
        // mant * 2^53 is an integer
        BigInt m(static_cast<long long>(std::ldexp(mant, 53)));
        exp2 -= 53;
        if (exp2 >= 0) return Rational(m << exp2);
        BigInt den = 1;
        den <<= -exp2;
        return Rational(std::move(m), std::move(den));
    }

    /// Canonical "p/q" form; the denominator is always written.
    [[nodiscard]] std::string str() const { return num_.str() + "/" + den_.str(); }

    /// Short form: "p" for integers, "p/q" otherwise.
    [[nodiscard]] std::string short_str() const {
        return is_integer() ? num_.str() : str();
    }

    /// Accepts "p", "p/q" and a leading sign on p.
    static Rational parse(std::string_view text) {
        auto parse_int = [](std::string_view s) {
            if (s.empty()) throw std::invalid_argument("Rational::parse: empty integer");
            std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
            if (i == s.size()) throw std::invalid_argument("Rational::parse: bare sign");
            for (std::size_t j = i; j < s.size(); ++j) {
                if (s[j] < '0' || s[j] > '9')
                    throw std::invalid_argument("Rational::parse: bad digit in '" + std::string(s) + "'");
            }
            if (s.front() == '+') s.remove_prefix(1);
            return BigInt(std::string(s));
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline BigInt factorial(int m) {
    if (m < 0) throw std::domain_error("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= m; ++i) r *= i;
    return r;
}

inline BigInt binomial(int m, int k) {
    if (k < 0 || m < 0 || k > m) return 0;
    if (k > m - k) k = m - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= m - k + i;
        r /= i;
    }
    return r;
}

/// m!! with (-1)!! = 0!! = 1.
inline BigInt double_factorial(int m) {
    if (m < -1) throw std::domain_error("double_factorial: argument below -1");
    BigInt r = 1;
    for (int i = m; i > 1; i -= 2) r *= i;
    return r;
}

/// (m)_j = m(m-1)...(m-j+1); zero once a factor reaches zero.
inline BigInt falling_factorial(int m, int j) {
    if (j < 0) throw std::domain_error("falling_factorial: negative length");
    BigInt r = 1;
    for (int i = 0; i < j; ++i) {
        if (m - i == 0) return 0;
        r *= m - i;
    }
    return r;
}

/// Bessel number a(n,k) = (n+k)! / (2^k k! (n-k)!), zero outside 0 <= k <= n.
inline BigInt bessel_closed(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    BigInt den = factorial(k) * factorial(n - k);
    den <<= k;
    return factorial(n + k) / den;
}

/// Rows 0..n_max of the Bessel-number triangle; rows[n] has n+1 entries.
struct BesselTriangle {
    std::vector<std::vector<BigInt>> rows;

    [[nodiscard]] int n_max() const noexcept { return static_cast<int>(rows.size()) - 1; }

    /// Zero outside the stored triangle.
    [[nodiscard]] BigInt at(int n, int k) const {
        if (n < 0 || k < 0 || n > n_max() || k > n) return 0;
        return rows[n][k];
    }

    friend bool operator==(const BesselTriangle&, const BesselTriangle&) = default;
};

/// Builds the triangle from a(n,k) = a(n-1,k) + (n-k+1) a(n,k-1), a(0,0) = 1.
inline BesselTriangle bessel_recurrence_table(int n_max) {
    if (n_max < 0) throw std::domain_error("bessel_recurrence_table: negative n_max");
    BesselTriangle t;
    t.rows.reserve(n_max + 1);
    t.rows.push_back({BigInt(1)});
    for (int n = 1; n <= n_max; ++n) {
        const auto& prev = t.rows.back();
        std::vector<BigInt> row(n + 1);
        for (int k = 0; k <= n; ++k) {
            BigInt above = k < n ? prev[k] : BigInt(0);
            BigInt left = k > 0 ? BigInt((n - k + 1) * row[k - 1]) : BigInt(0);
            row[k] = above + left;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Stirling numbers of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1).
inline BigInt stirling2(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    std::vector<BigInt> row{1};  // row 0
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> next(i + 1);
        for (int j = 1; j <= i; ++j) {
            BigInt stay = j < i ? BigInt(j * row[j]) : BigInt(0);
            next[j] = stay + row[j - 1];
        }
        row = std::move(next);
    }
    return row[k];
}

/// H_0..H_max, built once.
class HarmonicCache {
public:
    explicit HarmonicCache(int max_index) {
        if (max_index < 0) throw std::domain_error("HarmonicCache: negative size");
        values_.reserve(max_index + 1);
        values_.emplace_back(0);
        for (int m = 1; m <= max_index; ++m) values_.push_back(values_.back() + Rational(BigInt(1), BigInt(m)));
    }

    [[nodiscard]] const Rational& operator[](int m) const { return values_.at(m); }
    [[nodiscard]] int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }

private:
    std::vector<Rational> values_;
};

inline Rational harmonic(int m) {
    if (m < 0) throw std::domain_error("harmonic: negative index");
    Rational h;
    for (int k = 1; k <= m; ++k) h += Rational(BigInt(1), BigInt(k));
    return h;
}

/// y_n(x) = sum_k a(n,k) x^k, evaluated by Horner.
inline Rational bessel_poly_eval(int n, const Rational& x) {
    if (n < 0) throw std::domain_error("bessel_poly_eval: negative degree");
    Rational acc;
    for (int k = n; k >= 0; --k) acc = acc * x + Rational(bessel_closed(n, k));
    return acc;
}

/// OEIS A000806: y_n(-1).
inline BigInt a000806(int n) { return bessel_poly_eval(n, Rational(-1)).num(); }

}  // namespace opvolterra

#pragma once
// opalgebra.hpp - normal-ordered operator words c x^a I^b (and c x^a D^b),
// the integration-by-parts rewrite and the closed expansion of (xI)^n.
//
// Operators act on the left: the word x^a I^b maps f to x^a (I^b f), and
// composing "x I after T" means apply T, integrate from 0, multiply by x.

#include "exactnum.hpp"
#include "poly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opvolterra {

struct IntegralTag {
    static constexpr const char* symbol = "I";
    static constexpr const char* json_key = "i_pow";
};

struct DerivativeTag {
    static constexpr const char* symbol = "D";
    static constexpr const char* json_key = "d_pow";
};

/// Exponent pair (a, b) of x^a Op^b. Ordered by b first, then a.
struct TermKey {
    int x_pow = 0;
    int op_pow = 0;

    friend bool operator==(const TermKey&, const TermKey&) = default;
    friend auto operator<=>(const TermKey& l, const TermKey& r) {
        if (auto c = l.op_pow <=> r.op_pow; c != 0) return c;
        return l.x_pow <=> r.x_pow;
    }
};

template <class Tag>
struct Term {
    Rational coeff;
    int x_pow = 0;
    int op_pow = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Finite sum of normal-ordered words. Never stores a zero coefficient.
template <class Tag>
class TermSum {
public:
    using Map = std::map<TermKey, Rational>;

    TermSum() = default;

    static TermSum single(Rational c, int x_pow, int op_pow) {
        TermSum s;
        s.add(x_pow, op_pow, std::move(c));
        return s;
    }

    void add(int x_pow, int op_pow, const Rational& c) {
        if (x_pow < 0 || op_pow < 0) throw std::domain_error("TermSum: negative exponent");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(TermKey{x_pow, op_pow}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TermSum& operator+=(const TermSum& o) {
        for (const auto& [k, c] : o.terms_) add(k.x_pow, k.op_pow, c);
        return *this;
    }
    TermSum& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend TermSum operator+(TermSum a, const TermSum& b) { return a += b; }
    friend TermSum operator*(TermSum a, const Rational& c) { return a *= c; }

    friend bool operator==(const TermSum&, const TermSum&) = default;

    /// Left-multiplies every word by x^k.
    [[nodiscard]] TermSum times_x(int k) const {
        TermSum r;
        for (const auto& [key, c] : terms_) r.terms_.emplace(TermKey{key.x_pow + k, key.op_pow}, c);
        return r;
    }

    [[nodiscard]] const Map& terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    [[nodiscard]] Rational coeff(int x_pow, int op_pow) const {
        auto it = terms_.find(TermKey{x_pow, op_pow});
        return it == terms_.end() ? Rational() : it->second;
    }

    /// Terms in canonical order (ascending operator power).
    [[nodiscard]] std::vector<Term<Tag>> term_list() const {
        std::vector<Term<Tag>> out;
        out.reserve(terms_.size());
        for (const auto& [k, c] : terms_) out.push_back({c, k.x_pow, k.op_pow});
        return out;
    }

    /// Mutable access for fault-injection in the verification harness.
    Map& mutable_terms() noexcept { return terms_; }

private:
    Map terms_;
};

using OperatorTerm = Term<IntegralTag>;
using OperatorSum = TermSum<IntegralTag>;
using DerivativeSum = TermSum<DerivativeTag>;

/// (xI)^0.
inline OperatorSum identity_operator() { return OperatorSum::single(1, 0, 0); }

/// (xI)^n = sum_{k<n} (-1)^k a(n-1,k) x^{n-k} I^{n+k}, coefficients taken
/// from the supplied triangle.
inline OperatorSum expand_xI_closed(int n, const BesselTriangle& table) {
    if (n < 1) throw std::domain_error("expand_xI_closed: n must be >= 1 (use identity_operator for n = 0)");
    if (n - 1 > table.n_max()) throw std::out_of_range("expand_xI_closed: Bessel table too small");
    OperatorSum s;
    for (int k = 0; k <= n - 1; ++k) {
        Rational c(table.at(n - 1, k));
        s.add(n - k, n + k, k % 2 == 0 ? c : -c);
    }
    return s;
}

inline OperatorSum expand_xI_closed(int n) {
    if (n < 1) throw std::domain_error("expand_xI_closed: n must be >= 1 (use identity_operator for n = 0)");
    OperatorSum s;
    for (int k = 0; k <= n - 1; ++k) {
        Rational c(bessel_closed(n - 1, k));
        s.add(n - k, n + k, k % 2 == 0 ? c : -c);
    }
    return s;
}

/// I o (x^m I^j) = sum_{p=0}^{m} (-1)^p (m)_p x^{m-p} I^{j+p+1}.
inline OperatorSum ibp_step(int m, int j) {
    if (m < 0 || j < 0) throw std::domain_error("ibp_step: negative exponent");
    OperatorSum s;
    for (int p = 0; p <= m; ++p) {
        Rational c(falling_factorial(m, p));
        s.add(m - p, j + p + 1, p % 2 == 0 ? c : -c);
    }
    return s;
}

/// One application of x I on the left of an already normal-ordered sum.
inline OperatorSum compose_xI(const OperatorSum& inner) {
    OperatorSum out;
    for (const auto& [key, c] : inner.terms()) out += ibp_step(key.x_pow, key.op_pow).times_x(1) * c;
    return out;
}

/// (xI)^1 .. (xI)^n_max, each obtained from its predecessor by the rewrite.
inline std::vector<OperatorSum> power_by_rewrite_sequence(int n_max) {
    if (n_max < 1) throw std::domain_error("power_by_rewrite: n must be >= 1");
    std::vector<OperatorSum> levels;
    levels.reserve(n_max);
    levels.push_back(OperatorSum::single(1, 1, 1));
    for (int n = 2; n <= n_max; ++n) levels.push_back(compose_xI(levels.back()));
    return levels;
}

inline OperatorSum power_by_rewrite(int n) { return power_by_rewrite_sequence(n).back(); }

/// a(n,i) == sum_{k=0}^{min(n-1,i)} (n-k)_{i-k} a(n-1,k), using the table.
inline bool verify_combiden(int n, int i, const BesselTriangle& table) {
    if (n < 1 || i < 0 || i > n) throw std::domain_error("verify_combiden: need 0 <= i <= n, n >= 1");
    BigInt sum = 0;
    for (int k = 0; k <= std::min(n - 1, i); ++k) sum += falling_factorial(n - k, i - k) * table.at(n - 1, k);
    return sum == table.at(n, i);
}

inline bool verify_combiden(int n, int i) { return verify_combiden(n, i, bessel_recurrence_table(n)); }

/// (xD)^n = sum_k S(n,k) x^k D^k.
inline DerivativeSum expand_xD(int n) {
    if (n < 0) throw std::domain_error("expand_xD: negative n");
    DerivativeSum s;
    for (int k = 0; k <= n; ++k) s.add(k, k, Rational(stirling2(n, k)));
    return s;
}

/// Applies a derivative sum to x^m.
inline Poly apply_derivative_sum(const DerivativeSum& ops, int m) {
    Poly out;
    for (const auto& [key, c] : ops.terms()) {
        BigInt ff = falling_factorial(m, key.op_pow);
        if (ff == 0) continue;
        out += Poly::monomial(c * Rational(ff), m - key.op_pow + key.x_pow);
    }
    return out;
}

/// "x^3 I^3 - 3 x^2 I^4 + 3 x I^5"; fractional coefficients print as "p/q".
template <class Tag>
std::string to_string(const TermSum<Tag>& s) {
    if (s.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : s.terms()) {
        std::string body = detail::power_of("x", key.x_pow);
        const std::string op = detail::power_of(Tag::symbol, key.op_pow);
        if (!op.empty()) body += body.empty() ? op : " " + op;
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        const Rational mag = c.abs();
        if (body.empty()) {
            out += mag.short_str();
        } else {
            if (mag != Rational(1)) out += mag.short_str() + " ";
            out += body;
        }
    }
    return out;
}

}  // namespace opvolterra

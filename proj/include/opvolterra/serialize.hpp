#pragma once
// serialize.hpp - JSON shapes for operator sums, closed forms, Bessel
// triangles and oracle reports. Rationals are always "p/q" strings.

#include "apply.hpp"
#include "exactnum.hpp"
#include "numquad.hpp"
#include "opalgebra.hpp"
#include "poly.hpp"

#include <json.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <variant>

namespace opvolterra {

using Json = nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline Json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(v.convert_to<long long>());
    return Json(v.str());
}

inline BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>()).num();
    throw std::invalid_argument("bigint_from_json: expected integer or decimal string");
}

/// [{coeff: "p/q", x_pow, i_pow|d_pow}, ...] in canonical order.
template <class Tag>
Json to_json(const TermSum<Tag>& s) {
    Json arr = Json::array();
    for (const auto& [key, c] : s.terms()) arr.push_back({{"coeff", c.str()}, {"x_pow", key.x_pow}, {Tag::json_key, key.op_pow}});
    return arr;
}

template <class Tag>
TermSum<Tag> term_sum_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("operator sum JSON must be an array");
    TermSum<Tag> s;
    for (const auto& t : j) s.add(t.at("x_pow").template get<int>(), t.at(Tag::json_key).template get<int>(), Rational::parse(t.at("coeff").template get<std::string>()));
    return s;
}

inline OperatorSum operator_sum_from_json(const Json& j) { return term_sum_from_json<IntegralTag>(j); }

inline Json poly_coeffs_json(const Poly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline Poly poly_from_json(const Json& j) {
    std::vector<Rational> c;
    for (const auto& v : j) c.push_back(Rational::parse(v.get<std::string>()));
    return Poly(std::move(c));
}

using ClosedForm = std::variant<Poly, ExpForm, LogForm>;

inline Json to_json(const ClosedForm& f) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Poly>)
                return {{"kind", "poly"}, {"p", poly_coeffs_json(v)}, {"q", Json::array()}};
            else if constexpr (std::is_same_v<T, ExpForm>)
                return {{"kind", "exp"}, {"p", poly_coeffs_json(v.p)}, {"q", poly_coeffs_json(v.q)}};
            else
                return {{"kind", "log1p"}, {"p", poly_coeffs_json(v.p)}, {"q", poly_coeffs_json(v.q)}};
        },
        f);
}

inline ClosedForm closed_form_from_json(const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    Poly p = poly_from_json(j.at("p"));
    Poly q = poly_from_json(j.at("q"));
    if (kind == "poly") {
        if (!q.is_zero()) throw std::invalid_argument("poly closed form must have an empty q");
        return p;
    }
    if (kind == "exp") return ExpForm{std::move(p), std::move(q)};
    if (kind == "log1p") return LogForm{std::move(p), std::move(q)};
    throw std::invalid_argument("unknown closed-form kind '" + kind + "'");
}

inline std::string to_string(const ClosedForm& f) {
    return std::visit([](const auto& v) { return to_string(v); }, f);
}

inline Json to_json(const BesselTriangle& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(bigint_to_json(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Json to_json(const OracleReport& r) {
    return {{"method", to_string(r.method)},
            {"value", r.value},
            {"abs_error_estimate", r.abs_error_estimate},
            {"evaluations", r.evaluations}};
}

}  // namespace opvolterra

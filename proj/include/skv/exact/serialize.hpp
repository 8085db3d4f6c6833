#pragma once

#include <string>

#include "json.hpp"
#include "skv/errors.hpp"
#include "skv/exact/cyclotomic.hpp"

namespace skv {

using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j, const std::string& path = "$") {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>()), 10));
    if (!j.is_string()) throw FixtureError(path, "expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const InvalidArgument& e) {
        throw FixtureError(path, e.what());
    }
}

/// {"order": n, "coeffs": {"i": "num/den", ...}} with zero coefficients omitted.
inline Json to_json(const CyclotomicNumber& a) {
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (!a.coeffs()[i].is_zero()) coeffs[std::to_string(i)] = a.coeffs()[i].str();
    return Json{{"order", a.order()}, {"coeffs", std::move(coeffs)}};
}

inline CyclotomicNumber cyclotomic_from_json(const Json& j, const std::string& path = "$") {
    if (j.is_string() || j.is_number_integer()) return CyclotomicNumber(rational_from_json(j, path));
    if (!j.is_object()) throw FixtureError(path, "expected a cyclotomic number object");
    for (const auto& [k, v] : j.items())
        if (k != "order" && k != "coeffs") throw FixtureError(path + "." + k, "unknown field");
    if (!j.contains("order") || !j["order"].is_number_unsigned() || j["order"].get<std::uint64_t>() == 0)
        throw FixtureError(path + ".order", "expected a positive integer");
    const auto n = j["order"].get<std::uint64_t>();
    if (n > cyclotomic_order_cap().load()) throw ResourceError("cyclotomic order exceeds the configured cap");
    const auto phi = euler_phi(n);
    std::vector<Rational> c(phi);
    if (j.contains("coeffs")) {
        const auto& cj = j["coeffs"];
        if (!cj.is_object()) throw FixtureError(path + ".coeffs", "expected an object");
        for (const auto& [k, v] : cj.items()) {
            std::size_t idx = 0;
            try {
                std::size_t used = 0;
                idx = std::stoul(k, &used);
                if (used != k.size()) throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw FixtureError(path + ".coeffs." + k, "coefficient index must be a decimal integer");
            }
            if (idx >= phi) throw FixtureError(path + ".coeffs." + k, "index beyond phi(order)");
            c[idx] = rational_from_json(v, path + ".coeffs." + k);
        }
    }
    return CyclotomicNumber::from_basis(n, std::move(c));
}

}  // namespace skv

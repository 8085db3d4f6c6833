#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skv/ring/center.hpp"

namespace skv {

struct MembershipWitness {
    std::string character;      // label in the table being inspected
    std::optional<Elem> c;      // element of C in product mode
    CyclotomicNumber value;
};

struct MembershipResult {
    bool member = true;
    std::vector<MembershipWitness> failures;
};

namespace detail {

inline bool integral_at(const CyclotomicNumber& v, const std::optional<Integer>& p) {
    return p ? v.is_p_integral(*p) : v.is_algebraic_integer();
}

}  // namespace detail

/// Membership in the center of a maximal order, i.e. in the sum of the rings
/// of integers O_Q(chi). With `p`, only p-denominators count (the p-local order).
inline MembershipResult max_order_membership_full(const CentralElement& x,
                                                  const std::optional<Integer>& p = std::nullopt) {
    MembershipResult r;
    for (std::size_t i = 0; i < x.components().size(); ++i)
        if (!detail::integral_at(x[i], p)) {
            r.member = false;
            r.failures.push_back({x.table().label(i), std::nullopt, x[i]});
        }
    return r;
}

/// Character data of the factor H in G = H x C.
struct ProductDecomposition {
    DirectProduct parts;
    std::shared_ptr<const CharacterTable> h_table;
    std::vector<Elem> h_embedding;  // position in h_table's group -> element of G

    static ProductDecomposition make(const FiniteGroup& g, const DirectProduct& dp) {
        if (dp.h.size() * dp.c.size() != g.order() || (dp.h & dp.c).size() != 1)
            throw InvalidArgument("decomposition does not match the group");
        auto [hg, emb] = g.subgroup_as_group(dp.h);
        return {dp, std::make_shared<const CharacterTable>(CharacterTable::build(hg)), emb};
    }
};

/// Membership in zeta(M(H))[C]: writing x = sum_c x_c c with x_c central in QH,
/// every chi-component of every x_c must be integral.
inline MembershipResult max_order_membership_product(const CentralElement& x, const ProductDecomposition& d,
                                                     const std::optional<Integer>& p = std::nullopt) {
    const auto& g = x.table().group();
    if (d.h_embedding.size() * d.parts.c.size() != g.order())
        throw InvalidArgument("decomposition mismatch: element group is not H x C");
    auto ring = x.ring();
    MembershipResult r;
    const auto& ht = *d.h_table;
    for (std::size_t i = 0; i < ht.size(); ++i) {
        for (Elem c : d.parts.c.elements()) {
            CyclotomicNumber s;
            for (std::size_t pos = 0; pos < d.h_embedding.size(); ++pos) {
                const auto& coef = ring[g.mul(d.h_embedding[pos], c)];
                if (!coef.is_zero()) s += coef * ht.chi(i)(static_cast<Elem>(pos));
            }
            s = s.scaled(Rational(1, static_cast<long>(ht.chi(i).degree)));
            if (!detail::integral_at(s, p)) {
                r.member = false;
                r.failures.push_back({ht.label(i), c, s});
            }
        }
    }
    return r;
}

/// The minus part (1 - j)/2 * x for a central involution j.
struct MinusCentralElement {
    CentralElement base;
    Elem j = 0;
};

inline MinusCentralElement minus_project(const CentralElement& x, Elem j) {
    const auto& g = x.table().group();
    if (g.mul(j, j) != 0) throw InvalidArgument("minus_project: j is not an involution");
    for (Elem y = 0; y < g.order(); ++y)
        if (g.mul(j, y) != g.mul(y, j)) throw InvalidArgument("minus_project: j is not central");
    auto r = x;
    for (std::size_t i = 0; i < x.components().size(); ++i)
        if (!x.table().is_odd_at(i, j)) r[i] = CyclotomicNumber();
    return {std::move(r), j};
}

/// {"group": id, "components": {"chi_i": ...}, "coefficients": {"label": ...}}
inline Json to_json(const CentralElement& x, const std::string& group_id, bool with_ring = true) {
    Json comps = Json::object();
    for (std::size_t i = 0; i < x.components().size(); ++i) comps[x.table().label(i)] = to_json(x[i]);
    Json j{{"group", group_id}, {"components", std::move(comps)}};
    if (with_ring) {
        Json coeffs = Json::object();
        auto ring = x.ring();
        const auto& labels = x.table().group().labels();
        for (Elem e = 0; e < ring.coeffs().size(); ++e)
            if (!ring[e].is_zero()) coeffs[labels[e]] = to_json(ring[e]);
        j["coefficients"] = std::move(coeffs);
    }
    return j;
}

/// Parses the components view and, when present, checks it against the
/// coefficient view.
inline CentralElement central_from_json(const Json& j, std::shared_ptr<const CharacterTable> t,
                                        const std::string& path = "$") {
    if (!j.is_object()) throw FixtureError(path, "expected a central element object");
    for (const auto& [k, v] : j.items())
        if (k != "group" && k != "components" && k != "coefficients") throw FixtureError(path + "." + k, "unknown field");
    if (!j.contains("components") || !j["components"].is_object())
        throw FixtureError(path + ".components", "expected an object");
    std::vector<CyclotomicNumber> comps(t->size());
    for (const auto& [k, v] : j["components"].items()) {
        std::size_t i = 0;
        try {
            i = t->index_of_label(k);
        } catch (const InvalidArgument&) {
            throw FixtureError(path + ".components." + k, "unknown character label");
        }
        comps[i] = cyclotomic_from_json(v, path + ".components." + k);
    }
    CentralElement x(t, std::move(comps));
    if (j.contains("coefficients")) {
        const auto& labels = t->group().labels();
        GroupRingElement ring(t->group_ptr());
        for (const auto& [k, v] : j["coefficients"].items()) {
            auto it = std::find(labels.begin(), labels.end(), k);
            if (it == labels.end()) throw FixtureError(path + ".coefficients." + k, "unknown group element");
            ring[static_cast<Elem>(it - labels.begin())] = cyclotomic_from_json(v, path + ".coefficients." + k);
        }
        if (!(ring == x.ring())) throw FixtureError(path, "coefficient and component views disagree");
    }
    return x;
}

}  // namespace skv

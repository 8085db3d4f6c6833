#pragma once

#include <string>
#include <vector>

#include "skv/engine/theta.hpp"
#include "skv/rednorm/reduced_norm.hpp"

namespace skv {

namespace detail {

inline CentralElement nr_of(const RepresentationTable& reps, const GroupRingElement& x) {
    return reduced_norm(GroupRingMatrix(1, 1, x), reps);
}

/// 1 - e_I phi^-1 in QG_P, viewed in QG.
inline GroupRingElement euler_element(const std::shared_ptr<const FiniteGroup>& g, const PlaceData& p) {
    const auto e = GroupRingElement::norm_element(g, p.inertia)
                       .scaled(CyclotomicNumber(Rational(1, static_cast<long>(p.inertia.size()))));
    return GroupRingElement::scalar(g, 1) - GroupRingElement::basis(g, g->inv(p.frobenius)) * e;
}

inline std::vector<std::string> finite_labels(const ExtensionFixture& f, const std::vector<std::string>& s) {
    std::vector<std::string> out;
    for (const auto& l : s)
        if (f.place(l).finite()) out.push_back(l);
    return out;
}

inline void require_ram_in(const ExtensionFixture& f, const std::vector<std::string>& s) {
    for (const auto& l : f.ramified_labels())
        if (!contains(s, l)) throw InvalidArgument("S must contain the ramified place " + l);
    for (const auto& l : f.infinite_labels())
        if (!contains(s, l)) throw InvalidArgument("S must contain the infinite place " + l);
}

/// All products choosing one entry from each list, tags joined by " * ".
inline std::vector<TaggedElement> all_products(const std::shared_ptr<const CharacterTable>& t,
                                               const std::vector<std::vector<TaggedElement>>& lists, std::size_t cap,
                                               bool& truncated) {
    std::vector<TaggedElement> out{{CentralElement::one(t), ""}};
    for (const auto& choices : lists) {
        std::vector<TaggedElement> next;
        for (const auto& a : out)
            for (const auto& b : choices) {
                if (next.size() >= cap) {
                    truncated = true;
                    break;
                }
                next.push_back({a.value * b.value, a.tag.empty() ? b.tag : a.tag + " * " + b.tag});
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

/// U' generators: for every finite place of S one of nr(N_I) and
/// nr(1 - e_I phi^-1); all 2^(#finite places) products.
inline GeneratorSet u_prime_generators(const ExtensionFixture& f, const RepresentationTable& reps,
                                       const std::vector<std::string>& s) {
    const auto t = reps.table_ptr();
    const auto g = t->group_ptr();
    detail::require_ram_in(f, s);
    std::vector<std::vector<TaggedElement>> lists;
    for (const auto& l : detail::finite_labels(f, s)) {
        const auto& p = f.place(l);
        lists.push_back({{detail::nr_of(reps, GroupRingElement::norm_element(g, p.inertia)), l + ":nr(N_I)"},
                         {detail::nr_of(reps, detail::euler_element(g, p)), l + ":nr(1-e_I phi^-1)"}});
    }
    GeneratorSet out;
    bool truncated = false;
    out.generators = detail::all_products(t, lists, std::size_t(1) << 20, truncated);
    if (lists.empty()) out.generators.front().tag = "1";
    return out;
}

/// Truncated U generators: u_p = a N_I + b (1 - e_I phi^-1) with a, b in
/// {0} and {+-g : g in G_P}, at most `per_place` choices per place. The two
/// U' choices come first.
inline GeneratorSet u_generators(const ExtensionFixture& f, const RepresentationTable& reps, const std::vector<std::string>& s,
                                 std::size_t per_place = 8) {
    const auto t = reps.table_ptr();
    const auto g = t->group_ptr();
    detail::require_ram_in(f, s);
    GeneratorSet out;
    out.truncated = true;
    out.notes.push_back("U truncated: u_p = a N_I + b (1 - e_I phi^-1), a, b in {0, +-g}, at most " +
                        std::to_string(per_place) + " per place");
    std::vector<std::vector<TaggedElement>> lists;
    for (const auto& l : detail::finite_labels(f, s)) {
        const auto& p = f.place(l);
        const auto n = GroupRingElement::norm_element(g, p.inertia);
        const auto e = detail::euler_element(g, p);
        std::vector<std::pair<GroupRingElement, std::string>> coeffs{{GroupRingElement(g), "0"}};
        for (Elem x : p.decomposition.elements()) {
            coeffs.push_back({GroupRingElement::basis(g, x), "g" + std::to_string(x)});
            coeffs.push_back({-GroupRingElement::basis(g, x), "-g" + std::to_string(x)});
        }
        std::vector<TaggedElement> choices{{detail::nr_of(reps, n), l + ":nr(N_I)"},
                                           {detail::nr_of(reps, e), l + ":nr(1-e_I phi^-1)"}};
        for (const auto& [a, at] : coeffs)
            for (const auto& [b, bt] : coeffs) {
                if (choices.size() >= per_place) break;
                if (at == "0" && bt == "0") continue;
                if ((at == "g0" && bt == "0") || (at == "0" && bt == "g0")) continue;
                choices.push_back({detail::nr_of(reps, a * n + b * e), l + ":nr(" + at + "*N_I+" + bt + "*(1-e_I phi^-1))"});
            }
        lists.push_back(std::move(choices));
    }
    bool truncated = false;
    out.generators = detail::all_products(t, lists, 4096, truncated);
    if (truncated) out.notes.push_back("U products capped at 4096");
    return out;
}

/// L(0)^sharp = theta_{S_inf}(0).
inline ThetaElement l0_sharp(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t) {
    return theta_monomial(f, t, f.infinite_labels(), {}, 0);
}

namespace detail {

inline GeneratorSet sinnott_kurihara(const ExtensionFixture& f, const RepresentationTable& reps, const std::vector<std::string>& s,
                                     const GeneratorSet& u, std::size_t bound) {
    const auto t = reps.table_ptr();
    const auto a = generate_A_S(f, t, s, bound);
    const auto l0 = l0_sharp(f, t);
    GeneratorSet out;
    out.truncated = a.truncated || u.truncated;
    out.notes = a.notes;
    out.notes.insert(out.notes.end(), u.notes.begin(), u.notes.end());
    if (l0.uses_fixture_sources) out.notes.push_back("L(0) uses fixture-supplied sources; their analytic values are not verified");
    for (const auto& ag : a.generators)
        for (const auto& ug : u.generators)
            out.generators.push_back({ag.value * ug.value * l0.value, ag.tag + " * " + ug.tag + " * L(0)^sharp"});
    return out;
}

}  // namespace detail

/// SKu'(L/K, S) generators: delta_T(0) * u' * L(0)^sharp.
inline GeneratorSet sku_prime_generators(const ExtensionFixture& f, const RepresentationTable& reps,
                                         const std::vector<std::string>& s, std::size_t bound = 2) {
    return detail::sinnott_kurihara(f, reps, s, u_prime_generators(f, reps, s), bound);
}

/// Truncated SKu(L/K, S) generators.
inline GeneratorSet sku_generators(const ExtensionFixture& f, const RepresentationTable& reps, const std::vector<std::string>& s,
                                   std::size_t bound = 2, std::size_t per_place = 8) {
    return detail::sinnott_kurihara(f, reps, s, u_generators(f, reps, s, per_place), bound);
}

/// H_J: the normal subgroup generated by the inertia groups at the places of J.
inline ElementSet inertia_closure(const ExtensionFixture& f, const std::vector<std::string>& j) {
    const auto& g = *f.group;
    std::vector<Elem> gens;
    for (const auto& l : j)
        for (Elem i : f.place(l).inertia.elements())
            for (Elem x = 0; x < g.order(); ++x) gens.push_back(g.conj(i, x));
    return g.closure(gens);
}

struct InertiaTheta {
    CentralElement value;           // prod_{p in J} nr(N_I) * theta_{S_J}^T(r)
    ThetaElement theta;             // theta_{S_J}^T(r)
    ElementSet h_j;
    std::vector<std::string> s_j;
    bool vanishing_ok = true;       // nr-product vanishes where H_J is not in ker chi
    bool quotient_identity_ok = true;  // value = prod nr(N_I) * eps_{H_J} * theta
};

inline InertiaTheta theta_with_inertia_norms(const ExtensionFixture& f, const RepresentationTable& reps,
                                             const std::vector<std::string>& j, const std::vector<std::string>& s,
                                             const std::vector<std::string>& tt, std::int64_t r) {
    const auto t = reps.table_ptr();
    const auto g = t->group_ptr();
    for (const auto& l : j) {
        if (!f.place(l).finite() || !f.place(l).flags.ramified) throw InvalidArgument("J must consist of ramified places: " + l);
        if (!detail::contains(s, l)) throw InvalidArgument("J must lie in S: " + l);
    }
    InertiaTheta out;
    for (const auto& l : s)
        if (!detail::contains(j, l)) out.s_j.push_back(l);
    out.h_j = inertia_closure(f, j);
    auto norms = CentralElement::one(t);
    for (const auto& l : j) norms *= detail::nr_of(reps, GroupRingElement::norm_element(g, f.place(l).inertia));
    for (std::size_t i = 0; i < t->size(); ++i)
        if (!t->kernel_contains(i, out.h_j) && !norms[i].is_zero()) out.vanishing_ok = false;
    out.theta = theta_monomial(f, t, out.s_j, tt, r);
    out.value = norms * out.theta.value;
    out.quotient_identity_ok = out.value == norms * CentralElement::eps(t, out.h_j) * out.theta.value;
    return out;
}

/// All subsets of the ramified places of S, in lexicographic order of bitmasks.
inline std::vector<std::vector<std::string>> ramified_subsets(const ExtensionFixture& f, const std::vector<std::string>& s) {
    std::vector<std::string> ram;
    for (const auto& l : f.ramified_labels())
        if (detail::contains(s, l)) ram.push_back(l);
    std::vector<std::vector<std::string>> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << ram.size()); ++mask) {
        std::vector<std::string> j;
        for (std::size_t i = 0; i < ram.size(); ++i)
            if (mask >> i & 1) j.push_back(ram[i]);
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace skv

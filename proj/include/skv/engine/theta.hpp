#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "skv/arith/places.hpp"
#include "skv/lvalues/dirichlet.hpp"
#include "skv/ring/maximal_order.hpp"

namespace skv {

/// Some characters have neither a computed nor a declared L-value source.
class MissingSources : public Error {
public:
    explicit MissingSources(std::vector<std::string> missing)
        : Error("no theta source for: " + join(missing)), missing_(std::move(missing)) {}
    const std::vector<std::string>& missing() const noexcept { return missing_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
        return s;
    }
    std::vector<std::string> missing_;
};

/// theta_S^T(r): component i is L_S^T(r, dual chi_i), so theta^sharp has the
/// L-values at chi_i themselves.
struct ThetaElement {
    CentralElement value;
    std::vector<std::string> s, t;
    std::int64_t r = 0;
    std::vector<std::string> provenance;  // one entry per character
    bool uses_fixture_sources = false;

    CentralElement sharp() const { return value.sharp(); }
};

namespace detail {

inline std::set<std::uint64_t> residue_primes(const ExtensionFixture& f, const std::vector<std::string>& labels) {
    std::set<std::uint64_t> out;
    for (const auto& l : labels) {
        const auto& p = f.place(l);
        if (p.finite()) out.insert(p.q);
    }
    return out;
}

inline std::string subgroup_str(const ElementSet& u) {
    std::string s = "{";
    bool first = true;
    for (Elem x : u.elements()) {
        s += (first ? "" : ",") + std::to_string(x);
        first = false;
    }
    return s + "}";
}

inline std::string labels_str(const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + "}";
}

inline bool same_labels(std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace detail

/// Places of L^U above the given places of K: "label@k" with k indexing the
/// double cosets U x D in order of their smallest element.
inline std::vector<std::string> translate_places(const ExtensionFixture& f, const ElementSet& u,
                                                 const std::vector<std::string>& labels) {
    const auto& g = *f.group;
    std::vector<std::string> out;
    for (const auto& l : labels) {
        const auto& d = f.place(l).decomposition;
        ElementSet seen;
        std::size_t k = 0;
        for (Elem x = 0; x < g.order(); ++x) {
            if (seen.contains(x)) continue;
            for (Elem a : u.elements())
                for (Elem b : d.elements()) seen.insert(g.mul(g.mul(a, x), b));
            out.push_back(l + "@" + std::to_string(k++));
        }
    }
    return out;
}

/// The Dirichlet character chi o A for a linear character of G and the Artin map A.
inline DirichletCharacter dirichlet_of(const ExtensionFixture& f, const LinearCharacter& psi) {
    if (!f.cyclotomic) throw InvalidArgument("fixture " + f.name + " has no cyclotomic data");
    if (psi.domain.size() != f.group->order()) throw InvalidArgument("dirichlet_of needs a character of all of G");
    const auto& cd = *f.cyclotomic;
    std::vector<std::int64_t> e(cd.conductor, -1);
    for (std::uint64_t a = 0; a < cd.conductor; ++a)
        if (cd.artin[a] >= 0) e[a] = mod_floor(psi.exponent[static_cast<Elem>(cd.artin[a])], static_cast<std::int64_t>(psi.order));
    return DirichletCharacter::reduced(DirichletCharacter(cd.conductor, psi.order, std::move(e)));
}

/// H(r) from the complex places of L.
inline ElementSet h_of_r(const ExtensionFixture& f, std::int64_t r) {
    return subgroup_H_r(*f.group, f.complex_conjugations(), r);
}

/// L_S^T(r, psi) for a linear character psi of G through the Artin map.
inline CyclotomicNumber computed_value(const ExtensionFixture& f, const LinearCharacter& psi, const std::vector<std::string>& s,
                                       const std::vector<std::string>& t, std::int64_t r) {
    return L_ST(r, dirichlet_of(f, psi), detail::residue_primes(f, s), detail::residue_primes(f, t));
}

/// Looks up the declared value at psi for the subextension cut out by U.
/// Returns nullopt with a reason when no table covers the request.
inline std::optional<CyclotomicNumber> declared_value(const ExtensionFixture& f, const LinearCharacter& psi,
                                                      const std::vector<std::string>& s, const std::vector<std::string>& t,
                                                      std::int64_t r, std::string& why, std::string& provenance) {
    const auto& u = psi.domain;
    const auto s1 = translate_places(f, u, s);
    const auto t1 = translate_places(f, u, t);
    for (const auto& src : f.sources) {
        if (!(src.subgroup == u)) continue;
        for (const auto& tab : src.tables) {
            if (tab.r != r || !detail::same_labels(tab.s, s1) || !detail::same_labels(tab.t, t1)) continue;
            for (const auto& [chi, value] : tab.values) {
                bool eq = true;
                for (Elem x : u.elements()) eq = eq && chi.value(x) == psi.value(x);
                if (eq) {
                    provenance = "source " + src.tag + ": " + src.provenance;
                    return value;
                }
            }
            why = "source " + src.tag + " lacks the character";
            return std::nullopt;
        }
        why = "source " + src.tag + " has no table for r=" + std::to_string(r) + " S'=" + detail::labels_str(s1) +
              " T'=" + detail::labels_str(t1);
        return std::nullopt;
    }
    why = "no source for U=" + detail::subgroup_str(u);
    return std::nullopt;
}

namespace detail {

inline LinearCharacter conj_linear(LinearCharacter psi) {
    for (Elem x : psi.domain.elements())
        psi.exponent[x] = mod_floor(-psi.exponent[x], static_cast<std::int64_t>(psi.order));
    return psi;
}

/// Galois equivariance: theta_{sigma_k chi} = sigma_k(theta_chi).
inline void require_equivariant(const CentralElement& x) {
    const auto& t = x.table();
    const auto n = static_cast<std::int64_t>(t.value_order());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::int64_t k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            if (!(x[t.galois_image(i, k)] == x[i].galois(k)))
                throw InvalidArgument("theta sources are not Galois-equivariant at " + t.label(i) + " under z -> z^" +
                                      std::to_string(k));
        }
}

}  // namespace detail

/// theta_S^T(r) through the monomial certificates of the table: the component
/// at chi = ind_U^G psi is L^T'_S'(r, psi^-1) over L^U, taken from the Artin
/// map when U = G and from a declared source otherwise. Components outside
/// the characters with H(r) in their kernel vanish. Without `force_vanishing`
/// every component comes from its source as is.
inline ThetaElement theta_monomial(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t,
                                   const std::vector<std::string>& s, const std::vector<std::string>& tt, std::int64_t r,
                                   bool force_vanishing = true) {
    if (r > 0) throw InvalidArgument("theta is assembled for r <= 0");
    detail::require_known(f, s);
    detail::require_known(f, tt);
    for (const auto& l : f.infinite_labels())
        if (!detail::contains(s, l)) throw InvalidArgument("S must contain the infinite place " + l);
    const auto h = h_of_r(f, r);
    ThetaElement out;
    out.s = s;
    out.t = tt;
    out.r = r;
    std::vector<CyclotomicNumber> comps;
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < t->size(); ++i) {
        const auto& cert = t->certificate(i);
        const bool forced = force_vanishing && !t->kernel_contains(i, h);
        const auto psi = detail::conj_linear(cert.psi);
        std::optional<CyclotomicNumber> v;
        std::string why, prov;
        if (cert.psi.domain.size() == f.group->order()) {
            if (f.cyclotomic) {
                v = computed_value(f, psi, s, tt, r);
                prov = "computed from the Artin map of conductor " + std::to_string(f.cyclotomic->conductor);
            } else {
                why = "no cyclotomic data for the linear character";
            }
        } else {
            v = declared_value(f, psi, s, tt, r, why, prov);
            if (v && !forced) out.uses_fixture_sources = true;
        }
        if (forced) {
            if (v && !v->is_zero())
                throw InvalidArgument("source value at " + t->label(i) + " is nonzero although H(r) is not in its kernel");
            if (!v) prov = "forced vanishing: H(r) not in the kernel";
            v = CyclotomicNumber();
        }
        if (!v) {
            missing.push_back(t->label(i) + " (U=" + detail::subgroup_str(cert.psi.domain) + "): " + why);
            comps.emplace_back();
        } else {
            comps.push_back(*v);
        }
        out.provenance.push_back(t->label(i) + ": " + prov);
    }
    if (!missing.empty()) throw MissingSources(std::move(missing));
    out.value = CentralElement(t, std::move(comps));
    detail::require_equivariant(out.value);
    return out;
}

/// theta_S^T(r) for abelian G, entirely from the Artin map.
inline ThetaElement theta_abelian(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t,
                                  const std::vector<std::string>& s, const std::vector<std::string>& tt, std::int64_t r) {
    if (!f.group->is_abelian()) throw InvalidArgument("theta_abelian needs an abelian group");
    if (!f.cyclotomic) throw InvalidArgument("theta_abelian needs cyclotomic data");
    ElementSet image;
    for (auto a : f.cyclotomic->artin)
        if (a >= 0) image.insert(static_cast<Elem>(a));
    if (image.size() != f.group->order()) throw InvalidArgument("Artin map is not onto G: the embedding is not faithful");
    return theta_monomial(f, t, s, tt, r);
}

/// prod over the given places of nr(1 - N^-r phi^-1 e_I): theta_(S + X) = this * theta_S.
inline CentralElement euler_factors(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t,
                                    const std::vector<std::string>& labels, std::int64_t r) {
    auto e = CentralElement::one(t);
    for (const auto& l : labels) e *= local_factor_element(t, f.place(l), r, FactorKind::euler_S);
    return e;
}

/// omega_L = nr(|mu_L|) = the scalar w.
inline CentralElement omega_L(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t) {
    return CentralElement::scalar(t, CyclotomicNumber(Rational(static_cast<long>(f.mu.order))));
}

inline Json to_json(const ThetaElement& th, const std::string& group_id) {
    Json j;
    j["element"] = to_json(th.value, group_id);
    j["S"] = th.s;
    j["T"] = th.t;
    j["r"] = th.r;
    j["sharp_convention"] = "component chi of theta is L_S^T(r, dual chi)";
    j["provenance"] = th.provenance;
    j["fixture_sources"] = th.uses_fixture_sources;
    return j;
}

}  // namespace skv

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "skv/arith/fixture.hpp"
#include "skv/rednorm/reduced_norm.hpp"

namespace skv {

struct CheckResult {
    bool ok = true;
    std::vector<std::string> reasons;

    void fail(std::string why) {
        ok = false;
        reasons.push_back(std::move(why));
    }
};

/// A central element together with where it came from.
struct TaggedElement {
    CentralElement value;
    std::string tag;
};

struct GeneratorSet {
    std::vector<TaggedElement> generators;
    bool truncated = false;
    std::vector<std::string> notes;
};

namespace detail {

inline void require_known(const ExtensionFixture& f, const std::vector<std::string>& labels) {
    for (const auto& l : labels) (void)f.place(l);
}

inline bool contains(const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace detail

/// Sufficient criterion for E_S^T torsion-free: some place of T has residue
/// characteristic prime to w = |mu_L|. A declared override decides otherwise.
inline CheckResult torsion_free_criterion(const ExtensionFixture& f, const std::vector<std::string>& t,
                                          const std::optional<bool>& override_value = std::nullopt,
                                          const std::string& provenance = {}) {
    CheckResult r;
    const auto w = f.mu.order;
    if (w == 1) return r;
    for (const auto& l : t) {
        const auto& p = f.place(l);
        if (p.finite() && w % p.q != 0) return r;
    }
    if (override_value) {
        if (!*override_value) r.fail("E_S^T declared not torsion-free (" + provenance + ")");
        else r.reasons.push_back("torsion-free by declared override (" + provenance + ")");
        return r;
    }
    r.fail("no place of T has residue characteristic prime to w = " + std::to_string(w));
    return r;
}

/// Hyp(S, T): S contains S_ram and S_inf, S and T are disjoint, E_S^T is torsion-free.
inline CheckResult check_hyp_ST(const ExtensionFixture& f, const PlaceSets& sets) {
    detail::require_known(f, sets.s);
    detail::require_known(f, sets.t);
    CheckResult r;
    for (const auto& l : f.infinite_labels())
        if (!detail::contains(sets.s, l)) r.fail("(i) infinite place " + l + " missing from S");
    for (const auto& l : f.ramified_labels())
        if (!detail::contains(sets.s, l)) r.fail("(i) ramified place " + l + " missing from S");
    for (const auto& l : sets.t) {
        if (detail::contains(sets.s, l)) r.fail("(ii) place " + l + " lies in S and T");
        if (!f.place(l).finite()) r.fail("(ii) infinite place " + l + " in T");
    }
    auto tf = torsion_free_criterion(f, sets.t, sets.torsion_free, sets.torsion_provenance);
    for (auto& why : tf.reasons) (tf.ok ? r.reasons.push_back("(iii) " + why) : r.fail("(iii) " + why));
    return r;
}

/// (p, r)-admissibility; for r < 0 this is Hyp(S, T).
inline CheckResult check_admissible(const ExtensionFixture& f, const PlaceSets& sets, std::uint64_t p, std::int64_t r) {
    if (r > 0) throw InvalidArgument("admissibility is defined for r <= 0");
    if (r < 0) return check_hyp_ST(f, sets);
    detail::require_known(f, sets.s);
    detail::require_known(f, sets.t);
    CheckResult out;
    for (const auto& l : f.infinite_labels())
        if (!detail::contains(sets.s, l)) out.fail("infinite place " + l + " missing from S");
    for (const auto& l : f.ramified_labels()) {
        const auto& pl = f.place(l);
        if (pl.q != p && !detail::contains(sets.s, l) && !detail::contains(sets.t, l))
            out.fail("(i) non-" + std::to_string(p) + "-adic ramified place " + l + " is in neither S nor T");
        if (pl.q == p && pl.flags.wild && !detail::contains(sets.s, l))
            out.fail("(ii) wildly ramified " + std::to_string(p) + "-adic place " + l + " missing from S");
    }
    for (const auto& l : sets.t) {
        if (detail::contains(sets.s, l)) out.fail("(iii) place " + l + " lies in S and T");
        if (!f.place(l).finite()) out.fail("(iii) infinite place " + l + " in T");
    }
    std::vector<std::string> t_nr;
    for (const auto& l : sets.t)
        if (f.place(l).finite() && !f.place(l).flags.ramified) t_nr.push_back(l);
    auto tf = torsion_free_criterion(f, t_nr, sets.torsion_free, sets.torsion_provenance);
    for (auto& why : tf.reasons) (tf.ok ? out.reasons.push_back("(iv) " + why) : out.fail("(iv) " + why));
    return out;
}

enum class FactorKind { delta_T, euler_S };

/// det(1 - N^k rho(phi^-1) | V^I) with k = 1 - r (delta_T) or -r (euler_S).
/// With P = |I|^-1 sum_{i in I} rho(i) the projector onto V^I, this equals
/// det(1 - N^k rho(phi^-1) P) on all of V.
inline CyclotomicNumber local_factor(const FiniteGroup& g, const PlaceData& place, const MonomialCertificate& cert,
                                     std::int64_t r, FactorKind kind) {
    if (!place.finite()) throw InvalidArgument("local factors are defined at finite places only");
    if (r > 0) throw InvalidArgument("local factors are evaluated at r <= 0");
    const auto rho = monomial_representation(g, cert);
    const std::size_t d = static_cast<std::size_t>(cert.character.degree);
    const CyclotomicNumber zero, one(1);
    CycMatrix proj(d, d, zero);
    for (Elem i : place.inertia.elements()) proj += rho[i].dense();
    proj = proj.map([&](const CyclotomicNumber& x) { return x.scaled(Rational(1, static_cast<long>(place.inertia.size()))); });
    const auto k = static_cast<unsigned>(kind == FactorKind::delta_T ? 1 - r : -r);
    const Rational nk = Rational(static_cast<long>(place.norm)).pow(k);
    auto m = rho[g.inv(place.frobenius)].dense() * proj;
    auto a = CycMatrix::identity(d, zero, one) - m.map([&](const CyclotomicNumber& x) { return x.scaled(nk); });
    return determinant(a, zero, one);
}

/// The local factor at every character, as a central element.
inline CentralElement local_factor_element(const std::shared_ptr<const CharacterTable>& t, const PlaceData& place,
                                           std::int64_t r, FactorKind kind) {
    std::vector<CyclotomicNumber> c;
    for (std::size_t i = 0; i < t->size(); ++i) c.push_back(local_factor(t->group(), place, t->certificate(i), r, kind));
    return CentralElement(t, std::move(c));
}

/// delta_T(r) = prod_{p in T} delta_p(r).
inline CentralElement delta_T(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t,
                              const std::vector<std::string>& labels, std::int64_t r) {
    auto d = CentralElement::one(t);
    for (const auto& l : labels) d *= local_factor_element(t, f.place(l), r, FactorKind::delta_T);
    return d;
}

/// Truncated generators of A_S: delta_T(0) for T drawn from the fixture pool,
/// 1 <= |T| <= bound, with Hyp(S, T).
inline GeneratorSet generate_A_S(const ExtensionFixture& f, const std::shared_ptr<const CharacterTable>& t,
                                 const std::vector<std::string>& s, std::size_t bound = 2) {
    detail::require_known(f, s);
    GeneratorSet out;
    out.truncated = true;
    out.notes.push_back("A_S truncated at |T| <= " + std::to_string(bound) + " over the declared pool");
    std::vector<std::string> cand;
    for (const auto& l : f.pool)
        if (!detail::contains(s, l)) cand.push_back(l);
    if (cand.empty()) out.notes.push_back("warning: empty place pool");
    const std::size_t n = cand.size();
    for (std::size_t size = 1; size <= std::min(bound, n); ++size) {
        std::vector<std::size_t> sel(size);
        std::iota(sel.begin(), sel.end(), 0);
        while (true) {
            PlaceSets ps;
            ps.s = s;
            for (auto i : sel) ps.t.push_back(cand[i]);
            if (check_hyp_ST(f, ps).ok) {
                std::string tag = "delta_T(0), T={";
                for (std::size_t i = 0; i < ps.t.size(); ++i) tag += (i ? "," : "") + ps.t[i];
                out.generators.push_back({delta_T(f, t, ps.t, 0), tag + "}"});
            }
            std::size_t i = size;
            while (i > 0 && sel[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++sel[i - 1];
            for (std::size_t k = i; k < size; ++k) sel[k] = sel[k - 1] + 1;
        }
    }
    if (out.generators.empty()) out.notes.push_back("warning: no admissible T within the truncation bound");
    return out;
}

namespace detail {

inline std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Does every unit u mod lcm(n, f) with Artin image in [G, G] satisfy u^k = 1 mod n?
inline bool tate_level_ok(const CyclotomicData& cd, const std::vector<Elem>& key, std::uint64_t n, std::uint64_t k) {
    const auto m = lcm_u(n, cd.conductor);
    for (std::uint64_t u = 1; u < m + 1; ++u) {
        if (std::gcd(u, m) != 1) continue;
        if (key[static_cast<Elem>(cd.artin[u % cd.conductor])] != 0) continue;
        if (powmod(u, k, n) != 1 % n) return false;
    }
    return true;
}

/// Maps each element to the smallest element of its [G, G]-coset.
inline std::vector<Elem> abelianization_keys(const FiniteGroup& g) {
    return coset_keys(g, g.commutator_subgroup(g.all()));
}

inline void require_cyclotomic(const ExtensionFixture& f) {
    if (!f.cyclotomic) throw InvalidArgument("fixture " + f.name + " carries no cyclotomic data");
}

}  // namespace detail

/// Largest n dividing `bound` with Gal(L(zeta_n) / L) acting trivially on
/// mu_n^(tensor k): the order of (Q/Z)(k)^(G_L) when `bound` is large enough.
/// Only L^[G,G] meets Q(zeta_n), so the Artin map of G/[G,G] suffices.
inline std::uint64_t tate_order(const ExtensionFixture& f, std::uint64_t k, std::uint64_t bound) {
    detail::require_cyclotomic(f);
    if (bound == 0) throw InvalidArgument("tate_order needs a positive search bound");
    const auto key = detail::abelianization_keys(*f.group);
    std::uint64_t w = 1;
    for (auto [p, e] : detail::factor(bound)) {
        std::uint64_t best = 1, pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            if (!detail::tate_level_ok(*f.cyclotomic, key, pe, k)) break;
            best = pe;
        }
        w *= best;
    }
    return w;
}

/// kappa(g)^k mod w: any unit u whose Artin image lies in g[G, G], raised to k.
inline std::vector<std::uint64_t> tate_action(const ExtensionFixture& f, std::uint64_t k, std::uint64_t w) {
    detail::require_cyclotomic(f);
    const auto& cd = *f.cyclotomic;
    const auto key = detail::abelianization_keys(*f.group);
    const auto m = detail::lcm_u(w, cd.conductor);
    std::map<Elem, std::uint64_t> by_key;
    for (std::uint64_t u = 1; u < m + 1; ++u) {
        if (std::gcd(u, m) != 1) continue;
        const auto c = key[static_cast<Elem>(cd.artin[u % cd.conductor])];
        const auto v = detail::powmod(u, k, w);
        auto [it, fresh] = by_key.emplace(c, v);
        if (!fresh && it->second != v)
            throw InternalError("Galois action on the Tate twist is not well defined at level " + std::to_string(w));
    }
    std::vector<std::uint64_t> a(f.group->order(), 0);
    for (Elem g = 0; g < f.group->order(); ++g) a[g] = by_key.at(key[g]);
    return a;
}

/// Z-basis (Hermite form) of the annihilator in ZG of Z/w with g acting by a_g.
inline std::vector<GroupRingElement> cyclic_annihilator(const std::shared_ptr<const FiniteGroup>& g, std::uint64_t w,
                                                        const std::vector<std::uint64_t>& a) {
    const auto n = g->order();
    std::vector<IntVector> rows;
    IntVector first(n, 0);
    first[0] = Integer(static_cast<unsigned long>(w));
    rows.push_back(first);
    for (Elem x = 1; x < n; ++x) {
        IntVector v(n, 0);
        v[x] = 1;
        v[0] = -Integer(static_cast<unsigned long>(a[x]));
        rows.push_back(v);
    }
    std::vector<GroupRingElement> out;
    for (const auto& h : hermite_rows(rows)) {
        GroupRingElement e(g);
        for (Elem x = 0; x < n; ++x) e[x] = CyclotomicNumber(Rational(h[x]));
        out.push_back(std::move(e));
    }
    return out;
}

/// Does x (integral) kill Z/w with g acting by a_g?
inline bool kills_cyclic(const GroupRingElement& x, std::uint64_t w, const std::vector<std::uint64_t>& a) {
    Integer s = 0;
    for (Elem e = 0; e < x.coeffs().size(); ++e) {
        const auto q = x[e].as_rational();
        if (!q || !q->is_integer()) throw InvalidArgument("kills_cyclic needs an integral element");
        s += q->num() * Integer(static_cast<unsigned long>(a[e]));
    }
    return s % Integer(static_cast<unsigned long>(w)) == 0;
}

struct TateAnnihilator {
    std::int64_t r = -1;
    std::uint64_t w = 1;                  // w_(1-r)(L)
    std::vector<std::uint64_t> action;    // g -> kappa(g)^(1-r) mod w
    std::vector<GroupRingElement> generators;
};

/// Ann_ZG(mu_(1-r)(L)) computed from the module action, r < 0.
inline TateAnnihilator mu_tate_annihilators(const ExtensionFixture& f, std::int64_t r) {
    if (r >= 0) throw InvalidArgument("mu_(1-r) annihilators are for r < 0");
    detail::require_cyclotomic(f);
    if (f.cyclotomic->tate_bound == 0) throw InvalidArgument("fixture " + f.name + " declares no tate_bound");
    TateAnnihilator t;
    t.r = r;
    const auto k = static_cast<std::uint64_t>(1 - r);
    t.w = tate_order(f, k, f.cyclotomic->tate_bound);
    t.action = tate_action(f, k, t.w);
    t.generators = cyclic_annihilator(f.group, t.w, t.action);
    return t;
}

/// Hyp(S, T) plus, for r < 0, an unramified place of T with residue
/// characteristic prime to w_(1-r)(L). Then delta_T(r) kills mu_(1-r)(L),
/// which plain Hyp(S, T) does not ensure (Q, T = {3}, r = -1).
inline CheckResult check_hyp_twisted(const ExtensionFixture& f, const PlaceSets& sets, std::int64_t r) {
    auto out = check_hyp_ST(f, sets);
    if (r >= 0) return out;
    if (!f.cyclotomic || f.cyclotomic->tate_bound == 0) {
        out.fail("(iii') w_(1-r)(L) unknown: the fixture declares no cyclotomic data or tate_bound");
        return out;
    }
    const auto w = tate_order(f, static_cast<std::uint64_t>(1 - r), f.cyclotomic->tate_bound);
    for (const auto& l : sets.t) {
        const auto& p = f.place(l);
        if (p.finite() && !p.flags.ramified && w % p.q != 0) return out;
    }
    out.fail("(iii') no unramified place of T has residue characteristic prime to w_" + std::to_string(1 - r) +
             "(L) = " + std::to_string(w));
    return out;
}

/// Differences between the declared local data and the Artin map, compared
/// modulo [G, G]. Empty when consistent or when no cyclotomic data is present.
inline std::vector<std::string> artin_consistency(const ExtensionFixture& f) {
    std::vector<std::string> out;
    if (!f.cyclotomic) return out;
    const auto& g = *f.group;
    const auto& cd = *f.cyclotomic;
    const auto comm = g.commutator_subgroup(g.all());
    const auto key = detail::coset_keys(g, comm);
    auto image = [&](const ElementSet& s) {
        std::set<Elem> k;
        for (Elem x : s.elements()) k.insert(key[x]);
        return k;
    };
    const std::int64_t fc = static_cast<std::int64_t>(cd.conductor);
    // homomorphism and surjectivity modulo [G, G]
    std::set<Elem> reached;
    for (std::int64_t a = 1; a < fc + 1; ++a) {
        if (std::gcd(a, fc) != 1) continue;
        const auto ga = static_cast<Elem>(cd.artin[a % fc]);
        reached.insert(key[ga]);
        for (std::int64_t b = 1; b < fc + 1; ++b) {
            if (std::gcd(b, fc) != 1) continue;
            const auto gb = static_cast<Elem>(cd.artin[b % fc]);
            if (key[g.mul(ga, gb)] != key[static_cast<Elem>(cd.artin[(a * b) % fc])]) {
                out.push_back("Artin map is not a homomorphism modulo [G,G]");
                return out;
            }
        }
    }
    if (reached.size() * comm.size() != g.order()) out.push_back("Artin map is not onto G/[G,G]");
    for (const auto& p : f.places) {
        if (p.flags.infinite) {
            ElementSet d;
            d.insert(0);
            d.insert(static_cast<Elem>(cd.artin[static_cast<std::size_t>(fc - 1) % cd.conductor]));
            if (image(p.decomposition) != image(d)) out.push_back("place " + p.label + ": decomposition group disagrees with the Artin image of -1");
            continue;
        }
        std::uint64_t fprime = cd.conductor;
        while (fprime % p.q == 0) fprime /= p.q;
        const auto qk = cd.conductor / fprime;
        ElementSet inert;
        Elem frob = 0;
        for (std::uint64_t u = 1; u < cd.conductor + 1; ++u) {
            if (std::gcd(u, cd.conductor) != 1) continue;
            if (u % fprime == 1 % fprime) inert.insert(static_cast<Elem>(cd.artin[u % cd.conductor]));
            if (u % fprime == p.q % fprime && u % qk == 1 % qk) frob = static_cast<Elem>(cd.artin[u % cd.conductor]);
        }
        if (image(p.inertia) != image(g.closure(inert.elements())))
            out.push_back("place " + p.label + ": inertia group disagrees with the Artin map");
        auto dgens = inert.elements();
        dgens.push_back(frob);
        if (image(p.decomposition) != image(g.closure(dgens)))
            out.push_back("place " + p.label + ": decomposition group disagrees with the Artin map");
        // Frobenius agrees modulo inertia and [G, G]
        auto ic = p.inertia;
        for (Elem c : comm.elements()) ic.insert(c);
        ic = g.closure(ic.elements());
        if (!ic.contains(g.mul(p.frobenius, g.inv(frob)))) out.push_back("place " + p.label + ": Frobenius disagrees with the Artin map");
        if (p.norm != p.q) out.push_back("place " + p.label + ": base field Q needs N(p) = q");
    }
    {
        // mu_L lies in L^[G,G], so w and its action are read off the Artin map
        const auto w = tate_order(f, 1, detail::lcm_u(2, cd.conductor));
        if (w != f.mu.order) out.push_back("mu: declared w = " + std::to_string(f.mu.order) + ", Artin map gives " + std::to_string(w));
        else if (tate_action(f, 1, w) != f.mu.action) out.push_back("mu: declared action disagrees with the Artin map");
    }
    return out;
}

}  // namespace skv

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "skv/errors.hpp"
#include "skv/exact/cyclotomic.hpp"
#include "skv/groups/finite_group.hpp"

namespace skv {

/// Class function stored per element (constant on classes).
struct Character {
    std::vector<CyclotomicNumber> values;
    std::int64_t degree = 0;

    const CyclotomicNumber& operator()(Elem g) const { return values[g]; }
    friend bool operator==(const Character& a, const Character& b) { return a.values == b.values; }
};

/// Linear character of a subgroup U: psi(u) = z_order^exponent[u].
struct LinearCharacter {
    ElementSet domain;
    std::uint64_t order = 1;
    std::vector<std::int64_t> exponent;  // indexed by group element, -1 off the domain

    CyclotomicNumber value(Elem u) const {
        if (!domain.contains(u)) throw InvalidArgument("linear character evaluated off its domain");
        return CyclotomicNumber::root_of_unity(order, exponent[u]);
    }
};

struct MonomialCertificate {
    Character character;
    LinearCharacter psi;  // character == ind_U^G psi with U = psi.domain
};

/// <a, b> = |G|^-1 sum a(g) conj(b(g)).
inline CyclotomicNumber inner_product(const FiniteGroup& g, const Character& a, const Character& b) {
    CyclotomicNumber s;
    for (Elem x = 0; x < g.order(); ++x) s += a(x) * b(x).conj();
    return s.scaled(Rational(1, static_cast<long>(g.order())));
}

/// Every linear character of U with values in mu_order (order must be a
/// multiple of the exponent of U). Enumerated by assigning exponents to a
/// generating set and keeping the consistent assignments; the trivial
/// character comes first.
inline std::vector<LinearCharacter> linear_characters(const FiniteGroup& g, const ElementSet& u,
                                                      std::uint64_t order) {
    const auto gens = g.generators_of(u);
    std::vector<std::uint64_t> steps;  // exponent of a generator is a multiple of order / ord(gen)
    for (Elem s : gens) {
        auto o = g.element_order(s);
        if (order % o != 0) throw InvalidArgument("linear character order must be a multiple of the exponent");
        steps.push_back(order / o);
    }
    std::vector<std::uint64_t> choice(gens.size(), 0);
    std::vector<LinearCharacter> out;
    while (true) {
        LinearCharacter psi;
        psi.domain = u;
        psi.order = order;
        psi.exponent.assign(g.order(), -1);
        psi.exponent[0] = 0;
        std::vector<Elem> queue{0};
        bool ok = true;
        for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
            Elem x = queue[qi];
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Elem y = g.mul(x, gens[i]);
                auto val = static_cast<std::int64_t>((psi.exponent[x] + choice[i] * steps[i]) % order);
                if (psi.exponent[y] < 0) {
                    psi.exponent[y] = val;
                    queue.push_back(y);
                } else if (psi.exponent[y] != val) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out.push_back(std::move(psi));
        std::size_t i = 0;
        for (; i < gens.size(); ++i) {
            if (++choice[i] < g.element_order(gens[i])) break;
            choice[i] = 0;
        }
        if (i == gens.size()) break;
    }
    return out;
}

/// Checks psi(ab) = psi(a) psi(b) on its domain.
inline void check_multiplicative(const FiniteGroup& g, const LinearCharacter& psi) {
    auto el = psi.domain.elements();
    if (!g.is_subgroup(psi.domain)) throw InvalidArgument("linear character domain is not a subgroup");
    const auto o = static_cast<std::int64_t>(psi.order);
    for (Elem a : el)
        for (Elem b : el)
            if (mod_floor(psi.exponent[a] + psi.exponent[b] - psi.exponent[g.mul(a, b)], o) != 0)
                throw InvalidArgument("linear character is not multiplicative");
}

/// ind_U^G psi by the Frobenius formula.
inline Character induce_character(const FiniteGroup& g, const LinearCharacter& psi) {
    check_multiplicative(g, psi);
    const auto usize = static_cast<long>(psi.domain.size());
    Character chi;
    chi.degree = static_cast<std::int64_t>(g.order()) / usize;
    chi.values.reserve(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        std::vector<Rational> counts(psi.order);
        for (Elem y = 0; y < g.order(); ++y) {
            Elem c = g.conj(x, y);
            if (psi.domain.contains(c)) counts[static_cast<std::size_t>(psi.exponent[c])] += Rational(1);
        }
        for (auto& c : counts) c /= Rational(usize);
        chi.values.push_back(CyclotomicNumber::from_powers(psi.order, std::move(counts)));
    }
    return chi;
}

/// Character of G induced from a class function `theta` of the subgroup U
/// (given per element of G, ignored off U).
inline Character induce_class_function(const FiniteGroup& g, const ElementSet& u, const Character& theta) {
    Character chi;
    chi.degree = theta.degree * static_cast<std::int64_t>(g.order() / u.size());
    for (Elem x = 0; x < g.order(); ++x) {
        CyclotomicNumber s;
        for (Elem y = 0; y < g.order(); ++y) {
            Elem c = g.conj(x, y);
            if (u.contains(c)) s += theta(c);
        }
        chi.values.push_back(s.scaled(Rational(1, static_cast<long>(u.size()))));
    }
    return chi;
}

/// Irreducible characters of a monomial group with certificates, plus the
/// bookkeeping every consumer needs (classes, contragredients, Galois action).
class CharacterTable {
public:
    static CharacterTable build(const FiniteGroup& g) {
        CharacterTable t;
        t.group_ = std::make_shared<const FiniteGroup>(g);
        t.classes_ = g.conjugacy_classes();
        t.class_of_.assign(g.order(), 0);
        for (std::size_t c = 0; c < t.classes_.size(); ++c)
            for (Elem e : t.classes_[c]) t.class_of_[e] = c;
        t.order_ = g.exponent();
        const auto n = static_cast<std::int64_t>(g.order());
        std::int64_t sum_sq = 0;
        const CyclotomicNumber one(1);
        for (const auto& u : g.subgroups()) {  // largest U first
            if (sum_sq == n) break;
            if (t.certs_.size() == t.classes_.size()) break;
            for (auto& psi : linear_characters(g, u, t.order_)) {
                auto chi = induce_character(g, psi);
                if (std::any_of(t.certs_.begin(), t.certs_.end(),
                                [&](const MonomialCertificate& c) { return c.character == chi; }))
                    continue;
                if (!(inner_product(g, chi, chi) == one)) continue;
                sum_sq += chi.degree * chi.degree;
                t.certs_.push_back({std::move(chi), std::move(psi)});
                if (sum_sq == n) break;
            }
        }
        if (sum_sq != n) throw InvalidArgument("group not monomial (or search exhausted)");
        std::stable_sort(t.certs_.begin() + 1, t.certs_.end(),
                         [](const MonomialCertificate& a, const MonomialCertificate& b) {
                             return a.character.degree < b.character.degree;
                         });
        t.finish();
        return t;
    }

    const FiniteGroup& group() const { return *group_; }
    std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
    std::size_t size() const { return certs_.size(); }
    const Character& chi(std::size_t i) const { return certs_[i].character; }
    const MonomialCertificate& certificate(std::size_t i) const { return certs_[i]; }
    const std::vector<std::vector<Elem>>& classes() const { return classes_; }
    std::size_t class_of(Elem g) const { return class_of_[g]; }
    /// Common cyclotomic order of all character values (the group exponent).
    std::uint64_t value_order() const { return order_; }
    std::string label(std::size_t i) const { return "chi_" + std::to_string(i); }

    std::size_t index_of_label(const std::string& label) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (this->label(i) == label) return i;
        throw InvalidArgument("unknown character label " + label);
    }

    /// Index of the contragredient character.
    std::size_t dual(std::size_t i) const { return dual_[i]; }

    /// Index of z -> z^k applied to chi_i (k coprime to the value order).
    std::size_t galois_image(std::size_t i, std::int64_t k) const {
        const auto n = static_cast<std::int64_t>(order_);
        auto kk = static_cast<std::size_t>(mod_floor(k, n));
        if (std::gcd(static_cast<std::int64_t>(kk), n) != 1 && n > 1)
            throw InvalidArgument("galois_image: exponent not coprime to the value order");
        return galois_[i][kk];
    }

    /// Galois orbits of characters, each sorted; orbits ordered by smallest member.
    const std::vector<std::vector<std::size_t>>& galois_orbits() const { return orbits_; }

    std::size_t index_of(const Character& c) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (chi(i) == c) return i;
        throw InternalError("character not found in table");
    }

    /// True when H is contained in ker(chi_i).
    bool kernel_contains(std::size_t i, const ElementSet& h) const {
        const CyclotomicNumber deg(chi(i).degree);
        for (Elem x : h.elements())
            if (!(chi(i)(x) == deg)) return false;
        return true;
    }

    /// chi(j) = -chi(1).
    bool is_odd_at(std::size_t i, Elem j) const { return chi(i)(j) == CyclotomicNumber(-chi(i).degree); }

private:
    void finish() {
        const auto n = static_cast<std::int64_t>(order_);
        galois_.assign(size(), std::vector<std::size_t>(static_cast<std::size_t>(n), 0));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::int64_t k = 0; k < n; ++k) {
                if (std::gcd(k, n) != 1) continue;
                Character c;
                for (const auto& v : chi(i).values) c.values.push_back(v.galois(k));
                galois_[i][static_cast<std::size_t>(k)] = index_of(c);
            }
        dual_.resize(size());
        for (std::size_t i = 0; i < size(); ++i) dual_[i] = galois_image(i, -1);
        std::vector<bool> seen(size(), false);
        for (std::size_t i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            std::vector<std::size_t> orbit;
            for (std::int64_t k = 0; k < n; ++k) {
                if (std::gcd(k, n) != 1) continue;
                auto j = galois_image(i, k);
                if (!seen[j]) {
                    seen[j] = true;
                    orbit.push_back(j);
                }
            }
            std::sort(orbit.begin(), orbit.end());
            orbits_.push_back(std::move(orbit));
        }
    }

    std::shared_ptr<const FiniteGroup> group_;
    std::vector<std::vector<Elem>> classes_;
    std::vector<std::size_t> class_of_;
    std::uint64_t order_ = 1;
    std::vector<MonomialCertificate> certs_;
    std::vector<std::size_t> dual_;
    std::vector<std::vector<std::size_t>> orbits_;
    std::vector<std::vector<std::size_t>> galois_;  // [chi][k mod order]
};

/// irreducibles_monomial as a plain list of certificates.
inline std::vector<MonomialCertificate> irreducibles_monomial(const FiniteGroup& g) {
    auto t = CharacterTable::build(g);
    std::vector<MonomialCertificate> out;
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.certificate(i));
    return out;
}

}  // namespace skv

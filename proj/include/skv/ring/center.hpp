#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skv/errors.hpp"
#include "skv/exact/serialize.hpp"
#include "skv/groups/characters.hpp"
#include "skv/ring/group_ring.hpp"

namespace skv {

/// Element of the center of QG, held as its tuple of character components
/// (component at chi = scalar by which the element acts on V_chi). The group
/// ring view is reconstructed through the central idempotents on demand.
class CentralElement {
public:
    CentralElement() = default;
    CentralElement(std::shared_ptr<const CharacterTable> t, std::vector<CyclotomicNumber> comps)
        : t_(std::move(t)), comp_(std::move(comps)) {
        if (comp_.size() != t_->size()) throw InvalidArgument("component count differs from the character count");
    }

    static CentralElement scalar(std::shared_ptr<const CharacterTable> t, const CyclotomicNumber& s) {
        std::vector<CyclotomicNumber> c(t->size(), s);
        return CentralElement(std::move(t), std::move(c));
    }

    static CentralElement one(std::shared_ptr<const CharacterTable> t) { return scalar(std::move(t), 1); }

    /// to_components: rejects non-central input, naming a conjugate pair.
    static CentralElement from_ring(std::shared_ptr<const CharacterTable> t, const GroupRingElement& x) {
        std::pair<Elem, Elem> w;
        if (!x.is_central(&w))
            throw InvalidArgument("element is not central: coefficient of " + std::to_string(w.first) +
                                  " differs from its conjugate by " + std::to_string(w.second));
        std::vector<CyclotomicNumber> comps;
        const auto& g = t->group();
        for (std::size_t i = 0; i < t->size(); ++i) {
            CyclotomicNumber s;
            for (Elem e = 0; e < g.order(); ++e)
                if (!x[e].is_zero()) s += x[e] * t->chi(i)(e);
            comps.push_back(s.scaled(Rational(1, static_cast<long>(t->chi(i).degree))));
        }
        return CentralElement(std::move(t), std::move(comps));
    }

    /// e_chi = chi(1)/|G| sum chi(g^-1) g
    static CentralElement idempotent(std::shared_ptr<const CharacterTable> t, std::size_t i) {
        std::vector<CyclotomicNumber> c(t->size());
        c.at(i) = CyclotomicNumber(1);
        return CentralElement(std::move(t), std::move(c));
    }

    /// eps_H = |H|^-1 N_H for normal H: component 1 where H is in ker chi.
    static CentralElement eps(std::shared_ptr<const CharacterTable> t, const ElementSet& h) {
        if (!t->group().is_subgroup(h) || !t->group().is_normal(h))
            throw InvalidArgument("eps_H needs a normal subgroup");
        std::vector<CyclotomicNumber> c;
        for (std::size_t i = 0; i < t->size(); ++i) c.emplace_back(t->kernel_contains(i, h) ? 1 : 0);
        return CentralElement(std::move(t), std::move(c));
    }

    const CharacterTable& table() const { return *t_; }
    const std::shared_ptr<const CharacterTable>& table_ptr() const { return t_; }
    const std::vector<CyclotomicNumber>& components() const { return comp_; }
    const CyclotomicNumber& operator[](std::size_t i) const { return comp_[i]; }
    CyclotomicNumber& operator[](std::size_t i) { return comp_[i]; }

    /// Group ring view: coefficient of g is sum_chi comp_chi chi(1)/|G| chi(g^-1).
    GroupRingElement ring() const {
        const auto& g = t_->group();
        GroupRingElement x(t_->group_ptr());
        const Rational inv_order(1, static_cast<long>(g.order()));
        for (std::size_t i = 0; i < t_->size(); ++i) {
            if (comp_[i].is_zero()) continue;
            auto w = comp_[i].scaled(Rational(static_cast<long>(t_->chi(i).degree)) * inv_order);
            for (Elem e = 0; e < g.order(); ++e) x[e] += w * t_->chi(i)(g.inv(e));
        }
        return x;
    }

    /// Components Galois-equivariant: comp(chi^k) = comp(chi)^k. Exactly the
    /// condition for the group ring view to have rational coefficients.
    bool is_rational() const {
        const auto n = t_->value_order();
        for (std::size_t i = 0; i < comp_.size(); ++i) {
            const auto m = static_cast<std::int64_t>(std::lcm(comp_[i].order(), n));
            const auto c = comp_[i].lift(static_cast<std::uint64_t>(m));
            for (std::int64_t k = 2; k < m; ++k) {
                if (std::gcd(k, m) != 1) continue;
                if (!(comp_[t_->galois_image(i, k)] == c.galois(k))) return false;
            }
        }
        return true;
    }

    /// Contragredient swap: (x^sharp)_chi = x_{dual chi}.
    CentralElement sharp() const {
        std::vector<CyclotomicNumber> c(comp_.size());
        for (std::size_t i = 0; i < comp_.size(); ++i) c[i] = comp_[t_->dual(i)];
        return CentralElement(t_, std::move(c));
    }

    CentralElement& operator+=(const CentralElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
        return *this;
    }
    CentralElement& operator-=(const CentralElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
        return *this;
    }
    CentralElement& operator*=(const CentralElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] = comp_[i] * o.comp_[i];
        return *this;
    }
    friend CentralElement operator+(CentralElement a, const CentralElement& b) { return a += b; }
    friend CentralElement operator-(CentralElement a, const CentralElement& b) { return a -= b; }
    friend CentralElement operator*(CentralElement a, const CentralElement& b) { return a *= b; }

    CentralElement scaled(const CyclotomicNumber& s) const {
        CentralElement r = *this;
        for (auto& c : r.comp_) c = c * s;
        return r;
    }

    bool is_zero() const {
        for (const auto& c : comp_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const CentralElement& a, const CentralElement& b) {
        return a.comp_.size() == b.comp_.size() && a.comp_ == b.comp_;
    }

private:
    void check_same(const CentralElement& o) const {
        if (t_ != o.t_ && !(t_->group() == o.t_->group()))
            throw InvalidArgument("central elements over different groups");
    }

    std::shared_ptr<const CharacterTable> t_;
    std::vector<CyclotomicNumber> comp_;
};

}  // namespace skv

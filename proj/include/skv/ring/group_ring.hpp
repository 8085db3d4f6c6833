#pragma once

#include <memory>
#include <string>
#include <vector>

#include "skv/errors.hpp"
#include "skv/exact/cyclotomic.hpp"
#include "skv/groups/finite_group.hpp"

namespace skv {

/// Element of K[G] for a cyclotomic field K (rational coefficients by default).
///
/// Coefficients are kept densely, one per group element; the groups in play
/// have order at most 128, and dense storage keeps multiplication a plain
/// double loop over the table.
class GroupRingElement {
public:
    GroupRingElement() = default;
    explicit GroupRingElement(std::shared_ptr<const FiniteGroup> g)
        : g_(std::move(g)), c_(g_->order()) {}

    static GroupRingElement scalar(std::shared_ptr<const FiniteGroup> g, const CyclotomicNumber& s) {
        GroupRingElement x(std::move(g));
        x.c_[0] = s;
        return x;
    }

    static GroupRingElement basis(std::shared_ptr<const FiniteGroup> g, Elem e) {
        GroupRingElement x(std::move(g));
        x.c_.at(e) = CyclotomicNumber(1);
        return x;
    }

    /// N_H = sum of the elements of H.
    static GroupRingElement norm_element(std::shared_ptr<const FiniteGroup> g, const ElementSet& h) {
        GroupRingElement x(std::move(g));
        for (Elem e : h.elements()) x.c_[e] = CyclotomicNumber(1);
        return x;
    }

    const FiniteGroup& group() const { return *g_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const { return g_; }
    const CyclotomicNumber& operator[](Elem e) const { return c_[e]; }
    CyclotomicNumber& operator[](Elem e) { return c_[e]; }
    const std::vector<CyclotomicNumber>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// All coefficients in Z (membership in ZG).
    bool is_integral() const {
        for (const auto& c : c_)
            if (!c.is_rational() || !c.coeffs()[0].is_integer()) return false;
        return true;
    }

    bool is_rational() const {
        for (const auto& c : c_)
            if (!c.is_rational()) return false;
        return true;
    }

    /// Coefficients constant on conjugacy classes. On failure `witness` holds (g, x)
    /// with coeff(g) != coeff(x^-1 g x).
    bool is_central(std::pair<Elem, Elem>* witness = nullptr) const {
        for (Elem a = 0; a < g_->order(); ++a)
            for (Elem x = 0; x < g_->order(); ++x)
                if (!(c_[a] == c_[g_->conj(a, x)])) {
                    if (witness) *witness = {a, x};
                    return false;
                }
        return true;
    }

    /// g -> g^-1 extended linearly.
    GroupRingElement sharp() const {
        GroupRingElement r(g_);
        for (Elem a = 0; a < g_->order(); ++a) r.c_[g_->inv(a)] = c_[a];
        return r;
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator-(GroupRingElement a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        a.check_same(b);
        GroupRingElement r(a.g_);
        const auto& g = *a.g_;
        for (Elem x = 0; x < g.order(); ++x) {
            if (a.c_[x].is_zero()) continue;
            for (Elem y = 0; y < g.order(); ++y) {
                if (b.c_[y].is_zero()) continue;
                r.c_[g.mul(x, y)] += a.c_[x] * b.c_[y];
            }
        }
        return r;
    }

    GroupRingElement scaled(const CyclotomicNumber& s) const {
        GroupRingElement r = *this;
        for (auto& c : r.c_) c = c * s;
        return r;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return *a.g_ == *b.g_ && a.c_ == b.c_;
    }

    /// e.g. "1/2*g0 - g3"
    std::string str() const {
        std::string out;
        const auto& labels = g_->labels();
        for (Elem e = 0; e < c_.size(); ++e) {
            if (c_[e].is_zero()) continue;
            std::string coef = c_[e].str();
            if (!c_[e].is_rational()) coef = "(" + coef + ")";
            if (!out.empty()) out += " + ";
            out += (coef == "1" ? "" : coef + "*") + labels[e];
        }
        return out.empty() ? "0" : out;
    }

private:
    void check_same(const GroupRingElement& o) const {
        if (!g_ || !o.g_ || (g_ != o.g_ && !(*g_ == *o.g_)))
            throw InvalidArgument("group ring elements over different groups");
    }

    std::shared_ptr<const FiniteGroup> g_;
    std::vector<CyclotomicNumber> c_;
};

}  // namespace skv

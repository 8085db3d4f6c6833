#pragma once

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "skv/exact/serialize.hpp"
#include "skv/groups/characters.hpp"
#include "skv/lvalues/bernoulli.hpp"

namespace skv {

/// The unit group (Z/f)^x with its residues; residue 1 is element 0.
struct UnitGroup {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> residues;  // element -> residue
    std::vector<std::int64_t> index;      // residue -> element, -1 if not a unit
    FiniteGroup group;

    static UnitGroup make(std::uint64_t f) {
        if (f == 0) throw InvalidArgument("modulus must be positive");
        UnitGroup u;
        u.modulus = f;
        u.index.assign(f, -1);
        u.residues.push_back(1 % f);
        for (std::uint64_t a = 2; a < f; ++a)
            if (std::gcd(a, f) == 1) u.residues.push_back(a);
        if (f <= 2) u.residues = {f == 1 ? 0u : 1u};
        for (std::size_t i = 0; i < u.residues.size(); ++i) u.index[u.residues[i]] = static_cast<std::int64_t>(i);
        std::vector<std::vector<Elem>> t(u.residues.size(), std::vector<Elem>(u.residues.size()));
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j)
                t[i][j] = static_cast<Elem>(u.index[(u.residues[i] * u.residues[j]) % f]);
        std::vector<std::string> labels;
        for (auto r : u.residues) labels.push_back(std::to_string(r));
        u.group = FiniteGroup::from_table(t, labels);
        return u;
    }
};

/// A Dirichlet character mod f with values in mu_order, stored as exponents per
/// residue (-1 on residues not coprime to f).
class DirichletCharacter {
public:
    DirichletCharacter() : DirichletCharacter(1, 1, {0}) {}

    /// Validates multiplicativity and that exponents are defined exactly on units.
    DirichletCharacter(std::uint64_t modulus, std::uint64_t order, std::vector<std::int64_t> exponent)
        : f_(modulus), order_(order), exp_(std::move(exponent)) {
        if (f_ == 0 || order_ == 0) throw InvalidArgument("modulus and order must be positive");
        if (exp_.size() != f_) throw InvalidArgument("character needs one exponent per residue");
        for (std::uint64_t a = 0; a < f_; ++a) {
            const bool unit = std::gcd(a, f_) == 1;
            if (unit != (exp_[a] >= 0)) throw InvalidArgument("character exponent support differs from the units mod f");
            if (unit) exp_[a] %= static_cast<std::int64_t>(order_);
        }
        if (exp_[1 % f_] != 0) throw InvalidArgument("character is not 1 at 1");
        for (std::uint64_t a = 0; a < f_; ++a)
            for (std::uint64_t b = a; b < f_; ++b) {
                if (exp_[a] < 0 || exp_[b] < 0) continue;
                if ((exp_[a] + exp_[b]) % static_cast<std::int64_t>(order_) != exp_[(a * b) % f_])
                    throw InvalidArgument("character is not multiplicative");
            }
    }

    static DirichletCharacter trivial(std::uint64_t f = 1) {
        std::vector<std::int64_t> e(f);
        for (std::uint64_t a = 0; a < f; ++a) e[a] = std::gcd(a, f) == 1 ? 0 : -1;
        return {f, 1, e};
    }

    std::uint64_t modulus() const { return f_; }
    std::uint64_t order() const { return order_; }
    const std::vector<std::int64_t>& exponents() const { return exp_; }

    /// chi(a) for any integer a; zero off the units.
    CyclotomicNumber operator()(std::int64_t a) const {
        const auto e = exponent_at(a);
        return e < 0 ? CyclotomicNumber() : CyclotomicNumber::root_of_unity(order_, e);
    }

    std::int64_t exponent_at(std::int64_t a) const {
        return exp_[static_cast<std::size_t>(mod_floor(a, static_cast<std::int64_t>(f_)))];
    }

    bool is_trivial() const {
        for (auto e : exp_)
            if (e > 0) return false;
        return true;
    }

    bool is_even() const { return exponent_at(-1) == 0; }

    /// Smallest d | f such that chi is trivial on units congruent to 1 mod d.
    std::uint64_t conductor() const {
        for (std::uint64_t d = 1; d <= f_; ++d) {
            if (f_ % d != 0) continue;
            bool ok = true;
            for (std::uint64_t a = 1; a < f_ && ok; a += d)
                if (exp_[a] > 0) ok = false;
            if (ok) return d;
        }
        return f_;
    }

    bool is_primitive() const { return conductor() == f_; }

    /// The primitive character mod the conductor inducing this one.
    DirichletCharacter primitive() const {
        const auto d = conductor();
        std::vector<std::int64_t> e(d, -1);
        for (std::uint64_t b = 0; b < d; ++b) {
            if (std::gcd(b, d) != 1) continue;
            for (std::uint64_t a = b % d; a < f_ + d * f_; a += d)
                if (std::gcd(a % f_, f_) == 1) {
                    e[b] = exp_[a % f_];
                    break;
                }
        }
        return reduced({d, order_, std::move(e)});
    }

    /// Complex conjugate character.
    DirichletCharacter dual() const {
        auto e = exp_;
        for (auto& x : e)
            if (x > 0) x = static_cast<std::int64_t>(order_) - x;
        return {f_, order_, std::move(e)};
    }

    /// Order shrunk to the exact order of the value group.
    static DirichletCharacter reduced(const DirichletCharacter& c) {
        std::int64_t g = static_cast<std::int64_t>(c.order_);
        for (auto x : c.exp_)
            if (x > 0) g = std::gcd(g, x);
        auto e = c.exp_;
        for (auto& x : e)
            if (x > 0) x /= g;
        return {c.f_, c.order_ / static_cast<std::uint64_t>(g), std::move(e)};
    }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        if (a.f_ != b.f_) return false;
        for (std::size_t i = 0; i < a.exp_.size(); ++i) {
            if (a.exp_[i] >= 0 && a(static_cast<std::int64_t>(i)) != b(static_cast<std::int64_t>(i))) return false;
        }
        return true;
    }

private:
    std::uint64_t f_;
    std::uint64_t order_;
    std::vector<std::int64_t> exp_;
};

/// All characters mod f, each with its exact order.
inline std::vector<DirichletCharacter> all_characters(std::uint64_t f) {
    const auto u = UnitGroup::make(f);
    const auto lambda = static_cast<std::uint64_t>(u.group.exponent());
    std::vector<DirichletCharacter> out;
    for (const auto& psi : linear_characters(u.group, u.group.all(), lambda)) {
        std::vector<std::int64_t> e(f, -1);
        for (Elem x = 0; x < u.group.order(); ++x) e[u.residues[x]] = psi.exponent[x];
        if (f == 1) e[0] = 0;
        out.push_back(DirichletCharacter::reduced({f, lambda, std::move(e)}));
    }
    return out;
}

/// All primitive characters of conductor exactly f.
inline std::vector<DirichletCharacter> primitive_characters(std::uint64_t f) {
    std::vector<DirichletCharacter> out;
    for (auto& c : all_characters(f))
        if (c.is_primitive()) out.push_back(std::move(c));
    return out;
}

/// B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f), chi primitive.
inline CyclotomicNumber generalized_bernoulli(unsigned n, const DirichletCharacter& chi) {
    if (n == 0) throw InvalidArgument("generalized Bernoulli index must be positive");
    if (!chi.is_primitive()) throw InvalidArgument("generalized Bernoulli number of an imprimitive character");
    const auto f = chi.modulus();
    const auto bn = bernoulli_polynomial(n);
    std::vector<Rational> powers(chi.order());
    for (std::uint64_t a = 1; a <= f; ++a) {
        const auto e = chi.exponent_at(static_cast<std::int64_t>(a));
        if (e < 0) continue;
        powers[static_cast<std::size_t>(e)] += bn(Rational(static_cast<long>(a), static_cast<long>(f)));
    }
    return CyclotomicNumber::from_powers(chi.order(), std::move(powers))
        .scaled(Rational(ipow(Integer(static_cast<unsigned long>(f)), n - 1)));
}

/// L(r, chi) for r <= 0 and primitive chi: L(1-n, chi) = -B_{n,chi}/n.
inline CyclotomicNumber L_at_nonpositive(std::int64_t r, const DirichletCharacter& chi) {
    if (r > 0) throw InvalidArgument("L-values are computed at non-positive integers only");
    const auto n = static_cast<unsigned>(1 - r);
    return generalized_bernoulli(n, chi).scaled(Rational(-1, static_cast<long>(n)));
}

/// q^e for e possibly negative.
inline Rational rational_power(std::uint64_t q, std::int64_t e) {
    const Rational b(static_cast<long>(q));
    return e >= 0 ? b.pow(static_cast<unsigned>(e)) : b.pow(static_cast<unsigned>(-e)).inverse();
}

/// delta_T(r, chi^) = prod_{q in T} (1 - chi_prim(q) q^(1-r)): the Frobenius
/// inverse acts on the dual line by chi(q), and only through inertia invariants.
inline CyclotomicNumber delta_T_dual(std::int64_t r, const DirichletCharacter& chi, const std::set<std::uint64_t>& t) {
    const auto p = chi.primitive();
    CyclotomicNumber d(1);
    for (auto q : t) d = d * (CyclotomicNumber(1) - p(static_cast<std::int64_t>(q)).scaled(rational_power(q, 1 - r)));
    return d;
}

/// L_S(r, chi) = L(r, chi_prim) prod_{q in S} (1 - chi_prim(q) q^-r).
inline CyclotomicNumber L_S(std::int64_t r, const DirichletCharacter& chi, const std::set<std::uint64_t>& s) {
    const auto p = chi.primitive();
    auto v = L_at_nonpositive(r, p);
    for (auto q : s) v = v * (CyclotomicNumber(1) - p(static_cast<std::int64_t>(q)).scaled(rational_power(q, -r)));
    return v;
}

/// L_S^T(r, chi) = delta_T(r, chi^) L_S(r, chi) for disjoint finite prime sets S, T.
inline CyclotomicNumber L_ST(std::int64_t r, const DirichletCharacter& chi, const std::set<std::uint64_t>& s,
                             const std::set<std::uint64_t>& t) {
    for (auto q : t)
        if (s.count(q)) throw InvalidArgument("S and T overlap at " + std::to_string(q));
    return delta_T_dual(r, chi, t) * L_S(r, chi, s);
}

inline Json to_json(const DirichletCharacter& c) {
    Json values = Json::object();
    for (std::uint64_t a = 0; a < c.modulus(); ++a)
        if (c.exponents()[a] >= 0) values[std::to_string(a)] = c.exponents()[a];
    return {{"modulus", c.modulus()}, {"order", c.order()}, {"values", values}};
}

/// {"modulus": f, "order": m, "values": {a: exponent}}; every unit residue must be listed.
inline DirichletCharacter dirichlet_from_json(const Json& j, const std::string& path = "$") {
    if (!j.is_object()) throw FixtureError(path, "character must be an object");
    for (const auto& [k, v] : j.items())
        if (k != "modulus" && k != "order" && k != "values") throw FixtureError(path + "." + k, "unknown key");
    if (!j.contains("modulus") || !j["modulus"].is_number_unsigned()) throw FixtureError(path + ".modulus", "expected a positive integer");
    if (!j.contains("order") || !j["order"].is_number_unsigned()) throw FixtureError(path + ".order", "expected a positive integer");
    if (!j.contains("values") || !j["values"].is_object()) throw FixtureError(path + ".values", "expected an object");
    const auto f = j["modulus"].get<std::uint64_t>();
    const auto m = j["order"].get<std::uint64_t>();
    if (f == 0 || m == 0) throw FixtureError(path, "modulus and order must be positive");
    std::vector<std::int64_t> e(f, -1);
    for (const auto& [k, v] : j["values"].items()) {
        std::uint64_t a = 0;
        try {
            std::size_t used = 0;
            a = std::stoull(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw FixtureError(path + ".values." + k, "residue key is not an integer");
        }
        if (a >= f) throw FixtureError(path + ".values." + k, "residue out of range");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw FixtureError(path + ".values." + k, "expected a non-negative exponent");
        e[a] = v.get<std::int64_t>();
    }
    try {
        return DirichletCharacter(f, m, std::move(e));
    } catch (const InvalidArgument& ex) {
        throw FixtureError(path, ex.what());
    }
}

}  // namespace skv

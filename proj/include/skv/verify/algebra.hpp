#pragma once

#include <random>
#include <string>

#include "skv/groups/small_groups.hpp"
#include "skv/rednorm/fitting.hpp"
#include "skv/verify/verdict.hpp"

namespace skv {

namespace detail {

inline GroupRingMatrix scalar_matrix(const GroupRingElement& x, std::size_t b) {
    auto m = group_ring_identity(x.group_ptr(), b);
    return m.map([&](const GroupRingElement& e) { return e * x; });
}

inline MatrixGroupRingElement random_sigma_input(const std::shared_ptr<const FiniteGroup>& c, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    MatrixGroupRingElement m{c, {}};
    for (Elem x = 0; x < c->order(); ++x) {
        CycMatrix part(2, 2, CyclotomicNumber());
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) part(i, j) = CyclotomicNumber(Rational(num(rng), den(rng)));
        m.parts.push_back(std::move(part));
    }
    return m;
}

}  // namespace detail

/// Randomized algebra properties over ZG for one named group: nr
/// multiplicativity, the star adjoint identities, (A B)* = B* A*, the sigma
/// ring law over the center, integrality of nr and |G| A*, and the
/// orthogonality of the central idempotents. A fault is added to nr(A) of the
/// first instance.
inline Verdict check_algebra(const std::string& group_name, std::uint64_t seed, std::size_t instances = 100,
                             std::optional<Rational> fault = std::nullopt) {
    Verdict v("algebra", group_name);
    v.provenance.push_back("seed " + std::to_string(seed) + ", " + std::to_string(instances) + " instances per property");
    const auto g = std::make_shared<const FiniteGroup>(small_groups::named(group_name));
    const auto t = std::make_shared<const CharacterTable>(CharacterTable::build(*g));
    const RepresentationTable reps(t);
    const auto tg = t->group_ptr();
    const Rational order(static_cast<long>(g->order()));

    std::int64_t degrees = 0;
    for (std::size_t i = 0; i < t->size(); ++i) degrees += t->chi(i).degree * t->chi(i).degree;
    if (degrees != static_cast<std::int64_t>(g->order())) v.falsify({{"property", "sum chi(1)^2 = |G|"}, {"sum", degrees}});
    auto total = CentralElement::scalar(t, 0);
    for (std::size_t i = 0; i < t->size(); ++i) {
        const auto ei = CentralElement::idempotent(t, i);
        total += ei;
        for (std::size_t j = 0; j < t->size(); ++j) {
            const auto prod = (ei.ring() * CentralElement::idempotent(t, j).ring());
            const auto want = i == j ? ei.ring() : GroupRingElement(tg);
            if (!(prod == want)) v.falsify({{"property", "e_chi orthogonality"}, {"i", t->label(i)}, {"j", t->label(j)}});
        }
    }
    if (!(total.ring() == GroupRingElement::scalar(tg, 1))) v.falsify({{"property", "sum e_chi = 1"}});

    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    for (std::size_t k = 0; k < instances; ++k) {
        const std::size_t b = 1 + k % 2;
        const auto a = random_integral_matrix(tg, b, rng);
        const auto c = random_integral_matrix(tg, b, rng);
        auto na = reduced_norm(a, reps);
        if (fault && k == 0) na = na + CentralElement::scalar(t, CyclotomicNumber(*fault));
        const auto nc = reduced_norm(c, reps);
        const Json where{{"instance", k}, {"size", b}};
        auto fail = [&](const char* prop) {
            auto w = where;
            w["property"] = prop;
            v.falsify(std::move(w));
            ++failures;
        };
        if (!(reduced_norm(a * c, reps) == na * nc)) fail("nr(AB) = nr(A) nr(B)");
        const auto sa = star_adjoint(a, reps);
        const auto sc = star_adjoint(c, reps);
        const auto nra = detail::scalar_matrix(na.ring(), b);
        if (!(sa.adjoint * a == nra) || !(a * sa.adjoint == nra)) fail("A* A = A A* = nr(A) 1");
        if (!(star_adjoint(a * c, reps).adjoint == sc.adjoint * sa.adjoint)) fail("(AB)* = B* A*");
        if (!max_order_membership_full(na).member) fail("nr(A) in zeta(M(G))");
        if (!adjoint_components_integral(sa)) fail("A* components integral");
        for (const auto& e : sa.adjoint.data())
            if (!e.scaled(CyclotomicNumber(order)).is_integral()) {
                fail("|G| A* in M(ZG)");
                break;
            }
    }

    ElementSet center;
    for (Elem x = 0; x < g->order(); ++x) {
        bool central = true;
        for (Elem y = 0; y < g->order() && central; ++y) central = g->mul(x, y) == g->mul(y, x);
        if (central) center.insert(x);
    }
    const auto cgrp = std::make_shared<const FiniteGroup>(g->subgroup_as_group(center).first);
    for (std::size_t k = 0; k < instances; ++k) {
        const auto m1 = detail::random_sigma_input(cgrp, rng);
        const auto m2 = detail::random_sigma_input(cgrp, rng);
        if (!(sigma_isomorphism(m1 * m2) == sigma_isomorphism(m1) * sigma_isomorphism(m2)) ||
            !(sigma_inverse(sigma_isomorphism(m1)) == m1)) {
            v.falsify({{"property", "sigma(M M') = sigma(M) sigma(M')"}, {"instance", k}, {"C_order", cgrp->order()}});
            ++failures;
        }
    }
    if (v.status != Status::falsified)
        v.confirm({{"group", group_name}, {"order", g->order()}, {"instances", instances}, {"center_order", cgrp->order()}});
    return v;
}

}  // namespace skv

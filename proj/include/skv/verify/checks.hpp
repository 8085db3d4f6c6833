#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skv/engine/sku.hpp"
#include "skv/rednorm/fitting.hpp"
#include "skv/verify/verdict.hpp"

namespace skv {

/// Shared inputs of the fixture checks. A fault adds `fault` times the last
/// class sum to every element before it is judged.
struct CheckContext {
    const ExtensionFixture& f;
    std::shared_ptr<const CharacterTable> t;
    const RepresentationTable& reps;
    std::size_t bound = 2;
    std::uint64_t seed = 0;
    std::optional<Rational> fault;

    CheckContext(const ExtensionFixture& fx, const RepresentationTable& r)
        : f(fx), t(r.table_ptr()), reps(r) {}

    const IdealLattice& lattice() const {
        if (!lattice_) lattice_ = std::make_shared<const IdealLattice>(reps, seed);
        return *lattice_;
    }

    CentralElement perturb(const CentralElement& x) const {
        if (!fault) return x;
        const auto g = t->group_ptr();
        GroupRingElement z(g);
        for (Elem e : t->classes().back()) z[e] = CyclotomicNumber(*fault);
        return x + CentralElement::from_ring(t, z);
    }

private:
    mutable std::shared_ptr<const IdealLattice> lattice_;
};

namespace detail {

inline std::string set_subject(const ExtensionFixture& f, const PlaceSets& ps) {
    return f.name + ":" + (ps.name.empty() ? "S=" + labels_str(ps.s) + " T=" + labels_str(ps.t) : ps.name) +
           " r=" + std::to_string(ps.r);
}

inline std::vector<std::string> fixture_provenance(const ExtensionFixture& f) {
    std::vector<std::string> out{"fixture " + f.name + ": " + f.description};
    if (f.cyclotomic) out.push_back("Artin map of conductor " + std::to_string(f.cyclotomic->conductor));
    for (const auto& c : f.class_groups) out.push_back("class group T=" + labels_str(c.t) + ": " + c.provenance);
    for (const auto& s : f.sources) out.push_back("theta source " + s.tag + ": " + s.provenance);
    return out;
}

inline Json witness_of(const MembershipWitness& w) {
    Json j{{"character", w.character}, {"component", to_json(w.value)}};
    if (w.c) j["c"] = *w.c;
    return j;
}

/// Coefficients of the group ring view that are not integral (p-integral with p).
inline std::vector<Json> zg_failures(const CentralElement& x, const std::optional<Integer>& p = std::nullopt) {
    std::vector<Json> out;
    const auto y = x.ring();
    const auto& g = x.table().group();
    for (Elem e = 0; e < g.order(); ++e) {
        const auto& c = y[e];
        const auto q = c.as_rational();
        const bool ok = q && (p ? q->is_p_integral(*p) : q->is_integer());
        if (!ok) out.push_back({{"element", g.labels()[e]}, {"coefficient", to_json(c)}});
    }
    return out;
}

inline MembershipResult product_membership(const CentralElement& x, const std::optional<Integer>& p) {
    const auto& g = x.table().group();
    if (const auto dp = detect_direct_product(g)) return max_order_membership_product(x, ProductDecomposition::make(g, *dp), p);
    return max_order_membership_full(x, p);
}

inline GroupRingElement to_table_group(const std::shared_ptr<const CharacterTable>& t, const GroupRingElement& x) {
    GroupRingElement y(t->group_ptr());
    for (Elem e = 0; e < t->group().order(); ++e) y[e] = x[e];
    return y;
}

inline std::vector<const ClassGroupData*> plain_class_groups(const ExtensionFixture& f) {
    std::vector<const ClassGroupData*> out;
    for (const auto& c : f.class_groups)
        if (c.t.empty()) out.push_back(&c);
    return out;
}

}  // namespace detail

/// theta_S^T(r) lies in zeta(M_p(H))[C] (product mode; p-local with p). For
/// abelian G the group ring coefficients must also be integral.
inline Verdict check_stickelberger_int(const CheckContext& ctx, const PlaceSets& ps, std::optional<std::uint64_t> p = {}) {
    const auto& f = ctx.f;
    Verdict v("stickelberger_int", detail::set_subject(f, ps));
    v.provenance = detail::fixture_provenance(f);
    const auto hyp = ps.r < 0 ? check_hyp_twisted(f, ps, ps.r) : (p ? check_admissible(f, ps, *p, 0) : check_hyp_ST(f, ps));
    ThetaElement th;
    try {
        th = theta_monomial(f, ctx.t, ps.s, ps.t, ps.r);
    } catch (const MissingSources& e) {
        for (const auto& m : e.missing()) v.inconclusive("missing theta source (field sources): " + m);
        return v;
    }
    const auto x = ctx.perturb(th.value);
    const std::optional<Integer> pp = p ? std::optional<Integer>(Integer(static_cast<unsigned long>(*p))) : std::nullopt;
    const auto mem = detail::product_membership(x, pp);
    const auto zg = f.group->is_abelian() ? detail::zg_failures(x, pp) : std::vector<Json>{};
    if (!hyp.ok) {
        for (const auto& why : hyp.reasons) v.inconclusive("hypotheses fail for the set (field sets): " + why);
        v.note(mem.member && zg.empty() ? "theta is integral nonetheless" : "theta is not integral, as the failing hypotheses allow");
        return v;
    }
    for (const auto& w : mem.failures) v.falsify(detail::witness_of(w));
    for (const auto& w : zg) v.falsify(w);
    if (v.status == Status::verified) {
        Json c{{"theta", to_json(th, f.name)}, {"mode", detect_direct_product(*f.group) ? "product" : "full"}};
        if (p) c["p"] = *p;
        v.confirm(std::move(c));
    }
    if (th.uses_fixture_sources) v.note("some components come from fixture-declared L-values");
    return v;
}

/// SKu'(L/K, S) generators lie in zeta(M(G)); the J-sweep checks
/// prod_{J} nr(N_I) theta_{S_J}^T(r) in zeta(M(G)), and in ZG for abelian G.
inline Verdict check_sku_maxord(const CheckContext& ctx, const PlaceSets& ps) {
    const auto& f = ctx.f;
    Verdict v("sku_maxord", detail::set_subject(f, ps));
    v.provenance = detail::fixture_provenance(f);
    GeneratorSet gens;
    try {
        gens = sku_prime_generators(f, ctx.reps, ps.s, ctx.bound);
    } catch (const MissingSources& e) {
        for (const auto& m : e.missing()) v.inconclusive("missing theta source (field sources): " + m);
        return v;
    }
    for (const auto& n : gens.notes) v.note(n);
    if (gens.generators.empty())
        v.inconclusive("no admissible T found within --bound " + std::to_string(ctx.bound) + " (field pool)");
    std::size_t passed = 0;
    for (const auto& g : gens.generators) {
        const auto mem = max_order_membership_full(ctx.perturb(g.value));
        for (const auto& w : mem.failures) {
            auto j = detail::witness_of(w);
            j["generator"] = g.tag;
            v.falsify(std::move(j));
        }
        passed += mem.member;
    }
    const auto hyp = check_hyp_twisted(f, ps, ps.r);
    const auto subsets = ramified_subsets(f, ps.s);
    if (f.ramified_labels().empty()) v.note("unramified everywhere: J is empty and the check reduces to abelian integrality");
    if (!hyp.ok) {
        for (const auto& why : hyp.reasons) v.inconclusive("J-sweep skipped, hypotheses fail (field sets): " + why);
    } else {
        for (const auto& j : subsets) {
            const auto res = theta_with_inertia_norms(f, ctx.reps, j, ps.s, ps.t, ps.r);
            const auto x = ctx.perturb(res.value);
            const Json base{{"J", j}, {"S_J", res.s_j}, {"H_J", detail::subgroup_str(res.h_j)}};
            if (!res.vanishing_ok) {
                auto w = base;
                w["failure"] = "prod nr(N_I) nonzero at a character without H_J in its kernel";
                v.falsify(std::move(w));
            }
            if (!res.quotient_identity_ok) {
                auto w = base;
                w["failure"] = "prod nr(N_I) theta differs from its eps_{H_J} projection";
                v.falsify(std::move(w));
            }
            for (const auto& m : max_order_membership_full(x).failures) {
                auto w = base;
                w.update(detail::witness_of(m));
                v.falsify(std::move(w));
            }
            if (f.group->is_abelian())
                for (auto& c : detail::zg_failures(x)) {
                    c.update(base);
                    v.falsify(std::move(c));
                }
        }
    }
    if (v.status != Status::falsified)
        v.confirm({{"generators", gens.generators.size()}, {"members", passed}, {"J_subsets", hyp.ok ? subsets.size() : 0},
                   {"truncated", gens.truncated}});
    return v;
}

/// Annihilation of the class group by h * a * theta_S(0) for certified h in
/// H(G) and generators a of A_S, plus the I(G) necessary condition.
inline Verdict check_brumer(const CheckContext& ctx, const std::vector<std::string>& s) {
    const auto& f = ctx.f;
    Verdict v("brumer", f.name + ":S=" + detail::labels_str(s));
    v.provenance = detail::fixture_provenance(f);
    const auto cgs = detail::plain_class_groups(f);
    if (cgs.empty()) {
        v.inconclusive("no class group with T = {} in field class_groups");
        return v;
    }
    ThetaElement th;
    try {
        th = theta_monomial(f, ctx.t, s, {}, 0);
    } catch (const MissingSources& e) {
        for (const auto& m : e.missing()) v.inconclusive("missing theta source (field sources): " + m);
        return v;
    }
    const auto a = generate_A_S(f, ctx.t, s, ctx.bound);
    for (const auto& n : a.notes) v.note(n);
    if (a.generators.empty()) {
        v.inconclusive("A_S has no generator within --bound " + std::to_string(ctx.bound) + " (field pool)");
        return v;
    }
    const auto x = ctx.perturb(th.value);
    std::vector<CentralElement> elems;
    for (const auto& g : a.generators) elems.push_back(g.value * x);
    const auto h = certified_h_members(ctx.t);
    for (const auto* cg : cgs) {
        if (cg->module.order() == 1) v.note("class group is trivial: annihilation is vacuous");
        const auto res = annihilation_check(elems, cg->module, h);
        for (const auto& viol : res.violations) {
            Json w{{"h", viol.h_label}, {"generator", a.generators[viol.generator].tag}, {"class_basis", viol.module_basis},
                   {"reason", viol.reason}};
            Json img = Json::array();
            for (const auto& c : viol.image) img.push_back(c.get_str());
            w["image"] = img;
            v.falsify(std::move(w));
        }
    }
    const auto& lat = ctx.lattice();
    std::size_t certified = 0, necessary = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const auto c = lat.classify(elems[i]);
        if (c == IMembership::certified) ++certified;
        if (c == IMembership::necessary_only) ++necessary;
        if (c == IMembership::falsified) {
            Json w{{"generator", a.generators[i].tag}, {"failure", "a theta_S(0) is not in zeta(M(G))"}};
            for (const auto& m : max_order_membership_full(elems[i]).failures) w["component"] = detail::witness_of(m);
            v.falsify(std::move(w));
        }
    }
    v.note("I(G) membership: " + std::to_string(certified) + " certified by an nr-combination, " + std::to_string(necessary) +
           " pass the zeta(M(G)) necessary condition only");
    if (v.status != Status::falsified) {
        Json hs = Json::array();
        for (const auto& m : h) hs.push_back(m.label);
        v.confirm({{"h", hs}, {"generators", elems.size()}, {"class_groups", cgs.size()}});
    }
    return v;
}

/// Necessary conditions for Brumer-Stark: omega_L theta_S(0) lies in
/// zeta(M(G)) and kills the class group.
inline Verdict check_brumer_stark_necessary(const CheckContext& ctx, const std::vector<std::string>& s) {
    const auto& f = ctx.f;
    Verdict v("brumer_stark", f.name + ":S=" + detail::labels_str(s));
    v.provenance = detail::fixture_provenance(f);
    v.note("anti-unit construction and the alpha_T condition are out of scope");
    ThetaElement th;
    try {
        th = theta_monomial(f, ctx.t, s, {}, 0);
    } catch (const MissingSources& e) {
        for (const auto& m : e.missing()) v.inconclusive("missing theta source (field sources): " + m);
        return v;
    }
    const auto x = omega_L(f, ctx.t) * ctx.perturb(th.value);
    for (const auto& m : max_order_membership_full(x).failures) {
        auto w = detail::witness_of(m);
        w["failure"] = "omega_L theta_S(0) is not in zeta(M(G))";
        v.falsify(std::move(w));
    }
    const auto& lat = ctx.lattice();
    v.note(std::string("I(G) membership of omega_L theta_S(0): ") + to_string(lat.classify(x)));
    const auto cgs = detail::plain_class_groups(f);
    if (cgs.empty()) v.note("no class group with T = {}: the class-shadow test is skipped");
    const auto h = certified_h_members(ctx.t);
    for (const auto* cg : cgs) {
        if (cg->module.order() == 1) v.note("class group is trivial: annihilation is vacuous");
        for (const auto& viol : annihilation_check({x}, cg->module, h).violations) {
            Json img = Json::array();
            for (const auto& c : viol.image) img.push_back(c.get_str());
            v.falsify({{"h", viol.h_label}, {"class_basis", viol.module_basis}, {"image", img}, {"reason", viol.reason}});
        }
    }
    if (v.status != Status::falsified) v.confirm({{"omega_L", f.mu.order}, {"class_groups", cgs.size()}});
    return v;
}

/// nr(x) theta_S(r) for x in Ann(mu_(1-r)(L)): in zeta(M(G)), and in ZG for abelian G.
inline Verdict check_negative_r(const CheckContext& ctx, const PlaceSets& ps) {
    const auto& f = ctx.f;
    Verdict v("negative_r", detail::set_subject(f, ps));
    v.provenance = detail::fixture_provenance(f);
    if (ps.r >= 0) throw InvalidArgument("negative_r needs r < 0");
    if (!ps.t.empty()) v.note("T of the set is ignored: the check uses theta_S");
    ThetaElement th;
    TateAnnihilator ann;
    try {
        th = theta_monomial(f, ctx.t, ps.s, {}, ps.r);
        ann = mu_tate_annihilators(f, ps.r);
    } catch (const MissingSources& e) {
        for (const auto& m : e.missing()) v.inconclusive("missing theta source (field sources): " + m);
        return v;
    } catch (const InvalidArgument& e) {
        v.inconclusive(std::string("mu data unavailable (fields cyclotomic, mu): ") + e.what());
        return v;
    }
    const auto x = ctx.perturb(th.value);
    if (x.is_zero()) v.note("theta_S(r) = 0: vacuous");
    for (std::size_t i = 0; i < ann.generators.size(); ++i) {
        const auto y = detail::nr_of(ctx.reps, detail::to_table_group(ctx.t, ann.generators[i])) * x;
        for (const auto& m : max_order_membership_full(y).failures) {
            auto w = detail::witness_of(m);
            w["annihilator"] = i;
            v.falsify(std::move(w));
        }
        if (f.group->is_abelian())
            for (auto& c : detail::zg_failures(y)) {
                c["annihilator"] = i;
                v.falsify(std::move(c));
            }
    }
    if (v.status != Status::falsified)
        v.confirm({{"w", ann.w}, {"annihilators", ann.generators.size()}, {"theta", to_json(th, f.name)}});
    return v;
}

/// eps_{H(r)} theta = theta on the unreduced values.
inline Verdict check_reduction(const CheckContext& ctx, const PlaceSets& ps) {
    const auto& f = ctx.f;
    Verdict v("reduction", detail::set_subject(f, ps));
    v.provenance = detail::fixture_provenance(f);
    ThetaElement th;
    try {
        th = theta_monomial(f, ctx.t, ps.s, ps.t, ps.r, false);
    } catch (const MissingSources& e) {
        for (const auto& m : e.missing()) v.inconclusive("missing theta source (field sources): " + m);
        return v;
    }
    const auto h = h_of_r(f, ps.r);
    const auto x = ctx.perturb(th.value);
    const auto y = CentralElement::eps(ctx.t, h) * x;
    for (std::size_t i = 0; i < ctx.t->size(); ++i)
        if (!(x[i] == y[i])) v.falsify({{"character", ctx.t->label(i)}, {"component", to_json(x[i])}, {"H(r)", detail::subgroup_str(h)}});
    if (v.status != Status::falsified) {
        std::size_t off = 0;
        for (std::size_t i = 0; i < ctx.t->size(); ++i) off += !ctx.t->kernel_contains(i, h);
        v.confirm({{"H(r)", detail::subgroup_str(h)}, {"vanishing_components", off}, {"cm", f.is_cm()}});
    }
    return v;
}

/// Artin map against local data, and the hypothesis status of every declared set.
inline Verdict check_fixture(const ExtensionFixture& f) {
    Verdict v("fixture", f.name);
    v.provenance = detail::fixture_provenance(f);
    for (const auto& d : artin_consistency(f)) v.falsify({{"inconsistency", d}});
    for (const auto& ps : f.sets) {
        const auto hyp = ps.r < 0 ? check_hyp_twisted(f, ps, ps.r) : check_hyp_ST(f, ps);
        v.note("set " + ps.name + ": hypotheses " + (hyp.ok ? "hold" : "fail"));
    }
    if (v.status != Status::falsified) v.confirm({{"sets", f.sets.size()}, {"places", f.places.size()}});
    return v;
}

/// Exceptional-prime screening for the primes below the fixture's places and 2.
inline Json exceptional_primes(const ExtensionFixture& f) {
    std::set<std::uint64_t> cand{2};
    for (const auto& p : f.places)
        if (p.finite() && p.flags.ramified) cand.insert(p.q);
    for (auto p : f.zeta_p_primes) cand.insert(p);
    Json out = Json::array();
    for (auto p : cand) {
        Json e{{"p", p}, {"i_p_is_2", p == 2}};
        Json wild = Json::array();
        for (const auto& pl : f.places)
            if (pl.finite() && pl.q == p && pl.flags.wild && (!f.j || !pl.decomposition.contains(*f.j))) wild.push_back(pl.label);
        e["ii_not_almost_tame"] = wild;
        if (!f.j) e["ii_note"] = "no central complex conjugation: every wild place counts";
        const bool declared = std::find(f.zeta_p_primes.begin(), f.zeta_p_primes.end(), p) != f.zeta_p_primes.end();
        e["iii_declared"] = declared;
        e["exceptional"] = p == 2 || !wild.empty() || declared;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace skv

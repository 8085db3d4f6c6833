#include <gtest/gtest.h>

#include <fstream>

#include "skv/arith/places.hpp"
#include "skv/rednorm/reduced_norm.hpp"
#include "skv/ring/maximal_order.hpp"

using namespace skv;

namespace {

const std::vector<std::string> kFixtures = {"q", "q_i", "q_sqrt_m5", "q_zeta7", "q_zeta23", "hcf_m23", "s3xc4"};

std::string fixture_path(const std::string& name) { return std::string(SKV_FIXTURE_DIR) + "/" + name + ".json"; }

Json raw(const std::string& name) {
    std::ifstream in(fixture_path(name));
    return Json::parse(in);
}

const ExtensionFixture& fixture(const std::string& name) {
    static std::map<std::string, ExtensionFixture> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, load_fixture(fixture_path(name))).first;
    return it->second;
}

std::shared_ptr<const CharacterTable> table(const ExtensionFixture& f) {
    static std::map<std::string, std::shared_ptr<const CharacterTable>> cache;
    auto& t = cache[f.name];
    if (!t) t = std::make_shared<const CharacterTable>(CharacterTable::build(*f.group));
    return t;
}

PlaceSets sets(std::vector<std::string> s, std::vector<std::string> t) {
    PlaceSets p;
    p.s = std::move(s);
    p.t = std::move(t);
    return p;
}

std::string rejection(Json j) {
    try {
        (void)fixture_from_json(j);
    } catch (const FixtureError& e) {
        return e.what();
    }
    return "";
}

Elem elem_of_order(const FiniteGroup& g, std::size_t o) {
    for (Elem x = 0; x < g.order(); ++x)
        if (g.element_order(x) == o) return x;
    throw std::runtime_error("no element of that order");
}

}  // namespace

TEST(Fixtures, ShippedFixturesLoadAndMatchArtinMaps) {
    for (const auto& name : kFixtures) {
        const auto& f = fixture(name);
        EXPECT_EQ(f.name, name);
        EXPECT_TRUE(artin_consistency(f).empty()) << name << ": " << artin_consistency(f).front();
        for (const auto& s : f.sets) EXPECT_NO_THROW(check_hyp_ST(f, s));
    }
    EXPECT_TRUE(fixture("q_i").is_cm());
    EXPECT_TRUE(fixture("q_zeta23").is_cm());
    EXPECT_FALSE(fixture("hcf_m23").is_cm());
    EXPECT_EQ(fixture("hcf_m23").complex_conjugations().size(), 3u);
}

TEST(Fixtures, RejectsMalformedInput) {
    auto base = raw("q_i");
    EXPECT_EQ(rejection(base), "");

    auto j = base;
    j["surplus"] = 1;
    EXPECT_NE(rejection(j).find("surplus"), std::string::npos);

    j = base;
    j["version"] = "skvfix/0";
    EXPECT_NE(rejection(j), "");

    // inert place 3 with a trivial Frobenius: |D/I| = 2 but the Frobenius has order 1
    j = base;
    for (auto& p : j["places"])
        if (p["label"] == "3") p["frobenius"] = 0;
    EXPECT_NE(rejection(j).find("places"), std::string::npos);

    j = base;
    for (auto& p : j["places"])
        if (p["label"] == "2") p["flags"]["wild"] = false;
    EXPECT_NE(rejection(j), "");

    j = base;
    j["mu"]["order"] = 3;
    EXPECT_NE(rejection(j), "");

    j = base;
    j["mu"]["action"] = {1, 1};  // complex conjugation must invert mu
    EXPECT_NE(rejection(j), "");

    j = base;
    j["conjugation"] = 0;
    EXPECT_NE(rejection(j), "");

    j = base;
    j["sets"][0]["T"] = {"17"};
    EXPECT_NE(rejection(j).find("17"), std::string::npos);

    j = base;
    j["cyclotomic"]["artin"].erase("3");
    EXPECT_NE(rejection(j), "");

    EXPECT_THROW(load_fixture(fixture_path("does_not_exist")), FixtureError);
}

TEST(Fixtures, ArtinConsistencyDetectsWrongLocalData) {
    auto j = raw("q_zeta7");
    for (auto& p : j["places"])
        if (p["label"] == "2") p["frobenius"] = 4;  // 2 = 3^2 mod 7: Frob_2 is c^2, c^4 passes local checks only
    const auto f = fixture_from_json(j);
    const auto problems = artin_consistency(f);
    ASSERT_FALSE(problems.empty());
    EXPECT_NE(problems.front().find("place 2"), std::string::npos);
}

TEST(Hyp, Examples) {
    const auto& f = fixture("q_zeta7");
    EXPECT_TRUE(check_hyp_ST(f, f.set("hyp")).ok);
    EXPECT_TRUE(check_hyp_ST(f, f.set("hyp_big")).ok);
    const auto bad = check_hyp_ST(f, f.set("bad_T"));
    EXPECT_FALSE(bad.ok);
    EXPECT_NE(bad.reasons.front().find("(iii)"), std::string::npos);
    EXPECT_FALSE(check_hyp_ST(f, sets({"inf"}, {"3"})).ok);          // 7 ramified
    EXPECT_FALSE(check_hyp_ST(f, sets({"7"}, {"3"})).ok);            // infinite place
    EXPECT_FALSE(check_hyp_ST(f, sets({"inf", "7", "3"}, {"3"})).ok);  // S and T meet
    EXPECT_THROW(check_hyp_ST(f, sets({"inf", "7"}, {"31"})), InvalidArgument);
    // a declared override decides torsion-freeness when the criterion is silent
    auto s = sets({"inf", "7"}, {"2"});
    s.torsion_free = true;
    s.torsion_provenance = "test";
    EXPECT_TRUE(check_hyp_ST(f, s).ok);
    // w = 2: any odd place makes E_S^T torsion-free, 2 alone does not
    const auto& q = fixture("q");
    EXPECT_TRUE(check_hyp_ST(q, sets({"inf"}, {"5"})).ok);
    EXPECT_FALSE(check_hyp_ST(q, sets({"inf"}, {"2"})).ok);
}

TEST(Admissibility, WildAndTameConditions) {
    const auto& f = fixture("q_i");
    const auto wild = check_admissible(f, sets({"inf"}, {"3"}), 2, 0);
    EXPECT_FALSE(wild.ok);
    EXPECT_NE(wild.reasons.front().find("(ii)"), std::string::npos);
    EXPECT_TRUE(check_admissible(f, sets({"inf", "2"}, {"3"}), 2, 0).ok);
    // away from p = 3 the ramified place 2 may sit in T instead of S
    EXPECT_FALSE(check_admissible(f, sets({"inf"}, {}), 3, 0).ok);
    EXPECT_FALSE(check_admissible(f, sets({"inf"}, {"2"}), 3, 0).ok);  // T_nr empty
    EXPECT_TRUE(check_admissible(f, sets({"inf"}, {"2", "3"}), 3, 0).ok);
    // r < 0 reduces to Hyp(S, T)
    EXPECT_EQ(check_admissible(f, sets({"inf"}, {"2", "3"}), 3, -1).ok, false);
    EXPECT_EQ(check_admissible(f, f.set("hyp"), 3, -1).ok, true);
    EXPECT_THROW(check_admissible(f, f.set("hyp"), 3, 1), InvalidArgument);
}

TEST(LocalFactor, AbelianOracle) {
    // 1 - N^k chi(phi)^-1 when chi is trivial on inertia, else 1
    for (const auto& name : {"q", "q_i", "q_sqrt_m5", "q_zeta7", "q_zeta23"}) {
        const auto& f = fixture(name);
        const auto t = table(f);
        for (const auto& p : f.places) {
            if (!p.finite()) continue;
            for (std::int64_t r : {0, -1, -2})
                for (auto kind : {FactorKind::delta_T, FactorKind::euler_S}) {
                    const auto e = local_factor_element(t, p, r, kind);
                    const auto k = static_cast<unsigned>(kind == FactorKind::delta_T ? 1 - r : -r);
                    for (std::size_t i = 0; i < t->size(); ++i) {
                        bool unram = true;
                        for (Elem x : p.inertia.elements()) unram = unram && t->chi(i)(x) == CyclotomicNumber(1);
                        const CyclotomicNumber expect =
                            unram ? CyclotomicNumber(1) -
                                        t->chi(i)(p.frobenius).conj().scaled(Rational(static_cast<long>(p.norm)).pow(k))
                                  : CyclotomicNumber(1);
                        EXPECT_EQ(e[i], expect) << name << " " << p.label << " r=" << r;
                    }
                }
        }
    }
}

TEST(LocalFactor, S3Examples) {
    const auto& f = fixture("hcf_m23");
    const auto t = table(f);
    const std::size_t two = 2;  // degree-2 character comes last
    ASSERT_EQ(t->chi(two).degree, 2);
    const CyclotomicNumber one(1);
    // det(1 - x rho(phi^-1)): 3-cycle gives 1 + x + x^2, transposition 1 - x^2
    const auto at2 = local_factor(*f.group, f.place("2"), t->certificate(two), 0, FactorKind::delta_T);
    EXPECT_EQ(at2, CyclotomicNumber(1 + 2 + 4));
    const auto at5 = local_factor(*f.group, f.place("5"), t->certificate(two), -1, FactorKind::delta_T);
    EXPECT_EQ(at5, CyclotomicNumber(1 - 625));
    const auto at59 = local_factor(*f.group, f.place("59"), t->certificate(two), 0, FactorKind::delta_T);
    EXPECT_EQ(at59, CyclotomicNumber((1 - 59) * (1 - 59)));
    // 23 ramified with I = D of order 2: V^I is a line with trivial Frobenius
    EXPECT_EQ(local_factor(*f.group, f.place("23"), t->certificate(two), 0, FactorKind::delta_T), CyclotomicNumber(1 - 23));
    EXPECT_EQ(local_factor(*f.group, f.place("23"), t->certificate(two), 0, FactorKind::euler_S), CyclotomicNumber(0));
    EXPECT_THROW(local_factor(*f.group, f.place("inf"), t->certificate(two), 0, FactorKind::delta_T), InvalidArgument);
    EXPECT_THROW(local_factor(*f.group, f.place("2"), t->certificate(two), 1, FactorKind::delta_T), InvalidArgument);
    (void)one;
}

TEST(LocalFactor, EqualsReducedNormOfEulerElement) {
    // property: component chi equals nr(1 - N^k phi^-1 e_I) with e_I = |I|^-1 N_I
    for (const auto& name : kFixtures) {
        const auto& f = fixture(name);
        const auto t = table(f);
        RepresentationTable reps(t);
        const auto g = t->group_ptr();
        for (const auto& p : f.places) {
            if (!p.finite()) continue;
            for (std::int64_t r : {0, -1}) {
                const auto k = static_cast<unsigned>(1 - r);
                auto e = GroupRingElement::norm_element(g, p.inertia)
                             .scaled(CyclotomicNumber(Rational(1, static_cast<long>(p.inertia.size()))));
                auto x = GroupRingElement::scalar(g, 1) -
                         (GroupRingElement::basis(g, g->inv(p.frobenius)) * e)
                             .scaled(CyclotomicNumber(Rational(static_cast<long>(p.norm)).pow(k)));
                GroupRingMatrix m(1, 1, x);
                EXPECT_EQ(reduced_norm(m, reps), local_factor_element(t, p, r, FactorKind::delta_T)) << name << " " << p.label;
            }
        }
    }
}

TEST(DeltaT, IntegralElementsAndQiExample) {
    const auto& f = fixture("q_i");
    const auto t = table(f);
    const auto d = delta_T(f, t, {"3"}, 0);
    EXPECT_EQ(d.components(), (std::vector<CyclotomicNumber>{-2, 4}));
    auto expect = GroupRingElement::scalar(t->group_ptr(), 1);
    expect[1] = CyclotomicNumber(-3);
    EXPECT_EQ(d.ring(), expect);
    for (const auto& name : kFixtures) {
        const auto& fx = fixture(name);
        const auto tx = table(fx);
        // integral in ZG for abelian G; in general only in the centre of the maximal order
        for (const auto& s : fx.sets)
            for (std::int64_t r : {0, -1}) {
                const auto d = delta_T(fx, tx, s.t, r);
                EXPECT_TRUE(max_order_membership_full(d).member) << name << " " << s.name;
                if (fx.group->is_abelian()) EXPECT_TRUE(d.ring().is_integral()) << name << " " << s.name;
            }
    }
}

TEST(GenerateAS, PoolSubsetsSatisfyHyp) {
    const auto& f = fixture("q_zeta7");
    const auto t = table(f);
    const std::vector<std::string> s = {"inf", "7"};
    const auto gen = generate_A_S(f, t, s);
    EXPECT_TRUE(gen.truncated);
    // pool {2, 3, 13, 29}: 2 alone fails since 2 | w = 14
    EXPECT_EQ(gen.generators.size(), 3u + 6u);
    for (const auto& g : gen.generators) {
        EXPECT_TRUE(g.value.ring().is_integral()) << g.tag;
        EXPECT_EQ(g.tag.rfind("delta_T(0), T={", 0), 0u);
    }
    const auto& q = fixture("q");
    auto empty = q;
    empty.pool.clear();
    const auto none = generate_A_S(empty, table(q), {"inf"});
    EXPECT_TRUE(none.generators.empty());
    EXPECT_GE(none.notes.size(), 2u);
}

TEST(TateTwist, KnownOrders) {
    // by hand from the Galois groups of L(zeta_m) / L
    const std::map<std::string, std::uint64_t> w2 = {
        {"q", 24}, {"q_i", 24}, {"q_sqrt_m5", 24}, {"q_zeta7", 168}, {"q_zeta23", 552}};
    for (const auto& [name, w] : w2) EXPECT_EQ(mu_tate_annihilators(fixture(name), -1).w, w) << name;
    // w_1 recovers the declared roots of unity
    for (const auto& [name, w] : w2) {
        const auto& f = fixture(name);
        EXPECT_EQ(tate_order(f, 1, f.cyclotomic->tate_bound), f.mu.order) << name;
    }
    // w_3(Q) = 2 (only +-1 fixed under u -> u^3 twisted action)
    EXPECT_EQ(mu_tate_annihilators(fixture("q"), -2).w, 2u);
    EXPECT_EQ(mu_tate_annihilators(fixture("q"), -3).w, 240u);
    // nonabelian G: only L^[G,G] meets the cyclotomic tower
    EXPECT_EQ(mu_tate_annihilators(fixture("hcf_m23"), -1).w, 24u);
    EXPECT_EQ(mu_tate_annihilators(fixture("s3xc4"), -1).w, 120u);
    EXPECT_EQ(tate_order(fixture("s3xc4"), 1, 230), 10u);
    EXPECT_THROW(mu_tate_annihilators(fixture("q"), 0), InvalidArgument);
}

TEST(TateTwist, AnnihilatorIsFullKernel) {
    for (const auto& name : {"q", "q_i", "q_sqrt_m5", "q_zeta7", "q_zeta23"}) {
        const auto& f = fixture(name);
        for (std::int64_t r : {-1, -2}) {
            const auto ann = mu_tate_annihilators(f, r);
            const auto n = f.group->order();
            ASSERT_EQ(ann.generators.size(), n);
            // each generator kills, and the lattice has index w in ZG: it is the whole kernel
            IntMatrix m(n, n, Integer(0));
            for (std::size_t i = 0; i < n; ++i) {
                EXPECT_TRUE(kills_cyclic(ann.generators[i], ann.w, ann.action));
                for (Elem x = 0; x < n; ++x) m(i, x) = ann.generators[i][x].as_rational()->num();
            }
            Integer det = determinant(m, Integer(0), Integer(1));
            EXPECT_EQ(abs(det), Integer(static_cast<unsigned long>(ann.w))) << name;
        }
    }
    // Q(i), r = -1: complex conjugation acts trivially on mu^(tensor 2), so Ann = <24, c - 1>
    const auto ann = mu_tate_annihilators(fixture("q_i"), -1);
    EXPECT_EQ(ann.action, (std::vector<std::uint64_t>{1, 1}));
    const auto g = ann.generators.front().group_ptr();
    auto cm1 = GroupRingElement::basis(g, 1) - GroupRingElement::scalar(g, 1);
    EXPECT_TRUE(kills_cyclic(cm1, 24, ann.action));
    EXPECT_TRUE(kills_cyclic(GroupRingElement::scalar(g, 24), 24, ann.action));
    EXPECT_FALSE(kills_cyclic(GroupRingElement::scalar(g, 12), 24, ann.action));
}

TEST(TateTwist, EulerElementsAnnihilate) {
    // 1 - N^(1-r) phi^-1 at unramified q prime to w kills mu_(1-r); its
    // inverse-Frobenius counterpart 1 - phi N^(r-1) is not even integral
    for (const auto& name : {"q", "q_i", "q_sqrt_m5", "q_zeta7", "q_zeta23"}) {
        const auto& f = fixture(name);
        const auto t = table(f);
        for (std::int64_t r : {-1, -2}) {
            const auto ann = mu_tate_annihilators(f, r);
            for (const auto& p : f.places) {
                if (!p.finite() || p.flags.ramified || ann.w % p.q == 0) continue;
                const auto d = delta_T(f, t, {p.label}, r).ring();
                ASSERT_TRUE(d.is_integral());
                EXPECT_TRUE(kills_cyclic(d, ann.w, ann.action)) << name << " " << p.label << " r=" << r;
            }
        }
    }
}

TEST(Groups, FixtureGroupsHaveExpectedShape) {
    EXPECT_EQ(fixture("s3xc4").group->order(), 24u);
    EXPECT_FALSE(fixture("s3xc4").group->is_abelian());
    EXPECT_EQ(fixture("q_zeta23").group->order(), 22u);
    EXPECT_EQ(elem_of_order(*fixture("q_zeta23").group, 2), *fixture("q_zeta23").j);
}

TEST(Hyp, TwistedConditionForNegativeR) {
    const auto& q = fixture("q");
    // Hyp holds for T = {3}, yet 3 | w_2(Q) = 24
    EXPECT_TRUE(check_hyp_ST(q, q.set("plain_hyp_r1")).ok);
    const auto tw = check_hyp_twisted(q, q.set("plain_hyp_r1"), -1);
    EXPECT_FALSE(tw.ok);
    EXPECT_NE(tw.reasons.back().find("w_2(L) = 24"), std::string::npos);
    EXPECT_TRUE(check_hyp_twisted(q, q.set("plain_hyp_r1"), 0).ok);
    for (const auto& name : kFixtures) {
        const auto& f = fixture(name);
        EXPECT_TRUE(check_hyp_twisted(f, f.set("hyp_r1"), -1).ok) << name;
    }
    // at r = -2, w_3(Q) = 2 so T = {3} qualifies
    EXPECT_TRUE(check_hyp_twisted(q, q.set("plain_hyp_r1"), -2).ok);
}

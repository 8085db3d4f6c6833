#include <gtest/gtest.h>

#include <random>

#include "skv/rednorm/fitting.hpp"
#include "skv/groups/small_groups.hpp"

using namespace skv;

namespace {

std::shared_ptr<const CharacterTable> table_of(const FiniteGroup& g) {
    return std::make_shared<const CharacterTable>(CharacterTable::build(g));
}

// Cofactor expansion, the textbook oracle for Berkowitz.
Integer cofactor_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1, 0);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        Integer t = m(0, j) * cofactor_det(minor);
        s += (j % 2 == 0) ? t : Integer(-t);
    }
    return s;
}

GroupRingElement elem(const std::shared_ptr<const FiniteGroup>& g, std::vector<int> c) {
    GroupRingElement x(g);
    for (std::size_t i = 0; i < c.size(); ++i) x[static_cast<Elem>(i)] = CyclotomicNumber(c[i]);
    return x;
}

Elem first_of_order(const FiniteGroup& g, std::size_t o) {
    for (Elem x = 0; x < g.order(); ++x)
        if (g.element_order(x) == o) return x;
    return 0;
}

}  // namespace

TEST(Matrix, BerkowitzMatchesCofactorExpansion) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> d(-9, 9);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int t = 0; t < 20; ++t) {
            IntMatrix m(n, n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
            EXPECT_EQ(determinant(m, Integer(0), Integer(1)), cofactor_det(m));
            // Cayley-Hamilton
            auto p = charpoly(m, Integer(0), Integer(1));
            IntMatrix acc(n, n, 0), pw = IntMatrix::identity(n, 0, 1);
            for (std::size_t k = 0; k <= n; ++k) {
                acc += pw.map([&](const Integer& x) { return Integer(x * p[k]); });
                pw = pw * m;
            }
            EXPECT_EQ(acc, IntMatrix(n, n, 0));
        }
}

TEST(Lattice, HermiteAndSmith) {
    auto h = hermite_rows({{2, 4, 6}, {1, 1, 1}, {3, 5, 7}});
    EXPECT_TRUE(lattice_contains(h, {3, 5, 7}));
    EXPECT_TRUE(lattice_contains(h, {0, 2, 4}));
    EXPECT_FALSE(lattice_contains(h, {0, 1, 1}));
    IntMatrix a(3, 3, 0);
    int vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = vals[i][j];
    auto s = smith_normal_form(a);
    EXPECT_EQ(s.u * a * s.v, s.d);
    EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(3, 0, 1));
    EXPECT_EQ(s.d(0, 0), 2);
    EXPECT_EQ(s.d(1, 1), 6);
    EXPECT_EQ(s.d(2, 2), 12);
}

TEST(Representations, MonomialTraces) {
    for (const auto& g : {small_groups::s3(), small_groups::q8(), small_groups::d4(), small_groups::c6()}) {
        RepresentationTable reps(table_of(g));
        for (std::size_t chi = 0; chi < reps.table().size(); ++chi)
            for (Elem x = 0; x < g.order(); ++x) {
                CyclotomicNumber tr;
                auto dense = reps.rho(chi, x).dense();
                for (std::size_t i = 0; i < dense.rows(); ++i) tr += dense(i, i);
                EXPECT_EQ(tr, reps.table().chi(chi)(x));
                for (Elem y = 0; y < g.order(); ++y)
                    EXPECT_EQ(reps.rho(chi, g.mul(x, y)).dense(), dense * reps.rho(chi, y).dense());
            }
    }
    RepresentationTable s3(table_of(small_groups::s3()));
    // degree-2 entries are 0 or cube roots of unity
    for (Elem x = 0; x < 6; ++x)
        for (const auto& v : s3.rho(2, x).value) {
            auto v3 = v * v * v;
            EXPECT_EQ(v3, CyclotomicNumber(1));
        }
    // linear certificates give 1 x 1 matrices with the character values
    EXPECT_EQ(s3.rho(1, first_of_order(small_groups::s3(), 2)).dense()(0, 0), CyclotomicNumber(-1));
}

TEST(ReducedNorm, Examples) {
    auto t = table_of(small_groups::s3());
    RepresentationTable reps(t);
    auto g = t->group_ptr();
    EXPECT_EQ(reduced_norm(group_ring_identity(g, 2), reps), CentralElement::one(t));
    GroupRingMatrix m(1, 1, GroupRingElement::basis(g, first_of_order(*g, 2)));
    auto n = reduced_norm(m, reps);
    EXPECT_EQ(n[2], CyclotomicNumber(-1));  // oracle: det [[0, 1], [1, 0]]
    EXPECT_EQ(n[1], CyclotomicNumber(-1));
    GroupRingMatrix ng(1, 1, GroupRingElement::norm_element(g, g->all()));
    EXPECT_EQ(reduced_norm(ng, reps).components(), (std::vector<CyclotomicNumber>{6, 0, 0}));
    GroupRingMatrix rect(1, 2, GroupRingElement(g));
    EXPECT_THROW(reduced_norm(rect, reps), InvalidArgument);
}

TEST(StarAdjoint, Examples) {
    auto t = table_of(small_groups::s3());
    RepresentationTable reps(t);
    auto id = group_ring_identity(t->group_ptr(), 2);
    auto r = star_adjoint(id, reps);
    EXPECT_EQ(r.adjoint, id);
    EXPECT_EQ(r.norm, CentralElement::one(t));
    auto c2 = table_of(FiniteGroup::cyclic(2));
    RepresentationTable reps2(c2);
    GroupRingMatrix two(1, 1, GroupRingElement::scalar(c2->group_ptr(), 2));
    auto r2 = star_adjoint(two, reps2);
    EXPECT_EQ(r2.adjoint(0, 0), GroupRingElement::scalar(c2->group_ptr(), 1));
    EXPECT_EQ(r2.norm, CentralElement::scalar(c2, 2));
}

TEST(ReducedNorm, AbelianIsIdentity) {
    auto t = table_of(small_groups::c6());
    RepresentationTable reps(t);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
        auto m = random_integral_matrix(t->group_ptr(), 1, rng, 3);
        EXPECT_EQ(reduced_norm(m, reps).ring(), m(0, 0));
    }
}

// Algebra property suite: at least 100 randomized instances per group.
class RednormProperties : public ::testing::TestWithParam<int> {};

TEST_P(RednormProperties, NormsAndAdjoints) {
    const FiniteGroup groups[] = {small_groups::s3(), small_groups::d4(), small_groups::q8(), small_groups::c6()};
    const auto& g = groups[GetParam()];
    auto t = table_of(g);
    RepresentationTable reps(t);
    std::mt19937_64 rng(100 + GetParam());
    const auto gp = t->group_ptr();
    const long order = static_cast<long>(g.order());
    for (int k = 0; k < 100; ++k) {
        const std::size_t b = 1 + k % 2;
        auto a = random_integral_matrix(gp, b, rng), c = random_integral_matrix(gp, b, rng);
        auto na = reduced_norm(a, reps), nc = reduced_norm(c, reps);
        EXPECT_EQ(reduced_norm(a * c, reps), na * nc);
        EXPECT_TRUE((na.scaled(Rational(order))).ring().is_integral());
        auto sa = star_adjoint(a, reps), sc = star_adjoint(c, reps);
        EXPECT_TRUE(adjoint_components_integral(sa));
        EXPECT_EQ(star_adjoint(a * c, reps).adjoint, sc.adjoint * sa.adjoint);
        // |G| H* is integral
        for (const auto& e : sa.adjoint.data()) EXPECT_TRUE(e.scaled(Rational(order)).is_integral());
    }
}

INSTANTIATE_TEST_SUITE_P(Groups, RednormProperties, ::testing::Values(0, 1, 2, 3));

TEST(Sigma, RingHomomorphism) {
    auto c2 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> d(-4, 4);
    auto random_m = [&]() {
        MatrixGroupRingElement m{c2, {}};
        for (int i = 0; i < 2; ++i) {
            CycMatrix x(2, 2, CyclotomicNumber());
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t s = 0; s < 2; ++s) x(r, s) = CyclotomicNumber(Rational(d(rng), 1 + (d(rng) & 1)));
            m.parts.push_back(x);
        }
        return m;
    };
    for (int k = 0; k < 100; ++k) {
        auto a = random_m(), b = random_m();
        EXPECT_EQ(sigma_isomorphism(a * b), sigma_isomorphism(a) * sigma_isomorphism(b));
        EXPECT_EQ(sigma_inverse(sigma_isomorphism(a)), a);
        // det over F[C] evaluated at each character of C is the determinant in that component
        auto det = determinant_over_abelian(sigma_isomorphism(a));
        for (int lam : {1, -1}) {
            CycMatrix comp = a.parts[0] + a.parts[1].map([&](const CyclotomicNumber& x) { return x * CyclotomicNumber(lam); });
            EXPECT_EQ(det[0] + det[1] * CyclotomicNumber(lam), determinant(comp, CyclotomicNumber(), CyclotomicNumber(1)));
        }
    }
    // integral input: determinant lands in Z[C]
    MatrixGroupRingElement m{c2, {CycMatrix(2, 2, CyclotomicNumber(2)), CycMatrix(2, 2, CyclotomicNumber(-1))}};
    m.parts[0](0, 1) = CyclotomicNumber(5);
    EXPECT_TRUE(determinant_over_abelian(sigma_isomorphism(m)).is_integral());
    // n = 1 and C trivial are identities
    auto c1 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(1));
    MatrixGroupRingElement single{c1, {CycMatrix(2, 2, CyclotomicNumber(3))}};
    EXPECT_EQ(sigma_isomorphism(single)(1, 0)[0], CyclotomicNumber(3));
    auto s3 = std::make_shared<const FiniteGroup>(small_groups::s3());
    MatrixGroupRingElement bad{s3, std::vector<CycMatrix>(6, CycMatrix(1, 1, CyclotomicNumber()))};
    EXPECT_THROW(sigma_isomorphism(bad), InvalidArgument);
}

TEST(Fitting, Presentations) {
    auto c1 = table_of(FiniteGroup::cyclic(1));
    RepresentationTable r1(c1);
    auto g1 = c1->group_ptr();
    PresentationModule id{group_ring_identity(g1, 2)};
    auto f = fitting_of_presentation(id, r1);
    ASSERT_EQ(f.generators.size(), 1u);
    EXPECT_EQ(f.generators[0].value, CentralElement::one(c1));
    EXPECT_EQ(module_from_presentation(id).order(), 1);
    PresentationModule zn{GroupRingMatrix(1, 1, GroupRingElement::scalar(g1, 7))};
    EXPECT_EQ(fitting_of_presentation(zn, r1).generators[0].value, CentralElement::scalar(c1, 7));
    auto m7 = module_from_presentation(zn);
    EXPECT_EQ(m7.factors(), std::vector<Integer>{7});

    auto c2 = table_of(FiniteGroup::cyclic(2));
    RepresentationTable r2(c2);
    auto g2 = c2->group_ptr();
    GroupRingMatrix h(2, 2, GroupRingElement(g2));
    h(0, 0) = elem(g2, {1, 1});
    h(1, 1) = elem(g2, {2, 0});
    auto fc2 = fitting_of_presentation({h}, r2);
    ASSERT_EQ(fc2.generators.size(), 1u);
    // oracle: diagonal determinant per character, (1 + 1) * 2 and (1 - 1) * 2
    EXPECT_EQ(fc2.generators[0].value.components(), (std::vector<CyclotomicNumber>{4, 0}));
    // a < b gives the zero class
    GroupRingMatrix wide(1, 2, GroupRingElement::scalar(g2, 1));
    EXPECT_TRUE(fitting_of_presentation({wide}, r2).generators[0].value.is_zero());
    // lexicographic selections of 2 rows out of 3
    GroupRingMatrix tall(3, 2, GroupRingElement::scalar(g2, 1));
    auto f3 = fitting_of_presentation({tall}, r2);
    ASSERT_EQ(f3.generators.size(), 3u);
    EXPECT_EQ(f3.generators[1].rows, (std::vector<std::size_t>{0, 2}));
}

TEST(Fitting, ModuleAndAnnihilation) {
    auto c2 = table_of(FiniteGroup::cyclic(2));
    RepresentationTable reps(c2);
    auto g = c2->group_ptr();
    // Z/4 with j = -1: relations (1 + j) and 4. It is not cohomologically
    // trivial, so no quadratic presentation exists.
    GroupRingMatrix h(2, 1, GroupRingElement(g));
    h(0, 0) = elem(g, {1, 1});
    h(1, 0) = elem(g, {4, 0});
    auto m = module_from_presentation({h});
    ASSERT_EQ(m.factors(), std::vector<Integer>{4});
    EXPECT_EQ(m.act(1, m.basis(0)), IntVector{3});
    auto fitt = fitting_of_presentation({h}, reps);
    ASSERT_EQ(fitt.generators.size(), 2u);
    auto h_members = certified_h_members(c2);
    auto two = std::vector<HMember>{h_members.back()};
    EXPECT_TRUE(annihilation_check(fitting_values(fitt), m, two).annihilates);
    EXPECT_TRUE(annihilation_check(fitting_values(fitt), m, h_members).annihilates);
    // 2 alone does not kill Z/4
    auto r = annihilation_check({CentralElement::one(c2)}, m, two);
    EXPECT_FALSE(r.annihilates);
    EXPECT_EQ(r.violations.front().image, IntVector{2});
    // the zero module is killed by anything
    EXPECT_TRUE(annihilation_check({CentralElement::one(c2)}, FiniteGModule::zero(g), two).annihilates);
    // trivial group: Fitt(Z/n) = (n) kills Z/n
    auto c1 = table_of(FiniteGroup::cyclic(1));
    RepresentationTable r1(c1);
    PresentationModule zn{GroupRingMatrix(1, 1, GroupRingElement::scalar(c1->group_ptr(), 12))};
    EXPECT_TRUE(annihilation_check(fitting_values(fitting_of_presentation(zn, r1)), module_from_presentation(zn),
                                   certified_h_members(c1))
                    .annihilates);
    // invalid actions are rejected at load
    std::vector<IntMatrix> bad(2, IntMatrix(1, 1, 1));
    bad[1](0, 0) = 2;
    EXPECT_THROW(FiniteGModule(g, {4}, bad), InvalidArgument);
}

TEST(Fitting, NonAbelianPresentation) {
    auto t = table_of(small_groups::s3());
    RepresentationTable reps(t);
    auto g = t->group_ptr();
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int k = 0; k < 30 && checked < 5; ++k) {
        PresentationModule p{random_integral_matrix(g, 1, rng, 2)};
        auto nr = reduced_norm(p.h, reps);
        bool finite = true;
        for (auto& c : nr.components()) finite = finite && !c.is_zero();
        if (!finite) continue;
        auto m = module_from_presentation(p);
        auto f = fitting_of_presentation(p, reps);
        EXPECT_TRUE(annihilation_check(fitting_values(f), m, certified_h_members(t)).annihilates);
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(HCandidates, Falsification) {
    auto t = table_of(small_groups::s3());
    RepresentationTable reps(t);
    EXPECT_FALSE(falsify_h_candidate(CentralElement::one(t), "1", reps, 0, 60));
    auto three = falsify_h_candidate(CentralElement::scalar(t, 3), "3", reps, 0, 60);
    ASSERT_TRUE(three);
    EXPECT_FALSE(three->certified);
}

TEST(IdealLattice, Classification) {
    auto t = table_of(small_groups::s3());
    RepresentationTable reps(t);
    IdealLattice lat(reps, 0, 10);
    auto g = t->group_ptr();
    GroupRingMatrix m(1, 1, elem(g, {1, 1, 0, -1, 0, 1}));
    EXPECT_EQ(lat.classify(reduced_norm(m, reps)), IMembership::certified);
    EXPECT_EQ(lat.classify(CentralElement::scalar(t, Rational(1, 2))), IMembership::falsified);
    EXPECT_EQ(lat.classify(CentralElement::one(t).scaled(5)), IMembership::certified);
}

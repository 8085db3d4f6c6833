#include <gtest/gtest.h>

#include <chrono>
#include <map>

#include "oracle/numeric.hpp"
#include "skv/lvalues/dirichlet.hpp"

using namespace skv;

namespace {

DirichletCharacter quadratic(std::uint64_t f) {
    for (auto& c : primitive_characters(f))
        if (c.order() == 2) return c;
    throw std::runtime_error("no quadratic primitive character");
}

CyclotomicNumber Q(long a, long b = 1) { return CyclotomicNumber(Rational(a, b)); }

}  // namespace

TEST(Bernoulli, Polynomials) {
    EXPECT_EQ(bernoulli_polynomial(0).coeffs, std::vector<Rational>{Rational(1)});
    EXPECT_EQ(bernoulli_polynomial(1).coeffs, (std::vector<Rational>{Rational(-1, 2), Rational(1)}));
    EXPECT_EQ(bernoulli_polynomial(2).coeffs, (std::vector<Rational>{Rational(1, 6), Rational(-1), Rational(1)}));
    EXPECT_EQ(bernoulli_number(12), Rational(-691, 2730));
    for (unsigned n = 3; n < 30; n += 2) EXPECT_TRUE(bernoulli_number(n).is_zero());
}

TEST(Bernoulli, RecurrenceIdentities) {
    // B_n(x + 1) - B_n(x) = n x^(n-1) and B_n(1 - x) = (-1)^n B_n(x)
    for (unsigned n = 1; n < 16; ++n) {
        const auto b = bernoulli_polynomial(n);
        for (long k : {-3, 0, 1, 5}) {
            Rational x(k, 7);
            EXPECT_EQ(b(x + Rational(1)) - b(x), Rational(static_cast<long>(n)) * x.pow(n - 1));
            EXPECT_EQ(b(Rational(1) - x), n % 2 == 0 ? b(x) : -b(x));
        }
        EXPECT_EQ(b(Rational(0)), bernoulli_number(n));
    }
}

TEST(Bernoulli, MatchesZetaOracle) {
    for (int j = 1; j <= 15; ++j) {
        auto exact = oracle::to_real(bernoulli_number(static_cast<unsigned>(2 * j)));
        auto num = oracle::bernoulli_even(2 * j);
        EXPECT_LT(abs(exact - num), oracle::Real("1e-40") * (1 + abs(exact)));
    }
}

TEST(Dirichlet, CharacterGroupStructure) {
    for (std::uint64_t f = 1; f <= 60; ++f) {
        const auto chars = all_characters(f);
        EXPECT_EQ(chars.size(), euler_phi(f)) << f;
        for (std::size_t i = 0; i < chars.size(); ++i)
            for (std::size_t j = i + 1; j < chars.size(); ++j) EXPECT_FALSE(chars[i] == chars[j]);
        // characters mod f are the primitive ones of conductor d | f, each counted once
        std::size_t prim = 0;
        for (std::uint64_t d = 1; d <= f; ++d)
            if (f % d == 0) prim += primitive_characters(d).size();
        EXPECT_EQ(prim, chars.size()) << f;
        for (const auto& c : chars) {
            const auto p = c.primitive();
            EXPECT_EQ(p.modulus(), c.conductor());
            EXPECT_TRUE(p.is_primitive());
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(f); ++a)
                if (std::gcd(static_cast<std::uint64_t>(a), f) == 1) EXPECT_EQ(c(a), p(a));
            EXPECT_EQ(c.dual().dual(), c);
        }
    }
    EXPECT_EQ(primitive_characters(2).size(), 0u);
    EXPECT_EQ(primitive_characters(8).size(), 2u);
}

TEST(Dirichlet, RejectsMalformed) {
    EXPECT_NO_THROW(DirichletCharacter(4, 2, {-1, 0, -1, 1}));
    EXPECT_THROW(DirichletCharacter(4, 2, {0, 0, -1, 1}), InvalidArgument);
    EXPECT_THROW(DirichletCharacter(4, 2, {-1, 1, -1, 1}), InvalidArgument);
    EXPECT_THROW(DirichletCharacter(5, 4, {-1, 0, 1, 1, 2}), InvalidArgument);
    EXPECT_THROW(DirichletCharacter(5, 4, {-1, 0}), InvalidArgument);
}

TEST(Dirichlet, JsonRoundTripAndStrictness) {
    const auto c = quadratic(7);
    EXPECT_EQ(dirichlet_from_json(to_json(c)), c);
    EXPECT_THROW(dirichlet_from_json(Json::parse(R"({"modulus":3,"order":2,"values":{"1":0}})")), FixtureError);
    EXPECT_THROW(dirichlet_from_json(Json::parse(R"({"modulus":3,"order":2,"values":{"1":0,"2":1},"x":1})")),
                 FixtureError);
    EXPECT_THROW(dirichlet_from_json(Json::parse(R"({"modulus":5,"order":4,"values":{"1":0,"2":1,"3":1,"4":2}})")),
                 FixtureError);
    EXPECT_EQ(dirichlet_from_json(Json::parse(R"({"modulus":5,"order":4,"values":{"1":0,"2":1,"3":3,"4":2}})"))(2),
              CyclotomicNumber::root_of_unity(4, 1));
}

TEST(LValues, GeneralizedBernoulliExamples) {
    EXPECT_EQ(generalized_bernoulli(1, DirichletCharacter()), Q(1, 2));
    EXPECT_EQ(generalized_bernoulli(1, quadratic(3)), Q(-1, 3));
    EXPECT_EQ(generalized_bernoulli(1, quadratic(4)), Q(-1, 2));
    EXPECT_THROW(generalized_bernoulli(1, DirichletCharacter::trivial(6)), InvalidArgument);
    for (std::uint64_t f = 3; f <= 100; ++f)
        for (const auto& c : primitive_characters(f))
            if (c.is_even()) EXPECT_TRUE(generalized_bernoulli(1, c).is_zero()) << f;
}

TEST(LValues, ClassicalValues) {
    EXPECT_EQ(L_at_nonpositive(0, DirichletCharacter()), Q(-1, 2));
    EXPECT_EQ(L_at_nonpositive(-1, DirichletCharacter()), Q(-1, 12));
    EXPECT_EQ(L_at_nonpositive(0, quadratic(3)), Q(1, 3));
    EXPECT_EQ(L_at_nonpositive(0, quadratic(4)), Q(1, 2));
    // h(-23) = 3 = -B_{1,chi_-23}
    EXPECT_EQ(L_at_nonpositive(0, quadratic(23)), Q(3));
    EXPECT_THROW(L_at_nonpositive(1, DirichletCharacter()), InvalidArgument);
}

TEST(LValues, HurwitzSweepAndParity) {
    using oracle::Real;
    const auto start = std::chrono::steady_clock::now();
    const Real tol("1e-30");
    std::size_t checked = 0;
    std::map<std::pair<std::uint64_t, std::int64_t>, oracle::Complex> roots;
    auto root = [&](std::uint64_t n, std::int64_t k) -> const oracle::Complex& {
        auto it = roots.find({n, k});
        if (it == roots.end()) it = roots.emplace(std::make_pair(n, k), oracle::root(n, k)).first;
        return it->second;
    };
    for (std::uint64_t f = 1; f <= 100; ++f) {
        const auto chars = primitive_characters(f);
        if (chars.empty()) continue;
        for (std::int64_t r : {0, -1, -2}) {
            const Real s(r);
            std::vector<Real> hz(f + 1);
            for (std::uint64_t a = 1; a <= f; ++a) hz[a] = oracle::hurwitz(s, Real(a) / Real(f));
            const Real scale = boost::multiprecision::pow(Real(f), -s);
            for (const auto& c : chars) {
                const auto exact = L_at_nonpositive(r, c);
                oracle::Complex num;
                for (std::uint64_t a = 1; a <= f; ++a) {
                    const auto e = c.exponent_at(static_cast<std::int64_t>(a));
                    if (e < 0) continue;
                    const auto& z = root(c.order(), e);
                    num = num + oracle::Complex(z.re * hz[a], z.im * hz[a]);
                }
                num = oracle::Complex(num.re * scale, num.im * scale);
                EXPECT_LT((oracle::embed(exact) - num).abs(), tol) << "f=" << f << " r=" << r;
                // trivial zeros: odd chi at odd r, even chi at even r < 0, even nontrivial chi at 0
                const bool vanish = r % 2 != 0 ? !c.is_even() : (c.is_even() && (r < 0 || !c.is_trivial()));
                EXPECT_EQ(exact.is_zero(), vanish) << "f=" << f << " r=" << r;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 3000u);
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    RecordProperty("seconds", std::to_string(secs));
}

TEST(LValues, STModification) {
    const auto triv = DirichletCharacter();
    EXPECT_EQ(L_ST(0, triv, {}, {}), Q(-1, 2));
    EXPECT_EQ(L_ST(0, triv, {2}, {}), Q(0));
    EXPECT_EQ(L_ST(0, quadratic(3), {}, {5}), Q(2));
    EXPECT_THROW(L_ST(0, triv, {2}, {2}), InvalidArgument);
    // S-truncation on an imprimitive character mod 12 through its conductor-3 core
    DirichletCharacter chi12 = quadratic(3);
    for (auto& c : all_characters(12))
        if (c.conductor() == 3) chi12 = c;
    EXPECT_EQ(chi12.modulus(), 12u);
    EXPECT_EQ(L_ST(0, chi12, {2}, {}), Q(1, 3) * (Q(1) + Q(1)));
    // T-factor at r = -1 uses q^2: chi_-4, T = {3}: 1 - (-1) 9 = 10
    EXPECT_EQ(delta_T_dual(-1, quadratic(4), {3}), Q(10));
}

TEST(LValues, DeltaReassemblesIntegrally) {
    // For G = (Z/f)^x and T unramified, the element with chi-components
    // delta_T(0, chi^) is prod_{q in T} (1 - q sigma_q): integer coefficients.
    for (std::uint64_t f : {5u, 7u, 12u, 15u}) {
        const auto u = UnitGroup::make(f);
        const auto chars = all_characters(f);
        for (const std::set<std::uint64_t>& t :
             std::vector<std::set<std::uint64_t>>{{11}, {13, 17}, {19, 23, 29}}) {
            std::map<std::uint64_t, Integer> expect{{1 % f, Integer(1)}};
            for (auto q : t) {
                std::map<std::uint64_t, Integer> next;
                for (const auto& [g, c] : expect) {
                    next[g] += c;
                    next[(g * q) % f] -= c * Integer(static_cast<unsigned long>(q));
                }
                expect = next;
            }
            for (auto residue : u.residues) {
                CyclotomicNumber coeff;
                for (const auto& c : chars)
                    coeff += delta_T_dual(0, c, t) * c(static_cast<std::int64_t>(residue)).conj();
                coeff = coeff.scaled(Rational(1, static_cast<long>(chars.size())));
                ASSERT_TRUE(coeff.is_rational());
                EXPECT_EQ(coeff.as_rational(), Rational(expect[residue])) << f << " " << residue;
            }
        }
    }
}

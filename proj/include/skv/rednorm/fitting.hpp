#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skv/rednorm/integer_lattice.hpp"
#include "skv/rednorm/reduced_norm.hpp"
#include "skv/ring/maximal_order.hpp"

namespace skv {

/// Finite abelian group prod Z/n_i with a G-action on column vectors:
/// (g x)_i = sum_j A_g(i, j) x_j mod n_i.
class FiniteGModule {
public:
    FiniteGModule() = default;

    /// Validates well-definedness and the homomorphism property on the full table.
    FiniteGModule(std::shared_ptr<const FiniteGroup> g, std::vector<Integer> factors, std::vector<IntMatrix> action)
        : g_(std::move(g)), n_(std::move(factors)), a_(std::move(action)) {
        const std::size_t k = n_.size();
        for (const auto& n : n_)
            if (n < 1) throw InvalidArgument("module factor orders must be positive");
        if (a_.size() != g_->order()) throw InvalidArgument("module action must list every group element");
        for (auto& m : a_) {
            if (m.rows() != k || m.cols() != k) throw InvalidArgument("module action matrix has the wrong size");
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    m(i, j) = reduce(m(i, j), n_[i]);
                    // e_j has order n_j, so n_j A(i, j) must vanish mod n_i
                    if ((n_[j] * m(i, j)) % n_[i] != 0)
                        throw InvalidArgument("module action is not well defined on the factors");
                }
        }
        for (std::size_t j = 0; j < k; ++j) {
            auto e = basis(j);
            if (act(0, e) != e) throw InvalidArgument("identity does not act trivially on the module");
            for (Elem x = 0; x < g_->order(); ++x)
                for (Elem y = 0; y < g_->order(); ++y)
                    if (act(g_->mul(x, y), e) != act(x, act(y, e)))
                        throw InvalidArgument("module action is not a homomorphism");
        }
    }

    static FiniteGModule zero(std::shared_ptr<const FiniteGroup> g) {
        std::vector<IntMatrix> a(g->order(), IntMatrix(0, 0, 0));
        return FiniteGModule(std::move(g), {}, std::move(a));
    }

    const FiniteGroup& group() const { return *g_; }
    const std::vector<Integer>& factors() const { return n_; }
    const IntMatrix& action(Elem g) const { return a_[g]; }
    std::size_t rank() const { return n_.size(); }

    Integer order() const {
        Integer o = 1;
        for (const auto& n : n_) o *= n;
        return o;
    }

    /// Least common multiple of the factor orders.
    Integer exponent() const {
        Integer e = 1;
        for (const auto& n : n_) mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
        return e;
    }

    IntVector basis(std::size_t j) const {
        IntVector e(n_.size(), 0);
        e[j] = reduce(1, n_[j]);
        return e;
    }

    IntVector act(Elem g, const IntVector& x) const {
        IntVector y(n_.size(), 0);
        for (std::size_t i = 0; i < n_.size(); ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < n_.size(); ++j) s += a_[g](i, j) * x[j];
            y[i] = reduce(s, n_[i]);
        }
        return y;
    }

    /// Action of a group ring element with rational coefficients. Denominators
    /// must be invertible modulo the exponent; otherwise the element does not
    /// act and InvalidArgument is raised.
    IntVector act(const GroupRingElement& x, const IntVector& v) const {
        const Integer e = exponent();
        IntVector y(n_.size(), 0);
        for (Elem g = 0; g < x.coeffs().size(); ++g) {
            if (x[g].is_zero()) continue;
            auto q = x[g].as_rational();
            if (!q) throw InvalidArgument("group ring element with irrational coefficients does not act on a module");
            Integer inv;
            if (mpz_invert(inv.get_mpz_t(), q->den().get_mpz_t(), e.get_mpz_t()) == 0 && e != 1)
                throw InvalidArgument("coefficient denominator " + q->den().get_str() + " is not invertible on the module");
            Integer c = q->num() * (e == 1 ? Integer(0) : inv);
            auto gv = act(g, v);
            for (std::size_t i = 0; i < n_.size(); ++i) y[i] = reduce(y[i] + c * gv[i], n_[i]);
        }
        return y;
    }

private:
    static Integer reduce(const Integer& a, const Integer& n) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
        return r;
    }

    std::shared_ptr<const FiniteGroup> g_;
    std::vector<Integer> n_;
    std::vector<IntMatrix> a_;
};

/// Finite presentation Lambda^a -> Lambda^b -> M: an a x b matrix over ZG whose
/// rows generate the relations (M = row vectors of length b modulo the left
/// submodule spanned by the rows).
struct PresentationModule {
    GroupRingMatrix h;
    bool quadratic() const { return h.rows() == h.cols(); }
};

/// Cokernel of a presentation as a finite module (Smith normal form of the
/// relation lattice in Z^(b |G|)). Infinite cokernels are rejected.
inline FiniteGModule module_from_presentation(const PresentationModule& p) {
    const auto& h = p.h;
    if (!is_integral_matrix(h)) throw InvalidArgument("presentation entries must lie in ZG");
    const auto gp = h(0, 0).group_ptr();
    const auto& g = *gp;
    const std::size_t n = g.order(), b = h.cols();
    // coordinate (k, e) <-> k * n + e; left multiplication by x sends coefficient at e to x e
    IntMatrix rel(h.rows() * n, b * n, 0);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (Elem x = 0; x < n; ++x)
            for (std::size_t k = 0; k < b; ++k)
                for (Elem e = 0; e < n; ++e) {
                    const auto& c = h(r, k)[e];
                    if (!c.is_zero()) rel(r * n + x, k * n + g.mul(x, e)) += c.coeffs()[0].num();
                }
    auto snf = smith_normal_form(rel);
    const std::size_t dim = b * n;
    std::vector<std::size_t> kept;
    std::vector<Integer> factors;
    for (std::size_t i = 0; i < dim; ++i) {
        Integer d = i < std::min(rel.rows(), dim) ? snf.d(i, i) : Integer(0);
        if (d == 0) throw InvalidArgument("presentation has an infinite cokernel");
        if (d != 1) {
            kept.push_back(i);
            factors.push_back(d);
        }
    }
    // Row vector x acts by x -> x P_g; in coordinates y = x V this is y -> y V^-1 P_g V.
    std::vector<IntMatrix> action;
    for (Elem x = 0; x < n; ++x) {
        IntMatrix pg(dim, dim, 0);
        for (std::size_t k = 0; k < b; ++k)
            for (Elem e = 0; e < n; ++e) pg(k * n + e, k * n + g.mul(x, e)) = 1;
        auto conj = snf.v_inv * pg * snf.v;
        IntMatrix a(kept.size(), kept.size(), 0);
        for (std::size_t i = 0; i < kept.size(); ++i)
            for (std::size_t j = 0; j < kept.size(); ++j) a(i, j) = conj(kept[j], kept[i]);  // transpose: column convention
        action.push_back(std::move(a));
    }
    return FiniteGModule(gp, std::move(factors), std::move(action));
}

struct FittingGenerator {
    std::vector<std::size_t> rows;  // selected rows, empty for the zero class
    CentralElement value;
};

/// Fitt(h) up to nr-equivalence: reduced norms of all b x b row selections
/// (lexicographic), or the zero class when a < b. The class of the maximal
/// Fitting invariant contains this one, so annihilation verdicts built on it
/// are conservative.
struct FittingInvariant {
    std::vector<FittingGenerator> generators;
    std::string equivalence_note = "class under nr(Lambda)-equivalence; representative of a given presentation";
};

inline FittingInvariant fitting_of_presentation(const PresentationModule& p, const RepresentationTable& reps) {
    FittingInvariant f;
    const std::size_t a = p.h.rows(), b = p.h.cols();
    if (a < b) {
        f.generators.push_back({{}, CentralElement::scalar(reps.table_ptr(), 0)});
        return f;
    }
    std::vector<std::size_t> sel(b);
    for (std::size_t i = 0; i < b; ++i) sel[i] = i;
    while (true) {
        f.generators.push_back({sel, reduced_norm(p.h.select_rows(sel), reps)});
        std::size_t i = b;
        while (i > 0 && sel[i - 1] == a - b + i - 1) --i;
        if (i == 0) break;
        ++sel[i - 1];
        for (std::size_t j = i; j < b; ++j) sel[j] = sel[j - 1] + 1;
    }
    return f;
}

/// An element offered as a member of H(G), with how it got there.
struct HMember {
    CentralElement value;
    std::string label;
    bool certified = false;  // false: survived randomized falsification only ("assumed-H")
};

struct AnnihilationViolation {
    std::string h_label;
    std::size_t generator = 0;
    std::size_t module_basis = 0;
    IntVector image;
    std::string reason;
};

struct AnnihilationResult {
    bool annihilates = true;
    std::vector<AnnihilationViolation> violations;
};

/// Checks (h f) m = 0 for every listed h, every element f and every module generator m.
inline AnnihilationResult annihilation_check(const std::vector<CentralElement>& elements, const FiniteGModule& m,
                                             const std::vector<HMember>& h_members) {
    AnnihilationResult r;
    for (const auto& h : h_members)
        for (std::size_t fi = 0; fi < elements.size(); ++fi) {
            auto x = (h.value * elements[fi]).ring();
            for (std::size_t j = 0; j < m.rank(); ++j) {
                try {
                    auto y = m.act(x, m.basis(j));
                    bool zero = std::all_of(y.begin(), y.end(), [](const Integer& v) { return v == 0; });
                    if (!zero) {
                        r.annihilates = false;
                        r.violations.push_back({h.label, fi, j, y, "nonzero image"});
                    }
                } catch (const InvalidArgument& e) {
                    r.annihilates = false;
                    r.violations.push_back({h.label, fi, j, {}, e.what()});
                }
            }
        }
    return r;
}

inline std::vector<CentralElement> fitting_values(const FittingInvariant& f) {
    std::vector<CentralElement> v;
    for (const auto& g : f.generators) v.push_back(g.value);
    return v;
}

/// Random b x b matrix over ZG with coefficients in [-height, height].
inline GroupRingMatrix random_integral_matrix(const std::shared_ptr<const FiniteGroup>& g, std::size_t b,
                                              std::mt19937_64& rng, int height = 1) {
    std::uniform_int_distribution<int> d(-height, height);
    GroupRingMatrix m(b, b, GroupRingElement(g));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            for (Elem e = 0; e < g->order(); ++e) m(i, j)[e] = CyclotomicNumber(d(rng));
    return m;
}

/// The certified members of H(G): |G| always (|G| M lies in ZG and H* has
/// entries in M), and 1 when G is abelian (H* is then the classical adjugate).
inline std::vector<HMember> certified_h_members(const std::shared_ptr<const CharacterTable>& t) {
    std::vector<HMember> out;
    if (t->group().is_abelian()) out.push_back({CentralElement::one(t), "1", true});
    const auto n = static_cast<long>(t->group().order());
    out.push_back({CentralElement::scalar(t, Rational(n)), "|G|=" + std::to_string(n), true});
    return out;
}

/// Randomized falsification of a candidate x in H(G): x H* must be integral
/// for k random integral matrices of sizes 1..max_b. Returns the candidate
/// tagged "assumed-H" if it survives, nothing otherwise.
inline std::optional<HMember> falsify_h_candidate(const CentralElement& x, const std::string& label,
                                                  const RepresentationTable& reps, std::uint64_t seed,
                                                  std::size_t k = 500, std::size_t max_b = 3) {
    std::mt19937_64 rng(seed);
    const auto g = reps.table().group_ptr();
    const auto xr = x.ring();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t b = 1 + i % max_b;
        auto a = random_integral_matrix(g, b, rng);
        auto adj = star_adjoint(a, reps).adjoint;
        for (const auto& e : adj.data())
            if (!(xr * e).is_integral()) return std::nullopt;
    }
    return HMember{x, label + " (assumed-H)", false};
}

/// Verdict of an I(G)-membership test.
enum class IMembership { certified, necessary_only, falsified };

inline const char* to_string(IMembership m) {
    switch (m) {
        case IMembership::certified: return "certified";
        case IMembership::necessary_only: return "necessary-condition-pass";
        case IMembership::falsified: return "falsified";
    }
    return "?";
}

/// Sub-lattice of I(G) spanned by z nr(H), z running over class sums and H over
/// a bounded search: all 1 x 1 matrices with coefficients in {-1, 0, 1} when
/// that is at most `exhaustive_limit` matrices, plus `samples` random 2 x 2 ones.
class IdealLattice {
public:
    IdealLattice(const RepresentationTable& reps, std::uint64_t seed, std::size_t samples = 40,
                 std::size_t exhaustive_limit = 6561)
        : t_(reps.table_ptr()) {
        if (t_->group().is_abelian()) return;  // I(G) = ZG: nr is the identity on 1 x 1 matrices
        const auto g = t_->group_ptr();
        const std::size_t n = g->order();
        std::vector<CentralElement> norms;
        double count = 1;
        for (std::size_t i = 0; i < n; ++i) count *= 3;
        if (count <= static_cast<double>(exhaustive_limit)) {
            std::vector<int> digits(n, -1);
            while (true) {
                GroupRingMatrix m(1, 1, GroupRingElement(g));
                for (std::size_t i = 0; i < n; ++i) m(0, 0)[static_cast<Elem>(i)] = CyclotomicNumber(digits[i]);
                norms.push_back(reduced_norm(m, reps));
                std::size_t i = 0;
                for (; i < n; ++i) {
                    if (++digits[i] <= 1) break;
                    digits[i] = -1;
                }
                if (i == n) break;
            }
        } else {
            std::mt19937_64 rng(seed);
            for (std::size_t s = 0; s < samples; ++s) norms.push_back(reduced_norm(random_integral_matrix(g, 1, rng), reps));
        }
        std::mt19937_64 rng(seed + 1);
        for (std::size_t s = 0; s < samples; ++s) norms.push_back(reduced_norm(random_integral_matrix(g, 2, rng), reps));
        std::vector<IntVector> rows;
        for (const auto& nr : norms)
            for (std::size_t k = 0; k < t_->classes().size(); ++k) {
                GroupRingElement z(g);
                for (Elem e : t_->classes()[k]) z[e] = CyclotomicNumber(1);
                auto v = coordinates(CentralElement::from_ring(t_, z) * nr);
                if (v) rows.push_back(std::move(*v));
            }
        hnf_ = hermite_rows(std::move(rows));
    }

    /// |G| times the coefficient per conjugacy class, if these are all integers
    /// (they are for every element of I(G), since |G| I(G) lies in ZG).
    std::optional<IntVector> coordinates(const CentralElement& x) const {
        auto r = x.ring();
        const Rational n(static_cast<long>(t_->group().order()));
        IntVector v;
        for (const auto& cls : t_->classes()) {
            auto q = r[cls.front()].as_rational();
            if (!q) return std::nullopt;
            auto s = *q * n;
            if (!s.is_integer()) return std::nullopt;
            v.push_back(s.num());
        }
        return v;
    }

    IMembership classify(const CentralElement& x) const {
        if (!max_order_membership_full(x).member) return IMembership::falsified;
        if (t_->group().is_abelian()) return x.ring().is_integral() ? IMembership::certified : IMembership::falsified;
        auto v = coordinates(x);
        if (!v) return IMembership::falsified;
        if (lattice_contains(hnf_, *v)) return IMembership::certified;
        return IMembership::necessary_only;
    }

private:
    std::shared_ptr<const CharacterTable> t_;
    std::vector<IntVector> hnf_;
};

}  // namespace skv

#pragma once

#include <memory>
#include <vector>

#include "skv/rednorm/matrix.hpp"
#include "skv/ring/center.hpp"

namespace skv {

using CycMatrix = Matrix<CyclotomicNumber>;
using GroupRingMatrix = Matrix<GroupRingElement>;

/// A matrix with exactly one nonzero entry per column: column j has
/// value[j] in row row[j].
struct MonomialMatrix {
    std::vector<std::size_t> row;
    std::vector<CyclotomicNumber> value;

    CycMatrix dense() const {
        CycMatrix m(row.size(), row.size(), CyclotomicNumber());
        for (std::size_t j = 0; j < row.size(); ++j) m(row[j], j) = value[j];
        return m;
    }
};

/// Induced representation of a certificate (U, psi): with left coset
/// representatives t_i, rho(g)_ij = psi(t_i^-1 g t_j) (zero off U).
inline std::vector<MonomialMatrix> monomial_representation(const FiniteGroup& g, const MonomialCertificate& cert) {
    const auto reps = g.left_transversal(cert.psi.domain);
    std::vector<MonomialMatrix> out(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        auto& m = out[x];
        m.row.resize(reps.size());
        m.value.resize(reps.size());
        for (std::size_t j = 0; j < reps.size(); ++j) {
            Elem gt = g.mul(x, reps[j]);
            bool found = false;
            for (std::size_t i = 0; i < reps.size(); ++i) {
                Elem u = g.mul(g.inv(reps[i]), gt);
                if (cert.psi.domain.contains(u)) {
                    m.row[j] = i;
                    m.value[j] = cert.psi.value(u);
                    found = true;
                    break;
                }
            }
            if (!found) throw InternalError("coset representative search failed");
        }
    }
    return out;
}

/// Character table together with explicit monomial representations.
class RepresentationTable {
public:
    explicit RepresentationTable(std::shared_ptr<const CharacterTable> t) : t_(std::move(t)) {
        for (std::size_t i = 0; i < t_->size(); ++i) reps_.push_back(monomial_representation(t_->group(), t_->certificate(i)));
    }

    const CharacterTable& table() const { return *t_; }
    const std::shared_ptr<const CharacterTable>& table_ptr() const { return t_; }
    const MonomialMatrix& rho(std::size_t chi, Elem g) const { return reps_[chi][g]; }
    std::size_t degree(std::size_t chi) const { return static_cast<std::size_t>(t_->chi(chi).degree); }

    /// rho_chi applied entrywise to a b x b group ring matrix: a (b d) x (b d) matrix.
    CycMatrix represent(const GroupRingMatrix& a, std::size_t chi) const {
        const std::size_t d = degree(chi);
        CycMatrix m(a.rows() * d, a.cols() * d, CyclotomicNumber());
        for (std::size_t k = 0; k < a.rows(); ++k)
            for (std::size_t l = 0; l < a.cols(); ++l) {
                const auto& x = a(k, l);
                for (Elem e = 0; e < x.coeffs().size(); ++e) {
                    if (x[e].is_zero()) continue;
                    const auto& r = reps_[chi][e];
                    for (std::size_t j = 0; j < d; ++j) m(k * d + r.row[j], l * d + j) += x[e] * r.value[j];
                }
            }
        return m;
    }

    /// Inverse Fourier transform: the group ring matrix X with rho_chi(X) = blocks[chi]
    /// for every chi. x_g = |G|^-1 sum_chi chi(1) tr(rho_chi(g^-1) X_chi).
    GroupRingMatrix reconstruct(const std::vector<CycMatrix>& blocks, std::size_t b) const {
        const auto& g = t_->group();
        GroupRingMatrix out(b, b, GroupRingElement(t_->group_ptr()));
        const Rational inv(1, static_cast<long>(g.order()));
        for (std::size_t k = 0; k < b; ++k)
            for (std::size_t l = 0; l < b; ++l)
                for (Elem e = 0; e < g.order(); ++e) {
                    CyclotomicNumber s;
                    for (std::size_t chi = 0; chi < t_->size(); ++chi) {
                        const std::size_t d = degree(chi);
                        const auto& r = reps_[chi][g.inv(e)];
                        CyclotomicNumber tr;
                        // tr(R B) = sum_j R(row_j, j) B(j, row_j)
                        for (std::size_t j = 0; j < d; ++j) tr += r.value[j] * blocks[chi](k * d + j, l * d + r.row[j]);
                        s += tr.scaled(Rational(static_cast<long>(d)));
                    }
                    out(k, l)[e] = s.scaled(inv);
                }
        return out;
    }

private:
    std::shared_ptr<const CharacterTable> t_;
    std::vector<std::vector<MonomialMatrix>> reps_;
};

inline GroupRingMatrix group_ring_identity(const std::shared_ptr<const FiniteGroup>& g, std::size_t b) {
    return GroupRingMatrix::identity(b, GroupRingElement(g), GroupRingElement::scalar(g, 1));
}

inline bool is_rational_matrix(const GroupRingMatrix& a) {
    for (const auto& x : a.data())
        if (!x.is_rational()) return false;
    return true;
}

inline bool is_integral_matrix(const GroupRingMatrix& a) {
    for (const auto& x : a.data())
        if (!x.is_integral()) return false;
    return true;
}

/// nr(A): the chi-component is det rho_chi(A). For matrices over QG the
/// result must be Galois-equivariant; a violation is an internal error.
inline CentralElement reduced_norm(const GroupRingMatrix& a, const RepresentationTable& reps) {
    if (!a.is_square()) throw InvalidArgument("reduced norm of a non-square matrix");
    std::vector<CyclotomicNumber> comps;
    for (std::size_t chi = 0; chi < reps.table().size(); ++chi)
        comps.push_back(determinant(reps.represent(a, chi), CyclotomicNumber(), CyclotomicNumber(1)));
    CentralElement n(reps.table_ptr(), std::move(comps));
    if (is_rational_matrix(a) && !n.is_rational()) throw InternalError("reduced norm is not Galois-equivariant");
    return n;
}

struct StarAdjointResult {
    GroupRingMatrix adjoint;
    CentralElement norm;
    std::vector<CycMatrix> component_adjoints;  // per character
};

/// H* with H* H = H H* = nr(H) 1. Per component, with det(X - M) = sum a_j X^j
/// of degree m, M* = (-1)^(m+1) sum_{j >= 1} a_j M^(j-1).
inline StarAdjointResult star_adjoint(const GroupRingMatrix& a, const RepresentationTable& reps) {
    if (!a.is_square()) throw InvalidArgument("star adjoint of a non-square matrix");
    const std::size_t b = a.rows();
    const CyclotomicNumber zero, one(1);
    std::vector<CycMatrix> adj;
    std::vector<CyclotomicNumber> norms;
    for (std::size_t chi = 0; chi < reps.table().size(); ++chi) {
        auto m = reps.represent(a, chi);
        const std::size_t dim = m.rows();
        auto p = charpoly(m, zero, one);
        // Horner: sum_{j>=1} p_j M^(j-1)
        auto acc = CycMatrix::identity(dim, zero, p[dim]);
        for (std::size_t j = dim; j-- > 1;) acc = acc * m + CycMatrix::identity(dim, zero, p[j]);
        if ((dim + 1) % 2 == 1) acc = acc.map([](const CyclotomicNumber& x) { return -x; });
        auto det = dim % 2 == 0 ? p[0] : -p[0];
        auto id = CycMatrix::identity(dim, zero, det);
        if (!(m * acc == id) || !(acc * m == id)) throw InternalError("star adjoint identity failed in a component");
        adj.push_back(std::move(acc));
        norms.push_back(det);
    }
    StarAdjointResult r{reps.reconstruct(adj, b), CentralElement(reps.table_ptr(), std::move(norms)), adj};
    const auto g = reps.table().group_ptr();
    auto nr1 = group_ring_identity(g, b).map([&](const GroupRingElement& x) { return x * r.norm.ring(); });
    if (!(r.adjoint * a == nr1) || !(a * r.adjoint == nr1))
        throw InternalError("star adjoint identity H* H = nr(H) failed");
    return r;
}

/// Every component-adjoint entry is an algebraic integer.
inline bool adjoint_components_integral(const StarAdjointResult& r) {
    for (const auto& m : r.component_adjoints)
        for (const auto& x : m.data())
            if (!x.is_algebraic_integer()) return false;
    return true;
}

/// Element of M_n(F)[C]: one n x n matrix per element of the abelian group C.
struct MatrixGroupRingElement {
    std::shared_ptr<const FiniteGroup> c;
    std::vector<CycMatrix> parts;

    friend MatrixGroupRingElement operator*(const MatrixGroupRingElement& a, const MatrixGroupRingElement& b) {
        const auto n = a.parts.front().rows();
        MatrixGroupRingElement r{a.c, std::vector<CycMatrix>(a.c->order(), CycMatrix(n, n, CyclotomicNumber()))};
        for (Elem x = 0; x < a.c->order(); ++x)
            for (Elem y = 0; y < a.c->order(); ++y) r.parts[a.c->mul(x, y)] += a.parts[x] * b.parts[y];
        return r;
    }
    friend bool operator==(const MatrixGroupRingElement& a, const MatrixGroupRingElement& b) { return a.parts == b.parts; }
};

/// sigma: M_n(F)[C] -> M_n(F[C]), sum_c M_c c -> (sum_c (M_c)_ij c)_ij.
inline GroupRingMatrix sigma_isomorphism(const MatrixGroupRingElement& m) {
    if (!m.c->is_abelian()) throw InvalidArgument("sigma isomorphism needs an abelian group C");
    const auto n = m.parts.front().rows();
    GroupRingMatrix out(n, n, GroupRingElement(m.c));
    for (Elem x = 0; x < m.c->order(); ++x)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j)[x] = m.parts[x](i, j);
    return out;
}

inline MatrixGroupRingElement sigma_inverse(const GroupRingMatrix& a) {
    const auto& c = a(0, 0).group_ptr();
    if (!c->is_abelian()) throw InvalidArgument("sigma isomorphism needs an abelian group C");
    MatrixGroupRingElement m{c, std::vector<CycMatrix>(c->order(), CycMatrix(a.rows(), a.cols(), CyclotomicNumber()))};
    for (Elem x = 0; x < c->order(); ++x)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m.parts[x](i, j) = a(i, j)[x];
    return m;
}

/// Determinant over the commutative ring F[C].
inline GroupRingElement determinant_over_abelian(const GroupRingMatrix& a) {
    const auto& c = a(0, 0).group_ptr();
    if (!c->is_abelian()) throw InvalidArgument("determinant over a non-commutative group ring");
    return determinant(a, GroupRingElement(c), GroupRingElement::scalar(c, 1));
}

}  // namespace skv

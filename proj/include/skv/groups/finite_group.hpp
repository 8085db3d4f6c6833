#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "skv/errors.hpp"

namespace skv {

/// Hard ceiling on group orders; subgroup searches are exhaustive.
inline constexpr std::size_t kMaxGroupOrder = 128;

using Elem = std::uint32_t;

/// Set of group elements, also used for subgroups.
class ElementSet {
public:
    ElementSet() = default;

    static ElementSet of(const std::vector<Elem>& elems) {
        ElementSet s;
        for (auto e : elems) s.insert(e);
        return s;
    }

    void insert(Elem e) { bits_.set(e); }
    void erase(Elem e) { bits_.reset(e); }
    bool contains(Elem e) const { return e < kMaxGroupOrder && bits_.test(e); }
    std::size_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }

    std::vector<Elem> elements() const {
        std::vector<Elem> out;
        out.reserve(size());
        for (std::size_t i = 0; i < kMaxGroupOrder; ++i)
            if (bits_.test(i)) out.push_back(static_cast<Elem>(i));
        return out;
    }

    bool is_subset_of(const ElementSet& o) const { return (bits_ & ~o.bits_).none(); }
    ElementSet operator&(const ElementSet& o) const { ElementSet r; r.bits_ = bits_ & o.bits_; return r; }
    ElementSet operator|(const ElementSet& o) const { ElementSet r; r.bits_ = bits_ | o.bits_; return r; }

    friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.bits_ == b.bits_; }

    /// Canonical order: lexicographic on the sorted element lists.
    friend bool operator<(const ElementSet& a, const ElementSet& b) {
        for (std::size_t i = 0; i < kMaxGroupOrder; ++i) {
            bool x = a.bits_.test(i), y = b.bits_.test(i);
            if (x != y) return x;  // the set holding the smaller first differing element sorts first
        }
        return false;
    }

private:
    std::bitset<kMaxGroupOrder> bits_;
};

/// Finite group given by its full multiplication table; element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() = default;

    /// Validates the table (closure, identity, inverses, associativity).
    static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table,
                                  std::vector<std::string> labels = {},
                                  std::size_t cap = kMaxGroupOrder) {
        const std::size_t n = table.size();
        if (n == 0) throw InvalidArgument("group table is empty");
        if (n > cap || n > kMaxGroupOrder)
            throw ResourceError("group order " + std::to_string(n) + " exceeds the configured cap");
        FiniteGroup g;
        g.n_ = n;
        g.mul_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            if (table[a].size() != n) throw InvalidArgument("group table is not square");
            for (std::size_t b = 0; b < n; ++b) {
                if (table[a][b] >= n) throw InvalidArgument("group table entry out of range");
                g.mul_[a * n + b] = table[a][b];
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            if (g.mul(0, a) != a || g.mul(a, 0) != a)
                throw InvalidArgument("element 0 is not the identity");
        g.inv_.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<bool> row_seen(n, false);
            bool found = false;
            for (std::size_t b = 0; b < n; ++b) {
                Elem p = g.mul(a, b);
                if (row_seen[p]) throw InvalidArgument("group table row is not a permutation");
                row_seen[p] = true;
                if (p == 0) {
                    if (g.mul(b, a) != 0) throw InvalidArgument("one-sided inverse in group table");
                    g.inv_[a] = static_cast<Elem>(b);
                    found = true;
                }
            }
            if (!found) throw InvalidArgument("element without inverse in group table");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                        throw InvalidArgument("group table is not associative");
        if (labels.empty()) {
            for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
        }
        if (labels.size() != n) throw InvalidArgument("label count differs from group order");
        g.labels_ = std::move(labels);
        return g;
    }

    /// Group generated by permutations of {0..d-1} (image lists). Elements are
    /// numbered in breadth-first order from the identity.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                         std::size_t cap = kMaxGroupOrder) {
        using Perm = std::vector<int>;
        std::size_t degree = gens.empty() ? 0 : gens.front().size();
        for (const auto& p : gens) {
            if (p.size() != degree) throw InvalidArgument("permutation generators differ in degree");
            std::vector<bool> seen(degree, false);
            for (int x : p) {
                if (x < 0 || static_cast<std::size_t>(x) >= degree || seen[x])
                    throw InvalidArgument("generator is not a permutation");
                seen[x] = true;
            }
        }
        Perm id(degree);
        std::iota(id.begin(), id.end(), 0);
        std::vector<Perm> elems{id};
        std::map<Perm, Elem> index{{id, 0}};
        // (p*q)(x) = p(q(x)): apply q first.
        auto compose = [](const Perm& p, const Perm& q) {
            Perm r(q.size());
            for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
            return r;
        };
        for (std::size_t i = 0; i < elems.size(); ++i) {
            for (const auto& s : gens) {
                Perm next = compose(elems[i], s);
                if (!index.count(next)) {
                    if (elems.size() >= std::min(cap, kMaxGroupOrder))
                        throw ResourceError("generated group exceeds the configured order cap");
                    index.emplace(next, static_cast<Elem>(elems.size()));
                    elems.push_back(std::move(next));
                }
            }
        }
        std::vector<std::vector<Elem>> table(elems.size(), std::vector<Elem>(elems.size()));
        for (std::size_t a = 0; a < elems.size(); ++a)
            for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
        return from_table(table, {}, cap);
    }

    /// Cyclic group Z/n with element k = generator^k.
    static FiniteGroup cyclic(std::size_t n) {
        std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Elem>((a + b) % n);
        return from_table(t);
    }

    /// Direct product with element (a, b) numbered a * |B| + b.
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        const std::size_t n = a.order() * b.order();
        if (n > kMaxGroupOrder) throw ResourceError("direct product exceeds the group order cap");
        std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                Elem ax = static_cast<Elem>(x / b.order()), bx = static_cast<Elem>(x % b.order());
                Elem ay = static_cast<Elem>(y / b.order()), by = static_cast<Elem>(y % b.order());
                t[x][y] = static_cast<Elem>(a.mul(ax, ay) * b.order() + b.mul(bx, by));
            }
        return from_table(t);
    }

    std::size_t order() const { return n_; }
    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem g, Elem x) const { return mul(mul(inv(x), g), x); }  // x^-1 g x
    const std::vector<std::string>& labels() const { return labels_; }

    Elem pow(Elem g, std::int64_t e) const {
        if (e < 0) {
            g = inv(g);
            e = -e;
        }
        Elem r = 0;
        for (std::int64_t i = 0; i < e; ++i) r = mul(r, g);
        return r;
    }

    std::size_t element_order(Elem g) const {
        std::size_t k = 1;
        for (Elem x = g; x != 0; x = mul(x, g)) ++k;
        return k;
    }

    /// Least common multiple of element orders.
    std::size_t exponent() const {
        std::size_t e = 1;
        for (Elem g = 0; g < n_; ++g) e = std::lcm(e, element_order(g));
        return e;
    }

    bool is_abelian() const {
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < a; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    ElementSet all() const {
        ElementSet s;
        for (Elem g = 0; g < n_; ++g) s.insert(g);
        return s;
    }

    /// Subgroup generated by `gens`.
    ElementSet closure(const std::vector<Elem>& gens) const {
        ElementSet s;
        s.insert(0);
        std::vector<Elem> frontier{0};
        while (!frontier.empty()) {
            Elem x = frontier.back();
            frontier.pop_back();
            for (Elem gen : gens) {
                Elem y = mul(x, gen);
                if (!s.contains(y)) {
                    s.insert(y);
                    frontier.push_back(y);
                }
            }
        }
        return s;
    }

    bool is_subgroup(const ElementSet& s) const {
        if (!s.contains(0)) return false;
        auto el = s.elements();
        for (Elem a : el)
            for (Elem b : el)
                if (!s.contains(mul(a, b))) return false;
        return true;
    }

    bool is_normal(const ElementSet& s) const {
        for (Elem h : s.elements())
            for (Elem x = 0; x < n_; ++x)
                if (!s.contains(conj(h, x))) return false;
        return true;
    }

    /// Smallest normal subgroup containing `gens`.
    ElementSet normal_closure(const std::vector<Elem>& gens) const {
        std::vector<Elem> conjugates;
        for (Elem g : gens)
            for (Elem x = 0; x < n_; ++x) conjugates.push_back(conj(g, x));
        return closure(conjugates);
    }

    /// Commutator subgroup of the subgroup `u`.
    ElementSet commutator_subgroup(const ElementSet& u) const {
        std::vector<Elem> comms;
        auto el = u.elements();
        for (Elem a : el)
            for (Elem b : el) comms.push_back(mul(mul(inv(a), inv(b)), mul(a, b)));
        return closure(comms);
    }

    /// Greedy generating set of a subgroup, smallest indices first.
    std::vector<Elem> generators_of(const ElementSet& u) const {
        std::vector<Elem> gens;
        ElementSet span;
        span.insert(0);
        for (Elem g : u.elements()) {
            if (span.contains(g)) continue;
            gens.push_back(g);
            span = closure(gens);
        }
        return gens;
    }

    /// Left coset representatives of `u` (minimal element of each coset, sorted).
    std::vector<Elem> left_transversal(const ElementSet& u) const {
        std::vector<Elem> reps;
        ElementSet covered;
        auto el = u.elements();
        for (Elem g = 0; g < n_; ++g) {
            if (covered.contains(g)) continue;
            reps.push_back(g);
            for (Elem x : el) covered.insert(mul(g, x));
        }
        return reps;
    }

    /// All subgroups, ordered by decreasing size then canonically. Exhaustive:
    /// starts from cyclic subgroups and joins with cyclic subgroups to a fixpoint.
    std::vector<ElementSet> subgroups() const {
        std::vector<ElementSet> cyclic_subs;
        for (Elem g = 0; g < n_; ++g) {
            auto c = closure({g});
            if (std::find(cyclic_subs.begin(), cyclic_subs.end(), c) == cyclic_subs.end()) cyclic_subs.push_back(c);
        }
        std::vector<ElementSet> found = cyclic_subs;
        std::vector<std::pair<ElementSet, std::vector<Elem>>> work;
        for (const auto& c : cyclic_subs) work.push_back({c, generators_of(c)});
        std::map<std::vector<Elem>, bool> seen;
        for (const auto& c : found) seen[c.elements()] = true;
        for (std::size_t i = 0; i < work.size(); ++i) {
            for (Elem g = 0; g < n_; ++g) {
                if (work[i].first.contains(g)) continue;
                auto gens = work[i].second;
                gens.push_back(g);
                auto s = closure(gens);
                auto key = s.elements();
                if (seen.count(key)) continue;
                seen[key] = true;
                found.push_back(s);
                work.push_back({s, gens});
            }
        }
        std::sort(found.begin(), found.end(), [](const ElementSet& a, const ElementSet& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return a < b;
        });
        return found;
    }

    std::vector<ElementSet> normal_subgroups() const {
        std::vector<ElementSet> out;
        for (const auto& s : subgroups())
            if (is_normal(s)) out.push_back(s);
        return out;
    }

    /// Conjugacy classes sorted by minimal element; the identity class is first.
    std::vector<std::vector<Elem>> conjugacy_classes() const {
        std::vector<std::vector<Elem>> classes;
        std::vector<bool> done(n_, false);
        for (Elem g = 0; g < n_; ++g) {
            if (done[g]) continue;
            ElementSet cls;
            for (Elem x = 0; x < n_; ++x) cls.insert(conj(g, x));
            auto el = cls.elements();
            for (Elem e : el) done[e] = true;
            classes.push_back(std::move(el));
        }
        return classes;
    }

    /// The subgroup `u` as a group in its own right, plus the embedding
    /// (position i of the result maps to embedding[i] in this group).
    std::pair<FiniteGroup, std::vector<Elem>> subgroup_as_group(const ElementSet& u) const {
        auto el = u.elements();  // element 0 (identity) is first
        std::map<Elem, Elem> pos;
        for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = static_cast<Elem>(i);
        std::vector<std::vector<Elem>> t(el.size(), std::vector<Elem>(el.size()));
        for (std::size_t a = 0; a < el.size(); ++a)
            for (std::size_t b = 0; b < el.size(); ++b) {
                auto it = pos.find(mul(el[a], el[b]));
                if (it == pos.end()) throw InvalidArgument("subset is not closed under multiplication");
                t[a][b] = it->second;
            }
        std::vector<std::string> labels;
        for (Elem e : el) labels.push_back(labels_[e]);
        return {from_table(t, labels), el};
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.mul_ == b.mul_; }

private:
    std::size_t n_ = 0;
    std::vector<Elem> mul_;
    std::vector<Elem> inv_;
    std::vector<std::string> labels_;
};

/// Result of detect_direct_product: G = H x C with C abelian.
struct DirectProduct {
    ElementSet h;
    ElementSet c;
};

/// Finds normal H, C with H n C = 1, HC = G, C abelian and [H, C] = 1,
/// maximizing |C|. Empty when only C = 1 works.
inline std::optional<DirectProduct> detect_direct_product(const FiniteGroup& g) {
    auto normals = g.normal_subgroups();
    std::optional<DirectProduct> best;
    for (const auto& c : normals) {  // decreasing size, so the first hit maximizes |C|
        if (c.size() == 1) break;
        if (best && c.size() < best->c.size()) break;
        auto cel = c.elements();
        bool abelian = true;
        for (Elem a : cel)
            for (Elem b : cel)
                if (g.mul(a, b) != g.mul(b, a)) abelian = false;
        if (!abelian) continue;
        for (const auto& h : normals) {
            if (h.size() * c.size() != g.order()) continue;
            if ((h & c).size() != 1) continue;
            bool commute = true;
            for (Elem x : h.elements()) {
                for (Elem y : cel)
                    if (g.mul(x, y) != g.mul(y, x)) {
                        commute = false;
                        break;
                    }
                if (!commute) break;
            }
            if (!commute) continue;
            if (!best) best = DirectProduct{h, c};
            break;
        }
        if (best) break;
    }
    return best;
}

/// H(r): generated by products j_w j_w' (r even) or by the j_w (r odd).
/// The result must be normal; a non-normal result signals an inconsistent fixture.
inline ElementSet subgroup_H_r(const FiniteGroup& g, const std::vector<Elem>& involutions, std::int64_t r) {
    if (r > 0) throw InvalidArgument("H(r) is defined for r <= 0");
    for (Elem j : involutions)
        if (g.mul(j, j) != 0) throw InvalidArgument("H(r): element " + std::to_string(j) + " is not an involution");
    std::vector<Elem> gens;
    if (r % 2 == 0) {
        for (Elem a : involutions)
            for (Elem b : involutions) gens.push_back(g.mul(a, b));
    } else {
        gens = involutions;
    }
    auto h = g.closure(gens);
    if (!g.is_normal(h)) throw InvalidArgument("H(r) is not normal: inconsistent complex-place data");
    return h;
}

}  // namespace skv

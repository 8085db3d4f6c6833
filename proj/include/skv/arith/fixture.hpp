#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skv/errors.hpp"
#include "skv/exact/serialize.hpp"
#include "skv/groups/characters.hpp"
#include "skv/rednorm/fitting.hpp"

namespace skv {

inline constexpr const char* kFixtureVersion = "skvfix/1";

struct PlaceFlags {
    bool ramified = false;
    bool wild = false;
    bool infinite = false;
    bool complex_at_l = false;
};

/// Local data at a place p of K with a fixed place P of L above it.
struct PlaceData {
    std::string label;
    std::uint64_t q = 0;     // residue characteristic, 0 for infinite places
    std::uint64_t norm = 0;  // N(p), 0 for infinite places
    std::vector<Elem> decomposition_gens, inertia_gens;
    ElementSet decomposition, inertia;
    Elem frobenius = 0;
    PlaceFlags flags;

    bool finite() const { return !flags.infinite; }
};

/// mu_L: cyclic of order w, g acting by zeta -> zeta^action[g].
struct MuData {
    std::uint64_t order = 1;
    std::vector<std::uint64_t> action;
};

/// L^[G,G] inside Q(zeta_f): the Artin map (Z/f)^x -> G/[G,G], given by a
/// representative in G for every unit residue (-1 elsewhere).
struct CyclotomicData {
    std::uint64_t conductor = 1;
    std::vector<std::int64_t> artin;
    std::uint64_t tate_bound = 0;  // search bound for w_(1-r), 0 when absent
};

struct ClassGroupData {
    std::vector<std::string> t;
    std::optional<std::uint64_t> p;
    FiniteGModule module;
    std::string provenance;
};

struct PlaceSets {
    std::string name;
    std::vector<std::string> s, t;
    std::int64_t r = 0;
    std::optional<std::uint64_t> p;
    std::optional<bool> torsion_free;  // declared override for E_S^T
    std::string torsion_provenance;
};

/// Per-character L-values of an abelian subextension L^[U,U] / L^U for one
/// choice of (S', T', r); S' and T' are labels of places of L^U.
struct SourceTable {
    std::int64_t r = 0;
    std::vector<std::string> s, t;
    std::vector<std::pair<LinearCharacter, CyclotomicNumber>> values;
};

struct ThetaSourceDecl {
    std::string tag;
    ElementSet subgroup;
    std::vector<SourceTable> tables;
    std::string provenance;
};

struct ExtensionFixture {
    std::string name;
    std::string description;
    std::shared_ptr<const FiniteGroup> group;
    std::optional<Elem> j;
    std::vector<PlaceData> places;
    MuData mu;
    std::optional<CyclotomicData> cyclotomic;
    std::vector<ClassGroupData> class_groups;
    std::vector<PlaceSets> sets;
    std::vector<std::string> pool;
    std::vector<ThetaSourceDecl> sources;
    std::vector<std::uint64_t> zeta_p_primes;  // primes declared to satisfy L^cl in (L^cl)^+(zeta_p)

    const PlaceData& place(const std::string& label) const {
        for (const auto& p : places)
            if (p.label == label) return p;
        throw InvalidArgument("unknown place label '" + label + "'");
    }

    bool has_place(const std::string& label) const {
        for (const auto& p : places)
            if (p.label == label) return true;
        return false;
    }

    const PlaceSets& set(const std::string& name) const {
        for (const auto& s : sets)
            if (s.name == name) return s;
        throw InvalidArgument("unknown place-set name '" + name + "'");
    }

    std::vector<std::string> infinite_labels() const {
        std::vector<std::string> out;
        for (const auto& p : places)
            if (p.flags.infinite) out.push_back(p.label);
        return out;
    }

    std::vector<std::string> ramified_labels() const {
        std::vector<std::string> out;
        for (const auto& p : places)
            if (p.finite() && p.flags.ramified) out.push_back(p.label);
        return out;
    }

    /// The generators j_w of all complex places of L (every conjugate of the
    /// decomposition generator at each complex infinite place of K).
    std::vector<Elem> complex_conjugations() const {
        std::set<Elem> js;
        for (const auto& p : places)
            if (p.flags.infinite && p.flags.complex_at_l)
                for (Elem d : p.decomposition.elements())
                    if (d != 0)
                        for (Elem x = 0; x < group->order(); ++x) js.insert(group->conj(d, x));
        return {js.begin(), js.end()};
    }

    bool is_cm() const {
        if (!j) return false;
        auto js = complex_conjugations();
        return !js.empty() && std::all_of(js.begin(), js.end(), [&](Elem e) { return e == *j; });
    }
};

namespace detail {

inline void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw FixtureError(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (auto r : required) known = known || k == r;
        for (auto o : optional) known = known || k == o;
        if (!known) throw FixtureError(path + "." + k, "unknown field");
    }
    for (auto r : required)
        if (!j.contains(r)) throw FixtureError(path + "." + r, "missing required field");
}

inline std::uint64_t get_uint(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw FixtureError(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

inline std::int64_t get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw FixtureError(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw FixtureError(path, "expected a string");
    return j.get<std::string>();
}

inline bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw FixtureError(path, "expected a boolean");
    return j.get<bool>();
}

inline std::vector<std::string> get_strings(const Json& j, const std::string& path) {
    if (!j.is_array()) throw FixtureError(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
    std::set<std::string> uniq(out.begin(), out.end());
    if (uniq.size() != out.size()) throw FixtureError(path, "duplicate labels");
    return out;
}

inline Elem get_elem(const Json& j, const FiniteGroup& g, const std::string& path) {
    auto e = get_uint(j, path);
    if (e >= g.order()) throw FixtureError(path, "group element index out of range");
    return static_cast<Elem>(e);
}

inline std::vector<Elem> get_elems(const Json& j, const FiniteGroup& g, const std::string& path) {
    if (!j.is_array()) throw FixtureError(path, "expected an array of group elements");
    std::vector<Elem> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_elem(j[i], g, path + "[" + std::to_string(i) + "]"));
    return out;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_power_of(std::uint64_t n, std::uint64_t q) {
    if (n < q) return false;
    while (n % q == 0) n /= q;
    return n == 1;
}

/// Smallest k >= 1 with x^k in the subgroup n.
inline std::size_t order_modulo(const FiniteGroup& g, Elem x, const ElementSet& n) {
    Elem y = x;
    std::size_t k = 1;
    while (!n.contains(y)) {
        y = g.mul(y, x);
        ++k;
    }
    return k;
}

/// Left cosets of n as a map element -> smallest element of its coset.
inline std::vector<Elem> coset_keys(const FiniteGroup& g, const ElementSet& n) {
    std::vector<Elem> key(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        Elem best = x;
        for (Elem h : n.elements()) best = std::min(best, g.mul(x, h));
        key[x] = best;
    }
    return key;
}

inline std::shared_ptr<const FiniteGroup> parse_group(const Json& j, const std::string& path) {
    check_keys(j, path, {"table"}, {"labels"});
    const auto& t = j["table"];
    if (!t.is_array()) throw FixtureError(path + ".table", "expected an array of rows");
    std::vector<std::vector<Elem>> table;
    for (std::size_t a = 0; a < t.size(); ++a) {
        const auto rp = path + ".table[" + std::to_string(a) + "]";
        if (!t[a].is_array()) throw FixtureError(rp, "expected a row");
        std::vector<Elem> row;
        for (std::size_t b = 0; b < t[a].size(); ++b) {
            auto v = get_uint(t[a][b], rp + "[" + std::to_string(b) + "]");
            if (v > kMaxGroupOrder) throw FixtureError(rp, "entry out of range");
            row.push_back(static_cast<Elem>(v));
        }
        table.push_back(std::move(row));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = get_strings(j["labels"], path + ".labels");
    try {
        return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table, labels));
    } catch (const Error& e) {
        throw FixtureError(path, e.what());
    }
}

inline PlaceData parse_place(const Json& j, const FiniteGroup& g, const std::string& path) {
    check_keys(j, path, {"label", "decomposition", "inertia", "frobenius", "flags"}, {"q", "norm"});
    PlaceData p;
    p.label = get_string(j["label"], path + ".label");
    if (p.label.empty() || p.label.find('@') != std::string::npos)
        throw FixtureError(path + ".label", "labels must be non-empty and free of '@'");
    const auto& f = j["flags"];
    check_keys(f, path + ".flags", {"ramified", "wild", "infinite", "complex"});
    p.flags.ramified = get_bool(f["ramified"], path + ".flags.ramified");
    p.flags.wild = get_bool(f["wild"], path + ".flags.wild");
    p.flags.infinite = get_bool(f["infinite"], path + ".flags.infinite");
    p.flags.complex_at_l = get_bool(f["complex"], path + ".flags.complex");
    p.decomposition_gens = get_elems(j["decomposition"], g, path + ".decomposition");
    p.inertia_gens = get_elems(j["inertia"], g, path + ".inertia");
    p.frobenius = get_elem(j["frobenius"], g, path + ".frobenius");
    p.decomposition = g.closure(p.decomposition_gens);
    p.inertia = g.closure(p.inertia_gens);
    if (p.flags.infinite) {
        if (j.contains("q") || j.contains("norm")) throw FixtureError(path, "infinite places carry no residue data");
        if (!(p.inertia == p.decomposition)) throw FixtureError(path + ".inertia", "infinite place: inertia must equal decomposition");
        if (p.decomposition.size() > 2) throw FixtureError(path + ".decomposition", "infinite decomposition group has order > 2");
        if (p.flags.complex_at_l != (p.decomposition.size() == 2))
            throw FixtureError(path + ".flags.complex", "complex flag disagrees with the decomposition group");
        if (p.flags.ramified || p.flags.wild) throw FixtureError(path + ".flags", "infinite places are flagged neither ramified nor wild");
        if (p.frobenius != 0) throw FixtureError(path + ".frobenius", "infinite places use the identity as Frobenius");
        return p;
    }
    if (!j.contains("q") || !j.contains("norm")) throw FixtureError(path, "finite places need q and norm");
    p.q = get_uint(j["q"], path + ".q");
    p.norm = get_uint(j["norm"], path + ".norm");
    if (!is_prime(p.q)) throw FixtureError(path + ".q", "residue characteristic is not prime");
    if (!is_power_of(p.norm, p.q)) throw FixtureError(path + ".norm", "N(p) is not a power of q");
    if (p.flags.complex_at_l) throw FixtureError(path + ".flags.complex", "finite places are not complex");
    bool normal = p.inertia.is_subset_of(p.decomposition);
    for (Elem i : p.inertia.elements())
        for (Elem d : p.decomposition.elements()) normal = normal && p.inertia.contains(g.conj(i, d));
    if (!normal)
        throw FixtureError(path + ".inertia", "inertia is not normal in the decomposition group");
    if (!p.decomposition.contains(p.frobenius)) throw FixtureError(path + ".frobenius", "Frobenius lies outside the decomposition group");
    if (p.decomposition.size() / p.inertia.size() != order_modulo(g, p.frobenius, p.inertia))
        throw FixtureError(path + ".frobenius", "Frobenius order modulo inertia differs from |G_P / I_P|");
    if (p.decomposition.size() != g.closure([&] {
            auto v = p.inertia.elements();
            v.push_back(p.frobenius);
            return v;
        }()).size())
        throw FixtureError(path + ".decomposition", "decomposition group is not generated by inertia and Frobenius");
    if (p.flags.ramified != (p.inertia.size() > 1)) throw FixtureError(path + ".flags.ramified", "ramified flag disagrees with inertia");
    if (p.flags.wild != (p.inertia.size() % p.q == 0)) throw FixtureError(path + ".flags.wild", "wild flag disagrees with q and |I|");
    return p;
}

inline LinearCharacter parse_linear(const Json& j, const FiniteGroup& g, const ElementSet& u, const std::string& path) {
    check_keys(j, path, {"order", "exponents"});
    LinearCharacter psi;
    psi.domain = u;
    psi.order = get_uint(j["order"], path + ".order");
    if (psi.order == 0) throw FixtureError(path + ".order", "order must be positive");
    psi.exponent.assign(g.order(), -1);
    if (!j["exponents"].is_object()) throw FixtureError(path + ".exponents", "expected an object");
    for (const auto& [k, v] : j["exponents"].items()) {
        std::size_t used = 0;
        std::uint64_t e = 0;
        try {
            e = std::stoull(k, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != k.size() || e >= g.order() || !u.contains(static_cast<Elem>(e)))
            throw FixtureError(path + ".exponents." + k, "key is not an element of the subgroup");
        psi.exponent[e] = mod_floor(get_int(v, path + ".exponents." + k), static_cast<std::int64_t>(psi.order));
    }
    for (Elem x : u.elements())
        if (psi.exponent[x] < 0) throw FixtureError(path + ".exponents", "missing value at element " + std::to_string(x));
    try {
        check_multiplicative(g, psi);
    } catch (const InvalidArgument& e) {
        throw FixtureError(path, e.what());
    }
    return psi;
}

}  // namespace detail

/// Parses and validates a fixture; every error names the failing JSON path.
inline ExtensionFixture fixture_from_json(const Json& j) {
    using namespace detail;
    check_keys(j, "$", {"version", "name", "group", "places", "mu", "sets"},
               {"description", "conjugation", "cyclotomic", "class_groups", "pool", "sources", "zeta_p_primes"});
    if (get_string(j["version"], "$.version") != kFixtureVersion)
        throw FixtureError("$.version", std::string("unsupported version, expected ") + kFixtureVersion);
    ExtensionFixture f;
    f.name = get_string(j["name"], "$.name");
    if (j.contains("description")) f.description = get_string(j["description"], "$.description");
    f.group = parse_group(j["group"], "$.group");
    const auto& g = *f.group;

    if (j.contains("conjugation") && !j["conjugation"].is_null()) {
        Elem c = get_elem(j["conjugation"], g, "$.conjugation");
        if (c == 0 || g.mul(c, c) != 0) throw FixtureError("$.conjugation", "j must be an involution");
        for (Elem x = 0; x < g.order(); ++x)
            if (g.mul(c, x) != g.mul(x, c)) throw FixtureError("$.conjugation", "j must be central");
        f.j = c;
    }

    if (!j["places"].is_array() || j["places"].empty()) throw FixtureError("$.places", "expected a non-empty array");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < j["places"].size(); ++i) {
        auto p = parse_place(j["places"][i], g, "$.places[" + std::to_string(i) + "]");
        if (!labels.insert(p.label).second) throw FixtureError("$.places[" + std::to_string(i) + "].label", "duplicate label");
        f.places.push_back(std::move(p));
    }
    if (f.infinite_labels().empty()) throw FixtureError("$.places", "no infinite place");
    if (f.j)
        for (Elem c : f.complex_conjugations())
            if (c != *f.j) throw FixtureError("$.conjugation", "a complex place has conjugation different from j");

    {
        const auto& m = j["mu"];
        check_keys(m, "$.mu", {"order", "action"});
        f.mu.order = get_uint(m["order"], "$.mu.order");
        if (f.mu.order == 0 || f.mu.order % 2 != 0) throw FixtureError("$.mu.order", "w must be a positive even integer");
        if (!m["action"].is_array() || m["action"].size() != g.order())
            throw FixtureError("$.mu.action", "expected one unit per group element");
        for (std::size_t i = 0; i < g.order(); ++i) {
            auto a = get_uint(m["action"][i], "$.mu.action[" + std::to_string(i) + "]") % f.mu.order;
            if (std::gcd(a, f.mu.order) != 1) throw FixtureError("$.mu.action[" + std::to_string(i) + "]", "not a unit mod w");
            f.mu.action.push_back(a);
        }
        for (Elem x = 0; x < g.order(); ++x)
            for (Elem y = 0; y < g.order(); ++y)
                if ((f.mu.action[x] * f.mu.action[y]) % f.mu.order != f.mu.action[g.mul(x, y)] % f.mu.order)
                    throw FixtureError("$.mu.action", "action is not a homomorphism to (Z/w)^x");
        for (Elem c : f.complex_conjugations())
            if ((f.mu.action[c] + 1) % f.mu.order != 0)
                throw FixtureError("$.mu.action", "complex conjugation must invert roots of unity");
    }

    if (j.contains("cyclotomic")) {
        const auto& c = j["cyclotomic"];
        check_keys(c, "$.cyclotomic", {"conductor", "artin"}, {"tate_bound"});
        CyclotomicData cd;
        cd.conductor = get_uint(c["conductor"], "$.cyclotomic.conductor");
        if (cd.conductor == 0) throw FixtureError("$.cyclotomic.conductor", "must be positive");
        if (c.contains("tate_bound")) cd.tate_bound = get_uint(c["tate_bound"], "$.cyclotomic.tate_bound");
        cd.artin.assign(cd.conductor, -1);
        if (!c["artin"].is_object()) throw FixtureError("$.cyclotomic.artin", "expected an object");
        for (const auto& [k, v] : c["artin"].items()) {
            std::size_t used = 0;
            std::uint64_t a = 0;
            try {
                a = std::stoull(k, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            const auto path = "$.cyclotomic.artin." + k;
            if (used != k.size() || a >= cd.conductor || std::gcd(a, cd.conductor) != 1)
                throw FixtureError(path, "key is not a unit residue");
            cd.artin[a] = get_elem(v, g, path);
        }
        for (std::uint64_t a = 0; a < cd.conductor; ++a)
            if (std::gcd(a, cd.conductor) == 1 && cd.artin[a] < 0)
                throw FixtureError("$.cyclotomic.artin", "missing residue " + std::to_string(a));
        f.cyclotomic = std::move(cd);
    }

    if (j.contains("class_groups")) {
        const auto& cg = j["class_groups"];
        if (!cg.is_array()) throw FixtureError("$.class_groups", "expected an array");
        for (std::size_t i = 0; i < cg.size(); ++i) {
            const auto path = "$.class_groups[" + std::to_string(i) + "]";
            check_keys(cg[i], path, {"T", "factors", "action", "provenance"}, {"p"});
            ClassGroupData d;
            d.t = get_strings(cg[i]["T"], path + ".T");
            if (cg[i].contains("p") && !cg[i]["p"].is_null()) d.p = get_uint(cg[i]["p"], path + ".p");
            d.provenance = get_string(cg[i]["provenance"], path + ".provenance");
            std::vector<Integer> factors;
            if (!cg[i]["factors"].is_array()) throw FixtureError(path + ".factors", "expected an array");
            for (std::size_t k = 0; k < cg[i]["factors"].size(); ++k)
                factors.push_back(Integer(static_cast<unsigned long>(
                    get_uint(cg[i]["factors"][k], path + ".factors[" + std::to_string(k) + "]"))));
            const auto& act = cg[i]["action"];
            if (!act.is_array() || act.size() != g.order()) throw FixtureError(path + ".action", "expected one matrix per group element");
            std::vector<IntMatrix> mats;
            for (std::size_t e = 0; e < g.order(); ++e) {
                const auto mp = path + ".action[" + std::to_string(e) + "]";
                IntMatrix m(factors.size(), factors.size(), 0);
                if (!act[e].is_array() || act[e].size() != factors.size()) throw FixtureError(mp, "matrix has the wrong size");
                for (std::size_t r = 0; r < factors.size(); ++r) {
                    if (!act[e][r].is_array() || act[e][r].size() != factors.size()) throw FixtureError(mp, "matrix has the wrong size");
                    for (std::size_t s = 0; s < factors.size(); ++s)
                        m(r, s) = Integer(static_cast<long>(get_int(act[e][r][s], mp)));
                }
                mats.push_back(std::move(m));
            }
            try {
                d.module = FiniteGModule(f.group, std::move(factors), std::move(mats));
            } catch (const InvalidArgument& e) {
                throw FixtureError(path, e.what());
            }
            for (const auto& l : d.t)
                if (!f.has_place(l)) throw FixtureError(path + ".T", "unknown place label '" + l + "'");
            f.class_groups.push_back(std::move(d));
        }
    }

    if (!j["sets"].is_array()) throw FixtureError("$.sets", "expected an array");
    for (std::size_t i = 0; i < j["sets"].size(); ++i) {
        const auto path = "$.sets[" + std::to_string(i) + "]";
        const auto& s = j["sets"][i];
        check_keys(s, path, {"name", "S", "T", "r"}, {"p", "torsion_free"});
        PlaceSets ps;
        ps.name = get_string(s["name"], path + ".name");
        ps.s = get_strings(s["S"], path + ".S");
        ps.t = get_strings(s["T"], path + ".T");
        ps.r = get_int(s["r"], path + ".r");
        if (ps.r > 0) throw FixtureError(path + ".r", "r must be non-positive");
        if (s.contains("p")) ps.p = get_uint(s["p"], path + ".p");
        if (s.contains("torsion_free")) {
            check_keys(s["torsion_free"], path + ".torsion_free", {"value", "provenance"});
            ps.torsion_free = get_bool(s["torsion_free"]["value"], path + ".torsion_free.value");
            ps.torsion_provenance = get_string(s["torsion_free"]["provenance"], path + ".torsion_free.provenance");
        }
        for (const auto& l : ps.s)
            if (!f.has_place(l)) throw FixtureError(path + ".S", "unknown place label '" + l + "'");
        for (const auto& l : ps.t)
            if (!f.has_place(l)) throw FixtureError(path + ".T", "unknown place label '" + l + "'");
        for (const auto& e : f.sets)
            if (e.name == ps.name) throw FixtureError(path + ".name", "duplicate set name");
        f.sets.push_back(std::move(ps));
    }

    if (j.contains("pool")) {
        f.pool = get_strings(j["pool"], "$.pool");
        for (const auto& l : f.pool)
            if (!f.has_place(l) || !f.place(l).finite()) throw FixtureError("$.pool", "pool entry '" + l + "' is not a finite place");
    }

    if (j.contains("zeta_p_primes")) {
        if (!j["zeta_p_primes"].is_array()) throw FixtureError("$.zeta_p_primes", "expected an array");
        for (std::size_t i = 0; i < j["zeta_p_primes"].size(); ++i)
            f.zeta_p_primes.push_back(get_uint(j["zeta_p_primes"][i], "$.zeta_p_primes[" + std::to_string(i) + "]"));
    }

    if (j.contains("sources")) {
        const auto& src = j["sources"];
        if (!src.is_array()) throw FixtureError("$.sources", "expected an array");
        for (std::size_t i = 0; i < src.size(); ++i) {
            const auto path = "$.sources[" + std::to_string(i) + "]";
            check_keys(src[i], path, {"tag", "subgroup", "tables", "provenance"});
            ThetaSourceDecl d;
            d.tag = get_string(src[i]["tag"], path + ".tag");
            d.provenance = get_string(src[i]["provenance"], path + ".provenance");
            auto elems = get_elems(src[i]["subgroup"], g, path + ".subgroup");
            d.subgroup = ElementSet::of(elems);
            if (!g.is_subgroup(d.subgroup)) throw FixtureError(path + ".subgroup", "not a subgroup");
            const auto comm = g.commutator_subgroup(d.subgroup);
            if (!src[i]["tables"].is_array()) throw FixtureError(path + ".tables", "expected an array");
            for (std::size_t k = 0; k < src[i]["tables"].size(); ++k) {
                const auto tp = path + ".tables[" + std::to_string(k) + "]";
                const auto& tj = src[i]["tables"][k];
                check_keys(tj, tp, {"r", "S", "T", "values"});
                SourceTable t;
                t.r = get_int(tj["r"], tp + ".r");
                t.s = get_strings(tj["S"], tp + ".S");
                t.t = get_strings(tj["T"], tp + ".T");
                if (!tj["values"].is_array()) throw FixtureError(tp + ".values", "expected an array");
                for (std::size_t v = 0; v < tj["values"].size(); ++v) {
                    const auto vp = tp + ".values[" + std::to_string(v) + "]";
                    check_keys(tj["values"][v], vp, {"character", "value"});
                    auto psi = parse_linear(tj["values"][v]["character"], g, d.subgroup, vp + ".character");
                    for (Elem c : comm.elements())
                        if (psi.exponent[c] != 0) throw FixtureError(vp + ".character", "character is not trivial on [U,U]");
                    t.values.emplace_back(std::move(psi), cyclotomic_from_json(tj["values"][v]["value"], vp + ".value"));
                }
                d.tables.push_back(std::move(t));
            }
            f.sources.push_back(std::move(d));
        }
    }
    return f;
}

inline ExtensionFixture load_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FixtureError("$", "cannot open fixture file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FixtureError("$", std::string("malformed JSON: ") + e.what());
    }
    return fixture_from_json(j);
}

}  // namespace skv

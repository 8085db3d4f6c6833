#!/usr/bin/env python3
"""Writes the shipped skvfix/1 fixtures into fixtures/.

All local data over Q is derived from explicit Artin maps (Z/f)^x -> G/[G,G]
plus, for the S3 extensions, the splitting of primes in the Hilbert class
field of Q(sqrt(-23)) read off from the binary quadratic forms of
discriminant -23.
"""

import itertools
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

VERSION = "skvfix/1"
TATE_BOUND = 2**6 * 3**3 * 5**2 * 7


# ---------------------------------------------------------------- groups

class Group:
    def __init__(self, elements, mul, labels):
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.n = len(elements)
        self.table = [[self.index[mul(a, b)] for b in elements] for a in elements]
        self.labels = labels
        assert all(self.table[0][i] == i for i in range(self.n))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return next(b for b in range(self.n) if self.table[a][b] == 0)

    def conj(self, g, x):
        return self.mul(self.mul(self.inv(x), g), x)

    def closure(self, gens):
        s = {0}
        frontier = [0]
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = self.mul(a, g)
                if b not in s:
                    s.add(b)
                    frontier.append(b)
        return s

    def order_of(self, g):
        k, x = 1, g
        while x != 0:
            x, k = self.mul(x, g), k + 1
        return k

    def commutator(self, u):
        comms = [self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)) for a in u for b in u]
        return self.closure(comms)

    def json(self):
        return {"table": self.table, "labels": self.labels}


def cyclic(n):
    return Group(list(range(n)), lambda a, b: (a + b) % n, [f"c^{i}" if i else "1" for i in range(n)])


def s3():
    perms = sorted(itertools.permutations(range(3)))
    labels = ["".join(map(str, p)) for p in perms]
    return Group(perms, lambda p, q: tuple(p[q[i]] for i in range(3)), labels)


def product(a, b):
    el = [(x, y) for x in range(a.n) for y in range(b.n)]
    return Group(el, lambda p, q: (a.mul(p[0], q[0]), b.mul(p[1], q[1])),
                 [f"{a.labels[x]}*{b.labels[y]}" for x, y in el])


def double_cosets(g, u, d):
    """Double cosets U x D in order of their smallest element; returns their count."""
    seen, count = set(), 0
    for x in range(g.n):
        if x in seen:
            continue
        for a in u:
            for b in d:
                seen.add(g.mul(g.mul(a, x), b))
        count += 1
    return count


def linear_characters(g, u):
    """All linear characters of the subgroup u trivial on [u,u], as (order, {elem: exponent})."""
    u = sorted(u)
    comm = g.commutator(u)
    m = 1
    for x in u:
        m = math.lcm(m, g.order_of(x))
    gens, span = [], {0}
    for x in u:
        if x not in span:
            gens.append(x)
            span = g.closure(gens)
    chars = []
    for images in itertools.product(range(m), repeat=len(gens)):
        val = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for gi, e in zip(gens, images):
                b = g.mul(a, gi)
                v = (val[a] + e) % m
                if b in val:
                    ok = ok and val[b] == v
                else:
                    val[b] = v
                    frontier.append(b)
        if not ok or any(val[c] for c in comm):
            continue
        if any((val[a] + val[b]) % m != val[g.mul(a, b)] for a in u for b in u):
            continue
        if val not in [c[1] for c in chars]:
            chars.append((m, val))
    return chars


# ---------------------------------------------------------------- arithmetic

def is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def discrete_log(g, x, p):
    k, y = 0, 1
    while y != x % p:
        y, k = y * g % p, k + 1
    return k


def units(f):
    return [a for a in range(f) if math.gcd(a, f) == 1] if f > 1 else [0]


def places_from_artin(g, f, artin, primes, quotient_rep=None):
    """Local data over Q from an Artin map into an abelian G (exact, no quotient)."""
    out = [infinite_place(g, [artin[(f - 1) % f] if f > 1 else 0])]
    for q in primes:
        fp = f
        while fp % q == 0:
            fp //= q
        qk = f // fp
        inertia = sorted({artin[u % f] for u in units(f) if u % fp == 1 % fp})
        frob = next(artin[u % f] for u in units(f) if u % fp == q % fp and u % qk == 1 % qk)
        out.append(finite_place(g, q, inertia, frob))
    return out


def infinite_place(g, dgens):
    d = g.closure(dgens)
    return {"label": "inf", "decomposition": sorted(d - {0}), "inertia": sorted(d - {0}), "frobenius": 0,
            "flags": {"ramified": False, "wild": False, "infinite": True, "complex": len(d) == 2}}


def finite_place(g, q, inertia_gens, frob):
    inertia = g.closure(inertia_gens)
    d = g.closure(sorted(inertia) + [frob])
    # normalize the Frobenius lift to the smallest element of its inertia coset
    frob = min(g.mul(frob, i) for i in inertia)
    return {"label": str(q), "q": q, "norm": q, "decomposition": sorted(d - {0}) or [],
            "inertia": sorted(inertia - {0}), "frobenius": frob,
            "flags": {"ramified": len(inertia) > 1, "wild": len(inertia) % q == 0, "infinite": False, "complex": False}}


def mu_from_artin(g, f, artin):
    w = 2 * f if f % 2 else f
    w = max(w, 2)
    action = [None] * g.n
    m = math.lcm(w, max(f, 1))
    for u in range(1, m + 1):
        if math.gcd(u, m) != 1:
            continue
        x = artin[u % f] if f > 1 else 0
        action[x] = u % w
    return {"order": w, "action": action}


def zero_module(g):
    return {"factors": [], "action": [[] for _ in range(g.n)]}


def cyclic_module(g, n, scalars):
    return {"factors": [n], "action": [[[s % n]] for s in scalars]}


def class_group(g, module, t, provenance, p=None):
    d = {"T": t, "factors": module["factors"], "action": module["action"], "provenance": provenance}
    if p is not None:
        d["p"] = p
    return d


def write(path, fx):
    path.write_text(json.dumps(fx, indent=1, sort_keys=False) + "\n")


# ---------------------------------------------------------------- fixtures

def fx_q():
    g = cyclic(1)
    artin = {0: 0}
    places = places_from_artin(g, 1, artin, [2, 3, 5, 7])
    return {
        "version": VERSION, "name": "q", "description": "Q / Q",
        "group": g.json(), "places": places,
        "mu": {"order": 2, "action": [1]},
        "cyclotomic": {"conductor": 1, "artin": {"0": 0}, "tate_bound": TATE_BOUND},
        "class_groups": [class_group(g, zero_module(g), [], "class number of Q is 1")],
        "pool": ["3", "5", "7"],
        "sets": [
            {"name": "hyp", "S": ["inf"], "T": ["3"], "r": 0},
            {"name": "hyp_r1", "S": ["inf"], "T": ["5"], "r": -1},
            {"name": "plain_hyp_r1", "S": ["inf"], "T": ["3"], "r": -1},
            {"name": "neg1", "S": ["inf"], "T": [], "r": -1},
            {"name": "neg1_S2", "S": ["inf", "2"], "T": [], "r": -1},
        ],
    }


def quadratic_fixture(name, desc, f, kernel_test, primes, j_place_complex, class_module, cl_prov, sets, pool):
    g = cyclic(2)
    artin = {u: (0 if kernel_test(u) else 1) for u in units(f)}
    places = places_from_artin(g, f, artin, primes)
    fx = {
        "version": VERSION, "name": name, "description": desc,
        "group": g.json(), "conjugation": 1 if j_place_complex else None,
        "places": places, "mu": mu_from_artin_quadratic(g, f, artin),
        "cyclotomic": {"conductor": f, "artin": {str(u): a for u, a in artin.items()}, "tate_bound": TATE_BOUND * max(f, 1)},
        "class_groups": [class_group(g, class_module(g), [], cl_prov)],
        "pool": pool, "sets": sets,
    }
    if fx["conjugation"] is None:
        del fx["conjugation"]
    return fx


def mu_from_artin_quadratic(g, f, artin):
    # roots of unity of L = fixed field of the kernel inside Q(zeta_f)
    best = 1
    for n in range(1, 2 * f + 1):
        if (2 * f) % n:
            continue
        m = math.lcm(n, f)
        if all(pow(u, 1, n) == 1 % n for u in range(1, m + 1) if math.gcd(u, m) == 1 and artin[u % f] == 0):
            best = max(best, n)
    action = [None] * g.n
    m = math.lcm(best, f)
    for u in range(1, m + 1):
        if math.gcd(u, m) == 1:
            action[artin[u % f]] = u % best
    return {"order": best, "action": action}


def fx_q_i():
    return quadratic_fixture(
        "q_i", "Q(i) / Q", 4, lambda u: u % 4 == 1, [2, 3, 5, 7, 11, 13], True,
        zero_module, "class number of Q(i) is 1",
        [
            {"name": "hyp", "S": ["inf", "2"], "T": ["3"], "r": 0},
            {"name": "hyp_r1", "S": ["inf", "2"], "T": ["5"], "r": -1},
            {"name": "neg1", "S": ["inf", "2"], "T": [], "r": -1},
            {"name": "neg1_S5", "S": ["inf", "2", "5"], "T": [], "r": -1},
        ],
        ["3", "5", "7", "11", "13"])


def chi_m20(u):
    return (1 if u % 4 == 1 else -1) * legendre(u, 5)


def fx_q_sqrt_m5():
    g = cyclic(2)
    return quadratic_fixture(
        "q_sqrt_m5", "Q(sqrt(-5)) / Q", 20, lambda u: chi_m20(u) == 1, [2, 3, 5, 7, 11, 13], True,
        lambda g: cyclic_module(g, 2, [1, 1]),
        "Cl(Q(sqrt(-5))) = Z/2 generated by (2, 1 + sqrt(-5)); j acts by inversion, trivially mod 2",
        [
            {"name": "hyp", "S": ["inf", "2", "5"], "T": ["3"], "r": 0},
            {"name": "brumer", "S": ["inf", "2", "5"], "T": [], "r": 0},
            {"name": "hyp_r1", "S": ["inf", "2", "5"], "T": ["7"], "r": -1},
        ],
        ["3", "7", "11", "13"])


def cyclotomic_prime_fixture(name, p, root, primes, class_module, cl_prov, pool, sets):
    n = p - 1
    g = cyclic(n)
    artin = {u: discrete_log(root, u, p) for u in range(1, p)}
    places = places_from_artin(g, p, artin, primes)
    return {
        "version": VERSION, "name": name, "description": f"Q(zeta_{p}) / Q",
        "group": g.json(), "conjugation": n // 2, "places": places,
        "mu": mu_from_artin(g, p, artin),
        "cyclotomic": {"conductor": p, "artin": {str(u): a for u, a in artin.items()}, "tate_bound": TATE_BOUND * p},
        "class_groups": [class_group(g, class_module(g, artin), [], cl_prov)],
        "pool": pool, "sets": sets,
    }


def fx_q_zeta7():
    return cyclotomic_prime_fixture(
        "q_zeta7", 7, 3, [2, 3, 7, 13, 29], lambda g, a: zero_module(g), "class number of Q(zeta_7) is 1",
        ["2", "3", "13", "29"],
        [
            {"name": "hyp", "S": ["inf", "7"], "T": ["3"], "r": 0},
            {"name": "hyp_big", "S": ["inf", "7", "2"], "T": ["13"], "r": 0},
            {"name": "hyp_r1", "S": ["inf", "7"], "T": ["13"], "r": -1},
            {"name": "bad_T", "S": ["inf", "7"], "T": ["2"], "r": 0},
            {"name": "brumer", "S": ["inf", "7"], "T": [], "r": 0},
        ])


def fx_q_zeta23():
    def module(g, artin):
        # sigma_a acts on Cl = Z/3 through Gal(Q(sqrt(-23))/Q): by the Legendre symbol (a/23)
        inv = {v: u for u, v in artin.items()}
        return cyclic_module(g, 3, [legendre(inv[x], 23) for x in range(g.n)])
    return cyclotomic_prime_fixture(
        "q_zeta23", 23, 5, [2, 3, 5, 23, 47], module,
        "Cl(Q(zeta_23)) = Z/3, the extension of Cl(Q(sqrt(-23))); h = 3 is classical",
        ["3", "5", "47"],
        [
            {"name": "hyp", "S": ["inf", "23"], "T": ["3"], "r": 0},
            {"name": "hyp47", "S": ["inf", "23"], "T": ["47"], "r": 0},
            {"name": "hyp_r1", "S": ["inf", "23"], "T": ["5"], "r": -1},
            {"name": "brumer", "S": ["inf", "23"], "T": [], "r": 0},
        ])


# --- S3: the Hilbert class field H of K = Q(sqrt(-23)), and H(zeta_5)

def principal_m23(q):
    """Is a prime above q (split in K) principal, i.e. q = x^2 + xy + 6y^2?"""
    return any(x * x + x * y + 6 * y * y == q for x in range(-q, q + 1) for y in range(0, q + 1))


def hcf_frobenius(g, q, tau, rho):
    """Frobenius at an unramified q in Gal(H/Q) = S3, up to conjugacy."""
    if legendre(-23, q) == -1:
        return tau
    return 0 if principal_m23(q) else rho


def s3_elements(g):
    tau = g.index[(1, 0, 2)]
    tau2 = g.index[(2, 1, 0)]
    rho = g.index[(1, 2, 0)]
    return tau, tau2, rho


def fx_hcf_m23():
    g = s3()
    tau, tau2, rho = s3_elements(g)
    a3 = sorted(g.closure([rho]))
    artin = {u: (0 if legendre(u, 23) == 1 else tau) for u in range(1, 23)}
    places = [infinite_place(g, [tau])]
    places.append(finite_place(g, 23, [tau2], 0))
    primes = [2, 3, 5, 7, 59]
    for q in primes:
        places.append(finite_place(g, q, [], hcf_frobenius(g, q, tau, rho)))
    places.sort(key=lambda p: (p["flags"]["infinite"] is False, p.get("q", 0)))
    u = set(a3)
    psi = linear_characters(g, u)

    def labels(q_labels):
        out = []
        for lab in q_labels:
            d = g.closure(next(p for p in places if p["label"] == lab)["decomposition"])
            out += [f"{lab}@{k}" for k in range(double_cosets(g, u, d))]
        return out

    # Over the imaginary quadratic K every nontrivial finite-order Hecke L-function
    # vanishes at r <= 0 (one complex place), and zeta_K vanishes at negative r.
    def value(chi_triv, s_labels, t_labels, r):
        if not chi_triv or r < 0:
            return "0"
        if any(not lab.startswith("inf") for lab in s_labels):
            return "0"  # Euler factor 1 - N^0 = 0 at a finite place of S'
        v = Fraction(-3, 2)  # zeta_K(0) = -h/w
        for lab in t_labels:
            q = int(lab.split("@")[0])
            d = g.closure(next(p for p in places if p["label"] == str(q))["decomposition"])
            f_deg = len(g.closure(list(d))) // (len(d & u) or 1)
            n = q ** (2 if legendre(-23, q) == -1 else 1)
            v *= 1 - n
        return str(v)

    tables = []
    for r in (0, -1):
        for s in (["inf", "23"], ["inf"]):
            for t in (["5"], []):
                sl, tl = labels(s), labels(t)
                tables.append({"r": r, "S": sl, "T": tl, "values": [
                    {"character": {"order": m, "exponents": {str(k): v for k, v in sorted(c.items())}},
                     "value": value(all(v == 0 for v in c.values()), sl, tl, r)} for m, c in psi]})
    return {
        "version": VERSION, "name": "hcf_m23",
        "description": "Hilbert class field of Q(sqrt(-23)) over Q, G = S3",
        "group": g.json(), "places": places,
        "mu": {"order": 2, "action": [1] * g.n},
        "cyclotomic": {"conductor": 23, "artin": {str(k): v for k, v in artin.items()}, "tate_bound": TATE_BOUND * 23},
        "class_groups": [class_group(g, zero_module(g), [], "the Hilbert class field of Q(sqrt(-23)) has class number 1")],
        "pool": ["3", "5", "7"],
        "sets": [
            {"name": "hyp", "S": ["inf", "23"], "T": ["5"], "r": 0},
            {"name": "hyp_r1", "S": ["inf", "23"], "T": ["5"], "r": -1},
            {"name": "brumer", "S": ["inf", "23"], "T": [], "r": 0},
        ],
        "sources": [{
            "tag": "H/Q(sqrt(-23))", "subgroup": a3, "tables": tables,
            "provenance": "Hecke L-values over Q(sqrt(-23)): nontrivial characters vanish at r <= 0 "
                          "(one complex place); zeta_K(0) = -h/w = -3/2 and zeta_K(-1) = 0",
        }],
    }


def fx_s3xc4():
    a, c = s3(), cyclic(4)
    g = product(a, c)
    tau, tau2, rho = s3_elements(a)
    el = lambda s, k: g.index[(s, k)]
    log2 = lambda x: discrete_log(2, x, 5)
    artin = {}
    for u in range(115):
        if math.gcd(u, 115) == 1:
            artin[u] = el(0 if legendre(u, 23) == 1 else tau, log2(u % 5))
    places = [infinite_place(g, [el(tau, 2)])]
    places.append(finite_place(g, 5, [el(0, k) for k in range(4)], el(tau, 0)))
    places.append(finite_place(g, 23, [el(tau2, 0)], el(0, log2(23 % 5))))
    for q in (2, 3, 7, 11, 59):
        places.append(finite_place(g, q, [], el(hcf_frobenius(a, q, tau, rho), log2(q % 5))))
    places.sort(key=lambda p: (p["flags"]["infinite"] is False, p.get("q", 0)))
    u = {el(s, k) for s in a.closure([rho]) for k in range(4)}
    psi = linear_characters(g, u)

    def labels(q_labels):
        out = []
        for lab in q_labels:
            d = g.closure(next(p for p in places if p["label"] == lab)["decomposition"])
            out += [f"{lab}@{k}" for k in range(double_cosets(g, u, d))]
        return out

    def value(triv, s_labels, t_labels, r):
        if not triv or r < 0 or any(not lab.startswith("inf") for lab in s_labels):
            return "0"
        v = Fraction(-3, 2)
        for lab in t_labels:
            q = int(lab.split("@")[0])
            v *= 1 - q ** (2 if legendre(-23, q) == -1 else 1)
        return str(v)

    tables = []
    for r in (0, -1):
        for s in (["inf", "5", "23"], ["inf", "5"], ["inf", "23"], ["inf"]):
            for t in (["7"], []):
                sl, tl = labels(s), labels(t)
                tables.append({"r": r, "S": sl, "T": tl, "values": [
                    {"character": {"order": m, "exponents": {str(k): v for k, v in sorted(ch.items())}},
                     "value": value(all(v == 0 for v in ch.values()), sl, tl, r)} for m, ch in psi]})
    action = []
    for x in range(g.n):
        k = g.elements[x][1]
        t = pow(2, k, 5)
        action.append(next(v for v in range(10) if v % 5 == t and v % 2 == 1))
    return {
        "version": VERSION, "name": "s3xc4",
        "description": "H(zeta_5) / Q with H the Hilbert class field of Q(sqrt(-23)), G = S3 x C4",
        "group": g.json(), "places": places,
        "mu": {"order": 10, "action": action},
        "cyclotomic": {"conductor": 115, "artin": {str(k): v for k, v in artin.items()}, "tate_bound": TATE_BOUND * 115},
        "pool": ["3", "7", "11"],
        "sets": [
            {"name": "hyp", "S": ["inf", "5", "23"], "T": ["7"], "r": 0},
            {"name": "hyp_r1", "S": ["inf", "5", "23"], "T": ["7"], "r": -1},
        ],
        "sources": [{
            "tag": "H(zeta_5)/Q(sqrt(-23))", "subgroup": sorted(u), "tables": tables,
            "provenance": "Hecke L-values over Q(sqrt(-23)): nontrivial characters vanish at r <= 0 "
                          "(one complex place); zeta_K(0) = -h/w = -3/2 and zeta_K(-1) = 0",
        }],
    }


FIXTURES = {
    "q": fx_q, "q_i": fx_q_i, "q_sqrt_m5": fx_q_sqrt_m5, "q_zeta7": fx_q_zeta7,
    "q_zeta23": fx_q_zeta23, "hcf_m23": fx_hcf_m23, "s3xc4": fx_s3xc4,
}


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    for name, build in FIXTURES.items():
        write(out / f"{name}.json", build())
        print(f"wrote {out / (name + '.json')}")


if __name__ == "__main__":
    main()

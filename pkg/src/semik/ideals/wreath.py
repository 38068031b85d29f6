"""Gamma wr N inside Gamma wr Z for a finite group Gamma given by a Cayley table.

Maps N -> Gamma (or Z -> Gamma) with finite support are stored as sorted
tuples of (position, element) pairs with element != identity (index 0).

Left side: constructible right ideals (f . Gamma_inf^{n+N}) x (n + N), stored
as (n, prefix of f on [0, n)).
Right side: constructible left ideals Gamma_inf^N x (n + N), stored as n.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .base import EMPTY, Family, FamilyError, Ideal, SampleReport, ToeplitzVerdict


class FiniteGroup:
    """A finite group from its Cayley table; element 0 must be the identity."""

    def __init__(self, table):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = self.order = len(self.table)
        if n < 1 or any(len(r) != n for r in self.table):
            raise FamilyError("Cayley table must be square and nonempty")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise FamilyError("Cayley table rows must be permutations")
        for col in zip(*self.table):
            if sorted(col) != list(range(n)):
                raise FamilyError("Cayley table columns must be permutations")
        if any(self.table[0][a] != a or self.table[a][0] != a for a in range(n)):
            raise FamilyError("element 0 must be the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise FamilyError("Cayley table is not associative")
        self.inverse = tuple(next(b for b in range(n) if self.table[a][b] == 0) for a in range(n))

    @classmethod
    def cyclic(cls, n):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    def mul(self, a, b):
        return self.table[a][b]

    @cached_property
    def conjugacy_class_count(self):
        seen, count = set(), 0
        for a in range(self.order):
            if a in seen:
                continue
            count += 1
            seen |= {self.mul(self.mul(g, a), self.inverse[g]) for g in range(self.order)}
        return count


def _norm(pairs):
    return tuple(sorted((x, a) for x, a in pairs if a != 0))


class _WreathBase(Family):
    tag = "WreathFiniteN"

    def __init__(self, spec):
        super().__init__(spec)
        table = spec.param("table")
        if table is not None:
            self.gamma = FiniteGroup(table)
        else:
            self.gamma = FiniteGroup.cyclic(int(spec.param("order", 2)))
        self.name = spec.param("name") or f"group of order {self.gamma.order}"

    # -- finitely supported maps --------------------------------------------
    def fmul(self, f, g):
        d = dict(f)
        for x, b in g:
            d[x] = self.gamma.mul(d.get(x, 0), b)
        return _norm(d.items())

    def finv(self, f):
        return tuple((x, self.gamma.inverse[a]) for x, a in f)

    @staticmethod
    def shift(f, z):
        return tuple((x + z, a) for x, a in f)

    @staticmethod
    def value(f, x):
        for y, a in f:
            if y == x:
                return a
        return 0

    def restrict(self, f, lo, hi):
        return tuple((x, a) for x, a in f if (lo is None or x >= lo) and (hi is None or x < hi))

    # -- semigroup Gamma wr N and group Gamma wr Z share one multiplication ------
    def one(self):
        return ((), 0)

    def mul(self, p, q):
        (f, n), (g, m) = p, q
        return (self.fmul(f, self.shift(g, n)), n + m)

    def random_element(self, rng):
        f = _norm((x, rng.randrange(self.gamma.order)) for x in range(rng.randint(0, 3)))
        return (f, rng.randint(0, 3))

    def default_generators(self):
        gens = [((), 1)]
        gens += [(((0, a),), 0) for a in range(1, self.gamma.order)]
        return gens

    def parse_element(self, data):
        f, n = data
        if isinstance(f, dict):
            f = [(int(x), int(a)) for x, a in f.items()]
        else:
            f = [(x, int(a)) for x, a in enumerate(f)]
        if int(n) < 0 or any(x < 0 for x, _ in f):
            raise FamilyError("wreath semigroup elements live on N")
        if any(not 0 <= a < self.gamma.order for _, a in f):
            raise FamilyError("group element index outside the Cayley table")
        return (_norm(f), int(n))

    def element_to_json(self, p):
        f, n = p
        return [{str(x): a for x, a in f}, n]

    def to_group(self, p):
        return p

    def from_group(self, g):
        f, z = g
        if z < 0 or any(x < 0 for x, _ in f):
            return None
        return g

    def group_mul(self, g, h):
        return self.mul(g, h)

    def group_inv(self, g):
        f, z = g
        return (self.shift(self.finv(f), -z), -z)

    def random_group_element(self, rng):
        f = _norm((x, rng.randrange(self.gamma.order)) for x in range(rng.randint(-3, 0), rng.randint(0, 3)))
        return (f, rng.randint(-3, 3))

    def parse_group_element(self, data):
        f, z = data
        return (_norm((int(x), int(a)) for x, a in dict(f).items()), int(z))

    def group_element_to_json(self, g):
        return self.element_to_json(g)

    def stabilizer_generators(self):
        """Some generators of the stabilizer Gamma_inf^N x {0} of P (positions 0..3)."""
        return [(((x, a),), 0) for x in range(4) for a in range(1, self.gamma.order)]


class WreathLeft(_WreathBase):
    sides = ("left",)

    def top(self):
        return Ideal((0, ()))

    def translate(self, p, x):
        if x.is_empty:
            return EMPTY
        (h, q), (n, f) = p, x.payload
        prefix = self.fmul(self.restrict(h, 0, q + n), self.shift(f, q))
        return Ideal((n + q, prefix))

    def preimage(self, p, x):
        if x.is_empty:
            return EMPTY
        (h, q), (n, f) = p, x.payload
        if self.restrict(h, 0, min(q, n)) != self.restrict(f, 0, min(q, n)):
            return EMPTY
        if q >= n:
            return self.top()
        # u(y) = h(y + q)^{-1} f(y + q) for y < n - q
        tail = self.fmul(self.finv(self.restrict(h, q, n)), self.restrict(f, q, n))
        return Ideal((n - q, self.shift(tail, -q)))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        (n1, f1), (n2, f2) = x.payload, y.payload
        if n1 > n2:
            (n1, f1), (n2, f2) = (n2, f2), (n1, f1)
        return Ideal((n2, f2)) if self.restrict(f2, 0, n1) == f1 else EMPTY

    def member(self, s, x):
        if x.is_empty:
            return False
        (u, k), (n, f) = s, x.payload
        return k >= n and self.restrict(u, 0, n) == f

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        n, f = x.payload
        return {"kind": "prefix-times-level", "level": n,
                "prefix": [self.value(f, i) for i in range(n)]}

    def sort_key(self, x):
        if x.is_empty:
            return (0,)
        n, f = x.payload
        return (1, n, tuple(self.value(f, i) for i in range(n)))

    def region_witnesses(self, ideals):
        depth = max((x.payload[0] for x in ideals if not x.is_empty), default=0)
        if self.gamma.order ** depth * (depth + 1) > 200000:
            raise FamilyError("wreath region oracle: prefix space too large")
        for values in itertools.product(range(self.gamma.order), repeat=depth):
            u = _norm(enumerate(values))
            for k in range(depth + 1):
                yield (u, k)

    # -- in G: {(u, k) : k >= s, u = phi on (-inf, s)} -------------------------
    def embed(self, x):
        return x

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        (h, z), (s, phi) = g, x.payload
        return Ideal((s + z, self.fmul(self.restrict(h, None, s + z), self.shift(phi, z))))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        (u, k), (s, phi) = g, x.payload
        return k >= s and self.restrict(u, None, s) == phi

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        s, phi = x.payload
        return {"kind": "prefix-times-level", "level": s, "prefix": {str(p): a for p, a in phi}}

    def group_witness(self, x):
        s, phi = x.payload
        return (phi, s)

    def toeplitz_verdict(self, rng, samples=200):
        bad = []
        for _ in range(samples):
            g = self.random_group_element(rng)
            k = max([0, -g[1]] + [-x for x, _ in g[0]])
            q = ((), k)
            p = self.group_mul(q, g)
            if self.from_group(p) is None or self.group_mul(self.group_inv(q), p) != g:
                bad.append(self.group_element_to_json(g))
        check = SampleReport("left-Ore", not bad, samples,
                             detail={"witness": "q = (e, k), p = q g", "counterexamples": bad[:3]})
        return ToeplitzVerdict("Ore", [check], "G = P^{-1} P, witnessed on sampled g")


class WreathRight(_WreathBase):
    sides = ("right",)

    def top(self):
        return Ideal(0)

    def translate(self, p, x):
        return EMPTY if x.is_empty else Ideal(x.payload + p[1])

    def preimage(self, p, x):
        return EMPTY if x.is_empty else Ideal(max(x.payload - p[1], 0))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        return Ideal(max(x.payload, y.payload))

    def member(self, s, x):
        return not x.is_empty and s[1] >= x.payload

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        return {"kind": "H-times-level", "level": x.payload}

    def sort_key(self, x):
        return (0, 0) if x.is_empty else (1, x.payload)

    def region_witnesses(self, ideals):
        levels = sorted({0} | {x.payload for x in ideals if not x.is_empty})
        return [((), n) for n in levels]

    # -- in G: {(u, k) : k >= s, u = shift_{k-s}(c) on (-inf, 0)}, c on (-inf, 0) ----
    def embed(self, x):
        return EMPTY if x.is_empty else Ideal((x.payload, ()))

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        (h, z), (s, c) = g, x.payload
        return Ideal((s + z, self.restrict(self.fmul(c, self.shift(h, s)), None, 0)))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        (u, k), (s, c) = g, x.payload
        return k >= s and self.restrict(u, None, 0) == self.restrict(self.shift(c, k - s), None, 0)

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        s, c = x.payload
        return {"kind": "H-coset-tower", "level": s, "coset": {str(p): a for p, a in c}}

    def group_witness(self, x):
        s, c = x.payload
        return (c, s)

    def toeplitz_verdict(self, rng, samples=200):
        # {p in N : p(f) supported in N} = {p >= -min supp f}: a principal left ideal.
        bad = []
        for _ in range(samples):
            f, _ = self.random_group_element(rng)
            hits = [all(x + p >= 0 for x, _ in f) for p in range(12)]
            first = hits.index(True) if True in hits else None
            if first is None or not all(hits[first:]):
                bad.append({str(x): a for x, a in f})
        check = SampleReport(
            "S4-principal", not bad, samples, proved=not bad,
            detail={"rule": "all nonempty left ideals of N are principal",
                    "counterexamples": bad[:3]},
        )
        return ToeplitzVerdict("RightToeplitzS4", [check],
                               "right Toeplitz via principal left ideals {p : p(f) in Gamma_inf^N}")

"""N inside Z and N^k inside Z^k: every constructible ideal is v + N^k."""

from __future__ import annotations

import itertools

from .base import EMPTY, Family, FamilyError, Ideal, SampleReport, ToeplitzVerdict


class NatsK(Family):
    tag = "NatsK"

    def __init__(self, spec):
        super().__init__(spec)
        self.k = int(spec.param("k", 1))
        if self.k < 1:
            raise FamilyError("NatsK needs k >= 1")

    # Elements of P and G are k-tuples of ints.
    def _vec(self, data):
        v = tuple(int(x) for x in (data if isinstance(data, (list, tuple)) else [data]))
        if len(v) != self.k:
            raise FamilyError(f"expected a vector of length {self.k}")
        return v

    def one(self):
        return (0,) * self.k

    def mul(self, p, q):
        return tuple(a + b for a, b in zip(p, q))

    def random_element(self, rng):
        return tuple(rng.randint(0, 6) for _ in range(self.k))

    def default_generators(self):
        return [tuple(int(i == j) for j in range(self.k)) for i in range(self.k)]

    def parse_element(self, data):
        v = self._vec(data)
        if min(v) < 0:
            raise FamilyError("semigroup elements of N^k are nonnegative")
        return v

    def element_to_json(self, p):
        return list(p)

    def top(self):
        return Ideal(self.one())

    def translate(self, p, x):
        if x.is_empty:
            return EMPTY
        return Ideal(self.mul(p, x.payload))

    def preimage(self, p, x):
        if x.is_empty:
            return EMPTY
        return Ideal(tuple(max(v - a, 0) for v, a in zip(x.payload, p)))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        return Ideal(tuple(max(a, b) for a, b in zip(x.payload, y.payload)))

    def member(self, s, x):
        return not x.is_empty and all(a >= v for a, v in zip(s, x.payload))

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        return {"kind": "principal", "generator": list(x.payload)}

    def sort_key(self, x):
        return (0,) if x.is_empty else (1, sum(x.payload), x.payload)

    def region_witnesses(self, ideals):
        # Membership only compares coordinates with generator coordinates, so
        # rounding each coordinate down to the nearest such value keeps the region.
        axes = []
        for c in range(self.k):
            axes.append(sorted({0} | {x.payload[c] for x in ideals if not x.is_empty}))
        return itertools.product(*axes)

    # -- group Z^k ----------------------------------------------------------
    def to_group(self, p):
        return p

    def from_group(self, g):
        return g if min(g) >= 0 else None

    def group_mul(self, g, h):
        return self.mul(g, h)

    def group_inv(self, g):
        return tuple(-a for a in g)

    def random_group_element(self, rng):
        return tuple(rng.randint(-8, 8) for _ in range(self.k))

    def parse_group_element(self, data):
        return self._vec(data)

    def group_element_to_json(self, g):
        return list(g)

    def embed(self, x):
        return x

    def g_translate(self, g, x):
        return self.translate(g, x)

    def g_member(self, g, x):
        return self.member(g, x)

    def group_witness(self, x):
        return x.payload

    # -- verdicts -------------------------------------------------------------
    def ql1_witness(self, g):
        return tuple(max(0, a) for a in g)

    def toeplitz_verdict(self, rng, samples=200):
        ql0 = SampleReport("QL0", True, 0, proved=True,
                           detail={"rule": "a vector and its negative are both >= 0 only at 0"})
        bad = []
        for _ in range(samples):
            g = self.random_group_element(rng)
            p = self.ql1_witness(g)
            for _ in range(5):
                s = tuple(rng.randint(0, 10) for _ in range(self.k))
                lhs = self.g_member(s, Ideal(g))
                if lhs != self.member(s, Ideal(p)):
                    bad.append({"g": list(g), "s": list(s)})
        ql1 = SampleReport(
            "QL1", not bad, samples, proved=not bad,
            detail={"rule": "P meets g+P in max(0, g) + P", "counterexamples": bad[:3]},
        )
        return ToeplitzVerdict("QuasiLattice", [ql0, ql1],
                               "quasi-lattice ordered; witness p = max(0, g) coordinatewise")


class Nats(NatsK):
    """N inside Z with scalar elements."""

    tag = "Nats"

    def __init__(self, spec):
        Family.__init__(self, spec)
        self.k = 1

    def _wrap(self, v):
        return (v,) if isinstance(v, int) else v

    def one(self):
        return 0

    def mul(self, p, q):
        return p + q

    def random_element(self, rng):
        return rng.randint(0, 8)

    def default_generators(self):
        return [1]

    def parse_element(self, data):
        v = int(data)
        if v < 0:
            raise FamilyError("elements of N are nonnegative")
        return v

    def element_to_json(self, p):
        return p

    def top(self):
        return Ideal(0)

    def translate(self, p, x):
        return EMPTY if x.is_empty else Ideal(x.payload + p)

    def preimage(self, p, x):
        return EMPTY if x.is_empty else Ideal(max(x.payload - p, 0))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        return Ideal(max(x.payload, y.payload))

    def member(self, s, x):
        return not x.is_empty and s >= x.payload

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        return {"kind": "principal", "generator": x.payload}

    def sort_key(self, x):
        return (0, 0) if x.is_empty else (1, x.payload)

    def region_witnesses(self, ideals):
        return sorted({0} | {x.payload for x in ideals if not x.is_empty})

    def to_group(self, p):
        return p

    def from_group(self, g):
        return g if g >= 0 else None

    def group_mul(self, g, h):
        return g + h

    def group_inv(self, g):
        return -g

    def random_group_element(self, rng):
        return rng.randint(-12, 12)

    def parse_group_element(self, data):
        return int(data)

    def group_element_to_json(self, g):
        return g

    def ql1_witness(self, g):
        return max(0, g)

    def toeplitz_verdict(self, rng, samples=200):
        ql0 = SampleReport("QL0", True, 0, proved=True,
                           detail={"rule": "n and -n both in N only for n = 0"})
        bad = []
        for _ in range(samples):
            g = self.random_group_element(rng)
            p = self.ql1_witness(g)
            for s in range(0, 16):
                if self.member(s, Ideal(g)) != self.member(s, Ideal(p)):
                    bad.append({"g": g, "s": s})
        ql1 = SampleReport(
            "QL1", not bad, samples, proved=not bad,
            detail={"rule": "N meets g+N in max(0, g) + N", "counterexamples": bad[:3]},
        )
        return ToeplitzVerdict("QuasiLattice", [ql0, ql1],
                               "quasi-lattice ordered; witness p = max(0, g)")

"""H x| N inside Hbar x| Z for H = Z^k and N acting by a diagonal matrix diag(m_1..m_k).

Left side: the constructible right ideals are the principal ideals
(h, n)P = (h + alpha_n(H)) x (n), stored as (n, h mod alpha_n(H)).
Right side: the constructible left ideals are H x (n), stored as n.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .base import EMPTY, Family, FamilyError, Ideal, SampleReport, ToeplitzVerdict


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _SemidirectBase(Family):
    tag = "SemidirectHN"

    def __init__(self, spec):
        super().__init__(spec)
        diag = spec.param("diag")
        if diag is None:
            diag = (spec.param("m", 2),)
        self.m = tuple(int(v) for v in diag)
        self.k = len(self.m)
        if self.k < 1 or min(self.m) < 1:
            raise FamilyError("SemidirectHN needs endomorphism factors m >= 1 (injective on Z^k)")

    # -- elements of P: (h, n) with h in Z^k, n >= 0 ---------------------------
    def alpha(self, n, h):
        return tuple(mi ** n * a for mi, a in zip(self.m, h))

    def one(self):
        return ((0,) * self.k, 0)

    def mul(self, p, q):
        (h1, n1), (h2, n2) = p, q
        return (tuple(a + b for a, b in zip(h1, self.alpha(n1, h2))), n1 + n2)

    def random_element(self, rng):
        return (tuple(rng.randint(-6, 6) for _ in range(self.k)), rng.randint(0, 3))

    def default_generators(self):
        gens = [((0,) * self.k, 1)]
        gens += [(tuple(int(i == j) for j in range(self.k)), 0) for i in range(self.k)]
        return gens

    def parse_element(self, data):
        h, n = data
        h = (int(h),) if not isinstance(h, (list, tuple)) else tuple(int(a) for a in h)
        if len(h) != self.k or int(n) < 0:
            raise FamilyError("SemidirectHN element is [h, n] with h in Z^k and n >= 0")
        return (h, int(n))

    def element_to_json(self, p):
        h, n = p
        return [h[0] if self.k == 1 else list(h), n]

    # -- group Hbar x| Z; Hbar = Z[1/m_i] coordinatewise -------------------------
    def _gpow(self, i, z):
        return Fraction(self.m[i]) ** z

    def to_group(self, p):
        h, n = p
        return (tuple(Fraction(a) for a in h), n)

    def from_group(self, g):
        h, z = g
        if z < 0 or any(a.denominator != 1 for a in h):
            return None
        return (tuple(int(a) for a in h), z)

    def group_mul(self, g, h):
        (a, z), (b, w) = g, h
        return (tuple(x + self._gpow(i, z) * y for i, (x, y) in enumerate(zip(a, b))), z + w)

    def group_inv(self, g):
        a, z = g
        return (tuple(-self._gpow(i, -z) * x for i, x in enumerate(a)), -z)

    def random_group_element(self, rng):
        h = tuple(Fraction(rng.randint(-9, 9), self.m[i] ** rng.randint(0, 3)) for i in range(self.k))
        return (h, rng.randint(-3, 3))

    def parse_group_element(self, data):
        h, z = data
        h = [h] if not isinstance(h, (list, tuple)) else h
        return (tuple(Fraction(str(a)) for a in h), int(z))

    def group_element_to_json(self, g):
        h, z = g
        hs = [_frac_json(a) for a in h]
        return [hs[0] if self.k == 1 else hs, z]

    def stabilizer_generators(self):
        """Generators of the stabilizer of P: the subgroup H x {0}."""
        return [(tuple(Fraction(int(i == j)) for j in range(self.k)), 0) for i in range(self.k)]


class SemidirectLeft(_SemidirectBase):
    sides = ("left",)

    def _mod(self, n):
        return tuple(mi ** n for mi in self.m)

    def _reduce(self, n, r):
        return Ideal((n, tuple(a % q for a, q in zip(r, self._mod(n)))))

    def top(self):
        return Ideal((0, (0,) * self.k))

    def translate(self, p, x):
        if x.is_empty:
            return EMPTY
        (g, k), (n, r) = p, x.payload
        return self._reduce(n + k, tuple(a + b for a, b in zip(g, self.alpha(k, r))))

    def preimage(self, p, x):
        if x.is_empty:
            return EMPTY
        (g, k), (n, r) = p, x.payload
        mods = self._mod(n)
        d = tuple((a - b) % q for a, b, q in zip(r, g, mods))
        if k >= n:
            return self.top() if not any(d) else EMPTY
        step = self._mod(k)
        if any(a % s for a, s in zip(d, step)):
            return EMPTY
        return self._reduce(n - k, tuple(a // s for a, s in zip(d, step)))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        (n1, r1), (n2, r2) = x.payload, y.payload
        if n1 > n2:
            (n1, r1), (n2, r2) = (n2, r2), (n1, r1)
        if all((a - b) % q == 0 for a, b, q in zip(r2, r1, self._mod(n1))):
            return Ideal((n2, r2))
        return EMPTY

    def member(self, s, x):
        if x.is_empty:
            return False
        (u, k), (n, r) = s, x.payload
        return k >= n and all((a - b) % q == 0 for a, b, q in zip(u, r, self._mod(n)))

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        n, r = x.payload
        return {"kind": "coset-times-level", "level": n,
                "residue": r[0] if self.k == 1 else list(r),
                "modulus": self._mod(n)[0] if self.k == 1 else list(self._mod(n))}

    def sort_key(self, x):
        return (0,) if x.is_empty else (1,) + x.payload

    def region_witnesses(self, ideals):
        depth = max((x.payload[0] for x in ideals if not x.is_empty), default=0)
        residues = itertools.product(*(range(q) for q in self._mod(depth)))
        residues = list(residues)
        for k in range(depth + 1):
            for u in residues:
                yield (u, k)

    # -- in G: (level s, coset r + alpha_s(Z^k)) with r in Hbar -----------------
    def embed(self, x):
        if x.is_empty:
            return EMPTY
        n, r = x.payload
        return Ideal((n, tuple(Fraction(a) for a in r)))

    def _greduce(self, s, r):
        return Ideal((s, tuple(a % self._gpow(i, s) for i, a in enumerate(r))))

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        (h, z), (s, r) = g, x.payload
        return self._greduce(s + z, tuple(a + self._gpow(i, z) * b
                                          for i, (a, b) in enumerate(zip(h, r))))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        (u, k), (s, r) = g, x.payload
        return k >= s and all(((a - b) / self._gpow(i, s)).denominator == 1
                              for i, (a, b) in enumerate(zip(u, r)))

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        s, r = x.payload
        return {"kind": "coset-times-level", "level": s, "residue": [_frac_json(a) for a in r]}

    def group_witness(self, x):
        s, r = x.payload
        return (r, s)

    def toeplitz_verdict(self, rng, samples=200):
        # Left Ore: every g equals q^{-1} p with q = (0, k) and p = q g in P.
        bad = []
        for _ in range(samples):
            g = self.random_group_element(rng)
            h, z = g
            k = max(0, -z)
            while True:
                q = (tuple(Fraction(0) for _ in h), k)
                p = self.group_mul(q, g)
                if self.from_group(p) is not None:
                    break
                k += 1
            if self.group_mul(self.group_inv(q), p) != g:
                bad.append(self.group_element_to_json(g))
        check = SampleReport("left-Ore", not bad, samples,
                             detail={"witness": "q = (0, k), p = q g", "counterexamples": bad[:3]})
        return ToeplitzVerdict("Ore", [check], "G = P^{-1} P, witnessed on sampled g")


class SemidirectRight(_SemidirectBase):
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
        return [((0,) * self.k, n) for n in levels]

    # -- in G: {(u, k) : k >= s, u in m^{k-s} c + Z^k}, c in Hbar / Z^k -------------
    def embed(self, x):
        if x.is_empty:
            return EMPTY
        return Ideal((x.payload, (Fraction(0),) * self.k))

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        (h, z), (s, c) = g, x.payload
        return Ideal((s + z, tuple((a + self._gpow(i, s) * b) % 1
                                   for i, (a, b) in enumerate(zip(c, h)))))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        (u, k), (s, c) = g, x.payload
        return k >= s and all((a - self._gpow(i, k - s) * b).denominator == 1
                              for i, (a, b) in enumerate(zip(u, c)))

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        s, c = x.payload
        return {"kind": "H-coset-tower", "level": s, "coset": [_frac_json(a) for a in c]}

    def group_witness(self, x):
        s, c = x.payload
        return (c, s)

    def toeplitz_verdict(self, rng, samples=200):
        # Every nonempty left ideal of N is principal, so the set
        # {x in N : x(hbar) in H} is principal for every hbar; we also watch it
        # being upward closed on sampled hbar.
        bad = []
        for _ in range(samples):
            hbar, _ = self.random_group_element(rng)
            hits = [all((self._gpow(i, x) * a).denominator == 1 for i, a in enumerate(hbar))
                    for x in range(12)]
            first = hits.index(True) if True in hits else None
            if first is None or not all(hits[first:]):
                bad.append([_frac_json(a) for a in hbar])
        check = SampleReport(
            "S4-principal", not bad, samples, proved=not bad,
            detail={"rule": "all nonempty left ideals of N are principal",
                    "counterexamples": bad[:3]},
        )
        return ToeplitzVerdict("RightToeplitzS4", [check],
                               "right Toeplitz via principal left ideals {x : x(hbar) in H}")

"""The ax+b semigroup Z x| Z^x inside Q x| Q^x; (b, a) is the map x -> ax + b.

Left side: constructible right ideals (r + cZ) x cZ^x, stored as (c, r) with
c > 0 and 0 <= r < c.
Right side: constructible left ideals Z x aZ^x, stored as a > 0.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..abelian import lcm
from .base import EMPTY, Family, FamilyError, Ideal, SampleReport, ToeplitzVerdict


def crt_merge(r1, c1, r2, c2):
    """(r, lcm) with r = r1 mod c1 and r = r2 mod c2, or None when incompatible."""
    g = gcd(c1, c2)
    if (r2 - r1) % g:
        return None
    m1, m2 = c1 // g, c2 // g
    # r1 + c1 t = r2 mod c2  <=>  m1 t = (r2 - r1)/g mod m2
    t = ((r2 - r1) // g) * pow(m1, -1, m2) % m2 if m2 > 1 else 0
    c = c1 * m2
    return ((r1 + c1 * t) % c, c)


def divisors(n):
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _frac_str(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _AxbBase(Family):
    tag = "AxbInt"

    def one(self):
        return (0, 1)

    def mul(self, p, q):
        (b1, a1), (b2, a2) = p, q
        return (b1 + a1 * b2, a1 * a2)

    def random_element(self, rng):
        a = 0
        while a == 0:
            a = rng.randint(-6, 6)
        return (rng.randint(-8, 8), a)

    def default_generators(self):
        return [(1, 1), (0, 2), (0, 3), (0, -1)]

    def parse_element(self, data):
        b, a = (int(x) for x in data)
        if a == 0:
            raise FamilyError("ax+b elements need a != 0")
        return (b, a)

    def element_to_json(self, p):
        return list(p)

    def to_group(self, p):
        return (Fraction(p[0]), Fraction(p[1]))

    def from_group(self, g):
        b, a = g
        if b.denominator != 1 or a.denominator != 1:
            return None
        return (int(b), int(a))

    def group_mul(self, g, h):
        return self.mul(g, h)

    def group_inv(self, g):
        b, a = g
        return (-b / a, 1 / a)

    def random_group_element(self, rng):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        return (Fraction(rng.randint(-20, 20), rng.randint(1, 9)), a)

    def parse_group_element(self, data):
        b, a = (Fraction(str(x)) for x in data)
        if a == 0:
            raise FamilyError("ax+b group elements need a != 0")
        return (b, a)

    def group_element_to_json(self, g):
        return [_frac_str(g[0]), _frac_str(g[1])]

    def stabilizer_generators(self):
        """Z x| {+-1}: translation by 1 and the reflection x -> -x."""
        return [(Fraction(1), Fraction(1)), (Fraction(0), Fraction(-1))]


class AxbLeft(_AxbBase):
    sides = ("left",)

    def top(self):
        return Ideal((1, 0))

    def translate(self, p, x):
        if x.is_empty:
            return EMPTY
        (beta, gamma), (c, r) = p, x.payload
        c2 = abs(gamma) * c
        return Ideal((c2, (beta + gamma * r) % c2))

    def preimage(self, p, x):
        if x.is_empty:
            return EMPTY
        (beta, gamma), (c, r) = p, x.payload
        g = gcd(gamma, c)
        if (r - beta) % g:
            return EMPTY
        c2 = c // g
        if c2 == 1:
            return self.top()
        return Ideal((c2, ((r - beta) // g) * pow(gamma // g, -1, c2) % c2))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        (c1, r1), (c2, r2) = x.payload, y.payload
        merged = crt_merge(r1, c1, r2, c2)
        return EMPTY if merged is None else Ideal((merged[1], merged[0]))

    def member(self, s, x):
        if x.is_empty:
            return False
        (b, a), (c, r) = s, x.payload
        return a % c == 0 and (b - r) % c == 0

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        c, r = x.payload
        return {"kind": "progression", "modulus": c, "residue": r}

    def sort_key(self, x):
        return (0,) if x.is_empty else (1,) + x.payload

    def region_witnesses(self, ideals):
        # Membership of (b, a) depends on b mod L and gcd(a, L) only.
        big = 1
        for x in ideals:
            if not x.is_empty:
                big = lcm(big, x.payload[0])
        for a in divisors(big):
            for b in range(big):
                yield (b, a)

    # -- in G: (c, r) with c in Q_{>0}, r in Q mod c: (r + cZ) x cZ^x ------------
    def embed(self, x):
        if x.is_empty:
            return EMPTY
        c, r = x.payload
        return Ideal((Fraction(c), Fraction(r)))

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        (beta, gamma), (c, r) = g, x.payload
        c2 = abs(gamma) * c
        return Ideal((c2, (beta + gamma * r) % c2))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        (u, w), (c, r) = g, x.payload
        return w != 0 and (w / c).denominator == 1 and ((u - r) / c).denominator == 1

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        c, r = x.payload
        return {"kind": "progression", "modulus": _frac_str(c), "residue": _frac_str(r)}

    def group_witness(self, x):
        c, r = x.payload
        return (r, c)

    def toeplitz_verdict(self, rng, samples=200):
        bad = []
        for _ in range(samples):
            g = self.random_group_element(rng)
            d = lcm(g[0].denominator, g[1].denominator)
            q = (Fraction(0), Fraction(d))
            p = self.group_mul(q, g)
            if self.from_group(p) is None or self.group_mul(self.group_inv(q), p) != g:
                bad.append(self.group_element_to_json(g))
        check = SampleReport("left-Ore", not bad, samples,
                             detail={"witness": "q = (0, d), p = q g", "counterexamples": bad[:3]})
        return ToeplitzVerdict("Ore", [check], "G = P^{-1} P, witnessed on sampled g")


class AxbRight(_AxbBase):
    sides = ("right",)

    def top(self):
        return Ideal(1)

    def translate(self, p, x):
        return EMPTY if x.is_empty else Ideal(x.payload * abs(p[1]))

    def preimage(self, p, x):
        if x.is_empty:
            return EMPTY
        a = x.payload
        return Ideal(a // gcd(a, p[1]))

    def intersect(self, x, y):
        if x.is_empty or y.is_empty:
            return EMPTY
        return Ideal(lcm(x.payload, y.payload))

    def member(self, s, x):
        return not x.is_empty and s[1] % x.payload == 0

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        return {"kind": "Z-times-multiples", "modulus": x.payload}

    def sort_key(self, x):
        return (0, 0) if x.is_empty else (1, x.payload)

    def region_witnesses(self, ideals):
        big = 1
        for x in ideals:
            if not x.is_empty:
                big = lcm(big, x.payload)
        return [(0, a) for a in divisors(big)]

    # -- in G: (c, tau): {(u, w) : w in cZ^x, u in Z + (w/c) tau}, tau in [0, 1) ----
    def embed(self, x):
        if x.is_empty:
            return EMPTY
        return Ideal((Fraction(x.payload), Fraction(0)))

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        (beta, gamma), (c, tau) = g, x.payload
        sign = 1 if gamma > 0 else -1
        return Ideal((c * abs(gamma), (sign * (tau + c * beta)) % 1))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        (u, w), (c, tau) = g, x.payload
        k = w / c
        return w != 0 and k.denominator == 1 and (u - k * tau).denominator == 1

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        c, tau = x.payload
        return {"kind": "Z-twisted-multiples", "modulus": _frac_str(c), "twist": _frac_str(tau)}

    def group_witness(self, x):
        c, tau = x.payload
        return (tau, c)

    def toeplitz_verdict(self, rng, samples=200):
        # For hbar in Q, {x in Z^x : x hbar in Z} = den(hbar) Z^x: a principal left ideal.
        bad = []
        for _ in range(samples):
            hbar = self.random_group_element(rng)[0]
            d = hbar.denominator
            for x in range(-30, 31):
                if x and ((x * hbar).denominator == 1) != (x % d == 0):
                    bad.append(_frac_str(hbar))
                    break
        check = SampleReport(
            "S4-principal", not bad, samples,
            detail={"rule": "{x : x hbar in Z} = den(hbar) Z^x", "counterexamples": bad[:3]},
        )
        return ToeplitzVerdict("RightToeplitzS4", [check],
                               "right Toeplitz via principal sets {x : x hbar in Z}")

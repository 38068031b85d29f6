"""M_2^x(Z) (integer 2x2 matrices of nonzero determinant) inside GL_2(Q).

Every constructible right ideal is principal, pP, and is stored by the
column Hermite normal form of p.  Left ideals Pp are handled by transposing:
Pp = (p^T P)^T.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..abelian import IntMatrix, hermite_normal_form, lcm, smith_normal_form
from .base import EMPTY, Family, FamilyError, Ideal, SampleReport, ToeplitzVerdict

S = IntMatrix.from_rows([[0, -1], [1, 0]])
T = IntMatrix.from_rows([[1, 1], [0, 1]])
R = IntMatrix.from_rows([[1, 0], [0, -1]])
GL2Z_GENERATORS = (S, T, R)


def adjugate(m: IntMatrix) -> IntMatrix:
    a, b, c, d = m.entries
    return IntMatrix.from_rows([[d, -b], [-c, a]])


def content(m: IntMatrix) -> int:
    g = 0
    for x in m.entries:
        g = gcd(g, x)
    return g


def in_principal(p: IntMatrix, y: IntMatrix) -> bool:
    """y in pP, i.e. p^{-1} y integral: adj(p) y is divisible by det p."""
    d = p.det()
    return all(x % d == 0 for x in (adjugate(p) @ y).entries)


def principal_preimage(p: IntMatrix, q: IntMatrix) -> IntMatrix:
    """r with p^{-1}(qP) = rP.

    With d = |det p|, adj(p) q = u^{-1} diag(a1, a2) v^{-1} (Smith form), one gets
    r = u^{-1} diag(lcm(a1, d)/d, lcm(a2, d)/d).
    """
    d = abs(p.det())
    s, u, _ = smith_normal_form(adjugate(p) @ q)
    a1, a2 = s[0, 0], s[1, 1]
    uinv = u.inverse_over_z()
    return uinv @ IntMatrix.diag([lcm(a1, d) // d, lcm(a2, d) // d])


class GroupMatrix:
    """An element M/den of GL_2(Q); den > 0 and gcd(content(M), den) = 1."""

    __slots__ = ("m", "den")

    def __init__(self, m: IntMatrix, den: int = 1):
        if den == 0:
            raise FamilyError("zero denominator")
        if den < 0:
            m, den = -m, -den
        g = gcd(content(m), den)
        if g > 1:
            m = IntMatrix(m.rows, m.cols, tuple(x // g for x in m.entries))
            den //= g
        self.m, self.den = m, den

    def __eq__(self, other):
        return isinstance(other, GroupMatrix) and (self.m, self.den) == (other.m, other.den)

    def __hash__(self):
        return hash((self.m, self.den))

    def __matmul__(self, other):
        return GroupMatrix(self.m @ other.m, self.den * other.den)

    def inverse(self):
        d = self.m.det()
        if d == 0:
            raise FamilyError("singular matrix")
        return GroupMatrix(IntMatrix(2, 2, tuple(x * self.den for x in adjugate(self.m).entries)), d)

    def transpose(self):
        return GroupMatrix(self.m.transpose(), self.den)

    def entries(self):
        return [[Fraction(self.m[i, j], self.den) for j in range(2)] for i in range(2)]

    def __repr__(self):
        return f"GroupMatrix({self.m.to_rows()}, {self.den})"


def _parse_matrix(data) -> IntMatrix:
    rows = [[int(x) for x in r] for r in data]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise FamilyError("expected a 2x2 matrix")
    return IntMatrix.from_rows(rows)


def _frac_str(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class MatrixPID2(Family):
    tag = "MatrixPID2"
    has_region_oracle = False

    def _t(self, m):
        # Work on transposes for the right side.
        return m if self.side == "left" else m.transpose()

    # -- semigroup ------------------------------------------------------------
    def one(self):
        return IntMatrix.identity(2)

    def mul(self, p, q):
        return p @ q

    def random_element(self, rng, bound=5):
        while True:
            m = IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(2)] for _ in range(2)])
            if m.det() != 0:
                return m

    def default_generators(self):
        return [IntMatrix.diag([2, 1]), T]

    def parse_element(self, data):
        m = _parse_matrix(data)
        if m.det() == 0:
            raise FamilyError("MatrixPID2 elements need nonzero determinant")
        return m

    def element_to_json(self, p):
        return p.to_rows()

    # -- ideals (payload: HNF of p for pP, of p^T for Pp) -----------------------
    def top(self):
        return Ideal(IntMatrix.identity(2))

    def translate(self, p, x):
        if x.is_empty:
            return EMPTY
        return Ideal(hermite_normal_form(self._t(p) @ x.payload))

    def preimage(self, p, x):
        if x.is_empty:
            return EMPTY
        return Ideal(hermite_normal_form(principal_preimage(self._t(p), x.payload)))

    def intersect(self, x, y):
        # pP meets qP in p (p^{-1}(qP)).
        if x.is_empty or y.is_empty:
            return EMPTY
        p = x.payload
        return Ideal(hermite_normal_form(p @ principal_preimage(p, y.payload)))

    def member(self, s, x):
        return not x.is_empty and in_principal(x.payload, self._t(s))

    def generator(self, x):
        """p with X = pP (left side) or X = Pp (right side)."""
        return self._t(x.payload)

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        kind = "principal-right" if self.side == "left" else "principal-left"
        return {"kind": kind, "generator": self.generator(x).to_rows()}

    def sort_key(self, x):
        if x.is_empty:
            return (0,)
        return (1, abs(x.payload.det()), x.payload.entries)

    # -- GL_2(Q) ------------------------------------------------------------------
    def to_group(self, p):
        return GroupMatrix(p)

    def from_group(self, g):
        if g.den != 1 or g.m.det() == 0:
            return None
        return g.m

    def group_mul(self, g, h):
        return g @ h

    def group_inv(self, g):
        return g.inverse()

    def random_group_element(self, rng):
        return GroupMatrix(self.random_element(rng, 6), rng.randint(1, 6))

    def parse_group_element(self, data):
        if isinstance(data, dict):
            return GroupMatrix(_parse_matrix(data["matrix"]), int(data.get("den", 1)))
        fr = [[Fraction(str(x)) for x in r] for r in data]
        den = lcm(lcm(fr[0][0].denominator, fr[0][1].denominator),
                  lcm(fr[1][0].denominator, fr[1][1].denominator))
        m = IntMatrix.from_rows([[int(x * den) for x in r] for r in fr])
        if m.det() == 0:
            raise FamilyError("group elements must be invertible")
        return GroupMatrix(m, den)

    def group_element_to_json(self, g):
        return {"matrix": g.m.to_rows(), "den": g.den}

    # In G: payload (positive rational scalar c, primitive HNF h) meaning c*h*P.
    def _canon_coset(self, g: GroupMatrix) -> Ideal:
        c = content(g.m)
        prim = IntMatrix(2, 2, tuple(x // c for x in g.m.entries))
        return Ideal((Fraction(c, g.den), hermite_normal_form(prim)))

    def embed(self, x):
        if x.is_empty:
            return EMPTY
        return self._canon_coset(GroupMatrix(x.payload))

    def g_translate(self, g, x):
        if x.is_empty:
            return EMPTY
        c, h = x.payload
        g = g if self.side == "left" else g.transpose()
        return self._canon_coset(g @ GroupMatrix(IntMatrix(2, 2, tuple(a * c.numerator for a in h.entries)),
                                                 c.denominator))

    def g_member(self, g, x):
        if x.is_empty:
            return False
        c, h = x.payload
        g = g if self.side == "left" else g.transpose()
        # (c h)^{-1} g = adj(h) g / (c det h) must be integral
        num = adjugate(h) @ g.m
        denom = c * h.det() * g.den
        return all((Fraction(v) / denom).denominator == 1 for v in num.entries)

    def group_ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        c, h = x.payload
        h = h if self.side == "left" else h.transpose()
        return {"kind": "principal-in-G", "scalar": _frac_str(c), "generator": h.to_rows()}

    def stabilizer_generators(self):
        return [GroupMatrix(m) for m in GL2Z_GENERATORS]

    def group_witness(self, x):
        c, h = x.payload
        g = GroupMatrix(IntMatrix(2, 2, tuple(a * c.numerator for a in h.entries)), c.denominator)
        return g if self.side == "left" else g.transpose()

    def toeplitz_verdict(self, rng, samples=200):
        bad_ore, bad_pig = [], []
        for _ in range(samples):
            g = self.random_group_element(rng)
            # g = (dI)^{-1} M with dI, M in P (on the right side: g = M (dI)^{-1}).
            q, p = IntMatrix.diag([g.den, g.den]), g.m
            if GroupMatrix(q).inverse() @ GroupMatrix(p) != g or p.det() == 0:
                bad_ore.append(self.group_element_to_json(g))
            # P meets gP = (1/den) M P in {y : den y in MP} = (den I)^{-1}(MP) = rP.
            r = principal_preimage(q, p)
            scaled = IntMatrix(2, 2, tuple(x * g.den for x in r.entries))
            if not in_principal(p, scaled):
                bad_pig.append(self.group_element_to_json(g))
        ore = SampleReport("Ore", not bad_ore, samples,
                           detail={"witness": "q = den*I, p = den*g", "counterexamples": bad_ore[:3]})
        pig = SampleReport("PrincipalInG", not bad_pig, samples,
                           detail={"rule": "P meets gP in a principal ideal", "counterexamples": bad_pig[:3]})
        return ToeplitzVerdict("Ore", [ore, pig], "Ore on both sides; P cap gP principal")

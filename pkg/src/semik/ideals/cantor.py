"""The shift action of Z on {1,-1}^Z with the basis V_F = {z : z_n = 1 for n in F}.

There is no semigroup here: the acting "elements" are integers and points of
the space are given by the finite set of coordinates equal to 1 (all other
coordinates in the region of interest are -1).  translate(m, V_F) = m.V_F =
V_{F+m}, and preimage undoes it.
"""

from __future__ import annotations

import itertools

from .base import EMPTY, Family, FamilyError, Ideal, SampleReport, ToeplitzVerdict


class CantorShift(Family):
    tag = "CantorShift"
    sides = ("left",)
    all_principal = False

    def __init__(self, spec):
        super().__init__(spec)
        self.window = int(spec.param("window", 4))
        if self.window < 1:
            raise FamilyError("CantorShift window must be >= 1")

    def one(self):
        return 0

    def mul(self, p, q):
        return p + q

    def random_element(self, rng):
        return rng.randint(-self.window, self.window)

    def default_generators(self):
        return [1]

    def parse_element(self, data):
        return int(data)

    def parse_point(self, data):
        return frozenset(int(x) for x in data)

    def top(self):
        return Ideal(frozenset())

    def basis_set(self, coords):
        return Ideal(frozenset(coords))

    def translate(self, p, x):
        return EMPTY if x.is_empty else Ideal(frozenset(n + p for n in x.payload))

    def preimage(self, p, x):
        return EMPTY if x.is_empty else Ideal(frozenset(n - p for n in x.payload))

    def intersect(self, x, y):
        # V_F meets V_G in V_{F u G}
        if x.is_empty or y.is_empty:
            return EMPTY
        return Ideal(x.payload | y.payload)

    def member(self, point, x):
        return not x.is_empty and x.payload <= point

    def shift_point(self, m, point):
        """(m.z)_n = z_{n-m}: the +1 coordinates move by m."""
        return frozenset(n + m for n in point)

    def ideal_to_json(self, x):
        if x.is_empty:
            return {"kind": "empty"}
        return {"kind": "cylinder", "coordinates": sorted(x.payload)}

    def sort_key(self, x):
        if x.is_empty:
            return (0,)
        f = sorted(x.payload)
        return (1, len(f), tuple(f))

    def region_witnesses(self, ideals):
        # Membership only looks at coordinates in the union of the F's.
        coords = sorted(set().union(*(x.payload for x in ideals if not x.is_empty)))
        for r in range(len(coords) + 1):
            for combo in itertools.combinations(coords, r):
                yield frozenset(combo)

    def window_family(self):
        """All V_F with F inside {0, ..., window-1}."""
        out = []
        for r in range(self.window + 1):
            for combo in itertools.combinations(range(self.window), r):
                out.append(Ideal(frozenset(combo)))
        return out

    # -- the group Z acts directly ------------------------------------------------
    def to_group(self, p):
        return p

    def from_group(self, g):
        return g

    def group_mul(self, g, h):
        return g + h

    def group_inv(self, g):
        return -g

    def random_group_element(self, rng):
        return rng.randint(-3 * self.window, 3 * self.window)

    def parse_group_element(self, data):
        return int(data)

    def embed(self, x):
        return x

    def g_translate(self, g, x):
        return self.translate(g, x)

    def g_member(self, point, x):
        return self.member(point, x)

    def stabilizer_generators(self):
        return [1]

    def toeplitz_verdict(self, rng, samples=200):
        # A group action on a space: no semigroup embedding, so the Toeplitz
        # condition is not the route.  What the formula needs is a Z-invariant
        # regular basis; check invariance V_{F+m} = m.V_F on sampled points.
        bad = []
        for _ in range(samples):
            m = self.random_group_element(rng)
            f = frozenset(x for x in range(self.window) if rng.random() < 0.5)
            point = frozenset(x for x in range(-self.window, 2 * self.window) if rng.random() < 0.5)
            lhs = self.member(self.shift_point(-m, point), Ideal(f))  # point in m.V_F
            rhs = self.member(point, self.translate(m, Ideal(f)))
            if lhs != rhs:
                bad.append({"m": m, "F": sorted(f)})
        check = SampleReport("invariant-basis", not bad, samples,
                             detail={"rule": "m.V_F = V_{F+m}", "counterexamples": bad[:3]})
        return ToeplitzVerdict("NotApplicable", [check],
                               "group action with an invariant regular basis; no Toeplitz route needed")

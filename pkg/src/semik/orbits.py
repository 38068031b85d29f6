"""Orbits of G on the nonempty constructible ideals in G, with stabilizers.

Every catalog semigroup family has a single orbit (each ideal in G is g.P or
P.g), so the decomposition is a closed form whose stabilizer is that of P.
The Cantor shift has infinitely many orbits; those are enumerated inside a
window and the result is never claimed complete.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .ideals import CantorShift, FamilyError, FiniteSets, Ideal


@dataclass(frozen=True)
class StabilizerDescriptor:
    tag: str
    params: tuple = ()

    _ARITY = {"Trivial": 0, "FreeAbelian": 1, "FiniteCyclic": 1, "FiniteAbelian": 1,
              "InfiniteDihedral": 0, "GL2Z": 0, "CatalogGroup": 2, "TensorTower": 3}

    def __post_init__(self):
        if self.tag not in self._ARITY:
            raise ValueError(f"unknown stabilizer tag {self.tag!r}")
        if len(self.params) != self._ARITY[self.tag]:
            raise ValueError(f"{self.tag} takes {self._ARITY[self.tag]} parameters")
        if self.tag in ("FreeAbelian", "FiniteCyclic") and self.params[0] < 1:
            raise ValueError(f"{self.tag} needs a parameter >= 1")
        if self.tag == "FiniteAbelian" and any(d < 1 for d in self.params[0]):
            raise ValueError("FiniteAbelian factors must be >= 1")

    @classmethod
    def trivial(cls):
        return cls("Trivial")

    @classmethod
    def free_abelian(cls, k):
        return cls("FreeAbelian", (k,))

    @classmethod
    def tensor_tower(cls, order, classes, truncation=None):
        # TensorTower(Gamma, t): the stabilizer direct sum of copies of a finite
        # group Gamma, truncated to t copies (None = the full restricted sum).
        return cls("TensorTower", (order, classes, truncation))

    def __str__(self):
        if self.tag == "FreeAbelian":
            return f"Z^{self.params[0]}" if self.params[0] > 1 else "Z"
        if self.tag == "FiniteCyclic":
            return f"Z/{self.params[0]}"
        if self.tag == "FiniteAbelian":
            return " + ".join(f"Z/{d}" for d in self.params[0]) or "0"
        if self.tag == "InfiniteDihedral":
            return "Z x| {+-1}"
        if self.tag == "GL2Z":
            return "GL_2(Z)"
        if self.tag == "TensorTower":
            order, _, t = self.params
            n = "inf" if t is None else t
            return f"direct sum of {n} copies of a group of order {order}"
        if self.tag == "CatalogGroup":
            return f"{self.params[0]}{list(self.params[1])}"
        return "{e}"

    def to_json(self):
        out = {"tag": self.tag}
        if self.tag in ("FreeAbelian", "FiniteCyclic"):
            out["n"] = self.params[0]
        elif self.tag == "FiniteAbelian":
            out["factors"] = list(self.params[0])
        elif self.tag == "TensorTower":
            out.update(group_order=self.params[0], conjugacy_classes=self.params[1],
                       truncation=self.params[2])
        elif self.tag == "CatalogGroup":
            out.update(name=self.params[0], parameters=list(self.params[1]))
        return out


@dataclass(frozen=True)
class OrbitTerm:
    rep: Ideal
    rep_json: dict
    stabilizer: StabilizerDescriptor
    note: str = ""


@dataclass(frozen=True)
class OrbitDecomposition:
    terms: tuple[OrbitTerm, ...]
    completeness: str            # "ClosedForm" or "WindowedEnumeration"
    window: int | None = None
    proof: str = ""

    @property
    def complete(self) -> bool:
        return self.completeness == "ClosedForm"


_SINGLE_ORBIT = {
    "Nats": "every nonempty ideal in Z is g + N; Z acts freely",
    "NatsK": "every nonempty ideal in Z^k is g + N^k; Z^k acts freely",
    "MatrixPID2": "every ideal in G is gP; stabilizer of P is the unit group GL_2(Z)",
    "SemidirectHN": "every ideal in G is a translate of P; stabilizer of P is H x {0}",
    "AxbInt": "Z has trivial class group, so one orbit; stabilizer Z x| {+-1}",
    "WreathFiniteN": "every ideal in G is a translate of P; stabilizer of P is the lamp group over N",
}


def stabilizer_of_top(family) -> StabilizerDescriptor:
    tag = family.tag
    if tag in ("Nats", "NatsK"):
        return StabilizerDescriptor.trivial()
    if tag == "MatrixPID2":
        return StabilizerDescriptor("GL2Z")
    if tag == "SemidirectHN":
        return StabilizerDescriptor.free_abelian(family.k)
    if tag == "AxbInt":
        return StabilizerDescriptor("InfiniteDihedral")
    if tag == "WreathFiniteN":
        g = family.gamma
        return StabilizerDescriptor.tensor_tower(g.order, g.conjugacy_class_count, None)
    raise FamilyError(f"no closed-form stabilizer for {tag}")


def cantor_orbit_reps(window: int) -> list[frozenset]:
    """Nonempty F inside {0..window-1} with min F = 0, ordered by (max F, F)."""
    reps = []
    for r in range(window):
        for rest in itertools.combinations(range(1, window), r):
            reps.append(frozenset((0,) + rest))
    return sorted(reps, key=lambda f: (max(f), tuple(sorted(f))))


def orbit_decompose(family, window: int | None = None) -> OrbitDecomposition:
    if isinstance(family, FiniteSets):
        terms = tuple(OrbitTerm(Ideal(i), family.ideal_to_json(i), StabilizerDescriptor.trivial())
                      for i in range(len(family.sets)))
        return OrbitDecomposition(terms, "ClosedForm", None, "trivial group: one orbit per member")
    if isinstance(family, CantorShift):
        w = family.window if window is None else window
        if w <= 0:
            raise FamilyError("window must be positive for the Cantor shift")
        top = family.top()
        terms = [OrbitTerm(top, family.ideal_to_json(top), StabilizerDescriptor.free_abelian(1),
                           "V_empty is the whole space, fixed by every shift")]
        for f in cantor_orbit_reps(w):
            x = Ideal(f)
            terms.append(OrbitTerm(x, family.ideal_to_json(x), StabilizerDescriptor.trivial(),
                                   "free orbit of translates"))
        return OrbitDecomposition(tuple(terms), "WindowedEnumeration", w,
                                  "translation classes of finite F, one representative with min F = 0")
    top = family.embed(family.top())
    term = OrbitTerm(top, family.group_ideal_to_json(top), stabilizer_of_top(family),
                     "single orbit")
    return OrbitDecomposition((term,), "ClosedForm", None, _SINGLE_ORBIT[family.tag])


@dataclass
class StabilizerReport:
    descriptor: StabilizerDescriptor | None
    generators: list
    certified: bool
    sampled_fixers: int = 0
    sample: int = 0
    detail: str = ""

    def to_json(self, family=None) -> dict:
        conv = family.group_element_to_json if family is not None else (lambda g: g)
        return {
            "descriptor": self.descriptor.to_json() if self.descriptor else None,
            "generators": [conv(g) for g in self.generators],
            "certified": self.certified,
            "sampled_fixers": self.sampled_fixers,
            "sample": self.sample,
            "detail": self.detail,
        }


def _conjugate(family, w, s):
    # Left side: Stab(gP) = g Stab(P) g^{-1}; right side: Stab(Pg) = g^{-1} Stab(P) g.
    inv = family.group_inv(w)
    if family.side == "left":
        return family.group_mul(family.group_mul(w, s), inv)
    return family.group_mul(family.group_mul(inv, s), w)


def sampled_fixers(family, x: Ideal, sample: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    found = []
    for _ in range(sample):
        g = family.random_group_element(rng)
        if family.g_translate(g, x) == x and g not in found:
            found.append(g)
    return found


def stabilizer_of(family, x: Ideal, sample: int = 200, seed: int = 0) -> StabilizerReport:
    """Stabilizer of a nonempty ideal x in G (already in in-G form)."""
    if x.is_empty:
        raise FamilyError("stabilizer of the empty set is not defined here")
    fixers = sampled_fixers(family, x, sample, seed)
    if isinstance(family, CantorShift):
        if x.payload:
            desc, gens, note = StabilizerDescriptor.trivial(), [], "only 0 fixes a nonempty finite F"
        else:
            desc, gens, note = StabilizerDescriptor.free_abelian(1), [1], "every shift fixes the whole space"
    else:
        try:
            desc = stabilizer_of_top(family)
        except FamilyError:
            nontrivial = [g for g in fixers if g != family.to_group(family.one())]
            return StabilizerReport(None, nontrivial, False, len(fixers), sample,
                                    "no closed form; sampled subgroup only")
        w = family.group_witness(x)
        gens = [_conjugate(family, w, s) for s in family.stabilizer_generators()]
        note = "conjugate of the stabilizer of P by a witness g with X = g.P"
    for g in gens:
        if family.g_translate(g, x) != x:
            raise AssertionError(f"reported stabilizer generator {g!r} does not fix {x!r}")
    return StabilizerReport(desc, gens, True, len(fixers), sample, note)

"""Equivariant integer matrices between finite-dimensional commutative algebras.

A class in KK^G(C^n, C^m) for actions permuting the minimal projections is
recorded by an m x n integer matrix gamma with gamma[g.i, g.j] = gamma[i, j].
Actions are given by generator permutations; two actions are compatible when
they have the same number of generators (both are images of one free group).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .abelian import IntMatrix
from .lattice import TransitionData


class ActionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PermAction:
    degree: int
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise ValueError(f"{g} is not a permutation of 0..{self.degree - 1}")

    @classmethod
    def trivial(cls, degree: int, count: int = 1) -> "PermAction":
        return cls(degree, tuple(tuple(range(degree)) for _ in range(count)))

    @classmethod
    def from_json(cls, doc) -> "PermAction":
        return cls(int(doc["degree"]), tuple(tuple(int(x) for x in g) for g in doc.get("generators", [])))

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    def matrix(self, k: int) -> IntMatrix:
        """Permutation matrix sending basis vector j to basis vector g_k(j)."""
        g = self.generators[k]
        return IntMatrix.from_rows([[1 if g[j] == i else 0 for j in range(self.degree)]
                                    for i in range(self.degree)], self.degree)


def check_equivariance(gamma: IntMatrix, src: PermAction, tgt: PermAction) -> bool:
    if gamma.rows != tgt.degree or gamma.cols != src.degree:
        raise ActionMismatch(f"matrix is {gamma.rows}x{gamma.cols}, actions have degrees "
                             f"{tgt.degree} (target) and {src.degree} (source)")
    if len(src.generators) != len(tgt.generators):
        raise ActionMismatch("source and target actions have different generator counts")
    for gs, gt in zip(src.generators, tgt.generators):
        for i in range(gamma.rows):
            for j in range(gamma.cols):
                if gamma[gt[i], gs[j]] != gamma[i, j]:
                    return False
    return True


@dataclass(frozen=True)
class EquivariantMatrix:
    gamma: IntMatrix
    source: PermAction
    target: PermAction

    def __post_init__(self):
        if not check_equivariance(self.gamma, self.source, self.target):
            raise ActionMismatch("matrix is not equivariant for the given actions")

    @classmethod
    def identity(cls, action: PermAction) -> "EquivariantMatrix":
        return cls(IntMatrix.identity(action.degree), action, action)

    @classmethod
    def from_json(cls, doc) -> "EquivariantMatrix":
        rows = doc["gamma"]
        cols = len(rows[0]) if rows else 0
        gamma = IntMatrix.from_rows(rows, cols)
        src = PermAction.from_json(doc["source"]) if "source" in doc else PermAction.trivial(gamma.cols)
        tgt = PermAction.from_json(doc["target"]) if "target" in doc else PermAction.trivial(gamma.rows)
        return cls(gamma, src, tgt)

    def to_json(self) -> dict:
        return {"gamma": self.gamma.to_rows(), "source": self.source.to_json(),
                "target": self.target.to_json()}


def decompose_pos_neg(m: EquivariantMatrix) -> tuple[EquivariantMatrix, EquivariantMatrix]:
    g = m.gamma
    plus = IntMatrix(g.rows, g.cols, tuple(max(x, 0) for x in g.entries))
    minus = IntMatrix(g.rows, g.cols, tuple(max(-x, 0) for x in g.entries))
    return (EquivariantMatrix(plus, m.source, m.target), EquivariantMatrix(minus, m.source, m.target))


def compose(first: EquivariantMatrix, second: EquivariantMatrix) -> EquivariantMatrix:
    """Apply ``first`` (C -> B, matrix Gamma) then ``second`` (B -> A, matrix Lambda).

    The result has matrix Lambda . Gamma and actions (first.source, second.target).
    """
    if second.source != first.target:
        raise ActionMismatch("second.source must equal first.target")
    return EquivariantMatrix(second.gamma @ first.gamma, first.source, second.target)


@dataclass(frozen=True)
class Invertibility:
    invertible: bool
    inverse: EquivariantMatrix | None = None

    def to_json(self) -> dict:
        return {"invertible": self.invertible,
                "inverse": self.inverse.to_json() if self.inverse else None}


def is_invertible(m: EquivariantMatrix) -> Invertibility:
    g = m.gamma
    if not g.is_square or abs(g.det()) != 1:
        return Invertibility(False)
    inv = g.inverse_over_z()
    n = g.rows
    if inv is None or inv @ g != IntMatrix.identity(n) or g @ inv != IntMatrix.identity(n):
        raise AssertionError("unimodular matrix failed to invert over Z")
    return Invertibility(True, EquivariantMatrix(inv, m.target, m.source))


def from_transition(td: TransitionData, action: PermAction) -> EquivariantMatrix:
    """The transition matrix as an equivariant matrix.

    ``action`` permutes the member indices of the original family; it is
    re-indexed to the stored topological order.
    """
    n = len(td.order)
    if action.degree != n:
        raise ActionMismatch("action degree must equal the family size")
    pos = {member: p for p, member in enumerate(td.order)}
    gens = []
    for g in action.generators:
        perm = [0] * n
        for member in range(n):
            perm[pos[member]] = pos[g[member]]
        gens.append(tuple(perm))
    ordered = PermAction(n, tuple(gens))
    if not check_equivariance(td.gamma, ordered, ordered):
        raise ActionMismatch("action does not preserve inclusions of the family")
    return EquivariantMatrix(td.gamma, ordered, ordered)


# -- random test data ---------------------------------------------------------------

def random_action(rng: random.Random, degree: int, count: int) -> PermAction:
    gens = []
    for _ in range(count):
        if rng.random() < 0.3:
            gens.append(tuple(range(degree)))
        else:
            p = list(range(degree))
            rng.shuffle(p)
            gens.append(tuple(p))
    return PermAction(degree, tuple(gens))


def random_equivariant(rng: random.Random, src: PermAction, tgt: PermAction,
                       lo: int = -3, hi: int = 3) -> EquivariantMatrix:
    """Random matrix constant on orbits of index pairs under the joint action."""
    m, n = tgt.degree, src.degree
    pair_gens = [(gt, gs) for gs, gt in zip(src.generators, tgt.generators)]
    values: dict[tuple[int, int], int] = {}
    for i in range(m):
        for j in range(n):
            if (i, j) in values:
                continue
            v = rng.randint(lo, hi)
            orbit, stack = {(i, j)}, [(i, j)]
            while stack:
                a, b = stack.pop()
                for gt, gs in pair_gens:
                    c = (gt[a], gs[b])
                    if c not in orbit:
                        orbit.add(c)
                        stack.append(c)
            for key in orbit:
                values[key] = v
    gamma = IntMatrix.from_rows([[values[i, j] for j in range(n)] for i in range(m)], n)
    return EquivariantMatrix(gamma, src, tgt)

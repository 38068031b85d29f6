"""Shared machinery for constructible-ideal families.

Each concrete family fixes a semigroup P inside a group G and a side:

* ``left``  -- the left regular representation, whose projections are the
  constructible *right* ideals X (XP = X), built from pX and p^{-1}X;
* ``right`` -- the right regular representation, whose projections are the
  constructible *left* ideals (PX = X), built from Xp and Xp^{-1}.

Ideals are stored as canonical payloads wrapped in :class:`Ideal`, so
structural equality is extensional equality.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence


class FamilyError(ValueError):
    """Bad family parameters or an operation outside the catalog."""


class UnsupportedSide(FamilyError):
    pass


@dataclass(frozen=True)
class Ideal:
    payload: Any = None

    @property
    def is_empty(self) -> bool:
        return self.payload is None


EMPTY = Ideal(None)


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple = ()
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise FamilyError(f"side must be 'left' or 'right', not {self.side!r}")

    def param(self, name, default=None):
        return dict(self.params).get(name, default)

    def with_side(self, side: str) -> "FamilySpec":
        return FamilySpec(self.tag, self.params, side)

    def to_json(self) -> dict:
        return {"family": self.tag, "params": _thaw(dict(self.params)), "side": self.side}


def _thaw(x):
    if isinstance(x, dict):
        return {k: _thaw(v) for k, v in x.items()}
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    return x


def freeze(x):
    if isinstance(x, dict):
        return tuple(sorted((k, freeze(v)) for k, v in x.items()))
    if isinstance(x, list):
        return tuple(freeze(v) for v in x)
    return x


@dataclass
class SampleReport:
    """A sampled check: never a proof unless ``proved`` is set by a closed-form rule."""

    name: str
    holds: bool
    samples: int
    proved: bool = False
    detail: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.holds:
            return "fails"
        return "proved" if self.proved else "witnessed"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "samples": self.samples, **self.detail}


@dataclass
class ToeplitzVerdict:
    holds_by: str
    checks: list[SampleReport]
    detail: str = ""

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def status(self) -> str:
        if not self.holds:
            return "fails"
        return "proved" if all(c.proved for c in self.checks) else "witnessed"

    def to_json(self) -> dict:
        return {
            "holds_by": self.holds_by,
            "status": self.status,
            "detail": self.detail,
            "checks": [c.to_json() for c in self.checks],
        }


class Family:
    """Base class; subclasses implement the family-specific arithmetic."""

    tag = "?"
    sides = ("left", "right")
    # Every constructible ideal is principal (pP on the left, Pp on the right),
    # so independence follows from the principal rule.
    all_principal = True
    has_region_oracle = True

    def __init__(self, spec: FamilySpec):
        if spec.side not in self.sides:
            raise UnsupportedSide(f"{spec.tag} does not support side={spec.side}")
        self.spec = spec
        self.side = spec.side

    # -- semigroup ------------------------------------------------------
    def one(self):
        raise NotImplementedError

    def mul(self, p, q):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def default_generators(self) -> list:
        raise NotImplementedError

    def parse_element(self, data):
        raise NotImplementedError

    def element_to_json(self, p):
        return p

    # -- ideals -----------------------------------------------------------
    def top(self) -> Ideal:
        raise NotImplementedError

    def translate(self, p, x: Ideal) -> Ideal:
        raise NotImplementedError

    def preimage(self, p, x: Ideal) -> Ideal:
        raise NotImplementedError

    def intersect(self, x: Ideal, y: Ideal) -> Ideal:
        raise NotImplementedError

    def member(self, s, x: Ideal) -> bool:
        raise NotImplementedError

    def ideal_to_json(self, x: Ideal):
        raise NotImplementedError

    def sort_key(self, x: Ideal):
        return repr(x.payload)

    def principal(self, p) -> Ideal:
        """pP on the left side, Pp on the right side."""
        return self.translate(p, self.top())

    def random_ideal(self, rng: random.Random, depth: int = 3) -> Ideal:
        x = self.top()
        for _ in range(rng.randint(0, depth)):
            p = self.random_element(rng)
            x = self.translate(p, x) if rng.random() < 0.6 else self.preimage(p, x)
        return x

    def region_witnesses(self, ideals: Sequence[Ideal]) -> Iterable:
        """Finite set of elements meeting every nonempty Venn region of ``ideals``."""
        raise FamilyError(f"{self.tag} has no region oracle")

    # -- enveloping group -------------------------------------------------
    def to_group(self, p):
        raise NotImplementedError

    def from_group(self, g):
        """The semigroup element equal to g, or None when g is not in P."""
        raise NotImplementedError

    def group_mul(self, g, h):
        raise NotImplementedError

    def group_inv(self, g):
        raise NotImplementedError

    def random_group_element(self, rng: random.Random):
        raise NotImplementedError

    def group_element_to_json(self, g):
        return g

    def parse_group_element(self, data):
        raise NotImplementedError

    def embed(self, x: Ideal) -> Ideal:
        """View an ideal of P as an ideal in G (same underlying set)."""
        raise NotImplementedError

    def g_translate(self, g, x: Ideal) -> Ideal:
        """g.X for the left side; X.g for the right side."""
        raise NotImplementedError

    def g_member(self, g, x: Ideal) -> bool:
        raise NotImplementedError

    def group_ideal_to_json(self, x: Ideal):
        return self.ideal_to_json(x)

    def group_witness(self, x: Ideal):
        """Some g with g.P = X (left side) or P.g = X (right side), X in G."""
        raise NotImplementedError

    def stabilizer_generators(self) -> list:
        """Generators (possibly a finite sample of them) of the stabilizer of P in G."""
        return []

    # -- verdicts ---------------------------------------------------------
    def toeplitz_verdict(self, rng: random.Random, samples: int = 200) -> ToeplitzVerdict:
        raise NotImplementedError

    # -- oracles built from the group structure -----------------------------
    def act(self, p, s):
        """The semigroup product used by translate: p*s (left) or s*p (right)."""
        return self.mul(p, s) if self.side == "left" else self.mul(s, p)

    def member_of_translate_oracle(self, p, x: Ideal, s) -> bool:
        """s in pX (or Xp), decided in G: s = p*y forces y = p^{-1} s."""
        gp, gs = self.to_group(p), self.to_group(s)
        gy = self.group_mul(self.group_inv(gp), gs) if self.side == "left" \
            else self.group_mul(gs, self.group_inv(gp))
        y = self.from_group(gy)
        return y is not None and self.member(y, x)

    def member_of_preimage_oracle(self, p, x: Ideal, s) -> bool:
        return self.member(self.act(p, s), x)


def constructible_closure(family: Family, generators: Sequence, budget: int):
    """Close {P, empty} under translate/preimage by ``generators`` and intersection.

    Returns (ideals, certificate) where certificate is "Closed" when a full
    pass over every (generator, operation, ideal) triple and every pairwise
    intersection produced nothing new, and "Truncated" when ``budget``
    operation applications ran out first.
    """
    if budget <= 0:
        raise FamilyError("closure budget must be positive")
    if not generators:
        raise FamilyError("closure needs at least one generator")
    found: dict[Ideal, None] = {EMPTY: None, family.top(): None}
    queue = deque([family.top()])
    steps = 0

    def add(x):
        if x not in found:
            found[x] = None
            queue.append(x)

    while True:
        while queue:
            x = queue.popleft()
            if x.is_empty:
                continue
            for p in generators:
                for op in (family.translate, family.preimage):
                    if steps >= budget:
                        return list(found), "Truncated"
                    steps += 1
                    add(op(p, x))
            for y in list(found):
                if steps >= budget:
                    return list(found), "Truncated"
                steps += 1
                add(family.intersect(x, y))
        # idle pass: confirm nothing new appears anywhere
        before = len(found)
        snapshot = list(found)
        for x in snapshot:
            for p in generators:
                add(family.translate(p, x))
                add(family.preimage(p, x))
            for y in snapshot:
                add(family.intersect(x, y))
        if len(found) == before:
            return list(found), "Closed"


def intersection_closed(family: Family, ideals: Iterable[Ideal]) -> list[Ideal]:
    """Close a finite set of ideals under intersection; drops the empty ideal."""
    out = list(dict.fromkeys(x for x in ideals if not x.is_empty))
    seen = set(out)
    i = 0
    while i < len(out):
        for j in range(i):
            z = family.intersect(out[i], out[j])
            if not z.is_empty and z not in seen:
                seen.add(z)
                out.append(z)
        i += 1
    return sorted(out, key=family.sort_key)

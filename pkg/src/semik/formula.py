"""K-theory formulas: one term K_*(C*_r(G_X)) per orbit of nonempty ideals.

Terms are resolved through a K-table of stabilizer descriptors; anything the
table does not know stays symbolic.  Hypotheses are recorded in an
assumptions ledger and a failed independence check refuses the formula.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .abelian import FgAbelianGroup, GradedKPair, ZERO_GROUP, direct_sum_pairs, pairs_isomorphic
from .ideals import (CantorShift, FamilySpec, FiniteSets,
                     constructible_closure, intersection_closed, make_family)
from .lattice import IndependenceVerdict, PrincipalRule, is_independent
from .orbits import OrbitDecomposition, StabilizerDescriptor, orbit_decompose
from .projections import from_finite_sets, from_ideal_family

DEFAULT_SEED = 20240517


class HypothesisRefused(Exception):
    """A hypothesis of the formula failed; carries the witness."""

    def __init__(self, name: str, witness: dict, message: str = ""):
        super().__init__(message or f"hypothesis {name} fails")
        self.name = name
        self.witness = witness


@dataclass(frozen=True)
class Resolved:
    pair: GradedKPair
    source: str

    def to_json(self):
        return {"k0": self.pair.k0.to_json(), "k1": self.pair.k1.to_json(), "source": self.source}


@dataclass(frozen=True)
class Symbolic:
    descriptor: StabilizerDescriptor
    text: str

    def to_json(self):
        return {"symbolic": self.text, "descriptor": self.descriptor.to_json()}


def _free_pair(r0: int, r1: int) -> GradedKPair:
    return GradedKPair(FgAbelianGroup.free(r0), FgAbelianGroup.free(r1))


class KTable:
    """Stabilizer descriptor -> K_*(C*_r(G_X)), every entry with a source note."""

    def __init__(self):
        self.entries: dict[StabilizerDescriptor, tuple[GradedKPair, str]] = {}

    def add(self, d: StabilizerDescriptor, pair: GradedKPair, source: str):
        if not source or not source.strip():
            raise ValueError("K-table entries need a source note")
        self.entries[d] = (pair, f"user-config: {source}")

    @classmethod
    def from_json(cls, doc) -> "KTable":
        """[{"stabilizer": {...descriptor json...}, "k0": {...}, "k1": {...}, "source": "..."}]"""
        table = cls()
        for item in doc:
            d = descriptor_from_json(item["stabilizer"])
            pair = GradedKPair(_group_from_json(item["k0"]), _group_from_json(item["k1"]))
            table.add(d, pair, item.get("source", ""))
        return table

    def shipped(self, d: StabilizerDescriptor) -> GradedKPair | None:
        if d.tag == "Trivial":
            return _free_pair(1, 0)
        if d.tag == "FiniteCyclic":
            return _free_pair(d.params[0], 0)
        if d.tag == "FiniteAbelian":
            size = 1
            for f in d.params[0]:
                size *= f
            return _free_pair(size, 0)
        if d.tag == "FreeAbelian":
            half = 2 ** (d.params[0] - 1)
            return _free_pair(half, half)
        if d.tag == "TensorTower" and d.params[2] is not None:
            # C*(Gamma^t) is a sum of (#conjugacy classes)^t matrix algebras
            return _free_pair(d.params[1] ** d.params[2], 0)
        return None

    def lookup(self, d: StabilizerDescriptor) -> Resolved | Symbolic:
        if d in self.entries:
            pair, source = self.entries[d]
            return Resolved(pair, source)
        pair = self.shipped(d)
        if pair is not None:
            return Resolved(pair, "shipped-default")
        return Symbolic(d, f"K_*(C*_r({d}))")


def k_of_descriptor(table: KTable, d: StabilizerDescriptor) -> Resolved | Symbolic:
    return table.lookup(d)


def _group_from_json(doc) -> FgAbelianGroup:
    return FgAbelianGroup.from_orders(int(doc.get("rank", 0)), doc.get("factors", []))


def descriptor_from_json(doc) -> StabilizerDescriptor:
    tag = doc["tag"]
    if tag in ("FreeAbelian", "FiniteCyclic"):
        return StabilizerDescriptor(tag, (int(doc["n"]),))
    if tag == "FiniteAbelian":
        return StabilizerDescriptor(tag, (tuple(int(x) for x in doc["factors"]),))
    if tag == "TensorTower":
        return StabilizerDescriptor(tag, (int(doc["group_order"]), int(doc["conjugacy_classes"]),
                                          doc.get("truncation")))
    if tag == "CatalogGroup":
        return StabilizerDescriptor(tag, (doc["name"], tuple(doc.get("parameters", []))))
    return StabilizerDescriptor(tag)


@dataclass(frozen=True)
class Assumption:
    name: str
    status: str
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.detail)
        return out


@dataclass(frozen=True)
class FormulaTerm:
    rep_json: dict
    stabilizer: StabilizerDescriptor
    value: Resolved | Symbolic

    def to_json(self):
        out = {"rep": self.rep_json, "stabilizer": self.stabilizer.to_json()}
        if isinstance(self.value, Resolved):
            out["k"] = {"k0": self.value.pair.k0.to_json(), "k1": self.value.pair.k1.to_json()}
            out["source"] = self.value.source
        else:
            out["symbolic"] = self.value.text
        return out


@dataclass(frozen=True)
class KFormula:
    family: dict
    side: str
    assumptions: tuple[Assumption, ...]
    terms: tuple[FormulaTerm, ...]
    total: GradedKPair
    partial: bool
    route: str = ""

    @property
    def symbolic(self) -> tuple[StabilizerDescriptor, ...]:
        return tuple(t.stabilizer for t in self.terms if isinstance(t.value, Symbolic))

    def recomputed_total(self) -> GradedKPair:
        return direct_sum_pairs(t.value.pair for t in self.terms if isinstance(t.value, Resolved))

    def to_json(self):
        return {
            "family": self.family,
            "side": self.side,
            "assumptions": [a.to_json() for a in self.assumptions],
            "orbits": [t.to_json() for t in self.terms],
            "total": {"k0": self.total.k0.to_json(), "k1": self.total.k1.to_json()},
            "symbolic_remainder": [f"K_*(C*_r({d}))" for d in self.symbolic],
            "partial": self.partial,
            "route": self.route,
        }


# -- hypotheses -------------------------------------------------------------------

@dataclass
class IndependenceCheck:
    verdict: IndependenceVerdict
    status: str
    detail: dict


def independence_check(family, window: int | None = None, budget: int = 300, cap: int = 10) -> IndependenceCheck:
    """Independence of the constructible family, plus an exact finite cross-check."""
    if isinstance(family, FiniteSets):
        v = is_independent(from_finite_sets(family))
        return IndependenceCheck(v, "proved" if v.verdict else "fails",
                                 {"rule": "exact check on the explicit finite family",
                                  "members": len(family.sets)})
    if isinstance(family, CantorShift):
        w = family.window if window is None else window
        # the cross-check window is capped: 2^w sets over 2^w sign patterns
        ideals = [x for x in family.window_family() if all(n < min(w, 6) for n in x.payload)]
        proj = from_ideal_family(family, ideals)
        v = is_independent(proj)
        return IndependenceCheck(v, "proved" if v.verdict else "fails",
                                 {"rule": "V_F is a union of V_{F_i} only if F = F_i for some i",
                                  "cross_check_members": len(proj), "cross_check": v.verdict})
    ideals, cert = constructible_closure(family, family.default_generators(), budget)
    members = sorted((x for x in ideals if not x.is_empty), key=family.sort_key)[:cap]
    members = intersection_closed(family, members)
    detail = {"rule": "every constructible ideal is principal", "closure": cert}
    if family.has_region_oracle:
        sub = from_ideal_family(family, members)
        cross = is_independent(sub)
        detail.update(cross_check_members=len(sub), cross_check=cross.verdict)
        if not cross.verdict:
            return IndependenceCheck(cross, "fails", detail)
    else:
        detail.update(cross_check_members=len(members), cross_check="principal-rule only")
    verdict = is_independent(PrincipalRule(len(members)))
    return IndependenceCheck(verdict, "proved", detail)


def bc_assumption(bc_asserted: bool) -> Assumption:
    return Assumption("baum-connes", "user-asserted" if bc_asserted else "not-asserted",
                      detail={"note": "recorded as given, never verified"})


def k_formula(spec: FamilySpec, decomposition: OrbitDecomposition, table: KTable,
              bc_asserted: bool, toeplitz, independence: IndependenceCheck,
              coefficients: str = "C") -> KFormula:
    assumptions = [
        Assumption("toeplitz", toeplitz.status, detail={"holds_by": toeplitz.holds_by,
                                                        "checks": [c.to_json() for c in toeplitz.checks]}),
        Assumption("independence", independence.status,
                   witness=independence.verdict.witness, detail=independence.detail),
        bc_assumption(bc_asserted),
    ]
    if not independence.verdict.verdict:
        raise HypothesisRefused("independence", independence.verdict.witness or {},
                                "the constructible family is not independent")
    if not toeplitz.holds:
        bad = next(c for c in toeplitz.checks if not c.holds)
        raise HypothesisRefused("toeplitz", bad.to_json(), "Toeplitz check failed")
    terms = []
    for t in decomposition.terms:
        if coefficients != "C":
            value = Symbolic(t.stabilizer, f"K_*({coefficients} x|_r {t.stabilizer})")
        else:
            value = table.lookup(t.stabilizer)
        terms.append(FormulaTerm(t.rep_json, t.stabilizer, value))
    total = direct_sum_pairs(v.value.pair for v in terms if isinstance(v.value, Resolved))
    route = toeplitz.holds_by
    return KFormula(spec.to_json(), spec.side, tuple(assumptions), tuple(terms), total,
                    not decomposition.complete, route)


def run_pipeline(spec: FamilySpec, window: int | None = None, table: KTable | None = None,
                 bc_asserted: bool = False, seed: int = DEFAULT_SEED, samples: int = 200,
                 coefficients: str = "C") -> KFormula:
    family = make_family(spec)
    rng = random.Random(seed)
    toeplitz = family.toeplitz_verdict(rng, samples)
    independence = independence_check(family, window)
    decomposition = orbit_decompose(family, window)
    return k_formula(spec, decomposition, table or KTable(), bc_asserted, toeplitz, independence,
                     coefficients)


@dataclass(frozen=True)
class Comparison:
    resolved_isomorphic: bool
    symbolic_matched: bool

    @property
    def equal(self) -> bool:
        return self.resolved_isomorphic and self.symbolic_matched

    def to_json(self):
        return {"resolved_isomorphic": self.resolved_isomorphic,
                "symbolic_matched": self.symbolic_matched, "equal": self.equal}


def compare_formulas(a: KFormula | GradedKPair, b: KFormula | GradedKPair) -> Comparison:
    def parts(f):
        if isinstance(f, GradedKPair):
            return f, ()
        return f.total, f.symbolic
    (ta, sa), (tb, sb) = parts(a), parts(b)
    return Comparison(pairs_isomorphic(ta, tb), sorted(sa, key=repr) == sorted(sb, key=repr))


def equal_k_left_right(spec: FamilySpec, window: int | None = None, **kwargs) -> dict:
    fam_left = spec.with_side("left")
    fam_right = spec.with_side("right")
    left = run_pipeline(fam_left, window, **kwargs)
    right = run_pipeline(fam_right, window, **kwargs)
    return {"left": left, "right": right, "comparison": compare_formulas(left, right)}


K_OF_C = GradedKPair(FgAbelianGroup.free(1), ZERO_GROUP)

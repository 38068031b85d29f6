"""An explicit finite family of finite sets with the trivial group acting.

This is not one of the semigroup families; it lets the formula pipeline run
on a hand-written set family, mostly to exercise the independence check.
"""

from __future__ import annotations

from .base import FamilyError, SampleReport, ToeplitzVerdict, UnsupportedSide


class FiniteSets:
    tag = "FiniteSets"

    def __init__(self, spec):
        if spec.side != "left":
            raise UnsupportedSide("FiniteSets only has the left side")
        self.spec = spec
        self.side = spec.side
        sets = spec.param("sets")
        if not sets:
            raise FamilyError("FiniteSets needs a nonempty list 'sets'")
        self.sets = [tuple(sorted({str(x) for x in s})) for s in sets]
        if any(not s for s in self.sets):
            raise FamilyError("FiniteSets members must be nonempty")
        names = spec.param("names")
        self.names = [str(n) for n in names] if names else ["{" + ",".join(s) + "}" for s in self.sets]
        if len(self.names) != len(self.sets):
            raise FamilyError("one name per set")

    def ideal_to_json(self, i):
        return {"kind": "set", "name": self.names[i], "elements": list(self.sets[i])}

    def toeplitz_verdict(self, rng, samples=0):
        check = SampleReport("trivial-group", True, 0, proved=True,
                             detail={"rule": "the trivial group fixes every member"})
        return ToeplitzVerdict("NotApplicable", [check], "explicit set family, trivial group")

"""Exact integer matrices and finitely generated abelian groups.

Everything here works on Python ints, so intermediate growth during Smith
reduction never overflows.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __pow__(self, n: int) -> "IntMatrix":
        if not self.is_square or n < 0:
            raise ValueError("matrix power needs a square matrix and n >= 0")
        result, base = IntMatrix.identity(self.rows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def _same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse_over_z(self) -> "IntMatrix | None":
        """Integer inverse, or None when the matrix is not unimodular."""
        if not self.is_square:
            return None
        n = self.rows
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.to_rows())]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return None
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        inv = [row[n:] for row in a]
        if any(x.denominator != 1 for row in inv for x in row):
            return None
        return IntMatrix.from_rows([[int(x) for x in row] for row in inv], n)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()})"


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (s, u, v) with u @ m @ v == s, u and v unimodular.

    s is diagonal with nonnegative entries d1 | d2 | ... and zeros trailing.
    Pivots are chosen as the smallest nonzero absolute value in the active
    block, ties broken by row-major position, so u and v are reproducible.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(a[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                return _finish(a, u, v, rows, cols)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return _finish(a, u, v, rows, cols)


def _finish(a, u, v, rows, cols):
    return (
        IntMatrix.from_rows(a, cols),
        IntMatrix.from_rows(u, rows),
        IntMatrix.from_rows(v, cols),
    )


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Column-style HNF of a square nonsingular matrix.

    The result h = m @ w for some w in GL_n(Z); h is lower triangular with
    positive diagonal and each entry left of a pivot reduced into
    [0, pivot).  Two matrices generate the same right ideal m*M_n(Z) exactly
    when their HNFs agree.
    """
    if not m.is_square:
        raise ValueError("hermite_normal_form expects a square matrix")
    n = m.rows
    a = m.to_rows()
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] == 0:
                continue
            g, x, y = _ext_gcd(a[i][i], a[i][j])
            p, q = a[i][i] // g, a[i][j] // g
            for r in a:
                ci, cj = r[i], r[j]
                r[i], r[j] = x * ci + y * cj, -q * ci + p * cj
        if a[i][i] == 0:
            raise ValueError("hermite_normal_form: matrix is singular")
        if a[i][i] < 0:
            for r in a:
                r[i] = -r[i]
        piv = a[i][i]
        for j in range(i):
            k = a[i][j] // piv
            if k:
                for r in a:
                    r[j] -= k * r[i]
    return IntMatrix.from_rows(a, n)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dt with d1 | d2 | ... and every di >= 2."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        ds = self.invariant_factors
        if any(d < 2 for d in ds):
            raise ValueError(f"invariant factors must be >= 2: {ds}")
        if any(ds[i + 1] % ds[i] for i in range(len(ds) - 1)):
            raise ValueError(f"invariant factors must form a divisor chain: {ds}")

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "FgAbelianGroup":
        """Normalize Z^r + sum Z/n_i (arbitrary n_i, zeros count as free)."""
        orders = [abs(n) for n in orders]
        free_rank += sum(1 for n in orders if n == 0)
        return cls(free_rank, _invariant_chain(n for n in orders if n > 1))

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank, ())

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "factors": list(self.invariant_factors)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def _invariant_chain(orders: Iterable[int]) -> tuple[int, ...]:
    orders = list(orders)
    if not orders:
        return ()
    s, _, _ = smith_normal_form(IntMatrix.diag(orders))
    return tuple(d for d in (s[i, i] for i in range(s.rows)) if d > 1)


@dataclass(frozen=True)
class GradedKPair:
    k0: FgAbelianGroup
    k1: FgAbelianGroup

    def to_json(self) -> dict:
        return {"k0": self.k0.to_json(), "k1": self.k1.to_json()}

    def __str__(self) -> str:
        return f"({self.k0}, {self.k1})"


ZERO_GROUP = FgAbelianGroup()


def cokernel(m: IntMatrix) -> FgAbelianGroup:
    """Z^rows / column span of m, in invariant-factor form."""
    s, _, _ = smith_normal_form(m)
    diag = [s[i, i] for i in range(min(s.rows, s.cols))]
    nonzero = [d for d in diag if d]
    return FgAbelianGroup(m.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def direct_sum(a: FgAbelianGroup, b: FgAbelianGroup) -> FgAbelianGroup:
    return FgAbelianGroup.from_orders(
        a.free_rank + b.free_rank, a.invariant_factors + b.invariant_factors
    )


def direct_sum_pairs(pairs: Iterable[GradedKPair]) -> GradedKPair:
    k0 = k1 = ZERO_GROUP
    for p in pairs:
        k0, k1 = direct_sum(k0, p.k0), direct_sum(k1, p.k1)
    return GradedKPair(k0, k1)


def is_isomorphic(a: FgAbelianGroup, b: FgAbelianGroup) -> bool:
    return a.free_rank == b.free_rank and a.invariant_factors == b.invariant_factors


def pairs_isomorphic(a: GradedKPair, b: GradedKPair) -> bool:
    return is_isomorphic(a.k0, b.k0) and is_isomorphic(a.k1, b.k1)


def lcm(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    return a // gcd(a, b) * b if a and b else 0

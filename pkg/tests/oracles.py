"""Brute-force reference computations used by the tests.

Nothing here calls the library's algorithms; these are the slow, obvious
routes that the fast code is compared against.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def frac_det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n, det = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def frac_inverse(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def in_right_ideal(p_rows, y_rows):
    """y in p M_2(Z): p^{-1} y has integer entries."""
    inv = frac_inverse(p_rows)
    return all(x.denominator == 1 for r in matmul(inv, y_rows) for x in r)


def determinantal_divisors(rows):
    """Invariant factors d_k / d_{k-1} from gcds of k x k minors."""
    m, n = len(rows), len(rows[0]) if rows else 0
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, frac_det([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        ds.append(g)
    return [ds[i] // ds[i - 1] for i in range(1, len(ds))]


def rank_q(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(len(a[0]) if a else 0):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][c] / a[rank][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def is_union_of_others(sets, i):
    """Definition check: sets[i] equals the union of some nonempty subset of the others."""
    others = [s for j, s in enumerate(sets) if j != i]
    for r in range(1, len(others) + 1):
        for combo in combinations(others, r):
            if frozenset().union(*combo) == sets[i]:
                return True
    return False


def group_order_by_enumeration(moduli):
    """Element orders in Z/m1 x ... x Z/mk; returns the group exponent and size."""
    from itertools import product
    from math import lcm

    size, exponent = 1, 1
    for m in moduli:
        size *= m
    for x in product(*(range(m) for m in moduli)):
        order = 1
        for xi, m in zip(x, moduli):
            order = lcm(order, m // gcd(xi, m))
        exponent = lcm(exponent, order)
    return exponent, size


def boolean_ring(members):
    """All sets reachable from members by intersection, union and difference."""
    ring = set(members)
    changed = True
    while changed:
        changed = False
        for a in list(ring):
            for b in list(ring):
                for c in (a & b, a | b, a & ~b):
                    if c and c not in ring:
                        ring.add(c)
                        changed = True
    return ring


def equivariant(rows, src_gens, tgt_gens):
    return all(rows[gt[i]][gs[j]] == rows[i][j]
               for gs, gt in zip(src_gens, tgt_gens)
               for i in range(len(rows)) for j in range(len(rows[0])))

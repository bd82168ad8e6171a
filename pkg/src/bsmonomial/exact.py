"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
matrices are sequences of rows.  Nothing in the package touches floating
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def lcm_of_denominators(v: Sequence) -> int:
    """Smallest positive integer m such that m * v is integral."""
    if len(v) == 0:
        raise ValueError("empty vector")
    return math.lcm(*(Fraction(x).denominator for x in v))


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = math.gcd(*v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hermite_normal_form(M: Sequence[Sequence[int]]):
    """Column Hermite normal form.

    Returns ``(H, U)`` with ``H = M U``, ``U`` unimodular.  ``H`` is in
    column echelon form: the pivot of column ``j`` sits in a row strictly
    below the pivot of column ``j - 1``, pivots are positive, entries above a
    pivot are zero and entries to the left of a pivot lie in ``[0, pivot)``.
    Dependent columns end up as trailing zero columns.

    Pivoting is deterministic: rows are processed top to bottom and within a
    row the column with the smallest nonzero absolute value (lowest index on
    ties) becomes the pivot.
    """
    H = [list(map(int, row)) for row in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = _identity(n)

    def swap(a, b):
        if a == b:
            return
        for row in H:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    def addmul(dst, src, q):
        # column dst -= q * column src
        for row in H:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    def negate(col):
        for row in H:
            row[col] = -row[col]
        for row in U:
            row[col] = -row[col]

    pc = 0
    for i in range(m):
        if pc == n:
            break
        while True:
            nz = [j for j in range(pc, n) if H[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: (abs(H[i][j]), j))
            swap(jmin, pc)
            if len(nz) == 1:
                break
            p = H[i][pc]
            for j in range(pc + 1, n):
                if H[i][j] != 0:
                    addmul(j, pc, H[i][j] // p)
        if H[i][pc] == 0:
            continue
        if H[i][pc] < 0:
            negate(pc)
        p = H[i][pc]
        for j in range(pc):
            q = H[i][j] // p
            if q:
                addmul(j, pc, q)
        pc += 1

    return tuple(map(tuple, H)), tuple(map(tuple, U))


@dataclass(frozen=True)
class IntegerLattice:
    """Sublattice of Z^n given by an HNF basis (stored as column vectors)."""

    n: int
    basis: tuple[IntVector, ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @classmethod
    def from_generators(cls, n: int, generators: Sequence[Sequence[int]]) -> "IntegerLattice":
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} is not of length {n}")
        if not gens:
            return cls(n, (), ())
        rows = [[g[i] for g in gens] for i in range(n)]
        H, _ = hermite_normal_form(rows)
        basis, pivots = [], []
        for j in range(len(gens)):
            col = tuple(H[i][j] for i in range(n))
            if any(col):
                basis.append(col)
                pivots.append(next(i for i, x in enumerate(col) if x))
        return cls(n, tuple(basis), tuple(pivots))

    def __contains__(self, v) -> bool:
        return lattice_contains(self, v)


def lattice_contains(L: IntegerLattice, v: Sequence[int]) -> bool:
    if len(v) != L.n:
        raise ValueError(f"vector of length {len(v)} vs lattice in Z^{L.n}")
    r = list(v)
    for b, p in zip(L.basis, L.pivots):
        if r[p] % b[p]:
            return False
        t = r[p] // b[p]
        if t:
            for i in range(p, L.n):
                r[i] -= t * b[i]
    return not any(r)


def coset_has_point_below(
    lattice: IntegerLattice,
    offset: Sequence[int],
    weights: Sequence[Fraction],
    upper: Sequence[int],
) -> bool:
    """Is there ``g`` in ``offset + lattice`` with ``g <= upper`` componentwise?

    ``weights`` must be strictly positive and vanish on the lattice, so every
    point of the coset has the same weighted sum ``h = weights . offset``.
    Together with ``g <= upper`` that pins each coordinate from below, and the
    search over the echelon basis is finite and exact.
    """
    n = lattice.n
    h = dot(weights, offset)
    total = dot(weights, upper)
    lower = []
    for i in range(n):
        # weights[i] * g_i >= h - sum_{l != i} weights[l] * upper[l]
        lo = (h - (total - weights[i] * upper[i])) / weights[i]
        lo = math.ceil(lo)
        if lo > upper[i]:
            return False
        lower.append(lo)

    basis, pivots = lattice.basis, lattice.pivots
    d = len(basis)

    def settled_ok(g, start, stop):
        return all(lower[c] <= g[c] <= upper[c] for c in range(start, stop))

    def search(idx, g):
        p = pivots[idx] if idx < d else n
        prev = pivots[idx - 1] + 1 if idx > 0 else 0
        if not settled_ok(g, prev, p):
            return False
        if idx == d:
            return True
        b = basis[idx]
        piv = b[p]
        tmin = -((g[p] - lower[p]) // piv)   # ceil((lower - g) / piv)
        tmax = (upper[p] - g[p]) // piv
        for t in range(tmin, tmax + 1):
            ng = list(g)
            for i in range(p, n):
                ng[i] += t * b[i]
            if search(idx + 1, ng):
                return True
        return False

    return search(0, list(offset))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = next((i for i in range(r, m) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def span_basis(vectors: Sequence[Sequence]) -> tuple[IntVector, ...]:
    """Primitive integer basis (RREF rows, denominators cleared) of the span."""
    R, _ = rref(vectors)
    out = []
    for row in R:
        m = lcm_of_denominators(row)
        out.append(primitive([int(x * m) for x in row]))
    return tuple(out)


def solve_exact(A: Sequence[Sequence], b: Sequence) -> Optional[RationalVector]:
    """One exact solution of ``A x = b``, or ``None`` if the system is inconsistent.

    Rows are scaled to integers and eliminated fraction-free (cross
    multiplication, then division by the row content), pivoting on the first
    nonzero entry in the lowest available row.  Free variables are set to 0.
    """
    m = len(A)
    if m != len(b):
        raise ValueError("row count of A does not match length of b")
    n = len(A[0]) if m else 0
    rows = []
    for row, rhs in zip(A, b):
        vals = [Fraction(x) for x in row] + [Fraction(rhs)]
        s = lcm_of_denominators(vals)
        rows.append([int(x * s) for x in vals])

    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        for i in range(r + 1, m):
            f = rows[i][c]
            if f:
                new = [p * x - f * y for x, y in zip(rows[i], rows[r])]
                g = math.gcd(*new)
                rows[i] = [x // g for x in new] if g > 1 else new
        pivots.append(c)
        r += 1
        if r == m:
            break

    if any(row[n] != 0 and not any(row[:n]) for row in rows):
        return None

    x = [Fraction(0)] * n
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        s = Fraction(rows[i][n]) - sum(rows[i][j] * x[j] for j in range(c + 1, n))
        x[c] = s / rows[i][c]
    return tuple(x)

"""Level membership ``u in k*v0 + M_Q`` for bounded faces.

For a bounded face ``Q`` the level-``k`` set is the set of ``u`` for which
some integer vector ``c`` (one entry per generator) satisfies

* ``sum(c) == k``,
* ``c_j >= 0`` for every generator off the face (on-face entries are free),
* ``u - e - sum_j c_j v_j >= 0`` componentwise, ``e = (1, ..., 1)``.

:func:`in_level` decides this exactly.  Off-face coefficients are bounded by
degree accounting with the supporting linear form ``L``: every off-face
generator raises ``L`` by ``L(v_j) - 1 > 0`` while the budget
``L(u) - L(e) - k`` is fixed.  What remains is whether the coset
``K*v0 + G`` (``G`` the difference lattice of the face) has a point below the
residual, which :func:`~bsmonomial.exact.coset_has_point_below` settles by a
finite echelon search.  :func:`brute_force_in_level` is the independent
check: plain enumeration of coefficient boxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .exact import IntVector, coset_has_point_below, dot
from .newton import ContractError, FaceData

DEFAULT_CAP = 20
AUDIT_ROUNDS = 4
# boxes with more free coefficient vectors than this are searched in slices
CHUNK_ROWS = 1 << 18


class CapUnstableError(RuntimeError):
    """Bounded coefficient search did not settle on the exact verdict."""


@dataclass(frozen=True)
class MembershipQuery:
    face_data: FaceData
    u: IntVector
    k: int

    def __post_init__(self):
        fd = self.face_data
        if not fd.face.bounded:
            raise ContractError(f"face {fd.face.id} is unbounded")
        if fd.face.in_coordinate_hyperplane:
            raise ContractError(f"face {fd.face.id} lies in a coordinate hyperplane")
        if len(self.u) != fd.n:
            raise ValueError(f"u has {len(self.u)} entries, expected {fd.n}")
        if self.k < 0:
            raise ValueError("level must be nonnegative")
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))


def _exact(fd: FaceData, u: IntVector, k: int) -> bool:
    form = fd.linear_form
    budget = fd.level(u) - sum(form) - k
    if budget < 0:
        return False
    off = fd.off_face
    excess = [dot(form, v) - 1 for v in off]
    base = fd.base_point
    lattice = fd.difference_lattice
    failed = set()

    def rec(j, residual, K, budget):
        key = (j, residual, K)
        if key in failed:
            return False
        if j == len(off):
            offset = tuple(K * x for x in base)
            ok = coset_has_point_below(lattice, offset, form, residual)
        else:
            v, cost = off[j], excess[j]
            ok = False
            top = math.floor(budget / cost)
            for c in range(top + 1):
                res = tuple(r - c * x for r, x in zip(residual, v))
                if rec(j + 1, res, K - c, budget - c * cost):
                    ok = True
                    break
        if not ok:
            failed.add(key)
        return ok

    return rec(0, tuple(x - 1 for x in u), k, budget)


@lru_cache(maxsize=16)
def _coefficient_grid(ranges: tuple[tuple[int, int], ...]) -> np.ndarray:
    """All integer vectors in a box, one per row."""
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in ranges]
    if not axes:
        return np.zeros((1, 0), dtype=np.int64)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _box_search(fd: FaceData, u, k, ranges_on, ranges_off) -> bool:
    """Enumerate c with the given per-generator ranges and sum(c) == k."""
    gens = list(fd.off_face) + list(fd.on_face)
    V = np.array(gens, dtype=np.int64)
    target = np.array(u, dtype=np.int64) - 1
    ranges = list(ranges_off) + list(ranges_on)
    if len(ranges) == 1:
        lo, hi = ranges[0]
        return lo <= k <= hi and bool((k * V[0] <= target).all())
    return _search_slices(V, target, k, ranges)


def _search_slices(V, target, k, ranges) -> bool:
    """Box search where the last two coefficients are solved for, not enumerated.

    With the other entries fixed, ``c[-1] = rest - c[-2]`` and every
    coordinate inequality is linear in ``t = c[-2]``, so each grid row
    reduces to an integer interval for ``t``.
    """
    free = ranges[:-2]
    size = math.prod(hi - lo + 1 for lo, hi in free)
    if size > CHUNK_ROWS:
        i = next(i for i, (lo, hi) in enumerate(free) if hi > lo)
        lo, hi = free[i]
        mid = (lo + hi) // 2
        return any(
            _search_slices(V, target, k, ranges[:i] + [part] + ranges[i + 1:])
            for part in ((lo, mid), (mid + 1, hi))
        )
    (t_lo, t_hi), (l_lo, l_hi) = ranges[-2], ranges[-1]
    grid = _coefficient_grid(tuple(free))
    rest = k - grid.sum(axis=1)
    # c[-1] = rest - t must lie in [l_lo, l_hi]
    lo = np.maximum(t_lo, rest - l_hi)
    hi = np.minimum(t_hi, rest - l_lo)
    # grid @ V[:-2] + rest * V[-1] + t * (V[-2] - V[-1]) <= target
    slack = target - grid @ V[:-2] - np.outer(rest, V[-1])
    d = V[-2] - V[-1]
    for i in range(V.shape[1]):
        if d[i] > 0:
            hi = np.minimum(hi, slack[:, i] // d[i])
        elif d[i] < 0:
            lo = np.maximum(lo, -(slack[:, i] // -d[i]))
        else:
            hi = np.where(slack[:, i] >= 0, hi, lo - 1)
    return bool((lo <= hi).any())


def brute_force_in_level(q: MembershipQuery, coeff_bound: int) -> bool:
    """Exhaustive search over ``|c_j| <= coeff_bound`` (off-face ``c_j >= 0``).

    A ``True`` answer always comes with a witness; ``False`` only means no
    witness exists inside the box.
    """
    fd = q.face_data
    B = int(coeff_bound)
    return _box_search(
        fd, q.u, q.k,
        [(-B, B)] * len(fd.on_face),
        [(0, B)] * len(fd.off_face),
    )


def capped_in_level(q: MembershipQuery, cap: int) -> bool:
    """Coefficient search with on-face entries in ``[-cap, cap]``.

    Off-face entries keep their exact degree bound.
    """
    fd = q.face_data
    budget = fd.level(q.u) - sum(fd.linear_form) - q.k
    if budget < 0:
        return False
    off = [(0, math.floor(budget / (dot(fd.linear_form, v) - 1))) for v in fd.off_face]
    return _box_search(fd, q.u, q.k, [(-cap, cap)] * len(fd.on_face), off)


def in_level(q: MembershipQuery, *, cap: int = DEFAULT_CAP, audit: bool = False) -> bool:
    """Decide ``q.u in M_Q^(q.k)``.

    With ``audit`` the exact verdict is cross-checked against the capped
    coefficient search, doubling the cap until two consecutive rounds agree;
    a disagreement that survives raises :class:`CapUnstableError`.
    """
    verdict = _exact(q.face_data, q.u, q.k)
    if audit:
        if cap < 1:
            raise ValueError("cap must be at least 1")
        prev = capped_in_level(q, cap)
        for _ in range(AUDIT_ROUNDS):
            cap *= 2
            cur = capped_in_level(q, cap)
            if cur == prev:
                break
            prev = cur
        else:
            raise CapUnstableError(
                f"face {q.face_data.face.id}: capped search for u={q.u}, k={q.k} "
                f"did not stabilise up to cap {cap}"
            )
        if prev != verdict:
            raise CapUnstableError(
                f"face {q.face_data.face.id}: capped search gives {prev} for u={q.u}, "
                f"k={q.k} at cap {cap}, exact search gives {verdict}"
            )
    return verdict


def level_of(fd: FaceData, u: Sequence[int], k_max: int, *, cap: int = DEFAULT_CAP,
             audit: bool = False) -> Optional[int]:
    """Largest ``k <= k_max`` with ``u`` in level ``k``; ``None`` if not even in level 0.

    Levels are nested, so the scan stops at the first failure.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    best = None
    for k in range(k_max + 1):
        if not in_level(MembershipQuery(fd, tuple(u), k), cap=cap, audit=audit):
            break
        best = k
    return best


"""Roots of the Bernstein-Sato polynomial of a monomial ideal.

Bounded faces not lying in a coordinate hyperplane contribute directly:
for each candidate exponent ``u`` the membership level ``k`` is computed and
``-L(u) + k`` is a root.  Unbounded faces are handled by deleting a
coordinate along which they are invariant and recursing on the projected
ideal.  The classes of the roots modulo Z only depend on the facet
denominators, see :func:`roots_mod_z`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

from .exact import IntVector, coset_has_point_below, lcm_of_denominators, rref
from .newton import (
    ContractError,
    Face,
    FaceData,
    MonomialIdeal,
    NewtonPolyhedron,
    build_polyhedron,
    enumerate_faces,
    face_data,
    project_ideal,
)
from .semigroup import DEFAULT_CAP, CapUnstableError, level_of

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootSet:
    """Sorted (descending), duplicate-free tuple of exact roots."""

    roots: tuple[Fraction, ...] = ()

    @classmethod
    def of(cls, values: Iterable) -> "RootSet":
        return cls(tuple(sorted({Fraction(v) for v in values}, reverse=True)))

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __contains__(self, x):
        return Fraction(x) in set(self.roots)

    def __or__(self, other: "RootSet") -> "RootSet":
        return RootSet.of(self.roots + tuple(other))

    def residues(self) -> "ResidueSet":
        return ResidueSet.of(r for r in self.roots)


@dataclass(frozen=True)
class ResidueSet:
    """Classes in Q/Z, each stored by its representative in [0, 1)."""

    classes: tuple[Fraction, ...] = ()

    @classmethod
    def of(cls, values: Iterable) -> "ResidueSet":
        return cls(tuple(sorted({Fraction(v) % 1 for v in values})))

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __contains__(self, x):
        return Fraction(x) % 1 in set(self.classes)


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for the root computation.

    ``l_bound`` caps ``L(u)`` for candidate exponents; ``None`` means ``2n``
    for the ideal at hand (so it shrinks along projections).  The effective
    bound is ``l_bound + l_bound_offset``.  ``lq_weights`` and ``v0_index``
    select among equally valid supporting forms and base points.
    """

    l_bound: Optional[int] = None
    l_bound_offset: int = 0
    cap: int = DEFAULT_CAP
    audit: bool = False
    include_vertices: bool = False
    lq_weights: Optional[tuple[int, ...]] = None
    v0_index: int = 0

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        if self.l_bound is not None and self.l_bound < 1:
            raise ValueError("l_bound must be positive")

    def bound_for(self, n: int) -> int:
        base = 2 * n if self.l_bound is None else self.l_bound
        if base < n:
            raise ValueError(f"l_bound {base} is below the number of variables {n}")
        return base + self.l_bound_offset


DEFAULT_CONFIG = EngineConfig()


@dataclass(frozen=True)
class FaceContribution:
    face: Face
    linear_form: tuple[Fraction, ...]
    candidates: tuple[IntVector, ...]
    levels: dict = field(hash=False, compare=False)
    roots: RootSet = RootSet()

    @property
    def face_id(self) -> int:
        return self.face.id


@dataclass
class Analysis:
    """Full record of one :func:`analyze` run (kept for reporting)."""

    ideal: MonomialIdeal
    polyhedron: Optional[NewtonPolyhedron]
    faces: list[Face]
    contributions: list[FaceContribution]
    projections: dict[int, "Analysis"]
    roots: RootSet


def _check_face(fd: FaceData):
    if not fd.face.bounded:
        raise ContractError(f"face {fd.face.id} is unbounded")
    if fd.face.in_coordinate_hyperplane:
        raise ContractError(f"face {fd.face.id} lies in a coordinate hyperplane")


def candidates(fd: FaceData, config: EngineConfig = DEFAULT_CONFIG) -> list[IntVector]:
    """Candidate exponents of a bounded face, in lexicographic order.

    These are the positive lattice points ``u`` of the linear span of the
    face with ``L(u) <= bound`` and such that no point of ``v0 + G`` lies
    below ``u - e``.
    """
    _check_face(fd)
    n = fd.n
    bound = config.bound_for(n)
    form = fd.linear_form

    def excluded(u):
        return coset_has_point_below(
            fd.difference_lattice, fd.base_point, form, [x - 1 for x in u]
        )

    out: list[IntVector] = []
    if len(fd.span_basis) == n:
        # the excluded set is closed under adding e_i, so each loop can stop
        # at the first excluded point
        u = [1] * n

        def walk(i):
            if i == n:
                out.append(tuple(u))
                return
            v = 1
            while True:
                u[i] = v
                if fd.level(u) > bound or excluded(u):
                    break
                walk(i + 1)
                v += 1
            u[i] = 1

        walk(0)
    else:
        rows, pivots = rref(fd.span_basis)
        free = [1] * len(pivots)

        def walk(j, partial):
            if j == len(pivots):
                u = [sum(f * row[i] for f, row in zip(free, rows)) for i in range(n)]
                if any(x.denominator != 1 or x < 1 for x in u):
                    return
                u = tuple(int(x) for x in u)
                if fd.level(u) <= bound and not excluded(u):
                    out.append(u)
                return
            p = pivots[j]
            rest = sum(form[q] for q in pivots[j + 1:])
            v = 1
            while partial + form[p] * v + rest <= bound:
                free[j] = v
                walk(j + 1, partial + form[p] * v)
                v += 1
            free[j] = 1

        walk(0, Fraction(0))
    return sorted(out)


def face_roots(fd: FaceData, config: EngineConfig = DEFAULT_CONFIG) -> FaceContribution:
    """Roots contributed by one bounded face, with the level split of its candidates."""
    cands = candidates(fd, config)
    levels: dict[int, list[IntVector]] = {}
    roots = set()
    for u in cands:
        L = fd.level(u)
        k = level_of(fd, u, math.ceil(L) - 1, cap=config.cap, audit=config.audit)
        if k is None:
            continue
        root = -L + k
        assert root < 0, f"nonnegative root {root} from u={u} on face {fd.face.id}"
        levels.setdefault(k, []).append(u)
        roots.add(root)
    return FaceContribution(fd.face, fd.linear_form, tuple(cands), levels, RootSet.of(roots))


def _contributing(face: Face, n: int, config: EngineConfig) -> bool:
    if face.in_coordinate_hyperplane or not face.bounded:
        return False
    return face.dim > 0 or n == 1 or config.include_vertices


def analyze(ideal: MonomialIdeal, config: EngineConfig = DEFAULT_CONFIG, _cache=None) -> Analysis:
    """Compute all roots, keeping per-face and per-projection detail."""
    cache = {} if _cache is None else _cache
    if ideal in cache:
        return cache[ideal]
    if ideal.is_unit:
        result = Analysis(ideal, None, [], [], {}, RootSet())
        cache[ideal] = result
        return result

    P = build_polyhedron(ideal)
    faces = enumerate_faces(P)
    contributions = []
    roots: set[Fraction] = set()
    for face in faces:
        if not _contributing(face, ideal.n, config):
            continue
        fd = face_data(P, face, ideal, lq_weights=config.lq_weights, v0_index=config.v0_index)
        try:
            contrib = face_roots(fd, config)
        except CapUnstableError as exc:
            raise CapUnstableError(f"ideal {ideal.generators}: {exc}") from exc
        log.debug("face %d contributes %d roots", face.id, len(contrib.roots))
        contributions.append(contrib)
        roots.update(contrib.roots)

    projections = {}
    for i in sorted({i for face in faces for i in face.recession_dirs}):
        sub = analyze(project_ideal(ideal, i), config, cache)
        projections[i] = sub
        roots.update(sub.roots)

    result = Analysis(ideal, P, faces, contributions, projections, RootSet.of(roots))
    cache[ideal] = result
    return result


def all_roots(ideal: MonomialIdeal, config: EngineConfig = DEFAULT_CONFIG) -> RootSet:
    """Roots (without multiplicity) of the Bernstein-Sato polynomial of ``ideal``."""
    return analyze(ideal, config).roots


def bound_audit(ideal: MonomialIdeal, config: EngineConfig = DEFAULT_CONFIG):
    """Recompute with the candidate bound raised by 2; return (stable, base, raised)."""
    base = all_roots(ideal, config)
    raised = all_roots(ideal, replace(config, l_bound_offset=config.l_bound_offset + 2))
    return base == raised, base, raised


def facet_denominators(ideal: MonomialIdeal) -> list[tuple]:
    """(facet, m) for every facet not in a coordinate hyperplane."""
    if ideal.is_unit:
        return []
    P = build_polyhedron(ideal)
    out = []
    for f in P.facets:
        if f.is_coordinate:
            continue
        out.append((f, lcm_of_denominators([Fraction(a, f.offset) for a in f.normal])))
    return out


def roots_mod_z(ideal: MonomialIdeal) -> ResidueSet:
    """Union of the cyclic groups generated by 1/m over non-coordinate facets."""
    return ResidueSet.of(Fraction(j, m) for _, m in facet_denominators(ideal) for j in range(m))


def closed_form_n2_unbounded(a: int) -> RootSet:
    """Roots of a plane unbounded face ``{(a, y) : y >= b}``: ``-k/a`` for ``1 <= k <= a``."""
    if a < 1:
        raise ValueError("a must be positive")
    return RootSet.of(Fraction(-k, a) for k in range(1, a + 1))

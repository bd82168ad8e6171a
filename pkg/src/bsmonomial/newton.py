"""Newton polyhedra of monomial ideals and their faces.

The polyhedron is ``conv(generators) + R_{>=0}^n``.  Its facets are found by
the double description method applied to the cone of valid inequalities
``{(a, c) : a >= 0, a . v >= c for every generator v}``; faces are then
obtained as intersections of facets, each face recorded through its
vertices and the unit directions along which it is unbounded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (
    IntegerLattice,
    IntVector,
    RationalVector,
    dot,
    lcm_of_denominators,
    primitive,
    rank,
    span_basis,
)


class InputError(ValueError):
    """Invalid user-supplied data (bad exponents, empty ideal, ...)."""


class ContractError(ValueError):
    """An operation was called outside its domain."""


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by exponent vectors of its generators.

    Duplicates are dropped and the generators are kept in lexicographic
    order, so two ideals with the same generator set compare equal.
    """

    n: int
    generators: tuple[IntVector, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("number of variables must be at least 1")
        gens = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.n:
                raise InputError(f"generator {g} does not have {self.n} entries")
            if any(x < 0 for x in g):
                raise InputError(f"generator {g} has a negative exponent")
            gens.append(g)
        if not gens:
            raise InputError("zero ideal not allowed")
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))

    @classmethod
    def of(cls, *generators: Sequence[int]) -> "MonomialIdeal":
        if not generators:
            raise InputError("zero ideal not allowed")
        return cls(len(generators[0]), tuple(map(tuple, generators)))

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def contains_exponent(self, u: Sequence[int]) -> bool:
        return any(all(x >= y for x, y in zip(u, g)) for g in self.generators)

    def permuted(self, perm: Sequence[int]) -> "MonomialIdeal":
        """Ideal after renaming variable ``perm[i]`` to position ``i``."""
        return MonomialIdeal(self.n, tuple(tuple(g[p] for p in perm) for g in self.generators))


@dataclass(frozen=True)
class Facet:
    normal: IntVector
    offset: int

    @property
    def is_coordinate(self) -> bool:
        return self.offset == 0

    def value(self, x) -> int:
        return dot(self.normal, x)

    def __str__(self):
        terms = " + ".join(f"{a}*x{i + 1}" for i, a in enumerate(self.normal) if a)
        return f"{terms} >= {self.offset}"


@dataclass(frozen=True)
class NewtonPolyhedron:
    ideal: MonomialIdeal
    vertices: tuple[IntVector, ...]
    facets: tuple[Facet, ...]

    @property
    def n(self) -> int:
        return self.ideal.n

    @property
    def rays(self) -> tuple[IntVector, ...]:
        return tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n))

    def contains(self, x) -> bool:
        return all(f.value(x) >= f.offset for f in self.facets)


@dataclass(frozen=True)
class Face:
    """Proper nonempty face of a Newton polyhedron.

    ``recession_dirs`` holds 0-based coordinate indices ``i`` with
    ``Q + e_i`` contained in ``Q``.
    """

    id: int
    incident_facets: frozenset[int]
    vertices: tuple[IntVector, ...]
    recession_dirs: frozenset[int]
    dim: int
    in_coordinate_hyperplane: bool

    @property
    def bounded(self) -> bool:
        return not self.recession_dirs


@dataclass(frozen=True)
class FaceData:
    """Everything root extraction needs to know about one face.

    ``linear_form`` is a linear function equal to 1 on the face and > 1 on
    the rest of the polyhedron.  ``face_points``, ``base_point`` and
    ``difference_lattice`` (the lattice spanned by differences of lattice
    points of the ideal on the face) are only set for bounded faces.
    """

    face: Face
    generators: tuple[IntVector, ...]
    linear_form: RationalVector
    facet_denominator: Optional[int]
    span_basis: tuple[IntVector, ...]
    face_points: Optional[tuple[IntVector, ...]] = None
    base_point: Optional[IntVector] = None
    difference_lattice: Optional[IntegerLattice] = None
    on_face: tuple[IntVector, ...] = field(default=())
    off_face: tuple[IntVector, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.linear_form)

    def level(self, u) -> Fraction:
        """Value of the linear form at ``u``."""
        return dot(self.linear_form, u)


# -- double description ----------------------------------------------------

def _valid_inequality_rays(points: Sequence[IntVector], n: int) -> list[IntVector]:
    """Extreme rays of {(a, c) in R^{n+1} : a >= 0, a . p - c >= 0 for p in points}."""
    d = n + 1
    constraints: list[IntVector] = [tuple(int(i == j) for j in range(d)) for i in range(n)]
    first = points[0]
    constraints.append(tuple(first) + (-1,))
    rays = [tuple([0] * n + [-1])]
    for i in range(n):
        rays.append(tuple(int(i == j) for j in range(n)) + (first[i],))

    def tight(ray):
        return frozenset(k for k, h in enumerate(constraints) if dot(h, ray) == 0)

    zero_sets = {r: tight(r) for r in rays}
    for p in points[1:]:
        h = tuple(p) + (-1,)
        vals = {r: dot(h, r) for r in rays}
        pos = [r for r in rays if vals[r] > 0]
        zer = [r for r in rays if vals[r] == 0]
        neg = [r for r in rays if vals[r] < 0]
        if not neg:
            constraints.append(h)
            zero_sets = {r: tight(r) for r in rays}
            continue
        new_rays = pos + zer
        for a in pos:
            for b in neg:
                common = zero_sets[a] & zero_sets[b]
                if len(common) < d - 2:
                    continue
                if any(r is not a and r is not b and common <= zero_sets[r] for r in rays):
                    continue
                comb = tuple(vals[a] * y - vals[b] * x for x, y in zip(a, b))
                new_rays.append(primitive(comb))
        constraints.append(h)
        rays = list(dict.fromkeys(new_rays))
        zero_sets = {r: tight(r) for r in rays}
    return rays


def build_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    """H- and V-representation of the Newton polyhedron of ``ideal``."""
    n = ideal.n
    gens = list(ideal.generators)
    if not gens:
        raise InputError("zero ideal not allowed")
    facets = set()
    for ray in _valid_inequality_rays(gens, n):
        a, c = ray[:n], ray[n]
        if not any(a):
            continue
        g = math.gcd(*a)
        facets.add(Facet(tuple(x // g for x in a), c // g))
    facets = tuple(sorted(facets, key=lambda f: (f.normal, f.offset)))
    vertices = []
    for v in gens:
        normals = [f.normal for f in facets if f.value(v) == f.offset]
        if normals and rank(normals) == n:
            vertices.append(v)
    return NewtonPolyhedron(ideal, tuple(vertices), facets)


# -- faces -------------------------------------------------------------------

def _face_dim(vertices, rays, n) -> int:
    v0 = vertices[0]
    vecs = [tuple(x - y for x, y in zip(v, v0)) for v in vertices[1:]]
    vecs += [tuple(int(i == j) for j in range(n)) for i in rays]
    return rank(vecs) if vecs else 0


def enumerate_faces(P: NewtonPolyhedron) -> list[Face]:
    """All proper nonempty faces, as intersections of facets.

    Faces are sorted by decreasing dimension, then by vertex list, and their
    ``id`` is the position in that order.
    """
    n = P.n
    V = P.vertices

    def incident(vset, rset):
        out = []
        for k, f in enumerate(P.facets):
            if all(f.value(V[i]) == f.offset for i in vset) and all(f.normal[i] == 0 for i in rset):
                out.append(k)
        return frozenset(out)

    seen: dict[tuple, None] = {}
    frontier = []
    facet_keys = []
    for f in P.facets:
        vset = frozenset(i for i, v in enumerate(V) if f.value(v) == f.offset)
        rset = frozenset(i for i in range(n) if f.normal[i] == 0)
        key = (vset, rset)
        facet_keys.append(key)
        if key not in seen:
            seen[key] = None
            frontier.append(key)
    while frontier:
        nxt = []
        for vset, rset in frontier:
            for fv, fr in facet_keys:
                key = (vset & fv, rset & fr)
                if key[0] and key not in seen:
                    seen[key] = None
                    nxt.append(key)
        frontier = nxt

    faces = []
    for vset, rset in seen:
        verts = tuple(V[i] for i in sorted(vset))
        coord = any(
            i not in rset and all(v[i] == 0 for v in verts) for i in range(n)
        )
        faces.append((
            _face_dim(verts, sorted(rset), n),
            verts,
            tuple(sorted(rset)),
            incident(vset, rset),
            coord,
        ))
    faces.sort(key=lambda t: (-t[0], t[1], t[2]))
    return [
        Face(k, inc, verts, frozenset(rs), dim, coord)
        for k, (dim, verts, rs, inc, coord) in enumerate(faces)
    ]


def _lattice_points_on_face(P: NewtonPolyhedron, face: Face, form) -> list[IntVector]:
    lo = [min(v[i] for v in face.vertices) for i in range(P.n)]
    hi = [max(v[i] for v in face.vertices) for i in range(P.n)]
    out = []
    for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if dot(form, u) == 1 and P.ideal.contains_exponent(u) and P.contains(u):
            out.append(u)
    return out


def supporting_form(P: NewtonPolyhedron, face: Face, weights: Optional[Sequence[int]] = None):
    """Weighted average of ``normal . x / offset`` over the facets containing ``face``.

    ``weights`` (positive, used cyclically) defaults to uniform.
    """
    if face.in_coordinate_hyperplane:
        raise ContractError(f"face {face.id} lies in a coordinate hyperplane")
    inc = sorted(face.incident_facets)
    ws = [1] * len(inc) if not weights else [weights[k % len(weights)] for k in range(len(inc))]
    if any(w <= 0 for w in ws):
        raise ValueError("facet weights must be positive")
    total = sum(ws)
    form = [Fraction(0)] * P.n
    for w, k in zip(ws, inc):
        f = P.facets[k]
        for i in range(P.n):
            form[i] += Fraction(w * f.normal[i], f.offset * total)
    return tuple(form)


def face_data(
    P: NewtonPolyhedron,
    face: Face,
    ideal: Optional[MonomialIdeal] = None,
    *,
    lq_weights: Optional[Sequence[int]] = None,
    v0_index: int = 0,
) -> FaceData:
    ideal = ideal or P.ideal
    form = supporting_form(P, face, lq_weights)
    n = P.n
    facet_den = lcm_of_denominators(form) if face.dim == n - 1 else None
    span = span_basis(
        list(face.vertices) + [tuple(int(i == j) for j in range(n)) for i in sorted(face.recession_dirs)]
    )
    gens = ideal.generators
    on = tuple(g for g in gens if dot(form, g) == 1)
    off = tuple(g for g in gens if dot(form, g) != 1)
    if not face.bounded:
        return FaceData(face, gens, form, facet_den, span, on_face=on, off_face=off)

    points = _lattice_points_on_face(P, face, form)
    if not points:
        raise RuntimeError(f"bounded face {face.id} has no lattice points of the ideal")
    base = points[v0_index % len(points)]
    lattice = IntegerLattice.from_generators(
        n, [tuple(x - y for x, y in zip(w, base)) for w in points if w != base]
    )
    return FaceData(face, gens, form, facet_den, span, tuple(points), base, lattice, on, off)


def project_ideal(ideal: MonomialIdeal, i: int) -> MonomialIdeal:
    """Drop coordinate ``i`` (0-based) and keep only minimal generators."""
    if ideal.n < 2:
        raise ContractError("cannot project a one-variable ideal")
    if not 0 <= i < ideal.n:
        raise ContractError(f"coordinate {i} out of range")
    gens = {g[:i] + g[i + 1:] for g in ideal.generators}
    minimal = [
        g for g in gens
        if not any(h != g and all(a >= b for a, b in zip(g, h)) for h in gens)
    ]
    return MonomialIdeal(ideal.n - 1, tuple(minimal))

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from bsmonomial.engine import (
    EngineConfig,
    RootSet,
    ResidueSet,
    all_roots,
    analyze,
    bound_audit,
    candidates,
    closed_form_n2_unbounded,
    face_roots,
    facet_denominators,
    roots_mod_z,
)
from bsmonomial.exact import dot, rank
from bsmonomial.newton import ContractError, MonomialIdeal, build_polyhedron, enumerate_faces, face_data
from bsmonomial.oracle import ex2_ideal, two_gen_ideal

from conftest import CORPUS, ideals
from test_semigroup import faces_of, facet_data

PLANE = CORPUS["plane-13-5"].ideal


def candidate_scan(fd, bound, box=12):
    """Candidates straight from the definition, by scanning a box."""
    e = (1,) * fd.n
    diffs = [tuple(x - y for x, y in zip(w, fd.base_point)) for w in fd.face_points]
    out = []
    for u in itertools.product(range(1, box + 1), repeat=fd.n):
        if dot(fd.linear_form, u) > bound:
            continue
        if rank(list(fd.span_basis) + [u]) != len(fd.span_basis):
            continue
        below = False
        for t in itertools.product(range(-box, box + 1), repeat=len(diffs)):
            g = [b + sum(ti * d[i] for ti, d in zip(t, diffs)) for i, b in enumerate(fd.base_point)]
            if all(x - 1 - y >= 0 for x, y in zip(u, g)):
                below = True
                break
        if not below:
            out.append(u)
    return out


def test_candidates_on_plane_facet():
    fd = facet_data(PLANE, (3, 2))
    got = candidates(fd)
    assert set(itertools.product(range(1, 4), range(1, 6))) <= set(got)
    assert got == candidate_scan(fd, 4, box=16)


def test_candidates_one_variable():
    (fd,) = faces_of(MonomialIdeal.of((5,)))
    assert candidates(fd) == [(u,) for u in range(1, 6)]


def test_candidates_lower_dimensional_face():
    ideal = CORPUS["space-8-5"].ideal
    found = [fd for fd in faces_of(ideal) if fd.face.dim == 1]
    assert found
    assert any(candidates(fd) == [(4, 3, 3)] for fd in found)
    for fd in found:
        assert candidates(fd) == candidate_scan(fd, 6, box=8)


@pytest.mark.parametrize("name", ["space-21-3", "space-15"])
def test_candidates_match_scan(name):
    for fd in faces_of(CORPUS[name].ideal):
        if fd.face.dim == 0:
            continue
        assert candidates(fd) == candidate_scan(fd, 6, box=8 if fd.face.dim == 1 else 7)


def test_face_roots_shift():
    fd = facet_data(PLANE, (3, 2))
    contrib = face_roots(fd)
    # u = e gives -L(e) = -5/13
    assert F(-5, 13) in contrib.roots
    # (3,5) sits at level 1: -19/13 + 1
    assert F(-6, 13) in contrib.roots
    assert (3, 5) in contrib.levels[1]
    fd = facet_data(PLANE, (1, 1))
    assert face_roots(fd).roots == RootSet.of(F(-j, 5) for j in range(2, 7))


def test_face_roots_rejects_unbounded():
    P = build_polyhedron(PLANE)
    face = next(f for f in enumerate_faces(P) if not f.bounded and not f.in_coordinate_hyperplane)
    with pytest.raises(ContractError):
        candidates(face_data(P, face))


def test_all_roots_examples():
    assert all_roots(MonomialIdeal.of((3,))) == RootSet.of([F(-1, 3), F(-2, 3), -1])
    assert all_roots(MonomialIdeal.of((0, 0), (1, 2))) == RootSet()
    assert all_roots(two_gen_ideal(2, 2)) == RootSet.of([F(-2, 3), -1, F(-4, 3)])
    assert all_roots(CORPUS["plane-13-5"].ideal) == CORPUS["plane-13-5"].expected
    assert len(all_roots(CORPUS["plane-13-5"].ideal)) == 17


def test_roots_mod_z_examples():
    assert roots_mod_z(PLANE) == ResidueSet.of([F(j, 13) for j in range(13)] + [F(j, 5) for j in range(5)])
    assert roots_mod_z(MonomialIdeal.of((0, 1))) == ResidueSet.of([0])
    assert roots_mod_z(MonomialIdeal.of((0, 0))) == ResidueSet()
    assert [m for _, m in facet_denominators(ex2_ideal(4, 2))] == [4]


def test_closed_form_unbounded():
    assert closed_form_n2_unbounded(3) == RootSet.of([F(-1, 3), F(-2, 3), -1])
    # (x^a y^b) with the face {x = a, y >= b}: projecting out y leaves (x^a)
    assert all_roots(MonomialIdeal.of((3, 2))) == closed_form_n2_unbounded(3) | closed_form_n2_unbounded(2)
    with pytest.raises(ValueError):
        closed_form_n2_unbounded(0)


def test_residue_set_and_rootset():
    r = RootSet.of([F(-1, 2), F(-3, 2), -1, -1])
    assert list(r) == [F(-1, 2), -1, F(-3, 2)]
    assert F(-3, 2) in r and 0 not in r
    assert list(r.residues()) == [0, F(1, 2)]


def test_config_validation():
    with pytest.raises(ValueError):
        EngineConfig(cap=0)
    with pytest.raises(ValueError):
        EngineConfig(l_bound=0)
    with pytest.raises(ValueError):
        EngineConfig(l_bound=2).bound_for(3)
    assert EngineConfig(l_bound_offset=2).bound_for(3) == 8


def test_analysis_records_projections():
    a = analyze(PLANE)
    assert set(a.projections) == {0, 1}
    assert a.contributions and all(c.roots for c in a.contributions)


# -- invariance ------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CORPUS))
def test_permutation_invariance(name):
    ideal = CORPUS[name].ideal
    base = all_roots(ideal)
    for perm in itertools.permutations(range(ideal.n)):
        assert all_roots(ideal.permuted(perm)) == base


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_redundant_generator(name):
    ideal = CORPUS[name].ideal
    g = tuple(x + 1 for x in ideal.generators[0])
    assert all_roots(MonomialIdeal(ideal.n, ideal.generators + (g,))) == all_roots(ideal)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_choice_invariance(name):
    ideal = CORPUS[name].ideal
    base = all_roots(ideal)
    assert all_roots(ideal, EngineConfig(v0_index=1)) == base
    assert all_roots(ideal, EngineConfig(lq_weights=(1, 3, 2))) == base
    assert all_roots(ideal, EngineConfig(include_vertices=True)) == base
    stable, _, _ = bound_audit(ideal)
    assert stable


@settings(max_examples=25, deadline=None)
@given(ideals(max_vars=3, max_gens=3, max_exp=4))
def test_random_ideals_properties(ideal):
    roots = all_roots(ideal)
    assert all(r < 0 for r in roots)
    if not ideal.is_unit:
        assert roots.residues() == roots_mod_z(ideal)
        for f, m in facet_denominators(ideal):
            assert -F(sum(f.normal), f.offset) in roots
    assert all_roots(ideal.permuted(tuple(reversed(range(ideal.n))))) == roots

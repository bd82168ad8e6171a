import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsmonomial.exact import (
    IntegerLattice,
    coset_has_point_below,
    hermite_normal_form,
    lattice_contains,
    lcm_of_denominators,
    rref,
    solve_exact,
    span_basis,
)


def matmul(A, B):
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*B)) for row in A)


def det(M):
    M = [list(map(F, r)) for r in M]
    n = len(M)
    d = F(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return d


def small_combinations(gens, bound=4):
    """Oracle: all integer combinations with coefficients in [-bound, bound]."""
    n = len(gens[0]) if gens else 0
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        out.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n)))
    return out


# -- hermite_normal_form --------------------------------------------------------

def test_hnf_identity():
    H, U = hermite_normal_form([[1, 0], [0, 1]])
    assert H == ((1, 0), (0, 1))
    assert U == ((1, 0), (0, 1))


def test_hnf_dependent_columns():
    # columns (2,-2) and (-2,2)
    H, U = hermite_normal_form([[2, -2], [-2, 2]])
    cols = list(zip(*H))
    assert cols[0] == (2, -2)
    assert cols[1] == (0, 0)
    assert matmul([[2, -2], [-2, 2]], U) == H
    # oracle: small combinations of the original columns reach exactly the multiples of (2,-2)
    combos = small_combinations([(2, -2), (-2, 2)], bound=3)
    assert all(x % 2 == 0 and x == -y for x, y in combos)


def test_hnf_zero():
    H, U = hermite_normal_form([[0, 0], [0, 0]])
    assert H == ((0, 0), (0, 0))
    assert abs(det(U)) == 1


int_matrix = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def is_column_hnf(H):
    m = len(H)
    n = len(H[0])
    last = -1
    seen_zero = False
    for j in range(n):
        col = [H[i][j] for i in range(m)]
        if not any(col):
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = next(i for i, x in enumerate(col) if x)
        if p <= last or col[p] <= 0:
            return False
        for k in range(j):
            if not 0 <= H[p][k] < col[p]:
                return False
        last = p
    return True


@settings(max_examples=150, deadline=None)
@given(int_matrix)
def test_hnf_properties(M):
    H, U = hermite_normal_form(M)
    assert matmul(M, U) == H
    assert abs(det(U)) == 1
    assert is_column_hnf(H)
    # same lattice: generators of each side lie in the other
    n = len(M)
    cols_M = [tuple(r[j] for r in M) for j in range(len(M[0]))]
    cols_H = [tuple(r[j] for r in H) for j in range(len(H[0]))]
    LM = IntegerLattice.from_generators(n, cols_M)
    LH = IntegerLattice.from_generators(n, cols_H)
    assert all(lattice_contains(LH, c) for c in cols_M)
    assert all(lattice_contains(LM, c) for c in cols_H)


# -- lattice_contains -----------------------------------------------------------

L22 = IntegerLattice.from_generators(2, [(2, -2)])


def test_lattice_contains_examples():
    assert lattice_contains(L22, (4, -4))
    assert not lattice_contains(L22, (1, -1))
    assert lattice_contains(L22, (0, 0))
    oracle = small_combinations([(2, -2)], bound=5)
    assert ((4, -4) in oracle) and ((1, -1) not in oracle)


def test_lattice_dimension_mismatch():
    with pytest.raises(ValueError):
        lattice_contains(L22, (1, 2, 3))


gens_strategy = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(*[st.integers(-6, 6)] * n), min_size=0, max_size=3),
        st.tuples(*[st.integers(-8, 8)] * n),
        st.tuples(*[st.integers(-8, 8)] * n),
    )
)


@settings(max_examples=200, deadline=None)
@given(gens_strategy)
def test_lattice_closure(data):
    n, gens, a, b = data
    L = IntegerLattice.from_generators(n, gens)
    for g in gens:
        assert lattice_contains(L, g)
    if lattice_contains(L, a) and lattice_contains(L, b):
        assert lattice_contains(L, tuple(x + y for x, y in zip(a, b)))
    assert lattice_contains(L, a) == lattice_contains(L, tuple(-x for x in a))
    if len(gens) == 1:
        assert lattice_contains(L, a) == (a in small_combinations(gens, bound=8))


# -- solve_exact ----------------------------------------------------------------

def test_solve_identity():
    b = (F(3, 4), F(-2), F(7))
    assert solve_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]], b) == b


def test_solve_two_by_two():
    A, b = [[2, 1], [1, 3]], [5, 5]
    x = solve_exact(A, b)
    assert x == (2, 1)
    assert all(sum(a * xi for a, xi in zip(row, x)) == bi for row, bi in zip(A, b))


def test_solve_inconsistent():
    assert solve_exact([[0, 0]], [1]) is None
    assert solve_exact([[1, 1], [2, 2]], [1, 3]) is None


rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(rat, min_size=n, max_size=n), min_size=1, max_size=4),
    st.lists(rat, min_size=n, max_size=n))))
def test_solve_substitution(data):
    A, x0 = data
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    x = solve_exact(A, b)
    assert x is not None
    assert [sum(a * xi for a, xi in zip(row, x)) for row in A] == b


# -- lcm_of_denominators --------------------------------------------------------

def test_lcm_examples():
    assert lcm_of_denominators((F(3, 13), F(2, 13))) == 13
    assert lcm_of_denominators((1, 0, 2)) == 1
    assert lcm_of_denominators((F(1, 4), F(1, 6))) == 12
    # oracle: scan m = 1, 2, ...
    v = (F(1, 4), F(1, 6))
    assert next(m for m in itertools.count(1) if all((m * x).denominator == 1 for x in v)) == 12


def prime_factors(m):
    out, p = set(), 2
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 1
    if m > 1:
        out.add(m)
    return out


@given(st.lists(rat, min_size=1, max_size=5))
def test_lcm_minimal(v):
    m = lcm_of_denominators(v)
    assert all((m * x).denominator == 1 for x in v)
    for p in prime_factors(m):
        assert any((F(m, p) * x).denominator != 1 for x in v)


# -- rref / span ----------------------------------------------------------------

def test_span_basis_primitive():
    B = span_basis([(2, 4, 0), (1, 2, 0), (0, 0, 3)])
    assert B == ((1, 2, 0), (0, 0, 1))
    R, piv = rref([(0, 0), (0, 0)])
    assert R == [] and piv == []


# -- coset_has_point_below ----------------------------------------------------------

def brute_coset(lattice, offset, upper, radius=12):
    for t in itertools.product(range(-radius, radius + 1), repeat=lattice.rank):
        g = [o + sum(ti * b[i] for ti, b in zip(t, lattice.basis)) for i, o in enumerate(offset)]
        if all(x <= u for x, u in zip(g, upper)):
            return True
    return False


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from([
        # (difference generators, positive weights vanishing on them)
        ([(2, -3)], (F(3, 13), F(2, 13))),
        ([(4, -4)], (F(1, 4), F(1, 4))),
        ([(-3, 3, 0), (-3, 0, 4)], (F(4, 21), F(4, 21), F(3, 21))),
        ([(1, -1, 0), (0, 1, -1)], (F(1, 5), F(1, 5), F(1, 5))),
        ([], (F(1, 3), F(1, 2))),
    ]),
    st.integers(-3, 3),
    st.tuples(*[st.integers(-2, 9)] * 3),
)
def test_coset_search_matches_enumeration(case, K, upper):
    diffs, w = case
    n = len(w)
    L = IntegerLattice.from_generators(n, diffs)
    base = {2: (1, 5), 3: (3, 0, 3)}[n] if diffs else (3, 0)
    if not diffs:
        n = 2
    offset = tuple(K * x for x in base)
    upper = upper[:n]
    assert coset_has_point_below(L, offset, w, upper) == brute_coset(L, offset, upper)

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ellmoduli.lattice import (
    NoSolutionError,
    determinant,
    hermite_normal_form,
    integer_kernel,
    invariant_factors,
    is_hermite_normal_form,
    matmul,
    matvec,
    quotient_presentation,
    saturation,
    smith_normal_form,
    solve_rational,
    unimodular_inverse,
    unimodular_matrices,
)

small_int = st.integers(min_value=-12, max_value=12)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)))


def sympy_factors(m):
    s = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    return sorted(abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0)


def test_hnf_examples():
    h, u = hermite_normal_form([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]] and u == [[1, 0], [0, 1]]
    h, _ = hermite_normal_form([[0, 1], [1, 0]])
    assert h == [[1, 0], [0, 1]]
    m = [[2, 4], [6, 8]]
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert abs(determinant(u)) == 1
    assert is_hermite_normal_form(h)


@given(matrices())
def test_hnf_properties(m):
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert abs(determinant(u)) == 1
    assert is_hermite_normal_form(h)


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [[1, 0], [0, 6]]
    assert smith_normal_form([[0, 0], [0, 0]])[0] == [[0, 0], [0, 0]]


@given(matrices())
def test_snf_matches_sympy(m):
    s, u, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(s[i][j] == 0 for i in range(len(s)) for j in range(len(s[0])) if i != j)
    assert nz == sympy_factors(m)


def test_snf_basis_independence():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = [[rng.randint(-8, 8) for _ in range(n)] for _ in range(n)]
        u, v = unimodular_matrices(rng, n), unimodular_matrices(rng, n)
        assert invariant_factors(matmul(matmul(u, m), v)) == invariant_factors(m)


@pytest.mark.parametrize("gens, torsion, free", [
    ([[2, 0], [0, 2]], (2, 2), 0),
    ([[1, 1]], (), 1),
    ([[2, 0, 0], [0, 3, 0]], (6,), 1),
    ([], (), 3),
])
def test_quotient_presentation_examples(gens, torsion, free):
    n = len(gens[0]) if gens else 3
    g = quotient_presentation(n, gens)
    assert g.torsion == torsion and g.free_rank == free


@given(matrices(4, 4))
def test_quotient_presentation_properties(gens):
    n = len(gens[0])
    g = quotient_presentation(n, gens)
    # generators die, the section splits the projection
    for row in gens:
        assert g.project(row) == g.zero()
    for i in range(g.ngens):
        e = [int(i == j) for j in range(g.ngens)]
        assert g.project(g.lift(e)) == tuple(e)
    assert list(g.torsion) == [x for x in sympy_factors(gens) if x > 1]
    assert g.free_rank == n - sympy.Matrix(gens).rank()


def test_solve_rational_examples():
    assert solve_rational([[1, 0], [0, 1]], [Fraction(1, 2), Fraction(1, 3)]) == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_rational([[1, 1]], [1]) == [Fraction(1, 2), Fraction(1, 2)]
    with pytest.raises(NoSolutionError):
        solve_rational([[2, 0], [0, 0]], [1, 1])


@given(matrices(4, 4), st.lists(small_int, min_size=4, max_size=4))
def test_solve_rational_solves(m, x):
    x = x[: len(m[0])]
    b = matvec(m, x)
    sol = solve_rational(m, b)
    assert matvec(m, sol) == b


@given(matrices(3, 5))
def test_integer_kernel_and_saturation(m):
    n = len(m[0])
    k = integer_kernel(m, n)
    assert len(k) == n - sympy.Matrix(m).rank()
    for v in k:
        assert matvec(m, v) == [0] * len(m)
    sat = saturation(m, n)
    # saturated lattices have a torsion-free quotient
    if sat:
        assert quotient_presentation(n, sat).torsion == ()


def test_unimodular_inverse():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 5)
        u = unimodular_matrices(rng, n)
        assert matmul(u, unimodular_inverse(u)) == [[int(i == j) for j in range(n)] for i in range(n)]

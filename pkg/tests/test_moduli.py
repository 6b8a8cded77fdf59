import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellmoduli._kernels import kernel_size_mod
from ellmoduli.moduli import (
    TableRequest,
    appendix_rows,
    describe,
    group_elements,
    render_table,
    table_rows,
    torsion_orbit_count,
)
from ellmoduli.oracles import orbit_count_by_enumeration
from ellmoduli.root_datum import build_datum, class_of_lift, fundamental_group, pi1_class


def desc(g, coords=None, lift=None):
    d = build_datum(g)
    if lift is not None:
        return describe(d, class_of_lift(d, lift))
    return describe(d, pi1_class(d, coords if coords is not None else fundamental_group(d).zero()))


@pytest.mark.parametrize("n", range(1, 13))
def test_gl_descriptors(n):
    for deg in range(n):
        m = desc(f"GL{n}", [deg])
        e = math.gcd(n, deg)
        assert m.dimension == e
        assert m.display == f"E^{e} / W({'1' if e == 1 else f'A{e - 1}'})"
        # S_e permuting the blocks: every generator is a permutation matrix
        for g in m.weyl_action:
            a = np.array(g)
            assert sorted(a.sum(axis=0)) == [1] * e and set(a.flatten()) <= {0, 1}
        if e <= 6:
            assert len(group_elements(m)) == math.factorial(e)


def test_gl6_text():
    assert desc("GL6", [4]).text() == "E^2 / W(A1)  [L = GL3 x GL3, lambda_L = (2,2)]"


@pytest.mark.parametrize("g", ["B3/ad", "E6/sc", "GL3", "A1/ad+GL2"])
def test_degree_zero(g):
    m = desc(g)
    assert m.dimension == m.datum.rank
    assert m.levi == ()


@pytest.mark.parametrize("n", range(3, 9))
def test_b_n(n):
    m = desc(f"B{n}/ad", [1])
    assert m.dimension == n - 1
    assert m.coxeter_type == f"BC{n - 1}"


def test_torsion_examples():
    gl4 = desc("GL4", [1])
    assert gl4.order == 1
    for n in range(1, 6):
        assert torsion_orbit_count(gl4, n) == n ** 2
    swap = desc("GL4", [2])
    assert swap.order == 2 and swap.dimension == 2
    assert torsion_orbit_count(swap, 2) == 10
    assert torsion_orbit_count(desc("E8/sc"), 1) == 1
    with pytest.raises(ValueError):
        torsion_orbit_count(swap, 0)


@pytest.mark.parametrize("g, coords", [("GL3", [0]), ("GL6", [3]), ("B3/ad", [1]), ("C4/ad", [1]), ("G2/sc", []), ("A2/ad", [0])])
def test_burnside_vs_enumeration(g, coords):
    m = desc(g, coords)
    for n in range(1, 5):
        assert torsion_orbit_count(m, n) == orbit_count_by_enumeration(m.weyl_action, m.dimension, n)


@settings(max_examples=25)
@given(st.sampled_from([("GL6", [3]), ("B4/ad", [1]), ("C5/ad", [1]), ("E6/ad", [1]), ("F4/sc", [])]),
       st.sampled_from([(2, 3), (3, 4), (4, 5), (2, 9), (5, 6)]))
def test_fixed_point_counts_are_multiplicative(case, pair):
    m = desc(*case)
    a, b = pair
    elts = group_elements(m)
    eye = np.eye(m.dimension, dtype=np.int64)
    total = 0
    for w in elts:
        x = np.array(w, dtype=np.int64) - eye
        assert kernel_size_mod(x, a * b) == kernel_size_mod(x, a) * kernel_size_mod(x, b)
        total += (kernel_size_mod(x, a) * kernel_size_mod(x, b)) ** 2
    assert total // len(elts) == torsion_orbit_count(m, a * b)


def generated_order(gens, r):
    eye = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    seen, todo = {eye}, [eye]
    while todo:
        x = np.array(todo.pop(), dtype=np.int64).reshape(r, r)
        for g in gens:
            y = tuple(map(tuple, (np.array(g, dtype=np.int64) @ x).tolist()))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen)


ROWS = [r for r in appendix_rows() if not r.group.startswith("GL")]


@pytest.mark.parametrize("row", ROWS, ids=[f"{r.group}-{r.label}" for r in ROWS])
def test_appendix_descriptors(row):
    m = desc(row.group, lift=row.lift)
    assert m.det_invariant
    assert m.dimension == m.datum.rank - len(m.levi)
    for g in m.weyl_action:
        assert abs(round(np.linalg.det(np.array(g, dtype=float)))) == 1
    if m.order <= 50000:
        assert generated_order(m.weyl_action, m.dimension) == m.order


@pytest.mark.parametrize("rank", [5, 7, 9])
def test_d_odd_degree_two(rank):
    # A1 x A1 on the spin nodes: W_d acts on the full rank-(rank-2) cocenter
    n = (rank - 1) // 2
    m = desc(f"D{rank}/ad", [2])
    assert m.levi_type == "A1xA1"
    assert m.dimension == 2 * n - 1
    assert m.coxeter_type == f"BC{2 * n - 1}"
    assert m.order == 2 ** (2 * n - 1) * math.factorial(2 * n - 1)


def test_table_examples():
    rows = table_rows([TableRequest("B3/ad", degree=(1,), label="1"), TableRequest("E6/ad", degree=(1,), label="1")])
    assert (rows[0]["Levi type"], rows[0]["Coxeter type"], rows[0]["r"]) == ("A1", "BC2", 2)
    assert (rows[1]["Levi type"], rows[1]["Coxeter type"]) == ("A2xA2", "G2")
    empty = render_table([])
    assert empty.splitlines() == ["| G | degree | Levi type | Coxeter type | r | \\|W\\| |", "|---|---|---|---|---|---|"]
    assert json.loads(render_table([], fmt="json")) == []


def test_table_reports_bad_rows():
    rows = table_rows([TableRequest("B3/ad", degree=(1, 1))])
    assert rows[0]["error"] and rows[0]["Levi type"] is None


def test_json_schema_is_stable():
    a = desc("D6/ad", [1, 1]).to_json()
    b = desc("D6/ad", [1, 1]).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert set(a) == {"group", "degree", "levi", "lambda_L", "cocenter_rank", "det_lambda", "weyl", "display"}
    assert all(i >= 1 for i in a["levi"]["indices"])
    assert set(a["weyl"]) == {"order", "coxeter_type", "crystallographic_type", "generators"}


def test_appendix_rows_cover_every_class():
    # every nonzero pi_1 class of each table group is represented up to the diagram symmetry
    seen = {}
    for r in appendix_rows():
        d = build_datum(r.group)
        seen.setdefault(r.group, set()).add(class_of_lift(d, r.lift).coords)
    assert seen["D6/ad"] == {c for c in itertools.product(range(2), repeat=2) if any(c)}
    assert seen["E6/ad"] == {(1,)}
    assert len(seen["D5/ad"]) == 2

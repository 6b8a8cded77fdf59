import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ellmoduli import dynkin
from ellmoduli.root_datum import (
    GroupSpecError,
    all_roots,
    build_datum,
    center_subspace,
    class_of_lift,
    cocenter,
    fundamental_group,
    levi_name,
    levi_pi1,
    parse_group,
    pi1_class,
    to_pi1_G,
)

TYPES = ["A1", "A4", "B2", "B5", "C3", "C6", "D4", "D7", "E6", "E7", "E8", "F4", "G2"]


def orbit_roots(d):
    # reflection orbit of the simple roots, computed from scratch
    seen = {tuple(r) for r in d.simple_roots}
    todo = list(seen)
    while todo:
        x = todo.pop()
        for a, c in zip(d.simple_roots, d.simple_coroots):
            p = sum(u * v for u, v in zip(x, c))
            y = tuple(u - p * v for u, v in zip(x, a))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def sympy_pi1(d):
    m = sympy.Matrix([list(c) for c in d.simple_coroots]) if d.nsimple else sympy.zeros(0, d.rank)
    if not d.nsimple:
        return (), d.rank
    s = sympy_snf(m, domain=sympy.ZZ)
    diag = [abs(int(s[i, i])) for i in range(min(s.shape))]
    return tuple(x for x in diag if x > 1), d.rank - sum(1 for x in diag if x)


def test_gl2():
    d = build_datum({"type": "GL", "n": 2})
    assert d.rank == 2
    assert d.simple_roots == ((1, -1),) and d.simple_coroots == ((1, -1),)


def test_a1_sc():
    d = build_datum({"type": "A", "rank": 1, "isogeny": "sc"})
    assert d.rank == 1 and d.cartan == ((2,),)


def test_custom_g2():
    cart = [[2, -1], [-3, 2]]
    d = build_datum({"custom": {"simple_roots": cart, "simple_coroots": [[1, 0], [0, 1]]}})
    assert dynkin.type_label(d.components) == "G2"


@pytest.mark.parametrize("spec", [
    {"custom": {"simple_roots": [[1, 0], [2, 0]], "simple_coroots": [[1, 0], [0, 1]]}},
    {"custom": {"simple_roots": [[2, -2], [-2, 2]], "simple_coroots": [[1, 0], [0, 1]]}},
    {"type": "B", "rank": 1},
    {"type": "Q", "rank": 3},
    {"type": "GL", "n": 0},
])
def test_rejects_bad_specs(spec):
    with pytest.raises(GroupSpecError):
        build_datum(spec)


def test_parse_group_shorthand():
    assert parse_group("B5/ad") == {"type": "B", "rank": 5, "isogeny": "ad"}
    assert parse_group("E7") == {"type": "E", "rank": 7, "isogeny": "ad"}
    assert parse_group("E7", default_isogeny="sc")["isogeny"] == "sc"
    assert parse_group("GL6") == {"type": "GL", "n": 6}
    assert parse_group("SL3") == {"type": "A", "rank": 2, "isogeny": "sc"}
    assert parse_group("PGL2") == {"type": "A", "rank": 1, "isogeny": "ad"}
    assert parse_group("A1/sc+GL2") == {"product": [{"type": "A", "rank": 1, "isogeny": "sc"}, {"type": "GL", "n": 2}]}
    assert parse_group('{"type": "GL", "n": 3}') == {"type": "GL", "n": 3}
    with pytest.raises(GroupSpecError):
        parse_group("H3")


def test_product_is_block_diagonal():
    d = build_datum("A1/sc+GL2")
    assert d.rank == 3
    assert d.simple_roots == ((2, 0, 0), (0, 1, -1))


@pytest.mark.parametrize("g, count", [("A2/sc", 6), ("G2/sc", 12), ("A1/sc+A1/ad", 4), ("GL1", 0)])
def test_root_counts(g, count):
    assert len(all_roots(build_datum(g))) == count


@pytest.mark.parametrize("typ", TYPES)
@pytest.mark.parametrize("iso", ["sc", "ad"])
def test_roots_match_reflection_orbit(typ, iso):
    d = build_datum(f"{typ}/{iso}")
    roots = all_roots(d)
    assert {r.root for r in roots} == orbit_roots(d)
    letter, rank = typ[0], int(typ[1:])
    assert len(roots) == 2 * dynkin.positive_root_count(letter, rank)
    for r in roots:
        # every root is an integral combination of simple roots, all of one sign
        assert all(c >= 0 for c in r.coeffs) or all(c <= 0 for c in r.coeffs)
        assert sum(r.root[i] * r.coroot[i] for i in range(d.rank)) == 2


@pytest.mark.parametrize("g, torsion, free", [
    ("A3/sc", (), 0), ("GL4", (), 1), ("A1/ad", (2,), 0), ("D4/ad", (2, 2), 0),
    ("D5/ad", (4,), 0), ("E6/ad", (3,), 0), ("E7/ad", (2,), 0), ("E8/ad", (), 0), ("B4/ad", (2,), 0),
])
def test_fundamental_group(g, torsion, free):
    pi = fundamental_group(build_datum(g))
    assert (pi.torsion, pi.free_rank) == (torsion, free)


@pytest.mark.parametrize("g", ["A4/ad", "C3/ad", "D6/ad", "GL3", "A1/sc+A2/ad", "B2/ad+GL2"])
def test_fundamental_group_vs_sympy(g):
    d = build_datum(g)
    pi = fundamental_group(d)
    assert (pi.torsion, pi.free_rank) == sympy_pi1(d)


def test_levi_pi1_examples():
    d = build_datum("GL4")
    assert levi_pi1(d, ()).free_rank == 4 and levi_pi1(d, ()).torsion == ()
    assert levi_pi1(d, (0, 1, 2)) == fundamental_group(d)
    g = levi_pi1(d, (0, 2))
    assert g.free_rank == 2 and g.torsion == ()


@given(st.sampled_from(["B3/ad", "GL4", "D4/ad", "A1/sc+A2/ad"]), st.data())
def test_pi1_surjection_is_compatible(g, data):
    d = build_datum(g)
    s = tuple(j for j in range(d.nsimple) if data.draw(st.booleans()))
    lift = data.draw(st.lists(st.integers(-5, 5), min_size=d.rank, max_size=d.rank))
    c = class_of_lift(d, lift, s)
    assert to_pi1_G(d, c) == class_of_lift(d, lift)
    assert class_of_lift(d, c.lift(), s) == c


def test_pi1_class_roundtrip():
    d = build_datum("D6/ad")
    for coords in fundamental_group(d).elements():
        c = pi1_class(d, coords)
        assert class_of_lift(d, c.lift()) == c


def test_center_subspace():
    gl2, gl4 = build_datum("GL2"), build_datum("GL4")
    assert center_subspace(gl4, ()) == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    (v,) = center_subspace(gl2, (0,))
    assert set(map(abs, v)) == {1} and v[0] == v[1]
    basis = center_subspace(gl4, (0, 2))
    want = sympy.Matrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert sympy.Matrix(basis).rank() == 2
    assert sympy.Matrix.vstack(want, sympy.Matrix(basis)).rank() == 2


def test_cocenter():
    gl2, gl6 = build_datum("GL2"), build_datum("GL6")
    t = cocenter(gl6, ())
    assert t.rank == 6
    assert all(t.det(list(v)) == tuple(v) for v in itertools.product(range(-1, 2), repeat=6) if sum(v) == 1)
    c = cocenter(gl2, (0,))
    assert c.rank == 1
    assert abs(c.det([3, 4])[0]) == 7
    c = cocenter(gl6, (0, 1, 3, 4))
    assert c.rank == 2
    v = [1, 2, 3, 4, 5, 6]
    assert sorted(map(abs, c.det(v))) == [6, 15]


def test_levi_names():
    assert levi_name(build_datum("GL6"), (0, 1, 3, 4)) == "GL3 x GL3"
    assert levi_name(build_datum("E6/ad"), (0, 2, 4, 5)) == "A2xA2"
    assert levi_name(build_datum("B3/ad"), ()) == "T"

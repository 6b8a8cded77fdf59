"""Weyl groups, relative Weyl groups N_W(W_L)/W_L and Coxeter recognition.

Weyl group elements act on X_*(T) by integer matrices (column vectors).
Words are read as products: ``(i1, i2, ..., ik)`` is ``s_i1 s_i2 ... s_ik``.

The relative Weyl group of a standard Levi with simple roots ``J`` is
realized as N_J = {w : w(Delta_J) = Delta_J}, a complement of W_J in the
normalizer.  Two ways of computing it live here:

* ``method="groupoid"`` (default) walks the orbit of ``J`` under the
  elementary moves of Deodhar and Brink-Howlett, reads off Schreier
  generators, and identifies the reflection part from its root system.
  Cost grows with the number of subsets in the orbit, never with |W|.
* ``method="cosets"`` enumerates the minimal coset representatives of
  W/W_J level by level and keeps those fixing Delta_J.  This is the
  brute-force cross-check; it is exponential in the rank.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, dynkin
from .lattice import rank as matrix_rank, rational_inverse, transpose, unimodular_inverse
from .root_datum import LeviSubset, RootDatum, center_subspace, levi_subset

DEFAULT_BUDGET = 10**8
DEFAULT_GROUP_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured budget."""


class NotReflectionGroupError(ValueError):
    """The group is not generated by the reflections it contains."""


# ---------------------------------------------------------------------------
# small exact matrix helpers on tuples (entries int or Fraction)

Mat = tuple[tuple, ...]


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _tm(m) -> Mat:
    return tuple(tuple(_norm(x) for x in row) for row in m)


def _mm(a: Mat, b: Mat) -> Mat:
    if not a:
        return ()
    bt = list(zip(*b))
    return tuple(tuple(_norm(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a)


def _mv(a: Mat, v: Sequence) -> tuple:
    return tuple(_norm(sum(x * y for x, y in zip(row, v))) for row in a)


def _vm(v: Sequence, a: Mat) -> tuple:
    return tuple(_norm(sum(v[i] * a[i][j] for i in range(len(v)))) for j in range(len(a)))


def _eye(r: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _lex_sign(v: Sequence) -> int:
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


def _primitive_dir(v: Sequence) -> tuple:
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def reflection_data(m: Mat) -> tuple[tuple, tuple] | None:
    """``(beta, f)`` with ``m x = x - f(x) beta`` if ``m`` is a reflection.

    ``beta`` is the primitive integer vector on the lex-positive side.
    """
    r = len(m)
    if r == 0:
        return None
    diff = tuple(tuple(int(i == j) - m[i][j] for j in range(r)) for i in range(r))
    if not any(any(row) for row in diff) or matrix_rank(diff) != 1:
        return None
    if _mm(m, m) != _eye(r):
        return None
    col = next(j for j in range(r) if any(diff[i][j] for i in range(r)))
    beta = _primitive_dir([diff[i][col] for i in range(r)])
    if _lex_sign(beta) < 0:
        beta = tuple(-x for x in beta)
    p = next(i for i in range(r) if beta[i])
    f = tuple(_norm(Fraction(diff[p][j]) / beta[p]) for j in range(r))
    return beta, f


# ---------------------------------------------------------------------------
# the Weyl group of a root datum

def weyl_order(d: RootDatum) -> int:
    out = 1
    for c in d.components:
        out *= dynkin.weyl_group_order(c.letter, c.rank)
    return out


def levi_weyl_order(d: RootDatum, s: Iterable[int]) -> int:
    out = 1
    for c in d.levi_components(s):
        out *= dynkin.weyl_group_order(c.letter, c.rank)
    return out


@lru_cache(maxsize=None)
def reflection_matrices(d: RootDatum) -> tuple[np.ndarray, ...]:
    """s_i on X_*(T): x -> x - <alpha_i, x> coroot_i."""
    out = []
    eye = np.eye(d.rank, dtype=np.int64)
    for a, c in zip(d.simple_roots, d.simple_coroots):
        m = eye - np.outer(np.array(c, dtype=np.int64), np.array(a, dtype=np.int64))
        m.setflags(write=False)
        out.append(m)
    return tuple(out)


def word_matrix(d: RootDatum, word: Sequence[int]) -> np.ndarray:
    refl = reflection_matrices(d)
    m = np.eye(d.rank, dtype=np.int64)
    for i in word:
        m = m @ refl[i]
    return m


@lru_cache(maxsize=None)
def longest_word(d: RootDatum, nodes: LeviSubset) -> tuple[int, ...]:
    """A reduced word for the longest element of W_nodes."""
    a = d.cartan
    x = {j: 1 for j in nodes}
    applied = []
    while True:
        j = next((j for j in nodes if x[j] > 0), None)
        if j is None:
            break
        xj = x[j]
        for i in nodes:
            x[i] -= xj * a[j][i]
        applied.append(j)
    return tuple(reversed(applied))


@lru_cache(maxsize=None)
def _longest_matrix(d: RootDatum, nodes: LeviSubset) -> np.ndarray:
    m = word_matrix(d, longest_word(d, nodes))
    m.setflags(write=False)
    return m


def _act_on_root_coeffs(d: RootDatum, word: Sequence[int], c: Sequence[int]) -> tuple[int, ...]:
    a = d.cartan
    c = list(c)
    for j in reversed(word):
        pj = sum(c[i] * a[i][j] for i in range(len(c)))
        c[j] -= pj
    return tuple(c)


@lru_cache(maxsize=None)
def opposition(d: RootDatum, nodes: LeviSubset) -> dict[int, int]:
    """The involution i -> j with w_0(alpha_i) = -alpha_j on ``nodes``."""
    word = longest_word(d, nodes)
    out = {}
    for i in nodes:
        e = [0] * d.nsimple
        e[i] = 1
        img = _act_on_root_coeffs(d, word, e)
        j = next(t for t, v in enumerate(img) if v)
        assert img[j] == -1 and sum(1 for v in img if v) == 1, "w_0 must send simple roots to negative simple roots"
        out[i] = j
    return out


def _component_of(d: RootDatum, nodes: set[int], a: int) -> LeviSubset:
    cart = d.cartan
    comp, stack = {a}, [a]
    while stack:
        x = stack.pop()
        for y in nodes:
            if y not in comp and cart[x][y] != 0:
                comp.add(y)
                stack.append(y)
    return tuple(sorted(comp))


@lru_cache(maxsize=None)
def elementary_move(d: RootDatum, k: LeviSubset, a: int) -> tuple[LeviSubset, tuple[int, ...], dict[int, int]]:
    """The move nu(K, a) = w_0(C) w_0(C minus a) for a simple root ``a`` not in ``K``.

    Returns the target subset, the word of nu and the induced bijection
    K -> target on simple roots.
    """
    assert a not in k
    comp = _component_of(d, set(k) | {a}, a)
    rest = tuple(x for x in comp if x != a)
    io_c = opposition(d, comp)
    io_r = opposition(d, rest) if rest else {}
    bij = {j: (io_c[io_r[j]] if j in io_r else j) for j in k}
    target = tuple(sorted(bij.values()))
    word = longest_word(d, comp) + longest_word(d, rest)
    return target, word, bij


def levi_orbit(d: RootDatum, s: Iterable[int], budget: int = DEFAULT_BUDGET) -> list[LeviSubset]:
    """All standard subsets W-conjugate to ``s`` (via elementary moves)."""
    s = levi_subset(d, s)
    seen = {s}
    queue = deque([s])
    while queue:
        k = queue.popleft()
        for a in range(d.nsimple):
            if a in k:
                continue
            k2 = elementary_move(d, k, a)[0]
            if k2 not in seen:
                seen.add(k2)
                if len(seen) > budget:
                    raise BudgetExceededError(f"subset orbit exceeds budget {budget}")
                queue.append(k2)
    return sorted(seen)


@lru_cache(maxsize=None)
def _canonical(d: RootDatum, s: LeviSubset, budget: int) -> LeviSubset:
    return levi_orbit(d, s, budget)[0]


def canonical_levi_representative(d: RootDatum, s: Iterable[int], budget: int = DEFAULT_BUDGET) -> LeviSubset:
    """Lexicographically smallest standard subset whose root subsystem is W-conjugate to that of ``s``."""
    return _canonical(d, levi_subset(d, s), budget)


# ---------------------------------------------------------------------------
# restriction to the center subspace V_J = X_*(Z(L)°)

@lru_cache(maxsize=None)
def _restrictor(d: RootDatum, s: LeviSubset) -> tuple[np.ndarray, np.ndarray, int]:
    """(B^T, L_num, den): for w preserving V_J, w B^T = B^T (L_num w B^T / den)."""
    b = [list(row) for row in center_subspace(d, s)]
    r = len(b)
    if r == 0:
        return np.zeros((d.rank, 0), dtype=np.int64), np.zeros((0, d.rank), dtype=np.int64), 1
    gram = [[sum(x * y for x, y in zip(u, v)) for v in b] for u in b]
    inv = rational_inverse(gram)
    left = [[sum(inv[i][t] * b[t][j] for t in range(r)) for j in range(d.rank)] for i in range(r)]
    den = 1
    for row in left:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    lnum = np.array([[int(x * den) for x in row] for row in left], dtype=np.int64)
    bt = np.array(transpose(b), dtype=np.int64)
    return bt, lnum, den


def restrict_to_center(d: RootDatum, s: Iterable[int], w: np.ndarray) -> Mat:
    """Matrix of ``w`` on the basis of X_*(Z(L)°) from :func:`center_subspace`."""
    s = levi_subset(d, s)
    bt, lnum, den = _restrictor(d, s)
    img = np.asarray(w, dtype=np.int64) @ bt
    num = lnum @ img
    if (num % den).any():
        raise ValueError("element does not preserve the center lattice")
    res = num // den
    if not np.array_equal(bt @ res, img):
        raise ValueError("element does not preserve the center subspace")
    return tuple(tuple(int(x) for x in row) for row in res)


# ---------------------------------------------------------------------------
# Coxeter classification

_EXCEPTIONAL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                       ("F", 4): 1152, ("G", 2): 12, ("H", 3): 120, ("H", 4): 14400}


def coxeter_group_order(letter: str, rank: int, m: int | None = None) -> int:
    if letter == "A":
        return factorial(rank + 1)
    if letter == "BC":
        return 2**rank * factorial(rank)
    if letter == "D":
        return 2 ** (rank - 1) * factorial(rank)
    if letter == "I":
        return 2 * m
    return _EXCEPTIONAL_ORDERS[(letter, rank)]


@dataclass(frozen=True)
class CoxeterComponent:
    letter: str            # A, BC, D, E, F, G, H or I (dihedral I2(m))
    rank: int
    nodes: tuple[int, ...]
    m: int | None = None   # only for I2(m)

    @property
    def label(self) -> str:
        if self.letter == "I":
            return f"I2({self.m})"
        return f"{self.letter}{self.rank}"

    @property
    def order(self) -> int:
        return coxeter_group_order(self.letter, self.rank, self.m)


def classify_coxeter_matrix(m: Sequence[Sequence[int]]) -> list[CoxeterComponent]:
    """Name the components of a finite Coxeter matrix; raises if not finite type."""
    n = len(m)
    adj = {i: {j for j in range(n) if j != i and m[i][j] >= 3} for i in range(n)}
    seen: set[int] = set()
    out = []
    for v in range(n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(_coxeter_component(m, adj, sorted(comp)))
    return out


def _coxeter_component(m, adj, comp) -> CoxeterComponent:
    k = len(comp)
    if k == 1:
        return CoxeterComponent("A", 1, tuple(comp))
    edges = [(i, j) for i in comp for j in adj[i] if i < j]
    if len(edges) != k - 1:
        raise dynkin.NotFiniteTypeError("Coxeter graph contains a cycle")
    labels = {(i, j): m[i][j] for i, j in edges}
    big = [(e, v) for e, v in labels.items() if v > 3]
    if k == 2:
        (i, j), v = edges[0], labels[edges[0]]
        if v == 3:
            return CoxeterComponent("A", 2, (i, j))
        if v == 4:
            return CoxeterComponent("BC", 2, (i, j))
        if v == 6:
            return CoxeterComponent("G", 2, (i, j))
        return CoxeterComponent("I", 2, (i, j), v)
    degree = {v: len(adj[v]) for v in comp}
    leaves = [v for v in comp if degree[v] == 1]
    branch = [v for v in comp if degree[v] >= 3]
    cset = set(comp)

    def path_from(start):
        path, prev = [start], None
        while True:
            nxt = [y for y in adj[path[-1]] if y != prev and y in cset]
            if not nxt:
                return path
            prev = path[-1]
            path.append(nxt[0])

    if not big and not branch:
        return CoxeterComponent("A", k, tuple(path_from(min(leaves))))
    if big:
        if branch or len(big) > 1:
            raise dynkin.NotFiniteTypeError("not a finite Coxeter graph")
        (i, j), v = big[0]
        if v == 4:
            ends = {i, j} & set(leaves)
            if ends:
                end = ends.pop()
                start = next(x for x in leaves if x != end)
                return CoxeterComponent("BC", k, tuple(path_from(start)))
            if k == 4:
                return CoxeterComponent("F", 4, tuple(path_from(min(leaves))))
        if v == 5 and k in (3, 4):
            ends = {i, j} & set(leaves)
            if ends:
                end = ends.pop()
                return CoxeterComponent("H", k, tuple(path_from(end)))
        raise dynkin.NotFiniteTypeError("not a finite Coxeter graph")
    if len(branch) != 1 or degree[branch[0]] != 3:
        raise dynkin.NotFiniteTypeError("not a finite Coxeter graph")
    b = branch[0]
    arms = []
    for start in sorted(adj[b]):
        arm, prev = [start], b
        while True:
            nxt = [y for y in adj[arm[-1]] if y != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), a[0]))
    lens = tuple(len(a) for a in arms)
    if lens[:2] == (1, 1):
        return CoxeterComponent("D", k, tuple(arms[2][::-1] + [b, arms[0][0], arms[1][0]]))
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        s_arm, m_arm, l_arm = arms
        return CoxeterComponent("E", k, tuple([m_arm[1], s_arm[0], m_arm[0], b] + l_arm))
    raise dynkin.NotFiniteTypeError(f"branch arms {lens} are not of finite type")


def coxeter_label(components: Sequence[CoxeterComponent]) -> str:
    """``A1xBC3``-style label; ``1`` for the trivial group."""
    if not components:
        return "1"
    return "x".join(sorted(c.label for c in components))


@dataclass(frozen=True)
class CoxeterType:
    components: tuple[CoxeterComponent, ...]
    crystallographic: str | None   # Dynkin label of the integral root system, if any
    order: int

    @property
    def label(self) -> str:
        return coxeter_label(self.components)

    def __str__(self) -> str:
        return self.label


def _matrix_order(a: Mat, limit: int = 1000) -> int:
    r = len(a)
    eye = _eye(r)
    p = a
    for k in range(1, limit + 1):
        if p == eye:
            return k
        p = _mm(p, a)
    raise ValueError("element of infinite (or very large) order")


class _RootSystem:
    """Roots of the reflection subgroup generated by G-conjugates of seed reflections.

    Roots are primitive vectors; ``f[beta]`` is the matching functional,
    so the reflection is ``x -> x - f(x) beta``.  ``full[beta]`` optionally
    carries the same reflection as a matrix on X_*(T).
    """

    def __init__(self, gens, seeds):
        self.r = len(gens[0][0]) if gens else (len(seeds[0][0]) if seeds else 0)
        self.f: dict[tuple, tuple] = {}
        self.full: dict[tuple, np.ndarray | None] = {}
        queue = deque()
        for beta, f, full in seeds:
            self._add(beta, f, full, queue)
        while queue:
            beta = queue.popleft()
            f, full = self.f[beta], self.full[beta]
            for g, ginv, gfull, gfull_inv in gens:
                b2 = _mv(g, beta)
                f2 = _vm(f, ginv)
                full2 = None if full is None or gfull is None else gfull @ full @ gfull_inv
                self._add(b2, f2, full2, queue)
        self.positive = sorted(self.f)
        self._simple = None

    def _add(self, beta, f, full, queue):
        if _lex_sign(beta) < 0:
            beta = tuple(-x for x in beta)
            f = tuple(-x for x in f)
        if beta not in self.f:
            self.f[beta] = f
            self.full[beta] = full
            queue.append(beta)

    def reflect(self, beta, v):
        c = sum(x * y for x, y in zip(self.f[beta], v))
        return tuple(_norm(x - c * y) for x, y in zip(v, beta))

    def matrix(self, beta) -> Mat:
        f = self.f[beta]
        r = self.r
        return tuple(tuple(_norm(int(i == j) - beta[i] * f[j]) for j in range(r)) for i in range(r))

    @property
    def simple(self) -> list[tuple]:
        if self._simple is None:
            pos = set(self.positive)
            out = []
            for beta in self.positive:
                if all(_lex_sign(self.reflect(beta, g)) > 0 for g in pos if g != beta):
                    out.append(beta)
            self._simple = out
        return self._simple

    def coxeter_matrix(self) -> list[list[int]]:
        sim = self.simple
        mats = [self.matrix(b) for b in sim]
        n = len(sim)
        m = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = m[j][i] = _matrix_order(_mm(mats[i], mats[j]))
        return m

    def crystallographic_label(self) -> str | None:
        sim = self.simple
        if not sim:
            return "1"
        a = [[sum(x * y for x, y in zip(self.f[bi], bj)) for bj in sim] for bi in sim]
        if any(isinstance(x, Fraction) and x.denominator != 1 for row in a for x in row):
            return None
        a = [[int(x) for x in row] for row in a]
        try:
            comps = dynkin.classify_cartan(a)
        except dynkin.NotFiniteTypeError:
            return None
        return "x".join(sorted(c.label for c in comps))

    def descend(self, g: Mat, gfull):
        """Multiply ``g`` on the right by reflections until it preserves the positive roots."""
        sim = self.simple
        while True:
            for beta in sim:
                if _lex_sign(_mv(g, beta)) < 0:
                    g = _mm(g, self.matrix(beta))
                    if gfull is not None:
                        gfull = gfull @ self.full[beta]
                    break
            else:
                return g, gfull


def _closure(gens: Sequence[Mat], budget: int, full: dict | None = None) -> dict[Mat, np.ndarray | None]:
    """Elements of the group generated by ``gens``; values carry X_*(T) matrices when ``full`` is given."""
    if not gens:
        return {}
    r = len(gens[0])
    eye = _eye(r)
    track = full is not None and all(full.get(g) is not None for g in gens)
    seen = {eye: (np.eye(next(iter(full.values())).shape[0], dtype=np.int64) if track else None)}
    queue = deque([eye])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _mm(g, x)
            if y not in seen:
                seen[y] = full[g] @ seen[x] if track else None
                if len(seen) > budget:
                    raise BudgetExceededError(f"group enumeration exceeds budget {budget}")
                queue.append(y)
    return seen


@dataclass
class _Structure:
    system: _RootSystem
    components: list[CoxeterComponent]
    reflection_order: int
    complement: list[Mat]
    complement_full: list
    complement_order: int


def _int_inverse(m: np.ndarray) -> np.ndarray:
    inv = unimodular_inverse(m.tolist())
    return np.array(inv, dtype=np.int64).reshape(m.shape)


def _analyze(gens_full: Sequence[tuple[Mat, np.ndarray | None]], r: int, budget: int,
             extra_seeds: Sequence = ()) -> _Structure:
    """Split <gens> as (reflection subgroup) x| (stabilizer of its positive roots)."""
    gens = []
    for g, gf in gens_full:
        ginv = _tm(rational_inverse(g)) if r else ()
        gens.append((g, ginv, gf, None if gf is None else _int_inverse(gf)))
    seeds = list(extra_seeds)
    for g, _, gf, _ in gens:
        rd = reflection_data(g)
        if rd is not None:
            seeds.append((rd[0], rd[1], gf))
    while True:
        system = _RootSystem(gens, seeds)
        comps = classify_coxeter_matrix(system.coxeter_matrix()) if system.simple else []
        order = 1
        for c in comps:
            order *= c.order
        cgens, cfull = [], {}
        for g, _, gf, _ in gens:
            c, cf = system.descend(g, gf)
            if c != _eye(r) and c not in cfull:
                cgens.append(c)
                cfull[c] = cf
        celts = _closure(cgens, budget, cfull) if cgens else {_eye(r): None}
        hidden = next(((c, rd) for c in celts if (rd := reflection_data(c)) is not None), None)
        if hidden is None:
            return _Structure(system, comps, order, cgens, [cfull[c] for c in cgens], len(celts))
        # the complement still holds a reflection: add it to the seeds and redo
        c, rd = hidden
        seeds.append((rd[0], rd[1], celts[c]))


def classify_coxeter(generators: Sequence[Sequence[Sequence]], budget: int = DEFAULT_GROUP_BUDGET) -> CoxeterType:
    """Coxeter type of the finite group generated by rational matrices.

    Enumerates the group, collects every reflection, takes the root of each
    on the lex-positive side, extracts the simple roots and matches the
    Coxeter graph.  Raises :class:`NotReflectionGroupError` if the
    reflections generate a proper subgroup.
    """
    gens = [_tm(g) for g in generators]
    r = len(gens[0]) if gens else 0
    elts = list(_closure(gens, budget)) if gens else [_eye(r)]
    seeds = []
    for e in elts:
        rd = reflection_data(e)
        if rd is not None:
            seeds.append((rd[0], rd[1], None))
    st = _analyze([(g, None) for g in gens], r, budget, extra_seeds=seeds)
    if st.complement_order != 1 or st.reflection_order != len(elts):
        raise NotReflectionGroupError(
            f"group of order {len(elts)} has reflection subgroup of order {st.reflection_order}")
    return CoxeterType(tuple(st.components), st.system.crystallographic_label(), len(elts))


# ---------------------------------------------------------------------------
# relative Weyl groups

@dataclass(frozen=True)
class RelativeWeylGroup:
    """N_W(W_L)/W_L, realized on X_*(Z(L)°) by integer matrices.

    ``generators`` are r x r matrices on the basis ``basis`` (rows, from
    :func:`center_subspace`); ``full_generators`` are the same elements as
    matrices on X_*(T).  When the group is a reflection group the generators
    are its simple reflections.
    """

    ambient: RootDatum
    levi: LeviSubset
    basis: tuple[tuple[int, ...], ...]
    generators: tuple[Mat, ...]
    full_generators: tuple[Mat, ...]
    order: int
    components: tuple[CoxeterComponent, ...]
    coxeter_type: str | None          # None when not generated by reflections
    crystallographic_type: str | None
    reflection_order: int
    method: str = field(default="groupoid", compare=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_reflection_group(self) -> bool:
        return self.coxeter_type is not None

    def elements(self, budget: int = DEFAULT_GROUP_BUDGET) -> list[Mat]:
        if self.order > budget:
            raise BudgetExceededError(f"group of order {self.order} exceeds budget {budget}")
        return list(_closure(list(self.generators), budget)) if self.generators else [_eye(self.rank)]


def _full_tuple(m: np.ndarray) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in m)


def _check_normalizes(d: RootDatum, s: LeviSubset, f: np.ndarray) -> None:
    cor = np.array([d.simple_coroots[j] for j in s], dtype=np.int64).reshape(len(s), d.rank)
    imgs = {tuple(int(x) for x in f @ c) for c in cor}
    assert imgs == {tuple(int(x) for x in c) for c in cor}, "element does not fix the Levi's simple coroots"


def schreier_generators(d: RootDatum, s: Iterable[int], budget: int = DEFAULT_BUDGET) -> list[np.ndarray]:
    """Generators of N_J read off the groupoid of elementary moves on the orbit of J."""
    s = levi_subset(d, s)
    eye = np.eye(d.rank, dtype=np.int64)
    path = {s: (eye, eye)}
    queue = deque([s])
    out: dict[bytes, np.ndarray] = {}
    while queue:
        k = queue.popleft()
        pk, pk_inv = path[k]
        for a in range(d.nsimple):
            if a in k:
                continue
            k2, _, _ = elementary_move(d, k, a)
            comp = _component_of(d, set(k) | {a}, a)
            rest = tuple(x for x in comp if x != a)
            w0c, w0r = _longest_matrix(d, comp), _longest_matrix(d, rest)
            nu, nu_inv = w0c @ w0r, w0r @ w0c
            if k2 not in path:
                path[k2] = (nu @ pk, pk_inv @ nu_inv)
                if len(path) > budget:
                    raise BudgetExceededError(f"subset orbit exceeds budget {budget}")
                queue.append(k2)
                continue
            g = path[k2][1] @ nu @ pk
            if np.array_equal(g, eye):
                continue
            out.setdefault(g.tobytes(), g)
    gens = list(out.values())
    for g in gens:
        _check_normalizes(d, s, g)
    return gens


def coset_count(d: RootDatum, s: Iterable[int]) -> int:
    return weyl_order(d) // levi_weyl_order(d, s)


def normalizer_by_cosets(d: RootDatum, s: Iterable[int], budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Words of all w in W^J with w(Delta_J) = Delta_J, by level-wise BFS of W/W_J.

    Minimal coset representatives correspond to the W-orbit of a weight
    whose stabilizer is exactly W_J; each orbit point is visited once per
    level, and the images of the Levi's simple roots ride along.
    """
    s = levi_subset(d, s)
    total = coset_count(d, s)
    if total > budget:
        raise BudgetExceededError(f"|W/W_L| = {total} exceeds budget {budget}")
    k = d.nsimple
    cart = np.array(d.cartan, dtype=np.int64).reshape(k, k)
    start = [0 if i in s else 1 for i in range(k)]
    for j in s:
        start.extend(cart[j].tolist())
    nb = 1 + len(s)
    frontier = np.array([start], dtype=np.int64)
    target = cart[list(s)] if s else np.zeros((0, k), dtype=np.int64)
    levels = []
    hits = [(0, 0)]
    seen = 1
    while True:
        children, parent, gen = _kernels.expand_frontier(frontier, cart, k, nb)
        if children.shape[0] == 0:
            break
        frontier, idx = np.unique(children, axis=0, return_index=True)
        parent, gen = parent[idx], gen[idx]
        levels.append((parent, gen))
        seen += frontier.shape[0]
        if s:
            mask = _kernels.blocks_in_target(frontier, target, k, nb)
            hits.extend((len(levels), int(i)) for i in np.nonzero(mask)[0])
    assert seen == total, f"coset BFS visited {seen} cosets, expected {total}"
    if not s:
        # every coset representative is an element of W
        raise ValueError("use the simple reflections for the empty Levi")
    words = []
    for lvl, i in hits:
        word = []
        while lvl > 0:
            parent, gen = levels[lvl - 1]
            word.append(int(gen[i]))
            i = int(parent[i])
            lvl -= 1
        words.append(tuple(word))
    return words


@lru_cache(maxsize=None)
def _relative_weyl(d: RootDatum, s: LeviSubset, method: str, budget: int) -> RelativeWeylGroup:
    basis = center_subspace(d, s)
    r = len(basis)
    if not s:
        gens_full = list(reflection_matrices(d))
        comps = []
        cart = d.cartan
        for c in d.components:
            letter = "BC" if c.letter in "BC" else c.letter
            comps.append(CoxeterComponent(letter, c.rank, c.nodes))
        order = weyl_order(d)
        return RelativeWeylGroup(
            ambient=d, levi=s, basis=basis,
            generators=tuple(restrict_to_center(d, s, g) for g in gens_full),
            full_generators=tuple(_full_tuple(g) for g in gens_full),
            order=order, components=tuple(comps), coxeter_type=coxeter_label(comps),
            crystallographic_type=dynkin.type_label(d.components) if cart else "1",
            reflection_order=order, method="simple reflections")
    if method == "groupoid":
        raw = schreier_generators(d, s, budget)
    elif method == "cosets":
        raw = [word_matrix(d, w) for w in normalizer_by_cosets(d, s, budget)]
        for g in raw:
            _check_normalizes(d, s, g)
    else:
        raise ValueError(f"unknown method {method!r}")
    pairs, seen = [], set()
    for g in raw:
        res = restrict_to_center(d, s, g)
        if res != _eye(r) and res not in seen:
            seen.add(res)
            pairs.append((res, g))
    if r == 0 or not pairs:
        return RelativeWeylGroup(d, s, basis, (), (), 1, (), "1", "1", 1, method)
    st = _analyze(pairs, r, DEFAULT_GROUP_BUDGET)
    sim = st.system.simple
    gens = [st.system.matrix(b) for b in sim] + list(st.complement)
    full = [st.system.full[b] for b in sim] + list(st.complement_full)
    order = st.reflection_order * st.complement_order
    if method == "cosets":
        assert order == len(raw), "coset enumeration and structure disagree"
    is_refl = st.complement_order == 1
    return RelativeWeylGroup(
        ambient=d, levi=s, basis=basis,
        generators=tuple(gens),
        full_generators=tuple(_full_tuple(f) for f in full),
        order=order,
        components=tuple(st.components),
        coxeter_type=coxeter_label(st.components) if is_refl else None,
        crystallographic_type=st.system.crystallographic_label() if is_refl else None,
        reflection_order=st.reflection_order,
        method=method,
    )


def relative_weyl_group(d: RootDatum, s: Iterable[int], method: str = "groupoid",
                        budget: int = DEFAULT_BUDGET) -> RelativeWeylGroup:
    """The relative Weyl group W_{L,G} = N_W(W_L)/W_L of the standard Levi ``s``."""
    return _relative_weyl(d, levi_subset(d, s), method, budget)


def enumerate_weyl_group(d: RootDatum, budget: int = DEFAULT_GROUP_BUDGET) -> list[np.ndarray]:
    """All elements of W as matrices on X_*(T) (for small groups and oracles)."""
    if weyl_order(d) > budget:
        raise BudgetExceededError(f"|W| = {weyl_order(d)} exceeds budget {budget}")
    refl = reflection_matrices(d)
    eye = np.eye(d.rank, dtype=np.int64)
    seen = {eye.tobytes(): eye}
    queue = deque([eye])
    while queue:
        x = queue.popleft()
        for m in refl:
            y = m @ x
            key = y.tobytes()
            if key not in seen:
                seen[key] = y
                queue.append(y)
    return list(seen.values())

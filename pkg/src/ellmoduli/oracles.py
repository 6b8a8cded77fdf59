"""Brute-force cross-checks for small cases.

Nothing here is clever: each oracle enumerates the whole group or the
whole point set and compares with the structured computation.
"""
from __future__ import annotations

import itertools
import random
from typing import Sequence

import numpy as np

from .lattice import invariant_factors, smith_normal_form, unimodular_matrices, matmul, determinant
from .moduli import ModuliDescriptor, describe, torsion_orbit_count
from .root_datum import RootDatum, all_roots, build_datum, fundamental_group, levi_subset, pi1_class
from .weyl import (
    canonical_levi_representative,
    enumerate_weyl_group,
    relative_weyl_group,
    restrict_to_center,
)


def stabilizer_by_enumeration(d: RootDatum, s: Sequence[int]) -> set:
    """Restrictions to X_*(Z(L)°) of all w in W with w(Delta_s) = Delta_s."""
    s = levi_subset(d, s)
    cor = {tuple(d.simple_coroots[j]) for j in s}
    out = set()
    for w in enumerate_weyl_group(d):
        imgs = {tuple(int(x) for x in w @ np.array(c, dtype=np.int64)) for c in cor}
        if imgs == cor:
            out.add(restrict_to_center(d, s, w))
    return out


def subsystem(d: RootDatum, s: Sequence[int]) -> frozenset:
    """Coroots of the root subsystem spanned by the simple roots in ``s``."""
    s = set(s)
    return frozenset(r.coroot for r in all_roots(d) if all(c == 0 or i in s for i, c in enumerate(r.coeffs)))


def canonical_by_enumeration(d: RootDatum, s: Sequence[int]) -> tuple[int, ...]:
    s = levi_subset(d, s)
    target = {}
    for k in itertools.combinations(range(d.nsimple), len(s)):
        target[subsystem(d, k)] = k
    found = set()
    base = subsystem(d, s)
    for w in enumerate_weyl_group(d):
        img = frozenset(tuple(int(x) for x in w @ np.array(c, dtype=np.int64)) for c in base)
        if img in target:
            found.add(target[img])
    return min(found)


def orbit_count_by_enumeration(gens: Sequence[Sequence[Sequence[int]]], r: int, n: int) -> int:
    """Orbits of <gens> on (Z/n)^r x (Z/n)^r by union-find over all points."""
    pts = list(itertools.product(range(n), repeat=2 * r))
    index = {p: i for i, p in enumerate(pts)}
    parent = list(range(len(pts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    mats = [np.array(g, dtype=np.int64).reshape(r, r) for g in gens]
    for p in pts:
        a, b = np.array(p[:r]), np.array(p[r:])
        for m in mats:
            q = tuple(int(x) % n for x in m @ a) + tuple(int(x) % n for x in m @ b)
            ra, rb = find(index[p]), find(index[q])
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(len(pts))})


SMALL_GROUPS = (
    "A1/sc", "A1/ad", "A2/sc", "A2/ad", "A3/sc", "A3/ad", "B2/sc", "B2/ad", "B3/sc", "B3/ad",
    "C3/sc", "C3/ad", "G2/sc", "G2/ad", "GL1", "GL2", "GL3",
    "A1/sc+A1/ad", "A1/ad+A1/ad+A1/sc", "A1/sc+A2/ad", "A1/ad+GL1", "A1/sc+GL2",
)


def check_relative_weyl(groups: Sequence[str] = SMALL_GROUPS) -> list[str]:
    """Failures of relative_weyl_group against the enumerated stabilizer (rank <= 3)."""
    bad = []
    for g in groups:
        d = build_datum(g)
        for size in range(d.nsimple + 1):
            for s in itertools.combinations(range(d.nsimple), size):
                rel = relative_weyl_group(d, s)
                got = set(rel.elements())
                want = stabilizer_by_enumeration(d, s)
                if got != want or rel.order != len(want):
                    bad.append(f"{g} {s}: order {rel.order} vs {len(want)}")
    return bad


def check_canonical(groups: Sequence[str] = ("A3/sc", "B3/ad", "C3/sc", "G2/sc", "A1/sc+A2/ad", "D4/ad")) -> list[str]:
    bad = []
    for g in groups:
        d = build_datum(g)
        for size in range(d.nsimple + 1):
            for s in itertools.combinations(range(d.nsimple), size):
                a, b = canonical_levi_representative(d, s), canonical_by_enumeration(d, s)
                if a != b:
                    bad.append(f"{g} {s}: {a} vs {b}")
    return bad


def check_burnside(descriptors: Sequence[ModuliDescriptor], max_r: int = 3, max_n: int = 4) -> list[str]:
    bad = []
    for m in descriptors:
        if m.cocenter_rank > max_r:
            continue
        for n in range(1, max_n + 1):
            a = torsion_orbit_count(m, n)
            b = orbit_count_by_enumeration(m.weyl_action, m.cocenter_rank, n) if m.cocenter_rank else 1
            if a != b:
                bad.append(f"{m.datum.name} {m.degree.coords} N={n}: {a} vs {b}")
    return bad


def check_snf(trials: int = 100, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    bad = []
    for t in range(trials):
        n = rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        base = invariant_factors(m)
        u, v = unimodular_matrices(rng, n), unimodular_matrices(rng, n)
        twisted = matmul(matmul(u, m), v)
        s, uu, vv = smith_normal_form(twisted)
        if invariant_factors(twisted) != base or matmul(matmul(uu, twisted), vv) != s:
            bad.append(f"trial {t}")
        if abs(determinant(uu)) != 1 or abs(determinant(vv)) != 1:
            bad.append(f"trial {t}: transforms not unimodular")
    return bad


def small_descriptors(groups: Sequence[str] = ("A2/ad", "B2/ad", "B3/ad", "C3/ad", "G2/sc", "GL2", "GL3", "GL4")) -> list[ModuliDescriptor]:
    out = []
    for g in groups:
        d = build_datum(g)
        pi1 = fundamental_group(d)
        classes = pi1.elements() if not pi1.free_rank else [tuple([x] + [0] * (pi1.ngens - 1)) for x in range(3)]
        for c in classes:
            out.append(describe(d, pi1_class(d, c)))
    return out


def selfcheck() -> list[tuple[str, bool, str]]:
    """Run every low-rank oracle; returns (name, passed, detail) triples."""
    results = []
    for name, fn in (
        ("smith normal form under unimodular twists", check_snf),
        ("relative Weyl group vs enumerated stabilizer", check_relative_weyl),
        ("canonical Levi representative vs enumerated orbit", check_canonical),
        ("Burnside count vs orbit enumeration", lambda: check_burnside(small_descriptors())),
    ):
        bad = fn()
        results.append((name, not bad, "; ".join(bad[:5])))
    return results

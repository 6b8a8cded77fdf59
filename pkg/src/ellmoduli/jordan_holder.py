"""The Jordan-Hoelder Levi of a topological type.

For a class lam in pi_1(G) we look for standard Levis L and classes
lam_L in pi_1(L) lifting lam with phi_L(lam_L) = phi_G(lam), such that L
carries stable bundles of type lam_L (all factors of type A with degrees
prime to their sizes).  The smallest such L is unique up to conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable

from .root_datum import (
    LeviSubset,
    Pi1Class,
    RootDatum,
    class_of_lift,
    fundamental_group,
    levi_subset,
    to_pi1_G,
)
from .slope import RationalCocharacter, coroot_coefficients, slope_G, slope_map
from .weyl import DEFAULT_BUDGET, RelativeWeylGroup, canonical_levi_representative, relative_weyl_group


class NonTypeAError(ValueError):
    """A Levi factor is not of type A."""


class UniquenessViolatedError(RuntimeError):
    """Zero or several conjugacy classes of Levis qualified."""


def adjoint_degrees(d: RootDatum, s: Iterable[int], c: Pi1Class) -> list[tuple[int, int]]:
    """``(n_i, d_i)`` for each factor A_{n_i - 1} of the Levi: the image of ``c`` in Z/n_i.

    In the adjoint A_{n-1}, X_* has the fundamental coweights as a basis and
    pi_1 = Z/n with coweight j mapping to j.  The coefficient of coweight j
    in the image of a lift is <alpha_j, lift>.
    """
    s = levi_subset(d, s)
    lam = c.lift()
    out = []
    for comp in d.levi_components(s):
        if comp.letter != "A":
            raise NonTypeAError(f"Levi factor {comp.label} is not of type A")
        n = comp.rank + 1
        total = 0
        for j, node in enumerate(comp.nodes, start=1):
            total += j * sum(a * x for a, x in zip(d.simple_roots[node], lam))
        out.append((n, total % n))
    return out


def stable_exists(d: RootDatum, s: Iterable[int], c: Pi1Class) -> bool:
    """Whether the Levi ``s`` carries stable bundles of type ``c``."""
    s = levi_subset(d, s)
    try:
        degs = adjoint_degrees(d, s, c)
    except NonTypeAError:
        return False
    return all(gcd(di, n) == 1 for n, di in degs)


@dataclass(frozen=True)
class JHResult:
    degree: Pi1Class
    levi: LeviSubset
    lambda_L: Pi1Class
    phi: RationalCocharacter
    rel_weyl: RelativeWeylGroup
    candidates_found: int


def _class_for_subset(d: RootDatum, s: LeviSubset, lam: list[int], q: list[Fraction]) -> Pi1Class | None:
    """The unique class over lam with slope phi_G on the Levi ``s``, if any.

    Lifts of lam are lam - sum m_j coroot_j.  The slope condition pins
    m_j = q_j for j outside s (q = coroot coefficients of lam - phi_G), and
    the coroots in s die in pi_1(L); so the class exists iff those q_j are
    integers, and is then unique.
    """
    mu = list(lam)
    for j in range(d.nsimple):
        if j in s:
            continue
        if q[j].denominator != 1:
            return None
        for k, v in enumerate(d.simple_coroots[j]):
            mu[k] -= int(q[j]) * v
    return class_of_lift(d, mu, s)


def jh_levi(d: RootDatum, lam_g: Pi1Class, budget: int = DEFAULT_BUDGET) -> JHResult:
    """Jordan-Hoelder Levi, its degree and relative Weyl group for the class ``lam_g``."""
    if lam_g.group != fundamental_group(d):
        raise ValueError("class does not belong to pi_1(G)")
    k = d.nsimple
    phi = slope_G(d, lam_g)
    lam = lam_g.lift()
    diff = RationalCocharacter(tuple(Fraction(x) for x in lam)) - phi
    q = coroot_coefficients(d, diff)
    assert q is not None, "lift minus slope must lie in the coroot span"
    forced = {j for j in range(k) if q[j].denominator != 1}

    survivors: list[tuple[LeviSubset, Pi1Class]] = []
    for size in range(len(forced), k + 1):
        for s in combinations(range(k), size):
            if not forced <= set(s):
                continue
            c = _class_for_subset(d, s, lam, q)
            if c is None or not stable_exists(d, s, c):
                continue
            survivors.append((s, c))
        if survivors:
            break  # only the minimal size matters

    reps = sorted({canonical_levi_representative(d, s, budget) for s, _ in survivors})
    if len(reps) != 1:
        raise UniquenessViolatedError(
            f"{len(reps)} conjugacy classes of Levis qualify for {d.name}, degree {lam_g}: {reps}")
    levi = reps[0]
    lam_l = next(c for s, c in survivors if s == levi)
    # re-verify the defining properties
    assert to_pi1_G(d, lam_l) == lam_g
    assert slope_map(d, levi, lam_l) == phi
    return JHResult(
        degree=lam_g,
        levi=levi,
        lambda_L=lam_l,
        phi=phi,
        rel_weyl=relative_weyl_group(d, levi, budget=budget),
        candidates_found=len(survivors),
    )

"""Slope maps phi_P : pi_1(P) -> X_*(T)_Q and slope comparisons."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import NoSolutionError, solve_rational, transpose
from .root_datum import Pi1Class, RootDatum, levi_pi1, levi_subset, to_pi1_G


@dataclass(frozen=True)
class RationalCocharacter:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    def __sub__(self, other: "RationalCocharacter") -> "RationalCocharacter":
        return RationalCocharacter(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def pair(self, weight: Sequence[int]) -> Fraction:
        return sum((c * w for c, w in zip(self.coords, weight)), Fraction(0))

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coords]


def slope_map(d: RootDatum, s: Iterable[int], c: Pi1Class) -> RationalCocharacter:
    """phi_P(c): the component of a lift of ``c`` central for the Levi ``s``.

    Writes a lift as phi + sum t_i coroot_i (i in s) with <alpha_j, phi> = 0
    for j in s; ``phi`` does not depend on the lift.
    """
    s = levi_subset(d, s)
    if c.group != levi_pi1(d, s):
        raise ValueError("class does not belong to pi_1 of this Levi")
    lam = c.lift()
    if not s:
        return RationalCocharacter(tuple(lam))
    cart = d.cartan
    sub = [[cart[j][i] for i in s] for j in s]
    rhs = [sum(a * x for a, x in zip(d.simple_roots[j], lam)) for j in s]
    t = solve_rational(sub, rhs)
    phi = [Fraction(x) for x in lam]
    for ti, i in zip(t, s):
        for k, v in enumerate(d.simple_coroots[i]):
            phi[k] -= ti * v
    return RationalCocharacter(tuple(phi))


def slope_G(d: RootDatum, c: Pi1Class) -> RationalCocharacter:
    """phi_G for a class of pi_1(G)."""
    return slope_map(d, range(d.nsimple), c)


def associated_bundle_slope(d: RootDatum, c: Pi1Class, weight: Sequence[int]) -> Fraction:
    """Slope of the vector bundle induced by a representation of highest weight ``weight``."""
    return slope_G(d, c).pair(weight)


def coroot_coefficients(d: RootDatum, v: RationalCocharacter) -> list[Fraction] | None:
    """Coefficients of ``v`` on the simple coroots, or None if ``v`` is outside their span."""
    if not d.nsimple:
        return [] if not any(v.coords) else None
    try:
        return solve_rational(transpose(d.simple_coroots), list(v.coords))
    except NoSolutionError:
        return None


def dominance_leq(d: RootDatum, a: RationalCocharacter, b: RationalCocharacter) -> bool:
    """a <= b iff b - a is a nonnegative rational combination of simple coroots."""
    coeffs = coroot_coefficients(d, b - a)
    return coeffs is not None and all(x >= 0 for x in coeffs)


def dominance_lt(d: RootDatum, a: RationalCocharacter, b: RationalCocharacter) -> bool:
    return a != b and dominance_leq(d, a, b)


VIOLATES = "violates_stability"
BOUNDARY = "boundary"
COMPATIBLE = "compatible"


def check_reduction(d: RootDatum, s: Iterable[int], lam_p: Pi1Class, lam_g: Pi1Class) -> str:
    """Compare phi_P(lam_p) with phi_G(lam_g).

    ``boundary`` on equality, ``violates_stability`` when phi_P is strictly
    above phi_G, ``compatible`` otherwise (strictly below or incomparable).
    """
    s = levi_subset(d, s)
    if to_pi1_G(d, lam_p) != lam_g:
        raise ValueError("the Levi class does not map to the given class of pi_1(G)")
    phi_p = slope_map(d, s, lam_p)
    phi_g = slope_G(d, lam_g)
    if phi_p == phi_g:
        return BOUNDARY
    if dominance_leq(d, phi_g, phi_p):
        return VIOLATES
    return COMPATIBLE

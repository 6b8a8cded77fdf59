"""Semistable principal bundles on an elliptic curve, combinatorially.

Given a reductive group (as a root datum) and a topological type in
pi_1(G), compute the Jordan-Hoelder Levi, its relative Weyl group and the
description M_G^d = (E (x) X_*(C_d)) / W_d of the moduli space.
"""
from .jordan_holder import JHResult, adjoint_degrees, jh_levi, stable_exists
from .lattice import FinAbGroup, hermite_normal_form, quotient_presentation, smith_normal_form, solve_rational
from .moduli import ModuliDescriptor, appendix_rows, describe, render_table, torsion_orbit_count
from .root_datum import (
    Pi1Class,
    RootDatum,
    all_roots,
    build_datum,
    center_subspace,
    class_of_lift,
    cocenter,
    fundamental_group,
    levi_pi1,
    pi1_class,
)
from .slope import RationalCocharacter, associated_bundle_slope, check_reduction, dominance_leq, slope_map
from .weyl import (
    RelativeWeylGroup,
    canonical_levi_representative,
    classify_coxeter,
    relative_weyl_group,
    weyl_order,
)

__version__ = "0.1.0"

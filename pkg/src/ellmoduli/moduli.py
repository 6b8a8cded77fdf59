"""Moduli descriptors M_G^d = (E (x) X_*(C_d)) / W_d and the Appendix table.

The elliptic curve E stays symbolic.  Finite checks use E[N] = (Z/N)^2,
valid away from the characteristic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .jordan_holder import JHResult, jh_levi
from .root_datum import (
    Pi1Class,
    RootDatum,
    build_datum,
    class_of_lift,
    cocenter,
    fundamental_group,
    levi_name,
    pi1_class,
)
from .weyl import DEFAULT_BUDGET, DEFAULT_GROUP_BUDGET, BudgetExceededError, Mat, _closure, _eye
from .dynkin import type_label


@dataclass(frozen=True)
class ModuliDescriptor:
    datum: RootDatum
    jh: JHResult
    cocenter_rank: int
    det_lambda: tuple[int, ...]
    weyl_action: tuple[Mat, ...]
    order: int
    coxeter_type: str | None
    crystallographic_type: str | None
    det_invariant: bool

    @property
    def dimension(self) -> int:
        return self.cocenter_rank

    @property
    def degree(self) -> Pi1Class:
        return self.jh.degree

    @property
    def levi(self) -> tuple[int, ...]:
        return self.jh.levi

    @property
    def levi_type(self) -> str:
        return type_label(self.datum.levi_components(self.levi))

    @property
    def levi_name(self) -> str:
        return levi_name(self.datum, self.levi)

    @property
    def weyl_label(self) -> str:
        if self.coxeter_type is None:
            return f"non-reflection group of order {self.order}"
        return self.coxeter_type

    @property
    def display(self) -> str:
        return f"E^{self.cocenter_rank} / W({self.weyl_label})"

    def text(self) -> str:
        lam = "(" + ",".join(str(x) for x in self.jh.lambda_L.coords) + ")"
        return f"{self.display}  [L = {self.levi_name}, lambda_L = {lam}]"

    def to_json(self) -> dict:
        return {
            "group": self.datum.spec,
            "degree": list(self.degree.coords),
            "levi": {"indices": [i + 1 for i in self.levi], "type": self.levi_type},
            "lambda_L": list(self.jh.lambda_L.coords),
            "cocenter_rank": self.cocenter_rank,
            "det_lambda": list(self.det_lambda),
            "weyl": {
                "order": self.order,
                "coxeter_type": self.coxeter_type,
                "crystallographic_type": self.crystallographic_type,
                "generators": [[list(row) for row in g] for g in self.weyl_action],
            },
            "display": self.display,
        }


def _action_on_cocenter(d: RootDatum, levi, full: Mat) -> Mat:
    cc = cocenter(d, levi)
    p = np.array(cc.det_map, dtype=np.int64).reshape(cc.rank, d.rank)
    sec = np.array(cc.group.section, dtype=np.int64).reshape(d.rank, cc.rank)
    w = np.array(full, dtype=np.int64)
    if cc.saturated_coroots:
        sat = np.array(cc.saturated_coroots, dtype=np.int64).T
        if (p @ w @ sat).any():
            raise AssertionError("non-integral action: W_d does not preserve the derived subgroup")
    m = p @ w @ sec
    return tuple(tuple(int(x) for x in row) for row in m)


def describe(d: RootDatum, lam_g: Pi1Class, budget: int = DEFAULT_BUDGET) -> ModuliDescriptor:
    """M_G^{lam_g} as E^r / W_d with W_d acting on X_*(C_d), C_d = L/[L,L]."""
    jh = jh_levi(d, lam_g, budget)
    cc = cocenter(d, jh.levi)
    det = cc.det(jh.lambda_L.lift())
    action = tuple(_action_on_cocenter(d, jh.levi, g) for g in jh.rel_weyl.full_generators)
    invariant = all(tuple(sum(a * x for a, x in zip(row, det)) for row in g) == tuple(det) for g in action)
    return ModuliDescriptor(
        datum=d,
        jh=jh,
        cocenter_rank=cc.rank,
        det_lambda=tuple(det),
        weyl_action=action,
        order=jh.rel_weyl.order,
        coxeter_type=jh.rel_weyl.coxeter_type,
        crystallographic_type=jh.rel_weyl.crystallographic_type,
        det_invariant=invariant,
    )


def group_elements(m: ModuliDescriptor, budget: int = DEFAULT_GROUP_BUDGET) -> list[Mat]:
    """All elements of W_d as matrices on X_*(C_d)."""
    if m.order > budget:
        raise BudgetExceededError(f"|W_d| = {m.order} exceeds budget {budget}")
    if not m.weyl_action:
        return [_eye(m.cocenter_rank)]
    return list(_closure(list(m.weyl_action), budget))


def torsion_orbit_count(m: ModuliDescriptor, n: int, budget: int = DEFAULT_GROUP_BUDGET) -> int:
    """Number of W_d-orbits on (E[n])^r = (Z/n)^{2r}, by Burnside."""
    if n < 1:
        raise ValueError("N must be >= 1")
    r = m.cocenter_rank
    if r == 0 or n == 1:
        return 1
    elts = group_elements(m, budget)
    assert len(elts) == m.order, "W_d action generates a group of the wrong order"
    eye = np.eye(r, dtype=np.int64)
    mats = np.array([np.array(g, dtype=np.int64) - eye for g in elts], dtype=np.int64)
    sizes = _kernels.kernel_sizes_mod(mats, n)
    total = sum(int(x) ** 2 for x in sizes)
    assert total % len(elts) == 0
    return total // len(elts)


# ---------------------------------------------------------------------------
# the Appendix table

@dataclass(frozen=True)
class AppendixRow:
    """One row of the Appendix: group, degree label, and the published entries."""

    group: str                    # shorthand, e.g. "B5/ad" or "GL6"
    label: str                    # degree as printed in the table
    lift: tuple[int, ...]         # a cocharacter representing the degree
    levi_type: str                # published Levi type, as a Dynkin label
    weyl_type: str                # published type of W_{L,G} (B/C merged, rank 1 -> A1)
    weyl_type_printed: str        # the type exactly as printed
    diagram: tuple[int, ...]      # marked nodes of the published diagram (0-based)


def _merge(letter: str, rank: int) -> str:
    if rank == 0:
        return "1"
    if letter in "BC":
        return "A1" if rank == 1 else f"BC{rank}"
    return f"{letter}{rank}"


def _a1s(count: int, extra: Sequence[str] = ()) -> str:
    return "x".join(sorted(["A1"] * count + list(extra)))


def _coweight(rank: int, node: int) -> tuple[int, ...]:
    # adjoint forms use the fundamental coweights as the basis of X_*
    return tuple(int(i == node - 1) for i in range(rank))


def appendix_rows(max_rank: int | None = None, gl_max: int = 12) -> list[AppendixRow]:
    """Rows of the Appendix at the default ranks (B3..B8, C4..C9, D5..D10, E6, E7, GL_n for n <= 12)."""
    rows: list[AppendixRow] = []
    for n in range(1, gl_max + 1):
        for dd in range(n):
            e = gcd(n, dd)
            block = n // e
            levi = "T" if block == 1 else "x".join([f"A{block - 1}"] * e)
            lift = tuple(int(i == 0) * dd for i in range(n))
            rows.append(AppendixRow(f"GL{n}", str(dd), lift, levi, _merge("A", e - 1),
                                    f"A{e - 1}", tuple(i for i in range(n - 1) if (i + 1) % block)))
    for n in range(3, 9):
        rows.append(AppendixRow(f"B{n}/ad", "1", _coweight(n, 1), "A1", _merge("C", n - 1),
                                f"C{n - 1}", (n - 1,)))
    for rank in range(4, 10):
        half = rank // 2
        count = half if rank % 2 == 0 else half + 1
        marked = tuple(range(0, rank, 2))
        rows.append(AppendixRow(f"C{rank}/ad", "1", _coweight(rank, rank), _a1s(count),
                                _merge("C", half), f"C{half}", marked))
    for rank in (5, 7, 9):
        n = (rank - 1) // 2
        odd = tuple(range(0, 2 * n - 3, 2))
        rows.append(AppendixRow(f"D{rank}/ad", "1", _coweight(rank, rank), _a1s(n - 1, ["A3"]),
                                _merge("C", n - 1), f"C{n - 1}", odd + (2 * n - 2, 2 * n - 1, 2 * n)))
        rows.append(AppendixRow(f"D{rank}/ad", "2", _coweight(rank, 1), "A1xA1",
                                _merge("C", n - 1), f"C{n - 1}", (2 * n - 1, 2 * n)))
    for rank in (6, 8, 10):
        n = rank // 2
        odd = tuple(range(0, 2 * n - 3, 2))
        # (1,0) and (1,1) are the two half-spin classes; the table tells them
        # apart only through their diagrams, which pins (1,0) to the coweight
        # at node 2n-1 for odd n and at node 2n for even n
        spin_10, spin_11 = (rank - 1, rank) if n % 2 else (rank, rank - 1)
        rows.append(AppendixRow(f"D{rank}/ad", "(1,0)", _coweight(rank, spin_10), _a1s(n),
                                _merge("B", n), f"B{n}", odd + (2 * n - 2,)))
        rows.append(AppendixRow(f"D{rank}/ad", "(0,1)", _coweight(rank, 1), "A1xA1",
                                _merge("C", 2 * n - 2), f"C{2 * n - 2}", (2 * n - 2, 2 * n - 1)))
        rows.append(AppendixRow(f"D{rank}/ad", "(1,1)", _coweight(rank, spin_11), _a1s(n),
                                _merge("C", n), f"C{n}", odd + (2 * n - 1,)))
    rows.append(AppendixRow("E6/ad", "1", _coweight(6, 1), "A2xA2", "G2", "G2", (0, 2, 4, 5)))
    rows.append(AppendixRow("E7/ad", "1", _coweight(7, 7), "A1xA1xA1", "F4", "F4", (1, 4, 6)))
    if max_rank is not None:
        rows = [r for r in rows if build_datum(r.group).nsimple <= max_rank]
    return rows


@dataclass(frozen=True)
class TableRequest:
    group: str | dict
    degree: tuple[int, ...] | None = None     # coordinates in pi_1(G)
    lift: tuple[int, ...] | None = None       # or a cocharacter lift
    label: str | None = None

    def resolve(self) -> tuple[RootDatum, Pi1Class]:
        d = build_datum(self.group)
        if self.lift is not None:
            return d, class_of_lift(d, self.lift)
        return d, pi1_class(d, self.degree if self.degree is not None else fundamental_group(d).zero())


def appendix_requests(max_rank: int | None = None, gl_max: int = 12) -> list[TableRequest]:
    return [TableRequest(r.group, lift=r.lift, label=r.label) for r in appendix_rows(max_rank, gl_max)]


COLUMNS = ("G", "degree", "Levi type", "Coxeter type", "r", "|W|")


def table_rows(requests: Iterable[TableRequest], budget: int = DEFAULT_BUDGET) -> list[dict]:
    out = []
    for req in requests:
        try:
            name = build_datum(req.group).name
        except Exception:
            name = req.group if isinstance(req.group, str) else json.dumps(req.group, sort_keys=True)
        row = {"G": name, "degree": req.label}
        try:
            d, lam = req.resolve()
            if row["degree"] is None:
                row["degree"] = "(" + ",".join(map(str, lam.coords)) + ")"
            m = describe(d, lam, budget)
            row.update({
                "Levi type": m.levi_type,
                "Coxeter type": m.weyl_label,
                "r": m.cocenter_rank,
                "|W|": m.order,
                "error": None,
            })
        except Exception as exc:  # one bad row must not sink the table
            row.update({c: None for c in COLUMNS[2:]})
            row["error"] = f"{type(exc).__name__}: {exc}"
        out.append(row)
    return out


def render_table(requests: Iterable[TableRequest], fmt: str = "markdown", budget: int = DEFAULT_BUDGET) -> str:
    rows = table_rows(requests, budget)
    if fmt == "json":
        return json.dumps(rows, indent=2)
    cols = list(COLUMNS)
    if any(r["error"] for r in rows):
        cols.append("error")
    cells = [[("" if r.get(c) is None else str(r.get(c))) for c in cols] for r in rows]
    if fmt == "markdown":
        head = [c.replace("|", "\\|") for c in cols]
        lines = ["| " + " | ".join(head) + " |", "|" + "|".join("---" for _ in cols) + "|"]
        lines += ["| " + " | ".join(c) + " |" for c in cells]
        return "\n".join(lines)
    if fmt == "text":
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
        return "\n".join(line.rstrip() for line in lines)
    raise ValueError(f"unknown format {fmt!r}")

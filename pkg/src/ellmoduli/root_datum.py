"""Root data of reductive groups and the lattices attached to their Levis.

Coordinates: characters and cocharacters are integer vectors in fixed bases
of X^*(T) and X_*(T), paired by the dot product.  Levi subsets are sorted
tuples of 0-based simple-root indices (the CLI and JSON output shift to the
1-based Bourbaki numbering).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import dynkin
from .lattice import (
    FinAbGroup,
    as_tuple_matrix,
    identity,
    integer_kernel,
    matmul,
    quotient_presentation,
    rank as matrix_rank,
    saturation,
    transpose,
)

LeviSubset = tuple[int, ...]


class GroupSpecError(ValueError):
    """Malformed or unsupported group specification."""


@dataclass(frozen=True)
class NodeLabel:
    factor: int        # index of the simple factor
    letter: str
    factor_rank: int
    node: int          # Bourbaki node number inside the factor (1-based)


@dataclass(frozen=True)
class RootDatum:
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    rank: int
    labels: tuple[NodeLabel, ...]
    name: str = "custom"
    spec: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return _cartan(self)

    @property
    def components(self) -> list[dynkin.Component]:
        return _components(self, tuple(range(self.nsimple)))

    def levi_components(self, s: Iterable[int]) -> list[dynkin.Component]:
        return _components(self, levi_subset(self, s))

    @property
    def is_gl(self) -> bool:
        return self.spec.get("type") == "GL"

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def _cartan(d: RootDatum) -> tuple[tuple[int, ...], ...]:
    if not d.simple_roots:
        return ()
    return as_tuple_matrix(matmul(d.simple_roots, transpose(d.simple_coroots)))


@lru_cache(maxsize=None)
def _components_cached(d: RootDatum, s: LeviSubset) -> tuple[dynkin.Component, ...]:
    return tuple(dynkin.classify_cartan(d.cartan, s))


def _components(d: RootDatum, s: LeviSubset) -> list[dynkin.Component]:
    return list(_components_cached(d, s))


def levi_subset(d: RootDatum, s: Iterable[int]) -> LeviSubset:
    out = tuple(sorted(set(int(i) for i in s)))
    if out and (out[0] < 0 or out[-1] >= d.nsimple):
        raise ValueError(f"Levi subset {out} out of range for {d.nsimple} simple roots")
    return out


# ---------------------------------------------------------------------------
# construction

def _simple_type(letter: str, rank: int, isogeny: str) -> tuple[list, list]:
    a = dynkin.cartan_matrix(letter, rank)
    if isogeny == "sc":
        # X_* spanned by the simple coroots; X^* is the weight lattice
        return a, identity(rank)
    if isogeny == "ad":
        # X^* spanned by the simple roots; X_* is the coweight lattice
        return identity(rank), transpose(a)
    raise GroupSpecError(f"unknown isogeny {isogeny!r} (expected 'sc' or 'ad')")


def _gl(n: int) -> tuple[list, list]:
    rows = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        rows.append(v)
    return rows, [list(r) for r in rows]


def _block_diag(blocks: Sequence[tuple[list, list, int]]) -> tuple[list, list, int]:
    total = sum(b[2] for b in blocks)
    roots, coroots = [], []
    off = 0
    for r, c, n in blocks:
        for row in r:
            roots.append([0] * off + list(row) + [0] * (total - off - n))
        for row in c:
            coroots.append([0] * off + list(row) + [0] * (total - off - n))
        off += n
    return roots, coroots, total


def build_datum(spec: dict | str) -> RootDatum:
    """Build a root datum from a JSON-style specification or shorthand string."""
    if isinstance(spec, str):
        spec = parse_group(spec)
    roots, coroots, rank, name = _build_parts(spec)
    return _finish(roots, coroots, rank, name, spec)


def _build_parts(spec: dict) -> tuple[list, list, int, str]:
    if not isinstance(spec, dict):
        raise GroupSpecError(f"group specification must be an object, got {spec!r}")
    if "product" in spec:
        parts = [_build_parts(p) for p in spec["product"]]
        if not parts:
            raise GroupSpecError("empty product")
        roots, coroots, total = _block_diag([(r, c, n) for r, c, n, _ in parts])
        return roots, coroots, total, " x ".join(p[3] for p in parts)
    if "custom" in spec:
        c = spec["custom"]
        roots = [list(map(int, r)) for r in c.get("simple_roots", [])]
        coroots = [list(map(int, r)) for r in c.get("simple_coroots", [])]
        rank = int(c.get("rank", len(roots[0]) if roots else 0))
        if len(roots) != len(coroots):
            raise GroupSpecError("need as many simple coroots as simple roots")
        if any(len(r) != rank for r in roots + coroots):
            raise GroupSpecError("root/coroot vectors must all have length rank")
        return roots, coroots, rank, "custom"
    kind = str(spec.get("type", "")).upper()
    if kind == "GL":
        n = int(spec.get("n", spec.get("rank", 0)))
        if n < 1:
            raise GroupSpecError("GL(n) needs n >= 1")
        r, c = _gl(n)
        return r, c, n, f"GL{n}"
    if kind in dynkin.TYPE_RANGES:
        rank = int(spec.get("rank", 0))
        isogeny = spec.get("isogeny", "sc")
        try:
            dynkin.check_type(kind, rank)
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from None
        r, c = _simple_type(kind, rank, isogeny)
        return r, c, rank, f"{kind}{rank}/{isogeny}"
    raise GroupSpecError(f"cannot interpret group specification {spec!r}")


def _finish(roots, coroots, rank, name, spec) -> RootDatum:
    k = len(roots)
    if k and (matrix_rank(roots) != k or matrix_rank(coroots) != k):
        raise GroupSpecError("simple roots and simple coroots must be linearly independent")
    cartan = matmul(roots, transpose(coroots)) if k else []
    try:
        comps = dynkin.classify_cartan(cartan) if k else []
    except dynkin.NotFiniteTypeError as exc:
        raise GroupSpecError(f"Cartan matrix is not of finite type: {exc}") from None
    labels: list[NodeLabel | None] = [None] * k
    for f, comp in enumerate(comps):
        for pos, node in enumerate(comp.nodes):
            labels[node] = NodeLabel(f, comp.letter, comp.rank, pos + 1)
    return RootDatum(
        simple_roots=as_tuple_matrix(roots),
        simple_coroots=as_tuple_matrix(coroots),
        rank=rank,
        labels=tuple(labels),
        name=name,
        spec=spec,
    )


_SHORT = re.compile(r"^(P?GL|SL|[A-G])(\d+)(?:/(sc|ad))?$", re.IGNORECASE)


def parse_group(text: str, default_isogeny: str = "ad") -> dict:
    """Parse shorthand like ``B5/ad``, ``GL6``, ``E7``, ``A1/sc+GL2`` or JSON."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupSpecError(f"bad JSON group specification: {exc}") from None
    parts = [p.strip() for p in text.split("+")]
    specs = []
    for p in parts:
        m = _SHORT.match(p.replace(" ", ""))
        if not m:
            raise GroupSpecError(f"cannot parse group shorthand {p!r}")
        kind, num, iso = m.group(1).upper(), int(m.group(2)), m.group(3)
        if kind == "GL":
            specs.append({"type": "GL", "n": num})
        elif kind in ("SL", "PGL"):
            if num < 2:
                raise GroupSpecError(f"{kind}{num} has no roots; use GL{num}")
            specs.append({"type": "A", "rank": num - 1, "isogeny": "sc" if kind == "SL" else "ad"})
        else:
            specs.append({"type": kind, "rank": num, "isogeny": (iso or default_isogeny).lower()})
    return specs[0] if len(specs) == 1 else {"product": specs}


# ---------------------------------------------------------------------------
# roots

@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]          # in the basis of simple roots
    coroot_coeffs: tuple[int, ...]   # in the basis of simple coroots
    root: tuple[int, ...]            # X^*(T) coordinates
    coroot: tuple[int, ...]          # X_*(T) coordinates

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs)


@lru_cache(maxsize=None)
def all_roots(d: RootDatum) -> tuple[Root, ...]:
    """Every root with its coroot, positive roots first (by height)."""
    k = d.nsimple
    a = d.cartan
    start = []
    for i in range(k):
        e = tuple(int(j == i) for j in range(k))
        start.append((e, e))
    seen = {c: dc for c, dc in start}
    frontier = list(start)
    while frontier:
        nxt = []
        for c, dc in frontier:
            for j in range(k):
                pc = sum(c[i] * a[i][j] for i in range(k))
                pd = sum(dc[i] * a[j][i] for i in range(k))
                c2 = tuple(x - pc * (i == j) for i, x in enumerate(c))
                d2 = tuple(x - pd * (i == j) for i, x in enumerate(dc))
                if c2 not in seen:
                    seen[c2] = d2
                    nxt.append((c2, d2))
        frontier = nxt
    out = []
    for c, dc in seen.items():
        root = tuple(sum(c[i] * d.simple_roots[i][t] for i in range(k)) for t in range(d.rank))
        coroot = tuple(sum(dc[i] * d.simple_coroots[i][t] for i in range(k)) for t in range(d.rank))
        out.append(Root(c, dc, root, coroot))
    out.sort(key=lambda r: (not r.positive, abs(sum(r.coeffs)), r.coeffs))
    return tuple(out)


def positive_roots(d: RootDatum) -> tuple[Root, ...]:
    return tuple(r for r in all_roots(d) if r.positive)


# ---------------------------------------------------------------------------
# fundamental groups, centers, cocenters

@lru_cache(maxsize=None)
def fundamental_group(d: RootDatum) -> FinAbGroup:
    """pi_1 = X_*(T) / <coroots>."""
    return quotient_presentation(d.rank, d.simple_coroots)


@lru_cache(maxsize=None)
def levi_pi1(d: RootDatum, s: LeviSubset) -> FinAbGroup:
    s = levi_subset(d, s)
    return quotient_presentation(d.rank, [d.simple_coroots[i] for i in s])


@dataclass(frozen=True)
class Pi1Class:
    group: FinAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", self.group.reduce(self.coords))

    @classmethod
    def from_lift(cls, group: FinAbGroup, lift: Sequence[int]) -> "Pi1Class":
        return cls(group, group.project(lift))

    def lift(self) -> list[int]:
        return self.group.lift(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def pi1_class(d: RootDatum, coords: Sequence[int], s: Iterable[int] | None = None) -> Pi1Class:
    """Class with the given coordinates in pi_1(G) (or pi_1 of the Levi ``s``)."""
    group = fundamental_group(d) if s is None else levi_pi1(d, levi_subset(d, s))
    return Pi1Class(group, tuple(coords))


def class_of_lift(d: RootDatum, lift: Sequence[int], s: Iterable[int] | None = None) -> Pi1Class:
    group = fundamental_group(d) if s is None else levi_pi1(d, levi_subset(d, s))
    return Pi1Class.from_lift(group, lift)


def to_pi1_G(d: RootDatum, c: Pi1Class) -> Pi1Class:
    """Image under the natural surjection pi_1(L) -> pi_1(G)."""
    return Pi1Class.from_lift(fundamental_group(d), c.lift())


@lru_cache(maxsize=None)
def center_subspace(d: RootDatum, s: LeviSubset) -> tuple[tuple[int, ...], ...]:
    """Basis (rows) of X_*(Z(L)°): cocharacters killed by the Levi's simple roots.

    The basis is a Z-basis of the saturated lattice, so it also spans the
    rational subspace.
    """
    s = levi_subset(d, s)
    if not s:
        return as_tuple_matrix(identity(d.rank))
    return as_tuple_matrix(integer_kernel([d.simple_roots[i] for i in s], d.rank))


@dataclass(frozen=True)
class Cocenter:
    """X_*(L/[L,L]) as a free quotient of X_*(T); ``det_map`` is the projection."""

    group: FinAbGroup
    saturated_coroots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return self.group.free_rank

    @property
    def det_map(self) -> tuple[tuple[int, ...], ...]:
        return self.group.projection

    def det(self, lift: Sequence[int]) -> tuple[int, ...]:
        return self.group.project(lift)


@lru_cache(maxsize=None)
def cocenter(d: RootDatum, s: LeviSubset) -> Cocenter:
    s = levi_subset(d, s)
    sat = saturation([d.simple_coroots[i] for i in s], d.rank) if s else []
    group = quotient_presentation(d.rank, sat)
    assert not group.torsion
    return Cocenter(group, as_tuple_matrix(sat))


def gl_blocks(d: RootDatum, s: LeviSubset) -> list[int]:
    """Block sizes of the standard Levi of GL_n given by ``s``."""
    n = d.rank
    sizes, cur = [], 1
    for i in range(n - 1):
        if i in s:
            cur += 1
        else:
            sizes.append(cur)
            cur = 1
    sizes.append(cur)
    return sizes


def levi_name(d: RootDatum, s: Iterable[int]) -> str:
    s = levi_subset(d, s)
    if d.is_gl:
        return " x ".join(f"GL{b}" for b in gl_blocks(d, s))
    return dynkin.type_label(d.levi_components(s))


def datum_type_label(d: RootDatum, merge_bc: bool = True) -> str:
    return dynkin.type_label(d.components, merge_bc=merge_bc)

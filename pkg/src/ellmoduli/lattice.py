"""Exact integer and rational linear algebra.

Matrices are lists of rows of Python ints (or ``Fraction`` for the rational
helpers).  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

IntMatrix = list[list[int]]


class NoSolutionError(ValueError):
    """Raised when a linear system has no (rational) solution."""


# ---------------------------------------------------------------------------
# small helpers

def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def copy_matrix(m: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in m]


def transpose(m: Sequence[Sequence], cols: int | None = None) -> list[list]:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(a[0])
    if inner == 0:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def as_tuple_matrix(m: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(tuple(row) for row in m)


def is_identity(m: Sequence[Sequence]) -> bool:
    return all(m[i][j] == (i == j) for i in range(len(m)) for j in range(len(m[i])))


def determinant(m: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant by fraction-based Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det) if det.denominator == 1 else det


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms

def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``h = u @ m``, ``u`` unimodular, and ``h`` in
    row-echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.
    """
    h = copy_matrix(m)
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # gcd-combine every row below r into row r
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            hr, hi = h[r], h[i]
            h[r] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [p * t - q * s for s, t in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [p * t - q * s for s, t in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def is_hermite_normal_form(h: Sequence[Sequence[int]]) -> bool:
    last = -1
    zero_seen = False
    for i, row in enumerate(h):
        nz = next((j for j, x in enumerate(row) if x != 0), None)
        if nz is None:
            zero_seen = True
            continue
        if zero_seen or nz <= last or row[nz] <= 0:
            return False
        if any(not 0 <= h[k][nz] < row[nz] for k in range(i)):
            return False
        last = nz
    return True


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``s = u @ m @ v`` with a divisibility chain.

    Diagonal entries are nonnegative, nonzero ones come first, and each one
    divides the next.  ``u`` and ``v`` are unimodular.
    """
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def combine_rows(i, j, x, y, p, q):
        # row_i <- x*row_i + y*row_j ; row_j <- -q*row_i + p*row_j  (det = 1)
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * s + y * t for s, t in zip(ri, rj)]
            mat[j] = [p * t - q * s for s, t in zip(ri, rj)]

    def combine_cols(i, j, x, y, p, q):
        for mat in (a, v):
            for row in mat:
                s, t = row[i], row[j]
                row[i] = x * s + y * t
                row[j] = p * t - q * s

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, rows):
                if a[i][t] % a[t][t] == 0:
                    f = a[i][t] // a[t][t]
                    if f:
                        combine_rows(i, t, 1, -f, 1, 0)
                elif a[i][t]:
                    g, x, y = _xgcd(a[t][t], a[i][t])
                    combine_rows(t, i, x, y, a[t][t] // g, a[i][t] // g)
                    changed = True
            for j in range(t + 1, cols):
                if a[t][j] % a[t][t] == 0:
                    f = a[t][j] // a[t][t]
                    if f:
                        combine_cols(j, t, 1, -f, 1, 0)
                elif a[t][j]:
                    g, x, y = _xgcd(a[t][t], a[t][j])
                    combine_cols(t, j, x, y, a[t][t] // g, a[t][j] // g)
                    changed = True
            if changed:
                continue
            piv = a[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # fold the offending row into the pivot row and repeat
            a[t] = [s + w for s, w in zip(a[t], a[bad])]
            u[t] = [s + w for s, w in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith diagonal entries (including 1s)."""
    s, _, _ = smith_normal_form(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def unimodular_inverse(u: Sequence[Sequence[int]]) -> IntMatrix:
    inv = rational_inverse(u)
    out = [[int(x) for x in row] for row in inv]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return out


# ---------------------------------------------------------------------------
# rational linear algebra

def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def rational_kernel(m: Sequence[Sequence], cols: int | None = None) -> list[list[Fraction]]:
    """Basis (as rows) of {x : m x = 0} over Q."""
    n = cols if cols is not None else (len(m[0]) if m else 0)
    if not m:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    a, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -a[r][f]
        basis.append(x)
    return basis


def rational_inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in a[:n]]


def solve_rational(m: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Exact solution of ``m x = b``.

    When the solution set is an affine space of positive dimension, the
    minimal-norm solution (the one orthogonal to ``ker m`` for the standard
    inner product) is returned.  Raises :class:`NoSolutionError` when ``b``
    is not in the column space of ``m``.
    """
    rows = len(m)
    if rows != len(b):
        raise ValueError("dimension mismatch")
    n = len(m[0]) if rows else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if n in pivots:
        raise NoSolutionError("right-hand side is not in the image")
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = a[r][n]
    kernel = rational_kernel(m, n)
    if kernel:
        # x <- x - K^T (K K^T)^{-1} K x
        gram = [[dot(u, w) for w in kernel] for u in kernel]
        rhs = [dot(u, x) for u in kernel]
        coeffs = matvec(rational_inverse(gram), rhs)
        for c, u in zip(coeffs, kernel):
            x = [xi - c * ui for xi, ui in zip(x, u)]
    return x


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def integer_kernel(m: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Z-basis (rows, in Hermite form) of the saturated lattice {x in Z^n : m x = 0}."""
    n = cols if cols is not None else (len(m[0]) if m else 0)
    if not m:
        return identity(n)
    s, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(len(s), n)) if s[i][i])
    basis = [[v[i][j] for i in range(n)] for j in range(r, n)]
    if not basis:
        return []
    h, _ = hermite_normal_form(basis)
    return [row for row in h if any(row)]


def saturation(gens: Sequence[Sequence[int]], ambient_rank: int) -> IntMatrix:
    """Z-basis of (Q-span of gens) ∩ Z^n."""
    if not gens or not any(any(r) for r in gens):
        return []
    ann = integer_kernel(gens, ambient_rank)
    if not ann:
        return identity(ambient_rank)
    return integer_kernel(ann, ambient_rank)


# ---------------------------------------------------------------------------
# finitely generated abelian groups

@dataclass(frozen=True)
class FinAbGroup:
    """``Z^free_rank ⊕ ⊕ Z/d_i`` presented as a quotient of ``Z^ambient_rank``.

    ``projection`` has one row per coordinate (torsion coordinates first,
    then free ones); applying it to an ambient vector gives that vector's
    class.  ``section`` columns are lifts of the unit coordinate vectors.
    """

    ambient_rank: int
    torsion: tuple[int, ...]
    free_rank: int
    projection: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def order(self) -> int | None:
        return None if self.free_rank else prod(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        k = len(self.torsion)
        return tuple(
            int(c) % self.torsion[i] if i < k else int(c) for i, c in enumerate(coords)
        )

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.reduce(matvec(self.projection, x))

    def lift(self, coords: Sequence[int]) -> list[int]:
        coords = self.reduce(coords)
        return [sum(row[i] * c for i, c in enumerate(coords)) for row in self.section]

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def elements(self) -> list[tuple[int, ...]]:
        if self.free_rank:
            raise ValueError("infinite group")
        from itertools import product

        return [tuple(c) for c in product(*(range(d) for d in self.torsion))]

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "torsion": list(self.torsion),
            "free_rank": self.free_rank,
            "projection": [list(r) for r in self.projection],
        }


def quotient_presentation(ambient_rank: int, sublattice_gens: Sequence[Sequence[int]]) -> FinAbGroup:
    """Presentation of ``Z^ambient_rank / rowspan(sublattice_gens)``."""
    gens = [list(r) for r in sublattice_gens if any(r)]
    n = ambient_rank
    if any(len(r) != n for r in gens):
        raise ValueError("generator length does not match ambient rank")
    if not gens:
        eye = identity(n)
        return FinAbGroup(n, (), n, as_tuple_matrix(eye), as_tuple_matrix(eye))
    s, _, v = smith_normal_form(gens)
    diag = [s[i][i] for i in range(min(len(s), n))]
    r = sum(1 for d in diag if d)
    vinv = unimodular_inverse(v)
    tors_idx = [i for i in range(r) if diag[i] > 1]
    free_idx = list(range(r, n))
    # coordinate i of the class of x is (x . column_i(v)); lifts are rows of v^{-1}
    tors_proj = [[v[j][i] % diag[i] for j in range(n)] for i in tors_idx]
    tors_sec = [vinv[i] for i in tors_idx]
    free_proj = [[v[j][i] for j in range(n)] for i in free_idx]
    free_sec = [vinv[i] for i in free_idx]
    if free_proj:
        # canonical free coordinates: Hermite form of the annihilator basis
        h, t = hermite_normal_form(free_proj)
        tinv = unimodular_inverse(t)
        free_proj = h
        # new coords = t @ old coords, so lifts transform by t^{-1}
        free_sec = [
            [sum(tinv[a][b] * free_sec[a][j] for a in range(len(tinv))) for j in range(n)]
            for b in range(len(tinv))
        ]
    projection = tors_proj + free_proj
    section = transpose(tors_sec + free_sec)
    return FinAbGroup(
        ambient_rank=n,
        torsion=tuple(diag[i] for i in tors_idx),
        free_rank=len(free_idx),
        projection=as_tuple_matrix(projection),
        section=as_tuple_matrix(section) if section else tuple(() for _ in range(n)),
    )


def unimodular_matrices(rng, n: int, steps: int = 12) -> IntMatrix:
    """Random unimodular matrix as a product of elementary operations."""
    u = identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        kind = rng.random()
        if n > 1 and kind < 0.7:
            c = rng.choice([-2, -1, 1, 2])
            u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        elif n > 1 and kind < 0.85:
            u[i], u[j] = u[j], u[i]
        else:
            u[i] = [-a for a in u[i]]
    return u


def flatten(rows: Iterable[Iterable]) -> list:
    return [x for r in rows for x in r]

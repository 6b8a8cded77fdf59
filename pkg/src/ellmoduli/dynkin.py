"""Cartan matrices of finite type and Dynkin diagram recognition.

Cartan entries follow ``cartan[i][j] = <alpha_i, coroot_j>``; with this
convention ``|cartan[i][j]| > 1`` means ``alpha_i`` is the longer root.
Node numbering follows Bourbaki.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

TYPE_RANGES = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 6, "F": 4, "G": 2}


class NotFiniteTypeError(ValueError):
    """The matrix is not a Cartan matrix of finite type."""


def check_type(letter: str, rank: int) -> None:
    if letter not in TYPE_RANGES:
        raise ValueError(f"unknown Cartan type {letter!r}")
    lo = TYPE_RANGES[letter]
    ok = rank >= lo
    if letter == "E":
        ok = 6 <= rank <= 8
    elif letter == "F":
        ok = rank == 4
    elif letter == "G":
        ok = rank == 2
    if not ok:
        raise ValueError(f"rank {rank} is out of range for type {letter}")


def cartan_matrix(letter: str, rank: int) -> list[list[int]]:
    check_type(letter, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, ij=-1, ji=-1):
        a[i][j] = ij
        a[j][i] = ji

    if letter in "ABCD":
        for i in range(n - 1 if letter != "D" else n - 2):
            link(i, i + 1)
        if letter == "B":
            link(n - 2, n - 1, -2, -1)
        elif letter == "C":
            link(n - 2, n - 1, -1, -2)
        elif letter == "D":
            link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -1, -3)
    return a


def weyl_group_order(letter: str, rank: int) -> int:
    n = rank
    if letter == "A":
        return factorial(n + 1)
    if letter in "BC":
        return 2**n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(letter, n)]


def positive_root_count(letter: str, rank: int) -> int:
    n = rank
    if letter == "A":
        return n * (n + 1) // 2
    if letter in "BC":
        return n * n
    if letter == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(letter, n)]


@dataclass(frozen=True)
class Component:
    """A connected Dynkin component; ``nodes[k]`` is Bourbaki node ``k + 1``."""

    letter: str
    rank: int
    nodes: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.letter}{self.rank}"


def _components(adj: dict[int, set[int]], nodes: Sequence[int]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for v in sorted(nodes):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _path_from(adj, start, allowed):
    path = [start]
    prev = None
    while True:
        nxt = [y for y in adj[path[-1]] if y != prev and y in allowed]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def classify_cartan(cartan: Sequence[Sequence[int]], subset: Sequence[int] | None = None) -> list[Component]:
    """Split the (sub)diagram into components and name each one.

    Raises :class:`NotFiniteTypeError` if the matrix is not a Cartan matrix
    of finite type.
    """
    n = len(cartan)
    nodes = sorted(subset) if subset is not None else list(range(n))
    nodeset = set(nodes)
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for i in nodes:
        if cartan[i][i] != 2:
            raise NotFiniteTypeError("diagonal entries must be 2")
        for j in nodes:
            if i == j:
                continue
            a, b = cartan[i][j], cartan[j][i]
            if a > 0 or (a == 0) != (b == 0):
                raise NotFiniteTypeError("off-diagonal entries must be <= 0 and symmetric in support")
            if a:
                if a * b not in (1, 2, 3):
                    raise NotFiniteTypeError(f"bond ({i},{j}) has product {a * b}")
                adj[i].add(j)
    out = []
    for comp in _components(adj, nodes):
        out.append(_name_component(cartan, adj, comp))
    out.sort(key=lambda c: (c.nodes[0]))
    return out


def _name_component(cartan, adj, comp) -> Component:
    k = len(comp)
    cset = set(comp)
    edges = sum(len(adj[v]) for v in comp) // 2
    if edges != k - 1:
        raise NotFiniteTypeError("Dynkin diagram contains a cycle")
    if k == 1:
        return Component("A", 1, (comp[0],))
    degree = {v: len(adj[v]) for v in comp}
    multi = [(i, j) for i in comp for j in adj[i] if i < j and cartan[i][j] * cartan[j][i] > 1]
    branch = [v for v in comp if degree[v] >= 3]
    leaves = [v for v in comp if degree[v] == 1]
    if not multi and not branch:
        path = _path_from(adj, min(leaves), cset)
        return Component("A", k, tuple(path))
    if multi:
        if branch or len(multi) > 1:
            raise NotFiniteTypeError("not a finite-type diagram")
        i, j = multi[0]
        prod_ = cartan[i][j] * cartan[j][i]
        if prod_ == 3:
            if k != 2:
                raise NotFiniteTypeError("triple bond in rank > 2")
            short, long_ = (i, j) if abs(cartan[j][i]) > 1 else (j, i)
            return Component("G", 2, (short, long_))
        long_, short = (i, j) if abs(cartan[i][j]) > 1 else (j, i)
        if k == 2:
            return Component("B", 2, (long_, short))
        ends = {i, j} & set(leaves)
        if not ends:
            if k != 4:
                raise NotFiniteTypeError("double bond in the interior of a long chain")
            # F4: long end first
            start = next(v for v in leaves if v != short and _path_from(adj, v, cset)[1] == long_)
            return Component("F", 4, tuple(_path_from(adj, start, cset)))
        end = ends.pop()
        other = i if end == j else j
        start = next(v for v in leaves if v != end)
        path = _path_from(adj, start, cset)
        # the double-bond end is the last Bourbaki node
        letter = "B" if end == short else "C"
        return Component(letter, k, tuple(path))
    if len(branch) != 1 or degree[branch[0]] != 3:
        raise NotFiniteTypeError("more than one branch node")
    b = branch[0]
    arms = []
    for start in sorted(adj[b]):
        arm = [start]
        prev = b
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
        long_arm = arms[2][::-1]
        return Component("D", k, tuple(long_arm + [b, arms[0][0], arms[1][0]]))
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        short_arm, mid_arm, long_arm = arms
        order = [mid_arm[1], short_arm[0], mid_arm[0], b] + long_arm
        return Component("E", k, tuple(order))
    raise NotFiniteTypeError(f"branch arms {lens} are not of finite type")


def type_label(components: Sequence[Component], merge_bc: bool = False) -> str:
    """Product label such as ``A1xA3``; ``T`` for the empty diagram."""
    if not components:
        return "T"
    labels = []
    for c in components:
        letter = "BC" if merge_bc and c.letter in "BC" else c.letter
        labels.append((letter, c.rank))
    labels.sort()
    return "x".join(f"{l}{r}" for l, r in labels)

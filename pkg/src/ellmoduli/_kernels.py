"""Hot loops, compiled with numba when available.

Set ``ELLMODULI_DISABLE_NUMBA=1`` to run the plain Python versions (slow,
but handy for debugging and for checking the compiled path).  The
uncompiled functions stay reachable through :data:`PURE` either way.
"""
from __future__ import annotations

import os

import numpy as np

DISABLED = os.environ.get("ELLMODULI_DISABLE_NUMBA", "").strip() not in ("", "0")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_ENABLED = numba is not None and not DISABLED


def _jit(fn):
    if not JIT_ENABLED:
        return fn
    return numba.njit(cache=True)(fn)


def _expand_frontier(states, cartan, k, nblocks):
    """Apply every length-increasing simple reflection to every state.

    A state is ``nblocks`` weight-coordinate vectors of length ``k`` laid
    side by side; block 0 decides which reflections go down (positive
    coordinate), and all blocks are moved by the same reflection.
    """
    n = states.shape[0]
    cnt = 0
    for s in range(n):
        for i in range(k):
            if states[s, i] > 0:
                cnt += 1
    out = np.empty((cnt, k * nblocks), dtype=states.dtype)
    parent = np.empty(cnt, dtype=np.int64)
    gen = np.empty(cnt, dtype=np.int64)
    c = 0
    for s in range(n):
        for i in range(k):
            if states[s, i] > 0:
                for b in range(nblocks):
                    xi = states[s, b * k + i]
                    for j in range(k):
                        out[c, b * k + j] = states[s, b * k + j] - xi * cartan[i, j]
                parent[c] = s
                gen[c] = i
                c += 1
    return out, parent, gen


def _blocks_in_target(states, target, k, nblocks):
    """Mask of states whose blocks 1.. all occur among the rows of ``target``."""
    n = states.shape[0]
    m = target.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    for s in range(n):
        ok = True
        for b in range(1, nblocks):
            found = False
            for t in range(m):
                same = True
                for j in range(k):
                    if states[s, b * k + j] != target[t, j]:
                        same = False
                        break
                if same:
                    found = True
                    break
            if not found:
                ok = False
                break
        mask[s] = ok
    return mask


def _kernel_sizes_mod(mats, n):
    """|{x in (Z/n)^r : a x = 0 mod n}| for each square matrix ``a`` in ``mats``.

    The kernel and cokernel of an endomorphism of (Z/n)^r have the same
    size, and the cokernel is unchanged by unimodular row/column operations
    and by reducing entries mod n.  Diagonalize, then multiply gcd(d_i, n).
    """
    count = mats.shape[0]
    r = mats.shape[1]
    out = np.empty(count, dtype=np.int64)
    m = np.empty((r, r), dtype=np.int64)
    for s in range(count):
        for i in range(r):
            for j in range(r):
                m[i, j] = mats[s, i, j] % n
        total = 1
        for t in range(r):
            pi, pj, best = -1, -1, 0
            for i in range(t, r):
                for j in range(t, r):
                    v = m[i, j]
                    if v != 0 and (best == 0 or v < best):
                        best, pi, pj = v, i, j
            if pi < 0:
                for _ in range(t, r):
                    total *= n
                break
            for j in range(r):
                tmp = m[t, j]
                m[t, j] = m[pi, j]
                m[pi, j] = tmp
            for i in range(r):
                tmp = m[i, t]
                m[i, t] = m[i, pj]
                m[i, pj] = tmp
            # the pivot only ever shrinks to a proper divisor, so this ends
            dirty = True
            while dirty:
                dirty = False
                for side in range(2):
                    for q in range(t + 1, r):
                        b = m[q, t] if side == 0 else m[t, q]
                        if b == 0:
                            continue
                        p = m[t, t]
                        if b % p == 0:
                            f = b // p
                            for z in range(r):
                                if side == 0:
                                    m[q, z] = (m[q, z] - f * m[t, z]) % n
                                else:
                                    m[z, q] = (m[z, q] - f * m[z, t]) % n
                            continue
                        # extended gcd of (p, b)
                        a0, b0 = p, b
                        x0, x1, y0, y1 = 1, 0, 0, 1
                        while b0 != 0:
                            qq = a0 // b0
                            a0, b0 = b0, a0 - qq * b0
                            x0, x1 = x1, x0 - qq * x1
                            y0, y1 = y1, y0 - qq * y1
                        pg, bg = p // a0, b // a0
                        for z in range(r):
                            if side == 0:
                                u, v = m[t, z], m[q, z]
                                m[t, z] = (x0 * u + y0 * v) % n
                                m[q, z] = (-bg * u + pg * v) % n
                            else:
                                u, v = m[z, t], m[z, q]
                                m[z, t] = (x0 * u + y0 * v) % n
                                m[z, q] = (-bg * u + pg * v) % n
                        dirty = True
            g, h = m[t, t], n
            while h != 0:
                g, h = h, g % h
            total *= g
        out[s] = total
    return out


PURE = {
    "expand_frontier": _expand_frontier,
    "blocks_in_target": _blocks_in_target,
    "kernel_sizes_mod": _kernel_sizes_mod,
}

expand_frontier = _jit(_expand_frontier)
blocks_in_target = _jit(_blocks_in_target)
kernel_sizes_mod = _jit(_kernel_sizes_mod)


def kernel_size_mod(a, n: int) -> int:
    return int(kernel_sizes_mod(np.asarray(a, dtype=np.int64)[None, :, :], n)[0])

import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ellmoduli import _kernels
from ellmoduli.root_datum import build_datum


def kernel_size_brute(a, n):
    r = a.shape[0]
    return sum(1 for v in itertools.product(range(n), repeat=r) if not ((a @ np.array(v)) % n).any())


@given(st.integers(1, 3).flatmap(lambda r: arrays(np.int64, (r, r), elements=st.integers(-4, 4))),
       st.integers(1, 6))
def test_kernel_size_vs_brute_force(a, n):
    assert _kernels.kernel_size_mod(a, n) == kernel_size_brute(a, n)


def test_kernel_sizes_batch_matches_pure():
    rng = np.random.default_rng(1)
    mats = rng.integers(-5, 6, size=(200, 4, 4)).astype(np.int64)
    for n in (2, 6, 12, 35):
        fast = _kernels.kernel_sizes_mod(mats, n)
        pure = _kernels.PURE["kernel_sizes_mod"](mats, n)
        assert np.array_equal(fast, pure)


def test_expand_frontier_matches_pure():
    d = build_datum("E6/ad")
    cart = np.array(d.cartan, dtype=np.int64)
    k = d.nsimple
    levi = (0, 2)
    state = [0 if i in levi else 1 for i in range(k)] + [x for j in levi for x in cart[j].tolist()]
    frontier = np.array([state], dtype=np.int64)
    for _ in range(6):
        a = _kernels.expand_frontier(frontier, cart, k, 3)
        b = _kernels.PURE["expand_frontier"](frontier, cart, k, 3)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        frontier = np.unique(a[0], axis=0)
        mask = _kernels.blocks_in_target(frontier, cart[list(levi)], k, 3)
        assert np.array_equal(mask, _kernels.PURE["blocks_in_target"](frontier, cart[list(levi)], k, 3))


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("", str(_kernels.numba is not None))])
def test_env_flag(flag, expected):
    code = (
        "from ellmoduli import _kernels\n"
        "from ellmoduli.root_datum import build_datum\n"
        "from ellmoduli.weyl import relative_weyl_group\n"
        "print(_kernels.JIT_ENABLED, _kernels.expand_frontier is _kernels.PURE['expand_frontier'])\n"
        "print(relative_weyl_group(build_datum('E6/ad'), (0, 2, 4, 5), method='cosets').order)\n"
    )
    env = dict(os.environ, ELLMODULI_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    first, second = out.stdout.split("\n")[:2]
    assert first.split()[0] == expected
    assert first.split()[1] == str(expected == "False")
    assert second == "12"

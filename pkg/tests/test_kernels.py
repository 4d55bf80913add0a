import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from grasshopper import _kernels_py, kernels

compiled = pytest.importorskip("grasshopper._kernels", reason="compiled kernels not built")


@pytest.mark.parametrize("k", range(1, 8))
def test_dense_modular_matches_python(k):
    mask = (1 << 2 * k) - 1
    for p in (2, 5, 97, 1_000_000_007, (1 << 61) - 1):
        assert compiled.dense_alpha_mod(k, mask, p) == _kernels_py.dense_alpha(k, mask, p)


@given(st.integers(0, 5), st.sets(st.integers(0, 11), min_size=1, max_size=8))
@settings(max_examples=200, deadline=None)
def test_dense_exact_crt_matches_python(u, parts):
    mask = sum(1 << p for p in parts)
    assert kernels.dense_alpha(u, mask) == _kernels_py.dense_alpha(u, mask)


@given(st.integers(1, 10), st.integers(0, 10**9))
@settings(max_examples=200, deadline=None)
def test_subset_order_backends_identical(n, seed):
    rng = random.Random(seed)
    jumps = rng.sample(range(-15, 16), n)
    mines = rng.sample(range(-20, 21), rng.randint(0, n + 1))
    assert compiled.subset_order(jumps, mines) == _kernels_py.subset_order(jumps, mines)


def test_large_jumps_fall_back():
    jumps = [1 << 60, 1, 2]
    assert kernels.subset_order(jumps, [1]) == _kernels_py.subset_order(jumps, [1])


def test_coefficient_bound_holds():
    for k in range(1, 7):
        mask = (1 << 2 * k) - 1
        assert _kernels_py.dense_alpha(k, mask) <= kernels.coefficient_bound(2 * k, k, 0)


def test_pure_python_switch():
    env = dict(os.environ, GRASSHOPPER_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from grasshopper import kernels, coeffs; print(kernels.BACKEND, coeffs.ck(4))"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["python", "586656"]


def test_benchmark_smoke(capsys):
    import runpy
    from pathlib import Path

    bench = runpy.run_path(str(Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"))
    assert bench["main"](["--max-k", "5", "--max-n", "14", "--repeat", "1"]) == 0
    assert "subset DP n=14" in capsys.readouterr().out

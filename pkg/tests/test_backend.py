import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

import clapeyron
from clapeyron import _kernels_py as pure

compiled = pytest.importorskip("clapeyron._kernels")


def test_backend_flag():
    assert clapeyron.BACKEND in ("compiled", "python")


def test_environment_forces_fallback():
    env = dict(os.environ, CLAPEYRON_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import clapeyron; print(clapeyron.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


def test_compensated_sum_beats_naive():
    w = np.ones(4)
    f = np.array([1e16, 1.0, -1e16, 1.0])
    assert pure.weighted_sum(w, f) == 2.0
    assert compiled.weighted_sum(w, f) == 2.0


def test_length_mismatch():
    for mod in (pure, compiled):
        with pytest.raises(ValueError):
            mod.weighted_sum(np.ones(3), np.ones(4))
        with pytest.raises(ValueError):
            mod.weighted_sum_cols(np.ones(3), np.ones((4, 2)))


vec = arrays(np.float64, st.integers(1, 200), elements=st.floats(-1e6, 1e6))


@settings(max_examples=60, deadline=None)
@given(vec)
def test_weighted_sum_backends_identical(f):
    w = np.linspace(0.1, 2.0, f.shape[0])
    assert compiled.weighted_sum(w, f) == pure.weighted_sum(w, f)
    assert math.fsum((w * f).tolist()) == pytest.approx(pure.weighted_sum(w, f), rel=1e-12, abs=1e-6)


def test_weighted_sum_cols_identical():
    rng = np.random.default_rng(3)
    F = np.ascontiguousarray(rng.normal(size=(500, 4)))
    w = rng.random(500)
    assert np.array_equal(compiled.weighted_sum_cols(w, F), pure.weighted_sum_cols(w, F))


@pytest.mark.parametrize("n,q", [(2, 3.0), (3, 5.0), (3, 2.0)])
def test_lane_emden_backends_agree(n, q):
    alphas = np.array([0.5, 1.0, 2.0, 4.0])
    a = compiled.lane_emden_rk4(alphas, q, n, 5.0, 2000)
    b = pure.lane_emden_rk4(alphas, q, n, 5.0, 2000)
    for x, y in zip(a, b):
        np.testing.assert_allclose(np.asarray(x), y, rtol=1e-12, atol=1e-13)

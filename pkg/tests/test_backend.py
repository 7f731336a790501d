"""Compiled kernels against the numpy fallback."""
import os
import subprocess
import sys

import numpy as np
import pytest

from hermite_cs import _backend, _fallback

RNG = np.random.default_rng(3)
Z = RNG.normal(size=40) + 1j * RNG.normal(size=40)
Z2 = RNG.normal(size=40) + 1j * RNG.normal(size=40)

compiled = pytest.mark.skipif(_backend.BACKEND != "cython", reason="compiled extension not built")


@compiled
def test_raw_tables_agree():
    a = _backend.hermite_raw_table(Z, 30)
    b = _fallback.hermite_raw_table(Z, 30)
    assert np.allclose(a, b, rtol=1e-13, atol=0)
    a = _backend.hermite2d_raw_table(Z, Z2, 12, 9)
    b = _fallback.hermite2d_raw_table(Z, Z2, 12, 9)
    # entries can cancel to near zero, so compare against each point's scale
    scale = np.abs(b).max(axis=(1, 2))[:, None, None]
    assert (np.abs(a - b) / scale).max() <= 1e-12


@compiled
def test_scaled_tables_agree():
    p, q = 0.8 - 0.1j, 0.3 + 0.2j
    assert np.allclose(_backend.hermite_scaled_table(Z, 60, p, q), _fallback.hermite_scaled_table(Z, 60, p, q),
                       rtol=1e-12, atol=1e-300)
    assert np.allclose(_backend.hermite2d_scaled_table(Z, Z2, 10, 14, p, q),
                       _fallback.hermite2d_scaled_table(Z, Z2, 10, 14, p, q), rtol=1e-12, atol=1e-300)


@compiled
def test_bilinear_apply_agrees():
    T = RNG.normal(size=(50, 2)) + 1j * RNG.normal(size=(50, 2))
    S = RNG.normal(size=(300, 2)) + 1j * RNG.normal(size=(300, 2))
    C = RNG.normal(size=(2, 2)) * 0.5 + 0.1j
    lg = -np.sum(np.abs(S) ** 2, axis=1) + 0.3j
    V = RNG.normal(size=(300, 3)) + 0j
    o1, s1 = _backend.bilinear_exp_apply(T, S, C, lg, V)
    o2, s2 = _fallback.bilinear_exp_apply(T, S, C, lg, V)
    assert np.allclose(s1, s2, rtol=1e-13)
    assert np.allclose(o1, o2, rtol=1e-11, atol=1e-14 * np.abs(o2).max())


def test_pure_python_backend_end_to_end():
    code = ("import hermite_cs, numpy as np;"
            "from hermite_cs.bargmann import TransformSpec, slot_families, transform_matrix, unitarity_defect;"
            "s = TransformSpec('B1', 0.5); fx, fy = slot_families(s);"
            "print(hermite_cs.BACKEND, unitarity_defect(transform_matrix(s, fy, fx, 6)))")
    env = dict(os.environ, HERMITE_CS_PURE_PYTHON="1")
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    name, defect = r.stdout.split()
    assert name == "numpy" and float(defect) <= 1e-6


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("HERMITE_CS_THREADS", "2")
    assert _backend.worker_count() == 2
    monkeypatch.setenv("HERMITE_CS_THREADS", "junk")
    assert _backend.worker_count() >= 1

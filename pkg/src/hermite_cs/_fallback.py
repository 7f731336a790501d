"""Pure numpy implementations of the inner loops in ``_core.pyx``.

Every function vectorizes over evaluation points and loops over the
polynomial index, so cost is ``O(nmax)`` numpy passes.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 512


def _flat(z) -> np.ndarray:
    return np.ascontiguousarray(z, dtype=np.complex128).ravel()


def hermite_raw_table(z, nmax: int) -> np.ndarray:
    x = _flat(z)
    out = np.empty((x.size, nmax + 1), dtype=np.complex128)
    out[:, 0] = 1.0
    if nmax >= 1:
        out[:, 1] = 2.0 * x
    for n in range(1, nmax):
        out[:, n + 1] = 2.0 * x * out[:, n] - 2.0 * n * out[:, n - 1]
    return out


def hermite_scaled_table(z, nmax: int, p: complex, q: complex) -> np.ndarray:
    pz = complex(p) * _flat(z)
    out = np.empty((pz.size, nmax + 1), dtype=np.complex128)
    out[:, 0] = 1.0
    if nmax >= 1:
        out[:, 1] = pz
    for n in range(1, nmax):
        out[:, n + 1] = (pz * out[:, n] - complex(q) * np.sqrt(n) * out[:, n - 1]) / np.sqrt(n + 1.0)
    return out


def hermite2d_raw_table(z1, z2, mmax: int, nmax: int) -> np.ndarray:
    x1, x2 = _flat(z1), _flat(z2)
    out = np.empty((x1.size, mmax + 1, nmax + 1), dtype=np.complex128)
    out[:, 0, 0] = 1.0
    for n in range(nmax):
        out[:, 0, n + 1] = x2 * out[:, 0, n]
    n_idx = np.arange(1, nmax + 1)
    for m in range(mmax):
        out[:, m + 1, 0] = x1 * out[:, m, 0]
        out[:, m + 1, 1:] = x1[:, None] * out[:, m, 1:] - n_idx * out[:, m, :-1]
    return out


def hermite2d_scaled_table(z1, z2, mmax: int, nmax: int, p: complex, q: complex) -> np.ndarray:
    x1, x2 = complex(p) * _flat(z1), complex(p) * _flat(z2)
    out = np.empty((x1.size, mmax + 1, nmax + 1), dtype=np.complex128)
    out[:, 0, 0] = 1.0
    for n in range(nmax):
        out[:, 0, n + 1] = x2 * out[:, 0, n] / np.sqrt(n + 1.0)
    sq = np.sqrt(np.arange(1, nmax + 1, dtype=float))
    for m in range(mmax):
        r = 1.0 / np.sqrt(m + 1.0)
        out[:, m + 1, 0] = x1 * out[:, m, 0] * r
        out[:, m + 1, 1:] = (x1[:, None] * out[:, m, 1:] - complex(q) * sq * out[:, m, :-1]) * r
    return out


def bilinear_exp_apply(targets, sources, coupling, log_g, values):
    """Return ``(out, shift)`` with
    ``out[t] = sum_s exp(targets[t] @ coupling @ sources[s] + log_g[s] - shift[t]) * values[s]``
    and ``shift[t]`` the largest real exponent over ``s``.
    """
    T = np.asarray(targets, dtype=np.complex128)
    S = np.asarray(sources, dtype=np.complex128)
    lg = np.asarray(log_g, dtype=np.complex128)
    P = np.asarray(values, dtype=np.complex128)
    TM = T @ np.asarray(coupling, dtype=np.complex128)
    out = np.empty((T.shape[0], P.shape[1]), dtype=np.complex128)
    shift = np.empty(T.shape[0])
    for start in range(0, T.shape[0], _CHUNK):
        sl = slice(start, start + _CHUNK)
        E = TM[sl] @ S.T + lg[None, :]
        mx = E.real.max(axis=1)
        shift[sl] = mx
        out[sl] = np.exp(E - mx[:, None]) @ P
    return out, shift

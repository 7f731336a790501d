"""Schmidt analysis of two-mode coefficient matrices."""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import worker_count
from .hermite import as_alpha
from .states import CoeffMatrix, FockVector, coherent_state

RANK_TOL = 1e-10


@dataclass(frozen=True)
class SchmidtResult:
    """Singular values (nonincreasing), entanglement entropy in nats and the
    number of singular values above ``rank_tol`` times the largest."""

    singular_values: np.ndarray
    entropy: float
    effective_rank: int
    rank_tol: float = RANK_TOL

    @property
    def entropy_bits(self) -> float:
        return self.entropy / math.log(2.0)

    @property
    def factorizable(self) -> bool:
        return self.effective_rank == 1


def _matrix(state) -> np.ndarray:
    C = state.coeffs if isinstance(state, CoeffMatrix) else np.asarray(state, dtype=np.complex128)
    if C.ndim != 2:
        raise ValueError("state must be a coefficient matrix")
    if not np.any(C):
        raise ValueError("state is the zero matrix")
    return C


def entropy_of(sv: np.ndarray) -> float:
    """``-sum p log p`` with ``p = s^2 / sum s^2``; zero weights are skipped."""
    p = sv ** 2
    p = p / p.sum()
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log(p))))


def schmidt(state, rank_tol: float = RANK_TOL) -> SchmidtResult:
    """Schmidt decomposition of a two-mode state.

    Parameters
    ----------
    state : CoeffMatrix or 2-D array
    rank_tol : float
        Relative threshold for counting nonzero singular values.
    """
    C = _matrix(state)
    sv = np.linalg.svd(C, compute_uv=False)
    rank = int(np.sum(sv > rank_tol * sv[0]))
    return SchmidtResult(sv, entropy_of(sv), rank, rank_tol)


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    entropy: float
    effective_rank: int
    tail: float
    warnings: tuple


def _sweep_point(z1, z2, alpha, N, rank_tol) -> SweepPoint:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        c = coherent_state((z1, z2), alpha, N)
    r = schmidt(c, rank_tol)
    msgs = tuple(str(w.message) for w in caught)
    return SweepPoint(float(as_alpha(alpha).alpha), r.entropy, r.effective_rank, c.tail, msgs)


def alpha_entropy_sweep(z1, z2, alphas, N: int = 12, rank_tol: float = RANK_TOL,
                        workers: int | None = None) -> list[SweepPoint]:
    """Entanglement entropy of the two-mode coherent state for each alpha.

    Points are independent and evaluated on a thread pool capped by
    ``HERMITE_CS_THREADS``; results come back in input order.  Truncation
    warnings are collected per point instead of being raised.
    """
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ValueError("alphas must be non-empty")
    for a in alphas:
        as_alpha(a)
    if N < 8:
        raise ValueError("N must be >= 8")
    workers = min(len(alphas), worker_count() if workers is None else max(1, workers))
    if workers == 1:
        return [_sweep_point(z1, z2, a, N, rank_tol) for a in alphas]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda a: _sweep_point(z1, z2, a, N, rank_tol), alphas))


@dataclass(frozen=True)
class Witness:
    factors: tuple[FockVector, FockVector] | None
    residual: float  # |C - s1 u v^T| / |C|


def factorization_witness(state, tol: float = RANK_TOL) -> Witness:
    """Product factors of a rank-one state, or the rank-one residual.

    If the effective rank is one, returns ``(u sqrt(s1), v sqrt(s1))`` with
    ``C = s1 u v^T`` (``v`` is the conjugated right singular vector), so the
    outer product of the factors reproduces ``C``.
    """
    C = _matrix(state)
    U, sv, Vh = np.linalg.svd(C)
    u, v = U[:, 0], Vh[0]
    res = float(np.linalg.norm(C - sv[0] * np.outer(u, v)) / np.linalg.norm(C))
    if int(np.sum(sv > tol * sv[0])) != 1:
        return Witness(None, res)
    r = math.sqrt(sv[0])
    return Witness((FockVector(u * r), FockVector(v * r)), res)

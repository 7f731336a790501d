"""Reproducing kernels: Zaremba partial sums, closed forms, and the
integrability diagnostics for rotation-invariant kernels."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import mpmath
import numpy as np

from .errors import ConvergenceError, DomainError, SeriesDivergenceError
from .hermite import AlphaParam, BasisSpec, Family, as_alpha, basis_log_parts, combine

CAUCHY_WINDOW = 10
CAUCHY_TOL = 1e-10


class KernelKind(str, Enum):
    BARGMANN_1D = "Bargmann1D"
    BARGMANN_2D = "Bargmann2D"
    VANEM_1D = "VanEM1D"
    VANEM_2D = "VanEM2D"
    SZEGO = "Szego"
    BERGMAN = "Bergman"
    FACTORIAL_RATIO_3F2 = "FactorialRatio3F2"


_ALPHA_KINDS = {KernelKind.VANEM_1D, KernelKind.VANEM_2D}


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    alpha: AlphaParam | None = None

    def __post_init__(self):
        kind = KernelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in _ALPHA_KINDS:
            if self.alpha is None:
                raise ValueError(f"{kind.value} requires alpha")
            object.__setattr__(self, "alpha", as_alpha(self.alpha))
        elif self.alpha is not None:
            raise ValueError(f"{kind.value} takes no alpha")

    @property
    def arity(self) -> int:
        return 2 if self.kind in (KernelKind.BARGMANN_2D, KernelKind.VANEM_2D) else 1


_KIND_FAMILIES = {
    KernelKind.BARGMANN_1D: (Family.MONOMIAL_1D, Family.HOL_HERMITE_K_1D),
    KernelKind.BARGMANN_2D: (Family.MONOMIAL_2D, Family.HOL_HERMITE_K_2D),
    KernelKind.VANEM_1D: (Family.HOL_HERMITE_H_1D,),
    KernelKind.VANEM_2D: (Family.HOL_HERMITE_H_2D,),
    KernelKind.SZEGO: (Family.SZEGO_DISK,),
    KernelKind.BERGMAN: (Family.BERGMAN_DISK,),
    KernelKind.FACTORIAL_RATIO_3F2: (Family.FACTORIAL_RATIO,),
}


def kernel_for_basis(spec: BasisSpec) -> KernelSpec:
    """The closed-form kernel whose Zaremba expansion uses ``spec``."""
    for kind, fams in _KIND_FAMILIES.items():
        if spec.family in fams:
            return KernelSpec(kind, spec.alpha if kind in _ALPHA_KINDS else None)
    raise ValueError(f"no closed-form kernel for {spec.family.value}")


def basis_for_kernel(spec: KernelSpec) -> BasisSpec:
    """A basis whose Zaremba sum reproduces ``spec`` (the first listed one)."""
    fam = _KIND_FAMILIES[spec.kind][0]
    return BasisSpec(fam, spec.alpha if spec.kind in _ALPHA_KINDS else None)


# --------------------------------------------------------------------------
# Zaremba sums


def _pairs(spec_arity: int, x, y):
    if spec_arity == 2:
        try:
            (x1, x2), (y1, y2) = x, y
        except (TypeError, ValueError):
            raise ValueError("two-variable kernels take pairs of points") from None
        return complex(x1), complex(x2), complex(y1), complex(y2)
    if isinstance(x, (tuple, list)) or isinstance(y, (tuple, list)):
        raise ValueError("one-variable kernels take single points")
    return complex(x), complex(y)


def _cauchy_check(sq: np.ndarray, where: str, tol: float, window: int) -> None:
    total = float(np.sum(sq))
    tail = float(np.sum(sq[-window:]))
    if not math.isfinite(total) or tail > tol * total:
        raise SeriesDivergenceError(
            f"sum |Phi_n({where})|^2 fails the Cauchy tail test: last {window} terms carry "
            f"{tail:.3e} of {total:.3e} (threshold {tol:g} relative)",
            {"point": where, "tail": tail, "total": total, "tol": tol, "window": window},
        )


def zaremba_kernel(spec: BasisSpec, x, y, N: int, *, cauchy_tol: float = CAUCHY_TOL,
                   window: int = CAUCHY_WINDOW) -> complex:
    """Partial sum ``sum_{n<N} Phi_n(x) conj(Phi_n(y))``.

    For two-variable families ``x`` and ``y`` are pairs and the sum runs over
    ``m, n < N``.  Raises :class:`SeriesDivergenceError` when the last
    ``window`` terms of ``sum |Phi_n|^2`` at ``x`` or ``y`` exceed
    ``cauchy_tol`` times the partial sum.  Because the sum is a positive
    series the test is a heuristic, not a proof of convergence.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    window = min(window, N)
    if spec.arity == 2:
        x1, x2, y1, y2 = _pairs(2, x, y)
        t = combine(*basis_log_parts(spec, N - 1, [x1, y1], [x2, y2]))
        px, py = t[0], t[1]
        for vals, where in ((px, "x"), (py, "y")):
            sq = np.abs(vals) ** 2
            # shells m + n = const give the natural ordering for the tail test
            shells = np.array([np.trace(np.fliplr(sq), offset=N - 1 - k) for k in range(N)])
            _cauchy_check(shells, where, cauchy_tol, window)
        return complex(np.sum(px * np.conj(py)))
    xx, yy = _pairs(1, x, y)
    t = combine(*basis_log_parts(spec, N - 1, [xx, yy]))
    for vals, where in ((t[0], "x"), (t[1], "y")):
        _cauchy_check(np.abs(vals) ** 2, where, cauchy_tol, window)
    return complex(np.sum(t[0] * np.conj(t[1])))


# --------------------------------------------------------------------------
# closed forms


def _check_disk(*pts: complex) -> None:
    for p in pts:
        if abs(p) >= 1.0:
            raise DomainError(f"point {p!r} lies outside the open unit disk")


def _check_half_plane(*pts: complex) -> None:
    for p in pts:
        if p.real <= 0.5:
            raise DomainError(f"point {p!r} violates Re > 1/2")


def closed_kernel(spec: KernelSpec, x, y, *, method: str = "mpmath") -> complex:
    """Closed-form kernel ``K(x, y)``; the second argument is conjugated
    internally.

    ``method`` only affects the factorial-ratio kernel: ``"mpmath"`` uses the
    generalized hypergeometric function, ``"series"`` sums the defining
    series directly (see :func:`factorial_ratio_series`).
    """
    kind = spec.kind
    if spec.arity == 2:
        z1, z2, w1, w2 = _pairs(2, x, y)
        wb1, wb2 = w1.conjugate(), w2.conjugate()
        if kind is KernelKind.BARGMANN_2D:
            return complex(np.exp(z1 * wb1 + z2 * wb2))
        al = spec.alpha.alpha
        c = (1 - al * al) ** 2 / (4 * math.pi ** 2 * al * al)
        return complex(c * np.exp((1 - al * al) / (4 * al) * (z1 * wb1 + z2 * wb2)
                                  - (1 + al * al) / (4 * al) * (z1 * z2 + wb1 * wb2)))
    z, w = _pairs(1, x, y)
    wb = w.conjugate()
    if kind is KernelKind.BARGMANN_1D:
        return complex(np.exp(z * wb))
    if kind is KernelKind.VANEM_1D:
        al = spec.alpha.alpha
        c = (1 - al * al) / (2 * math.pi * al)
        return complex(c * np.exp(-(z * z + wb * wb) / 2 - (1 - al) ** 2 / (4 * al) * (z * z + wb * wb)
                                  + (1 - al * al) / (2 * al) * z * wb))
    if kind is KernelKind.SZEGO:
        _check_disk(z, w)
        return 1.0 / (2 * math.pi * (1 - z * wb))
    if kind is KernelKind.BERGMAN:
        _check_disk(z, w)
        return 1.0 / (2 * math.pi * (1 - z * wb) ** 2)
    _check_half_plane(z, w)
    if method == "series":
        return factorial_ratio_series(z, w)
    if method != "mpmath":
        raise ValueError(f"unknown method {method!r}")
    with mpmath.workdps(30):
        val = mpmath.hyp3f2(1, 1, 1, z + 1, wb + 1, 1) / (mpmath.mpc(z) * mpmath.mpc(wb))
    return complex(val)


def factorial_ratio_series(z: complex, w: complex, rel_tail: float = 1e-14,
                           max_terms: int = 16_384, extrapolate: bool = True,
                           extrap_tol: float = 1e-10) -> complex:
    """``sum_n (n!)^2 / (z (z+1)...(z+n) conj(w) (conj(w)+1)...(conj(w)+n))``.

    Terms decay like ``n^{-s}`` with ``s = z + conj(w)``.  The sum is first
    accumulated directly, stopping once the integral tail bound
    ``n |t_n| / (Re s - 1)`` drops below ``rel_tail`` times the total.  When
    that does not happen within ``max_terms`` the partial sums are fitted to
    ``S - n^{1-s} (a_0 + a_1/n + a_2/n^2 + a_3/n^3)``, the known shape of the
    tail, and ``S`` is returned.  The gap between the three- and four-term
    fits estimates the error; above ``extrap_tol`` (relative) the routine
    raises :class:`ConvergenceError`, as it does when ``extrapolate`` is off.
    """
    z, w = complex(z), complex(w)
    _check_half_plane(z, w)
    wb = w.conjugate()
    s = z + wb
    if s.real <= 1.0:
        raise ConvergenceError("series diverges for Re(z + w) <= 1")
    n = np.arange(1, max_terms + 1, dtype=float)
    t = np.empty(max_terms + 1, dtype=np.complex128)
    t[0] = 1.0 / (z * wb)
    t[1:] = t[0] * np.cumprod((n * n) / ((z + n) * (wb + n)))
    partial = np.cumsum(t)
    bound = np.arange(max_terms + 1) * np.abs(t) / (s.real - 1.0)
    done = np.nonzero(bound <= rel_tail * np.abs(partial))[0]
    if done.size and done[0] > 0:
        return complex(partial[done[0]])
    if not extrapolate:
        raise ConvergenceError(f"factorial-ratio series not converged after {max_terms} terms")
    ns = np.linspace(max_terms // 4, max_terms, 16).astype(int)
    fits = []
    for K in (3, 4):
        A = np.column_stack([np.ones(ns.size)] + [ns ** (1 - s) * (max_terms / ns) ** j for j in range(K)])
        fits.append(np.linalg.lstsq(A, partial[ns], rcond=None)[0][0])
    err = abs(fits[1] - fits[0]) / abs(fits[1])
    if not err <= extrap_tol:
        raise ConvergenceError(f"tail extrapolation unreliable (estimated relative error {err:.1e})")
    return complex(fits[1])


# --------------------------------------------------------------------------
# diagnostics


@dataclass
class PDReport:
    passed: bool
    symmetry_defect: float
    min_eigenvalue: float
    tol: float
    gram: np.ndarray = field(repr=False)


def kernel_gram(spec: KernelSpec, points) -> np.ndarray:
    pts = list(points)
    return np.array([[closed_kernel(spec, p, q) for q in pts] for p in pts])


def hermitian_pd_check(spec: KernelSpec, points, tol: float = 1e-10) -> PDReport:
    """Hermitian symmetry and positive semidefiniteness of a sample Gram
    matrix ``K(x_i, x_j)``."""
    G = kernel_gram(spec, points)
    sym = float(np.max(np.abs(G - G.conj().T))) if G.size else 0.0
    lam = float(np.min(np.linalg.eigvalsh(0.5 * (G + G.conj().T))))
    return PDReport(sym < tol and lam > -tol, sym, lam, tol, G)


@dataclass(frozen=True)
class MomentSequence:
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 3:
            raise ValueError("a moment sequence needs at least 3 entries")
        if any(not (v > 0 and math.isfinite(v)) for v in vals):
            raise ValueError("moment sequence entries must be positive and finite")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)


def as_moments(seq) -> MomentSequence:
    return seq if isinstance(seq, MomentSequence) else MomentSequence(tuple(seq))


@dataclass
class LogConvexityReport:
    passed: bool
    checked: int
    violations: list
    note: str = ("log-convexity is necessary for integrability, not sufficient: "
                 "passing does not prove that a representing measure exists")


def log_convexity_check(k_inv, rtol: float = 1e-12) -> LogConvexityReport:
    """Check ``s_{m+n}^2 <= s_{2m} s_{2n}`` for ``s = (k_n^{-1})``.

    All pairs with ``2m, 2n`` inside the sequence are tested (so
    ``m + n <= (L-1)``).  Violations are listed as
    ``(m, n, s_{m+n}^2, s_{2m} s_{2n})``.  Comparison is done in logs with
    relative slack ``rtol`` so that exact equality is not flagged.
    """
    s = as_moments(k_inv).values
    L = len(s)
    logs = [math.log(v) for v in s]
    viol = []
    checked = 0
    for m in range((L - 1) // 2 + 1):
        for n in range(m, (L - 1) // 2 + 1):
            checked += 1
            lhs = 2 * logs[m + n]
            rhs = logs[2 * m] + logs[2 * n]
            if lhs > rhs + rtol * max(1.0, abs(rhs)):
                viol.append((m, n, s[m + n] ** 2, s[2 * m] * s[2 * n]))
    return LogConvexityReport(not viol, checked, viol)


def radial_measure_norms(moments, n_max: int | None = None) -> np.ndarray:
    """``k_n = 2 pi / a_{2n}`` from Stieltjes moments ``a_j``.

    ``n_max`` defaults to the largest ``n`` with ``2n`` in range.
    """
    a = as_moments(moments).values
    top = (len(a) - 1) // 2
    if n_max is None:
        n_max = top
    if n_max > top:
        raise ValueError(f"need moments up to index {2 * n_max}, have {len(a) - 1}")
    return np.array([2 * math.pi / a[2 * n] for n in range(n_max + 1)])


def weighted_shift_matrices(k, N: int, shifted: bool = False):
    """Matrices of the weighted shifts ``(a_plus, a_minus)`` in the basis
    ``Phi_n``.

    ``sigma_n = k_n / k_{n+1}``; ``a_minus Phi_n = sqrt(sigma_n) Phi_{n-1}``
    and ``a_plus Phi_n = sqrt(sigma_{n+1}) Phi_{n+1}``, which makes
    ``a_plus`` the adjoint of ``a_minus``.  With ``shifted=True`` the
    convention ``sigma_n = k_{n-1} / k_n`` is used instead (this gives the
    canonical ``sqrt(n)`` for Bargmann weights; the default gives
    ``sqrt(n + 1)``).  Matrices act on column vectors: ``a[i, j] = <Phi_i, a Phi_j>``.
    """
    k = np.asarray(k, dtype=float)
    if N < 1:
        raise ValueError("N must be >= 1")
    if k.size < N + 1:
        raise ValueError(f"need {N + 1} weights k_0..k_N, got {k.size}")
    if np.any(~(k > 0)):
        raise ValueError("weights k_n must be positive")
    n = np.arange(1, N)
    sigma = k[n - 1] / k[n] if shifted else k[n] / k[n + 1]
    am = np.zeros((N, N))
    am[n - 1, n] = np.sqrt(sigma)
    return am.T.copy(), am

"""Hermite polynomials in one and two complex variables and the normalized
basis families built from them.

Every Gaussian-type family is evaluated as ``exp(log_envelope) * g`` where
``g`` obeys the normalized three-term recurrence

    g_0 = 1,  g_{n+1} = (p z g_n - q sqrt(n) g_{n-1}) / sqrt(n + 1)

(and its two-index analogue), so no factorial or power is ever formed
explicitly.  The per-family constants ``p``, ``q`` and the envelope are
collected in :func:`recurrence_params`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from numbers import Number
from typing import Sequence

import numpy as np

from . import _backend
from .errors import DomainError, NumericRangeError

INDEX_CAP = 200
_LOG_PI = math.log(math.pi)
_LOG_2PI = math.log(2.0 * math.pi)
_RESCALE = 1e150


@dataclass(frozen=True)
class ComplexPoint:
    """A finite point ``re + 1j*im`` of the complex plane."""

    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"non-finite point ({self.re}, {self.im})")

    @classmethod
    def of(cls, z) -> "ComplexPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class AlphaParam:
    """Squeezing parameter ``0 < alpha < 1`` with ``epsilon = (1-alpha)/(1+alpha)``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (0.0 < a < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def epsilon(self) -> float:
        return (1.0 - self.alpha) / (1.0 + self.alpha)

    def __float__(self) -> float:
        return self.alpha


def as_alpha(alpha) -> AlphaParam:
    return alpha if isinstance(alpha, AlphaParam) else AlphaParam(float(alpha))


class Family(str, Enum):
    MONOMIAL_1D = "Monomial1D"
    MONOMIAL_2D = "Monomial2D"
    HOL_HERMITE_H_1D = "HolHermiteH1D"
    HOL_HERMITE_K_1D = "HolHermiteK1D"
    HOL_HERMITE_H_2D = "HolHermiteH2D"
    HOL_HERMITE_K_2D = "HolHermiteK2D"
    OSCILLATOR_PSI_1D = "OscillatorPsi1D"
    OSCILLATOR_PSI_2D = "OscillatorPsi2D"
    SZEGO_DISK = "SzegoDisk"
    BERGMAN_DISK = "BergmanDisk"
    FACTORIAL_RATIO = "FactorialRatio"


_ALPHA_FAMILIES = {
    Family.HOL_HERMITE_H_1D,
    Family.HOL_HERMITE_K_1D,
    Family.HOL_HERMITE_H_2D,
    Family.HOL_HERMITE_K_2D,
}
_TWO_MODE = {
    Family.MONOMIAL_2D,
    Family.HOL_HERMITE_H_2D,
    Family.HOL_HERMITE_K_2D,
    Family.OSCILLATOR_PSI_2D,
}


@dataclass(frozen=True)
class BasisSpec:
    """Basis family tag plus the parameters it needs.

    ``alpha`` is required by (and only allowed for) the holomorphic Hermite
    families; ``a`` and ``b`` are the oscillator scales used by the
    ``OscillatorPsi`` families and ignored otherwise.
    """

    family: Family
    alpha: AlphaParam | None = None
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam in _ALPHA_FAMILIES:
            if self.alpha is None:
                raise ValueError(f"{fam.value} requires alpha")
            object.__setattr__(self, "alpha", as_alpha(self.alpha))
        elif self.alpha is not None:
            raise ValueError(f"{fam.value} takes no alpha")
        if not (self.a > 0 and self.b > 0 and math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("oscillator scales a, b must be positive")

    @property
    def arity(self) -> int:
        return 2 if self.family in _TWO_MODE else 1

    @property
    def is_gaussian(self) -> bool:
        return self.family not in (Family.SZEGO_DISK, Family.BERGMAN_DISK, Family.FACTORIAL_RATIO)


# --------------------------------------------------------------------------
# plain polynomials


def _check_index(*idx: int) -> None:
    for i in idx:
        if int(i) != i or i < 0:
            raise ValueError(f"indices must be nonnegative integers, got {i!r}")


def hermite_poly(n: int, z) -> complex:
    """Physicists' Hermite polynomial ``H_n(z)`` at a complex point."""
    _check_index(n)
    return complex(_backend.hermite_raw_table([complex(z)], int(n))[0, n])


def hermite_table(z, nmax: int) -> np.ndarray:
    """``H_0 .. H_nmax`` at each point; shape ``(npts, nmax + 1)``."""
    _check_index(nmax)
    return _backend.hermite_raw_table(z, int(nmax))


def hermite_poly_2d(m: int, n: int, z1, z2) -> complex:
    """Two-variable Hermite polynomial ``H_{m,n}(z1, z2)``."""
    _check_index(m, n)
    return complex(_backend.hermite2d_raw_table([complex(z1)], [complex(z2)], int(m), int(n))[0, m, n])


def hermite_table_2d(z1, z2, mmax: int, nmax: int) -> np.ndarray:
    """``H_{m,n}`` for ``m <= mmax``, ``n <= nmax``; shape ``(npts, mmax+1, nmax+1)``."""
    _check_index(mmax, nmax)
    return _backend.hermite2d_raw_table(z1, z2, int(mmax), int(nmax))


def generating_partial_sum(M: int, s, t, z1, z2) -> complex:
    """Partial sum of ``sum s^m t^n H_{m,n}(z1,z2) / (m! n!)`` over ``m, n <= M``.

    Tends to ``exp(z1 s + z2 t - s t)`` as ``M`` grows.
    """
    _check_index(M)
    H = _backend.hermite2d_raw_table([complex(z1)], [complex(z2)], int(M), int(M))[0]
    k = np.arange(M + 1)
    inv_fact = np.exp(-np.cumsum(np.log(np.maximum(k, 1))))
    sm = complex(s) ** k * inv_fact
    tn = complex(t) ** k * inv_fact
    return complex(sm @ H @ tn)


# --------------------------------------------------------------------------
# recurrence parameters


@dataclass(frozen=True)
class RecurrenceParams:
    p: complex
    q: complex
    log_const: complex
    quad: complex  # envelope exponent: quad * z^2 (1D) or quad * z1 * z2 (2D)


def recurrence_params(spec: BasisSpec) -> RecurrenceParams:
    """Recurrence constants and envelope of a Gaussian-type family."""
    fam = spec.family
    if fam in (Family.MONOMIAL_1D, Family.MONOMIAL_2D):
        return RecurrenceParams(1.0, 0.0, 0.0, 0.0)
    if fam in _ALPHA_FAMILIES:
        al = spec.alpha.alpha
        eps = spec.alpha.epsilon
        if fam is Family.HOL_HERMITE_K_1D:
            c = 2.0 * math.sqrt(al) / (1.0 + al)
            return RecurrenceParams(c, eps, 0.5 * math.log(c), 0.5 * eps)
        if fam is Family.HOL_HERMITE_H_1D:
            lc = 0.5 * (math.log1p(-al) - _LOG_PI - 0.5 * math.log(al))
            return RecurrenceParams(math.sqrt(2.0 * eps), eps, lc, -0.5)
        if fam is Family.HOL_HERMITE_K_2D:
            c = 2.0 * math.sqrt(al) / (1.0 + al)
            return RecurrenceParams(c, eps, math.log(c), eps)
        lc = math.log1p(-al) - _LOG_PI - 0.5 * math.log(al)
        return RecurrenceParams(math.sqrt(eps), eps, lc, -0.5)
    if fam is Family.OSCILLATOR_PSI_1D:
        a = spec.a
        return RecurrenceParams(math.sqrt(2.0) * a, 1.0, 0.5 * math.log(a) - 0.25 * _LOG_PI, -0.5 * a * a)
    raise ValueError(f"{fam.value} has no Hermite recurrence")


def squeezed_params(zeta: complex, arity: int) -> RecurrenceParams:
    """Constants for the squeezed basis at squeeze parameter ``zeta``."""
    zeta = complex(zeta)
    r2 = abs(zeta) ** 2
    if r2 >= 1.0:
        raise DomainError(f"|zeta| must be < 1, got {abs(zeta)!r}")
    p = math.sqrt(1.0 - r2)
    if arity == 1:
        return RecurrenceParams(p, zeta.conjugate(), 0.25 * math.log1p(-r2), 0.5 * zeta)
    return RecurrenceParams(p, zeta.conjugate(), 0.5 * math.log1p(-r2), zeta)


# --------------------------------------------------------------------------
# normalized tables with log-scale bookkeeping


def _safe_table_1d(z: np.ndarray, nmax: int, p: complex, q: complex):
    """Recurrence with per-step rescaling; returns ``(g, log_scale)``."""
    npts = z.size
    g = np.zeros((npts, nmax + 1), dtype=np.complex128)
    ls = np.zeros((npts, nmax + 1))
    pz = complex(p) * z
    prev = np.zeros(npts, dtype=np.complex128)
    cur = np.ones(npts, dtype=np.complex128)
    acc = np.zeros(npts)
    g[:, 0] = 1.0
    for n in range(nmax):
        nxt = (pz * cur - complex(q) * math.sqrt(n) * prev) / math.sqrt(n + 1.0)
        big = np.abs(nxt) > _RESCALE
        if big.any():
            nxt[big] /= _RESCALE
            cur[big] /= _RESCALE
            acc[big] += math.log(_RESCALE)
        prev, cur = cur, nxt
        g[:, n + 1] = cur
        ls[:, n + 1] = acc
    return g, ls


def _safe_table_2d(z1: np.ndarray, z2: np.ndarray, mmax: int, nmax: int, p: complex, q: complex):
    x1 = complex(p) * z1
    row = _safe_table_1d(z2, nmax, p, 0.0)
    g = np.zeros((z1.size, mmax + 1, nmax + 1), dtype=np.complex128)
    ls = np.zeros((z1.size, mmax + 1, nmax + 1))
    g[:, 0, :], ls[:, 0, :] = row
    sq = np.sqrt(np.arange(1, nmax + 1, dtype=float))
    # each m-row only references the previous m-row, so rescale row-wise
    cur = g[:, 0, :].copy()
    cur_ls = ls[:, 0, :].copy()
    for m in range(mmax):
        nxt = np.empty_like(cur)
        nxt_ls = cur_ls.copy()
        nxt[:, 0] = x1 * cur[:, 0]
        # align scales of neighbours n and n-1 before combining
        d = cur_ls[:, 1:] - cur_ls[:, :-1]
        nxt[:, 1:] = x1[:, None] * cur[:, 1:] - complex(q) * sq * cur[:, :-1] * np.exp(-d)
        nxt /= math.sqrt(m + 1.0)
        big = np.abs(nxt) > _RESCALE
        nxt[big] /= _RESCALE
        nxt_ls[big] += math.log(_RESCALE)
        g[:, m + 1, :], ls[:, m + 1, :] = nxt, nxt_ls
        cur, cur_ls = nxt, nxt_ls
    return g, ls


def _points(z) -> tuple[np.ndarray, tuple]:
    arr = np.asarray(z)
    if arr.dtype == object:
        arr = np.vectorize(complex, otypes=[complex])(arr)
    arr = np.asarray(arr, dtype=np.complex128)
    return arr.ravel(), arr.shape


def _cap(total: int, index_cap: int | None) -> None:
    cap = INDEX_CAP if index_cap is None else int(index_cap)
    if total > cap:
        raise ValueError(f"index {total} exceeds the cap {cap}; raise index_cap to go further")


def _check_family_domain(spec: BasisSpec, z: np.ndarray) -> None:
    if spec.family in (Family.SZEGO_DISK, Family.BERGMAN_DISK):
        if np.any(np.abs(z) >= 1.0):
            raise DomainError(f"{spec.family.value} requires |z| < 1")
    elif spec.family is Family.FACTORIAL_RATIO:
        if np.any(z.real <= 0.5):
            raise DomainError("FactorialRatio requires Re z > 1/2")


def basis_log_parts(spec: BasisSpec, nmax: int, z, z2=None, *, mmax: int | None = None,
                    index_cap: int | None = None):
    """Return ``(log_scale, g)`` with basis values ``exp(log_scale) * g``.

    1D families: ``g`` has shape ``(npts, nmax + 1)``.  2D families: shape
    ``(npts, mmax + 1, nmax + 1)`` with ``mmax`` defaulting to ``nmax``;
    ``z`` holds the first and ``z2`` the second coordinate.
    ``log_scale`` has the same shape as ``g``.
    """
    _check_index(nmax)
    x, _ = _points(z)
    fam = spec.family
    if spec.arity == 2:
        if z2 is None:
            raise ValueError(f"{fam.value} needs two coordinates")
        y, _ = _points(z2)
        if y.shape != x.shape:
            raise ValueError("coordinate arrays must have equal size")
        mmax = nmax if mmax is None else int(mmax)
        _check_index(mmax)
        _cap(mmax + nmax, index_cap)
        if fam is Family.OSCILLATOR_PSI_2D:
            la, ga = basis_log_parts(BasisSpec(Family.OSCILLATOR_PSI_1D, a=spec.a), mmax, x,
                                     index_cap=index_cap)
            lb, gb = basis_log_parts(BasisSpec(Family.OSCILLATOR_PSI_1D, a=spec.b), nmax, y,
                                     index_cap=index_cap)
            return la[:, :, None] + lb[:, None, :], ga[:, :, None] * gb[:, None, :]
        rp = recurrence_params(spec)
        return _gauss_parts_2d(x, y, mmax, nmax, rp)
    if z2 is not None:
        raise ValueError(f"{fam.value} takes a single coordinate")
    _check_family_domain(spec, x)
    if fam in (Family.SZEGO_DISK, Family.BERGMAN_DISK):
        n = np.arange(nmax + 1)
        g = x[:, None] ** n[None, :]
        ls = np.full(g.shape, -0.5 * _LOG_2PI, dtype=np.complex128)
        if fam is Family.BERGMAN_DISK:
            ls += 0.5 * np.log(n + 1.0)[None, :]
        return ls, g
    if fam is Family.FACTORIAL_RATIO:
        n = np.arange(1, nmax + 1)
        # Phi_0 = 1/z, Phi_n = Phi_{n-1} n / (z + n); accumulate logs
        steps = np.log(n[None, :]) - np.log(x[:, None] + n[None, :])
        ls = np.concatenate([-np.log(x)[:, None], -np.log(x)[:, None] + np.cumsum(steps, axis=1)], axis=1)
        return ls, np.ones(ls.shape, dtype=np.complex128)
    # the cap guards the Hermite recurrence only; the disk and factorial
    # families are plain products and stay accurate at any index
    _cap(nmax, index_cap)
    rp = recurrence_params(spec)
    return _gauss_parts_1d(x, nmax, rp)


def _gauss_parts_1d(x: np.ndarray, nmax: int, rp: RecurrenceParams):
    g = _backend.hermite_scaled_table(x, nmax, rp.p, rp.q)
    env = rp.log_const + rp.quad * x * x
    ls = np.broadcast_to(env[:, None], g.shape).astype(np.complex128)
    bad = ~np.all(np.isfinite(g), axis=1) | np.any(np.abs(g) > _RESCALE, axis=1)
    if bad.any():
        gs, extra = _safe_table_1d(x[bad], nmax, rp.p, rp.q)
        g[bad] = gs
        ls[bad] += extra
    return ls, g


def _gauss_parts_2d(x: np.ndarray, y: np.ndarray, mmax: int, nmax: int, rp: RecurrenceParams):
    g = _backend.hermite2d_scaled_table(x, y, mmax, nmax, rp.p, rp.q)
    env = rp.log_const + rp.quad * x * y
    ls = np.broadcast_to(env[:, None, None], g.shape).astype(np.complex128)
    flat = g.reshape(g.shape[0], -1)
    bad = ~np.all(np.isfinite(flat), axis=1) | np.any(np.abs(flat) > _RESCALE, axis=1)
    if bad.any():
        gs, extra = _safe_table_2d(x[bad], y[bad], mmax, nmax, rp.p, rp.q)
        g[bad] = gs
        ls[bad] += extra
    return ls, g


def combine(log_scale: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``exp(log_scale) * g`` with a range check."""
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.exp(log_scale) * g
    if not np.all(np.isfinite(out)):
        raise NumericRangeError("basis value overflows double precision")
    return out


def basis_table(spec: BasisSpec, nmax: int, z, z2=None, *, mmax: int | None = None,
                index_cap: int | None = None) -> np.ndarray:
    """Basis values for all indices up to ``nmax`` at each point."""
    return combine(*basis_log_parts(spec, nmax, z, z2, mmax=mmax, index_cap=index_cap))


def basis_eval(spec: BasisSpec, index, point, *, index_cap: int | None = None) -> complex:
    """Single basis value.

    ``index`` is an integer for 1D families and a pair ``(m, n)`` for 2D
    families; ``point`` likewise a number or a pair of numbers.
    """
    if spec.arity == 2:
        m, n = _pair(index, "index")
        _check_index(m, n)
        p1, p2 = _pair(point, "point")
        return complex(basis_table(spec, n, [complex(p1)], [complex(p2)], mmax=m, index_cap=index_cap)[0, m, n])
    if not isinstance(index, (int, np.integer)):
        raise ValueError(f"{spec.family.value} takes a single index")
    _check_index(index)
    if not isinstance(point, (Number, ComplexPoint)):
        raise ValueError(f"{spec.family.value} takes a single point")
    return complex(basis_table(spec, int(index), [complex(point)], index_cap=index_cap)[0, index])


def _pair(v, what: str):
    if isinstance(v, (str, bytes)) or not isinstance(v, Sequence) or len(v) != 2:
        raise ValueError(f"two-mode family needs a pair {what}, got {v!r}")
    return v[0], v[1]


def squeezed_table(zeta: complex, nmax: int, z, z2=None, *, mmax: int | None = None) -> np.ndarray:
    """Squeezed-basis values ``S(xi) Phi_n`` evaluated in closed form.

    Works for ``zeta = 0`` too (the recurrence form has no branch point).
    """
    x, _ = _points(z)
    if z2 is None:
        return combine(*_gauss_parts_1d(x, int(nmax), squeezed_params(zeta, 1)))
    y, _ = _points(z2)
    mmax = nmax if mmax is None else int(mmax)
    return combine(*_gauss_parts_2d(x, y, mmax, int(nmax), squeezed_params(zeta, 2)))


def zeta_of_xi(xi: complex) -> complex:
    """``zeta = xi tanh|xi| / |xi|`` (zero at ``xi = 0``)."""
    xi = complex(xi)
    r = abs(xi)
    if r == 0.0:
        return 0j
    return xi * (math.tanh(r) / r)


def xi_of_zeta(zeta: complex) -> complex:
    """Inverse of :func:`zeta_of_xi` for ``|zeta| < 1``."""
    zeta = complex(zeta)
    r = abs(zeta)
    if r >= 1.0:
        raise DomainError("|zeta| must be < 1")
    if r == 0.0:
        return 0j
    return zeta * (math.atanh(r) / r)


def bargmann_limit_distance(alpha, nmax: int = 8) -> float:
    """``max |k_n(z) - z^n / sqrt(n!)|`` over ``n <= nmax`` and a polar grid
    of points with ``|z| <= 1``."""
    r = np.linspace(0.0, 1.0, 6)
    th = np.linspace(0.0, 2 * np.pi, 12, endpoint=False)
    z = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    k = basis_table(BasisSpec(Family.HOL_HERMITE_K_1D, alpha=alpha), nmax, z)
    m = basis_table(BasisSpec(Family.MONOMIAL_1D), nmax, z)
    return float(np.abs(k - m).max())

"""Segal-Bargmann type transform kernels and their quadrature realizations.

Every kernel handled here has the Gaussian form

    K(x, y) = c * exp(x^T Axx x + s^T Ayy s + x^T L s),   s = conj(y),

where ``x`` lives in the first ("X") slot and ``y`` in the second ("Y")
slot.  Callers always pass ``y`` itself; the conjugation happens inside.
With ``X_n`` and ``Y_n`` the orthonormal families of the two slots,
``K(x, y) = sum_n X_n(x) conj(Y_n(y))``, so the integral operator with
kernel ``K`` sends ``Y_n`` to ``X_n`` and its adjoint sends ``X_n`` back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _backend
from .hermite import AlphaParam, BasisSpec, Family, as_alpha, basis_log_parts
from .quadrature import _gauss_hermite, discretize, natural_measure

_LOG_PI = math.log(math.pi)


class TransformKind(str, Enum):
    A1 = "A1"
    B1 = "B1"
    C1 = "C1"
    C1HAT = "C1hat"
    A2 = "A2"
    B2 = "B2"
    C2 = "C2"
    C2HAT = "C2hat"


_NEEDS_ALPHA = {TransformKind.B1, TransformKind.C1, TransformKind.C1HAT,
                TransformKind.B2, TransformKind.C2, TransformKind.C2HAT}
_TWO_MODE = {TransformKind.A2, TransformKind.B2, TransformKind.C2, TransformKind.C2HAT}


@dataclass(frozen=True)
class TransformSpec:
    """A transform kernel with its parameters.

    ``a`` and ``b`` are the oscillator scales (``b`` only matters for the
    two-mode kinds); ``alpha`` is required by the B and C kinds.
    """

    kind: TransformKind
    alpha: AlphaParam | None = None
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", TransformKind(self.kind))
        if self.kind in _NEEDS_ALPHA:
            if self.alpha is None:
                raise ValueError(f"{self.kind.value} needs alpha")
            object.__setattr__(self, "alpha", as_alpha(self.alpha))
        elif self.alpha is not None:
            raise ValueError(f"{self.kind.value} takes no alpha")
        if not (self.a > 0 and self.b > 0 and math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("oscillator scales a, b must be positive and finite")

    @property
    def arity(self) -> int:
        return 2 if self.kind in _TWO_MODE else 1


@dataclass(frozen=True)
class GaussianKernel:
    """``exp(log_c + x^T Axx x + s^T Ayy s + x^T L s)`` with ``s = conj(y)``."""

    log_c: complex
    Axx: np.ndarray
    Ayy: np.ndarray
    L: np.ndarray

    def adjoint(self) -> "GaussianKernel":
        """Kernel of the adjoint operator, written in the same form with the
        slots exchanged."""
        return GaussianKernel(np.conj(self.log_c), self.Ayy.conj(), self.Axx.conj(), self.L.conj().T)

    def log_value(self, x, s) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.complex128))
        s = np.atleast_2d(np.asarray(s, dtype=np.complex128))
        return (self.log_c + np.einsum("pi,ij,pj->p", x, self.Axx, x)
                + np.einsum("pi,ij,pj->p", s, self.Ayy, s) + np.einsum("pi,ij,pj->p", x, self.L, s))


def _sym(d11, d22, off):
    # x^T A x with the off-diagonal coefficient split over both entries
    return np.array([[d11, 0.5 * off], [0.5 * off, d22]], dtype=np.complex128)


def gaussian_form(spec: TransformSpec) -> GaussianKernel:
    """Coefficients of ``spec`` in :class:`GaussianKernel` form."""
    k = spec.kind
    a, b = spec.a, spec.b
    if k is TransformKind.A1:
        return GaussianKernel(0.5 * math.log(a) - 0.25 * _LOG_PI, np.array([[-0.5 * a * a]]),
                              np.array([[-0.5]]), np.array([[math.sqrt(2.0) * a]]))
    if k is TransformKind.A2:
        return GaussianKernel(0.5 * (math.log(a * b) - _LOG_PI), _sym(-0.5 * a * a, -0.5 * b * b, 0.0),
                              _sym(-0.5, -0.5, 0.0), math.sqrt(2.0) * np.diag([a, b]).astype(complex))
    al = spec.alpha.alpha
    eps = spec.alpha.epsilon
    if k is TransformKind.B1:
        return GaussianKernel(0.5 * (math.log1p(-al) - _LOG_PI - 0.5 * math.log(al)),
                              np.array([[-0.5 * eps]]), np.array([[-0.5]]),
                              np.array([[math.sqrt(2.0 * eps)]]))
    if k is TransformKind.C1:
        lc = (0.5 * math.log(a) - 0.25 * _LOG_PI
              + 0.5 * (math.log1p(-al * al) - math.log(2 * math.pi * al) - 0.5 * math.log(al)))
        return GaussianKernel(lc, np.array([[-a * a / (2 * al)]]), np.array([[-1.0 / (2 * al)]]),
                              np.array([[a * math.sqrt(1 - al * al) / al]]))
    if k is TransformKind.C1HAT:
        return GaussianKernel(0.5 * math.log(a) - 0.25 * (_LOG_PI + math.log(al)),
                              np.array([[-a * a / (2 * al)]]), np.array([[-0.5]]),
                              np.array([[a * math.sqrt(2.0 / al)]]))
    if k is TransformKind.B2:
        return GaussianKernel(math.log1p(-al) - _LOG_PI - 0.5 * math.log(al), _sym(0, 0, -eps),
                              _sym(0, 0, -0.5), math.sqrt(eps) * np.eye(2, dtype=complex))
    mix = np.array([[(1 + al) * a, (1 - al) * a], [(1 - al) * b, (1 + al) * b]], dtype=np.complex128)
    qq = -(1 + al * al) / (4 * al)
    q12 = -(1 - al * al) / (2 * al) * a * b
    Axx = _sym(qq * a * a, qq * b * b, q12)
    if k is TransformKind.C2:
        lc = 0.5 * (math.log(a * b) - _LOG_PI) + math.log1p(-al * al) - math.log(2 * math.pi * al)
        Ayy = _sym(-(1 - al * al) / (8 * al), -(1 - al * al) / (8 * al), -(1 + al * al) / (4 * al))
        return GaussianKernel(lc, Axx, Ayy, math.sqrt(2 * (1 - al * al)) / (4 * al) * mix)
    # C2hat
    return GaussianKernel(0.5 * (math.log(a * b) - _LOG_PI), Axx, _sym(-0.5, -0.5, 0.0),
                          mix / math.sqrt(2 * al))


def slot_families(spec: TransformSpec) -> tuple[BasisSpec, BasisSpec]:
    """Orthonormal families ``(X, Y)`` of the two kernel slots."""
    k = spec.kind
    al = spec.alpha
    if spec.arity == 1:
        psi = BasisSpec(Family.OSCILLATOR_PSI_1D, a=spec.a)
        mono = BasisSpec(Family.MONOMIAL_1D)
        if k is TransformKind.A1:
            return psi, mono
        if k is TransformKind.B1:
            return mono, BasisSpec(Family.HOL_HERMITE_H_1D, alpha=al)
        if k is TransformKind.C1:
            return psi, BasisSpec(Family.HOL_HERMITE_H_1D, alpha=al)
        return psi, BasisSpec(Family.HOL_HERMITE_K_1D, alpha=al)
    psi = BasisSpec(Family.OSCILLATOR_PSI_2D, a=spec.a, b=spec.b)
    mono = BasisSpec(Family.MONOMIAL_2D)
    if k is TransformKind.A2:
        return psi, mono
    if k is TransformKind.B2:
        return mono, BasisSpec(Family.HOL_HERMITE_H_2D, alpha=al)
    if k is TransformKind.C2:
        return psi, BasisSpec(Family.HOL_HERMITE_H_2D, alpha=al)
    return psi, BasisSpec(Family.HOL_HERMITE_K_2D, alpha=al)


def _as_args(spec: TransformSpec, args):
    args = tuple(args)
    d = spec.arity
    if len(args) != 2 * d:
        raise ValueError(f"{spec.kind.value} takes {2 * d} arguments, got {len(args)}")
    x = np.array([complex(v) for v in args[:d]])
    y = np.array([complex(v) for v in args[d:]])
    return x, y


def sb_kernel(spec: TransformSpec, args) -> complex:
    """Evaluate a transform kernel.

    Parameters
    ----------
    spec : TransformSpec
    args : sequence
        ``(x, y)`` for one-mode kinds, ``(x1, x2, y1, y2)`` for two-mode
        kinds.  The Y-slot arguments are given unconjugated.
    """
    x, y = _as_args(spec, args)
    return complex(np.exp(gaussian_form(spec).log_value(x, np.conj(y))[0]))


# --------------------------------------------------------------------------
# matrix elements by quadrature


def _coords(d) -> np.ndarray:
    if d.z2 is None:
        return d.z1[:, None]
    return np.stack([d.z1, d.z2], axis=1)


def _log_parts_flat(spec: BasisSpec, N: int, pts: np.ndarray):
    if spec.arity == 1:
        ls, g = basis_log_parts(spec, N - 1, pts[:, 0])
    else:
        ls, g = basis_log_parts(spec, N - 1, pts[:, 0], pts[:, 1])
    ls = ls.reshape(ls.shape[0], -1)
    g = g.reshape(g.shape[0], -1)
    # per-point scale pulled out so the remaining factors stay moderate
    top = ls.real.max(axis=1)
    return top, np.exp(ls - top[:, None]) * g


def default_order(family: BasisSpec) -> int:
    """Per-axis Gauss-Hermite order used by :func:`transform_matrix`.

    Transformed functions are spread wider than the basis itself, so the
    real-line (oscillator) side gets the higher order.  The complex side of
    a two-mode transform carries ``order**4`` nodes and converges quickly.
    """
    on_line = family.family in (Family.OSCILLATOR_PSI_1D, Family.OSCILLATOR_PSI_2D)
    if family.arity == 1:
        return 80 if on_line else 40
    return 40 if on_line else 10


def transform_matrix(spec: TransformSpec, source: BasisSpec, target: BasisSpec, N: int = 8,
                     order: int | None = None, target_order: int | None = None) -> np.ndarray:
    """Matrix ``M[m, n] = <target_m, T source_n>`` computed by quadrature.

    ``T`` is the integral operator of ``spec`` when ``source`` is the
    kernel's Y-slot family and its adjoint when ``source`` is the X-slot
    family.  Both integrals use the natural measures of the families, and
    the transformed function is evaluated at the target nodes by explicit
    quadrature over the source nodes.

    Parameters
    ----------
    spec : TransformSpec
    source, target : BasisSpec
        Must be the two slot families of ``spec`` (in either order).
    N : int
        Functions per mode; the result is ``N x N`` or ``N^2 x N^2``.
    order, target_order : int, optional
        Gauss-Hermite orders per axis on the source and target sides;
        defaults from :func:`default_order`.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    fx, fy = slot_families(spec)
    form = gaussian_form(spec)
    if (source, target) == (fy, fx):
        kern = form
    elif (source, target) == (fx, fy):
        kern = form.adjoint()
    else:
        raise ValueError(f"{spec.kind.value} does not pair {source.family.value} with {target.family.value}")
    o_s = default_order(source) if order is None else order
    o_t = default_order(target) if target_order is None else target_order
    ds = discretize(source, o_s, natural_measure(source))
    dt = discretize(target, o_t, natural_measure(target))
    s_pts = _coords(ds)
    t_pts = _coords(dt)
    s_bar = np.conj(s_pts)

    top_s, vals_s = _log_parts_flat(source, N, s_pts)
    log_g = ds.log_w + top_s + np.einsum("pi,ij,pj->p", s_bar, kern.Ayy, s_bar)
    out, shift = _backend.bilinear_exp_apply(t_pts, s_bar, kern.L, log_g, vals_s)

    top_t, vals_t = _log_parts_flat(target, N, t_pts)
    log_t = (dt.log_w + top_t + kern.log_c + shift
             + np.einsum("pi,ij,pj->p", t_pts, kern.Axx, t_pts))
    # conj(target) * weight * T(source); the target scale is real, so only
    # the kernel part of log_t carries a phase
    with np.errstate(over="ignore", under="ignore"):
        fac = np.exp(log_t)
    return (np.conj(vals_t) * fac[:, None]).T @ out


def unitarity_defect(M: np.ndarray) -> float:
    """``max |M^H M - I|``."""
    return float(np.abs(M.conj().T @ M - np.eye(M.shape[1])).max())


# --------------------------------------------------------------------------
# composition


_COMPOSABLE = {(TransformKind.A1, TransformKind.B1): TransformKind.C1,
               (TransformKind.A2, TransformKind.B2): TransformKind.C2}


def composed_kind(k1: TransformSpec, k2: TransformSpec) -> TransformKind:
    key = (k1.kind, k2.kind)
    if key not in _COMPOSABLE:
        raise ValueError(f"cannot compose {k1.kind.value} with {k2.kind.value}; "
                         "supported: A1 with B1, A2 with B2")
    return _COMPOSABLE[key]


def _principal_grid(P: np.ndarray, order: int):
    """Gauss-Hermite product nodes for ``exp(-r^T P r)`` on the principal
    axes of the positive definite matrix ``P``.

    Returns real points ``r`` (rows) and log compensated weights for plain
    Lebesgue measure ``dr``.
    """
    lam, V = np.linalg.eigh(P)
    if lam.min() <= 0:
        raise ValueError("composition integrand is not Gaussian-decaying")
    x, lcw = _gauss_hermite(order)
    dim = P.shape[0]
    grids = np.meshgrid(*([x] * dim), indexing="ij")
    xi = np.stack([g.ravel() for g in grids], axis=1)
    lw = sum(np.meshgrid(*([np.asarray(lcw)] * dim), indexing="ij")).ravel()
    r = (xi / np.sqrt(lam)[None, :]) @ V.T
    lw = lw - 0.5 * np.sum(np.log(lam))
    return r, lw


def compose_kernels(k1: TransformSpec, k2: TransformSpec, args, order: int | None = None) -> complex:
    """Quadrature value of ``int k1(x, z) k2(z, y) dmu(z)``.

    ``mu`` is the Bargmann measure of the middle (monomial) space.  The
    pair must be A1 with B1 or A2 with B2, sharing parameters as the
    composed C kernel would; ``args`` is laid out as for :func:`sb_kernel`
    of the composed kind.
    """
    composed_kind(k1, k2)
    d = k1.arity
    x, y = _as_args(k1, args)
    f1, f2 = gaussian_form(k1), gaussian_form(k2)
    # exponent in z (d complex variables) with zb = conj(z):
    #   zb^T Ayy1 zb + x^T L1 zb + z^T Axx2 z + z^T L2 conj(y) - |z|^2
    # written on real coordinates r = (Re z, Im z)
    Id = np.eye(d)
    Jz = np.hstack([Id, 1j * Id])
    Jzb = np.hstack([Id, -1j * Id])
    Q = Jzb.T @ f1.Ayy @ Jzb + Jz.T @ f2.Axx @ Jz - np.eye(2 * d)
    Q = 0.5 * (Q + Q.T)
    P = -Q.real
    order = (60 if d == 1 else 30) if order is None else order
    r, lw = _principal_grid(P, order)
    yb = np.conj(y)
    lin = (x @ f1.L) @ Jzb + (f2.L @ yb) @ Jz
    outer = f1.log_c + f2.log_c + x @ f1.Axx @ x + yb @ f2.Ayy @ yb - d * _LOG_PI
    expo = np.einsum("pi,ij,pj->p", r, Q, r) + r @ lin + lw + outer
    shift = expo.real.max()
    return complex(np.exp(shift) * np.sum(np.exp(expo - shift)))


# --------------------------------------------------------------------------
# alpha -> 1 limits


LIMIT_Q = np.linspace(-1.0, 1.0, 5)
LIMIT_Z = np.array([-1.0, -0.5j, 0.0, 0.5 + 0.5j, 1.0j])
LIMIT_Q2 = np.array([-1.0, 0.0, 1.0])
LIMIT_Z2 = np.array([-0.5j, 0.0, 0.5 + 0.5j])


def limit_distance(arity: int, alpha, a: float = 1.0, b: float = 1.0) -> float:
    """Max distance between the hatted C kernel and the A kernel.

    One mode compares ``C1hat`` with ``A1`` on the 5 x 5 grid
    ``LIMIT_Q x LIMIT_Z``; two modes compare ``C2hat`` with ``A2`` on the
    3^4 grid ``LIMIT_Q2^2 x LIMIT_Z2^2``.
    """
    if arity == 1:
        hat, ref = TransformSpec(TransformKind.C1HAT, alpha, a), TransformSpec(TransformKind.A1, None, a)
        q, z = np.meshgrid(LIMIT_Q, LIMIT_Z, indexing="ij")
        x, y = q.ravel()[:, None], z.ravel()[:, None]
    elif arity == 2:
        hat = TransformSpec(TransformKind.C2HAT, alpha, a, b)
        ref = TransformSpec(TransformKind.A2, None, a, b)
        g = np.meshgrid(LIMIT_Q2, LIMIT_Q2, LIMIT_Z2, LIMIT_Z2, indexing="ij")
        x = np.stack([g[0].ravel(), g[1].ravel()], axis=1)
        y = np.stack([g[2].ravel(), g[3].ravel()], axis=1)
    else:
        raise ValueError("arity must be 1 or 2")
    h = np.exp(gaussian_form(hat).log_value(x, np.conj(y)))
    r = np.exp(gaussian_form(ref).log_value(x, np.conj(y)))
    return float(np.abs(h - r).max())

"""Gauss-Hermite product rules on the complex plane and its square.

Grids carry, besides the raw Gauss weights ``w`` for the weight function
``exp(-sx x^2 - sy y^2)``, the log of the *compensated* weights
``w * exp(sx x^2 + sy y^2)``.  Summing ``exp(log_cw) * F`` integrates ``F``
against plain Lebesgue measure, and doing the bookkeeping in logs keeps
the far nodes (where ``w`` underflows) usable.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import NonFiniteIntegrandError, NumericRangeError, ToleranceWarning
from .hermite import AlphaParam, BasisSpec, Family, as_alpha, basis_log_parts

DEFAULT_ORDER_1D = 80
DEFAULT_ORDER_2D = 40
_CHUNK_POINTS = 1 << 16


@lru_cache(maxsize=64)
def _gauss_hermite(order: int):
    k = np.arange(1, order)
    x = eigh_tridiagonal(np.zeros(order), np.sqrt(k / 2.0), eigvals_only=True)
    # Newton polish on the normalized Hermite functions
    for _ in range(3):
        psi, dpsi = _hermite_functions(x, order)
        x = x - psi[-1] / dpsi
    x = 0.5 * (x - x[::-1])
    psi, _ = _hermite_functions(x, order)
    log_cw = -np.log(np.sum(psi[:-1] ** 2, axis=0))
    x.setflags(write=False)
    log_cw.setflags(write=False)
    return x, log_cw


def _hermite_functions(x: np.ndarray, n: int):
    """Orthonormal Hermite functions psi_0..psi_n at x and d/dx of the
    polynomial part of psi_n (scaled the same way)."""
    psi = np.empty((n + 1, x.size))
    psi[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n >= 1:
        psi[1] = math.sqrt(2.0) * x * psi[0]
    for k in range(1, n):
        psi[k + 1] = math.sqrt(2.0 / (k + 1)) * x * psi[k] - math.sqrt(k / (k + 1.0)) * psi[k - 1]
    return psi, math.sqrt(2.0 * n) * psi[n - 1]


def gauss_hermite(order: int):
    """Nodes and weights of the Gauss-Hermite rule for ``exp(-x^2)``.

    Nodes come from the symmetric tridiagonal Jacobi matrix, polished by
    Newton steps; weights use ``w_i e^{x_i^2} = 1 / sum_k psi_k(x_i)^2``.

    Returns
    -------
    nodes, weights, log_cw : ndarray
        ``log_cw = log(w * exp(x^2))``.
    """
    if int(order) != order or order < 2:
        raise ValueError(f"quadrature order must be an integer >= 2, got {order!r}")
    x, log_cw = _gauss_hermite(int(order))
    return x.copy(), np.exp(log_cw - x * x), log_cw.copy()


@dataclass(frozen=True)
class LineGrid:
    """Gauss-Hermite rule on the real line for weight ``exp(-s x^2)``."""

    nodes: np.ndarray
    weights: np.ndarray
    log_cw: np.ndarray
    order: int
    scale: float

    @property
    def points(self) -> np.ndarray:
        return self.nodes.astype(np.complex128)


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor Gauss-Hermite rule on the plane for ``exp(-sx x^2 - sy y^2)``.

    ``nodes`` has shape ``(order**2, 2)`` holding ``(x, y)`` pairs.
    """

    nodes: np.ndarray
    weights: np.ndarray
    log_cw: np.ndarray
    order: int
    scale: tuple[float, float]
    points: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.points is None:
            object.__setattr__(self, "points", self.nodes[:, 0] + 1j * self.nodes[:, 1])


def build_line(order: int, s: float = 1.0) -> LineGrid:
    if not s > 0:
        raise ValueError("scale must be positive")
    x, _, lc = gauss_hermite(order)
    r = 1.0 / math.sqrt(s)
    lcw = lc + math.log(r)
    nodes = x * r
    return LineGrid(nodes, np.exp(lcw - s * nodes * nodes), lcw, int(order), float(s))


def build_grid(order: int, sx: float = 1.0, sy: float = 1.0) -> QuadratureGrid:
    """Product rule exact for ``x^a y^b`` (``a, b <= 2 order - 1``) against
    ``exp(-sx x^2 - sy y^2)``."""
    gx = build_line(order, sx)
    gy = build_line(order, sy)
    X, Y = np.meshgrid(gx.nodes, gy.nodes, indexing="ij")
    nodes = np.column_stack([X.ravel(), Y.ravel()])
    lcw = (gx.log_cw[:, None] + gy.log_cw[None, :]).ravel()
    w = (gx.weights[:, None] * gy.weights[None, :]).ravel()
    return QuadratureGrid(nodes, w, lcw, int(order), (float(sx), float(sy)))


# --------------------------------------------------------------------------
# integration


def _check_finite(vals: np.ndarray, pts, offset: int = 0) -> None:
    flat = vals.reshape(vals.shape[0], -1)
    ok = np.all(np.isfinite(flat), axis=1)
    if not ok.all():
        i = int(np.argmin(ok))
        node = pts[i] if not isinstance(pts, tuple) else tuple(p[i] for p in pts)
        raise NonFiniteIntegrandError(f"integrand is not finite at node {offset + i}: {node!r}",
                                      node=node, index=offset + i)


def _weighted_sum(vals: np.ndarray, w: np.ndarray) -> np.ndarray:
    vals = np.asarray(vals)
    shape = (w.size,) + (1,) * (vals.ndim - 1)
    return np.sum(vals * w.reshape(shape), axis=0)


def integrate_plane(f: Callable, grid: QuadratureGrid, compensate: bool = False):
    """``sum_i w_i f(z_i)``.

    ``f`` receives the complex node array and must return values with the
    node axis first.  With ``compensate=False`` the grid's Gaussian weight
    is part of the integral and ``f`` must not contain it; with
    ``compensate=True`` the weight is divided back out, so the result
    approximates ``int f dx dy``.
    """
    vals = np.asarray(f(grid.points))
    if vals.shape[:1] != (grid.points.size,):
        raise ValueError("integrand must return one value (or array) per node")
    _check_finite(vals, grid.points)
    w = np.exp(grid.log_cw) if compensate else grid.weights
    out = _weighted_sum(vals, w)
    return complex(out) if out.ndim == 0 else out


def mixed_to_z(u: np.ndarray, v: np.ndarray):
    """``z1 = u - v``, ``z2 = conj(u + v)``, inverse of ``u = (conj z2 + z1)/2``,
    ``v = (conj z2 - z1)/2``."""
    return u - v, np.conj(u + v)


def integrate_plane2(f: Callable, grid1: QuadratureGrid, grid2: QuadratureGrid,
                     coords: str = "product", compensate: bool = False, lebesgue: bool = False):
    """Integrate ``f(z1, z2)`` over the square of the plane.

    coords="product"
        ``z1`` runs over ``grid1`` and ``z2`` over ``grid2``; the measure is
        ``d^2 z1 d^2 z2``.
    coords="mixed"
        ``grid1`` discretizes ``u = (conj z2 + z1)/2`` and ``grid2``
        discretizes ``v = (conj z2 - z1)/2``.  The measure is ``d^2u d^2v``,
        which is a quarter of ``d^2 z1 d^2 z2``; pass ``lebesgue=True`` to
        integrate against ``d^2 z1 d^2 z2`` instead.

    Evaluation is chunked over ``grid1`` nodes; chunk sums are combined in a
    fixed order so the result does not depend on scheduling.
    """
    if coords not in ("product", "mixed"):
        raise ValueError(f"coords must be 'product' or 'mixed', got {coords!r}")
    w1 = np.exp(grid1.log_cw) if compensate else grid1.weights
    w2 = np.exp(grid2.log_cw) if compensate else grid2.weights
    p1, p2 = grid1.points, grid2.points
    step = max(1, _CHUNK_POINTS // p2.size)
    total = None
    for start in range(0, p1.size, step):
        a = p1[start:start + step]
        A = np.repeat(a, p2.size)
        Bv = np.tile(p2, a.size)
        z1, z2 = (A, Bv) if coords == "product" else mixed_to_z(A, Bv)
        vals = np.asarray(f(z1, z2))
        if vals.shape[:1] != (A.size,):
            raise ValueError("integrand must return one value (or array) per node")
        _check_finite(vals, (z1, z2), offset=start * p2.size)
        w = (w1[start:start + step, None] * w2[None, :]).ravel()
        part = _weighted_sum(vals, w)
        total = part if total is None else total + part
    if coords == "mixed" and lebesgue:
        total = 4.0 * total
    return complex(total) if np.ndim(total) == 0 else total


# --------------------------------------------------------------------------
# measures


@dataclass(frozen=True)
class Measure:
    """A named weight, given as a log density against Lebesgue measure.

    Names: ``bargmann`` (``e^{-|z|^2}/pi``), ``vanem`` (``e^{alpha x^2 - y^2/alpha}``),
    ``lebesgue`` (``dq`` on the real line), ``bargmann2``, ``vanem2`` (the
    two-variable weight with a quarter of ``d^2 z1 d^2 z2``, see
    :func:`vanem2_log_density`) and ``lebesgue2``.
    """

    name: str
    alpha: AlphaParam | None = None

    def __post_init__(self):
        if self.name not in _MEASURE_ARITY:
            raise ValueError(f"unknown measure {self.name!r}; known: {sorted(_MEASURE_ARITY)}")
        if self.name in ("vanem", "vanem2"):
            if self.alpha is None:
                raise ValueError(f"measure {self.name} needs alpha")
            object.__setattr__(self, "alpha", as_alpha(self.alpha))

    @property
    def arity(self) -> int:
        return _MEASURE_ARITY[self.name]

    @property
    def on_line(self) -> bool:
        return self.name.startswith("lebesgue")

    def log_density(self, z, z2=None) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        if self.name == "bargmann":
            return -np.abs(z) ** 2 - math.log(math.pi)
        if self.name == "vanem":
            al = self.alpha.alpha
            return al * z.real ** 2 - z.imag ** 2 / al
        if self.name == "lebesgue":
            return np.zeros(z.shape)
        z2 = np.asarray(z2, dtype=np.complex128)
        if self.name == "bargmann2":
            return -np.abs(z) ** 2 - np.abs(z2) ** 2 - 2.0 * math.log(math.pi)
        if self.name == "vanem2":
            return vanem2_log_density(self.alpha, z, z2)
        return np.zeros(z.shape)


_MEASURE_ARITY = {"bargmann": 1, "vanem": 1, "lebesgue": 1, "bargmann2": 2, "vanem2": 2, "lebesgue2": 2}


def vanem2_log_density(alpha, z1, z2) -> np.ndarray:
    """Log density of the inner-product measure for the two-variable
    holomorphic Hermite functions.

    The orthogonality weight ``exp(-(1-a)/4 |conj z2 + z1|^2 - (1-a)/(4a) |conj z2 - z1|^2)``
    is normalized against ``d^2u d^2v = d^2z1 d^2z2 / 4``, and the functions
    carry a factor ``exp(-z1 z2 / 2)``, hence the extra ``exp(Re z1 z2)``.
    """
    al = as_alpha(alpha).alpha
    z1 = np.asarray(z1, dtype=np.complex128)
    z2 = np.asarray(z2, dtype=np.complex128)
    s = np.conj(z2)
    return (-(1 - al) / 4 * np.abs(s + z1) ** 2 - (1 - al) / (4 * al) * np.abs(s - z1) ** 2
            + (z1 * z2).real - math.log(4.0))


def twomode_weight(alpha, z1, z2) -> np.ndarray:
    """The bare two-variable orthogonality weight (no normalization factor)."""
    al = as_alpha(alpha).alpha
    s = np.conj(np.asarray(z2, dtype=np.complex128))
    z1 = np.asarray(z1, dtype=np.complex128)
    return np.exp(-(1 - al) / 4 * np.abs(s + z1) ** 2 - (1 - al) / (4 * al) * np.abs(s - z1) ** 2)


def vanem_weight(alpha, z) -> np.ndarray:
    """``exp(-(1-a) x^2 - (1/a - 1) y^2)``, the weight of the one-variable
    polynomial orthogonality."""
    al = as_alpha(alpha).alpha
    z = np.asarray(z, dtype=np.complex128)
    return np.exp(-(1 - al) * z.real ** 2 - (1 / al - 1) * z.imag ** 2)


def vanem_norm(alpha, n: int) -> float:
    """Right side of the one-variable polynomial orthogonality relation."""
    al = as_alpha(alpha).alpha
    return math.pi * math.sqrt(al) / (1 - al) * (2 * (1 + al) / (1 - al)) ** n * math.factorial(n)


def twomode_norm(alpha, m: int, n: int) -> float:
    """Right side of the two-variable polynomial orthogonality relation
    (with respect to ``d^2u d^2v``)."""
    al = as_alpha(alpha).alpha
    return (math.pi ** 2 * al / (1 - al) ** 2 * ((1 + al) / (1 - al)) ** (m + n)
            * math.factorial(m) * math.factorial(n))


# --------------------------------------------------------------------------
# Gram matrices

_FAMILY_MEASURE = {
    Family.MONOMIAL_1D: "bargmann",
    Family.HOL_HERMITE_K_1D: "bargmann",
    Family.HOL_HERMITE_H_1D: "vanem",
    Family.OSCILLATOR_PSI_1D: "lebesgue",
    Family.MONOMIAL_2D: "bargmann2",
    Family.HOL_HERMITE_K_2D: "bargmann2",
    Family.HOL_HERMITE_H_2D: "vanem2",
    Family.OSCILLATOR_PSI_2D: "lebesgue2",
}


def natural_measure(spec: BasisSpec) -> Measure:
    """The measure in which ``spec`` is orthonormal."""
    try:
        name = _FAMILY_MEASURE[spec.family]
    except KeyError:
        raise ValueError(f"{spec.family.value} has no Gaussian orthogonality measure") from None
    return Measure(name, spec.alpha if name.startswith("vanem") else None)


def as_measure(weight, spec: BasisSpec | None = None) -> Measure:
    if isinstance(weight, Measure):
        return weight
    name = str(weight).lower()
    alpha = spec.alpha if (spec is not None and name.startswith("vanem")) else None
    return Measure(name, alpha)


def _check_alpha_range(alpha: AlphaParam | None) -> None:
    if alpha is not None and not (0.05 <= alpha.alpha <= 0.95):
        warnings.warn(f"alpha={alpha.alpha} is outside [0.05, 0.95]; quadrature tolerances degrade",
                      ToleranceWarning, stacklevel=3)


@dataclass(frozen=True)
class Discretization:
    """Nodes (one or two coordinate arrays) and log compensated weights that
    integrate against a family's natural measure."""

    z1: np.ndarray
    z2: np.ndarray | None
    log_w: np.ndarray  # includes the measure density and any Jacobian


def auto_scales(spec: BasisSpec):
    """Gaussian grid scales matched to ``|basis|^2 * measure`` for a family.

    Returns ``(sx, sy)`` for plane families, ``s`` for line families, and a
    pair of such for two-variable families (``u``/``v`` axes when the
    family is integrated in mixed coordinates).
    """
    fam = spec.family
    if fam is Family.MONOMIAL_1D:
        return (1.0, 1.0)
    if fam is Family.HOL_HERMITE_K_1D:
        e = spec.alpha.epsilon
        return (1.0 - e, 1.0 + e)
    if fam is Family.HOL_HERMITE_H_1D:
        al = spec.alpha.alpha
        return (1.0 - al, 1.0 / al - 1.0)
    if fam is Family.OSCILLATOR_PSI_1D:
        return spec.a ** 2
    if fam is Family.MONOMIAL_2D:
        return ((1.0, 1.0), (1.0, 1.0))
    if fam is Family.HOL_HERMITE_K_2D:
        e = spec.alpha.epsilon
        return ((2 * (1 - e),) * 2, (2 * (1 + e),) * 2)
    if fam is Family.HOL_HERMITE_H_2D:
        al = spec.alpha.alpha
        return ((1 - al,) * 2, ((1 - al) / al,) * 2)
    if fam is Family.OSCILLATOR_PSI_2D:
        return (spec.a ** 2, spec.b ** 2)
    raise ValueError(f"{fam.value} has no Gaussian grid")


def uses_mixed_coords(spec: BasisSpec) -> bool:
    return spec.family in (Family.HOL_HERMITE_K_2D, Family.HOL_HERMITE_H_2D)


def discretize(spec: BasisSpec, order: int | None = None, measure: Measure | None = None) -> Discretization:
    """Quadrature nodes and log weights for ``spec``'s natural measure.

    For two-variable families this materializes the full ``order**4`` node
    set (``order**2`` for the oscillator family).
    """
    measure = natural_measure(spec) if measure is None else measure
    sc = auto_scales(spec)
    fam = spec.family
    if spec.arity == 1:
        order = DEFAULT_ORDER_1D if order is None else order
        if fam is Family.OSCILLATOR_PSI_1D:
            g = build_line(order, sc)
            return Discretization(g.points, None, g.log_cw + measure.log_density(g.points))
        g = build_grid(order, *sc)
        return Discretization(g.points, None, g.log_cw + measure.log_density(g.points))
    order = DEFAULT_ORDER_2D if order is None else order
    if fam is Family.OSCILLATOR_PSI_2D:
        g1, g2 = build_line(order, sc[0]), build_line(order, sc[1])
        q1 = np.repeat(g1.points, g2.points.size)
        q2 = np.tile(g2.points, g1.points.size)
        lw = np.repeat(g1.log_cw, g2.points.size) + np.tile(g2.log_cw, g1.points.size)
        return Discretization(q1, q2, lw)
    g1, g2 = build_grid(order, *sc[0]), build_grid(order, *sc[1])
    a = np.repeat(g1.points, g2.points.size)
    b = np.tile(g2.points, g1.points.size)
    lw = np.repeat(g1.log_cw, g2.points.size) + np.tile(g2.log_cw, g1.points.size)
    if uses_mixed_coords(spec):
        z1, z2 = mixed_to_z(a, b)
        lw = lw + math.log(4.0)
    else:
        z1, z2 = a, b
    return Discretization(z1, z2, lw + measure.log_density(z1, z2))


def weighted_basis(spec: BasisSpec, N: int, z1, z2, log_w) -> np.ndarray:
    """Rows ``sqrt(w_i) * basis_j(z_i)``, so that ``A^H A`` is the Gram matrix.

    Columns are the ``N`` (1D) or ``N*N`` (2D, row-major over ``(m, n)``)
    basis functions.
    """
    ls, g = basis_log_parts(spec, N - 1, z1, z2)
    half = 0.5 * np.asarray(log_w)
    shape = (-1,) + (1,) * (g.ndim - 1)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        A = np.exp(ls + half.reshape(shape)) * g
    if not np.all(np.isfinite(A)):
        raise NumericRangeError("weighted basis values overflow; lower the quadrature order")
    return A.reshape(A.shape[0], -1)


def gram_matrix(spec: BasisSpec, weight=None, N: int = 8, order: int | None = None) -> np.ndarray:
    """Quadrature Gram matrix ``G[j, k] = <basis_j, basis_k>``.

    Parameters
    ----------
    spec : BasisSpec
    weight : Measure or str, optional
        Must be the family's orthogonality measure (default).
    N : int
        Number of functions per mode.
    order : int, optional
        Gauss-Hermite order per axis; 80 for 1D families, 40 for 2D.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    nat = natural_measure(spec)
    meas = nat if weight is None else as_measure(weight, spec)
    if meas != nat:
        raise ValueError(f"weight {meas.name!r} does not match family {spec.family.value} "
                         f"(expects {nat.name!r}{'' if nat.alpha is None else f' with alpha={nat.alpha.alpha}'})")
    _check_alpha_range(spec.alpha)
    d = discretize(spec, order, meas)
    ncols = N if spec.arity == 1 else N * N
    G = np.zeros((ncols, ncols), dtype=np.complex128)
    step = max(1, _CHUNK_POINTS // max(1, ncols // 4))
    for start in range(0, d.z1.size, step):
        sl = slice(start, start + step)
        A = weighted_basis(spec, N, d.z1[sl], None if d.z2 is None else d.z2[sl], d.log_w[sl])
        G += A.conj().T @ A
    return G

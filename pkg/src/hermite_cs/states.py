"""Truncated-Fock coherent and squeezed states and the operators acting on them.

Conventions
-----------
Operator matrices act on coefficient columns: ``A[i, j] = <e_i, A e_j>``.
Two-mode objects are flattened row-major over ``(m, n)``, i.e. index
``m * N + n``, with the first mode as the slow index.  The same matrices
represent the operators on the monomial basis of the Bargmann space.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import ConditioningError, DomainError, TruncationWarning
from .hermite import BasisSpec, Family, as_alpha, basis_table, squeezed_table, zeta_of_xi
from .quadrature import gram_matrix

TAIL_TOL = 1e-6
XI_MAX = 5.0


# --------------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class FockVector:
    """Coefficients of a one-mode state in an orthonormal basis."""

    coeffs: np.ndarray
    tail: float = 0.0
    warnings: tuple = ()

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128).ravel()
        if c.size < 1 or not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite and non-empty")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True)
class CoeffMatrix:
    """``N x N`` coefficients ``c[m, n]`` of a two-mode state."""

    coeffs: np.ndarray
    tail: float = 0.0
    warnings: tuple = ()

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.size == 0:
            raise ValueError("coefficient matrix must be square and non-empty")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dims(self) -> tuple[int, int]:
        return self.coeffs.shape

    def flat(self) -> np.ndarray:
        return self.coeffs.ravel()

    @classmethod
    def product(cls, u: FockVector, v: FockVector) -> "CoeffMatrix":
        return cls(np.outer(u.coeffs, v.coeffs))


@dataclass(frozen=True)
class OperatorMatrix:
    """A square operator matrix with a label and the number of modes."""

    entries: np.ndarray
    label: str
    arity: int = 1

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.all(np.isfinite(a)):
            raise ValueError("operator must be a finite square matrix")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries, f"{self.label}*{other.label}", self.arity)
        return self.entries @ np.asarray(other)

    def dagger(self, label: str | None = None) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, label or f"{self.label}^H", self.arity)


def commutator(a, b) -> np.ndarray:
    a = a.entries if isinstance(a, OperatorMatrix) else np.asarray(a)
    b = b.entries if isinstance(b, OperatorMatrix) else np.asarray(b)
    return a @ b - b @ a


def interior_mask(N: int, arity: int, exclude: int = 2) -> np.ndarray:
    """Boolean mask of flat indices not touched by the truncation corner."""
    keep = np.arange(N) < N - exclude
    if arity == 1:
        return keep
    return np.outer(keep, keep).ravel()


def interior_defect(M: np.ndarray, target: np.ndarray, N: int, arity: int, exclude: int = 2) -> float:
    """``max |M - target|`` restricted to the interior rows and columns."""
    k = interior_mask(N, arity, exclude)
    return float(np.abs((np.asarray(M) - np.asarray(target))[np.ix_(k, k)]).max())


# --------------------------------------------------------------------------
# states


def _split_point(z):
    if isinstance(z, (tuple, list)):
        if len(z) != 2:
            raise ValueError("a two-mode point is a pair (z1, z2)")
        return complex(z[0]), complex(z[1])
    return complex(z)


def _tail_1d(c: np.ndarray) -> float:
    m = np.abs(c).max()
    return 0.0 if m == 0 else float(abs(c[-1]) / m)


def _tail_2d(c: np.ndarray) -> float:
    m = np.abs(c).max()
    if m == 0:
        return 0.0
    return float(max(np.abs(c[-1, :]).max(), np.abs(c[:, -1]).max()) / m)


def _warn_tail(tail: float, N: int) -> tuple:
    if tail > TAIL_TOL:
        msg = f"truncation tail {tail:.3g} exceeds {TAIL_TOL:g} at N={N}; increase N"
        warnings.warn(msg, TruncationWarning, stacklevel=3)
        return (msg,)
    return ()


def coherent_state(z, alpha, N: int, normalize: bool = False):
    """Coherent state built from the squeezed Hermite family.

    Parameters
    ----------
    z : complex or pair of complex
        A single point gives a one-mode :class:`FockVector` with
        coefficients ``k_n(z)``; a pair gives a :class:`CoeffMatrix` with
        ``k_{m,n}(z1, z2)``.
    alpha : float or AlphaParam
    N : int
        Truncation per mode, at least 2.
    normalize : bool
        Divide by the vector norm.  States are unnormalized by default.

    The result carries ``tail``, the last retained coefficient (row and
    column for two modes) relative to the largest one; a
    :class:`TruncationWarning` is issued when it exceeds ``1e-6``.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    al = as_alpha(alpha)
    pt = _split_point(z)
    if isinstance(pt, tuple):
        spec = BasisSpec(Family.HOL_HERMITE_K_2D, alpha=al)
        c = basis_table(spec, N - 1, np.array([pt[0]]), np.array([pt[1]]))[0]
        if normalize:
            c = c / np.linalg.norm(c)
        tail = _tail_2d(c)
        return CoeffMatrix(c, tail, _warn_tail(tail, N))
    spec = BasisSpec(Family.HOL_HERMITE_K_1D, alpha=al)
    c = basis_table(spec, N - 1, np.array([pt]))[0]
    if normalize:
        c = c / np.linalg.norm(c)
    tail = _tail_1d(c)
    return FockVector(c, tail, _warn_tail(tail, N))


def standard_cs(z, N: int) -> FockVector:
    """Normalized standard coherent state ``exp(-|z|^2/2) z^n / sqrt(n!)``."""
    if N < 2:
        raise ValueError("N must be >= 2")
    z = complex(z)
    c = basis_table(BasisSpec(Family.MONOMIAL_1D), N - 1, np.array([z]))[0] * math.exp(-0.5 * abs(z) ** 2)
    tail = _tail_1d(c)
    return FockVector(c, tail, _warn_tail(tail, N))


@dataclass(frozen=True)
class OverlapReport:
    overlap: complex
    modulus_sq: float
    gaussian: float  # exp(-|z - w|^2)
    note: str


def standard_overlap(z, w, N: int = 60) -> OverlapReport:
    """Overlap of two standard coherent states, computed from coefficients.

    The squared modulus equals ``exp(-|z-w|^2)``; the overlap itself
    carries the phase ``exp(i Im(conj(z) w))``, so it is reported rather
    than compared with the real Gaussian.
    """
    cz, cw = standard_cs(z, N), standard_cs(w, N)
    ov = complex(np.vdot(cz.coeffs, cw.coeffs))
    return OverlapReport(ov, abs(ov) ** 2, math.exp(-abs(complex(z) - complex(w)) ** 2),
                         "the overlap has modulus squared exp(-|z-w|^2) and a nonzero phase "
                         "unless Im(conj(z) w) = 0")


# --------------------------------------------------------------------------
# ladder and Bogoliubov operators


def _b(N: int) -> np.ndarray:
    b = np.zeros((N, N))
    n = np.arange(1, N)
    b[n - 1, n] = np.sqrt(n)
    return b


def _mode(op: np.ndarray, which: int) -> np.ndarray:
    eye = np.eye(op.shape[0])
    return np.kron(op, eye) if which == 1 else np.kron(eye, op)


def ladder_ops(N: int, arity: int = 1):
    """Annihilation and creation matrices.

    Returns ``(b, bdag)`` for one mode and ``(b1, b2, b1dag, b2dag)`` for
    two.  ``b e_n = sqrt(n) e_{n-1}``, so the ``sqrt(n)`` entries sit just
    above the diagonal in the column convention.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    b = _b(N)
    if arity == 1:
        return OperatorMatrix(b, "b"), OperatorMatrix(b.T, "bdag")
    if arity != 2:
        raise ValueError("arity must be 1 or 2")
    b1, b2 = _mode(b, 1), _mode(b, 2)
    return (OperatorMatrix(b1, "b1", 2), OperatorMatrix(b2, "b2", 2),
            OperatorMatrix(b1.T, "b1dag", 2), OperatorMatrix(b2.T, "b2dag", 2))


def bogoliubov_coefficients(alpha) -> tuple[float, float]:
    al = as_alpha(alpha).alpha
    s = 2.0 * math.sqrt(al)
    return (1.0 + al) / s, (1.0 - al) / s


def bogoliubov_ops(alpha, N: int, arity: int = 1) -> dict:
    """Bogoliubov-transformed ladder operators.

    One mode: ``Bminus = c1 b + c2 bdag`` and its adjoint ``Bplus`` with
    ``c1 = (1+alpha)/(2 sqrt(alpha))`` and ``c2 = (1-alpha)/(2 sqrt(alpha))``.
    Two modes: ``B1minus = c1 b1 + c2 b2dag``, ``B2minus = c2 b1dag + c1 b2``
    and their adjoints.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    c1, c2 = bogoliubov_coefficients(alpha)
    b = _b(N)
    if arity == 1:
        bm = c1 * b + c2 * b.T
        return {"Bminus": OperatorMatrix(bm, "Bminus"), "Bplus": OperatorMatrix(bm.T, "Bplus")}
    if arity != 2:
        raise ValueError("arity must be 1 or 2")
    b1, b2 = _mode(b, 1), _mode(b, 2)
    m1 = c1 * b1 + c2 * b2.T
    m2 = c2 * b1.T + c1 * b2
    return {"B1minus": OperatorMatrix(m1, "B1minus", 2), "B2minus": OperatorMatrix(m2, "B2minus", 2),
            "B1plus": OperatorMatrix(m1.T, "B1plus", 2), "B2plus": OperatorMatrix(m2.T, "B2plus", 2)}


def annihilation_residual(state, op, eigenvalue, exclude: int = 2) -> float:
    """Relative eigen-residual ``|op s - lambda s| / |s|`` on interior rows.

    Rows whose index (either index, for two modes) lies in the last
    ``exclude`` positions are dropped, since the truncated operator cannot
    reproduce them.  ``exclude=0`` keeps every row and so measures the
    truncation error as well.
    """
    if isinstance(state, CoeffMatrix):
        s, N, arity = state.flat(), state.dims[0], 2
    elif isinstance(state, FockVector):
        s, N, arity = state.coeffs, state.dim, 1
    else:
        s = np.asarray(state, dtype=np.complex128).ravel()
        N, arity = s.size, 1
    A = op.entries if isinstance(op, OperatorMatrix) else np.asarray(op)
    if A.shape != (s.size, s.size):
        raise ValueError(f"operator shape {A.shape} does not match state size {s.size}")
    ns = np.linalg.norm(s)
    if ns == 0:
        raise ValueError("state has zero norm")
    r = A @ s - complex(eigenvalue) * s
    if exclude:
        r = r[interior_mask(N, arity, exclude)]
    return float(np.linalg.norm(r) / ns)


# --------------------------------------------------------------------------
# su(1,1)


def su11_generators(arity: int, N: int):
    """``(Kplus, Kminus, K0)`` on the monomial (Fock) basis.

    One mode: ``Kplus = bdag^2 / 2``, ``Kminus = b^2 / 2``,
    ``K0 = (n + 1/2) / 2``.  Two modes: ``Kplus = b1dag b2dag``,
    ``Kminus = b1 b2``, ``K0 = (1 + n1 + n2) / 2``.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    b = _b(N)
    n = np.arange(N)
    if arity == 1:
        kp = 0.5 * b.T @ b.T
        k0 = np.diag(0.5 * (n + 0.5))
    elif arity == 2:
        b1, b2 = _mode(b, 1), _mode(b, 2)
        kp = b1.T @ b2.T
        k0 = np.diag(0.5 * (1.0 + np.add.outer(n, n).ravel()))
    else:
        raise ValueError("arity must be 1 or 2")
    return (OperatorMatrix(kp, "Kplus", arity), OperatorMatrix(kp.T.copy(), "Kminus", arity),
            OperatorMatrix(k0, "K0", arity))


def su11_defects(arity: int, N: int, exclude: int = 2) -> dict:
    """Interior-block defects of ``[K-, K+] = 2 K0`` and ``[K0, K+-] = +-K+-``."""
    kp, km, k0 = su11_generators(arity, N)
    return {
        "[K-,K+]-2K0": interior_defect(commutator(km, kp), 2 * k0.entries, N, arity, exclude),
        "[K0,K+]-K+": interior_defect(commutator(k0, kp), kp.entries, N, arity, exclude),
        "[K0,K-]+K-": interior_defect(commutator(k0, km), -km.entries, N, arity, exclude),
    }


# --------------------------------------------------------------------------
# squeeze operator


def _check_xi(xi: complex) -> complex:
    xi = complex(xi)
    if not math.isfinite(abs(xi)):
        raise ValueError("xi must be finite")
    if abs(xi) >= XI_MAX:
        raise ConditioningError(f"|xi| = {abs(xi):.3g} >= {XI_MAX}: |zeta| is too close to 1")
    return xi


def _nilpotent_exp(A: np.ndarray) -> np.ndarray:
    # exact for strictly triangular A: the series stops by itself
    out = np.eye(A.shape[0], dtype=np.complex128)
    term = out.copy()
    for k in range(1, A.shape[0] + 1):
        term = term @ A / k
        if not np.any(term):
            break
        out = out + term
    return out


def _chains(M: int, N: int):
    """Two-mode index chains of fixed ``m - n`` on ``M`` states per mode.

    Yields ``(m, n, up, keep, flat)``: chain indices, the ``K+`` weights
    ``sqrt((m+1)(n+1))`` linking consecutive members, the members that
    survive truncation to ``N`` per mode and their flat indices there.
    """
    for d in range(-(N - 1), N):
        m = np.arange(max(0, d), M + min(0, d))
        n = m - d
        keep = (m < N) & (n < N)
        yield m, n, np.sqrt((m[:-1] + 1.0) * (n[:-1] + 1.0)), keep, (m * N + n)[keep]


def _shift(up: np.ndarray) -> np.ndarray:
    L = up.size + 1
    G = np.zeros((L, L))
    G[np.arange(1, L), np.arange(L - 1)] = up
    return G


def _exact(xi: complex, M: int, arity: int, N: int) -> np.ndarray:
    """``expm(xi K+ - conj(xi) K-)`` on ``M`` states per mode, cut to ``N``."""
    if arity == 1:
        kp, km, _ = su11_generators(1, M)
        return expm(xi * kp.entries - np.conj(xi) * km.entries)[:N, :N]
    # the generators keep m - n fixed, so each chain is exponentiated alone
    S = np.zeros((N * N, N * N), dtype=np.complex128)
    for m, n, up, keep, idx in _chains(M, N):
        G = _shift(up)
        E = expm(xi * G - np.conj(xi) * G.T)
        S[np.ix_(idx, idx)] = E[np.ix_(keep, keep)]
    return S


def _zassenhaus(zeta: complex, N: int, arity: int, sign: float) -> np.ndarray:
    log_mid = math.log1p(sign * abs(zeta) ** 2)
    if arity == 1:
        kp, km, k0 = su11_generators(1, N)
        mid = np.exp(log_mid * np.diag(k0.entries).real)
        return (_nilpotent_exp(zeta * kp.entries) * mid[None, :]) @ _nilpotent_exp(-np.conj(zeta) * km.entries)
    S = np.zeros((N * N, N * N), dtype=np.complex128)
    for m, n, up, keep, idx in _chains(N, N):
        G = _shift(up)
        mid = np.exp(log_mid * 0.5 * (1.0 + m + n))
        S[np.ix_(idx, idx)] = (_nilpotent_exp(zeta * G) * mid[None, :]) @ _nilpotent_exp(-np.conj(zeta) * G.T)
    return S


def squeeze_matrix(xi, N: int, arity: int = 1, method: str = "exact", pad: int | None = None,
                   middle_factor: str = "minus") -> OperatorMatrix:
    """Matrix of ``S(xi) = exp(xi K+ - conj(xi) K-)`` on ``N`` states per mode.

    method="exact"
        Matrix exponential on ``N + pad`` states per mode, cut back to
        ``N``.  ``pad`` defaults to ``max(2N, 60)``, enough for the entries
        to match the untruncated operator to about 1e-11 at ``|xi| <= 0.5``.
        ``pad=0`` exponentiates the truncated generator, which gives an
        exactly unitary matrix that differs from the true operator near the
        truncation edge.
    method="zassenhaus"
        ``exp(zeta K+) exp(log(1 -+ |zeta|^2) K0) exp(-conj(zeta) K-)`` with
        ``zeta = xi tanh|xi| / |xi|``.  The outer factors are triangular, so
        their series terminate and every retained entry is exact.
        ``middle_factor="minus"`` uses ``log(1 - |zeta|^2)``; ``"plus"``
        uses ``log(1 + |zeta|^2)``, which does not reproduce ``S``.
    """
    xi = _check_xi(xi)
    if N < 8:
        raise ValueError("N must be >= 8")
    if arity not in (1, 2):
        raise ValueError("arity must be 1 or 2")
    if method == "exact":
        pad = max(2 * N, 60) if pad is None else int(pad)
        if pad < 0:
            raise ValueError("pad must be >= 0")
        return OperatorMatrix(_exact(xi, N + pad, arity, N), "Squeeze", arity)
    if method != "zassenhaus":
        raise ValueError(f"method must be 'exact' or 'zassenhaus', got {method!r}")
    if middle_factor not in ("minus", "plus"):
        raise ValueError("middle_factor must be 'minus' or 'plus'")
    zeta = zeta_of_xi(xi)
    sign = -1.0 if middle_factor == "minus" else 1.0
    return OperatorMatrix(_zassenhaus(zeta, N, arity, sign), "Squeeze", arity)


def squeezed_basis(index, point, zeta) -> complex:
    """Closed-form squeezed basis function at one point.

    ``index`` and ``point`` are scalars for one mode and pairs for two.
    Small ``|zeta|`` is handled by the stable recurrence, which reduces to
    the monomials at ``zeta = 0``.
    """
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise DomainError(f"|zeta| must be < 1, got {abs(zeta)!r}")
    if isinstance(index, (tuple, list)):
        m, n = (int(i) for i in index)
        z1, z2 = (complex(p) for p in point)
        return complex(squeezed_table(zeta, n, np.array([z1]), np.array([z2]), mmax=m)[0, m, n])
    n = int(index)
    return complex(squeezed_table(zeta, n, np.array([complex(point)]))[0, n])


def _monomial_values(N: int, pts1, pts2=None) -> np.ndarray:
    if pts2 is None:
        return basis_table(BasisSpec(Family.MONOMIAL_1D), N - 1, pts1)
    v = basis_table(BasisSpec(Family.MONOMIAL_2D), N - 1, pts1, pts2)
    return v.reshape(v.shape[0], -1)


def squeeze_column_defect(xi, N: int, arity: int = 1, block: int | None = None, points=None,
                          work: int | None = None) -> float:
    """Largest difference between ``S(xi) Phi_n`` and the closed-form
    squeezed basis over the first ``block`` indices per mode.

    ``S(xi) Phi_n = sum_m S[m, n] Phi_m`` is summed with the Zassenhaus
    matrix on ``work`` states per mode (default ``N + 60`` for one mode and
    ``N + 30`` for two), whose retained entries are exact, so the comparison
    is limited by the sum's tail only.
    """
    xi = _check_xi(xi)
    zeta = zeta_of_xi(xi)
    block = N - 10 if block is None else block
    work = N + (60 if arity == 1 else 30) if work is None else work
    if points is None:
        r = np.array([0.0, 0.4, 0.8, 1.0])
        th = np.array([0.0, 1.3, 2.9, 4.4])
        points = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    pts = np.asarray(points, dtype=np.complex128)
    S = squeeze_matrix(xi, work, arity, method="zassenhaus").entries
    if arity == 1:
        num = _monomial_values(work, pts) @ S[:, :block]
        ref = squeezed_table(zeta, block - 1, pts)
        return float(np.abs(num - ref).max())
    p1 = np.repeat(pts, pts.size)
    p2 = np.tile(pts, pts.size)
    cols = (np.arange(block)[:, None] * work + np.arange(block)[None, :]).ravel()
    num = _monomial_values(work, p1, p2) @ S[:, cols]
    ref = squeezed_table(zeta, block - 1, p1, p2).reshape(p1.size, -1)
    return float(np.abs(num - ref).max())


def _fd(f, z, h):
    return (f(z + h) - f(z - h)) / (2.0 * h)


@dataclass(frozen=True)
class LadderReport:
    raise_defect: float
    lower_defect: float
    vacuum: float  # |A- Phi_0| at the sample points

    @property
    def max_defect(self) -> float:
        return max(self.raise_defect, self.lower_defect, self.vacuum)


def squeezed_ladder_check(zeta, N: int = 7, arity: int = 1, points=None, h: float = 1e-5) -> LadderReport:
    """Check the ladder actions of ``A+`` and ``A-`` on the squeezed basis by
    central differences.

    One mode: ``A+ = (z - conj(zeta) d/dz) / sqrt(1-|zeta|^2)`` must give
    ``sqrt(n+1) Phi_{n+1}`` and ``A- = (d/dz - zeta z) / sqrt(1-|zeta|^2)``
    must give ``sqrt(n) Phi_{n-1}``, for ``n < N``.  Two modes: the mode-1
    operators ``(z1 - conj(zeta) d/dz2)`` and ``(d/dz1 - zeta z2)`` and their
    mode-2 mirrors, for ``m, n < N``.  Reports absolute defects.
    """
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise DomainError(f"|zeta| must be < 1, got {abs(zeta)!r}")
    s = math.sqrt(1.0 - abs(zeta) ** 2)
    zb = zeta.conjugate()
    if points is None:
        points = np.array([0.3, -0.5 + 0.4j, 0.7j, 0.6 - 0.6j, 1.0])
    pts = np.asarray(points, dtype=np.complex128)
    if arity == 1:
        def T(z):
            return squeezed_table(zeta, N, z)
        v, d = T(pts), _fd(T, pts, h)
        n = np.arange(N)
        up = (pts[:, None] * v[:, :N] - zb * d[:, :N]) / s
        dn = (d - zeta * pts[:, None] * v) / s
        r = np.abs(up - np.sqrt(n + 1.0) * v[:, 1:]).max()
        lo = np.abs(dn[:, 1:N] - np.sqrt(n[1:]) * v[:, :N - 1]).max()
        return LadderReport(float(r), float(lo), float(np.abs(dn[:, 0]).max()))
    if arity != 2:
        raise ValueError("arity must be 1 or 2")
    p1 = np.repeat(pts, pts.size)
    p2 = np.tile(pts, pts.size)

    def T(a, b):
        return squeezed_table(zeta, N, a, b)
    v = T(p1, p2)
    d1 = (T(p1 + h, p2) - T(p1 - h, p2)) / (2 * h)
    d2 = (T(p1, p2 + h) - T(p1, p2 - h)) / (2 * h)
    z1 = p1[:, None, None]
    z2 = p2[:, None, None]
    idx = np.arange(N)
    a1p = (z1 * v - zb * d2) / s
    a2p = (z2 * v - zb * d1) / s
    a1m = (d1 - zeta * z2 * v) / s
    a2m = (d2 - zeta * z1 * v) / s
    sq = np.sqrt(idx + 1.0)
    r = max(np.abs(a1p[:, :N, :N] - sq[None, :, None] * v[:, 1:, :N]).max(),
            np.abs(a2p[:, :N, :N] - sq[None, None, :] * v[:, :N, 1:]).max())
    lo = max(np.abs(a1m[:, 1:N, :N] - np.sqrt(idx[1:])[None, :, None] * v[:, :N - 1, :N]).max(),
             np.abs(a2m[:, :N, 1:N] - np.sqrt(idx[1:])[None, None, :] * v[:, :N, :N - 1]).max())
    vac = max(np.abs(a1m[:, 0, :]).max(), np.abs(a2m[:, :, 0]).max())
    return LadderReport(float(r), float(lo), float(vac))


# --------------------------------------------------------------------------
# Bargmann representation of b and b^dagger


@dataclass(frozen=True)
class DiffOpRecord:
    """Coefficients of ``b = b_d d/dz - b_z z`` and ``bdag = bdag_z z - bdag_d d/dz``.

    For two modes ``b1 = b_d d/dz1 - b_z z2`` and
    ``b1dag = bdag_z z1 - bdag_d d/dz2``, with the mode-2 operators obtained
    by swapping the variables.
    """

    form: str
    arity: int
    b_d: float
    b_z: float
    bdag_z: float
    bdag_d: float
    ladder_defect: float

    def as_dict(self) -> dict:
        return {"form": self.form, "arity": self.arity, "b": {"d": self.b_d, "z": -self.b_z},
                "bdag": {"z": self.bdag_z, "d": -self.bdag_d}, "ladder_defect": self.ladder_defect}


def _rep_coefficients(al: float, form: str) -> tuple[float, float]:
    if form == "quadratic":
        return (1 + al * al) / (2 * al), (1 - al * al) / (2 * al)
    if form == "ladder":
        s = 2.0 * math.sqrt(al)
        return (1 + al) / s, (1 - al) / s
    raise ValueError("form must be 'quadratic' or 'ladder'")


def bargmann_rep_bdag_b(alpha, arity: int = 1, form: str = "quadratic", N: int = 6,
                        h: float = 1e-5) -> DiffOpRecord:
    """Differential-operator coefficients of ``b`` and ``bdag`` acting on the
    squeezed Hermite family.

    form="quadratic"
        ``b = (1+a^2)/(2a) d/dz - (1-a^2)/(2a) z``.
    form="ladder"
        ``b = (1+a)/(2 sqrt a) d/dz - (1-a)/(2 sqrt a) z``, the pair for
        which ``b k_n = sqrt(n) k_{n-1}`` and ``bdag k_n = sqrt(n+1) k_{n+1}``.

    ``ladder_defect`` is the largest finite-difference defect of those two
    ladder relations for ``n < N`` at a few sample points (mode-wise for two
    modes).
    """
    al = as_alpha(alpha).alpha
    cd, cz = _rep_coefficients(al, form)
    spec = BasisSpec(Family.HOL_HERMITE_K_1D if arity == 1 else Family.HOL_HERMITE_K_2D, alpha=al)
    pts = np.array([0.3, -0.5 + 0.4j, 0.7j, 0.6 - 0.6j])
    if arity == 1:
        def T(z):
            return basis_table(spec, N, z)
        v, d = T(pts), _fd(T, pts, h)
        idx = np.arange(N)
        bv = cd * d - cz * pts[:, None] * v
        bdv = cd * pts[:, None] * v - cz * d
        lo = np.abs(bv[:, 1:N] - np.sqrt(idx[1:]) * v[:, :N - 1]).max()
        up = np.abs(bdv[:, :N] - np.sqrt(idx + 1.0) * v[:, 1:]).max()
        defect = float(max(lo, up, np.abs(bv[:, 0]).max()))
    elif arity == 2:
        p1 = np.repeat(pts, pts.size)
        p2 = np.tile(pts, pts.size)

        def T(a, b):
            return basis_table(spec, N, a, b)
        v = T(p1, p2)
        d1 = (T(p1 + h, p2) - T(p1 - h, p2)) / (2 * h)
        d2 = (T(p1, p2 + h) - T(p1, p2 - h)) / (2 * h)
        z1 = p1[:, None, None]
        z2 = p2[:, None, None]
        idx = np.arange(N)
        b1 = cd * d1 - cz * z2 * v
        b1d = cd * z1 * v - cz * d2
        b2 = cd * d2 - cz * z1 * v
        b2d = cd * z2 * v - cz * d1
        sq = np.sqrt(idx + 1.0)
        defect = float(max(
            np.abs(b1[:, 1:N, :N] - np.sqrt(idx[1:])[None, :, None] * v[:, :N - 1, :N]).max(),
            np.abs(b2[:, :N, 1:N] - np.sqrt(idx[1:])[None, None, :] * v[:, :N, :N - 1]).max(),
            np.abs(b1d[:, :N, :N] - sq[None, :, None] * v[:, 1:, :N]).max(),
            np.abs(b2d[:, :N, :N] - sq[None, None, :] * v[:, :N, 1:]).max()))
    else:
        raise ValueError("arity must be 1 or 2")
    return DiffOpRecord(form, arity, cd, cz, cd, cz, defect)


# --------------------------------------------------------------------------
# resolution of the identity


def resolution_identity_residual(alpha, N: int = 8, order: int | None = None, arity: int = 1) -> float:
    """``max |M - I|`` for ``M = int conj(c(z)) c(z)^T dmu(z)``.

    ``c(z)`` is the truncated coherent-state coefficient vector
    (:func:`coherent_state`) and ``mu`` the Bargmann measure of one or two
    variables.  Entry ``(m, n)`` of ``M`` is the inner product of the
    corresponding basis functions, so this is the quadrature Gram matrix of
    the family.
    """
    al = as_alpha(alpha)
    fam = Family.HOL_HERMITE_K_1D if arity == 1 else Family.HOL_HERMITE_K_2D
    if arity not in (1, 2):
        raise ValueError("arity must be 1 or 2")
    G = gram_matrix(BasisSpec(fam, alpha=al), N=N, order=order)
    return float(np.abs(G - np.eye(G.shape[0])).max())

import math

import numpy as np
import pytest

import oracles as O
from hermite_cs import BasisSpec, ConvergenceError, DomainError, Family, SeriesDivergenceError
from hermite_cs.rkhs import (
    KernelSpec,
    MomentSequence,
    basis_for_kernel,
    closed_kernel,
    factorial_ratio_series,
    hermitian_pd_check,
    kernel_for_basis,
    log_convexity_check,
    radial_measure_norms,
    weighted_shift_matrices,
    zaremba_kernel,
)

PTS = [0, 0.7, -1.2j, 1.0 + 1.0j, -1.5]
DISK = [0, 0.5, -0.4j, 0.5 + 0.5j, -0.8]


def test_bargmann_examples():
    assert closed_kernel(KernelSpec("Bargmann1D"), 0, 1) == 1
    assert closed_kernel(KernelSpec("Bargmann2D"), (0.3, 1j), (1, 0.2)) == pytest.approx(np.exp(0.3 + 0.2j))


@pytest.mark.parametrize("kind,alpha,pts", [
    ("Bargmann1D", None, PTS), ("VanEM1D", 0.5, PTS), ("VanEM1D", 0.7, PTS),
    ("Szego", None, DISK), ("Bergman", None, DISK),
])
def test_zaremba_matches_closed(kind, alpha, pts):
    spec = KernelSpec(kind, alpha)
    b = basis_for_kernel(spec)
    for x in pts:
        for y in pts:
            assert abs(zaremba_kernel(b, x, y, 80) - closed_kernel(spec, x, y)) <= 1e-9


def test_vanem_closed_matches_direct_oracle():
    for al in (0.3, 0.5, 0.7):
        f = lambda n, z: O.h1(al, n, z)  # noqa: E731
        ref = O.zaremba(f, 0.3 + 0.2j, -0.4 + 0.5j, 60)
        assert closed_kernel(KernelSpec("VanEM1D", al), 0.3 + 0.2j, -0.4 + 0.5j) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("al", [0.5, 0.7])
def test_zaremba_2d(al):
    spec = KernelSpec("VanEM2D", al)
    b = basis_for_kernel(spec)
    for x, y in [((0.3, -0.2j), (1.0, 0.5)), ((1.5j, -1), (0.2 + 0.2j, 0))]:
        assert abs(zaremba_kernel(b, x, y, 80) - closed_kernel(spec, x, y)) <= 1e-9
        f = lambda m, n, z1, z2: O.h2(al, m, n, z1, z2)  # noqa: E731
        assert closed_kernel(spec, x, y) == pytest.approx(O.zaremba2(f, x, y, 40), rel=1e-10)


@pytest.mark.xfail(strict=True, raises=SeriesDivergenceError,
                   reason="at alpha=0.3 eighty terms do not converge for |Im z| near 1.5")
def test_vanem_small_alpha_needs_more_terms():
    spec = KernelSpec("VanEM1D", 0.3)
    zaremba_kernel(basis_for_kernel(spec), 1.5j, 1.5j, 80)


def test_small_alpha_converges_with_more_terms():
    spec = KernelSpec("VanEM1D", 0.3)
    v = zaremba_kernel(basis_for_kernel(spec), 1.5j, 1.5j, 200)
    assert v == pytest.approx(closed_kernel(spec, 1.5j, 1.5j), rel=1e-10)


def test_divergence_diagnostic():
    b = BasisSpec(Family.FACTORIAL_RATIO)
    with pytest.raises(SeriesDivergenceError) as exc:
        zaremba_kernel(b, 0.8, 0.8, 50)
    assert "tail" in exc.value.diagnostic


def test_factorial_ratio_against_zaremba():
    spec = KernelSpec("FactorialRatio3F2")
    z = zaremba_kernel(BasisSpec(Family.FACTORIAL_RATIO), 2, 2, 2000)
    assert abs(z - closed_kernel(spec, 2, 2)) <= 1e-8 * abs(z)


@pytest.mark.parametrize("z,w", [(1, 1), (1, 1.5 - 0.5j), (1 + 1j, 1), (2, 2), (3, 1.5 + 0.5j), (4, 1)])
def test_factorial_ratio_series(z, w):
    spec = KernelSpec("FactorialRatio3F2")
    ref = closed_kernel(spec, z, w)
    assert abs(factorial_ratio_series(z, w) - ref) <= 1e-8 * abs(ref)
    assert closed_kernel(spec, z, w, method="series") == pytest.approx(ref, rel=1e-8)


def test_factorial_ratio_series_errors():
    with pytest.raises(ConvergenceError):
        factorial_ratio_series(0.6, 0.6 + 0.0j, extrapolate=False)
    with pytest.raises(ConvergenceError):
        factorial_ratio_series(0.6, 0.6, extrap_tol=1e-30)
    # close to the boundary the extrapolated tail is still accurate
    ref = closed_kernel(KernelSpec("FactorialRatio3F2"), 0.501, 0.501)
    assert factorial_ratio_series(0.501, 0.501) == pytest.approx(ref, rel=1e-10)
    with pytest.raises(DomainError):
        factorial_ratio_series(0.2, 2)


def test_domains():
    with pytest.raises(DomainError):
        closed_kernel(KernelSpec("Szego"), 1.0, 0.2)
    with pytest.raises(DomainError):
        closed_kernel(KernelSpec("FactorialRatio3F2"), 0.3, 2)


def test_kernel_basis_pairing():
    for kind in ("Bargmann1D", "Bargmann2D", "Szego", "Bergman", "FactorialRatio3F2"):
        spec = KernelSpec(kind)
        assert kernel_for_basis(basis_for_kernel(spec)) == spec


def test_pd_check():
    pts = [0, 0.3, -0.5j, 0.4 + 0.4j]
    assert hermitian_pd_check(KernelSpec("VanEM1D", 0.5), pts).passed
    assert hermitian_pd_check(KernelSpec("Szego"), pts).passed


def test_log_convexity():
    r = log_convexity_check([math.factorial(n) for n in range(14)])
    assert r.passed and r.checked > 0 and "not sufficient" in r.note
    bad = log_convexity_check([1, 10, 1])
    assert not bad.passed
    assert bad.violations[0][:2] == (0, 1)
    with pytest.raises(ValueError):
        MomentSequence([1.0, -2.0])


def test_radial_measure_norms():
    # moments of e^{-r^2} r dr dtheta: a_n = 2 pi * int r^n e^{-r^2} r dr = pi Gamma(n/2 + 1)
    a = [math.pi * math.gamma(n / 2 + 1) for n in range(12)]
    k = radial_measure_norms(a)
    assert np.allclose(k, [2 / math.factorial(n) for n in range(6)])


def test_weighted_shift():
    k = [1 / math.factorial(n) for n in range(10)]
    ap, am = weighted_shift_matrices(k, 6)
    assert am[0, 1] == pytest.approx(math.sqrt(2))
    ap2, am2 = weighted_shift_matrices(k, 6, shifted=True)
    assert am2[0, 1] == pytest.approx(1.0)
    assert np.allclose(ap2, am2.T)

"""Acceptance suite: one PASS/FAIL line per criterion.

Run directly (``python tests/test_acceptance.py``) for the summary lines, or
through pytest, where each criterion is a separate test.
"""
from __future__ import annotations

import itertools
import math
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
import oracles as O  # noqa: E402

from hermite_cs.bargmann import (  # noqa: E402
    TransformSpec,
    compose_kernels,
    limit_distance,
    sb_kernel,
    slot_families,
    transform_matrix,
    unitarity_defect,
)
from hermite_cs.entanglement import schmidt  # noqa: E402
from hermite_cs.hermite import BasisSpec, Family, bargmann_limit_distance, basis_eval, xi_of_zeta  # noqa: E402
from hermite_cs.quadrature import twomode_norm, gram_matrix, vanem_norm  # noqa: E402
from hermite_cs.rkhs import (  # noqa: E402
    KernelSpec,
    basis_for_kernel,
    closed_kernel,
    factorial_ratio_series,
    log_convexity_check,
    zaremba_kernel,
)
from hermite_cs.states import (  # noqa: E402
    annihilation_residual,
    bogoliubov_ops,
    coherent_state,
    interior_defect,
    resolution_identity_residual,
    squeeze_column_defect,
    squeeze_matrix,
    squeezed_basis,
    su11_defects,
)

# |z| <= 1.5 sample: origin plus two rings of eight
_R = [0.0] + [r * np.exp(1j * t) for r in (0.75, 1.5) for t in np.linspace(0, 2 * np.pi, 8, endpoint=False)]
PTS = [complex(round(p.real, 14), round(p.imag, 14)) for p in _R]


def c1_orthogonality_1d():
    worst_id = worst_norm = 0.0
    for al in (0.3, 0.5, 0.7):
        G = gram_matrix(BasisSpec(Family.HOL_HERMITE_H_1D, al), N=10, order=80)
        worst_id = max(worst_id, float(np.abs(G - np.eye(10)).max()))
        raw = np.diag(O.gram_1d_raw(al, 10)).real
        rhs = np.array([vanem_norm(al, n) for n in range(10)])
        worst_norm = max(worst_norm, float(np.abs(raw / rhs - 1).max()))
    ok = worst_id <= 1e-8 and worst_norm <= 1e-8
    return ok, f"identity {worst_id:.2e} (tol 1e-8); norm constants rel {worst_norm:.2e} (tol 1e-8)"


def c2_orthogonality_2d():
    G = gram_matrix(BasisSpec(Family.HOL_HERMITE_H_2D, 0.5), N=4, order=40)
    d_id = float(np.abs(G - np.eye(16)).max())
    ref = 2 * math.pi ** 2
    d_lib = abs(twomode_norm(0.5, 0, 0) / ref - 1)
    d_orc = abs(O.twomode_zero_entry(0.5) / ref - 1)
    ok = d_id <= 1e-6 and d_lib <= 1e-6 and d_orc <= 1e-6
    return ok, f"identity {d_id:.2e} (tol 1e-6); (0,0,0,0) entry rel {max(d_lib, d_orc):.2e} (tol 1e-6)"


def c3_kernels():
    worst = {}
    cases = [(KernelSpec("Bargmann1D"), PTS), (KernelSpec("VanEM1D", 0.5), PTS),
             (KernelSpec("VanEM1D", 0.7), PTS),
             (KernelSpec("Szego"), [p * 0.8 / 1.5 for p in PTS]),
             (KernelSpec("Bergman"), [p * 0.8 / 1.5 for p in PTS])]
    for spec, pts in cases:
        b = basis_for_kernel(spec)
        e = max(abs(zaremba_kernel(b, x, y, 80) - closed_kernel(spec, x, y)) for x, y in itertools.product(pts, pts))
        worst[f"{spec.kind.value}{'' if spec.alpha is None else spec.alpha.alpha}"] = e
    pts2 = [0.0, 1.5, 1.5j, -0.75 - 0.75j, 0.5 + 0.5j]
    for al in (0.5, 0.7):
        spec = KernelSpec("VanEM2D", al)
        b = basis_for_kernel(spec)
        worst[f"VanEM2D{al}"] = max(abs(zaremba_kernel(b, x[:2], x[2:], 80) - closed_kernel(spec, x[:2], x[2:]))
                                    for x in itertools.product(pts2, repeat=4))
    spec = KernelSpec("FactorialRatio3F2")
    f_pts = [(1, 1), (1, 1.5 - 0.5j), (1 + 1j, 1), (2, 2), (3, 1.5 + 0.5j), (2 + 1j, 2.5 - 0.5j), (4, 1)]
    rel = max(abs(factorial_ratio_series(z, w) - closed_kernel(spec, z, w)) / abs(closed_kernel(spec, z, w))
              for z, w in f_pts)
    ok = max(worst.values()) <= 1e-9 and rel <= 1e-8
    return ok, f"Zaremba max {max(worst.values()):.2e} (tol 1e-9); 3F2 series rel {rel:.2e} (tol 1e-8)"


def c4_unitarity():
    out = {}
    for kind in ("A1", "B1", "A2", "B2"):
        spec = TransformSpec(kind, None if kind.startswith("A") else 0.5)
        fx, fy = slot_families(spec)
        N = 8 if spec.arity == 1 else 4
        out[kind] = unitarity_defect(transform_matrix(spec, fy, fx, N))
    worst = max(out.values())
    return worst <= 1e-5, ", ".join(f"{k} {v:.1e}" for k, v in out.items()) + " (tol 1e-5)"


def c5_composition():
    al = 0.5
    a1, b1, c1 = TransformSpec("A1"), TransformSpec("B1", al), TransformSpec("C1", al)
    e1 = max(abs(compose_kernels(a1, b1, (q, w)) - sb_kernel(c1, (q, w)))
             for q in (-0.6, 0.1, 0.8) for w in (-0.4j, 0.3, 0.5 + 0.4j))
    a2, b2, c2 = TransformSpec("A2"), TransformSpec("B2", al), TransformSpec("C2", al)
    pts = [(0.0, 0.0, 0.0, 0.0), (0.5, -0.3, 0.2 + 0.1j, -0.4j), (-0.7, 0.4, 0.6, 0.3 - 0.2j),
           (0.2, 0.9, -0.5 + 0.5j, 0.1)]
    e2 = max(abs(compose_kernels(a2, b2, p) - sb_kernel(c2, p)) for p in pts)
    ok = e1 <= 1e-8 and e2 <= 1e-6
    return ok, f"A1oB1 vs C1 {e1:.2e} (tol 1e-8); A2oB2 vs C2 {e2:.2e} (tol 1e-6)"


def c6_limits():
    alphas = (0.9, 0.99, 0.999)
    dc = [limit_distance(1, a) for a in alphas]
    dk = [bargmann_limit_distance(a) for a in alphas]
    dec = all(y < x for d in (dc, dk) for x, y in zip(d, d[1:]))
    ok = dec and dc[-1] <= 1e-2 and dk[-1] <= 1e-2
    return ok, ("C1hat->A1 " + ", ".join(f"{v:.2e}" for v in dc)
                + "; k_n->Phi_n " + ", ".join(f"{v:.2e}" for v in dk) + " (final tol 1e-2)")


def c7_eigen():
    al = 0.5
    B1 = bogoliubov_ops(al, 40)["Bminus"]
    zs = [0, 1, -1j, 0.6 + 0.8j, -0.5 + 0.3j, 0.7071 - 0.7071j]
    r1 = max(annihilation_residual(coherent_state(z, al, 40), B1, z) for z in zs)
    B = bogoliubov_ops(al, 24, 2)
    r2 = 0.0
    for z1, z2 in [(0, 0), (0.5, -0.3j), (0.6 + 0.8j, 0.2), (-1, 1j)]:
        c = coherent_state((z1, z2), al, 24)
        r2 = max(r2, annihilation_residual(c, B["B1minus"], z1), annihilation_residual(c, B["B2minus"], z2))
    return r1 <= 1e-8 and r2 <= 1e-7, f"1D {r1:.2e} (tol 1e-8); 2D {r2:.2e} (tol 1e-7)"


def c8_squeeze():
    N = 30
    d_ez = d_col = 0.0
    for xi in (0.5, 0.3j, 0.25 - 0.35j, -0.1 + 0.05j):
        E = squeeze_matrix(xi, N, 1, "exact").entries
        Z = squeeze_matrix(xi, N, 1, "zassenhaus").entries
        d_ez = max(d_ez, interior_defect(E, Z, N, 1, 10))
        d_col = max(d_col, squeeze_column_defect(xi, N, 1, block=20))
    d_id = 0.0
    for al in (0.3, 0.5, 0.7):
        e = (1 - al) / (1 + al)
        for n, z in itertools.product(range(6), (0.3, -0.4 + 0.9j, 1.2j)):
            v = basis_eval(BasisSpec(Family.HOL_HERMITE_K_1D, al), n, z)
            d_id = max(d_id, abs(squeezed_basis(n, z, e) - v))
        for (m, n), (z1, z2) in itertools.product([(0, 0), (1, 2), (3, 1)], [(0.3, -0.2j), (0.5 + 0.5j, 1)]):
            v = basis_eval(BasisSpec(Family.HOL_HERMITE_K_2D, al), (m, n), (z1, z2))
            d_id = max(d_id, abs(squeezed_basis((m, n), (z1, z2), e) - v))
        # the squeeze parameter producing zeta = eps(alpha) maps back exactly
        d_id = max(d_id, abs(abs(xi_of_zeta(e)) - math.atanh(e)))
    ok = d_ez <= 1e-8 and d_col <= 1e-7 and d_id <= 1e-12
    return ok, f"exact vs Zassenhaus {d_ez:.2e} (tol 1e-8); columns {d_col:.2e} (tol 1e-7); zeta=eps {d_id:.2e} (tol 1e-12)"


def c9_resolution():
    r1 = resolution_identity_residual(0.5, N=8, order=80)
    r2 = resolution_identity_residual(0.5, N=4, order=40, arity=2)
    return r1 <= 1e-6 and r2 <= 1e-5, f"1D {r1:.2e} (tol 1e-6); 2D {r2:.2e} (tol 1e-5)"


def c10_entanglement():
    s_mid = schmidt(coherent_state((0, 0), 0.5, 12)).entropy
    s_lim = 0.0
    for z1, z2 in itertools.product((0, 0.5, -0.5j, 0.35 + 0.35j), repeat=2):
        s_lim = max(s_lim, schmidt(coherent_state((z1, z2), 0.999, 12)).entropy)
    s_prod = 0.0
    for z1, z2 in [(0.3, -0.2j), (1, 0.5 + 0.5j)]:
        C = np.outer(coherent_state(z1, 0.5, 12).coeffs, coherent_state(z2, 0.7, 12).coeffs)
        s_prod = max(s_prod, schmidt(C).entropy)
    cross = abs(s_mid - O.schmidt_entropy(coherent_state((0, 0), 0.5, 12).coeffs))
    ok = s_mid > 0.05 and s_lim <= 1e-3 and s_prod <= 1e-12 and cross <= 1e-10
    return ok, (f"alpha=0.5 {s_mid:.3f} (> 0.05); alpha=0.999 {s_lim:.1e} (tol 1e-3); "
                f"product {s_prod:.1e} (tol 1e-12); oracle gap {cross:.1e}")


def c11_diagnostics():
    fact = log_convexity_check([math.factorial(n) for n in range(12)])
    bad = log_convexity_check([1.0, 10.0, 1.0])
    d = max(max(su11_defects(1, 20).values()), max(su11_defects(2, 10).values()))
    ok = fact.passed and not bad.passed and d <= 1e-10
    return ok, f"n! {'passes' if fact.passed else 'fails'}; (1,10,1) {'passes' if bad.passed else 'fails'}; su(1,1) {d:.1e} (tol 1e-10)"


CRITERIA = [
    ("1 orthogonality 1D", c1_orthogonality_1d),
    ("2 orthogonality 2D", c2_orthogonality_2d),
    ("3 kernel identity", c3_kernels),
    ("4 transform unitarity", c4_unitarity),
    ("5 composition", c5_composition),
    ("6 alpha -> 1 limits", c6_limits),
    ("7 eigenvector property", c7_eigen),
    ("8 squeeze equivalence", c8_squeeze),
    ("9 resolution of identity", c9_resolution),
    ("10 entanglement", c10_entanglement),
    ("11 diagnostics", c11_diagnostics),
]


def _evaluate(fn):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        t0 = time.perf_counter()
        ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail, dt = _evaluate(fn)
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'}  {name}: {detail} [{dt:.1f}s]")
    assert ok, detail


def main() -> int:
    failed = 0
    for name, fn in CRITERIA:
        ok, detail, dt = _evaluate(fn)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail} [{dt:.1f}s]", flush=True)
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

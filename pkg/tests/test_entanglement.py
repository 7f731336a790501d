import numpy as np
import pytest
from math import factorial, sqrt

import oracles as O
from hermite_cs.entanglement import alpha_entropy_sweep, entropy_of, factorization_witness, schmidt
from hermite_cs.states import coherent_state, standard_cs

pytestmark = pytest.mark.filterwarnings("ignore::hermite_cs.TruncationWarning")

RNG = np.random.default_rng(11)


def _unitary(n):
    q, r = np.linalg.qr(RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)))
    return q * (np.diag(r) / abs(np.diag(r)))


def test_rank_one():
    u = RNG.normal(size=6) + 1j * RNG.normal(size=6)
    v = RNG.normal(size=5)
    r = schmidt(np.outer(u, v))
    assert r.effective_rank == 1 and r.factorizable
    assert r.entropy <= 1e-12


def test_zero_matrix_rejected():
    with pytest.raises(ValueError):
        schmidt(np.zeros((3, 3)))


def test_vacuum_bipartite_state():
    c = coherent_state((0, 0), 0.5, 12)
    C = c.coeffs
    assert np.all(C[~np.eye(12, dtype=bool)] == 0)
    r = schmidt(c)
    assert r.effective_rank > 1 and r.entropy > 0.05
    assert r.entropy == pytest.approx(O.schmidt_entropy(C), abs=1e-12)
    assert r.entropy_bits == pytest.approx(r.entropy / np.log(2))


def test_standard_product_state():
    C = np.outer(standard_cs(0.4 - 0.2j, 30).coeffs, standard_cs(1j, 30).coeffs)
    assert schmidt(C).entropy <= 1e-12


def test_invariances():
    C = coherent_state((0.3, -0.2j), 0.5, 10).coeffs
    s = schmidt(C).entropy
    assert schmidt((2.5 - 1j) * C).entropy == pytest.approx(s, abs=1e-12)
    U, V = _unitary(10), _unitary(10)
    assert abs(schmidt(U @ C @ V.T).entropy - s) <= 1e-10
    sv = schmidt(C).singular_values
    ev = np.sort(np.linalg.eigvalsh(C @ C.conj().T))[::-1]
    assert np.allclose(sv ** 2, ev, atol=1e-10 * ev[0])


def test_entropy_of_skips_zeros():
    assert entropy_of(np.array([1.0, 0.0])) == 0
    assert entropy_of(np.array([1.0, 1.0])) == pytest.approx(np.log(2))


def test_disentangling_limit():
    for z1 in (0, 0.5, -0.3j):
        for z2 in (0.5, 0.35 + 0.35j):
            assert schmidt(coherent_state((z1, z2), 0.999, 12)).entropy <= 1e-3


def test_sweep():
    alphas = [0.3, 0.5, 0.7, 0.9, 0.99]
    pts = alpha_entropy_sweep(0, 0, alphas, 12)
    ent = [p.entropy for p in pts]
    assert all(e > 0 for e in ent) and ent[-1] == min(ent)
    assert [p.alpha for p in pts] == alphas
    assert any(p.warnings for p in pts)
    one = alpha_entropy_sweep(0.3, 0.3, [0.5])
    assert len(one) == 1
    assert one[0].entropy == pytest.approx(schmidt(coherent_state((0.3, 0.3), 0.5, 12)).entropy)


def test_sweep_thread_count_invariance(monkeypatch):
    a = alpha_entropy_sweep(0.3, 0.3, [0.4, 0.6, 0.8], workers=1)
    b = alpha_entropy_sweep(0.3, 0.3, [0.4, 0.6, 0.8], workers=3)
    assert [p.entropy for p in a] == [p.entropy for p in b]


def test_sweep_errors():
    with pytest.raises(ValueError):
        alpha_entropy_sweep(0, 0, [])
    with pytest.raises(ValueError):
        alpha_entropy_sweep(0, 0, [0.5], N=4)


def test_witness():
    u = RNG.normal(size=5) + 1j * RNG.normal(size=5)
    v = RNG.normal(size=5) + 1j * RNG.normal(size=5)
    w = factorization_witness(np.outer(u, v))
    f1, f2 = w.factors
    assert np.allclose(np.outer(f1.coeffs, f2.coeffs), np.outer(u, v))
    ratio = f1.coeffs / u
    assert np.allclose(ratio, ratio[0])
    ent = factorization_witness(coherent_state((0, 0), 0.5, 12))
    assert ent.factors is None and ent.residual > 0.1


def test_witness_near_limit():
    w = factorization_witness(coherent_state((0.3, 0.3), 0.999, 12), tol=1e-2)
    phi = np.array([0.3 ** n / sqrt(factorial(n)) for n in range(12)])
    b = phi / np.linalg.norm(phi)
    for f in w.factors:
        a = f.coeffs / np.linalg.norm(f.coeffs)
        ph = np.vdot(b, a)
        assert np.abs(a - ph / abs(ph) * b).max() <= 1e-2

import numpy as np
import pytest

from qmodelcheck import kernels
from qmodelcheck.complexla import random_unitary

BACKENDS = sorted(kernels.available_backends())


@pytest.fixture(params=BACKENDS)
def impl(request):
    return kernels.available_backends()[request.param]


def _orthonormal_rows(rng, k, d):
    return random_unitary(d, rng)[:k].copy()


def test_compiled_backend_is_built():
    # the package ships a compiled extension; a fallback-only install is a build problem
    assert "cython" in BACKENDS


def test_residual_removes_span(impl, rng):
    Q = _orthonormal_rows(rng, 3, 6)
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    r = impl.residual(Q, v)
    assert np.max(np.abs(Q.conj() @ r)) < 1e-12
    # r is v minus its projection onto the rows of Q
    expected = v - Q.T @ (Q.conj() @ v)
    assert np.allclose(r, expected, atol=1e-12)
    assert abs(impl.residual_norm(Q, v) - np.linalg.norm(expected)) < 1e-12


def test_residual_with_empty_basis(impl):
    Q = np.empty((0, 3), dtype=np.complex128)
    v = np.array([1, 2j, 3], dtype=np.complex128)
    assert np.allclose(impl.residual(Q, v), v)


def test_residual_of_member_is_tiny(impl, rng):
    Q = _orthonormal_rows(rng, 4, 5)
    v = (rng.normal(size=4) + 1j * rng.normal(size=4)) @ Q
    assert impl.residual_norm(Q, v) < 1e-13


def test_matvec_matches_numpy(impl, rng):
    U = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    v = rng.normal(size=5) + 1j * rng.normal(size=5)
    assert np.allclose(impl.matvec(U, v), U @ v, atol=1e-12)


def test_slot_norms(impl):
    # layout j * nslots + q
    v = np.array([3, 0, 4, 0, 0, 1j], dtype=np.complex128)
    n = impl.slot_norms(v, 2)
    assert np.allclose(n, [5.0, 1.0])


def test_backends_agree(rng):
    impls = kernels.available_backends()
    if len(impls) < 2:
        pytest.skip("only one backend available")
    Q = _orthonormal_rows(rng, 2, 7)
    v = rng.normal(size=7) + 1j * rng.normal(size=7)
    a, b = impls["cython"], impls["python"]
    assert np.allclose(a.residual(Q, v), b.residual(Q, v), atol=1e-13)
    assert np.allclose(a.slot_norms(v, 7), b.slot_norms(v, 7))


def test_wrappers_accept_noncontiguous(rng):
    U = (rng.normal(size=(4, 4)) + 0j).T
    v = np.arange(8, dtype=float)[::2]
    assert np.allclose(kernels.matvec(U, v), U @ v)


def test_wrappers_above_cutover(rng):
    d = kernels.CUTOVER + 8
    Q = _orthonormal_rows(rng, 5, d)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    assert np.allclose(kernels.residual(Q, v), v - Q.T @ (Q.conj() @ v), atol=1e-12)
    U = random_unitary(d, rng)
    assert np.allclose(kernels.matvec(U, v), U @ v)


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    env = dict(os.environ, QMODELCHECK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from qmodelcheck import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    assert out == "python"

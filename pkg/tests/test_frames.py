import numpy as np
import pytest

from guframes import (
    Frame,
    ValidationError,
    canonical_tight,
    dual_frame,
    expand,
    frame_bounds,
    frame_operator,
    r_phi_mu,
    reconstruct,
)
from guframes.matops import psd_fun

from support import SQRT3, klein_frame, random_unitary


def random_frame(rng, m, n, tol=1e-9):
    return Frame(rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)), tol=tol)


def test_frame_rejects_non_spanning():
    with pytest.raises(ValidationError):
        Frame(np.array([[1.0, 2.0], [0.0, 0.0]]))
    with pytest.raises(ValidationError):
        Frame(np.ones((3, 2)))


def test_frame_operator_worked_example():
    s = frame_operator(klein_frame())
    assert np.allclose(s, np.diag([3.0, 1.0]), atol=1e-12)


def test_frame_operator_orthonormal_and_scaling():
    fr = Frame(np.eye(3))
    assert np.allclose(frame_operator(fr), np.eye(3), atol=1e-12)
    fr2 = Frame(2j * klein_frame().phi)
    assert np.allclose(frame_operator(fr2), 4 * np.diag([3.0, 1.0]), atol=1e-12)


def test_frame_bounds_worked_example():
    lower, upper = frame_bounds(klein_frame())
    assert lower == pytest.approx(1.0, abs=1e-9)
    assert upper == pytest.approx(3.0, abs=1e-9)


def test_frame_bounds_tight_cases():
    lower, upper = frame_bounds(Frame(np.eye(4)))
    assert (lower, upper) == (pytest.approx(1.0), pytest.approx(1.0))
    # four unit vectors forming a tight frame in C^2: bounds n/m = 2
    unit_tight = Frame(np.sqrt(2) * canonical_tight(klein_frame()).phi)
    lower, upper = frame_bounds(unit_tight)
    assert lower == pytest.approx(2.0, abs=1e-9)
    assert upper == pytest.approx(2.0, abs=1e-9)


def test_dual_frame_worked_example():
    dual = dual_frame(klein_frame())
    expected = np.array(
        [[SQRT3 / 6, SQRT3 / 6, -SQRT3 / 6, -SQRT3 / 6],
         [-0.5, 0.5, 0.5, -0.5]]
    )
    assert np.allclose(dual.phi, expected, atol=1e-9)


def test_dual_of_tight_frame_is_scaled_copy():
    fr = Frame(np.sqrt(2) * canonical_tight(klein_frame()).phi)
    assert np.allclose(dual_frame(fr).phi, fr.phi / 2.0, atol=1e-10)


def test_dual_involution_and_reconstruction_identity():
    rng = np.random.default_rng(10)
    fr = random_frame(rng, 3, 7)
    dual = dual_frame(fr)
    assert np.allclose(dual_frame(dual).phi, fr.phi, atol=1e-8)
    assert np.max(np.abs(fr.phi @ dual.phi.conj().T - np.eye(3))) < 1e-8
    assert np.max(np.abs(dual.phi @ fr.phi.conj().T - np.eye(3))) < 1e-8


def test_canonical_tight_worked_example():
    tight = canonical_tight(klein_frame())
    expected = 0.5 * np.array([[1, 1, -1, -1], [-1, 1, 1, -1]], dtype=float)
    assert np.allclose(tight.phi, expected, atol=1e-9)
    assert np.max(np.abs(tight.phi @ tight.phi.conj().T - np.eye(2))) < 1e-8


def test_canonical_tight_fixed_point():
    tight = canonical_tight(klein_frame())
    assert np.allclose(canonical_tight(tight).phi, tight.phi, atol=1e-10)


def test_canonical_tight_is_least_squares_minimizer():
    rng = np.random.default_rng(11)
    fr = random_frame(rng, 3, 6)
    tight = canonical_tight(fr)
    base = np.sum(np.abs(fr.phi - tight.phi) ** 2)
    s_isqrt = psd_fun(frame_operator(fr), lambda x: x ** -0.5)
    for _ in range(100):
        alt = random_unitary(rng, 3) @ s_isqrt @ fr.phi
        assert base <= np.sum(np.abs(fr.phi - alt) ** 2) + 1e-10


def test_expand_orthonormal_basis():
    fr = Frame(np.eye(3))
    assert np.allclose(expand(fr, np.array([1.0, 0, 0])), [1, 0, 0], atol=1e-12)


def test_expand_worked_example():
    a = expand(klein_frame(), np.array([1.0, 0.0]))
    assert np.allclose(a, SQRT3 / 6 * np.array([1, 1, -1, -1]), atol=1e-10)


def test_expand_reconstruct_roundtrip_and_minimality():
    rng = np.random.default_rng(12)
    fr = random_frame(rng, 4, 9)
    x = rng.normal(size=4) + 1j * rng.normal(size=4)
    a = expand(fr, x)
    assert np.allclose(reconstruct(fr, a), x, atol=1e-9)
    # any null-space perturbation only grows the norm
    _, _, vh = np.linalg.svd(fr.phi)
    null = vh[4:].conj().T  # columns span the kernel of Phi
    for _ in range(25):
        w = null @ (rng.normal(size=5) + 1j * rng.normal(size=5))
        assert np.allclose(fr.phi @ w, 0, atol=1e-9)
        assert np.linalg.norm(a) <= np.linalg.norm(a + w) + 1e-12


def test_expand_rejects_bad_dimension():
    with pytest.raises(ValidationError):
        expand(klein_frame(), np.ones(3))
    with pytest.raises(ValidationError):
        reconstruct(klein_frame(), np.ones(3))


def test_r_phi_mu_worked_example():
    fr = klein_frame()
    value = r_phi_mu(fr, canonical_tight(fr))
    assert value == pytest.approx((SQRT3 + 1) ** 2 / 4, abs=1e-9)


def test_r_phi_mu_self_normalized_tight():
    tight = canonical_tight(klein_frame())
    expected = np.sum(np.linalg.norm(tight.phi, axis=0) ** 4)
    assert r_phi_mu(tight, tight) == pytest.approx(expected, abs=1e-12)


def test_r_phi_mu_rejects_non_tight():
    fr = klein_frame()
    with pytest.raises(ValidationError):
        r_phi_mu(fr, fr)


def test_trace_identity_and_sandwich():
    rng = np.random.default_rng(13)
    fr = random_frame(rng, 3, 8)
    s = frame_operator(fr)
    norms = np.sum(np.abs(fr.phi) ** 2)
    assert np.trace(s).real == pytest.approx(norms, rel=1e-12)
    lower, upper = frame_bounds(fr)
    assert np.linalg.eigvalsh(s).sum() == pytest.approx(norms, rel=1e-12)
    for _ in range(50):
        x = rng.normal(size=3) + 1j * rng.normal(size=3)
        quad = (x.conj() @ s @ x).real
        nx = np.linalg.norm(x) ** 2
        assert lower * nx - 1e-9 <= quad <= upper * nx + 1e-9

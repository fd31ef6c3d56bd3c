import numpy as np
import pytest

from guframes import (
    GroupSpec,
    GUFrame,
    ValidationError,
    gu_canonical,
    prune_coset_spectrum,
    prune_invariance_check,
    prune_one_spectrum,
    pruned_tight_spectrum,
)

from support import klein_gu, random_gu_frame


def unit_tight_gu():
    """Tight GU frame with a unit-norm generator (4 vectors in C^2)."""
    g = gu_canonical(klein_gu())
    return GUFrame(g.rep, np.sqrt(2.0) * g.generator)


def test_prune_one_worked_example_all_indices():
    g = klein_gu()
    expected = np.array([(3 + np.sqrt(3)) / 2, (3 - np.sqrt(3)) / 2])
    for j in range(4):
        assert np.allclose(prune_one_spectrum(g, j), expected, atol=1e-12)


def test_prune_one_tight_unit_generator():
    g = unit_tight_gu()
    for j in range(4):
        assert np.allclose(prune_one_spectrum(g, j), [2.0, 1.0], atol=1e-9)


def test_prune_one_orthonormal_basis():
    omega = np.exp(2j * np.pi / 3)
    base = np.diag(omega ** np.arange(3))
    rep_mats = [np.linalg.matrix_power(base, j) for j in range(3)]
    from guframes import UnitaryRep

    g = GUFrame(UnitaryRep(GroupSpec((3,)), rep_mats), np.full(3, 1 / np.sqrt(3)))
    assert np.allclose(prune_one_spectrum(g, 1), [1.0, 1.0, 0.0], atol=1e-10)


def test_prune_one_rejects_bad_index():
    with pytest.raises(ValidationError):
        prune_one_spectrum(klein_gu(), 4)


def test_invariance_check_worked_example():
    report = prune_invariance_check(klein_gu())
    assert report.deviation < 1e-12
    expected = np.array([(3 + np.sqrt(3)) / 2, (3 - np.sqrt(3)) / 2])
    assert np.allclose(report.spectrum, expected, atol=1e-12)
    assert report.is_frame


def test_invariance_check_tight_matches_closed_form():
    report = prune_invariance_check(unit_tight_gu())
    assert np.allclose(report.spectrum, pruned_tight_spectrum(4, 2), atol=1e-9)
    assert report.frame_bound_ratio == pytest.approx(1.0 / (1.0 - 2.0 / 4.0), abs=1e-9)


def test_invariance_check_random_frames():
    rng = np.random.default_rng(50)
    for spec in (GroupSpec((5,)), GroupSpec((2, 3)), GroupSpec((2, 2, 2))):
        g = random_gu_frame(rng, spec, 3)
        assert prune_invariance_check(g).deviation < 1e-9


def test_pruned_tight_spectrum_values():
    assert np.allclose(pruned_tight_spectrum(4, 2), [2.0, 1.0])
    assert np.allclose(pruned_tight_spectrum(3, 3), [1.0, 1.0, 0.0])
    with pytest.raises(ValidationError):
        pruned_tight_spectrum(2, 3)


def test_coset_single_index_reduces_to_prune_one():
    g = klein_gu()
    for k in range(4):
        got = prune_coset_spectrum(g, [0], k)
        assert np.allclose(got.eigenvalues, prune_one_spectrum(g, k), atol=1e-12)


def test_coset_independent_of_translate():
    g = klein_gu()
    reference = prune_coset_spectrum(g, [0, 1], 0).eigenvalues
    for k in range(1, 4):
        got = prune_coset_spectrum(g, [0, 1], k).eigenvalues
        assert np.allclose(got, reference, atol=1e-12)


def test_coset_independent_of_translate_random():
    rng = np.random.default_rng(51)
    for spec in (GroupSpec((6,)), GroupSpec((2, 2))):
        g = random_gu_frame(rng, spec, 2)
        for removal in ([0], [0, 1], list(range(spec.order // 2))):
            reference = prune_coset_spectrum(g, removal, 0).eigenvalues
            for k in range(1, spec.order):
                got = prune_coset_spectrum(g, removal, k).eigenvalues
                assert np.max(np.abs(got - reference)) < 1e-9


def test_coset_remove_everything():
    g = klein_gu()
    got = prune_coset_spectrum(g, [0, 1, 2, 3], 2)
    assert np.allclose(got.eigenvalues, np.zeros(2), atol=1e-12)
    assert not got.is_frame


def test_coset_rank_deficient_is_flagged_not_raised():
    g = klein_gu()
    # removing both x-heavy pairs leaves a rank-1 set
    got = prune_coset_spectrum(g, [0, 2], 0)
    assert not got.is_frame
    assert got.eigenvalues[-1] == pytest.approx(0.0, abs=1e-12)

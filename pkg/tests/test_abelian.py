import numpy as np
import pytest

from guframes import (
    GroupElement,
    GroupSpec,
    ValidationError,
    element_at,
    elements,
    ft_apply,
    ft_kernel,
    ft_matrix,
    identity,
    ift_apply,
)
from guframes.abelian import addition_table, negation_table

from support import KLEIN_SPEC, SMALL_SPECS


def test_enumeration_klein_group():
    assert [e.residues for e in elements(KLEIN_SPEC)] == [
        (0, 0), (0, 1), (1, 0), (1, 1),
    ]


def test_enumeration_trivial_and_cyclic():
    assert [e.residues for e in elements(GroupSpec((1,)))] == [(0,)]
    assert [e.residues for e in elements(GroupSpec((3,)))] == [(0,), (1,), (2,)]


def test_enumeration_last_factor_fastest():
    got = [e.residues for e in elements(GroupSpec((2, 3)))]
    assert got == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_element_index_roundtrip():
    spec = GroupSpec((3, 4))
    for i, e in enumerate(elements(spec)):
        assert e.index == i
        assert element_at(spec, i) == e


def test_addition_table_matches_worked_example():
    spec = KLEIN_SPEC
    a = GroupElement(spec, (0, 1))
    b = GroupElement(spec, (1, 1))
    assert (a + b).residues == (1, 0)


def test_inverse_law_and_cyclic_addition():
    spec = GroupSpec((3,))
    g = GroupElement(spec, (2,))
    assert (g + (-g)) == identity(spec)
    assert (g + g).residues == (1,)


def test_add_rejects_spec_mismatch():
    g = GroupElement(GroupSpec((2, 2)), (0, 1))
    h = GroupElement(GroupSpec((4,)), (1,))
    with pytest.raises(ValidationError):
        g + h


def test_invalid_elements_rejected():
    spec = GroupSpec((2, 3))
    with pytest.raises(ValidationError):
        GroupElement(spec, (0, 3))
    with pytest.raises(ValidationError):
        GroupElement(spec, (0,))
    with pytest.raises(ValidationError):
        GroupSpec((0, 2))


def test_ft_kernel_values():
    spec = KLEIN_SPEC
    h = GroupElement(spec, (1, 1))
    q = GroupElement(spec, (1, 0))
    assert ft_kernel(h, q) == pytest.approx(-1.0)
    e = identity(spec)
    for q in elements(spec):
        assert ft_kernel(e, q) == pytest.approx(1.0)
    z4 = GroupSpec((4,))
    assert ft_kernel(GroupElement(z4, (1,)), GroupElement(z4, (1,))) == pytest.approx(-1j)


def test_ft_kernel_rejects_spec_mismatch():
    h = GroupElement(KLEIN_SPEC, (1, 1))
    q = GroupElement(GroupSpec((4,)), (1,))
    with pytest.raises(ValidationError):
        ft_kernel(h, q)


def test_ft_matrix_klein_is_hadamard():
    expected = 0.5 * np.array(
        [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]], dtype=float
    )
    assert np.allclose(ft_matrix(KLEIN_SPEC), expected, atol=1e-12)


def test_ft_matrix_trivial_and_dft():
    assert np.allclose(ft_matrix(GroupSpec((1,))), [[1.0]])
    n = 6
    dft = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n) / np.sqrt(n)
    assert np.allclose(ft_matrix(GroupSpec((n,))), dft, atol=1e-12)


def test_ft_apply_worked_example_sequence():
    s = np.array([1.0, 0.5, -1.0, -0.5])
    s_hat = ft_apply(KLEIN_SPEC, s)
    assert np.allclose(s_hat, [0.0, 0.0, 1.5, 0.5], atol=1e-12)


def test_ft_apply_delta_and_roundtrip():
    rng = np.random.default_rng(7)
    for spec in SMALL_SPECS:
        n = spec.order
        delta = np.zeros(n)
        delta[0] = 1.0
        assert np.allclose(ft_apply(spec, delta), np.full(n, 1 / np.sqrt(n)), atol=1e-12)
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        assert np.allclose(ift_apply(spec, ft_apply(spec, v)), v, atol=1e-10)


def test_ft_apply_rejects_bad_length():
    with pytest.raises(ValidationError):
        ft_apply(KLEIN_SPEC, np.ones(3))


@pytest.mark.parametrize("spec", SMALL_SPECS + [GroupSpec((5, 5, 5)), GroupSpec((256,))])
def test_ft_matrix_unitary(spec):
    f = ft_matrix(spec)
    assert np.max(np.abs(f @ f.conj().T - np.eye(spec.order))) < 1e-9


@pytest.mark.parametrize("spec", [GroupSpec((2, 2)), GroupSpec((6,)), GroupSpec((2, 3))])
def test_character_multiplicativity_all_triples(spec):
    els = elements(spec)
    for h in els:
        for q in els:
            for qp in els:
                lhs = ft_kernel(h, q + qp)
                rhs = ft_kernel(h, q) * ft_kernel(h, qp)
                assert lhs == pytest.approx(rhs, abs=1e-12)


@pytest.mark.parametrize("spec", [GroupSpec((8,)), GroupSpec((2, 4)), GroupSpec((64,)),
                                  GroupSpec((2, 2, 2))])
def test_group_laws_exhaustive(spec):
    n = spec.order
    add = addition_table(spec)
    neg = negation_table(spec)
    # identity and inverses
    assert np.array_equal(add[0], np.arange(n))
    assert np.array_equal(add[np.arange(n), neg], np.zeros(n, dtype=add.dtype))
    # commutativity and associativity, fully vectorized
    assert np.array_equal(add, add.T)
    assert np.array_equal(add[add, :], add[:, add])


def test_enumeration_is_bijection():
    for spec in SMALL_SPECS:
        seen = {e.residues for e in elements(spec)}
        assert len(seen) == spec.order

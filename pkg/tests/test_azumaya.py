from __future__ import annotations

import pytest
from conftest import cycints
from hypothesis import given
from hypothesis import strategies as st

from weylsplit.azumaya import (
    Localized,
    TensorElement,
    kaneda_preimages,
    lift_classical_combo,
    p2_assignments,
    p2_targets,
    p2_u,
    reduce_endo,
    sigma_p,
    tensor_to_endo,
    verify_kaneda_mod_J,
    verify_p2_neutralization,
)
from weylsplit.linalg import Matrix
from weylsplit.qweyl import ClassicalWeylElement, QWeylElement


def centralizing(p: int):
    """Random elements of R[x, d^p]."""
    term = st.tuples(st.integers(0, 2), st.integers(0, 1), cycints(p, 2))
    return st.lists(term, max_size=2).map(
        lambda ts: QWeylElement(p, {(i, p * j): c for i, j, c in ts})
    )


def anything(p: int):
    term = st.tuples(st.integers(0, 2), st.integers(0, 2), cycints(p, 2))
    return st.lists(term, max_size=2).map(lambda ts: QWeylElement(p, {(i, j): c for i, j, c in ts}))


def tensors(p: int):
    return st.lists(st.tuples(centralizing(p), anything(p)), min_size=1, max_size=2).map(
        lambda pairs: TensorElement(tuple(pairs))
    )


# -- localisation --------------------------------------------------------------------


def test_localized_arithmetic():
    p = 2
    s = sigma_p(p)
    x = QWeylElement.x(p)
    a = Localized(x, 1)
    assert a * Localized(s) == Localized(x)
    assert a + a == Localized(x * 2, 1)
    assert Localized(x * s, 1) == Localized(x)
    assert not Localized(QWeylElement(p), 3)


# -- the tensor map ----------------------------------------------------------------------


def test_identity_tensor():
    p = 3
    one = QWeylElement.scalar(p, 1)
    ident = tensor_to_endo(TensorElement.pure(one, one), p)
    z = Localized(QWeylElement(p))
    assert ident == Matrix.identity(p, z)


def test_left_factor_must_centralize():
    with pytest.raises(ValueError):
        TensorElement.pure(QWeylElement.d(2), QWeylElement.x(2))


@pytest.mark.parametrize("p", [2, 3])
def test_tensor_map_is_multiplicative(p):
    @given(tensors(p), tensors(p))
    def check(s, t):
        assert tensor_to_endo(s.compose(t), p) == tensor_to_endo(s, p) * tensor_to_endo(t, p)

    check()


@pytest.mark.parametrize("p", [2, 3])
def test_tensor_image_commutes_with_the_centralizer(p):
    """Images are left linear over R[x, d^p]: they commute with its multiplication operators."""

    @given(tensors(p), centralizing(p))
    def check(t, c):
        mult = TensorElement.pure(c, QWeylElement.scalar(p, 1))
        left = tensor_to_endo(mult, p) * tensor_to_endo(t, p)
        right = tensor_to_endo(t, p) * tensor_to_endo(mult, p)
        assert left == right

    check()


# -- p = 2 ----------------------------------------------------------------------------


def test_p2_neutralization_certificate():
    cert = verify_p2_neutralization()
    assert cert.passed
    assert cert.witness["validated_reading"] == "compose"
    assert cert.witness["basis_determinant_is_unit_times_sigma8"]
    assert cert.witness["mismatches"] == []


def test_p2_assignments_match_targets():
    targets = p2_targets()
    images = p2_assignments()
    for name in ("E1", "E2", "E3", "E4"):
        assert images[name] == targets[name], name


def test_p2_first_two_images_explicitly():
    s = Localized(sigma_p(2))
    z = Localized(QWeylElement(2))
    u = p2_u()
    assert tensor_to_endo(u, 2) == Matrix([[z, s], [z, z]], z)
    v = u.right_multiply(QWeylElement.d(2))
    assert tensor_to_endo(v, 2) == Matrix([[z, z], [z, s]], z)


def test_p2_multiply_reading_does_not_give_E4():
    images = p2_assignments(reading="multiply")
    assert images["E4"] != p2_targets()["E4"]


def test_p2_mutation_is_detected():
    cert = verify_p2_neutralization(two=1)
    assert not cert.passed
    assert p2_assignments(two=1)["E1"] != p2_targets()["E1"]


def test_p2_products_scale_like_matrix_units():
    E = p2_targets()
    s = Localized(sigma_p(2))
    assert E["E3"] * E["E1"] == E["E1"] * s
    assert E["E1"] * E["E4"] == E["E3"] * s
    assert E["E4"] * E["E1"] == E["E2"] * s
    assert (E["E1"] * E["E1"]).is_zero()


# -- mod J ------------------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_kaneda_certificate(p):
    cert = verify_kaneda_mod_J(p)
    assert cert.passed
    assert cert.witness["missing"] == []
    assert len(cert.witness["preimages"]) == p * p


@pytest.mark.parametrize("p", [2, 3])
def test_kaneda_preimages_lift_to_R(p):
    """Lift each F_p preimage to R, compute its endomorphism over R, then reduce mod J."""
    found = kaneda_preimages(p, 3 * p)
    one = ClassicalWeylElement.monomial(p, 0, 0)
    zero = ClassicalWeylElement(p)
    for (i, j), combo in found.items():
        M = reduce_endo(tensor_to_endo(lift_classical_combo(p, combo), p))
        for r in range(p):
            for c in range(p):
                assert M[r][c] == (one if (r, c) == (i, j) else zero), (i, j, r, c)


def test_kaneda_small_bound_is_inconclusive():
    cert = verify_kaneda_mod_J(3, bound=1)
    assert cert.status == "inconclusive"
    assert cert.witness["degree_bounds_tried"] == [1, 2]

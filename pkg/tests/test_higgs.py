from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylsplit.cyclotomic import q_gen, q_int
from weylsplit.higgs import (
    HiggsModule,
    SigmaModule,
    check_sigma_leibniz,
    higgs_to_sigma,
    is_quasi_nilpotent,
    jordan_corpus,
    jordan_nilpotent,
    nilpotency_index,
    poly_zero,
    roundtrip_check,
    sigma_to_higgs,
    sigma_to_higgs_detailed,
)
from weylsplit.linalg import Matrix
from weylsplit.polynomial import Polynomial
from weylsplit.splitting import phi_series


def t_poly(p, coeffs):
    return Polynomial(p, dict(enumerate(coeffs)), var="t")


def block(M: Matrix, i: int, j: int, r: int) -> Matrix:
    return Matrix([row[j * r : (j + 1) * r] for row in M.rows[i * r : (i + 1) * r]], M.zero)


def test_rank_one_zero_theta_p2():
    H = HiggsModule.from_int_matrix(2, [[0]])
    M = higgs_to_sigma(H)
    z = poly_zero(2)
    t = Polynomial.monomial(2, 1, var="t")
    assert M.rank == 2
    assert M.x_act == Matrix([[z, t], [z + 1, z]], z)
    assert M.d_act == Matrix([[z, z + 1], [z, z]], z)
    assert (M.d_act**2).is_zero()
    assert sigma_to_higgs(M).theta == H.theta


def test_rank_two_jordan_p2():
    H = HiggsModule.from_int_matrix(2, [[0, 1], [0, 0]])
    M = higgs_to_sigma(H)
    assert M.rank == 4
    assert M.relation_defect().is_zero()
    assert (M.d_act**4).is_zero()
    assert sigma_to_higgs(M).theta == H.theta


def test_rank_one_zero_theta_p3():
    p = 3
    M = higgs_to_sigma(HiggsModule.from_int_matrix(p, [[0]]))
    for i in range(p):
        for j in range(p):
            want = q_int(p, i + 1) if j == i + 1 else 0
            assert M.d_act[i, j] == want
    assert (M.d_act**3).is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_jordan_corpus_roundtrips(p):
    corpus = jordan_corpus(p, 3)
    assert len(corpus) == 1 + 2 + 3
    for H in corpus:
        cert = roundtrip_check(H)
        assert cert.passed, cert.witness


@pytest.mark.parametrize("p", [2, 3])
def test_polynomial_theta_roundtrips(p):
    z = poly_zero(p)
    q = q_gen(p)
    theta = Matrix(
        [
            [z, t_poly(p, [1, 1]), t_poly(p, [0, 0, q])],
            [z, z, t_poly(p, [2])],
            [z, z, z],
        ],
        z,
    )
    H = HiggsModule(p, theta)
    assert H.nilpotency == 3
    assert roundtrip_check(H).passed


@pytest.mark.parametrize("p", [2, 3])
def test_d_to_the_p_is_blockwise_scalar(p):
    H = jordan_nilpotent(p, [2, 1])
    M = higgs_to_sigma(H)
    r = H.rank
    N = max(1, H.nilpotency)
    t = Matrix.scalar(r, Polynomial.monomial(p, 1, var="t"), H.theta.zero)
    value = phi_series(p, N).substitute(H.theta, t)
    Dp = M.d_act**p
    for i in range(p):
        for j in range(p):
            assert block(Dp, i, j, r) == (value if i == j else Matrix.zeros(r, r, H.theta.zero))


@pytest.mark.parametrize("p", [2, 3])
def test_leibniz_and_quasi_nilpotence(p):
    x = Polynomial.monomial(p, 1)
    for H in jordan_corpus(p, 2):
        M = higgs_to_sigma(H)
        assert is_quasi_nilpotent(M)
        for f in (Polynomial.constant(p, 1), x, x * x, x**3 + x * 2):
            assert all(check_sigma_leibniz(M, f, g) for g in range(M.rank))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(0, 3))
def test_leibniz_random_polynomials(coeffs, g):
    p = 3
    M = higgs_to_sigma(jordan_nilpotent(p, [2]))
    f = Polynomial(p, dict(enumerate(coeffs)))
    assert check_sigma_leibniz(M, f, g % M.rank)


def test_quasi_nilpotence_negative_cases():
    p = 2
    z = poly_zero(p)
    ident = Matrix.identity(2, z)
    assert not is_quasi_nilpotent(SigmaModule(p, ident, ident))
    M = higgs_to_sigma(jordan_nilpotent(p, [2]))
    assert is_quasi_nilpotent(M)
    assert not is_quasi_nilpotent(M, bound=1)


def test_non_nilpotent_theta_is_rejected():
    with pytest.raises(ValueError):
        HiggsModule.from_int_matrix(2, [[1, 0], [0, 0]])


def test_truncation_below_nilpotency_is_rejected():
    with pytest.raises(ValueError):
        higgs_to_sigma(jordan_nilpotent(2, [3]), N=1)


def test_nilpotency_index():
    H = jordan_nilpotent(3, [3, 1])
    assert H.nilpotency == 3
    assert nilpotency_index(H.theta) == 3
    assert HiggsModule.from_int_matrix(3, [[0]]).nilpotency == 1


@pytest.mark.parametrize("p", [2, 3])
def test_change_of_basis_keeps_the_jordan_type(p):
    """Present M in a permuted basis; the recovered theta is similar to the original."""
    H = jordan_nilpotent(p, [2, 1])
    M = higgs_to_sigma(H)
    n = M.rank
    z = M.x_act.zero
    perm = list(reversed(range(n)))
    P = Matrix([[z + 1 if perm[i] == j else z for j in range(n)] for i in range(n)], z)
    Mp = SigmaModule(p, P.transpose() * M.x_act * P, P.transpose() * M.d_act * P)
    back = sigma_to_higgs(Mp)
    assert back.nilpotency == H.nilpotency
    assert back.rank == H.rank
    assert higgs_to_sigma(back).relation_defect().is_zero()


def test_detailed_output_records_the_basis_choice():
    res = sigma_to_higgs_detailed(higgs_to_sigma(jordan_nilpotent(3, [1, 1])))
    assert res.pivot_rows == [0, 1]
    assert res.truncation == 1


@pytest.mark.parametrize("p", [2, 3])
def test_json_roundtrips(p):
    H = jordan_nilpotent(p, [2, 1])
    assert HiggsModule.from_json(H.to_json()).theta == H.theta
    M = higgs_to_sigma(H)
    M2 = SigmaModule.from_json(M.to_json())
    assert M2.x_act == M.x_act and M2.d_act == M.d_act


def test_bad_json_is_rejected():
    with pytest.raises(ValueError):
        HiggsModule.from_json({"p": 2, "rank": 2, "theta": [[{}]]})
    with pytest.raises(ValueError):
        SigmaModule.from_json({"p": 2})

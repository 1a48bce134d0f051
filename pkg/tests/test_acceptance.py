"""
Acceptance gate: thirteen criteria, each with its own time limit.

Each test records one PASS/FAIL line in RESULTS; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from weylsplit.azumaya import verify_kaneda_mod_J, verify_p2_neutralization
from weylsplit.cyclotomic import CycInt, q_factorial_inverse, q_gen, q_int, q_int_inverse, q_pow
from weylsplit.higgs import (
    check_sigma_leibniz,
    higgs_to_sigma,
    is_quasi_nilpotent,
    jordan_corpus,
    sigma_to_higgs,
)
from weylsplit.polynomial import Polynomial
from weylsplit.qweyl import (
    ClassicalWeylElement,
    QWeylElement,
    classical_commutator,
    classical_mul,
    commutator,
    is_central,
    is_central_syntactic,
    is_centralizing_Rx,
    is_centralizing_syntactic,
    reduce_mod_p,
    sigma_power,
)
from weylsplit.splitting import (
    CenterElement,
    build_D,
    build_X,
    centralizer_basis,
    phi_of,
    phi_series,
    rho,
    verify_mod_I_isomorphism,
    verify_surjectivity_trunc,
    verify_weyl_relation,
)
from weylsplit.suite import random_centralizing, random_element

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time the body; record PASS only if it completes without error within ``limit`` seconds."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS[number] = f"FAIL  {number:2d}. {title} ({elapsed:.2f}s): {type(exc).__name__}: {exc}"
        raise
    elapsed = time.perf_counter() - start
    if elapsed >= limit:
        RESULTS[number] = f"FAIL  {number:2d}. {title} ({elapsed:.2f}s, limit {limit:g}s)"
        pytest.fail(f"criterion {number} took {elapsed:.2f}s, limit {limit}s")
    RESULTS[number] = f"PASS  {number:2d}. {title} ({elapsed:.2f}s, limit {limit:g}s)"


def test_01_q_integer_laws():
    with criterion(1, "q-integer laws, p in {2,3,5,7,11}", 1.0):
        for p in (2, 3, 5, 7, 11):
            assert q_int(p, p).is_zero()
            assert q_gen(p) * q_pow(p, p - 1) == 1
            for i in range(1, p):
                assert q_int(p, i) * q_int_inverse(p, i) == 1


def test_02_rewriting_identities():
    with criterion(2, "rewriting identities for n <= 2p, p in {2,3,5}", 5.0):
        for p in (2, 3, 5):
            x, d = QWeylElement.x(p), QWeylElement.d(p)
            for n in range(1, 2 * p + 1):
                assert d**n * x == d ** (n - 1) * q_int(p, n) + x * d**n * q_pow(p, n)
                assert d * x**n == x ** (n - 1) * q_int(p, n) + x**n * d * q_pow(p, n)
            assert commutator(d, x**p).is_zero()
            assert commutator(d**p, x).is_zero()
            assert commutator(d**p, x**p).is_zero()


def test_03_center_characterization():
    with criterion(3, "center and centralizer tests agree on 500 elements per p", 30.0):
        for p in (2, 3, 5):
            rng = random.Random(3000 + p)
            discrepancies = 0
            for k in range(500):
                if k % 3 == 0:
                    P = random_element(rng, p)
                elif k % 3 == 1:
                    P = random_element(rng, p, central=True, max_deg=2 * p)
                else:
                    P = random_centralizing(rng, p, max_deg=2 * p)
                if rng.random() < 0.3:
                    P = P + random_element(rng, p, max_terms=1)
                discrepancies += is_central(P) != is_central_syntactic(P)
                discrepancies += is_centralizing_Rx(P) != is_centralizing_syntactic(P)
            assert discrepancies == 0, (p, discrepancies)


def test_04_mod_p_reduction():
    with criterion(4, "reduction mod J is a homomorphism on 200 pairs", 10.0):
        for p in (2, 3, 5):
            rng = random.Random(4000 + p)
            for _ in range(200):
                P, Q = random_element(rng, p, max_deg=3), random_element(rng, p, max_deg=3)
                assert reduce_mod_p(P * Q) == classical_mul(reduce_mod_p(P), reduce_mod_p(Q))
            X, D = ClassicalWeylElement.x(p), ClassicalWeylElement.d(p)
            assert classical_mul(D, X) == classical_mul(X, D) + 1
            assert classical_commutator(D**p, X).is_zero()


def test_05_splitting_relation():
    with criterion(5, "DX - qXD = I for p in {2,3,5,7}, N in {1,2,3}; mutations caught", 5.0):
        for p in (2, 3, 5, 7):
            for N in (1, 2, 3):
                assert verify_weyl_relation(p, N)
            for i in range(p):
                for j in range(p):
                    D = build_D(p, 1).copy()
                    D[i, j] = D[i, j] + 1
                    assert not verify_weyl_relation(p, 1, D)


def test_06_mod_I_determinant():
    with criterion(6, "mod-I action matrix has unit determinant, p in {2,3,5}", 60.0):
        for p in (2, 3, 5):
            cert = verify_mod_I_isomorphism(p)
            assert cert.passed
            det = cert.witness["determinant"]
            assert set(det) == {"0"}
            assert CycInt(p, det["0"]).is_unit()


def test_07_truncated_neutralization():
    with criterion(7, "every matrix unit lifts with zero residual, p in {2,3}, N <= 2", 60.0):
        for p in (2, 3):
            for N in (0, 1, 2):
                cert = verify_surjectivity_trunc(p, N)
                assert cert.passed, cert.witness


def test_08_sigma_p_identity():
    with criterion(8, "sigma^p = 1 - (1-q)^p x^p d^p and its image is scalar", 5.0):
        N = 3
        for p in (2, 3, 5):
            q = q_gen(p)
            sp = sigma_power(p, p)
            assert sp == QWeylElement(p, {(0, 0): 1, (p, p): -((1 - q) ** p)})
            value = rho(sp, N).scalar_value()
            assert value is not None
            t = CenterElement.t(p, N)
            # the image of d^p is Phi(xi), so the scalar is 1 - (1-q)^p t Phi(xi)
            assert value == 1 - t * phi_series(p, N) * (1 - q) ** p


def test_09_phi_values():
    with criterion(9, "Phi(d), X^p = x^p I, D^p scalar and not xi I, p in {2,3}", 5.0):
        N = 3
        for p in (2, 3):
            inv = q_factorial_inverse(p, p - 1)
            want = centralizer_basis(p, N, p - 1, CenterElement.monomial(p, N, 0, 1, inv))
            assert phi_of(QWeylElement.d(p), N) == want
            assert (build_X(p, N) ** p).scalar_value() == CenterElement.t(p, N)
            Dp = (build_D(p, N) ** p).scalar_value()
            assert Dp is not None
            assert Dp != CenterElement.xi(p, N)


def test_10_p2_neutralization():
    with criterion(10, "p = 2: the four tensors map to E1..E4, which form a basis", 5.0):
        cert = verify_p2_neutralization()
        assert cert.passed, cert.witness
        assert cert.witness["basis_determinant_is_unit_times_sigma8"]


def test_11_mod_J_surjectivity():
    with criterion(11, "mod-J preimages of every matrix unit, p in {2,3}", 60.0):
        for p in (2, 3):
            cert = verify_kaneda_mod_J(p)
            assert cert.status == "pass", cert.witness["missing"]


def test_12_higgs_roundtrip():
    with criterion(12, "Higgs roundtrip for all Jordan-type theta of rank <= 3, p in {2,3}", 120.0):
        for p in (2, 3):
            x = Polynomial.monomial(p, 1)
            polys = [Polynomial.constant(p, 1), x, x * x]
            for H in jordan_corpus(p, 3):
                M = higgs_to_sigma(H)
                assert M.relation_defect().is_zero()
                assert is_quasi_nilpotent(M)
                assert all(check_sigma_leibniz(M, f, g) for f in polys for g in range(M.rank))
                assert sigma_to_higgs(M).theta == H.theta


def test_13_cli_contract():
    with criterion(13, "verify-all --p 2,3,5 exits 0; seeded reruns byte-identical", 60.0):
        argv = [sys.executable, "-m", "weylsplit", "verify-all", "--p", "2,3,5", "--seed", "0"]
        first = subprocess.run(argv, capture_output=True, text=True, check=False)
        second = subprocess.run(argv, capture_output=True, text=True, check=False)
        assert first.returncode == 0, first.stderr
        assert first.stdout == second.stdout
        assert json.loads(first.stdout)["exit_code"] == 0


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)

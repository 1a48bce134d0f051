"""Higgs modules and modules with a sigma-derivation, back and forth."""

from __future__ import annotations

from weylsplit.higgs import (
    check_sigma_leibniz,
    higgs_to_sigma,
    is_quasi_nilpotent,
    jordan_corpus,
    jordan_nilpotent,
    roundtrip_check,
    sigma_to_higgs,
)
from weylsplit.polynomial import Polynomial

p = 2
H = jordan_nilpotent(p, [2])
M = higgs_to_sigma(H)
print("theta   =", H.theta)
print("x acts  =", M.x_act)
print("d acts  =", M.d_act)
print("relation defect zero:", M.relation_defect().is_zero())
print("quasi-nilpotent:", is_quasi_nilpotent(M))
x = Polynomial.monomial(p, 1)
print("Leibniz for x^3:", all(check_sigma_leibniz(M, x**3, g) for g in range(M.rank)))
print("recovered theta =", sigma_to_higgs(M).theta)

for p in (2, 3):
    statuses = [roundtrip_check(H).status for H in jordan_corpus(p, 3)]
    print(f"p={p}: {len(statuses)} Jordan types, roundtrip {set(statuses)}")

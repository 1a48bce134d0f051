"""The p x p matrices D and X satisfy the q-Weyl relation over the completed center."""

from __future__ import annotations

from weylsplit.qweyl import QWeylElement
from weylsplit.splitting import (
    build_D,
    build_X,
    lift,
    matrix_unit,
    rho,
    verify_mod_I_isomorphism,
    verify_weyl_relation,
    weyl_defect,
)

p, N = 3, 2  # work modulo xi^3, xi standing for d^p

D, X = build_D(p, N), build_X(p, N)
print("D =", D)
print("X =", X)
print("D X - q X D - 1 =", weyl_defect(D, X, p))
print("relation holds for p=2..7:", all(verify_weyl_relation(r, N) for r in (2, 3, 5, 7)))

# Modulo xi the map to matrices is an isomorphism: its p^2 x p^2 matrix has unit determinant.
cert = verify_mod_I_isomorphism(p)
print("mod-xi determinant:", cert.witness["determinant"], cert.status)

# Consequently every matrix unit has a preimage, found degree by degree in xi.
P, residual = lift(matrix_unit(p, N, 0, 0), N)
print("preimage of E11:", P)
print("residual zero:", residual.is_zero(), "  image is E11:", rho(P, N) == matrix_unit(p, N, 0, 0))
print("rho(x d^p) =", rho(QWeylElement.monomial(p, 1, p), N))

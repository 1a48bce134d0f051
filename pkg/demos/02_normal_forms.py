"""Normal forms in the q-Weyl algebra and its classical shadow mod p."""

from __future__ import annotations

from weylsplit.polynomial import Polynomial
from weylsplit.qweyl import (
    QWeylElement,
    act,
    commutator,
    is_central,
    is_centralizing_Rx,
    reduce_mod_p,
    sigma,
    sigma_power,
)

p = 3
x, d = QWeylElement.x(p), QWeylElement.d(p)

print("d x        =", d * x)
print("d^2 x      =", d**2 * x)
print("d x^2      =", d * x**2)
print("[d, x]     =", commutator(d, x), "  (this is sigma)")
print("sigma^p    =", sigma_power(p, p))

# x^p and d^p are central; x d^p only commutes with polynomials in x.
for P in (x**p, d**p, x * d**p, x * d):
    print(f"{str(P):8s} central={is_central(P)!s:5s} centralizes R[x]={is_centralizing_Rx(P)}")

# d acts on R[x] as a q-derivative and sigma as x -> q x.
f = Polynomial(p, {4: 1, 1: 2})
print("d . (x^4 + 2x)     =", act(d, f))
print("sigma . (x^4 + 2x) =", act(sigma(p), f))
print("d^p . (x^4 + 2x)   =", act(d**p, f), "  (d^p acts by zero)")

# Setting q = 1 lands in the Weyl algebra over F_p.
print("reduce(d x) =", reduce_mod_p(d * x))

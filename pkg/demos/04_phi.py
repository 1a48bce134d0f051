"""The induced map Phi on the center is not the identity: d^p goes to a series in xi."""

from __future__ import annotations

from weylsplit.qweyl import QWeylElement, sigma_power
from weylsplit.splitting import phi_inverse_xi, phi_of, phi_on_center, phi_series, rho

N = 4
for p in (2, 3):
    print(f"p = {p}")
    print("  Phi(d)       =", phi_of(QWeylElement.d(p), N))
    print("  Phi(d^p)     =", phi_series(p, N))
    print("  Phi^-1(xi)   =", phi_inverse_xi(p, N))
    res = phi_on_center(p, N)
    print("  Phi(x^p)     =", res.image_xp, "  certificate:", res.certificate.status)
    print("  rho(sigma^p) =", rho(sigma_power(p, p), N).scalar_value())

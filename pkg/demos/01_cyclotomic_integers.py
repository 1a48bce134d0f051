"""Arithmetic in Z[q] with q a primitive p-th root of unity."""

from __future__ import annotations

from weylsplit.cyclotomic import complex_eval, q_factorial, q_gen, q_int, q_int_inverse, reduce_mod_J

p = 5
q = q_gen(p)

# q^4 is not a basis element: it folds into -1 - q - q^2 - q^3.
print("q^4             =", q**4)
print("(1+q)(1+q^4)    =", (1 + q) * (1 + q**4))

# [n] = 1 + q + ... + q^(n-1) vanishes at n = p, and [1]..[p-1] are units.
for n in range(p + 1):
    print(f"[{n}] = {q_int(p, n)}")
for i in range(1, p):
    inv = q_int_inverse(p, i)
    print(f"[{i}]^-1 = {inv}    check: {q_int(p, i) * inv}")

f = q_factorial(p, p - 1)
print("[4]! =", f, "   norm", f.norm())

# Two ways out of the ring: q -> 1 (then mod p), and q -> exp(2 pi i / p).
print("[3] mod J =", reduce_mod_J(q_int(p, 3)))
print("[3] at e^(2 pi i/5) =", complex_eval(q_int(p, 3), digits=15))

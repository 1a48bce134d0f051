"""
Exact arithmetic in the cyclotomic integers R = Z[q]/(1 + q + ... + q^(p-1)).

Elements are stored in the power basis 1, q, ..., q^(p-2) with Python
integers, so there is no overflow and every element has exactly one
representation.  The q-integers [n] = 1 + q + ... + q^(n-1), their
factorials, and the explicit inverses of [i] for p not dividing i live
here as well.

    >>> a = q_int(3, 2)
    >>> a
    CycInt(3, [1, 1])
    >>> a * q_int_inverse(3, 2)
    CycInt(3, [1, 0])
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .exceptions import NotInvertibleError, RingMismatchError

DEFAULT_PRIME_CAP = 13


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int, cap: int = DEFAULT_PRIME_CAP) -> int:
    """Validate `p` as a supported prime and return it."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise TypeError(f"p must be an int, got {type(p).__name__}")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p > cap:
        raise ValueError(f"p={p} exceeds the configured cap {cap}")
    return p


def _canonical(p: int, raw: Iterable[int]) -> tuple[int, ...]:
    # fold exponents with q^p = 1, then eliminate q^(p-1) = -(1 + ... + q^(p-2))
    folded = [0] * p
    for k, c in enumerate(raw):
        folded[k % p] += c
    top = folded[p - 1]
    return tuple(c - top for c in folded[: p - 1])


class CycInt:
    """An element of Z[q] with q a primitive p-th root of unity."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()) -> None:
        self.p = p
        self.coeffs = _canonical(p, coeffs)

    @classmethod
    def from_int(cls, p: int, n: int) -> CycInt:
        return cls(p, (n,))

    @classmethod
    def _raw(cls, p: int, coeffs: tuple[int, ...]) -> CycInt:
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        return obj

    def _coerce(self, other) -> CycInt | None:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise RingMismatchError(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return CycInt.from_int(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt._raw(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt._raw(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt._raw(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return CycInt._raw(self.p, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [0] * (2 * len(a))
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycInt(self.p, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            raise NotInvertibleError("negative powers are only defined for q itself; use q_pow")
        result = CycInt.from_int(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycInt):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coeffs == _canonical(self.p, (other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self) -> str:
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    # Galois theory -------------------------------------------------------

    def conjugate(self, k: int) -> CycInt:
        """Apply the automorphism q -> q^k (p must not divide k)."""
        if k % self.p == 0:
            raise ValueError("q -> q^k is an automorphism only when p does not divide k")
        raw = [0] * self.p
        for i, c in enumerate(self.coeffs):
            raw[(i * k) % self.p] += c
        return CycInt(self.p, raw)

    def _cofactor(self) -> CycInt:
        result = CycInt.from_int(self.p, 1)
        for k in range(2, self.p):
            result = result * self.conjugate(k)
        return result

    def norm(self) -> int:
        """Field norm down to Q; an integer."""
        n = self * self._cofactor()
        assert n.is_integer()
        return n.coeffs[0]

    def exact_div(self, other: CycInt | int) -> CycInt:
        """Return self / other, raising if the quotient is not in R."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in R")
        cof = o._cofactor()
        n = (o * cof).coeffs[0]
        num = self * cof
        out = []
        for c in num.coeffs:
            quo, rem = divmod(c, n)
            if rem:
                raise NotInvertibleError(f"{self} is not divisible by {o} in R")
            out.append(quo)
        return CycInt._raw(self.p, tuple(out))

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, p: int, data: Sequence[int]) -> CycInt:
        if not isinstance(data, (list, tuple)) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in data
        ):
            raise ValueError(f"CycInt must be a JSON integer array, got {data!r}")
        if len(data) > p - 1:
            raise ValueError(f"CycInt for p={p} has at most {p - 1} coefficients")
        return cls(p, data)


def zero(p: int) -> CycInt:
    return CycInt._raw(p, (0,) * (p - 1))


def one(p: int) -> CycInt:
    return CycInt.from_int(p, 1)


@lru_cache(maxsize=None)
def q_pow(p: int, k: int) -> CycInt:
    """q^k for any integer k (q is a unit, q^-1 = q^(p-1))."""
    raw = [0] * p
    raw[k % p] = 1
    return CycInt(p, raw)


def q_gen(p: int) -> CycInt:
    return q_pow(p, 1)


@lru_cache(maxsize=None)
def q_int(p: int, n: int) -> CycInt:
    """The q-integer [n] = 1 + q + ... + q^(n-1); [0] = 0."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    raw = [0] * p
    for k in range(n):
        raw[k % p] += 1
    return CycInt(p, raw)


@lru_cache(maxsize=None)
def q_factorial(p: int, n: int) -> CycInt:
    """[n]! = [n][n-1]...[1]; vanishes for n >= p."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    result = one(p)
    for k in range(1, n + 1):
        result = result * q_int(p, k)
    return result


@lru_cache(maxsize=None)
def q_int_inverse(p: int, i: int) -> CycInt:
    """Inverse of [i] for p not dividing i.

    With j = i^-1 mod p the inverse is 1 + q^i + q^(2i) + ... + q^((j-1)i),
    since (1 - q^i)/(1 - q) * (1 - q^(ij))/(1 - q^i) = 1.
    """
    if i % p == 0:
        raise NotInvertibleError(f"[{i}] is not a unit when p={p} divides {i}")
    j = pow(i, -1, p)
    raw = [0] * p
    for k in range(j):
        raw[(i * k) % p] += 1
    return CycInt(p, raw)


@lru_cache(maxsize=None)
def q_factorial_inverse(p: int, n: int) -> CycInt:
    """Inverse of [n]! as a product of the [i]^-1, 1 <= i <= n < p."""
    if n >= p:
        raise NotInvertibleError(f"[{n}]! = 0 when n >= p={p}")
    result = one(p)
    for k in range(1, n + 1):
        result = result * q_int_inverse(p, k)
    return result


def reduce_mod_J(a: CycInt) -> int:
    """Image in R/(1 - q) = F_p: substitute q = 1 and reduce mod p."""
    return sum(a.coeffs) % a.p


def complex_eval(a: CycInt, digits: int = 30) -> complex:
    """Numerical value under q = exp(2 pi i / p); for sanity checks only."""
    with mpmath.workdps(digits):
        z = mpmath.exp(2j * mpmath.pi / a.p)
        total = mpmath.mpc(0)
        for k, c in enumerate(a.coeffs):
            if c:
                total += c * z**k
        return complex(total)

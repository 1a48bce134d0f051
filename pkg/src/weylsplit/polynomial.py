"""Univariate polynomials over the cyclotomic integers."""

from __future__ import annotations

from typing import Mapping

from .cyclotomic import CycInt, q_pow
from .cyclotomic import zero as cyc_zero
from .exceptions import NotInvertibleError, RingMismatchError
from .formatting import format_terms


class Polynomial:
    """A polynomial sum c_n var^n with CycInt coefficients.

    Used both for the module R[x] on which the quantum Weyl algebra acts and
    for R[x^p], where the variable stands for x^p (printed as ``t``).
    Zero coefficients are never stored.
    """

    __slots__ = ("p", "coeffs", "var")

    def __init__(self, p: int, coeffs: Mapping[int, CycInt | int] | None = None, var: str = "x"):
        self.p = p
        self.var = var
        clean: dict[int, CycInt] = {}
        for n, c in (coeffs or {}).items():
            if n < 0:
                raise ValueError("negative exponent")
            if isinstance(c, int):
                c = CycInt.from_int(p, c)
            elif c.p != p:
                raise RingMismatchError(f"p={p} vs coefficient over p={c.p}")
            if c:
                clean[n] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, p: int, coeffs: dict[int, CycInt], var: str) -> Polynomial:
        obj = object.__new__(cls)
        obj.p, obj.coeffs, obj.var = p, coeffs, var
        return obj

    @classmethod
    def monomial(cls, p: int, n: int, c: CycInt | int = 1, var: str = "x") -> Polynomial:
        return cls(p, {n: c}, var)

    @classmethod
    def constant(cls, p: int, c: CycInt | int, var: str = "x") -> Polynomial:
        return cls(p, {0: c}, var)

    def zero(self) -> Polynomial:
        return Polynomial._raw(self.p, {}, self.var)

    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, n: int) -> CycInt:
        return self.coeffs.get(n) or cyc_zero(self.p)

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.p != self.p:
                raise RingMismatchError(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, CycInt) or (isinstance(other, int) and not isinstance(other, bool)):
            return Polynomial(self.p, {0: other}, self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for n, c in o.coeffs.items():
            s = out[n] + c if n in out else c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return Polynomial._raw(self.p, out, self.var)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.p, {n: -c for n, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, CycInt] = {}
        for n, a in self.coeffs.items():
            for m, b in o.coeffs.items():
                k = n + m
                out[k] = out[k] + a * b if k in out else a * b
        return Polynomial._raw(self.p, {k: c for k, c in out.items() if c}, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial.constant(self.p, 1, self.var)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, Polynomial) else other
        if o is None:
            return NotImplemented
        return self.p == o.p and self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.p, tuple(sorted((n, c.coeffs) for n, c in self.coeffs.items()))))

    def shift(self, k: int) -> Polynomial:
        """Multiply by var^k."""
        return Polynomial._raw(self.p, {n + k: c for n, c in self.coeffs.items()}, self.var)

    def scale_var(self, k: int) -> Polynomial:
        """f(q^k var); with k = 1 this is the automorphism sigma."""
        return Polynomial._raw(
            self.p, {n: c * q_pow(self.p, k * n) for n, c in self.coeffs.items()}, self.var
        )

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Exact quotient; raises if `other` does not divide self in R[var]."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.coeffs)
        dd = o.degree()
        lead = o.coeffs[dd]
        quo: dict[int, CycInt] = {}
        while rem:
            n = max(rem)
            if n < dd:
                raise NotInvertibleError("polynomial division leaves a remainder")
            c = rem[n].exact_div(lead)
            quo[n - dd] = c
            for m, b in o.coeffs.items():
                k = n - dd + m
                v = rem[k] - c * b if k in rem else -(c * b)
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Polynomial._raw(self.p, quo, self.var)

    def __call__(self, value):
        """Evaluate by Horner's rule at any ring element supporting + and *."""
        deg = self.degree()
        if deg is None:
            return value * 0
        result = None
        for n in range(deg, -1, -1):
            c = self.coeffs.get(n)
            if result is None:
                result = value * 0 + c
            else:
                result = result * value
                if c is not None:
                    result = result + c
        return result

    def __repr__(self) -> str:
        return f"Polynomial({self.p}, {{{', '.join(f'{n}: {c!r}' for n, c in sorted(self.coeffs.items()))}}})"

    def __str__(self) -> str:
        pairs = []
        for n in sorted(self.coeffs):
            mono = "" if n == 0 else (self.var if n == 1 else f"{self.var}^{n}")
            pairs.append((str(self.coeffs[n]), mono))
        return format_terms(pairs)

    def to_json(self) -> dict[str, list[int]]:
        return {str(n): c.to_json() for n, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, p: int, data: Mapping[str, list[int]], var: str = "x") -> Polynomial:
        if not isinstance(data, dict):
            raise ValueError(f"polynomial must be a JSON object, got {data!r}")
        try:
            return cls(p, {int(k): CycInt.from_json(p, v) for k, v in data.items()}, var)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad polynomial {data!r}: {exc}") from None

"""
The quantum Weyl algebra D_q = R<x, d> / (d x - q x d - 1) at a p-th root of unity.

Elements are kept in the normal form sum a_ij x^i d^j, powers of x to the
left.  Products are normal-ordered with the single rewriting rule

    d^j x  ->  [j] d^(j-1) + q^j x d^j

so the mirror relation d x^n = [n] x^(n-1) + q^n x^n d is something we check,
not something we assume.  The classical Weyl algebra over F_p (q = 1) is at
the bottom of the module; it is normal-ordered by the closed binomial
formula, which gives an independent route for the mod-p reduction tests.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Iterable, Mapping

from .cyclotomic import CycInt, q_int, q_pow, reduce_mod_J
from .exceptions import DegreeCapExceeded, RingMismatchError
from .formatting import format_terms
from .polynomial import Polynomial

DEFAULT_DEGREE_CAP = 64

Terms = dict[tuple[int, int], CycInt]

_ORDER_TABLES: dict[int, dict[tuple[int, int], Terms]] = {}


def _add_into(acc: Terms, key: tuple[int, int], c: CycInt) -> None:
    v = acc[key] + c if key in acc else c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _d_pow_x_pow(p: int, b: int, c: int) -> Terms:
    """Normal form of d^b x^c, memoised per p."""
    table = _ORDER_TABLES.setdefault(p, {})
    key = (b, c)
    if key in table:
        return table[key]
    if b == 0 or c == 0:
        result = {(c, b): CycInt.from_int(p, 1)}
    else:
        # d^b x^c = [b] d^(b-1) x^(c-1) + q^b x (d^b x^(c-1))
        result: Terms = {}
        qb = q_int(p, b)
        if qb:
            for (i, j), a in _d_pow_x_pow(p, b - 1, c - 1).items():
                _add_into(result, (i, j), qb * a)
        qp = q_pow(p, b)
        for (i, j), a in _d_pow_x_pow(p, b, c - 1).items():
            _add_into(result, (i + 1, j), qp * a)
    table[key] = result
    return result


class QWeylElement:
    """An element of D_q in normal form sum a_ij x^i d^j."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[tuple[int, int], CycInt | int] | None = None):
        self.p = p
        clean: Terms = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            if isinstance(c, int):
                c = CycInt.from_int(p, c)
            elif c.p != p:
                raise RingMismatchError(f"p={p} vs coefficient over p={c.p}")
            if c:
                _add_into(clean, (i, j), c)
        self.terms = clean

    @classmethod
    def _raw(cls, p: int, terms: Terms) -> QWeylElement:
        obj = object.__new__(cls)
        obj.p, obj.terms = p, terms
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def monomial(cls, p: int, i: int, j: int, c: CycInt | int = 1) -> QWeylElement:
        return cls(p, {(i, j): c})

    @classmethod
    def scalar(cls, p: int, c: CycInt | int) -> QWeylElement:
        return cls(p, {(0, 0): c})

    @classmethod
    def x(cls, p: int) -> QWeylElement:
        return cls.monomial(p, 1, 0)

    @classmethod
    def d(cls, p: int) -> QWeylElement:
        return cls.monomial(p, 0, 1)

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> QWeylElement:
        return cls._raw(f.p, {(n, 0): c for n, c in f.coeffs.items()})

    # ring structure -------------------------------------------------------

    def _coerce(self, other) -> QWeylElement | None:
        if isinstance(other, QWeylElement):
            if other.p != self.p:
                raise RingMismatchError(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, CycInt) or (isinstance(other, int) and not isinstance(other, bool)):
            return QWeylElement.scalar(self.p, other)
        if isinstance(other, Polynomial):
            return QWeylElement.from_polynomial(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            _add_into(out, k, c)
        return QWeylElement._raw(self.p, out)

    __radd__ = __add__

    def __neg__(self) -> QWeylElement:
        return QWeylElement._raw(self.p, {k: -c for k, c in self.terms.items()})

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
        if isinstance(other, (CycInt, int)) and not isinstance(other, bool):
            out = {k: c * other for k, c in self.terms.items()}
            return QWeylElement._raw(self.p, {k: c for k, c in out.items() if c})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return weyl_mul(self, o)

    def __rmul__(self, other):
        if isinstance(other, (CycInt, int)) and not isinstance(other, bool):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return weyl_mul(o, self)

    def __pow__(self, n: int) -> QWeylElement:
        result = QWeylElement.scalar(self.p, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, QWeylElement) else other
        if o is None:
            return NotImplemented
        return self.p == o.p and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.p, tuple(sorted((k, c.coeffs) for k, c in self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Total degree max(i + j), or None for zero."""
        return max((i + j for i, j in self.terms), default=None)

    def x_degree(self) -> int | None:
        return max((i for i, _ in self.terms), default=None)

    def d_degree(self) -> int | None:
        return max((j for _, j in self.terms), default=None)

    def coefficient(self, i: int, j: int) -> CycInt:
        return self.terms.get((i, j)) or CycInt(self.p)

    def __repr__(self) -> str:
        return f"QWeylElement({self.p}, {dict(sorted(self.terms.items()))!r})"

    def __str__(self) -> str:
        return _render(self.terms, str)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "terms": [
                {"x": i, "d": j, "c": c.to_json()} for (i, j), c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> QWeylElement:
        p, items = _parse_terms_json(data)
        terms: Terms = {}
        for item in items:
            c = CycInt.from_json(p, item["c"])
            _add_into(terms, (item["x"], item["d"]), c)
        return cls(p, terms)


def _render(terms: Mapping[tuple[int, int], object], fmt) -> str:
    pairs = []
    for (i, j), c in sorted(terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0])):
        mono = ""
        if i:
            mono += "x" if i == 1 else f"x^{i}"
        if j:
            mono += "δ" if j == 1 else f"δ^{j}"
        pairs.append((fmt(c), mono))
    return format_terms(pairs)


def _parse_terms_json(data: Mapping) -> tuple[int, list]:
    if not isinstance(data, dict) or "p" not in data or "terms" not in data:
        raise ValueError("element JSON needs keys 'p' and 'terms'")
    p = data["p"]
    items = data["terms"]
    if not isinstance(items, list):
        raise ValueError("'terms' must be a list")
    for item in items:
        if not isinstance(item, dict) or set(item) != {"x", "d", "c"}:
            raise ValueError(f"bad term {item!r}; expected keys x, d, c")
        for key in ("x", "d"):
            v = item[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"exponent {key}={v!r} must be a nonnegative integer")
    return p, items


def weyl_mul(P: QWeylElement, Q: QWeylElement, degree_cap: int = DEFAULT_DEGREE_CAP) -> QWeylElement:
    """Normal form of the product P Q."""
    if P.p != Q.p:
        raise RingMismatchError(f"p={P.p} vs p={Q.p}")
    if not P.terms or not Q.terms:
        return QWeylElement._raw(P.p, {})
    if P.degree() + Q.degree() > degree_cap:
        raise DegreeCapExceeded(
            f"product of degrees {P.degree()} and {Q.degree()} exceeds cap {degree_cap}"
        )
    p = P.p
    out: Terms = {}
    for (a, b), c1 in P.terms.items():
        for (c, d), c2 in Q.terms.items():
            coef = c1 * c2
            if b == 0 or c == 0:
                _add_into(out, (a + c, b + d), coef)
                continue
            for (i, j), c3 in _d_pow_x_pow(p, b, c).items():
                _add_into(out, (a + i, j + d), coef * c3)
    return QWeylElement._raw(p, out)


def commutator(P: QWeylElement, Q: QWeylElement) -> QWeylElement:
    """[P, Q] = PQ - QP."""
    return weyl_mul(P, Q) - weyl_mul(Q, P)


def sigma(p: int) -> QWeylElement:
    """sigma = [d, x] = 1 - (1 - q) x d."""
    return commutator(QWeylElement.d(p), QWeylElement.x(p))


def sigma_power(p: int, k: int) -> QWeylElement:
    return sigma(p) ** k


def act(P: QWeylElement, f: Polynomial) -> Polynomial:
    """Action of D_q on R[x]: x multiplies, d(x^n) = [n] x^(n-1)."""
    if P.p != f.p:
        raise RingMismatchError(f"p={P.p} vs p={f.p}")
    p = P.p
    out: dict[int, CycInt] = {}
    for (i, j), c in P.terms.items():
        for n, a in f.coeffs.items():
            if j > n:
                continue
            # falling q-factorial [n][n-1]...[n-j+1]
            ff = CycInt.from_int(p, 1)
            for k in range(n - j + 1, n + 1):
                ff = ff * q_int(p, k)
            v = c * ff * a
            if v:
                m = n - j + i
                s = out[m] + v if m in out else v
                if s:
                    out[m] = s
                else:
                    out.pop(m)
    return Polynomial(p, out)


def sigma_derivation_check(f: Polynomial, g: Polynomial) -> bool:
    """Twisted Leibniz rule d(fg) = d(f) g + sigma(f) d(g)."""
    p = f.p
    d = QWeylElement.d(p)
    s = sigma(p)
    return act(d, f * g) == act(d, f) * g + act(s, f) * act(d, g)


def is_central(P: QWeylElement) -> bool:
    """P commutes with x and with d."""
    p = P.p
    return (
        commutator(P, QWeylElement.x(p)).is_zero()
        and commutator(P, QWeylElement.d(p)).is_zero()
    )


def is_central_syntactic(P: QWeylElement) -> bool:
    """All exponents of P are multiples of p (P lies in R[x^p, d^p])."""
    return all(i % P.p == 0 and j % P.p == 0 for i, j in P.terms)


def is_centralizing_Rx(P: QWeylElement) -> bool:
    """P commutes with x, hence with all of R[x]."""
    return commutator(P, QWeylElement.x(P.p)).is_zero()


def is_centralizing_syntactic(P: QWeylElement) -> bool:
    """All d-exponents are multiples of p (P lies in R[x, d^p])."""
    return all(j % P.p == 0 for _, j in P.terms)


# classical Weyl algebra over F_p ---------------------------------------------


class ClassicalWeylElement:
    """An element of F_p<x, D>/(Dx - xD - 1) in normal form sum a_ij x^i D^j."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[tuple[int, int], int] | None = None):
        self.p = p
        clean: dict[tuple[int, int], int] = {}
        for k, c in (terms or {}).items():
            v = (clean.get(k, 0) + c) % p
            if v:
                clean[k] = v
            else:
                clean.pop(k, None)
        self.terms = clean

    @classmethod
    def monomial(cls, p: int, i: int, j: int, c: int = 1) -> ClassicalWeylElement:
        return cls(p, {(i, j): c})

    @classmethod
    def x(cls, p: int) -> ClassicalWeylElement:
        return cls.monomial(p, 1, 0)

    @classmethod
    def d(cls, p: int) -> ClassicalWeylElement:
        return cls.monomial(p, 0, 1)

    def _coerce(self, other):
        if isinstance(other, ClassicalWeylElement):
            if other.p != self.p:
                raise RingMismatchError(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return ClassicalWeylElement(self.p, {(0, 0): other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return ClassicalWeylElement(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return ClassicalWeylElement(self.p, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return classical_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return classical_mul(o, self)

    def __pow__(self, n: int):
        result = ClassicalWeylElement(self.p, {(0, 0): 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, ClassicalWeylElement) else other
        if o is None:
            return NotImplemented
        return self.p == o.p and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.p, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"ClassicalWeylElement({self.p}, {dict(sorted(self.terms.items()))!r})"

    def __str__(self) -> str:
        return _render(self.terms, str).replace("δ", "∂")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "terms": [{"x": i, "d": j, "c": c} for (i, j), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> ClassicalWeylElement:
        p, items = _parse_terms_json(data)
        terms: dict[tuple[int, int], int] = {}
        for item in items:
            c = item["c"]
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError(f"classical coefficient must be an integer, got {c!r}")
            terms[(item["x"], item["d"])] = terms.get((item["x"], item["d"]), 0) + c
        return cls(p, terms)


def classical_mul(P: ClassicalWeylElement, Q: ClassicalWeylElement) -> ClassicalWeylElement:
    """Normal form of PQ using D^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) D^(b-k)."""
    if P.p != Q.p:
        raise RingMismatchError(f"p={P.p} vs p={Q.p}")
    p = P.p
    out: dict[tuple[int, int], int] = {}
    for (a, b), c1 in P.terms.items():
        for (c, d), c2 in Q.terms.items():
            for k in range(min(b, c) + 1):
                coef = c1 * c2 * comb(b, k) * comb(c, k) * factorial(k)
                if coef % p:
                    key = (a + c - k, b - k + d)
                    out[key] = out.get(key, 0) + coef
    return ClassicalWeylElement(p, out)


def classical_commutator(P: ClassicalWeylElement, Q: ClassicalWeylElement) -> ClassicalWeylElement:
    return classical_mul(P, Q) - classical_mul(Q, P)


def reduce_mod_p(P: QWeylElement) -> ClassicalWeylElement:
    """Reduce coefficients modulo J = (1 - q), sending d to the classical D."""
    return ClassicalWeylElement(P.p, {k: reduce_mod_J(c) for k, c in P.terms.items()})


def element(p: int, triples: Iterable[tuple[int, int, CycInt | int]]) -> QWeylElement:
    """Build sum c x^i d^j from (i, j, c) triples."""
    terms: Terms = {}
    for i, j, c in triples:
        if isinstance(c, int):
            c = CycInt.from_int(p, c)
        _add_into(terms, (i, j), c)
    return QWeylElement(p, terms)

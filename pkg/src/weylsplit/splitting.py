"""
Matrix splitting of the completed quantum Weyl algebra.

The completed center is realised as the truncated ring

    Zhat = R[t][xi] / (xi^(N+1)),     t <-> x^p,  xi <-> d^p,

and the centralizer of R[x] as the free Zhat-module with basis
1, x, ..., x^(p-1).  The matrices D and X below act on that module; sending
d -> D, x -> X defines a representation ``rho`` of D_q, and everything else
here checks that it is the expected isomorphism, degree by degree in xi.

The variable t is deliberately not renamed to x: it is the central
element x^p, and keeping the names apart avoids silent aliasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .certificates import Certificate
from .cyclotomic import (
    CycInt,
    check_prime,
    q_factorial_inverse,
    q_int,
    q_pow,
)
from .cyclotomic import (
    one as cyc_one,
)
from .exceptions import RingMismatchError
from .formatting import format_terms
from .linalg import Matrix, det_bareiss, solve_exact
from .polynomial import Polynomial
from .qweyl import QWeylElement, act

DEFAULT_TRUNCATION = 3

CTerms = dict[tuple[int, int], CycInt]


class CenterElement:
    """Element sum c_ab t^a xi^b of R[t][xi]/(xi^(N+1))."""

    __slots__ = ("p", "N", "terms")

    def __init__(self, p: int, N: int, terms: Mapping[tuple[int, int], CycInt | int] | None = None):
        if N < 0:
            raise ValueError("truncation order must be >= 0")
        self.p, self.N = p, N
        clean: CTerms = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("exponents must be nonnegative")
            if b > N:
                continue
            if isinstance(c, int):
                c = CycInt.from_int(p, c)
            v = clean[(a, b)] + c if (a, b) in clean else c
            if v:
                clean[(a, b)] = v
            else:
                clean.pop((a, b), None)
        self.terms = clean

    @classmethod
    def _raw(cls, p: int, N: int, terms: CTerms) -> CenterElement:
        obj = object.__new__(cls)
        obj.p, obj.N, obj.terms = p, N, terms
        return obj

    @classmethod
    def monomial(cls, p: int, N: int, a: int, b: int, c: CycInt | int = 1) -> CenterElement:
        return cls(p, N, {(a, b): c})

    @classmethod
    def t(cls, p: int, N: int) -> CenterElement:
        """The central element x^p."""
        return cls.monomial(p, N, 1, 0)

    @classmethod
    def xi(cls, p: int, N: int) -> CenterElement:
        """The central element d^p."""
        return cls.monomial(p, N, 0, 1)

    @classmethod
    def from_polynomial(cls, f: Polynomial, N: int, xi_degree: int = 0) -> CenterElement:
        return cls(f.p, N, {(a, xi_degree): c for a, c in f.coeffs.items()})

    def _coerce(self, other) -> CenterElement | None:
        if isinstance(other, CenterElement):
            if other.p != self.p or other.N != self.N:
                raise RingMismatchError(f"(p, N)=({self.p}, {self.N}) vs ({other.p}, {other.N})")
            return other
        if isinstance(other, CycInt) or (isinstance(other, int) and not isinstance(other, bool)):
            return CenterElement(self.p, self.N, {(0, 0): other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return CenterElement._raw(self.p, self.N, out)

    __radd__ = __add__

    def __neg__(self) -> CenterElement:
        return CenterElement._raw(self.p, self.N, {k: -c for k, c in self.terms.items()})

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
            return CenterElement._raw(self.p, self.N, {k: c for k, c in out.items() if c})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        N = self.N
        out: CTerms = {}
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in o.terms.items():
                if b + d > N:
                    continue
                k = (a + c, b + d)
                v = out[k] + c1 * c2 if k in out else c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k)
        return CenterElement._raw(self.p, N, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CenterElement:
        result = CenterElement(self.p, self.N, {(0, 0): 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, CenterElement) else other
        if o is None:
            return NotImplemented
        return self.p == o.p and self.N == o.N and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.p, self.N, tuple(sorted((k, c.coeffs) for k, c in self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def xi_coefficient(self, b: int) -> Polynomial:
        """The coefficient of xi^b, a polynomial in t."""
        return Polynomial(self.p, {a: c for (a, bb), c in self.terms.items() if bb == b}, var="t")

    def xi_valuation(self) -> int | None:
        return min((b for _, b in self.terms), default=None)

    def at_xi_zero(self) -> Polynomial:
        return self.xi_coefficient(0)

    def substitute(self, xi_value, t_value=None):
        """Evaluate sum c t^a xi^b at t = t_value, xi = xi_value.

        ``t_value`` defaults to t itself (only valid when xi_value is a
        CenterElement); both values must commute.
        """
        if t_value is None:
            t_value = CenterElement.t(self.p, xi_value.N)
        unit = xi_value * 0 + 1
        out = xi_value * 0
        xi_pows = [unit]
        t_pows = [unit]
        for (a, b), c in sorted(self.terms.items()):
            while len(xi_pows) <= b:
                xi_pows.append(xi_pows[-1] * xi_value)
            while len(t_pows) <= a:
                t_pows.append(t_pows[-1] * t_value)
            out = out + (t_pows[a] * xi_pows[b]) * c
        return out

    def __repr__(self) -> str:
        return f"CenterElement({self.p}, {self.N}, {dict(sorted(self.terms.items()))!r})"

    def __str__(self) -> str:
        pairs = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            mono = ""
            if a:
                mono += f"x^{self.p}" if a == 1 else f"(x^{self.p})^{a}"
            if b:
                mono += "ξ" if b == 1 else f"ξ^{b}"
            pairs.append((str(c), mono))
        return format_terms(pairs)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "N": self.N,
            "terms": [
                {"xp": a, "xi": b, "c": c.to_json()} for (a, b), c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> CenterElement:
        if not isinstance(data, dict) or not {"p", "N", "terms"} <= set(data):
            raise ValueError("center element JSON needs keys 'p', 'N' and 'terms'")
        p, N = data["p"], data["N"]
        terms: dict[tuple[int, int], CycInt] = {}
        for item in data["terms"]:
            key = (item["xp"], item["xi"])
            c = CycInt.from_json(p, item["c"])
            terms[key] = terms[key] + c if key in terms else c
        return cls(p, N, terms)


def center_zero(p: int, N: int) -> CenterElement:
    return CenterElement._raw(p, N, {})


@dataclass(frozen=True)
class CentralizerElement:
    """Coordinates in the basis 1, x, ..., x^(p-1) over the truncated center."""

    comps: tuple[CenterElement, ...]

    @property
    def p(self) -> int:
        return len(self.comps)

    def to_polynomial(self) -> dict[tuple[int, int], CycInt]:
        """Flatten to x^(pa + k) xi^b terms (the element as a power series in x, xi)."""
        p = self.p
        out: dict[tuple[int, int], CycInt] = {}
        for k, c in enumerate(self.comps):
            for (a, b), v in c.terms.items():
                out[(p * a + k, b)] = v
        return out

    def __str__(self) -> str:
        pairs = []
        for k, c in enumerate(self.comps):
            if c:
                basis = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                cs = str(c)
                pairs.append((f"({cs})" if basis and " " in cs else cs, basis))
        return format_terms(pairs)

    def to_json(self) -> list:
        return [c.to_json() for c in self.comps]


# the matrices D and X ---------------------------------------------------------


def build_D(p: int, N: int = DEFAULT_TRUNCATION, corner_scale: int = 1) -> Matrix:
    """The matrix of d: d_(i,i+1) = [i] + q^i t xi/[p-1]!, d_(p,1) = xi/[p-1]!.

    ``corner_scale`` multiplies the (p, 1) entry; anything other than 1 is a
    deliberate fault used to show the relation check has teeth.
    """
    check_prime(p)
    z = center_zero(p, N)
    inv = q_factorial_inverse(p, p - 1)
    M = Matrix.zeros(p, p, z)
    for i in range(1, p):
        M[i - 1, i] = CenterElement(p, N, {(0, 0): q_int(p, i), (1, 1): q_pow(p, i) * inv})
    M[p - 1, 0] = CenterElement(p, N, {(0, 1): inv * corner_scale})
    return M


def build_X(p: int, N: int = DEFAULT_TRUNCATION) -> Matrix:
    """The matrix of x: x_(1,p) = t and x_(i,i-1) = 1."""
    check_prime(p)
    z = center_zero(p, N)
    M = Matrix.zeros(p, p, z)
    M[0, p - 1] = CenterElement.t(p, N)
    for i in range(1, p):
        M[i, i - 1] = z + 1
    return M


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return A * B


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return A + B


def mat_scalar(c, A: Matrix) -> Matrix:
    return A * c


def weyl_defect(D: Matrix, X: Matrix, p: int) -> Matrix:
    """D X - q X D - 1."""
    return D * X - (X * D) * q_pow(p, 1) - 1


def verify_weyl_relation(p: int, N: int = DEFAULT_TRUNCATION, D: Matrix | None = None) -> bool:
    """True iff D X - q X D - 1 vanishes exactly."""
    if D is None:
        D = build_D(p, N)
    return weyl_defect(D, build_X(p, N), p).is_zero()


class _PowerCache:
    def __init__(self, base: Matrix) -> None:
        self.powers = [Matrix.identity(base.nrows, base.zero), base]

    def __getitem__(self, n: int) -> Matrix:
        while len(self.powers) <= n:
            self.powers.append(self.powers[-1] * self.powers[1])
        return self.powers[n]


@lru_cache(maxsize=32)
def _caches(p: int, N: int) -> tuple[_PowerCache, _PowerCache]:
    return _PowerCache(build_X(p, N)), _PowerCache(build_D(p, N))


def rho(P: QWeylElement, N: int = DEFAULT_TRUNCATION) -> Matrix:
    """Image of P under x -> X, d -> D (entries truncated at xi^(N+1))."""
    p = P.p
    Xp, Dp = _caches(p, N)
    out = Matrix.zeros(p, p, center_zero(p, N))
    for (i, j), c in sorted(P.terms.items()):
        out = out + (Xp[i] * Dp[j]) * c
    return out


def scalar_of(A: Matrix) -> CenterElement:
    s = A.scalar_value()
    if s is None:
        raise ValueError("matrix is not scalar")
    return s


# reduction modulo I = (xi) ---------------------------------------------------


def action_matrix_mod_I(P: QWeylElement, delta_acts_as_zero: bool = False) -> Matrix:
    """Matrix of f -> P(f) on R[x] over R[t] in the basis 1, x, ..., x^(p-1).

    Computed from the action on polynomials, independently of ``rho``.
    """
    p = P.p
    tz = Polynomial(p, var="t")
    if delta_acts_as_zero:
        P = QWeylElement(p, {k: c for k, c in P.terms.items() if k[1] == 0})
    M = Matrix.zeros(p, p, tz)
    for k in range(p):
        image = act(P, Polynomial.monomial(p, k))
        for n, c in image.coeffs.items():
            m, r = divmod(n, p)
            M[r, k] = M[r, k] + Polynomial.monomial(p, m, c, var="t")
    return M


def _flatten(M: Matrix) -> list:
    return [a for row in M.rows for a in row]


def mod_I_system(p: int, delta_acts_as_zero: bool = False) -> Matrix:
    """The p^2 x p^2 matrix over R[t] with columns vec(action of x^a d^b)."""
    cols = []
    for a in range(p):
        for b in range(p):
            mono = QWeylElement.monomial(p, a, b)
            cols.append(_flatten(action_matrix_mod_I(mono, delta_acts_as_zero)))
    return Matrix(cols, Polynomial(p, var="t")).transpose()


def unit_inverse(u: CycInt) -> CycInt:
    """Inverse of a unit of R (norm +-1), via the product of its conjugates."""
    return CycInt.from_int(u.p, 1).exact_div(u)


def verify_mod_I_isomorphism(p: int, delta_acts_as_zero: bool = False) -> Certificate:
    """Certify that D_q/(d^p) -> End_{R[t]}(R[x]) is bijective: unit determinant."""
    check_prime(p)
    A = mod_I_system(p, delta_acts_as_zero)
    det = det_bareiss(A)
    witness = {"determinant": det.to_json()}
    ok = det.degree() == 0 and det[0].is_unit()
    if ok:
        inv = unit_inverse(det[0])
        ok = det[0] * inv == 1
        witness["determinant_inverse"] = inv.to_json()
    return Certificate(
        name="verify_mod_I_isomorphism",
        params={"p": p},
        status="pass" if ok else "fail",
        witness=witness,
    )


@lru_cache(maxsize=16)
def mod_I_inverse(p: int) -> Matrix:
    """Inverse of ``mod_I_system(p)`` over R[t]."""
    A = mod_I_system(p)
    return solve_exact(A, Matrix.identity(A.nrows, A.zero))


def matrix_unit(p: int, N: int, row: int, col: int) -> Matrix:
    M = Matrix.zeros(p, p, center_zero(p, N))
    M[row, col] = M.zero + 1
    return M


def lift(target: Matrix, N: int) -> tuple[QWeylElement, Matrix]:
    """Find P in D_q with rho(P) = target modulo xi^(N+1).

    At each xi-degree the lowest residual layer is pulled back through the
    mod-I inverse and multiplied by the matching power of d^p; since
    rho(d^p) = xi (1 + O(xi)), each step clears one more degree.  Returns
    the preimage and the final residual (zero on success).
    """
    p = target.nrows
    Ainv = mod_I_inverse(p)
    preimage = QWeylElement(p)
    residual = target
    for deg in range(N + 1):
        layer = [c.xi_coefficient(deg) for c in _flatten(residual)]
        if not any(layer):
            continue
        if any(c.xi_coefficient(b) for c in _flatten(residual) for b in range(deg)):
            break  # lower layer survived; reported through the residual
        rhs = Matrix([[c] for c in layer], Ainv.zero)
        coords = Ainv * rhs
        step: dict[tuple[int, int], CycInt] = {}
        for idx, poly in enumerate(coords.column(0)):
            a, b = divmod(idx, p)
            for m, c in poly.coeffs.items():
                step[(a + p * m, b + p * deg)] = c
        step_elt = QWeylElement(p, step)
        preimage = preimage + step_elt
        residual = residual - rho(step_elt, N)
    return preimage, residual


def verify_surjectivity_trunc(p: int, N: int = DEFAULT_TRUNCATION) -> Certificate:
    """Lift every matrix unit E_kl through rho, degree by degree in xi."""
    check_prime(p)
    preimages = {}
    ok = True
    for k in range(p):
        for m in range(p):
            target = matrix_unit(p, N, k, m)
            P, residual = lift(target, N)
            clean = residual.is_zero() and rho(P, N) == target
            ok = ok and clean
            preimages[f"E{k + 1}{m + 1}"] = {
                "preimage": P.to_json(),
                "residual_zero": clean,
            }
    return Certificate(
        name="verify_surjectivity_trunc",
        params={"p": p, "N": N},
        status="pass" if ok else "fail",
        witness=preimages,
    )


# the map Phi ------------------------------------------------------------------


def phi_of(P: QWeylElement, N: int = DEFAULT_TRUNCATION) -> CentralizerElement:
    """rho(P) applied to the basis vector 1."""
    return CentralizerElement(tuple(rho(P, N).column(0)))


def centralizer_basis(p: int, N: int, k: int, c: CenterElement | None = None) -> CentralizerElement:
    z = center_zero(p, N)
    comps = [z] * p
    comps[k] = c if c is not None else z + 1
    return CentralizerElement(tuple(comps))


@dataclass
class PhiOnCenter:
    image_xp: CenterElement
    image_dp: CenterElement
    is_identity: bool
    inverse_xi: CenterElement
    certificate: Certificate = field(repr=False)


def phi_series(p: int, N: int = DEFAULT_TRUNCATION) -> CenterElement:
    """Phi(d^p): the scalar by which D^p acts."""
    return scalar_of(_caches(p, N)[1][p])


def phi_inverse_xi(p: int, N: int = DEFAULT_TRUNCATION) -> CenterElement:
    """psi(t, xi) with psi(t, Phi(xi)) = xi mod xi^(N+1), by degree-wise reversion."""
    s = phi_series(p, N)
    xi = CenterElement.xi(p, N)
    psi = xi
    for deg in range(2, N + 1):
        err = xi - psi.substitute(s)
        layer = err.xi_coefficient(deg)
        if layer:
            psi = psi + CenterElement.from_polynomial(layer, N, deg)
    return psi


def phi_on_center(p: int, N: int = DEFAULT_TRUNCATION) -> PhiOnCenter:
    """Images of x^p and d^p under Phi, with the checks that go with them."""
    Xc, Dc = _caches(p, N)
    Xp, Dp = Xc[p], Dc[p]
    sx, sd = Xp.scalar_value(), Dp.scalar_value()
    t = CenterElement.t(p, N)
    xi = CenterElement.xi(p, N)
    checks = {
        "X^p scalar": sx is not None,
        "D^p scalar": sd is not None,
    }
    if sx is None or sd is None:
        cert = Certificate("phi_on_center", {"p": p, "N": N}, "fail", {"checks": checks})
        return PhiOnCenter(sx, sd, False, xi, cert)
    checks["Phi(x^p) = x^p"] = sx == t
    checks["Phi(d^p) != d^p"] = sd != xi
    checks["Phi(d^p) = d^p mod d^2p"] = sd.xi_valuation() == 1 and sd.xi_coefficient(1) == Polynomial(
        p, {0: cyc_one(p)}, var="t"
    )
    checks["Phi multiplicative on x^p d^p"] = rho(QWeylElement.monomial(p, p, p), N) == Xp * Dp and (
        (Xp * Dp).scalar_value() == sx * sd
    )
    psi = phi_inverse_xi(p, N)
    checks["Phi invertible mod xi^(N+1)"] = psi.substitute(sd) == xi and sd.substitute(psi) == xi
    status = "pass" if all(checks.values()) else "fail"
    cert = Certificate(
        "phi_on_center",
        {"p": p, "N": N},
        status,
        {
            "checks": checks,
            "phi_xp": sx.to_json(),
            "phi_dp": sd.to_json(),
            "phi_inverse_xi": psi.to_json(),
        },
    )
    return PhiOnCenter(sx, sd, sd == xi, psi, cert)


def matrix_to_json(M: Matrix) -> list:
    return [[a.to_json() for a in row] for row in M.rows]

"""
Higgs modules and modules with a sigma-derivation, on free modules of finite rank.

A Higgs module is a free R[t]-module H with a nilpotent matrix theta.  Here t
plays the role of x^p: the splitting identifies the completed center with
R[t][[xi]], and a Higgs field is just xi acting nilpotently.

``higgs_to_sigma`` tensors H with the rank-p centralizer module: the result
is H^p, on which x acts by the X matrix (t -> t) and d by the D matrix
(xi -> theta).  ``sigma_to_higgs`` goes back by cutting M down with the
idempotent rho^-1(E11) and letting rho^-1(xi) act on the image; both
elements of D_q come from the degree-wise lifting in ``splitting``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .certificates import Certificate
from .cyclotomic import CycInt, check_prime
from .exceptions import VerificationError
from .linalg import Matrix, block_matrix
from .polynomial import Polynomial
from .qweyl import QWeylElement, act, sigma
from .splitting import (
    build_D,
    build_X,
    lift,
    matrix_unit,
    phi_inverse_xi,
    unit_inverse,
)


def poly_zero(p: int) -> Polynomial:
    return Polynomial(p, var="t")


def nilpotency_index(A: Matrix, bound: int | None = None) -> int | None:
    """Least d with A^d = 0 (d <= bound, default the size), or None."""
    n = A.nrows
    bound = n if bound is None else bound
    power = Matrix.identity(n, A.zero)
    for d in range(bound + 1):
        if power.is_zero():
            return d
        power = power * A
    return None


@dataclass
class HiggsModule:
    """Free R[t]-module of rank r with a nilpotent R[t]-linear endomorphism."""

    p: int
    theta: Matrix
    nilpotency: int = field(init=False)

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.theta.nrows != self.theta.ncols:
            raise ValueError("theta must be square")
        d = nilpotency_index(self.theta)
        if d is None:
            raise ValueError("theta is not nilpotent (a nilpotent r x r matrix has theta^r = 0)")
        self.nilpotency = d

    @property
    def rank(self) -> int:
        return self.theta.nrows

    @classmethod
    def from_int_matrix(cls, p: int, rows: Sequence[Sequence[int]]) -> HiggsModule:
        z = poly_zero(p)
        return cls(p, Matrix([[z + v for v in r] for r in rows], z))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "rank": self.rank,
            "theta": [[e.to_json() for e in row] for row in self.theta.rows],
            "nilpotency_index": self.nilpotency,
        }

    @classmethod
    def from_json(cls, data: dict) -> HiggsModule:
        if not isinstance(data, dict) or not {"p", "rank", "theta"} <= set(data):
            raise ValueError("Higgs module JSON needs keys 'p', 'rank', 'theta'")
        p, r = data["p"], data["rank"]
        rows = data["theta"]
        if len(rows) != r or any(len(row) != r for row in rows):
            raise ValueError(f"theta must be {r} x {r}")
        z = poly_zero(p)
        theta = Matrix([[Polynomial.from_json(p, e, var="t") for e in row] for row in rows], z)
        return cls(p, theta)


@dataclass
class SigmaModule:
    """Free R[t]-module M with x acting by ``x_act`` and d by ``d_act``.

    t stands for x^p; the generators are the standard basis vectors.
    """

    p: int
    x_act: Matrix
    d_act: Matrix

    @property
    def rank(self) -> int:
        return self.x_act.nrows

    def relation_defect(self) -> Matrix:
        """d x - q x d - 1, which must vanish."""
        q = CycInt(self.p, (0, 1))
        return self.d_act * self.x_act - (self.x_act * self.d_act) * q - 1

    def act(self, P: QWeylElement) -> Matrix:
        """Matrix of P = sum c x^i d^j acting on M."""
        n = self.rank
        z = self.x_act.zero
        xp = [Matrix.identity(n, z)]
        dp = [Matrix.identity(n, z)]
        out = Matrix.zeros(n, n, z)
        for (i, j), c in sorted(P.terms.items()):
            while len(xp) <= i:
                xp.append(xp[-1] * self.x_act)
            while len(dp) <= j:
                dp.append(dp[-1] * self.d_act)
            out = out + (xp[i] * dp[j]) * c
        return out

    def polynomial_action(self, f: Polynomial) -> Matrix:
        """f(x) acting on M."""
        return self.act(QWeylElement.from_polynomial(f))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "rank": self.rank,
            "x_act": [[e.to_json() for e in row] for row in self.x_act.rows],
            "d_act": [[e.to_json() for e in row] for row in self.d_act.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> SigmaModule:
        if not isinstance(data, dict) or not {"p", "rank", "x_act", "d_act"} <= set(data):
            raise ValueError("sigma module JSON needs keys 'p', 'rank', 'x_act', 'd_act'")
        p, m = data["p"], data["rank"]
        z = poly_zero(p)

        def parse(rows):
            if len(rows) != m or any(len(row) != m for row in rows):
                raise ValueError(f"action matrices must be {m} x {m}")
            return Matrix([[Polynomial.from_json(p, e, var="t") for e in row] for row in rows], z)

        return cls(p, parse(data["x_act"]), parse(data["d_act"]))


def _evaluate(entry, theta: Matrix, t_scalar: Matrix) -> Matrix:
    return entry.substitute(theta, t_scalar)


def higgs_to_sigma(H: HiggsModule, N: int | None = None) -> SigmaModule:
    """M = centralizer module tensor H: blocks of X and D with t -> t, xi -> theta."""
    p, r = H.p, H.rank
    N = max(1, H.nilpotency) if N is None else N
    if N < H.nilpotency:
        raise ValueError(f"truncation N={N} below the nilpotency index {H.nilpotency}")
    z = poly_zero(p)
    t_scalar = Matrix.scalar(r, Polynomial.monomial(p, 1, var="t"), z)
    X, D = build_X(p, N), build_D(p, N)
    xb = [[_evaluate(X[i, j], H.theta, t_scalar) for j in range(p)] for i in range(p)]
    db = [[_evaluate(D[i, j], H.theta, t_scalar) for j in range(p)] for i in range(p)]
    return SigmaModule(p, block_matrix(xb), block_matrix(db))


def is_quasi_nilpotent(M: SigmaModule, bound: int | None = None) -> bool:
    """Some power d_act^k with k <= bound kills every generator.

    A verdict of False only means "not within this bound".  The default bound
    is the rank, which is sharp: a nilpotent matrix over a domain has
    nilpotency index at most its size.
    """
    return nilpotency_index(M.d_act, M.rank if bound is None else bound) is not None


def check_sigma_leibniz(M: SigmaModule, f: Polynomial, g_index: int) -> bool:
    """D_M(f m) = d(f) m + sigma(f) D_M(m) on the generator e_(g_index)."""
    p = M.p
    n = M.rank
    z = M.x_act.zero
    e = Matrix([[z + 1 if i == g_index else z] for i in range(n)], z)
    df = act(QWeylElement.d(p), f)
    sf = act(sigma(p), f)
    lhs = M.d_act * (M.polynomial_action(f) * e)
    rhs = M.polynomial_action(df) * e + M.polynomial_action(sf) * (M.d_act * e)
    return lhs == rhs


def _constant_unit(e: Polynomial) -> bool:
    return e.degree() == 0 and e[0].is_unit()


def image_basis(E: Matrix) -> tuple[Matrix, list[int]]:
    """Basis B of the column space of E with B[S] = identity on pivot rows S.

    Only unit pivots are used, so success shows the image is free; a nonzero
    column with no unit entry after reduction raises VerificationError.
    """
    n = E.nrows
    basis: list[tuple[list, int]] = []
    for j in range(E.ncols):
        v = E.column(j)
        for b, s in basis:
            if v[s]:
                c = v[s]
                v = [vi - c * bi for vi, bi in zip(v, b)]
        if not any(v):
            continue
        s = next((i for i in range(n) if _constant_unit(v[i])), None)
        if s is None:
            raise VerificationError("projector image is not visibly free: no unit pivot")
        inv = unit_inverse(v[s][0])
        v = [vi * inv for vi in v]
        new_basis = []
        for b, s2 in basis:
            if b[s]:
                c = b[s]
                b = [bi - c * vi for bi, vi in zip(b, v)]
            new_basis.append((b, s2))
        basis = new_basis + [(v, s)]
    basis.sort(key=lambda bs: bs[1])
    cols = [b for b, _ in basis]
    rows = [[col[i] for col in cols] for i in range(n)]
    return Matrix(rows, E.zero), [s for _, s in basis]


def center_element_to_weyl(c, p: int) -> QWeylElement:
    """t^a xi^b -> x^(pa) d^(pb)."""
    return QWeylElement(p, {(p * a, p * b): v for (a, b), v in c.terms.items()})


@dataclass
class SigmaToHiggs:
    higgs: HiggsModule
    pivot_rows: list[int]
    truncation: int
    projector: QWeylElement
    xi_preimage: QWeylElement


def sigma_to_higgs_detailed(M: SigmaModule) -> SigmaToHiggs:
    p = M.p
    m = M.rank
    if not M.relation_defect().is_zero():
        raise VerificationError("d x - q x d - 1 does not vanish on M")
    dp = M.d_act**p
    k = nilpotency_index(dp, m)
    if k is None:
        raise VerificationError("d^p does not act nilpotently on M")
    N = max(1, k)
    e1, residual = lift(matrix_unit(p, N, 0, 0), N)
    if not residual.is_zero():
        raise VerificationError("could not lift E11 through rho")
    xi_pre = center_element_to_weyl(phi_inverse_xi(p, N), p)
    E = M.act(e1)
    if E * E != E:
        raise VerificationError("lifted E11 does not act as an idempotent")
    B, S = image_basis(E)
    if B.ncols * p != m:
        raise VerificationError(f"projector image has rank {B.ncols}, expected {m // p}")
    XiB = M.act(xi_pre) * B
    theta = Matrix([XiB.rows[s] for s in S], XiB.zero)
    if XiB != B * theta:
        raise VerificationError("image of the projector is not stable under xi")
    return SigmaToHiggs(HiggsModule(p, theta), S, N, e1, xi_pre)


def sigma_to_higgs(M: SigmaModule) -> HiggsModule:
    """Recover the Higgs module: image of rho^-1(E11) with rho^-1(xi) acting."""
    return sigma_to_higgs_detailed(M).higgs


def roundtrip_check(H: HiggsModule) -> Certificate:
    """higgs_to_sigma then sigma_to_higgs, with every property checked on the way."""
    p = H.p
    M = higgs_to_sigma(H)
    checks = {
        "rank is p * rank(H)": M.rank == p * H.rank,
        "d x - q x d = 1": M.relation_defect().is_zero(),
        "quasi-nilpotent": is_quasi_nilpotent(M),
    }
    x = Polynomial.monomial(p, 1)
    tests = [Polynomial.constant(p, 1), x, x * x, Polynomial.monomial(p, p)]
    checks["Leibniz for 1, x, x^2, x^p"] = all(
        check_sigma_leibniz(M, f, g) for f in tests for g in range(M.rank)
    )
    dp = M.d_act**p
    checks["d^p commutes with x"] = dp * M.x_act == M.x_act * dp
    back = sigma_to_higgs_detailed(M)
    checks["theta recovered"] = back.higgs.theta == H.theta
    checks["standard basis choice"] = back.pivot_rows == list(range(H.rank))
    return Certificate(
        "roundtrip_check",
        {"p": p, "rank": H.rank},
        "pass" if all(checks.values()) else "fail",
        {"checks": checks, "theta": H.to_json()["theta"], "pivot_rows": back.pivot_rows},
    )


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def jordan_nilpotent(p: int, blocks: Sequence[int]) -> HiggsModule:
    """Direct sum of nilpotent Jordan blocks of the given sizes."""
    r = sum(blocks)
    rows = [[0] * r for _ in range(r)]
    start = 0
    for b in blocks:
        for i in range(start, start + b - 1):
            rows[i][i + 1] = 1
        start += b
    return HiggsModule.from_int_matrix(p, rows)


def jordan_corpus(p: int, max_rank: int = 3) -> list[HiggsModule]:
    return [jordan_nilpotent(p, part) for r in range(1, max_rank + 1) for part in partitions(r)]


__all__ = [
    "HiggsModule",
    "SigmaModule",
    "check_sigma_leibniz",
    "higgs_to_sigma",
    "image_basis",
    "is_quasi_nilpotent",
    "jordan_corpus",
    "jordan_nilpotent",
    "roundtrip_check",
    "sigma_to_higgs",
]

"""
The Azumaya tensor map D_q (x) Z(R[x]) -> End(D_q), made concrete.

Convention.  A tensor a (x) Q has its centralizer factor a in R[x, d^p]
written first and acts by

    P  ->  a P Q.

D_q is then a free left Z(R[x])-module with basis 1, d, ..., d^(p-1), and an
endomorphism is the p x p matrix whose j-th column holds the coordinates of
the image of d^j.  With this reading the four p = 2 assignments
u -> E1, v -> E2, 1 (x) s - v -> E3, 1 (x) s d - u d^2 -> E4 (s = sigma^2)
come out exactly; ``verify_p2_neutralization`` records which reading of the
last one succeeded.

Matrix entries live in the localisation Z(R[x])[sigma^-p], kept as lazy
fractions num / sigma^(p k).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .certificates import Certificate
from .exceptions import VerificationError
from .linalg import Matrix, det_leibniz
from .qweyl import (
    ClassicalWeylElement,
    QWeylElement,
    classical_mul,
    is_centralizing_syntactic,
    reduce_mod_p,
    sigma_power,
)

DEFAULT_DEGREE_BOUND_FACTOR = 3


class Localized:
    """num / (sigma^p)^k with num in R[x, d^p]."""

    __slots__ = ("num", "k")

    def __init__(self, num: QWeylElement, k: int = 0) -> None:
        if k < 0:
            raise ValueError("denominator exponent must be >= 0")
        self.num, self.k = num, k

    @property
    def p(self) -> int:
        return self.num.p

    def _den(self, k: int) -> QWeylElement:
        return sigma_power(self.p, self.p) ** k

    def _coerce(self, other) -> Localized | None:
        if isinstance(other, Localized):
            return other
        if isinstance(other, QWeylElement):
            return Localized(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return Localized(QWeylElement.scalar(self.p, other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.k == o.k:
            return Localized(self.num + o.num, self.k)
        return Localized(self.num * self._den(o.k) + o.num * self._den(self.k), self.k + o.k)

    __radd__ = __add__

    def __neg__(self) -> Localized:
        return Localized(-self.num, self.k)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return Localized(self.num * other, self.k)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Localized(self.num * o.num, self.k + o.k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # sigma^p is a non-zero-divisor, so cross-multiplying is sound
        return self.num * self._den(o.k) == o.num * self._den(self.k)

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.num)
        return f"({self.num})/σ^{self.p * self.k}"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "sigma_p_power": self.k}


@dataclass(frozen=True)
class TensorElement:
    """A finite sum of a (x) Q, a in R[x, d^p], acting by P -> a P Q."""

    terms: tuple[tuple[QWeylElement, QWeylElement], ...]

    def __post_init__(self) -> None:
        for a, _ in self.terms:
            if not is_centralizing_syntactic(a):
                raise ValueError(f"left factor {a} does not centralize R[x]")

    @classmethod
    def pure(cls, a, Q) -> TensorElement:
        return cls(((a, Q),))

    def __add__(self, other: TensorElement) -> TensorElement:
        return TensorElement(self.terms + other.terms)

    def __neg__(self) -> TensorElement:
        return TensorElement(tuple((-a, Q) for a, Q in self.terms))

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def scale(self, c) -> TensorElement:
        return TensorElement(tuple((a * c, Q) for a, Q in self.terms))

    def right_multiply(self, R: QWeylElement) -> TensorElement:
        """Post-compose with right multiplication by R: a (x) Q -> a (x) QR."""
        return TensorElement(tuple((a, Q * R) for a, Q in self.terms))

    def compose(self, other: TensorElement) -> TensorElement:
        """The tensor acting as self after other: P -> a a' P Q' Q."""
        return TensorElement(tuple((a * b, R * Q) for a, Q in self.terms for b, R in other.terms))

    def apply(self, P: QWeylElement) -> QWeylElement:
        out = QWeylElement(P.p)
        for a, Q in self.terms:
            out = out + a * P * Q
        return out

    def multiplied_out(self, p: int) -> QWeylElement:
        """The element sum a Q of D_q."""
        out = QWeylElement(p)
        for a, Q in self.terms:
            out = out + a * Q
        return out


def left_coordinates(P: QWeylElement) -> list[QWeylElement]:
    """Coordinates c_0..c_(p-1) in R[x, d^p] with P = sum_r c_r d^r."""
    p = P.p
    coords = [dict() for _ in range(p)]
    for (i, j), c in P.terms.items():
        q_, r = divmod(j, p)
        coords[r][(i, p * q_)] = c
    return [QWeylElement(p, c) for c in coords]


def endo_matrix(p: int, image_of) -> Matrix:
    """Matrix over the localisation of the endomorphism d^j -> image_of(d^j)."""
    zero = Localized(QWeylElement(p))
    M = Matrix.zeros(p, p, zero)
    for j in range(p):
        img = image_of(QWeylElement.monomial(p, 0, j))
        for i, c in enumerate(left_coordinates(img)):
            M[i, j] = Localized(c)
    return M


def tensor_to_endo(t: TensorElement, p: int) -> Matrix:
    return endo_matrix(p, t.apply)


def sigma_p(p: int) -> QWeylElement:
    return sigma_power(p, p)


def p2_targets() -> dict[str, Matrix]:
    """E1..E4: sigma^2 placed at (1,2), (2,2), (1,1), (2,1)."""
    s = Localized(sigma_p(2))
    z = Localized(QWeylElement(2))
    return {
        "E1": Matrix([[z, s], [z, z]], z),
        "E2": Matrix([[z, z], [z, s]], z),
        "E3": Matrix([[s, z], [z, z]], z),
        "E4": Matrix([[z, z], [s, z]], z),
    }


def p2_u(two: int = 2) -> TensorElement:
    """u = (1 (x) x - x (x) 1) + 2 [x (x) x d - x^2 (x) d]; ``two`` allows mutation."""
    p = 2
    one = QWeylElement.scalar(p, 1)
    x = QWeylElement.x(p)
    d = QWeylElement.d(p)
    return (
        TensorElement.pure(one, x)
        - TensorElement.pure(x, one)
        + (TensorElement.pure(x, x * d) - TensorElement.pure(x * x, d)).scale(two)
    )


def p2_assignments(two: int = 2, reading: str = "compose") -> dict[str, Matrix]:
    """Images of the four p = 2 neutralizing tensors under the tensor map.

    ``reading`` selects how u d^2 in the fourth expression is understood:
    ``compose`` is u followed by right multiplication by d^2; ``multiply``
    first multiplies u out to an element of D_q.
    """
    p = 2
    one = QWeylElement.scalar(p, 1)
    d = QWeylElement.d(p)
    s = sigma_p(p)
    u = p2_u(two)
    v = u.right_multiply(d)
    e3 = TensorElement.pure(one, s) - v
    if reading == "compose":
        e4 = TensorElement.pure(one, s * d) - u.right_multiply(d * d)
    elif reading == "multiply":
        e4 = TensorElement.pure(one, s * d) - TensorElement.pure(one, u.multiplied_out(p) * d * d)
    else:
        raise ValueError(f"unknown reading {reading!r}")
    return {
        "E1": tensor_to_endo(u, p),
        "E2": tensor_to_endo(v, p),
        "E3": tensor_to_endo(e3, p),
        "E4": tensor_to_endo(e4, p),
    }


def coordinate_matrix(mats: Sequence[Matrix]) -> Matrix:
    """Columns: coordinates of each matrix in the matrix-unit basis."""
    cols = [[a for row in M.rows for a in row] for M in mats]
    return Matrix(cols, mats[0].zero).transpose()


def verify_p2_neutralization(two: int = 2) -> Certificate:
    """Check the explicit p = 2 neutralization over the sigma^2-inverted locus."""
    targets = p2_targets()
    witness: dict = {}
    used = None
    results: dict[str, bool] = {}
    for reading in ("compose", "multiply"):
        images = p2_assignments(two, reading)
        results = {name: images[name] == targets[name] for name in targets}
        witness[f"reading:{reading}"] = results
        if all(results.values()):
            used = reading
            break
    witness["validated_reading"] = used
    s = sigma_p(2)
    # E_i form a basis: the coordinate determinant is +-(sigma^2)^4
    C = coordinate_matrix([targets[k] for k in ("E1", "E2", "E3", "E4")]).map(lambda e: e.num)
    det = det_leibniz(C)
    s8 = s**4
    det_ok = det == s8 or det == -s8
    witness["basis_determinant"] = det.to_json()
    witness["basis_determinant_is_unit_times_sigma8"] = det_ok
    if used is not None:
        mismatches = []
    else:
        images = p2_assignments(two, "compose")
        mismatches = [
            {"target": k, "entry": [i, j], "got": str(images[k][i, j]), "want": str(targets[k][i, j])}
            for k in targets
            for i in range(2)
            for j in range(2)
            if images[k][i, j] != targets[k][i, j]
        ]
    witness["mismatches"] = mismatches
    ok = used is not None and det_ok
    return Certificate(
        "verify_p2_neutralization",
        {"p": 2},
        "pass" if ok else "fail",
        witness,
    )


# characteristic p: the classical tensor map -------------------------------------


def classical_left_coordinates(P: ClassicalWeylElement) -> list[dict[tuple[int, int], int]]:
    p = P.p
    coords = [dict() for _ in range(p)]
    for (i, j), c in P.terms.items():
        q_, r = divmod(j, p)
        coords[r][(i, q_)] = c
    return coords


def classical_tensor_image(p: int, a: ClassicalWeylElement, Q: ClassicalWeylElement):
    """Entries {(row, col, (x-exp, d^p-exp)): coeff} of P -> a P Q."""
    out: dict = {}
    for j in range(p):
        img = classical_mul(classical_mul(a, ClassicalWeylElement.monomial(p, 0, j)), Q)
        for i, coords in enumerate(classical_left_coordinates(img)):
            for mono, c in coords.items():
                out[(i, j, mono)] = c % p
    return out


def _spanning_set(p: int, bound: int) -> list[tuple[int, int, int, int]]:
    """(c, e, f, g): x^c D^(p e) (x) x^f D^g, combined degree c + p e + f + g <= bound."""
    out = []
    for c, e, f, g in product(range(bound + 1), range(bound // p + 1), range(bound + 1), range(bound + 1)):
        if c + p * e + f + g <= bound:
            out.append((c, e, f, g))
    return out


def _rref_solve_mod_p(A: np.ndarray, B: np.ndarray, p: int):
    """Solve A X = B over F_p; return X (particular solution) or None per column."""
    A = A.copy() % p
    B = B.copy() % p
    n, m = A.shape
    pivots = []
    row = 0
    for col in range(m):
        if row >= n:
            break
        nz = np.nonzero(A[row:, col])[0]
        if nz.size == 0:
            continue
        r = row + nz[0]
        if r != row:
            A[[row, r]] = A[[r, row]]
            B[[row, r]] = B[[r, row]]
        inv = pow(int(A[row, col]), -1, p)
        A[row] = (A[row] * inv) % p
        B[row] = (B[row] * inv) % p
        others = np.nonzero(A[:, col])[0]
        for r2 in others:
            if r2 != row:
                f = A[r2, col]
                A[r2] = (A[r2] - f * A[row]) % p
                B[r2] = (B[r2] - f * B[row]) % p
        pivots.append(col)
        row += 1
    sols = []
    for k in range(B.shape[1]):
        if np.any(B[row:, k]):
            sols.append(None)
            continue
        x = np.zeros(m, dtype=np.int64)
        for r, col in enumerate(pivots):
            x[col] = B[r, k]
        sols.append(x)
    return sols


def kaneda_preimages(p: int, bound: int):
    """Try to write every matrix unit as an image of monomial tensors of degree <= bound."""
    span = _spanning_set(p, bound)
    images = []
    keys: dict = {}
    for c, e, f, g in span:
        a = ClassicalWeylElement.monomial(p, c, p * e)
        Q = ClassicalWeylElement.monomial(p, f, g)
        img = classical_tensor_image(p, a, Q)
        for key in img:
            keys.setdefault(key, len(keys))
        images.append(img)
    for i, j in product(range(p), repeat=2):
        keys.setdefault((i, j, (0, 0)), len(keys))
    A = np.zeros((len(keys), len(span)), dtype=np.int64)
    for col, img in enumerate(images):
        for key, v in img.items():
            A[keys[key], col] = v
    units = list(product(range(p), repeat=2))
    B = np.zeros((len(keys), len(units)), dtype=np.int64)
    for k, (i, j) in enumerate(units):
        B[keys[(i, j, (0, 0))], k] = 1
    sols = _rref_solve_mod_p(A, B, p)
    out = {}
    for (i, j), x in zip(units, sols):
        if x is None:
            out[(i, j)] = None
        else:
            out[(i, j)] = [(int(x[col]), span[col]) for col in np.nonzero(x)[0]]
    return out


def check_classical_preimage(p: int, i: int, j: int, combo) -> bool:
    """Recompute the image of a found preimage and compare with e_ij."""
    total: dict = {}
    for lam, (c, e, f, g) in combo:
        a = ClassicalWeylElement.monomial(p, c, p * e)
        Q = ClassicalWeylElement.monomial(p, f, g)
        for key, v in classical_tensor_image(p, a, Q).items():
            total[key] = (total.get(key, 0) + lam * v) % p
    total = {k: v for k, v in total.items() if v}
    return total == {(i, j, (0, 0)): 1}


def lift_classical_combo(p: int, combo) -> TensorElement:
    """Integer lift of an F_p preimage to a tensor over R."""
    terms = []
    for lam, (c, e, f, g) in combo:
        terms.append(
            (QWeylElement.monomial(p, c, p * e, lam), QWeylElement.monomial(p, f, g))
        )
    return TensorElement(tuple(terms))


def verify_kaneda_mod_J(p: int, bound: int | None = None) -> Certificate:
    """Certify surjectivity of the mod-J tensor map by explicit preimages.

    The degree bound starts at 3p and is doubled once before giving up with
    an ``inconclusive`` verdict.
    """
    start = bound if bound is not None else DEFAULT_DEGREE_BOUND_FACTOR * p
    attempts = []
    for b in (start, 2 * start):
        found = kaneda_preimages(p, b)
        attempts.append(b)
        if all(v is not None for v in found.values()):
            break
    missing = [f"e{i + 1}{j + 1}" for (i, j), v in found.items() if v is None]
    witness = {"degree_bounds_tried": attempts, "missing": missing, "preimages": {}}
    if missing:
        return Certificate("verify_kaneda_mod_J", {"p": p}, "inconclusive", witness)
    ok = True
    for (i, j), combo in found.items():
        good = check_classical_preimage(p, i, j, combo)
        ok = ok and good
        witness["preimages"][f"e{i + 1}{j + 1}"] = [
            {"coeff": lam, "left": [c, p * e], "right": [f, g]} for lam, (c, e, f, g) in combo
        ]
    return Certificate("verify_kaneda_mod_J", {"p": p}, "pass" if ok else "fail", witness)


def reduce_endo(M: Matrix) -> list[list]:
    """Reduce a denominator-free endomorphism matrix mod J entrywise."""
    out = []
    for row in M.rows:
        r = []
        for e in row:
            if e.k:
                raise VerificationError("entry carries a sigma^p denominator")
            r.append(reduce_mod_p(e.num))
        out.append(r)
    return out


def classical_endo(p: int, combo) -> list[list[ClassicalWeylElement]]:
    total: dict = {}
    for lam, (c, e, f, g) in combo:
        a = ClassicalWeylElement.monomial(p, c, p * e)
        Q = ClassicalWeylElement.monomial(p, f, g)
        for key, v in classical_tensor_image(p, a, Q).items():
            total[key] = total.get(key, 0) + lam * v
    M = [[ClassicalWeylElement(p) for _ in range(p)] for _ in range(p)]
    for (i, j, (xe, de)), v in total.items():
        M[i][j] = M[i][j] + ClassicalWeylElement.monomial(p, xe, p * de, v)
    return M


def tensors_from(pairs: Iterable[tuple[QWeylElement, QWeylElement]]) -> TensorElement:
    return TensorElement(tuple(pairs))

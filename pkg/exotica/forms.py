"""Integral symmetric bilinear forms and Z/2 quadratic forms."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import DegenerateForm, InvalidForm, InvalidInput, ParseError
from .exactnum import determinant as exact_determinant


logger = logging.getLogger("exotica.forms")

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    try:
        matrix = tuple(tuple(int(x) for x in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise InvalidForm(f"matrix entries must be integers: {exc}") from exc
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InvalidForm("matrix must be square")
    return matrix


def load_matrix(source: str) -> Matrix:
    """A JSON array of integer rows, given inline or as a path to a file holding one."""
    text = source
    if not source.lstrip().startswith("["):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read matrix file {source}: {exc}") from exc
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix is not valid JSON: {exc}") from exc
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ParseError("matrix must be a JSON array of rows")
    return _as_matrix(rows)


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    nullity: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


@dataclass(frozen=True)
class IntegerSymmetricForm:
    matrix: Matrix

    def __post_init__(self) -> None:
        matrix = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        n = len(matrix)
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise InvalidForm(f"matrix is not symmetric at ({i + 1},{j + 1})")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def entry(self, i: int, j: int) -> int:
        """1-based entry access, as matrices are written on paper."""
        return self.matrix[i - 1][j - 1]

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.matrix]


def inertia(form: IntegerSymmetricForm) -> Inertia:
    """Exact symmetric elimination over Q.

    A nonzero diagonal entry is used as a 1x1 pivot. When the remaining diagonal is
    all zero a nonzero off-diagonal b gives the 2x2 pivot [[0, b], [b, 0]], which is
    indefinite and contributes one positive and one negative direction.
    """
    a = [[Fraction(x) for x in row] for row in form.matrix]
    positive = negative = 0
    while a:
        n = len(a)
        i = next((k for k in range(n) if a[k][k] != 0), None)
        if i is not None:
            pivot = a[i][i]
            if pivot > 0:
                positive += 1
            else:
                negative += 1
            keep = [k for k in range(n) if k != i]
            a = [[a[r][c] - a[r][i] * a[i][c] / pivot for c in keep] for r in keep]
            continue
        pair = next(((r, c) for r in range(n) for c in range(r + 1, n) if a[r][c] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = a[i][j]
        positive += 1
        negative += 1
        keep = [k for k in range(n) if k not in (i, j)]
        a = [[a[r][c] - (a[r][i] * a[j][c] + a[r][j] * a[i][c]) / b for c in keep] for r in keep]
    nullity = len(a)
    return Inertia(positive=positive, negative=negative, nullity=nullity)


def signature(form: IntegerSymmetricForm) -> int:
    return inertia(form).signature


def determinant(form: IntegerSymmetricForm) -> int:
    det = exact_determinant(form.matrix)
    assert det.denominator == 1
    return det.numerator


def is_nonsingular(form: IntegerSymmetricForm) -> bool:
    return abs(determinant(form)) == 1


def is_even(form: IntegerSymmetricForm) -> bool:
    return all(form.matrix[i][i] % 2 == 0 for i in range(form.rank))


def direct_sum(*forms: IntegerSymmetricForm) -> IntegerSymmetricForm:
    size = sum(f.rank for f in forms)
    rows = [[0] * size for _ in range(size)]
    offset = 0
    for f in forms:
        for i, row in enumerate(f.matrix):
            for j, x in enumerate(row):
                rows[offset + i][offset + j] = x
        offset += f.rank
    return IntegerSymmetricForm(tuple(tuple(r) for r in rows))


def congruent(form: IntegerSymmetricForm, u: Sequence[Sequence[int]]) -> IntegerSymmetricForm:
    """U^T A U."""
    n = form.rank
    if len(u) != n or any(len(row) != n for row in u):
        raise InvalidInput(f"change of basis must be {n}x{n}")
    a = form.matrix
    au = [[sum(a[i][k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    rows = tuple(tuple(sum(u[k][i] * au[k][j] for k in range(n)) for j in range(n)) for i in range(n))
    return IntegerSymmetricForm(rows)


def hyperbolic_form() -> IntegerSymmetricForm:
    return IntegerSymmetricForm(((0, 1), (1, 0)))


# The 8x8 matrix exactly as typeset, blocks (a, b; c, d). Its d-block carries
# entries (7,8) = (8,7) = 1, closing the cycle 5-6-7-8: the result has
# determinant -16 and signature 6, so it is not the E8 form.
E8_AS_PRINTED: Matrix = (
    (2, 1, 0, 0, 0, 0, 0, 0),
    (1, 2, 1, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 0, 0, 0, 0),
    (0, 0, 1, 2, 1, 0, 0, 0),
    (0, 0, 0, 1, 2, 1, 0, 1),
    (0, 0, 0, 0, 1, 2, 1, 0),
    (0, 0, 0, 0, 0, 1, 2, 1),
    (0, 0, 0, 0, 1, 0, 1, 2),
)

# Same matrix with (7,8) = (8,7) = 0: the E8 Dynkin tree, a path 1..7 with 8 on node 5.
E8: Matrix = (
    (2, 1, 0, 0, 0, 0, 0, 0),
    (1, 2, 1, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 0, 0, 0, 0),
    (0, 0, 1, 2, 1, 0, 0, 0),
    (0, 0, 0, 1, 2, 1, 0, 1),
    (0, 0, 0, 0, 1, 2, 1, 0),
    (0, 0, 0, 0, 0, 1, 2, 0),
    (0, 0, 0, 0, 1, 0, 0, 2),
)


def e8_form() -> IntegerSymmetricForm:
    return IntegerSymmetricForm(E8)


def e8_form_as_printed() -> IntegerSymmetricForm:
    return IntegerSymmetricForm(E8_AS_PRINTED)


def rohlin_check(form: IntegerSymmetricForm) -> bool:
    """An even nonsingular form has signature divisible by 8."""
    if not is_even(form):
        raise InvalidForm("mod-8 congruence needs an even form")
    if not is_nonsingular(form):
        raise InvalidForm("mod-8 congruence needs a nonsingular form")
    return signature(form) % 8 == 0


def _gf2_rank(rows: Sequence[Sequence[int]]) -> int:
    packed = [int("".join(str(x & 1) for x in row) or "0", 2) for row in rows]
    rank = 0
    for bit in reversed(range(len(rows[0]) if rows else 0)):
        pivot = next((i for i in range(rank, len(packed)) if packed[i] >> bit & 1), None)
        if pivot is None:
            continue
        packed[rank], packed[pivot] = packed[pivot], packed[rank]
        for i in range(len(packed)):
            if i != rank and packed[i] >> bit & 1:
                packed[i] ^= packed[rank]
        rank += 1
    return rank


Vector = tuple[int, ...]


@dataclass(frozen=True)
class Z2QuadraticForm:
    """Alternating form lam over Z/2 with a quadratic refinement mu.

    mu is stored on basis vectors; elsewhere mu(x + y) = mu(x) + mu(y) + lam(x, y).
    """

    lam: Matrix
    mu: Vector

    def __post_init__(self) -> None:
        lam = tuple(tuple(int(x) % 2 for x in row) for row in self.lam)
        mu = tuple(int(x) % 2 for x in self.mu)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        n = len(lam)
        if any(len(row) != n for row in lam):
            raise InvalidForm("lambda must be square")
        if len(mu) != n:
            raise InvalidForm(f"mu needs {n} basis values, got {len(mu)}")
        if n % 2:
            raise InvalidForm(f"quadratic form dimension must be even, got {n}")
        for i in range(n):
            if lam[i][i]:
                raise InvalidForm(f"lambda must have zero diagonal (entry {i + 1})")
            for j in range(i + 1, n):
                if lam[i][j] != lam[j][i]:
                    raise InvalidForm(f"lambda is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_json(cls, document: object) -> Z2QuadraticForm:
        if not isinstance(document, dict) or "lambda" not in document or "mu" not in document:
            raise ParseError('quadratic form JSON needs keys "lambda" and "mu"')
        return cls(lam=_as_matrix(document["lambda"]), mu=tuple(document["mu"]))

    @property
    def dim(self) -> int:
        return len(self.mu)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        n = self.dim
        return sum(x[i] * self.lam[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j]) % 2

    def value(self, x: Sequence[int]) -> int:
        n = self.dim
        total = sum(x[i] * self.mu[i] for i in range(n))
        total += sum(x[i] * x[j] * self.lam[i][j] for i in range(n) for j in range(i + 1, n))
        return total % 2

    def is_nonsingular(self) -> bool:
        return self.dim == 0 or _gf2_rank(self.lam) == self.dim

    def change_basis(self, u: Sequence[Sequence[int]]) -> Z2QuadraticForm:
        """New basis vectors are the columns of U, which must be invertible mod 2."""
        n = self.dim
        if len(u) != n or any(len(row) != n for row in u):
            raise InvalidInput(f"change of basis must be {n}x{n}")
        if n and _gf2_rank(u) != n:
            raise InvalidInput("change of basis is singular mod 2")
        columns = [tuple(u[i][k] % 2 for i in range(n)) for k in range(n)]
        lam = tuple(tuple(self.pairing(a, b) for b in columns) for a in columns)
        mu = tuple(self.value(c) for c in columns)
        return Z2QuadraticForm(lam, mu)

    def to_json(self) -> dict[str, list]:
        return {"lambda": [list(row) for row in self.lam], "mu": list(self.mu)}


def standard_rank2_form(mu_b: int = 1, mu_c: int = 1) -> Z2QuadraticForm:
    return Z2QuadraticForm(((0, 1), (1, 0)), (mu_b, mu_c))


def symplectic_basis(q: Z2QuadraticForm) -> list[tuple[Vector, Vector]]:
    """Greedy symplectic basis: take b, find a partner c, project the rest off span(b, c)."""
    if not q.is_nonsingular():
        raise DegenerateForm("lambda is singular over Z/2; no symplectic basis")
    n = q.dim
    remaining: list[Vector] = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    pairs: list[tuple[Vector, Vector]] = []
    while remaining:
        b = remaining.pop(0)
        index = next((k for k, v in enumerate(remaining) if q.pairing(b, v)), None)
        assert index is not None, "nonsingular form left an unpaired vector"
        c = remaining.pop(index)
        pairs.append((b, c))
        projected: list[Vector] = []
        for v in remaining:
            vc = q.pairing(v, c)
            vb = q.pairing(v, b)
            projected.append(tuple((v[i] + vc * b[i] + vb * c[i]) % 2 for i in range(n)))
        remaining = projected
    return pairs


def arf(q: Z2QuadraticForm) -> int:
    pairs = symplectic_basis(q)
    value = sum(q.value(b) * q.value(c) for b, c in pairs) % 2
    logger.debug("arf over %d symplectic pairs = %d", len(pairs), value)
    return value


def arf_by_count(q: Z2QuadraticForm) -> int:
    """Arf is 0 exactly when mu vanishes on a strict majority of the 2^dim vectors."""
    if not q.is_nonsingular():
        raise DegenerateForm("lambda is singular over Z/2")
    n = q.dim
    zeros = 0
    for bits in range(2**n):
        x = tuple(bits >> i & 1 for i in range(n))
        if q.value(x) == 0:
            zeros += 1
    return 0 if 2 * zeros > 2**n else 1

"""Finite fields GF(q) as lookup tables, and dense matrices over them.

Elements are the integer codes ``0..q-1``.  For ``q = p**m`` with ``m > 1`` the
code ``i`` stands for the polynomial whose coefficient of ``x**t`` is the
``t``-th base-``p`` digit of ``i``, reduced modulo the Conway polynomial of
degree ``m`` over GF(p).  Codes are therefore identical across runs and
platforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    NotPrimePower,
    Singular,
    Unsupported,
)

MAX_FIELD_ORDER = 256
DEFAULT_MATRIX_BUDGET = 2**26

# Conway polynomials, coefficients from the constant term upwards (Lübeck's tables).
CONWAY_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not _is_prime(p):
        raise NotPrimePower(f"{q} is not a prime power")
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, m


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field GF(q) backed by precomputed tables."""

    q: int
    p: int
    m: int
    add_table: np.ndarray
    mul_table: np.ndarray
    neg_table: np.ndarray
    inv_table: np.ndarray  # inv_table[0] is 0 by convention

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def sum(self, arr: np.ndarray, axis: int = -1) -> np.ndarray:
        """Field sum of ``arr`` along ``axis``."""
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        if self.m == 1:
            return arr.astype(np.int64).sum(axis=0) % self.p
        acc = np.zeros(arr.shape[1:], dtype=np.int64)
        for part in arr:
            acc = self.add_table[acc, part]
        return acc

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of (batched) code arrays ``a @ b`` over the field."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a @ b) % self.p
        prods = self.mul_table[a[..., :, :, None], b[..., None, :, :]]
        return self.sum(prods, axis=-2)


def _poly_tables(p: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    q = p**m
    modulus = CONWAY_POLYNOMIALS[(p, m)]
    digits = np.array([[(i // p**t) % p for t in range(m)] for i in range(q)], dtype=np.int64)
    weights = p ** np.arange(m, dtype=np.int64)

    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

    def reduce(coeffs: list[int]) -> int:
        # modulus is monic of degree m
        for deg in range(len(coeffs) - 1, m - 1, -1):
            c = coeffs[deg] % p
            if c:
                for t in range(m + 1):
                    coeffs[deg - m + t] = (coeffs[deg - m + t] - c * modulus[t]) % p
        return sum((coeffs[t] % p) * p**t for t in range(m))

    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            prod = [0] * (2 * m - 1)
            for s in range(m):
                if digits[a, s]:
                    for t in range(m):
                        prod[s + t] += int(digits[a, s] * digits[b, t])
            mul[a, b] = mul[b, a] = reduce(prod)
    return add, mul


def check_field_axioms(add: np.ndarray, mul: np.ndarray) -> None:
    """Exhaustively verify that ``add``/``mul`` define a field with 0 and 1 as identities."""
    q = add.shape[0]
    e = np.arange(q)
    if not np.array_equal(add, add.T) or not np.array_equal(mul, mul.T):
        raise AssertionError("operations not commutative")
    for a in range(q):  # one slice of the q**3 triples at a time
        if not np.array_equal(add[add[a]][:, e], add[a][add]):
            raise AssertionError(f"addition not associative at a={a}")
        if not np.array_equal(mul[mul[a]][:, e], mul[a][mul]):
            raise AssertionError(f"multiplication not associative at a={a}")
        if not np.array_equal(mul[a][add], add[mul[a][:, None], mul[a][None, :]]):
            raise AssertionError(f"distributivity fails at a={a}")
    if not np.array_equal(add[0], e) or not np.array_equal(mul[1], e):
        raise AssertionError("0 or 1 is not an identity")
    if not np.all((add == 0).sum(axis=1) == 1):
        raise AssertionError("missing additive inverse")
    if not np.all((mul[1:, 1:] == 1).sum(axis=1) == 1):
        raise AssertionError("missing multiplicative inverse")


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build and validate GF(q) for a prime power ``q <= 256``."""
    p, m = prime_power_decomposition(q)
    if q > MAX_FIELD_ORDER:
        raise Unsupported(f"fields larger than {MAX_FIELD_ORDER} are not supported")
    if m == 1:
        e = np.arange(q, dtype=np.int64)
        add = (e[:, None] + e[None, :]) % q
        mul = (e[:, None] * e[None, :]) % q
    else:
        add, mul = _poly_tables(p, m)
    check_field_axioms(add, mul)
    neg = np.argmin(add, axis=1).astype(np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = np.argmax(mul[1:, :] == 1, axis=1)
    for table in (add, mul, neg, inv):
        table.setflags(write=False)
    return FieldSpec(q=q, p=p, m=m, add_table=add, mul_table=mul, neg_table=neg, inv_table=inv)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix of field-element codes, stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Matrix":
        arr = np.asarray(arr)
        return cls(arr.shape[0], arr.shape[1], tuple(int(x) for x in arr.ravel()))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_array(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[r * self.cols : (r + 1) * self.cols]) for r in range(self.rows)]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.entries[r * self.cols + c]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def check_codes(self, F: FieldSpec) -> None:
        if any(not 0 <= x < F.q for x in self.entries):
            raise ValueError(f"matrix entry outside 0..{F.q - 1}")


def mat_mul(a: Matrix, b: Matrix, F: FieldSpec) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return Matrix.from_array(F.matmul(a.to_array(), b.to_array()))


def row_reduce(arr: np.ndarray, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = arr.astype(np.int64).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = F.mul_table[F.inv_table[a[r, c]], a[r]]
        for other in range(rows):
            if other != r and a[other, c]:
                a[other] = F.sub(a[other], F.mul_table[a[other, c], a[r]])
        pivots.append(c)
        r += 1
    return a, pivots


def mat_rank(M: Matrix, F: FieldSpec) -> int:
    return len(row_reduce(M.to_array(), F)[1])


def mat_inverse(M: Matrix, F: FieldSpec) -> Matrix:
    """Inverse of a square matrix by Gauss-Jordan elimination; raises Singular."""
    if not M.is_square:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix is not square")
    n = M.rows
    aug = np.hstack([M.to_array(), np.eye(n, dtype=np.int64)])
    red, pivots = row_reduce(aug, F)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix has rank < dimension")
    return Matrix.from_array(red[:, n:])


def batch_invertible(mats: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Boolean mask of which matrices in a ``(C, n, n)`` stack are invertible."""
    a = np.array(mats, dtype=np.int64, copy=True)
    count, n, _ = a.shape
    ok = np.ones(count, dtype=bool)
    idx = np.arange(count)
    for col in range(n):
        nz = a[:, col:, col] != 0
        ok &= nz.any(axis=1)
        piv = col + nz.argmax(axis=1)
        top = a[idx, col].copy()
        a[idx, col] = a[idx, piv]
        a[idx, piv] = top
        pinv = F.inv_table[a[:, col, col]]
        a[:, col] = F.mul_table[pinv[:, None], a[:, col]]
        for r in range(col + 1, n):
            factor = a[:, r, col]
            a[:, r] = F.sub(a[:, r], F.mul_table[factor[:, None], a[:, col]])
    return ok


def gl_order(n: int, q: int) -> int:
    """``|GL(n, q)|``."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def matrix_chunks(
    n: int,
    F: FieldSpec,
    *,
    budget: int = DEFAULT_MATRIX_BUDGET,
    first_row: Sequence[int] | None = None,
    chunk: int = 1 << 16,
) -> Iterator[np.ndarray]:
    """Yield stacks of all ``n x n`` matrices in lexicographic order of entries.

    With ``first_row`` fixed only that partition of the stream is produced.
    """
    total = F.q ** (n * n)
    if total > budget:
        raise BudgetExceeded(f"{F.q}^{n * n} = {total} matrices exceeds budget {budget}")
    free = n * n
    prefix_code = 0
    if first_row is not None:
        if len(first_row) != n:
            raise DimensionMismatch("first_row has wrong length")
        free = n * n - n
        for x in first_row:
            prefix_code = prefix_code * F.q + int(x)
    place = F.q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    stop = F.q**free
    base = prefix_code * stop
    for start in range(0, stop, chunk):
        codes = base + np.arange(start, min(start + chunk, stop), dtype=np.int64)
        digits = (codes[:, None] // place[None, :]) % F.q
        yield digits.reshape(-1, n, n)


def enumerate_matrices(
    n: int,
    F: FieldSpec,
    invertible_only: bool = False,
    *,
    budget: int = DEFAULT_MATRIX_BUDGET,
    first_row: Sequence[int] | None = None,
) -> Iterator[Matrix]:
    """Stream all ``n x n`` matrices over ``F`` in lexicographic order.

    Raises BudgetExceeded up front when ``q**(n*n)`` exceeds ``budget``.
    """
    chunks = matrix_chunks(n, F, budget=budget, first_row=first_row)
    for stack in chunks:
        if invertible_only:
            stack = stack[batch_invertible(stack, F)]
        for arr in stack:
            yield Matrix(n, n, tuple(int(x) for x in arr.ravel()))


def all_vectors(k: int, F: FieldSpec) -> np.ndarray:
    """All of ``F**k`` as a ``(q**k, k)`` array; row ``i`` has the base-q digits of ``i``."""
    return np.array(list(itertools.product(range(F.q), repeat=k)), dtype=np.int64).reshape(-1, k)

"""Linear codes in a (P, w, π)-space: minimum distance and isometry equivalence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, RankDeficient, ShapeMismatch
from .field import FieldSpec, Matrix, all_vectors, mat_rank, row_reduce
from .isometry import (
    DEFAULT_GROUP_BUDGET,
    DEFAULT_MATRIX_BUDGET,
    iter_group_factored,
)
from .poset import PosetAutomorphism
from .space import SpaceSpec, vector_index, weights_of

DEFAULT_CODEWORD_BUDGET = 2**20


@dataclass(frozen=True)
class LinearCode:
    """Row space of a full-rank ``k x N`` generator matrix."""

    field: FieldSpec
    generator: Matrix

    def __post_init__(self) -> None:
        self.generator.check_codes(self.field)
        if mat_rank(self.generator, self.field) != self.generator.rows:
            raise RankDeficient("generator rows are linearly dependent")

    @classmethod
    def from_rows(cls, F: FieldSpec, rows) -> "LinearCode":
        return cls(F, Matrix.from_rows(rows))

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def length(self) -> int:
        return self.generator.cols

    def codewords(self, *, budget: int = DEFAULT_CODEWORD_BUDGET) -> np.ndarray:
        """All ``q**k`` codewords as rows, messages in lexicographic order."""
        if self.field.q**self.k > budget:
            raise BudgetExceeded(f"{self.field.q}^{self.k} codewords exceeds budget {budget}")
        msgs = all_vectors(self.k, self.field)
        return self.field.matmul(msgs, self.generator.to_array())


def _check_code(S: SpaceSpec, C: LinearCode) -> None:
    if C.field != S.field or C.length != S.N:
        raise ShapeMismatch(f"code of length {C.length} over GF({C.field.q}) in a space of "
                            f"length {S.N} over GF({S.q})")


def min_distance(S: SpaceSpec, C: LinearCode, *, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """Smallest weight of a nonzero codeword."""
    _check_code(S, C)
    words = C.codewords(budget=budget)[1:]  # message 0 comes first
    return int(weights_of(S, words).min())


def image_code(S: SpaceSpec, T: Matrix, C: LinearCode) -> LinearCode:
    """``T(C)``; generator rows map to ``rows @ T^t``."""
    _check_code(S, C)
    G = S.field.matmul(C.generator.to_array(), T.to_array().T)
    return LinearCode(S.field, Matrix.from_array(G))


@dataclass(frozen=True)
class Equivalence:
    """Witness ``T`` with ``T(C1) = C2``; ``automorphism`` is its poset part."""

    map: Matrix
    automorphism: PosetAutomorphism


def are_equivalent(
    S: SpaceSpec,
    C1: LinearCode,
    C2: LinearCode,
    *,
    group_budget: int = DEFAULT_GROUP_BUDGET,
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
    codeword_budget: int = DEFAULT_CODEWORD_BUDGET,
) -> Equivalence | None:
    """Search the isometry group for a map carrying ``C1`` onto ``C2``."""
    _check_code(S, C1)
    _check_code(S, C2)
    if C1.k != C2.k:
        return None
    if min_distance(S, C1, budget=codeword_budget) != min_distance(S, C2, budget=codeword_budget):
        return None
    target = set(vector_index(C2.codewords(budget=codeword_budget), S.q).tolist())
    G1 = C1.generator.to_array()
    for psi, T in iter_group_factored(S, budget=group_budget, matrix_budget=matrix_budget):
        # T is injective and dimensions agree, so T(rows of G1) ⊆ C2 suffices
        images = S.field.matmul(G1, T.to_array().T)
        if all(int(i) in target for i in vector_index(images, S.q)):
            return Equivalence(T, psi)
    return None


def random_code(
    F: FieldSpec, k: int, length: int, rng: np.random.Generator, *, attempts: int = 1000
) -> LinearCode:
    """Uniformly random full-rank generator, by rejection."""
    for _ in range(attempts):
        rows = rng.integers(0, F.q, size=(k, length))
        try:
            return LinearCode(F, Matrix.from_array(rows))
        except RankDeficient:
            continue
    raise RankDeficient(f"no rank-{k} generator found in {attempts} attempts")


def all_codes(F: FieldSpec, k: int, length: int) -> list[LinearCode]:
    """One generator in reduced echelon form per ``k``-dimensional subspace of ``F**length``."""
    seen: set[tuple[int, ...]] = set()
    out = []
    for flat in itertools.product(range(F.q), repeat=k * length):
        arr = np.array(flat, dtype=np.int64).reshape(k, length)
        red, pivots = row_reduce(arr, F)
        if len(pivots) < k:
            continue
        key = tuple(int(x) for x in red.ravel())
        if key not in seen:
            seen.add(key)
            out.append(LinearCode(F, Matrix.from_array(red)))
    return out

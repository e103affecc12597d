"""(P, w, π)-spaces: block vectors, π-supports, weights and distances.

A vector of ``F_q^N`` is laid out block by block: coordinate ``z`` (1-based) of
block ``i`` sits at flat index ``k_1 + ... + k_{i-1} + z - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import ShapeMismatch
from .field import FieldSpec, all_vectors
from .poset import LabelMap, Poset
from .weight import WeightFunction, block_weight, block_weights


@dataclass(frozen=True)
class BlockVector:
    """``x = x_1 ⊕ ... ⊕ x_n`` with ``x_i`` a tuple of element codes."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(tuple(int(c) for c in b) for b in self.blocks))

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(c for b in self.blocks for c in b)

    def to_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


VectorLike = Union[BlockVector, Sequence[Sequence[int]]]


@dataclass(frozen=True)
class SpaceSpec:
    field: FieldSpec
    poset: Poset
    labels: LabelMap
    weight: WeightFunction

    def __post_init__(self) -> None:
        if self.labels.n != self.poset.n:
            raise ShapeMismatch(
                f"poset has {self.poset.n} elements but {self.labels.n} labels were given"
            )
        if self.weight.field != self.field:
            raise ShapeMismatch("weight is defined over a different field")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def N(self) -> int:
        return self.labels.N

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Flat index where each block starts, plus ``N`` at the end."""
        out = [0]
        for k in self.labels.labels:
            out.append(out[-1] + k)
        return tuple(out)

    def block_slice(self, i: int) -> slice:
        """Flat-index range of the 1-based block ``i``."""
        return slice(self.offsets[i - 1], self.offsets[i])

    def flat_index(self, i: int, z: int) -> int:
        return self.offsets[i - 1] + z - 1

    def vector(self, x: VectorLike) -> BlockVector:
        """Coerce ``x`` to a BlockVector conforming to this space."""
        v = x if isinstance(x, BlockVector) else BlockVector(tuple(tuple(b) for b in x))
        if len(v.blocks) != self.n:
            raise ShapeMismatch(f"expected {self.n} blocks, got {len(v.blocks)}")
        for i, (b, k) in enumerate(zip(v.blocks, self.labels.labels), start=1):
            if len(b) != k:
                raise ShapeMismatch(f"block {i} has length {len(b)}, label is {k}")
            if any(not 0 <= c < self.q for c in b):
                raise ShapeMismatch(f"block {i} holds a code outside 0..{self.q - 1}")
        return v

    def from_flat(self, flat: Sequence[int]) -> BlockVector:
        if len(flat) != self.N:
            raise ShapeMismatch(f"expected length {self.N}, got {len(flat)}")
        flat = [int(c) for c in flat]
        return self.vector([flat[self.block_slice(i)] for i in range(1, self.n + 1)])

    def basis_vector(self, i: int, z: int, value: int = 1) -> BlockVector:
        flat = [0] * self.N
        flat[self.flat_index(i, z)] = value
        return self.from_flat(flat)

    def embed(self, i: int, alpha: Sequence[int]) -> BlockVector:
        """The vector with block ``i`` equal to ``alpha`` and zeros elsewhere."""
        flat = [0] * self.N
        flat[self.block_slice(i)] = list(alpha)
        return self.from_flat(flat)


def pi_support(S: SpaceSpec, x: VectorLike) -> frozenset[int]:
    """Indices of the nonzero blocks of ``x``."""
    v = S.vector(x)
    return frozenset(i for i, b in enumerate(v.blocks, start=1) if any(b))


def pwpi_weight(S: SpaceSpec, x: VectorLike) -> int:
    """Weighted-coordinates poset block weight of ``x``.

    Maximal elements of the ideal generated by the π-support contribute their
    block weight; every other element of that ideal contributes ``M_w``.
    """
    v = S.vector(x)
    ideal = S.poset.ideal_of(pi_support(S, v))
    maximal = S.poset.maximal_elements(ideal)
    top = sum(block_weight(S.weight, v.blocks[i - 1]) for i in maximal)
    return top + len(ideal - maximal) * S.weight.max_weight


def pwpi_distance(S: SpaceSpec, x: VectorLike, y: VectorLike) -> int:
    a, b = S.vector(x).flat, S.vector(y).flat
    diff = [int(S.field.sub(u, v)) for u, v in zip(a, b)]
    return pwpi_weight(S, S.from_flat(diff))


def vector_index(flat: np.ndarray, q: int) -> np.ndarray:
    """Lexicographic rank of flat vectors (first coordinate most significant)."""
    flat = np.asarray(flat, dtype=np.int64)
    place = q ** np.arange(flat.shape[-1] - 1, -1, -1, dtype=np.int64)
    return flat @ place


def weights_of(S: SpaceSpec, flat: np.ndarray) -> np.ndarray:
    """Weights of a ``(count, N)`` array of flat vectors.

    Ideal and maximal-element data are tabulated per π-support pattern, then
    combined with the per-block weights in bulk.
    """
    flat = np.asarray(flat, dtype=np.int64).reshape(-1, S.N)
    n = S.n
    bw = np.stack(
        [block_weights(S.weight, flat[:, S.block_slice(i)]) for i in range(1, n + 1)], axis=1
    )
    mask = (bw > 0).astype(np.int64) @ (1 << np.arange(n, dtype=np.int64))
    is_max, rest = _support_patterns(S)
    return (bw * is_max[mask]).sum(axis=1) + rest[mask] * S.weight.max_weight


def _support_patterns(S: SpaceSpec) -> tuple[np.ndarray, np.ndarray]:
    n = S.n
    is_max = np.zeros((1 << n, n), dtype=np.int64)
    rest = np.zeros(1 << n, dtype=np.int64)
    for pattern in range(1 << n):
        supp = {i for i in range(1, n + 1) if pattern >> (i - 1) & 1}
        ideal = S.poset.ideal_of(supp)
        maximal = S.poset.maximal_elements(ideal)
        for i in maximal:
            is_max[pattern, i - 1] = 1
        rest[pattern] = len(ideal) - len(maximal)
    return is_max, rest


@lru_cache(maxsize=64)
def weight_table(S: SpaceSpec) -> np.ndarray:
    """Weight of every vector of ``F_q^N``, indexed by :func:`vector_index`. Read-only."""
    table = weights_of(S, all_vectors(S.N, S.field))
    table.setflags(write=False)
    return table

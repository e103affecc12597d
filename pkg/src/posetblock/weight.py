"""Integer weights on GF(q) and the max-type block weight they induce."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import AxiomViolation, EmptyBlock
from .field import FieldSpec


@dataclass(frozen=True)
class WeightFunction:
    """A validated weight ``w``; ``table[a]`` is ``w(a)`` for the element code ``a``.

    Build through :func:`make_weight`, which checks the axioms.
    """

    field: FieldSpec
    table: tuple[int, ...]

    @property
    def max_weight(self) -> int:
        """``M_w``."""
        return max(self.table)

    def __call__(self, a: int) -> int:
        return self.table[a]

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def as_mapping(self) -> dict[str, int]:
        return {str(a): w for a, w in enumerate(self.table)}


def make_weight(F: FieldSpec, table: Mapping[int, int] | Sequence[int]) -> WeightFunction:
    """Validate a weight table against the four weight axioms, exhaustively."""
    if isinstance(table, Mapping):
        missing = [a for a in F.elements if a not in table]
        if missing:
            raise ValueError(f"weight undefined at {missing}")
        extra = [a for a in table if a not in range(F.q)]
        if extra:
            raise ValueError(f"weight given at non-elements {extra}")
        values = tuple(int(table[a]) for a in F.elements)
    else:
        if len(table) != F.q:
            raise ValueError(f"weight table has {len(table)} entries, field has {F.q}")
        values = tuple(int(x) for x in table)

    for a in F.elements:
        if values[a] < 0:
            raise AxiomViolation("a", (a,), f"w({a}) = {values[a]} < 0")
    for a in F.elements:
        if (values[a] == 0) != (a == 0):
            raise AxiomViolation("b", (a,), f"w({a}) = {values[a]}")
    for a in F.elements:
        na = int(F.neg_table[a])
        if values[na] != values[a]:
            raise AxiomViolation("c", (a, na), f"w(-{a}) = w({na}) = {values[na]} != {values[a]}")
    w = np.array(values, dtype=np.int64)
    bad = np.argwhere(w[F.add_table] > w[:, None] + w[None, :])
    if bad.size:
        a, b = (int(x) for x in bad[0])
        s = int(F.add_table[a, b])
        raise AxiomViolation("d", (a, b), f"w({a}+{b}) = w({s}) = {values[s]} > {values[a]} + {values[b]}")
    return WeightFunction(F, values)


def hamming_weight(F: FieldSpec, scale: int = 1) -> WeightFunction:
    return make_weight(F, [0] + [scale] * (F.q - 1))


def lee_weight(F: FieldSpec) -> WeightFunction:
    """Lee weight ``min(a, p - a)``; prime fields only."""
    if F.m != 1:
        raise ValueError("Lee weight is defined here for prime fields only")
    return make_weight(F, [min(a, F.q - a) for a in F.elements])


def block_weight(w: WeightFunction, v: Sequence[int]) -> int:
    """Max of the coordinate weights of ``v``."""
    if len(v) == 0:
        raise EmptyBlock("block of length 0")
    return max(w.table[int(x)] for x in v)


def block_weights(w: WeightFunction, vectors: np.ndarray) -> np.ndarray:
    """Row-wise block weight of a ``(count, k)`` array."""
    if vectors.shape[-1] == 0:
        raise EmptyBlock("block of length 0")
    return w.as_array()[vectors].max(axis=-1)


def hamming_scalar_factor(w: WeightFunction) -> int | None:
    """Return ``a`` if ``w`` equals ``a`` times the Hamming weight, else None."""
    nonzero = set(w.table[1:])
    if len(nonzero) == 1:
        return nonzero.pop()
    return None

"""Linear isometries of a (P, w, π)-space.

Matrix convention: a map ``T`` is stored as the ``N x N`` matrix ``M`` with
``T(x) = M @ x`` for column vectors ``x``, so column ``(j, z)`` of ``M`` holds
the coordinates of ``T(e_{j,z})`` and ``S ∘ T`` has matrix ``M_S @ M_T``.  In
this convention the triangular subgroup consists of matrices whose block
``(i, j)`` vanishes unless ``i ⪯ j``; it is block upper-triangular whenever
``1, ..., n`` is a linear extension of the poset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import (
    BudgetExceeded,
    DecompositionFailed,
    LabelMismatch,
    NotAnAutomorphism,
    NotInvertible,
    NotPrime,
    ShapeMismatch,
    Singular,
)
from .field import (
    DEFAULT_MATRIX_BUDGET,
    FieldSpec,
    Matrix,
    all_vectors,
    batch_invertible,
    mat_inverse,
    mat_mul,
    matrix_chunks,
)
from .poset import PosetAutomorphism, iter_automorphisms
from .space import BlockVector, SpaceSpec, VectorLike, pi_support, vector_index, weight_table
from .weight import WeightFunction, block_weights

DEFAULT_VECTOR_BUDGET = 2**20
DEFAULT_GROUP_BUDGET = 10**6

# Upper bound on entries materialised at once when screening candidate matrices.
_SCREEN_CELLS = 1 << 22


@dataclass(frozen=True)
class Decomposition:
    """``T = triangular ∘ T_ψ`` with ``ψ = automorphism``."""

    triangular: Matrix
    automorphism: PosetAutomorphism


def _check_shape(S: SpaceSpec, T: Matrix) -> None:
    if T.rows != S.N or T.cols != S.N:
        raise ShapeMismatch(f"expected a {S.N}x{S.N} matrix, got {T.rows}x{T.cols}")
    if any(not 0 <= c < S.q for c in T.entries):
        raise ShapeMismatch(f"matrix entry outside 0..{S.q - 1}")


def apply_map(S: SpaceSpec, T: Matrix, x: VectorLike) -> BlockVector:
    """``T(x)`` as a block vector."""
    _check_shape(S, T)
    flat = np.array(S.vector(x).flat, dtype=np.int64)
    return S.from_flat(S.field.matmul(T.to_array(), flat[:, None])[:, 0])


def compose(S: SpaceSpec, outer: Matrix, inner: Matrix) -> Matrix:
    """Matrix of ``outer ∘ inner``."""
    return mat_mul(outer, inner, S.field)


def build_t_psi(S: SpaceSpec, psi: PosetAutomorphism) -> Matrix:
    """Block permutation ``e_{j,z} -> e_{ψ(j),z}``."""
    if psi.n != S.n:
        raise ShapeMismatch(f"permutation of {psi.n} points on a poset with {S.n}")
    for j in range(1, S.n + 1):
        if S.labels[psi(j)] != S.labels[j]:
            raise LabelMismatch(
                f"ψ sends {j} (k={S.labels[j]}) to {psi(j)} (k={S.labels[psi(j)]})"
            )
    M = np.zeros((S.N, S.N), dtype=np.int64)
    for j in range(1, S.n + 1):
        for z in range(1, S.labels[j] + 1):
            M[S.flat_index(psi(j), z), S.flat_index(j, z)] = 1
    return Matrix.from_array(M)


def _check_vector_budget(S: SpaceSpec, budget: int) -> None:
    if S.q**S.N > budget:
        raise BudgetExceeded(f"{S.q}^{S.N} vectors exceeds budget {budget}")


def is_isometry_exhaustive(
    S: SpaceSpec, T: Matrix, *, budget: int = DEFAULT_VECTOR_BUDGET
) -> bool:
    """Ground truth: does ``T`` preserve the weight of every vector?"""
    _check_shape(S, T)
    _check_vector_budget(S, budget)
    try:
        mat_inverse(T, S.field)
    except Singular:
        raise NotInvertible("isometry candidates must be invertible") from None
    table = weight_table(S)
    vecs = all_vectors(S.N, S.field)
    images = S.field.matmul(T.to_array(), vecs.T).T
    return bool(np.array_equal(table[vector_index(images, S.q)], table))


def _preserves_block_weight(
    F: FieldSpec, w: WeightFunction, stack: np.ndarray
) -> np.ndarray:
    """Mask of the ``k x k`` matrices ``A`` in ``stack`` with ``w̃(Aα) = w̃(α)`` for all ``α``."""
    k = stack.shape[-1]
    vecs = all_vectors(k, F)
    base = block_weights(w, vecs)
    images = F.matmul(stack, vecs.T)  # (C, k, q**k)
    return np.all(block_weights(w, np.swapaxes(images, -1, -2)) == base, axis=-1)


def _block(arr: np.ndarray, S: SpaceSpec, i: int, j: int) -> np.ndarray:
    return arr[S.block_slice(i), S.block_slice(j)]


def in_triangular_group(S: SpaceSpec, T: Matrix) -> bool:
    """Membership in the kernel subgroup: block ``(i, j)`` is zero unless ``i ⪯ j``,
    and every diagonal block is invertible and preserves the block weight."""
    _check_shape(S, T)
    arr = T.to_array()
    for i in range(1, S.n + 1):
        for j in range(1, S.n + 1):
            if not S.poset.le(i, j) and np.any(_block(arr, S, i, j)):
                return False
    for i in range(1, S.n + 1):
        diag = _block(arr, S, i, i)[None]
        if not batch_invertible(diag, S.field)[0]:
            return False
        if not _preserves_block_weight(S.field, S.weight, diag)[0]:
            return False
    return True


@lru_cache(maxsize=256)
def _block_isometries(F: FieldSpec, w: WeightFunction, k: int, budget: int) -> tuple[Matrix, ...]:
    out = []
    for stack in matrix_chunks(k, F, budget=budget, chunk=max(1, _SCREEN_CELLS // (k * F.q**k))):
        keep = batch_invertible(stack, F)
        keep[keep] = _preserves_block_weight(F, w, stack[keep])
        out.extend(Matrix.from_array(a) for a in stack[keep])
    return tuple(out)


def enumerate_block_isometries(
    F: FieldSpec, w: WeightFunction, k: int, *, budget: int = DEFAULT_MATRIX_BUDGET
) -> list[Matrix]:
    """Invertible ``k x k`` matrices preserving the block weight, in lexicographic order."""
    if w.field != F:
        raise ShapeMismatch("weight is defined over a different field")
    return list(_block_isometries(F, w, k, budget))


def _max_weight_vector(S: SpaceSpec, k: int) -> tuple[int, ...]:
    target = S.weight.max_weight
    for alpha in itertools.product(range(S.q), repeat=k):
        if max(S.weight.table[a] for a in alpha) == target:
            return alpha
    raise AssertionError("unreachable: a vector of maximal block weight always exists")


def phi_of(
    S: SpaceSpec, T: Matrix, *, check: bool = True, budget: int = DEFAULT_VECTOR_BUDGET
) -> PosetAutomorphism:
    """The poset automorphism induced by an isometry.

    ``i`` goes to the unique maximal element of the ideal generated by the
    π-support of ``T(α e_i)``, for ``α`` the lexicographically first vector of
    ``F_q^{k_i}`` of maximal block weight.  With ``check`` the isometry property
    is verified first whenever the space is within ``budget``.
    """
    _check_shape(S, T)
    images = []
    for i in range(1, S.n + 1):
        alpha = _max_weight_vector(S, S.labels[i])
        ideal = S.poset.ideal_of(pi_support(S, apply_map(S, T, S.embed(i, alpha))))
        top = S.poset.maximal_elements(ideal)
        if len(top) != 1:
            raise NotPrime(f"support ideal of T(α e_{i}) has maximal elements {sorted(top)}")
        images.append(next(iter(top)))
    try:
        psi = PosetAutomorphism(tuple(images))
    except ValueError as exc:
        raise NotAnAutomorphism(str(exc)) from None
    if not psi.is_automorphism_of(S.poset, S.labels):
        raise NotAnAutomorphism(f"{psi.perm} is not a label-preserving automorphism")
    if check and S.q**S.N <= budget and not is_isometry_exhaustive(S, T, budget=budget):
        raise NotAnAutomorphism("matrix is not an isometry of this space")
    return psi


def decompose(S: SpaceSpec, T: Matrix, **phi_kwargs) -> Decomposition:
    """Split an isometry as ``T = F ∘ T_ψ`` with ``F`` triangular."""
    try:
        psi = phi_of(S, T, **phi_kwargs)
    except (NotPrime, NotAnAutomorphism, NotInvertible) as exc:
        raise DecompositionFailed(f"not an isometry: {exc}") from exc
    F = compose(S, T, build_t_psi(S, psi.inverse()))
    if not in_triangular_group(S, F):
        raise DecompositionFailed("T ∘ T_ψ⁻¹ is not in the triangular subgroup")
    if compose(S, F, build_t_psi(S, psi)) != T:
        raise DecompositionFailed("F ∘ T_ψ does not reproduce T")
    return Decomposition(F, psi)


def _strict_pairs(S: SpaceSpec) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(1, S.n + 1)
        for j in range(1, S.n + 1)
        if S.poset.lt(i, j)
    ]


def triangular_order(S: SpaceSpec, *, budget: int = DEFAULT_MATRIX_BUDGET) -> int:
    """Order of the triangular subgroup."""
    order = 1
    for k in S.labels.labels:
        order *= len(enumerate_block_isometries(S.field, S.weight, k, budget=budget))
    free = sum(S.labels[i] * S.labels[j] for i, j in _strict_pairs(S))
    return order * S.q**free


def group_order(S: SpaceSpec, *, budget: int = DEFAULT_MATRIX_BUDGET) -> int:
    """``|U(P,w,π)| · |AUT(P,π)|``, exactly."""
    aut = sum(1 for _ in iter_automorphisms(S.poset, S.labels))
    return triangular_order(S, budget=budget) * aut


def iter_triangular(S: SpaceSpec, *, budget: int = DEFAULT_MATRIX_BUDGET) -> Iterator[np.ndarray]:
    """Every member of the triangular subgroup as an array, deterministic order."""
    diag_choices = [
        enumerate_block_isometries(S.field, S.weight, S.labels[i], budget=budget)
        for i in range(1, S.n + 1)
    ]
    free_cells = [
        (r, c)
        for i, j in _strict_pairs(S)
        for r in range(S.block_slice(i).start, S.block_slice(i).stop)
        for c in range(S.block_slice(j).start, S.block_slice(j).stop)
    ]
    rows = np.array([r for r, _ in free_cells], dtype=np.int64)
    cols = np.array([c for _, c in free_cells], dtype=np.int64)
    for diags in itertools.product(*diag_choices):
        base = np.zeros((S.N, S.N), dtype=np.int64)
        for i, A in enumerate(diags, start=1):
            base[S.block_slice(i), S.block_slice(i)] = A.to_array()
        for values in itertools.product(range(S.q), repeat=len(free_cells)):
            arr = base.copy()
            arr[rows, cols] = values
            yield arr


def iter_group_factored(
    S: SpaceSpec,
    *,
    budget: int = DEFAULT_GROUP_BUDGET,
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
) -> Iterator[tuple[PosetAutomorphism, Matrix]]:
    """Pairs ``(ψ, F ∘ T_ψ)``: ψ outermost, then the diagonal blocks of ``F``,
    then its free off-diagonal blocks."""
    order = group_order(S, budget=matrix_budget)
    if order > budget:
        raise BudgetExceeded(f"group of order {order} exceeds budget {budget}")
    for psi in iter_automorphisms(S.poset, S.labels):
        # F @ M(T_ψ): column (j, z) is column (ψ(j), z) of F
        perm = np.empty(S.N, dtype=np.int64)
        for j in range(1, S.n + 1):
            for z in range(1, S.labels[j] + 1):
                perm[S.flat_index(j, z)] = S.flat_index(psi(j), z)
        for F in iter_triangular(S, budget=matrix_budget):
            yield psi, Matrix.from_array(F[:, perm])


def enumerate_group(
    S: SpaceSpec,
    *,
    budget: int = DEFAULT_GROUP_BUDGET,
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
) -> Iterator[Matrix]:
    """Each linear isometry exactly once, built from the semidirect factorisation.

    Raises BudgetExceeded before yielding anything if the group order exceeds
    ``budget``.
    """
    for _, T in iter_group_factored(S, budget=budget, matrix_budget=matrix_budget):
        yield T


def oracle_group(
    S: SpaceSpec,
    *,
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
    vector_budget: int = DEFAULT_VECTOR_BUDGET,
) -> set[Matrix]:
    """Brute force: every invertible ``N x N`` matrix that preserves every weight."""
    _check_vector_budget(S, vector_budget)
    N, F = S.N, S.field
    table = weight_table(S)
    vecs = all_vectors(N, F)
    chunk = max(1, _SCREEN_CELLS // (N * len(vecs)))
    basis_weights = table[vector_index(np.eye(N, dtype=np.int64), F.q)]
    found: set[Matrix] = set()
    for stack in matrix_chunks(N, F, budget=matrix_budget, chunk=chunk):
        # cheap necessary condition first: T(e_j) is column j
        columns = vector_index(np.swapaxes(stack, -1, -2), F.q)
        stack = stack[np.all(table[columns] == basis_weights, axis=-1)]
        images = F.matmul(stack, vecs.T)  # (C, N, q**N)
        idx = vector_index(np.swapaxes(images, -1, -2), F.q)
        keep = np.all(table[idx] == table, axis=-1)
        survivors = stack[keep]
        survivors = survivors[batch_invertible(survivors, F)]
        found.update(Matrix.from_array(a) for a in survivors)
    return found

"""Finite posets on ``[n] = {1, ..., n}``, their ideals and label-preserving automorphisms.

All public indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, CycleDetected, IndexOutOfRange, NotAnIdeal

DEFAULT_AUTOMORPHISM_GUARD = 12


@dataclass(frozen=True)
class Poset:
    """A partial order given by its full relation matrix.

    ``leq[i-1][j-1]`` is true iff ``i ⪯ j``.
    """

    n: int
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        n, leq = self.n, self.leq
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ValueError("relation matrix must be n x n")
        for i in range(n):
            if not leq[i][i]:
                raise ValueError(f"not reflexive at {i + 1}")
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise ValueError(f"not antisymmetric at ({i + 1}, {j + 1})")
                for k in range(n):
                    if leq[i][j] and leq[j][k] and not leq[i][k]:
                        raise ValueError(f"not transitive at ({i + 1}, {j + 1}, {k + 1})")

    @classmethod
    def from_cover_relations(cls, n: int, covers: Iterable[Sequence[int]]) -> "Poset":
        """Reflexive-transitive closure of the pairs ``(a, b)`` meaning ``a ≺ b``."""
        rel = [[i == j for j in range(n)] for i in range(n)]
        for pair in covers:
            a, b = pair
            if not (1 <= a <= n and 1 <= b <= n):
                raise IndexOutOfRange(f"cover pair {tuple(pair)} outside 1..{n}")
            if a == b:
                raise CycleDetected(f"self-loop at {a}")
            rel[a - 1][b - 1] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if rel[i][j] and rel[j][i]:
                    raise CycleDetected(f"{i + 1} and {j + 1} lie on a directed cycle")
        return cls(n, tuple(tuple(row) for row in rel))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_cover_relations(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_cover_relations(n, [])

    def le(self, i: int, j: int) -> bool:
        return self.leq[i - 1][j - 1]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i - 1][j - 1]

    def _check(self, subset: Iterable[int]) -> frozenset[int]:
        out = frozenset(subset)
        for i in out:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"{i} outside 1..{self.n}")
        return out

    def ideal_of(self, J: Iterable[int]) -> frozenset[int]:
        """Smallest down-set containing ``J``."""
        J = self._check(J)
        return frozenset(i for i in range(1, self.n + 1) if any(self.leq[i - 1][j - 1] for j in J))

    def principal_ideal(self, j: int) -> frozenset[int]:
        return self.ideal_of({j})

    def strict_down_set(self, j: int) -> frozenset[int]:
        return self.principal_ideal(j) - {j}

    def is_ideal(self, I: Iterable[int]) -> bool:
        I = self._check(I)
        return self.ideal_of(I) == I

    def maximal_elements(self, I: Iterable[int]) -> frozenset[int]:
        I = self._check(I)
        return frozenset(j for j in I if not any(self.lt(j, i) for i in I))

    def is_prime_ideal(self, I: Iterable[int]) -> bool:
        """True iff the ideal ``I`` has exactly one maximal element."""
        I = self._check(I)
        if self.ideal_of(I) != I:
            raise NotAnIdeal(f"{sorted(I)} is not down-closed")
        return len(self.maximal_elements(I)) == 1

    def ideals(self) -> list[frozenset[int]]:
        """All ideals, including the empty one."""
        seen = {self.ideal_of(frozenset(j for j in range(1, self.n + 1) if mask >> (j - 1) & 1))
                for mask in range(1 << self.n)}
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def cover_relations(self) -> list[tuple[int, int]]:
        """The Hasse diagram: pairs ``(a, b)`` with ``a ≺ b`` and nothing strictly between."""
        out = []
        for a in range(1, self.n + 1):
            for b in range(1, self.n + 1):
                if self.lt(a, b) and not any(
                    self.lt(a, c) and self.lt(c, b) for c in range(1, self.n + 1)
                ):
                    out.append((a, b))
        return out

    def linear_extension(self) -> list[int]:
        """Elements sorted so that ``i ≺ j`` implies ``i`` comes first (ties by index)."""
        return sorted(range(1, self.n + 1), key=lambda i: (len(self.principal_ideal(i)), i))

    def is_antichain(self) -> bool:
        return not any(self.lt(i, j) for i in range(1, self.n + 1) for j in range(1, self.n + 1))


@dataclass(frozen=True)
class LabelMap:
    """Block dimensions ``k_1, ..., k_n``."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(int(k) for k in self.labels))
        if not self.labels:
            raise ValueError("label map must be nonempty")
        if any(k < 1 for k in self.labels):
            raise ValueError(f"labels must be positive, got {self.labels}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def N(self) -> int:
        return sum(self.labels)

    def __getitem__(self, i: int) -> int:
        """Label of the 1-based element ``i``."""
        return self.labels[i - 1]


@dataclass(frozen=True)
class PosetAutomorphism:
    """A permutation of ``[n]``; ``perm[i-1]`` is the image of ``i``."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(int(x) for x in self.perm))
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{len(self.perm)}")

    @classmethod
    def identity(cls, n: int) -> "PosetAutomorphism":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    @property
    def n(self) -> int:
        return len(self.perm)

    def compose(self, other: "PosetAutomorphism") -> "PosetAutomorphism":
        """``self ∘ other``: apply ``other`` first."""
        return PosetAutomorphism(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "PosetAutomorphism":
        inv = [0] * self.n
        for i, image in enumerate(self.perm, start=1):
            inv[image - 1] = i
        return PosetAutomorphism(tuple(inv))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, self.n + 1))

    def is_automorphism_of(self, P: Poset, labels: LabelMap | None = None) -> bool:
        if self.n != P.n:
            return False
        for i in range(1, P.n + 1):
            if labels is not None and labels[self(i)] != labels[i]:
                return False
            for j in range(1, P.n + 1):
                if P.le(i, j) != P.le(self(i), self(j)):
                    return False
        return True


def _signature(P: Poset, i: int, labels: LabelMap | None) -> tuple[int, int, int]:
    up = sum(P.lt(i, j) for j in range(1, P.n + 1))
    down = sum(P.lt(j, i) for j in range(1, P.n + 1))
    return up, down, labels[i] if labels is not None else 0


def iter_automorphisms(
    P: Poset, labels: LabelMap | None = None, *, guard: int = DEFAULT_AUTOMORPHISM_GUARD
) -> Iterator[PosetAutomorphism]:
    """Backtracking search, lexicographic in the permutation word."""
    if P.n > guard:
        raise BudgetExceeded(f"automorphism search limited to n <= {guard}, got {P.n}")
    if labels is not None and labels.n != P.n:
        raise ValueError("label map and poset sizes differ")
    n = P.n
    sig = [_signature(P, i, labels) for i in range(1, n + 1)]
    image = [0] * n
    used = [False] * n

    def extend(pos: int) -> Iterator[PosetAutomorphism]:
        if pos == n:
            yield PosetAutomorphism(tuple(x + 1 for x in image))
            return
        for cand in range(n):
            if used[cand] or sig[cand] != sig[pos]:
                continue
            if any(
                P.leq[a][pos] != P.leq[image[a]][cand] or P.leq[pos][a] != P.leq[cand][image[a]]
                for a in range(pos)
            ):
                continue
            used[cand] = True
            image[pos] = cand
            yield from extend(pos + 1)
            used[cand] = False

    yield from extend(0)


def enumerate_automorphisms(
    P: Poset, labels: LabelMap | None = None, *, guard: int = DEFAULT_AUTOMORPHISM_GUARD
) -> list[PosetAutomorphism]:
    """``AUT(P)``, or the label-preserving subgroup when ``labels`` is given."""
    return list(iter_automorphisms(P, labels, guard=guard))

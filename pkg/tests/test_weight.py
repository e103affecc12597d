import itertools

import numpy as np
import pytest

from posetblock.errors import AxiomViolation, EmptyBlock
from posetblock.field import make_field
from posetblock.weight import (
    block_weight,
    hamming_scalar_factor,
    hamming_weight,
    lee_weight,
    make_weight,
)


def test_hamming_gf2():
    w = make_weight(make_field(2), {0: 0, 1: 1})
    assert w.max_weight == 1


def test_lee_gf5():
    F = make_field(5)
    w = make_weight(F, {0: 0, 1: 1, 2: 2, 3: 2, 4: 1})
    assert w.max_weight == 2
    assert w == lee_weight(F)


def test_lee_axioms_by_pair_check():
    # independent of make_weight: integers mod 5
    lee = [0, 1, 2, 2, 1]
    for a, b in itertools.product(range(5), repeat=2):
        assert lee[(a + b) % 5] <= lee[a] + lee[b]
        assert lee[(-a) % 5] == lee[a]


def test_symmetry_violation_reported_first():
    with pytest.raises(AxiomViolation) as info:
        make_weight(make_field(3), {0: 0, 1: 1, 2: 3})
    assert info.value.axiom == "c"
    assert info.value.witness == (1, 2)


@pytest.mark.parametrize(
    "table,axiom",
    [
        ([0, -1], "a"),
        ([1, 1], "b"),
        ([0, 0, 0], "b"),
        ([0, 1, 3, 3, 1], "d"),  # w(1+1) = 3 > 2 over GF(5)
    ],
)
def test_axiom_violations(table, axiom):
    with pytest.raises(AxiomViolation) as info:
        make_weight(make_field(len(table)), table)
    assert info.value.axiom == axiom


def test_table_must_cover_field():
    with pytest.raises(ValueError):
        make_weight(make_field(3), {0: 0, 1: 1})
    with pytest.raises(ValueError):
        make_weight(make_field(3), [0, 1])


def test_block_weight_examples():
    lee = lee_weight(make_field(5))
    assert block_weight(lee, (1, 3)) == 2
    assert block_weight(lee, (0, 0, 0)) == 0
    assert block_weight(hamming_weight(make_field(2)), (1, 1, 1)) == 1
    with pytest.raises(EmptyBlock):
        block_weight(lee, ())


def test_hamming_scalar_factor():
    assert hamming_scalar_factor(make_weight(make_field(3), {0: 0, 1: 2, 2: 2})) == 2
    assert hamming_scalar_factor(lee_weight(make_field(5))) is None
    assert hamming_scalar_factor(make_weight(make_field(2), {0: 0, 1: 7})) == 7


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_scalar_factor_means_scaled_hamming(q):
    F = make_field(q)
    for scale in (1, 3):
        w = hamming_weight(F, scale)
        alpha = hamming_scalar_factor(w)
        assert [alpha * (a != 0) for a in range(q)] == list(w.table)


def _weights_for(q):
    F = make_field(q)
    out = [hamming_weight(F)]
    if q == 3:
        out.append(make_weight(F, [0, 2, 2]))
    if q == 5:
        out.append(lee_weight(F))
    return out


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("k", [1, 2])
def test_block_weight_is_a_weight(q, k):
    F = make_field(q)
    for w in _weights_for(q):
        vecs = list(itertools.product(range(q), repeat=k))
        wt = {v: block_weight(w, v) for v in vecs}
        for u in vecs:
            assert (wt[u] == 0) == (not any(u))
            assert wt[tuple(int(F.neg(c)) for c in u)] == wt[u]
            assert wt[u] <= w.max_weight
            for v in vecs:
                s = tuple(int(F.add(a, b)) for a, b in zip(u, v))
                assert wt[s] <= wt[u] + wt[v]
        assert max(wt.values()) == w.max_weight

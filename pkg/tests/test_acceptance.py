"""Acceptance criteria, one test per criterion.

Each test records a ``[PASS]`` or ``[FAIL]`` line that pytest prints in an
"acceptance criteria" section at the end of the run. Run this file directly
(``python tests/test_acceptance.py``) to see the same lines on their own.
"""

from __future__ import annotations

import itertools
import sys
import time

import numpy as np
import pytest

from posetblock.codes import min_distance, random_code
from posetblock.field import gl_order
from posetblock.isometry import (
    apply_map,
    build_t_psi,
    compose,
    decompose,
    enumerate_group,
    group_order,
    in_triangular_group,
    oracle_group,
    phi_of,
)
from posetblock.poset import enumerate_automorphisms
from posetblock.space import pi_support, pwpi_distance, vector_index, weight_table
from posetblock.weight import block_weight

from conftest import CONFIGS, make_space
from reference import down_closure, reference_weight, scalar_poset_weight

CONFIG_NAMES = ["a", "b", "c", "d", "e"]
EXPECTED_ORDERS = {"a": 2, "b": 24, "c": 6, "d": 8, "e": 20, "e_hamming": 80}

# Spaces with q**N <= 4096 for the metric and specialisation checks:
# (q, n, covers, labels, weight) as accepted by make_space.
CHAIN3 = [(1, 2), (2, 3)]
V = [(1, 3), (2, 3)]
LAMBDA = [(1, 2), (1, 3)]
N_POSET = [(1, 3), (2, 3), (2, 4)]
CORPUS = {
    **{f"config_{k}": v for k, v in CONFIGS.items()},
    "chain_121_q2": (2, 3, CHAIN3, (1, 2, 1), None),
    "chain_121_q3": (3, 3, CHAIN3, (1, 2, 1), None),
    "chain_121_q4": (4, 3, CHAIN3, (1, 2, 1), [0, 1, 2, 2]),
    "chain_121_lee5": (5, 3, CHAIN3, (1, 2, 1), "lee"),
    "chain_121_q8": (8, 3, CHAIN3, (1, 2, 1), None),
    "anti_121_q2": (2, 3, [], (1, 2, 1), None),
    "anti_121_lee7": (7, 3, [], (1, 2, 1), "lee"),
    "V_222_q4": (4, 3, V, (2, 2, 2), [0, 1, 2, 2]),
    "Lambda_232_q3": (3, 3, LAMBDA, (2, 3, 2), None),
    "N_3333_q2": (2, 4, N_POSET, (3, 3, 3, 3), None),
    "N_1111_q5": (5, 4, N_POSET, (1, 1, 1, 1), [0, 1, 2, 2, 1]),
    "chain_22_q7": (7, 2, [(1, 2)], (2, 2), [0, 1, 2, 3, 3, 2, 1]),
    "chain_12_q16": (16, 2, [(1, 2)], (1, 2), None),
    "anti_11_q64": (64, 2, [], (1, 1), {0: 0, **{a: 2 for a in range(1, 64)}}),
    "chain4_q7": (7, 4, [(1, 2), (2, 3), (3, 4)], (1, 1, 1, 1), None),
    "point_5_q4": (4, 1, [], (5,), [0, 1, 1, 1]),
}


def record(report, number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    report.append(line)
    print(line)


@pytest.fixture(scope="module")
def oracle_groups():
    """Oracle group and its build time for each configuration."""
    out = {}
    for name in CONFIG_NAMES + ["e_hamming"]:
        S = make_space(*CONFIGS[name])
        start = time.perf_counter()
        oracle = oracle_group(S)
        out[name] = (S, oracle, time.perf_counter() - start)
    return out


def _corpus(name):
    S = make_space(*CORPUS[name])
    assert S.q**S.N <= 4096
    return S


def test_criterion_1_structure_theorem(acceptance_report, oracle_groups):
    failures, details = [], []
    for name in CONFIG_NAMES + ["e_hamming"]:
        S, oracle, oracle_time = oracle_groups[name]
        start = time.perf_counter()
        group = list(enumerate_group(S))
        order = group_order(S)
        elapsed = oracle_time + time.perf_counter() - start
        ok = (set(group) == oracle and len(group) == len(oracle) == order == EXPECTED_ORDERS[name]
              and elapsed < 30)
        details.append(f"{name}={order}")
        if not ok:
            failures.append(f"{name}: oracle {len(oracle)} structured {len(group)} "
                            f"order {order} in {elapsed:.1f}s")
    lee, ham = oracle_groups["e"][1], oracle_groups["e_hamming"][1]
    if not lee < ham:
        failures.append("Lee group is not a proper subgroup of the Hamming group")
    record(acceptance_report, 1, not failures,
           "oracle = structured group, orders " + " ".join(details) + "; Lee strictly inside Hamming"
           + (f"; {failures}" if failures else ""))
    assert not failures


def test_criterion_2_decomposition(acceptance_report):
    failures, total = [], 0
    for name in CONFIG_NAMES:
        S = make_space(*CONFIGS[name])
        seen = set()
        group = list(enumerate_group(S))
        for T in group:
            total += 1
            dec = decompose(S, T)
            F, psi = dec.triangular, dec.automorphism
            ok = (in_triangular_group(S, F) and psi.is_automorphism_of(S.poset, S.labels)
                  and compose(S, F, build_t_psi(S, psi)) == T)
            if not ok:
                failures.append((name, T))
            seen.add((F, psi))
        if len(seen) != len(group):
            failures.append((name, "not injective"))
    record(acceptance_report, 2, not failures,
           f"{total} maps decomposed as F·T_ψ, injective, {len(failures)} failures")
    assert not failures


def test_criterion_3_homomorphism_and_kernel(acceptance_report, oracle_groups):
    failures, pairs = 0, 0
    for name in ("a", "c", "d"):
        S, oracle, _ = oracle_groups[name]
        phis = {T: phi_of(S, T, check=False) for T in oracle}
        for A, B in itertools.product(oracle, repeat=2):
            pairs += 1
            failures += phis[compose(S, A, B)] != phis[A].compose(phis[B])
        for T, phi in phis.items():
            failures += phi.is_identity() != in_triangular_group(S, T)
    record(acceptance_report, 3, failures == 0,
           f"φ is a homomorphism on {pairs} ordered pairs with kernel the triangular group, "
           f"{failures} failures")
    assert failures == 0


def _lemma_failures(S, T):
    """Count failures of the four structural statements for one isometry."""
    fails = 0
    P, labels = S.poset, S.labels
    phi = phi_of(S, T, check=False)
    unit = block_weight(S.weight, (1,))
    ideals = {}
    for i in range(1, S.n + 1):
        # labels are preserved by the induced permutation
        fails += labels[phi(i)] != labels[i]
        for alpha in itertools.product(range(S.q), repeat=labels[i]):
            if not any(alpha):
                continue
            image = apply_map(S, T, S.embed(i, alpha))
            ideal = P.ideal_of(pi_support(S, image))
            fails += not P.is_prime_ideal(ideal)
        for z in range(1, labels[i] + 1):
            image = apply_map(S, T, S.basis_vector(i, z))
            ideal = P.ideal_of(pi_support(S, image))
            ideals[i, z] = ideal
            for j in P.maximal_elements(ideal):
                fails += block_weight(S.weight, image.blocks[j - 1]) != unit
    for (i, z), (t, y) in itertools.product(ideals, repeat=2):
        if P.le(i, t):
            fails += not ideals[i, z] <= ideals[t, y]
    return fails


def test_criterion_4_lemma_suite(acceptance_report, oracle_groups):
    failures, maps = 0, 0
    for name in CONFIG_NAMES:
        S, oracle, _ = oracle_groups[name]
        for T in oracle:
            maps += 1
            failures += _lemma_failures(S, T)
    record(acceptance_report, 4, failures == 0,
           f"prime ideals, support monotonicity, leading block weight w(1), label preservation "
           f"on {maps} oracle isometries, {failures} failures")
    assert failures == 0


def _metric_failures(S):
    """Identity, symmetry and triangle inequality through d(x, y) = w(x - y).

    With a = x - y and b = y - z the triangle inequality reads
    w(a + b) <= w(a) + w(b), so all pairs (a, b) cover all triples.
    """
    F = S.field
    vecs = np.array(list(itertools.product(range(S.q), repeat=S.N)), dtype=np.int64)
    W = weight_table(S)
    fails = int((W[1:] == 0).sum()) + int(W[0] != 0) + int((W < 0).sum())
    fails += int((W[vector_index(F.neg(vecs), S.q)] != W).sum())
    chunk = max(1, 2**22 // (len(vecs) * S.N))
    for start in range(0, len(vecs), chunk):
        a = vecs[start : start + chunk]
        sums = F.add(a[:, None, :], vecs[None, :, :])
        lhs = W[vector_index(sums, S.q)]
        rhs = W[start : start + chunk, None] + W[None, :]
        fails += int((lhs > rhs).sum())
    return fails


def _direct_triple_failures(S):
    vectors = [S.from_flat(f) for f in itertools.product(range(S.q), repeat=S.N)]
    d = {(x, y): pwpi_distance(S, x, y) for x in vectors for y in vectors}
    fails = 0
    for x, y in itertools.product(vectors, repeat=2):
        fails += (d[x, y] == 0) != (x == y)
        fails += d[x, y] != d[y, x]
    for x, y, z in itertools.product(vectors, repeat=3):
        fails += d[x, z] > d[x, y] + d[y, z]
    return fails


def test_criterion_5_metric_axioms(acceptance_report):
    start = time.perf_counter()
    failures = {name: _metric_failures(_corpus(name)) for name in CORPUS}
    for name in ("config_a", "config_c", "chain_121_q2", "anti_121_q2"):
        failures[name] += _direct_triple_failures(_corpus(name))
    elapsed = time.perf_counter() - start
    bad = {k: v for k, v in failures.items() if v}
    ok = not bad and elapsed < 10
    record(acceptance_report, 5, ok,
           f"{len(CORPUS)} spaces with q^N <= 4096 incl. labels (1,2,1), "
           f"{sum(bad.values())} failures in {elapsed:.1f}s")
    assert not bad
    assert elapsed < 10


def test_criterion_6_specialisations(acceptance_report):
    checked, failures = 0, 0
    for name, (q, n, covers, labels, weight) in CORPUS.items():
        S = _corpus(name)
        W = weight_table(S)
        wtable = [S.weight(a) for a in range(q)]
        hamming = weight is None
        antichain = not covers
        scalar = all(k == 1 for k in labels)
        for idx, flat in enumerate(itertools.product(range(q), repeat=S.N)):
            checked += 1
            blocks, pos = [], 0
            for k in labels:
                blocks.append(flat[pos : pos + k])
                pos += k
            support = {i + 1 for i, b in enumerate(blocks) if any(b)}
            value = int(W[idx])
            failures += value != reference_weight(q, n, covers, labels, wtable, flat)
            if hamming:
                failures += value != len(down_closure(n, covers, support))
            if hamming and antichain:
                failures += value != len(support)
            if scalar:
                failures += value != scalar_poset_weight(n, covers, wtable, flat)
    record(acceptance_report, 6, failures == 0,
           f"Hamming ideal size, antichain support size and unit-label scalar weight on "
           f"{checked} vectors, {failures} failures")
    assert failures == 0


def test_criterion_7_antichain_factorisation(acceptance_report):
    S = make_space(2, 3, [], (1, 2, 1))
    start = time.perf_counter()
    auts = enumerate_automorphisms(S.poset, S.labels)
    expected = gl_order(1, 2) * gl_order(2, 2) * gl_order(1, 2) * 2
    order = group_order(S)
    oracle = oracle_group(S)
    group = set(enumerate_group(S))
    elapsed = time.perf_counter() - start
    ok = len(auts) == 2 and order == expected == 12 and oracle == group and len(oracle) == 12
    ok = ok and elapsed < 60
    record(acceptance_report, 7, ok,
           f"|AUT(P,π)| = {len(auts)}, order {order}, oracle {len(oracle)} over 2^16 matrices "
           f"in {elapsed:.1f}s")
    assert ok


def test_criterion_8_singleton_bound(acceptance_report):
    rng = np.random.default_rng(20240601)
    names = sorted(CORPUS)
    violations, worst = 0, []
    for _ in range(100):
        S = _corpus(names[int(rng.integers(len(names)))])
        k = int(rng.integers(1, S.N + 1))
        C = random_code(S.field, k, S.N, rng)
        d = min_distance(S, C)
        bound = S.n * S.weight.max_weight
        violations += d > bound
        worst.append(d / bound)
    record(acceptance_report, 8, violations == 0,
           f"100 random codes satisfy d <= n·M_w (max ratio {max(worst):.2f}), "
           f"{violations} violations")
    assert violations == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))

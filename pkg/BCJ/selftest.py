"""
Selftest Module

Property suites runnable from the command line. Each suite raises on the
first counterexample; run_selftest collects name, status and elapsed time
into a pandas table.
"""

import logging
import random
import time
from typing import Callable, List, Tuple

import pandas as pd

from .abelian_cycles import (
    VerdictKind,
    check_certificate,
    decide_equal_genus1,
    random_sigma_matched_pair,
    relation_holds,
    sigma_k,
    sigma_wedge_of_values,
)
from .bcj_sigma import recover_genus1_subspace, sigma_of_subspace
from .boolean_algebra import arf, b2_prime_basis, sp_action
from .config import DEFAULT_SEED, SelftestLevel
from .curve_systems import enumerate_admissible_trees, format_tree, reduce_to_genus1, tree_sigma_k
from .gf2_linear import (
    count_symplectic_2subspaces,
    enumerate_symplectic_2subspaces,
    genus_context,
    iter_symplectic_pairs,
    matrix_columns,
    orthogonal_complement,
    random_symplectic_matrix,
    span_bits,
    symplectic_from_pairs,
)
from .int_symplectic import random_symplectic_map, standard_subgroup

logger = logging.getLogger(__name__)

Suite = Callable[[random.Random, bool], None]


def _check(condition: bool, message: str):
    if not condition:
        raise AssertionError(message)


def suite_subspace_counts(rng: random.Random, full: bool):
    for g, expected in ((1, 1), (2, 20), (3, 336)):
        ctx = genus_context(g)
        spans = {span_bits((u, v), ctx) for u, v in iter_symplectic_pairs(ctx)}
        _check(len(spans) == expected, f"g={g}: {len(spans)} subspaces, expected {expected}")
        _check(count_symplectic_2subspaces(g) == expected, f"g={g}: closed form disagrees")
    _check(count_symplectic_2subspaces(4) == 5440, "g=4: closed form disagrees")


def suite_b2_dimensions(rng: random.Random, full: bool):
    for g in range(1, 6 if full else 5):
        size = len(b2_prime_basis(genus_context(g)))
        _check(size == 2 * g * g + g, f"g={g}: dim B_2' = {size}")


def suite_genus1_recovery(rng: random.Random, full: bool):
    ctx = genus_context(3)
    spaces = list(enumerate_symplectic_2subspaces(ctx))
    if not full:
        spaces = rng.sample(spaces, 24)
    seen = set()
    for v in spaces:
        s = sigma_of_subspace(v, ctx)
        _check(s not in seen, f"sigma is not injective at {v}")
        seen.add(s)
        _check(recover_genus1_subspace(s, ctx).space == v.space, f"recovery failed for {v}")


def suite_arf_invariance(rng: random.Random, full: bool):
    for g in (2, 3, 4):
        ctx = genus_context(g)
        for _ in range(1000 if full else 10):
            m = random_symplectic_matrix(ctx, rng)
            _check(sp_action(arf(ctx), m) == arf(ctx), f"g={g}: Arf moved by a symplectic matrix")


def suite_complement_symmetry(rng: random.Random, full: bool):
    ctx = genus_context(3)
    spaces = list(enumerate_symplectic_2subspaces(ctx))
    if not full:
        spaces = rng.sample(spaces, 24)
    ctx4 = genus_context(4)
    for _ in range(500 if full else 10):
        cols = matrix_columns(random_symplectic_matrix(ctx4, rng))
        spaces.append(symplectic_from_pairs([(cols[0], cols[1])], ctx4))
    for v in spaces:
        c = genus_context(v.g)
        perp = orthogonal_complement(v.space, c)
        _check(sigma_of_subspace(v, c) == sigma_of_subspace(perp, c),
               f"sigma(V) != sigma(V-perp) for {v}")


def suite_splitting_symmetry(rng: random.Random, full: bool):
    ctx = genus_context(3)
    for _ in range(100 if full else 10):
        m = random_symplectic_matrix(ctx, rng)
        cols = matrix_columns(m)
        parts = [span_bits(cols[2 * i:2 * i + 2], ctx) for i in range(3)]
        values = [sigma_of_subspace(p, ctx) for p in parts]
        w12 = sigma_wedge_of_values([values[0], values[1]], 3)
        w23 = sigma_wedge_of_values([values[1], values[2]], 3)
        w31 = sigma_wedge_of_values([values[2], values[0]], 3)
        _check(w12 == w23 == w31, "sigma_2 depends on more than the splitting")


def suite_certificates(rng: random.Random, full: bool):
    for g, count in ((4, 100 if full else 5), (5, 50 if full else 2)):
        ctx = genus_context(g)
        for _ in range(count):
            p, q = random_sigma_matched_pair(ctx, rng)
            verdict = decide_equal_genus1(p, q, ctx)
            _check(verdict.kind == VerdictKind.EQUAL, f"g={g}: verdict {verdict.kind.value} for {p} vs {q}")
            problems = check_certificate(verdict.certificate)
            _check(not problems, f"g={g}: certificate rejected: {problems}")
            for step in verdict.certificate.steps:
                _check(sigma_k(step.lhs) == sigma_k(p), f"g={g}: sigma_2 changes along the chain")


def suite_relation_rule(rng: random.Random, full: bool):
    ctx = genus_context(4)
    for inside in (True, False):
        for _ in range(500 if full else 20):
            m = random_symplectic_map(ctx, rng)
            u = m.apply_subgroup(standard_subgroup([1, 2, 3] if inside else [4], 4))
            chosen = rng.sample([1, 2, 3], rng.randint(1, 3))
            vs = [m.apply_subgroup(standard_subgroup([i], 4)) for i in chosen]
            holds = relation_holds(u, vs, ctx)
            _check(holds == (len(chosen) == 3),
                   f"relation verdict {holds} for {len(chosen)} parts, inside={inside}")


def suite_vanishing_census(rng: random.Random, full: bool):
    cases = [(4, 2), (4, 3)] + ([(5, 2), (5, 3)] if full else [])
    for g, k in cases:
        for tree in enumerate_admissible_trees(g, k):
            vanishes = tree_sigma_k(tree).is_zero()
            _check(vanishes == (0 in tree.genera), f"g={g}, k={k}: vanishing mismatch")


def suite_reduction_soundness(rng: random.Random, full: bool):
    cases = [(3, 1), (3, 2)] + ([(4, 1), (4, 2), (4, 3)] if full else [])
    for g, k in cases:
        for tree in enumerate_admissible_trees(g, k):
            key = format_tree(tree)
            systems = reduce_to_genus1(tree)
            for s in systems:
                _check(all(p.rank == 2 for p in s.parts), f"{key}: reduction has a part of rank > 2")
            expected = tree_sigma_k(tree)
            if not systems:
                _check(expected.is_zero(), f"{key}: empty reduction of a nonzero sigma_k")
                continue
            total = sigma_k(systems[0])
            for s in systems[1:]:
                total = total + sigma_k(s)
            _check(total == expected, f"{key}: reduction changes sigma_k")


def suite_triviality(rng: random.Random, full: bool):
    for g in ((3, 4) if full else (3,)):
        for k in range(g, 2 * g - 2):
            for tree in enumerate_admissible_trees(g, k):
                _check(tree_sigma_k(tree).is_zero(), f"g={g}, k={k}: nonzero sigma_k")
                _check(not reduce_to_genus1(tree), f"g={g}, k={k}: nonempty reduction")


SUITES: List[Tuple[str, Suite]] = [
    ("subspace_counts", suite_subspace_counts),
    ("b2_dimensions", suite_b2_dimensions),
    ("genus1_recovery", suite_genus1_recovery),
    ("arf_invariance", suite_arf_invariance),
    ("complement_symmetry", suite_complement_symmetry),
    ("splitting_symmetry", suite_splitting_symmetry),
    ("certificates", suite_certificates),
    ("relation_rule", suite_relation_rule),
    ("vanishing_census", suite_vanishing_census),
    ("reduction_soundness", suite_reduction_soundness),
    ("triviality", suite_triviality),
]


def run_selftest(level: SelftestLevel = SelftestLevel.QUICK, seed: int = DEFAULT_SEED) -> pd.DataFrame:
    """
    Run every suite at the given level.

    Args:
        level (SelftestLevel): QUICK samples, FULL runs the exhaustive sizes
        seed (int): Seed for the shared random.Random

    Returns:
        pd.DataFrame: Columns name, status, elapsed, detail
    """
    full = level == SelftestLevel.FULL
    rows = []
    for name, suite in SUITES:
        rng = random.Random(f"{seed}:{name}")
        started = time.perf_counter()
        try:
            suite(rng, full)
            status, detail = "ok", ""
        except Exception as e:
            logger.error(f"Selftest suite {name} failed: {e}", exc_info=True)
            status, detail = "fail", str(e)
        rows.append({
            "name": name,
            "status": status,
            "elapsed": round(time.perf_counter() - started, 3),
            "detail": detail,
        })
        logger.info(f"Suite {name}: {status}")
    return pd.DataFrame(rows, columns=["name", "status", "elapsed", "detail"])

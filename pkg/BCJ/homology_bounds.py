"""
Homology Bounds Module

Counting and rank computations bracketing the dimension of the part of
H_2 of the Torelli group spanned by abelian cycles of separating twists:
an upper bound from the number of orthogonal pairs of genus-1 sigma
values, and a lower bound from the rank of the sigma_2 image.
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from .abelian_cycles import b2_prime_dim, sigma_coordinates
from .bcj_sigma import sigma_of_pairs
from .config import MIN_EQUALITY_GENUS
from .curve_systems import (
    enumerate_admissible_trees,
    format_tree,
    realize_splitting,
    tree_sigma_k,
)
from .errors import HypothesisViolation
from .gf2_linear import (
    GenusContext,
    GF2Echelon,
    count_symplectic_2subspaces,
    form_bits,
    genus_context,
    iter_symplectic_pairs,
    orthogonal_complement,
    span_bits,
    wedge,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def count_genus1_sigmas(g: int) -> int:
    """
    Number of distinct sigma values of genus-1 separating twists.

    Equal to the number of 2-dimensional symplectic subspaces; counted by
    enumeration for g <= 3 and by the closed form beyond.
    """
    ctx = genus_context(g)
    if g <= 3:
        return sum(1 for _ in iter_symplectic_pairs(ctx))
    return count_symplectic_2subspaces(g)


def _complement_pair_count(u: int, v: int, ctx: GenusContext) -> int:
    """Number of 2-dim symplectic subspaces of <u, v>-perp."""
    perp = orthogonal_complement(span_bits((u, v), ctx), ctx)
    total = 0
    for w in perp.elements():
        if not w:
            continue
        # symplectic partners of w inside perp: elements pairing to 1 with w
        pairing = [form_bits(w, r, ctx) for r in perp.rows]
        if any(pairing):
            total += 1 << (perp.dim - 1)
    # each subspace has 3 nonzero vectors, each with 2 partners inside it
    return total // 6


def upper_bound_h2(g: int, check_all: Optional[bool] = None) -> int:
    """
    Number of unordered pairs of orthogonal 2-dim symplectic subspaces.

    Each genus-1 abelian cycle is determined by such a pair, so this counts
    a spanning set. The per-subspace complement count is verified to be
    constant before the product formula is used (every V for g <= 4 unless
    check_all is False, a sample otherwise).

    Raises:
        HypothesisViolation: for g < 4
    """
    if g < MIN_EQUALITY_GENUS:
        raise HypothesisViolation(f"the upper bound needs genus >= {MIN_EQUALITY_GENUS}, got {g}")
    ctx = genus_context(g)
    expected = count_symplectic_2subspaces(g - 1)
    if check_all is None:
        check_all = g <= 4
    stride = 1 if check_all else max(1, count_symplectic_2subspaces(g) // 100)
    for n, (u, v) in enumerate(iter_symplectic_pairs(ctx)):
        if n % stride:
            continue
        count = _complement_pair_count(u, v, ctx)
        if count != expected:
            raise HypothesisViolation(f"complement of <{u:#x}, {v:#x}> has {count} subspaces, not {expected}")
    return count_symplectic_2subspaces(g) * expected // 2


@lru_cache(maxsize=None)
def _pair_table(g: int) -> Tuple[Tuple[Pair, ...], Dict[Pair, int]]:
    """Every 2-dim symplectic subspace as a pair, with its position; built once per process."""
    pairs = tuple(iter_symplectic_pairs(genus_context(g)))
    return pairs, {p: i for i, p in enumerate(pairs)}


def _orthogonal_pairs(ctx: GenusContext, pairs: Sequence[Pair], index: Dict[Pair, int],
                      start: int, stop: int) -> Iterable[Tuple[Pair, Pair]]:
    """Unordered orthogonal pairs of subspaces, the first drawn from pairs[start:stop]."""
    for i in range(start, min(stop, len(pairs))):
        u, v = pairs[i]
        perp = orthogonal_complement(span_bits((u, v), ctx), ctx)
        elements = [w for w in perp.elements() if w]
        for x in elements:
            for y in elements:
                if x < y < (x ^ y) and form_bits(x, y, ctx) and index[(x, y)] > i:
                    yield (u, v), (x, y)


def _sigma2_vector(a: Pair, b: Pair, ctx: GenusContext, cache: Dict[Pair, int]) -> int:
    """sigma(A) ^ sigma(B) packed over 2-subsets of the B_2' coordinates."""
    coords = []
    for p in (a, b):
        if p not in cache:
            cache[p] = sigma_coordinates(sigma_of_pairs([p], ctx))
        coords.append(cache[p])
    return wedge(coords, b2_prime_dim(ctx.g)).pack()


def _rank_worker(args) -> List[int]:
    g, start, stop = args
    ctx = genus_context(g)
    echelon = GF2Echelon()
    ambient = comb(b2_prime_dim(g), 2)
    cache: Dict[Pair, int] = {}
    pairs, index = _pair_table(g)
    for a, b in _orthogonal_pairs(ctx, pairs, index, start, stop):
        echelon.insert(_sigma2_vector(a, b, ctx, cache))
        if echelon.rank == ambient:
            break
    return echelon.rows()


def lower_bound_h2(g: int, pairs: Optional[Iterable[Tuple[Pair, Pair]]] = None,
                   threads: int = 1) -> int:
    """
    GF(2) rank of the sigma_2 image of orthogonal genus-1 pairs.

    Args:
        g (int): Genus, at least 3
        pairs (Iterable, optional): Restricted stream of ((u, v), (x, y))
            subspace pairs; any subset still gives a lower bound
        threads (int): Worker processes for the full stream

    Returns:
        int: The rank, at most C(2g^2 + g, 2)
    """
    if g < 3:
        raise HypothesisViolation(f"the lower bound needs genus >= 3, got {g}")
    ctx = genus_context(g)
    ambient = comb(b2_prime_dim(g), 2)
    echelon = GF2Echelon()

    if pairs is not None:
        cache: Dict[Pair, int] = {}
        for a, b in pairs:
            echelon.insert(_sigma2_vector(a, b, ctx, cache))
            if echelon.rank == ambient:
                break
        return echelon.rank

    total = count_symplectic_2subspaces(g)
    chunks = max(1, threads) * 4
    bounds = [(g, total * i // chunks, total * (i + 1) // chunks) for i in range(chunks)]
    if threads <= 1:
        results = list(map(_rank_worker, bounds))
    else:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(_rank_worker, bounds))
    for rows in results:
        for row in rows:
            echelon.insert(row)
    logger.info(f"sigma_2 rank for genus {g}: {echelon.rank} of {ambient}")
    return echelon.rank


@dataclass
class DimReport:
    g: int
    k: int
    upper_bound: int
    lower_bound: int
    sigma_ambient_dim: int
    elapsed: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def dim_report(g: int, threads: int = 1) -> DimReport:
    """Both bounds for k = 2, with timing."""
    started = time.perf_counter()
    upper = upper_bound_h2(g)
    lower = lower_bound_h2(g, threads=threads)
    if lower > upper:
        raise HypothesisViolation(f"lower bound {lower} exceeds upper bound {upper}")
    report = DimReport(g, 2, upper, lower, comb(b2_prime_dim(g), 2),
                       round(time.perf_counter() - started, 3))
    logger.info(f"Dimension report: {report}")
    return report


def census_frame(g: int, k: int) -> pd.DataFrame:
    """
    Admissible trees with their genus-0 flag and sigma_k vanishing.

    Returns:
        pd.DataFrame: Columns tree, k, has_genus0, sigma_k_zero
    """
    rows = []
    for tree in enumerate_admissible_trees(g, k):
        rows.append({
            "tree": format_tree(tree),
            "k": k,
            "has_genus0": any(genus == 0 for genus in tree.genera),
            "sigma_k_zero": tree_sigma_k(tree, realize_splitting(tree)).is_zero(),
        })
    return pd.DataFrame(rows, columns=["tree", "k", "has_genus0", "sigma_k_zero"])

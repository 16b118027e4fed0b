"""
Curve Systems Module

Admissible systems of disjoint, pairwise nonisotopic separating curves,
modeled as trees: one vertex per complementary subsurface labeled with its
genus, one edge per curve. Classifies curves as outermost or grouping,
realizes the homology splitting, evaluates sigma_k, decides vanishing of
the abelian cycle for k < g, and rewrites a system as a sum of genus-1
systems.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .abelian_cycles import CycleSystem, SigmaWedge, sigma_coordinates, b2_prime_dim
from .bcj_sigma import SigmaValue, sigma_of_int_subgroup
from .errors import HypothesisViolation, ParseError
from .gf2_linear import wedge
from .int_symplectic import IntSymplecticSubgroup, standard_subgroup

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class PartitionTree:
    """
    Genus-labeled tree of a curve system.

    Attributes:
        genera (tuple): Genus of the subsurface at each vertex
        edges (tuple): One (u, v) pair per curve, u < v
    """
    genera: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    @property
    def g(self) -> int:
        return sum(self.genera)

    @property
    def k(self) -> int:
        return len(self.edges)

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for v, genus in enumerate(self.genera):
            graph.add_node(v, genus=genus)
        graph.add_edges_from(self.edges)
        return graph


def tree_from_edges(genera: Sequence[int], edges: Sequence[Edge]) -> PartitionTree:
    """Build a tree with edges normalized to (min, max) and sorted."""
    normalized = sorted((min(u, v), max(u, v)) for u, v in edges)
    return PartitionTree(tuple(genera), tuple(normalized))


def validate_tree(t: PartitionTree) -> Tuple[bool, List[str]]:
    """
    Check the admissibility conditions of a curve system tree.

    Returns:
        tuple: (bool, list) - (is_valid, problems); is_valid is True exactly
        when problems is empty, each problem naming its vertex or edge
    """
    problems = []
    n = len(t.genera)
    if n == 0:
        return False, ["tree has no vertices"]
    for u, v in t.edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            problems.append(f"edge ({u}, {v}) does not join two distinct vertices")
    if problems:
        return False, problems

    graph = t.graph()
    if not nx.is_tree(graph):
        problems.append("edges do not form a tree")
    for v, genus in enumerate(t.genera):
        if genus < 0:
            problems.append(f"vertex {v}: negative genus {genus}")
            continue
        degree = graph.degree(v)
        if degree == 1 and genus == 0:
            problems.append(f"vertex {v}: inessential curve (leaf of genus 0)")
        if degree == 2 and genus == 0:
            problems.append(f"vertex {v}: isotopic curves (annulus of genus 0)")
    if t.k > 2 * t.g - 3 and t.k > 0:
        problems.append(f"{t.k} curves exceed the bound 2g-3 = {2 * t.g - 3}")

    if problems:
        return False, problems
    return True, []


def require_valid(t: PartitionTree):
    is_valid, problems = validate_tree(t)
    if not is_valid:
        raise HypothesisViolation("inadmissible curve system: " + "; ".join(problems))


def edge_sides(t: PartitionTree, edge: Edge) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Vertex sets of the two components left after cutting along an edge."""
    graph = t.graph()
    graph.remove_edge(*edge)
    u, v = edge
    return frozenset(nx.node_connected_component(graph, u)), frozenset(nx.node_connected_component(graph, v))


def _side_genus(t: PartitionTree, side: FrozenSet[int]) -> int:
    return sum(t.genera[v] for v in side)


def curve_genus(t: PartitionTree, edge: Edge) -> int:
    """Genus of a curve: the smaller genus of its two sides."""
    left, right = edge_sides(t, edge)
    return min(_side_genus(t, left), _side_genus(t, right))


# ---------------------------------------------------------------------------
# Outermost and grouping curves
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    """
    Outermost and grouping curves of a tree.

    Attributes:
        outermost (dict): edge -> whether one side is a single subsurface
        cap (dict): outermost edge -> the vertex it caps off
        grouping (dict): edge -> whether it groups only outermost curves
        cap_base (dict): grouping edge -> the vertex on its grouping side
        grouped (dict): grouping edge -> the outermost edges at the cap base
        gcap (dict): grouping edge -> vertex set of its grouping side
    """
    outermost: Dict[Edge, bool] = field(default_factory=dict)
    cap: Dict[Edge, int] = field(default_factory=dict)
    grouping: Dict[Edge, bool] = field(default_factory=dict)
    cap_base: Dict[Edge, int] = field(default_factory=dict)
    grouped: Dict[Edge, List[Edge]] = field(default_factory=dict)
    gcap: Dict[Edge, FrozenSet[int]] = field(default_factory=dict)
    simple: bool = True

    def outermost_edges(self) -> List[Edge]:
        return sorted(e for e, flag in self.outermost.items() if flag)

    def grouping_edges(self) -> List[Edge]:
        return sorted(e for e, flag in self.grouping.items() if flag)


def classify(t: PartitionTree) -> Classification:
    """
    Flag every curve as outermost and/or grouping.

    A curve is outermost when one side is a single subsurface (a leaf); a
    single-curve system caps its lower-index leaf. A non-outermost curve is
    grouping when at one endpoint all other curves are outermost; if both
    endpoints qualify, the side of smaller genus wins, then the lower index.

    Args:
        t (PartitionTree): An admissible tree

    Returns:
        Classification: Flags, caps, cap bases and grouped curves
    """
    graph = t.graph()
    result = Classification()
    for edge in t.edges:
        u, v = edge
        leaves = [w for w in (u, v) if graph.degree(w) == 1]
        result.outermost[edge] = bool(leaves)
        if leaves:
            result.cap[edge] = min(leaves)

    for edge in t.edges:
        result.grouping[edge] = False
        if result.outermost[edge]:
            continue
        candidates = []
        for w in edge:
            others = [_norm(w, x) for x in graph.neighbors(w) if _norm(w, x) != edge]
            if all(result.outermost[e] for e in others):
                left, right = edge_sides(t, edge)
                side = left if w in left else right
                candidates.append((_side_genus(t, side), w, side, others))
        if not candidates:
            continue
        _, base, side, others = min(candidates, key=lambda c: (c[0], c[1]))
        result.grouping[edge] = True
        result.cap_base[edge] = base
        result.grouped[edge] = sorted(others)
        result.gcap[edge] = side

    result.simple = all(t.genera[c] == 1 for c in result.cap.values())
    return result


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def is_simple(t: PartitionTree) -> bool:
    return classify(t).simple


# ---------------------------------------------------------------------------
# Splittings and sigma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplittingAssignment:
    """Symplectic subgroup and standard pair indices for each vertex."""
    parts: Tuple[IntSymplecticSubgroup, ...]
    indices: Tuple[Tuple[int, ...], ...]

    def side_subgroup(self, side: FrozenSet[int]) -> IntSymplecticSubgroup:
        pairs = tuple(p for v in sorted(side) for p in self.parts[v].pairs)
        return IntSymplecticSubgroup(pairs, self.parts[0].g)


def realize_splitting(t: PartitionTree) -> SplittingAssignment:
    """
    Assign consecutive standard pairs to vertices in DFS order from vertex 0.

    Args:
        t (PartitionTree): An admissible tree

    Returns:
        SplittingAssignment: Pairwise orthogonal parts spanning Z^{2g}
    """
    require_valid(t)
    g = t.g
    indices: List[Tuple[int, ...]] = [()] * len(t.genera)
    nxt = 1
    for v in nx.dfs_preorder_nodes(t.graph(), 0):
        genus = t.genera[v]
        indices[v] = tuple(range(nxt, nxt + genus))
        nxt += genus
    parts = tuple(standard_subgroup(ix, g) for ix in indices)
    return SplittingAssignment(parts, tuple(indices))


def edge_sigma(t: PartitionTree, asg: SplittingAssignment, edge: Edge) -> SigmaValue:
    """
    Sigma of the twist about a curve, from either side's subgroup.

    Raises:
        HypothesisViolation: if the two sides disagree modulo Arf
    """
    left, right = edge_sides(t, edge)
    value = sigma_of_int_subgroup(asg.side_subgroup(left))
    if value != sigma_of_int_subgroup(asg.side_subgroup(right)):
        raise HypothesisViolation(f"edge {edge}: sides give different sigma values")
    return value


def tree_sigma_k(t: PartitionTree, asg: Optional[SplittingAssignment] = None) -> SigmaWedge:
    """Wedge of all edge sigma values in the k-th exterior power of B_2'."""
    asg = asg or realize_splitting(t)
    coords = [sigma_coordinates(edge_sigma(t, asg, e)) for e in t.edges]
    return SigmaWedge(wedge(coords, b2_prime_dim(t.g)))


def vanishes_main3(t: PartitionTree) -> bool:
    """
    Whether the abelian cycle of the system vanishes, for k < g.

    It vanishes exactly when some complementary subsurface has genus 0.

    Raises:
        HypothesisViolation: if k >= g
    """
    require_valid(t)
    if t.k >= t.g:
        raise HypothesisViolation(f"vanishing criterion needs k < g, got k={t.k}, g={t.g}")
    return any(genus == 0 for genus in t.genera)


# ---------------------------------------------------------------------------
# Reduction to genus-1 systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _IndexTree:
    """A tree whose vertices carry sets of standard pair indices."""
    sets: Tuple[FrozenSet[int], ...]
    edges: Tuple[Edge, ...]

    def as_partition_tree(self) -> PartitionTree:
        return tree_from_edges([len(s) for s in self.sets], self.edges)


def _split_cap(tree: _IndexTree, cap: int, parent: int) -> List[_IndexTree]:
    pieces = tree.sets[cap]
    low = min(pieces)
    rest = pieces - {low}
    keep = list(tree.sets)
    keep[cap], keep[parent] = frozenset({low}), tree.sets[parent] | rest
    move = list(tree.sets)
    move[cap], move[parent] = rest, tree.sets[parent] | {low}
    return [_IndexTree(tuple(keep), tree.edges), _IndexTree(tuple(move), tree.edges)]


def _expand_grouping(tree: _IndexTree, edge: Edge, base: int, grouped: List[Edge]) -> List[_IndexTree]:
    other = edge[0] if edge[1] == base else edge[1]
    leaves = [e[0] if e[1] == base else e[1] for e in grouped]
    kept_edges = [e for e in tree.edges if base not in e]
    out = []
    for i in sorted(tree.sets[base]):
        sets = list(tree.sets)
        sets[other] = tree.sets[other] | (tree.sets[base] - {i})
        sets[base] = frozenset({i})
        edges = kept_edges + [_norm(other, leaf) for leaf in leaves] + [_norm(other, base)]
        out.append(_IndexTree(tuple(sets), tuple(sorted(edges))))
    return out


def reduce_to_genus1(t: PartitionTree) -> List[CycleSystem]:
    """
    Rewrite the system's sigma_k as a GF(2) sum of genus-1 systems.

    Caps of genus h >= 2 are split one standard pair at a time; a grouping
    curve with cap base of genus h becomes h systems in which it caps a
    single pair, and vanishes for h = 0. Terminal stars give genus-1
    systems; systems occurring an even number of times cancel.

    Args:
        t (PartitionTree): An admissible tree

    Returns:
        list: CycleSystems with rank-2 parts, empty when k >= g
    """
    require_valid(t)
    if t.k >= t.g:
        return []
    asg = realize_splitting(t)
    work = [_IndexTree(tuple(frozenset(ix) for ix in asg.indices), t.edges)]
    tally: Counter = Counter()
    while work:
        tree = work.pop()
        pt = tree.as_partition_tree()
        cls = classify(pt)
        graph = pt.graph()
        big_cap = next((e for e in sorted(cls.cap, key=lambda e: cls.cap[e])
                        if len(tree.sets[cls.cap[e]]) >= 2), None)
        if big_cap is not None:
            cap = cls.cap[big_cap]
            parent = next(iter(graph.neighbors(cap)))
            work.extend(_split_cap(tree, cap, parent))
            continue
        grouping = cls.grouping_edges()
        if grouping:
            edge = grouping[0]
            base = cls.cap_base[edge]
            if not tree.sets[base]:
                continue
            work.extend(_expand_grouping(tree, edge, base, cls.grouped[edge]))
            continue
        tally[tuple(sorted(min(tree.sets[cls.cap[e]]) for e in pt.edges))] += 1

    g = t.g
    systems = []
    for indices, count in sorted(tally.items()):
        if count % 2:
            systems.append(CycleSystem(tuple(standard_subgroup([i], g) for i in indices), g))
    logger.debug(f"Reduced a {t.k}-curve system to {len(systems)} genus-1 systems")
    return systems


# ---------------------------------------------------------------------------
# Canonical forms and enumeration
# ---------------------------------------------------------------------------

def _encode(graph: nx.Graph, genera: Sequence[int], root: int, parent: Optional[int]) -> str:
    children = sorted(_encode(graph, genera, c, root) for c in graph.neighbors(root) if c != parent)
    return f"{genera[root]}" + "".join(f"({c})" for c in children)


def canonical_key(t: PartitionTree) -> str:
    """Isomorphism invariant of a genus-labeled tree, rooted at its center."""
    graph = t.graph()
    if len(t.genera) == 1:
        return str(t.genera[0])
    return min(_encode(graph, t.genera, c, None) for c in nx.center(graph))


def _labellings(degrees: Sequence[int], g: int) -> Iterator[Tuple[int, ...]]:
    lows = [1 if d <= 2 else 0 for d in degrees]
    budget = g - sum(lows)
    if budget < 0:
        return

    def spread(i: int, left: int) -> Iterator[Tuple[int, ...]]:
        if i == len(lows) - 1:
            yield (left,)
            return
        for extra in range(left + 1):
            for tail in spread(i + 1, left - extra):
                yield (extra,) + tail

    for extras in spread(0, budget):
        yield tuple(lo + e for lo, e in zip(lows, extras))


def enumerate_admissible_trees(g: int, k: int) -> List[PartitionTree]:
    """
    Every admissible k-curve system of genus g, up to labeled isomorphism.

    Args:
        g (int): Ambient genus
        k (int): Number of curves, 1 <= k <= 2g-3

    Returns:
        list: One PartitionTree per isomorphism class, sorted by canonical key
    """
    if k < 1:
        raise HypothesisViolation(f"k must be positive, got {k}")
    found: Dict[str, PartitionTree] = {}
    for shape in nx.nonisomorphic_trees(k + 1):
        edges = [_norm(u, v) for u, v in shape.edges()]
        degrees = [shape.degree(v) for v in range(k + 1)]
        for genera in _labellings(degrees, g):
            tree = tree_from_edges(genera, edges)
            if not validate_tree(tree)[0]:
                continue
            found.setdefault(canonical_key(tree), tree)
    logger.info(f"Enumerated {len(found)} admissible trees for g={g}, k={k}")
    return [found[key] for key in sorted(found)]


# ---------------------------------------------------------------------------
# Text syntax
# ---------------------------------------------------------------------------

def format_tree(t: PartitionTree) -> str:
    """Nested parentheses rooted at vertex 0, e.g. '0(1)(1)(2)'."""
    graph = t.graph()

    def render(v: int, parent: Optional[int]) -> str:
        children = sorted(c for c in graph.neighbors(v) if c != parent)
        return f"{t.genera[v]}" + "".join(f"({render(c, v)})" for c in children)

    return render(0, None)


def parse_tree(text: str) -> PartitionTree:
    """
    Parse 'genus(child)(child)...'; vertices are numbered in preorder.

    Raises:
        ParseError: on malformed input
    """
    src = text.replace(" ", "")
    genera: List[int] = []
    edges: List[Edge] = []
    pos = 0

    def node(parent: Optional[int]) -> None:
        nonlocal pos
        start = pos
        while pos < len(src) and src[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError(f"expected a genus at position {start} of {text!r}")
        vid = len(genera)
        genera.append(int(src[start:pos]))
        if parent is not None:
            edges.append((parent, vid))
        while pos < len(src) and src[pos] == "(":
            pos += 1
            node(vid)
            if pos >= len(src) or src[pos] != ")":
                raise ParseError(f"unbalanced parentheses in {text!r}")
            pos += 1

    node(None)
    if pos != len(src):
        raise ParseError(f"trailing input {src[pos:]!r} in {text!r}")
    return tree_from_edges(genera, edges)

"""
GF(2) Linear and Symplectic Algebra Module

Bit-packed vectors of H_1(S_g; Z/2) in dimension 2g, subspaces in reduced
echelon form, the mod 2 intersection form, symplectic bases and
complements, enumeration of 2-dimensional symplectic subspaces, and
exterior powers of labeled GF(2) spaces.

Coordinates are interleaved: bit 2(i-1) is a_i and bit 2(i-1)+1 is b_i, so
the form is a fixed stride-2 mask operation.
"""

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import MAX_GENUS, MIN_GENUS
from .errors import DimensionMismatch, MixedShapes, NotSymplectic, ParseError

logger = logging.getLogger(__name__)

_LABEL_RE = re.compile(r"^([ab])(\d+)$")


@dataclass(frozen=True)
class GenusContext:
    """
    Ambient genus g with the standard basis a_1, b_1, ..., a_g, b_g.

    Use genus_context(g) to obtain a validated, shared instance.
    """
    g: int
    a_mask: int = field(init=False, repr=False, compare=False)
    full_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not MIN_GENUS <= self.g <= MAX_GENUS:
            raise DimensionMismatch(
                f"genus must lie in {MIN_GENUS}..{MAX_GENUS}, got {self.g}")
        a_mask = 0
        for i in range(self.g):
            a_mask |= 1 << (2 * i)
        object.__setattr__(self, "a_mask", a_mask)
        object.__setattr__(self, "full_mask", (1 << (2 * self.g)) - 1)

    @property
    def dim(self) -> int:
        return 2 * self.g

    def label(self, index: int) -> str:
        """Basis label of a coordinate index, e.g. 0 -> 'a1', 3 -> 'b2'."""
        return f"{'ab'[index % 2]}{index // 2 + 1}"

    def basis_labels(self) -> List[str]:
        return [self.label(i) for i in range(self.dim)]

    def index_of(self, label: str) -> int:
        """Coordinate index of a basis label."""
        match = _LABEL_RE.match(label.strip())
        if not match:
            raise ParseError(f"not a basis label: {label!r}")
        kind, number = match.group(1), int(match.group(2))
        if not 1 <= number <= self.g:
            raise ParseError(f"label {label!r} outside genus {self.g}")
        return 2 * (number - 1) + (0 if kind == "a" else 1)

    def a(self, i: int) -> "GF2Vector":
        return GF2Vector(1 << (2 * (i - 1)), self.g)

    def b(self, i: int) -> "GF2Vector":
        return GF2Vector(1 << (2 * (i - 1) + 1), self.g)

    def swap_pairs(self, bits: int) -> int:
        """Exchange the a_i and b_i coordinates; v.w = parity(swap(v) & w)."""
        return ((bits & self.a_mask) << 1) | ((bits >> 1) & self.a_mask)

    @classmethod
    def from_genus(cls, g: int) -> "GenusContext":
        return genus_context(g)


@lru_cache(maxsize=None)
def genus_context(g: int) -> GenusContext:
    """Return the shared GenusContext for genus g."""
    return GenusContext(g)


@dataclass(frozen=True)
class GF2Vector:
    """A class in H_1(S_g; Z/2) as a 2g-bit integer."""
    bits: int
    g: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> (2 * self.g):
            raise DimensionMismatch(
                f"vector {self.bits:#x} does not fit in dimension {2 * self.g}")

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        if other.g != self.g:
            raise DimensionMismatch(f"cannot add genus {self.g} and genus {other.g} vectors")
        return GF2Vector(self.bits ^ other.bits, self.g)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return format_vector(self)


def form_bits(u: int, v: int, ctx: GenusContext) -> int:
    """Mod 2 intersection number of two raw bit vectors."""
    return (ctx.swap_pairs(u) & v).bit_count() & 1


def gf2_form(u: GF2Vector, v: GF2Vector, ctx: GenusContext) -> int:
    """
    Mod 2 intersection number u.v.

    Args:
        u (GF2Vector): First class
        v (GF2Vector): Second class
        ctx (GenusContext): Ambient genus

    Returns:
        int: 0 or 1
    """
    if u.g != ctx.g or v.g != ctx.g:
        raise DimensionMismatch(
            f"form in genus {ctx.g} applied to genus {u.g} and {v.g} vectors")
    return form_bits(u.bits, v.bits, ctx)


# ---------------------------------------------------------------------------
# Echelon forms
# ---------------------------------------------------------------------------

def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def rref_rows(vectors: Iterable[int]) -> Tuple[int, ...]:
    """
    Reduced row echelon form of a set of bit vectors.

    Pivots are lowest set bits; every pivot bit is cleared from all other
    rows and rows are sorted by pivot. The result is canonical for the span.
    """
    rows: Dict[int, int] = {}
    for vec in vectors:
        for pivot, row in rows.items():
            if (vec >> pivot) & 1:
                vec ^= row
        if not vec:
            continue
        pivot = _low_bit(vec)
        for other_pivot in list(rows):
            if (rows[other_pivot] >> pivot) & 1:
                rows[other_pivot] ^= vec
        rows[pivot] = vec
    return tuple(rows[p] for p in sorted(rows))


class GF2Echelon:
    """
    Incremental echelon of bit vectors keyed by their highest set bit.

    Holds only the current echelon, so it can absorb an unbounded stream.
    Used for wedge ranks and for the Arf ideal.
    """

    def __init__(self):
        self._rows: Dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: int) -> int:
        """Reduce vec against every pivot, from the top bit down."""
        rows = self._rows
        pos = vec.bit_length() - 1
        while pos >= 0:
            row = rows.get(pos)
            if row is not None:
                vec ^= row
            pos = (vec & ((1 << pos) - 1)).bit_length() - 1
        return vec

    def insert(self, vec: int) -> bool:
        """Insert vec; return True when the rank grew."""
        vec = self.reduce(vec)
        if not vec:
            return False
        self._rows[vec.bit_length() - 1] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def merge(self, other: "GF2Echelon") -> int:
        """Insert every row of other; return the number of new pivots."""
        return sum(1 for row in other.rows() if self.insert(row))

    def rows(self) -> List[int]:
        return [self._rows[p] for p in sorted(self._rows, reverse=True)]

    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def row_with_pivot(self, pivot: int) -> Optional[int]:
        return self._rows.get(pivot)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GF2Subspace:
    """A subspace of GF(2)^{2g} held by its canonical RREF basis."""
    rows: Tuple[int, ...]
    g: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> List[GF2Vector]:
        return [GF2Vector(r, self.g) for r in self.rows]

    def contains(self, v: GF2Vector) -> bool:
        bits = v.bits
        for row in self.rows:
            if (bits >> _low_bit(row)) & 1:
                bits ^= row
        return bits == 0

    def elements(self) -> Iterator[int]:
        """Every element of the subspace as a raw bit vector."""
        rows = self.rows
        for mask in range(1 << len(rows)):
            acc = 0
            for i, row in enumerate(rows):
                if (mask >> i) & 1:
                    acc ^= row
            yield acc

    def __str__(self) -> str:
        return ", ".join(format_vector(v) for v in self.basis()) or "0"


@dataclass(frozen=True)
class GF2SymplecticSubspace:
    """A symplectic subspace together with a symplectic basis of it."""
    space: GF2Subspace
    sbasis: Tuple[Tuple[int, int], ...]

    @property
    def g(self) -> int:
        return self.space.g

    @property
    def dim(self) -> int:
        return self.space.dim

    def pairs(self) -> List[Tuple[GF2Vector, GF2Vector]]:
        return [(GF2Vector(x, self.g), GF2Vector(y, self.g)) for x, y in self.sbasis]

    def __str__(self) -> str:
        return "; ".join(
            f"({format_bits(x, self.g)}, {format_bits(y, self.g)})" for x, y in self.sbasis)


def span(vectors: Iterable[GF2Vector], ctx: GenusContext) -> GF2Subspace:
    """Canonical subspace spanned by vectors."""
    bits = []
    for v in vectors:
        if v.g != ctx.g:
            raise DimensionMismatch(f"genus {v.g} vector in a genus {ctx.g} span")
        bits.append(v.bits)
    return GF2Subspace(rref_rows(bits), ctx.g)


def span_bits(vectors: Iterable[int], ctx: GenusContext) -> GF2Subspace:
    return GF2Subspace(rref_rows(vectors), ctx.g)


def direct_sum(spaces: Sequence[GF2Subspace], ctx: GenusContext) -> GF2Subspace:
    return span_bits((r for s in spaces for r in s.rows), ctx)


def intersection_is_zero(s: GF2Subspace, t: GF2Subspace, ctx: GenusContext) -> bool:
    return direct_sum([s, t], ctx).dim == s.dim + t.dim


def _gram_rank(rows: Sequence[int], ctx: GenusContext) -> int:
    gram = []
    for r in rows:
        swapped = ctx.swap_pairs(r)
        line = 0
        for j, s in enumerate(rows):
            if (swapped & s).bit_count() & 1:
                line |= 1 << j
        gram.append(line)
    return len(rref_rows(gram))


def is_symplectic(s: GF2Subspace, ctx: GenusContext) -> bool:
    """
    Whether the form restricted to s is nondegenerate.

    Args:
        s (GF2Subspace): Subspace to test
        ctx (GenusContext): Ambient genus

    Returns:
        bool: True iff the Gram matrix of s is invertible over GF(2)
    """
    if s.g != ctx.g:
        raise DimensionMismatch(f"genus {s.g} subspace tested in genus {ctx.g}")
    return _gram_rank(s.rows, ctx) == s.dim


def symplectic_basis_of(s: GF2Subspace, ctx: GenusContext) -> GF2SymplecticSubspace:
    """
    Symplectic Gram-Schmidt on the echelon basis of s.

    The lowest-pivot remaining vector is paired with the first later vector
    it pairs nontrivially with; the rest are projected off that pair.

    Args:
        s (GF2Subspace): A symplectic subspace
        ctx (GenusContext): Ambient genus

    Returns:
        GF2SymplecticSubspace: s with pairs (x_i, y_i), x_i.y_j = delta_ij

    Raises:
        NotSymplectic: if the form is degenerate on s
    """
    if s.g != ctx.g:
        raise DimensionMismatch(f"genus {s.g} subspace used in genus {ctx.g}")
    rows = list(s.rows)
    pairs = []
    while rows:
        x = rows[0]
        partner = next((j for j in range(1, len(rows)) if form_bits(x, rows[j], ctx)), None)
        if partner is None:
            raise NotSymplectic(f"{format_bits(x, ctx.g)} lies in the radical of <{s}>")
        y = rows[partner]
        rest = [r for j, r in enumerate(rows) if j not in (0, partner)]
        rows = []
        for r in rest:
            if form_bits(r, y, ctx):
                r ^= x
            if form_bits(r, x, ctx):
                r ^= y
            rows.append(r)
        pairs.append((x, y))
    return GF2SymplecticSubspace(s, tuple(pairs))


def symplectic_from_pairs(pairs: Sequence[Tuple[int, int]], ctx: GenusContext) -> GF2SymplecticSubspace:
    """Wrap given pairs, checking the full pairing table."""
    vectors = [v for pair in pairs for v in pair]
    for i, (x, y) in enumerate(pairs):
        for j, (u, w) in enumerate(pairs):
            expected = 1 if i == j else 0
            if (form_bits(x, w, ctx) != expected or form_bits(x, u, ctx)
                    or form_bits(y, w, ctx)):
                raise NotSymplectic(f"pairs {i} and {j} violate the pairing table")
    return GF2SymplecticSubspace(span_bits(vectors, ctx), tuple(pairs))


def orthogonal_complement(s: GF2Subspace, ctx: GenusContext) -> GF2Subspace:
    """
    The subspace of vectors pairing to zero with all of s.

    Args:
        s (GF2Subspace): Any subspace
        ctx (GenusContext): Ambient genus

    Returns:
        GF2Subspace: s-perp, of dimension 2g - dim(s)
    """
    if s.g != ctx.g:
        raise DimensionMismatch(f"genus {s.g} subspace used in genus {ctx.g}")
    functionals = rref_rows(ctx.swap_pairs(r) for r in s.rows)
    pivots = {_low_bit(f): f for f in functionals}
    null = []
    for free in range(ctx.dim):
        if free in pivots:
            continue
        vec = 1 << free
        for pivot, f in pivots.items():
            if (f >> free) & 1:
                vec |= 1 << pivot
        null.append(vec)
    return GF2Subspace(rref_rows(null), ctx.g)


def count_symplectic_2subspaces(g: int) -> int:
    """Closed form (2^{2g}-1) * 2^{2g-1} / 6."""
    return ((1 << (2 * g)) - 1) * (1 << (2 * g - 1)) // 6


def iter_symplectic_pairs(ctx: GenusContext, start: int = 1,
                          stop: Optional[int] = None) -> Iterator[Tuple[int, int]]:
    """
    Raw (u, v) with u < v < u+v and u.v = 1, one per 2-dim symplectic subspace.

    The first vector ranges over [start, stop), so disjoint ranges give
    disjoint streams.
    """
    end = ctx.full_mask + 1
    stop = end if stop is None else min(stop, end)
    swap = ctx.swap_pairs
    for u in range(max(start, 1), stop):
        su = swap(u)
        for v in range(u + 1, end):
            if (su & v).bit_count() & 1 and v < (u ^ v):
                yield u, v


def enumerate_symplectic_2subspaces(ctx: GenusContext, start: int = 1,
                                    stop: Optional[int] = None) -> Iterator[GF2SymplecticSubspace]:
    """
    Yield every 2-dimensional symplectic subspace exactly once.

    Args:
        ctx (GenusContext): Ambient genus
        start (int): First smallest-element value to consider
        stop (int, optional): Exclusive bound on the smallest element

    Yields:
        GF2SymplecticSubspace: Subspace with its canonical symplectic basis
    """
    count = 0
    for u, v in iter_symplectic_pairs(ctx, start, stop):
        count += 1
        yield symplectic_basis_of(span_bits((u, v), ctx), ctx)
    logger.debug(f"Enumerated {count} symplectic 2-subspaces in genus {ctx.g}")


# ---------------------------------------------------------------------------
# Matrices (numpy, columns are images of basis vectors)
# ---------------------------------------------------------------------------

def standard_form_matrix(ctx: GenusContext) -> np.ndarray:
    """Gram matrix of the form in the interleaved basis."""
    omega = np.zeros((ctx.dim, ctx.dim), dtype=np.uint8)
    for i in range(ctx.g):
        omega[2 * i, 2 * i + 1] = 1
        omega[2 * i + 1, 2 * i] = 1
    return omega


def is_symplectic_matrix(m: np.ndarray, ctx: GenusContext) -> bool:
    if m.shape != (ctx.dim, ctx.dim):
        raise DimensionMismatch(f"matrix of shape {m.shape} in genus {ctx.g}")
    omega = standard_form_matrix(ctx).astype(np.int64)
    mm = m.astype(np.int64) % 2
    return bool(np.array_equal((mm.T @ omega @ mm) % 2, omega))


def matrix_columns(m: np.ndarray) -> List[int]:
    """Columns of a GF(2) matrix as bit vectors."""
    cols = []
    for j in range(m.shape[1]):
        bits = 0
        for i in np.flatnonzero(m[:, j] % 2):
            bits |= 1 << int(i)
        cols.append(bits)
    return cols


def matrix_from_columns(cols: Sequence[int], ctx: GenusContext) -> np.ndarray:
    m = np.zeros((ctx.dim, ctx.dim), dtype=np.uint8)
    for j, col in enumerate(cols):
        for i in range(ctx.dim):
            m[i, j] = (col >> i) & 1
    return m


def apply_columns(cols: Sequence[int], bits: int) -> int:
    acc = 0
    j = 0
    while bits:
        if bits & 1:
            acc ^= cols[j]
        bits >>= 1
        j += 1
    return acc


def apply_matrix(m: np.ndarray, v: GF2Vector) -> GF2Vector:
    return GF2Vector(apply_columns(matrix_columns(m), v.bits), v.g)


def transvection_matrix(v: GF2Vector, ctx: GenusContext) -> np.ndarray:
    """Matrix of x -> x + (x.v) v."""
    cols = []
    for j in range(ctx.dim):
        e = 1 << j
        cols.append(e ^ v.bits if form_bits(e, v.bits, ctx) else e)
    return matrix_from_columns(cols, ctx)


def random_symplectic_matrix(ctx: GenusContext, rng, steps: int = 12) -> np.ndarray:
    """Product of random transvections; transvections generate Sp(2g, Z/2)."""
    m = np.eye(ctx.dim, dtype=np.uint8)
    for _ in range(steps):
        v = GF2Vector(rng.randrange(1, ctx.full_mask + 1), ctx.g)
        m = (transvection_matrix(v, ctx).astype(np.int64) @ m) % 2
    return m.astype(np.uint8)


def image_of_subspace(m: np.ndarray, s: GF2SymplecticSubspace, ctx: GenusContext) -> GF2SymplecticSubspace:
    """Image of a symplectic subspace, carrying its basis pairs along."""
    cols = matrix_columns(m)
    pairs = tuple((apply_columns(cols, x), apply_columns(cols, y)) for x, y in s.sbasis)
    return GF2SymplecticSubspace(span_bits((v for p in pairs for v in p), ctx), pairs)


# ---------------------------------------------------------------------------
# Exterior powers
# ---------------------------------------------------------------------------

def subset_rank(subset: Sequence[int]) -> int:
    """Colexicographic rank of a sorted k-subset (combinatorial number system)."""
    return sum(comb(c, i + 1) for i, c in enumerate(subset))


@dataclass(frozen=True)
class WedgeElement:
    """An element of the k-th exterior power of GF(2)^n, as a set of k-subsets."""
    ambient_dim: int
    k: int
    terms: frozenset

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        if (other.ambient_dim, other.k) != (self.ambient_dim, self.k):
            raise MixedShapes(
                f"cannot add wedges of shape {(self.ambient_dim, self.k)} and "
                f"{(other.ambient_dim, other.k)}")
        return WedgeElement(self.ambient_dim, self.k, self.terms ^ other.terms)

    def pack(self) -> int:
        """The element as a bit vector over the C(n, k) subset coordinates."""
        packed = 0
        for term in self.terms:
            packed ^= 1 << subset_rank(term)
        return packed

    def sorted_terms(self) -> List[Tuple[int, ...]]:
        return sorted(self.terms)


def wedge_zero(ambient_dim: int, k: int) -> WedgeElement:
    return WedgeElement(ambient_dim, k, frozenset())


def wedge(parts: Sequence[int], ambient_dim: int) -> WedgeElement:
    """
    Multilinear alternating expansion of parts[0] ^ ... ^ parts[k-1].

    Args:
        parts (Sequence[int]): Coordinate vectors as bitmasks over n indices
        ambient_dim (int): n

    Returns:
        WedgeElement: Set of sorted index k-subsets (char 2, signs trivial)

    Raises:
        DimensionMismatch: if a part does not fit in n coordinates
    """
    if not parts:
        raise MixedShapes("wedge of an empty list")
    for p in parts:
        if p < 0 or p >> ambient_dim:
            raise DimensionMismatch(f"part {p:#x} does not fit in dimension {ambient_dim}")
    # dependent parts wedge to zero
    if len(rref_rows(parts)) < len(parts):
        return wedge_zero(ambient_dim, len(parts))
    current = {frozenset()}
    for p in parts:
        indices = [i for i in range(ambient_dim) if (p >> i) & 1]
        nxt = set()
        for term in current:
            for i in indices:
                if i not in term:
                    nxt ^= {term | {i}}
        current = nxt
        if not current:
            break
    terms = frozenset(tuple(sorted(t)) for t in current)
    return WedgeElement(ambient_dim, len(parts), terms)


def wedge_from_packed(packed: int, ambient_dim: int, k: int) -> WedgeElement:
    """Inverse of WedgeElement.pack."""
    terms = []
    for subset in combinations(range(ambient_dim), k):
        if (packed >> subset_rank(subset)) & 1:
            terms.append(subset)
    return WedgeElement(ambient_dim, k, frozenset(terms))


class WedgeEchelon(GF2Echelon):
    """Streaming rank accumulator for wedge elements of one shape."""

    def __init__(self, ambient_dim: int, k: int):
        super().__init__()
        self.ambient_dim = ambient_dim
        self.k = k

    def add(self, elem: WedgeElement) -> bool:
        if (elem.ambient_dim, elem.k) != (self.ambient_dim, self.k):
            raise MixedShapes(
                f"wedge of shape {(elem.ambient_dim, elem.k)} in a "
                f"{(self.ambient_dim, self.k)} echelon")
        return self.insert(elem.pack())


def rank_of_span(elems: Iterable[WedgeElement]) -> int:
    """
    GF(2) rank of a stream of wedge elements.

    Raises:
        MixedShapes: if the elements do not share k and ambient dimension
    """
    echelon = GF2Echelon()
    shape = None
    for elem in elems:
        if shape is None:
            shape = (elem.ambient_dim, elem.k)
        elif (elem.ambient_dim, elem.k) != shape:
            raise MixedShapes(f"wedge of shape {(elem.ambient_dim, elem.k)} in a {shape} stream")
        echelon.insert(elem.pack())
    return echelon.rank


# ---------------------------------------------------------------------------
# Text syntax
# ---------------------------------------------------------------------------

def format_bits(bits: int, g: int) -> str:
    ctx = genus_context(g)
    labels = [ctx.label(i) for i in range(ctx.dim) if (bits >> i) & 1]
    return "+".join(labels) if labels else "0"


def format_vector(v: GF2Vector) -> str:
    return format_bits(v.bits, v.g)


def parse_vector(text: str, ctx: GenusContext) -> GF2Vector:
    """Parse 'a1+b2' (repeated labels cancel; '0' is the zero vector)."""
    text = text.strip()
    if not text:
        raise ParseError("empty vector")
    bits = 0
    for token in text.split("+"):
        token = token.strip()
        if token == "0":
            continue
        bits ^= 1 << ctx.index_of(token)
    return GF2Vector(bits, ctx.g)


def parse_subspace(text: str, ctx: GenusContext) -> GF2Subspace:
    """Parse comma-separated generators such as 'a1+b2, b1'."""
    generators = [t for t in text.split(",") if t.strip()]
    if not generators:
        raise ParseError("empty subspace")
    return span((parse_vector(t, ctx) for t in generators), ctx)

"""
Boolean Polynomial Algebra Module

The algebra B(S) of Boolean polynomials in the generators xbar_{a_i},
xbar_{b_i}, the Arf invariant, its ideal, canonical normal forms in the
quotient B'(S) = B(S)/(Arf), and the substitution action of Sp(2g, Z/2).

A monomial is a bitmask over the 2g variables, in the same interleaved
order as GF2Vector (bit 0 = a1, bit 1 = b1, ...). The empty mask is the
constant 1.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

import numpy as np

from .config import MAX_IDEAL_GENUS
from .errors import ContextMismatch, HypothesisViolation, NotSymplectic, ParseError
from .gf2_linear import (
    GenusContext,
    GF2Echelon,
    GF2Vector,
    genus_context,
    is_symplectic_matrix,
    matrix_columns,
    subset_rank,
)

logger = logging.getLogger(__name__)

# Bitmask of variable indices
Monomial = int

_TERM_SPLIT = re.compile(r"\s*\+\s*")


@dataclass(frozen=True)
class BoolPoly:
    """An element of B(S): a set of monomials with implicit GF(2) coefficients."""
    monomials: FrozenSet[Monomial]
    g: int

    @property
    def degree(self) -> int:
        """Largest monomial degree, -1 for the zero polynomial."""
        return max((m.bit_count() for m in self.monomials), default=-1)

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        _check_same_context(self, other)
        return BoolPoly(self.monomials ^ other.monomials, self.g)

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        return mul(self, other)

    def __str__(self) -> str:
        return format_poly(self)


def _check_same_context(p: BoolPoly, q: BoolPoly):
    if p.g != q.g:
        raise ContextMismatch(f"genus {p.g} and genus {q.g} polynomials combined")


def zero(ctx: GenusContext) -> BoolPoly:
    return BoolPoly(frozenset(), ctx.g)


def one(ctx: GenusContext) -> BoolPoly:
    return BoolPoly(frozenset({0}), ctx.g)


def poly_from_monomials(monomials: Iterable[Monomial], ctx: GenusContext) -> BoolPoly:
    """Sum of monomials; repeated monomials cancel."""
    acc = set()
    for m in monomials:
        acc ^= {m}
    return BoolPoly(frozenset(acc), ctx.g)


def variable(index: int, ctx: GenusContext) -> BoolPoly:
    return BoolPoly(frozenset({1 << index}), ctx.g)


def bar(x: GF2Vector, ctx: GenusContext) -> BoolPoly:
    """
    The generator xbar of a homology class.

    For x = sum of basis vectors e_i, relation (1) forces
    xbar = sum of the e_i-bar plus the constant sum_{i<j} e_i.e_j; among
    basis vectors only the pairs (a_k, b_k) pair nontrivially.

    Args:
        x (GF2Vector): Class in H_1(S; Z/2)
        ctx (GenusContext): Ambient genus

    Returns:
        BoolPoly: Degree <= 1 polynomial
    """
    if x.g != ctx.g:
        raise ContextMismatch(f"genus {x.g} vector in a genus {ctx.g} algebra")
    return bar_bits(x.bits, ctx)


def bar_bits(bits: int, ctx: GenusContext) -> BoolPoly:
    terms = {1 << i for i in range(ctx.dim) if (bits >> i) & 1}
    if (bits & ctx.a_mask & (bits >> 1)).bit_count() & 1:
        terms.add(0)
    return BoolPoly(frozenset(terms), ctx.g)


def mul(p: BoolPoly, q: BoolPoly) -> BoolPoly:
    """Product in B(S); monomials multiply by union of variables."""
    _check_same_context(p, q)
    acc = set()
    for m in p.monomials:
        for n in q.monomials:
            acc ^= {m | n}
    return BoolPoly(frozenset(acc), p.g)


def arf(ctx: GenusContext) -> BoolPoly:
    """Arf = sum_j xbar_{a_j} xbar_{b_j}."""
    return BoolPoly(frozenset(0b11 << (2 * j) for j in range(ctx.g)), ctx.g)


def degree_at_most(p: BoolPoly, k: int) -> bool:
    return all(m.bit_count() <= k for m in p.monomials)


def evaluate(p: BoolPoly, point: int) -> int:
    """Value of p as a Boolean function at a point of GF(2)^{2g}."""
    return sum(1 for m in p.monomials if m & point == m) & 1


# ---------------------------------------------------------------------------
# Monomial order and the Arf ideal
# ---------------------------------------------------------------------------

class MonomialOrder:
    """
    Graded order on monomials: degree first, then the mask as an integer.

    Positions are computed arithmetically, so packing a low-degree
    polynomial never needs the full 2^{2g} table.
    """

    def __init__(self, ctx: GenusContext):
        self.ctx = ctx
        n = ctx.dim
        self._offsets = [0]
        for d in range(n + 1):
            self._offsets.append(self._offsets[-1] + comb(n, d))

    def key(self, m: Monomial):
        return (m.bit_count(), m)

    def position(self, m: Monomial) -> int:
        subset = [i for i in range(self.ctx.dim) if (m >> i) & 1]
        return self._offsets[len(subset)] + subset_rank(subset)

    def monomial_at(self, pos: int) -> Monomial:
        degree = 0
        while self._offsets[degree + 1] <= pos:
            degree += 1
        rank = pos - self._offsets[degree]
        mask = 0
        for i in range(degree, 0, -1):
            c = i - 1
            while comb(c + 1, i) <= rank:
                c += 1
            rank -= comb(c, i)
            mask |= 1 << c
        return mask

    def pack(self, p: BoolPoly) -> int:
        packed = 0
        for m in p.monomials:
            packed ^= 1 << self.position(m)
        return packed

    def unpack(self, packed: int) -> BoolPoly:
        monomials = []
        pos = 0
        while packed:
            if packed & 1:
                monomials.append(self.monomial_at(pos))
            packed >>= 1
            pos += 1
        return BoolPoly(frozenset(monomials), self.ctx.g)

    def sorted_monomials(self, p: BoolPoly) -> List[Monomial]:
        return sorted(p.monomials, key=self.key)


@lru_cache(maxsize=None)
def monomial_order(g: int) -> MonomialOrder:
    return MonomialOrder(genus_context(g))


class ArfIdealBasis:
    """
    Echelon of the ideal (Arf) inside B(S), or a degree slice of it.

    Attributes:
        ctx (GenusContext): Ambient genus
        order (MonomialOrder): Order used for pivots
        max_degree (int): Largest pivot degree held
    """

    def __init__(self, ctx: GenusContext, echelon: GF2Echelon, max_degree: int):
        self.ctx = ctx
        self.order = monomial_order(ctx.g)
        self.echelon = echelon
        self.max_degree = max_degree

    @property
    def dim(self) -> int:
        return self.echelon.rank

    def truncated(self, k: int) -> "ArfIdealBasis":
        """Rows whose leading monomial has degree <= k."""
        sliced = GF2Echelon()
        for row in self.echelon.rows():
            lead = self.order.monomial_at(row.bit_length() - 1)
            if lead.bit_count() <= k:
                sliced.insert(row)
        return ArfIdealBasis(self.ctx, sliced, min(k, self.max_degree))

    def contains(self, p: BoolPoly) -> bool:
        return normal_form(p, self).is_zero()


@lru_cache(maxsize=None)
def _full_ideal(g: int) -> ArfIdealBasis:
    ctx = genus_context(g)
    order = monomial_order(g)
    arf_poly = arf(ctx)
    echelon = GF2Echelon()
    for m in range(1 << ctx.dim):
        echelon.insert(order.pack(mul(BoolPoly(frozenset({m}), g), arf_poly)))
    logger.info(f"Built Arf ideal for genus {g}: dimension {echelon.rank}")
    return ArfIdealBasis(ctx, echelon, ctx.dim)


def build_arf_ideal(ctx: GenusContext) -> ArfIdealBasis:
    """
    Echelonize every multiple m*Arf, m a square-free monomial.

    Args:
        ctx (GenusContext): Ambient genus, at most MAX_IDEAL_GENUS

    Returns:
        ArfIdealBasis: The whole ideal, dimension 2^{2g-1} - 2^{g-1}
    """
    if ctx.g > MAX_IDEAL_GENUS:
        raise HypothesisViolation(
            f"the full Arf ideal is only built up to genus {MAX_IDEAL_GENUS}, got {ctx.g}")
    return _full_ideal(ctx.g)


@lru_cache(maxsize=None)
def _quadratic_slice(g: int) -> ArfIdealBasis:
    ctx = genus_context(g)
    echelon = GF2Echelon()
    echelon.insert(monomial_order(g).pack(arf(ctx)))
    return ArfIdealBasis(ctx, echelon, 2)


def quadratic_arf_slice(ctx: GenusContext) -> ArfIdealBasis:
    """(Arf) intersected with B_2, which is the line spanned by Arf itself."""
    return _quadratic_slice(ctx.g)


def ideal_for(p: BoolPoly) -> ArfIdealBasis:
    """The cheapest ideal echelon that reduces p canonically."""
    if degree_at_most(p, 2):
        return _quadratic_slice(p.g)
    return build_arf_ideal(genus_context(p.g))


def normal_form(p: BoolPoly, ideal: Optional[ArfIdealBasis] = None) -> BoolPoly:
    """
    Canonical representative of p modulo the ideal.

    Leading monomials are cleared against the echelon from the top of the
    graded order down; with no ideal p is returned unchanged.

    Args:
        p (BoolPoly): Polynomial to reduce
        ideal (ArfIdealBasis, optional): Echelon to reduce against

    Returns:
        BoolPoly: nf(p), with nf(p) = nf(q) iff p - q lies in the ideal
    """
    if ideal is None:
        return p
    if ideal.ctx.g != p.g:
        raise ContextMismatch(f"genus {p.g} polynomial reduced by a genus {ideal.ctx.g} ideal")
    if p.degree > ideal.max_degree:
        raise HypothesisViolation(
            f"degree {p.degree} polynomial reduced by a degree-{ideal.max_degree} slice")
    order = ideal.order
    return order.unpack(ideal.echelon.reduce(order.pack(p)))


def quotient_dimension(ctx: GenusContext) -> int:
    """dim B'(S) = 2^{2g-1} + 2^{g-1}."""
    return (1 << (2 * ctx.g - 1)) + (1 << (ctx.g - 1))


def b2_prime_basis(ctx: GenusContext) -> List[Monomial]:
    """Monomials of degree <= 2 except the pivot a_g b_g of Arf, in graded order."""
    pivot = 0b11 << (2 * (ctx.g - 1))
    monomials = [m for d in range(3) for m in _masks_of_degree(ctx.dim, d)]
    return [m for m in monomials if m != pivot]


def _masks_of_degree(n: int, d: int) -> List[int]:
    if d == 0:
        return [0]
    if d == 1:
        return [1 << i for i in range(n)]
    return sorted((1 << i) | (1 << j) for j in range(n) for i in range(j))


def b2_prime_coordinates(p: BoolPoly) -> Dict[Monomial, int]:
    """Index of each monomial of nf(p) in b2_prime_basis."""
    ctx = genus_context(p.g)
    index = {m: i for i, m in enumerate(b2_prime_basis(ctx))}
    reduced = normal_form(p, quadratic_arf_slice(ctx))
    return {m: index[m] for m in reduced.monomials}


# ---------------------------------------------------------------------------
# Symplectic action
# ---------------------------------------------------------------------------

def sp_action(p: BoolPoly, m: np.ndarray) -> BoolPoly:
    """
    Substitute xbar_{e_i} -> bar(M e_i) and extend as a ring map.

    Args:
        p (BoolPoly): Polynomial to transform
        m (np.ndarray): Symplectic GF(2) matrix whose columns are images

    Returns:
        BoolPoly: The image of p

    Raises:
        NotSymplectic: if M does not preserve the form
    """
    ctx = genus_context(p.g)
    if not is_symplectic_matrix(m, ctx):
        raise NotSymplectic("substitution matrix does not preserve the intersection form")
    images = [bar_bits(col, ctx) for col in matrix_columns(m)]
    acc = zero(ctx)
    for mono in p.monomials:
        term = one(ctx)
        for i in range(ctx.dim):
            if (mono >> i) & 1:
                term = mul(term, images[i])
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# Text syntax
# ---------------------------------------------------------------------------

def format_monomial(m: Monomial, ctx: GenusContext) -> str:
    if m == 0:
        return "1"
    return "*".join(ctx.label(i) for i in range(ctx.dim) if (m >> i) & 1)


def format_poly(p: BoolPoly) -> str:
    """Terms by descending degree, then ascending variable mask; '0' for zero."""
    ctx = genus_context(p.g)
    terms = sorted(p.monomials, key=lambda m: (-m.bit_count(), m))
    return " + ".join(format_monomial(m, ctx) for m in terms) or "0"


def parse_poly(text: str, ctx: GenusContext) -> BoolPoly:
    """Parse 'a1*b1 + a2*b2 + 1'; repeated terms cancel."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    monomials = []
    for term in _TERM_SPLIT.split(text):
        if term == "0":
            continue
        if term == "1":
            monomials.append(0)
            continue
        mask = 0
        for factor in term.split("*"):
            mask |= 1 << ctx.index_of(factor)
        monomials.append(mask)
    return poly_from_monomials(monomials, ctx)


def sum_polys(polys: Sequence[BoolPoly], ctx: GenusContext) -> BoolPoly:
    acc = zero(ctx)
    for p in polys:
        acc = acc + p
    return acc

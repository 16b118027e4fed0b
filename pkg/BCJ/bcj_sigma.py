"""
BCJ Sigma Module

Birman-Craggs-Johnson values of separating twists, computed from the
homology splitting the twist curve induces, and the inverse map on genus-1
values.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Tuple, Union

from .boolean_algebra import (
    BoolPoly,
    bar_bits,
    format_poly,
    mul,
    normal_form,
    quadratic_arf_slice,
    zero,
)
from .errors import ContextMismatch, HypothesisViolation, NotGenus1Sigma
from .gf2_linear import (
    GenusContext,
    GF2Subspace,
    GF2SymplecticSubspace,
    direct_sum,
    form_bits,
    genus_context,
    iter_symplectic_pairs,
    span_bits,
    symplectic_basis_of,
)

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    """Closed surfaces reduce modulo Arf; one boundary component does not."""
    CLOSED = "closed"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class SigmaValue:
    """A sigma value in normal form, of degree at most 2."""
    poly: BoolPoly
    mode: Mode = Mode.CLOSED

    @property
    def g(self) -> int:
        return self.poly.g

    def __add__(self, other: "SigmaValue") -> "SigmaValue":
        if other.mode != self.mode:
            raise ContextMismatch(f"cannot add {self.mode.value} and {other.mode.value} sigma values")
        return SigmaValue(self.poly + other.poly, self.mode)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self) -> str:
        return format_poly(self.poly)


def _reduce(poly: BoolPoly, mode: Mode) -> BoolPoly:
    if mode == Mode.CLOSED:
        return normal_form(poly, quadratic_arf_slice(genus_context(poly.g)))
    return poly


def sigma_of_pairs(pairs: Iterable[Tuple[int, int]], ctx: GenusContext,
                   mode: Mode = Mode.CLOSED) -> SigmaValue:
    """Sum of xbar*ybar over raw bit-vector pairs, reduced for the mode."""
    acc = zero(ctx)
    for x, y in pairs:
        acc = acc + mul(bar_bits(x, ctx), bar_bits(y, ctx))
    return SigmaValue(_reduce(acc, mode), mode)


def sigma_of_subspace(v: Union[GF2Subspace, GF2SymplecticSubspace], ctx: GenusContext,
                      mode: Mode = Mode.CLOSED) -> SigmaValue:
    """
    Sigma of a separating twist whose curve splits off V.

    Args:
        v: Symplectic subspace; a plain subspace gets its canonical basis
        ctx (GenusContext): Ambient genus
        mode (Mode): CLOSED reduces modulo Arf

    Returns:
        SigmaValue: sum_i xbar_i ybar_i over a symplectic basis of V

    Raises:
        NotSymplectic: if V is degenerate
    """
    if v.g != ctx.g:
        raise ContextMismatch(f"genus {v.g} subspace in a genus {ctx.g} algebra")
    if isinstance(v, GF2Subspace):
        v = symplectic_basis_of(v, ctx)
    return sigma_of_pairs(v.sbasis, ctx, mode)


def sigma_of_int_subgroup(u, mode: Mode = Mode.CLOSED) -> SigmaValue:
    """Sigma depends only on the mod 2 reduction of an integral subgroup."""
    reduced = u.reduce_mod2()
    return sigma_of_subspace(reduced, genus_context(reduced.g), mode)


def sigma_sum(values: Sequence[SigmaValue]) -> SigmaValue:
    """GF(2) sum, the sigma value of a product of twists."""
    if not values:
        raise HypothesisViolation("sigma_sum of an empty sequence")
    acc = values[0]
    for value in values[1:]:
        acc = acc + value
    return acc


def recover_genus1_subspace(s: SigmaValue, ctx: GenusContext) -> GF2SymplecticSubspace:
    """
    The unique 2-dimensional symplectic V with sigma(V) = s.

    Exhaustive over symplectic pairs with early exit.

    Raises:
        NotGenus1Sigma: if no 2-dimensional subspace has this value
    """
    if s.g != ctx.g:
        raise ContextMismatch(f"genus {s.g} sigma value searched in genus {ctx.g}")
    target = s.poly
    for x, y in iter_symplectic_pairs(ctx):
        candidate = mul(bar_bits(x, ctx), bar_bits(y, ctx))
        if _reduce(candidate, s.mode) == target:
            return symplectic_basis_of(span_bits((x, y), ctx), ctx)
    raise NotGenus1Sigma(f"{s} is not the sigma value of a genus-1 separating twist")


def pants_relation_holds(v1: GF2SymplecticSubspace, v2: GF2SymplecticSubspace,
                         v3: GF2SymplecticSubspace, ctx: GenusContext) -> bool:
    """
    Check sigma(V1) + sigma(V3) = sigma(V2) for a splitting H = V1 + V2 + V3.

    Raises:
        HypothesisViolation: if the three subspaces are not an orthogonal splitting
    """
    parts = [v1, v2, v3]
    for i, p in enumerate(parts):
        for q in parts[i + 1:]:
            if any(form_bits(r, t, ctx) for r in p.space.rows for t in q.space.rows):
                raise HypothesisViolation("pants summands are not pairwise orthogonal")
    if direct_sum([p.space for p in parts], ctx).dim != ctx.dim:
        raise HypothesisViolation("pants summands do not span H_1")
    lhs = sigma_of_subspace(v1, ctx) + sigma_of_subspace(v3, ctx)
    return lhs == sigma_of_subspace(v2, ctx)


"""
Integral Symplectic Lattice Module

Integer vectors in H_1(S_g; Z) = Z^{2g} with the standard symplectic form,
unimodular symplectic subgroups, Hermite normal forms, basis extension,
and the explicit integer constructions used to show that two genus-1
abelian cycles with matching sigma data coincide.
"""

import logging
import re
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .config import MIN_EQUALITY_GENUS
from .errors import (
    BadParityPattern,
    DimensionMismatch,
    FrameInvalid,
    HypothesisViolation,
    NotCoprime,
    NotInSpan,
    NotUnimodular,
    ParseError,
)
from .gf2_linear import GenusContext, GF2SymplecticSubspace, genus_context, span_bits

logger = logging.getLogger(__name__)

_INT_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([ab]\d+)")


@dataclass(frozen=True)
class IntVector:
    """An integral homology class, coordinates in the interleaved basis."""
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) % 2:
            raise DimensionMismatch(f"integer vector of odd length {len(self.coords)}")

    @property
    def g(self) -> int:
        return len(self.coords) // 2

    def _check(self, other: "IntVector"):
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(
                f"vectors of length {len(self.coords)} and {len(other.coords)} combined")

    def __add__(self, other: "IntVector") -> "IntVector":
        self._check(other)
        return IntVector(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "IntVector") -> "IntVector":
        self._check(other)
        return IntVector(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "IntVector":
        return IntVector(tuple(-x for x in self.coords))

    def __rmul__(self, k: int) -> "IntVector":
        return IntVector(tuple(k * x for x in self.coords))

    def exact_div(self, k: int) -> "IntVector":
        if any(x % k for x in self.coords):
            raise NotInSpan(f"{format_int_vector(self)} is not divisible by {k}")
        return IntVector(tuple(x // k for x in self.coords))

    def content(self) -> int:
        """gcd of the coordinates, 0 for the zero vector."""
        acc = 0
        for x in self.coords:
            acc = gcd(acc, x)
        return acc

    def is_zero(self) -> bool:
        return not any(self.coords)

    def reduce_mod2(self) -> int:
        """Bit vector of the mod 2 reduction."""
        bits = 0
        for i, x in enumerate(self.coords):
            if x & 1:
                bits |= 1 << i
        return bits

    def __str__(self) -> str:
        return format_int_vector(self)


def zero_vector(g: int) -> IntVector:
    return IntVector((0,) * (2 * g))


def unit_vector(index: int, g: int) -> IntVector:
    coords = [0] * (2 * g)
    coords[index] = 1
    return IntVector(tuple(coords))


def std_a(i: int, g: int) -> IntVector:
    return unit_vector(2 * (i - 1), g)


def std_b(i: int, g: int) -> IntVector:
    return unit_vector(2 * (i - 1) + 1, g)


def int_form(x: IntVector, y: IntVector) -> int:
    """
    Algebraic intersection number sum_i (x[a_i] y[b_i] - x[b_i] y[a_i]).

    Raises:
        DimensionMismatch: if the vectors have different lengths
    """
    if len(x.coords) != len(y.coords):
        raise DimensionMismatch(
            f"intersection of vectors of length {len(x.coords)} and {len(y.coords)}")
    c, d = x.coords, y.coords
    return sum(c[i] * d[i + 1] - c[i + 1] * d[i] for i in range(0, len(c), 2))


def linear_combination(coeffs: Sequence[int], vectors: Sequence[IntVector]) -> IntVector:
    if not vectors:
        raise DimensionMismatch("linear combination of no vectors")
    acc = zero_vector(vectors[0].g)
    for k, v in zip(coeffs, vectors):
        if k:
            acc = acc + k * v
    return acc


# ---------------------------------------------------------------------------
# Euclid
# ---------------------------------------------------------------------------

def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended gcd, normalized to a nonnegative gcd.

    Returns:
        tuple: (d, s, t) with s*a + t*b = d = gcd(a, b)
    """
    s, next_s = 1, 0
    t, next_t = 0, 1
    d, next_d = a, b
    while next_d:
        q = d // next_d
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        d, next_d = next_d, d - q * next_d
    if d < 0:
        d, s, t = -d, -s, -t
    return d, s, t


def solve_parity_bezout(alpha1: int, alpha2: int, alpha3: int) -> Tuple[int, int, int]:
    """
    Integers beta with (2a1+1)(2b1+1) + 4a2b2 + 4a3b3 = 1.

    Args:
        alpha1, alpha2, alpha3 (int): With gcd(2 alpha1 + 1, alpha2, alpha3) = 1

    Returns:
        tuple: (beta1, beta2, beta3)

    Raises:
        NotCoprime: if the gcd condition fails
    """
    n = 2 * alpha1 + 1
    d1, s1, t1 = xgcd(n, 4 * alpha2)
    d, s2, t2 = xgcd(d1, 4 * alpha3)
    if d != 1:
        raise NotCoprime(f"gcd(2*{alpha1}+1, 4*{alpha2}, 4*{alpha3}) = {d}")
    x = s2 * s1
    beta2 = s2 * t1
    beta3 = t2
    # x*n = 1 mod 4 forces x odd
    return (x - 1) // 2, beta2, beta3


def primitive_odd_rep(coeffs: Sequence[int]) -> Tuple[int, int, int]:
    """
    Divide an (odd, even, even) coefficient triple by its content.

    Args:
        coeffs (Sequence[int]): Coefficients of w on the frame (a2, b2, a3)

    Returns:
        tuple: (2 alpha1 + 1, 2 alpha2, 2 alpha3), jointly coprime

    Raises:
        BadParityPattern: if the first entry is even or another entry is odd
    """
    c1, c2, c3 = coeffs
    if c1 % 2 == 0 or c2 % 2 or c3 % 2:
        raise BadParityPattern(f"coefficients {tuple(coeffs)} are not (odd, even, even)")
    d = gcd(gcd(c1, c2), c3)
    return c1 // d, c2 // d, c3 // d


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

def lattice_basis(vectors: Iterable[IntVector]) -> Tuple[Tuple[int, ...], ...]:
    """
    Hermite normal form of the lattice spanned by vectors.

    Rows are reduced by unimodular gcd operations column by column; pivots
    are positive and entries above each pivot lie in [0, pivot). The result
    is a canonical key for the lattice.
    """
    rows = [list(v.coords) for v in vectors if not v.is_zero()]
    if not rows:
        return ()
    n = len(rows[0])
    r = 0
    for c in range(n):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(r + 1, len(rows)):
            b = rows[i][c]
            if not b:
                continue
            a = rows[r][c]
            d, s, t = xgcd(a, b)
            ad, bd = a // d, b // d
            top, low = rows[r], rows[i]
            rows[r] = [s * x + t * y for x, y in zip(top, low)]
            rows[i] = [ad * y - bd * x for x, y in zip(top, low)]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        pivot = rows[r][c]
        for i in range(r):
            q = rows[i][c] // pivot
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r])


def lattice_vectors(vectors: Iterable[IntVector]) -> List[IntVector]:
    return [IntVector(row) for row in lattice_basis(vectors)]


# ---------------------------------------------------------------------------
# Symplectic subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntSymplecticPair:
    """A pair (x, y) with x.y = 1."""
    x: IntVector
    y: IntVector

    def __post_init__(self):
        value = int_form(self.x, self.y)
        if value != 1:
            raise NotUnimodular(f"({self.x}, {self.y}) pair to {value}, expected 1")

    def vectors(self) -> List[IntVector]:
        return [self.x, self.y]

    def reduce_mod2(self) -> Tuple[int, int]:
        return self.x.reduce_mod2(), self.y.reduce_mod2()


@dataclass(frozen=True)
class IntSymplecticSubgroup:
    """
    A unimodular subgroup given by pairwise orthogonal symplectic pairs.

    Equality of subgroups is by key(), not by the chosen basis.
    """
    pairs: Tuple[IntSymplecticPair, ...]
    g: int

    def __post_init__(self):
        for p in self.pairs:
            if p.x.g != self.g:
                raise DimensionMismatch(f"genus {p.x.g} pair in a genus {self.g} subgroup")
        for i, p in enumerate(self.pairs):
            for q in self.pairs[i + 1:]:
                if any(int_form(u, v) for u in p.vectors() for v in q.vectors()):
                    raise NotUnimodular("basis pairs of a subgroup are not orthogonal")

    @property
    def rank(self) -> int:
        return 2 * len(self.pairs)

    def vectors(self) -> List[IntVector]:
        return [v for p in self.pairs for v in p.vectors()]

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return lattice_basis(self.vectors())

    def same_subgroup(self, other: "IntSymplecticSubgroup") -> bool:
        return self.key() == other.key()

    def project(self, v: IntVector) -> IntVector:
        """Orthogonal projection onto the subgroup: sum (v.y)x - (v.x)y."""
        acc = zero_vector(self.g)
        for p in self.pairs:
            acc = acc + int_form(v, p.y) * p.x - int_form(v, p.x) * p.y
        return acc

    def complement_part(self, v: IntVector) -> IntVector:
        return v - self.project(v)

    def contains(self, v: IntVector) -> bool:
        return self.complement_part(v).is_zero()

    def contains_subgroup(self, other: "IntSymplecticSubgroup") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def is_orthogonal_to(self, other: "IntSymplecticSubgroup") -> bool:
        return not any(int_form(u, v) for u in self.vectors() for v in other.vectors())

    def reduce_mod2(self) -> GF2SymplecticSubspace:
        ctx = genus_context(self.g)
        pairs = tuple(p.reduce_mod2() for p in self.pairs)
        return GF2SymplecticSubspace(span_bits((v for p in pairs for v in p), ctx), pairs)

    def __str__(self) -> str:
        return "; ".join(f"{p.x}, {p.y}" for p in self.pairs) or "0"


def subgroup(pairs: Sequence[Tuple[IntVector, IntVector]], g: int) -> IntSymplecticSubgroup:
    return IntSymplecticSubgroup(tuple(IntSymplecticPair(x, y) for x, y in pairs), g)


def standard_subgroup(indices: Iterable[int], g: int) -> IntSymplecticSubgroup:
    """<a_i, b_i : i in indices>."""
    return subgroup([(std_a(i, g), std_b(i, g)) for i in indices], g)


def dual_partner(v: IntVector, lattice: Sequence[IntVector]) -> IntVector:
    """
    A vector w in the lattice with v.w = 1.

    Pairings of v with the lattice basis are folded by extended gcd.

    Raises:
        NotUnimodular: if the pairings are not jointly coprime
    """
    d, w = 0, zero_vector(v.g)
    for u in lattice:
        p = int_form(v, u)
        if not p:
            continue
        d, s, t = xgcd(d, p)
        w = s * w + t * u
    if d != 1:
        raise NotUnimodular(f"{v} pairs with the lattice to multiples of {d}")
    return w


def _symplectic_gram_schmidt(basis: List[IntVector]) -> List[IntSymplecticPair]:
    pairs = []
    while basis:
        e = basis[0]
        f = dual_partner(e, basis[1:])
        pairs.append(IntSymplecticPair(e, f))
        projected = [u - int_form(u, f) * e + int_form(u, e) * f for u in basis[1:]]
        basis = lattice_vectors(projected)
    return pairs


def complement_lattice(u: IntSymplecticSubgroup) -> List[IntVector]:
    """HNF basis of the orthogonal complement lattice of a unimodular subgroup."""
    return lattice_vectors(u.complement_part(unit_vector(i, u.g)) for i in range(2 * u.g))


def extend_to_symplectic_basis(partial: IntSymplecticSubgroup,
                               ctx: Optional[GenusContext] = None) -> IntSymplecticSubgroup:
    """
    Extend pairwise orthogonal pairs to a symplectic basis of Z^{2g}.

    The complement lattice is put in Hermite normal form; its first row is
    paired with a dual partner, the rest are projected off that pair, and
    the process repeats.

    Args:
        partial (IntSymplecticSubgroup): Pairs to keep, in order
        ctx (GenusContext, optional): Ambient genus, defaults to partial.g

    Returns:
        IntSymplecticSubgroup: g pairs, starting with partial's pairs

    Raises:
        NotUnimodular: if the complement is not unimodular
    """
    g = ctx.g if ctx is not None else partial.g
    if g != partial.g:
        raise DimensionMismatch(f"genus {partial.g} subgroup extended in genus {g}")
    extra = _symplectic_gram_schmidt(complement_lattice(partial))
    full = IntSymplecticSubgroup(partial.pairs + tuple(extra), g)
    if full.rank != 2 * g:
        raise NotUnimodular(f"extension reached rank {full.rank} of {2 * g}")
    return full


def orthogonal_complement_basis(u: IntSymplecticSubgroup,
                                ctx: Optional[GenusContext] = None) -> IntSymplecticSubgroup:
    """Symplectic basis of the complement of U; ranks add to 2g."""
    full = extend_to_symplectic_basis(u, ctx)
    return IntSymplecticSubgroup(full.pairs[len(u.pairs):], u.g)


def split_off(v: IntVector, pairs: Sequence[IntSymplecticPair]) -> Tuple[List[int], IntVector]:
    """Coefficients of v on the pairs (x1, y1, x2, ...) and the residual."""
    coeffs = []
    residual = v
    for p in pairs:
        cx, cy = int_form(v, p.y), -int_form(v, p.x)
        coeffs.extend([cx, cy])
        residual = residual - cx * p.x - cy * p.y
    return coeffs, residual


def express(v: IntVector, basis: Sequence[IntVector]) -> List[int]:
    """
    Coefficients of v on a symplectic list (x1, y1, x2, y2, ...).

    Raises:
        NotInSpan: if v has a component outside the span
    """
    if len(basis) % 2:
        raise DimensionMismatch("a symplectic basis list has even length")
    pairs = [IntSymplecticPair(basis[i], basis[i + 1]) for i in range(0, len(basis), 2)]
    coeffs, residual = split_off(v, pairs)
    if not residual.is_zero():
        raise NotInSpan(f"{v} leaves residual {residual} outside the span")
    return coeffs


def _sl2_lifts() -> Dict[Tuple[int, int, int, int], Tuple[int, int, int, int]]:
    """SL(2, Z) lifts of the six elements of GL(2, Z/2), entries in {-1, 0, 1}."""
    lifts = {}
    for m in product((0, 1, -1), repeat=4):
        p, q, r, s = m
        if p * s - q * r == 1:
            lifts.setdefault(tuple(x & 1 for x in m), m)
    return lifts


_SL2_LIFTS = _sl2_lifts()


def adapt_basis_mod2(pair: IntSymplecticPair, x_bar: int, y_bar: int) -> IntSymplecticPair:
    """
    Re-choose the basis of <x, y> so that it reduces to (x_bar, y_bar).

    Args:
        pair (IntSymplecticPair): Basis of a rank-2 subgroup
        x_bar, y_bar (int): Target reductions, spanning the reduction of <x, y>

    Returns:
        IntSymplecticPair: (P x + R y, Q x + S y) with PS - QR = 1

    Raises:
        NotInSpan: if a target is not in the reduction of the subgroup
    """
    xb, yb = pair.reduce_mod2()

    def solve(target: int) -> Tuple[int, int]:
        for c1, c2 in ((1, 0), (0, 1), (1, 1)):
            if (xb if c1 else 0) ^ (yb if c2 else 0) == target:
                return c1, c2
        raise NotInSpan(f"target {target:#x} is not in the reduction of ({pair.x}, {pair.y})")

    p, r = solve(x_bar)
    q, s = solve(y_bar)
    lift = _SL2_LIFTS.get((p, q, r, s))
    if lift is None:
        raise NotUnimodular(f"targets {x_bar:#x}, {y_bar:#x} do not pair to 1 mod 2")
    lp, lq, lr, ls = lift
    return IntSymplecticPair(lp * pair.x + lr * pair.y, lq * pair.x + ls * pair.y)


# ---------------------------------------------------------------------------
# Symplectic maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntSymplecticMap:
    """A linear map of Z^{2g} given by the images of the standard basis."""
    columns: Tuple[IntVector, ...]

    @property
    def g(self) -> int:
        return len(self.columns) // 2

    def __call__(self, v: IntVector) -> IntVector:
        return linear_combination(v.coords, self.columns)

    def compose(self, other: "IntSymplecticMap") -> "IntSymplecticMap":
        """self after other."""
        return IntSymplecticMap(tuple(self(c) for c in other.columns))

    def apply_pair(self, p: IntSymplecticPair) -> IntSymplecticPair:
        return IntSymplecticPair(self(p.x), self(p.y))

    def apply_subgroup(self, u: IntSymplecticSubgroup) -> IntSymplecticSubgroup:
        return IntSymplecticSubgroup(tuple(self.apply_pair(p) for p in u.pairs), u.g)


def identity_map(g: int) -> IntSymplecticMap:
    return IntSymplecticMap(tuple(unit_vector(i, g) for i in range(2 * g)))


def integral_transvection(v: IntVector, k: int) -> IntSymplecticMap:
    """x -> x + k (x.v) v; for even k this is the identity mod 2."""
    g = v.g
    return IntSymplecticMap(tuple(
        e + (k * int_form(e, v)) * v for e in (unit_vector(i, g) for i in range(2 * g))))


def _random_small_vector(g: int, rng) -> IntVector:
    while True:
        v = IntVector(tuple(rng.choice((-1, 0, 0, 1)) for _ in range(2 * g)))
        if not v.is_zero():
            return v


def random_symplectic_map(ctx: GenusContext, rng, steps: int = 8, k_choices=(-1, 1)) -> IntSymplecticMap:
    m = identity_map(ctx.g)
    for _ in range(steps):
        m = integral_transvection(_random_small_vector(ctx.g, rng), rng.choice(k_choices)).compose(m)
    return m


def random_level2_transform(ctx: GenusContext, rng, steps: int = 4) -> IntSymplecticMap:
    """Random product of squared transvections, congruent to the identity mod 2."""
    return random_symplectic_map(ctx, rng, steps, k_choices=(-2, 2))


def random_symplectic_basis(ctx: GenusContext, rng, steps: int = 8) -> IntSymplecticSubgroup:
    m = random_symplectic_map(ctx, rng, steps)
    return m.apply_subgroup(standard_subgroup(range(1, ctx.g + 1), ctx.g))


# ---------------------------------------------------------------------------
# Frame constructions for the genus-1 equality argument
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdaptedPair:
    """Output of build_adapted_U2prime together with the frame it used."""
    u2_prime: IntSymplecticPair
    a3: IntVector
    b3: IntVector
    alpha: Tuple[int, int, int]
    beta: Tuple[int, int, int]


def build_adapted_U2prime(u1: IntSymplecticPair, u2: IntSymplecticPair, x2: IntVector,
                          ctx: GenusContext) -> AdaptedPair:
    """
    Replace U2 = <a2, b2> by a pair whose first vector is the primitive part
    of x2 inside <a2, b2, a3>.

    x2 is split as an even combination of a1, b1, plus
    w = (2z2+1) a2 + 2h2 b2 + 2z3 a3 with a3 primitive in <a1,b1,a2,b2>-perp.
    Then a2' = w / content(w) and b2' = (2b1+1) b2 - 2b2 a2 + 2b3 b3 from the
    parity Bezout identity.

    Args:
        u1 (IntSymplecticPair): (a1, b1)
        u2 (IntSymplecticPair): (a2, b2), orthogonal to u1
        x2 (IntVector): Vector reducing to the reduction of a2
        ctx (GenusContext): Ambient genus, at least 4

    Returns:
        AdaptedPair: (a2', b2') with a2'.b2' = 1, orthogonal to u1, same reductions
    """
    if ctx.g < MIN_EQUALITY_GENUS:
        raise HypothesisViolation(f"adapting U2 needs genus at least {MIN_EQUALITY_GENUS}, got {ctx.g}")
    if x2.reduce_mod2() != u2.x.reduce_mod2():
        raise HypothesisViolation("x2 does not reduce to the reduction of a2")
    frame = IntSymplecticSubgroup((u1, u2), ctx.g)
    a1, b1, a2, b2 = u1.x, u1.y, u2.x, u2.y
    perp_part = frame.complement_part(x2)
    complement = complement_lattice(frame)
    if perp_part.is_zero():
        a3 = complement[0]
        zeta3 = 0
    else:
        half = perp_part.exact_div(2)
        zeta3 = half.content()
        a3 = half.exact_div(zeta3)
    b3 = dual_partner(a3, complement)

    c1, c2, c3 = primitive_odd_rep((int_form(x2, b2), -int_form(x2, a2), 2 * zeta3))
    alpha = ((c1 - 1) // 2, c2 // 2, c3 // 2)
    beta = solve_parity_bezout(*alpha)
    a2_prime = c1 * a2 + c2 * b2 + c3 * a3
    b2_prime = (2 * beta[0] + 1) * b2 - (2 * beta[1]) * a2 + (2 * beta[2]) * b3
    pair = IntSymplecticPair(a2_prime, b2_prime)
    logger.debug(f"Adapted U2: alpha={alpha} beta={beta}")
    return AdaptedPair(pair, a3, b3, alpha, beta)


@dataclass(frozen=True)
class FrameCoefficients:
    """
    Halved coefficients of x2 and y2 on the frame (a1, b1, a2', b2').

    x2 = 2 zeta1 a1 + 2 eta1 b1 + (2 zeta2p + 1) a2'
    y2 = 2 lambda1 a1 + 2 mu1 b1 + 2 lambda2p a2' + (2 mu2p + 1) b2' + (even part)
    """
    zeta1: int = 0
    eta1: int = 0
    zeta2p: int = 0
    lambda1: int = 0
    mu1: int = 0
    lambda2p: int = 0
    mu2p: int = 0


@dataclass(frozen=True)
class V1Frame:
    a1: IntVector
    b1: IntVector
    a2p: IntVector
    b2p: IntVector
    a4p: IntVector
    b4p: IntVector

    def pairs(self) -> List[Tuple[IntVector, IntVector]]:
        return [(self.a1, self.b1), (self.a2p, self.b2p), (self.a4p, self.b4p)]


def _check_frame(frame: V1Frame):
    pairs = frame.pairs()
    for i, (x, y) in enumerate(pairs):
        if int_form(x, y) != 1:
            raise FrameInvalid(f"frame pair {i + 1} pairs to {int_form(x, y)}")
        for u, w in pairs[i + 1:]:
            if any(int_form(p, q) for p in (x, y) for q in (u, w)):
                raise FrameInvalid(f"frame pair {i + 1} is not orthogonal to a later pair")


def build_V1prime(coeffs: FrameCoefficients, frame: V1Frame) -> IntSymplecticPair:
    """
    A symplectic pair orthogonal to <x2, y2> that reduces to (a1, b1).

    With P = (2 zeta2p + 1)(2 mu2p + 1):
        x1' = P a1 + (2mu2p+1) 2eta1 b2' + (2eta1 2lambda2p - (2zeta2p+1) 2mu1) a2' + 2 a4'
        y1' = P b1 - (2mu2p+1) 2zeta1 b2' + (-2zeta1 2lambda2p + (2zeta2p+1) 2lambda1) a2' + 2 nu b4'
    where nu = (1 - r) / 4 and r = x1'.y1' before the nu term. r = P^2 mod 4
    and P is odd, so nu is an integer.

    Raises:
        FrameInvalid: if the frame pairings are wrong
    """
    _check_frame(frame)
    c = coeffs
    odd_x = 2 * c.zeta2p + 1
    odd_y = 2 * c.mu2p + 1
    p = odd_x * odd_y
    x1 = (p * frame.a1
          + (odd_y * 2 * c.eta1) * frame.b2p
          + (2 * c.eta1 * 2 * c.lambda2p - odd_x * 2 * c.mu1) * frame.a2p
          + 2 * frame.a4p)
    y1_base = (p * frame.b1
               - (odd_y * 2 * c.zeta1) * frame.b2p
               + (-2 * c.zeta1 * 2 * c.lambda2p + odd_x * 2 * c.lambda1) * frame.a2p)
    r = int_form(x1, y1_base)
    if (1 - r) % 4:
        raise FrameInvalid(f"form value {r} is not 1 mod 4")
    nu = (1 - r) // 4
    return IntSymplecticPair(x1, y1_base + (2 * nu) * frame.b4p)


# ---------------------------------------------------------------------------
# Text syntax
# ---------------------------------------------------------------------------

def format_int_vector(v: IntVector) -> str:
    """'2a1 - b3 + 4b4'; '0' for the zero vector."""
    ctx = genus_context(v.g)
    out = ""
    for i, k in enumerate(v.coords):
        if not k:
            continue
        mag = "" if abs(k) == 1 else str(abs(k))
        term = f"{mag}{ctx.label(i)}"
        if not out:
            out = term if k > 0 else f"-{term}"
        else:
            out += f" + {term}" if k > 0 else f" - {term}"
    return out or "0"


def parse_int_vector(text: str, ctx: GenusContext) -> IntVector:
    """Parse '2a1 - b3 + 4b4' (repeated labels add up; '0' is zero)."""
    stripped = text.replace(" ", "")
    if stripped == "0":
        return zero_vector(ctx.g)
    coords = [0] * ctx.dim
    pos = 0
    while pos < len(stripped):
        match = _INT_TERM_RE.match(stripped, pos)
        if not match or match.end() == pos:
            raise ParseError(f"cannot parse integer vector {text!r} at {stripped[pos:]!r}")
        sign, mag, label = match.groups()
        if pos > 0 and not sign:
            raise ParseError(f"missing operator before {label!r} in {text!r}")
        k = int(mag) if mag else 1
        coords[ctx.index_of(label)] += -k if sign == "-" else k
        pos = match.end()
    if pos == 0:
        raise ParseError("empty integer vector")
    return IntVector(tuple(coords))


def parse_int_subgroup(text: str, ctx: GenusContext) -> IntSymplecticSubgroup:
    """Parse 'x1, y1; x2, y2' into a subgroup."""
    pairs = []
    for chunk in text.split(";"):
        parts = [t for t in chunk.split(",") if t.strip()]
        if len(parts) != 2:
            raise ParseError(f"expected 'x, y' in {chunk!r}")
        pairs.append((parse_int_vector(parts[0], ctx), parse_int_vector(parts[1], ctx)))
    return subgroup(pairs, ctx.g)

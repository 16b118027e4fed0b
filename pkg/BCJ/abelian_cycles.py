"""
Abelian Cycles Module

Abelian cycles of commuting separating twists, held through the homology
splittings their curves induce. Provides the sigma_k invariant, the
relation criterion for sums A(V_i, U), and an equality decision for
genus-1 pairs that emits a replayable certificate.
"""

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .bcj_sigma import Mode, SigmaValue, sigma_of_int_subgroup
from .boolean_algebra import b2_prime_basis
from .config import MIN_EQUALITY_GENUS, MIN_RELATION_RANK
from .errors import HypothesisViolation, ParseError, TorelliError
from .gf2_linear import GenusContext, WedgeElement, genus_context, wedge
from .int_symplectic import (
    FrameCoefficients,
    IntSymplecticPair,
    IntSymplecticSubgroup,
    IntVector,
    V1Frame,
    adapt_basis_mod2,
    build_adapted_U2prime,
    build_V1prime,
    complement_lattice,
    dual_partner,
    orthogonal_complement_basis,
    random_level2_transform,
    random_symplectic_map,
    split_off,
    standard_subgroup,
    subgroup,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleSystem:
    """
    Splitting data of an abelian cycle A(U_1, ..., U_k).

    Parts are pairwise orthogonal symplectic subgroups. Part order is
    immaterial for every invariant, so systems compare as unordered sets.
    """
    parts: Tuple[IntSymplecticSubgroup, ...]
    g: int

    def __post_init__(self):
        if not self.parts:
            raise HypothesisViolation("a cycle system needs at least one part")
        for i, p in enumerate(self.parts):
            if p.g != self.g:
                raise HypothesisViolation(f"genus {p.g} part in a genus {self.g} system")
            for q in self.parts[i + 1:]:
                if not p.is_orthogonal_to(q):
                    raise HypothesisViolation(f"parts <{p}> and <{q}> are not orthogonal")

    @property
    def k(self) -> int:
        return len(self.parts)

    def keys(self) -> Tuple:
        return tuple(sorted(p.key() for p in self.parts))

    def same_system(self, other: "CycleSystem") -> bool:
        return self.g == other.g and self.keys() == other.keys()

    def sigmas(self) -> List[SigmaValue]:
        return [sigma_of_int_subgroup(p) for p in self.parts]

    def __str__(self) -> str:
        return " | ".join(str(p) for p in self.parts)


def cycle_system(parts: Sequence[IntSymplecticSubgroup]) -> CycleSystem:
    return CycleSystem(tuple(parts), parts[0].g)


@dataclass(frozen=True)
class SigmaWedge:
    """sigma_k of a cycle, coordinatized over the monomial basis of B_2'."""
    wedge: WedgeElement

    @property
    def k(self) -> int:
        return self.wedge.k

    def is_zero(self) -> bool:
        return self.wedge.is_zero()

    def __add__(self, other: "SigmaWedge") -> "SigmaWedge":
        return SigmaWedge(self.wedge + other.wedge)


def sigma_coordinates(value: SigmaValue) -> int:
    """A closed-mode sigma value as a bit vector over b2_prime_basis."""
    if value.mode != Mode.CLOSED:
        raise HypothesisViolation("sigma_k is defined on closed-surface sigma values")
    index = {m: i for i, m in enumerate(b2_prime_basis(genus_context(value.g)))}
    bits = 0
    for m in value.poly.monomials:
        bits |= 1 << index[m]
    return bits


def b2_prime_dim(g: int) -> int:
    return 2 * g * g + g


def sigma_wedge_of_values(values: Sequence[SigmaValue], g: int) -> SigmaWedge:
    return SigmaWedge(wedge([sigma_coordinates(v) for v in values], b2_prime_dim(g)))


def sigma_k(sys: CycleSystem) -> SigmaWedge:
    """
    Wedge of the sigma values of the parts in the k-th exterior power of B_2'.

    Args:
        sys (CycleSystem): Splitting data

    Returns:
        SigmaWedge: sigma(U_1) ^ ... ^ sigma(U_k)
    """
    return sigma_wedge_of_values(sys.sigmas(), sys.g)


def relation_holds(u: IntSymplecticSubgroup, vs: Sequence[IntSymplecticSubgroup],
                   ctx: GenusContext) -> bool:
    """
    Whether sum_i A(V_i, U) = 0.

    All V_i must lie in U with rank U >= 6, or all in U-perp with
    rank U-perp >= 6. The sum vanishes exactly when sum_i sigma(V_i) is 0
    or sigma(U).

    Raises:
        HypothesisViolation: on genus below 4, mixed containment or low rank
    """
    if ctx.g < MIN_EQUALITY_GENUS:
        raise HypothesisViolation(f"the relation criterion needs genus >= {MIN_EQUALITY_GENUS}")
    if not vs:
        return True
    inside = all(u.contains_subgroup(v) for v in vs)
    outside = all(u.is_orthogonal_to(v) for v in vs)
    if inside:
        if u.rank < MIN_RELATION_RANK:
            raise HypothesisViolation(f"U has rank {u.rank} < {MIN_RELATION_RANK}")
    elif outside:
        if 2 * ctx.g - u.rank < MIN_RELATION_RANK:
            raise HypothesisViolation(
                f"U-perp has rank {2 * ctx.g - u.rank} < {MIN_RELATION_RANK}")
    else:
        raise HypothesisViolation("the V_i are neither all inside U nor all inside U-perp")
    total = sigma_of_int_subgroup(vs[0])
    for v in vs[1:]:
        total = total + sigma_of_int_subgroup(v)
    return total.is_zero() or total == sigma_of_int_subgroup(u)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

class Rule(str, Enum):
    KEY_RELATION = "KeyRelation"
    GEN3_SUBSURFACE = "Gen3Subsurface"


@dataclass(frozen=True)
class Step:
    rule: Rule
    lhs: CycleSystem
    rhs: CycleSystem
    witnesses: Dict[str, IntVector] = field(default_factory=dict)


@dataclass(frozen=True)
class Certificate:
    """A chain of rule applications from lhs to rhs."""
    g: int
    lhs: CycleSystem
    rhs: CycleSystem
    steps: Tuple[Step, ...] = ()


class VerdictKind(str, Enum):
    EQUAL = "Equal"
    DISTINCT_BY_SIGMA = "DistinctBySigma"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    certificate: Optional[Certificate] = None


def _subgroup_witnesses(prefix: str, u: IntSymplecticSubgroup) -> Dict[str, IntVector]:
    out = {}
    for i, p in enumerate(u.pairs, start=1):
        out[f"{prefix}.x{i}"] = p.x
        out[f"{prefix}.y{i}"] = p.y
    return out


def _subgroup_from_witnesses(prefix: str, witnesses: Dict[str, IntVector], g: int) -> IntSymplecticSubgroup:
    pairs = []
    i = 1
    while f"{prefix}.x{i}" in witnesses:
        y = witnesses.get(f"{prefix}.y{i}")
        if y is None:
            raise ParseError(f"witness {prefix}.x{i} has no partner {prefix}.y{i}")
        pairs.append((witnesses[f"{prefix}.x{i}"], y))
        i += 1
    if not pairs:
        raise ParseError(f"no witnesses for {prefix}")
    return subgroup(pairs, g)


def _key_relation_step(lhs: CycleSystem, rhs: CycleSystem, fixed: IntSymplecticSubgroup) -> Step:
    return Step(Rule.KEY_RELATION, lhs, rhs, _subgroup_witnesses("U", fixed))


def _other_part(sys: CycleSystem, fixed: IntSymplecticSubgroup) -> IntSymplecticSubgroup:
    if sys.k != 2:
        raise HypothesisViolation(f"rule applies to 2-part systems, got {sys.k}")
    first, second = sys.parts
    if first.same_subgroup(fixed):
        return second
    if second.same_subgroup(fixed):
        return first
    raise HypothesisViolation(f"fixed subgroup <{fixed}> is not a part of {sys}")


def _check_key_relation(step: Step, g: int) -> List[str]:
    fixed = _subgroup_from_witnesses("U", step.witnesses, g)
    old = _other_part(step.lhs, fixed)
    new = _other_part(step.rhs, fixed)
    problems = []
    if not relation_holds(fixed, [old, new], genus_context(g)):
        problems.append("sigma(V) + sigma(V') is neither 0 nor sigma(U)")
    if sigma_of_int_subgroup(old) != sigma_of_int_subgroup(new):
        problems.append("sigma(V) != sigma(V')")
    return problems


def _check_gen3(step: Step, g: int) -> List[str]:
    w = _subgroup_from_witnesses("W", step.witnesses, g)
    problems = []
    if w.rank != 6:
        problems.append(f"W has rank {w.rank}, expected 6")
    if step.lhs.k != 2 or step.rhs.k != 2:
        return problems + ["Gen3Subsurface applies to 2-part systems"]
    x1, x2 = step.lhs.parts
    y1, y2 = step.rhs.parts
    for name, part in (("X1", x1), ("X2", x2), ("Y1", y1), ("Y2", y2)):
        if part.rank != 2:
            problems.append(f"{name} has rank {part.rank}, expected 2")
        if not w.contains_subgroup(part):
            problems.append(f"{name} is not contained in W")
    if not x1.is_orthogonal_to(x2):
        problems.append("X1 is not orthogonal to X2")
    if not y1.is_orthogonal_to(y2):
        problems.append("Y1 is not orthogonal to Y2")
    if not IntSymplecticSubgroup(x1.pairs + x2.pairs, g).contains_subgroup(y2):
        problems.append("Y2 is not contained in X1 + X2")
    if sigma_of_int_subgroup(x1) != sigma_of_int_subgroup(y1):
        problems.append("sigma(X1) != sigma(Y1)")
    if sigma_of_int_subgroup(x2) != sigma_of_int_subgroup(y2):
        problems.append("sigma(X2) != sigma(Y2)")
    return problems


def check_certificate(cert: Certificate) -> List[str]:
    """
    Replay a certificate and list every failed hypothesis.

    Returns:
        list: Diagnostics, empty when the certificate is valid
    """
    diagnostics = []
    if cert.g < MIN_EQUALITY_GENUS:
        diagnostics.append(f"genus {cert.g} is below {MIN_EQUALITY_GENUS}")
    if not cert.steps:
        if not cert.lhs.same_system(cert.rhs):
            diagnostics.append("empty chain but lhs != rhs")
        return diagnostics

    if not cert.steps[0].lhs.same_system(cert.lhs):
        diagnostics.append("step 1 does not start at the certificate lhs")
    if not cert.steps[-1].rhs.same_system(cert.rhs):
        diagnostics.append(f"step {len(cert.steps)} does not end at the certificate rhs")
    for i, step in enumerate(cert.steps, start=1):
        if i < len(cert.steps) and not step.rhs.same_system(cert.steps[i].lhs):
            diagnostics.append(f"step {i} does not connect to step {i + 1}")
        try:
            if step.rule == Rule.KEY_RELATION:
                problems = _check_key_relation(step, cert.g)
            else:
                problems = _check_gen3(step, cert.g)
            if sigma_k(step.lhs) != sigma_k(step.rhs):
                problems.append("sigma_2 changes across the step")
        except TorelliError as e:
            problems = [str(e)]
        diagnostics.extend(f"step {i} ({step.rule.value}): {p}" for p in problems)
    return diagnostics


def verify_certificate(cert: Certificate) -> bool:
    diagnostics = check_certificate(cert)
    for d in diagnostics:
        logger.warning(f"Certificate check failed: {d}")
    return not diagnostics


# ---------------------------------------------------------------------------
# Equality decision for genus-1 pairs
# ---------------------------------------------------------------------------

def _require_genus1_pair(sys: CycleSystem, name: str):
    if sys.k != 2:
        raise HypothesisViolation(f"{name} has {sys.k} parts, expected 2")
    for part in sys.parts:
        if part.rank != 2:
            raise HypothesisViolation(f"{name} has a part of rank {part.rank}, expected 2")


def _build_chain(p: CycleSystem, q: CycleSystem, ctx: GenusContext) -> List[Step]:
    g = ctx.g
    big_u1, big_u2 = p.parts
    big_v1, big_v2 = q.parts
    if sigma_of_int_subgroup(big_u1) != sigma_of_int_subgroup(big_v1):
        big_v1, big_v2 = big_v2, big_v1
    u1, u2 = big_u1.pairs[0], big_u2.pairs[0]

    v2 = adapt_basis_mod2(big_v2.pairs[0], *u2.reduce_mod2())
    x2, y2 = v2.x, v2.y
    adapted = build_adapted_U2prime(u1, u2, x2, ctx)
    u2p = adapted.u2_prime
    big_u2p = IntSymplecticSubgroup((u2p,), g)
    inner = IntSymplecticSubgroup((u1, u2p), g)

    cx, rx = split_off(x2, inner.pairs)
    cy, ry = split_off(y2, inner.pairs)
    if not rx.is_zero() or cx[3] or cx[0] % 2 or cx[1] % 2 or cx[2] % 2 == 0:
        raise HypothesisViolation(f"x2 = {x2} does not decompose on the adapted frame")
    coeffs = FrameCoefficients(
        zeta1=cx[0] // 2, eta1=cx[1] // 2, zeta2p=(cx[2] - 1) // 2,
        lambda1=cy[0] // 2, mu1=cy[1] // 2, lambda2p=cy[2] // 2, mu2p=(cy[3] - 1) // 2,
    )

    complement = complement_lattice(inner)
    if ry.is_zero():
        lambda3p, a3p = 0, complement[0]
    else:
        half = ry.exact_div(2)
        lambda3p = half.content()
        a3p = half.exact_div(lambda3p)
    b3p = dual_partner(a3p, complement)
    six = IntSymplecticSubgroup((u1, u2p, IntSymplecticPair(a3p, b3p)), g)
    rest = orthogonal_complement_basis(six, ctx)
    a4p, b4p = rest.pairs[0].x, rest.pairs[0].y

    v1p = build_V1prime(coeffs, V1Frame(u1.x, u1.y, u2p.x, u2p.y, a4p, b4p))
    big_v1p = IntSymplecticSubgroup((v1p,), g)
    big_v2p = subgroup([(x2, y2 - (2 * lambda3p) * a3p)], g)
    w = IntSymplecticSubgroup((u1, u2p, IntSymplecticPair(a4p, b4p)), g)

    s0 = cycle_system([big_u1, big_u2])
    s1 = cycle_system([big_u1, big_u2p])
    s2 = cycle_system([big_v1p, big_v2p])
    s3 = cycle_system([big_v1p, big_v2])
    s4 = cycle_system([big_v1, big_v2])
    steps = [
        _key_relation_step(s0, s1, big_u1),
        Step(Rule.GEN3_SUBSURFACE, s1, s2, _subgroup_witnesses("W", w)),
        _key_relation_step(s2, s3, big_v1p),
        _key_relation_step(s3, s4, big_v2),
    ]
    return [s for s in steps if not s.lhs.same_system(s.rhs)]


def decide_equal_genus1(p: CycleSystem, q: CycleSystem, ctx: GenusContext) -> Verdict:
    """
    Decide whether two genus-1 abelian cycles A(U1, U2), A(V1, V2) agree.

    Equal, with a certificate, when the sigma values agree as multisets;
    DistinctBySigma when the sigma_2 wedges differ; Inconclusive otherwise.

    Args:
        p (CycleSystem): Two rank-2 parts
        q (CycleSystem): Two rank-2 parts
        ctx (GenusContext): Ambient genus, at least 4

    Returns:
        Verdict: The decision and, for Equal, its certificate

    Raises:
        HypothesisViolation: for genus below 4 or parts of rank other than 2
    """
    if ctx.g < MIN_EQUALITY_GENUS:
        raise HypothesisViolation(f"equality decision needs genus >= {MIN_EQUALITY_GENUS}, got {ctx.g}")
    _require_genus1_pair(p, "first system")
    _require_genus1_pair(q, "second system")
    if p.g != ctx.g or q.g != ctx.g:
        raise HypothesisViolation(f"systems of genus {p.g}, {q.g} decided in genus {ctx.g}")

    if p.same_system(q):
        return Verdict(VerdictKind.EQUAL, Certificate(ctx.g, p, q, ()))
    if Counter(p.sigmas()) == Counter(q.sigmas()):
        steps = _build_chain(p, q, ctx)
        cert = Certificate(ctx.g, p, q, tuple(steps))
        logger.info(f"Equal verdict with a {len(steps)}-step certificate")
        return Verdict(VerdictKind.EQUAL, cert)
    if sigma_k(p) != sigma_k(q):
        return Verdict(VerdictKind.DISTINCT_BY_SIGMA)
    logger.warning(f"Inconclusive: sigma_2 agrees but sigma values differ for {p} and {q}")
    return Verdict(VerdictKind.INCONCLUSIVE)


# ---------------------------------------------------------------------------
# JSON codec
# ---------------------------------------------------------------------------

def _system_to_json(sys: CycleSystem) -> List[List[List[int]]]:
    return [[list(v.coords) for v in part.vectors()] for part in sys.parts]


def _system_from_json(data, g: int) -> CycleSystem:
    try:
        parts = []
        for part in data:
            vectors = [IntVector(tuple(int(c) for c in vec)) for vec in part]
            if len(vectors) % 2 or any(v.g != g for v in vectors):
                raise ParseError(f"part {part} is not a list of genus-{g} vector pairs")
            parts.append(subgroup(list(zip(vectors[0::2], vectors[1::2])), g))
        return CycleSystem(tuple(parts), g)
    except (TypeError, ValueError) as e:
        raise ParseError(f"malformed cycle system: {e}") from e


def certificate_to_json(cert: Certificate) -> Dict:
    return {
        "g": cert.g,
        "lhs": _system_to_json(cert.lhs),
        "rhs": _system_to_json(cert.rhs),
        "steps": [
            {
                "rule": step.rule.value,
                "lhs": _system_to_json(step.lhs),
                "rhs": _system_to_json(step.rhs),
                "witnesses": {name: list(v.coords) for name, v in step.witnesses.items()},
            }
            for step in cert.steps
        ],
    }


def certificate_from_json(data: Dict) -> Certificate:
    """
    Rebuild a certificate from its JSON form.

    Raises:
        ParseError: on missing fields or malformed vectors
    """
    try:
        g = int(data["g"])
        steps = []
        for raw in data["steps"]:
            witnesses = {name: IntVector(tuple(int(c) for c in vec))
                         for name, vec in raw.get("witnesses", {}).items()}
            steps.append(Step(Rule(raw["rule"]), _system_from_json(raw["lhs"], g),
                              _system_from_json(raw["rhs"], g), witnesses))
        return Certificate(g, _system_from_json(data["lhs"], g),
                           _system_from_json(data["rhs"], g), tuple(steps))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed certificate: {e}") from e


def dump_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=2)


def load_certificate(text: str) -> Certificate:
    try:
        return certificate_from_json(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"certificate is not valid JSON: {e}") from e


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def _shuffle_pair_basis(pair: IntSymplecticPair, rng) -> IntSymplecticPair:
    x, y = pair.x, pair.y
    for _ in range(rng.randint(0, 3)):
        k = rng.choice((-1, 1))
        if rng.random() < 0.5:
            x = x + k * y
        else:
            y = y + k * x
    return IntSymplecticPair(x, y)


def random_genus1_system(ctx: GenusContext, rng, indices=(1, 2)) -> CycleSystem:
    """Image of <a_i, b_i> for the given indices under a random symplectic map."""
    m = random_symplectic_map(ctx, rng)
    return cycle_system([m.apply_subgroup(standard_subgroup([i], ctx.g)) for i in indices])


def random_sigma_matched_pair(ctx: GenusContext, rng) -> Tuple[CycleSystem, CycleSystem]:
    """Two genus-1 systems whose parts have the same sigma values."""
    p = random_genus1_system(ctx, rng)
    level2 = random_level2_transform(ctx, rng)
    parts = [IntSymplecticSubgroup((_shuffle_pair_basis(level2.apply_pair(part.pairs[0]), rng),), ctx.g)
             for part in p.parts]
    if rng.random() < 0.5:
        parts.reverse()
    return p, cycle_system(parts)


def random_sigma_distinct_pair(ctx: GenusContext, rng) -> Tuple[CycleSystem, CycleSystem]:
    """Systems sharing a map image but using different standard pairs."""
    m = random_symplectic_map(ctx, rng)
    p = cycle_system([m.apply_subgroup(standard_subgroup([i], ctx.g)) for i in (1, 2)])
    q = cycle_system([m.apply_subgroup(standard_subgroup([i], ctx.g)) for i in (1, 3)])
    return p, q

import json
import random

import pytest

from BCJ import HypothesisViolation, ParseError
from BCJ.abelian_cycles import (
    Certificate,
    CycleSystem,
    Rule,
    Step,
    VerdictKind,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    cycle_system,
    decide_equal_genus1,
    dump_certificate,
    load_certificate,
    random_genus1_system,
    random_sigma_distinct_pair,
    random_sigma_matched_pair,
    relation_holds,
    sigma_k,
    verify_certificate,
)
from BCJ.bcj_sigma import sigma_of_int_subgroup
from BCJ.gf2_linear import genus_context
from BCJ.int_symplectic import (
    parse_int_subgroup,
    random_symplectic_map,
    standard_subgroup,
)


def _system(text, ctx):
    return cycle_system([parse_int_subgroup(part, ctx) for part in text.split("|")])


class TestCycleSystem:
    def test_parts_must_be_orthogonal(self, ctx4):
        with pytest.raises(HypothesisViolation):
            _system("a1, b1 | a1 + a2, b2", ctx4)

    def test_unordered_comparison(self, ctx4):
        p = _system("a1, b1 | a2, b2", ctx4)
        q = _system("a2, b2 | a1 + b1, b1", ctx4)
        assert p.same_system(q)

    def test_sigma_k_is_symmetric(self, ctx4):
        p = _system("a1, b1 | a2, b2", ctx4)
        q = _system("a2, b2 | a1, b1", ctx4)
        assert sigma_k(p) == sigma_k(q)
        assert not sigma_k(p).is_zero()

    def test_splitting_symmetry(self, ctx3, rng):
        for _ in range(20):
            m = random_symplectic_map(ctx3, rng)
            u1, u2, u3 = (m.apply_subgroup(standard_subgroup([i], 3)) for i in (1, 2, 3))
            w12 = sigma_k(cycle_system([u1, u2]))
            assert w12 == sigma_k(cycle_system([u2, u3]))
            assert w12 == sigma_k(cycle_system([u3, u1]))

    def test_depends_on_reduction_only(self, ctx4):
        p = _system("a1, b1 | a2 + 2a3, b2", ctx4)
        q = _system("a1, b1 | a2, b2", ctx4)
        assert sigma_k(p) == sigma_k(q)


class TestRelation:
    def test_inside(self, ctx4):
        u = standard_subgroup([1, 2, 3], 4)
        vs = [standard_subgroup([1], 4), parse_int_subgroup("a1 + 2a2, b1", ctx4)]
        assert relation_holds(u, vs, ctx4)

    def test_outside(self, ctx4):
        u = standard_subgroup([1], 4)
        vs = [standard_subgroup([2], 4), standard_subgroup([3], 4)]
        assert not relation_holds(u, vs, ctx4)
        vs = [standard_subgroup([2], 4), standard_subgroup([3], 4), standard_subgroup([4], 4)]
        assert relation_holds(u, vs, ctx4)

    @pytest.mark.parametrize("inside", [True, False])
    def test_agrees_with_sigma_sums(self, ctx4, inside):
        rng = random.Random(int(inside))
        for _ in range(500):
            m = random_symplectic_map(ctx4, rng)
            u = m.apply_subgroup(standard_subgroup([1, 2, 3] if inside else [4], 4))
            chosen = rng.sample([1, 2, 3], rng.randint(1, 3))
            vs = [m.apply_subgroup(standard_subgroup([i], 4)) for i in chosen]
            total = sigma_of_int_subgroup(vs[0])
            for v in vs[1:]:
                total = total + sigma_of_int_subgroup(v)
            expected = total.is_zero() or total == sigma_of_int_subgroup(u)
            assert relation_holds(u, vs, ctx4) == expected
            assert relation_holds(u, vs, ctx4) == (len(chosen) == 3)

    def test_low_rank(self, ctx4):
        with pytest.raises(HypothesisViolation):
            relation_holds(standard_subgroup([1, 2], 4), [standard_subgroup([1], 4)], ctx4)

    def test_mixed_containment(self, ctx4):
        u = standard_subgroup([1, 2, 3], 4)
        with pytest.raises(HypothesisViolation):
            relation_holds(u, [standard_subgroup([1], 4), standard_subgroup([4], 4)], ctx4)

    def test_genus_too_small(self, ctx3):
        with pytest.raises(HypothesisViolation):
            relation_holds(standard_subgroup([1], 3), [standard_subgroup([2], 3)], ctx3)


class TestDecision:
    def test_identical_systems(self, ctx4):
        p = _system("a1, b1 | a2, b2", ctx4)
        verdict = decide_equal_genus1(p, p, ctx4)
        assert verdict.kind == VerdictKind.EQUAL
        assert verdict.certificate.steps == ()
        assert verify_certificate(verdict.certificate)

    def test_level2_image(self, ctx4):
        p = _system("a1, b1 | a2, b2", ctx4)
        q = _system("a1, b1 | a2 + 2a3, b2", ctx4)
        verdict = decide_equal_genus1(p, q, ctx4)
        assert verdict.kind == VerdictKind.EQUAL
        assert check_certificate(verdict.certificate) == []

    def test_distinct_by_sigma(self, ctx4):
        p = _system("a1, b1 | a2, b2", ctx4)
        q = _system("a1, b1 | a3, b3", ctx4)
        assert decide_equal_genus1(p, q, ctx4).kind == VerdictKind.DISTINCT_BY_SIGMA

    @pytest.mark.parametrize("g, count", [
        (4, 25),
        (5, 10),
        pytest.param(4, 1000, marks=pytest.mark.slow),
        pytest.param(5, 1000, marks=pytest.mark.slow),
    ])
    def test_random_matched_pairs(self, g, count):
        ctx = genus_context(g)
        rng = random.Random(g)
        for _ in range(count):
            p, q = random_sigma_matched_pair(ctx, rng)
            verdict = decide_equal_genus1(p, q, ctx)
            assert verdict.kind == VerdictKind.EQUAL
            cert = verdict.certificate
            assert check_certificate(cert) == []
            for step in cert.steps:
                assert sigma_k(step.lhs) == sigma_k(p)
                assert sigma_k(step.rhs) == sigma_k(p)

    def test_random_distinct_pairs(self, ctx4, rng):
        for _ in range(5):
            p, q = random_sigma_distinct_pair(ctx4, rng)
            assert decide_equal_genus1(p, q, ctx4).kind == VerdictKind.DISTINCT_BY_SIGMA

    def test_rule_names(self, ctx4, rng):
        p, q = random_sigma_matched_pair(ctx4, rng)
        cert = decide_equal_genus1(p, q, ctx4).certificate
        assert {s.rule for s in cert.steps} <= {Rule.KEY_RELATION, Rule.GEN3_SUBSURFACE}

    def test_genus_too_small(self, ctx3):
        p = _system("a1, b1 | a2, b2", ctx3)
        with pytest.raises(HypothesisViolation):
            decide_equal_genus1(p, p, ctx3)

    def test_rank_must_be_two(self, ctx4):
        p = _system("a1, b1; a3, b3 | a2, b2", ctx4)
        with pytest.raises(HypothesisViolation):
            decide_equal_genus1(p, p, ctx4)


class TestCertificates:
    def _certificate(self, ctx, seed=3):
        rng = random.Random(seed)
        while True:
            p, q = random_sigma_matched_pair(ctx, rng)
            cert = decide_equal_genus1(p, q, ctx).certificate
            if cert.steps:
                return cert

    def test_json_round_trip(self, ctx4):
        cert = self._certificate(ctx4)
        again = load_certificate(dump_certificate(cert))
        assert certificate_to_json(again) == certificate_to_json(cert)
        assert check_certificate(again) == []

    def test_tampered_witness(self, ctx4):
        data = certificate_to_json(self._certificate(ctx4))
        step = data["steps"][0]
        name = sorted(step["witnesses"])[0]
        step["witnesses"][name] = [0] * 8
        cert = certificate_from_json(data)
        assert check_certificate(cert)
        assert not verify_certificate(cert)

    def test_broken_chain(self, ctx4):
        cert = self._certificate(ctx4)
        other = _system("a3, b3 | a4, b4", ctx4)
        broken = Certificate(cert.g, cert.lhs, other, cert.steps)
        problems = check_certificate(broken)
        assert any("rhs" in p for p in problems)
        assert not verify_certificate(broken)

    def test_gen3_parts_must_have_rank_2(self, ctx4):
        lhs = _system("a1, b1 | a2, b2; a3, b3", ctx4)
        rhs = _system("a1 + 2a2, b1 | a2, b2 - 2b1; a3, b3", ctx4)
        witnesses = {}
        for i, pair in enumerate(standard_subgroup([1, 2, 3], 4).pairs, start=1):
            witnesses[f"W.x{i}"] = pair.x
            witnesses[f"W.y{i}"] = pair.y
        step = Step(Rule.GEN3_SUBSURFACE, lhs, rhs, witnesses)
        cert = Certificate(4, lhs, rhs, (step,))
        problems = check_certificate(cert)
        assert any("X2 has rank 4" in p for p in problems)
        assert any("Y2 has rank 4" in p for p in problems)
        assert not any("X1 has rank" in p or "Y1 has rank" in p for p in problems)
        assert not verify_certificate(cert)

    def test_empty_chain_needs_equal_ends(self, ctx4):
        p = _system("a1, b1 | a2, b2", ctx4)
        q = _system("a1, b1 | a3, b3", ctx4)
        assert check_certificate(Certificate(4, p, q, ()))

    @pytest.mark.parametrize("text", ["not json", "{}", json.dumps({"g": 4, "steps": []})])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            load_certificate(text)


def test_random_genus1_system(ctx4, rng):
    system = random_genus1_system(ctx4, rng)
    assert isinstance(system, CycleSystem)
    assert [p.rank for p in system.parts] == [2, 2]
    assert system.parts[0].is_orthogonal_to(system.parts[1])

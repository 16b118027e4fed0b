import random
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from BCJ import (
    BadParityPattern,
    FrameInvalid,
    HypothesisViolation,
    NotCoprime,
    NotInSpan,
    NotUnimodular,
    ParseError,
)
from BCJ.gf2_linear import genus_context
from BCJ.int_symplectic import (
    FrameCoefficients,
    IntSymplecticPair,
    IntVector,
    V1Frame,
    adapt_basis_mod2,
    build_adapted_U2prime,
    build_V1prime,
    dual_partner,
    express,
    extend_to_symplectic_basis,
    format_int_vector,
    int_form,
    lattice_basis,
    orthogonal_complement_basis,
    parse_int_subgroup,
    parse_int_vector,
    primitive_odd_rep,
    random_level2_transform,
    random_symplectic_map,
    solve_parity_bezout,
    split_off,
    standard_subgroup,
    std_a,
    std_b,
    subgroup,
    unit_vector,
    xgcd,
)
from tests.strategies import int_vectors

small = st.integers(min_value=-5, max_value=5)


class TestEuclid:
    @pytest.mark.parametrize("a, b, expected", [
        (3, 4, (1, -1, 1)),
        (5, 4, (1, 1, -1)),
        (0, 0, (0, 1, 0)),
    ])
    def test_examples(self, a, b, expected):
        assert xgcd(a, b) == expected

    @given(st.integers(-1000, 1000), st.integers(-1000, 1000))
    def test_bezout(self, a, b):
        d, s, t = xgcd(a, b)
        assert d == gcd(a, b)
        assert s * a + t * b == d

    @pytest.mark.parametrize("alpha, expected", [
        ((1, 1, 0), (-1, 1, 0)),
        ((2, 0, 1), (0, 0, -1)),
    ])
    def test_parity_bezout_examples(self, alpha, expected):
        assert solve_parity_bezout(*alpha) == expected

    @given(small, small, small)
    def test_parity_bezout(self, a1, a2, a3):
        assume(gcd(gcd(2 * a1 + 1, a2), a3) == 1)
        b1, b2, b3 = solve_parity_bezout(a1, a2, a3)
        assert (2 * a1 + 1) * (2 * b1 + 1) + 4 * a2 * b2 + 4 * a3 * b3 == 1

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            solve_parity_bezout(1, 3, 0)

    def test_primitive_odd_rep(self):
        assert primitive_odd_rep((3, 6, 0)) == (1, 2, 0)
        assert primitive_odd_rep((5, 2, 4)) == (5, 2, 4)

    @pytest.mark.parametrize("coeffs", [(2, 2, 2), (3, 1, 2), (3, 2, 5)])
    def test_bad_parity(self, coeffs):
        with pytest.raises(BadParityPattern):
            primitive_odd_rep(coeffs)


class TestLattices:
    @given(int_vectors(2), int_vectors(2))
    def test_form_is_antisymmetric(self, x, y):
        assert int_form(x, y) == -int_form(y, x)

    def test_hnf_is_basis_independent(self):
        a1, b1 = std_a(1, 1), std_b(1, 1)
        assert lattice_basis([a1, b1]) == lattice_basis([a1 + b1, b1])
        assert lattice_basis([a1, b1]) == ((1, 0), (0, 1))

    @given(int_vectors(2), int_vectors(2))
    def test_hnf_ignores_generator_order(self, x, y):
        assert lattice_basis([x, y]) == lattice_basis([y, x + 3 * y])

    def test_pair_must_be_unimodular(self):
        with pytest.raises(NotUnimodular):
            IntSymplecticPair(2 * std_a(1, 2), std_b(1, 2))

    def test_subgroup_equality(self):
        u = standard_subgroup([1], 3)
        v = subgroup([(std_a(1, 3) + std_b(1, 3), std_b(1, 3))], 3)
        assert u.same_subgroup(v)
        assert not u.same_subgroup(standard_subgroup([2], 3))

    def test_containment_and_orthogonality(self):
        big = standard_subgroup([1, 2], 3)
        assert big.contains_subgroup(standard_subgroup([2], 3))
        assert not big.contains_subgroup(standard_subgroup([3], 3))
        assert big.is_orthogonal_to(standard_subgroup([3], 3))

    def test_dual_partner(self):
        g = 2
        v = std_a(1, g) + 2 * std_b(2, g)
        w = dual_partner(v, [std_b(1, g), std_a(2, g)])
        assert int_form(v, w) == 1

    def test_dual_partner_fails_on_imprimitive(self):
        with pytest.raises(NotUnimodular):
            dual_partner(2 * std_a(1, 2), [std_b(1, 2), std_a(2, 2)])

    def test_express(self):
        g = 2
        basis = [std_a(1, g), std_b(1, g), std_a(2, g), std_b(2, g)]
        v = parse_int_vector("3a1 - b1 + 2b2", genus_context(g))
        assert express(v, basis) == [3, -1, 0, 2]
        with pytest.raises(NotInSpan):
            express(v, basis[:2])


class TestBasisExtension:
    def test_standard(self):
        full = extend_to_symplectic_basis(standard_subgroup([1], 3))
        assert full.rank == 6
        assert full.pairs[0] == standard_subgroup([1], 3).pairs[0]

    def test_random_subgroups(self, rng):
        ctx = genus_context(4)
        for _ in range(10):
            u = random_symplectic_map(ctx, rng).apply_subgroup(standard_subgroup([1, 2], 4))
            rest = orthogonal_complement_basis(u)
            assert rest.rank == 4
            assert rest.is_orthogonal_to(u)

    def test_adapt_basis_mod2(self, ctx3):
        pair = IntSymplecticPair(std_a(1, 3), std_b(1, 3))
        x_bar = std_a(1, 3).reduce_mod2() ^ std_b(1, 3).reduce_mod2()
        y_bar = std_b(1, 3).reduce_mod2()
        adapted = adapt_basis_mod2(pair, x_bar, y_bar)
        assert adapted.reduce_mod2() == (x_bar, y_bar)

    def test_adapt_basis_outside_span(self):
        pair = IntSymplecticPair(std_a(1, 3), std_b(1, 3))
        with pytest.raises(NotInSpan):
            adapt_basis_mod2(pair, std_a(2, 3).reduce_mod2(), std_b(1, 3).reduce_mod2())


class TestMaps:
    def test_symplectic_maps_preserve_form(self, rng):
        ctx = genus_context(3)
        m = random_symplectic_map(ctx, rng)
        for i in range(6):
            for j in range(6):
                e, f = unit_vector(i, 3), unit_vector(j, 3)
                assert int_form(m(e), m(f)) == int_form(e, f)

    def test_level2_is_identity_mod_2(self, rng):
        m = random_level2_transform(genus_context(3), rng)
        for i in range(6):
            e = unit_vector(i, 3)
            assert m(e).reduce_mod2() == e.reduce_mod2()


class TestFrames:
    def test_adapted_u2(self, ctx4):
        u1 = IntSymplecticPair(std_a(1, 4), std_b(1, 4))
        u2 = IntSymplecticPair(std_a(2, 4), std_b(2, 4))
        x2 = parse_int_vector("4a1 + 3a2 + 2b2 + 2a3", ctx4)
        adapted = build_adapted_U2prime(u1, u2, x2, ctx4)
        pair = adapted.u2_prime
        assert int_form(pair.x, pair.y) == 1
        assert all(int_form(v, w) == 0 for v in (pair.x, pair.y) for w in (u1.x, u1.y))
        assert pair.reduce_mod2() == u2.reduce_mod2()
        assert adapted.alpha == (1, 1, 1)

    def test_adapted_u2_rejects_wrong_reduction(self, ctx4):
        u1 = IntSymplecticPair(std_a(1, 4), std_b(1, 4))
        u2 = IntSymplecticPair(std_a(2, 4), std_b(2, 4))
        with pytest.raises(HypothesisViolation):
            build_adapted_U2prime(u1, u2, std_b(2, 4), ctx4)

    def test_adapted_u2_needs_genus_4(self, ctx3):
        u1 = IntSymplecticPair(std_a(1, 3), std_b(1, 3))
        u2 = IntSymplecticPair(std_a(2, 3), std_b(2, 3))
        with pytest.raises(HypothesisViolation):
            build_adapted_U2prime(u1, u2, std_a(2, 3), ctx3)

    @pytest.mark.parametrize("count", [50, pytest.param(1000, marks=pytest.mark.slow)])
    def test_adapted_u2_random(self, ctx4, count):
        rng = random.Random(count)
        for _ in range(count):
            m = random_symplectic_map(ctx4, rng)
            u1 = m.apply_pair(IntSymplecticPair(std_a(1, 4), std_b(1, 4)))
            u2 = m.apply_pair(IntSymplecticPair(std_a(2, 4), std_b(2, 4)))
            noise = IntVector(tuple(rng.randint(-3, 3) for _ in range(8)))
            x2 = u2.x + 2 * noise
            pair = build_adapted_U2prime(u1, u2, x2, ctx4).u2_prime

            assert int_form(pair.x, pair.y) == 1
            assert all(int_form(v, w) == 0 for v in (pair.x, pair.y) for w in (u1.x, u1.y))
            assert pair.x.reduce_mod2() == u2.x.reduce_mod2()
            assert pair.y.reduce_mod2() == u2.y.reduce_mod2()
            coeffs, residual = split_off(x2, [u1, pair])
            assert residual.is_zero()
            assert coeffs[0] % 2 == 0 and coeffs[1] % 2 == 0
            assert coeffs[2] % 2 == 1 and coeffs[3] == 0

    @given(small, small, small, small, small, small, small)
    def test_v1_prime(self, zeta1, eta1, zeta2p, lambda1, mu1, lambda2p, mu2p):
        g = 4
        a1, b1, a2, b2, a4, b4 = (std_a(1, g), std_b(1, g), std_a(2, g), std_b(2, g),
                                  std_a(4, g), std_b(4, g))
        coeffs = FrameCoefficients(zeta1, eta1, zeta2p, lambda1, mu1, lambda2p, mu2p)
        x2 = (2 * zeta1) * a1 + (2 * eta1) * b1 + (2 * zeta2p + 1) * a2
        y2 = (2 * lambda1) * a1 + (2 * mu1) * b1 + (2 * lambda2p) * a2 + (2 * mu2p + 1) * b2
        v1 = build_V1prime(coeffs, V1Frame(a1, b1, a2, b2, a4, b4))
        assert int_form(v1.x, v1.y) == 1
        assert all(int_form(v, w) == 0 for v in (v1.x, v1.y) for w in (x2, y2))
        assert v1.reduce_mod2() == (a1.reduce_mod2(), b1.reduce_mod2())

    def test_bad_frame(self):
        g = 4
        a1, b1 = std_a(1, g), std_b(1, g)
        frame = V1Frame(a1, b1, std_a(2, g), std_b(2, g), a1, std_b(4, g))
        with pytest.raises(FrameInvalid):
            build_V1prime(FrameCoefficients(), frame)


class TestText:
    def test_round_trip(self, ctx4):
        text = "2a1 - b3 + 4b4"
        assert format_int_vector(parse_int_vector(text, ctx4)) == text

    def test_zero(self, ctx4):
        assert parse_int_vector("0", ctx4).is_zero()
        assert format_int_vector(IntVector((0,) * 8)) == "0"

    @pytest.mark.parametrize("text", ["2c1", "a1 b1", "", "a9"])
    def test_errors(self, ctx4, text):
        with pytest.raises(ParseError):
            parse_int_vector(text, ctx4)

    def test_subgroup(self, ctx4):
        u = parse_int_subgroup("a1, b1; a2 + 2b3, b2", ctx4)
        assert u.rank == 4
        with pytest.raises(ParseError):
            parse_int_subgroup("a1", ctx4)

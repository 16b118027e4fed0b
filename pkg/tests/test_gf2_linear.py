import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from BCJ import DimensionMismatch, MixedShapes, NotSymplectic, ParseError
from BCJ.gf2_linear import (
    GF2Echelon,
    GF2Vector,
    WedgeEchelon,
    count_symplectic_2subspaces,
    enumerate_symplectic_2subspaces,
    form_bits,
    genus_context,
    gf2_form,
    image_of_subspace,
    is_symplectic,
    is_symplectic_matrix,
    iter_symplectic_pairs,
    orthogonal_complement,
    parse_subspace,
    parse_vector,
    random_symplectic_matrix,
    rank_of_span,
    span_bits,
    symplectic_basis_of,
    wedge,
    wedge_from_packed,
)
from tests.strategies import bit_vectors


class TestForm:
    def test_standard_pairs(self, ctx3):
        for i in range(1, 4):
            assert gf2_form(ctx3.a(i), ctx3.b(i), ctx3) == 1
            for j in range(1, 4):
                assert gf2_form(ctx3.a(i), ctx3.a(j), ctx3) == 0
                assert gf2_form(ctx3.b(i), ctx3.b(j), ctx3) == 0
                if i != j:
                    assert gf2_form(ctx3.a(i), ctx3.b(j), ctx3) == 0

    @given(bit_vectors(3), bit_vectors(3), bit_vectors(3))
    def test_bilinear(self, u, v, w):
        ctx = genus_context(3)
        assert form_bits(u ^ v, w, ctx) == form_bits(u, w, ctx) ^ form_bits(v, w, ctx)

    @given(bit_vectors(4), bit_vectors(4))
    def test_alternating(self, u, v):
        ctx = genus_context(4)
        assert form_bits(u, u, ctx) == 0
        assert form_bits(u, v, ctx) == form_bits(v, u, ctx)

    def test_mixed_example(self, ctx2):
        assert gf2_form(parse_vector("a1+b2", ctx2), parse_vector("a2+b1", ctx2), ctx2) == 0

    def test_genus_mismatch(self, ctx2, ctx3):
        with pytest.raises(DimensionMismatch):
            gf2_form(ctx2.a(1), ctx3.a(1), ctx3)

    @pytest.mark.parametrize("g", [0, 17])
    def test_genus_out_of_range(self, g):
        with pytest.raises(DimensionMismatch):
            genus_context(g)


class TestSubspaces:
    def test_span_is_canonical(self, ctx2):
        a1, b1 = ctx2.a(1).bits, ctx2.b(1).bits
        assert span_bits([a1, a1 ^ b1], ctx2) == span_bits([b1, a1], ctx2)

    def test_symplectic_basis(self, ctx3):
        s = parse_subspace("a1+a2, b1, a3, b3+b1", ctx3)
        assert is_symplectic(s, ctx3)
        basis = symplectic_basis_of(s, ctx3)
        assert len(basis.sbasis) == 2
        for i, (x, y) in enumerate(basis.sbasis):
            assert form_bits(x, y, ctx3) == 1
            for u, v in basis.sbasis[i + 1:]:
                assert not any(form_bits(p, q, ctx3) for p in (x, y) for q in (u, v))
        assert span_bits([v for pair in basis.sbasis for v in pair], ctx3) == s

    def test_degenerate_raises(self, ctx2):
        s = parse_subspace("a1, a2", ctx2)
        assert not is_symplectic(s, ctx2)
        with pytest.raises(NotSymplectic):
            symplectic_basis_of(s, ctx2)

    def test_orthogonal_complement(self, ctx2):
        perp = orthogonal_complement(parse_subspace("a1, b1", ctx2), ctx2)
        assert perp == parse_subspace("a2, b2", ctx2)

    def test_complement_of_isotropic_line(self, ctx2):
        perp = orthogonal_complement(parse_subspace("a1", ctx2), ctx2)
        assert perp == parse_subspace("a1, a2, b2", ctx2)

    @given(st.lists(bit_vectors(3), max_size=4))
    def test_complement_dimension(self, vectors):
        ctx = genus_context(3)
        s = span_bits(vectors, ctx)
        perp = orthogonal_complement(s, ctx)
        assert perp.dim == ctx.dim - s.dim
        assert all(form_bits(r, t, ctx) == 0 for r in s.rows for t in perp.rows)


class TestEnumeration:
    @pytest.mark.parametrize("g, expected", [(1, 1), (2, 20), (3, 336)])
    def test_count_matches_span_dedup(self, g, expected):
        ctx = genus_context(g)
        spans = {span_bits(pair, ctx) for pair in iter_symplectic_pairs(ctx)}
        assert len(spans) == expected
        assert count_symplectic_2subspaces(g) == expected

    def test_closed_form_genus4(self):
        assert count_symplectic_2subspaces(4) == 5440

    def test_enumerated_subspaces_are_symplectic(self, ctx2):
        for s in enumerate_symplectic_2subspaces(ctx2):
            assert s.dim == 2
            (x, y), = s.sbasis
            assert form_bits(x, y, ctx2) == 1

    def test_disjoint_ranges(self, ctx2):
        low = list(iter_symplectic_pairs(ctx2, 1, 5))
        high = list(iter_symplectic_pairs(ctx2, 5))
        assert len(low) + len(high) == 20
        assert not set(low) & set(high)


class TestMatrices:
    def test_random_matrices_are_symplectic(self, ctx3, rng):
        for _ in range(5):
            assert is_symplectic_matrix(random_symplectic_matrix(ctx3, rng), ctx3)

    def test_non_symplectic_matrix(self, ctx2):
        m = np.eye(4, dtype=np.uint8)
        m[0, 0] = 0
        assert not is_symplectic_matrix(m, ctx2)

    def test_image_keeps_pairing(self, ctx3, rng):
        m = random_symplectic_matrix(ctx3, rng)
        s = symplectic_basis_of(parse_subspace("a1, b1", ctx3), ctx3)
        image = image_of_subspace(m, s, ctx3)
        (x, y), = image.sbasis
        assert form_bits(x, y, ctx3) == 1


class TestWedges:
    def test_dependent_parts_vanish(self):
        assert wedge([0b011, 0b011], 3).is_zero()
        assert wedge([0b001, 0b010, 0b011], 3).is_zero()

    def test_basis_wedge(self):
        w = wedge([0b001, 0b100], 3)
        assert w.sorted_terms() == [(0, 2)]

    def test_expansion(self):
        # (e0 + e1) ^ e2 = e0^e2 + e1^e2
        w = wedge([0b011, 0b100], 3)
        assert w.sorted_terms() == [(0, 2), (1, 2)]

    def test_order_is_irrelevant_in_char_2(self):
        assert wedge([0b011, 0b110], 4) == wedge([0b110, 0b011], 4)

    def test_pack_inverse(self):
        w = wedge([0b0111, 0b1010], 4)
        assert wedge_from_packed(w.pack(), 4, 2) == w

    def test_mixed_shapes(self):
        with pytest.raises(MixedShapes):
            wedge([1, 2], 3) + wedge([1, 2], 4)
        with pytest.raises(MixedShapes):
            rank_of_span([wedge([1, 2], 3), wedge([1, 2, 4], 3)])

    def test_part_too_wide(self):
        with pytest.raises(DimensionMismatch):
            wedge([0b1000], 3)

    def test_rank_of_span(self):
        assert rank_of_span([]) == 0
        elems = [wedge([1, 2], 3), wedge([1, 4], 3), wedge([1, 6], 3)]
        assert rank_of_span(elems) == 2

    def test_wedge_echelon(self):
        echelon = WedgeEchelon(4, 2)
        assert echelon.add(wedge([1, 2], 4))
        assert not echelon.add(wedge([2, 1], 4))
        with pytest.raises(MixedShapes):
            echelon.add(wedge([1, 2], 5))


class TestEchelon:
    @settings(max_examples=50)
    @given(st.lists(st.integers(min_value=1, max_value=255), max_size=10))
    def test_rank_agrees_with_rref(self, vectors):
        echelon = GF2Echelon()
        for v in vectors:
            echelon.insert(v)
        assert echelon.rank == span_bits(vectors, genus_context(4)).dim
        assert all(echelon.contains(v) for v in vectors)

    def test_merge(self):
        left, right = GF2Echelon(), GF2Echelon()
        left.insert(0b01)
        right.insert(0b01)
        right.insert(0b10)
        assert left.merge(right) == 1
        assert left.rank == 2


class TestText:
    def test_parse_vector(self, ctx2):
        assert parse_vector("a1+b2", ctx2) == GF2Vector(0b1001, 2)
        assert parse_vector("a1 + a1", ctx2).is_zero()
        assert str(parse_vector("b1+a2", ctx2)) == "b1+a2"

    @pytest.mark.parametrize("text", ["c1", "a3", "a1+", ""])
    def test_parse_errors(self, ctx2, text):
        with pytest.raises(ParseError):
            parse_vector(text, ctx2)

    def test_basis_labels(self, ctx2):
        assert ctx2.basis_labels() == ["a1", "b1", "a2", "b2"]

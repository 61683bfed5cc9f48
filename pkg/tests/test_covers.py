"""Double covers z^2 = b: pushforwards, the V(E) embedding, and degrees."""

import pytest
from hypothesis import given, settings, strategies as st

from semismooth import singularity
from semismooth.covers import (
    CoverDatum,
    LinearizedModule,
    P1Bundle,
    cor46_degree_check,
    det_sequence_check,
    embed_in_VE,
    p1_pushforward_degrees,
    prop48_check,
    pushforward_module,
    thm53_degree_check,
)
from semismooth.errors import InputError
from semismooth.groebner import ideal_equal
from semismooth.poly import PolyRing
from semismooth.rings import RingPresentation

BASE = RingPresentation(PolyRing(("w",)))

DET_KEYS = {
    "alpha_injective",
    "beta_surjective",
    "composite_zero",
    "kernel_is_image",
    "det_unit_times_z",
    "counit_surjective",
    "pass",
}

PROP48_KEYS = {
    "embedding_pass",
    "lhs_free_rank_one",
    "fitt0_zero",
    "fitt1_unit",
    "supports_match",
    "generator_is_fiber_coordinate",
    "rhs_free_rank_one",
    "pass",
}


def cover(b, sign=1):
    c = CoverDatum(BASE, b)
    return c, LinearizedModule(c, sign=sign)


class TestCoverDatum:
    def test_cover_ring_presents_z_squared_minus_b(self):
        c, _ = cover("w")
        z = c.z
        assert [str(r) for r in c.bbar.relations] == ["z^2 - w"]
        assert c.iota.apply(z) == -z
        assert c.iota.apply(c.iota.apply(z + c.b.rename(c.bbar.ambient))) == z + c.b.rename(c.bbar.ambient)

    def test_base_variable_name_is_protected(self):
        with pytest.raises(InputError, match="collides"):
            CoverDatum(BASE, "w", zname="w")

    def test_sign_must_be_a_square_root_of_one(self):
        c, _ = cover("w")
        with pytest.raises(InputError, match="sign"):
            LinearizedModule(c, sign=2)


class TestPushforward:
    def test_algebra_splits_into_invariants_and_z_multiples(self):
        c, M = cover("w")
        cp = pushforward_module(c, M)
        assert cp.E.ngens == 2
        assert list(cp.E.relations.rows) == []
        assert [str(m) for m in cp.pushed._mus] == ["1", "z"]

    def test_express_splits_by_parity_in_z(self):
        c, M = cover("w")
        cp = pushforward_module(c, M)
        coords = cp.pushed.express(["w + 2*w*z"])
        assert [str(q) for q in coords] == ["w", "2*w"]
        even = cp.pushed.express(["z^2"])
        assert [str(q) for q in even] == ["w", "0"]

    @pytest.mark.parametrize("b", ["w", "1", "w^2 - w"])
    def test_counit_is_surjective(self, b):
        c, M = cover(b)
        cp = pushforward_module(c, M)
        assert cp.counit.is_surjective()

    def test_comparison_map_pairs_generator_with_its_conjugate(self):
        c, M = cover("w")
        cp = pushforward_module(c, M)
        rows = [[str(x) for x in r] for r in cp.to_sum.matrix.rows]
        assert rows == [["1", "1"], ["z", "-z"]]

    def test_antilinearization_flips_the_conjugate_column(self):
        c, M = cover("w", sign=-1)
        cp = pushforward_module(c, M)
        rows = [[str(x) for x in r] for r in cp.to_sum.matrix.rows]
        assert rows == [["1", "-1"], ["z", "z"]]


class TestEmbedding:
    def test_branch_w_recovers_the_pinch_equation(self):
        c, M = cover("w")
        emb = embed_in_VE(c, M)
        amb = emb.pushout.A.ambient
        assert amb.vars == ("u", "v", "w")
        u, v, w = amb.gens()
        assert emb.h == u * u - w * v * v
        free = RingPresentation(amb)
        assert ideal_equal(free, list(emb.pushout.A.relations), [emb.h])

    def test_charts_are_the_cover_projection_and_the_zero_section(self):
        c, M = cover("w")
        emb = embed_in_VE(c, M)
        assert [str(q) for q in emb.pushout.fsharp.images] == ["z*t", "t", "w"]
        assert [str(q) for q in emb.pushout.jsharp.images] == ["0", "0", "w"]

    def test_embedding_is_certified_cartesian(self):
        c, M = cover("w")
        emb = embed_in_VE(c, M)
        assert emb.report["pass"]
        assert emb.report["restricted_kernel_zero"]
        assert emb.report["module_finite"]

    def test_split_cover_gives_two_planes(self):
        c, M = cover("1")
        emb = embed_in_VE(c, M)
        amb = emb.pushout.A.ambient
        u, v, _ = amb.gens()
        free = RingPresentation(amb)
        assert ideal_equal(free, list(emb.pushout.A.relations), [(u - v) * (u + v)])

    def test_two_point_branch_equation(self):
        c, M = cover("w^2 - w")
        emb = embed_in_VE(c, M)
        u, v, w = emb.pushout.A.ambient.gens()
        assert emb.h == u * u - (w * w - w) * v * v

    def test_deck_involution_negates_the_cover_coordinate(self):
        c, M = cover("w")
        emb = embed_in_VE(c, M)
        sigma = emb.pushout.datum.involution
        assert sigma is not None
        # stored over Abar/(t), so the fiber coordinate collapses to 0
        assert [str(q) for q in sigma.images] == ["w", "-z", "0"]

    def test_fiber_names_avoid_base_variables(self):
        Bu = RingPresentation(PolyRing(("u",)))
        c = CoverDatum(Bu, "u")
        emb = embed_in_VE(c, LinearizedModule(c))
        assert emb.pushout.A.ambient.vars == ("uu", "vv", "u")

    def test_fiber_variable_name_is_protected(self):
        c, M = cover("w")
        with pytest.raises(InputError, match="collides"):
            embed_in_VE(c, M, tname="z")
        with pytest.raises(InputError, match="collides"):
            embed_in_VE(c, M, tname="w")


class TestDetSequence:
    @pytest.mark.parametrize("b", ["w", "1", "w^2 - w"])
    def test_sequence_is_exact_with_unit_determinant(self, b):
        c, M = cover(b)
        rep = det_sequence_check(c, M)
        assert set(rep) == DET_KEYS
        assert rep["pass"]

    def test_antilinearization_also_passes(self):
        c, M = cover("w", sign=-1)
        assert det_sequence_check(c, M)["pass"]

    @pytest.mark.parametrize("sign", [1, -1])
    def test_hand_kernel_generators_match_the_image(self, sign):
        # ker(p, q) -> p - s*q mod z is spanned by (s, 1) and (z, 0); both
        # are explicit combinations of the rows (1, s) and (z, -s z)
        c, M = cover("w", sign=sign)
        cp = pushforward_module(c, M)
        bbar = c.bbar
        s = bbar.ambient.const(sign)
        z = c.z
        half = bbar.ambient.const("1/2")
        row0, row1 = [list(r) for r in cp.to_sum.matrix.rows]
        comb_a = [s * row0[0], s * row0[1]]
        comb_b = [half * (z * row0[0] + row1[0]), half * (z * row0[1] + row1[1])]
        assert all(bbar.is_zero(x - y) for x, y in zip(comb_a, [s, bbar.ambient.one()]))
        assert all(bbar.is_zero(x - y) for x, y in zip(comb_b, [z, bbar.ambient.zero()]))
        # and both really die in M|_R
        for p, q in (comb_a, comb_b):
            assert ideal_equal(bbar, [p - s * q, z], [z])

    def test_split_cover_restriction_vanishes(self):
        # z is a unit when b = 1, so M|_R = 0 and the middle map is onto it
        c, M = cover("1")
        assert ideal_equal(c.bbar, ["z"], ["1"])
        rep = det_sequence_check(c, M)
        assert rep["beta_surjective"] and rep["kernel_is_image"]


class TestProp48:
    @pytest.mark.parametrize("b", ["w", "1", "w^2 - w"])
    def test_conductor_comparison_certifies(self, b):
        c, M = cover(b)
        rep = prop48_check(c, M)
        assert set(rep) == PROP48_KEYS
        assert rep["pass"]

    def test_branch_w_generator_is_the_fiber_coordinate(self):
        c, M = cover("w")
        emb = embed_in_VE(c, M)
        comp = singularity.ideal_y_in_xsing(emb.pushout)
        assert str(comp.y_gens[comp.generator_index]) == "v"
        assert ideal_equal(comp.y_ring, comp.d_ideal, ["w"])
        assert comp.certificate["free"]

    def test_unit_branch_has_empty_support(self):
        c, M = cover("1")
        emb = embed_in_VE(c, M)
        comp = singularity.ideal_y_in_xsing(emb.pushout)
        assert comp.d_ring.is_trivial()
        assert comp.generator_index is None
        assert prop48_check(c, M)["generator_is_fiber_coordinate"]

    def test_two_point_branch_supports_both_points(self):
        c, M = cover("w^2 - w")
        emb = embed_in_VE(c, M)
        comp = singularity.ideal_y_in_xsing(emb.pushout)
        assert ideal_equal(comp.y_ring, comp.d_ideal, ["w^2 - w"])
        assert comp.certificate["free"]
        assert not comp.d_ring.is_trivial()


class TestP1Degrees:
    def test_structure_sheaf_splits_off_a_degree_minus_one_piece(self):
        assert p1_pushforward_degrees(0) == (0, -1)

    def test_degree_two_splits_as_one_and_zero(self):
        assert p1_pushforward_degrees(2) == (1, 0)

    @pytest.mark.parametrize("d", range(-6, 7))
    def test_summand_degrees_add_to_d_minus_one(self, d):
        e0, e1 = p1_pushforward_degrees(d)
        assert e0 + e1 == d - 1

    @pytest.mark.parametrize("d", range(-6, 7))
    def test_parity_split_of_cech_bases(self, d):
        # independent route: count sections x^i, 0 <= i <= d, and repairs
        # x^i, d < i < 0, by parity; each summand degree is chi - 1
        h0 = [i for i in range(0, d + 1)]
        h1 = [i for i in range(d + 1, 0)]
        even = len([i for i in h0 if i % 2 == 0]) - len([i for i in h1 if i % 2 == 0])
        odd = len([i for i in h0 if i % 2 == 1]) - len([i for i in h1 if i % 2 == 1])
        assert p1_pushforward_degrees(d) == (even - 1, odd - 1)

    @pytest.mark.parametrize("d", range(-6, 7))
    def test_pushforward_preserves_cohomology(self, d):
        e0, e1 = p1_pushforward_degrees(d)
        assert P1Bundle(e0).h0() + P1Bundle(e1).h0() == P1Bundle(d).h0()
        assert P1Bundle(e0).h1() + P1Bundle(e1).h1() == P1Bundle(d).h1()

    def test_bundle_cohomology_closed_forms(self):
        assert [P1Bundle(d).h0() for d in (-2, -1, 0, 3)] == [0, 0, 1, 4]
        assert [P1Bundle(d).h1() for d in (-3, -2, -1, 0)] == [2, 1, 0, 0]


class TestDegreeChecks:
    def test_trivial_twist_values(self):
        rep = thm53_degree_check(0)
        assert rep["deg_L"] == 1
        assert rep["deg_det_E"] == -1
        assert rep["route_A"] == 2 and rep["route_B"] == 2
        assert rep["pass"]

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_both_routes_give_m_plus_two(self, m):
        rep = thm53_degree_check(m)
        assert rep["routes_agree"] and rep["pullback_identity"]
        # deg L - deg det g_*(N^-1) = 1 - ((-m) - 1) by the additivity rule
        assert rep["route_A"] == m + 2

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_conductor_degree_identity(self, m):
        rep = cor46_degree_check(m)
        assert rep["lhs"] == rep["rhs"] == 4 - 2 * m
        assert rep["pass"]


@settings(max_examples=12, deadline=None)
@given(
    coeffs=st.lists(st.integers(-4, 4), min_size=1, max_size=3),
)
def test_every_nonzero_branch_equation_yields_an_exact_sequence(coeffs):
    w = BASE.ambient.var("w")
    b = sum((c * w ** i for i, c in enumerate(coeffs)), BASE.ambient.zero())
    if b.is_zero():
        b = BASE.ambient.one()
    c = CoverDatum(BASE, b)
    M = LinearizedModule(c)
    assert det_sequence_check(c, M)["pass"]
    assert pushforward_module(c, M).counit.is_surjective()

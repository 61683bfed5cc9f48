"""Differentials, tangent modules, T1, strata, alpha, and the two sequences."""

import pytest

from semismooth import glue
from semismooth.errors import InputError
from semismooth.fpmod import FPModule, annihilator, free_rank_one_certificate
from semismooth.groebner import ideal_equal, module_contains, module_gb
from semismooth.poly import PolyRing
from semismooth.rings import RingPresentation
from semismooth.singularity import (
    build_alpha,
    certify_cyclic_iso,
    classify_points,
    ideal_y_in_xsing,
    kahler,
    lift_derivation,
    restricted_sequence_check,
    singular_subscheme,
    t1,
    t1_hypersurface_check,
    t1_on_y,
    tangent,
    tangent_sequence_check,
)

from test_glue import dc_datum, identity_datum, pinch_datum

PINCH = RingPresentation(PolyRing(("u", "v", "w")), ["u^2 - v^2*w"])
DC = RingPresentation(PolyRing(("u", "v", "w")), ["u*v"])


def rows_span(ring, rows, candidates):
    gb = module_gb(ring, [list(r) for r in rows], len(candidates[0]))
    return all(module_contains(ring, gb, [ring.ambient.parse(str(c)) for c in row]) for row in candidates)


def parse_rows(ring, rows):
    return [[ring.ambient.parse(c) for c in r] for r in rows]


class TestKahler:
    def test_affine_line_free(self):
        omega = kahler(RingPresentation.free(("x",)))
        assert omega.ngens == 1
        assert omega.relations.nrows == 0
        assert omega.gen_names == ("dx",)

    def test_pinch_single_jacobian_row(self):
        omega = kahler(PINCH)
        assert omega.ngens == 3
        assert [str(c) for c in omega.relations.rows[0]] == ["2*u", "-2*v*w", "-v^2"]

    def test_product_rule_row(self):
        omega = kahler(DC)
        assert [str(c) for c in omega.relations.rows[0]] == ["v", "u", "0"]


class TestTangent:
    def test_pinch_generators(self):
        T, rows = tangent(PINCH)
        assert len(rows) == 4
        textbook = parse_rows(
            PINCH,
            [
                ["v*w", "u", "0"],
                ["u", "v", "0"],
                ["v^2", "0", "2*u"],
                ["0", "v", "-2*w"],
            ],
        )
        span = module_gb(PINCH, [list(r) for r in rows], 3)
        assert all(module_contains(PINCH, span, r) for r in textbook)
        back = module_gb(PINCH, [list(r) for r in textbook], 3)
        assert all(module_contains(PINCH, back, list(r)) for r in rows)

    def test_smooth_plane_free(self):
        T, rows = tangent(RingPresentation.free(("x", "y")))
        assert T.ngens == 2
        assert T.relations.nrows == 0

    def test_double_crossing_fields(self):
        T, rows = tangent(DC)
        expected = parse_rows(DC, [["u", "0", "0"], ["0", "v", "0"], ["0", "0", "1"]])
        span = module_gb(DC, [list(r) for r in rows], 3)
        assert all(module_contains(DC, span, r) for r in expected)

    def test_fields_annihilate_jacobian(self):
        _, rows = tangent(PINCH)
        jac = [PINCH.parse(s) for s in ("2*u", "-2*v*w", "-v^2")]
        for r in rows:
            pairing = sum((c * j for c, j in zip(r, jac)), PINCH.ambient.zero())
            assert PINCH.is_zero(pairing)


class TestT1:
    def test_pinch_cyclic_with_jacobian_annihilator(self):
        E = t1(PINCH)
        assert E.ngens == 1
        assert ideal_equal(PINCH, annihilator(E), ["u", "v^2", "v*w"])

    def test_smooth_hypersurface_vanishes(self):
        X = RingPresentation(PolyRing(("u", "v")), ["u"])
        assert t1(X).is_zero_module()

    @pytest.mark.parametrize("ring", [PINCH, DC])
    def test_matches_jacobian_quotient(self, ring):
        assert t1_hypersurface_check(ring)


class TestSingularSubscheme:
    def test_pinch(self):
        sing = singular_subscheme(PINCH)
        assert ideal_equal(RingPresentation(PINCH.ambient), sing.ideal, ["u", "v^2", "v*w"])

    def test_double_crossing(self):
        sing = singular_subscheme(DC)
        assert ideal_equal(RingPresentation(DC.ambient), sing.ideal, ["u", "v"])

    def test_smooth(self):
        X = RingPresentation(PolyRing(("u", "v")), ["u"])
        assert singular_subscheme(X).ideal == [X.ambient.one()]

    def test_needs_hypersurface(self):
        X = RingPresentation(PolyRing(("u", "v")), ["u", "v"])
        with pytest.raises(InputError):
            singular_subscheme(X)


class TestCyclicIso:
    def test_both_zero(self):
        Z = FPModule.cyclic(PINCH, ["1"])
        assert certify_cyclic_iso(Z, FPModule.cyclic(PINCH, ["1"]))

    def test_zero_against_nonzero(self):
        Z = FPModule.cyclic(PINCH, ["1"])
        assert not certify_cyclic_iso(Z, FPModule.cyclic(PINCH, ["u"]))

    def test_different_annihilators(self):
        A = FPModule.cyclic(PINCH, ["u"])
        B = FPModule.cyclic(PINCH, ["v"])
        assert not certify_cyclic_iso(A, B)

    def test_noncyclic_rejected(self):
        assert not certify_cyclic_iso(FPModule.free(PINCH, 2), FPModule.cyclic(PINCH, ["u"]))


class TestIdealYComparison:
    def test_pinch_line_bundle_on_point(self):
        comp = ideal_y_in_xsing(glue.pushout(pinch_datum()))
        assert comp.certificate["free"]
        assert ideal_equal(comp.y_ring, comp.d_ideal, ["w"])
        assert comp.generator_index is not None
        assert str(comp.y_gens[comp.generator_index]) == "v"

    def test_dc_empty_branch_locus(self):
        comp = ideal_y_in_xsing(glue.pushout(dc_datum()))
        # no pinch points: D is cut out by the unit ideal
        assert ideal_equal(comp.y_ring, comp.d_ideal, ["1"])
        assert comp.d_ring.is_trivial()
        assert comp.certificate["free"]
        assert comp.certificate["method"] == "empty support"

    def test_pinch_module_killed_by_sing_ideal(self):
        comp = ideal_y_in_xsing(glue.pushout(pinch_datum()))
        assert not comp.module.is_zero_module()


class TestClassifyPoints:
    def test_pinch_strata(self):
        rep = classify_points(glue.pushout(pinch_datum()))
        assert ideal_equal(PINCH, rep.y_ideal, ["u", "v"])
        assert [str(g) for g in rep.d_ideal] == ["w"]
        assert rep.jacobian_support_matches
        assert rep.off_d_reduced
        assert rep.dc_description == "complement of V(D) in Y"

    def test_dc_strata(self):
        rep = classify_points(glue.pushout(dc_datum()))
        y_ring = RingPresentation(DC.ambient, list(DC.relations) + [DC.parse("u"), DC.parse("v")])
        assert ideal_equal(y_ring, rep.d_ideal, ["1"])
        assert rep.jacobian_support_matches
        assert rep.off_d_reduced


class TestAlpha:
    def test_pinch_chain_rule_images(self):
        p = glue.pushout(pinch_datum())
        amb = p.datum.abar.ambient
        cases = [
            (["v*w", "u", "0"], ["0", "x*y"]),
            (["u", "v", "0"], ["0", "y"]),
            (["v^2", "0", "2*u"], ["y", "0"]),
            (["0", "v", "-2*w"], ["-x", "y"]),
        ]
        for derivation, image in cases:
            lifted = lift_derivation(p, [p.A.ambient.parse(c) for c in derivation])
            assert [str(c) for c in lifted] == [str(amb.parse(s)) for s in image]

    def test_lift_satisfies_chain_rule(self):
        p = glue.pushout(pinch_datum())
        abar = p.datum.abar
        derivation = [p.A.ambient.parse(c) for c in ("v*w", "u", "0")]
        lifted = lift_derivation(p, derivation)
        for j, img in enumerate(p.fsharp.images):
            applied = abar.ambient.zero()
            for v, c in zip(abar.ambient.vars, lifted):
                from semismooth.poly import diff

                applied = applied + diff(img, v) * c
            assert abar.is_zero(applied - p.fsharp.apply(derivation[j]))

    def test_dc_normal_direction(self):
        p = glue.pushout(dc_datum())
        lifted = lift_derivation(p, [p.A.ambient.parse(c) for c in ("0", "0", "1")])
        assert [str(c) for c in lifted] == ["1", "0", "0"]

    def test_alpha_injective(self):
        a = build_alpha(glue.pushout(pinch_datum()))
        assert a.alpha.is_injective()

    def test_identity_gluing_alpha_iso(self):
        a = build_alpha(glue.pushout(identity_datum()))
        assert a.alpha.is_isomorphism()


class TestTangentSequence:
    def test_pinch_report(self):
        a = build_alpha(glue.pushout(pinch_datum()))
        rep = tangent_sequence_check(a)
        assert rep["pass"]
        assert rep["intermediate_generator"] is not None

    def test_pinch_intermediate_generator_is_euler_class(self):
        # the generating class of alpha(T)/(y * pushforward) is x d/dx up to
        # sign and twist: subtracting a rational multiple of x d/dx from the
        # generator's field must land in y times the ambient fields
        a = build_alpha(glue.pushout(pinch_datum()))
        rep = tangent_sequence_check(a)
        gen = rep["intermediate_generator"]
        abar = a.pushout.datum.abar
        amb = abar.ambient
        field = [amb.zero(), amb.zero()]
        for i, c in enumerate(gen):
            sec = a.pushed.section(i)
            coeffs = [a.pushout.fsharp.apply(c) * s for s in sec]
            for l in range(len(field)):
                contrib = sum(
                    (coeffs[k] * a.tbar_rows[k][l] for k in range(len(coeffs))),
                    amb.zero(),
                )
                field[l] = field[l] + contrib
        y = a.pushout.datum.y
        for sign in (1, -1):
            shifted = [field[0] - sign * amb.parse("x"), field[1]]
            quot = RingPresentation(amb, list(abar.relations) + [y])
            if all(quot.is_zero(c) for c in shifted):
                return
        pytest.fail("generator class is not x d/dx modulo the twist")

    def test_dc_report(self):
        a = build_alpha(glue.pushout(dc_datum()))
        assert tangent_sequence_check(a)["pass"]

    def test_identity_gluing_degenerates(self):
        a = build_alpha(glue.pushout(identity_datum()))
        rep = tangent_sequence_check(a)
        assert rep["pass"]
        assert rep["cokernel_zero"]
        assert "intermediate_generator" not in rep


class TestRestrictedSequence:
    def test_pinch_exact(self):
        a = build_alpha(glue.pushout(pinch_datum()))
        rep = restricted_sequence_check(a)
        for key in (
            "left_injective",
            "composite_zero",
            "right_surjective",
            "kernel_equals_invariant_image",
        ):
            assert rep[key], key
        assert rep["pass"]

    def test_dc_exact(self):
        a = build_alpha(glue.pushout(dc_datum()))
        assert restricted_sequence_check(a)["pass"]

    def test_wrong_involution_detected(self):
        a = build_alpha(glue.pushout(pinch_datum(involution=("x", "y"))))
        rep = restricted_sequence_check(a)
        assert not rep["pass"]
        assert not rep["composite_zero"] or not rep["kernel_equals_invariant_image"]

    def test_missing_involution_rejected(self):
        a = build_alpha(glue.pushout(pinch_datum(involution=None)))
        with pytest.raises(InputError):
            restricted_sequence_check(a)


class TestT1OnY:
    def test_pinch_line_bundle(self):
        M = t1_on_y(glue.pushout(pinch_datum()))
        cert = free_rank_one_certificate(M)
        assert cert["free"]

    def test_dc_line_bundle(self):
        M = t1_on_y(glue.pushout(dc_datum()))
        cert = free_rank_one_certificate(M)
        assert cert["free"]

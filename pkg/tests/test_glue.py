"""Pushout construction, cartesian certification, conductors, base change."""

import pytest

from semismooth.errors import InputError, PreconditionError
from semismooth.glue import (
    GluingDatum,
    PushoutPresentation,
    conductor,
    conductor_is_abar_ideal,
    flat_base_change,
    localization_inverts_conductor,
    pushout,
    verify_cartesian,
)
from semismooth.groebner import ideal_equal
from semismooth.poly import PolyRing
from semismooth.rings import RingMap, RingPresentation

CARTESIAN_KEYS = (
    "jsharp_surjective",
    "kernel_ideal_is_divisor",
    "kernel_spans_divisor_module",
    "restricted_kernel_zero",
    "module_finite",
)


def pinch_datum(involution=("-x", "y")):
    abar = RingPresentation.free(("x", "y"))
    b = RingPresentation.free(("t",))
    return GluingDatum(
        abar, "y", b, ["x^2"], ["x", "1"], names=("u", "v", "w"),
        involution=list(involution) if involution else None,
    )


def dc_datum():
    abar = RingPresentation(PolyRing(("x", "y", "z")), ["z^2 - 1"])
    b = RingPresentation.free(("t",))
    return GluingDatum(
        abar, "y", b, ["x"], ["z - 1", "z + 1"], names=("u", "v", "w"),
        involution=["x", "y", "-z"],
    )


def identity_datum():
    abar = RingPresentation.free(("x", "y"))
    b = RingPresentation.free(("s0",))
    return GluingDatum(abar, "y", b, ["x"], ["1"], names=("a", "c"))


class TestPushout:
    def test_pinch_presentation(self):
        p = pushout(pinch_datum())
        free = RingPresentation(p.A.ambient)
        assert ideal_equal(free, list(p.A.relations), ["u^2 - v^2*w"])
        assert [str(q) for q in p.fsharp.images] == ["x*y", "y", "x^2"]
        assert [str(q) for q in p.jsharp.images] == ["0", "0", "t"]

    def test_double_crossing_presentation(self):
        p = pushout(dc_datum())
        free = RingPresentation(p.A.ambient)
        assert ideal_equal(free, list(p.A.relations), ["u*v"])
        assert [str(q) for q in p.fsharp.images] == ["y*z - y", "y*z + y", "x"]

    def test_identity_gluing_recovers_abar(self):
        p = pushout(identity_datum())
        assert list(p.A.relations) == []
        assert [str(q) for q in p.fsharp.images] == ["y", "x"]

    def test_auto_names(self):
        datum = GluingDatum(
            RingPresentation.free(("x", "y")),
            "y",
            RingPresentation.free(("t",)),
            ["x^2"],
            ["x", "1"],
        )
        p = pushout(datum)
        assert len(p.gen_names) == 3
        assert len(set(p.gen_names)) == 3

    def test_name_count_checked(self):
        datum = GluingDatum(
            RingPresentation.free(("x", "y")),
            "y",
            RingPresentation.free(("t",)),
            ["x^2"],
            ["x", "1"],
            names=("u", "v"),
        )
        with pytest.raises(InputError):
            pushout(datum)


class TestVerifyCartesian:
    def test_pinch_all_checks(self):
        rep = verify_cartesian(pushout(pinch_datum()))
        for key in CARTESIAN_KEYS:
            assert rep[key], key
        assert rep["pass"]

    def test_identity_gluing(self):
        assert verify_cartesian(pushout(identity_datum()))["pass"]

    def test_corrupted_presentation_fails_restricted_kernel(self):
        datum = pinch_datum()
        p = pushout(datum)
        stripped = RingPresentation(p.A.ambient, [])
        corrupt = PushoutPresentation(
            datum,
            stripped,
            RingMap(stripped, datum.abar, list(p.fsharp.images)),
            RingMap(stripped, datum.b, list(p.jsharp.images)),
            p.gen_names,
        )
        rep = verify_cartesian(corrupt)
        assert not rep["restricted_kernel_zero"]
        assert not rep["pass"]
        assert rep["jsharp_surjective"]


class TestConductor:
    def test_pinch_conductor(self):
        p = pushout(pinch_datum())
        cond_a, cond_abar = conductor(p)
        assert ideal_equal(p.A, cond_a, ["u", "v"])
        assert ideal_equal(p.datum.abar, cond_abar, ["y"])

    def test_double_crossing_conductor(self):
        p = pushout(dc_datum())
        cond_a, cond_abar = conductor(p)
        assert ideal_equal(p.A, cond_a, ["u", "v"])
        assert ideal_equal(p.datum.abar, cond_abar, ["y"])

    def test_identity_conductor_is_unit(self):
        p = pushout(identity_datum())
        cond_a, cond_abar = conductor(p)
        assert ideal_equal(p.A, cond_a, ["1"])
        assert ideal_equal(p.datum.abar, cond_abar, ["1"])

    @pytest.mark.parametrize("datum", [pinch_datum, dc_datum, identity_datum])
    def test_stays_an_ideal_upstairs(self, datum):
        assert conductor_is_abar_ideal(pushout(datum()))

    def test_localization_inverts(self):
        p = pushout(pinch_datum())
        assert localization_inverts_conductor(p)
        assert localization_inverts_conductor(p, element="v")

    def test_localization_for_dc(self):
        assert localization_inverts_conductor(pushout(dc_datum()))


class TestFlatBaseChange:
    def test_pinch_stays_cartesian(self):
        datum2 = flat_base_change(pinch_datum())
        p2 = pushout(datum2)
        assert verify_cartesian(p2)["pass"]

    def test_conductor_extends(self):
        p2 = pushout(flat_base_change(pinch_datum()))
        cond_a, cond_abar = conductor(p2)
        assert ideal_equal(p2.datum.abar, cond_abar, ["y"])


class TestDatumValidation:
    def test_zero_divisor_rejected(self):
        with pytest.raises(InputError):
            GluingDatum(
                RingPresentation.free(("x", "y")),
                "0",
                RingPresentation.free(("t",)),
                ["x^2"],
                ["1"],
            )

    def test_empty_module_gens_rejected(self):
        with pytest.raises(InputError):
            GluingDatum(
                RingPresentation.free(("x", "y")),
                "y",
                RingPresentation.free(("t",)),
                ["x^2"],
                [],
            )

    def test_noninjective_phi(self):
        datum = GluingDatum(
            RingPresentation.free(("x", "y")),
            "y",
            RingPresentation.free(("t", "s")),
            ["x", "x"],
            ["1"],
        )
        with pytest.raises(PreconditionError) as exc:
            datum.validate()
        assert exc.value.failure_class == "phi_not_injective"

    def test_module_generators_must_span(self):
        datum = GluingDatum(
            RingPresentation.free(("x", "y")),
            "y",
            RingPresentation.free(("t",)),
            ["x^2"],
            ["1"],
        )
        with pytest.raises(PreconditionError) as exc:
            datum.validate()
        assert exc.value.failure_class == "datum_not_finite"

    def test_involution_must_square_to_identity(self):
        with pytest.raises(InputError, match="square"):
            pinch_datum(involution=("x + 1", "y"))

    def test_involution_must_fix_base_image(self):
        with pytest.raises(InputError, match="image of the base"):
            pinch_datum(involution=("1 - x", "y"))

    def test_valid_involution_stored(self):
        datum = pinch_datum()
        assert datum.involution is not None
        img = datum.involution.apply(datum.abar.ambient.parse("x"))
        assert str(datum.abar_mod_y.nf(img)) == "-x"

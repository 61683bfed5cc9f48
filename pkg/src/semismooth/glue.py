"""Pushout of a finite gluing datum along a principal divisor.

The datum is a ring Abar with a distinguished element y, a base ring B, and an
injective finite map phi from B into Abar/(y) with supplied module generators.
The pushout A is the fiber product of Abar and B over Abar/(y), presented on
explicit generators: y*m for each module generator m, together with lifts of
the phi-images of the B variables.  Its relations are the kernel of the
generator map into Abar; injectivity of phi makes the B-side kernel condition
automatic.

verify_cartesian is the completeness certificate.  Ideal-level equality of
fsharp(ker jsharp) with (y) does not pin down the fiber product (dropping the
generator y*x from the Weierstrass-style example keeps the ideals equal while
shrinking A), so the module-level check that the kernel's image spans y*Abar
over A is included alongside the contract checks.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from . import config, groebner, fpmod
from .errors import CompletenessError, InputError, PreconditionError
from .groebner import ModuleMatrix
from .linalg import monomials_up_to
from .poly import GREVLEX, Polynomial, PolyRing, as_poly
from .rings import RingMap, RingPresentation


class GluingDatum:
    """Gluing input: (Abar, y, B, phi: B -> Abar/(y), module generators).

    When the restriction to the divisor is a double cover, the deck
    involution can be supplied as images of the Abar variables; it is
    stored as a self-map of Abar/(y) and must fix the image of phi.
    """

    __slots__ = ("abar", "y", "b", "abar_mod_y", "phi", "module_gens", "names", "involution")

    def __init__(
        self,
        abar: RingPresentation,
        y,
        b: RingPresentation,
        phi_images: Sequence,
        module_gens: Sequence,
        names: Optional[Sequence] = None,
        involution: Optional[Sequence] = None,
    ):
        self.abar = abar
        self.y = as_poly(abar.ambient, y)
        if self.y.is_zero():
            raise InputError("gluing divisor generator is zero")
        self.b = b
        self.abar_mod_y = abar.quotient([self.y])
        images = [as_poly(abar.ambient, p) for p in phi_images]
        self.phi = RingMap(b, self.abar_mod_y, images)
        self.module_gens = tuple(as_poly(abar.ambient, m) for m in module_gens)
        if not self.module_gens:
            raise InputError("module generator list is empty")
        self.names = tuple(names) if names is not None else None
        if involution is None:
            self.involution = None
        else:
            sigma = RingMap(
                self.abar_mod_y,
                self.abar_mod_y,
                [as_poly(abar.ambient, p) for p in involution],
            )
            for x, img in zip(abar.ambient.gens(), sigma.images):
                if not self.abar_mod_y.is_zero(sigma.apply(img) - x):
                    raise InputError(f"involution does not square to the identity on {x}")
            for p in self.phi.images:
                if not self.abar_mod_y.is_zero(sigma.apply(p) - p):
                    raise InputError("involution moves the image of the base ring")
            self.involution = sigma

    def validate(self, budget=None) -> None:
        """Injectivity of phi plus module-finiteness over the given generators."""
        if not groebner.is_injective(self.phi, budget):
            raise PreconditionError("phi_not_injective", "the base map into Abar/(y) has a kernel")
        pf = fpmod.pushforward(self.phi, fpmod.FPModule.free(self.abar_mod_y, 1), list(self.module_gens), budget)
        if pf.express([self.abar.ambient.one()], budget) is None:
            raise PreconditionError("datum_not_finite", "1 is not in the span of the module generators")
        for x in self.abar.ambient.gens():
            for m in self.module_gens:
                if pf.express([x * m], budget) is None:
                    raise PreconditionError(
                        "datum_not_finite",
                        f"{x * m} escapes the module generators over the base",
                    )


class PushoutPresentation:
    """The glued ring with its two structure maps."""

    __slots__ = ("datum", "A", "fsharp", "jsharp", "gen_names", "conductor_A", "conductor_Abar", "_abar_over_a")

    def __init__(self, datum, A, fsharp, jsharp, gen_names):
        self.datum = datum
        self.A = A
        self.fsharp = fsharp
        self.jsharp = jsharp
        self.gen_names = gen_names
        self.conductor_A = None
        self.conductor_Abar = None
        self._abar_over_a = None

    def abar_over_a(self, budget=None) -> fpmod.Pushforward:
        """Abar as an A-module on the datum's generators (cached)."""
        if self._abar_over_a is None:
            self._abar_over_a = fpmod.pushforward(
                self.fsharp,
                fpmod.FPModule.free(self.datum.abar, 1),
                list(self.datum.module_gens),
                budget,
            )
        return self._abar_over_a


def _auto_names(count_y: int, b: RingPresentation, taken=()) -> list:
    names = []
    used = set(taken)
    for i in range(count_y):
        n = groebner._fresh_name(f"g{i}", tuple(used))
        names.append(n)
        used.add(n)
    for v in b.ambient.vars:
        n = groebner._fresh_name(v, tuple(used))
        names.append(n)
        used.add(n)
    return names


def _build(datum: GluingDatum, ygens: Sequence, names: Sequence, budget=None) -> PushoutPresentation:
    abar = datum.abar
    lifts = [img for img in datum.phi.images]     # ambient representatives lift phi
    images = list(ygens) + lifts
    ambient = PolyRing(tuple(names), GREVLEX)
    free_src = RingPresentation(ambient, [])
    gen_map = RingMap(free_src, abar, images, check=False)
    relations = [p for p in groebner.ring_map_kernel(gen_map, budget) if not p.is_zero()]
    A = RingPresentation(ambient, relations)
    fsharp = RingMap(A, abar, images)
    bimgs = [datum.b.ambient.zero()] * len(ygens) + list(datum.b.ambient.gens())
    jsharp = RingMap(A, datum.b, bimgs)
    return PushoutPresentation(datum, A, fsharp, jsharp, tuple(names))


def pushout(datum: GluingDatum, degree_bound: Optional[int] = None, budget=None) -> PushoutPresentation:
    """Present the fiber product of Abar and B over Abar/(y).

    Starts from y*m for the datum's module generators plus lifts of the B
    variables; when certification fails, y times monomials up to degree_bound
    are added (skipping those already in the subalgebra) and the presentation
    is rebuilt once.  A still-failing certificate raises CompletenessError
    with the offending element.
    """
    if degree_bound is None:
        degree_bound = config.DEGREE_BOUND
    datum.validate(budget)
    ygens = [datum.y * m for m in datum.module_gens]
    names = list(datum.names) if datum.names else _auto_names(len(ygens), datum.b)
    if len(names) != len(ygens) + datum.b.ambient.nvars:
        raise InputError("names must cover y-generators then B variables")
    p = _build(datum, ygens, names, budget)
    report = verify_cartesian(p, budget)
    if report["pass"]:
        return p

    extra = []
    for e in monomials_up_to(datum.abar.ambient, degree_bound):
        mu = datum.abar.ambient.monomial(e)
        cand = datum.y * mu
        if datum.abar.is_zero(cand):
            continue
        if groebner.preimage(p.fsharp, cand, budget) is not None:
            continue
        if any(datum.abar.is_zero(cand - g) for g in ygens + extra):
            continue
        extra.append(cand)
    if extra:
        ygens2 = ygens + extra
        taken = set(names)
        fresh = []
        for i in range(len(extra)):
            n = groebner._fresh_name(f"g{len(ygens) + i}", tuple(taken))
            fresh.append(n)
            taken.add(n)
        names2 = names[: len(ygens)] + fresh + names[len(ygens):]
        p = _build(datum, ygens2, names2, budget)
        report = verify_cartesian(p, budget)
        if report["pass"]:
            return p
    raise CompletenessError(
        f"pushout generators incomplete at degree {degree_bound}",
        witness=report.get("witness"),
    )


def verify_cartesian(p: PushoutPresentation, budget=None) -> dict:
    """Certificate that A is the full fiber product.

    Checks: (a) jsharp surjective; (b) fsharp(ker jsharp) = (y) as ideals and,
    strengthening it, that the kernel's image spans y*Abar as an A-module;
    (c) intersection of the two structure kernels is no larger than A's
    relations; (d) Abar is module-finite over A on the datum's generators.
    """
    datum = p.datum
    abar = datum.abar
    report: dict = {"witness": None}

    report["jsharp_surjective"] = groebner.is_surjective(p.jsharp, budget)

    kj = groebner.ring_map_kernel(p.jsharp, budget)
    kernel_images = [p.fsharp.apply(q) for q in kj]
    report["kernel_ideal_is_divisor"] = groebner.ideal_equal(abar, kernel_images, [datum.y], budget)

    kf = groebner.ring_map_kernel(p.fsharp, budget)
    free_amb = RingPresentation(p.A.ambient, [])
    meet = groebner.intersect(free_amb, kf, kj, budget)
    report["restricted_kernel_zero"] = all(p.A.is_zero(q) for q in meet)

    pf = p.abar_over_a(budget)
    finite_witness = None
    ok = pf.express([abar.ambient.one()], budget) is not None
    if not ok:
        finite_witness = "1"
    if ok:
        for x in abar.ambient.gens():
            for m in datum.module_gens:
                if pf.express([x * m], budget) is None:
                    ok = False
                    finite_witness = str(x * m)
                    break
            if not ok:
                break
    report["module_finite"] = ok

    if ok:
        span_rows = []
        for q in kernel_images:
            row = pf.express([q], budget)
            if row is None:
                ok = False
                finite_witness = str(q)
                break
            span_rows.append(row)
        if ok:
            all_rows = span_rows + [list(r) for r in pf.module.relations.rows]
            span_gb = groebner.module_gb(p.A, all_rows, pf.module.ngens, budget)
            good = True
            for m in datum.module_gens:
                target = pf.express([datum.y * m], budget)
                if target is None or not groebner.module_contains(p.A, span_gb, target, budget):
                    good = False
                    report["witness"] = str(datum.y * m)
                    break
            report["kernel_spans_divisor_module"] = good
        else:
            report["kernel_spans_divisor_module"] = False
            report["witness"] = finite_witness
    else:
        report["kernel_spans_divisor_module"] = False
        report["witness"] = finite_witness

    report["pass"] = all(
        report[k]
        for k in (
            "jsharp_surjective",
            "kernel_ideal_is_divisor",
            "kernel_spans_divisor_module",
            "restricted_kernel_zero",
            "module_finite",
        )
    )
    return report


def conductor(p: PushoutPresentation, budget=None) -> tuple:
    """(Ann_A(Abar/A), its extension to Abar); cached on the presentation."""
    if p.conductor_A is not None:
        return p.conductor_A, p.conductor_Abar
    pf = p.abar_over_a(budget)
    one = pf.express([p.datum.abar.ambient.one()], budget)
    if one is None:
        raise PreconditionError("datum_not_finite", "1 has no expression over the module generators")
    rows = [list(r) for r in pf.module.relations.rows] + [one]
    quot = fpmod.FPModule(p.A, rows, pf.module.ngens)
    cond_a = fpmod.annihilator(quot, budget)
    if not cond_a:
        cond_a = []
    if quot.is_zero_module(budget):
        cond_a = [p.A.ambient.one()]
    cond_abar = fpmod.quotient_ideal_gens(p.datum.abar, [p.fsharp.apply(c) for c in cond_a], budget)
    p.conductor_A = cond_a
    p.conductor_Abar = cond_abar
    return cond_a, cond_abar


def conductor_is_abar_ideal(p: PushoutPresentation, budget=None) -> bool:
    """The conductor stays an ideal after extension: c*m lands back in its span."""
    cond_a, _ = conductor(p, budget)
    pf = p.abar_over_a(budget)
    span_rows = []
    for c in cond_a:
        img = p.fsharp.apply(c)
        row = pf.express([img], budget)
        if row is None:
            return False
        span_rows.append(row)
    all_rows = span_rows + [list(r) for r in pf.module.relations.rows]
    gb = groebner.module_gb(p.A, all_rows, pf.module.ngens, budget)
    for c in cond_a:
        img = p.fsharp.apply(c)
        for m in p.datum.module_gens:
            row = pf.express([img * m], budget)
            if row is None or not groebner.module_contains(p.A, gb, row, budget):
                return False
    return True


def localization_inverts_conductor(p: PushoutPresentation, element=None, budget=None) -> bool:
    """After inverting a conductor element, fsharp becomes an isomorphism."""
    cond_a, _ = conductor(p, budget)
    if element is None:
        if not cond_a:
            return False
        element = cond_a[0]
    element = as_poly(p.A.ambient, element)
    sa = groebner._fresh_name("s", p.A.ambient.vars)
    amb_a = PolyRing(p.A.ambient.vars + (sa,), GREVLEX)
    loc_a = RingPresentation(
        amb_a,
        [r.rename(amb_a) for r in p.A.relations] + [amb_a.var(sa) * element.rename(amb_a) - amb_a.one()],
    )
    abar = p.datum.abar
    sb = groebner._fresh_name("s", abar.ambient.vars)
    amb_b = PolyRing(abar.ambient.vars + (sb,), GREVLEX)
    img = p.fsharp.apply(element)
    loc_b = RingPresentation(
        amb_b,
        [r.rename(amb_b) for r in abar.relations] + [amb_b.var(sb) * img.rename(amb_b) - amb_b.one()],
    )
    images = {v: p.fsharp.images[i].rename(amb_b) for i, v in enumerate(p.A.ambient.vars)}
    images[sa] = amb_b.var(sb)
    loc_map = RingMap(loc_a, loc_b, images)
    return groebner.certify_isomorphism(loc_map, budget)


def flat_base_change(datum: GluingDatum, var: str = "r") -> GluingDatum:
    """Adjoin a free variable everywhere; gluing data stay gluing data."""

    def extend(ring: RingPresentation) -> RingPresentation:
        name = groebner._fresh_name(var, ring.ambient.vars)
        amb = PolyRing(ring.ambient.vars + (name,), ring.ambient.order)
        return RingPresentation(amb, [p.rename(amb) for p in ring.relations])

    abar2 = extend(datum.abar)
    b2 = extend(datum.b)
    phi_images = [p.rename(abar2.ambient) for p in datum.phi.images]
    phi_images.append(abar2.ambient.var(abar2.ambient.vars[-1]))
    return GluingDatum(
        abar2,
        datum.y.rename(abar2.ambient),
        b2,
        phi_images,
        [m.rename(abar2.ambient) for m in datum.module_gens],
        None,
    )

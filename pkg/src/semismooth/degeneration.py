"""Deformation to the normal cone as an explicit family over the line, the
fiberwise gluing of such families, and the base-change verification suite.

A family is a presented ring with a distinguished parameter variable; its
flatness over the parameter line is certified by torsion freeness, which over
a principal ideal domain is the whole story.  The normal cone degeneration of
a Cartier divisor needs only the single Rees chart R[t, s]/(y - s t), so no
blow-up machinery appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import fpmod, glue, groebner, singularity
from .errors import InputError, PreconditionError
from .fpmod import FPModule
from .poly import Polynomial, PolyRing, as_poly, diff
from .rings import RingMap, RingPresentation


class FamilyRing:
    """A presented ring flat over Q[t] for a named parameter t."""

    __slots__ = ("ring", "tname")

    def __init__(self, ring: RingPresentation, tname: str):
        if tname not in ring.ambient.vars:
            raise InputError(f"parameter {tname} is not an ambient variable")
        self.ring = ring
        self.tname = tname

    @property
    def t(self) -> Polynomial:
        return self.ring.ambient.var(self.tname)

    def is_t_torsion_free(self, budget=None) -> bool:
        """(relations : t) = relations; flatness over the parameter line."""
        quot = groebner.colon(RingPresentation(self.ring.ambient, []),
                              list(self.ring.relations), [self.t], budget)
        return groebner.ideal_equal(RingPresentation(self.ring.ambient, []),
                                    quot, list(self.ring.relations), budget)

    def __repr__(self):
        return f"FamilyRing({self.ring!r}, t={self.tname})"


@dataclass
class FiberSpec:
    family: FamilyRing
    t0: Fraction


def fiber(fam: FamilyRing, t0, budget=None) -> RingPresentation:
    """The fiber presentation: substitute the parameter and reduce."""
    t0 = Fraction(t0)
    keep = [v for v in fam.ring.ambient.vars if v != fam.tname]
    amb = PolyRing(tuple(keep), fam.ring.ambient.order)
    images = {v: amb.var(v) for v in keep}
    images[fam.tname] = amb.const(t0)
    rels = [r.substitute(amb, images) for r in fam.ring.relations]
    free = RingPresentation(amb, [])
    rels = fpmod.quotient_ideal_gens(free, [r for r in rels if not r.is_zero()], budget)
    return RingPresentation(amb, rels)


def fiber_map(fam: FamilyRing, fib: RingPresentation, t0) -> RingMap:
    """The specialization map from the family onto a fiber."""
    t0 = Fraction(t0)
    images = []
    for v in fam.ring.ambient.vars:
        images.append(fib.ambient.const(t0) if v == fam.tname else fib.ambient.var(v))
    return RingMap(fam.ring, fib, images)


@dataclass
class NormalConeChart:
    """The Rees chart of the degeneration to the normal cone of V(y)."""

    fam: FamilyRing
    abar: RingPresentation
    y: Polynomial
    sname: str
    tname: str

    @property
    def s(self) -> Polynomial:
        return self.fam.ring.ambient.var(self.sname)


def normal_cone_chart(abar: RingPresentation, y, sname: str = "s", tname: str = "t") -> NormalConeChart:
    """Present the degeneration chart Abar[t, s]/(y - s t).

    The divisor must be principal; its product decomposition y = s t makes
    the zero section {s = 0} the embedded copy of V(y) x A^1, the fiber at
    t = 1 a copy of Abar, and the fiber at t = 0 the normal bundle total
    space, a polynomial ring over Abar/(y).
    """
    y = as_poly(abar.ambient, y)
    taken = list(abar.ambient.vars)
    sname = groebner._fresh_name(sname, taken)
    tname = groebner._fresh_name(tname, taken + [sname])
    amb = PolyRing(tuple(abar.ambient.vars) + (sname, tname), abar.ambient.order)
    s, t = amb.var(sname), amb.var(tname)
    rels = [r.rename(amb) for r in abar.relations] + [y.rename(amb) - s * t]
    ring = RingPresentation(amb, rels)
    return NormalConeChart(FamilyRing(ring, tname), abar, y, sname, tname)


def chart_fiber_isomorphism_check(chart: NormalConeChart, budget=None) -> dict:
    """Certify the two distinguished fibers of the Rees chart.

    At t = 1 the fiber is Abar again (send each original variable to
    itself); at t = 0 it is the polynomial ring in s over Abar/(y)."""
    report: dict = {}
    fib1 = fiber(chart.fam, 1, budget)
    images = [fib1.ambient.var(v) for v in chart.abar.ambient.vars]
    to_fiber = RingMap(chart.abar, fib1, images)
    report["t1_isomorphic_to_abar"] = groebner.certify_isomorphism(to_fiber, budget)

    fib0 = fiber(chart.fam, 0, budget)
    expected = RingPresentation(
        fib0.ambient,
        [r.rename(fib0.ambient) for r in chart.abar.relations] + [chart.y.rename(fib0.ambient)],
    )
    report["t0_is_normal_bundle"] = fib0.same_ideal(expected)
    report["pass"] = report["t1_isomorphic_to_abar"] and report["t0_is_normal_bundle"]
    return report


@dataclass
class FamilyPushout:
    """A fiberwise glued family with all its ingredients kept around."""

    chart: NormalConeChart
    base_datum: glue.GluingDatum
    fam_datum: glue.GluingDatum
    pushout: glue.PushoutPresentation
    fam: FamilyRing


def family_pushout(datum: glue.GluingDatum, sname: str = "s", tname: str = "t",
                   degree_bound: Optional[int] = None, budget=None) -> FamilyPushout:
    """Glue the normal cone chart of a datum along its zero section over Q[t].

    The family datum replaces the divisor by the Rees variable s and extends
    the base ring by the parameter; the result degenerates the original
    pushout to the gluing of the normal bundle.
    """
    chart = normal_cone_chart(datum.abar, datum.y, sname, tname)
    cham = chart.fam.ring.ambient
    tname = chart.tname

    bamb = datum.b.ambient
    if tname in bamb.vars:
        raise InputError(f"parameter {tname} collides with a base variable")
    bfam_amb = PolyRing(tuple(bamb.vars) + (tname,), bamb.order)
    bfam = RingPresentation(bfam_amb, [r.rename(bfam_amb) for r in datum.b.relations])

    phi_images = [img.rename(cham) for img in datum.phi.images] + [cham.var(tname)]
    module_gens = [as_poly(datum.abar.ambient, m).rename(cham) for m in datum.module_gens]
    names = list(datum.names) + [tname] if datum.names else None
    fam_datum = glue.GluingDatum(chart.fam.ring, chart.s, bfam, phi_images, module_gens, names=names)
    p = glue.pushout(fam_datum, degree_bound=degree_bound, budget=budget)
    fam = FamilyRing(p.A, tname)
    if not fam.is_t_torsion_free(budget):
        raise PreconditionError("family_not_flat",
                                "pushout relations have parameter torsion: "
                                + ", ".join(str(r) for r in p.A.relations))
    return FamilyPushout(chart, datum, fam_datum, p, fam)


def family_conductor_check(fp: FamilyPushout, budget=None) -> dict:
    """The singular locus of the family is the original Y times the line."""
    cond_fam, _ = glue.conductor(fp.pushout, budget)
    base = glue.pushout(fp.base_datum, budget=budget)
    cond_base, _ = glue.conductor(base, budget)
    famA = fp.pushout.A
    lifted = []
    for g in cond_base:
        lifted.append(as_poly(base.A.ambient, g).rename(famA.ambient))
    ok = groebner.ideal_equal(famA, cond_fam, lifted, budget)
    return {"conductor_is_constant": ok, "generators": [str(g) for g in cond_fam], "pass": ok}


def fiber_matches_original_check(fp: FamilyPushout, budget=None) -> dict:
    """fiber at t = 1 against the original pushout, as an explicit map."""
    base = glue.pushout(fp.base_datum, budget=budget)
    fib = fiber(fp.fam, 1, budget)
    images = [fib.ambient.var(v) for v in base.A.ambient.vars]
    ok = groebner.certify_isomorphism(RingMap(base.A, fib, images), budget)
    return {"fiber_one_isomorphic": ok, "pass": ok}


# ---------------------------------------------------------------------------
# relative T^1 and base change


def relative_kahler(fam: FamilyRing) -> FPModule:
    """Differentials relative to the parameter line: Omega mod dt."""
    amb = fam.ring.ambient
    keep = [v for v in amb.vars if v != fam.tname]
    rows = [[diff(f, v) for v in keep] for f in fam.ring.relations]
    return FPModule(fam.ring, rows, len(keep), [f"d{v}" for v in keep])


def relative_singular_ideal(fam: FamilyRing, budget=None) -> list:
    """The relative singular subscheme of a hypersurface family: the
    relation plus its partials in the fiber directions only."""
    if len(fam.ring.relations) != 1:
        raise InputError("relative singular subscheme needs a hypersurface family")
    f = fam.ring.relations[0]
    gens = [f] + [diff(f, v) for v in fam.ring.ambient.vars if v != fam.tname]
    return fpmod.quotient_ideal_gens(RingPresentation(fam.ring.ambient, []), gens, budget)


def relative_t1(fam: FamilyRing, budget=None) -> FPModule:
    return fpmod.ext1(relative_kahler(fam), FPModule.free(fam.ring, 1), budget)


def _element_annihilator_ideal(ring: RingPresentation, g: Polynomial, budget=None) -> list:
    rows = groebner.module_kernel(ring, [[g]], (), budget)
    return [r[0] for r in rows.rows]


def generically_smooth_check(fib: RingPresentation, budget=None) -> bool:
    """The Jacobian ideal of the fiber contains a nonzerodivisor.

    Checked as (0 : J) = 0.  A fiber with nilpotents fails: its Jacobian
    ideal is annihilated by the nilpotent part.
    """
    if not fib.relations:
        return True
    gens: list = []
    for f in fib.relations:
        gens.append(f)
        gens.extend(diff(f, v) for v in fib.ambient.vars)
    ann: Optional[list] = None
    for g in gens:
        g = fib.nf(g)
        if g.is_zero():
            continue
        cur = _element_annihilator_ideal(fib, g, budget)
        ann = cur if ann is None else groebner.intersect(fib, ann, cur, budget)
        if not ann or all(fib.is_zero(a) for a in ann):
            return True
    if ann is None:
        return False
    return all(fib.is_zero(a) for a in ann)


def base_change_t1_check(fam: FamilyRing, t0, budget=None) -> dict:
    """Relative T^1 specialized at t0 against T^1 of the fiber.

    Both are computed independently and matched by the cyclic-module
    certificate; the scheme intersection of the relative singular locus with
    the fiber is compared with the fiber's own singular subscheme.
    """
    if not fam.is_t_torsion_free(budget):
        raise PreconditionError("family_not_flat",
                                "relations have parameter torsion: "
                                + ", ".join(str(r) for r in fam.ring.relations))
    fib = fiber(fam, t0, budget)
    if not generically_smooth_check(fib, budget):
        raise PreconditionError("fiber_not_generically_smooth",
                                "fiber relations: " + ", ".join(str(r) for r in fib.relations))

    report: dict = {}
    T1q = relative_t1(fam, budget)
    spec = fiber_map(fam, fib, t0)
    pulled = fpmod.base_change(spec, T1q)
    pulled_min, _, _ = fpmod.minimize(pulled, budget)
    T1f = singularity.t1(fib, budget)

    if pulled_min.is_zero_module(budget) and T1f.is_zero_module(budget):
        report["t1_base_change_iso"] = True
    else:
        report["t1_base_change_iso"] = singularity.certify_cyclic_iso(pulled_min, T1f, budget)

    if len(fam.ring.relations) == 1 and len(fib.relations) == 1:
        rel_sing = relative_singular_ideal(fam, budget)
        keep = {v: fib.ambient.var(v) for v in fib.ambient.vars}
        keep[fam.tname] = fib.ambient.const(Fraction(t0))
        restricted = [g.substitute(fib.ambient, keep) for g in rel_sing]
        fib_sing = singularity.singular_subscheme(fib, budget)
        report["sing_intersection_match"] = groebner.ideal_equal(fib, restricted, fib_sing.ideal, budget)
    else:
        report["sing_intersection_match"] = None

    report["pass"] = bool(report["t1_base_change_iso"]) and report["sing_intersection_match"] is not False
    return report


def specialization_cocartesian_check(fp: FamilyPushout, t0, budget=None) -> dict:
    """Remark-level cartesianness of the specialized gluing square at t0."""
    t0 = Fraction(t0)
    fd = fp.fam_datum
    if not FamilyRing(fd.b, fp.fam.tname).is_t_torsion_free(budget):
        raise PreconditionError("base of the family is not flat over the line")
    if not fp.chart.fam.is_t_torsion_free(budget):
        raise PreconditionError("normalization family is not flat over the line")

    abar_fib = fiber(FamilyRing(fd.abar, fp.fam.tname), t0, budget)
    b_fib = fiber(FamilyRing(fd.b, fp.fam.tname), t0, budget)
    sub_abar = {v: abar_fib.ambient.var(v) for v in abar_fib.ambient.vars}
    sub_abar[fp.fam.tname] = abar_fib.ambient.const(t0)

    y_fib = fd.y.substitute(abar_fib.ambient, sub_abar)
    phi_fib = [img.substitute(abar_fib.ambient, sub_abar)
               for img, v in zip(fd.phi.images, fd.b.ambient.vars) if v != fp.fam.tname]
    gens_fib = [m.substitute(abar_fib.ambient, sub_abar) for m in fd.module_gens]
    datum_fib = glue.GluingDatum(abar_fib, y_fib, b_fib, phi_fib, gens_fib)

    A_fib = fiber(fp.fam, t0, budget)
    fsharp_images = []
    for img, v in zip(fp.pushout.fsharp.images, fp.pushout.A.ambient.vars):
        if v == fp.fam.tname:
            continue
        fsharp_images.append(img.substitute(abar_fib.ambient, sub_abar))
    sub_b = {w: b_fib.ambient.var(w) for w in b_fib.ambient.vars}
    sub_b[fp.fam.tname] = b_fib.ambient.const(t0)
    jsharp_images = []
    for img, v in zip(fp.pushout.jsharp.images, fp.pushout.A.ambient.vars):
        if v == fp.fam.tname:
            continue
        jsharp_images.append(img.substitute(b_fib.ambient, sub_b))
    names = [v for v in fp.pushout.gen_names if v != fp.fam.tname]
    p_fib = glue.PushoutPresentation(
        datum_fib, A_fib,
        RingMap(A_fib, abar_fib, fsharp_images),
        RingMap(A_fib, b_fib, jsharp_images),
        names,
    )
    report = glue.verify_cartesian(p_fib, budget)
    report["t0"] = str(t0)
    return report


def t1_constancy_check(fp: FamilyPushout, budget=None) -> dict:
    """The relative T^1 restricted to Y x A^1 is free of rank one.

    Constancy across fibers then follows from freeness; a smooth family has
    nothing to restrict and passes degenerately.
    """
    cond_fam, _ = glue.conductor(fp.pushout, budget)
    T1q = relative_t1(fp.fam, budget)
    report: dict = {}
    if T1q.is_zero_module(budget):
        report["no_singular_locus"] = True
        report["free_rank_one"] = True
        report["pass"] = True
        return report
    report["no_singular_locus"] = False
    amb = fp.pushout.A.ambient
    y_ring = RingPresentation(amb, list(fp.pushout.A.relations) + [as_poly(amb, c) for c in cond_fam])
    restricted = FPModule(y_ring, [list(r) for r in T1q.relations.rows], T1q.ngens, T1q.gen_names)
    rmin, _, _ = fpmod.minimize(restricted, budget)
    cert = fpmod.free_rank_one_certificate(rmin, budget)
    report["free_rank_one"] = bool(cert.get("free"))
    report["certificate_method"] = cert.get("method")
    report["fibers_isomorphic"] = report["free_rank_one"]
    report["pass"] = report["free_rank_one"]
    return report

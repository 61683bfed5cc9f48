"""Bundled examples and the per-item check runner.

Items come in four kinds.  A hypersurface item carries a presented ring and
gets the T^1 suite; a gluing item carries a full datum and gets the pushout,
conductor, strata and tangent-sequence suites; a cover item carries (B, b)
and gets the double-cover suites, or, when a projective degree is attached,
the two-chart degree identities; a family item carries either a ring over
Q[t] or a datum to degenerate, plus the list of family checks to run.

Every payload is plain JSON a person can write by hand.  The bundle shipped
with the package (corpus.json) is loaded through the same validator as user
input.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from . import covers, degeneration, engine, fpmod, glue, groebner, reports, singularity
from .errors import InputError, PreconditionError
from .poly import MonomialOrder, PolyRing, diff
from .rings import RingMap, RingPresentation

KINDS = ("hypersurface", "gluing", "cover", "family")

FAMILY_CHECKS = (
    "flatness", "chart_fibers", "conductor_constant", "fiber_matches",
    "base_change_t1", "cocartesian", "t1_constancy",
)

_CARTESIAN_KEYS = (
    "jsharp_surjective", "kernel_ideal_is_divisor", "restricted_kernel_zero", "module_finite",
)


@dataclass(frozen=True)
class CorpusItem:
    name: str
    kind: str
    payload: dict
    expected: tuple


# ---------------------------------------------------------------------------
# schema validation


def _need(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise InputError(f"{path}: {msg}")


def _str_list(obj, path: str) -> None:
    _need(isinstance(obj, list) and all(isinstance(s, str) for s in obj),
          path, "expected a list of strings")


def validate_ring(obj, path: str = "ring") -> None:
    _need(isinstance(obj, dict), path, "expected an object")
    _need("vars" in obj, path, "missing vars")
    _str_list(obj["vars"], f"{path}.vars")
    _need(len(obj["vars"]) > 0, f"{path}.vars", "must be nonempty")
    _need(len(set(obj["vars"])) == len(obj["vars"]), f"{path}.vars", "duplicate variable")
    if "order" in obj:
        _need(obj["order"] in ("grevlex", "lex"), f"{path}.order", "unknown order")
    if "relations" in obj:
        _str_list(obj["relations"], f"{path}.relations")


def validate_gluing(obj, path: str = "gluing") -> None:
    _need(isinstance(obj, dict), path, "expected an object")
    for key in ("Abar", "y", "B", "phi_images", "module_gens"):
        _need(key in obj, path, f"missing {key}")
    validate_ring(obj["Abar"], f"{path}.Abar")
    validate_ring(obj["B"], f"{path}.B")
    _need(isinstance(obj["y"], str), f"{path}.y", "expected a polynomial string")
    _str_list(obj["phi_images"], f"{path}.phi_images")
    _str_list(obj["module_gens"], f"{path}.module_gens")
    if "names" in obj:
        _str_list(obj["names"], f"{path}.names")
    if "involution" in obj:
        _str_list(obj["involution"], f"{path}.involution")
    if "expect_relations" in obj:
        _str_list(obj["expect_relations"], f"{path}.expect_relations")
    if "degree_bound" in obj:
        _need(isinstance(obj["degree_bound"], int), f"{path}.degree_bound", "expected an integer")
    if "corrupt" in obj:
        _need(isinstance(obj["corrupt"], dict) and isinstance(obj["corrupt"].get("drop_relation"), int),
              f"{path}.corrupt", "expected {\"drop_relation\": index}")


def validate_cover(obj, path: str = "cover") -> None:
    _need(isinstance(obj, dict), path, "expected an object")
    for key in ("B", "b"):
        _need(key in obj, path, f"missing {key}")
    validate_ring(obj["B"], f"{path}.B")
    _need(isinstance(obj["b"], str), f"{path}.b", "expected a polynomial string")
    if "M_generator" in obj:
        _need(isinstance(obj["M_generator"], str), f"{path}.M_generator", "expected a name")
    if "sign" in obj:
        _need(obj["sign"] in (1, -1), f"{path}.sign", "expected 1 or -1")
    if "p1_degree" in obj:
        _need(isinstance(obj["p1_degree"], int), f"{path}.p1_degree", "expected an integer")


def validate_family(obj, path: str = "family") -> None:
    _need(isinstance(obj, dict), path, "expected an object")
    _need(("ring" in obj) != ("datum" in obj), path, "need exactly one of ring, datum")
    if "ring" in obj:
        validate_ring(obj["ring"], f"{path}.ring")
    else:
        validate_gluing(obj["datum"], f"{path}.datum")
    if "t" in obj:
        _need(isinstance(obj["t"], str), f"{path}.t", "expected a variable name")
    _need("checks" in obj or "expect_reject" in obj, path, "missing checks")
    if "checks" in obj:
        _str_list(obj["checks"], f"{path}.checks")
        for tok in obj["checks"]:
            _need(tok in FAMILY_CHECKS, f"{path}.checks", f"unknown check {tok!r}")
    if "expect_reject" in obj:
        _need(isinstance(obj["expect_reject"], dict)
              and isinstance(obj["expect_reject"].get("failure_class"), str),
              f"{path}.expect_reject", "expected {\"failure_class\": name}")


_VALIDATORS = {
    "hypersurface": validate_ring,
    "gluing": validate_gluing,
    "cover": validate_cover,
    "family": validate_family,
}


def validate_item(obj, path: str = "item") -> CorpusItem:
    _need(isinstance(obj, dict), path, "expected an object")
    _need(isinstance(obj.get("name"), str) and obj["name"], path, "missing name")
    _need(obj.get("kind") in KINDS, path, f"kind must be one of {'|'.join(KINDS)}")
    _need(isinstance(obj.get("payload"), dict), path, "missing payload")
    _VALIDATORS[obj["kind"]](obj["payload"], f"{path}.payload")
    expected = obj.get("expected", [])
    _str_list(expected, f"{path}.expected")
    return CorpusItem(obj["name"], obj["kind"], obj["payload"], tuple(expected))


# ---------------------------------------------------------------------------
# builders


def ring_from_json(obj, default_order: str = "grevlex") -> RingPresentation:
    validate_ring(obj)
    amb = PolyRing(tuple(obj["vars"]), MonomialOrder.named(obj.get("order", default_order)))
    free = RingPresentation(amb, [])
    return RingPresentation(amb, [free.parse(s) for s in obj.get("relations", [])])


def gluing_from_json(obj, default_order: str = "grevlex") -> glue.GluingDatum:
    validate_gluing(obj)
    abar = ring_from_json(obj["Abar"], default_order)
    return glue.GluingDatum(
        abar,
        abar.parse(obj["y"]),
        ring_from_json(obj["B"], default_order),
        obj["phi_images"],
        obj["module_gens"],
        names=obj.get("names"),
        involution=obj.get("involution"),
    )


def cover_from_json(obj, default_order: str = "grevlex") -> tuple:
    validate_cover(obj)
    B = ring_from_json(obj["B"], default_order)
    c = covers.CoverDatum(B, B.parse(obj["b"]))
    M = covers.LinearizedModule(c, obj.get("sign", 1), obj.get("M_generator", "m"))
    return c, M


# ---------------------------------------------------------------------------
# per-kind runners


def _run_hypersurface(payload, rep: reports.Report, budget, degree_bound, default_order) -> None:
    X = ring_from_json(payload, default_order)
    rep.sections["ring"] = reports.ring_presentation(X)
    rep.sections["kahler"] = reports.module_presentation(singularity.kahler(X))
    _, rows = singularity.tangent(X, budget)
    rep.sections["tangent_fields"] = sorted([str(c) for c in r] for r in rows)
    T1 = singularity.t1(X, budget)
    T1m, _, _ = fpmod.minimize(T1, budget)
    rep.sections["t1"] = reports.module_presentation(T1m)

    if len(X.relations) != 1:
        rep.skip("t1_matches_jacobian_quotient", "not a hypersurface")
        rep.skip("fitting_match", "not a hypersurface")
        return
    sing = singularity.singular_subscheme(X, budget)
    rep.sections["singular_ideal"] = reports.ideal_presentation(sing.ideal)
    rep.add("t1_matches_jacobian_quotient", singularity.t1_hypersurface_check(X, budget))
    f = X.relations[0]
    jac = [f] + [diff(f, v) for v in X.ambient.vars]
    Q = fpmod.FPModule.cyclic(X, jac)
    rep.add(
        "fitting_match",
        all(
            groebner.ideal_equal(
                X, fpmod.fitting_ideal(T1, i, budget), fpmod.fitting_ideal(Q, i, budget), budget
            )
            for i in (0, 1)
        ),
    )


def _cartesian_witness(cart: dict):
    bad = [k for k in _CARTESIAN_KEYS if not cart[k]]
    return bad or None


def _run_tangent_suite(p: glue.PushoutPresentation, rep: reports.Report, budget, degree_bound) -> None:
    """Alpha and its two exact sequences, plus freeness of T^1 on the glue locus."""
    a = singularity.build_alpha(p, degree_bound, budget)
    seq = singularity.tangent_sequence_check(a, degree_bound, budget)
    gen = seq.pop("intermediate_generator", None)
    rep.sections["tangent_sequence"] = dict(seq)
    if gen is not None:
        rep.sections["intermediate_generator"] = [str(c) for c in gen]
    rep.add("tangent_sequence", seq["pass"],
            witness=None if seq["pass"] else [k for k, v in seq.items() if v is False and k != "pass"])
    rseq = singularity.restricted_sequence_check(a, degree_bound, budget)
    rep.sections["restricted_sequence"] = dict(rseq)
    rep.add("restricted_sequence", rseq["pass"],
            witness=None if rseq["pass"] else [k for k, v in rseq.items() if v is False and k != "pass"])
    t1y = singularity.t1_on_y(p, budget)
    cert = fpmod.free_rank_one_certificate(t1y, budget)
    rep.add("t1_on_y_free", bool(cert.get("free")), witness=cert.get("method"))


def _run_gluing(payload, rep: reports.Report, budget, degree_bound, default_order) -> None:
    datum = gluing_from_json(payload, default_order)
    datum.validate(budget)
    p = glue.pushout(datum, degree_bound=payload.get("degree_bound", degree_bound), budget=budget)

    if "corrupt" in payload:
        k = payload["corrupt"]["drop_relation"]
        _need(0 <= k < len(p.A.relations), "gluing.corrupt.drop_relation", "relation index out of range")
        rep.sections["dropped_relation"] = str(p.A.relations[k])
        bad_ring = RingPresentation(
            p.A.ambient, [r for i, r in enumerate(p.A.relations) if i != k]
        )
        bad = glue.PushoutPresentation(
            datum,
            bad_ring,
            RingMap(bad_ring, datum.abar, list(p.fsharp.images), check=False),
            RingMap(bad_ring, datum.b, list(p.jsharp.images), check=False),
            p.gen_names,
        )
        cart = glue.verify_cartesian(bad, budget)
        rep.add("cartesian", cart["pass"], witness=_cartesian_witness(cart))
        rep.add("corrupted_rejected", not cart["pass"], witness=_cartesian_witness(cart))
        return

    rep.sections["pushout"] = reports.ring_presentation(p.A)
    if "expect_relations" in payload:
        free_amb = RingPresentation(p.A.ambient, [])
        rep.add(
            "pushout_reconstruction",
            groebner.ideal_equal(
                free_amb, list(p.A.relations),
                [free_amb.parse(s) for s in payload["expect_relations"]], budget,
            ),
        )
    cart = glue.verify_cartesian(p, budget)
    rep.add("cartesian", cart["pass"], witness=_cartesian_witness(cart))
    cond_a, cond_abar = glue.conductor(p, budget)
    rep.sections["conductor"] = {
        "in_glued": reports.ideal_presentation(cond_a),
        "in_normalization": reports.ideal_presentation(cond_abar),
    }
    rep.add("conductor_is_abar_ideal", glue.conductor_is_abar_ideal(p, budget))
    rep.add("localization_iso", glue.localization_inverts_conductor(p, budget=budget))

    if len(p.A.relations) == 1:
        strata = singularity.classify_points(p, budget)
        rep.sections["strata"] = {
            "glue_locus": reports.ideal_presentation(strata.y_ideal),
            "branch_locus": reports.ideal_presentation(strata.d_ideal),
            "dc_locus": strata.dc_description,
        }
        rep.add("strata", strata.jacobian_support_matches and strata.off_d_reduced is not False)
        comp = singularity.ideal_y_in_xsing(p, budget)
        rep.sections["d_module_certificate"] = dict(comp.certificate)
        rep.add("conductor_ideal_invertible_on_d", bool(comp.certificate.get("free")))
    else:
        rep.skip("strata", "not a hypersurface")
        rep.skip("conductor_ideal_invertible_on_d", "not a hypersurface")

    if datum.involution is not None and len(p.A.relations) == 1:
        _run_tangent_suite(p, rep, budget, degree_bound)
    else:
        for name in ("tangent_sequence", "restricted_sequence", "t1_on_y_free"):
            rep.skip(name, "needs an involution and a hypersurface pushout")


def _run_cover(payload, rep: reports.Report, budget, degree_bound, default_order) -> None:
    if "p1_degree" in payload:
        validate_cover(payload)
        m = payload["p1_degree"]
        d53 = covers.thm53_degree_check(m)
        d46 = covers.cor46_degree_check(m)
        rep.sections["degrees"] = {"m": m, "chart": dict(d53), "divisor_identity": dict(d46)}
        rep.add("thm53_degrees", d53["pass"])
        rep.add("cor46_degrees", d46["pass"])
        return

    c, M = cover_from_json(payload, default_order)
    det = covers.det_sequence_check(c, M, budget)
    rep.sections["det_sequence"] = dict(det)
    rep.add("counit_surjective", det["counit_surjective"])
    rep.add("det_sequence", det["pass"],
            witness=None if det["pass"] else [k for k, v in det.items() if v is False and k != "pass"])
    emb = covers.embed_in_VE(c, M, budget=budget)
    rep.sections["hypersurface"] = str(emb.h)
    rep.sections["pushout"] = reports.ring_presentation(emb.pushout.A)
    rep.add("embedding", emb.report["pass"])
    p48 = covers.prop48_check(c, M, budget)
    rep.sections["conductor_comparison"] = dict(p48)
    rep.add("conductor_comparison", p48["pass"],
            witness=None if p48["pass"] else [k for k, v in p48.items() if v is False and k != "pass"])
    _run_tangent_suite(emb.pushout, rep, budget, degree_bound)


def _run_family(payload, rep: reports.Report, budget, degree_bound, default_order) -> None:
    validate_family(payload)
    tname = payload.get("t", "t")
    fp = None
    if "datum" in payload:
        fp = degeneration.family_pushout(
            gluing_from_json(payload["datum"], default_order),
            tname=tname, degree_bound=degree_bound, budget=budget,
        )
        fam = fp.fam
    else:
        fam = degeneration.FamilyRing(ring_from_json(payload["ring"], default_order), tname)
    rep.sections["family_ring"] = reports.ring_presentation(fam.ring)

    if "expect_reject" in payload:
        wanted = payload["expect_reject"]["failure_class"]
        try:
            for t0 in (0, 1):
                degeneration.base_change_t1_check(fam, t0, budget)
        except PreconditionError as e:
            rep.add("rejected_with_documented_class", e.failure_class == wanted,
                    witness=e.failure_class)
        else:
            rep.add("rejected_with_documented_class", False, witness="no rejection")
        return

    for tok in payload.get("checks", []):
        if tok == "flatness":
            rep.add("flatness", fam.is_t_torsion_free(budget))
            continue
        if tok == "base_change_t1":
            results = {str(t0): degeneration.base_change_t1_check(fam, t0, budget) for t0 in (0, 1)}
            rep.sections["base_change_t1"] = {k: dict(v) for k, v in results.items()}
            rep.add("base_change_t1", all(v["pass"] for v in results.values()))
            continue
        if fp is None:
            rep.skip(tok, "no gluing datum")
            continue
        if tok == "chart_fibers":
            chk = degeneration.chart_fiber_isomorphism_check(fp.chart, budget)
            rep.add("chart_fibers", chk["pass"])
        elif tok == "conductor_constant":
            chk = degeneration.family_conductor_check(fp, budget)
            rep.sections["conductor_constant"] = dict(chk)
            rep.add("conductor_constant", chk["pass"])
        elif tok == "fiber_matches":
            rep.add("fiber_matches", degeneration.fiber_matches_original_check(fp, budget)["pass"])
        elif tok == "cocartesian":
            results = {
                str(t0): degeneration.specialization_cocartesian_check(fp, t0, budget)
                for t0 in (0, 1)
            }
            rep.sections["cocartesian"] = {k: dict(v) for k, v in results.items()}
            rep.add("cocartesian", all(v["pass"] for v in results.values()))
        elif tok == "t1_constancy":
            chk = degeneration.t1_constancy_check(fp, budget)
            rep.sections["t1_constancy"] = dict(chk)
            rep.add("t1_constancy", chk["pass"])


_RUNNERS = {
    "hypersurface": _run_hypersurface,
    "gluing": _run_gluing,
    "cover": _run_cover,
    "family": _run_family,
}


def run_item(item: CorpusItem, budget=None, degree_bound: Optional[int] = None,
             default_order: str = "grevlex") -> reports.Report:
    """Run every check for one item under a single step budget."""
    if budget is None:
        budget = engine.ensure_budget(None)
    rep = reports.Report(item.name, item.kind, expected=item.expected)
    start = time.perf_counter()
    try:
        _RUNNERS[item.kind](item.payload, rep, budget, degree_bound, default_order)
    finally:
        rep.timing = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# the shipped bundle


def bundled_items() -> list:
    root = resources.files("semismooth").joinpath("corpus")
    items = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".json"):
            continue
        obj = json.loads(entry.read_text())
        items.append(validate_item(obj, f"corpus/{entry.name}"))
    names = [it.name for it in items]
    _need(len(set(names)) == len(names), "corpus", "duplicate item name")
    return items


def find_item(name: str) -> CorpusItem:
    for it in bundled_items():
        if it.name == name:
            return it
    raise InputError(f"no corpus item named {name!r}")


def run_all(names=None, degree_bound: Optional[int] = None,
            default_order: str = "grevlex") -> list:
    items = bundled_items()
    if names is not None:
        wanted = set(names)
        unknown = wanted - {it.name for it in items}
        if unknown:
            raise InputError(f"no corpus item named {sorted(unknown)[0]!r}")
        items = [it for it in items if it.name in wanted]
    return [run_item(it, degree_bound=degree_bound, default_order=default_order) for it in items]

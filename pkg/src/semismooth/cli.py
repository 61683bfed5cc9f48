"""Command-line front end.

Four commands: `run_t1` and `run_glue` take a JSON file with a hypersurface
ring or a gluing datum and print the corresponding report; `run_verify` runs
one named statement check against one bundled corpus item; `corpus` lists or
runs the bundle.  Output on stdout is byte-identical across runs on the same
input; wall-clock timings go to stderr.

Exit codes: 0 every expected check passed, 1 a check failed or a
precondition was rejected, 2 malformed input or unknown name, 3 step budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import config, corpus, reports
from .errors import (
    CompletenessError,
    InputError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)

# check names backing each verifiable statement, per item kind
THEOREM_CHECKS = {
    "thm2.11": {"family": ("base_change_t1",)},
    "lem3.11": {"gluing": ("conductor_ideal_invertible_on_d",),
                "cover": ("conductor_comparison",)},
    "prop3.12": {"family": ("cocartesian",)},
    "prop4.4i": {"cover": ("counit_surjective",)},
    "thm4.5": {"cover": ("embedding",)},
    "cor4.6": {"cover": ("cor46_degrees",)},
    "lem4.7": {"cover": ("det_sequence",)},
    "prop4.8": {"cover": ("conductor_comparison",)},
    "thm5.1": {"gluing": ("tangent_sequence", "restricted_sequence"),
               "cover": ("tangent_sequence", "restricted_sequence")},
    "thm5.3": {"gluing": ("t1_on_y_free",),
               "cover": ("thm53_degrees", "t1_on_y_free")},
    "prop5.4": {"family": ("flatness", "chart_fibers", "fiber_matches", "conductor_constant")},
    "cor5.5": {"family": ("t1_constancy",)},
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="semismooth",
        description="exact gluing, tangent and T1 computations over Q",
    )
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex",
                   help="term order for rings that do not fix one themselves")
    p.add_argument("--degree-bound", type=int, default=None, metavar="D",
                   help="cap for bounded generator and lifting searches")
    p.add_argument("--step-budget", type=int, default=None, metavar="N",
                   help="reduction step limit per item (env: SEMISMOOTH_STEP_BUDGET)")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized property tooling; the pipeline itself is deterministic")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_json", action="store_true", help="JSON reports on stdout")
    fmt.add_argument("--text", dest="as_json", action="store_false", help="plain-text reports (default)")
    p.set_defaults(as_json=False)

    sub = p.add_subparsers(dest="command", required=True)

    t1 = sub.add_parser("run_t1", help="T1 suite for a hypersurface JSON file")
    t1.add_argument("file", help="path to a ring object {vars, order, relations}")

    gl = sub.add_parser("run_glue", help="pushout and tangent suites for a gluing JSON file")
    gl.add_argument("file", help="path to a gluing object {Abar, y, B, phi_images, module_gens, ...}")

    ver = sub.add_parser("run_verify", help="run one statement check against a bundled item")
    ver.add_argument("theorem", choices=sorted(THEOREM_CHECKS))
    ver.add_argument("item", help="bundled corpus item name")

    co = sub.add_parser("corpus", help="operate on the bundled examples")
    co.add_argument("action", choices=("run", "list"))
    co.add_argument("--only", nargs="+", metavar="NAME", default=None,
                    help="restrict to the named items")
    return p


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a JSON object")
    return obj


def _cmd_run_t1(args) -> list:
    payload = _load_json(args.file)
    corpus.validate_ring(payload)
    item = corpus.CorpusItem(Path(args.file).stem, "hypersurface", payload, ())
    return [corpus.run_item(item, degree_bound=args.degree_bound, default_order=args.order)]


def _cmd_run_glue(args) -> list:
    payload = _load_json(args.file)
    corpus.validate_gluing(payload)
    item = corpus.CorpusItem(Path(args.file).stem, "gluing", payload, ())
    return [corpus.run_item(item, degree_bound=args.degree_bound, default_order=args.order)]


def _cmd_run_verify(args) -> list:
    item = corpus.find_item(args.item)
    by_kind = THEOREM_CHECKS[args.theorem]
    names = by_kind.get(item.kind)
    if names is None:
        raise InputError(f"{args.theorem} does not apply to {item.kind} item {item.name!r}")
    rep = corpus.run_item(item, degree_bound=args.degree_bound, default_order=args.order)
    ran = [n for n in names if rep.status_of(n) not in ("skipped",) and n in rep.checks]
    if not ran:
        raise InputError(f"item {item.name!r} does not exercise {args.theorem}")
    out = reports.Report(
        f"{args.theorem}:{item.name}", item.kind,
        checks={n: rep.checks[n] for n in ran},
        sections=rep.sections, expected=tuple(ran), timing=rep.timing,
    )
    return [out]


def _cmd_corpus(args) -> list:
    return corpus.run_all(names=args.only, degree_bound=args.degree_bound,
                          default_order=args.order)


def _emit(reps: list, as_json: bool) -> None:
    if as_json:
        payload = [reports.json_payload(r) for r in reps]
        doc = payload[0] if len(payload) == 1 else payload
        sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=2) + "\n")
    else:
        for r in reps:
            sys.stdout.write(reports.to_text(r))
    for r in reps:
        if r.timing is not None:
            sys.stderr.write(f"[time] {r.item}: {r.timing:.2f}s\n")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.step_budget is not None:
            config.STEP_BUDGET = args.step_budget
        else:
            env = os.environ.get("SEMISMOOTH_STEP_BUDGET")
            if env is not None:
                try:
                    config.STEP_BUDGET = int(env)
                except ValueError:
                    raise InputError(f"SEMISMOOTH_STEP_BUDGET must be an integer, got {env!r}")
        if config.STEP_BUDGET <= 0:
            raise InputError("step budget must be positive")
        if args.degree_bound is not None:
            if args.degree_bound <= 0:
                raise InputError("degree bound must be positive")
            config.DEGREE_BOUND = args.degree_bound

        if args.command == "corpus" and args.action == "list":
            items = corpus.bundled_items()
            if args.only is not None:
                items = [it for it in items if it.name in set(args.only)]
            if args.as_json:
                doc = [{"kind": it.kind, "name": it.name} for it in items]
                sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
            else:
                for it in items:
                    sys.stdout.write(f"{it.name}  ({it.kind})\n")
            return 0

        handler = {
            "run_t1": _cmd_run_t1,
            "run_glue": _cmd_run_glue,
            "run_verify": _cmd_run_verify,
            "corpus": _cmd_corpus,
        }[args.command]
        reps = handler(args)
    except ResourceLimitError as e:
        sys.stderr.write(f"resource limit: {e}\n")
        return 3
    except PreconditionError as e:
        sys.stderr.write(f"precondition failed: {e}\n")
        return 1
    except (ParseError, InputError) as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    except CompletenessError as e:
        sys.stderr.write(f"not certifiable: {e} (witness: {e.witness})\n")
        return 1

    _emit(reps, args.as_json)
    return 0 if all(r.passed() for r in reps) else 1


if __name__ == "__main__":
    sys.exit(main())

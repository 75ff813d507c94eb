"""``dvy`` command line.  JSON on stdout, diagnostics on stderr.

Exit status: 0 success, 1 a check failed (payload carries the witness),
2 malformed input or a violated precondition.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .core import FiniteDiversity, check_axioms, diameter_diversity, induced_metric, l1_diversity, require_diversity, truncate, verify_violation
from .errors import DiversityError, InputError
from .phylo import four_point_check, reconstruct_tree, tree_diversity
from .steiner import abstract_steiner, diversity_steiner, metric_steiner_exact, steiner_length_diversity, steiner_lower_bounds
from .tightspan import (
    PremiseError,
    SlackWitness,
    complex_of,
    complex_svg,
    delta_T,
    hyperconvex_extension,
    in_P,
    in_T,
    kuratowski_all,
    minimize_to_tight,
    sample_tight,
    tight_slack,
    verify_cover_violation,
)


class Failure(Exception):
    """A semantic failure carrying its JSON payload (exit 1)."""

    def __init__(self, payload):
        self.payload = payload


def _div(path, fast=False) -> FiniteDiversity:
    return require_diversity(io.load_diversity(path), fast=fast)


def _membership(delta, f):
    rep = in_T(delta, f)
    w = rep.witness
    if w is not None:
        if isinstance(w, SlackWitness):
            assert tight_slack(delta, f, w.A) != f.values[w.A]
        else:
            assert verify_cover_violation(delta, f, w)
    return rep


# ---------------------------------------------------------------------------
# verbs


def cmd_check(a):
    delta = io.load_diversity(a.input)
    rep = check_axioms(delta, fast=a.fast)
    if rep.passed:
        out = {"pass": True}
        if a.fast:
            out["exhaustive"] = False
        return out
    assert all(verify_violation(delta, v) for v in rep.violations)
    raise Failure({"pass": False, "violations": [v.as_dict(delta.ground) for v in rep.violations]})


def cmd_induced(a):
    return io.metric_doc(induced_metric(_div(a.input)))


def cmd_make(a):
    if a.kind == "diameter":
        d = diameter_diversity(io.load_metric(a.input))
    elif a.kind == "l1":
        d = l1_diversity(io.load_points(a.input))
    elif a.kind == "tree":
        t = io.load_tree(a.input)
        d = tree_diversity(t, t.leaves or t.nodes)
    elif a.kind == "steiner-length":
        d = steiner_length_diversity(io.load_instance(a.input))
    else:
        if a.k is None:
            raise InputError("make truncate needs --k")
        d = truncate(_div(a.input), a.k)
    return io.diversity_doc(d)


def cmd_tight(a):
    delta = _div(a.input)
    g = delta.ground
    if a.op == "member":
        f = io.load_function(_arg(a, 0, "function file"), g.labels)
        rep = _membership(delta, f)
        if not rep.in_T:
            raise Failure(rep.as_dict(g))
        return rep.as_dict(g)
    if a.op == "minimize":
        f = io.load_function(_arg(a, 0, "function file"), g.labels)
        p = in_P(delta, f)
        if not p:
            assert verify_cover_violation(delta, f, p.witness)
            raise Failure({"in_P": False, "witness": p.witness.as_dict(g)})
        return io.function_doc(minimize_to_tight(delta, f))
    if a.op == "kuratowski":
        return {x: io.function_doc(h) for x, h in zip(g.labels, kuratowski_all(delta))}
    if a.op == "deltaT":
        fam = io.load_family(_arg(a, 0, "family file"), g.labels)
        for f in fam:
            rep = _membership(delta, f)
            if not rep.in_T:
                raise Failure({"tight": False, "function": io.function_doc(f), **rep.as_dict(g)})
        return {"value": delta_T(delta, fam, check=False)}
    if a.op == "sample":
        pts = sample_tight(delta, a.seed, a.count)
        return {"seed": a.seed, "points": [io.function_doc(f) for f in pts]}
    if a.op == "complex3":
        c = complex_of(delta)
        if a.svg:
            Path(a.svg).write_text(complex_svg(c), encoding="utf-8")
        return c.as_dict()
    if a.op == "extend":
        cons = io.load_constraints(_arg(a, 0, "constraints file"), g.labels)
        try:
            gpt = hyperconvex_extension(delta, cons)
        except PremiseError as e:
            raise Failure({"premise": False, "constraints": list(e.offending),
                           "radius_sum": e.radius_sum, "required": e.required}) from None
        return io.function_doc(gpt)
    raise InputError(f"unknown tight operation {a.op!r}")


def cmd_phylo(a):
    if a.op == "reconstruct":
        r = reconstruct_tree(_div(a.input))
        if not r.ok:
            raise Failure({"ok": False, "reason": r.reason, "detail": r.detail})
        return io.tree_doc(r.tree)
    doc = io.read_json(a.input)
    m = io.load_metric(doc) if isinstance(doc, dict) and "matrix" in doc else induced_metric(_div(doc))
    fp = four_point_check(m)
    if not fp:
        raise Failure({"additive": False, "quartet": list(fp.quartet), "sums": list(fp.sums)})
    return {"additive": True}


def cmd_steiner(a):
    if a.op == "exact":
        m = io.load_instance(a.input)
        t = metric_steiner_exact(m)
        return {"length": t.length, "nodes": list(t.nodes), "edges": [list(e) for e in t.edges]}
    if a.op == "abstract":
        doc = io.read_json(a.input)
        d = io.load_metric(doc) if "matrix" in doc else io.load_graph(doc).terminal_metric()
        return abstract_steiner(d).as_dict()
    if a.op == "diversity":
        return diversity_steiner(_div(a.input)).as_dict()
    m = io.load_instance(a.input)
    return steiner_lower_bounds(m, a.kmax).as_dict()


def _arg(a, i, what):
    if len(a.extra) <= i:
        raise InputError(f"missing {what}")
    return a.extra[i]


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indented output")
    p = argparse.ArgumentParser(prog="dvy", description="Exact finite diversities, tight spans and Steiner bounds.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("check", parents=[common], help="check the diversity axioms")
    s.add_argument("input")
    s.add_argument("--fast", action="store_true", help="partition-style D2 family only")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("induced", parents=[common], help="induced metric")
    s.add_argument("input")
    s.set_defaults(func=cmd_induced)

    s = sub.add_parser("make", parents=[common], help="build a diversity")
    s.add_argument("kind", choices=["diameter", "l1", "tree", "steiner-length", "truncate"])
    s.add_argument("input")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_make)

    s = sub.add_parser("tight", parents=[common], help="tight-span operations")
    s.add_argument("op", choices=["member", "minimize", "kuratowski", "deltaT", "sample", "complex3", "extend"])
    s.add_argument("input", help="diversity file")
    s.add_argument("extra", nargs="*", help="function, family or constraints file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=5)
    s.add_argument("--svg", metavar="FILE")
    s.set_defaults(func=cmd_tight)

    s = sub.add_parser("phylo", parents=[common], help="tree reconstruction and additivity")
    s.add_argument("op", choices=["reconstruct", "fourpoint"])
    s.add_argument("input")
    s.set_defaults(func=cmd_phylo)

    s = sub.add_parser("steiner", parents=[common], help="Steiner problems and bounds")
    s.add_argument("op", choices=["exact", "abstract", "diversity", "bounds"])
    s.add_argument("input")
    s.add_argument("--kmax", type=int)
    s.set_defaults(func=cmd_steiner)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "svg", None) and args.op != "complex3":
        print("dvy: --svg applies only to 'tight complex3'", file=sys.stderr)
        return 2
    try:
        payload = args.func(args)
        code = 0
    except Failure as f:
        payload, code = f.payload, 1
    except (DiversityError, ValueError, OSError) as e:
        print(f"dvy: {e}", file=sys.stderr)
        return 2
    print(io.dumps(payload, pretty=args.pretty), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

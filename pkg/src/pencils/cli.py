"""Command-line front end.

Inputs are factorization files in the text format of ``pencils.dsl`` or
catalog ids written ``catalog:W``, ``catalog:W2(3,4)`` and so on.  Exit
status: 0 on success or PASS, 1 on FAIL, 2 on bad input.

The abelian-certificate search budget can be overridden with the
environment variables PENCILS_PI1_NODES and PENCILS_PI1_LENGTH.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import catalog, dsl
from .factorizations import Factorization, FactorizationError
from .groups import h1_pipeline, pi1_report
from .groups.prover import DEFAULT_MAX_LENGTH, DEFAULT_MAX_NODES
from .invariants import (InvariantError, invariant_report, rational_obstruction,
                         ruled_exclusion)
from .surfaces import SurfaceError
from .symplectic import verify

ENV_NODES = "PENCILS_PI1_NODES"
ENV_LENGTH = "PENCILS_PI1_LENGTH"


class InputError(Exception):
    pass


@dataclass
class Source:
    label: str
    factorization: Factorization
    base_points: int
    entry: Optional[catalog.CatalogEntry] = None


def load(spec: str, base_points: Optional[int] = None) -> Source:
    if spec.startswith("catalog:"):
        try:
            e = catalog.entry(spec[len("catalog:"):])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        m = e.base_points if base_points is None else base_points
        return Source(e.id, e.factorization, m, e)
    try:
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    try:
        doc = dsl.parse_document(text)
    except dsl.ParseError as exc:
        raise InputError("\n".join(f"{spec}:{d}" for d in exc.diagnostics)) from None
    f = doc.factorization
    m = base_points if base_points is not None else (
        doc.base_points if doc.base_points is not None else len(f.target))
    return Source(spec, f, m)


def _budget(args) -> tuple[int, int]:
    def pick(flag, env, default):
        if flag is not None:
            return flag
        v = os.environ.get(env)
        if v is None:
            return default
        try:
            return int(v)
        except ValueError:
            raise InputError(f"{env} must be an integer, got {v!r}") from None
    nodes_default = DEFAULT_MAX_NODES
    return (pick(args.max_length, ENV_LENGTH, DEFAULT_MAX_LENGTH),
            pick(args.max_nodes, ENV_NODES, nodes_default))


def report_for(src: Source, method: str = "auto"):
    kw = {}
    e = src.entry
    if method == "auto" and e is not None:
        if e.plan is not None:
            plan, ledger = e.plan()
            kw = dict(plan=plan, ledger=ledger)
        else:
            kw = dict(hyperelliptic=e.hyperelliptic)
    elif method == "hyperelliptic":
        kw = dict(hyperelliptic=True)
    return invariant_report(src.factorization, src.base_points, **kw)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    if args.all:
        sources = [Source(e.id, e.factorization, e.base_points, e)
                   for e in sorted(catalog.entries(), key=lambda e: e.id)]
    elif args.source:
        sources = [load(args.source)]
    else:
        raise InputError("verify needs a source or --all")
    rows, ok = [], True
    for s in sources:
        v = verify(s.factorization)
        ok &= v.passed
        rows.append({"source": s.label, "verdict": v.label,
                     "witness": list(v.witness.coeffs) if v.witness else None,
                     "image": list(v.image.coeffs) if v.image else None})
    text = "\n".join(f"{r['source']}: {r['verdict']}" if len(rows) > 1 else r["verdict"]
                     for r in rows)
    if len(rows) == 1 and not ok:
        text += f"\n  {sources[0].label}: {verify(sources[0].factorization)}"
    _emit(args, rows[0] if len(rows) == 1 else {"results": rows}, text)
    return 0 if ok else 1


def cmd_invariants(args) -> int:
    src = load(args.source, args.base_points)
    rep = report_for(src, args.sigma)
    d = rep.to_dict()
    d["source"] = src.label
    lines = [f"{src.label}: genus {rep.genus}, {rep.base_points} base point(s), "
             f"{rep.length} twists",
             f"  e  = {rep.e_fib} (fibration), {rep.e_pencil} (pencil)",
             f"  sigma = {rep.sigma} (fibration), {rep.sigma_pencil} (pencil)",
             f"  c1^2 = {rep.c1sq_fib} (fibration), {rep.c1sq_pencil} (pencil)",
             f"  chi_h = {rep.chi_h}, b1 = {rep.b1}, H1 = {rep.h1}"]
    lines += [f"  {k}: {v}" for k, v in rep.predicates.items()]
    _emit(args, d, "\n".join(lines))
    return 0


def cmd_pi1(args) -> int:
    src = load(args.source, args.base_points)
    max_length, max_nodes = _budget(args)
    if src.entry is not None and src.entry.pi1_nodes is not None and args.max_nodes is None \
            and ENV_NODES not in os.environ:
        max_nodes = src.entry.pi1_nodes
    r = pi1_report(src.factorization, src.base_points, max_length, max_nodes)
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(r.verdict.serialize())
    payload = {"source": src.label, "status": r.status, "group": str(r.invariants),
               "rank": r.invariants.rank, "torsion": list(r.invariants.torsion),
               "nodes": r.verdict.nodes, "unproven": [list(p) for p in r.verdict.unproven]}
    _emit(args, payload, f"{r.status} {r.invariants}")
    return 0


def cmd_h1(args) -> int:
    src = load(args.source)
    h = h1_pipeline(src.factorization)
    _emit(args, {"source": src.label, "group": str(h), "rank": h.rank,
                 "torsion": list(h.torsion)}, str(h))
    return 0


def cmd_breed(args) -> int:
    try:
        e = catalog.entry(args.recipe.removeprefix("catalog:"))
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    except catalog.BreedError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    text = dsl.serialize(e.factorization, e.base_points)
    if args.steps:
        for k, st in enumerate(e.recipe):
            print(f"# {k:2d} {st}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {e.id} ({e.factorization.length} twists) to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_catalog(args) -> int:
    rows = []
    for e in catalog.entries():
        f = e.factorization
        rows.append({"id": e.id, "title": e.title, "surface": str(f.surface),
                     "length": f.length, "base_points": e.base_points,
                     "expected": {k: {"value": v.value if not isinstance(v.value, (set, tuple))
                                      else sorted(v.value), "tag": v.tag}
                                  for k, v in e.expected.items()}})
    text = "\n".join(f"{r['id']:<10} {r['surface']:<12} {r['length']:>3} twists  "
                     f"m={r['base_points']}  {r['title']}" for r in rows)
    text += "\nparametrized: " + ", ".join(f"{n}({','.join(['int'] * k)})"
                                           for n, k in catalog.PARAMS.items())
    _emit(args, {"entries": rows}, text)
    return 0


def cmd_oracle(args) -> int:
    if args.oracle == "rational-obstruction":
        v = rational_obstruction(args.g, args.m, args.bound)
        _emit(args, {"status": v.status, "witness": list(v.witness) if v.witness else None},
              v.status + (f" {v.witness}" if v.witness else ""))
        return 0
    res = ruled_exclusion(args.g, args.self_int)
    _emit(args, {k: {"status": v.status, "witness": v.witness} for k, v in res.items()},
          "\n".join(f"{k}: {v.status}" + (f" {v.witness}" if v.witness else "")
                    for k, v in res.items()))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pencils", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="symplectic check of a factorization")
    v.add_argument("source", nargs="?")
    v.add_argument("--all", action="store_true", help="every default catalog entry")
    v.set_defaults(fn=cmd_verify)

    for name, fn, hlp in (("invariants", cmd_invariants, "e, sigma, c1^2, chi_h, H1"),
                          ("pi1", cmd_pi1, "certified pi_1 or H1 fallback")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("source")
        s.add_argument("--base-points", type=int)
        s.set_defaults(fn=fn)
        if name == "invariants":
            s.add_argument("--sigma", choices=("auto", "meyer", "hyperelliptic"), default="auto")
        else:
            s.add_argument("--max-nodes", type=int)
            s.add_argument("--max-length", type=int)
            s.add_argument("--certificate", help="write the proof certificate here")

    h = sub.add_parser("h1", parents=[common], help="first homology via Smith normal form")
    h.add_argument("source")
    h.set_defaults(fn=cmd_h1)

    b = sub.add_parser("breed", parents=[common], help="replay a catalog recipe")
    b.add_argument("recipe")
    b.add_argument("-o", "--output")
    b.add_argument("--steps", action="store_true", help="print the recipe steps")
    b.set_defaults(fn=cmd_breed)

    c = sub.add_parser("catalog", parents=[common], help="catalog commands")
    c.add_argument("action", choices=("list",))
    c.set_defaults(fn=cmd_catalog)

    o = sub.add_parser("oracle", parents=[common], help="fiber-class obstruction oracles")
    osub = o.add_subparsers(dest="oracle", required=True)
    ro = osub.add_parser("rational-obstruction", parents=[common])
    ro.add_argument("g", type=int)
    ro.add_argument("m", type=int)
    ro.add_argument("--bound", type=int, default=50)
    ru = osub.add_parser("ruled-exclusion", parents=[common])
    ru.add_argument("g", type=int)
    ru.add_argument("self_int", type=int)
    o.set_defaults(fn=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, FactorizationError, SurfaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

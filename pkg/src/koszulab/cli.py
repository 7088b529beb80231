"""Command-line entry point: ``koszulab suite|compute|ran|ab-series``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .basecat import BaseObject, compactly_supported_cohomology, tag_str, verdier_dual
from .complexes import KoszulabError, Window, cohomology_dims
from .operadic.chevalley import chevalley, cochevalley
from .operadic.cobar import cobar_stage
from .operadic.cutoff import CutoffPolicy
from .operadic.prim import prim_lie
from .operadic.structures import (StrictCoLie, StrictComAlgebra, StrictComCoalgebra, StrictLieAlgebra,
                                  dual_colie, dual_comcoalg, dual_lie, structure_from_json)
from .ranmodel import is_factorization_algebra, is_factorization_coalgebra
from .verifysuite import SuiteConfig, UnknownSuite, atiyah_bott_series, run_all, run_suite, suite_names

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    inputs: List[str] = field(default_factory=list)
    window: Optional[Tuple[int, int]] = None
    max_weight: Optional[int] = None
    output: str = "table"
    threads: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.window is not None and self.window[0] > self.window[1]:
            raise InputError("--window: lo exceeds hi")
        if self.threads < 1:
            raise InputError("--threads must be >= 1")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="koszulab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="list or run verification suites")
    ssub = suite.add_subparsers(dest="action", required=True)
    ssub.add_parser("list")
    run = ssub.add_parser("run")
    run.add_argument("name", help="suite name, or 'all'")
    run.add_argument("--json", action="store_true")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--threads", type=int, default=None)

    comp = sub.add_parser("compute", help="run one construction on a serialized input")
    comp.add_argument("what", choices=["chev", "cochev", "prim", "cobar-stage"])
    comp.add_argument("--in", dest="infile", required=True)
    comp.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), required=True)
    comp.add_argument("--max-weight", type=int, default=None)
    comp.add_argument("--stage", type=int, default=None, help="cobar-stage only; default -LO-1")

    ran = sub.add_parser("ran", help="finite Ran space operations")
    ran.add_argument("what", choices=["factor-check", "dual", "cstar"])
    ran.add_argument("--in", dest="infile", required=True)
    ran.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), default=None)

    ab = sub.add_parser("ab-series", help="Atiyah-Bott Poincare series coefficients")
    ab.add_argument("--exponents", required=True, help="comma separated, possibly empty")
    ab.add_argument("--genus", type=int, required=True)
    ab.add_argument("--order", type=int, required=True)
    return p


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError("--in: cannot read %s (%s)" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise InputError("--in: %s is not valid JSON (%s)" % (path, e))
    try:
        if "type" in doc:
            return structure_from_json(doc)
        return BaseObject.from_json(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("--in: malformed input (%s)" % e)


def _expect(obj, cls, flag: str):
    if not isinstance(obj, cls):
        raise InputError("%s needs a %s input, got %s" % (flag, cls.__name__, type(obj).__name__))
    return obj


def _window_dims(c, w: Window) -> dict:
    h = cohomology_dims(c)
    return {str(n): h.get(n, 0) for n in range(w.lo, w.hi + 1)}


def _stalk_dims(obj: BaseObject, w: Window) -> dict:
    return {tag_str(t): _window_dims(s, w) for t, s in obj.stalks().items()}


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def cmd_compute(args) -> int:
    lo, hi = args.window
    cfg = CliConfig("compute", [args.infile], (lo, hi), args.max_weight, "json")
    obj = _load(args.infile)
    cut = CutoffPolicy.for_window(*cfg.window)
    if cfg.max_weight is not None:
        cut = cut.force(cfg.max_weight)
    w = cut.window
    flag = "compute %s" % args.what
    if args.what == "chev":
        out = chevalley(_expect(obj, StrictLieAlgebra, flag), cut)
    elif args.what == "cochev":
        out = cochevalley(_expect(obj, StrictCoLie, flag), cut)
    elif args.what == "prim":
        out = prim_lie(_expect(obj, StrictComCoalgebra, flag), cut)
    else:
        c = _expect(obj, StrictComCoalgebra, flag)
        n = args.stage if args.stage is not None else max(0, -lo - 1)
        st, _ = cobar_stage(c, n, cut)
        _emit({"construction": "cobar-stage", "stage": n, "cutoff": cut.to_json(),
               "cohomology": _window_dims(st, w), "result": st.to_json()})
        return EXIT_OK
    doc = {"construction": args.what, "cutoff": (out.cutoff or cut).to_json(),
           "cohomology": _window_dims(out.complex, w), "result": out.to_json()}
    if out.base.kind == "finran":
        doc["stalks"] = _stalk_dims(out.carrier, w)
    _emit(doc)
    return EXIT_OK


def cmd_ran(args) -> int:
    obj = _load(args.infile)
    w = Window(*args.window) if args.window else None
    if obj.base.kind != "finran":
        raise InputError("ran %s needs an input with 'points'" % args.what)
    if args.what == "factor-check":
        if isinstance(obj, StrictComCoalgebra):
            res = is_factorization_coalgebra(obj, w)
        elif isinstance(obj, StrictComAlgebra):
            res = is_factorization_algebra(obj, w)
        else:
            raise InputError("ran factor-check needs a comcoalg or comalg input")
        _emit({"factorizable": bool(res), "witness": None if res else res.to_json()})
        return EXIT_OK if res else EXIT_CHECK
    if args.what == "dual":
        if isinstance(obj, BaseObject):
            _emit(verdier_dual(obj).to_json())
        elif isinstance(obj, StrictLieAlgebra):
            _emit(dual_lie(obj).to_json())
        elif isinstance(obj, StrictCoLie):
            _emit(dual_colie(obj).to_json())
        elif isinstance(obj, StrictComCoalgebra):
            _emit(dual_comcoalg(obj).to_json())
        else:
            raise InputError("ran dual does not dualize %s" % type(obj).__name__)
        return EXIT_OK
    carrier = obj if isinstance(obj, BaseObject) else obj.carrier
    c = compactly_supported_cohomology(carrier)
    h = cohomology_dims(c)
    if w is not None:
        h = {n: h.get(n, 0) for n in range(w.lo, w.hi + 1)}
    _emit({"cstar": {str(n): v for n, v in sorted(h.items())}})
    return EXIT_OK


def cmd_ab(args) -> int:
    try:
        exps = [int(e) for e in args.exponents.split(",") if e.strip()]
    except ValueError:
        raise InputError("--exponents must be comma separated integers")
    try:
        series = atiyah_bott_series(exps, args.genus, args.order)
    except ValueError as e:
        raise InputError("--exponents/--genus/--order: %s" % e)
    sys.stdout.write(",".join(str(x) for x in series) + "\n")
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.action == "list":
        for name in suite_names():
            sys.stdout.write(name + "\n")
        return EXIT_OK
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("KOSZULAB_THREADS", "1") or 1)
    cfg = CliConfig("suite", threads=threads, seed=args.seed, output="json" if args.json else "table")
    config = SuiteConfig(seed=cfg.seed, threads=cfg.threads)
    try:
        rep = run_all(config) if args.name == "all" else run_suite(args.name, config)
    except UnknownSuite as e:
        raise InputError("suite run: %s" % e)
    sys.stdout.write(rep.dumps() + "\n" if cfg.output == "json" else rep.table() + "\n")
    return EXIT_OK if rep.ok else EXIT_CHECK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    handlers = {"suite": cmd_suite, "compute": cmd_compute, "ran": cmd_ran, "ab-series": cmd_ab}
    try:
        return handlers[args.command](args)
    except InputError as e:
        sys.stderr.write("koszulab: %s\n" % e)
        return EXIT_INPUT
    except KoszulabError as e:
        sys.stderr.write("koszulab: %s: %s\n" % (type(e).__name__, e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

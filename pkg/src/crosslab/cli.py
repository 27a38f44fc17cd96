"""crosslab command line.

Exit codes: 0 success (including an explicit ``inconclusive``), 1 a
verification failed, 2 usage error, 3 invalid input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .arrangement import UNBOUNDED, AmbiguousFaceError, FaceError, FaceRef
from .constructions import (
    FidelityError,
    blazek_koman,
    convex,
    harary_hill,
    random_cylindrical,
    random_two_page,
    realize,
)
from .drawing import InvalidDrawingError, StructuralError
from .geometry import parse_scalar
from .kedges import DomainError, analysis_report
from .optimizer import certify_result, exact_limit, exact_min_crossings, local_search
from .shelling import check_lemma_cycle, lemma_witness, theorem1_pipeline, verify_shelling_direct
from .spherical import project_to_plane, random_spherical
from .svg import to_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3

CLASSES = ("harary-hill", "blazek-koman", "convex", "two-page-random", "cylindrical", "spherical")
RANDOM_CLASSES = ("two-page-random", "cylindrical", "spherical")


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"crosslab: {msg}", file=sys.stderr)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _point(text: str) -> FaceRef:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}")
    try:
        return FaceRef((parse_scalar(parts[0]), parse_scalar(parts[1])))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_gen(args) -> int:
    n = args.n
    if n < 3 or (args.cls == "spherical" and n < 4):
        raise UsageError(f"n={n} is too small for class {args.cls}")
    meta = {}
    if args.cls in RANDOM_CLASSES:
        seed = 0 if args.seed is None else args.seed
        meta["seed"] = seed
        print(f"seed={seed}", file=sys.stderr)
    if args.cls == "blazek-koman":
        d = blazek_koman(n)[1]
    elif args.cls == "harary-hill":
        d = harary_hill(n)[1]
    elif args.cls == "convex":
        d = convex(n)
    elif args.cls == "two-page-random":
        d = realize(random_two_page(n, meta["seed"]))
    elif args.cls == "cylindrical":
        d = realize(random_cylindrical(n, meta["seed"]))
    else:
        sd, count = random_spherical(n, meta["seed"])
        meta["sphere_crossings"] = count
        d = project_to_plane(sd)
    io.save(args.output, d, meta)
    return EXIT_OK


def cmd_analyze(args) -> int:
    d, meta = io.load(args.file)
    face = args.face if args.face is not None else UNBOUNDED
    report = analysis_report(d, face)
    if "seed" in meta:
        report["seed"] = meta["seed"]
    sys.stdout.write(io.dumps(report))
    return EXIT_OK


def cmd_shell(args) -> int:
    d, meta = io.load(args.file)
    out: dict = {}
    status = EXIT_OK
    S, witness = None, UNBOUNDED
    if args.cycle is not None:
        cw = check_lemma_cycle(d, args.cycle)
        out["cycle_check"] = cw.to_json()
        if not cw.passed:
            status = EXIT_FAIL
        else:
            S, witness = args.cycle, lemma_witness(d, args.cycle)
            if args.witness is not None:
                witness = args.witness
    elif args.set is not None:
        witness = args.witness if args.witness is not None else UNBOUNDED
        cert = verify_shelling_direct(d, args.set, witness)
        out["certificate"] = cert.to_json()
        if not cert.valid:
            status = EXIT_FAIL
        else:
            S = args.set
    verdict = theorem1_pipeline(d, S, witness)
    out["bound"] = verdict.to_json()
    out["status"] = verdict.conclusion
    if verdict.conclusion == "violated":
        status = EXIT_FAIL
    sys.stdout.write(io.dumps(out))
    return status


def cmd_optimize(args) -> int:
    n = args.n
    if n < 3:
        raise UsageError("n must be at least 3")
    method = "exact" if args.exact else "anneal" if args.anneal else ("exact" if n <= exact_limit() else "anneal")
    if method == "exact":
        if n > exact_limit():
            raise UsageError(f"n={n} exceeds the exact limit {exact_limit()} (CROSSLAB_EXACT_LIMIT)")
        r = exact_min_crossings(n)
    else:
        seed = 0 if args.seed is None else args.seed
        print(f"seed={seed}", file=sys.stderr)
        r = local_search(n, seed=seed, restarts=args.restarts, iterations=args.iterations)
    meta = {"optimization": r.to_json()}
    if method != "exact":
        meta["seed"] = seed
    status = EXIT_OK
    if args.certify:
        cert = certify_result(r)
        meta["certification"] = cert.to_json()
        status = EXIT_OK if cert.accepted else EXIT_FAIL
    d = realize(r.layout())
    io.save(args.output, d, meta)
    print(f"n={n} crossings={r.count} method={r.method} status={r.status}", file=sys.stderr)
    return status


def cmd_export_svg(args) -> int:
    d, _ = io.load(args.file)
    text = to_svg(d, mark_crossings=not args.no_crossings)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite, summary_json

    only = set(args.only) if args.only else None
    results = run_suite(only, echo=print)
    text = summary_json(results)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    failed = [r.cid for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crosslab", description="Crossing analysis of drawings of K_n.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a drawing")
    g.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=None, help="random classes only; default 0")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="k-edge analysis of a drawing file")
    a.add_argument("file")
    a.add_argument("--face", type=_point, default=None, help="reference point x,y of the designated face")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("shell", help="shelling certificate and crossing bound")
    s.add_argument("file")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--cycle", type=_int_list, default=None)
    grp.add_argument("--set", type=_int_list, default=None)
    s.add_argument("--witness", type=_point, default=None, help="reference point x,y of the witness face")
    s.set_defaults(func=cmd_shell)

    o = sub.add_parser("optimize", help="2-page crossing minimization for K_n")
    o.add_argument("--n", type=int, required=True)
    m = o.add_mutually_exclusive_group()
    m.add_argument("--exact", action="store_true")
    m.add_argument("--anneal", action="store_true")
    o.add_argument("--seed", type=int, default=None)
    o.add_argument("--restarts", type=int, default=8)
    o.add_argument("--iterations", type=int, default=1500, help="annealing sweeps per restart")
    o.add_argument("--certify", action="store_true", help="also realize and run the shelling pipeline")
    o.add_argument("-o", "--output", default="-")
    o.set_defaults(func=cmd_optimize)

    e = sub.add_parser("export-svg", help="render a drawing file as SVG")
    e.add_argument("file")
    e.add_argument("out")
    e.add_argument("--no-crossings", action="store_true")
    e.set_defaults(func=cmd_export_svg)

    v = sub.add_parser("verify", help="run the acceptance battery")
    v.add_argument("--suite", required=True, choices=("paper",))
    v.add_argument("--only", type=int, nargs="*", help="criterion ids to run")
    v.add_argument("--json", default=None, help="write the summary JSON here instead of stdout")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except InvalidDrawingError as exc:
        _err(str(exc))
        for v in exc.report.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INPUT
    except (StructuralError, AmbiguousFaceError, FaceError, DomainError, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except FidelityError as exc:
        _err(str(exc))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 ok, 1 property violation, 2 usage or bound error,
3 input precondition violated.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .bwx import pipeline
from .errors import BoundExceeded, InvalidDelta, InvalidRect, PreconditionViolated
from .experiments import (MEASURE_HEADER, ConfigError, ExperimentConfig, measure_row, run_convergence,
                          run_goodness, summarize)
from .growth import CACHE_ENV
from .perms import ClassSpec, count_avoiders, enumerate_avoiders, format_perm, parse_perm
from .sampling import DEFAULT_MAX_N, make_rng, sample_av_increasing, sample_record, sample_target_class
from .shapes import shape_wilf_check, shape_wilf_classes
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in str(text).split(",") if t.strip())


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in str(text).split(",") if t.strip())


def _spec(text: str) -> ClassSpec:
    try:
        return ClassSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _perm(text: str):
    try:
        return parse_perm(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment; keys use flag names."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _spec_from(args) -> ClassSpec:
    if getattr(args, "klass", None) is not None:
        return args.klass
    if None in (args.k1, args.k2, args.k3):
        raise ConfigError("give --class k1,k2,k3 or all of --k1 --k2 --k3")
    return ClassSpec(args.k1, args.k2, args.k3)


def _add_spec_args(p):
    p.add_argument("--class", dest="klass", type=_spec, help="k1,k2,k3")
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--k3", type=int)


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="permuton-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="flat key = value file; flags override it")
    parser.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = subs["enumerate"] = sub.add_parser("enumerate", help="list or count Av_n(patterns)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", type=_perm, action="append", required=True, help="pattern, repeatable")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--bound", type=int, default=10)

    p = subs["biject"] = sub.add_parser("biject", help="run the four-stage bijection")
    p.add_argument("--perm", type=_perm, required=True)
    _add_spec_args(p)
    p.add_argument("--strategy", choices=("auto", "growth", "enumeration"), default="auto")
    p.add_argument("--trace", help="append the full stage trace as one JSON line")

    p = subs["sample"] = sub.add_parser("sample", help="uniform samples as JSON lines")
    p.add_argument("--n", type=int, required=True)
    _add_spec_args(p)
    p.add_argument("--d", type=int, help="sample Av_n(I_{d+1}) instead of a target class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--out")

    p = subs["measure"] = sub.add_parser("measure", help="W masses and rect-sup distance")
    p.add_argument("--perm", type=_perm)
    p.add_argument("--n", type=int)
    _add_spec_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--eps", type=_floats, default="0.2")
    p.add_argument("--out")

    p = subs["converge"] = sub.add_parser("converge", help="convergence sweep over n")
    _add_spec_args(p)
    p.add_argument("--ns", type=_ints, default="50,200,800")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--eps", type=_floats, default="0.2")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--goodness-eps", type=float, default=0.05)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strategy", choices=("auto", "growth", "enumeration"), default="auto")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--out")
    p.add_argument("--summary")

    p = subs["goodness"] = sub.add_parser("goodness", help="fraction of good samples per n")
    p.add_argument("--ns", type=_ints, default="100,400,1600")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-n", type=int, default=2000)
    p.add_argument("--out")

    p = subs["shape-wilf"] = sub.add_parser("shape-wilf", help="shape-Wilf classes or a pairwise check")
    p.add_argument("--max-boxes", type=int, default=9)
    p.add_argument("--pair", type=_perm, nargs=2, metavar="PATTERN")
    p.add_argument("--length", type=int, default=3, help="pattern length when listing classes")

    p = subs["verify"] = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--max-n", type=int)
    p.add_argument("--quick", action="store_true")
    return parser, subs


def _apply_config(argv, parser, subs):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    flags = {"cache_dir"}
    for key in list(values):
        if key in flags:
            parser.set_defaults(**{key: values.pop(key)})
    for sp in subs.values():
        dests = {a.dest: a for a in sp._actions}
        defaults = {}
        for key, value in values.items():
            action = dests.get("klass" if key == "class" else key)
            if action is None:
                continue
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = value.lower() in ("1", "true", "yes", "on")
            elif action.type is not None and not isinstance(action, argparse._AppendAction):
                # argparse converts string defaults with the action's type
                defaults[action.dest] = value
            elif isinstance(action, argparse._AppendAction):
                defaults[action.dest] = [action.type(v) for v in value.split()]
            else:
                defaults[action.dest] = value
        sp.set_defaults(**defaults)


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def cmd_enumerate(args) -> int:
    if args.count_only:
        print(count_avoiders(args.n, args.avoid, args.bound))
    else:
        for p in enumerate_avoiders(args.n, args.avoid, args.bound):
            print(format_perm(p))
    return EXIT_OK


def cmd_biject(args) -> int:
    trace = pipeline(args.perm, _spec_from(args), args.strategy)
    print(f"rho={format_perm(trace.rho)}")
    print(f"pi={format_perm(trace.pi)}")
    if args.trace:
        with open(args.trace, "a") as fh:
            fh.write(trace.to_json() + "\n")
    return EXIT_OK


def cmd_sample(args) -> int:
    fh = _open_out(args.out)
    try:
        for t in range(args.count):
            stream = args.stream + t
            rng = make_rng(args.seed, stream)
            if args.d is not None:
                p = sample_av_increasing(args.n, args.d, rng, args.max_n)
                fh.write(json.dumps({"n": args.n, "d": args.d, "seed": args.seed, "stream": stream,
                                     "perm": format_perm(p)}) + "\n")
            else:
                spec = _spec_from(args)
                p = sample_target_class(args.n, spec, rng, max_n=args.max_n)
                fh.write(sample_record(args.n, spec, args.seed, stream, p) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def cmd_measure(args) -> int:
    fh = _open_out(args.out)
    try:
        writer = csv.writer(fh)
        writer.writerow(MEASURE_HEADER)
        if args.perm is not None:
            for e in args.eps:
                writer.writerow(measure_row(args.perm, e))
        else:
            if args.n is None:
                raise ConfigError("give --perm or --n with a class")
            spec = _spec_from(args)
            for stream in range(args.samples):
                pi = sample_target_class(args.n, spec, make_rng(args.seed, stream))
                for e in args.eps:
                    writer.writerow(measure_row(pi, e, args.seed, stream))
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def cmd_converge(args) -> int:
    cfg = ExperimentConfig(
        spec=_spec_from(args) if (args.klass or args.k1) else ClassSpec(2, 1, 1),
        ns=args.ns, samples=args.samples, seed=args.seed, epsilons=args.eps, grid=args.grid,
        goodness_eps=args.goodness_eps, cache_dir=args.cache_dir, out=args.out, summary=args.summary,
        workers=args.workers, strategy=args.strategy, max_n=args.max_n,
    ).validate()
    records = run_convergence(cfg)
    for row in summarize(cfg, records):
        print(json.dumps(row))
    return EXIT_OK


def cmd_goodness(args) -> int:
    if not (0 < args.eps < 0.5):
        raise ConfigError("eps must lie in (0, 1/2)")
    fractions = run_goodness(args.ns, args.d, args.eps, args.samples, args.seed, args.out,
                             args.workers, args.max_n, args.cache_dir)
    for n, f in fractions.items():
        print(f"n={n} good_fraction={f:.4f}")
    return EXIT_OK


def cmd_shape_wilf(args) -> int:
    if args.pair:
        rep = shape_wilf_check(args.pair[0], args.pair[1], args.max_boxes)
        if rep.equal:
            print(f"equal on all {rep.shapes_tested} shapes with <= {args.max_boxes} boxes")
        else:
            shape, a, b = rep.counterexample
            print(f"counterexample shape={shape} counts={a},{b}")
        return EXIT_OK
    from itertools import permutations
    pats = [tuple(p) for p in permutations(range(1, args.length + 1))]
    for cls in shape_wilf_classes(pats, args.max_boxes):
        print("{" + ", ".join("".join(map(str, p)) for p in cls) + "}")
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    overrides = {"max_n": args.max_n} if args.max_n is not None else {}
    ok = True
    for s in suites:
        res = run_suite(s, quick=args.quick, **overrides)
        print(json.dumps(res.report()))
        ok &= res.ok
    return EXIT_OK if ok else EXIT_VIOLATION


COMMANDS = {
    "enumerate": cmd_enumerate, "biject": cmd_biject, "sample": cmd_sample, "measure": cmd_measure,
    "converge": cmd_converge, "goodness": cmd_goodness, "shape-wilf": cmd_shape_wilf, "verify": cmd_verify,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, subs = build_parser()
    try:
        _apply_config(argv, parser, subs)
    except (OSError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
    try:
        return COMMANDS[args.command](args)
    except PreconditionViolated as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (BoundExceeded, ConfigError, InvalidDelta, InvalidRect, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

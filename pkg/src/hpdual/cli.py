"""Command-line entry point.

Exit codes separate mathematics from plumbing: 0 means the requested check
or report succeeded, 1 means a mathematical verdict came back false (invalid
profile, failed proof obligation, unequal intersection pairing), and 2 means
a usage or input error.  All output is deterministic, so repeated runs on
the same inputs are byte-identical; the sweep merges worker results in
canonical order regardless of scheduling.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import synthesis
from .chessboard import ChessboardSpec, make_spec, staircase_E, staircase_pi_S, staircase_pi_T
from .profiles import (
    LefschetzProfile,
    ProfileFormatError,
    dualize,
    euler_ambient,
    euler_total,
    load_profile,
    profile_to_json,
    save_profile,
    validate_profile,
)
from .prover import check_ff_pi_S, check_ff_pi_T, check_generation, check_main_theorem
from .render import (
    SVG,
    TEXT,
    RenderOptions,
    render_chessboard,
    render_profile_pair,
    render_trace,
)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2

_JOBS_ENV = "HPDUAL_JOBS"


def _load(path: str) -> LefschetzProfile:
    try:
        return load_profile(path)
    except FileNotFoundError:
        raise SystemExit2(f"cannot read {path!r}: no such file")
    except ProfileFormatError as exc:
        raise SystemExit2(f"malformed profile {path!r}: {exc}")


class SystemExit2(Exception):
    """Usage or IO failure, reported on stderr with exit code 2."""


def _cmd_validate(args) -> int:
    p = _load(args.profile)
    report = validate_profile(p)
    for w in report.warnings:
        print(f"warning: {w}")
    if report.valid:
        print(f"{p.name}: valid (length {p.length}, N {p.N})")
        return EXIT_OK
    for v in report.violations:
        print(f"violation: {v}")
    return EXIT_VERDICT


def _cmd_dualize(args) -> int:
    p = _load(args.profile)
    q = dualize(p)
    if args.out:
        save_profile(q, args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(profile_to_json(q))
    return EXIT_OK


def _cmd_euler(args) -> int:
    p = _load(args.profile)
    q = dualize(p)
    print(f"profile {p.name}: N={p.N} length={p.length}")
    print(f"euler_ambient = {euler_ambient(p)}")
    print(f"euler_total   = {euler_total(p)}")
    print(f"dual euler_total = {euler_total(q)} (sum {euler_total(p) + euler_total(q)}"
          f" = N * ambient = {p.N * euler_ambient(p)})")
    return EXIT_OK


def _cmd_intersect(args) -> int:
    pX = _load(args.x_profile)
    pS = _load(args.s_profile)
    xt, ys = synthesis.intersect_decompositions(pX, pS)
    print("\n".join(xt.lines()))
    print("\n".join(ys.lines()))
    if args.chi_xt is not None:
        chi_e = args.chi_xt - xt.ambient_euler
        predicted = synthesis.plucker_predict(pX, pS, args.chi_xt)
        print(f"chi(E) = {args.chi_xt} - {xt.ambient_euler} = {chi_e}")
        print(f"chi(X_T) = {args.chi_xt} predicts chi(Y_S) = {predicted}")
        if predicted.denominator != 1:
            print("warning: predicted value is not an integer")
    return EXIT_OK


def _cmd_plucker(args) -> int:
    if args.example:
        records = None
        if args.examples_file:
            try:
                records = synthesis.load_examples(args.examples_file)
            except (OSError, ValueError, KeyError) as exc:
                raise SystemExit2(f"cannot load {args.examples_file!r}: {exc}")
        try:
            rec = synthesis.lookup_example(args.example, records)
        except KeyError as exc:
            raise SystemExit2(str(exc))
        if not rec.complete:
            both = "chi(X_T) = chi(Y_S)" if rec.chiX * rec.chiT == rec.chiY * rec.chiS else None
            print(f"{rec.name}: intersection Euler characteristics not pinned; "
                  f"ambient data chi = ({rec.chiX}, {rec.chiY}, {rec.chiS}, {rec.chiT}), N = {rec.N}")
            if both:
                print(f"identity implies {both}")
            return EXIT_OK
        ok, left, right = synthesis.plucker_check(
            rec.chiX, rec.chiY, rec.chiS, rec.chiT, rec.chiXT, rec.chiYS, rec.N
        )
        print(f"{rec.name}: left = {left}, right = {right} -> {'equal' if ok else 'UNEQUAL'}")
        return EXIT_OK if ok else EXIT_VERDICT
    if args.values is None or args.n is None:
        raise SystemExit2("plucker needs --example NAME or --values 6 ints with --n N")
    ok, left, right = synthesis.plucker_check(*args.values, args.n)
    print(f"left = {left}, right = {right} -> {'equal' if ok else 'UNEQUAL'}")
    return EXIT_OK if ok else EXIT_VERDICT


_PHASES = {
    "ff_pi_T": check_ff_pi_T,
    "ff_pi_S": check_ff_pi_S,
    "generation": check_generation,
    "all": check_main_theorem,
}


def _cmd_prove(args) -> int:
    pX = _load(args.ix)
    pS = _load(args.s_profile)
    spec = ChessboardSpec(pX, pS)
    try:
        spec.validate()
    except ValueError as exc:
        raise SystemExit2(str(exc))
    trace = _PHASES[args.phase](spec)
    sys.stdout.write(trace.serialize())
    return EXIT_OK if trace.success else EXIT_VERDICT


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            return range(int(lo), int(hi) + 1)
        return range(int(lo), int(lo) + 1)
    except ValueError:
        raise SystemExit2(f"bad range {text!r}; use the form a..b")


def _sweep_point(task: tuple[int, int, int]) -> tuple[int, int, int, bool, int]:
    i, l, N = task
    trace = check_main_theorem(make_spec(i, l, N))
    return (i, l, N, trace.success, len(trace.obligations))


def _cmd_sweep(args) -> int:
    i_range = _parse_range(args.i)
    l_range = _parse_range(args.l)
    if not i_range or not l_range:
        raise SystemExit2("sweep ranges must be nonempty")
    tasks = [
        (i, l)
        for i in i_range
        for l in l_range
        if max(i, l) + 1 <= args.n_max
    ]
    jobs = args.jobs if args.jobs else int(os.environ.get(_JOBS_ENV, "1"))
    points: list[tuple[int, int, int, bool, int]] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            base = list(
                pool.map(_sweep_point, [(i, l, max(i, l) + 1) for i, l in tasks])
            )
    else:
        base = [_sweep_point((i, l, max(i, l) + 1)) for i, l in tasks]
    by_pair = {(i, l): (ok, n) for i, l, _, ok, n in base}
    for i, l in tasks:
        ok, n = by_pair[(i, l)]
        for N in range(max(i, l) + 1, args.n_max + 1):
            points.append((i, l, N, ok, n))
    points.sort()
    failures = 0
    for i, l, N, ok, n in points:
        status = "ok" if ok else "FAILED"
        print(f"i={i} l={l} N={N}: {status} ({n} obligations)")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} of {len(points)} specs FAILED")
        return EXIT_VERDICT
    print(f"all specs verified ({len(points)} points)")
    return EXIT_OK


_STAIRCASES = ("pi_T", "pi_S", "E")


def _cmd_render(args) -> int:
    fmt = SVG if args.format == "svg" else TEXT
    if args.target == "profile":
        p = _load(args.profile)
        data = render_profile_pair(p, RenderOptions(format=fmt))
    elif args.target == "chessboard":
        pX = _load(args.ix)
        pS = _load(args.s_profile)
        spec = ChessboardSpec(pX, pS)
        highlight: tuple = ()
        if args.highlight:
            kind, _, num = args.highlight.partition(":")
            if kind not in _STAIRCASES:
                raise SystemExit2(
                    f"unknown highlight {args.highlight!r}; use pi_T:k, pi_S:k or E"
                )
            if kind == "E":
                region = staircase_E(spec)
            else:
                try:
                    k = int(num)
                except ValueError:
                    raise SystemExit2("staircase highlights need an integer k")
                fn = staircase_pi_T if kind == "pi_T" else staircase_pi_S
                try:
                    region = fn(k, spec)
                except IndexError as exc:
                    raise SystemExit2(str(exc))
            highlight = ((region, "accent1"),)
        data = render_chessboard(spec, RenderOptions(format=fmt, highlight=highlight))
    else:
        pX = _load(args.ix)
        pS = _load(args.s_profile)
        spec = ChessboardSpec(pX, pS)
        trace = _PHASES[args.phase](spec)
        data = render_trace(trace, RenderOptions(format=fmt))
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hpdual",
        description="Lefschetz-profile arithmetic and the chessboard duality engine",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a profile file against the invariants")
    s.add_argument("profile")
    s.set_defaults(fn=_cmd_validate)

    s = sub.add_parser("dualize", help="write the complementary-box dual profile")
    s.add_argument("profile")
    s.add_argument("--out", help="output path (default: stdout)")
    s.set_defaults(fn=_cmd_dualize)

    s = sub.add_parser("euler", help="ambient and total Euler characteristics")
    s.add_argument("profile")
    s.set_defaults(fn=_cmd_euler)

    s = sub.add_parser("intersect", help="ambient decomposition reports of both intersections")
    s.add_argument("--ix", dest="x_profile", required=True, help="X-side profile file")
    s.add_argument("--is", dest="s_profile", required=True, help="S-side profile file")
    s.add_argument("--chi-xt", dest="chi_xt", type=int, help="known chi of the X-side intersection")
    s.set_defaults(fn=_cmd_intersect)

    s = sub.add_parser("plucker", help="exact intersection-pairing identity check")
    s.add_argument("--example", help="example name (built-in or from --examples-file)")
    s.add_argument("--examples-file", dest="examples_file",
                   help="user example database with the shipped schema")
    s.add_argument(
        "--values",
        nargs=6,
        type=int,
        metavar=("CHIX", "CHIY", "CHIS", "CHIT", "CHIXT", "CHIYS"),
    )
    s.add_argument("--n", type=int, help="ambient dimension N")
    s.set_defaults(fn=_cmd_plucker)

    s = sub.add_parser("prove", help="replay the duality proof for two profiles")
    s.add_argument("--ix", required=True, help="X-side profile file")
    s.add_argument("--is", dest="s_profile", required=True, help="S-side profile file")
    s.add_argument("--phase", choices=sorted(_PHASES), default="all")
    s.set_defaults(fn=_cmd_prove)

    s = sub.add_parser("sweep", help="replay the proof over a parameter sweep")
    s.add_argument("--i", required=True, help="range a..b of X-side lengths")
    s.add_argument("--l", required=True, help="range a..b of S-side lengths")
    s.add_argument("--n-max", dest="n_max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=0,
                   help=f"worker processes (default from ${_JOBS_ENV} or 1)")
    s.set_defaults(fn=_cmd_sweep)

    s = sub.add_parser("render", help="render profiles, chessboards, or traces")
    s.add_argument("--target", choices=("profile", "chessboard", "trace"), required=True)
    s.add_argument("--format", choices=("text", "svg"), default="text")
    s.add_argument("--profile", help="profile file (target=profile)")
    s.add_argument("--ix", help="X-side profile file")
    s.add_argument("--is", dest="s_profile", help="S-side profile file")
    s.add_argument("--highlight", help="staircase to highlight: pi_T:k, pi_S:k or E")
    s.add_argument("--phase", choices=sorted(_PHASES), default="all")
    s.add_argument("--out", help="output path (default: stdout)")
    s.set_defaults(fn=_cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success or match, 1 input error, 2 degenerate configuration,
3 theorem or verdict mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import serialize
from .assembler import GradingParams, predict_closed_form, theorem_window, window_complex
from .complexes import equivariant_homology, homology
from .errors import CertificateError, DegeneracyError, LadderCounterexample, ModulusError, ZkContactError
from .ladder import LadderSpec, propagate_units
from .profiles import StandardFamilyParams, build_standard_profile, extract_orbits, filter_window, fmt, to_fraction
from .squeeze import certify_nonsqueezing, room_report

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_MISMATCH = 0, 1, 2, 3
FORMAT_ENV = "ZKCONTACT_OUTPUT_FORMAT"


class InputError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def window_arg(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


def _dec(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _print_table(headers: Sequence[str], rows: Sequence[Sequence], out) -> None:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    for r in cells:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)


def _emit_json(doc: dict, out) -> None:
    doc = {"schema_version": serialize.SCHEMA_VERSION, **doc}
    print(json.dumps(doc, indent=2), file=out)


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _profile(args):
    if args.profile:
        return serialize.profile_from_dict(_load_json(args.profile))
    if args.delta is None or args.c is None:
        raise InputError("give --profile FILE or both --delta and --c")
    return build_standard_profile(StandardFamilyParams(args.R, args.delta, args.c))


def cmd_orbits(args, out) -> int:
    orbits = extract_orbits(_profile(args), args.R)
    if args.epsilon is not None:
        orbits = filter_window(orbits, args.epsilon)
    if args.format == "json":
        _emit_json({"type": "orbits", "R": fmt(args.R), "epsilon": args.epsilon and fmt(args.epsilon),
                    "orbits": [serialize.orbit_to_dict(o) for o in orbits]}, out)
        return EXIT_OK
    rows = [(o.kind.value, o.m, o.corner_index, fmt(o.tangent_slope), fmt(o.vertical_intercept),
             fmt(o.action), _dec(o.action)) for o in orbits]
    _print_table(("kind", "m", "corner", "slope", "intercept", "action", "~action"), rows, out)
    return EXIT_OK


def _cmd_homology(args, out, equivariant: bool) -> int:
    if args.epsilon is None:
        raise InputError("--epsilon is required")
    pred = predict_closed_form(args.n, args.R, args.k if equivariant else None)
    g = GradingParams(args.n, args.k)
    orbits, layout, c = window_complex(_profile(args), args.R, args.epsilon, g)
    window = args.window or theorem_window(args.n, args.R)
    target = pred.noneq_degree
    if equivariant:
        table = equivariant_homology(c, window)
        expected = {m: int(m >= target) for m in table.dims}
    else:
        table = homology(c, window)
        expected = {m: int(m == target) for m in table.dims}
    match = table.dims == expected
    verdict = "MATCH" if match else "MISMATCH"
    if args.format == "json":
        _emit_json({
            "type": "equivariant_homology" if equivariant else "homology",
            "n": args.n, "k": g.k.k, "R": fmt(args.R), "epsilon": fmt(args.epsilon),
            "origin_degree": layout.origin_degree, "blocks": list(layout.block_ms),
            "table": serialize.table_to_dict(table), "prediction": target, "verdict": verdict,
        }, out)
    else:
        label = "CH^Zk" if equivariant else "CH"
        rows = [(m, d, expected[m]) for m, d in sorted(table.dims.items())]
        print(f"layout: origin at {layout.origin_degree}, blocks m = {list(layout.block_ms) or '-'}", file=out)
        _print_table(("degree", f"dim {label}", "predicted"), rows, out)
        rule = "m >=" if equivariant else "m ="
        print(f"prediction: dim 1 for {rule} {target}, else 0", file=out)
        print(f"verdict: {verdict}", file=out)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_ch(args, out) -> int:
    return _cmd_homology(args, out, equivariant=False)


def cmd_ch_equivariant(args, out) -> int:
    return _cmd_homology(args, out, equivariant=True)


def cmd_certify(args, out) -> int:
    try:
        cert = certify_nonsqueezing(args.n, args.R1, args.R2, args.k)
    except CertificateError as exc:
        print(f"INVALID: {exc}", file=out)
        return EXIT_MISMATCH
    if args.format == "json":
        print(serialize.dumps(cert), file=out)
    else:
        rows = [
            ("R1", fmt(cert.R1), _dec(cert.R1)),
            ("R2", fmt(cert.R2), _dec(cert.R2)),
            ("certified R1", fmt(cert.certified_R1), _dec(cert.certified_R1)),
            ("certified R2", fmt(cert.certified_R2), _dec(cert.certified_R2)),
            ("k", cert.k, ""),
            ("l", cert.ell, ""),
            ("r1", fmt(cert.r1), _dec(cert.r1)),
            ("r2", fmt(cert.r2), _dec(cert.r2)),
            ("p", cert.p, ""),
            ("dims at p", f"{cert.dims[0]}, {cert.dims[1]}", ""),
        ]
        _print_table(("field", "value", "~value"), rows, out)
        for i, step in enumerate(cert.narrative, 1):
            print(f"{i}. {step}", file=out)
        print("VALID" if cert.valid else "INVALID", file=out)
    return EXIT_OK if cert.valid else EXIT_MISMATCH


def cmd_room(args, out) -> int:
    rep = room_report(args.m, args.kappa, args.b)
    if args.format == "json":
        print(serialize.dumps(rep), file=out)
        return EXIT_OK
    opt = lambda x: "-" if x is None else fmt(x)  # noqa: E731
    rows = [
        ("sandwich", rep.sandwich_holds, ""),
        ("strong", rep.strong_holds, ""),
        ("required room", opt(rep.required_room), "" if rep.required_room is None else _dec(rep.required_room)),
        ("ekp bound", fmt(rep.ekp_bound), _dec(rep.ekp_bound)),
        ("construction bound", fmt(rep.construction_bound), _dec(rep.construction_bound)),
        ("gap", "-" if rep.gap is None else f"({fmt(rep.gap[0])}, {fmt(rep.gap[1])})", ""),
    ]
    _print_table(("field", "value", "~value"), rows, out)
    return EXIT_OK


def cmd_ladder_check(args, out) -> int:
    try:
        ladder = LadderSpec.from_dict(_load_json(args.ladder))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed ladder document: {exc}") from None
    try:
        verdict = propagate_units(ladder)
    except LadderCounterexample as exc:
        if args.format == "json":
            _emit_json({"type": "ladder_verdict", "verdict": "counterexample", "detail": str(exc)}, out)
        else:
            print(f"COUNTEREXAMPLE: {exc}", file=out)
        return EXIT_MISMATCH
    text = "all_units" if verdict.all_units else f"first_non_unit {verdict.first_non_unit}"
    if args.format == "json":
        _emit_json({"type": "ladder_verdict", "verdict": "all_units" if verdict.all_units else "non_unit",
                    "first_non_unit": verdict.first_non_unit}, out)
    else:
        print(text, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "table")
    if default_format not in ("table", "json"):
        default_format = "table"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=default_format)

    parser = argparse.ArgumentParser(prog="zkcontact", description="Z_k-equivariant contact homology toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def profile_opts(p):
        p.add_argument("--R", type=rational, required=True)
        p.add_argument("--profile", help="profile JSON document")
        p.add_argument("--delta", type=rational)
        p.add_argument("--c", type=rational)
        p.add_argument("--epsilon", type=rational)

    p = sub.add_parser("orbits", parents=[common], help="closed Reeb orbit families of a profile")
    profile_opts(p)
    p.set_defaults(func=cmd_orbits)

    for name, func in (("ch", cmd_ch), ("ch-equivariant", cmd_ch_equivariant)):
        p = sub.add_parser(name, parents=[common], help=f"{name} of the window complex vs. the closed form")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        profile_opts(p)
        p.add_argument("--window", type=window_arg, help="degree range LO:HI")
        p.set_defaults(func=func)

    p = sub.add_parser("certify", parents=[common], help="equivariant non-squeezing certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R1", type=rational, required=True)
    p.add_argument("--R2", type=rational, required=True)
    p.add_argument("--k", type=int, help="pin the prime k")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("room", parents=[common], help="squeezing-room report")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_room)

    p = sub.add_parser("ladder-check", parents=[common], help="check unit propagation on a ladder document")
    p.add_argument("ladder", help="ladder JSON document")
    p.set_defaults(func=cmd_ladder_check)
    return parser


def _join_window(argv: Sequence[str]) -> list[str]:
    # "--window -9:-1" would otherwise be read as an option
    out, it = [], iter(argv)
    for a in it:
        if a == "--window":
            out.append(f"--window={next(it, '')}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = _join_window(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except DegeneracyError as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InputError, ModulusError, ValueError, TypeError, ZkContactError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

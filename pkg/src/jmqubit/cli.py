"""Command-line surface.

Subcommands: check (POVM set -> per-subset verdicts and structure), joint
(POVM set -> explicit joint POVM), realize (named structure -> certificate),
verify (certificate -> report), atlas (20-entry manifest), bounds (closed-form
threshold tables as CSV).

Exit codes: 0 success/verified, 2 verification failure, 3 undecided or
inconclusive outcomes, 64 malformed JSON input, 65 precondition violation.
JSON goes to stdout (floats serialized via shortest round-trip repr); a short
human-readable summary goes to stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from pathlib import Path

from . import oracle as oracle_mod
from . import realizer
from .criteria import (
    COMPATIBLE,
    INCOMPATIBLE,
    UNKNOWN,
    pair_same_purity_bound,
    planar_nwise_bound,
)
from .povm import JointPovm, povms_from_json_dict
from .structures import JmStructure, structure_of
from .surgery import build_general_binary_joint

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_UNDECIDED = 3
EXIT_BAD_JSON = 64
EXIT_PRECONDITION = 65


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_angle(text: str) -> float:
    """Angle with unit suffix: '30deg', '0.5236rad', bare value = radians."""
    t = text.strip().lower()
    try:
        if t.endswith("deg"):
            return math.radians(float(t[:-3]))
        if t.endswith("rad"):
            return float(t[:-3])
        return float(t)
    except ValueError:
        raise CliError(EXIT_PRECONDITION, f"cannot parse angle {text!r}") from None


def _load_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PRECONDITION, f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_BAD_JSON, f"malformed JSON in {path}: {exc}") from None


def _load_povms(path: str):
    d = _load_json(path)
    try:
        povms = povms_from_json_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PRECONDITION, f"bad POVM-set schema: {exc}") from None
    if not povms:
        raise CliError(EXIT_PRECONDITION, "POVM set is empty")
    return povms


def _emit(payload, out: str | None, summary: str) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)
    print(summary, file=sys.stderr)


def _decider_for_mode(povms, mode: str):
    closed = realizer.closed_form_decider(povms)
    if mode == "closed-form":
        return closed
    via_oracle = realizer.oracle_decider(povms)
    if mode == "oracle":
        return via_oracle
    def both(combo):
        d = closed(combo)
        return d if d != UNKNOWN else via_oracle(combo)
    return both


def cmd_check(args) -> int:
    povms = _load_povms(args.input)
    n = len(povms)
    decider = _decider_for_mode(povms, args.mode)
    struct = structure_of(povms, decider)
    verdicts = []
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            s = frozenset(combo)
            if struct.is_compatible(s):
                d = COMPATIBLE
            elif s in struct.undecided:
                d = UNKNOWN
            else:
                d = INCOMPATIBLE
            verdicts.append({"subset": list(combo), "decision": d})
    payload = {
        "structure": struct.to_json_dict(),
        "undecided": sorted(map(sorted, struct.undecided)),
        "verdicts": verdicts,
    }
    n_und = len(struct.undecided)
    _emit(
        payload,
        args.out,
        f"check: {n} POVMs, maximal compatible sets "
        f"{struct.sorted_maximal()}, {n_und} undecided subset(s)",
    )
    return EXIT_UNDECIDED if n_und else EXIT_OK


def cmd_joint(args) -> int:
    povms = _load_povms(args.input)
    if args.constructor == "chain":
        try:
            joint, relab = build_general_binary_joint(povms)
        except ValueError as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from None
        summary = (
            f"joint: chain construction, order {list(relab.order)}, "
            f"flips {list(relab.flips)}"
        )
    else:  # oracle
        res = oracle_mod.decide(povms)
        if res.status != oracle_mod.FEASIBLE:
            raise CliError(
                EXIT_UNDECIDED if res.status == oracle_mod.INCONCLUSIVE else EXIT_FAIL,
                f"oracle status {res.status} (residual {res.residual:.3e})",
            )
        joint = res.witness
        summary = f"joint: oracle witness after {res.iterations} iterations"
    _emit(joint.to_json_dict(), args.out, summary)
    return EXIT_OK


def _realize_from_name(args) -> realizer.RealizationCertificate:
    name = args.structure
    try:
        if name == "n-cycle":
            if args.n is None:
                raise CliError(EXIT_PRECONDITION, "n-cycle needs --n")
            return realizer.realize_n_cycle(args.n, args.eta)
        if name == "n-specker":
            if args.n is None:
                raise CliError(EXIT_PRECONDITION, "n-specker needs --n")
            return realizer.realize_n_specker(args.n, args.eta)
        if name.startswith("four-vertex-"):
            atlas_id = int(name[len("four-vertex-"):])
            return realizer.realize_four_vertex(atlas_id, args.variant, args.eta)
        if name in realizer.MISC_SCENARIOS:
            return realizer.realize_misc(name, args.eta)
    except CliError:
        raise
    except (ValueError, KeyError) as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    known = (
        ["n-cycle", "n-specker"]
        + [f"four-vertex-{i}" for i in realizer.ATLAS_IDS]
        + sorted(realizer.MISC_SCENARIOS)
    )
    raise CliError(EXIT_PRECONDITION, f"unknown structure {name!r}; known: {known}")


def cmd_realize(args) -> int:
    cert = _realize_from_name(args)
    _emit(
        cert.to_json_dict(),
        args.out,
        f"realize: {cert.label} at eta {cert.eta!r}, window "
        f"({cert.eta_window[0]!r}, {cert.eta_window[1]!r}], "
        f"maximal {cert.claimed.sorted_maximal()}",
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    d = _load_json(args.input)
    try:
        cert = realizer.RealizationCertificate.from_json_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PRECONDITION, f"bad certificate schema: {exc}") from None
    report = realizer.verify_certificate(cert, args.mode)
    payload = {
        "ok": report.ok,
        "issues": list(report.issues),
        "inconclusive": list(report.inconclusive),
    }
    status = "verified" if report.ok else "FAILED"
    _emit(
        payload,
        args.out,
        f"verify ({args.mode}): {status}, {len(report.issues)} issue(s), "
        f"{len(report.inconclusive)} inconclusive item(s)",
    )
    if not report.ok:
        return EXIT_FAIL
    return EXIT_UNDECIDED if report.inconclusive else EXIT_OK


def cmd_atlas(args) -> int:
    manifest = realizer.atlas_manifest()
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n"
        )
        for i in realizer.ATLAS_IDS:
            if i == 6:
                for variant in ("mixed-purity", "non-coplanar"):
                    cert = realizer.realize_four_vertex(6, variant)
                    (out_dir / f"four-vertex-6-{variant}.json").write_text(
                        json.dumps(cert.to_json_dict(), indent=2, sort_keys=True) + "\n"
                    )
            else:
                cert = realizer.realize_four_vertex(i)
                (out_dir / f"four-vertex-{i}.json").write_text(
                    json.dumps(cert.to_json_dict(), indent=2, sort_keys=True) + "\n"
                )
        print(json.dumps(manifest, indent=2, sort_keys=True))
        print(f"atlas: manifest + 21 certificates written to {out_dir}", file=sys.stderr)
    else:
        _emit(manifest, None, "atlas: 20-entry manifest (use --out DIR for certificates)")
    return EXIT_OK


def _parse_n_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    n = int(text)
    return range(n, n + 1)


def cmd_bounds(args) -> int:
    rows = []
    if args.family == "planar-symmetric":
        if args.n is None:
            raise CliError(EXIT_PRECONDITION, "bounds needs --n (e.g. 3..8)")
        rows.append("family,n,bound")
        for n in _parse_n_range(args.n):
            rows.append(f"planar-symmetric,{n},{planar_nwise_bound(n)!r}")
    elif args.family in ("n-cycle", "n-specker"):
        if args.n is None:
            raise CliError(EXIT_PRECONDITION, "bounds needs --n (e.g. 3..8)")
        window = (
            realizer.n_cycle_window if args.family == "n-cycle" else realizer.n_specker_window
        )
        rows.append("family,n,lo,hi")
        for n in _parse_n_range(args.n):
            try:
                lo, hi = window(n)
            except ValueError as exc:
                raise CliError(EXIT_PRECONDITION, str(exc)) from None
            rows.append(f"{args.family},{n},{lo!r},{hi!r}")
    elif args.family == "pair-angle":
        if not args.angle:
            raise CliError(EXIT_PRECONDITION, "pair-angle needs --angle (e.g. 90deg)")
        rows.append("family,angle_radians,bound")
        for text in args.angle:
            phi = parse_angle(text)
            rows.append(f"pair-angle,{phi!r},{pair_same_purity_bound(phi)!r}")
    else:
        raise CliError(EXIT_PRECONDITION, f"unknown family {args.family!r}")
    text = "\n".join(rows)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    print(f"bounds: {len(rows) - 1} row(s) for family {args.family}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jmqubit",
        description="joint-measurability toolbox for binary qubit POVMs",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide compatibility of every subset")
    p.add_argument("input", nargs="?", default="-", help="POVM-set JSON file or - for stdin")
    p.add_argument("--mode", choices=["closed-form", "oracle", "both"], default="closed-form")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("joint", help="construct an explicit joint POVM")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--constructor", choices=["chain", "oracle"], default="chain")
    p.add_argument("--out")
    p.set_defaults(func=cmd_joint)

    p = sub.add_parser("realize", help="emit a certified realization")
    p.add_argument("--structure", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--eta", type=float)
    p.add_argument(
        "--variant",
        choices=["mixed-purity", "non-coplanar"],
        default="mixed-purity",
        help="recipe choice for four-vertex-6",
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="re-derive a certificate's evidence")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--mode", choices=["closed-form", "oracle", "both"], default="closed-form")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("atlas", help="four-vertex manifest and certificates")
    p.add_argument("--out", help="directory for manifest.json and certificates")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("bounds", help="closed-form threshold tables (CSV)")
    p.add_argument("--family", required=True,
                   choices=["planar-symmetric", "n-cycle", "n-specker", "pair-angle"])
    p.add_argument("--n", help="N or range lo..hi")
    p.add_argument("--angle", action="append",
                   help="angle with deg/rad suffix (repeatable, pair-angle only)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

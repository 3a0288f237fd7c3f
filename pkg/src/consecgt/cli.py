"""Command-line interface: ``consecgt <command> ...``.

Exit status is 0 on success, 1 when decoding or verification fails and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Sequence

from .bench import BenchConfig, count_table, emit_csv, parse_int, run_bench, split_list
from .decoders import decode
from .encoder import ConsecutiveRange, OutcomeVector, encode_scheme
from .errors import DecodeError, DomainError, RefusalError
from .oracle import verify_identifiability
from .schemes import SCHEME_ORDER, SchemeKind, SchemeSpec, parse_kind

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    try:
        return parse_int(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    return [_int(v) for v in split_list(text)]


def _add_scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", required=True, help="one of: " + ", ".join(k.value for k in SchemeKind))
    p.add_argument("--n", type=_int, required=True, help="number of items (2^k accepted)")
    p.add_argument("--d", type=_int, default=None, help="bound on the number of positives")


def _spec(args: argparse.Namespace) -> SchemeSpec:
    kind = parse_kind(args.scheme)
    return SchemeSpec(kind, args.n, None if kind is SchemeKind.SINGLE else args.d)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="consecgt",
        description="Non-adaptive group testing with consecutive positives.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-matrix", help="write the scheme's measurement matrix (small n)")
    _add_scheme_args(p)
    p.add_argument("--out", type=Path, help="output file (default stdout)")

    p = sub.add_parser("encode", help="print the outcome for a positive run")
    _add_scheme_args(p)
    p.add_argument("--start", type=_int, default=0)
    p.add_argument("--len", dest="length", type=_int, required=True)
    p.add_argument("--annotate", action="store_true", help="prefix the segment header")

    p = sub.add_parser("decode", help="decode an outcome string")
    _add_scheme_args(p)
    p.add_argument("--outcome", required=True, help="bits, optionally 'header bits'")

    p = sub.add_parser("verify", help="exhaustive oracle check of a scheme")
    _add_scheme_args(p)

    p = sub.add_parser("bench", help="time decoding over a grid, CSV output")
    p.add_argument("--config", type=Path, help="key=value config file")
    p.add_argument("--csv", type=Path, help="write CSV here (default stdout)")
    p.add_argument("--schemes", type=split_list)
    p.add_argument("--n-list", type=_int_list)
    p.add_argument("--d-list", type=_int_list)
    p.add_argument("--trials", type=_int)
    p.add_argument("--seed", type=_int)

    p = sub.add_parser("table", help="print closed-form test counts")
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--d-list", type=_int_list, required=True)
    p.add_argument("--schemes", type=split_list)
    return parser


def _write(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _bench_config(args: argparse.Namespace) -> BenchConfig:
    if args.config is not None:
        try:
            base = BenchConfig.from_text(args.config.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    else:
        base = BenchConfig()
    overrides = {
        "schemes": args.schemes,
        "n_values": args.n_list,
        "d_values": args.d_list,
        "trials": args.trials,
        "seed": args.seed,
    }
    return dataclasses.replace(base, **{k: v for k, v in overrides.items() if v is not None})


def run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "gen-matrix":
        _write(_spec(args).matrix().to_text(), args.out)
    elif cmd == "encode":
        spec = _spec(args)
        y = encode_scheme(spec, ConsecutiveRange(args.start, args.length))
        print(y.to_text(annotate=args.annotate))
    elif cmd == "decode":
        spec = _spec(args)
        y = OutcomeVector.from_text(args.outcome)
        print(decode(spec, y))
    elif cmd == "verify":
        report = verify_identifiability(_spec(args))
        print(report.format())
        return EXIT_OK if report.ok else EXIT_FAIL
    elif cmd == "bench":
        records = run_bench(_bench_config(args))
        _write(emit_csv(records), args.csv)
    elif cmd == "table":
        schemes = [parse_kind(s) for s in args.schemes] if args.schemes else SCHEME_ORDER
        sys.stdout.write(count_table(args.n_list, args.d_list, schemes))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except DecodeError as exc:
        print(f"decode error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DomainError, RefusalError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

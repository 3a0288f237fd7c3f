"""Test-count and decode-time benchmark over a grid of (scheme, n, d).

Timings cover the full decode of one outcome vector, both phases together.
Encoding and sampling happen before the clock starts.
"""
from __future__ import annotations

import io
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .decoders import decode
from .encoder import ConsecutiveRange, encode_scheme
from .errors import DecodeError, DomainError
from .schemes import SCHEME_ORDER, SchemeKind, SchemeSpec, parse_kind, test_count

DEFAULT_N_VALUES = (2**16, 2**20, 2**24, 2**28, 2**32)
DEFAULT_D_VALUES = (5, 50, 100)
WARMUP = 3

CSV_HEADER = "scheme,n,d,tests,mean_decode_ns,min_decode_ns,max_decode_ns"


@dataclass
class BenchConfig:
    schemes: tuple[SchemeKind, ...] = SCHEME_ORDER
    n_values: tuple[int, ...] = DEFAULT_N_VALUES
    d_values: tuple[int, ...] = DEFAULT_D_VALUES
    trials: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        self.schemes = tuple(parse_kind(s) for s in self.schemes)
        self.n_values = tuple(int(n) for n in self.n_values)
        self.d_values = tuple(int(d) for d in self.d_values)
        if self.trials < 1:
            raise DomainError(f"trials must be at least 1, got {self.trials}")
        for kind in self.schemes:
            for n in self.n_values:
                for d in self.d_values:
                    cell_spec(kind, n, d)

    @classmethod
    def from_text(cls, text: str) -> BenchConfig:
        """Parse flat ``key=value`` lines; lists are comma separated."""
        values: dict = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                raise DomainError(f"config line {lineno}: expected key=value")
            if key == "schemes":
                values[key] = tuple(v for v in split_list(value))
            elif key in ("n_values", "d_values"):
                values[key] = tuple(parse_int(v) for v in split_list(value))
            elif key in ("trials", "seed"):
                values[key] = parse_int(value)
            else:
                raise DomainError(f"config line {lineno}: unknown key {key!r}")
        return cls(**values)


def split_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def parse_int(text: str) -> int:
    """Integers, also written as ``2^k`` or ``2**k``."""
    text = text.strip().replace("**", "^")
    try:
        if "^" in text:
            base, exp = text.split("^")
            return int(base) ** int(exp)
        return int(text, 0)
    except ValueError as exc:
        raise DomainError(f"not an integer: {text!r}") from exc


def cell_spec(kind: SchemeKind, n: int, d: int) -> SchemeSpec:
    return SchemeSpec(kind, n, None if kind is SchemeKind.SINGLE else d)


@dataclass
class BenchRecord:
    scheme: SchemeKind
    n: int
    d: int
    tests: int
    mean_decode_ns: float
    min_decode_ns: int
    max_decode_ns: int
    # kept for inspection, not written to CSV
    samples: list[ConsecutiveRange] = field(default_factory=list, repr=False)

    def csv_row(self) -> str:
        return (
            f"{self.scheme},{self.n},{self.d},{self.tests},"
            f"{self.mean_decode_ns:.1f},{self.min_decode_ns},{self.max_decode_ns}"
        )


def sample_positives(spec: SchemeSpec, rng: random.Random) -> ConsecutiveRange:
    """Uniform non-empty admissible run: length first (up-to-d), then start."""
    if spec.kind is SchemeKind.SINGLE:
        length = 1
    elif spec.kind.exact:
        length = spec.d
    else:
        length = rng.randint(1, min(spec.d, spec.n))
    return ConsecutiveRange(rng.randint(1, spec.n - length + 1), length)


def run_cell(spec: SchemeSpec, trials: int, rng: random.Random, d_label: int) -> BenchRecord:
    samples = [sample_positives(spec, rng) for _ in range(trials)]
    outcomes = [encode_scheme(spec, p) for p in samples]
    for _ in range(WARMUP):
        decode(spec, outcomes[0])
    clock = time.perf_counter_ns
    timings = []
    for positives, y in zip(samples, outcomes):
        t0 = clock()
        got = decode(spec, y)
        t1 = clock()
        if got != positives:
            raise DecodeError(f"{spec}: decoded {got}, expected {positives}")
        timings.append(t1 - t0)
    return BenchRecord(
        scheme=spec.kind,
        n=spec.n,
        d=d_label,
        tests=test_count(spec.kind, spec.n, spec.d),
        mean_decode_ns=sum(timings) / len(timings),
        min_decode_ns=min(timings),
        max_decode_ns=max(timings),
        samples=samples,
    )


def run_bench(config: BenchConfig) -> list[BenchRecord]:
    records = []
    for kind in config.schemes:
        for n in config.n_values:
            for d in config.d_values:
                spec = cell_spec(kind, n, d)
                # per-cell seeding keeps each cell reproducible on its own
                rng = random.Random(f"{config.seed}:{kind.value}:{n}:{d}")
                records.append(run_cell(spec, config.trials, rng, d))
    return records


def _sort_key(record: BenchRecord) -> tuple[int, int, int]:
    return SCHEME_ORDER.index(record.scheme), record.n, record.d


def emit_csv(records: Iterable[BenchRecord], stream: TextIO | None = None) -> str:
    lines = [CSV_HEADER] + [r.csv_row() for r in sorted(records, key=_sort_key)]
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def count_table(
    n_values: Iterable[int],
    d_values: Iterable[int],
    schemes: Iterable[SchemeKind | str] = SCHEME_ORDER,
) -> str:
    """Closed-form test counts, one line per (scheme, n, d)."""
    out = io.StringIO()
    out.write(f"{'scheme':<16} {'n':>12} {'d':>5} {'tests':>6}\n")
    for kind in map(parse_kind, schemes):
        for n in n_values:
            for d in d_values:
                try:
                    t = test_count(kind, n, None if kind is SchemeKind.SINGLE else d)
                except DomainError:
                    continue
                out.write(f"{kind.value:<16} {n:>12} {d:>5} {t:>6}\n")
    return out.getvalue()

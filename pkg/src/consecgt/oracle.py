"""Brute-force reference decoding by enumeration of every admissible run.

The enumeration ORs explicit columns one at a time and never calls the fast
decoders or the range-union shortcut of the encoder, so it can adjudicate
both.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .codes import bits_to_int
from .decoders import Bits, decode
from .encoder import ConsecutiveRange, OutcomeVector, encode_scheme
from .errors import DecodeError, DomainError, RefusalError
from .matrices import MeasurementMatrix
from .schemes import SchemeKind, SchemeSpec, scheme_matrix

ENUMERATION_LIMIT = 1 << 16
EXHAUSTIVE_LIMIT = 1 << 12


@dataclass(frozen=True)
class Cardinality:
    """Which run lengths are admissible: ``<= bound`` or ``== bound``."""

    bound: int
    exact: bool = False
    allow_empty: bool = True

    @classmethod
    def at_most(cls, d: int) -> Cardinality:
        return cls(d, exact=False, allow_empty=True)

    @classmethod
    def exactly(cls, d: int, allow_empty: bool = False) -> Cardinality:
        return cls(d, exact=True, allow_empty=allow_empty)

    @classmethod
    def parse(cls, text: str) -> Cardinality:
        """``"<=3"`` or ``"=3"``."""
        text = text.replace(" ", "").replace("≤", "<=")
        if text.startswith("<="):
            return cls.at_most(int(text[2:]))
        if text.startswith("="):
            return cls.exactly(int(text[1:]))
        raise DomainError(f"cardinality must look like '<=d' or '=d', got {text!r}")

    def lengths(self, n: int) -> list[int]:
        if self.exact:
            out = [self.bound] if self.bound <= n else []
        else:
            out = list(range(1, min(self.bound, n) + 1))
        return ([0] if self.allow_empty else []) + out

    def __str__(self) -> str:
        return f"={self.bound}" if self.exact else f"<={self.bound}"


def cardinality_for(spec: SchemeSpec) -> Cardinality:
    if spec.kind is SchemeKind.SINGLE:
        return Cardinality.exactly(1)
    if spec.kind.exact:
        return Cardinality.exactly(spec.d, allow_empty=True)
    return Cardinality.at_most(spec.d)


def valid_ranges(n: int, cardinality: Cardinality) -> Iterator[ConsecutiveRange]:
    for length in cardinality.lengths(n):
        if length == 0:
            yield ConsecutiveRange.empty()
            continue
        for start in range(1, n - length + 2):
            yield ConsecutiveRange(start, length)


@dataclass(frozen=True)
class CandidateSet:
    outcome: tuple[int, ...]
    candidates: tuple[ConsecutiveRange, ...]

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    @property
    def unique(self) -> ConsecutiveRange | None:
        return self.candidates[0] if len(self.candidates) == 1 else None


def _column_masks(matrix: MeasurementMatrix) -> list[int]:
    return [matrix.column_mask(j) for j in range(1, matrix.cols + 1)]


def _outcome_table(
    masks: Sequence[int], cardinality: Cardinality
) -> dict[int, list[ConsecutiveRange]]:
    """Map every reachable outcome mask to the runs that produce it."""
    n = len(masks)
    lengths = set(cardinality.lengths(n))
    longest = max(lengths, default=0)
    table: dict[int, list[ConsecutiveRange]] = defaultdict(list)
    if 0 in lengths:
        table[0].append(ConsecutiveRange.empty())
    for start in range(1, n + 1):
        acc = 0
        for length in range(1, min(longest, n - start + 1) + 1):
            acc |= masks[start + length - 2]
            if length in lengths:
                table[acc].append(ConsecutiveRange(start, length))
    return table


def brute_force_decode(
    matrix: MeasurementMatrix,
    y: Bits,
    cardinality: Cardinality | str,
    limit: int = ENUMERATION_LIMIT,
) -> CandidateSet:
    """Every admissible run whose outcome under ``matrix`` is exactly ``y``."""
    if isinstance(cardinality, str):
        cardinality = Cardinality.parse(cardinality)
    if matrix.cols > limit:
        raise RefusalError(f"refusing to enumerate {matrix.cols} columns (limit {limit})")
    bits = y.bits if isinstance(y, OutcomeVector) else tuple(y)
    if len(bits) != matrix.rows:
        raise DomainError(f"outcome has {len(bits)} bits, matrix has {matrix.rows} rows")
    target = bits_to_int(bits)
    masks = _column_masks(matrix)
    n = len(masks)
    lengths = set(cardinality.lengths(n))
    longest = max(lengths, default=0)
    found = []
    if 0 in lengths and target == 0:
        found.append(ConsecutiveRange.empty())
    for start in range(1, n + 1):
        acc = 0
        for length in range(1, min(longest, n - start + 1) + 1):
            acc |= masks[start + length - 2]
            if acc & ~target:
                break
            if length in lengths and acc == target:
                found.append(ConsecutiveRange(start, length))
    found.sort(key=lambda r: (r.length, r.start))
    return CandidateSet(bits, tuple(found))


@dataclass(frozen=True, order=True)
class Violation:
    positives: str
    problem: str
    detail: str = ""


@dataclass
class IdentifiabilityReport:
    spec: SchemeSpec
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        lines = [
            f"scheme: {self.spec}",
            f"tests: {self.spec.tests}",
            f"positive sets checked: {self.checked}",
            f"violations: {len(self.violations)}",
        ]
        for v in sorted(self.violations):
            lines.append(f"  {v.positives}: {v.problem}" + (f" ({v.detail})" if v.detail else ""))
        return "\n".join(lines)


def verify_identifiability(
    spec: SchemeSpec, limit: int = EXHAUSTIVE_LIMIT
) -> IdentifiabilityReport:
    """Check every admissible run is uniquely identified and decoded correctly."""
    if spec.n > limit:
        raise RefusalError(f"exhaustive verification limited to n <= {limit}, got {spec.n}")
    matrix = scheme_matrix(spec)
    table = _outcome_table(_column_masks(matrix), cardinality_for(spec))
    report = IdentifiabilityReport(spec)
    for positives in valid_ranges(spec.n, cardinality_for(spec)):
        report.checked += 1
        label = str(positives)
        y = encode_scheme(spec, positives)
        candidates = table.get(bits_to_int(y.bits), [])
        if positives not in candidates:
            report.violations.append(Violation(label, "encoder disagrees with column OR"))
        if len(candidates) != 1:
            shown = " ".join(str(c) for c in candidates)
            report.violations.append(Violation(label, "not identifiable", shown))
        try:
            decoded = decode(spec, y)
        except DecodeError as exc:
            report.violations.append(Violation(label, "decoder rejected outcome", str(exc)))
            continue
        if decoded != positives:
            report.violations.append(Violation(label, "wrong decode", str(decoded)))
    return report


def adjudicate_all_outcomes(spec: SchemeSpec, max_tests: int = 14) -> list[str]:
    """Compare the fast decoder with the oracle on every possible outcome vector.

    A decoder agrees when it returns the unique candidate, or raises
    DecodeError when no admissible run produces the outcome.
    """
    matrix = scheme_matrix(spec)
    t = matrix.rows
    if t > max_tests:
        raise RefusalError(f"{spec} has {t} tests; at most {max_tests} enumerable")
    table = _outcome_table(_column_masks(matrix), cardinality_for(spec))
    problems = []
    for bits in itertools.product((0, 1), repeat=t):
        candidates = table.get(bits_to_int(bits), [])
        try:
            got = decode(spec, bits)
        except DecodeError:
            got = None
        if len(candidates) > 1:
            problems.append(f"{''.join(map(str, bits))}: ambiguous {candidates}")
        elif (candidates[0] if candidates else None) != got:
            want = candidates[0] if candidates else "no candidate"
            problems.append(f"{''.join(map(str, bits))}: decoder {got}, oracle {want}")
    return problems

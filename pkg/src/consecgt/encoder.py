"""Noiseless OR-channel testing of a consecutive positive run."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .codes import int_to_bits
from .errors import DomainError
from .matrices import MeasurementMatrix, StackedMatrix
from .schemes import SchemeSpec, scheme_matrix


@dataclass(frozen=True)
class ConsecutiveRange:
    """Positive items ``start .. start + length - 1`` (1-based).

    Every empty range compares equal and is stored with ``start = 0``.
    """

    start: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DomainError(f"negative run length {self.length}")
        if self.length == 0:
            object.__setattr__(self, "start", 0)
        elif self.start < 1:
            raise DomainError(f"run must start at item 1 or later, got {self.start}")

    @classmethod
    def empty(cls) -> ConsecutiveRange:
        return cls(0, 0)

    @classmethod
    def span(cls, first: int, last: int) -> ConsecutiveRange:
        return cls(first, last - first + 1)

    @property
    def is_empty(self) -> bool:
        return self.length == 0

    @property
    def last(self) -> int:
        return self.start + self.length - 1

    def items(self) -> range:
        return range(self.start, self.start + self.length)

    def check_within(self, n: int) -> None:
        if self.length and self.last > n:
            raise DomainError(f"run {self} exceeds the {n} items")

    def __str__(self) -> str:
        return "empty" if self.is_empty else f"{self.start},{self.length}"

    @classmethod
    def parse(cls, text: str) -> ConsecutiveRange:
        text = text.strip()
        if text == "empty":
            return cls.empty()
        try:
            start, length = (int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise DomainError(f"expected 'start,len' or 'empty', got {text!r}") from exc
        return cls(start, length)


class Segment(NamedTuple):
    label: str
    offset: int
    length: int


@dataclass(frozen=True)
class OutcomeVector:
    bits: tuple[int, ...]
    segments: tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(self.bits))
        segs = tuple(Segment(*s) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        pos = 0
        for seg in segs:
            if seg.offset != pos or seg.length < 0:
                raise DomainError(f"segments do not tile the outcome: {segs}")
            pos += seg.length
        if segs and pos != len(self.bits):
            raise DomainError(f"segments cover {pos} of {len(self.bits)} bits")

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def segment(self, label: str) -> tuple[int, ...]:
        for seg in self.segments:
            if seg.label == label:
                return self.bits[seg.offset : seg.offset + seg.length]
        raise KeyError(label)

    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.segments)

    def header(self) -> str:
        return ",".join(f"{s.label}:{s.offset}:{s.length}" for s in self.segments)

    def to_text(self, annotate: bool = False) -> str:
        if annotate and self.segments:
            return f"{self.header()} {self}"
        return str(self)

    @classmethod
    def from_text(cls, text: str) -> OutcomeVector:
        """Parse ``bits`` or ``"label:offset:length,... bits"``."""
        parts = text.split()
        if len(parts) == 1:
            header, body = "", parts[0]
        elif len(parts) == 2:
            header, body = parts
        else:
            raise DomainError(f"cannot parse outcome {text!r}")
        if set(body) - {"0", "1"}:
            raise DomainError(f"outcome bits must be 0/1, got {body!r}")
        segs = []
        if header:
            for field in header.split(","):
                try:
                    label, offset, length = field.split(":")
                    segs.append(Segment(label, int(offset), int(length)))
                except ValueError as exc:
                    raise DomainError(f"bad segment annotation {field!r}") from exc
        return cls(tuple(int(ch) for ch in body), tuple(segs))


def _segments_of(matrix: MeasurementMatrix) -> tuple[Segment, ...]:
    if isinstance(matrix, StackedMatrix) and matrix.labels is not None:
        return _labelled_segments(matrix)
    return ()


@lru_cache(maxsize=1024)
def _labelled_segments(matrix: StackedMatrix) -> tuple[Segment, ...]:
    return tuple(Segment(*s) for s in matrix.segments())


def outcome_mask(matrix: MeasurementMatrix, positives: ConsecutiveRange) -> int:
    """The outcome as an int bitmask, row 1 most significant."""
    positives.check_within(matrix.cols)
    if positives.is_empty:
        return 0
    return matrix.union_mask(positives.start, positives.last)


def encode(matrix: MeasurementMatrix, positives: ConsecutiveRange) -> OutcomeVector:
    """Outcome of testing the run with ``matrix``; O(rows * length), lazily."""
    mask = outcome_mask(matrix, positives)
    return OutcomeVector(int_to_bits(mask, matrix.rows), _segments_of(matrix))


def encode_scheme(spec: SchemeSpec, positives: ConsecutiveRange) -> OutcomeVector:
    if not spec.allows(positives.length):
        raise DomainError(f"{spec} does not admit a run of length {positives.length}")
    return encode(scheme_matrix(spec), positives)


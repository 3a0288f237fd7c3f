"""Decoders for every design.

All decoders run in time linear in the number of tests and reject outcomes
that no admissible positive run could have produced, raising
:class:`DecodeError` rather than guessing.

Pass a :class:`StepCounter` to any decoder to count the outcome bits it
reads; this is the instrumented cost used to check the O(t) bound.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Union

from .codes import bits_to_int, ceil_log2, gray_bits_to_int, gray_encode
from .encoder import ConsecutiveRange, OutcomeVector, Segment
from .errors import DecodeError, DomainError
from .schemes import SchemeKind, SchemeSpec, scheme_matrix

Bits = Union[OutcomeVector, Sequence[int]]

# Every decoder reads at most STEP_BOUND * t outcome bits for t tests.
STEP_BOUND = 2


class StepCounter:
    def __init__(self) -> None:
        self.steps = 0

    def add(self, k: int) -> None:
        self.steps += k

    def reset(self) -> None:
        self.steps = 0


def _bits(y: Bits) -> tuple[int, ...]:
    return y.bits if isinstance(y, OutcomeVector) else tuple(y)


def _count(counter: StepCounter | None, k: int) -> None:
    if counter is not None:
        counter.steps += k


@lru_cache(maxsize=1024)
def _layout(spec: SchemeSpec) -> tuple[tuple[Segment, ...], int]:
    matrix = scheme_matrix(spec)
    return tuple(Segment(*s) for s in matrix.segments()), matrix.rows


def split_outcome(y: Bits, spec: SchemeSpec) -> dict[str, tuple[int, ...]]:
    """Cut an outcome into the labelled phase segments of ``spec``."""
    layout, rows = _layout(spec)
    bits = _bits(y)
    if len(bits) != rows:
        raise DomainError(f"{spec} expects {rows} outcome bits, got {len(bits)}")
    if isinstance(y, OutcomeVector) and y.segments and y.segments != layout:
        raise DomainError(f"outcome segments {y.header()!r} do not match {spec}")
    return {s.label: bits[s.offset : s.offset + s.length] for s in layout}


def decode_two_consecutive_bin(
    y: Bits, n: int, counter: StepCounter | None = None
) -> tuple[int, ...]:
    """Up to two consecutive positives from the binary-plus-complement design.

    A position where both halves read 1 can only come from two columns; the
    left-most such position is the bit that flips when counting from the
    first positive to the second, so clearing it recovers the first one.
    """
    if n < 2:
        raise DomainError(f"binary pair design needs n >= 2, got {n}")
    bits = _bits(y)
    w = ceil_log2(n)
    if len(bits) != 2 * w:
        raise DomainError(f"expected {2 * w} outcome bits for n={n}, got {len(bits)}")

    value = 0
    i0 = -1
    neither = 0
    broken = False
    for i in range(w):
        left, right = bits[i], bits[w + i]
        value = (value << 1) | left
        if left and right:
            if i0 < 0:
                i0 = i
        elif i0 >= 0:
            # every bit after the flip point is set in both halves
            broken = True
        elif not (left or right):
            neither += 1
    _count(counter, 2 * w)

    if neither == w:
        return ()
    if neither or broken:
        raise DecodeError(f"outcome {''.join(map(str, bits))} is not a union of consecutive columns")
    if i0 >= 0:
        first = (value & ~(1 << (w - 1 - i0))) + 1
        if first + 1 > n:
            raise DecodeError(f"decoded pair {first},{first + 1} exceeds n={n}")
        return (first, first + 1)
    if value + 1 > n:
        raise DecodeError(f"decoded item {value + 1} exceeds n={n}")
    return (value + 1,)


def decode_two_consecutive_gray(
    s: Bits, l: Bits, kappa: int, counter: StepCounter | None = None
) -> tuple[int, ...]:
    """Up to two consecutive super positives from the Gray rows plus the mod-3 rows.

    With ``kappa == 1`` there are no Gray rows and ``s`` must be empty.
    """
    if kappa < 1:
        raise DomainError(f"kappa must be at least 1, got {kappa}")
    s, l = _bits(s), _bits(l)
    width = ceil_log2(kappa)
    if len(s) != width or len(l) != 3:
        raise DomainError(f"expected {width} Gray bits and 3 mod-3 bits for kappa={kappa}")

    rank = gray_bits_to_int(s)
    _count(counter, width + 3)
    if not (l[0] or l[1] or l[2]):
        if rank:
            raise DecodeError("Gray rows are set but no mod-3 row is")
        return ()
    alpha = rank + 1
    if alpha > kappa:
        raise DecodeError(f"Gray rows decode to super item {alpha} > {kappa}")
    if not l[(alpha - 1) % 3]:
        raise DecodeError(f"super item {alpha} decoded but its mod-3 row is clear")
    prev, nxt = l[(alpha - 2) % 3], l[alpha % 3]
    g = gray_encode(rank)
    if prev and nxt:
        raise DecodeError("both neighbours of the decoded super item are flagged")
    if prev:
        # the union of two Gray neighbours equals the heavier one
        if alpha == 1 or gray_encode(rank - 1) | g != g:
            raise DecodeError(f"super item {alpha - 1} cannot be positive here")
        return (alpha - 1, alpha)
    if nxt:
        if alpha == kappa or gray_encode(rank + 1) | g != g:
            raise DecodeError(f"super item {alpha + 1} cannot be positive here")
        return (alpha, alpha + 1)
    return (alpha,)


def decode_single(y: Bits, n: int, counter: StepCounter | None = None) -> int:
    bits = _bits(y)
    w = ceil_log2(n)
    if n < 2 or len(bits) != w:
        raise DomainError(f"expected {w} outcome bits for n={n}, got {len(bits)}")
    _count(counter, w)
    item = bits_to_int(bits) + 1
    if item > n:
        raise DecodeError(f"decoded item {item} exceeds n={n}")
    return item


def _refine(
    y2: tuple[int, ...],
    first: int,
    last: int,
    modulus: int,
    counter: StepCounter | None,
) -> ConsecutiveRange:
    """Keep the potential positives ``first..last`` whose spaced test is positive."""
    start = stop = 0
    for j in range(first, last + 1):
        if y2[(j - 1) % modulus]:
            if not start:
                start = j
            elif j != stop + 1:
                raise DecodeError(f"surviving items {start}..{stop} and {j} are not consecutive")
            stop = j
    ones = sum(y2)
    _count(counter, max(0, last - first + 1) + len(y2))
    found = stop - start + 1 if start else 0
    if ones != found:
        raise DecodeError("positive tests outside the potential positives")
    return ConsecutiveRange(start, found) if start else ConsecutiveRange.empty()


def _check_run(
    result: ConsecutiveRange, supers: tuple[int, ...], block: int, d: int
) -> None:
    if result.is_empty:
        raise DecodeError(f"super items {supers} are positive but no item is")
    if result.length > d:
        raise DecodeError(f"decoded run {result} is longer than d={d}")
    lo = (result.start - 1) // block + 1
    hi = (result.last - 1) // block + 1
    if (lo, hi) != (supers[0], supers[-1]):
        raise DecodeError(f"decoded run {result} does not cover super items {supers}")


def decode_up_to_d(
    y: Bits, n: int, d: int, counter: StepCounter | None = None
) -> ConsecutiveRange:
    """Up to d consecutive positives, binary-plus-complement phase 1."""
    spec = SchemeSpec(SchemeKind.UP_TO_D_BINARY, n, d)
    seg = split_outcome(y, spec)
    y2 = seg["y2"]
    if spec.kappa == 1:
        return _refine(y2, 1, n, 2 * d, counter)
    supers = decode_two_consecutive_bin(seg["y1"], spec.kappa, counter)
    if not supers:
        return _refine(y2, 1, 0, 2 * d, counter)
    first = (supers[0] - 1) * d + 1
    last = min(supers[-1] * d, n)
    result = _refine(y2, first, last, 2 * d, counter)
    _check_run(result, supers, d, d)
    return result


def decode_up_to_d_gray(
    y: Bits, n: int, d: int, counter: StepCounter | None = None
) -> ConsecutiveRange:
    """Up to d consecutive positives with Gray and mod-3 rows over blocks of d - 1."""
    spec = SchemeSpec(SchemeKind.UP_TO_D_GRAY, n, d)
    seg = split_outcome(y, spec)
    block = d - 1
    supers = decode_two_consecutive_gray(seg.get("s", ()), seg["l"], spec.kappa, counter)
    if not supers:
        return _refine(seg["v"], 1, 0, 2 * block, counter)
    first = (supers[0] - 1) * block + 1
    last = min(supers[-1] * block, n)
    result = _refine(seg["v"], first, last, 2 * block, counter)
    _check_run(result, supers, block, d)
    return result


def decode_block(
    y: Bits, d: int, side: str, counter: StepCounter | None = None
) -> int:
    """Locate d consecutive positives among 2d items from d half-block tests.

    ``side="left"`` (identity over items 1..d): the outcome is a suffix of
    ones and its left-most 1 is the starting positive; all-zero means the
    run starts at item d + 1. Returns the starting item.

    ``side="right"`` (identity over items d+1..2d): the outcome is a prefix
    of ones and its right-most 1 at position i puts the terminal positive at
    item d + i; all-zero means the run ends at item d. Returns the terminal
    item.
    """
    bits = _bits(y)
    if d < 1 or len(bits) != d:
        raise DomainError(f"expected {d} outcome bits, got {len(bits)}")
    _count(counter, d)
    if side == "left":
        k = 0
        for i, b in enumerate(bits, 1):
            if b:
                if not k:
                    k = i
            elif k:
                raise DecodeError(f"left block outcome {''.join(map(str, bits))} is not a suffix of ones")
        return k if k else d + 1
    if side == "right":
        e = 0
        for i, b in enumerate(bits, 1):
            if b:
                if e != i - 1:
                    raise DecodeError(f"right block outcome {''.join(map(str, bits))} is not a prefix of ones")
                e = i
        return d + e
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def decode_exact_d(
    y: Bits, n: int, d: int, variant: str = "binary", counter: StepCounter | None = None
) -> ConsecutiveRange:
    """Exactly d consecutive positives (or none); ``variant`` picks the phase-1 design."""
    if variant not in ("gray", "binary"):
        raise DomainError(f"variant must be 'gray' or 'binary', got {variant!r}")
    kind = SchemeKind.EXACT_D_GRAY if variant == "gray" else SchemeKind.EXACT_D_BINARY
    spec = SchemeSpec(kind, n, d)
    seg = split_outcome(y, spec)
    y2 = seg["y2"]
    kappa = spec.kappa

    if variant == "gray":
        supers = decode_two_consecutive_gray(seg.get("s", ()), seg["l"], kappa, counter)
    elif kappa >= 2:
        supers = decode_two_consecutive_bin(seg["y1"], kappa, counter)
    else:
        supers = (1,) if any(y2) else ()
        _count(counter, d)

    if not supers:
        _count(counter, d)
        if any(y2):
            raise DecodeError("phase-2 tests are positive but no super item is")
        return ConsecutiveRange.empty()

    alpha = supers[0]
    base = (alpha - 1) * d
    if len(supers) == 1:
        if alpha * d > n:
            raise DecodeError(f"super item {alpha} is short and cannot hold {d} positives")
        # odd super items sit on the d tested residues, even ones on the untested
        expected = alpha % 2
        _count(counter, d)
        if any(b != expected for b in y2):
            raise DecodeError(f"phase-2 outcome contradicts super item {alpha}")
        return ConsecutiveRange(base + 1, d)

    if alpha % 2:
        start = base + decode_block(y2, d, "left", counter)
    else:
        start = base + decode_block(y2, d, "right", counter) - d + 1
    if not base + 2 <= start <= alpha * d or start + d - 1 > n:
        raise DecodeError(f"run starting at {start} does not straddle super items {supers}")
    return ConsecutiveRange(start, d)


def decode(
    spec: SchemeSpec, y: Bits, counter: StepCounter | None = None
) -> ConsecutiveRange:
    """Dispatch to the decoder of ``spec``."""
    kind = spec.kind
    if kind is SchemeKind.SINGLE:
        seg = split_outcome(y, spec)
        return ConsecutiveRange(decode_single(seg["y"], spec.n, counter), 1)
    if kind is SchemeKind.UP_TO_D_BINARY:
        return decode_up_to_d(y, spec.n, spec.d, counter)
    if kind is SchemeKind.UP_TO_D_GRAY:
        return decode_up_to_d_gray(y, spec.n, spec.d, counter)
    variant = "gray" if kind is SchemeKind.EXACT_D_GRAY else "binary"
    return decode_exact_d(y, spec.n, spec.d, variant, counter)

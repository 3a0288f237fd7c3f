"""Fixed-width codewords: binary and reflected Gray representations.

Bits are always MSB-first, so ``"011"`` is the integer 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError


def ceil_log2(x: int) -> int:
    """Smallest k with 2**k >= x, for x >= 1."""
    if x < 1:
        raise DomainError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


def gray_encode(v: int) -> int:
    return v ^ (v >> 1)


def gray_decode(g: int) -> int:
    v = 0
    while g:
        v ^= g
        g >>= 1
    return v


def bits_to_int(bits: Iterable[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def gray_bits_to_int(bits: Iterable[int]) -> int:
    """Rank of a Gray codeword given as MSB-first bits; one pass over the bits."""
    value = 0
    b = 0
    for g in bits:
        b ^= g
        value = (value << 1) | b
    return value


def int_to_bits(v: int, width: int) -> tuple[int, ...]:
    return tuple((v >> (width - 1 - i)) & 1 for i in range(width))


@dataclass(frozen=True)
class Codeword:
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(self.bits)
        object.__setattr__(self, "bits", bits)
        if not bits:
            raise DomainError("codeword width must be at least 1")
        if any(b not in (0, 1) for b in bits):
            raise DomainError(f"codeword bits must be 0/1, got {bits!r}")

    @property
    def width(self) -> int:
        return len(self.bits)

    @classmethod
    def from_string(cls, text: str) -> Codeword:
        if not text or set(text) - {"0", "1"}:
            raise DomainError(f"not a binary string: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __iter__(self):
        return iter(self.bits)


def _check_range(v: int, width: int) -> None:
    if width < 1:
        raise DomainError(f"width must be at least 1, got {width}")
    if not 0 <= v < (1 << width):
        raise DomainError(f"{v} does not fit in {width} bits")


def int_to_binary(v: int, width: int) -> Codeword:
    _check_range(v, width)
    return Codeword(int_to_bits(v, width))


def vec2int(c: Codeword | Sequence[int]) -> int:
    """Decimal value of an MSB-first codeword, plus one (1-based item index)."""
    return bits_to_int(c) + 1


def complement(c: Codeword) -> Codeword:
    return Codeword(tuple(1 - b for b in c.bits))


def int_to_gray(v: int, width: int) -> Codeword:
    """Binary-reflected Gray codeword of rank ``v``."""
    _check_range(v, width)
    return Codeword(int_to_bits(gray_encode(v), width))


def gray_to_int(c: Codeword | Sequence[int]) -> int:
    return gray_bits_to_int(c)

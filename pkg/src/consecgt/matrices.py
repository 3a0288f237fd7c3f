"""Strongly explicit measurement matrices.

Every matrix is a small immutable descriptor. Columns are generated on demand
in O(rows) time, so a design over 2**32 items costs nothing to build.
Internally a column is an int bitmask where row 1 is the most significant of
``rows`` bits; :meth:`MeasurementMatrix.column` returns the bit tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Sequence

from .codes import ceil_log2, gray_encode, int_to_bits
from .errors import DomainError

MATERIALIZE_LIMIT = 1 << 24


class MeasurementMatrix:
    kind: ClassVar[str]

    @property
    def rows(self) -> int:
        raise NotImplementedError

    @property
    def cols(self) -> int:
        raise NotImplementedError

    def _mask(self, j: int) -> int:
        raise NotImplementedError

    def _union(self, first: int, last: int) -> int:
        mask = 0
        for j in range(first, last + 1):
            mask |= self._mask(j)
        return mask

    def _check_col(self, j: int) -> None:
        if not 1 <= j <= self.cols:
            raise DomainError(f"column {j} outside 1..{self.cols}")

    def column_mask(self, j: int) -> int:
        self._check_col(j)
        return self._mask(j)

    def column(self, j: int) -> tuple[int, ...]:
        return int_to_bits(self.column_mask(j), self.rows)

    def union_mask(self, first: int, last: int) -> int:
        """OR of columns ``first..last`` (inclusive), without materializing."""
        if first > last:
            return 0
        self._check_col(first)
        self._check_col(last)
        return self._union(first, last)

    def entry(self, i: int, j: int) -> int:
        if not 1 <= i <= self.rows:
            raise DomainError(f"row {i} outside 1..{self.rows}")
        return (self.column_mask(j) >> (self.rows - i)) & 1

    def materialize(self) -> list[tuple[int, ...]]:
        """Rows of the dense matrix. Only for small designs."""
        if self.rows * self.cols > MATERIALIZE_LIMIT:
            raise DomainError(
                f"refusing to materialize a {self.rows}x{self.cols} matrix"
            )
        t = self.rows
        masks = [self._mask(j) for j in range(1, self.cols + 1)]
        return [tuple((m >> (t - i)) & 1 for m in masks) for i in range(1, t + 1)]

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend("".join(map(str, row)) for row in self.materialize())
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"<{self.kind} {self.rows}x{self.cols}>"


@dataclass(frozen=True, repr=False)
class BinaryMatrix(MeasurementMatrix):
    """Column j is the ceil(log2 n)-bit binary representation of j - 1."""

    n: int
    kind: ClassVar[str] = "Binary"

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"binary matrix needs n >= 2, got {self.n}")

    @property
    def rows(self) -> int:
        return ceil_log2(self.n)

    @property
    def cols(self) -> int:
        return self.n

    def _mask(self, j: int) -> int:
        return j - 1


@dataclass(frozen=True, repr=False)
class BinaryPairMatrix(MeasurementMatrix):
    """Column j is bin(j - 1) stacked on its complement."""

    n: int
    kind: ClassVar[str] = "BinaryPair"

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"binary pair matrix needs n >= 2, got {self.n}")

    @property
    def width(self) -> int:
        return ceil_log2(self.n)

    @property
    def rows(self) -> int:
        return 2 * self.width

    @property
    def cols(self) -> int:
        return self.n

    def _mask(self, j: int) -> int:
        w = self.width
        v = j - 1
        return (v << w) | (~v & ((1 << w) - 1))


@dataclass(frozen=True, repr=False)
class GrayMatrix(MeasurementMatrix):
    """Column j is the reflected Gray codeword of rank j - 1."""

    kappa: int
    kind: ClassVar[str] = "Gray"

    def __post_init__(self) -> None:
        if self.kappa < 2:
            raise DomainError(f"Gray matrix needs kappa >= 2, got {self.kappa}")

    @property
    def rows(self) -> int:
        return ceil_log2(self.kappa)

    @property
    def cols(self) -> int:
        return self.kappa

    def _mask(self, j: int) -> int:
        return gray_encode(j - 1)


@dataclass(frozen=True, repr=False)
class ModSpacingMatrix(MeasurementMatrix):
    """Item j joins test ((j - 1) mod modulus) + 1, if that test is kept.

    ``tests`` keeps only the first tests of the full modulus-row design; the
    exact-count schemes use modulus 2d with d tests.
    """

    modulus: int
    n: int
    tests: int | None = None
    kind: ClassVar[str] = "ModSpacing"

    def __post_init__(self) -> None:
        if self.modulus < 1 or self.n < 1:
            raise DomainError("mod-spacing matrix needs modulus >= 1 and cols >= 1")
        if self.tests is not None and not 1 <= self.tests <= self.modulus:
            raise DomainError(f"tests must lie in 1..{self.modulus}")

    @property
    def rows(self) -> int:
        return self.modulus if self.tests is None else self.tests

    @property
    def cols(self) -> int:
        return self.n

    def _mask(self, j: int) -> int:
        r = (j - 1) % self.modulus + 1
        t = self.rows
        return 1 << (t - r) if r <= t else 0

    def _union(self, first: int, last: int) -> int:
        if last - first + 1 >= self.modulus:
            return (1 << self.rows) - 1
        return super()._union(first, last)


@dataclass(frozen=True, repr=False)
class HalfBlockMatrix(MeasurementMatrix):
    """d x 2d: identity over the left (or right) half of the items, zeros elsewhere."""

    d: int
    side: str = "left"
    kind: ClassVar[str] = "HalfBlock"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError(f"half-block matrix needs d >= 1, got {self.d}")
        if self.side not in ("left", "right"):
            raise DomainError(f"side must be 'left' or 'right', got {self.side!r}")

    @property
    def rows(self) -> int:
        return self.d

    @property
    def cols(self) -> int:
        return 2 * self.d

    def _mask(self, j: int) -> int:
        d = self.d
        r = j if self.side == "left" else j - d
        return 1 << (d - r) if 1 <= r <= d else 0


@dataclass(frozen=True)
class SuperItemPartition:
    """Items 1..n cut into consecutive blocks; only the last block may be short."""

    n: int
    block: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.block < 1:
            raise DomainError("partition needs n >= 1 and block >= 1")

    @property
    def kappa(self) -> int:
        return -(-self.n // self.block)

    def super_of(self, item: int) -> int:
        return (item - 1) // self.block + 1

    def items_of(self, j: int) -> tuple[int, int]:
        """First and last item of super item j."""
        if not 1 <= j <= self.kappa:
            raise DomainError(f"super item {j} outside 1..{self.kappa}")
        return (j - 1) * self.block + 1, min(j * self.block, self.n)


@dataclass(frozen=True, repr=False)
class ExpandedMatrix(MeasurementMatrix):
    inner: MeasurementMatrix
    partition: SuperItemPartition
    kind: ClassVar[str] = "Expanded"

    def __post_init__(self) -> None:
        if self.inner.cols != self.partition.kappa:
            raise DomainError(
                f"matrix has {self.inner.cols} columns but the partition has "
                f"{self.partition.kappa} super items"
            )

    @property
    def rows(self) -> int:
        return self.inner.rows

    @property
    def cols(self) -> int:
        return self.partition.n

    def _mask(self, j: int) -> int:
        return self.inner._mask(self.partition.super_of(j))

    def _union(self, first: int, last: int) -> int:
        p = self.partition
        return self.inner._union(p.super_of(first), p.super_of(last))


@dataclass(frozen=True, repr=False)
class StackedMatrix(MeasurementMatrix):
    children: tuple[MeasurementMatrix, ...]
    labels: tuple[str, ...] | None = None
    kind: ClassVar[str] = "Stacked"

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise DomainError("cannot stack zero matrices")
        widths = {c.cols for c in self.children}
        if len(widths) != 1:
            raise DomainError(f"stacked matrices disagree on columns: {sorted(widths)}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.children):
                raise DomainError("one label per stacked matrix required")

    @cached_property
    def rows(self) -> int:
        return sum(c.rows for c in self.children)

    @property
    def cols(self) -> int:
        return self.children[0].cols

    def _mask(self, j: int) -> int:
        mask = 0
        for c in self.children:
            mask = (mask << c.rows) | c._mask(j)
        return mask

    def _union(self, first: int, last: int) -> int:
        mask = 0
        for c in self.children:
            mask = (mask << c.rows) | c._union(first, last)
        return mask

    def segments(self) -> tuple[tuple[str, int, int], ...]:
        """(label, offset, length) for every child, in row order."""
        return self._segments

    @cached_property
    def _segments(self) -> tuple[tuple[str, int, int], ...]:
        labels = self.labels or tuple(f"m{k}" for k in range(len(self.children)))
        out, offset = [], 0
        for label, c in zip(labels, self.children):
            out.append((label, offset, c.rows))
            offset += c.rows
        return tuple(out)


@dataclass(frozen=True, repr=False)
class ExplicitMatrix(MeasurementMatrix):
    """A dense matrix given row by row, e.g. read back from a matrix file."""

    row_bits: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "Explicit"

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.row_bits)
        object.__setattr__(self, "row_bits", rows)
        if not rows or not rows[0]:
            raise DomainError("explicit matrix must be non-empty")
        if len({len(r) for r in rows}) != 1:
            raise DomainError("explicit matrix rows differ in length")
        if any(b not in (0, 1) for r in rows for b in r):
            raise DomainError("explicit matrix entries must be 0/1")

    @property
    def rows(self) -> int:
        return len(self.row_bits)

    @property
    def cols(self) -> int:
        return len(self.row_bits[0])

    def _mask(self, j: int) -> int:
        mask = 0
        for r in self.row_bits:
            mask = (mask << 1) | r[j - 1]
        return mask


def binary_matrix(n: int) -> BinaryMatrix:
    return BinaryMatrix(n)


def binary_pair_matrix(n: int) -> BinaryPairMatrix:
    return BinaryPairMatrix(n)


def gray_matrix(kappa: int) -> GrayMatrix:
    return GrayMatrix(kappa)


def mod_spacing_matrix(m: int, cols: int, tests: int | None = None) -> ModSpacingMatrix:
    return ModSpacingMatrix(m, cols, tests)


def half_block_matrix(d: int, side: str = "left") -> HalfBlockMatrix:
    return HalfBlockMatrix(d, side)


def expand_to_items(
    super_matrix: MeasurementMatrix, partition: SuperItemPartition
) -> MeasurementMatrix:
    if partition.block == 1:
        if super_matrix.cols != partition.kappa:
            raise DomainError("dimension mismatch between matrix and partition")
        return super_matrix
    return ExpandedMatrix(super_matrix, partition)


def stack(
    matrices: Sequence[MeasurementMatrix], labels: Sequence[str] | None = None
) -> MeasurementMatrix:
    if len(matrices) == 1 and labels is None:
        return matrices[0]
    return StackedMatrix(tuple(matrices), None if labels is None else tuple(labels))


def read_matrix(text: str) -> ExplicitMatrix:
    """Parse the ``"t n"`` header plus t row strings format."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    try:
        t, n = (int(tok) for tok in lines[0].split())
    except (IndexError, ValueError) as exc:
        raise DomainError("matrix file must start with 't n'") from exc
    body = lines[1:]
    if len(body) != t or any(len(r) != n or set(r) - {"0", "1"} for r in body):
        raise DomainError(f"matrix file body does not match header {t} {n}")
    return ExplicitMatrix(tuple(tuple(int(ch) for ch in r) for r in body))

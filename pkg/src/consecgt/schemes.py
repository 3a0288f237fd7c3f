"""The five end-to-end designs, their test counts and stacked matrices."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .codes import ceil_log2
from .errors import DomainError
from .matrices import (
    StackedMatrix,
    SuperItemPartition,
    binary_matrix,
    binary_pair_matrix,
    expand_to_items,
    gray_matrix,
    mod_spacing_matrix,
)


class SchemeKind(str, enum.Enum):
    SINGLE = "single"
    UP_TO_D_BINARY = "up-to-d-binary"
    UP_TO_D_GRAY = "up-to-d-gray"
    EXACT_D_GRAY = "exact-d-gray"
    EXACT_D_BINARY = "exact-d-binary"

    def __str__(self) -> str:
        return self.value

    @property
    def exact(self) -> bool:
        return self in (SchemeKind.EXACT_D_GRAY, SchemeKind.EXACT_D_BINARY)

    @property
    def gray(self) -> bool:
        return self in (SchemeKind.UP_TO_D_GRAY, SchemeKind.EXACT_D_GRAY)


SCHEME_ORDER = tuple(SchemeKind)


def parse_kind(name: str | SchemeKind) -> SchemeKind:
    if isinstance(name, SchemeKind):
        return name
    key = name.strip().lower().replace("_", "-")
    aliases = {"colbourn": SchemeKind.UP_TO_D_GRAY, "single-positive": SchemeKind.SINGLE}
    if key in aliases:
        return aliases[key]
    try:
        return SchemeKind(key)
    except ValueError:
        choices = ", ".join(k.value for k in SchemeKind)
        raise DomainError(f"unknown scheme {name!r}; choose from {choices}") from None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def check_domain(kind: SchemeKind, n: int, d: int | None) -> None:
    if kind is SchemeKind.SINGLE:
        if n < 2:
            raise DomainError(f"single-positive scheme needs n >= 2, got {n}")
        return
    if d is None:
        raise DomainError(f"{kind} needs a positive-count bound d")
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if kind is SchemeKind.UP_TO_D_GRAY and d < 2:
        raise DomainError(f"{kind} needs d >= 2, got {d}")
    if d < 1:
        raise DomainError(f"d must be at least 1, got {d}")
    if kind.exact and d > n:
        raise DomainError(f"{kind} needs d <= n, got d={d}, n={n}")


def test_count(kind: SchemeKind | str, n: int, d: int | None = None) -> int:
    """Closed-form number of tests of a design."""
    kind = parse_kind(kind)
    check_domain(kind, n, d)
    if kind is SchemeKind.SINGLE:
        return ceil_log2(n)
    if kind is SchemeKind.UP_TO_D_GRAY:
        return ceil_log2(_ceil_div(n, d - 1)) + 2 * d + 1
    s = ceil_log2(_ceil_div(n, d))
    if kind is SchemeKind.UP_TO_D_BINARY:
        return 2 * s + 2 * d
    if kind is SchemeKind.EXACT_D_GRAY:
        return s + d + 3
    return 2 * s + d


# pytest would otherwise collect this when a test module imports it
test_count.__test__ = False


@dataclass(frozen=True)
class SchemeSpec:
    kind: SchemeKind
    n: int
    d: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", parse_kind(self.kind))
        if self.kind is SchemeKind.SINGLE:
            object.__setattr__(self, "d", None)
        check_domain(self.kind, self.n, self.d)

    @property
    def block(self) -> int:
        """Items per super item of phase 1."""
        if self.kind is SchemeKind.SINGLE:
            return 1
        if self.kind is SchemeKind.UP_TO_D_GRAY:
            return self.d - 1
        return self.d

    @property
    def partition(self) -> SuperItemPartition:
        return SuperItemPartition(self.n, self.block)

    @property
    def kappa(self) -> int:
        return _ceil_div(self.n, self.block)

    @property
    def tests(self) -> int:
        return test_count(self.kind, self.n, self.d)

    def allows(self, length: int) -> bool:
        """Whether a positive run of this length is admissible."""
        if self.kind is SchemeKind.SINGLE:
            return length == 1
        if self.kind.exact:
            return length in (0, self.d)
        return 0 <= length <= self.d

    def admissible_lengths(self) -> list[int]:
        if self.kind is SchemeKind.SINGLE:
            return [1]
        if self.kind.exact:
            return [0, self.d]
        return list(range(0, min(self.d, self.n) + 1))

    def matrix(self) -> StackedMatrix:
        return scheme_matrix(self)

    def __str__(self) -> str:
        if self.d is None:
            return f"{self.kind}(n={self.n})"
        return f"{self.kind}(n={self.n}, d={self.d})"


@lru_cache(maxsize=1024)
def scheme_matrix(spec: SchemeSpec) -> StackedMatrix:
    """Stack the phase matrices of a design, labelled by outcome segment.

    Phase 1 is dropped when there is a single super item, except for the
    mod-3 rows of the Gray designs, which then still tell empty from non-empty.
    """
    n, d, kind = spec.n, spec.d, spec.kind
    if kind is SchemeKind.SINGLE:
        return StackedMatrix((binary_matrix(n),), ("y",))

    part = spec.partition
    kappa = part.kappa
    children, labels = [], []
    if kind.gray:
        if kappa >= 2:
            children.append(expand_to_items(gray_matrix(kappa), part))
            labels.append("s")
        children.append(expand_to_items(mod_spacing_matrix(3, kappa), part))
        labels.append("l")
    elif kappa >= 2:
        children.append(expand_to_items(binary_pair_matrix(kappa), part))
        labels.append("y1")

    if kind is SchemeKind.UP_TO_D_GRAY:
        children.append(mod_spacing_matrix(2 * (d - 1), n))
        labels.append("v")
    elif kind.exact:
        children.append(mod_spacing_matrix(2 * d, n, tests=d))
        labels.append("y2")
    else:
        children.append(mod_spacing_matrix(2 * d, n))
        labels.append("y2")
    return StackedMatrix(tuple(children), tuple(labels))

import pytest
from hypothesis import given
from hypothesis import strategies as st

from consecgt.encoder import ConsecutiveRange, OutcomeVector, encode, encode_scheme
from consecgt.errors import DomainError
from consecgt.matrices import binary_pair_matrix, gray_matrix, mod_spacing_matrix, stack
from consecgt.schemes import SchemeKind, SchemeSpec, scheme_matrix


def dense_or(matrix, positives):
    """Reference encoder: OR the materialized columns one by one."""
    dense = matrix.materialize()
    return tuple(int(any(row[j - 1] for j in positives.items())) for row in dense)


@pytest.mark.parametrize(
    "run, expected",
    [
        (ConsecutiveRange.empty(), "000000"),
        (ConsecutiveRange(1, 1), "000111"),
        (ConsecutiveRange(1, 2), "001111"),
        (ConsecutiveRange(4, 2), "111111"),
        (ConsecutiveRange(8, 1), "111000"),
    ],
)
def test_binary_pair_outcomes(run, expected):
    assert str(encode(binary_pair_matrix(8), run)) == expected


def test_scheme_outcome_examples():
    y = encode_scheme(SchemeSpec("up-to-d-binary", 16, 2), ConsecutiveRange(5, 2))
    assert y.segment("y1") == (0, 1, 0, 1, 0, 1)
    assert y.segment("y2") == (1, 1, 0, 0)
    assert y.to_text(annotate=True) == "y1:0:6,y2:6:4 0101011100"

    y = encode_scheme(SchemeSpec("up-to-d-gray", 16, 5), ConsecutiveRange(4, 3))
    assert y.segment("s") == (0, 1)
    assert y.segment("l") == (1, 1, 0)
    assert y.segment("v") == (0, 0, 0, 1, 1, 1, 0, 0)

    y = encode_scheme(SchemeSpec("exact-d-binary", 16, 2), ConsecutiveRange(4, 2))
    assert y.segment("y2") == (1, 0)


def test_empty_and_all_items():
    spec = SchemeSpec("up-to-d-binary", 6, 8)
    assert not any(encode_scheme(spec, ConsecutiveRange.empty()).bits)
    full = encode_scheme(spec, ConsecutiveRange(1, 6))
    assert full.bits == dense_or(scheme_matrix(spec), ConsecutiveRange(1, 6))


def test_inadmissible_runs_rejected():
    with pytest.raises(DomainError):
        encode_scheme(SchemeSpec("exact-d-gray", 20, 3), ConsecutiveRange(1, 2))
    with pytest.raises(DomainError):
        encode_scheme(SchemeSpec("up-to-d-binary", 20, 3), ConsecutiveRange(1, 4))
    with pytest.raises(DomainError):
        encode(gray_matrix(8), ConsecutiveRange(7, 3))
    with pytest.raises(DomainError):
        ConsecutiveRange(0, 2)


def test_range_normalization_and_text():
    assert ConsecutiveRange(5, 0) == ConsecutiveRange.empty()
    assert ConsecutiveRange.span(3, 7) == ConsecutiveRange(3, 5)
    for r in (ConsecutiveRange(3, 4), ConsecutiveRange.empty()):
        assert ConsecutiveRange.parse(str(r)) == r
    with pytest.raises(DomainError):
        ConsecutiveRange.parse("3-4")


def test_outcome_text_round_trip():
    y = encode_scheme(SchemeSpec("exact-d-gray", 40, 4), ConsecutiveRange(6, 4))
    assert OutcomeVector.from_text(y.to_text(annotate=True)) == y
    plain = OutcomeVector.from_text(y.to_text())
    assert plain.bits == y.bits and plain.segments == ()
    for bad in ("01x", "a:0:1 0 1", "h:0:2 0"):
        with pytest.raises(DomainError):
            OutcomeVector.from_text(bad)


def test_dense_reference_exhaustive_small():
    for kind in SchemeKind:
        for n in (4, 7, 16, 33):
            for d in (1, 2, 3, 5):
                try:
                    spec = SchemeSpec(kind, n, d)
                except DomainError:
                    continue
                m = scheme_matrix(spec)
                for length in spec.admissible_lengths():
                    for start in range(1, n - length + 2):
                        run = ConsecutiveRange(start, length)
                        assert encode_scheme(spec, run).bits == dense_or(m, run)


runs = st.integers(2, 500).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n)).flatmap(
        lambda nt: st.tuples(st.just(nt[0]), st.just(nt[1]), st.integers(0, nt[0] - nt[1] + 1))
    )
)


@given(runs)
def test_outcomes_grow_with_the_run(case):
    n, start, length = case
    m = stack([binary_pair_matrix(n), mod_spacing_matrix(7, n)])
    inner = encode(m, ConsecutiveRange(start, length)).bits
    if start + length <= n:
        outer = encode(m, ConsecutiveRange(start, length + 1)).bits
        assert all(a <= b for a, b in zip(inner, outer))


@given(runs)
def test_stacked_encode_concatenates(case):
    n, start, length = case
    parts = [binary_pair_matrix(n), gray_matrix(n), mod_spacing_matrix(5, n)]
    run = ConsecutiveRange(start, length)
    whole = encode(stack(parts), run).bits
    assert whole == sum((encode(p, run).bits for p in parts), ())

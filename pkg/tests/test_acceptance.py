"""Acceptance gate: one test per criterion, each at its stated tolerance."""
import itertools
import re
import time
from pathlib import Path

import pytest

from consecgt.bench import DEFAULT_D_VALUES, DEFAULT_N_VALUES, cell_spec
from consecgt.codes import gray_encode
from consecgt.decoders import STEP_BOUND, StepCounter, decode, decode_block, decode_two_consecutive_bin
from consecgt.encoder import ConsecutiveRange, encode, encode_scheme
from consecgt.errors import DecodeError, DomainError
from consecgt.matrices import binary_pair_matrix, gray_matrix, half_block_matrix, mod_spacing_matrix
from consecgt.oracle import adjudicate_all_outcomes, brute_force_decode, verify_identifiability
from consecgt.schemes import SCHEME_ORDER, SchemeKind, SchemeSpec, test_count

from .test_matrices import BINARY_PAIR_8, GRAY_4, MOD3_4, MOD8_16, reference_count, rows_of

ROOT = Path(__file__).resolve().parent.parent


@pytest.mark.criterion("worked example: 6x8 matrix, four outcomes and their decodes")
def test_worked_example():
    t0 = time.perf_counter()
    m = binary_pair_matrix(8)
    assert rows_of(m) == BINARY_PAIR_8
    cases = [
        (ConsecutiveRange.empty(), "000000", ()),
        (ConsecutiveRange(1, 1), "000111", (1,)),
        (ConsecutiveRange(1, 2), "001111", (1, 2)),
        (ConsecutiveRange(4, 2), "111111", (4, 5)),
    ]
    for run, expected, decoded in cases:
        y = encode(m, run)
        assert str(y) == expected
        assert decode_two_consecutive_bin(y, 8) == decoded
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion("printed matrices: 2x4 Gray, 3x4 mod-3, 8x16 mod-8")
def test_printed_matrices():
    assert rows_of(gray_matrix(4)) == GRAY_4
    assert rows_of(mod_spacing_matrix(3, 4)) == MOD3_4
    assert rows_of(mod_spacing_matrix(8, 16)) == MOD8_16


@pytest.mark.slow
@pytest.mark.criterion("exhaustive round trip and singleton candidates, n 4..256, d 1..8")
def test_exhaustive_round_trip():
    t0 = time.perf_counter()
    cells = checked = 0
    failures = []
    for kind in SCHEME_ORDER:
        for n in range(4, 257):
            for d in range(1, 9):
                try:
                    spec = cell_spec(kind, n, d)
                except DomainError:
                    continue
                if kind is SchemeKind.SINGLE and d > 1:
                    continue
                report = verify_identifiability(spec)
                cells += 1
                checked += report.checked
                if not report.ok:
                    failures.append(report.format())
    elapsed = time.perf_counter() - t0
    print(f"{cells} cells, {checked} positive sets, {elapsed:.1f} s")
    assert not failures, "\n".join(failures[:5])
    assert elapsed < 300


@pytest.mark.criterion("pair unions distinct from each other and from columns, n <= 1024")
def test_pair_union_separation():
    t0 = time.perf_counter()
    for n in range(2, 1025):
        m = binary_pair_matrix(n)
        cols = [m.column_mask(j) for j in range(1, n + 1)]
        unions = {cols[a] | cols[a + 1] for a in range(n - 1)}
        assert len(unions) == n - 1, n
        assert unions.isdisjoint(cols), n
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion("Gray neighbours differ in one bit, widths <= 16")
def test_gray_adjacency():
    for w in range(1, 17):
        codes = [gray_encode(v) for v in range(1 << w)]
        assert len(set(codes)) == 1 << w
        assert all(c < 1 << w for c in codes)
        for a, b in zip(codes, codes[1:]):
            assert bin(a ^ b).count("1") == 1


@pytest.mark.criterion("test counts match closed forms on the benchmark grid; 252 <= 300")
def test_count_formulas():
    for kind in SCHEME_ORDER:
        for n in DEFAULT_N_VALUES:
            for d in DEFAULT_D_VALUES:
                spec = cell_spec(kind, n, d)
                assert test_count(kind, n, spec.d) == reference_count(kind, n, spec.d)
                assert spec.matrix().rows == spec.tests
    assert test_count("up-to-d-binary", 2**32, 100) == 252 <= 300


def _probe_runs(spec):
    """Runs whose phase-2 window does not depend on n: at the start and across a boundary."""
    length = 1 if spec.kind is SchemeKind.SINGLE else spec.d
    yield ConsecutiveRange(1, length)
    if spec.kind is SchemeKind.SINGLE:
        yield ConsecutiveRange(2, 1)
    elif spec.kind.exact:
        yield ConsecutiveRange(spec.block, length)
        yield ConsecutiveRange(spec.block + 2, length)
    else:
        yield ConsecutiveRange(spec.block, 2)
        yield ConsecutiveRange(1, 1)


def _steps(spec, run):
    c = StepCounter()
    assert decode(spec, encode_scheme(spec, run), c) == run
    return c.steps


@pytest.mark.criterion("decode cost: steps <= 2t, < 1 ms at (2^32, 100), exact step delta")
def test_decode_cost_shape():
    import random

    rng = random.Random(11)
    for kind in SCHEME_ORDER:
        for n in DEFAULT_N_VALUES:
            for d in DEFAULT_D_VALUES:
                spec = cell_spec(kind, n, d)
                runs = list(_probe_runs(spec))
                for _ in range(20):
                    length = spec.d if kind.exact else (1 if kind is SchemeKind.SINGLE else rng.randint(1, d))
                    runs.append(ConsecutiveRange(rng.randint(1, n - length + 1), length))
                for run in runs:
                    assert _steps(spec, run) <= STEP_BOUND * spec.tests

    for kind in SCHEME_ORDER:
        spec = cell_spec(kind, 2**32, 100)
        runs = [ConsecutiveRange(rng.randint(1, spec.n - 100), 1 if kind is SchemeKind.SINGLE else 100)
                for _ in range(100)]
        outcomes = [encode_scheme(spec, r) for r in runs]
        for y in outcomes[:5]:
            decode(spec, y)
        timings = []
        for y in outcomes:
            t0 = time.perf_counter_ns()
            decode(spec, y)
            timings.append(time.perf_counter_ns() - t0)
        timings.sort()
        median = timings[len(timings) // 2]
        print(f"{kind}: median decode {median / 1000:.1f} us")
        assert median < 1_000_000

    for kind in SCHEME_ORDER:
        for k in (8, 16):
            for d in DEFAULT_D_VALUES:
                small, big = cell_spec(kind, 2**k, d), cell_spec(kind, 2 ** (2 * k), d)
                predicted = big.tests - small.tests
                for run in _probe_runs(small):
                    assert _steps(big, run) - _steps(small, run) == predicted, (kind, k, d, run)


@pytest.mark.criterion("half-block and exact-d decoders agree with the oracle, d <= 8")
def test_ambiguity_adjudication():
    for d in range(1, 9):
        for side in ("left", "right"):
            m = half_block_matrix(d, side)
            for y in itertools.product((0, 1), repeat=d):
                cands = brute_force_decode(m, y, f"={d}")
                try:
                    got = decode_block(y, d, side)
                except DecodeError:
                    got = None
                if len(cands) == 0:
                    assert got is None
                else:
                    (run,) = cands.candidates
                    assert got == (run.start if side == "left" else run.last)

    problems = []
    for kind in (SchemeKind.EXACT_D_GRAY, SchemeKind.EXACT_D_BINARY):
        for d in range(1, 9):
            for n in range(max(d, 2), 4 * d + 2):
                spec = SchemeSpec(kind, n, d)
                if spec.tests <= 13:
                    problems += [f"{spec}: {p}" for p in adjudicate_all_outcomes(spec, max_tests=13)]
    assert not problems, "\n".join(problems[:10])

    note = (ROOT / "CORRECTIONS.md").read_text().lower()
    assert "left-most" in note and "right-most" in note
    assert re.search(r"\(α_min\s*[−-]\s*1\)\s*·?\s*d\s*\+\s*1", note, re.IGNORECASE)

"""Non-adaptive group testing with consecutive positives.

Measurement-matrix constructions, encoders, linear-time decoders, a
brute-force identifiability oracle and a benchmark harness.
"""
from .codes import (
    Codeword,
    complement,
    gray_to_int,
    int_to_binary,
    int_to_gray,
    vec2int,
)
from .decoders import (
    StepCounter,
    decode,
    decode_block,
    decode_exact_d,
    decode_single,
    decode_two_consecutive_bin,
    decode_two_consecutive_gray,
    decode_up_to_d,
    decode_up_to_d_gray,
)
from .encoder import ConsecutiveRange, OutcomeVector, encode, encode_scheme
from .errors import DecodeError, DomainError, GroupTestingError, RefusalError
from .matrices import (
    MeasurementMatrix,
    SuperItemPartition,
    binary_matrix,
    binary_pair_matrix,
    expand_to_items,
    gray_matrix,
    half_block_matrix,
    mod_spacing_matrix,
    read_matrix,
    stack,
)
from .oracle import Cardinality, brute_force_decode, verify_identifiability
from .schemes import SchemeKind, SchemeSpec, scheme_matrix, test_count

__version__ = "0.1.0"

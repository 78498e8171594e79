"""Exact weighted k-Hamming / k-Edit distances and compiled hardness reductions."""
from .core import (
    CostModel,
    Deletion,
    Insertion,
    Instance,
    KSubstitution,
    Step,
    TransformationSequence,
    apply_operation,
    apply_sequence,
    sequence_cost,
    substitution,
    validate_instance,
    validate_model,
)
from .oracle import brute_force_distance
from .reductions import (
    ReductionReport,
    compile_3e_to_2e,
    compile_3h_to_2h,
    compile_tm_to_3edit,
    compile_tm_to_3hamming,
    is_prime_3edit,
    is_prime_3hamming,
    lift_k,
    pair_decode,
    pair_encode,
)
from .solver import Exact, ExceedsBudget, Unreachable, decide, distance, neighbors
from .symbols import Symbol, base, canonical_symbol_text, parse_symbol_text, parse_word, word_text
from .turing import (
    ResourceBounds,
    Transition,
    TuringMachine,
    Verdict,
    accepts_ntm_bounded,
    run_dtm_bounded,
    run_ntm_bounded,
    validate_machine,
)

__version__ = "0.1.0"

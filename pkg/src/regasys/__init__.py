"""Exact-time simulation of asynchronous Boolean systems and set-level
verification of their serial connections."""

from .boolfn import (
    BoolVec,
    GeneratorFn,
    all_vectors,
    compose_serial_generator,
    eval_generator,
    masked_update,
)
from .errors import (
    CompositionError,
    ContainmentError,
    DimensionError,
    FormatError,
    NotProgressiveError,
    OrderingError,
    RegasysError,
    UnknownInputError,
    ValidationError,
)
from .orbit import OrbitTrace, TraceEvent, merged_times, orbit, orbit_trace
from .progressive import (
    ProgressiveFn,
    ProgressiveTail,
    eval_progressive,
    make_progressive,
    product_progressive,
)
from .serial import (
    MUTATIONS,
    CaseReport,
    Mismatch,
    SerialWitness,
    VerificationReport,
    build_serial_computation,
    build_serial_initial,
    check_lemma6,
    classical_composition,
    compose_systems,
    serial_regular,
    serial_set_oracle,
    verify_serial_theorem,
)
from .signals import (
    CONSTANT,
    PeriodicTail,
    Signal,
    canonicalize,
    constant_signal,
    eval_signal,
    product_signal,
    signal_from_samples,
    signals_equal,
)
from .systems import (
    RegularSystem,
    SignalSet,
    StateSpaceReport,
    check_state_space,
    evaluate_system,
    find_input,
    sets_equal,
)
from .ticks import (
    PeriodicTicks,
    RatTime,
    TickSequence,
    frac_lcm,
    merge_sequences,
    parse_rattime,
    sequence_contains,
)

__version__ = "0.1.0"

__all__ = [
    "BoolVec",
    "GeneratorFn",
    "all_vectors",
    "compose_serial_generator",
    "eval_generator",
    "masked_update",
    "RegasysError",
    "FormatError",
    "DimensionError",
    "OrderingError",
    "ValidationError",
    "NotProgressiveError",
    "ContainmentError",
    "UnknownInputError",
    "CompositionError",
    "RatTime",
    "PeriodicTicks",
    "TickSequence",
    "parse_rattime",
    "frac_lcm",
    "merge_sequences",
    "sequence_contains",
    "Signal",
    "PeriodicTail",
    "CONSTANT",
    "constant_signal",
    "eval_signal",
    "canonicalize",
    "signals_equal",
    "product_signal",
    "signal_from_samples",
    "ProgressiveFn",
    "ProgressiveTail",
    "make_progressive",
    "eval_progressive",
    "product_progressive",
    "orbit",
    "orbit_trace",
    "merged_times",
    "OrbitTrace",
    "TraceEvent",
    "RegularSystem",
    "SignalSet",
    "StateSpaceReport",
    "find_input",
    "evaluate_system",
    "sets_equal",
    "check_state_space",
    "MUTATIONS",
    "SerialWitness",
    "Mismatch",
    "CaseReport",
    "VerificationReport",
    "serial_set_oracle",
    "serial_regular",
    "build_serial_initial",
    "build_serial_computation",
    "classical_composition",
    "compose_systems",
    "check_lemma6",
    "verify_serial_theorem",
    "__version__",
]

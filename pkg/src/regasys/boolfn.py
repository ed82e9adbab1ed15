"""Boolean vectors and dense generator tables.

A generator is a total update rule from (state, input) pairs to next
states.  Tables are stored densely, indexed by the integer encoding of
the concatenated state and input bits, most significant coordinate
first, which gives O(1) lookup and structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import DimensionError, FormatError

# Dense tables must stay in memory; construction fails fast past these.
MAX_STATE_WIDTH = 16
MAX_TABLE_BITS = 20


@dataclass(frozen=True)
class BoolVec:
    """Immutable vector over {0, 1}; coordinate 1 is the leftmost bit."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(self.bits)
        if not bits:
            raise DimensionError("a BoolVec needs at least one coordinate")
        if any(b not in (0, 1) for b in bits):
            raise FormatError(f"bits must be 0 or 1, got {bits!r}")
        # bools are accepted but stored as ints so str() stays "0"/"1"
        object.__setattr__(self, "bits", tuple(int(b) for b in bits))

    @classmethod
    def from_string(cls, text: str) -> "BoolVec":
        if not text or any(c not in "01" for c in text):
            raise FormatError(f"expected a nonempty string over 0/1, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_index(cls, width: int, index: int) -> "BoolVec":
        if width < 1:
            raise DimensionError("width must be >= 1")
        if not 0 <= index < (1 << width):
            raise ValueError(f"index {index} out of range for width {width}")
        return cls(tuple((index >> (width - 1 - i)) & 1 for i in range(width)))

    @classmethod
    def zeros(cls, width: int) -> "BoolVec":
        return cls((0,) * width)

    @classmethod
    def ones(cls, width: int) -> "BoolVec":
        return cls((1,) * width)

    @property
    def width(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def concat(self, other: "BoolVec") -> "BoolVec":
        return BoolVec(self.bits + other.bits)

    def split(self, left_width: int) -> tuple["BoolVec", "BoolVec"]:
        """Break into a pair of vectors of widths (left_width, rest)."""
        if not 1 <= left_width < self.width:
            raise DimensionError(
                f"cannot split width {self.width} at {left_width}"
            )
        return BoolVec(self.bits[:left_width]), BoolVec(self.bits[left_width:])

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]


def all_vectors(width: int) -> Iterator[BoolVec]:
    """All vectors of the given width in increasing index order."""
    for i in range(1 << width):
        yield BoolVec.from_index(width, i)


@dataclass(frozen=True)
class GeneratorFn:
    """Total update rule B^s x B^m -> B^s as a dense next-state table.

    ``table[(state.index << input_width) | input.index]`` is the next
    state.  ``serial_stages``, when set, records that the table arose by
    feeding the first stage's state into the second stage's input; the
    masked update of such a pair is defined stagewise, with the second
    stage reading the masked output of the first rather than the raw
    table row.  That distinction is observable whenever the two stages
    fire at different times.
    """

    state_width: int
    input_width: int
    table: tuple[BoolVec, ...]
    serial_stages: "tuple[GeneratorFn, GeneratorFn] | None" = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if self.state_width < 1 or self.input_width < 1:
            raise DimensionError("generator widths must be >= 1")
        if self.state_width > MAX_STATE_WIDTH:
            raise DimensionError(
                f"state width {self.state_width} exceeds the supported maximum {MAX_STATE_WIDTH}"
            )
        if self.state_width + self.input_width > MAX_TABLE_BITS:
            raise DimensionError(
                f"dense table with {self.state_width + self.input_width} address bits "
                f"exceeds the supported maximum {MAX_TABLE_BITS}"
            )
        expected = 1 << (self.state_width + self.input_width)
        if len(self.table) != expected:
            raise FormatError(
                f"table needs {expected} rows, got {len(self.table)}"
            )
        for row in self.table:
            if row.width != self.state_width:
                raise DimensionError(
                    f"table row width {row.width} != state width {self.state_width}"
                )


def eval_generator(gen: GeneratorFn, state: BoolVec, inp: BoolVec) -> BoolVec:
    """Next state for a full (unmasked) update."""
    if state.width != gen.state_width:
        raise DimensionError(f"state width {state.width} != {gen.state_width}")
    if inp.width != gen.input_width:
        raise DimensionError(f"input width {inp.width} != {gen.input_width}")
    return gen.table[(state.index << gen.input_width) | inp.index]


def masked_update(gen: GeneratorFn, mask: BoolVec, state: BoolVec, inp: BoolVec) -> BoolVec:
    """Update only the coordinates flagged by ``mask``; keep the rest.

    For a serially composed generator the mask splits into stage masks
    and the second stage is evaluated on the masked first-stage output.
    """
    if mask.width != gen.state_width:
        raise DimensionError(f"mask width {mask.width} != {gen.state_width}")
    if gen.serial_stages is not None:
        first, second = gen.serial_stages
        head_mask, tail_mask = mask.split(first.state_width)
        head, tail = state.split(first.state_width)
        updated = masked_update(first, head_mask, head, inp)
        return updated.concat(masked_update(second, tail_mask, tail, updated))
    if state.width != gen.state_width:
        raise DimensionError(f"state width {state.width} != {gen.state_width}")
    if inp.width != gen.input_width:
        raise DimensionError(f"input width {inp.width} != {gen.input_width}")
    row = gen.table[(state.index << gen.input_width) | inp.index]
    return BoolVec(
        tuple(r if m else s for m, s, r in zip(mask.bits, state.bits, row.bits))
    )


@lru_cache(maxsize=512)
def compose_serial_generator(first: GeneratorFn, second: GeneratorFn) -> GeneratorFn:
    """Feed the first stage's state into the second stage's input.

    The result acts on concatenated states: the first block updates from
    the external input, the second block updates from the first block's
    fresh output.
    """
    if second.input_width != first.state_width:
        raise DimensionError(
            f"second stage reads width {second.input_width}, "
            f"first stage produces width {first.state_width}"
        )
    n, p, m = first.state_width, second.state_width, first.input_width
    rows = []
    for combined in all_vectors(n + p):
        head, tail = combined.split(n)
        for inp in all_vectors(m):
            updated = eval_generator(first, head, inp)
            rows.append(updated.concat(eval_generator(second, tail, updated)))
    return GeneratorFn(n + p, m, tuple(rows), serial_stages=(first, second))

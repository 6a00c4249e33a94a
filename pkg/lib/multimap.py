"""
Sparse Multilinear Elements
===========================

One container for the three ambient spaces the engine works in:

    hochschild   cochains  w_1 ... w_k  ->  y            (one output)
    necklace     multi-output maps on A, outputs in A
    mixed        multi-output maps on A, outputs in B (pulled back along
                 the object map) or, for the last output, an A vector or
                 a dual B vector

STORAGE:
--------
An Entry is (blocks, outputs). Block i holds the input letters of the
i-th tuple, output o_i ends where block i starts and starts where block
i+1 ends (indices mod n):

    o_i.tgt == lt(block i)        o_i.src == rt(block i+1)

An empty block sits at the single object o_i.tgt. The signature of an
entry is derived from the letters, so it is never stored. Coefficients
are exact Fractions; absent entries are zero.

DEGREES:
--------
Every stored entry satisfies

    sum(o.degree + d) - sum(|s a|) - d - 1 == element degree

which, for one output, is the usual |s y| - sum(|s w|) of a cochain.

TRUNCATION:
-----------
(max_inputs, max_outputs) bounds the direct and the dual letters of the
entry's closed word (inputs plus the dual of the last output). For a
necklace element that is the input count and the number of outputs. The
counts only grow under composition, so pruning never loses an entry that
could feed a result inside the bound.
"""

from __future__ import annotations

import enum
import logging
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple

from errors import AmbientError, CarrierMismatch, DegreeMismatch, GradingError, SignatureMismatch
from grading import Permutation, block_swap_sign
from quiver import BasisVector, GradedQuiver

log = logging.getLogger(__name__)

Block = tuple[BasisVector, ...]
Signature = tuple[tuple[str, ...], ...]

# =============================================================================
# ENTRIES AND SIGNATURES
# =============================================================================


class Ambient(enum.StrEnum):
    HOCHSCHILD = "hochschild"
    NECKLACE = "necklace"
    MIXED = "mixed"


class Entry(NamedTuple):
    blocks: tuple[Block, ...]
    outputs: tuple[BasisVector, ...]

    @property
    def n(self) -> int:
        return len(self.outputs)

    @property
    def arity(self) -> int:
        return sum(len(b) for b in self.blocks)

    def letters(self) -> Block:
        return tuple(a for block in self.blocks for a in block)

    def __str__(self) -> str:
        blocks = " | ".join(" ".join(a.name for a in b) or "-" for b in self.blocks)
        return f"[{blocks}] -> ({', '.join(o.name for o in self.outputs)})"


def cochain(inputs: Sequence[BasisVector], output: BasisVector) -> Entry:
    """Entry of a one-output element."""
    return Entry((tuple(inputs),), (output,))


def signature(entry: Entry) -> Signature:
    tuples = []
    for block, out in zip(entry.blocks, entry.outputs, strict=True):
        if block:
            tuples.append((block[0].tgt,) + tuple(a.src for a in block))
        else:
            tuples.append((out.tgt,))
    return tuple(tuples)


def check_entry(entry: Entry) -> None:
    """Raise SignatureMismatch unless the letters chain as described above."""
    if len(entry.blocks) != len(entry.outputs) or not entry.outputs:
        raise SignatureMismatch(f"{entry}: need one block per output and at least one output")
    sig = signature(entry)
    for block in entry.blocks:
        for a, b in zip(block, block[1:], strict=False):
            if a.src != b.tgt:
                raise SignatureMismatch(f"{entry}: {a} does not chain into {b}")
    n = entry.n
    for i, out in enumerate(entry.outputs):
        nxt = sig[(i + 1) % n]
        if out.tgt != sig[i][0] or out.src != nxt[-1]:
            raise SignatureMismatch(f"{entry}: output {out} does not close tuples {i + 1}, {i + 2}")


def entry_degree(entry: Entry, d: int) -> int:
    outputs = sum(o.degree + d for o in entry.outputs)
    return outputs - sum(a.sdeg for a in entry.letters()) - d - 1


def word_counts(entry: Entry) -> tuple[int, int]:
    """(direct, dual) letters of the closed word of an entry."""
    letters = entry.letters()
    direct = sum(not a.dual for a in letters) + sum(o.dual for o in entry.outputs)
    dual = sum(a.dual for a in letters) + sum(not o.dual for o in entry.outputs)
    return direct, dual


@dataclass(frozen=True)
class Truncation:
    """Bounds on direct and dual letters; None is unbounded."""

    max_inputs: int | None = None
    max_outputs: int | None = None

    @classmethod
    def parse(cls, text: str) -> Truncation:
        """Parse "N,M"; either side may be empty or "*"."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"truncation must look like 'N,M', got {text!r}")
        bounds = [None if p in ("", "*") else int(p) for p in parts]
        return cls(*bounds)

    def admits(self, entry: Entry) -> bool:
        direct, dual = word_counts(entry)
        if self.max_inputs is not None and direct > self.max_inputs:
            return False
        return self.max_outputs is None or dual <= self.max_outputs

    def meet(self, other: Truncation) -> Truncation:
        def low(a: int | None, b: int | None) -> int | None:
            if a is None:
                return b
            return a if b is None else min(a, b)

        return Truncation(
            low(self.max_inputs, other.max_inputs), low(self.max_outputs, other.max_outputs)
        )

    def __str__(self) -> str:
        def show(v: int | None) -> str:
            return "*" if v is None else str(v)

        return f"{show(self.max_inputs)},{show(self.max_outputs)}"


# =============================================================================
# MULTI ELEMENT
# =============================================================================


@dataclass(frozen=True)
class MultiElement:
    """
    Homogeneous element of one of the ambient spaces.

    Attributes:
    -----------
    ambient : Ambient
    quiver : GradedQuiver
        Quiver whose objects the letters sit over (A).
    d : int
    degree : int
        Degree of the stored shifted element.
    terms : mapping Entry -> Fraction
        Zero coefficients and entries outside the truncation are dropped
        on construction; every other entry is validated.
    target, phi0 :
        B and the object map, for mixed elements and morphisms.
    """

    ambient: Ambient
    quiver: GradedQuiver
    d: int
    degree: int
    terms: Mapping[Entry, Fraction] = field(default_factory=dict)
    truncation: Truncation = Truncation()
    target: GradedQuiver | None = None
    phi0: Mapping[str, str] | None = None

    def __post_init__(self) -> None:
        objects = set(self.quiver.objects)
        kept: dict[Entry, Fraction] = {}
        for entry, value in self.terms.items():
            value = Fraction(value)
            if value == 0 or not self.truncation.admits(entry):
                continue
            check_entry(entry)
            if self.ambient is Ambient.HOCHSCHILD and entry.n != 1:
                raise AmbientError(f"{entry}: hochschild cochains have one output")
            for a in entry.letters() + entry.outputs:
                if a.src not in objects or a.tgt not in objects:
                    raise SignatureMismatch(f"{entry}: {a} is not over {self.quiver.label}")
            degree = entry_degree(entry, self.d)
            if degree != self.degree:
                raise DegreeMismatch(f"{entry} has degree {degree}, element has {self.degree}")
            kept[entry] = value
        object.__setattr__(self, "terms", kept)

    # -------------------------------------------------------------------------
    # Construction helpers
    # -------------------------------------------------------------------------

    def with_terms(
        self, terms: Mapping[Entry, Fraction], degree: int | None = None
    ) -> MultiElement:
        return replace(self, terms=dict(terms), degree=self.degree if degree is None else degree)

    def zero(self, degree: int | None = None) -> MultiElement:
        return self.with_terms({}, degree)

    def truncated(self, truncation: Truncation) -> MultiElement:
        return replace(self, terms=dict(self.terms), truncation=self.truncation.meet(truncation))

    def restrict(self, keep: Callable[[Entry], bool]) -> MultiElement:
        return self.with_terms({e: c for e, c in self.terms.items() if keep(e)})

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def signatures(self) -> list[Signature]:
        return sorted({signature(e) for e in self.terms})

    def by_signature(self) -> dict[Signature, dict[Entry, Fraction]]:
        groups: dict[Signature, dict[Entry, Fraction]] = defaultdict(dict)
        for entry, value in self.terms.items():
            groups[signature(entry)][entry] = value
        return dict(groups)

    def items(self) -> list[tuple[Entry, Fraction]]:
        return sorted(self.terms.items())

    def coefficient(self, entry: Entry) -> Fraction:
        return self.terms.get(entry, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def scaled(self, c: Fraction | int) -> MultiElement:
        return linear_combine([c], [self])

    def __add__(self, other: MultiElement) -> MultiElement:
        return linear_combine([1, 1], [self, other])

    def __sub__(self, other: MultiElement) -> MultiElement:
        return linear_combine([1, -1], [self, other])

    def __neg__(self) -> MultiElement:
        return self.scaled(-1)


def accumulate(terms: dict[Entry, Fraction], entry: Entry, value: Fraction | int) -> None:
    """terms[entry] += value, removing the key when it cancels."""
    total = terms.get(entry, Fraction(0)) + value
    if total:
        terms[entry] = total
    else:
        terms.pop(entry, None)


def check_compatible(left: MultiElement, right: MultiElement) -> None:
    if left.d != right.d:
        raise CarrierMismatch(f"d={left.d} and d={right.d} do not combine")
    if left.quiver.objects != right.quiver.objects:
        raise CarrierMismatch(f"{left.quiver.label} and {right.quiver.label} differ in objects")


# =============================================================================
# OPERATIONS
# =============================================================================


def eval_component(
    E: MultiElement, sig: Signature, blocks: Sequence[Sequence[BasisVector]]
) -> list[tuple[tuple[BasisVector, ...], Fraction]]:
    """Stored outputs of E at the given input blocks."""
    blocks = tuple(tuple(b) for b in blocks)
    if len(blocks) != len(sig):
        raise SignatureMismatch(f"{len(blocks)} input blocks for a signature of length {len(sig)}")
    for block, objects in zip(blocks, sig, strict=True):
        if not block:
            if len(objects) != 1:
                raise SignatureMismatch(f"empty block against tuple {objects}")
            continue
        found = (block[0].tgt,) + tuple(a.src for a in block)
        if found != tuple(objects):
            raise SignatureMismatch(f"inputs sit over {found}, signature asks for {objects}")
    rows = [
        (entry.outputs, value)
        for entry, value in E.terms.items()
        if entry.blocks == blocks and signature(entry) == tuple(sig)
    ]
    return sorted(rows)


def rotate_entry(entry: Entry, d: int) -> tuple[Entry, int]:
    """
    Move the first block and first output to the back.

    Returns the rotated entry and the Koszul sign of moving the first input
    block past the rest and the first output past the other outputs.
    """
    blocks, outputs = entry.blocks, entry.outputs
    inputs = [sum(a.sdeg for a in b) for b in blocks]
    outs = [o.degree + d for o in outputs]
    kappa = block_swap_sign(inputs[0], sum(inputs[1:])) * block_swap_sign(outs[0], sum(outs[1:]))
    return Entry(blocks[1:] + blocks[:1], outputs[1:] + outputs[:1]), kappa


def _check_actable(E: MultiElement) -> None:
    if E.ambient is Ambient.HOCHSCHILD:
        raise AmbientError("the cyclic action is only defined on multi-output elements")
    for entry in E.terms:
        if any(o.dual for o in entry.outputs):
            raise AmbientError(f"{entry}: cyclic action needs every output to be a direct vector")


def cyclic_act(tau: Permutation | int, E: MultiElement) -> MultiElement:
    """
    Act with a power of the generator of C_n on every entry.

    An int acts on every entry; a Permutation acts on the entries with as
    many outputs as it has points and leaves the others alone. The generator
    moves the last block (and output) to the front, matching Permutation.cycle.
    """
    _check_actable(E)
    terms: dict[Entry, Fraction] = {}
    for entry, value in E.terms.items():
        n = entry.n
        if isinstance(tau, Permutation):
            if len(tau) != n:
                accumulate(terms, entry, value)
                continue
            power = tau.power_of_cycle()
            if power is None:
                raise GradingError(f"{tau.images} is not a power of the cyclic generator")
        else:
            power = tau
        steps = (n - power % n) % n
        coefficient = Fraction(value)
        for _ in range(steps):
            entry, kappa = rotate_entry(entry, E.d)
            coefficient *= kappa
        accumulate(terms, entry, coefficient)
    return E.with_terms(terms)


def check_cyclic_invariance(E: MultiElement) -> bool:
    return cyclic_act(1, E).terms == E.terms


def symmetrize(E: MultiElement) -> MultiElement:
    """Average over the cyclic group of every entry."""
    _check_actable(E)
    terms: dict[Entry, Fraction] = {}
    for entry, value in E.terms.items():
        n = entry.n
        share = Fraction(value) / n
        accumulate(terms, entry, share)
        for _ in range(n - 1):
            entry, kappa = rotate_entry(entry, E.d)
            share *= kappa
            accumulate(terms, entry, share)
    return E.with_terms(terms)


def linear_combine(
    coeffs: Iterable[Fraction | int], elements: Sequence[MultiElement]
) -> MultiElement:
    """Sparse sum of c_i * E_i; all E_i share ambient, d and objects."""
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) != len(elements) or not elements:
        raise CarrierMismatch("linear_combine needs one coefficient per element")
    first = elements[0]
    truncation = first.truncation
    degree = None
    terms: dict[Entry, Fraction] = {}
    for c, E in zip(coeffs, elements, strict=True):
        if E.ambient is not first.ambient:
            raise CarrierMismatch(f"cannot add {E.ambient} and {first.ambient} elements")
        check_compatible(first, E)
        truncation = truncation.meet(E.truncation)
        if c == 0 or E.is_zero():
            continue
        if degree is not None and E.degree != degree:
            raise DegreeMismatch(f"sum of elements of degrees {degree} and {E.degree}")
        degree = E.degree
        for entry, value in E.terms.items():
            accumulate(terms, entry, c * value)
    result_degree = first.degree if degree is None else degree
    return replace(first, terms=terms, degree=result_degree, truncation=truncation)

"""
The map j and its cyclic completion
===================================

j sends a multi-output element to the hochschild cochain on the boundary
quiver obtained by reading each entry at its last output:

    j(a^1 | ... | a^n -> o_1 .. o_n) = (a^n, u_(n-1), a^(n-1), ..., u_1, a^1) -> o_n

with u_i the closing letter of o_i and coefficient

    Gamma(o_n, u_n) * (-1)^eps * c
    eps = U_n (sum A + sum_(i<n) U_i) + sum_(i<k) A_i A_k + sum_(i<n) U_i sum_(k>i) A_k

(A_i the shifted degree of block i, U_i that of u_i). decode() in words
inverts it.

CYCLIC COMPLETION:
------------------
A cochain with direct outputs fixes a closed functional on every word
ending in a dual letter. lift() extends it to the rotations ending in a
direct letter, producing the dual-valued half of a cyclic coderivation.
Each direct position is produced from the nearest dual letter after it,
so an entry emits readings only for the letters of its last block.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from errors import AmbientError, CarrierMismatch
from grading import rotation_sign, sign
from multimap import Ambient, Entry, MultiElement, accumulate, cochain
from quiver import mixed_quiver, pair_sign, partner
from words import IN, Word, arrow_position, closing_letters, read_at

log = logging.getLogger(__name__)

# =============================================================================
# j
# =============================================================================


def j_exponent(entry: Entry, d: int) -> int:
    A = [sum(a.sdeg for a in block) for block in entry.blocks]
    U = [u.sdeg for u in closing_letters(entry, d)]
    n = entry.n
    eps = U[-1] * (sum(A) + sum(U[:-1]))
    eps += sum(A[i] * A[k] for i in range(n) for k in range(i + 1, n))
    eps += sum(U[i] * sum(A[i + 1 :]) for i in range(n - 1))
    return eps


def j_cochain(entry: Entry, value: Fraction, d: int) -> tuple[Word, Fraction]:
    """Inputs and coefficient of the j-image of one entry; the output is o_n."""
    u = closing_letters(entry, d)
    inputs: Word = ()
    for i in range(entry.n, 0, -1):
        inputs += entry.blocks[i - 1]
        if i > 1:
            inputs += (u[i - 2],)
    o_n = entry.outputs[-1]
    return inputs, pair_sign(o_n, u[-1], d) * sign(j_exponent(entry, d)) * Fraction(value)


def _as_cochains(E: MultiElement, terms: dict[Entry, Fraction]) -> MultiElement:
    return MultiElement(
        Ambient.HOCHSCHILD, E.quiver, E.d, E.degree, terms, E.truncation, E.target, E.phi0
    )


def map_j(E: MultiElement) -> MultiElement:
    """Hochschild cochain on the boundary quiver of a necklace element."""
    if E.ambient is Ambient.HOCHSCHILD:
        raise AmbientError("map_j takes a multi-output element")
    terms: dict[Entry, Fraction] = {}
    for entry, value in E.terms.items():
        inputs, coef = j_cochain(entry, value, E.d)
        accumulate(terms, cochain(inputs, entry.outputs[-1]), coef)
    return _as_cochains(E, terms)


def map_j_mixed(E: MultiElement) -> MultiElement:
    """
    j on a mixed element; the image is a cochain on Q_Phi = A (+) B*[d-1].

    Inputs are A letters and the closing B* letters, the value an A or a
    B* vector.
    """
    if E.ambient is not Ambient.MIXED:
        raise AmbientError(f"map_j_mixed takes a mixed element, got {E.ambient}")
    if E.target is None or E.phi0 is None:
        raise AmbientError("a mixed element needs its target quiver and object map")
    Q = mixed_quiver(E.quiver, E.target, E.phi0, E.d)
    image = map_j(E)
    carrier = set(Q.arrows)
    for entry in image.terms:
        stray = [a for a in entry.blocks[0] + entry.outputs if a not in carrier]
        if stray:
            raise CarrierMismatch(f"{entry}: {stray[0]} is not a letter of {Q.label}")
    return replace(image, quiver=Q)


# =============================================================================
# CYCLIC COMPLETION
# =============================================================================


def segments(w: Word) -> list[tuple[int, int]]:
    """(start, stop) of the runs of direct letters between the duals of w."""
    bounds, start = [], 0
    for i, a in enumerate(w):
        if a.dual:
            bounds.append((start, i))
            start = i + 1
    bounds.append((start, len(w)))
    return bounds


def _reading_at(w: Word, y, value: Fraction, q: int, d: int):
    z = partner(y, d)
    word = w + (z,)
    omega = pair_sign(y, z, d) * Fraction(value)
    out = partner(w[q], d)
    coef = pair_sign(out, w[q], d) * rotation_sign([a.sdeg for a in word], q + 1) * omega
    return cochain(word[q + 1 :] + word[:q], out), coef


def _require_direct_core(core: MultiElement) -> None:
    if core.ambient is not Ambient.HOCHSCHILD:
        raise AmbientError("a cyclic completion starts from hochschild cochains")
    for entry in core.terms:
        if entry.outputs[0].dual:
            raise AmbientError(f"{entry}: core cochains take direct values")


def lift(core: MultiElement) -> MultiElement:
    """The core together with its dual-valued completion."""
    _require_direct_core(core)
    terms = dict(core.terms)
    for entry, value in core.terms.items():
        w, y = entry.blocks[0], entry.outputs[0]
        start, stop = segments(w)[-1]
        for q in range(start, stop):
            new, coef = _reading_at(w, y, value, q, core.d)
            accumulate(terms, new, coef)
    return _as_cochains(core, terms)


def lift_slot(jF: MultiElement, v: int, j: int) -> MultiElement:
    """Dual-valued reading of j-image entries at letter j of tuple v."""
    _require_direct_core(jF)
    terms: dict[Entry, Fraction] = {}
    for entry, value in jF.terms.items():
        w, y = entry.blocks[0], entry.outputs[0]
        runs = segments(w)
        if v > len(runs):
            continue
        start, stop = runs[len(runs) - v]
        q = start + j - 1
        if q < stop:
            new, coef = _reading_at(w, y, value, q, jF.d)
            accumulate(terms, new, coef)
    return _as_cochains(jF, terms)


def project(E: MultiElement) -> MultiElement:
    """Keep the direct-valued cochains."""
    return E.restrict(lambda e: not e.outputs[0].dual)


def dual_part(E: MultiElement) -> MultiElement:
    return E.restrict(lambda e: e.outputs[0].dual)


def incoming_readings(E: MultiElement) -> MultiElement:
    """
    Every entry read at each letter of its first tuple.

    These are the cochains a disc contributes when its bold arrow is an
    incoming arrow of the first tuple; on a j-image they equal minus the
    dual part of lift().
    """
    if E.ambient is Ambient.HOCHSCHILD:
        raise AmbientError("incoming readings are taken on multi-output elements")
    terms: dict[Entry, Fraction] = {}
    for entry, value in E.terms.items():
        for j in range(1, len(entry.blocks[0]) + 1):
            position = arrow_position(entry, IN, j)
            inputs, output, coef = read_at(entry, value, E.d, position)
            accumulate(terms, cochain(inputs, output), coef)
    return _as_cochains(E, terms)


@dataclass(frozen=True)
class CyclicCoderivation:
    """Direct-valued and dual-valued components of a cyclic coderivation."""

    direct: MultiElement
    dual: MultiElement

    @property
    def total(self) -> MultiElement:
        return self.direct + self.dual


def lift_to_cyclic_coderivation(core: MultiElement) -> CyclicCoderivation:
    lifted = lift(core)
    log.debug("[lift] %d core cochains, %d after completion", len(core), len(lifted))
    return CyclicCoderivation(project(lifted), dual_part(lifted))


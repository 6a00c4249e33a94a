"""
Necklace Compositions
=====================

Two-disc diagrams between necklace elements F (outputs n) and G (outputs m):

    inner at (v, j)   G's last output feeds letter j of F's tuple v;
                      both discs bold on that connection's ends, F bold
                      at out_n on the boundary
    outer at (v, j)   F, read at the incoming letter j of tuple v, feeds one
                      of G's outputs out_k (k < m) backwards; G carries the
                      boundary bold at out_m

The necklace product sums inner compositions at every letter and outer
compositions at the letters of the first tuple; the bracket is

    [F, G] = F o G - (-1)^(|F||G|) G o F

on stored degrees. A pre-Calabi-Yau structure is a degree-1 invariant M
with M o M = 0.

MIXED:
------
Over (A, B, phi0) a third shape appears, the closing diagram: G's last
output, a B* vector, fills the closing letter of one of F's outputs out_k
(k < n). Both discs are read at their last outputs. The mixed product sums
the inner and closing diagrams; the bracket takes the same sign as above.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable

from diagrams import (
    Arrow,
    Connection,
    Diagram,
    Disc,
    FilledDiagram,
    evaluate,
    flat_input,
    homs_match,
)
from errors import AmbientError, CarrierMismatch, DegreeMismatch, NotInvariant
from grading import sign
from multimap import (
    Ambient,
    MultiElement,
    Signature,
    check_compatible,
    check_cyclic_invariance,
    linear_combine,
)
from reports import Report, residual_report
from words import IN, OUT

log = logging.getLogger(__name__)

# =============================================================================
# SHAPES
# =============================================================================


def inner_diagram(sigF: Signature, sigG: Signature, v: int, j: int) -> Diagram:
    n, m = len(sigF), len(sigG)
    slot = flat_input(sigF, v, j)
    return Diagram(
        (Disc("F", sigF, Arrow(OUT, n)), Disc("G", sigG, Arrow(OUT, m))),
        (Connection("G", m, "F", slot),),
    )


def outer_diagram(sigF: Signature, sigG: Signature, v: int, j: int, k: int) -> Diagram:
    m = len(sigG)
    slot = flat_input(sigF, v, j)
    return Diagram(
        (Disc("F", sigF, Arrow(IN, slot)), Disc("G", sigG, Arrow(OUT, m))),
        (Connection("G", k, "F", slot),),
    )


def _matches(D: Diagram) -> bool:
    return homs_match(D, D.connections[0])


def _letter_exists(sig: Signature, v: int, j: int) -> bool:
    return v <= len(sig) and j <= len(sig[v - 1]) - 1


def _require_necklace(*elements: MultiElement) -> None:
    first = elements[0]
    for E in elements:
        if E.ambient is Ambient.HOCHSCHILD:
            raise AmbientError("necklace compositions act on multi-output elements")
        if E.ambient is not first.ambient:
            raise CarrierMismatch(f"{E.ambient} and {first.ambient} elements do not compose")
        check_compatible(first, E)


def _evaluate_all(F: MultiElement, G: MultiElement, shapes: Iterable[Diagram]) -> MultiElement:
    result = F.zero(F.degree + G.degree).truncated(G.truncation)
    for D in shapes:
        if not _matches(D):
            continue
        result = result + evaluate(FilledDiagram(D, {"F": F, "G": G}))
    return result


def _inner_shapes(F: MultiElement, G: MultiElement, v: int | None, j: int | None):
    for sigF in F.signatures():
        positions = (
            [(v, j)]
            if v is not None
            else [(vv, jj) for vv in range(1, len(sigF) + 1) for jj in range(1, len(sigF[vv - 1]))]
        )
        for vv, jj in positions:
            if not _letter_exists(sigF, vv, jj):
                continue
            for sigG in G.signatures():
                yield inner_diagram(sigF, sigG, vv, jj)


def _outer_shapes(F: MultiElement, G: MultiElement, v: int, j: int | None):
    for sigF in F.signatures():
        if v > len(sigF):
            continue
        letters = [j] if j is not None else range(1, len(sigF[v - 1]))
        for jj in letters:
            if not _letter_exists(sigF, v, jj):
                continue
            for sigG in G.signatures():
                for k in range(1, len(sigG)):
                    yield outer_diagram(sigF, sigG, v, jj, k)


# =============================================================================
# COMPOSITIONS
# =============================================================================


def necklace_inner(F: MultiElement, G: MultiElement, v: int, j: int) -> MultiElement:
    """Inner composition of G into letter j of tuple v of F."""
    _require_necklace(F, G)
    return _evaluate_all(F, G, _inner_shapes(F, G, v, j))


def necklace_outer(F: MultiElement, G: MultiElement, v: int, j: int) -> MultiElement:
    """Outer composition of F, read at letter j of tuple v, into G."""
    _require_necklace(F, G)
    return _evaluate_all(F, G, _outer_shapes(F, G, v, j))


def necklace_product(F: MultiElement, G: MultiElement) -> MultiElement:
    _require_necklace(F, G)
    inner = _evaluate_all(F, G, _inner_shapes(F, G, None, None))
    outer = _evaluate_all(F, G, _outer_shapes(F, G, 1, None))
    return inner + outer


def _warn_if_not_invariant(*elements: MultiElement) -> None:
    for E in elements:
        if E.ambient is Ambient.NECKLACE and not check_cyclic_invariance(E):
            log.warning("[necklace] operand of degree %d is not cyclically invariant", E.degree)


def necklace_bracket(F: MultiElement, G: MultiElement) -> MultiElement:
    _warn_if_not_invariant(F, G)
    sigma = sign(F.degree * G.degree)
    return linear_combine([1, -sigma], [necklace_product(F, G), necklace_product(G, F)])


def check_pcy(M: MultiElement, max_arity: int | None = None) -> Report:
    """Residual of the necklace Maurer-Cartan equation M o M = 0."""
    if M.ambient is not Ambient.NECKLACE:
        raise AmbientError(f"pre-Calabi-Yau structures are necklace elements, got {M.ambient}")
    if M.degree != 1:
        raise DegreeMismatch(f"a pre-Calabi-Yau structure has degree 1, got {M.degree}")
    if not check_cyclic_invariance(M):
        raise NotInvariant("pre-Calabi-Yau structure is not cyclically invariant")
    residual = necklace_product(M, M)
    if max_arity is not None:
        residual = residual.restrict(lambda e: e.arity <= max_arity)
    report = residual_report("pcy", residual)
    log.info("[pcy] %d residual entries", len(report.residuals))
    return report


# =============================================================================
# MIXED
# =============================================================================


# Mixed elements over (A, B, phi0) have their first n-1 outputs in B and the
# last one in A or in B*. G either lands in an input of F (G valued in A) or
# closes one of F's first n-1 outputs (G valued in B*); F is read at its
# last output, valued in A or in B*. That gives four two-disc families.

VALUES = ("A", "B*")


def closing_diagram(sigF: Signature, sigG: Signature, k: int) -> Diagram:
    """G's last output fills the closing letter of F's out_k (k < n)."""
    n, m = len(sigF), len(sigG)
    return Diagram(
        (Disc("F", sigF, Arrow(OUT, n)), Disc("G", sigG, Arrow(OUT, m))),
        (Connection("G", m, "F", k, OUT),),
    )


def _closing_shapes(F: MultiElement, G: MultiElement):
    for sigF in F.signatures():
        for sigG in G.signatures():
            for k in range(1, len(sigF)):
                yield closing_diagram(sigF, sigG, k)


def valued_in(E: MultiElement, value: str) -> MultiElement:
    """The entries of a mixed element whose last output is an A vector, or a B* vector."""
    if value not in VALUES:
        raise ValueError(f"value must be one of {VALUES}, got {value!r}")
    return E.restrict(lambda e: e.outputs[-1].dual == (value == "B*"))


def _require_mixed(F: MultiElement, G: MultiElement) -> None:
    for E in (F, G):
        if E.ambient is not Ambient.MIXED:
            raise AmbientError(f"mixed compositions take mixed elements, got {E.ambient}")
    check_compatible(F, G)
    if dict(F.phi0 or {}) != dict(G.phi0 or {}):
        raise CarrierMismatch("mixed elements over different object maps")


def mixed_families(F: MultiElement, G: MultiElement) -> dict[tuple[str, str], MultiElement]:
    """Evaluated families keyed by (where G lands, what F is valued in)."""
    _require_mixed(F, G)
    into_input, closing = valued_in(G, "A"), valued_in(G, "B*")
    families = {}
    for value in VALUES:
        F_part = valued_in(F, value)
        families[("input", value)] = _evaluate_all(
            F_part, into_input, _inner_shapes(F_part, into_input, None, None)
        )
        families[("closing", value)] = _evaluate_all(
            F_part, closing, _closing_shapes(F_part, closing)
        )
    for (landing, value), E in families.items():
        log.debug("[mixed] %s/%s: %d entries", landing, value, len(E))
    return families


def mixed_necklace_product(F: MultiElement, G: MultiElement) -> MultiElement:
    families = list(mixed_families(F, G).values())
    return linear_combine([1] * len(families), families)


def mixed_necklace_bracket(F: MultiElement, G: MultiElement) -> MultiElement:
    sigma = sign(F.degree * G.degree)
    return linear_combine(
        [1, -sigma], [mixed_necklace_product(F, G), mixed_necklace_product(G, F)]
    )

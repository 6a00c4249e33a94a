"""
Example Generators
==================

Small quivers with their pre-Calabi-Yau structures, and seeded random
elements for the property checks.

ALGEBRAS:
---------
A finite-dimensional graded algebra, given by its multiplication table,
is an A-infinity structure with one component

    sm(a, b) = (-1)^|a| a b        (a after b, so a.src == b.tgt)

Its pre-Calabi-Yau structure is the one-output element decoded from that
cochain; its completion on A (+) A*[d-1] is the trivial extension.

    point               k
    trivial_extension   k[e]/e^2
    a2_quiver           x -a-> y, no structure
    graded_a2           x -a-> y with |a| = 2, no structure
    exterior            k[e]/e^2 with |e| = 1
    broken              k[e]/e^2 with e.1 = e + 1 (not associative)
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Iterator, Mapping
from fractions import Fraction

from defaults import (
    DEFAULT_MAX_ARITY,
    DEFAULT_MAX_OUTPUTS,
    DEFAULT_SEED,
    RANDOM_ATTEMPTS,
    RANDOM_COEFFICIENTS,
    RANDOM_TERMS,
)
from errors import GradingError
from grading import sign
from morphisms import strict_morphism
from multimap import Ambient, Entry, MultiElement, Truncation, cochain, entry_degree, symmetrize
from quiver import (
    BasisVector,
    FormKind,
    GradedQuiver,
    mixed_form,
    natural_form,
    partner,
    pulled_back_letters,
)
from words import decode_element
from workspace import FormModel, MorphismRecord, Workspace

log = logging.getLogger(__name__)

Table = Mapping[tuple[str, str], Mapping[str, int | Fraction]]

# =============================================================================
# ALGEBRAS
# =============================================================================

POINT = (("x",), [("1", "x", "x", 0)], {("1", "1"): {"1": 1}})

DUAL_NUMBERS = (
    ("x",),
    [("1", "x", "x", 0), ("e", "x", "x", 0)],
    {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1}, ("e", "1"): {"e": 1}},
)

A2 = (("x", "y"), [("a", "x", "y", 0)], {})

GRADED_A2 = (("x", "y"), [("a", "x", "y", 2)], {})

EXTERIOR = (
    ("x",),
    [("1", "x", "x", 0), ("e", "x", "x", 1)],
    {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1}, ("e", "1"): {"e": 1}},
)

BROKEN = (
    DUAL_NUMBERS[0],
    DUAL_NUMBERS[1],
    {**DUAL_NUMBERS[2], ("e", "1"): {"e": 1, "1": 1}},
)

KINDS = {
    "point": POINT,
    "trivial_extension": DUAL_NUMBERS,
    "a2_quiver": A2,
    "graded_a2": GRADED_A2,
    "exterior": EXTERIOR,
    "broken": BROKEN,
}


def algebra_cochain(A: GradedQuiver, table: Table, d: int, truncation: Truncation) -> MultiElement:
    """The product of a graded algebra as a degree-1 cochain on A."""
    terms: dict[Entry, Fraction] = {}
    for (left, right), image in table.items():
        a, b = A.find(left), A.find(right)
        for name, c in image.items():
            product = A.find(name)
            if product.degree != a.degree + b.degree:
                raise GradingError(f"{left} {right} = {name} does not add degrees")
            terms[cochain((a, b), product)] = sign(a.degree) * Fraction(c)
    return MultiElement(Ambient.HOCHSCHILD, A, d, 1, terms, truncation)


def example(
    kind: str, d: int = 1, truncation: Truncation = Truncation(), label: str = "A"
) -> tuple[GradedQuiver, MultiElement, MultiElement]:
    """(quiver, algebra cochain, pre-CY structure) for one of KINDS."""
    if kind not in KINDS:
        raise GradingError(f"unknown example {kind!r}; choose from {', '.join(KINDS)}")
    objects, arrows, table = KINDS[kind]
    if len(arrows) > 4:
        raise GradingError("examples are limited to four basis vectors")
    A = GradedQuiver.build(label, objects, arrows)
    sm = algebra_cochain(A, table, d, truncation)
    M = decode_element(sm, Ambient.NECKLACE)
    log.info("[gen] %s: %d basis vectors, %d structure entries", kind, len(arrows), len(M))
    return A, sm, M


# =============================================================================
# ENTRY ENUMERATION
# =============================================================================

Path = tuple[str, str, tuple[BasisVector, ...]]  # (lt, rt, letters)
Between = Callable[[str, str], tuple[BasisVector, ...]]


def paths(Q: GradedQuiver, length: int) -> list[Path]:
    """Chains a_1 ... a_length with a_i.src == a_(i+1).tgt; length 0 gives the objects."""
    found: list[Path] = [(x, x, ()) for x in Q.objects]
    for _ in range(length):
        found = [
            (lt, a.src, letters + (a,))
            for lt, rt, letters in found
            for a in Q.arrows
            if a.tgt == rt
        ]
    return found


def candidate_entries(
    Q: GradedQuiver,
    d: int,
    degree: int,
    truncation: Truncation,
    outputs_between: Between | None = None,
    last_between: Between | None = None,
) -> Iterator[Entry]:
    """
    Every multi-output entry of the given degree inside the truncation.

    outputs_between(src, tgt) lists the vectors an output may take;
    last_between, when given, replaces it for the last output.
    """
    outputs_between = outputs_between or Q.hom
    last_between = last_between or outputs_between
    max_inputs = truncation.max_inputs
    max_outputs = truncation.max_outputs
    if max_inputs is None:
        max_inputs = DEFAULT_MAX_ARITY
    if max_outputs is None:
        max_outputs = DEFAULT_MAX_OUTPUTS
    by_length = {k: paths(Q, k) for k in range(max_inputs + 1)}
    for n in range(1, max_outputs + 1):
        for lengths in itertools.product(range(max_inputs + 1), repeat=n):
            if sum(lengths) > max_inputs:
                continue
            for chosen in itertools.product(*(by_length[k] for k in lengths)):
                choices = [
                    (last_between if i == n - 1 else outputs_between)(
                        chosen[(i + 1) % n][1], chosen[i][0]
                    )
                    for i in range(n)
                ]
                for outputs in itertools.product(*choices):
                    entry = Entry(tuple(p[2] for p in chosen), tuple(outputs))
                    if entry_degree(entry, d) == degree and truncation.admits(entry):
                        yield entry


# =============================================================================
# RANDOM ELEMENTS
# =============================================================================


def random_invariant_element(
    Q: GradedQuiver,
    d: int,
    degree: int,
    seed: int = DEFAULT_SEED,
    truncation: Truncation = Truncation(3, 2),
    terms: int = RANDOM_TERMS,
    target: GradedQuiver | None = None,
    phi0: Mapping[str, str] | None = None,
) -> MultiElement:
    """
    A sparse cyclically invariant element with small integer coefficients.

    With a target and an object map the element is mixed, its outputs are
    target vectors pulled back to Q.
    """
    rng = random.Random(seed)
    if target is None:
        ambient, between = Ambient.NECKLACE, None
    else:
        ambient = Ambient.MIXED

        def between(src: str, tgt: str) -> tuple[BasisVector, ...]:
            return pulled_back_letters(target, phi0, src, tgt)

    pool = sorted(candidate_entries(Q, d, degree, truncation, between))
    E = MultiElement(ambient, Q, d, degree, {}, truncation, target, phi0)
    for _ in range(RANDOM_ATTEMPTS):
        if not pool:
            break
        picked = rng.sample(pool, min(terms, len(pool)))
        chosen = {e: Fraction(rng.choice(RANDOM_COEFFICIENTS)) for e in picked}
        E = symmetrize(E.with_terms(chosen))
        if not E.is_zero():
            break
    log.debug("[gen] seed %d: %d candidates, %d entries", seed, len(pool), len(E))
    return E


def random_mixed_element(
    A: GradedQuiver,
    B: GradedQuiver,
    phi0: Mapping[str, str],
    d: int,
    degree: int,
    seed: int = DEFAULT_SEED,
    truncation: Truncation = Truncation(3, 2),
    terms: int = RANDOM_TERMS,
) -> MultiElement:
    """
    A sparse element of the mixed space over (A, B, phi0).

    The first n-1 outputs are B vectors pulled back to A; the last one is an
    A vector or the dual of a pulled back B vector. Mixed elements carry no
    cyclic action, so nothing is symmetrized.
    """
    rng = random.Random(seed)

    def between(src: str, tgt: str) -> tuple[BasisVector, ...]:
        return pulled_back_letters(B, phi0, src, tgt)

    def last(src: str, tgt: str) -> tuple[BasisVector, ...]:
        duals = tuple(partner(b, d) for b in pulled_back_letters(B, phi0, tgt, src))
        return A.hom(src, tgt) + duals

    pool = sorted(candidate_entries(A, d, degree, truncation, between, last))
    picked = rng.sample(pool, min(terms, len(pool)))
    chosen = {e: Fraction(rng.choice(RANDOM_COEFFICIENTS)) for e in picked}
    log.debug("[gen] mixed seed %d: %d candidates, %d entries", seed, len(pool), len(chosen))
    return MultiElement(Ambient.MIXED, A, d, degree, chosen, truncation, B, dict(phi0))


# =============================================================================
# WORKSPACES
# =============================================================================

MORPHISM_KINDS = ("identity", "augmentation")


def _structure_entries(ws: Workspace, kind: str, d: int, truncation: Truncation, label: str):
    Q, sm, M = example(kind, d, truncation, label)
    ws.quivers[label] = Q
    ws.elements[f"m_{label}"] = sm
    ws.elements[f"M_{label}"] = M
    ws.forms[f"gamma_{label}"] = natural_form(Q, d)
    ws.form_models[f"gamma_{label}"] = FormModel(kind=FormKind.NATURAL, quiver=label, d=d)
    return Q


def example_workspace(kind: str, d: int = 1, truncation: Truncation = Truncation()) -> Workspace:
    """
    A workspace holding one of KINDS (quiver A, cochain m_A, structure M_A,
    natural form gamma_A), or one of MORPHISM_KINDS:

        identity        Phi = id on the trivial extension, A -> A
        augmentation    Phi: k[e]/e^2 -> k, 1 -> 1, e -> 0, A -> B
    """
    ws = Workspace()
    if kind not in MORPHISM_KINDS:
        _structure_entries(ws, kind, d, truncation, "A")
        return ws
    A = _structure_entries(ws, "trivial_extension", d, truncation, "A")
    if kind == "identity":
        B, target = A, "M_A"
        hom_map = {a: {a: Fraction(1)} for a in A.arrows}
    else:
        B, target = _structure_entries(ws, "point", d, truncation, "B"), "M_B"
        hom_map = {A.find("1"): {B.find("1"): Fraction(1)}}
    phi0 = {x: B.objects[0] for x in A.objects}
    F = strict_morphism(A, B, phi0, hom_map, d, truncation)
    ws.morphisms["Phi"] = MorphismRecord(F, "M_A", target, hom_map, None)
    ws.forms["gamma_Phi"] = mixed_form(A, B, phi0, hom_map, d)
    ws.form_models["gamma_Phi"] = FormModel(kind=FormKind.MIXED, quiver="A", d=d, morphism="Phi")
    log.info("[gen] %s workspace: %s -> %s", kind, A.label, B.label)
    return ws

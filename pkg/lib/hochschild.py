"""
Gerstenhaber Calculus
=====================

Cochains are hochschild MultiElements: entries (w_1 ... w_k) -> y on the
[1]-shifted letters, degree |sy| - sum |sw|.

HOW IT WORKS:
-------------
    f o g = sum_i (-1)^(|g| * (|sw_1| + ... + |sw_(i-1)|)) f(w_<i, g(...), w_>i)

Plugging is done on letters: a g-entry with output y lands in every slot
of an f-entry that holds the letter y. The same routine, restricted to a
set of slots, gives the partial compositions the necklace and morphism
code needs, and fill() plugs degree-0 fillers into every selected slot at
once.

A-infinity morphisms store their outputs pulled back over the source
objects; pushforward() recovers the target vector.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from errors import AmbientError, CarrierMismatch, DegreeMismatch
from grading import sign
from multimap import (
    Ambient,
    Entry,
    MultiElement,
    accumulate,
    check_compatible,
    cochain,
    linear_combine,
)
from quiver import BasisVector, BilinearForm, eval_form, pullback, pushforward
from reports import Report
from words import Word, closed_values, cyclic_residual

log = logging.getLogger(__name__)

Slot = Callable[[Word, int, BasisVector], bool]


def direct_slots(w: Word, i: int, a: BasisVector) -> bool:
    return not a.dual


def dual_slots(w: Word, i: int, a: BasisVector) -> bool:
    return a.dual


# =============================================================================
# COCHAINS
# =============================================================================


def _require_cochains(*elements: MultiElement) -> None:
    for E in elements:
        if E.ambient is not Ambient.HOCHSCHILD:
            raise AmbientError(f"expected a hochschild cochain, got a {E.ambient} element")


def _by_output(G: MultiElement) -> dict[BasisVector, list[tuple[Word, Fraction]]]:
    index: dict[BasisVector, list[tuple[Word, Fraction]]] = defaultdict(list)
    for entry, value in G.terms.items():
        index[entry.outputs[0]].append((entry.blocks[0], value))
    return index


def identity_cochain(E: MultiElement, letters: list[BasisVector]) -> MultiElement:
    """sum over letters of (a) -> a, a degree-0 cochain shaped like E."""
    return MultiElement(
        Ambient.HOCHSCHILD,
        E.quiver,
        E.d,
        0,
        {cochain((a,), a): Fraction(1) for a in letters},
        E.truncation,
    )


def gerstenhaber_circ(F: MultiElement, G: MultiElement, slot: Slot | None = None) -> MultiElement:
    """F o G, or only the slots selected by slot(inputs, position, letter)."""
    _require_cochains(F, G)
    check_compatible(F, G)
    truncation = F.truncation.meet(G.truncation)
    plug = _by_output(G)
    terms: dict[Entry, Fraction] = {}
    for entry, cf in F.terms.items():
        w, y = entry.blocks[0], entry.outputs[0]
        prefix = 0
        for i, a in enumerate(w):
            if a in plug and (slot is None or slot(w, i, a)):
                koszul = sign(G.degree * prefix)
                for wg, cg in plug[a]:
                    new = cochain(w[:i] + wg + w[i + 1 :], y)
                    if truncation.admits(new):
                        accumulate(terms, new, koszul * cf * cg)
            prefix += a.sdeg
    return MultiElement(
        Ambient.HOCHSCHILD,
        F.quiver,
        F.d,
        F.degree + G.degree,
        terms,
        truncation,
        F.target,
        F.phi0,
    )


def gerstenhaber_bracket(F: MultiElement, G: MultiElement) -> MultiElement:
    """[F, G] = F o G - (-1)^(|F||G|) G o F on shifted degrees."""
    return linear_combine(
        [1, -sign(F.degree * G.degree)], [gerstenhaber_circ(F, G), gerstenhaber_circ(G, F)]
    )


def fill(base: MultiElement, slot: Slot, filler: MultiElement) -> MultiElement:
    """
    Plug degree-0 filler entries into every selected slot of every base entry.

    Entries with a selected slot that no filler output matches drop out.
    """
    _require_cochains(base, filler)
    check_compatible(base, filler)
    if filler.degree != 0:
        raise DegreeMismatch(f"fill needs a degree-0 filler, got degree {filler.degree}")
    truncation = base.truncation.meet(filler.truncation)
    plug = _by_output(filler)
    terms: dict[Entry, Fraction] = {}
    for entry, cb in base.terms.items():
        w, y = entry.blocks[0], entry.outputs[0]
        choices = []
        for i, a in enumerate(w):
            if slot(w, i, a):
                choices.append(plug.get(a, []))
            else:
                choices.append([((a,), Fraction(1))])
        for picked in itertools.product(*choices):
            inputs: tuple[BasisVector, ...] = ()
            value = Fraction(cb)
            for letters, c in picked:
                inputs += letters
                value *= c
            new = cochain(inputs, y)
            if truncation.admits(new):
                accumulate(terms, new, value)
    return MultiElement(
        Ambient.HOCHSCHILD,
        base.quiver,
        base.d,
        base.degree,
        terms,
        truncation,
        base.target,
        base.phi0,
    )


def max_arity_view(E: MultiElement, max_arity: int | None) -> MultiElement:
    if max_arity is None:
        return E
    return E.restrict(lambda e: e.arity <= max_arity)


# =============================================================================
# A-INFINITY STRUCTURES
# =============================================================================


def check_stasheff(sm: MultiElement, max_arity: int | None = None) -> Report:
    """Residual sm o sm up to the given arity; must vanish."""
    _require_cochains(sm)
    if sm.degree != 1:
        raise DegreeMismatch(f"an A-infinity structure has degree 1, got {sm.degree}")
    sm = max_arity_view(sm, max_arity)
    residual = max_arity_view(gerstenhaber_circ(sm, sm), max_arity)
    report = Report("stasheff")
    for entry, value in residual.items():
        report.add_entry(entry, value)
    log.info("[stasheff] %d residual entries up to arity %s", len(residual), max_arity)
    return report


def check_almost_cyclic(sm: MultiElement, form: BilinearForm) -> Report:
    """Gamma(sm(w), z) is invariant under rotation of w + (z,) with Koszul signs."""
    _require_cochains(sm)
    if form.d != sm.d:
        raise CarrierMismatch(f"form of d={form.d} against a structure with d={sm.d}")
    report = Report("almost-cyclic")
    for word, rotated, value in cyclic_residual(closed_values(sm, form)):
        report.add_word(" ".join(a.name for a in word) + " ->", rotated, value)
    return report


# =============================================================================
# A-INFINITY MORPHISMS
# =============================================================================


@dataclass(frozen=True)
class AInfMorphism:
    """
    Degree-0 A-infinity morphism.

    Attributes:
    -----------
    phi0 : object map source -> target
    element : degree-0 cochain over the source objects whose outputs are
        target vectors pulled back along phi0
    target_objects : objects of the target quiver
    """

    phi0: Mapping[str, str]
    element: MultiElement
    target_objects: tuple[str, ...]

    def __post_init__(self) -> None:
        _require_cochains(self.element)
        if self.element.degree != 0:
            raise DegreeMismatch(f"A-infinity morphisms have degree 0, not {self.element.degree}")
        for entry in self.element.terms:
            if entry.arity == 0:
                raise AmbientError(f"{entry}: morphism components need at least one input")
            out = entry.outputs[0]
            if self.phi0[out.src] not in self.target_objects:
                raise CarrierMismatch(f"{entry}: output leaves the target objects")

    def linear_part(self) -> dict[BasisVector, list[tuple[BasisVector, Fraction]]]:
        table: dict[BasisVector, list[tuple[BasisVector, Fraction]]] = defaultdict(list)
        for entry, value in self.element.terms.items():
            if entry.arity == 1:
                table[entry.blocks[0][0]].append((pushforward(entry.outputs[0], self.phi0), value))
        return dict(table)


def tensor_states(
    F: AInfMorphism, max_arity: int
) -> dict[tuple[Word, Word], Fraction]:
    """
    F(p_1) ... F(p_k) for all chains of F-entries with total arity <= max_arity.

    Keys are (concatenated inputs, outputs pushed to the target objects).
    Degree-0 components pass letters without signs.
    """
    singles = [
        (e.blocks[0], pushforward(e.outputs[0], F.phi0), c)
        for e, c in F.element.terms.items()
        if e.arity <= max_arity
    ]
    states: dict[tuple[Word, Word], Fraction] = {}
    frontier = {(w, (y,)): c for w, y, c in singles}
    while frontier:
        for key, value in frontier.items():
            states[key] = states.get(key, Fraction(0)) + value
        grown: dict[tuple[Word, Word], Fraction] = {}
        for (inputs, outs), value in frontier.items():
            for w, y, c in singles:
                if len(inputs) + len(w) > max_arity or inputs[-1].src != w[0].tgt:
                    continue
                key = (inputs + w, outs + (y,))
                grown[key] = grown.get(key, Fraction(0)) + value * c
        frontier = grown
    return {k: v for k, v in states.items() if v}


def _apply_after(
    states: dict[tuple[Word, Word], Fraction], G: MultiElement
) -> dict[Entry, Fraction]:
    """G applied to the pushed outputs of each state; outputs pulled back to the inputs."""
    by_inputs: dict[Word, list[tuple[BasisVector, Fraction]]] = defaultdict(list)
    for entry, value in G.terms.items():
        by_inputs[entry.blocks[0]].append((entry.outputs[0], value))
    terms: dict[Entry, Fraction] = {}
    for (inputs, outs), value in states.items():
        for y, c in by_inputs.get(outs, []):
            out = pullback(y, inputs[-1].src, inputs[0].tgt)
            accumulate(terms, cochain(inputs, out), value * c)
    return terms


def check_ainf_morphism(
    F: AInfMorphism, smA: MultiElement, smB: MultiElement, max_arity: int = 4
) -> Report:
    """sum F(.., smA(..), ..) == sum smB(F(..), ..., F(..)) up to max_arity."""
    _require_cochains(smA, smB)
    lhs = gerstenhaber_circ(max_arity_view(F.element, max_arity), max_arity_view(smA, max_arity))
    rhs = _apply_after(tensor_states(F, max_arity), smB)
    terms = dict(lhs.terms)
    for entry, value in rhs.items():
        accumulate(terms, entry, -value)
    report = Report("ainf-morphism")
    for entry, value in sorted(terms.items()):
        if entry.arity <= max_arity:
            report.add_entry(entry, value)
    return report


def compose_ainf_morphisms(F: AInfMorphism, G: AInfMorphism, max_arity: int = 4) -> AInfMorphism:
    """(G o F)(w) = sum over splittings of G(F(p_1), ..., F(p_k))."""
    terms = _apply_after(tensor_states(F, max_arity), G.element)
    phi0 = {x: G.phi0[F.phi0[x]] for x in F.phi0}
    truncation = F.element.truncation.meet(G.element.truncation)
    element = MultiElement(Ambient.HOCHSCHILD, F.element.quiver, F.element.d, 0, terms, truncation)
    return AInfMorphism(phi0, element, G.target_objects)


def morphism_difference(F: AInfMorphism, G: AInfMorphism, max_arity: int = 4) -> Report:
    """Componentwise residual of two morphisms with the same object map."""
    if dict(F.phi0) != dict(G.phi0):
        raise CarrierMismatch("morphisms differ on objects")
    report = Report("morphism-equality")
    diff = max_arity_view(F.element - G.element, max_arity)
    for entry, value in diff.items():
        report.add_entry(entry, value)
    return report


def check_cyclic_morphism(
    F: AInfMorphism, gamma: BilinearForm, Gamma: BilinearForm, max_arity: int = 4
) -> Report:
    """
    Gamma(F1 x, F1 y) == gamma(x, y) on the source carrier, and for words of
    length >= 3 the sum over two-piece splittings of Gamma(F(p), F(q)) is 0.
    """
    report = Report("cyclic-morphism")

    def pair(u: BasisVector, v: BasisVector) -> Fraction:
        return eval_form(Gamma, u, v)

    linear = F.linear_part()
    for x in gamma.carrier:
        for y in gamma.carrier:
            images = [(u, cu, v, cv) for u, cu in linear.get(x, []) for v, cv in linear.get(y, [])]
            value = sum((cu * cv * pair(u, v) for u, cu, v, cv in images), Fraction(0))
            residual = value - eval_form(gamma, x, y)
            report.add_word("pairing", (x, y), residual, check="cyclic-morphism-linear")

    pieces = [
        (e.blocks[0], pushforward(e.outputs[0], F.phi0), c)
        for e, c in F.element.terms.items()
        if e.arity < max_arity
    ]
    sums: dict[Word, Fraction] = {}
    for (p, u, cp), (q, v, cq) in itertools.product(pieces, pieces):
        if len(p) + len(q) < 3 or len(p) + len(q) > max_arity or p[-1].src != q[0].tgt:
            continue
        value = cp * cq * pair(u, v)
        if value:
            sums[p + q] = sums.get(p + q, Fraction(0)) + value
    for word, value in sorted(sums.items()):
        report.add_word("split sum", word, value, check="cyclic-morphism-higher")
    return report

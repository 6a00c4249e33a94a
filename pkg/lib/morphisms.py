"""
Pre-Calabi-Yau Morphisms
========================

A morphism A -> B is an object map plus a degree-0 invariant mixed element
F whose outputs are B vectors pulled back to the objects of A. Everything
here is computed on j-images, where the star-shaped diagrams of the
definitions become fills of cochains:

    jF      inputs A and B*, value in B        (F read at its last output)
    c_in F  inputs A and B*, value in A*       (F read at an incoming letter)

MORPHISM EQUATION:
------------------
    multinecklace   jF o_direct fill(jM_A, A* <- c_in F)
    pre composition fill(jM_B, B <- jF) + jF o_dual fill(c_in M_B, B <- jF)

Both sides are decoded back to mixed elements; the residual is their
difference. M_B enters pulled back along the object map.

COMPOSITION:
------------
G o F puts a G disc in the centre and F discs on its inputs, and every
F disc's dual inputs may again carry G discs read at an incoming letter.
That tree is built as a fixed point:

    F_0      = jF with no dual inputs
    G_k      = fill(c_in G, B <- F_k)
    F_(k+1)  = fill(jF, B* <- G_k)
    G o F    = decode(fill(jG, B <- F_k))

Each round adds at least one output, so max_outputs + 1 rounds reach
every term inside the truncation.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, replace
from fractions import Fraction

from defaults import DEFAULT_MAX_OUTPUTS
from errors import AmbientError, CarrierMismatch, DegreeMismatch, NotInvariant
from grading import rotation_sign, sign
from hochschild import direct_slots, dual_slots, fill, gerstenhaber_circ
from jmap import incoming_readings, map_j
from multimap import (
    Ambient,
    Entry,
    MultiElement,
    Truncation,
    accumulate,
    check_cyclic_invariance,
    cochain,
    symmetrize,
)
from quiver import (
    BasisVector,
    GradedQuiver,
    HomMap,
    ObjectMap,
    pair_sign,
    partner,
    pullback,
    pushforward,
)
from reports import Report, residual_report
from words import Word, decode_element

log = logging.getLogger(__name__)

# =============================================================================
# PULLBACK
# =============================================================================


def pull_back_element(E: MultiElement, phi0: ObjectMap, A: GradedQuiver) -> MultiElement:
    """
    Cochains over the objects of B viewed over the objects of A.

    Every lift of the object chain of an entry along phi0 contributes one
    copy; letters keep their names and degrees.
    """
    if E.ambient is not Ambient.HOCHSCHILD:
        raise AmbientError("only cochains are pulled back")
    preimages: dict[str, list[str]] = defaultdict(list)
    for x in A.objects:
        preimages[phi0[x]].append(x)
    terms: dict[Entry, Fraction] = {}
    for entry, value in E.terms.items():
        w, y = entry.blocks[0], entry.outputs[0]
        chain = [y.tgt] + [a.src for a in w]
        for lifted in itertools.product(*(preimages[x] for x in chain)):
            letters = tuple(
                pullback(a, lifted[i + 1], lifted[i]) for i, a in enumerate(w)
            )
            out = pullback(y, lifted[-1], lifted[0])
            accumulate(terms, cochain(letters, out), value)
    return MultiElement(
        Ambient.HOCHSCHILD, A, E.d, E.degree, terms, E.truncation, E.quiver, phi0
    )


# =============================================================================
# MORPHISMS
# =============================================================================


@dataclass(frozen=True)
class PreCYMorphism:
    """
    Attributes:
    -----------
    phi0 : object map source -> target
    source, target : GradedQuiver
    element : mixed MultiElement of degree 0 over the source objects
    """

    phi0: Mapping[str, str]
    source: GradedQuiver
    target: GradedQuiver
    element: MultiElement

    def __post_init__(self) -> None:
        E = self.element
        if E.ambient is not Ambient.MIXED:
            raise AmbientError(f"a pre-CY morphism is a mixed element, got {E.ambient}")
        if E.degree != 0:
            raise DegreeMismatch(f"a pre-CY morphism has degree 0, got {E.degree}")
        for entry in E.terms:
            if entry.arity == 0:
                raise AmbientError(f"{entry}: morphism components need at least one input")
            for o in entry.outputs:
                image = pushforward(o, self.phi0)
                if o.dual or image not in self.target.hom(image.src, image.tgt):
                    raise CarrierMismatch(f"{entry}: outputs must be target vectors")
        if not check_cyclic_invariance(E):
            raise NotInvariant("pre-CY morphism element is not cyclically invariant")

    @property
    def d(self) -> int:
        return self.element.d

    def j(self) -> MultiElement:
        return map_j(self.element)

    def incoming(self) -> MultiElement:
        return incoming_readings(self.element)

    def linear_part(self) -> dict[BasisVector, dict[BasisVector, Fraction]]:
        """Hom maps a -> sum lambda b read off the one-input components of jF."""
        table: dict[BasisVector, dict[BasisVector, Fraction]] = defaultdict(dict)
        for entry, value in self.j().terms.items():
            w = entry.blocks[0]
            if len(w) == 1 and not w[0].dual:
                table[w[0]][pushforward(entry.outputs[0], self.phi0)] = value
        return dict(table)


def _mixed(A: GradedQuiver, B: GradedQuiver, phi0: ObjectMap, d: int, truncation, terms):
    return MultiElement(Ambient.MIXED, A, d, 0, terms, truncation, B, dict(phi0))


def identity_morphism(
    A: GradedQuiver, d: int, truncation: Truncation = Truncation()
) -> PreCYMorphism:
    """Single-input components e -> e with coefficient (-1)^(|e| + d)."""
    terms = {Entry(((e,),), (e,)): Fraction(sign(e.degree + d)) for e in A.arrows}
    phi0 = {x: x for x in A.objects}
    return PreCYMorphism(phi0, A, A, _mixed(A, A, phi0, d, truncation, terms))


def strict_morphism(
    A: GradedQuiver,
    B: GradedQuiver,
    phi0: ObjectMap,
    hom_map: HomMap,
    d: int,
    truncation: Truncation = Truncation(),
) -> PreCYMorphism:
    """The morphism whose only components are the degree-0 hom maps a -> sum lambda b."""
    terms: dict[Entry, Fraction] = {}
    for a, image in hom_map.items():
        for b, coefficient in image.items():
            if b.degree != a.degree:
                raise DegreeMismatch(f"hom map sends {a} to {b} of another degree")
            out = pullback(b, a.src, a.tgt)
            accumulate(terms, Entry(((a,),), (out,)), sign(a.degree + d) * Fraction(coefficient))
    return PreCYMorphism(dict(phi0), A, B, _mixed(A, B, phi0, d, truncation, terms))


def is_strict(F: PreCYMorphism) -> bool:
    return all(entry.n == 1 and entry.arity == 1 for entry in F.element.terms)


# =============================================================================
# MORPHISM EQUATION
# =============================================================================


def _pulled(E: MultiElement, F: PreCYMorphism) -> MultiElement:
    return pull_back_element(E, F.phi0, F.source)


def _check_structure(M: MultiElement, Q: GradedQuiver, d: int) -> None:
    if M.ambient is not Ambient.NECKLACE:
        raise AmbientError(f"structures are necklace elements, got {M.ambient}")
    if M.d != d:
        raise CarrierMismatch(f"structure with d={M.d} against a morphism with d={d}")
    if set(M.quiver.objects) != set(Q.objects):
        raise CarrierMismatch(f"structure over {M.quiver.label} does not match {Q.label}")


def check_structures(F: PreCYMorphism, M_A: MultiElement, M_B: MultiElement) -> None:
    _check_structure(M_A, F.source, F.d)
    _check_structure(M_B, F.target, F.d)


def multinecklace_cochains(F: PreCYMorphism, M_A: MultiElement) -> MultiElement:
    inner = fill(map_j(M_A), dual_slots, F.incoming())
    return gerstenhaber_circ(F.j(), inner, direct_slots)


def pre_compose_cochains(M_B: MultiElement, F: PreCYMorphism) -> MultiElement:
    jF = F.j()
    through_outputs = fill(_pulled(map_j(M_B), F), direct_slots, jF)
    read_backwards = fill(_pulled(incoming_readings(M_B), F), direct_slots, jF)
    return through_outputs + gerstenhaber_circ(jF, read_backwards, dual_slots)


def _as_mixed(cochains: MultiElement, F: PreCYMorphism) -> MultiElement:
    decoded = decode_element(cochains, Ambient.MIXED)
    return replace(decoded, quiver=F.source, target=F.target, phi0=dict(F.phi0))


def _symmetrized(E: MultiElement, what: str) -> MultiElement:
    if not check_cyclic_invariance(E):
        log.warning("[%s] decoded sum is not invariant, symmetrizing", what)
    return symmetrize(E)


def multinecklace(F: PreCYMorphism, M_A: MultiElement) -> MultiElement:
    _check_structure(M_A, F.source, F.d)
    return _symmetrized(_as_mixed(multinecklace_cochains(F, M_A), F), "multinecklace")


def pre_compose(M_B: MultiElement, F: PreCYMorphism) -> MultiElement:
    _check_structure(M_B, F.target, F.d)
    return _symmetrized(_as_mixed(pre_compose_cochains(M_B, F), F), "pre-compose")


def check_pcy_morphism(F: PreCYMorphism, M_A: MultiElement, M_B: MultiElement) -> Report:
    """Residual of multinecklace(F, M_A) - pre_compose(M_B, F)."""
    check_structures(F, M_A, M_B)
    difference = multinecklace_cochains(F, M_A) - pre_compose_cochains(M_B, F)
    report = residual_report("pcy-morphism", _as_mixed(difference, F))
    log.info("[pcy-morphism] %d residual entries", len(report.residuals))
    return report


# =============================================================================
# COMPOSITION
# =============================================================================


def _unbounded(E: MultiElement) -> MultiElement:
    return replace(E, terms=dict(E.terms), truncation=Truncation())


def _within(E: MultiElement, bound: Truncation) -> MultiElement:
    def keep(entry: Entry) -> bool:
        w = entry.blocks[0]
        direct = sum(not a.dual for a in w)
        dual = sum(a.dual for a in w)
        if bound.max_inputs is not None and direct > bound.max_inputs:
            return False
        return bound.max_outputs is None or dual <= bound.max_outputs

    return E.restrict(keep)


def pcy_compose(F: PreCYMorphism, G: PreCYMorphism) -> PreCYMorphism:
    """G o F for F: A -> B and G: B -> C."""
    if F.target.objects != G.source.objects or F.d != G.d:
        raise CarrierMismatch("morphisms do not compose: target of F is not the source of G")
    bound = F.element.truncation.meet(G.element.truncation)
    jF = _unbounded(F.j())
    jG = _unbounded(_pulled(G.j(), F))
    cG = _unbounded(_pulled(G.incoming(), F))

    current = _within(jF.restrict(lambda e: not any(a.dual for a in e.blocks[0])), bound)
    depth_bound = DEFAULT_MAX_OUTPUTS if bound.max_outputs is None else bound.max_outputs
    rounds = depth_bound + 1
    for depth in range(rounds):
        backwards = _within(fill(cG, direct_slots, current), bound)
        grown = _within(fill(jF, dual_slots, backwards), bound)
        if grown.terms == current.terms:
            log.debug("[compose] fixed point after %d rounds", depth + 1)
            break
        current = grown

    composite = fill(jG, direct_slots, current)
    phi0 = {x: G.phi0[F.phi0[x]] for x in F.source.objects}
    decoded = decode_element(composite, Ambient.MIXED)
    element = replace(
        decoded, quiver=F.source, target=G.target, phi0=phi0, truncation=bound
    )
    return PreCYMorphism(phi0, F.source, G.target, _symmetrized(element, "compose"))


def morphism_residual(F: PreCYMorphism, G: PreCYMorphism) -> Report:
    """Componentwise difference of two morphisms with the same ends."""
    if dict(F.phi0) != dict(G.phi0):
        raise CarrierMismatch("morphisms differ on objects")
    return residual_report("morphism-equality", F.element - G.element)


# =============================================================================
# GOOD AND NICE
# =============================================================================


def _closed(cochains: MultiElement, incoming: bool) -> dict[tuple[Word, int], Fraction]:
    """Omega per (smallest rotation, index of the closing letter in it)."""
    values: dict[tuple[Word, int], Fraction] = {}
    s = -1 if incoming else 1
    for entry, value in cochains.terms.items():
        w, y = entry.blocks[0], entry.outputs[0]
        z = partner(y, cochains.d)
        word = w + (z,)
        omega = s * pair_sign(y, z, cochains.d) * Fraction(value)
        L = len(word)
        r = min(range(L), key=lambda k: word[k:] + word[:k])
        canonical = word[r:] + word[:r]
        omega *= rotation_sign([a.sdeg for a in word], r)
        key = (canonical, (L - 1 - r) % L)
        values[key] = values.get(key, Fraction(0)) + omega
    return values


def check_good_nice(
    F: PreCYMorphism, M_A: MultiElement, M_B: MultiElement, mode: str = "good"
) -> Report:
    """
    Compare the two diagram families through their closed values.

    Parameters:
    -----------
    mode : "good" compares the values at the first closing of each kind;
        "nice" asks every closing of either kind to carry the same value.
    """
    if mode not in ("good", "nice"):
        raise ValueError(f"mode must be good or nice, got {mode!r}")
    check_structures(F, M_A, M_B)
    jF = F.j()
    linear = jF.restrict(lambda e: len(e.blocks[0]) == 1 and not e.blocks[0][0].dual)
    incoming_linear = F.incoming().restrict(
        lambda e: len(e.blocks[0]) == 1 and e.blocks[0][0].dual
    )
    lhs = gerstenhaber_circ(
        linear, fill(map_j(M_A), dual_slots, F.incoming()), direct_slots
    )
    rhs = gerstenhaber_circ(
        incoming_linear,
        fill(_pulled(incoming_readings(M_B), F), direct_slots, jF),
        dual_slots,
    )
    left, right = _closed(lhs, incoming=False), _closed(rhs, incoming=True)

    report = Report(f"morphism-{mode}")
    words = sorted({w for w, _ in left} | {w for w, _ in right})
    for word in words:
        duals = [i for i, a in enumerate(word) if a.dual]
        directs = [i for i, a in enumerate(word) if not a.dual]
        if not duals or not directs:
            continue
        if mode == "good":
            first_dual = left.get((word, duals[0]), Fraction(0))
            first_direct = right.get((word, directs[0]), Fraction(0))
            diff = first_dual - first_direct
            report.add_word("first closings", word, diff)
            continue
        values = [left.get((word, i), Fraction(0)) for i in duals]
        values += [right.get((word, i), Fraction(0)) for i in directs]
        for other in values[1:]:
            report.add_word("closings", word, other - values[0])
    return report


"""
Boundary Constructions
======================

A pre-CY morphism Phi: (A, M_A) -> (B, M_B) induces an A-infinity structure
on A (+) B*[d-1] together with A-infinity morphisms to the two boundaries:

                A (+) B*[d-1]
           phi_A /         \\ phi_B
    A (+) A*[d-1]           B (+) B*[d-1]

STRUCTURE:
----------
    valued in A    fill(jM_A, A* slots <- c_in Phi)
    valued in B*   fill(dual half of the completion of jM_B, B slots <- jPhi)

with jM_B taken over the objects of A. For a strict Phi, jPhi is the hom
map a -> sum lambda b and c_in Phi its transpose b* -> sum lambda a*;
strict_boundary builds these from the hom maps and general_boundary
from the morphism's readings, and the two agree.

MAPS:
-----
    phi_A   identity on A letters,  c_in Phi on B* letters
    phi_B   jPhi on A letters,      identity on B* letters
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from errors import NotAMorphism
from hochschild import (
    AInfMorphism,
    check_ainf_morphism,
    check_almost_cyclic,
    check_cyclic_morphism,
    check_stasheff,
    compose_ainf_morphisms,
    direct_slots,
    dual_slots,
    fill,
    identity_cochain,
    morphism_difference,
)
from jmap import dual_part, lift, map_j
from morphisms import (
    PreCYMorphism,
    check_good_nice,
    check_pcy_morphism,
    check_structures,
    pull_back_element,
    strict_morphism,
)
from multimap import Ambient, Entry, MultiElement, Truncation, accumulate, cochain
from quiver import (
    BilinearForm,
    GradedQuiver,
    HomMap,
    ObjectMap,
    boundary_quiver,
    mixed_form,
    mixed_quiver,
    natural_form,
    partner,
    pullback,
)
from reports import Report

log = logging.getLogger(__name__)

# =============================================================================
# HAT MORPHISMS
# =============================================================================


@dataclass(frozen=True)
class HatMorphism:
    """
    Attributes:
    -----------
    structure : cochains on the mixed quiver A (+) B*[d-1]
    phi_A, phi_B : A-infinity morphisms to the two boundary quivers
    source_structure, target_structure : the cyclic structures on the boundaries
    form : mixed pairing, when the structure is known to be almost cyclic
    """

    morphism: PreCYMorphism
    structure: MultiElement
    phi_A: AInfMorphism
    phi_B: AInfMorphism
    source_structure: MultiElement
    target_structure: MultiElement
    form: BilinearForm | None = None

    @property
    def source(self) -> GradedQuiver:
        return self.morphism.source

    @property
    def target(self) -> GradedQuiver:
        return self.morphism.target


def _cochains(Q: GradedQuiver, d: int, degree: int, terms: dict[Entry, Fraction]) -> MultiElement:
    return MultiElement(Ambient.HOCHSCHILD, Q, d, degree, terms, Truncation())


def _completion(M: MultiElement, Q: GradedQuiver) -> MultiElement:
    return replace(lift(map_j(M)), quiver=boundary_quiver(Q, M.d))


def _assemble(
    F: PreCYMorphism,
    M_A: MultiElement,
    M_B: MultiElement,
    to_B: MultiElement,
    to_A_dual: MultiElement,
    form: BilinearForm | None,
) -> HatMorphism:
    """Structure and maps from jPhi (to_B) and c_in Phi (to_A_dual)."""
    A, B, d = F.source, F.target, F.d
    Q = mixed_quiver(A, B, F.phi0, d)
    completion_B = pull_back_element(dual_part(lift(map_j(M_B))), F.phi0, A)
    valued_in_A = fill(map_j(M_A), dual_slots, to_A_dual)
    valued_in_B_dual = fill(completion_B, direct_slots, to_B)
    structure = replace(valued_in_A + valued_in_B_dual, quiver=Q, target=None, phi0=None)

    b_duals = [v for v in Q.arrows if v.dual]
    identity_on_A = identity_cochain(valued_in_A, list(A.arrows))
    identity_on_B_dual = identity_cochain(valued_in_A, b_duals)
    phi_A = AInfMorphism(
        {x: x for x in A.objects},
        replace(identity_on_A + to_A_dual, target=None, phi0=None),
        A.objects,
    )
    phi_B = AInfMorphism(
        dict(F.phi0),
        replace(identity_on_B_dual + to_B, target=None, phi0=None),
        B.objects,
    )
    log.info("[boundary] %d structure cochains on %s", len(structure), Q.label)
    return HatMorphism(
        F, structure, phi_A, phi_B, _completion(M_A, A), _completion(M_B, B), form
    )


def _require_morphism(F: PreCYMorphism, M_A: MultiElement, M_B: MultiElement) -> None:
    report = check_pcy_morphism(F, M_A, M_B)
    if not report.passed:
        raise NotAMorphism(
            f"{len(report.residuals)} residual entries in the morphism equation, "
            f"first at arity {report.min_arity()}"
        )


# =============================================================================
# STRICT CASE
# =============================================================================


def hom_map_cochains(
    A: GradedQuiver, phi0: ObjectMap, hom_map: HomMap, d: int
) -> tuple[MultiElement, MultiElement]:
    """(a -> sum lambda b, b* -> sum lambda a*) as cochains over the objects of A."""
    forward: dict[Entry, Fraction] = {}
    transpose: dict[Entry, Fraction] = {}
    for a, image in hom_map.items():
        for b, coefficient in image.items():
            lifted = pullback(b, a.src, a.tgt)
            accumulate(forward, cochain((a,), lifted), coefficient)
            accumulate(transpose, cochain((partner(lifted, d),), partner(a, d)), coefficient)
    return _cochains(A, d, 0, forward), _cochains(A, d, 0, transpose)


def strict_boundary(
    A: GradedQuiver,
    B: GradedQuiver,
    phi0: ObjectMap,
    hom_map: HomMap,
    M_A: MultiElement,
    M_B: MultiElement,
) -> HatMorphism:
    """Boundary of the strict morphism given by the hom maps."""
    F = strict_morphism(A, B, phi0, hom_map, M_A.d)
    check_structures(F, M_A, M_B)
    _require_morphism(F, M_A, M_B)
    forward, transpose = hom_map_cochains(A, phi0, hom_map, M_A.d)
    form = mixed_form(A, B, phi0, hom_map, M_A.d)
    return _assemble(F, M_A, M_B, forward, transpose, form)


# =============================================================================
# GENERAL CASE
# =============================================================================


def general_boundary(F: PreCYMorphism, M_A: MultiElement, M_B: MultiElement) -> HatMorphism:
    """
    Boundary of an arbitrary pre-CY morphism.

    The mixed pairing is attached only when F is good; it is built from the
    one-input components of F.
    """
    check_structures(F, M_A, M_B)
    _require_morphism(F, M_A, M_B)
    form = None
    if check_good_nice(F, M_A, M_B, "good").passed:
        form = mixed_form(F.source, F.target, F.phi0, F.linear_part(), F.d)
    else:
        log.info("[boundary] morphism is not good, no mixed pairing attached")
    return _assemble(F, M_A, M_B, F.j(), F.incoming(), form)


# =============================================================================
# CHECKS
# =============================================================================


def check_hat(h: HatMorphism, max_arity: int = 4) -> Report:
    """Stasheff, the two morphism equations and, with a form, cyclicity."""
    report = Report("hat")
    report.extend(check_stasheff(h.structure, max_arity))
    report.extend(check_ainf_morphism(h.phi_A, h.structure, h.source_structure, max_arity))
    report.extend(check_ainf_morphism(h.phi_B, h.structure, h.target_structure, max_arity))
    if h.form is None:
        report.note("no mixed pairing: cyclicity not checked")
        return report
    d = h.morphism.d
    report.extend(check_almost_cyclic(h.structure, h.form))
    report.extend(check_cyclic_morphism(h.phi_A, h.form, natural_form(h.source, d), max_arity))
    report.extend(check_cyclic_morphism(h.phi_B, h.form, natural_form(h.target, d), max_arity))
    return report


def boundary_difference(left: HatMorphism, right: HatMorphism) -> Report:
    """Componentwise comparison of two hat morphisms with the same ends."""
    report = Report("boundary-difference")
    for entry, value in (left.structure - right.structure).items():
        report.add_entry(entry, value, check="structure")
    report.extend(morphism_difference(left.phi_A, right.phi_A))
    report.extend(morphism_difference(left.phi_B, right.phi_B))
    return report


def check_hat_composable(
    h1: HatMorphism,
    h2: HatMorphism,
    chi_A: AInfMorphism,
    chi_C: AInfMorphism,
    max_arity: int = 4,
) -> Report:
    """
    h1: A -> B, h2: B -> C, chi_A: A (+) C* -> A (+) B*, chi_C: A (+) C* -> B (+) C*.

    Both composites land in B (+) B*[d-1]: through h1's map to its target
    and through h2's map to its source.
    """
    through_first = compose_ainf_morphisms(chi_A, h1.phi_B, max_arity)
    through_second = compose_ainf_morphisms(chi_C, h2.phi_A, max_arity)
    report = morphism_difference(through_first, through_second, max_arity)
    log.info("[hat-composable] %d residual entries", len(report.residuals))
    return report

"""
Necklace / Gerstenhaber Correspondence
======================================

Checks that the necklace engine and the Gerstenhaber engine agree through
j, and the passage between pre-Calabi-Yau structures and cyclic
A-infinity structures on the boundary quiver.

HOW IT WORKS:
-------------
    j(F o_inn(v,j) G) = j(F) o_(v,j) j(G)
    j(F o_out(v,j) G) = -(-1)^(|F||G|) j(G) o lift_(v,j)(j(F))

The left sides go through the diagram engine, the right sides through
gerstenhaber_circ; nothing is shared between the two paths except the
letter conventions.

A pre-Calabi-Yau structure M gives the cochain j(M) with direct values;
lift() completes it to a cyclic structure on A (+) A*[d-1]. The inverse
decodes the direct-valued part.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from errors import AmbientError, DegenerateForm, DegreeMismatch, NotInvariant
from grading import sign
from hochschild import check_stasheff, gerstenhaber_bracket, gerstenhaber_circ
from jmap import lift, lift_slot, lift_to_cyclic_coderivation, map_j, project, segments
from multimap import Ambient, MultiElement, check_cyclic_invariance
from necklace import necklace_bracket, necklace_inner, necklace_outer
from quiver import BilinearForm, GradedQuiver, boundary_quiver, is_nondegenerate, natural_form
from reports import Report
from words import Word, closed_values, cyclic_residual, decode_element

log = logging.getLogger(__name__)

# =============================================================================
# INTERTWINING
# =============================================================================


def slot_at(v: int, j: int):
    """Slot selector for letter j of tuple v of a j-image word."""

    def chosen(w: Word, i: int, a) -> bool:
        runs = segments(w)
        if v > len(runs):
            return False
        start, stop = runs[len(runs) - v]
        return i == start + j - 1 and i < stop

    return chosen


def _compare(report: Report, check: str, left: MultiElement, right: MultiElement) -> None:
    for entry, value in (left - right).items():
        report.add_entry(entry, value, check=check)


def check_j_intertwines(F: MultiElement, G: MultiElement, v: int, j: int) -> Report:
    """Both intertwining identities at letter j of tuple v."""
    report = Report("j-intertwines")
    jF, jG = map_j(F), map_j(G)
    sigma = sign(F.degree * G.degree)

    inner = map_j(necklace_inner(F, G, v, j))
    _compare(report, "j-inner", inner, gerstenhaber_circ(jF, jG, slot_at(v, j)))

    outer = map_j(necklace_outer(F, G, v, j))
    plugged = gerstenhaber_circ(jG, lift_slot(jF, v, j)).scaled(-sigma)
    _compare(report, "j-outer", outer, plugged)
    return report


def bracket_compare(F: MultiElement, G: MultiElement) -> Report:
    """check_j_intertwines at every letter position F's signatures reach."""
    report = Report("bracket-compare")
    positions = sorted(
        {
            (v, j)
            for sig in F.signatures()
            for v in range(1, len(sig) + 1)
            for j in range(1, len(sig[v - 1]))
        }
    )
    for v, j in positions:
        report.extend(check_j_intertwines(F, G, v, j))
    log.info("[bracket-compare] %d positions, %d residuals", len(positions), len(report.residuals))
    return report


def check_boundary_bracket(F: MultiElement, G: MultiElement) -> Report:
    """The direct part of the bracket of the cyclic completions is j([F, G])."""
    report = Report("boundary-bracket")
    boundary = project(gerstenhaber_bracket(lift(map_j(F)), lift(map_j(G))))
    _compare(report, "boundary-bracket", map_j(necklace_bracket(F, G)), boundary)
    return report


# =============================================================================
# CYCLIC CODERIVATIONS
# =============================================================================


def check_cyclic_coderivation(total: MultiElement) -> Report:
    """Closed values of a cochain on the boundary quiver are rotation invariant."""
    report = Report("cyclic-coderivation")
    for word, rotated, value in cyclic_residual(closed_values(total)):
        report.add_word(" ".join(a.name for a in word) + " ->", rotated, value)
    return report


# =============================================================================
# PRE-CALABI-YAU <-> CYCLIC A-INFINITY
# =============================================================================


@dataclass(frozen=True)
class CyclicStructure:
    sm: MultiElement
    form: BilinearForm


def pcy_to_cyclic_ainf(M: MultiElement) -> CyclicStructure:
    """Cyclic A-infinity structure on A (+) A*[d-1] induced by M."""
    if M.ambient is not Ambient.NECKLACE:
        raise AmbientError(f"expected a necklace element, got {M.ambient}")
    if M.degree != 1:
        raise DegreeMismatch(f"a pre-Calabi-Yau structure has degree 1, got {M.degree}")
    if not check_cyclic_invariance(M):
        raise NotInvariant("pre-Calabi-Yau structure is not cyclically invariant")
    form = natural_form(M.quiver, M.d)
    if not is_nondegenerate(form):
        raise DegenerateForm(f"natural form on {M.quiver.label} is degenerate")
    coder = lift_to_cyclic_coderivation(map_j(M))
    sm = replace(coder.total, quiver=boundary_quiver(M.quiver, M.d))
    return CyclicStructure(sm, form)


def restricts_to_direct(sm: MultiElement) -> bool:
    return all(not e.outputs[0].dual for e in sm.terms if not any(a.dual for a in e.blocks[0]))


def cyclic_ainf_to_pcy(sm: MultiElement, A: GradedQuiver) -> MultiElement:
    """The pre-Calabi-Yau structure whose cyclic completion is sm."""
    if not restricts_to_direct(sm):
        raise AmbientError("structure does not restrict to A")
    failures = cyclic_residual(closed_values(sm))
    if failures:
        raise NotInvariant(f"structure is not cyclic ({len(failures)} failing rotations)")
    M = decode_element(project(sm), Ambient.NECKLACE)
    return replace(M, quiver=A)


def check_equivalence(M: MultiElement, max_arity: int | None = None) -> Report:
    """Stasheff on the induced cyclic structure, reported next to its round trip."""
    structure = pcy_to_cyclic_ainf(M)
    report = check_stasheff(structure.sm, max_arity)
    back = cyclic_ainf_to_pcy(structure.sm, M.quiver)
    _compare(report, "pcy-round-trip", back, M)
    return report

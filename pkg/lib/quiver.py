"""
Graded Quivers and Bilinear Forms
=================================

A graded quiver is a finite set of objects with a finite homogeneous basis
for every hom space. No composition is assumed.

BASIS VECTORS:
--------------
A BasisVector with src=x and tgt=y lives in yA_x. The same dataclass is used
for duals (dual=True) and for vectors of another quiver pulled back along an
object map (their `quiver` field names the owner, their src/tgt are objects
of the quiver they were pulled back to).

    direct e   in yA_x          degree |e|
    dual   e*  in xA*_y[d-1]    degree -|e| - (d - 1)

partner() flips between the two and is an involution.

BILINEAR FORMS:
---------------
Forms are explicit tables on the [1]-shifted letters of a carrier quiver.

    natural   Gamma(s e, t e*) = (-1)^(|e|(d+1))
              Gamma(t e*, s e) = (-1)^(|e|+d+1)
    mixed     Gamma(t f, s a)  = (-1)^(|tf|+1) f(Phi(a))

Both are graded antisymmetric on letter degrees.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from errors import CarrierMismatch, QuiverError
from grading import letter_degree, sign

log = logging.getLogger(__name__)

HomMap = Mapping["BasisVector", Mapping["BasisVector", Fraction]]
ObjectMap = Mapping[str, str]

# =============================================================================
# BASIS VECTORS
# =============================================================================


@dataclass(frozen=True, order=True)
class BasisVector:
    """One basis element of a hom space (or of its dual)."""

    name: str
    src: str
    tgt: str
    degree: int
    dual: bool = False
    quiver: str = "A"

    @property
    def sdeg(self) -> int:
        """Degree as a letter of the [1]-shifted space."""
        return letter_degree(self.degree)

    def __str__(self) -> str:
        return f"{self.name}:{self.src}->{self.tgt}"


def partner(v: BasisVector, d: int) -> BasisVector:
    """The dual of a direct vector, or the direct vector of a dual, in [d-1] grading."""
    name = v.name[:-1] if v.dual else v.name + "*"
    return BasisVector(
        name=name,
        src=v.tgt,
        tgt=v.src,
        degree=-v.degree - d + 1,
        dual=not v.dual,
        quiver=v.quiver,
    )


def pullback(b: BasisVector, src: str, tgt: str) -> BasisVector:
    """A vector of another quiver viewed over objects src, tgt of this one."""
    return BasisVector(b.name, src, tgt, b.degree, b.dual, b.quiver)


def pushforward(v: BasisVector, phi0: ObjectMap) -> BasisVector:
    """Inverse of pullback along phi0."""
    return BasisVector(v.name, phi0[v.src], phi0[v.tgt], v.degree, v.dual, v.quiver)


def pair_sign(x: BasisVector, y: BasisVector, d: int) -> int:
    """Natural pairing of two letters; nonzero only on partner pairs."""
    if y != partner(x, d):
        return 0
    if x.dual:
        return sign(y.degree + d + 1)
    return sign(x.degree * (d + 1))


# =============================================================================
# GRADED QUIVER
# =============================================================================


@dataclass(frozen=True)
class GradedQuiver:
    """
    Finite graded quiver.

    Attributes:
    -----------
    label : str
        Owner label stamped on the quiver's own basis vectors.
    objects : tuple[str, ...]
    arrows : tuple[BasisVector, ...]
        Basis of every hom space, all together.
    """

    label: str
    objects: tuple[str, ...]
    arrows: tuple[BasisVector, ...]
    _homs: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        known = set(self.objects)
        if len(known) != len(self.objects):
            raise QuiverError(f"duplicate objects in quiver {self.label}")
        for v in self.arrows:
            if v.src not in known or v.tgt not in known:
                raise QuiverError(f"{v} in quiver {self.label} uses an unknown object")
            slot = self._homs.setdefault((v.src, v.tgt), [])
            if any(w.name == v.name and w.dual == v.dual for w in slot):
                raise QuiverError(f"basis name {v.name} repeated in {v.tgt}{self.label}{v.src}")
            slot.append(v)

    @classmethod
    def build(cls, label: str, objects: Iterable[str], arrows: Iterable[tuple]) -> GradedQuiver:
        """Build from (name, src, tgt, degree) tuples."""
        vectors = tuple(
            BasisVector(name, src, tgt, int(degree), False, label)
            for name, src, tgt, degree in arrows
        )
        return cls(label, tuple(objects), vectors)

    def hom(self, src: str, tgt: str) -> tuple[BasisVector, ...]:
        """Basis of tgt A src."""
        return tuple(self._homs.get((src, tgt), ()))

    def outgoing_to(self, tgt: str) -> tuple[BasisVector, ...]:
        """All basis vectors with the given target."""
        return tuple(v for v in self.arrows if v.tgt == tgt)

    def lookup(self, name: str, src: str, tgt: str) -> BasisVector:
        for v in self.hom(src, tgt):
            if v.name == name:
                return v
        raise QuiverError(f"no basis vector {name} in {tgt}{self.label}{src}")

    def find(self, name: str) -> BasisVector:
        """Unique basis vector with this name anywhere in the quiver."""
        hits = [v for v in self.arrows if v.name == name]
        if len(hits) != 1:
            raise QuiverError(f"name {name} matches {len(hits)} vectors in quiver {self.label}")
        return hits[0]

    def dimension(self) -> int:
        return len(self.arrows)


# =============================================================================
# DERIVED QUIVERS
# =============================================================================


def dual_quiver(A: GradedQuiver) -> GradedQuiver:
    """yA*_x = (xA_y)* with negated degrees; the double dual is A again."""
    duals = []
    for v in A.arrows:
        name = v.name[:-1] if v.dual else v.name + "*"
        duals.append(BasisVector(name, v.tgt, v.src, -v.degree, not v.dual, v.quiver))
    label = A.label[:-1] if A.label.endswith("*") else A.label + "*"
    return GradedQuiver(label, A.objects, tuple(duals))


def boundary_quiver(A: GradedQuiver, d: int) -> GradedQuiver:
    """A (+) A*[d-1] on the objects of A."""
    duals = tuple(partner(v, d) for v in A.arrows)
    return GradedQuiver(f"boundary({A.label})", A.objects, A.arrows + duals)


def check_object_map(A: GradedQuiver, B: GradedQuiver, phi0: ObjectMap) -> None:
    targets = set(B.objects)
    for x in A.objects:
        if x not in phi0:
            raise QuiverError(f"object map is not defined on {x}")
        if phi0[x] not in targets:
            raise QuiverError(f"object map sends {x} to {phi0[x]}, not an object of {B.label}")


def pulled_back_letters(
    B: GradedQuiver, phi0: ObjectMap, src: str, tgt: str
) -> tuple[BasisVector, ...]:
    """Basis of Phi(tgt) B Phi(src) viewed over src, tgt."""
    return tuple(pullback(b, src, tgt) for b in B.hom(phi0[src], phi0[tgt]))


def mixed_quiver(A: GradedQuiver, B: GradedQuiver, phi0: ObjectMap, d: int) -> GradedQuiver:
    """y(Q_Phi)_x = yA_x (+) Phi(y) B*_Phi(x) [d-1]."""
    check_object_map(A, B, phi0)
    duals = []
    for x in A.objects:
        for y in A.objects:
            # partner of a B vector pulled back to (src=y, tgt=x) lives in yQ_x
            duals.extend(partner(b, d) for b in pulled_back_letters(B, phi0, y, x))
    return GradedQuiver(f"mixed({A.label},{B.label})", A.objects, A.arrows + tuple(duals))


# =============================================================================
# BILINEAR FORMS
# =============================================================================


class FormKind(enum.StrEnum):
    NATURAL = "natural"
    MIXED = "mixed"


@dataclass(frozen=True)
class BilinearForm:
    """
    Pairing table on the [1]-shifted letters of a carrier quiver.

    Absent pairs are zero.
    """

    d: int
    kind: FormKind
    carrier: tuple[BasisVector, ...]
    table: Mapping[tuple[BasisVector, BasisVector], Fraction]

    def pairs_with(self, u: BasisVector) -> list[tuple[BasisVector, Fraction]]:
        return [(v, c) for (x, v), c in self.table.items() if x == u]


def natural_form(A: GradedQuiver, d: int) -> BilinearForm:
    """Gamma^A on the boundary quiver of A."""
    carrier = boundary_quiver(A, d).arrows
    table: dict[tuple[BasisVector, BasisVector], Fraction] = {}
    for e in A.arrows:
        f = partner(e, d)
        table[(e, f)] = Fraction(pair_sign(e, f, d))
        table[(f, e)] = Fraction(pair_sign(f, e, d))
    return BilinearForm(d, FormKind.NATURAL, carrier, table)


def mixed_form(
    A: GradedQuiver, B: GradedQuiver, phi0: ObjectMap, hom_map: HomMap, d: int
) -> BilinearForm:
    """
    Gamma^Phi on Q_Phi, built from the degree-0 hom maps of a strict morphism.

    Parameters:
    -----------
    hom_map : mapping
        For each basis vector a of A, the coefficients of Phi(a) on the basis
        of B (vectors over B's own objects).
    """
    carrier = mixed_quiver(A, B, phi0, d).arrows
    table: dict[tuple[BasisVector, BasisVector], Fraction] = {}
    for a, image in hom_map.items():
        for b, coefficient in image.items():
            if coefficient == 0:
                continue
            if b.src != phi0[a.src] or b.tgt != phi0[a.tgt]:
                raise QuiverError(f"hom map sends {a} to {b}, outside Phi(tgt) B Phi(src)")
            f = partner(pullback(b, a.src, a.tgt), d)
            value = sign(f.sdeg + 1) * Fraction(coefficient)
            table[(f, a)] = table.get((f, a), Fraction(0)) + value
            table[(a, f)] = table.get((a, f), Fraction(0)) - sign(a.sdeg * f.sdeg) * value
    return BilinearForm(d, FormKind.MIXED, carrier, table)


def eval_form(form: BilinearForm, u: BasisVector, v: BasisVector) -> Fraction:
    carrier = set(form.carrier)
    if u not in carrier or v not in carrier:
        raise CarrierMismatch(f"({u}, {v}) is not in the carrier of this {form.kind} form")
    return form.table.get((u, v), Fraction(0))


def is_nondegenerate(form: BilinearForm) -> bool:
    """True iff the pairing matrix on the carrier is invertible."""
    n = len(form.carrier)
    if n == 0:
        return True
    index = {v: i for i, v in enumerate(form.carrier)}
    matrix = sympy.zeros(n, n)
    for (u, v), value in form.table.items():
        matrix[index[u], index[v]] = sympy.Rational(value.numerator, value.denominator)
    rank = matrix.rank()
    log.debug("[form] %s form rank %d of %d", form.kind, rank, n)
    return rank == n

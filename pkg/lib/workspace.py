"""
Workspace Files
===============

A workspace is one JSON document holding named quivers, elements,
morphisms and forms:

    {
      "schema_version": 1,
      "quivers":   {"A": {"objects": ["x"], "arrows": [{"name": "e", "src": "x",
                                                       "tgt": "x", "degree": 0}]}},
      "elements":  {"M": {"ambient": "necklace", "quiver": "A", "d": 1, "degree": 1,
                          "truncation": "4,3",
                          "terms": [{"blocks": [["e"], []], "outputs": ["e", "1"],
                                     "coefficient": "1/2"}]}},
      "morphisms": {"Phi": {"source": "A", "target": "B", "phi0": {"x": "y"},
                            "hom_map": {"e": {"b": "1"}},
                            "source_structure": "M", "target_structure": "N"}},
      "forms":     {"gamma": {"kind": "natural", "quiver": "A", "d": 1}}
    }

LETTERS:
--------
Inside terms a letter is written

    name          a basis vector of the element's quiver (names are unique per quiver)
    name*         its dual
    B:name@x>y    a vector of quiver B pulled back to objects x (src), y (tgt)
    B:name*@x>y   the same for a dual

Coefficients are exact rationals written "p/q" (or "p").

Loading goes through pydantic for the shape of the document and through
the engine's constructors for everything else, so every stored entry is
re-validated. Both kinds of failure surface as WorkspaceError naming the
path of the offending field.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from defaults import SCHEMA_VERSION
from errors import NecklaceError, WorkspaceError
from morphisms import PreCYMorphism, strict_morphism
from multimap import Ambient, Entry, MultiElement, Truncation
from quiver import (
    BasisVector,
    BilinearForm,
    FormKind,
    GradedQuiver,
    check_object_map,
    mixed_form,
    natural_form,
    partner,
    pullback,
    pushforward,
)

log = logging.getLogger(__name__)

LETTER = re.compile(r"^(?:(?P<quiver>[^:@]+):)?(?P<name>[^@]+?)(?:@(?P<src>[^>]+)>(?P<tgt>.+))?$")

# =============================================================================
# SCHEMA
# =============================================================================


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _rational(value: str) -> str:
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{value!r} is not a rational written p/q") from exc
    return value


Rational = Annotated[str, AfterValidator(_rational)]


class ArrowModel(_Strict):
    name: str
    src: str
    tgt: str
    degree: int


class QuiverModel(_Strict):
    objects: list[str]
    arrows: list[ArrowModel] = Field(default_factory=list)


class TermModel(_Strict):
    blocks: list[list[str]]
    outputs: list[str]
    coefficient: Rational


class ElementModel(_Strict):
    ambient: Ambient
    quiver: str
    d: int
    degree: int
    truncation: str | None = None
    target: str | None = None
    phi0: dict[str, str] | None = None
    terms: list[TermModel] = Field(default_factory=list)

    @field_validator("truncation")
    @classmethod
    def _check_truncation(cls, value: str | None) -> str | None:
        if value is not None:
            Truncation.parse(value)
        return value


class MorphismModel(_Strict):
    source: str
    target: str
    phi0: dict[str, str]
    element: str | None = None
    hom_map: dict[str, dict[str, Rational]] | None = None
    source_structure: str | None = None
    target_structure: str | None = None

    @model_validator(mode="after")
    def _one_description(self) -> MorphismModel:
        if (self.element is None) == (self.hom_map is None):
            raise ValueError("a morphism names either an element or a hom_map, not both")
        return self


class FormModel(_Strict):
    kind: FormKind
    quiver: str
    d: int
    morphism: str | None = None


class WorkspaceModel(_Strict):
    schema_version: int = SCHEMA_VERSION
    quivers: dict[str, QuiverModel] = Field(default_factory=dict)
    elements: dict[str, ElementModel] = Field(default_factory=dict)
    morphisms: dict[str, MorphismModel] = Field(default_factory=dict)
    forms: dict[str, FormModel] = Field(default_factory=dict)

    @field_validator("schema_version")
    @classmethod
    def _supported(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"schema version {value} is not supported (expected {SCHEMA_VERSION})")
        return value


# =============================================================================
# WORKSPACE
# =============================================================================


@dataclass
class MorphismRecord:
    morphism: PreCYMorphism
    source_structure: str | None = None
    target_structure: str | None = None
    hom_map: dict[BasisVector, dict[BasisVector, Fraction]] | None = None
    element: str | None = None


@dataclass
class Workspace:
    quivers: dict[str, GradedQuiver] = field(default_factory=dict)
    elements: dict[str, MultiElement] = field(default_factory=dict)
    morphisms: dict[str, MorphismRecord] = field(default_factory=dict)
    forms: dict[str, BilinearForm] = field(default_factory=dict)
    form_models: dict[str, FormModel] = field(default_factory=dict)

    def element(self, name: str) -> MultiElement:
        try:
            return self.elements[name]
        except KeyError:
            raise WorkspaceError(f"elements.{name}: no such element") from None

    def morphism(self, name: str) -> MorphismRecord:
        try:
            return self.morphisms[name]
        except KeyError:
            raise WorkspaceError(f"morphisms.{name}: no such morphism") from None

    def structures(self, name: str) -> tuple[MultiElement, MultiElement]:
        record = self.morphism(name)
        if record.source_structure is None or record.target_structure is None:
            raise WorkspaceError(f"morphisms.{name}: source_structure and target_structure needed")
        return self.element(record.source_structure), self.element(record.target_structure)


# =============================================================================
# LETTERS
# =============================================================================


def parse_letter(
    token: str,
    home: GradedQuiver,
    quivers: dict[str, GradedQuiver],
    d: int,
    phi0: dict[str, str] | None,
) -> BasisVector:
    match = LETTER.match(token)
    if match is None:
        raise WorkspaceError(f"cannot read letter {token!r}")
    label = match["quiver"] or home.label
    if label not in quivers:
        raise WorkspaceError(f"letter {token!r} names unknown quiver {label}")
    Q = quivers[label]
    name = match["name"]
    try:
        v = partner(Q.find(name[:-1]), d) if name.endswith("*") else Q.find(name)
    except NecklaceError as exc:
        raise WorkspaceError(str(exc)) from None
    if match["src"] is None:
        if Q is not home:
            raise WorkspaceError(f"letter {token!r} of another quiver needs @src>tgt")
        return v
    lifted = pullback(v, match["src"], match["tgt"])
    if Q is not home and (phi0 is None or pushforward(lifted, phi0) != v):
        raise WorkspaceError(f"letter {token!r} does not sit over its objects' images")
    return lifted


def letter_token(v: BasisVector, home: GradedQuiver) -> str:
    if v.quiver == home.label:
        return v.name
    return f"{v.quiver}:{v.name}@{v.src}>{v.tgt}"


# =============================================================================
# LOAD
# =============================================================================


def _build_element(
    path: str, model: ElementModel, quivers: dict[str, GradedQuiver], default: Truncation
) -> MultiElement:
    if model.quiver not in quivers:
        raise WorkspaceError(f"{path}.quiver: unknown quiver {model.quiver}")
    home = quivers[model.quiver]
    target = None
    if model.target is not None:
        if model.target not in quivers:
            raise WorkspaceError(f"{path}.target: unknown quiver {model.target}")
        target = quivers[model.target]
        try:
            check_object_map(home, target, model.phi0 or {})
        except NecklaceError as exc:
            raise WorkspaceError(f"{path}.phi0: {exc}") from None
    terms: dict[Entry, Fraction] = {}
    for i, term in enumerate(model.terms):
        where = f"{path}.terms.{i}"

        def letters(tokens: list[str]) -> tuple[BasisVector, ...]:
            return tuple(parse_letter(t, home, quivers, model.d, model.phi0) for t in tokens)

        try:
            blocks = tuple(letters(block) for block in term.blocks)
            outputs = letters(term.outputs)
        except WorkspaceError as exc:
            raise WorkspaceError(f"{where}: {exc}") from None
        entry = Entry(blocks, outputs)
        if entry in terms:
            raise WorkspaceError(f"{where}: entry {entry} listed twice")
        terms[entry] = Fraction(term.coefficient)
    truncation = Truncation.parse(model.truncation) if model.truncation else default
    try:
        return MultiElement(
            model.ambient, home, model.d, model.degree, terms, truncation, target, model.phi0
        )
    except NecklaceError as exc:
        raise WorkspaceError(f"{path}: {exc}") from None


def _build_morphism(
    path: str, model: MorphismModel, ws: Workspace, default: Truncation
) -> MorphismRecord:
    for side in ("source", "target"):
        if getattr(model, side) not in ws.quivers:
            raise WorkspaceError(f"{path}.{side}: unknown quiver {getattr(model, side)}")
    A, B = ws.quivers[model.source], ws.quivers[model.target]
    try:
        check_object_map(A, B, model.phi0)
        if model.hom_map is not None:
            hom_map = {
                A.find(a): {B.find(b): Fraction(c) for b, c in image.items()}
                for a, image in model.hom_map.items()
            }
            d = _structure_d(model, ws)
            F = strict_morphism(A, B, model.phi0, hom_map, d, default)
            return MorphismRecord(
                F, model.source_structure, model.target_structure, hom_map, None
            )
        E = ws.element(model.element)
        if dict(E.phi0 or {}) != model.phi0 or E.target is not B:
            raise WorkspaceError(f"element {model.element} is not over this object map")
        F = PreCYMorphism(model.phi0, A, B, E)
    except NecklaceError as exc:
        raise WorkspaceError(f"{path}: {exc}") from None
    return MorphismRecord(F, model.source_structure, model.target_structure, None, model.element)


def _structure_d(model: MorphismModel, ws: Workspace) -> int:
    for name in (model.source_structure, model.target_structure):
        if name is not None:
            return ws.element(name).d
    raise WorkspaceError("a hom_map morphism needs a structure to fix d")


def _build_form(path: str, model: FormModel, ws: Workspace) -> BilinearForm:
    if model.quiver not in ws.quivers:
        raise WorkspaceError(f"{path}.quiver: unknown quiver {model.quiver}")
    if model.kind is FormKind.NATURAL:
        return natural_form(ws.quivers[model.quiver], model.d)
    if model.morphism is None:
        raise WorkspaceError(f"{path}.morphism: a mixed form names a strict morphism")
    record = ws.morphism(model.morphism)
    if record.hom_map is None:
        raise WorkspaceError(f"{path}.morphism: {model.morphism} has no hom_map")
    F = record.morphism
    return mixed_form(F.source, F.target, F.phi0, record.hom_map, model.d)


def _location(loc: tuple) -> str:
    return ".".join(str(part) for part in loc)


def _schema_error(exc: ValidationError) -> WorkspaceError:
    first = exc.errors()[0]
    return WorkspaceError(f"{_location(first['loc'])}: {first['msg']}")


def build(model: WorkspaceModel, default: Truncation | None = None) -> Workspace:
    """Engine objects for a validated document; module invariants are checked here."""
    default = default or Truncation()
    ws = Workspace()
    for name, q in model.quivers.items():
        try:
            ws.quivers[name] = GradedQuiver.build(
                name, q.objects, [(a.name, a.src, a.tgt, a.degree) for a in q.arrows]
            )
        except NecklaceError as exc:
            raise WorkspaceError(f"quivers.{name}: {exc}") from None
    for name, e in model.elements.items():
        ws.elements[name] = _build_element(f"elements.{name}", e, ws.quivers, default)
    for name, m in model.morphisms.items():
        ws.morphisms[name] = _build_morphism(f"morphisms.{name}", m, ws, default)
    for name, f in model.forms.items():
        ws.forms[name] = _build_form(f"forms.{name}", f, ws)
        ws.form_models[name] = f
    log.info(
        "[workspace] %d quivers, %d elements, %d morphisms",
        len(ws.quivers),
        len(ws.elements),
        len(ws.morphisms),
    )
    return ws


def load(path: str | Path, default: Truncation | None = None) -> Workspace:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise WorkspaceError(f"cannot read {path}: {exc}") from None
    if not text.strip():
        return Workspace()
    try:
        model = WorkspaceModel.model_validate_json(text)
    except ValidationError as exc:
        raise WorkspaceError(f"{path}: {_schema_error(exc)}") from None
    return build(model, default)


def from_document(document: Any, default: Truncation | None = None) -> Workspace:
    """Validate an already decoded JSON document and build the workspace."""
    try:
        model = WorkspaceModel.model_validate(document)
    except ValidationError as exc:
        raise _schema_error(exc) from None
    return build(model, default)


# =============================================================================
# SAVE
# =============================================================================


def element_model(E: MultiElement) -> ElementModel:
    home = E.quiver
    return ElementModel(
        ambient=E.ambient,
        quiver=home.label,
        d=E.d,
        degree=E.degree,
        truncation=str(E.truncation),
        target=E.target.label if E.target is not None else None,
        phi0=dict(E.phi0) if E.phi0 is not None else None,
        terms=[
            TermModel(
                blocks=[[letter_token(a, home) for a in block] for block in entry.blocks],
                outputs=[letter_token(o, home) for o in entry.outputs],
                coefficient=str(value),
            )
            for entry, value in E.items()
        ],
    )


def to_model(ws: Workspace) -> WorkspaceModel:
    quivers = {
        name: QuiverModel(
            objects=list(Q.objects),
            arrows=[
                ArrowModel(name=v.name, src=v.src, tgt=v.tgt, degree=v.degree) for v in Q.arrows
            ],
        )
        for name, Q in ws.quivers.items()
    }
    for name, E in ws.elements.items():
        if ws.quivers.get(E.quiver.label) is None:
            raise WorkspaceError(f"elements.{name}: quiver {E.quiver.label} is not saved")
    morphisms = {}
    for name, record in ws.morphisms.items():
        F = record.morphism
        hom_map = None
        if record.hom_map is not None:
            hom_map = {
                a.name: {b.name: str(c) for b, c in image.items()}
                for a, image in record.hom_map.items()
            }
        morphisms[name] = MorphismModel(
            source=F.source.label,
            target=F.target.label,
            phi0=dict(F.phi0),
            element=record.element,
            hom_map=hom_map,
            source_structure=record.source_structure,
            target_structure=record.target_structure,
        )
    return WorkspaceModel(
        quivers=quivers,
        elements={name: element_model(E) for name, E in ws.elements.items()},
        morphisms=morphisms,
        forms=dict(ws.form_models),
    )


def dumps(ws: Workspace) -> str:
    return to_model(ws).model_dump_json(indent=2, exclude_none=True) + "\n"


def save(ws: Workspace, path: str | Path) -> None:
    Path(path).write_text(dumps(ws), encoding="utf-8")
    log.info("[workspace] saved %s", path)

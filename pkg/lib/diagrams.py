"""
Disc Diagrams
=============

A disc is a multi-output operation drawn as a circle: one outgoing arrow
per output (out_1 .. out_n, clockwise) and one incoming arrow per input
(in_1 .. in_k, numbered through the tuples in order). A diagram glues
an outgoing arrow of one disc to an incoming arrow of another, or to an
outgoing arrow whose closing letter it then fills (out -> out).

ADMISSIBILITY:
--------------
    - connected, and no cycles
    - every connection has exactly one bold end
    - exactly one bold arrow is left on the boundary
    - at most one bold arrow per disc
    - both ends of a connection carry the same hom space (reversed for
      out -> out, where the target end carries the closing letter)

EVALUATION:
-----------
Each disc is read at its bold arrow (see words.read_at), which turns it
into a cochain whose letters remember the arrow they came from. The disc
holding the boundary bold is the root; every other disc's bold sits on the
connection towards its parent. Discs are eliminated leaves first: the
child cochain is plugged into the parent's slot for that connection with
the Gerstenhaber sign. Plugging order fixes an order of the operators,
which is brought back to the order of the disc list with one Koszul sign
at the end. The root cochain is then decoded into a multi-output element.

The result must not depend on the elimination order; evaluate() takes an
explicit order so that can be checked.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from errors import AdmissibilityError
from grading import reorder_sign, rotation_sign, sign
from multimap import Entry, MultiElement, Signature, accumulate, eval_component, signature
from quiver import BasisVector, pair_sign, partner
from words import IN, OUT, arrow_position, decode, decode_closed, first_dual_rotation, read_at

log = logging.getLogger(__name__)

# =============================================================================
# SHAPES
# =============================================================================


@dataclass(frozen=True, order=True)
class Arrow:
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}_{self.index}"


@dataclass(frozen=True)
class Disc:
    name: str
    type: Signature
    bold: Arrow | None = None

    @property
    def n_outputs(self) -> int:
        return len(self.type)

    @property
    def n_inputs(self) -> int:
        return sum(len(t) - 1 for t in self.type)

    def arrows(self) -> list[Arrow]:
        outs = [Arrow(OUT, k) for k in range(1, self.n_outputs + 1)]
        return outs + [Arrow(IN, j) for j in range(1, self.n_inputs + 1)]

    def has_arrow(self, arrow: Arrow) -> bool:
        limit = self.n_outputs if arrow.kind == OUT else self.n_inputs
        return arrow.kind in (OUT, IN) and 1 <= arrow.index <= limit

    def hom(self, arrow: Arrow) -> tuple[str, str]:
        """(src, tgt) of the vector travelling along an arrow."""
        n = self.n_outputs
        if arrow.kind == OUT:
            k = arrow.index
            return self.type[k % n][-1], self.type[k - 1][0]
        before = arrow.index - 1
        for objects in self.type:
            if before < len(objects) - 1:
                return objects[before + 1], objects[before]
            before -= len(objects) - 1
        raise AdmissibilityError(f"{self.name} has no {arrow}")


def flat_input(sig: Signature, v: int, j: int) -> int:
    """in-index of letter j of tuple v (both 1-based)."""
    return sum(len(t) - 1 for t in sig[: v - 1]) + j


@dataclass(frozen=True)
class Connection:
    """source.out_k -> target.in_j, or source.out_k -> target.out_j"""

    source: str
    out: int
    target: str
    slot: int
    kind: str = IN

    def ends(self) -> tuple[tuple[str, Arrow], tuple[str, Arrow]]:
        return (self.source, Arrow(OUT, self.out)), (self.target, Arrow(self.kind, self.slot))

    def __str__(self) -> str:
        return f"{self.source}.out{self.out} -> {self.target}.{self.kind}{self.slot}"


@dataclass(frozen=True)
class Diagram:
    discs: tuple[Disc, ...]
    connections: tuple[Connection, ...] = ()

    def disc(self, name: str) -> Disc:
        for disc in self.discs:
            if disc.name == name:
                return disc
        raise AdmissibilityError(f"no disc named {name}")


@dataclass(frozen=True)
class FilledDiagram:
    diagram: Diagram
    fillings: Mapping[str, MultiElement] = field(default_factory=dict)


# =============================================================================
# ADMISSIBILITY
# =============================================================================


@dataclass
class Admissibility:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def check_admissible(D: Diagram) -> Admissibility:
    result = Admissibility()
    names = [disc.name for disc in D.discs]
    if not names:
        result.problems.append("diagram has no discs")
        return result
    if len(set(names)) != len(names):
        result.problems.append("disc names repeat")
        return result
    discs = {disc.name: disc for disc in D.discs}

    used: set[tuple[str, Arrow]] = set()
    bold_on_connections: set[tuple[str, Arrow]] = set()
    for c in D.connections:
        if c.source not in discs or c.target not in discs:
            result.problems.append(f"{c}: unknown disc")
            continue
        if c.source == c.target:
            result.problems.append(f"{c}: connects a disc to itself")
        if c.kind not in (IN, OUT):
            result.problems.append(f"{c}: unknown arrow kind {c.kind}")
            continue
        ends = c.ends()
        for name, arrow in ends:
            if not discs[name].has_arrow(arrow):
                result.problems.append(f"{c}: {name} has no {arrow}")
            elif (name, arrow) in used:
                result.problems.append(f"{c}: {name}.{arrow} is connected twice")
            used.add((name, arrow))
        bolds = [end for end in ends if discs[end[0]].bold == end[1]]
        if len(bolds) != 1:
            result.problems.append(f"{c}: needs exactly one bold end, has {len(bolds)}")
        bold_on_connections.update(bolds)
        if all(discs[n].has_arrow(a) for n, a in ends):
            if not homs_match(D, c):
                result.problems.append(f"{c}: hom spaces differ across the connection")

    boundary_bolds = [
        disc.name
        for disc in D.discs
        if disc.bold is not None and (disc.name, disc.bold) not in bold_on_connections
    ]
    for disc in D.discs:
        if disc.bold is not None and not disc.has_arrow(disc.bold):
            result.problems.append(f"{disc.name}: bold arrow {disc.bold} does not exist")
    if len(boundary_bolds) != 1:
        result.problems.append(f"need exactly one boundary bold arrow, found {len(boundary_bolds)}")

    if len(D.connections) != len(D.discs) - 1 or not _connected(D):
        result.problems.append("diagram is not a tree (disconnected or has a cycle)")
    return result


def homs_match(D: Diagram, c: Connection) -> bool:
    (a, x), (b, y) = c.ends()
    left, right = D.disc(a).hom(x), D.disc(b).hom(y)
    return left == (right if y.kind == IN else right[::-1])


def _connected(D: Diagram) -> bool:
    neighbours: dict[str, set[str]] = defaultdict(set)
    for c in D.connections:
        neighbours[c.source].add(c.target)
        neighbours[c.target].add(c.source)
    start = D.discs[0].name
    seen = {start}
    stack = [start]
    while stack:
        for other in neighbours[stack.pop()]:
            if other not in seen:
                seen.add(other)
                stack.append(other)
    return len(seen) == len(D.discs)


# =============================================================================
# EVALUATION
# =============================================================================

Tag = tuple[str, Arrow]


@dataclass
class _Composite:
    """Sum of tagged cochains produced by a partially eliminated subtree."""

    terms: list[tuple[tuple[BasisVector, ...], tuple[Tag, ...], BasisVector, Fraction]]
    degree: int
    order: list[int]


def _ccw_tags(entry: Entry) -> list[Arrow]:
    tags: list[Arrow] = [Arrow(IN, 0)] * (entry.arity + entry.n)
    for k in range(1, entry.n + 1):
        tags[arrow_position(entry, OUT, k)] = Arrow(OUT, k)
    for j in range(1, entry.arity + 1):
        tags[arrow_position(entry, IN, j)] = Arrow(IN, j)
    return tags


def disc_reading(disc: Disc, filling: MultiElement) -> list:
    """Tagged cochains of a disc read at its bold arrow."""
    terms = []
    for entry, value in filling.terms.items():
        if signature(entry) != disc.type:
            continue
        position = arrow_position(entry, disc.bold.kind, disc.bold.index)
        inputs, output, coef = read_at(entry, value, filling.d, position)
        tags = _ccw_tags(entry)
        tags = tags[position + 1 :] + tags[:position]
        terms.append((inputs, tuple((disc.name, t) for t in tags), output, coef))
    return terms


def _tree(D: Diagram) -> tuple[str, dict[str, tuple[str, Tag]]]:
    """Root disc and, for every other disc, (parent, slot tag in the parent)."""
    discs = {disc.name: disc for disc in D.discs}
    parent: dict[str, tuple[str, Tag]] = {}
    for c in D.connections:
        (a, x), (b, y) = c.ends()
        if discs[a].bold == x:
            parent[a] = (b, (b, y))
        else:
            parent[b] = (a, (a, x))
    roots = [name for name in discs if name not in parent]
    return roots[0], parent


def leaves_first(D: Diagram) -> list[str]:
    """A valid elimination order: every disc after all of its children."""
    root, parent = _tree(D)
    depth: dict[str, int] = {}

    def level(name: str) -> int:
        if name not in depth:
            depth[name] = 0 if name == root else level(parent[name][0]) + 1
        return depth[name]

    names = [disc.name for disc in D.discs if disc.name != root]
    return sorted(names, key=lambda name: (-level(name), names.index(name)))


def _plug(parent: _Composite, slot: Tag, child: _Composite) -> _Composite:
    by_output: dict[BasisVector, list] = defaultdict(list)
    for letters, tags, output, coef in child.terms:
        by_output[output].append((letters, tags, coef))
    terms = []
    for letters, tags, output, coef in parent.terms:
        if slot not in tags:
            continue
        i = tags.index(slot)
        koszul = sign(child.degree * sum(a.sdeg for a in letters[:i]))
        for c_letters, c_tags, c_coef in by_output.get(letters[i], []):
            terms.append(
                (
                    letters[:i] + c_letters + letters[i + 1 :],
                    tags[:i] + c_tags + tags[i + 1 :],
                    output,
                    koszul * coef * c_coef,
                )
            )
    return _Composite(terms, parent.degree + child.degree, parent.order + child.order)


def evaluate(fd: FilledDiagram, order: Sequence[str] | None = None) -> MultiElement:
    """The multi-output element a filled admissible diagram stands for."""
    D = fd.diagram
    verdict = check_admissible(D)
    if not verdict:
        raise AdmissibilityError("; ".join(verdict.problems))
    missing = [disc.name for disc in D.discs if disc.name not in fd.fillings]
    if missing:
        raise AdmissibilityError(f"discs without filling: {', '.join(missing)}")

    root, parent = _tree(D)
    order = list(order) if order is not None else leaves_first(D)
    if sorted(order) != sorted(n for n in parent):
        raise AdmissibilityError("elimination order must list every non-root disc once")
    position = {name: k for k, name in enumerate(order)}
    for child, (up, _) in parent.items():
        if up != root and position[up] < position[child]:
            raise AdmissibilityError(f"{up} is eliminated before its child {child}")

    index = {disc.name: k for k, disc in enumerate(D.discs)}
    composites = {
        disc.name: _Composite(
            disc_reading(disc, fd.fillings[disc.name]),
            fd.fillings[disc.name].degree,
            [index[disc.name]],
        )
        for disc in D.discs
    }
    for name in order:
        up, slot = parent[name]
        composites[up] = _plug(composites[up], slot, composites.pop(name))
        log.debug("[diagram] plugged %s into %s", name, up)

    final = composites[root]
    degrees = [fd.fillings[disc.name].degree for disc in D.discs]
    kappa = reorder_sign(final.order, degrees)
    template = fd.fillings[root]
    d = template.d
    incoming = D.disc(root).bold.kind == IN
    truncation = template.truncation
    for disc in D.discs:
        truncation = truncation.meet(fd.fillings[disc.name].truncation)

    terms: dict[Entry, Fraction] = {}
    for letters, _, output, coef in final.terms:
        value = kappa * coef
        if not incoming:
            entry, c = decode(letters, output, value, d)
        else:
            z = partner(output, d)
            word = letters + (z,)
            omega = -pair_sign(output, z, d) * value
            r = first_dual_rotation(word) + 1
            rotated = word[r:] + word[:r]
            omega *= rotation_sign([a.sdeg for a in word], r)
            entry, c = decode_closed(rotated, omega, d)
        if truncation.admits(entry):
            accumulate(terms, entry, c)
    return template.with_terms(terms, degree=sum(degrees)).truncated(truncation)


def eval_diagram(
    fd: FilledDiagram, sig: Signature, inputs: Sequence[Sequence[BasisVector]]
) -> list[tuple[tuple[BasisVector, ...], Fraction]]:
    """Rows of the evaluated diagram at one input tuple."""
    return eval_component(evaluate(fd), sig, inputs)


def order_independence(fd: FilledDiagram) -> list[tuple[list[str], MultiElement]]:
    """Evaluate under every valid elimination order; all results must agree."""
    root, parent = _tree(fd.diagram)
    results = []
    for order in itertools.permutations(parent):
        position = {name: k for k, name in enumerate(order)}
        valid = all(up == root or position[up] > position[c] for c, (up, _) in parent.items())
        if valid:
            results.append((list(order), evaluate(fd, order)))
    return results

import itertools
from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from diagram_dsl import parse, render
from diagrams import (
    Arrow,
    Connection,
    Diagram,
    Disc,
    FilledDiagram,
    check_admissible,
    evaluate,
    order_independence,
)
from errors import AdmissibilityError, DiagramSyntaxError
from generators import candidate_entries
from grading import sign
from multimap import Ambient, MultiElement, Truncation, cochain, entry_degree
from quiver import GradedQuiver, pair_sign, partner
from words import OUT, arrow_position, read_at

DIMENSIONS = [-1, 0, 1, 2]


def load(fixtures_dir, name):
    return parse((fixtures_dir / "diagrams" / name).read_text())


def filled(parsed, M):
    return FilledDiagram(parsed.diagram, {name: M for name in parsed.fills})


def test_parse_fixture(fixtures_dir):
    parsed = load(fixtures_dir, "inner.diag")
    assert [disc.name for disc in parsed.diagram.discs] == ["F", "G"]
    assert parsed.diagram.disc("F").type == (("x", "x", "x"),)
    assert parsed.diagram.disc("G").bold == Arrow("out", 1)
    assert parsed.fills == {"F": "M_A", "G": "M_A"}
    assert parsed.tags == {"G": "inner"}
    assert [str(c) for c in parsed.diagram.connections] == ["G.out1 -> F.in1"]


@pytest.mark.parametrize("name", ["inner.diag", "two_inputs.diag", "no_bold.diag"])
def test_render_is_parsed_back(fixtures_dir, name):
    parsed = load(fixtures_dir, name)
    again = parse(render(parsed))
    assert again.diagram == parsed.diagram
    assert again.fills == parsed.fills
    assert again.tags == parsed.tags


def test_syntax_errors_carry_positions():
    with pytest.raises(DiagramSyntaxError) as info:
        parse("// header\n\ndisc F type=(x,x) fill=M\n")
    assert info.value.line == 3
    assert info.value.column is not None
    with pytest.raises(DiagramSyntaxError) as info:
        parse("disc F type=((x,x))\ndisc F type=((x,x))\n")
    assert info.value.line == 2
    with pytest.raises(DiagramSyntaxError):
        parse("disc F type=((x,x))\nconnect G.out1 -> F.in1\n")


def test_inadmissible_diagram(fixtures_dir, trivial_extension):
    _, _, M = trivial_extension
    parsed = load(fixtures_dir, "no_bold.diag")
    verdict = check_admissible(parsed.diagram)
    assert not verdict.ok
    assert any("boundary bold" in problem for problem in verdict.problems)
    with pytest.raises(AdmissibilityError):
        evaluate(filled(parsed, M))


def test_admissible_fixtures(fixtures_dir):
    for name in ("inner.diag", "two_inputs.diag"):
        assert check_admissible(load(fixtures_dir, name).diagram).ok


def test_evaluate_inner_plug(fixtures_dir, trivial_extension):
    _, _, M = trivial_extension
    result = evaluate(filled(load(fixtures_dir, "inner.diag"), M))
    assert result.degree == 2
    assert not result.is_zero()
    assert {entry.arity for entry in result.terms} == {3}
    assert {entry.n for entry in result.terms} == {1}


def test_evaluate_needs_every_filling(fixtures_dir, trivial_extension):
    _, _, M = trivial_extension
    parsed = load(fixtures_dir, "inner.diag")
    with pytest.raises(AdmissibilityError):
        evaluate(FilledDiagram(parsed.diagram, {"F": M}))
    with pytest.raises(AdmissibilityError):
        evaluate(filled(parsed, M), order=["F"])


def test_elimination_order_does_not_matter(fixtures_dir, trivial_extension):
    _, _, M = trivial_extension
    results = order_independence(filled(load(fixtures_dir, "two_inputs.diag"), M))
    assert sorted(order for order, _ in results) == [["G", "H"], ["H", "G"]]
    (_, first), (_, second) = results
    assert (first - second).is_zero()
    assert {entry.arity for entry in first.terms} == {4}


@pytest.mark.parametrize(
    "option, bold",
    [
        ("bold=out_2", Arrow("out", 2)),
        ("bold=out2", Arrow("out", 2)),
        ("bold=in_1", Arrow("in", 1)),
        ("bold=none", None),
    ],
)
def test_bold_option_keeps_its_arrow(option, bold):
    parsed = parse(f"disc F type=((x,x),(x)) fill=M {option}\n")
    assert parsed.diagram.disc("F").bold == bold
    assert parse(render(parsed)).diagram == parsed.diagram


def test_closing_connection_is_parsed_and_rendered():
    parsed = parse(
        "disc F type=((x,x),(x)) fill=M bold=out_2\n"
        "disc G type=((x,x)) fill=M bold=out_1\n"
        "connect G.out1 -> F.out1\n"
    )
    [c] = parsed.diagram.connections
    assert (c.source, c.out, c.target, c.kind, c.slot) == ("G", 1, "F", "out", 1)
    assert str(c) == "G.out1 -> F.out1"
    assert check_admissible(parsed.diagram).ok
    assert parse(render(parsed)).diagram == parsed.diagram


def test_unknown_connection_kind_is_not_admissible():
    discs = (Disc("F", (("x", "x"),), Arrow("out", 1)), Disc("G", (("x", "x"),), Arrow("out", 1)))
    verdict = check_admissible(Diagram(discs, (Connection("G", 1, "F", 1, "side"),)))
    assert any("unknown arrow kind" in problem for problem in verdict.problems)


# =============================================================================
# SIGNS
# =============================================================================

# G (one input r, value q) plugged into the second input of F (inputs p q,
# value y), both read at their only output.
PLUG = Diagram(
    (Disc("F", (("x", "x", "x"),), Arrow(OUT, 1)), Disc("G", (("x", "x"),), Arrow(OUT, 1))),
    (Connection("G", 1, "F", 2),),
)


def loops(**degrees):
    return GradedQuiver.build("A", ["x"], [(name, "x", "x", g) for name, g in degrees.items()])


def single(Q, d, inputs, output, value):
    entry = cochain(inputs, output)
    return MultiElement(Ambient.NECKLACE, Q, d, entry_degree(entry, d), {entry: Fraction(value)})


@pytest.mark.parametrize("p_degree, expected", [(0, -1), (1, 1)])
def test_plugging_an_odd_disc_past_a_letter(p_degree, expected):
    Q = loops(p=p_degree, q=1, r=0, y=1)
    p, q, r, y = (Q.find(name) for name in "pqry")
    F = single(Q, 1, (p, q), y, 1)
    G = single(Q, 1, (r,), q, 1)
    assert G.degree == 1
    assert F.degree == 1 - p_degree
    result = evaluate(FilledDiagram(PLUG, {"F": F, "G": G}))
    assert result.terms == {cochain((p, r), y): Fraction(expected)}


def plug_coefficient(p, q, r, y, d, cF, cG):
    """Coefficient of (p r) -> y in the PLUG evaluation, from the j-images by hand."""

    def shifted(g):
        return g - 1

    def closing(g):
        return -g - d

    in_F, in_G, in_R = shifted(p) + shifted(q), shifted(r), shifted(p) + shifted(r)
    G_degree = shifted(q) - shifted(r)
    exponent = closing(y) * (in_F + in_R) + G_degree * shifted(p) + closing(q) * in_G
    q_pairing = sign(q * (d + 1))
    return cF * cG * q_pairing * sign(exponent)


@pytest.mark.parametrize(
    "p, q, r, y, d", list(itertools.product(range(3), range(3), range(3), range(3), DIMENSIONS))
)
def test_plug_signs_match_the_closed_form(p, q, r, y, d):
    Q = loops(p=p, q=q, r=r, y=y)
    P, Qv, R, Y = (Q.find(name) for name in "pqry")
    F = single(Q, d, (P, Qv), Y, 2)
    G = single(Q, d, (R,), Qv, -3)
    result = evaluate(FilledDiagram(PLUG, {"F": F, "G": G}))
    expected = plug_coefficient(p, q, r, y, d, 2, -3)
    assert result.terms == {cochain((P, R), Y): Fraction(expected)}


LETTERS = loops(t=0, u=1, v=2)


def j_word(entry, d):
    """The j-image word of an entry and its sign exponent, term by term."""
    n = entry.n
    A = [sum(a.degree - 1 for a in block) for block in entry.blocks]
    U = [-o.degree - d for o in entry.outputs]
    eps = sum(U[n - 1] * A[i] for i in range(n))
    for i in range(n - 1):
        eps += U[n - 1] * U[i]
        for k in range(i + 1, n):
            eps += A[i] * A[k] + U[i] * A[k]
    word = []
    for i in range(n, 0, -1):
        word.extend(entry.blocks[i - 1])
        if i > 1:
            word.append(partner(entry.outputs[i - 2], d))
    return tuple(word), eps


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(
    strat.sampled_from(DIMENSIONS),
    strat.sampled_from([-1, 0, 1, 2]),
    strat.sampled_from([1, -2, 3]),
    strat.data(),
)
def test_reading_at_the_last_output_is_j(d, degree, value, data):
    pool = sorted(candidate_entries(LETTERS, d, degree, Truncation(3, 2)))
    hypothesis.assume(pool)
    entry = data.draw(strat.sampled_from(pool))
    inputs, output, coef = read_at(entry, Fraction(value), d, arrow_position(entry, OUT, entry.n))
    word, eps = j_word(entry, d)
    last = entry.outputs[-1]
    assert inputs == word
    assert output == last
    assert coef == pair_sign(last, partner(last, d), d) * sign(eps) * value


# =============================================================================
# ELIMINATION ORDER, EXHAUSTIVELY
# =============================================================================

LOOP = loops(t=0, u=1)
SHAPES = ((("x", "x"), ("x",)), (("x", "x", "x"),))
FILLING_DEGREES = {"F": 1, "G": 0, "H": 1}


def full_filling(degree):
    """Every entry of one degree on LOOP, coefficients cycling through 1, 2, 3."""
    pool = sorted(candidate_entries(LOOP, 1, degree, Truncation(2, 2)))
    terms = {entry: Fraction(k % 3 + 1) for k, entry in enumerate(pool)}
    return MultiElement(Ambient.NECKLACE, LOOP, 1, degree, terms)


def edges(up, down):
    """Every connection between two discs, with the arrow on down's side."""
    for m in range(1, down.n_outputs + 1):
        for arrow in up.arrows():
            yield Connection(down.name, m, up.name, arrow.index, arrow.kind), Arrow(OUT, m)
    for k in range(1, up.n_outputs + 1):
        for arrow in down.arrows():
            yield Connection(up.name, k, down.name, arrow.index, arrow.kind), arrow


def admissible_diagrams(names, tree):
    """Every admissible diagram on the (parent, child) pairs of tree, rooted at names[0]."""
    root = names[0]
    for shapes in itertools.product(SHAPES, repeat=len(names)):
        plain = {name: Disc(name, shape) for name, shape in zip(names, shapes, strict=True)}
        options = [list(edges(plain[up], plain[down])) for up, down in tree]
        for chosen in itertools.product(*options):
            connections = tuple(c for c, _ in chosen)
            bolds = {down: end for (_, down), (_, end) in zip(tree, chosen, strict=True)}
            used = {end for c in connections for end in c.ends()}
            for bold in plain[root].arrows():
                if (root, bold) in used:
                    continue
                discs = tuple(
                    Disc(name, plain[name].type, bold if name == root else bolds[name])
                    for name in names
                )
                D = Diagram(discs, connections)
                if check_admissible(D):
                    yield D


@pytest.mark.parametrize(
    "names, tree, orders",
    [
        (("F", "G"), (("F", "G"),), 1),
        (("F", "G", "H"), (("F", "G"), ("F", "H")), 2),
        (("F", "G", "H"), (("F", "G"), ("G", "H")), 1),
    ],
)
def test_no_elimination_order_changes_the_result(names, tree, orders):
    fillings = {name: full_filling(FILLING_DEGREES[name]) for name in names}
    seen, nonzero = 0, 0
    for D in admissible_diagrams(names, tree):
        results = order_independence(FilledDiagram(D, fillings))
        assert len(results) == orders
        (_, first), *others = results
        for order, other in others:
            assert (other - first).is_zero(), f"{order} on {D}"
        seen += 1
        nonzero += not first.is_zero()
    assert seen > 0
    assert nonzero > 0

"""
Diagram text format.

One statement per line:

    disc <id> type=((x,y),(y,x)) fill=<element>#<tag> bold=<out_k|in_k|none>
    connect <idA>.out<i> -> <idB>.in<j>
    connect <idA>.out<i> -> <idB>.out<j>

`fill` names an element of the workspace; the optional #<tag> after it is
kept as a label only. Blank lines and lines starting with // are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import pyparsing as pp

from diagrams import Arrow, Connection, Diagram, Disc
from errors import DiagramSyntaxError

identifier = pp.Word(pp.alphas + "_", pp.alphanums + "_'")
integer = pp.Word(pp.nums)
integer.set_parse_action(lambda tokens: int(tokens[0]))

LPAR, RPAR = pp.Suppress("("), pp.Suppress(")")
objects = pp.Group(LPAR + pp.DelimitedList(identifier) + RPAR)
type_option = pp.Suppress(pp.Literal("type=")) + pp.Group(LPAR + pp.DelimitedList(objects) + RPAR)(
    "type"
)

fill_option = (
    pp.Suppress(pp.Literal("fill="))
    + identifier("element")
    + pp.Opt(pp.Suppress("#") + pp.Word(pp.alphanums + "_-,")("tag"))
)

arrow = pp.Group(pp.one_of("out in")("kind") + pp.Suppress(pp.Opt("_")) + integer("index"))
bold_option = pp.Suppress(pp.Literal("bold=")) + (pp.Literal("none")("bold") | arrow("bold"))

disc_statement = (
    pp.Keyword("disc")("statement")
    + identifier("name")
    + type_option
    + pp.Opt(fill_option)
    + pp.Opt(bold_option)
)

connect_statement = (
    pp.Keyword("connect")("statement")
    + identifier("source")
    + pp.Suppress(".")
    + pp.Suppress(pp.Literal("out"))
    + integer("out")
    + pp.Suppress("->")
    + identifier("target")
    + pp.Suppress(".")
    + pp.one_of("in out")("kind")
    + integer("slot")
)

statement = (disc_statement | connect_statement) + pp.StringEnd()


@dataclass
class ParsedDiagram:
    diagram: Diagram
    fills: dict[str, str] = field(default_factory=dict)
    tags: dict[str, str] = field(default_factory=dict)


def parse_line(text: str) -> pp.ParseResults:
    return statement.parse_string(text)


def parse(source: str) -> ParsedDiagram:
    """Parse a whole diagram file; errors carry the 1-based line and column."""
    discs: list[Disc] = []
    connections: list[Connection] = []
    fills: dict[str, str] = {}
    tags: dict[str, str] = {}
    for number, line in enumerate(source.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("//"):
            continue
        try:
            result = parse_line(line)
        except pp.ParseException as exc:
            raise DiagramSyntaxError(f"cannot parse {stripped!r}", number, exc.col) from exc
        if result.statement == "disc":
            name = result.name
            if any(d.name == name for d in discs):
                raise DiagramSyntaxError(f"disc {name} declared twice", number, 1)
            sig = tuple(tuple(t) for t in result.type)
            bold = None
            if "bold" in result and result.bold != "none":
                bold = Arrow(result.bold.kind, result.bold.index)
            discs.append(Disc(name, sig, bold))
            if "element" in result:
                fills[name] = result.element
            if "tag" in result:
                tags[name] = result.tag
        else:
            connections.append(
                Connection(result.source, result.out, result.target, result.slot, result.kind)
            )
    known = {d.name for d in discs}
    for c in connections:
        for name in (c.source, c.target):
            if name not in known:
                raise DiagramSyntaxError(f"connection {c} uses undeclared disc {name}")
    return ParsedDiagram(Diagram(tuple(discs), tuple(connections)), fills, tags)


def render(parsed: ParsedDiagram) -> str:
    """Text form accepted by parse()."""
    lines = []
    for disc in parsed.diagram.discs:
        sig = "(" + ",".join("(" + ",".join(t) + ")" for t in disc.type) + ")"
        parts = [f"disc {disc.name} type={sig}"]
        if disc.name in parsed.fills:
            tag = parsed.tags.get(disc.name)
            parts.append(f"fill={parsed.fills[disc.name]}" + (f"#{tag}" if tag else ""))
        parts.append(f"bold={disc.bold.kind}_{disc.bold.index}" if disc.bold else "bold=none")
        lines.append(" ".join(parts))
    lines.extend(f"connect {c}" for c in parsed.diagram.connections)
    return "\n".join(lines) + "\n"

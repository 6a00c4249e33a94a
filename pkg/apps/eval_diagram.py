"""
eval-diagram: evaluate a disc diagram filled with workspace elements.

The diagram file uses the diagram language of diagram_dsl; every disc
needs fill=<element name>. The evaluation is repeated under every valid
elimination order and any disagreement is reported as a residual.
"""

from __future__ import annotations

from pathlib import Path

import diagram_dsl
import workspace
from command_base import CommandBase
from diagrams import FilledDiagram, order_independence
from errors import DiagramSyntaxError
from reports import Report


class EvalDiagram(CommandBase):
    name = "eval-diagram"
    help = "evaluate a filled disc diagram under every elimination order"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("diagram", help="diagram file")
        parser.add_argument("--output", help="write the workspace with the result added")
        parser.add_argument("--name", default="result", help="element name for --output")

    def on_launch(self):
        super().on_launch()
        path = Path(self.args.diagram)
        try:
            source = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DiagramSyntaxError(f"cannot read {path}: {exc}") from None
        parsed = diagram_dsl.parse(source)
        missing = [d.name for d in parsed.diagram.discs if d.name not in parsed.fills]
        if missing:
            raise DiagramSyntaxError(f"discs without fill=: {', '.join(missing)}")
        fillings = {disc: self.ws.element(name) for disc, name in parsed.fills.items()}
        self.filled = FilledDiagram(parsed.diagram, fillings)

    def _orders(self) -> Report:
        report = Report("order-independence")
        results = order_independence(self.filled)
        first_order, first = results[0]
        for order, result in results[1:]:
            for entry, value in (result - first).items():
                report.add_entry(entry, value)
            if not (result - first).is_zero():
                report.note(f"order {order} differs from {first_order}")
        report.note(f"{len(results)} orders, result has {len(first)} entries")
        if self.args.output:
            self.ws.elements[self.args.name] = first
            workspace.save(self.ws, self.args.output)
        return report

    def checks(self):
        return [self._orders]

"""
compose-pcy: composite of two workspace morphisms, checked against the
morphism equation between the outer structures.

    necklace compose-pcy ws.json --first Phi --second Psi [--against Chi] [--output out.json]

--against compares the composite with another morphism componentwise;
--output writes the workspace with the composite added as <second>_<first>.
"""

from __future__ import annotations

import workspace
from command_base import CommandBase
from morphisms import check_pcy_morphism, morphism_residual, pcy_compose


class ComposePCY(CommandBase):
    name = "compose-pcy"
    help = "composition of pre-Calabi-Yau morphisms"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("--first", required=True, help="morphism applied first")
        parser.add_argument("--second", required=True, help="morphism applied second")
        parser.add_argument("--against", help="morphism the composite should equal")
        parser.add_argument("--output", help="write the workspace with the composite added")

    def on_launch(self):
        super().on_launch()
        first, second = self.args.first, self.args.second
        self.M_A, _ = self.ws.structures(first)
        _, self.M_C = self.ws.structures(second)
        self.composite = pcy_compose(
            self.ws.morphism(first).morphism, self.ws.morphism(second).morphism
        )
        if self.args.output:
            name = f"{second}_{first}"
            self.ws.elements[name] = self.composite.element
            self.ws.morphisms[name] = workspace.MorphismRecord(
                self.composite,
                self.ws.morphism(first).source_structure,
                self.ws.morphism(second).target_structure,
                None,
                name,
            )
            workspace.save(self.ws, self.args.output)

    def checks(self):
        checks = [lambda: check_pcy_morphism(self.composite, self.M_A, self.M_C)]
        if self.args.against:
            other = self.ws.morphism(self.args.against).morphism
            checks.append(lambda: morphism_residual(self.composite, other))
        return checks

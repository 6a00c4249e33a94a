"""
check-morphism: the pre-CY morphism equation for a workspace morphism,
optionally with the good or nice balancing identity.
"""

from __future__ import annotations

from command_base import CommandBase
from morphisms import check_good_nice, check_pcy_morphism, check_structures


class CheckMorphism(CommandBase):
    name = "check-morphism"
    help = "pre-Calabi-Yau morphism equation (and good / nice)"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("--morphism", help="morphism name (default: the only one)")
        parser.add_argument("--mode", choices=("equation", "good", "nice"), default="equation")

    def on_launch(self):
        super().on_launch()
        name = self.pick_morphism(self.args.morphism)
        self.F = self.ws.morphism(name).morphism
        self.M_A, self.M_B = self.ws.structures(name)
        check_structures(self.F, self.M_A, self.M_B)

    def checks(self):
        checks = [lambda: check_pcy_morphism(self.F, self.M_A, self.M_B)]
        if self.args.mode != "equation":
            checks.append(lambda: check_good_nice(self.F, self.M_A, self.M_B, self.args.mode))
        return checks

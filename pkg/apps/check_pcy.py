"""
check-pcy: the necklace Maurer-Cartan equation of a pre-Calabi-Yau structure.

With --equivalence the induced cyclic structure on A (+) A*[d-1] is
checked as well, together with its round trip back to M.
"""

from __future__ import annotations

from command_base import CommandBase
from correspondence import check_equivalence
from multimap import Ambient
from necklace import check_pcy


class CheckPCY(CommandBase):
    name = "check-pcy"
    help = "necklace Maurer-Cartan equation [M, M] = 0"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("--element", help="element name (default: the only necklace one)")
        parser.add_argument(
            "--equivalence",
            action="store_true",
            help="also check Stasheff on the boundary completion",
        )

    def checks(self):
        M = self.pick_element(self.args.element, Ambient.NECKLACE)
        checks = [lambda: check_pcy(M, self.max_arity)]
        if self.args.equivalence:
            checks.append(lambda: check_equivalence(M, self.max_arity))
        return checks

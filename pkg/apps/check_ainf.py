"""
check-ainf: the Stasheff identities of a degree-1 Hochschild element.

    python main.py check-ainf fixtures/broken.json --max-arity 4
"""

from __future__ import annotations

from command_base import CommandBase
from hochschild import check_stasheff
from multimap import Ambient


class CheckAInf(CommandBase):
    name = "check-ainf"
    help = "Stasheff identities of an A-infinity structure"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("--element", help="element name (default: the only hochschild one)")

    def checks(self):
        sm = self.pick_element(self.args.element, Ambient.HOCHSCHILD)
        return [lambda: check_stasheff(sm, self.max_arity)]

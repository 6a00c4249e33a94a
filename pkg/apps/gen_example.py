"""
gen-example: generate a workspace for one of the built-in examples and
check what was generated.

    point               k, one object
    trivial_extension   k[e]/e^2
    a2_quiver           x -a-> y with zero structure
    graded_a2           x -a-> y with |a| = 2
    exterior            k[e]/e^2 with |e| = 1, graded signs
    broken              a non-associative product, fails check-ainf at arity 3
    identity            the identity morphism of the trivial extension
    augmentation        k[e]/e^2 -> k, e -> 0
"""

from __future__ import annotations

from functools import partial

import workspace
from command_base import CommandBase
from generators import KINDS, MORPHISM_KINDS, example_workspace
from hochschild import check_stasheff
from morphisms import check_pcy_morphism
from necklace import check_pcy


class GenExample(CommandBase):
    name = "gen-example"
    help = "generate an example workspace and check it"

    def on_install(self, parser):
        parser.add_argument("kind", choices=[*KINDS, *MORPHISM_KINDS])
        parser.add_argument("--d", type=int, default=1)
        parser.add_argument("--output", help="write the workspace here")

    def on_launch(self):
        self.ws = example_workspace(self.args.kind, self.args.d, self.truncation)
        if self.args.output:
            workspace.save(self.ws, self.args.output)

    def checks(self):
        checks = []
        for name, E in sorted(self.ws.elements.items()):
            if name.startswith("m_"):
                checks.append(partial(check_stasheff, E, self.max_arity))
            else:
                checks.append(partial(check_pcy, E, self.max_arity))
        for name, record in self.ws.morphisms.items():
            M_A, M_B = self.ws.structures(name)
            checks.append(partial(check_pcy_morphism, record.morphism, M_A, M_B))
        return checks

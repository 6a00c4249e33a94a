"""
bracket-compare: j intertwines the necklace compositions with the
Gerstenhaber ones, and the bracket of the cyclic completions restricts to
j of the necklace bracket.

SOURCES:
--------
    random-seed=N     seeded random invariant pairs on a generated quiver
    WORKSPACE         two workspace elements, --left and --right
"""

from __future__ import annotations

import re
from functools import partial

import workspace
from command_base import CommandBase
from correspondence import bracket_compare, check_boundary_bracket
from defaults import DEFAULT_SEED
from errors import WorkspaceError
from generators import KINDS, example, random_invariant_element
from multimap import Ambient, Truncation

RANDOM_SOURCE = re.compile(r"^random-seed=(?P<seed>-?\d+)$")
RANDOM_MAX_OUTPUTS = 2


class BracketCompare(CommandBase):
    name = "bracket-compare"
    help = "necklace bracket against the Gerstenhaber bracket through j"

    def on_install(self, parser):
        parser.add_argument("source", help=f"workspace file or random-seed=N (e.g. {DEFAULT_SEED})")
        parser.add_argument("--left", help="first element (workspace source)")
        parser.add_argument("--right", help="second element (workspace source)")
        parser.add_argument("--quiver", choices=sorted(KINDS), default="trivial_extension")
        parser.add_argument("--d", type=int, default=1)
        parser.add_argument("--pairs", type=int, default=1, help="random pairs to compare")

    def on_launch(self):
        match = RANDOM_SOURCE.match(self.args.source)
        if match is None:
            self.ws = self._load_workspace()
            self.pairs = [
                (
                    self.pick_element(self.args.left, Ambient.NECKLACE),
                    self.pick_element(self.args.right, Ambient.NECKLACE),
                )
            ]
            return
        seed = int(match["seed"])
        bound = Truncation(self.max_arity, self.args.max_outputs or RANDOM_MAX_OUTPUTS)
        Q, _, _ = example(self.args.quiver, self.args.d)
        self.pairs = [
            (
                random_invariant_element(Q, self.args.d, 1, seed + 2 * k, bound),
                random_invariant_element(Q, self.args.d, 1, seed + 2 * k + 1, bound),
            )
            for k in range(self.args.pairs)
        ]

    def _load_workspace(self):
        if self.args.left is None or self.args.right is None:
            raise WorkspaceError("a workspace source needs --left and --right")
        return workspace.load(self.args.source, self.truncation)

    def checks(self):
        checks = []
        for F, G in self.pairs:
            checks.append(partial(bracket_compare, F, G))
            checks.append(partial(check_boundary_bracket, F, G))
        return checks

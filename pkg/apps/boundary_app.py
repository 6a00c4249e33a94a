"""
boundary: the hat morphism of a pre-CY morphism and its checks.

    --mode strict    from the morphism's hom map (the morphism must be strict)
    --mode general   from the morphism's own components; for a morphism that
                     also has a hom map, the result is compared with the
                     strict construction
"""

from __future__ import annotations

from boundary import boundary_difference, check_hat, general_boundary, strict_boundary
from command_base import CommandBase
from errors import WorkspaceError


class Boundary(CommandBase):
    name = "boundary"
    help = "A-infinity structure on A (+) B*[d-1] induced by a pre-CY morphism"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("--morphism", help="morphism name (default: the only one)")
        parser.add_argument("--mode", choices=("strict", "general"), default="strict")

    def on_launch(self):
        super().on_launch()
        name = self.pick_morphism(self.args.morphism)
        record = self.ws.morphism(name)
        M_A, M_B = self.ws.structures(name)
        F = record.morphism
        self.strict = None
        if record.hom_map is not None:
            self.strict = strict_boundary(F.source, F.target, F.phi0, record.hom_map, M_A, M_B)
        elif self.args.mode == "strict":
            raise WorkspaceError(f"morphisms.{name}: strict mode needs a hom_map")
        self.hat = self.strict
        if self.args.mode == "general":
            self.hat = general_boundary(F, M_A, M_B)

    def checks(self):
        checks = [lambda: check_hat(self.hat, self.max_arity)]
        if self.args.mode == "general" and self.strict is not None:
            checks.append(lambda: boundary_difference(self.hat, self.strict))
        return checks

"""
check-cyclic: cyclicity of an A-infinity structure against a pairing.

A Hochschild element is checked against a workspace form (--form, or the
only form on its quiver). A necklace element is first completed to the
boundary quiver, then checked against the natural pairing and for
rotation invariance of its closed values.
"""

from __future__ import annotations

from command_base import CommandBase
from correspondence import check_cyclic_coderivation, pcy_to_cyclic_ainf
from errors import WorkspaceError
from hochschild import check_almost_cyclic
from multimap import Ambient
from quiver import FormKind


class CheckCyclic(CommandBase):
    name = "check-cyclic"
    help = "almost cyclicity of a structure with respect to a pairing"

    def on_install(self, parser):
        self.add_workspace(parser)
        parser.add_argument("--element", help="element name (default: the only one)")
        parser.add_argument("--form", help="form name, for hochschild elements")

    def _form(self, quiver_label: str):
        if self.args.form is not None:
            if self.args.form not in self.ws.forms:
                raise WorkspaceError(f"forms.{self.args.form}: no such form")
            return self.ws.forms[self.args.form]
        names = [
            n
            for n, model in self.ws.form_models.items()
            if model.quiver == quiver_label and model.kind is FormKind.NATURAL
        ]
        if len(names) != 1:
            raise WorkspaceError(f"choose a form with --form ({len(names)} candidates)")
        return self.ws.forms[names[0]]

    def checks(self):
        E = self.pick_element(self.args.element)
        if E.ambient is Ambient.NECKLACE:
            structure = pcy_to_cyclic_ainf(E)
            return [
                lambda: check_almost_cyclic(structure.sm, structure.form),
                lambda: check_cyclic_coderivation(structure.sm),
            ]
        if E.ambient is not Ambient.HOCHSCHILD:
            raise WorkspaceError(f"expected a hochschild or necklace element, got {E.ambient}")
        form = self._form(E.quiver.label)
        return [lambda: check_almost_cyclic(E, form)]

"""
Command Base Class
==================

Every CLI command is a CommandBase subclass living in apps/. The framework
finds it through apps/manifest.json and drives it through a fixed
lifecycle:

    install(parser)     on_install(parser)   add the command's own arguments
        |
        v
    start(args)  -----> on_launch()          load the workspace, build inputs
        |               checks()             independent checks to run
        |                   |
        |                   v
        |               run_checks()         all checks, concurrently
        |                   |
        v                   |
    exit code  <--------on_view(report)      print text or machine records

COMMON FLAGS:
-------------
    --max-arity N      largest arity (input count) a check looks at
    --max-outputs M    output bound for elements that carry no truncation
    --format FORMAT    "text" (default) or "machine", one JSON record per residual

The exit code is 0 iff no check reported a residual.

CREATING A COMMAND:
-------------------
    class CheckSomething(CommandBase):
        name = "check-something"
        help = "one line for the command list"

        def on_install(self, parser):
            self.add_workspace(parser)

        def checks(self):
            return [lambda: check_stasheff(self.pick_element(None), self.max_arity)]
"""

from __future__ import annotations

import argparse
import asyncio
import logging
from collections.abc import Callable

import workspace
from defaults import DEFAULT_MAX_ARITY, default_truncation
from errors import WorkspaceError
from multimap import MultiElement, Truncation
from reports import Report

log = logging.getLogger(__name__)

Check = Callable[[], Report]

EXIT_PASS = 0
EXIT_RESIDUALS = 1
EXIT_ERROR = 2


class CommandBase:
    """
    Attributes:
    -----------
    name : str
        The subcommand, as typed on the command line.
    help : str
        Shown in the command list.
    args : argparse.Namespace
        Parsed arguments, set by start().
    ws : workspace.Workspace
        The loaded workspace when the command takes one.
    """

    name = ""
    help = ""

    def __init__(self) -> None:
        self.args: argparse.Namespace | None = None
        self.ws: workspace.Workspace | None = None
        self.report: Report | None = None

    # =========================================================================
    # LIFECYCLE
    # =========================================================================

    def install(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--max-arity", type=int, default=None, metavar="N")
        parser.add_argument("--max-outputs", type=int, default=None, metavar="M")
        parser.add_argument("--format", choices=("text", "machine"), default="text")
        self.on_install(parser)

    def start(self, args: argparse.Namespace) -> int:
        self.args = args
        self.on_launch()
        self.report = asyncio.run(self.run_checks())
        self.on_view(self.report)
        return self.on_exit(self.report)

    def on_install(self, parser: argparse.ArgumentParser) -> None:
        """Add command arguments. Default: nothing."""

    def on_launch(self) -> None:
        """Load inputs. Default: the workspace named by the 'workspace' argument."""
        path = getattr(self.args, "workspace", None)
        if path is not None:
            self.ws = workspace.load(path, self.truncation)

    def checks(self) -> list[Check]:
        raise NotImplementedError

    def on_view(self, report: Report) -> None:
        if self.args.format == "machine":
            rendered = report.render_machine()
            if rendered:
                print(rendered)
        else:
            print(report.render_text())

    def on_exit(self, report: Report) -> int:
        return EXIT_PASS if report.passed else EXIT_RESIDUALS

    # =========================================================================
    # CHECK RUNNER
    # =========================================================================

    async def run_checks(self) -> Report:
        """Run every check in a worker thread; the merged report is canonically sorted."""
        checks = self.checks()
        results = await asyncio.gather(*(asyncio.to_thread(check) for check in checks))
        report = Report(self.name)
        for result in results:
            report.extend(result)
        report.residuals = report.sorted()
        log.info("[%s] %d checks, %d residuals", self.name, len(checks), len(report.residuals))
        return report

    # =========================================================================
    # HELPERS
    # =========================================================================

    @property
    def max_arity(self) -> int:
        inputs = self.truncation.max_inputs
        return DEFAULT_MAX_ARITY if inputs is None else inputs

    @property
    def truncation(self) -> Truncation:
        base = default_truncation()
        return Truncation(
            base.max_inputs if self.args.max_arity is None else self.args.max_arity,
            base.max_outputs if self.args.max_outputs is None else self.args.max_outputs,
        )

    @staticmethod
    def add_workspace(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("workspace", help="workspace JSON file")

    def pick_element(self, name: str | None, ambient=None) -> MultiElement:
        """The named element, or the only one of the given ambient."""
        if name is not None:
            return self.ws.element(name)
        candidates = [
            key for key, E in self.ws.elements.items() if ambient is None or E.ambient == ambient
        ]
        if len(candidates) != 1:
            raise WorkspaceError(
                f"choose an element with --element ({len(candidates)} candidates)"
            )
        log.debug("[%s] using element %s", self.name, candidates[0])
        return self.ws.element(candidates[0])

    def pick_morphism(self, name: str | None) -> str:
        if name is not None:
            self.ws.morphism(name)
            return name
        if len(self.ws.morphisms) != 1:
            raise WorkspaceError(
                f"choose a morphism with --morphism ({len(self.ws.morphisms)} candidates)"
            )
        return next(iter(self.ws.morphisms))

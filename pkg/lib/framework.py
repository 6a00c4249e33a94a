"""
Command Framework
=================

The framework turns the modules in apps/ into subcommands of one CLI:

- Reads apps/manifest.json, which maps module names to command names
- Imports a command module only when its command is run
- Builds an argparse parser with one subparser per command; only the
  dispatched command installs its arguments
- Runs the command and turns library errors into exit code 2

HOW IT WORKS:
-------------
1. main.py creates a Framework and calls run(argv)
2. scan_commands() reads the manifest; no module is imported yet
3. The first positional argument picks the command
4. get_or_load_command() imports apps.<module> and finds the CommandBase subclass
5. The command installs its arguments, parses the rest and starts

EXIT CODES:
-----------
    0   every check passed
    1   some check reported residuals
    2   bad input (workspace, diagram, arguments) or an engine error

USAGE:
------
    from framework import Framework

    sys.exit(Framework().run(sys.argv[1:]))
"""

from __future__ import annotations

# =============================================================================
# IMPORTS
# =============================================================================
import argparse
import importlib
import json
import logging
import sys
from pathlib import Path

from command_base import EXIT_ERROR, CommandBase
from errors import NecklaceError

log = logging.getLogger(__name__)

APPS_DIR = Path(__file__).resolve().parent.parent / "apps"
APPS_PACKAGE = "apps"


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)


# =============================================================================
# FRAMEWORK CLASS
# =============================================================================


class Framework:
    """Registry of the commands in apps/ and the entry point of the CLI."""

    def __init__(self, apps_dir: Path = APPS_DIR, package: str = APPS_PACKAGE) -> None:
        self._apps_dir = Path(apps_dir)
        self._package = package
        # command name -> module name, populated by scan_commands()
        self._registry: dict[str, str] | None = None
        self._instances: dict[str, CommandBase] = {}

    # =========================================================================
    # SCANNING
    # =========================================================================

    def scan_commands(self, force: bool = False) -> dict[str, str]:
        """Read the manifest without importing any command module."""
        if self._registry is not None and not force:
            return self._registry
        if force:
            self._instances.clear()
        manifest = self._load_manifest()
        self._registry = {}
        for module_name, command in manifest.items():
            if not (self._apps_dir / f"{module_name}.py").exists():
                log.warning("[scan] manifest names missing module %s", module_name)
                continue
            self._registry[command] = module_name
            log.debug("[scan] found command %s (%s)", command, module_name)
        return self._registry

    def _load_manifest(self) -> dict[str, str]:
        manifest_path = self._apps_dir / "manifest.json"
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except OSError:
            log.warning("[scan] no manifest at %s", manifest_path)
            return {}
        except ValueError as exc:
            log.warning("[scan] invalid JSON in %s: %s", manifest_path, exc)
            return {}
        log.debug("[scan] loaded manifest %s", manifest_path)
        return manifest

    def commands(self) -> list[str]:
        return sorted(self.scan_commands())

    # =========================================================================
    # LOADING
    # =========================================================================

    def get_or_load_command(self, command: str) -> CommandBase:
        if command in self._instances:
            return self._instances[command]
        registry = self.scan_commands()
        if command not in registry:
            raise KeyError(command)
        instance = self._load_command(registry[command])
        self._instances[command] = instance
        return instance

    def _load_command(self, module_name: str) -> CommandBase:
        module = importlib.import_module(f"{self._package}.{module_name}")
        cls = self._find_command_class(module)
        if cls is None:
            raise ImportError(f"{module_name} defines no CommandBase subclass")
        log.debug("[load] %s -> %s", module_name, cls.__name__)
        return cls()

    @staticmethod
    def _find_command_class(module) -> type[CommandBase] | None:
        for attr_name in dir(module):
            if attr_name.startswith("_"):
                continue
            attr = getattr(module, attr_name)
            if (
                isinstance(attr, type)
                and issubclass(attr, CommandBase)
                and attr is not CommandBase
                and attr.__module__ == module.__name__
            ):
                return attr
        return None

    # =========================================================================
    # PARSING AND RUNNING
    # =========================================================================

    def build_parser(self, selected: str | None = None) -> argparse.ArgumentParser:
        """Subparsers for every command; only the selected one is imported."""
        parser = argparse.ArgumentParser(
            prog="necklace",
            description="Exact checks for A-infinity and pre-Calabi-Yau structures.",
        )
        parser.add_argument("-v", "--verbose", action="count", default=0)
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
        for command in self.commands():
            if command != selected:
                subparsers.add_parser(command)
                continue
            instance = self.get_or_load_command(command)
            sub = subparsers.add_parser(command, help=instance.help, description=instance.help)
            instance.install(sub)
        return parser

    @staticmethod
    def _selected(argv: list[str]) -> str | None:
        """The first positional argument, the command name."""
        return next((arg for arg in argv if not arg.startswith("-")), None)

    def run(self, argv: list[str]) -> int:
        parser = self.build_parser(self._selected(argv))
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_ERROR if exc.code else 0
        configure_logging(args.verbose)
        command = self.get_or_load_command(args.command)
        try:
            return command.start(args)
        except NecklaceError as exc:
            log.error("[%s] %s", args.command, exc)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR

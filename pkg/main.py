"""
Necklace CLI Entry Point
========================

    python main.py COMMAND [ARGS...]

Puts lib/ and the repository root on sys.path, then hands the arguments
to the framework, which dispatches to the command modules in apps/.

COMMANDS:
---------
    check-ainf       Stasheff identities of an A-infinity structure
    check-pcy        necklace Maurer-Cartan equation of a pre-CY structure
    check-morphism   pre-CY morphism equation, optionally good / nice
    check-cyclic     almost cyclicity against a pairing
    bracket-compare  necklace bracket against the Gerstenhaber bracket
    boundary         hat morphism of a pre-CY morphism (--mode strict|general)
    compose-pcy      composite of two pre-CY morphisms
    eval-diagram     a filled disc diagram under every elimination order
    gen-example      built-in example workspaces

The environment variable NECKLACE_TRUNCATION ("N,M") sets the truncation
used when neither the file nor the flags give one.
"""

# =============================================================================
# PATH SETUP
# =============================================================================

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent
for entry in (ROOT, ROOT / "lib"):
    if str(entry) not in sys.path:
        sys.path.insert(0, str(entry))

from framework import Framework


def main(argv: list[str] | None = None) -> int:
    return Framework().run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

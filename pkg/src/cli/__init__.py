"""
Command-line surface: `python -m src.cli <subcommand> ...`.

=== STRUCTURE ===

    src/cli/
    ├── main.py    # argparse subcommands, RunConfig, exit codes
    ├── output.py  # 17-digit JSON documents and CSV text
    └── svg.py     # cross-section schematic
"""

from src.cli.main import COMMANDS, RunConfig, build_parser, main

__all__ = ["COMMANDS", "RunConfig", "build_parser", "main"]

"""CLI entrypoint for polytope-invariants."""

import sys
from typing import List, Optional

from main import run


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else list(argv)))

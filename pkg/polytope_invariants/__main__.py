"""Module entrypoint for python -m polytope_invariants."""

from .cli import main

if __name__ == "__main__":
    main()

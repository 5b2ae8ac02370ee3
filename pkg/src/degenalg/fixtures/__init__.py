"""Bundled fixture files: the standard 3-dimensional lie algebras, small
associative and graded algebras, and the degeneration witness library."""

from importlib import resources


def path(name: str) -> str:
    """Absolute path of a bundled fixture file."""
    return str(resources.files(__package__) / name)


def listing():
    return sorted(
        r.name
        for r in resources.files(__package__).iterdir()
        if r.name.endswith((".alg", ".wit"))
    )

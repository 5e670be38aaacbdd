"""Locate the toy fixtures that ship inside the package."""

from importlib import resources
from pathlib import Path


def toy(name: str) -> Path:
    return Path(str(resources.files("cmforge") / "data" / "toy" / name))

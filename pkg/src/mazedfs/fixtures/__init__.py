"""Canonical fixture mazes and graphs shipped with the package."""

from importlib import resources

from ..model import load

NAMES = ("FIX-Y", "FIX-L", "FIX-C", "FIX-C3", "FIX-T3", "FIX-R4", "FIX-E1")


def fixture_text(name: str) -> str:
    for ext in (".mz1", ".gr1"):
        path = resources.files(__name__) / (name + ext)
        if path.is_file():
            return path.read_text()
    raise KeyError(name)


def load_fixture(name: str):
    return load(fixture_text(name))

"""Example programs shipped with the checker."""

from importlib import resources

NAMES = ("map", "last", "ack", "f1g1", "f2", "push_left", "comb", "comb_size",
         "h123", "perms")


def source(name: str) -> str:
    return resources.files(__name__).joinpath(name + ".ml").read_text(encoding="utf-8")


def load(name: str):
    from ..frontend.parser import parse
    return parse(source(name))

"""Defines lookup of optional values in the configuration namespace."""

from types import SimpleNamespace


def lookup(config: SimpleNamespace, path: str, default=None):
    """Follow a dotted attribute path, returning default when any part is missing."""
    node = config
    try:
        for name in path.split("."):
            node = getattr(node, name)
    except AttributeError:
        return default
    return default if node is None else node

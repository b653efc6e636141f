"""Resource caps shared by every search in the package.

Defaults can be overridden per process with the ``DETSET_CAPS`` environment
variable, e.g. ``DETSET_CAPS="aut_cap=50000,node_budget=1000000"``.
"""

from __future__ import annotations

import dataclasses
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Caps:
    order_cap: int = 10_000  # largest concrete group we materialize
    subgroup_cap: int = 200  # full subgroup / normal-subgroup scans
    assoc_cap: int = 256  # exhaustive associativity check
    aut_cap: int = 1_000_000  # full Aut(G) enumeration
    explicit_work: int = 5_000_000  # |Aut|*|G| above which alpha uses search mode
    hom_cap: int = 1_000_000  # candidate combinations in hom_set
    node_budget: int = 100_000_000  # subset tests in alpha/gamma searches
    oracle_cap: int = 24  # brute-force alpha/gamma oracles
    subset_budget: int = 20_000  # minimum_determining_sets enumeration
    max_order: int = 63  # default catalog

    def replace(self, **changes: int) -> "Caps":
        return dataclasses.replace(self, **changes)


class CapExceeded(RuntimeError):
    """A configured resource cap was hit before the computation finished."""

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    names = {f.name for f in dataclasses.fields(Caps)}
    changes = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"bad DETSET_CAPS entry {item!r}")
        changes[key] = int(value)
    return base.replace(**changes)


_active: Caps | None = None


def default_caps() -> Caps:
    """Caps installed by ``use_caps``, else the environment, else the defaults."""
    if _active is not None:
        return _active
    env = os.environ.get("DETSET_CAPS")
    return parse_caps(env) if env else Caps()


@contextmanager
def use_caps(caps: Caps) -> Iterator[Caps]:
    global _active
    previous, _active = _active, caps
    try:
        yield caps
    finally:
        _active = previous

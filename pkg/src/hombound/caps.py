"""Resource limits for enumeration, chain expansion, and search."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import InvalidArgument

ENV_VAR = "HOMBOUND_CAPS"


@dataclass(frozen=True)
class ResourceCaps:
    """Hard limits; the raising site names the cap that fired."""

    max_poset_elements: int = 200_000
    max_backtrack_nodes: int = 10_000_000
    max_chains: int = 2_000_000
    max_coloring_nodes: int = 200_000_000
    dense_relation_limit: int = 4096

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise InvalidArgument(f"cap {f.name} must be positive")

    def with_overrides(self, text: str) -> "ResourceCaps":
        """Apply ``name=value,name=value`` overrides (the HOMBOUND_CAPS format)."""
        updates = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise InvalidArgument(f"bad caps override {item!r}, expected name=value")
            name, _, value = item.partition("=")
            name = name.strip()
            if name not in {f.name for f in fields(self)}:
                raise InvalidArgument(f"unknown cap {name!r}")
            try:
                updates[name] = int(value)
            except ValueError:
                raise InvalidArgument(f"cap {name} needs an integer, got {value!r}") from None
        return replace(self, **updates) if updates else self


DEFAULT_CAPS = ResourceCaps()


def caps_from_env(base: ResourceCaps | None = None) -> ResourceCaps:
    """DEFAULT_CAPS (or ``base``) with any HOMBOUND_CAPS overrides applied."""
    caps = base or DEFAULT_CAPS
    text = os.environ.get(ENV_VAR, "")
    return caps.with_overrides(text) if text else caps

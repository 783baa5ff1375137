"""Size guards for the exhaustive searches.

Every search in the package takes an optional :class:`Caps`; when omitted the
defaults below apply, optionally overridden by the ``TENSORSPACE_CAPS``
environment variable.  The variable holds either a JSON object or a comma
separated ``key=value`` list, e.g. ``perms=12,tuples=1e6``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "TENSORSPACE_CAPS"


class CapExceeded(RuntimeError):
    """A computation would exceed one of the configured size caps."""


@dataclass(frozen=True)
class Caps:
    perms: int = 16               # max universe size for automorphism search
    tuples: int = 10**7           # max |X|^k for orbit enumeration / relation sizes
    group: int = 10**6            # max order of an enumerated group
    monomial: int = 10**8         # max pruned monomial search space
    characters: int = 10**7       # max m^n * |G| for character sums
    configs: int = 10**7          # max configurations in extension checks

    def with_overrides(self, **kw) -> Caps:
        kw = {k: int(v) for k, v in kw.items() if v is not None}
        return replace(self, **kw)

    def check(self, name: str, value: int, what: str = "") -> None:
        limit = getattr(self, name)
        if value > limit:
            label = what or name
            raise CapExceeded(f"{label}: {value} exceeds cap {name}={limit}")


def _parse(text: str) -> dict[str, int]:
    text = text.strip()
    if not text:
        return {}
    if text.startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for item in text.split(","):
            key, _, value = item.partition("=")
            raw[key.strip()] = value.strip()
    known = {f.name for f in fields(Caps)}
    out = {}
    for key, value in raw.items():
        if key not in known:
            raise ValueError(f"unknown cap {key!r} in {ENV_VAR}")
        out[key] = int(float(value))
    return out


def default_caps() -> Caps:
    """Defaults with ``TENSORSPACE_CAPS`` applied."""
    return Caps().with_overrides(**_parse(os.environ.get(ENV_VAR, "")))


def resolve(caps: Caps | None) -> Caps:
    return default_caps() if caps is None else caps

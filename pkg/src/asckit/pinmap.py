"""Per-symbol pin offset tables used to compile schematics into netlists.

.asc files carry only a symbol name, anchor, and orientation; the pin
locations live in LTSpice's symbol library.  This registry ships offsets
for the generic component set on the usual 16-unit grid and can be
extended or overridden from a JSON file.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path


class PinMapError(ValueError):
    """Raised for malformed pin-map configuration."""


@dataclass(frozen=True)
class PinMap:
    kind: str
    letter: str
    pins: tuple[tuple[int, int], ...]
    bbox: tuple[int, int]


def _pm(kind: str, letter: str, pins: list[tuple[int, int]], bbox: tuple[int, int]) -> PinMap:
    return PinMap(kind, letter, tuple(pins), bbox)


# Offsets are at orientation R0.  Two-terminal kinds match the stock
# LTSpice drawings; multi-terminal kinds keep every pin on a distinct
# local y so rotated placements never stack two pins on one column.
BUILTIN_PINMAPS: dict[str, PinMap] = {
    pm.kind: pm
    for pm in (
        _pm("res", "R", [(16, 16), (16, 112)], (32, 128)),
        _pm("res2", "R", [(16, 16), (16, 112)], (32, 128)),
        _pm("cap", "C", [(16, 0), (16, 64)], (32, 64)),
        _pm("polcap", "C", [(16, 0), (16, 64)], (32, 64)),
        _pm("ind", "L", [(16, 16), (16, 112)], (32, 128)),
        _pm("ind2", "L", [(16, 16), (16, 112)], (32, 128)),
        _pm("voltage", "V", [(0, 16), (0, 112)], (48, 128)),
        _pm("current", "I", [(0, 0), (0, 80)], (48, 80)),
        _pm("diode", "D", [(16, 0), (16, 64)], (32, 64)),
        _pm("zener", "D", [(16, 0), (16, 64)], (32, 64)),
        _pm("npn", "Q", [(96, 0), (16, 48), (96, 96)], (96, 96)),
        _pm("pnp", "Q", [(96, 0), (16, 48), (96, 96)], (96, 96)),
        _pm("nmos", "M", [(48, 0), (16, 48), (48, 96)], (64, 96)),
        _pm("pmos", "M", [(48, 0), (16, 48), (48, 96)], (64, 96)),
        _pm("nmos4", "M", [(48, 0), (16, 32), (48, 96), (48, 64)], (64, 96)),
        _pm("pmos4", "M", [(48, 0), (16, 32), (48, 96), (48, 64)], (64, 96)),
        _pm("tline", "T", [(0, 16), (0, 80), (64, 48), (64, 112)], (64, 128)),
    )
}

# Default symbol per element letter, used when laying out a netlist.
LETTER_KINDS: dict[str, str] = {
    "R": "res",
    "C": "cap",
    "L": "ind",
    "V": "voltage",
    "I": "current",
    "D": "diode",
    "Q": "npn",
    "M": "nmos",
    "T": "tline",
}


def load_pinmaps(path: str | Path) -> dict[str, PinMap]:
    """Read registry entries from JSON, merged over the built-in table.

    Format: ``{"kind": {"letter": "R", "pins": [[x, y], ...],
    "bbox": [w, h]}, ...}``.
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise PinMapError(f"invalid pin-map JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise PinMapError("pin-map file must contain a JSON object")

    registry = dict(BUILTIN_PINMAPS)
    for kind, entry in raw.items():
        try:
            pins = tuple((int(x), int(y)) for x, y in entry["pins"])
            bbox = (int(entry["bbox"][0]), int(entry["bbox"][1]))
            letter = str(entry["letter"]).upper()
        except (KeyError, TypeError, ValueError) as exc:
            raise PinMapError(f"bad pin-map entry for {kind!r}: {exc}") from exc
        if not pins:
            raise PinMapError(f"pin-map entry for {kind!r} has no pins")
        registry[kind] = PinMap(kind, letter, pins, bbox)
    return registry


def registry_hash(registry: dict[str, PinMap]) -> str:
    """Stable digest of a registry, recorded in evaluation reports."""
    canon = {
        kind: {"letter": pm.letter, "pins": [list(p) for p in pm.pins], "bbox": list(pm.bbox)}
        for kind, pm in sorted(registry.items())
    }
    return hashlib.sha256(json.dumps(canon, sort_keys=True).encode("utf-8")).hexdigest()

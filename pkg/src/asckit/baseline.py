"""Rule-based netlist-to-schematic generator.

Components sit left to right in netlist order, rotated a quarter turn so
every pin lands on its own column; each net owns a horizontal lane below
the component row, and every pin drops a vertical stub onto its lane.
No two stub columns coincide and no two lanes share a height, so the
compiler's junction rules reconnect exactly the intended incidences:
compiling the emitted schematic reproduces the input topology (GED
score 1), by construction.  Aesthetics are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .asc import AscDocument, Flag, Orientation, SymbolInstance, Wire
from .extract import orientation_transform
from .netlist import Netlist
from .pinmap import LETTER_KINDS, PinMap
from .preprocess import normalize_sheet, recenter

COMPONENT_PITCH = 192
LANE_PITCH = 64
LANE_TOP = 256

_PLACEMENT = Orientation.R90


class LayoutError(ValueError):
    """Raised for netlists the baseline cannot place."""


@dataclass(frozen=True)
class ComponentSlot:
    name: str
    kind: str
    x: int
    y: int
    orientation: Orientation
    value: str | None
    pin_points: tuple[tuple[int, int], ...]
    nets: tuple[str, ...]


@dataclass(frozen=True)
class LayoutPlan:
    slots: tuple[ComponentSlot, ...]
    net_lanes: dict[str, int]
    stubs: tuple[tuple[int, int, int, str], ...]  # (x, y_pin, y_lane, net)


def _kind_for(element_letter: str, net_count: int) -> str:
    kind = LETTER_KINDS.get(element_letter)
    if kind is None:
        raise LayoutError(f"no symbol mapped for element letter {element_letter!r}")
    if element_letter == "M" and net_count == 4:
        return "nmos4"
    return kind


def plan_layout(netlist: Netlist, registry: dict[str, PinMap]) -> LayoutPlan:
    """Place components and assign net lanes; validates geometric safety."""
    if not netlist.elements:
        raise LayoutError("cannot lay out an empty netlist")

    slots: list[ComponentSlot] = []
    lanes: dict[str, int] = {}
    stubs: list[tuple[int, int, int, str]] = []
    used_columns: set[int] = set()

    for i, element in enumerate(netlist.elements):
        kind = _kind_for(element.letter, len(element.nets))
        pinmap = registry.get(kind)
        if pinmap is None:
            raise LayoutError(f"symbol kind {kind!r} missing from the pin-map registry")
        if len(pinmap.pins) != len(element.nets):
            raise LayoutError(
                f"element {element.name!r} has {len(element.nets)} nets but "
                f"{kind!r} exposes {len(pinmap.pins)} pins"
            )

        anchor_x = i * COMPONENT_PITCH
        anchor_y = 0
        pin_points = tuple(
            (anchor_x + dx, anchor_y + dy)
            for dx, dy in (orientation_transform(p, _PLACEMENT) for p in pinmap.pins)
        )

        for net in element.nets:
            if net not in lanes:
                lanes[net] = LANE_TOP + len(lanes) * LANE_PITCH

        for (px, py), net in zip(pin_points, element.nets):
            if px in used_columns:
                raise LayoutError(f"stub column collision at x={px} ({element.name})")
            used_columns.add(px)
            if py >= LANE_TOP:
                raise LayoutError(f"pin of {element.name!r} reaches below the lane band")
            stubs.append((px, py, lanes[net], net))

        slots.append(
            ComponentSlot(
                name=element.name,
                kind=kind,
                x=anchor_x,
                y=anchor_y,
                orientation=_PLACEMENT,
                value=" ".join(element.tail) if element.tail else None,
                pin_points=pin_points,
                nets=element.nets,
            )
        )

    return LayoutPlan(tuple(slots), lanes, tuple(stubs))


def emit_asc(plan: LayoutPlan) -> AscDocument:
    """Realize a plan as a schematic that compiles back to the input netlist."""
    wires: list[Wire] = []
    for x, y_pin, y_lane, _ in plan.stubs:
        wires.append(Wire(x, y_pin, x, y_lane))

    flags: list[Flag] = []
    for net, lane_y in plan.net_lanes.items():
        columns = sorted(x for x, _, _, stub_net in plan.stubs if stub_net == net)
        if len(columns) > 1:
            wires.append(Wire(columns[0], lane_y, columns[-1], lane_y))
        flags.append(Flag(columns[0], lane_y, net))

    symbols = tuple(
        SymbolInstance(
            kind=slot.kind,
            x=slot.x,
            y=slot.y,
            orientation=slot.orientation,
            attrs=tuple(
                [("InstName", slot.name)] + ([("Value", slot.value)] if slot.value else [])
            ),
        )
        for slot in plan.slots
    )

    doc = AscDocument(wires=tuple(wires), flags=tuple(flags), symbols=symbols)
    return recenter(normalize_sheet(doc))


def netlist_to_asc(netlist: Netlist, registry: dict[str, PinMap]) -> AscDocument:
    return emit_asc(plan_layout(netlist, registry))

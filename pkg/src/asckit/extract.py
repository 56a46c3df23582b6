"""Compile .asc schematics into SPICE netlists.

Pin positions are derived from the pin-map registry under the symbol's
orientation, wires are traced into nets with a union-find over connection
points, and one element card is emitted per symbol in file order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .asc import AscDocument, Orientation, SymbolInstance
from .netlist import ElementCard, Netlist
from .pinmap import PinMap

log = logging.getLogger(__name__)

Point = tuple[int, int]


class CompileError(ValueError):
    """Raised when a document cannot be compiled into a netlist."""


def orientation_transform(point: Point, orientation: Orientation) -> Point:
    """Rotate/mirror a symbol-local point.

    The frame matches file coordinates (y grows downward).  M-codes apply
    the x-mirror first, then the same-angle rotation; every M-code is an
    involution.
    """
    x, y = point
    if orientation.mirrored:
        x = -x
    angle = orientation.angle
    if angle == 0:
        return (x, y)
    if angle == 90:
        return (-y, x)
    if angle == 180:
        return (-x, -y)
    return (y, -x)


def pin_positions(
    symbol: SymbolInstance,
    registry: dict[str, PinMap],
    *,
    strict: bool = True,
) -> list[Point] | None:
    """Absolute pin coordinates of a symbol instance.

    Unknown symbol kinds raise in strict mode (the document counts as
    uncompilable, like schematics referencing missing library symbols);
    in lenient mode they yield None so callers can skip the symbol.
    """
    pinmap = registry.get(symbol.kind)
    if pinmap is None:
        if strict:
            raise CompileError(f"unknown symbol kind {symbol.kind!r}")
        log.debug("extract: skipping unknown symbol kind %r", symbol.kind)
        return None
    return [
        (symbol.x + dx, symbol.y + dy)
        for dx, dy in (orientation_transform(p, symbol.orientation) for p in pinmap.pins)
    ]


@dataclass
class NetAssignment:
    point_to_net: dict[Point, int]
    net_names: dict[int, str]

    def name_at(self, point: Point) -> str:
        return self.net_names[self.point_to_net[point]]


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Point, Point] = {}

    def add(self, p: Point) -> None:
        self.parent.setdefault(p, p)

    def find(self, p: Point) -> Point:
        root = p
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[p] != root:
            self.parent[p], p = root, self.parent[p]
        return root

    def union(self, a: Point, b: Point) -> None:
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """True when p lies on segment a-b (endpoints included); exact integer math."""
    (px, py), (ax, ay), (bx, by) = p, a, b
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def trace_nets(doc: AscDocument, pins: list[Point]) -> NetAssignment:
    """Group connection points into nets and name them.

    Points connect when they coincide, when a wire joins its two
    endpoints, or when a wire endpoint / pin / flag sits on a wire
    segment.  Two wires crossing interior-to-interior do not connect.
    Flag-named nets take the flag name (ground wins); remaining nets are
    numbered N001, N002, ... scanning wires in file order then pins in
    symbol order.
    """
    uf = _UnionFind()
    wires = [w for w in doc.wires if not w.is_zero_length]
    zero_length = [w for w in doc.wires if w.is_zero_length]
    if zero_length:
        log.debug("extract: %d zero-length wires treated as points", len(zero_length))

    for w in doc.wires:
        uf.union(w.start, w.end)
    touch_points: dict[Point, None] = {}
    for w in doc.wires:
        touch_points.setdefault(w.start)
        touch_points.setdefault(w.end)
    flag_points = [(f.x, f.y) for f in doc.flags]
    for p in (*flag_points, *pins):
        uf.add(p)
        touch_points.setdefault(p)

    for p in touch_points:
        for w in wires:
            if _on_segment(p, w.start, w.end):
                uf.union(p, w.start)

    # Name nets: flags first, ground always wins, two distinct non-ground
    # names on one net is a conflict.
    flag_names: dict[Point, list[str]] = {}
    for f in doc.flags:
        flag_names.setdefault(uf.find((f.x, f.y)), []).append(f.name)

    root_names: dict[Point, str] = {}
    for root, names in flag_names.items():
        non_ground = sorted(set(n for n in names if n != "0"))
        if len(non_ground) > 1:
            raise CompileError(f"conflicting flag names on one net: {non_ground}")
        if "0" in names:
            root_names[root] = "0"
        else:
            root_names[root] = non_ground[0]

    taken = set(root_names.values())
    counter = 0

    def next_auto() -> str:
        nonlocal counter
        while True:
            counter += 1
            name = f"N{counter:03d}"
            if name not in taken:
                taken.add(name)
                return name

    first_touch: list[Point] = [w.start for w in doc.wires] + pins
    for p in first_touch:
        root = uf.find(p)
        if root not in root_names:
            root_names[root] = next_auto()

    point_to_net: dict[Point, int] = {}
    net_ids: dict[Point, int] = {}
    net_names: dict[int, str] = {}
    for p in uf.parent:
        root = uf.find(p)
        if root not in net_ids:
            net_ids[root] = len(net_ids)
            net_names[net_ids[root]] = root_names[root]
        point_to_net[p] = net_ids[root]

    return NetAssignment(point_to_net, net_names)


def compile_asc(
    doc: AscDocument,
    registry: dict[str, PinMap],
    mode: str = "strict",
) -> Netlist:
    """Emit one element card per symbol, nets in pin order, values as tail.

    Raises :class:`CompileError` for documents that LTSpice could not
    netlist either: no components, unknown symbols (strict), missing
    InstName, duplicate names, or conflicting flag names.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown compile mode {mode!r}")
    strict = mode == "strict"

    placed: list[tuple[SymbolInstance, list[Point]]] = []
    for symbol in doc.symbols:
        pins = pin_positions(symbol, registry, strict=strict)
        if pins is not None:
            placed.append((symbol, pins))
    if not placed:
        raise CompileError("document has no compilable components")

    assignment = trace_nets(doc, [p for _, pins in placed for p in pins])

    elements: list[ElementCard] = []
    seen: set[str] = set()
    for symbol, pins in placed:
        name = symbol.inst_name
        if name is None:
            raise CompileError(f"symbol {symbol.kind!r} at ({symbol.x}, {symbol.y}) has no InstName")
        if name.upper() in seen:
            raise CompileError(f"duplicate InstName {name!r}")
        seen.add(name.upper())
        nets = tuple(assignment.name_at(p) for p in pins)
        tail = tuple(
            token for value in symbol.attr_values() for token in value.split()
        )
        elements.append(ElementCard(name, nets, tail))

    return Netlist(tuple(elements), ())

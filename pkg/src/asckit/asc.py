"""Data model, parser, and serializer for LTSpice ``.asc`` schematics.

The text format is line oriented: every line starts with a keyword
(``Version``, ``SHEET``, ``WIRE``, ``FLAG``, ``SYMBOL``, ``SYMATTR``)
followed by whitespace-separated fields.  Parsing normalizes whitespace,
so ``serialize_asc(parse_asc(t))`` is the canonical form of ``t`` and a
fixpoint of parse/serialize.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path


class AscParseError(ValueError):
    """Raised when .asc text cannot be parsed under the active mode."""


class Orientation(Enum):
    """Symbol orientation code: R* rotations, M* mirror-then-rotate."""

    R0 = "R0"
    R90 = "R90"
    R180 = "R180"
    R270 = "R270"
    M0 = "M0"
    M90 = "M90"
    M180 = "M180"
    M270 = "M270"

    @classmethod
    def from_code(cls, code: str) -> "Orientation":
        try:
            return cls(code)
        except ValueError:
            raise AscParseError(f"unknown orientation code {code!r}") from None

    @property
    def mirrored(self) -> bool:
        return self.value.startswith("M")

    @property
    def angle(self) -> int:
        return int(self.value[1:])


@dataclass(frozen=True)
class Wire:
    x1: int
    y1: int
    x2: int
    y2: int

    @property
    def is_zero_length(self) -> bool:
        return self.x1 == self.x2 and self.y1 == self.y2

    @property
    def start(self) -> tuple[int, int]:
        return (self.x1, self.y1)

    @property
    def end(self) -> tuple[int, int]:
        return (self.x2, self.y2)


@dataclass(frozen=True)
class Flag:
    x: int
    y: int
    name: str

    @property
    def is_ground(self) -> bool:
        return self.name == "0"


@dataclass(frozen=True)
class SymbolInstance:
    kind: str
    x: int
    y: int
    orientation: Orientation
    attrs: tuple[tuple[str, str], ...] = ()

    @property
    def inst_name(self) -> str | None:
        """Value of the first InstName attribute, if any."""
        for key, value in self.attrs:
            if key == "InstName":
                return value
        return None

    def attr_values(self, *, skip: str = "InstName") -> list[str]:
        return [value for key, value in self.attrs if key != skip]


@dataclass(frozen=True)
class AscDocument:
    version: int = 4
    sheet_index: int = 1
    # The two SHEET size fields are kept in file order; which one is the
    # height depends on the convention of the producing tool.
    sheet_a: int = 880
    sheet_b: int = 680
    wires: tuple[Wire, ...] = ()
    flags: tuple[Flag, ...] = ()
    symbols: tuple[SymbolInstance, ...] = ()
    other_lines: tuple[str, ...] = ()

    def geometry_points(self, *, include_flags: bool = True) -> list[tuple[int, int]]:
        """Wire endpoints, flag positions, and symbol anchors, in file order."""
        points: list[tuple[int, int]] = []
        for w in self.wires:
            points.append(w.start)
            points.append(w.end)
        if include_flags:
            points.extend((f.x, f.y) for f in self.flags)
        points.extend((s.x, s.y) for s in self.symbols)
        return points


_KNOWN_KEYWORDS = {"Version", "SHEET", "WIRE", "FLAG", "SYMBOL", "SYMATTR"}


def _all_ints(tokens: list[str]) -> bool:
    return all(t.lstrip("+-").isdigit() for t in tokens)


def _int_fields(tokens: list[str], line: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise AscParseError(f"non-integer coordinate in line {line!r}") from None


def parse_asc(text: str, mode: str = "lenient") -> AscDocument:
    """Parse .asc text into an :class:`AscDocument`.

    ``mode`` is ``"lenient"`` (unrecognized lines are retained verbatim in
    ``other_lines``) or ``"strict"`` (they are errors).  Malformed
    WIRE/SYMBOL lines and orphan SYMATTR lines are errors in both modes.
    """
    if mode not in ("lenient", "strict"):
        raise ValueError(f"unknown parse mode {mode!r}")
    strict = mode == "strict"

    version: int | None = None
    sheet: tuple[int, int, int] | None = None
    wires: list[Wire] = []
    flags: list[Flag] = []
    symbols: list[SymbolInstance] = []
    attrs_per_symbol: list[list[tuple[str, str]]] = []
    other: list[str] = []
    have_symbol = False

    def reject(message: str, line: str) -> None:
        if strict:
            raise AscParseError(f"{message}: {line!r}")
        other.append(line)

    for raw in text.splitlines():
        line = raw.rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        keyword = tokens[0]

        if keyword == "Version":
            if len(tokens) != 2 or not tokens[1].lstrip("-").isdigit() or version is not None:
                reject("malformed or duplicate Version line", line)
                continue
            version = int(tokens[1])
        elif keyword == "SHEET":
            if len(tokens) != 4 or sheet is not None or not _all_ints(tokens[1:]):
                reject("malformed or duplicate SHEET line", line)
                continue
            idx, a, b = _int_fields(tokens[1:], line)
            sheet = (idx, a, b)
        elif keyword == "WIRE":
            if len(tokens) != 5:
                raise AscParseError(f"WIRE expects 4 coordinates: {line!r}")
            x1, y1, x2, y2 = _int_fields(tokens[1:], line)
            wires.append(Wire(x1, y1, x2, y2))
        elif keyword == "FLAG":
            if len(tokens) < 4 or not _all_ints(tokens[1:3]):
                reject("FLAG expects x y name", line)
                continue
            x, y = _int_fields(tokens[1:3], line)
            flags.append(Flag(x, y, " ".join(tokens[3:])))
        elif keyword == "SYMBOL":
            if len(tokens) != 5:
                raise AscParseError(f"SYMBOL expects kind x y orientation: {line!r}")
            x, y = _int_fields(tokens[2:4], line)
            orientation = Orientation.from_code(tokens[4])
            symbols.append(SymbolInstance(tokens[1], x, y, orientation))
            attrs_per_symbol.append([])
            have_symbol = True
        elif keyword == "SYMATTR":
            if len(tokens) < 3:
                reject("SYMATTR expects key and value", line)
                continue
            if not have_symbol:
                raise AscParseError(f"SYMATTR with no preceding SYMBOL: {line!r}")
            attrs_per_symbol[-1].append((tokens[1], " ".join(tokens[2:])))
        else:
            if strict:
                raise AscParseError(f"unknown keyword {keyword!r}: {line!r}")
            other.append(line)

    symbols = [
        replace(sym, attrs=tuple(attrs))
        for sym, attrs in zip(symbols, attrs_per_symbol)
    ]

    doc = AscDocument(
        version=version if version is not None else 4,
        sheet_index=sheet[0] if sheet else 1,
        sheet_a=sheet[1] if sheet else 880,
        sheet_b=sheet[2] if sheet else 680,
        wires=tuple(wires),
        flags=tuple(flags),
        symbols=tuple(symbols),
        other_lines=tuple(other),
    )
    return doc


def serialize_asc(doc: AscDocument) -> str:
    """Serialize a document to canonical .asc text (UTF-8, LF, trailing newline)."""
    lines = [f"Version {doc.version}", f"SHEET {doc.sheet_index} {doc.sheet_a} {doc.sheet_b}"]
    for w in doc.wires:
        lines.append(f"WIRE {w.x1} {w.y1} {w.x2} {w.y2}")
    for f in doc.flags:
        lines.append(f"FLAG {f.x} {f.y} {f.name}")
    for s in doc.symbols:
        lines.append(f"SYMBOL {s.kind} {s.x} {s.y} {s.orientation.value}")
        for key, value in s.attrs:
            lines.append(f"SYMATTR {key} {value}")
    lines.extend(doc.other_lines)
    return "\n".join(lines) + "\n"


def canonical_hash(doc: AscDocument) -> str:
    """SHA-256 of the canonical serialization; stable across input encodings."""
    return hashlib.sha256(serialize_asc(doc).encode("utf-8")).hexdigest()


_UTF16_LE_BOM = b"\xff\xfe"
_UTF8_BOM = b"\xef\xbb\xbf"


def decode_asc_bytes(data: bytes) -> str:
    """Decode raw schematic bytes.

    LTSpice emits UTF-16LE with a byte-order mark; corpus files are also
    found as plain ASCII/UTF-8.  Output text never carries a BOM.
    """
    if data.startswith(_UTF16_LE_BOM):
        return data[len(_UTF16_LE_BOM):].decode("utf-16-le")
    if data.startswith(_UTF8_BOM):
        return data[len(_UTF8_BOM):].decode("utf-8")
    return data.decode("utf-8")


def load_asc(path: str | Path, mode: str = "lenient") -> AscDocument:
    return parse_asc(decode_asc_bytes(Path(path).read_bytes()), mode=mode)


def save_asc(doc: AscDocument, path: str | Path) -> None:
    Path(path).write_text(serialize_asc(doc), encoding="utf-8")


def translate(doc: AscDocument, dx: int, dy: int) -> AscDocument:
    """Shift every wire, flag, and symbol anchor by (dx, dy)."""
    return replace(
        doc,
        wires=tuple(Wire(w.x1 + dx, w.y1 + dy, w.x2 + dx, w.y2 + dy) for w in doc.wires),
        flags=tuple(Flag(f.x + dx, f.y + dy, f.name) for f in doc.flags),
        symbols=tuple(replace(s, x=s.x + dx, y=s.y + dy) for s in doc.symbols),
    )

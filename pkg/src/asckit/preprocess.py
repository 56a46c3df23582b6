"""Corpus preprocessing: decoration stripping, attribute rewrites,
sheet normalization, recentering, and the keep/drop filter."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from .asc import AscDocument, AscParseError, parse_asc, translate
from .netlist import Netlist

log = logging.getLogger(__name__)

REASON_OK = "ok"
REASON_NO_PAIR = "no_symbol_symattr_pair"
REASON_UNCOMPILABLE = "uncompilable"

_DECORATION_KEYWORDS = {"TEXT", "RECTANGLE", "WINDOW", "LINE", "CIRCLE"}
_DROPPED_COMMANDS = {".backanno", ".lib", ".model"}


class PreprocessError(ValueError):
    """Raised for documents the geometry passes cannot handle."""


@dataclass(frozen=True)
class FilterVerdict:
    keep: bool
    reason: str

    def __post_init__(self) -> None:
        assert (self.reason == REASON_OK) == self.keep


def _bounds(points: list[tuple[int, int]]) -> tuple[int, int, int, int]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def normalize_sheet(doc: AscDocument) -> AscDocument:
    """Set the SHEET size fields to the coordinate spans.

    Height-like field: max minus min vertical coordinate; width-like
    field: the horizontal span.  Spans are taken over wire endpoints and
    symbol anchors (symbol glyph extents are not recorded in the file).
    """
    points = doc.geometry_points(include_flags=False)
    if not points:
        raise PreprocessError("cannot normalize a document with no wires or symbols")
    min_x, min_y, max_x, max_y = _bounds(points)
    return replace(doc, sheet_a=max_y - min_y, sheet_b=max_x - min_x)


def recenter(doc: AscDocument) -> AscDocument:
    """Translate all coordinates so the bounding-box center sits at the origin.

    The midpoint is floored so coordinates stay integral; the result is a
    fixpoint (recentering twice changes nothing) and is invariant under
    any prior translation of the input.
    """
    points = doc.geometry_points()
    if not points:
        raise PreprocessError("cannot recenter a document with no coordinates")
    min_x, min_y, max_x, max_y = _bounds(points)
    cx = (min_x + max_x) // 2
    cy = (min_y + max_y) // 2
    if cx == 0 and cy == 0:
        return doc
    return translate(doc, -cx, -cy)


def rewrite_symattr(doc: AscDocument) -> AscDocument:
    """Turn SpiceModel/ModelFile attributes into InstName.

    Each symbol ends with at most one InstName: the first one (after
    rewriting) wins and later ones are dropped.
    """
    dropped = 0
    new_symbols = []
    for symbol in doc.symbols:
        attrs: list[tuple[str, str]] = []
        have_inst = False
        for key, value in symbol.attrs:
            if key in ("SpiceModel", "ModelFile"):
                key = "InstName"
            if key == "InstName":
                if have_inst:
                    dropped += 1
                    continue
                have_inst = True
            attrs.append((key, value))
        new_symbols.append(replace(symbol, attrs=tuple(attrs)))
    if dropped:
        log.debug("preprocess: dropped %d extra InstName attributes", dropped)
    return replace(doc, symbols=tuple(new_symbols))


def strip_decorations(text: str) -> str:
    """Drop comment and drawing lines (*, TEXT, RECTANGLE, WINDOW, LINE, CIRCLE)."""
    kept = []
    for line in text.splitlines():
        tokens = line.split(None, 1)
        if tokens and (tokens[0].startswith("*") or tokens[0] in _DECORATION_KEYWORDS):
            continue
        kept.append(line)
    if not kept:
        return ""
    return "\n".join(kept) + "\n"


def filter_document(doc: AscDocument) -> FilterVerdict:
    """Keep only documents with at least one SYMBOL carrying a SYMATTR."""
    if any(symbol.attrs for symbol in doc.symbols):
        return FilterVerdict(True, REASON_OK)
    return FilterVerdict(False, REASON_NO_PAIR)


def clean_netlist(netlist: Netlist) -> Netlist:
    """Drop .backanno/.lib/.model commands; element cards are untouched."""
    commands = tuple(
        command
        for command in netlist.commands
        if command.text.split()[0].lower() not in _DROPPED_COMMANDS
    )
    return Netlist(netlist.elements, commands)


def preprocess_pipeline(raw_text: str) -> tuple[AscDocument | None, FilterVerdict]:
    """Full .asc preprocessing chain; idempotent on its own output.

    strip decorations -> lenient parse -> attribute rewrite -> sheet
    normalization -> recenter -> filter.  Parse failures yield a reject
    verdict instead of raising.
    """
    stripped = strip_decorations(raw_text)
    try:
        doc = parse_asc(stripped, mode="lenient")
    except AscParseError as exc:
        log.debug("preprocess: parse failed: %s", exc)
        return None, FilterVerdict(False, REASON_UNCOMPILABLE)
    doc = rewrite_symattr(doc)
    if doc.geometry_points(include_flags=False):
        doc = normalize_sheet(doc)
    if doc.geometry_points():
        doc = recenter(doc)
    return doc, filter_document(doc)

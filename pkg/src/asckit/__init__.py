"""asckit: LTSpice .asc / SPICE netlist conversion and evaluation toolkit."""

__version__ = "0.1.0"

from .asc import (
    AscDocument,
    AscParseError,
    Flag,
    Orientation,
    SymbolInstance,
    Wire,
    canonical_hash,
    decode_asc_bytes,
    parse_asc,
    serialize_asc,
)
from .netlist import (
    Command,
    ElementCard,
    Netlist,
    NetlistParseError,
    element_arity,
    parse_netlist,
    serialize_netlist,
)
from .extract import CompileError, compile_asc, orientation_transform, pin_positions, trace_nets
from .pinmap import BUILTIN_PINMAPS, PinMap, load_pinmaps
from .preprocess import (
    FilterVerdict,
    clean_netlist,
    filter_document,
    normalize_sheet,
    preprocess_pipeline,
    recenter,
    rewrite_symattr,
    strip_decorations,
)

__all__ = [
    "AscDocument",
    "AscParseError",
    "BUILTIN_PINMAPS",
    "Command",
    "CompileError",
    "ElementCard",
    "FilterVerdict",
    "Flag",
    "Netlist",
    "NetlistParseError",
    "Orientation",
    "PinMap",
    "SymbolInstance",
    "Wire",
    "__version__",
    "canonical_hash",
    "clean_netlist",
    "compile_asc",
    "decode_asc_bytes",
    "element_arity",
    "filter_document",
    "load_pinmaps",
    "normalize_sheet",
    "orientation_transform",
    "parse_asc",
    "parse_netlist",
    "pin_positions",
    "preprocess_pipeline",
    "recenter",
    "rewrite_symattr",
    "serialize_asc",
    "serialize_netlist",
    "strip_decorations",
    "trace_nets",
]

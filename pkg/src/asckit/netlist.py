"""Data model, parser, and serializer for SPICE netlists (.net)."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

log = logging.getLogger(__name__)


class NetlistParseError(ValueError):
    """Raised for malformed netlist text."""


# Pin counts per element letter for the device types used in this corpus.
# M defaults to 3 terminals; 4-net cards are detected per card (see
# parse_netlist).  X and anything unlisted have no fixed arity.
_ARITY = {
    "R": 2, "C": 2, "L": 2, "V": 2, "I": 2, "D": 2,
    "Q": 3, "J": 3, "M": 3,
    "T": 4,
}

_VALUE_TOKEN = re.compile(
    r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?(meg|mil|[tgkmunpfTGKMUNPF]|µ)?[a-zA-Zµ%]*$"
)


def element_arity(letter: str) -> int | None:
    """Pin count for an element letter, or None when not fixed (e.g. X)."""
    return _ARITY.get(letter.upper())


def _looks_like_value(token: str) -> bool:
    # Bare "0" is the ground net, never a value.
    if token == "0":
        return False
    return bool(_VALUE_TOKEN.match(token))


@dataclass(frozen=True)
class ElementCard:
    name: str
    nets: tuple[str, ...]
    tail: tuple[str, ...] = ()

    @property
    def letter(self) -> str:
        return self.name[0].upper()

    def to_line(self) -> str:
        return " ".join((self.name, *self.nets, *self.tail))


@dataclass(frozen=True)
class Command:
    text: str

    def __post_init__(self) -> None:
        if not self.text.startswith("."):
            raise NetlistParseError(f"command must start with '.': {self.text!r}")


@dataclass(frozen=True)
class Netlist:
    elements: tuple[ElementCard, ...] = ()
    commands: tuple[Command, ...] = ()

    def net_names(self) -> list[str]:
        """Distinct net names in first-appearance order."""
        seen: dict[str, None] = {}
        for element in self.elements:
            for net in element.nets:
                seen.setdefault(net)
        return list(seen)


def _split_card(tokens: list[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split a card's tokens (after the name) into nets and tail."""
    name = tokens[0]
    rest = tokens[1:]
    letter = name[0].upper()
    arity = element_arity(letter)

    if letter == "M":
        # LTSpice MOS cards carry 3 or 4 nets.  Count the plain tokens
        # (no "=") after the first three nets: a model token alone means
        # 3 nets, a spare plain token before it means a 4-net card.
        if len(rest) < 3:
            raise NetlistParseError(f"MOS card {name!r} has fewer than 3 nets")
        plain = 0
        for token in rest[3:]:
            if "=" in token:
                break
            plain += 1
        n_nets = 4 if plain >= 2 else 3
        if n_nets == 4 and len(rest) < 4:
            n_nets = 3
        if n_nets == 4:
            log.debug("netlist: %s read as a 4-net MOS card", name)
        return tuple(rest[:n_nets]), tuple(rest[n_nets:])

    if arity is not None:
        if len(rest) < arity:
            raise NetlistParseError(
                f"element {name!r} has {len(rest)} tokens but needs {arity} nets"
            )
        return tuple(rest[:arity]), tuple(rest[arity:])

    if letter == "X":
        # Subcircuit cards always end the net list with the subckt name:
        # the last plain token before any param is the model.
        n_plain = len(rest)
        for i, token in enumerate(rest):
            if "=" in token:
                n_plain = i
                break
        n_nets = max(0, n_plain - 1)
        return tuple(rest[:n_nets]), tuple(rest[n_nets:])

    # Other unknown letters: nets run until the first token that carries
    # "=" or reads as a value.
    n_nets = len(rest)
    for i, token in enumerate(rest):
        if "=" in token or _looks_like_value(token):
            n_nets = i
            break
    log.debug("netlist: heuristic net split for %s: %d nets", name, n_nets)
    return tuple(rest[:n_nets]), tuple(rest[n_nets:])


def parse_netlist(text: str) -> Netlist:
    """Parse netlist text; comment lines (leading ``*``) are dropped."""
    elements: list[ElementCard] = []
    commands: list[Command] = []
    seen_names: set[str] = set()

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("*"):
            continue
        if line.startswith("."):
            commands.append(Command(" ".join(line.split())))
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise NetlistParseError(f"element line has fewer than 2 tokens: {line!r}")
        name = tokens[0]
        key = name.upper()
        if key in seen_names:
            raise NetlistParseError(f"duplicate element name {name!r}")
        seen_names.add(key)
        nets, tail = _split_card(tokens)
        elements.append(ElementCard(name, nets, tail))

    return Netlist(tuple(elements), tuple(commands))


def serialize_netlist(netlist: Netlist) -> str:
    """One line per element, then commands; empty netlist serializes to ""."""
    lines = [element.to_line() for element in netlist.elements]
    lines.extend(command.text for command in netlist.commands)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def load_netlist(path: str | Path) -> Netlist:
    return parse_netlist(Path(path).read_text(encoding="utf-8"))


def save_netlist(netlist: Netlist, path: str | Path) -> None:
    Path(path).write_text(serialize_netlist(netlist), encoding="utf-8")

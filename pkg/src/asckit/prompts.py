"""The five conversion prompt templates and fenced-code extraction.

Templates live as text resources with ``{placeholder}`` markers so
rendering is byte-stable and testable against golden files.  Variants
1-3 are zero-shot; 4-5 carry a worked netlist-to-schematic example;
3 and 5 pin the first two output lines (the reference sheet header).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .asc import parse_asc
from .extract import compile_asc
from .netlist import Netlist, serialize_netlist
from .pinmap import PinMap


class PromptError(ValueError):
    """Raised for missing template slots or unusable responses."""


@dataclass(frozen=True)
class PromptVariant:
    id: int
    shots: str  # "zero" or "one"
    includes_sheet_header: bool
    includes_keywords: bool


VARIANTS: dict[int, PromptVariant] = {
    1: PromptVariant(1, "zero", False, False),
    2: PromptVariant(2, "zero", False, True),
    3: PromptVariant(3, "zero", True, False),
    4: PromptVariant(4, "one", False, False),
    5: PromptVariant(5, "one", True, False),
}


@dataclass(frozen=True)
class ExamplePair:
    netlist_text: str
    asc_text: str


def _resource_text(name: str) -> str:
    return resources.files("asckit").joinpath(f"resources/{name}").read_text(encoding="utf-8")


def load_template(variant_id: int) -> str:
    if variant_id not in VARIANTS:
        raise PromptError(f"unknown prompt variant {variant_id}")
    return _resource_text(f"prompts/prompt{variant_id}.txt")


def default_example_pair() -> ExamplePair:
    """The shipped low-pass-filter one-shot example."""
    return ExamplePair(
        netlist_text=_resource_text("example_lpf.net"),
        asc_text=_resource_text("example_lpf.asc"),
    )


def validate_example_pair(pair: ExamplePair, registry: dict[str, PinMap]) -> None:
    """The example .asc must compile to the example netlist byte-exactly."""
    compiled = serialize_netlist(compile_asc_text(pair.asc_text, registry))
    if compiled != pair.netlist_text:
        raise PromptError("example .asc does not compile to the example netlist")


def compile_asc_text(asc_text: str, registry: dict[str, PinMap]) -> Netlist:
    return compile_asc(parse_asc(asc_text, mode="lenient"), registry, mode="strict")


def render_prompt(
    variant_id: int,
    netlist_text: str,
    sheet_header: str | None = None,
    example: ExamplePair | None = None,
) -> str:
    """Byte-exact instantiation of a template.

    Variants 3/5 require ``sheet_header`` (the reference document's
    "Version ..." and "SHEET ..." lines); variants 4/5 require the
    in-context ``example``.
    """
    variant = VARIANTS.get(variant_id)
    if variant is None:
        raise PromptError(f"unknown prompt variant {variant_id}")
    text = load_template(variant_id)
    if variant.includes_sheet_header:
        if sheet_header is None:
            raise PromptError(f"prompt {variant_id} requires a sheet header")
        text = text.replace("{sheet_header}", sheet_header)
    if variant.shots == "one":
        if example is None:
            raise PromptError(f"prompt {variant_id} requires an example pair")
        text = text.replace("{example_netlist}", example.netlist_text)
        text = text.replace("{example_asc}", example.asc_text)
    return text.replace("{netlist}", netlist_text)


_INPUT_FENCE = re.compile(r"Input: ```(.*?)```", re.DOTALL)


def recover_netlist(prompt: str) -> str:
    """Pull the embedded input netlist back out of a rendered prompt."""
    matches = _INPUT_FENCE.findall(prompt)
    if not matches:
        raise PromptError("prompt carries no fenced input")
    return matches[-1]


def sheet_header_of(asc_text: str) -> str:
    """First two lines of a schematic (the Version and SHEET lines)."""
    lines = asc_text.splitlines()
    if len(lines) < 2:
        raise PromptError("schematic too short to carry a sheet header")
    return "\n".join(lines[:2])


_TAG = re.compile(r"^[A-Za-z0-9_+-]*$")


def extract_code_block(response: str) -> tuple[str, bool]:
    """Content of the first triple-backtick fence in a model response.

    Returns (text, warning): when no fence exists the whole trimmed
    response is returned with the warning flag set.  A language tag on
    the opening fence is stripped; an unclosed fence runs to the end of
    the response (token-capped outputs).
    """
    if not response.strip():
        raise PromptError("empty model response")
    start = response.find("```")
    if start == -1:
        return response.strip(), True
    body = response[start + 3:]
    newline = body.find("\n")
    if newline != -1 and _TAG.match(body[:newline]):
        body = body[newline + 1:]
    end = body.find("```")
    if end != -1:
        body = body[:end]
    return body, False

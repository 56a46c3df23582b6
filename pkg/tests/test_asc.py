from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asckit.asc import (
    AscParseError,
    Orientation,
    canonical_hash,
    decode_asc_bytes,
    parse_asc,
    serialize_asc,
    translate,
)


def test_single_wire_line():
    doc = parse_asc("Version 4\nSHEET 1 880 680\nWIRE 0 0 16 0")
    assert len(doc.wires) == 1
    assert doc.wires[0].start == (0, 0)
    assert doc.wires[0].end == (16, 0)


def test_bandpass_fixture_symbols(bandpass_asc_text):
    doc = parse_asc(bandpass_asc_text)
    assert [s.inst_name for s in doc.symbols] == ["V1", "C1", "R1", "R2", "C2"]
    assert all(sum(1 for k, _ in s.attrs if k == "InstName") == 1 for s in doc.symbols)


def test_orphan_symattr_is_error():
    with pytest.raises(AscParseError):
        parse_asc("SYMATTR InstName R1")


def test_symattr_attaches_across_intervening_lines():
    # LTSpice emits WINDOW lines between SYMBOL and SYMATTR.
    doc = parse_asc(
        "Version 4\nSHEET 1 880 680\n"
        "SYMBOL res 0 0 R0\nWINDOW 0 36 40 Left 2\nSYMATTR InstName R1"
    )
    assert doc.symbols[0].inst_name == "R1"
    assert doc.other_lines == ("WINDOW 0 36 40 Left 2",)


def test_malformed_wire_arity_raises_even_lenient():
    with pytest.raises(AscParseError):
        parse_asc("WIRE 0 0 16", mode="lenient")


def test_unknown_keyword_strict_vs_lenient():
    text = "Version 4\nSHEET 1 880 680\nIOPIN 16 0 BiDir"
    assert parse_asc(text, mode="lenient").other_lines == ("IOPIN 16 0 BiDir",)
    with pytest.raises(AscParseError):
        parse_asc(text, mode="strict")


def test_serialize_round_trip_byte_identical(bandpass_asc_text):
    doc = parse_asc(bandpass_asc_text)
    assert serialize_asc(doc) == bandpass_asc_text


def test_parse_serialize_fixpoint(bandpass_asc_text):
    messy = "WIRE  0  0   16 0\nVersion 4\nSHEET 1 880 680"
    once = serialize_asc(parse_asc(messy))
    assert serialize_asc(parse_asc(once)) == once


def test_fixpoint_with_passthrough_lines():
    text = (
        "Version 4\nSHEET 1 880 680\nIOPIN 16 0 BiDir\n"
        "SYMBOL res 0 0 R0\nWINDOW 0 36 40 Left 2\nSYMATTR InstName R1\nWIRE 0 0 16 0"
    )
    once = serialize_asc(parse_asc(text))
    twice = serialize_asc(parse_asc(once))
    assert once == twice
    assert parse_asc(once) == parse_asc(twice)


def test_symbol_reorder_reflected_in_output(bandpass_asc_text):
    from dataclasses import replace

    doc = parse_asc(bandpass_asc_text)
    swapped = replace(doc, symbols=tuple(reversed(doc.symbols)))
    lines = serialize_asc(swapped).splitlines()
    names = [line.split()[2] for line in lines if line.startswith("SYMATTR InstName")]
    assert names == ["C2", "R2", "R1", "C1", "V1"]


def test_empty_document_two_lines():
    assert serialize_asc(parse_asc("Version 4\nSHEET 1 880 680")) == "Version 4\nSHEET 1 880 680\n"


def test_counting_invariant(bandpass_asc_text):
    doc = parse_asc(bandpass_asc_text)
    lines = bandpass_asc_text.splitlines()
    assert len(doc.wires) == sum(1 for l in lines if l.startswith("WIRE "))
    assert len(doc.flags) == sum(1 for l in lines if l.startswith("FLAG "))
    assert len(doc.symbols) == sum(1 for l in lines if l.startswith("SYMBOL "))


@given(st.sampled_from([o.value for o in Orientation]))
def test_orientation_codes_bijective(code):
    assert Orientation.from_code(code).value == code


def test_orientation_unknown_code():
    with pytest.raises(AscParseError):
        Orientation.from_code("R45")


def test_malformed_flag_lenient_vs_strict():
    text = "Version 4\nSHEET 1 880 680\nFLAG a b Vout"
    assert parse_asc(text, mode="lenient").other_lines == ("FLAG a b Vout",)
    with pytest.raises(AscParseError):
        parse_asc(text, mode="strict")


def test_zero_length_wire_preserved_and_flagged():
    doc = parse_asc("Version 4\nSHEET 1 880 680\nWIRE 8 8 8 8")
    assert len(doc.wires) == 1
    assert doc.wires[0].is_zero_length
    assert "WIRE 8 8 8 8" in serialize_asc(doc)


def test_flag_name_preserved():
    doc = parse_asc("Version 4\nSHEET 1 880 680\nFLAG 16 32 Vout")
    assert doc.flags[0].name == "Vout"
    assert not doc.flags[0].is_ground
    assert parse_asc("FLAG 0 0 0").flags[0].is_ground


def test_utf16le_and_utf8_parse_identically(bandpass_asc_text):
    utf8 = bandpass_asc_text.encode("utf-8")
    utf16 = b"\xff\xfe" + bandpass_asc_text.encode("utf-16-le")
    doc_a = parse_asc(decode_asc_bytes(utf8))
    doc_b = parse_asc(decode_asc_bytes(utf16))
    assert doc_a == doc_b
    assert canonical_hash(doc_a) == canonical_hash(doc_b)


def test_utf8_bom_stripped():
    data = b"\xef\xbb\xbf" + b"Version 4\nSHEET 1 880 680\n"
    assert decode_asc_bytes(data).startswith("Version 4")


@given(st.integers(-2000, 2000), st.integers(-2000, 2000))
def test_translate_preserves_structure(dx, dy):
    doc = parse_asc("Version 4\nSHEET 1 880 680\nWIRE 0 0 16 0\nFLAG 16 0 A")
    moved = translate(doc, dx, dy)
    assert moved.wires[0].start == (dx, dy)
    assert moved.flags[0].name == "A"
    assert translate(moved, -dx, -dy) == doc

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asckit.asc import serialize_asc
from asckit.baseline import LayoutError, emit_asc, netlist_to_asc, plan_layout
from asckit.extract import compile_asc
from asckit.metrics import ged_score, netlist_to_graph
from asckit.netlist import parse_netlist, serialize_netlist
from asckit.pinmap import BUILTIN_PINMAPS
from asckit.preprocess import filter_document


def test_bandpass_plan_counts(bandpass_net_text):
    plan = plan_layout(parse_netlist(bandpass_net_text), BUILTIN_PINMAPS)
    assert len(plan.slots) == 5
    assert len(plan.net_lanes) == 4


def test_single_resistor_plan():
    plan = plan_layout(parse_netlist("R1 A B R"), BUILTIN_PINMAPS)
    assert len(plan.slots) == 1
    assert len(plan.net_lanes) == 2


def test_unsupported_element_errors():
    with pytest.raises(LayoutError):
        plan_layout(parse_netlist("U1 A B MAGIC"), BUILTIN_PINMAPS)


def test_empty_netlist_errors():
    with pytest.raises(LayoutError):
        plan_layout(parse_netlist(""), BUILTIN_PINMAPS)


def test_emitted_document_round_trips(bandpass_net_text):
    netlist = parse_netlist(bandpass_net_text)
    doc = emit_asc(plan_layout(netlist, BUILTIN_PINMAPS))
    assert filter_document(doc).keep
    back = compile_asc(doc, BUILTIN_PINMAPS, mode="strict")
    assert serialize_netlist(back) == bandpass_net_text
    result = ged_score(netlist_to_graph(back), netlist_to_graph(netlist), 10.0)
    assert result.score == 1.0 and result.optimal


def test_single_resistor_round_trip():
    netlist = parse_netlist("R1 A B R")
    doc = netlist_to_asc(netlist, BUILTIN_PINMAPS)
    back = compile_asc(doc, BUILTIN_PINMAPS, mode="strict")
    result = ged_score(netlist_to_graph(back), netlist_to_graph(netlist), 10.0)
    assert result.score == 1.0 and result.optimal


def test_deterministic_output(bandpass_net_text):
    netlist = parse_netlist(bandpass_net_text)
    a = serialize_asc(netlist_to_asc(netlist, BUILTIN_PINMAPS))
    b = serialize_asc(netlist_to_asc(netlist, BUILTIN_PINMAPS))
    assert a == b


def test_ground_gets_flag(bandpass_net_text):
    doc = netlist_to_asc(parse_netlist(bandpass_net_text), BUILTIN_PINMAPS)
    assert any(f.is_ground for f in doc.flags)


def test_corpus_round_trip(roundtrip_netlists):
    for path in roundtrip_netlists:
        netlist = parse_netlist(path.read_text())
        doc = netlist_to_asc(netlist, BUILTIN_PINMAPS)
        back = compile_asc(doc, BUILTIN_PINMAPS, mode="strict")
        assert serialize_netlist(back) == serialize_netlist(netlist), path.name


NET_NAMES = st.sampled_from(["0", "IN", "OUT", "VDD", "A", "B", "MID"])


@st.composite
def random_netlists(draw):
    arities = {"R": 2, "C": 2, "L": 2, "V": 2, "I": 2, "D": 2, "Q": 3, "M": 3, "T": 4}
    n = draw(st.integers(1, 6))
    lines = []
    for i in range(n):
        letter = draw(st.sampled_from(sorted(arities)))
        nets = [draw(NET_NAMES) for _ in range(arities[letter])]
        lines.append(" ".join([f"{letter}{i + 1}", *nets, "VAL"]))
    return "\n".join(lines) + "\n"


@given(random_netlists())
@settings(max_examples=40, deadline=None)
def test_random_netlists_round_trip(text):
    netlist = parse_netlist(text)
    doc = netlist_to_asc(netlist, BUILTIN_PINMAPS)
    back = compile_asc(doc, BUILTIN_PINMAPS, mode="strict")
    assert serialize_netlist(back) == serialize_netlist(netlist)

"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest -v tests/test_acceptance.py`` (or ``-s`` to see the
printed detail lines).
"""

from __future__ import annotations

import math
import random
import time

import numpy as np
import pytest

from asckit.asc import canonical_hash, decode_asc_bytes, parse_asc, serialize_asc, translate
from asckit.baseline import netlist_to_asc
from asckit.dataset import dedup_overlap, permute_pairs, records_from_file, reflect_to_netlist
from asckit.extract import compile_asc
from asckit.metrics import (
    CircuitGraph,
    SsimParams,
    bleu,
    csr,
    ged_anytime,
    ged_exact,
    ged_lower_bound,
    ged_score,
    mssim,
    netlist_to_graph,
    ssim,
)
from asckit.netlist import parse_netlist
from asckit.pinmap import BUILTIN_PINMAPS
from asckit.preprocess import preprocess_pipeline
from asckit.prompts import default_example_pair, render_prompt, sheet_header_of

from mock_endpoint import run_mock_end_to_end
from test_dataset import nets_correspond


def _report(n: int, detail: str) -> None:
    print(f"ACCEPTANCE {n}: PASS ({detail})")


def _random_bipartite(rng: random.Random, max_nodes: int = 8) -> CircuitGraph:
    n_total = rng.randint(2, max_nodes)
    n_comp = rng.randint(1, n_total - 1)
    n_net = n_total - n_comp
    letters = "RCLVIDQMT"
    nodes = [(f"c{i}", rng.choice(letters)) for i in range(n_comp)]
    nodes += [(f"n{i}", "net") for i in range(n_net)]
    edges = []
    for i in range(n_comp):
        for _ in range(rng.randint(1, 2)):
            edges.append((i, n_comp + rng.randrange(n_net)))
    return CircuitGraph(tuple(nodes), tuple(edges))


def _random_20(rng: random.Random) -> CircuitGraph:
    n_comp = rng.randint(9, 11)
    n_net = rng.randint(9, 11)
    nodes = [(f"c{i}", rng.choice("RCLVIDQMT")) for i in range(n_comp)]
    nodes += [(f"n{i}", "net") for i in range(n_net)]
    edges = tuple(
        (i, n_comp + rng.randrange(n_net)) for i in range(n_comp) for _ in range(rng.randint(2, 3))
    )
    return CircuitGraph(tuple(nodes), edges)


def test_criterion_1_round_trip_soundness(roundtrip_netlists):
    start = time.monotonic()
    outcomes = []
    scores = []
    for path in roundtrip_netlists:
        netlist = parse_netlist(path.read_text(encoding="utf-8"))
        doc = parse_asc(serialize_asc(netlist_to_asc(netlist, BUILTIN_PINMAPS)), mode="strict")
        compiled = compile_asc(doc, BUILTIN_PINMAPS, mode="strict")
        outcomes.append(True)
        result = ged_score(netlist_to_graph(compiled), netlist_to_graph(netlist), 60.0)
        assert result.optimal, path.name
        scores.append(result.score)
    elapsed = time.monotonic() - start
    assert len(outcomes) >= 30
    assert csr(outcomes) == 1.0
    assert sum(scores) / len(scores) == 1.0
    assert elapsed < 60.0
    _report(1, f"{len(outcomes)} netlists, CSR 1.0, mean GED score 1.0, {elapsed:.2f}s")


def test_criterion_2_ged_oracle_equivalence():
    rng = random.Random(42)
    agree = 0
    for _ in range(200):
        g1 = _random_bipartite(rng)
        g2 = _random_bipartite(rng)
        result = ged_anytime(g1, g2, 10.0)
        assert result.optimal
        assert result.ged == ged_exact(g1, g2)
        agree += 1
    # Derived normalization fixtures.
    ref = netlist_to_graph(parse_netlist("R1 A B R\nR2 A B R"))
    assert (ref.node_count, ref.edge_count) == (4, 4)
    missing_edge = CircuitGraph(ref.nodes, ref.edges[:-1])
    assert ged_score(missing_edge, ref, 10.0).score == 0.875
    assert ged_score(CircuitGraph(), ref, 10.0).score == 0.0
    _report(2, f"{agree}/200 pairs equal the exhaustive oracle; 0.875 and 0.0 fixtures exact")


def test_criterion_3_anytime_contract():
    rng = random.Random(7)
    timeouts = (0.02, 0.1, 0.5)
    worst_over = 0.0
    for _ in range(50):
        g1, g2 = _random_20(rng), _random_20(rng)
        lower = ged_lower_bound(g1, g2)
        geds = []
        for t in timeouts:
            begin = time.monotonic()
            result = ged_anytime(g1, g2, t)
            wall = time.monotonic() - begin
            worst_over = max(worst_over, wall - t)
            assert wall <= t + 0.25, f"deadline overshoot: {wall - t:.3f}s"
            assert result.ged >= lower
            geds.append(result.ged)
        assert geds[0] >= geds[1] >= geds[2], f"not monotone: {geds}"
    # The 60 s default returns early on easy pairs instead of blocking.
    g = _random_bipartite(random.Random(1))
    begin = time.monotonic()
    assert ged_score(g, g).optimal
    assert time.monotonic() - begin < 1.0
    _report(3, f"50 pairs monotone and bounded; worst deadline overshoot {worst_over * 1000:.0f} ms")


def test_criterion_4_metric_identities():
    rng = np.random.RandomState(0)
    image = rng.randint(0, 256, (32, 48)).astype(np.uint8)
    assert mssim(image, image) == pytest.approx(1.0, abs=1e-9)

    params = SsimParams()
    value = ssim(np.zeros((11, 11)), np.full((11, 11), 255.0), params)
    assert value == pytest.approx(params.c1 / (255.0**2 + params.c1), abs=1e-9)

    text = "Version 4\nSHEET 1 880 680\nWIRE 0 0 16 0"
    assert bleu(text, text) == 1.0
    assert bleu("WIRE 0 0 16 16", "WIRE 0 0 16 0") == pytest.approx(0.669, abs=1e-3)
    assert csr([True] * 89 + [False] * 28) == pytest.approx(0.7607, abs=1e-4)
    _report(4, "MSSIM/SSIM/BLEU/CSR identities and derived fixtures hold")


def test_criterion_5_preprocess_augment_invariants(roundtrip_netlists, tmp_path, bandpass_asc_text):
    start = time.monotonic()
    corpus = [bandpass_asc_text]
    corpus += [
        serialize_asc(netlist_to_asc(parse_netlist(p.read_text(encoding="utf-8")), BUILTIN_PINMAPS))
        for p in roundtrip_netlists
    ]
    for text in corpus:
        doc1, verdict1 = preprocess_pipeline(text)
        assert verdict1.keep
        doc2, verdict2 = preprocess_pipeline(serialize_asc(doc1))
        assert verdict2.keep and doc1 == doc2  # idempotence
        shifted, _ = preprocess_pipeline(serialize_asc(translate(parse_asc(text), 333, -777)))
        assert shifted == doc1  # shift invariance

        base = reflect_to_netlist(doc1, BUILTIN_PINMAPS)
        variants = permute_pairs(doc1, seed=99)
        blocks = len(doc1.symbols)
        expected = 1 if blocks == 1 else 2 if blocks == 2 else min(5, math.factorial(blocks))
        assert len(variants) == expected
        for variant in variants:
            permuted = reflect_to_netlist(variant, BUILTIN_PINMAPS)
            assert nets_correspond(permuted, base)

    # Planted duplicate differing only in decoration lines is deduped.
    (tmp_path / "dup.asc").write_text(
        bandpass_asc_text + "TEXT 0 0 Left 2 planted\nWINDOW 0 1 1 Left 2\n", encoding="utf-8"
    )
    (tmp_path / "orig.asc").write_text(bandpass_asc_text, encoding="utf-8")
    train, _ = records_from_file(tmp_path / "dup.asc", BUILTIN_PINMAPS, seed=0, augment=False)
    test_recs, _ = records_from_file(tmp_path / "orig.asc", BUILTIN_PINMAPS, seed=0, augment=False)
    assert dedup_overlap(train, test_recs) == []
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    _report(5, f"{len(corpus)} documents idempotent/shift-invariant, permutations sound, {elapsed:.2f}s")


def test_criterion_6_prompt_fidelity(golden_dir, bandpass_net_text, bandpass_asc_text):
    header = sheet_header_of(bandpass_asc_text)
    example = default_example_pair()
    matched = 0
    for variant in range(1, 6):
        rendered = render_prompt(
            variant,
            bandpass_net_text,
            sheet_header=header if variant in (3, 5) else None,
            example=example if variant in (4, 5) else None,
        )
        golden = (golden_dir / f"prompt{variant}.txt").read_text(encoding="utf-8")
        assert rendered == golden, f"prompt {variant} drifted from golden"
        assert "Only output the code and contain it in ```." in rendered
        matched += 1
    prompt3 = (golden_dir / "prompt3.txt").read_text(encoding="utf-8")
    assert "Start your answer with\n```Version 4\nSHEET 1 880 680```" in prompt3
    _report(6, f"{matched}/5 prompts byte-match their goldens")


def test_criterion_7_end_to_end_mock_endpoint(tmp_path, fixtures_dir, golden_dir):
    report_path = run_mock_end_to_end(tmp_path, fixtures_dir)
    produced = report_path.read_bytes()
    golden = (golden_dir / "eval_report.json").read_bytes()
    assert produced == golden, "evaluation report drifted from the stored golden"
    _report(7, f"golden report reproduced bit-exactly ({len(produced)} bytes)")


def test_criterion_8_encoding_robustness(bandpass_asc_text, roundtrip_netlists):
    samples = [bandpass_asc_text]
    samples += [
        serialize_asc(netlist_to_asc(parse_netlist(p.read_text(encoding="utf-8")), BUILTIN_PINMAPS))
        for p in roundtrip_netlists[:5]
    ]
    for text in samples:
        utf8 = text.encode("utf-8")
        utf16 = b"\xff\xfe" + text.encode("utf-16-le")
        doc_a = parse_asc(decode_asc_bytes(utf8))
        doc_b = parse_asc(decode_asc_bytes(utf16))
        assert doc_a == doc_b
        assert canonical_hash(doc_a) == canonical_hash(doc_b)
    _report(8, f"{len(samples)} documents identical across UTF-8 and UTF-16LE+BOM")

"""Dataset assembly: symbol-block permutation augmentation, train/test
overlap removal, and deterministic split manifests."""

from __future__ import annotations

import hashlib
import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from .asc import AscDocument, decode_asc_bytes, serialize_asc
from .extract import CompileError, compile_asc
from .netlist import Netlist, serialize_netlist
from .pinmap import PinMap
from .preprocess import REASON_UNCOMPILABLE, preprocess_pipeline

log = logging.getLogger(__name__)

MAX_AUGMENTATIONS = 5


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    netlist_text: str
    asc_text: str
    origin_file: str
    permutation_index: int


@dataclass(frozen=True)
class SplitManifest:
    train: tuple[str, ...]
    validation: tuple[str, ...]
    test: tuple[str, ...]
    seed: int
    ratios: tuple[float, float]


def permute_pairs(doc: AscDocument, seed: int) -> list[AscDocument]:
    """Distinct orderings of the SYMBOL/SYMATTR blocks (original included).

    One block yields the document unchanged, two blocks yield both
    orderings, three or more yield up to five distinct orderings drawn
    with the seeded generator.  Wires and flags are untouched.
    """
    blocks = doc.symbols
    n = len(blocks)
    if n <= 1:
        return [doc]
    if n == 2:
        return [doc, replace(doc, symbols=(blocks[1], blocks[0]))]

    rng = random.Random(seed)
    identity = tuple(range(n))
    orders = [identity]
    seen = {identity}
    limit = MAX_AUGMENTATIONS
    while len(orders) < limit:
        candidate = tuple(rng.sample(range(n), n))
        if candidate not in seen:
            seen.add(candidate)
            orders.append(candidate)
    return [replace(doc, symbols=tuple(blocks[i] for i in order)) for order in orders]


def reflect_to_netlist(doc: AscDocument, registry: dict[str, PinMap]) -> Netlist:
    """Compile a (possibly permuted) document; element order follows symbol order."""
    return compile_asc(doc, registry, mode="strict")


def text_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def record_hashes(record: DatasetRecord) -> tuple[str, str]:
    return text_hash(record.asc_text), text_hash(record.netlist_text)


def dedup_overlap(
    train: list[DatasetRecord], test: list[DatasetRecord]
) -> list[DatasetRecord]:
    """Drop train records whose canonical asc OR netlist hash appears in test."""
    test_hashes: set[str] = set()
    for record in test:
        test_hashes.update(record_hashes(record))
    kept = []
    for record in train:
        asc_h, net_h = record_hashes(record)
        if asc_h in test_hashes or net_h in test_hashes:
            log.debug("dataset: dropping %s (overlaps test set)", record.id)
            continue
        kept.append(record)
    return kept


def build_splits(
    records: list[DatasetRecord],
    ratios: tuple[float, float] = (0.95, 0.05),
    seed: int = 0,
    test_records: list[DatasetRecord] | None = None,
) -> SplitManifest:
    """Assign origin files to train/validation; augmentations follow their origin."""
    train_frac, val_frac = ratios
    if train_frac + val_frac > 1.0 + 1e-9:
        raise ValueError("split ratios must sum to at most 1")

    by_origin: dict[str, list[str]] = {}
    for record in records:
        by_origin.setdefault(record.origin_file, []).append(record.id)

    origins = sorted(by_origin)
    rng = random.Random(seed)
    rng.shuffle(origins)

    n = len(origins)
    n_train = round(n * train_frac)
    n_val = min(round(n * val_frac), n - n_train)
    train_ids = [rid for origin in origins[:n_train] for rid in by_origin[origin]]
    val_ids = [rid for origin in origins[n_train:n_train + n_val] for rid in by_origin[origin]]
    test_ids = [record.id for record in (test_records or [])]

    return SplitManifest(
        train=tuple(train_ids),
        validation=tuple(val_ids),
        test=tuple(test_ids),
        seed=seed,
        ratios=(train_frac, val_frac),
    )


def _file_seed(seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{seed}:{name}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def records_from_file(
    path: Path,
    registry: dict[str, PinMap],
    seed: int,
    *,
    augment: bool = True,
) -> tuple[list[DatasetRecord], str]:
    """Preprocess one .asc file into dataset records.

    Returns (records, reason); records is empty when the file is dropped.
    Every emitted record's asc text compiles byte-exactly to its netlist
    text.
    """
    raw = decode_asc_bytes(path.read_bytes())
    doc, verdict = preprocess_pipeline(raw)
    if not verdict.keep:
        return [], verdict.reason
    assert doc is not None

    try:
        reflect_to_netlist(doc, registry)
    except CompileError as exc:
        log.debug("dataset: %s does not compile: %s", path.name, exc)
        return [], REASON_UNCOMPILABLE

    docs = permute_pairs(doc, _file_seed(seed, path.name)) if augment else [doc]
    records = []
    for k, variant in enumerate(docs):
        netlist = reflect_to_netlist(variant, registry)
        records.append(
            DatasetRecord(
                id=f"{path.stem}#p{k}" if augment else path.stem,
                netlist_text=serialize_netlist(netlist),
                asc_text=serialize_asc(variant),
                origin_file=path.name,
                permutation_index=k,
            )
        )
    return records, verdict.reason


def write_jsonl(records: list[DatasetRecord], path: Path) -> None:
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(asdict(record), sort_keys=True) + "\n")


def read_jsonl(path: Path) -> list[DatasetRecord]:
    records = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(DatasetRecord(**json.loads(line)))
    return records


def build_dataset(
    corpus_dir: Path,
    test_dir: Path | None,
    seed: int,
    out_dir: Path,
    registry: dict[str, PinMap],
    ratios: tuple[float, float] = (0.95, 0.05),
    jobs: int = 1,
) -> dict:
    """End-to-end dataset build; returns a summary for the manifest.

    Record generation is a parallel map over origin files (per-file seeds
    keep it deterministic); split assignment stays single-threaded.
    """
    out_dir.mkdir(parents=True, exist_ok=True)

    def process(paths: list[Path], augment: bool) -> list[tuple[Path, list[DatasetRecord], str]]:
        def one(path: Path) -> tuple[Path, list[DatasetRecord], str]:
            records, reason = records_from_file(path, registry, seed, augment=augment)
            return path, records, reason

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                return list(pool.map(one, paths))
        return [one(p) for p in paths]

    dropped: dict[str, str] = {}
    corpus_records: list[DatasetRecord] = []
    for path, records, reason in process(sorted(corpus_dir.glob("*.asc")), True):
        if records:
            corpus_records.extend(records)
        else:
            dropped[path.name] = reason

    test_records: list[DatasetRecord] = []
    if test_dir is not None:
        for path, records, reason in process(sorted(test_dir.glob("*.asc")), False):
            if records:
                test_records.extend(records)
            else:
                dropped[path.name] = reason

    corpus_records = dedup_overlap(corpus_records, test_records)
    manifest = build_splits(corpus_records, ratios, seed, test_records)

    by_id = {record.id: record for record in corpus_records}
    write_jsonl([by_id[rid] for rid in manifest.train], out_dir / "train.jsonl")
    write_jsonl([by_id[rid] for rid in manifest.validation], out_dir / "val.jsonl")
    write_jsonl(test_records, out_dir / "test.jsonl")

    summary = {
        "seed": seed,
        "ratios": list(ratios),
        "train": len(manifest.train),
        "validation": len(manifest.validation),
        "test": len(manifest.test),
        "dropped": dropped,
        "splits": {
            "train": list(manifest.train),
            "validation": list(manifest.validation),
            "test": list(manifest.test),
        },
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return summary

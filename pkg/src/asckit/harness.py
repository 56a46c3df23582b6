"""End-to-end scoring of generated schematics against references.

Per sample: strict parse+compile decides CSR; compilable candidates get
a GED score (anytime search under a per-pair deadline) and an MSSIM over
padded renders; BLEU runs on the raw texts of every sample.  GED and
MSSIM averages cover compilable samples only, BLEU covers all samples,
and CSR-scaled variants multiply those means by the CSR.  Results are
also grouped by the reference component count.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .asc import AscParseError, decode_asc_bytes, parse_asc
from .extract import CompileError, compile_asc
from .metrics import bleu
from .metrics import csr as csr_metric
from .metrics import ged_score, mssim, netlist_to_graph
from .netlist import NetlistParseError
from .pinmap import BUILTIN_PINMAPS, PinMap, registry_hash
from .render import RenderConfig, pad_to_common, render

log = logging.getLogger(__name__)

_COMPILE_FAILURES = (AscParseError, CompileError, NetlistParseError)


class HarnessError(ValueError):
    """Raised for unusable inputs (unpaired files, empty reference set)."""


@dataclass
class SampleResult:
    id: str
    n_c: int
    compiled: bool
    truncated: bool
    ged: int | None
    ged_score: float | None
    ged_optimal: bool | None
    mssim: float | None
    bleu: float


@dataclass
class EvalReport:
    samples: list[SampleResult]
    aggregates: dict
    groups: dict[int, dict]
    meta: dict


def _aggregate(samples: list[SampleResult]) -> dict:
    compiled = [s for s in samples if s.compiled]
    rate = csr_metric([s.compiled for s in samples])

    def mean(values: list[float]) -> float | None:
        return sum(values) / len(values) if values else None

    mean_ged = mean([s.ged_score for s in compiled if s.ged_score is not None])
    mean_ms = mean([s.mssim for s in compiled if s.mssim is not None])
    mean_bleu = mean([s.bleu for s in samples])
    return {
        "csr": rate,
        "mean_ged_score": mean_ged,
        "mean_mssim": mean_ms,
        "mean_bleu": mean_bleu,
        "csr_scaled_ged": mean_ged * rate if mean_ged is not None else None,
        "csr_scaled_mssim": mean_ms * rate if mean_ms is not None else None,
        "n_samples": len(samples),
        "n_compiled": len(compiled),
    }


def evaluate(
    gen_dir: str | Path,
    ref_dir: str | Path,
    timeout: float = 60.0,
    render_cfg: RenderConfig = RenderConfig(),
    registry: dict[str, PinMap] | None = None,
    jobs: int = 1,
) -> EvalReport:
    """Score every generated .asc in gen_dir against its same-stem reference.

    A ``generation_manifest.json`` in gen_dir (as written by the generate
    step) supplies per-sample truncation flags and may remap sample ids to
    generated filenames when outputs carry run ids.
    """
    gen_dir = Path(gen_dir)
    ref_dir = Path(ref_dir)
    registry = registry if registry is not None else BUILTIN_PINMAPS

    refs = sorted(ref_dir.glob("*.asc"))
    if not refs:
        raise HarnessError(f"no reference .asc files in {ref_dir}")

    # Pairing is by filename stem; a generation manifest may override it
    # with an explicit "file" per sample (runs whose outputs carry run ids)
    # and supplies per-sample truncation flags.
    manifest_path = gen_dir / "generation_manifest.json"
    truncated_flags: dict[str, bool] = {}
    file_overrides: dict[str, str] = {}
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        truncated_flags = {k: bool(v.get("truncated")) for k, v in manifest.items()}
        file_overrides = {k: v["file"] for k, v in manifest.items() if v.get("file")}

    gens = {p.stem: p for p in gen_dir.glob("*.asc")}
    for stem, name in file_overrides.items():
        gens[stem] = gen_dir / name
    missing = [p.stem for p in refs if p.stem not in gens or not gens[p.stem].exists()]
    used = {gens[p.stem] for p in refs if p.stem in gens}
    extra = sorted(p.name for p in gen_dir.glob("*.asc") if p not in used)
    if missing or extra:
        raise HarnessError(f"unpaired files (missing generated: {missing}, unmatched: {extra})")

    def score_one(ref_path: Path) -> SampleResult:
        sample_id = ref_path.stem
        ref_text = decode_asc_bytes(ref_path.read_bytes())
        ref_doc = parse_asc(ref_text, mode="lenient")
        ref_netlist = compile_asc(ref_doc, registry, mode="strict")

        gen_text = decode_asc_bytes(gens[sample_id].read_bytes())
        bleu_value = bleu(gen_text, ref_text)

        compiled = True
        ged = score = optimal = similarity = None
        try:
            gen_doc = parse_asc(gen_text, mode="strict")
            gen_netlist = compile_asc(gen_doc, registry, mode="strict")
        except _COMPILE_FAILURES as exc:
            log.debug("harness: %s does not compile: %s", sample_id, exc)
            compiled = False
        if compiled:
            result = ged_score(netlist_to_graph(gen_netlist), netlist_to_graph(ref_netlist), timeout)
            ged, score, optimal = result.ged, result.score, result.optimal
            gen_img, ref_img = pad_to_common(
                render(gen_doc, render_cfg, registry), render(ref_doc, render_cfg, registry)
            )
            similarity = mssim(gen_img.pixels, ref_img.pixels)

        return SampleResult(
            id=sample_id,
            n_c=len(ref_netlist.elements),
            compiled=compiled,
            truncated=truncated_flags.get(sample_id, False),
            ged=ged,
            ged_score=score,
            ged_optimal=optimal,
            mssim=similarity,
            bleu=bleu_value,
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            samples = list(pool.map(score_one, refs))
    else:
        samples = [score_one(p) for p in refs]

    groups: dict[int, dict] = {}
    for n_c in sorted({s.n_c for s in samples}):
        groups[n_c] = _aggregate([s for s in samples if s.n_c == n_c])

    return EvalReport(
        samples=samples,
        aggregates=_aggregate(samples),
        groups=groups,
        meta={
            "toolkit_version": __version__,
            "pinmap_hash": registry_hash(registry),
            "render_config": asdict(render_cfg),
            "ged_timeout_seconds": timeout,
        },
    )


def report_to_dict(report: EvalReport) -> dict:
    return {
        "meta": report.meta,
        "aggregates": report.aggregates,
        "groups": {str(k): v for k, v in report.groups.items()},
        "samples": [asdict(s) for s in report.samples],
    }


def save_report(report: EvalReport, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_report_dict(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _fmt(value: float | None, scale: float = 1.0, digits: int = 2) -> str:
    if value is None:
        return "-"
    return f"{value * scale:.{digits}f}"


def _row(label: str, agg: dict) -> str:
    ged = f"{_fmt(agg['mean_ged_score'])}/{_fmt(agg['csr_scaled_ged'])}"
    ms = f"{_fmt(agg['mean_mssim'])}/{_fmt(agg['csr_scaled_mssim'])}"
    return (
        f"{label:<10} {ged:>12} {ms:>12} "
        f"{_fmt(agg['csr'], 100.0):>8} {_fmt(agg['mean_bleu'], 100.0):>8}"
    )


def report_table(report: EvalReport | dict) -> str:
    """Text table with raw/CSR-scaled pairs, one extra row per component count."""
    data = report_to_dict(report) if isinstance(report, EvalReport) else report
    lines = [
        f"{'':<10} {'GED':>12} {'MSSIM':>12} {'CSR(%)':>8} {'BLEU':>8}",
        _row("all", data["aggregates"]),
    ]
    for n_c in sorted(data["groups"], key=int):
        lines.append(_row(f"N_c={n_c}", data["groups"][n_c]))
    return "\n".join(lines)


def report_csv(report: EvalReport | dict) -> str:
    """Per-sample CSV alongside the table."""
    data = report_to_dict(report) if isinstance(report, EvalReport) else report
    buffer = io.StringIO()
    fields = ["id", "n_c", "compiled", "truncated", "ged", "ged_score", "ged_optimal", "mssim", "bleu"]
    writer = csv.DictWriter(buffer, fieldnames=fields)
    writer.writeheader()
    for sample in data["samples"]:
        writer.writerow({k: sample[k] for k in fields})
    return buffer.getvalue()

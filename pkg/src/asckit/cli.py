"""Command-line interface: one subcommand per pipeline stage."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import __version__
from .asc import decode_asc_bytes, parse_asc, save_asc
from .baseline import LayoutError, netlist_to_asc
from .dataset import build_dataset, read_jsonl
from .extract import CompileError, compile_asc
from .harness import (
    HarnessError,
    evaluate,
    load_report_dict,
    report_csv,
    report_table,
    save_report,
)
from .llm import EndpointConfig, generate_candidates
from .netlist import load_netlist, serialize_netlist
from .pinmap import BUILTIN_PINMAPS, load_pinmaps
from .preprocess import preprocess_pipeline
from .prompts import default_example_pair
from .render import RenderConfig, render, save_png

log = logging.getLogger(__name__)


def _registry(pinmap: str | None, ctx: click.Context | None = None):
    if pinmap is None and ctx is not None:
        pinmap = ctx.obj.get("config", {}).get("pinmap", {}).get("path")
    return load_pinmaps(pinmap) if pinmap else BUILTIN_PINMAPS


@click.group()
@click.version_option(version=__version__)
@click.option("--seed", type=int, default=0, show_default=True, help="Global random seed.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker pool size.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Optional TOML config (pin-map path, render settings).")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
@click.pass_context
def main(ctx: click.Context, seed: int, jobs: int, config_path: str | None, verbose: bool) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)
    ctx.ensure_object(dict)
    ctx.obj.update({"seed": seed, "jobs": jobs})
    if config_path:
        if sys.version_info >= (3, 11):
            import tomllib
        else:
            import tomli as tomllib
        with open(config_path, "rb") as handle:
            ctx.obj["config"] = tomllib.load(handle)
    else:
        ctx.obj["config"] = {}


@main.command()
@click.option("--in", "in_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--report", "report_path", type=click.Path(), default=None)
@click.pass_context
def preprocess(ctx: click.Context, in_dir: str, out_dir: str, report_path: str | None) -> None:
    """Clean every .asc under --in and write kept files to --out."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def run_one(path: Path):
        return path, preprocess_pipeline(decode_asc_bytes(path.read_bytes()))

    paths = sorted(Path(in_dir).glob("*.asc"))
    jobs = ctx.obj["jobs"]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, paths))
    else:
        results = [run_one(p) for p in paths]

    verdicts = {}
    for path, (doc, verdict) in results:
        verdicts[path.name] = {"keep": verdict.keep, "reason": verdict.reason}
        if verdict.keep and doc is not None:
            save_asc(doc, out / path.name)
    if report_path:
        Path(report_path).write_text(
            json.dumps(verdicts, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    kept = sum(1 for v in verdicts.values() if v["keep"])
    click.echo(f"kept {kept}/{len(verdicts)} files")


@main.group()
def dataset() -> None:
    """Dataset assembly commands."""


@dataset.command("build")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--test", "test_dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--seed", type=int, default=None, help="Overrides the global seed.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--pinmap", type=click.Path(exists=True), default=None)
@click.pass_context
def dataset_build(ctx: click.Context, corpus: str, test_dir: str | None, seed: int | None,
                  out_dir: str, pinmap: str | None) -> None:
    """Build train/val/test JSONL splits with permutation augmentation."""
    summary = build_dataset(
        Path(corpus),
        Path(test_dir) if test_dir else None,
        seed if seed is not None else ctx.obj["seed"],
        Path(out_dir),
        _registry(pinmap, ctx),
        jobs=ctx.obj["jobs"],
    )
    click.echo(json.dumps(summary, sort_keys=True))


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--pinmap", type=click.Path(exists=True), default=None)
@click.pass_context
def baseline(ctx: click.Context, in_path: str, out_path: str, pinmap: str | None) -> None:
    """Generate a schematic from a netlist with the rule-based layouter."""
    try:
        doc = netlist_to_asc(load_netlist(in_path), _registry(pinmap, ctx))
    except LayoutError as exc:
        raise click.ClickException(str(exc))
    save_asc(doc, out_path)


@main.command()
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--variant", type=click.IntRange(1, 5), default=None)
@click.option("--endpoint", "endpoint_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--limit", type=int, default=None, help="Only the first N records.")
def generate(dataset_path: str, variant: int | None, endpoint_path: str, out_dir: str,
             limit: int | None) -> None:
    """Query a chat-completions endpoint for candidate schematics."""
    endpoint = EndpointConfig.from_toml(endpoint_path)
    records = read_jsonl(Path(dataset_path))
    if limit is not None:
        records = records[:limit]
    chosen = variant if variant is not None else endpoint.variant
    example = default_example_pair() if chosen in (4, 5) else None
    results = generate_candidates(records, endpoint, Path(out_dir), chosen, example)
    failures = sum(1 for r in results if r.error)
    click.echo(f"generated {len(results) - failures}/{len(results)} candidates")
    if failures:
        sys.exit(1)


@main.command("compile")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--strict/--lenient", default=True, show_default=True)
@click.option("--pinmap", type=click.Path(exists=True), default=None)
@click.pass_context
def compile_cmd(ctx: click.Context, in_path: str, out_path: str, strict: bool,
                pinmap: str | None) -> None:
    """Compile a schematic into a SPICE netlist."""
    text = decode_asc_bytes(Path(in_path).read_bytes())
    try:
        doc = parse_asc(text, mode="strict" if strict else "lenient")
        netlist = compile_asc(doc, _registry(pinmap, ctx), mode="strict" if strict else "lenient")
    except (ValueError, CompileError) as exc:
        raise click.ClickException(str(exc))
    Path(out_path).write_text(serialize_netlist(netlist), encoding="utf-8")


@main.command("render")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--scale", type=int, default=4, show_default=True, help="Schematic units per pixel.")
@click.option("--pinmap", type=click.Path(exists=True), default=None)
@click.pass_context
def render_cmd(ctx: click.Context, in_path: str, out_path: str, scale: int,
               pinmap: str | None) -> None:
    """Rasterize a schematic to grayscale PNG."""
    doc = parse_asc(decode_asc_bytes(Path(in_path).read_bytes()), mode="lenient")
    try:
        image = render(doc, RenderConfig(units_per_pixel=scale), _registry(pinmap, ctx))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    save_png(image, out_path)


@main.command()
@click.option("--gen", "gen_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--ref", "ref_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--timeout", type=float, default=60.0, show_default=True,
              help="GED search deadline per pair, seconds.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--scale", type=int, default=4, show_default=True)
@click.option("--pinmap", type=click.Path(exists=True), default=None)
@click.pass_context
def score(ctx: click.Context, gen_dir: str, ref_dir: str, timeout: float, out_path: str,
          scale: int, pinmap: str | None) -> None:
    """Score generated schematics against references; write a JSON report."""
    try:
        report = evaluate(
            gen_dir,
            ref_dir,
            timeout=timeout,
            render_cfg=RenderConfig(units_per_pixel=scale),
            registry=_registry(pinmap, ctx),
            jobs=ctx.obj["jobs"],
        )
    except HarnessError as exc:
        raise click.ClickException(str(exc))
    save_report(report, out_path)
    click.echo(report_table(report))


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
def report(in_path: str, csv_path: str | None) -> None:
    """Pretty-print a stored report; optionally dump per-sample CSV."""
    data = load_report_dict(in_path)
    click.echo(report_table(data))
    if csv_path:
        Path(csv_path).write_text(report_csv(data), encoding="utf-8")


if __name__ == "__main__":
    main()

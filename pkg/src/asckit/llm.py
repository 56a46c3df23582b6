"""Chat-completions endpoint client and batched candidate generation.

Any endpoint speaking the usual chat-completions JSON shape works; the
URL and model come from a TOML config file, the key from an environment
variable.  Decoding is greedy (temperature 0) with a fixed token cap so
runs are reproducible; truncated responses are flagged, never hidden.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import requests

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .dataset import DatasetRecord
from .prompts import ExamplePair, extract_code_block, render_prompt, sheet_header_of

log = logging.getLogger(__name__)

_RETRYABLE_STATUS = {429, 500, 502, 503, 504}
MAX_ATTEMPTS = 3


class EndpointError(RuntimeError):
    """Raised when the endpoint cannot be reached or refuses the request."""


@dataclass(frozen=True)
class GenerationConfig:
    max_tokens: int = 8192
    temperature: float = 0.0


@dataclass(frozen=True)
class EndpointConfig:
    url: str
    model: str
    api_key_env: str = "LLM_API_KEY"
    variant: int = 1
    max_tokens: int = 8192
    concurrency: int = 4
    request_timeout: float = 120.0
    backoff_seconds: float = 0.5

    @classmethod
    def from_toml(cls, path: str | Path) -> "EndpointConfig":
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
        endpoint = data.get("endpoint", data)
        try:
            return cls(
                url=endpoint["url"],
                model=endpoint["model"],
                api_key_env=endpoint.get("api_key_env", "LLM_API_KEY"),
                variant=int(endpoint.get("variant", 1)),
                max_tokens=int(endpoint.get("max_tokens", 8192)),
                concurrency=int(endpoint.get("concurrency", 4)),
                request_timeout=float(endpoint.get("request_timeout", 120.0)),
                backoff_seconds=float(endpoint.get("backoff_seconds", 0.5)),
            )
        except KeyError as exc:
            raise EndpointError(f"endpoint config is missing {exc}") from exc


@dataclass
class CompletionResult:
    text: str
    truncated: bool
    attempts: int


def complete(
    endpoint: EndpointConfig,
    prompt: str,
    generation: GenerationConfig | None = None,
) -> CompletionResult:
    """POST one prompt; retry transient transport failures with backoff."""
    generation = generation or GenerationConfig(max_tokens=endpoint.max_tokens)
    headers = {"Content-Type": "application/json"}
    api_key = os.environ.get(endpoint.api_key_env)
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    payload = {
        "model": endpoint.model,
        "messages": [{"role": "user", "content": prompt}],
        "max_tokens": generation.max_tokens,
        "temperature": generation.temperature,
    }
    run_id = uuid.uuid4().hex[:12]

    last_error: Exception | None = None
    for attempt in range(1, MAX_ATTEMPTS + 1):
        try:
            log.debug("llm[%s]: attempt %d to %s", run_id, attempt, endpoint.url)
            response = requests.post(
                endpoint.url, headers=headers, json=payload, timeout=endpoint.request_timeout
            )
            if response.status_code in (401, 403):
                raise EndpointError(f"authentication failed ({response.status_code})")
            if response.status_code in _RETRYABLE_STATUS:
                last_error = EndpointError(f"transient status {response.status_code}")
            elif response.status_code != 200:
                raise EndpointError(f"endpoint returned {response.status_code}: {response.text[:200]}")
            else:
                data = response.json()
                choice = data["choices"][0]
                text = choice["message"]["content"]
                truncated = choice.get("finish_reason") == "length"
                log.debug(
                    "llm[%s]: %d chars, finish_reason=%s",
                    run_id, len(text), choice.get("finish_reason"),
                )
                if truncated:
                    log.warning("llm[%s]: response hit the token cap", run_id)
                return CompletionResult(text=text, truncated=truncated, attempts=attempt)
        except (requests.ConnectionError, requests.Timeout) as exc:
            last_error = exc
        except (KeyError, IndexError, json.JSONDecodeError) as exc:
            raise EndpointError(f"malformed endpoint response: {exc}") from exc
        if attempt < MAX_ATTEMPTS:
            time.sleep(endpoint.backoff_seconds * (2 ** (attempt - 1)))
    raise EndpointError(f"endpoint failed after {MAX_ATTEMPTS} attempts: {last_error}")


@dataclass
class GenerationRecord:
    id: str
    truncated: bool
    fence_warning: bool
    error: str | None = None


def generate_candidates(
    records: list[DatasetRecord],
    endpoint: EndpointConfig,
    out_dir: Path,
    variant: int | None = None,
    example: ExamplePair | None = None,
) -> list[GenerationRecord]:
    """Render prompts for dataset records, query the endpoint, and write
    one candidate .asc per record plus a generation manifest.

    Requests run in a bounded pool; outputs are written in input order so
    downstream reports are deterministic regardless of completion order.
    """
    variant = variant if variant is not None else endpoint.variant
    out_dir.mkdir(parents=True, exist_ok=True)

    def run_one(record: DatasetRecord) -> GenerationRecord:
        sheet_header = sheet_header_of(record.asc_text) if variant in (3, 5) else None
        prompt = render_prompt(variant, record.netlist_text, sheet_header, example)
        try:
            result = complete(endpoint, prompt)
        except EndpointError as exc:
            log.error("llm: %s failed: %s", record.id, exc)
            return GenerationRecord(record.id, truncated=False, fence_warning=False, error=str(exc))
        code, warning = extract_code_block(result.text)
        (out_dir / f"{record.id}.asc").write_text(code, encoding="utf-8")
        return GenerationRecord(record.id, truncated=result.truncated, fence_warning=warning)

    with ThreadPoolExecutor(max_workers=max(1, endpoint.concurrency)) as pool:
        results = list(pool.map(run_one, records))

    manifest = {
        entry.id: {
            "truncated": entry.truncated,
            "fence_warning": entry.fence_warning,
            "error": entry.error,
        }
        for entry in results
    }
    (out_dir / "generation_manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return results

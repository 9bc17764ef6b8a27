"""Run folders: immutable artifacts of one engine run, keyed by run id.

A store is a plain directory; each run gets its own folder holding the
resolved config, the trace (one step per line after a config header
line), the ensemble report, and the per-iteration series CSV, plus a
manifest tying them to their input artifacts. No database, so runs are
diffable and portable.
"""

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path

from .engine.run import RunResult, series_csv

ENGINE_VERSION = "0.1.0"

TRACE_FILE = "trace.jsonl"
REPORT_FILE = "report.json"
SERIES_FILE = "series.csv"
CONFIG_FILE = "config.json"
MANIFEST_FILE = "manifest.json"


@dataclass(frozen=True)
class RunManifest:
    run_id: str
    created_at: str
    engine_version: str
    config: dict
    inputs: dict
    outputs: dict

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "created_at": self.created_at,
            "engine_version": self.engine_version,
            "config": self.config,
            "inputs": self.inputs,
            "outputs": self.outputs,
        }


def _run_id(config: dict) -> str:
    digest = hashlib.sha256(
        json.dumps(config, sort_keys=True).encode("utf-8")
    ).hexdigest()[:8]
    stamp = time.strftime("%Y%m%d-%H%M%S")
    return f"run-{stamp}-{digest}"


def write_run(store, result: RunResult, inputs: dict, run_id: str | None = None) -> RunManifest:
    """Persist a run result; `inputs` paths must exist."""
    store = Path(store)
    store.mkdir(parents=True, exist_ok=True)
    for label, path in inputs.items():
        if path and not Path(path).exists():
            raise FileNotFoundError(f"input artifact {label!r} missing: {path}")
    config = result.config.to_dict()
    run_id = run_id or _run_id(config)
    folder = store / run_id
    suffix = 0
    while folder.exists():
        suffix += 1
        folder = store / f"{run_id}-{suffix}"
    folder.mkdir(parents=True)
    run_id = folder.name

    result.write_trace(folder / TRACE_FILE)
    (folder / REPORT_FILE).write_text(
        json.dumps(result.report.to_dict(), sort_keys=True) + "\n", encoding="utf-8"
    )
    (folder / SERIES_FILE).write_text(series_csv(result.report), encoding="utf-8")
    (folder / CONFIG_FILE).write_text(
        json.dumps(config, sort_keys=True) + "\n", encoding="utf-8"
    )
    manifest = RunManifest(
        run_id=run_id,
        created_at=time.strftime("%Y-%m-%dT%H:%M:%S"),
        engine_version=ENGINE_VERSION,
        config=config,
        inputs={k: str(v) for k, v in inputs.items()},
        outputs={
            "trace": str(folder / TRACE_FILE),
            "report": str(folder / REPORT_FILE),
            "series": str(folder / SERIES_FILE),
        },
    )
    (folder / MANIFEST_FILE).write_text(
        json.dumps(manifest.to_dict(), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    return manifest


def load_run(store, run_id: str) -> dict:
    """Reload all artifacts of a stored run."""
    folder = Path(store) / run_id
    if not folder.is_dir():
        raise FileNotFoundError(f"no run folder {folder}")
    manifest = json.loads((folder / MANIFEST_FILE).read_text(encoding="utf-8"))
    report = json.loads((folder / REPORT_FILE).read_text(encoding="utf-8"))
    config = json.loads((folder / CONFIG_FILE).read_text(encoding="utf-8"))
    trace_lines = (folder / TRACE_FILE).read_text(encoding="utf-8").splitlines()
    series = (folder / SERIES_FILE).read_text(encoding="utf-8")
    return {
        "manifest": manifest,
        "config": config,
        "report": report,
        "trace_lines": trace_lines,
        "series": series,
    }


def list_runs(store) -> list[str]:
    store = Path(store)
    if not store.is_dir():
        return []
    return sorted(
        p.name for p in store.iterdir() if (p / MANIFEST_FILE).is_file()
    )

"""Record service responses as test fixtures for the UI suite.

Builds a small corpus/model, drives a real session over HTTP, and saves
the JSON bodies the frontend tests replay. Run from the repo root:

    python3 frontend/scripts/record-fixtures.py
"""

import json
import pathlib
import sys
import tempfile
import threading
import urllib.request

from itermol.chem.tokens import tokenize
from itermol.corpus import synthetic_corpus
from itermol.chem.properties import PENALIZED_LOGP, PropertyOracle
from itermol.service import make_server
from itermol.translate.pairs import PairConstraint, build_pairs
from itermol.translate.reference import train_reference

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures"


def _call(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method)
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read().decode())


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    workdir = pathlib.Path(tempfile.mkdtemp(prefix="itermol-fixtures-"))

    corpus = synthetic_corpus(160, 11)
    oracle = PropertyOracle(PENALIZED_LOGP)
    pairs = build_pairs(
        [tokenize(t) for t in corpus], PairConstraint(oracle, tau=0.4), 1200, seed=1
    )
    model = train_reference(pairs, oracle)
    model_path = workdir / "model.json"
    model.save(model_path)

    server = make_server("127.0.0.1", 0, workdir / "store")
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        config = {
            "model": str(model_path),
            "iterations": 4,
            "decode": [
                {"strategy": "top-k", "k": 5, "num_samples": 6, "max_length": 60}
            ],
            "scoring": "penalized-logp",
            "objective": {"name": PENALIZED_LOGP, "normalization": None},
            "seeds": ["[C][C][C][S][C]"],
            "rng_seed": 5,
        }
        created = _call(base, "POST", "/v1/sessions", {"config": config})
        sid = created["session"]["id"]
        _call(base, "POST", f"/v1/sessions/{sid}/advance", {"steps": 4})

        fixtures = {
            "vocabulary.json": _call(base, "GET", "/v1/vocabulary"),
            "session.json": _call(base, "GET", f"/v1/sessions/{sid}"),
            "view.json": _call(base, "GET", f"/v1/sessions/{sid}/view"),
            "alternatives.json": _call(
                base, "GET", f"/v1/sessions/{sid}/iterations/1/alternatives"
            ),
            "report.json": _call(base, "GET", f"/v1/sessions/{sid}/report"),
        }
        step = fixtures["alternatives.json"]["step"]
        override_index = (step["chosen_index"] + 1) % len(step["candidates"])
        _call(
            base,
            "POST",
            f"/v1/sessions/{sid}/override",
            {"iteration": 1, "candidate": override_index},
        )
        fixtures["view_after_override.json"] = _call(
            base, "GET", f"/v1/sessions/{sid}/view"
        )
        fixtures["override_request.json"] = {
            "iteration": 1,
            "candidate": override_index,
        }
        for name, payload in fixtures.items():
            (FIXTURES / name).write_text(
                json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
            print(f"wrote {FIXTURES / name}")
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
    return 0


if __name__ == "__main__":
    sys.exit(main())

import random
import sys
import textwrap

import pytest

from itermol.chem.tokens import VOCABULARY, tokenize
from itermol.errors import (
    AdapterTimeoutError,
    InvalidDistributionError,
    ModeMismatchError,
    ProtocolError,
)
from itermol.translate.wire import ProcessAdapter


def _model_server_argv(path):
    return [sys.executable, "-m", "itermol.cli", "model-server", "--model", str(path)]


def _script_server(tmp_path, body: str):
    script = tmp_path / "server.py"
    script.write_text(textwrap.dedent(body), encoding="utf-8")
    return [sys.executable, str(script)]


def test_adapter_matches_in_process_model(tmp_path, world):
    path = tmp_path / "model.json"
    world.model.save(path)
    rng = random.Random(42)
    with ProcessAdapter(_model_server_argv(path)) as adapter:
        assert adapter.vocabulary == world.model.vocabulary
        for _ in range(100):
            source = rng.choice(world.sequences)
            prefix = tuple(
                rng.choice(VOCABULARY[:-1]) for _ in range(rng.randint(0, 8))
            )
            assert adapter.next_token_dist(source, prefix) == world.model.next_token_dist(
                source, prefix
            )


def test_echo_server_round_trip():
    argv = [sys.executable, "-m", "itermol.cli", "model-server", "--echo"]
    with ProcessAdapter(argv, mode="sequence-level") as adapter:
        source = tokenize("[C][N][O]")
        cands = adapter.generate(source, 4, seed=7)
        assert cands == [source] * 4


def test_mode_mismatch_is_local(tmp_path, world):
    path = tmp_path / "model.json"
    world.model.save(path)
    with ProcessAdapter(_model_server_argv(path)) as adapter:
        with pytest.raises(ModeMismatchError):
            adapter.generate(tokenize("[C]"), 2, 0)


def test_gen_against_token_level_server_is_protocol_error(tmp_path, world):
    path = tmp_path / "model.json"
    world.model.save(path)
    with ProcessAdapter(_model_server_argv(path), mode="sequence-level") as adapter:
        with pytest.raises(ProtocolError):
            adapter.generate(tokenize("[C]"), 2, 0)


def test_invalid_distribution_rejected(tmp_path):
    argv = _script_server(
        tmp_path,
        """
        import json, sys
        print(json.dumps({"op": "hello", "vocab": ["[C]", "[O]", "<end>"]}), flush=True)
        for line in sys.stdin:
            print(json.dumps({"p": [0.25, 0.25, 0.0]}), flush=True)
        """,
    )
    with ProcessAdapter(argv) as adapter:
        with pytest.raises(InvalidDistributionError):
            adapter.next_token_dist(("[C]",), ())


def test_small_drift_renormalized_silently(tmp_path):
    argv = _script_server(
        tmp_path,
        """
        import json, sys
        print(json.dumps({"op": "hello", "vocab": ["[C]", "[O]", "<end>"]}), flush=True)
        for line in sys.stdin:
            print(json.dumps({"p": [0.5, 0.3, 0.2000000004]}), flush=True)
        """,
    )
    with ProcessAdapter(argv) as adapter:
        dist = adapter.next_token_dist(("[C]",), ())
        assert sum(dist) == pytest.approx(1.0, abs=1e-12)


def test_negative_probability_rejected(tmp_path):
    argv = _script_server(
        tmp_path,
        """
        import json, sys
        print(json.dumps({"op": "hello", "vocab": ["[C]", "[O]", "<end>"]}), flush=True)
        for line in sys.stdin:
            print(json.dumps({"p": [1.5, -0.5, 0.0]}), flush=True)
        """,
    )
    with ProcessAdapter(argv) as adapter:
        with pytest.raises(InvalidDistributionError):
            adapter.next_token_dist(("[C]",), ())


def test_malformed_reply_is_protocol_error(tmp_path):
    argv = _script_server(
        tmp_path,
        """
        import json, sys
        print(json.dumps({"op": "hello", "vocab": ["[C]", "<end>"]}), flush=True)
        for line in sys.stdin:
            print("this is not json", flush=True)
        """,
    )
    with ProcessAdapter(argv) as adapter:
        with pytest.raises(ProtocolError):
            adapter.next_token_dist(("[C]",), ())


def test_out_of_manifest_candidate_rejected(tmp_path):
    argv = _script_server(
        tmp_path,
        """
        import json, sys
        print(json.dumps({"op": "hello", "vocab": ["[C]", "<end>"]}), flush=True)
        for line in sys.stdin:
            print(json.dumps({"cands": [["[Zz]"]]}), flush=True)
        """,
    )
    with ProcessAdapter(argv, mode="sequence-level") as adapter:
        with pytest.raises(ProtocolError):
            adapter.generate(("[C]",), 1, 0)


def test_timeout_on_silent_server():
    argv = [sys.executable, "-c", "import time; time.sleep(30)"]
    with pytest.raises(AdapterTimeoutError):
        ProcessAdapter(argv, timeout=0.4)


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        ProcessAdapter([sys.executable, "-c", "pass"], mode="telepathy")

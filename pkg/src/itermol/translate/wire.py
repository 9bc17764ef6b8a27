"""Line-delimited JSON wire protocol for external translation models.

One JSON object per UTF-8 line. The model side speaks first with a
vocabulary manifest, then answers requests:

    server -> {"op": "hello", "vocab": ["[C]", ..., "<end>"]}
    client -> {"op": "dist", "source": [...], "prefix": [...]}
    server -> {"p": [...]}                      # ordered by the manifest
    client -> {"op": "gen", "source": [...], "n": K, "seed": s}
    server -> {"cands": [[...], ...]}
    server -> {"error": "message"}              # any failed request

`ProcessAdapter` wraps a child process speaking this protocol as a
ConditionalModel; `serve_stdio` exposes any in-process model as such a
child. Replies whose probabilities drift from sum 1 by more than 1e-6,
or contain negative entries, are rejected rather than renormalized.
"""

import argparse
import json
import os
import select
import subprocess
import sys
import time

from ..chem.tokens import VOCABULARY
from ..errors import (
    AdapterTimeoutError,
    InvalidDistributionError,
    ModeMismatchError,
    ProtocolError,
)
from .base import ConditionalModel, EchoModel, SEQUENCE_LEVEL, TOKEN_LEVEL

SUM_DRIFT_LIMIT = 1e-6
# Drift below this is treated as exact; between the two limits the row is
# renormalized; above the outer limit the reply is rejected.
SUM_EXACT_LIMIT = 1e-12

DEFAULT_TIMEOUT = 30.0


class _LineChannel:
    """Binary line reader/writer over a subprocess with a deadline."""

    def __init__(self, process: subprocess.Popen, timeout: float):
        self._process = process
        self._timeout = timeout
        self._buffer = bytearray()

    def write_line(self, obj: dict) -> None:
        data = (json.dumps(obj, sort_keys=True) + "\n").encode("utf-8")
        try:
            self._process.stdin.write(data)
            self._process.stdin.flush()
        except (BrokenPipeError, ValueError) as exc:
            raise ProtocolError(f"model process closed its input: {exc}") from exc

    def read_line(self) -> dict:
        deadline = time.monotonic() + self._timeout
        fd = self._process.stdout.fileno()
        while True:
            newline = self._buffer.find(b"\n")
            if newline >= 0:
                line = bytes(self._buffer[:newline])
                del self._buffer[: newline + 1]
                try:
                    return json.loads(line.decode("utf-8"))
                except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                    raise ProtocolError(f"malformed reply line: {exc}") from exc
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise AdapterTimeoutError(
                    f"no reply within {self._timeout:.1f}s"
                )
            ready, _, _ = select.select([fd], [], [], remaining)
            if not ready:
                raise AdapterTimeoutError(
                    f"no reply within {self._timeout:.1f}s"
                )
            chunk = os.read(fd, 65536)
            if not chunk:
                raise ProtocolError("model process closed its output")
            self._buffer.extend(chunk)


class ProcessAdapter(ConditionalModel):
    """Run a model child process and expose it as a ConditionalModel."""

    def __init__(self, argv, mode: str = TOKEN_LEVEL, timeout: float = DEFAULT_TIMEOUT):
        if mode not in (TOKEN_LEVEL, SEQUENCE_LEVEL):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self._process = subprocess.Popen(
            list(argv),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            bufsize=0,
        )
        self._channel = _LineChannel(self._process, timeout)
        hello = self._channel.read_line()
        if hello.get("op") != "hello" or "vocab" not in hello:
            raise ProtocolError(f"expected hello manifest, got {hello!r}")
        self.vocabulary = tuple(hello["vocab"])
        self._vocab_set = frozenset(self.vocabulary)

    def close(self) -> None:
        if self._process.poll() is None:
            try:
                self._process.stdin.close()
            except OSError:
                pass
            try:
                self._process.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._process.kill()
                self._process.wait()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    def _request(self, payload: dict) -> dict:
        self._channel.write_line(payload)
        reply = self._channel.read_line()
        if "error" in reply:
            raise ProtocolError(f"model error: {reply['error']}")
        return reply

    def next_token_dist(self, source, prefix):
        if self.mode != TOKEN_LEVEL:
            raise ModeMismatchError("adapter is sequence-level")
        reply = self._request(
            {"op": "dist", "source": list(source), "prefix": list(prefix)}
        )
        probs = reply.get("p")
        if not isinstance(probs, list) or len(probs) != len(self.vocabulary):
            raise ProtocolError("reply 'p' missing or wrong length")
        try:
            probs = [float(p) for p in probs]
        except (TypeError, ValueError) as exc:
            raise ProtocolError(f"non-numeric probability: {exc}") from exc
        if any(p < 0.0 for p in probs):
            raise InvalidDistributionError("negative probability")
        total = sum(probs)
        drift = abs(total - 1.0)
        if drift > SUM_DRIFT_LIMIT:
            raise InvalidDistributionError(f"probabilities sum to {total!r}")
        if drift > SUM_EXACT_LIMIT:
            probs = [p / total for p in probs]
        return probs

    def generate(self, source, n: int, seed: int):
        if self.mode != SEQUENCE_LEVEL:
            raise ModeMismatchError("adapter is token-level")
        reply = self._request(
            {"op": "gen", "source": list(source), "n": int(n), "seed": int(seed)}
        )
        cands = reply.get("cands")
        if not isinstance(cands, list) or len(cands) != n:
            raise ProtocolError("reply 'cands' missing or wrong count")
        out = []
        for cand in cands:
            tokens = tuple(cand)
            for token in tokens:
                if token not in self._vocab_set:
                    raise ProtocolError(f"candidate token {token!r} not in manifest")
            out.append(tokens)
        return out


def serve_stdio(model: ConditionalModel, stdin=None, stdout=None) -> None:
    """Serve an in-process model over stdio until end of input."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout

    def emit(obj: dict) -> None:
        stdout.write(json.dumps(obj, sort_keys=True) + "\n")
        stdout.flush()

    emit({"op": "hello", "vocab": list(model.vocabulary)})
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
            op = request.get("op")
            if op == "dist":
                probs = model.next_token_dist(
                    tuple(request["source"]), tuple(request["prefix"])
                )
                emit({"p": list(probs)})
            elif op == "gen":
                cands = model.generate(
                    tuple(request["source"]), int(request["n"]), int(request["seed"])
                )
                emit({"cands": [list(c) for c in cands]})
            else:
                emit({"error": f"unknown op {op!r}"})
        except Exception as exc:  # reply, never crash the serving loop
            emit({"error": f"{type(exc).__name__}: {exc}"})


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="itermol.translate.wire",
        description="Serve a model over the line-delimited JSON protocol.",
    )
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="path to a saved reference translator")
    group.add_argument(
        "--echo", action="store_true", help="serve the sequence-level echo model"
    )
    args = parser.parse_args(argv)
    if args.echo:
        model: ConditionalModel = EchoModel()
        model.vocabulary = VOCABULARY
    else:
        from .reference import ReferenceTranslator

        model = ReferenceTranslator.load(args.model)
    serve_stdio(model)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

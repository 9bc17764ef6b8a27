"""HTTP/JSON session service exposing the engine to the trace explorer UI.

Endpoints (all JSON, versioned under /v1):

    GET  /v1/vocabulary                                token alphabet manifest
    GET  /v1/sessions                                  list sessions
    POST /v1/sessions          {"config": {...}}       create (model path inside config)
    GET  /v1/sessions/{id}                             status summary
    POST /v1/sessions/{id}/advance   {"steps": k}      run k iterations
    POST /v1/sessions/{id}/pause                       no-op state read
    GET  /v1/sessions/{id}/iterations/{i}/alternatives stored candidate batch
    POST /v1/sessions/{id}/override  {"iteration": i, "candidate": j}
    GET  /v1/sessions/{id}/trace                       ndjson, engine trace lines
    GET  /v1/sessions/{id}/report                      ensemble report so far
    GET  /v1/sessions/{id}/view                        UI view: steps with the
                                                       chosen molecule's graph
                                                       adjacency, plus archived
                                                       branches

Commands are single-writer per session: a second concurrent command gets
409. Sessions persist to the run store after every mutation, so a UI can
reconnect across server restarts.
"""

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .chem.graph import decode
from .chem.tokens import ALPHABET, EOS, render, tokenize
from .engine.run import RunConfig, step_to_dict
from .engine.session import Session
from .errors import (
    ConfigError,
    InvalidCandidateError,
    ItermolError,
    UnknownIterationError,
)
from .translate.reference import ReferenceTranslator

SESSIONS_DIR = "sessions"


class SessionStore:
    """Sessions plus their per-session command locks and persistence."""

    def __init__(self, store_path):
        self.store_path = Path(store_path)
        (self.store_path / SESSIONS_DIR).mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()
        self._model_paths: dict[str, str] = {}
        self._load_existing()

    def _session_file(self, session_id: str) -> Path:
        return self.store_path / SESSIONS_DIR / f"{session_id}.json"

    def _load_existing(self) -> None:
        for path in sorted((self.store_path / SESSIONS_DIR).glob("*.json")):
            data = json.loads(path.read_text(encoding="utf-8"))
            model = ReferenceTranslator.load(data["model_path"])
            session = Session.restore(data["session"], model)
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
            self._model_paths[session.id] = data["model_path"]

    def create(self, document: dict) -> Session:
        document = dict(document)
        model_path = document.pop("model", None)
        if not model_path or not Path(model_path).is_file():
            raise ConfigError([f"model: file not found: {model_path}"])
        model = ReferenceTranslator.load(model_path)
        config = RunConfig.from_dict(document)
        session = Session(config, model)
        with self._registry:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
            self._model_paths[session.id] = model_path
        self.persist(session)
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    def lock(self, session_id: str) -> threading.Lock:
        return self._locks[session_id]

    def ids(self) -> list[str]:
        return sorted(self._sessions)

    def persist(self, session: Session) -> None:
        payload = {
            "model_path": self._model_paths[session.id],
            "session": session.snapshot(),
        }
        self._session_file(session.id).write_text(
            json.dumps(payload, sort_keys=True), encoding="utf-8"
        )


def session_summary(session: Session) -> dict:
    return {
        "id": session.id,
        "status": session.status,
        "iterations": session.config.iterations,
        "executed": len(session.steps),
        "seed": session.config.seeds[0],
        "scoring": session.config.scoring.kind,
        "objective": session.config.objective.to_dict(),
    }


def trace_body(session: Session) -> str:
    lines = [json.dumps({"config": session.config.to_dict()}, sort_keys=True)]
    for step in session.steps:
        lines.append(json.dumps(step_to_dict(step, 0), sort_keys=True))
    return "\n".join(lines) + "\n"


def _graph_payload(tokens) -> dict:
    graph = decode(tokens)
    return {
        "atoms": [
            {"element": a.element, "hydrogens": a.implicit_hydrogens}
            for a in graph.atoms
        ],
        "bonds": [[i, j, order] for i, j, order in graph.bonds],
    }


def _view_step(step) -> dict:
    batch = step.batch
    chosen = batch.chosen
    return {
        "iteration": batch.iteration,
        "provenance": step.provenance,
        "source": render(batch.source),
        "chosen": render(chosen.tokens),
        "chosen_index": batch.chosen_index,
        "alternatives": len(batch.candidates),
        "properties": chosen.properties,
        "graph": _graph_payload(chosen.tokens),
    }


def view_body(session: Session) -> dict:
    """Everything the trace explorer renders, chemistry precomputed."""
    seed_tokens = tokenize(session.config.seeds[0])
    archives = []
    for archive in session.archives:
        archives.append(
            {
                "overridden_iteration": archive["overridden_iteration"],
                "previous_chosen_index": archive["previous_chosen_index"],
                "steps": [
                    {
                        "iteration": data["iteration"],
                        "provenance": data["provenance"],
                        "chosen": data["chosen"],
                        "properties": next(
                            c["properties"]
                            for idx, c in enumerate(data["candidates"])
                            if idx == data["chosen_index"]
                        ),
                        "graph": _graph_payload(tokenize(data["chosen"])),
                    }
                    for data in archive["steps"]
                ],
            }
        )
    return {
        "session": session_summary(session),
        "seed": {
            "tokens": session.config.seeds[0],
            "graph": _graph_payload(seed_tokens),
            "properties": None,
        },
        "steps": [_view_step(step) for step in session.steps],
        "archives": archives,
    }


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    store: SessionStore = None
    ui_dir: Path | None = None

    # --- plumbing -----------------------------------------------------------

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _send(self, status: int, payload, content_type="application/json") -> None:
        if isinstance(payload, (dict, list)):
            body = (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")
        elif isinstance(payload, str):
            body = payload.encode("utf-8")
        else:
            body = payload
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, message: str) -> None:
        self._send(status, {"error": message})

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        return json.loads(self.rfile.read(length).decode("utf-8"))

    # --- routing --------------------------------------------------------------

    def do_GET(self):  # noqa: N802
        try:
            self._route("GET")
        except BrokenPipeError:
            pass

    def do_POST(self):  # noqa: N802
        try:
            self._route("POST")
        except BrokenPipeError:
            pass

    def _route(self, method: str) -> None:
        path = self.path.split("?", 1)[0].rstrip("/") or "/"
        if method == "GET" and path == "/v1/vocabulary":
            self._send(200, {"alphabet": list(ALPHABET), "eos": EOS})
            return
        if path == "/v1/sessions":
            if method == "GET":
                self._send(
                    200,
                    {
                        "sessions": [
                            session_summary(self.store.get(i)) for i in self.store.ids()
                        ]
                    },
                )
            else:
                self._create_session()
            return
        match = re.fullmatch(r"/v1/sessions/([\w-]+)(/.*)?", path)
        if match:
            self._session_route(method, match.group(1), match.group(2) or "")
            return
        if method == "GET" and self.ui_dir is not None:
            self._serve_ui(path)
            return
        self._error(404, f"no route {method} {path}")

    def _create_session(self) -> None:
        try:
            document = self._read_json().get("config")
            if not isinstance(document, dict):
                self._error(400, "body must be {'config': {...}}")
                return
            session = self.store.create(document)
        except ConfigError as exc:
            self._error(400, str(exc))
            return
        except (json.JSONDecodeError, ValueError) as exc:
            self._error(400, f"bad request: {exc}")
            return
        self._send(201, {"session": session_summary(session)})

    def _session_route(self, method: str, session_id: str, rest: str) -> None:
        try:
            session = self.store.get(session_id)
        except KeyError:
            self._error(404, f"unknown session {session_id!r}")
            return

        if method == "GET":
            if rest == "":
                self._send(200, {"session": session_summary(session)})
            elif rest == "/trace":
                self._send(200, trace_body(session), content_type="application/x-ndjson")
            elif rest == "/report":
                try:
                    self._send(200, {"report": session.report().to_dict()})
                except ItermolError as exc:
                    self._error(400, str(exc))
            elif rest == "/view":
                self._send(200, view_body(session))
            elif m := re.fullmatch(r"/iterations/(\d+)/alternatives", rest):
                try:
                    step = session.alternatives(int(m.group(1)))
                except UnknownIterationError as exc:
                    self._error(404, str(exc))
                    return
                self._send(200, {"step": step_to_dict(step, 0)})
            else:
                self._error(404, f"no route GET {rest}")
            return

        # mutating commands: single writer per session
        lock = self.store.lock(session_id)
        if not lock.acquire(blocking=False):
            self._error(409, "another command is running for this session")
            return
        try:
            if rest == "/advance":
                body = self._read_json()
                steps = body.get("steps", 1)
                if not isinstance(steps, int) or steps < 1:
                    self._error(400, "steps must be an integer >= 1")
                    return
                session.advance(steps)
                self.store.persist(session)
                self._send(200, {"session": session_summary(session)})
            elif rest == "/pause":
                session.pause()
                self._send(200, {"session": session_summary(session)})
            elif rest == "/override":
                body = self._read_json()
                try:
                    session.override(int(body["iteration"]), int(body["candidate"]))
                except (KeyError, TypeError, ValueError) as exc:
                    self._error(400, f"bad override request: {exc}")
                    return
                except UnknownIterationError as exc:
                    self._error(404, str(exc))
                    return
                except InvalidCandidateError as exc:
                    self._error(400, str(exc))
                    return
                self.store.persist(session)
                self._send(200, {"session": session_summary(session)})
            else:
                self._error(404, f"no route POST {rest}")
        finally:
            lock.release()

    def _serve_ui(self, path: str) -> None:
        target = (self.ui_dir / (path.lstrip("/") or "index.html")).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())) or not target.is_file():
            self._error(404, f"no file {path}")
            return
        types = {
            ".html": "text/html",
            ".js": "text/javascript",
            ".css": "text/css",
            ".json": "application/json",
            ".svg": "image/svg+xml",
        }
        self._send(
            200, target.read_bytes(), types.get(target.suffix, "application/octet-stream")
        )


def make_server(host: str, port: int, store_path, ui_dir=None) -> ThreadingHTTPServer:
    handler = type(
        "Handler",
        (_Handler,),
        {
            "store": SessionStore(store_path),
            "ui_dir": Path(ui_dir) if ui_dir else None,
        },
    )
    return ThreadingHTTPServer((host, port), handler)


def serve(host: str, port: int, store_path, ui_dir=None) -> None:
    server = make_server(host, port, store_path, ui_dir)
    address = f"http://{server.server_address[0]}:{server.server_address[1]}"
    print(f"session service listening on {address}/v1")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()

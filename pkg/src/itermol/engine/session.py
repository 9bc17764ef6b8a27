"""Interactive single-trace sessions with breakpoint inspection and override.

A session advances one seed through the configured iterations, storing
every candidate batch so any executed step can be revisited. Overriding
a step's winner truncates the downstream trace, archives it for
comparison, and replays the remaining iterations with the original
per-iteration random substreams; overriding with the auto-chosen
candidate therefore reproduces the downstream trace exactly. Finished
sessions stay overridable (forking a finished trace is allowed).
"""

import itertools
from dataclasses import replace

from ..chem.fingerprint import morgan_fingerprint
from ..chem.graph import decode
from ..chem.tokens import tokenize
from ..errors import EmptyBatchError, InvalidCandidateError, UnknownIterationError
from ..rng import substream
from .run import (
    RunConfig,
    Trace,
    TraceStep,
    USER_OVERRIDE,
    build_entries,
    build_report,
    replay_downstream,
    run_step,
    step_from_dict,
    step_to_dict,
)

RUNNING = "running"
PAUSED = "paused-at-breakpoint"
FINISHED = "finished"

_ids = itertools.count(1)


class Session:
    """Single-writer interactive run over exactly one seed compound."""

    def __init__(self, config: RunConfig, model, session_id: str | None = None):
        if len(config.seeds) != 1:
            raise ValueError("interactive sessions take exactly one seed")
        self.id = session_id or f"session-{next(_ids):06d}"
        self.config = config
        self.model = model
        self.steps: list[TraceStep] = []
        self.archives: list[dict] = []
        self.truncated = False
        self._seed_tokens = tokenize(config.seeds[0])
        self._init_fp = morgan_fingerprint(
            decode(self._seed_tokens), config.fingerprint_radius
        )

    # --- state ------------------------------------------------------------

    @property
    def status(self) -> str:
        if self.truncated or len(self.steps) >= self.config.iterations:
            return FINISHED
        return PAUSED

    @property
    def trace(self) -> Trace:
        return Trace(0, self._seed_tokens, list(self.steps), self.truncated)

    def report(self):
        entries = build_entries([self.trace])
        return build_report(self.config, [self.trace], entries)

    # --- commands -----------------------------------------------------------

    def advance(self, steps: int = 1) -> str:
        """Execute up to `steps` further iterations; returns the new status."""
        if steps < 1:
            raise ValueError("steps must be >= 1")
        for _ in range(steps):
            if self.status == FINISHED:
                break
            iteration = len(self.steps)
            source = self.steps[-1].chosen if self.steps else self._seed_tokens
            try:
                batch = run_step(
                    self.model,
                    source,
                    self.config.decode_specs,
                    self.config.scoring,
                    self.config.objective,
                    self._init_fp,
                    iteration=iteration,
                    seed=substream(self.config.rng_seed, 0, iteration),
                    radius=self.config.fingerprint_radius,
                )
            except EmptyBatchError:
                self.truncated = True
                break
            self.steps.append(TraceStep(batch))
        return self.status

    def pause(self) -> str:
        return self.status

    def alternatives(self, iteration: int) -> TraceStep:
        """The stored batch at an executed iteration, winner included."""
        if not 0 <= iteration < len(self.steps):
            raise UnknownIterationError(
                f"iteration {iteration} not executed (trace length {len(self.steps)})"
            )
        return self.steps[iteration]

    def override(self, iteration: int, candidate_index: int) -> str:
        """Re-choose a step's winner and replay everything after it."""
        step = self.alternatives(iteration)
        if not 0 <= candidate_index < len(step.batch.candidates):
            raise InvalidCandidateError(
                f"candidate {candidate_index} out of range at iteration {iteration}"
            )
        self.archives.append(
            {
                "overridden_iteration": iteration,
                "previous_chosen_index": step.batch.chosen_index,
                "steps": [step_to_dict(s, 0) for s in self.steps[iteration:]],
            }
        )
        chosen = replace(step.batch, chosen_index=candidate_index)
        self.steps[iteration] = TraceStep(chosen, USER_OVERRIDE)
        del self.steps[iteration + 1 :]
        self.truncated = False
        self.steps.extend(
            replay_downstream(self.config, self.model, self.steps, iteration)
        )
        # replay stops early only when a downstream batch came up empty
        self.truncated = len(self.steps) < self.config.iterations
        return self.status

    # --- persistence ----------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "config": self.config.to_dict(),
            "steps": [step_to_dict(s, 0) for s in self.steps],
            "archives": self.archives,
            "truncated": self.truncated,
            "status": self.status,
        }

    @classmethod
    def restore(cls, snapshot: dict, model) -> "Session":
        session = cls(
            RunConfig.from_dict(snapshot["config"]), model, session_id=snapshot["id"]
        )
        session.steps = [step_from_dict(d) for d in snapshot["steps"]]
        session.archives = list(snapshot["archives"])
        session.truncated = snapshot["truncated"]
        return session

"""The recursive translation loop, its trace, and the ensemble report.

One run takes each seed through n iterations. Every iteration generates
K candidates from the model conditioned on the previous winner, scores
them with the configured property oracles, and feeds the scoring
function's choice back in as the next source. All candidates from all
iterations join one ensemble, whose objective argmax is the run's
answer; per-iteration mean/spread/diversity series reproduce how the
population drifts across iterations.

Randomness is derived per (run seed, seed index, iteration index), so
runs are bit-reproducible and a replay from any step reuses the exact
downstream streams (the breakpoint contract).
"""

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..chem.fingerprint import diversity_from_fingerprints, morgan_fingerprint, tanimoto
from ..chem.graph import decode, molecular_weight
from ..chem.properties import (
    PENALIZED_LOGP,
    PropertyOracle,
    QED_SURROGATE,
    penalized_logp,
    population_stats,
    qed_surrogate,
)
from ..chem.tokens import ALPHABET, MAX_SEQUENCE_TOKENS, render, tokenize
from ..decoding import DecodeSpec, run_decode
from ..errors import ConfigError, EmptyBatchError
from ..rng import substream
from ..translate.base import SEQUENCE_LEVEL
from .scoring import ScoringFunction, score_candidates

_ALPHABET_SET = frozenset(ALPHABET)
_LOGP_ORACLE = PropertyOracle(PENALIZED_LOGP)
_QED_ORACLE = PropertyOracle(QED_SURROGATE)

AUTO = "auto"
USER_OVERRIDE = "user-override"

DEFAULT_TOP_M = 3


@dataclass(frozen=True)
class Candidate:
    tokens: tuple[str, ...]
    log_likelihood: float | None
    properties: dict


@dataclass(frozen=True)
class CandidateBatch:
    iteration: int
    source: tuple[str, ...]
    candidates: tuple[Candidate, ...]
    chosen_index: int
    dropped: int
    generated: int

    @property
    def chosen(self) -> Candidate:
        return self.candidates[self.chosen_index]


@dataclass(frozen=True)
class TraceStep:
    batch: CandidateBatch
    provenance: str = AUTO

    @property
    def iteration(self) -> int:
        return self.batch.iteration

    @property
    def source(self) -> tuple[str, ...]:
        return self.batch.source

    @property
    def chosen(self) -> tuple[str, ...]:
        return self.batch.chosen.tokens


@dataclass
class Trace:
    seed_index: int
    seed: tuple[str, ...]
    steps: list[TraceStep] = field(default_factory=list)
    truncated: bool = False


@dataclass(frozen=True)
class RunConfig:
    iterations: int
    decode_specs: tuple[DecodeSpec, ...]
    scoring: ScoringFunction
    objective: PropertyOracle
    seeds: tuple[str, ...]
    rng_seed: int = 0
    fingerprint_radius: int = 2
    top_m: int = DEFAULT_TOP_M

    @property
    def samples_per_iteration(self) -> int:
        return sum(spec.samples for spec in self.decode_specs)

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "decode": [spec.to_dict() for spec in self.decode_specs],
            "scoring": self.scoring.kind,
            "objective": self.objective.to_dict(),
            "seeds": list(self.seeds),
            "rng_seed": self.rng_seed,
            "fingerprint_radius": self.fingerprint_radius,
            "top_m": self.top_m,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        problems = []
        iterations = data.get("iterations")
        if not isinstance(iterations, int) or iterations < 1:
            problems.append("iterations: must be an integer >= 1")
        specs = []
        decode_field = data.get("decode")
        if not isinstance(decode_field, list) or not decode_field:
            problems.append("decode: must be a non-empty list of decode specs")
        else:
            for pos, spec_data in enumerate(decode_field):
                try:
                    specs.append(DecodeSpec.from_dict(spec_data))
                except (ValueError, KeyError, TypeError) as exc:
                    problems.append(f"decode[{pos}]: {exc}")
        scoring = None
        try:
            scoring = ScoringFunction(data.get("scoring", ""))
        except ValueError as exc:
            problems.append(f"scoring: {exc}")
        objective = None
        try:
            objective = PropertyOracle.from_dict(data.get("objective") or {})
        except Exception as exc:
            problems.append(f"objective: {exc}")
        seeds = data.get("seeds")
        parsed_seeds = []
        if not isinstance(seeds, list) or not seeds:
            problems.append("seeds: must be a non-empty list of token strings")
        else:
            for pos, text in enumerate(seeds):
                try:
                    tokens = tokenize(text)
                    if len(tokens) > MAX_SEQUENCE_TOKENS:
                        raise ValueError(f"longer than {MAX_SEQUENCE_TOKENS} tokens")
                    decode(tokens)
                    parsed_seeds.append(text)
                except Exception as exc:
                    problems.append(f"seeds[{pos}]: {exc}")
        rng_seed = data.get("rng_seed", 0)
        if not isinstance(rng_seed, int):
            problems.append("rng_seed: must be an integer")
        radius = data.get("fingerprint_radius", 2)
        if not isinstance(radius, int) or not 0 <= radius <= 4:
            problems.append("fingerprint_radius: must be an integer in [0, 4]")
        top_m = data.get("top_m", DEFAULT_TOP_M)
        if not isinstance(top_m, int) or top_m < 1:
            problems.append("top_m: must be an integer >= 1")
        if problems:
            raise ConfigError(problems)
        return cls(
            iterations=iterations,
            decode_specs=tuple(specs),
            scoring=scoring,
            objective=objective,
            seeds=tuple(parsed_seeds),
            rng_seed=rng_seed,
            fingerprint_radius=radius,
            top_m=top_m,
        )


def _evaluate(tokens, log_likelihood, source_fp, init_fp, objective, radius):
    """Candidate with all property values, or None when it cannot be scored."""
    tokens = tuple(tokens)
    if not tokens or len(tokens) > MAX_SEQUENCE_TOKENS:
        return None
    if any(t not in _ALPHABET_SET for t in tokens):
        return None
    graph = decode(tokens)
    if len(graph.atoms) == 0:
        return None
    fp = morgan_fingerprint(graph, radius)
    properties = {
        "objective": objective.score(graph),
        "penalized-logp": penalized_logp(graph, _LOGP_ORACLE),
        "qed": qed_surrogate(graph, _QED_ORACLE),
        "molecular-weight": molecular_weight(graph),
        "sim-previous": tanimoto(fp, source_fp),
        "sim-initial": tanimoto(fp, init_fp),
    }
    return Candidate(tokens, log_likelihood, properties)


def run_step(
    model,
    source,
    specs,
    scoring: ScoringFunction,
    objective: PropertyOracle,
    init_fingerprint,
    *,
    iteration: int = 0,
    seed: int = 0,
    radius: int = 2,
) -> CandidateBatch:
    """One recursion step: generate K candidates, score, pick the winner."""
    source = tuple(source)
    source_fp = morgan_fingerprint(decode(source), radius)
    raw: list[tuple[tuple[str, ...], float | None]] = []
    if model.mode == SEQUENCE_LEVEL:
        total = sum(spec.samples for spec in specs)
        for tokens in model.generate(source, total, substream(seed, "generate")):
            raw.append((tuple(tokens), None))
    else:
        for spec_index, spec in enumerate(specs):
            for scored in run_decode(model, source, spec, substream(seed, spec_index)):
                raw.append((scored.tokens, scored.log_likelihood))

    candidates = []
    dropped = 0
    for tokens, log_likelihood in raw:
        candidate = _evaluate(
            tokens, log_likelihood, source_fp, init_fingerprint, objective, radius
        )
        if candidate is None:
            dropped += 1
        else:
            candidates.append(candidate)
    if not candidates:
        raise EmptyBatchError(f"all {len(raw)} candidates were dropped")
    batch = CandidateBatch(
        iteration=iteration,
        source=source,
        candidates=tuple(candidates),
        chosen_index=0,
        dropped=dropped,
        generated=len(raw),
    )
    return replace(batch, chosen_index=score_candidates(batch, scoring))


@dataclass(frozen=True)
class EnsembleEntry:
    objective: float
    seed_index: int
    iteration: int
    candidate_index: int
    tokens: tuple[str, ...]
    log_likelihood: float | None
    properties: dict


@dataclass(frozen=True)
class IterationStats:
    iteration: int
    mean: float
    stddev: float
    max: float
    diversity: float


@dataclass(frozen=True)
class EnsembleReport:
    best: EnsembleEntry
    top: tuple[EnsembleEntry, ...]
    series: tuple[IterationStats, ...]
    generations_per_seed: int
    total_generations: int
    non_recursive_baseline: bool
    objective: PropertyOracle

    def to_dict(self) -> dict:
        return {
            "best": _entry_to_dict(self.best),
            "top": [_entry_to_dict(e) for e in self.top],
            "series": [
                {
                    "iteration": s.iteration,
                    "mean": s.mean,
                    "stddev": s.stddev,
                    "max": s.max,
                    "diversity": s.diversity,
                }
                for s in self.series
            ],
            "generations_per_seed": self.generations_per_seed,
            "total_generations": self.total_generations,
            "non_recursive_baseline": self.non_recursive_baseline,
            "objective": self.objective.to_dict(),
        }


@dataclass
class RunResult:
    config: RunConfig
    traces: list[Trace]
    entries: list[EnsembleEntry]
    report: EnsembleReport

    def trace_lines(self) -> list[str]:
        lines = [json.dumps({"config": self.config.to_dict()}, sort_keys=True)]
        for trace in self.traces:
            for step in trace.steps:
                lines.append(
                    json.dumps(step_to_dict(step, trace.seed_index), sort_keys=True)
                )
        return lines

    def write_trace(self, path) -> None:
        Path(path).write_text("\n".join(self.trace_lines()) + "\n", encoding="utf-8")


def _entry_to_dict(entry: EnsembleEntry) -> dict:
    return {
        "objective": entry.objective,
        "seed_index": entry.seed_index,
        "iteration": entry.iteration,
        "candidate_index": entry.candidate_index,
        "tokens": render(entry.tokens),
        "log_likelihood": entry.log_likelihood,
        "properties": entry.properties,
    }


def step_to_dict(step: TraceStep, seed_index: int) -> dict:
    batch = step.batch
    return {
        "seed_index": seed_index,
        "iteration": batch.iteration,
        "source": render(batch.source),
        "chosen": render(batch.chosen.tokens),
        "chosen_index": batch.chosen_index,
        "provenance": step.provenance,
        "sim_previous": batch.chosen.properties["sim-previous"],
        "sim_initial": batch.chosen.properties["sim-initial"],
        "dropped": batch.dropped,
        "generated": batch.generated,
        "candidates": [
            {
                "tokens": render(c.tokens),
                "log_likelihood": c.log_likelihood,
                "properties": c.properties,
            }
            for c in batch.candidates
        ],
    }


def step_from_dict(data: dict) -> TraceStep:
    candidates = tuple(
        Candidate(tokenize(c["tokens"]), c["log_likelihood"], dict(c["properties"]))
        for c in data["candidates"]
    )
    batch = CandidateBatch(
        iteration=data["iteration"],
        source=tokenize(data["source"]),
        candidates=candidates,
        chosen_index=data["chosen_index"],
        dropped=data["dropped"],
        generated=data["generated"],
    )
    return TraceStep(batch, data["provenance"])


def build_entries(traces) -> list[EnsembleEntry]:
    entries = []
    for trace in traces:
        for step in trace.steps:
            for index, candidate in enumerate(step.batch.candidates):
                entries.append(
                    EnsembleEntry(
                        objective=candidate.properties["objective"],
                        seed_index=trace.seed_index,
                        iteration=step.iteration,
                        candidate_index=index,
                        tokens=candidate.tokens,
                        log_likelihood=candidate.log_likelihood,
                        properties=candidate.properties,
                    )
                )
    return entries


def _entry_order(entry: EnsembleEntry):
    return (-entry.objective, entry.seed_index, entry.iteration, entry.candidate_index)


def build_report(config: RunConfig, traces, entries) -> EnsembleReport:
    if not entries:
        raise EmptyBatchError("no ensemble entries: every seed trace is empty")
    ranked = sorted(entries, key=_entry_order)
    top: list[EnsembleEntry] = []
    seen = set()
    for entry in ranked:
        if entry.tokens in seen:
            continue
        seen.add(entry.tokens)
        top.append(entry)
        if len(top) == config.top_m:
            break

    series = []
    for iteration in range(config.iterations):
        pooled = [e for e in entries if e.iteration == iteration]
        if not pooled:
            break
        values = [e.objective for e in pooled]
        mean, stddev = population_stats(values)
        if len(pooled) >= 2:
            fps = [
                morgan_fingerprint(decode(e.tokens), config.fingerprint_radius)
                for e in pooled
            ]
            spread = diversity_from_fingerprints(fps)
        else:
            spread = 0.0
        series.append(
            IterationStats(iteration, mean, stddev, max(values), spread)
        )

    total = sum(step.batch.generated for trace in traces for step in trace.steps)
    return EnsembleReport(
        best=ranked[0],
        top=tuple(top),
        series=tuple(series),
        generations_per_seed=config.iterations * config.samples_per_iteration,
        total_generations=total,
        non_recursive_baseline=config.iterations == 1,
        objective=config.objective,
    )


def run_recursive(config: RunConfig, model) -> RunResult:
    """Run the full recursion over every seed and assemble the report."""
    traces = []
    for seed_index, seed_text in enumerate(config.seeds):
        seed_tokens = tokenize(seed_text)
        init_fp = morgan_fingerprint(
            decode(seed_tokens), config.fingerprint_radius
        )
        trace = Trace(seed_index=seed_index, seed=seed_tokens)
        source = seed_tokens
        for iteration in range(config.iterations):
            try:
                batch = run_step(
                    model,
                    source,
                    config.decode_specs,
                    config.scoring,
                    config.objective,
                    init_fp,
                    iteration=iteration,
                    seed=substream(config.rng_seed, seed_index, iteration),
                    radius=config.fingerprint_radius,
                )
            except EmptyBatchError:
                trace.truncated = True
                break
            trace.steps.append(TraceStep(batch))
            source = batch.chosen.tokens
        traces.append(trace)
    entries = build_entries(traces)
    report = build_report(config, traces, entries)
    return RunResult(config, traces, entries, report)


def top_mean(entries, k: int) -> float:
    """Mean of the k largest objective values in an ensemble."""
    values = sorted((e.objective for e in entries), reverse=True)[:k]
    if not values:
        raise ValueError("no entries")
    return sum(values) / len(values)


def series_csv(report: EnsembleReport) -> str:
    lines = ["iteration,mean,stddev,max,diversity"]
    for s in report.series:
        lines.append(f"{s.iteration},{s.mean!r},{s.stddev!r},{s.max!r},{s.diversity!r}")
    return "\n".join(lines) + "\n"


def replay_downstream(config: RunConfig, model, steps, from_iteration: int):
    """Recompute steps after `from_iteration` with the original substreams.

    Returns the recomputed steps for iterations from_iteration+1 .. n-1,
    conditioning the first on the (possibly overridden) winner of
    `from_iteration`. Used by breakpoint overrides.
    """
    seed_tokens = tokenize(config.seeds[0])
    init_fp = morgan_fingerprint(decode(seed_tokens), config.fingerprint_radius)
    source = steps[from_iteration].batch.chosen.tokens
    new_steps = []
    for iteration in range(from_iteration + 1, config.iterations):
        try:
            batch = run_step(
                model,
                source,
                config.decode_specs,
                config.scoring,
                config.objective,
                init_fp,
                iteration=iteration,
                seed=substream(config.rng_seed, 0, iteration),
                radius=config.fingerprint_radius,
            )
        except EmptyBatchError:
            break
        new_steps.append(TraceStep(batch))
        source = batch.chosen.tokens
    return new_steps

import json

import pytest

from itermol.chem.properties import PENALIZED_LOGP, PropertyOracle
from itermol.decoding import DecodeSpec
from itermol.engine.run import RunConfig, step_to_dict
from itermol.engine.scoring import ScoringFunction
from itermol.engine.session import FINISHED, PAUSED, Session
from itermol.errors import InvalidCandidateError, UnknownIterationError

LOGP = PropertyOracle(PENALIZED_LOGP)


def _config(seed_text, n=4, rng=0):
    return RunConfig(
        iterations=n,
        decode_specs=(DecodeSpec.topk(5, 6, max_length=60),),
        scoring=ScoringFunction("penalized-logp"),
        objective=LOGP,
        seeds=(seed_text,),
        rng_seed=rng,
    )


@pytest.fixture()
def session(world):
    return Session(_config(world.seeds[0]), world.model)


def _steps_json(session):
    return [json.dumps(step_to_dict(s, 0), sort_keys=True) for s in session.steps]


def test_sessions_require_single_seed(world):
    with pytest.raises(ValueError):
        Session(
            RunConfig(
                iterations=1,
                decode_specs=(DecodeSpec.greedy(),),
                scoring=ScoringFunction("penalized-logp"),
                objective=LOGP,
                seeds=("[C]", "[C][C]"),
                rng_seed=0,
            ),
            world.model,
        )


def test_advance_and_finish(session):
    assert session.status == PAUSED
    assert session.advance(2) == PAUSED
    assert len(session.steps) == 2
    assert session.advance(10) == FINISHED
    assert len(session.steps) == 4
    assert session.pause() == FINISHED


def test_advance_matches_batch_run(world, session):
    """Session stepping reproduces run_recursive exactly (same substreams)."""
    from itermol.engine.run import run_recursive

    session.advance(4)
    batch = run_recursive(session.config, world.model)
    assert _steps_json(session) == [
        json.dumps(step_to_dict(s, 0), sort_keys=True)
        for s in batch.traces[0].steps
    ]


def test_alternatives_bounds(session):
    session.advance(1)
    step = session.alternatives(0)
    assert step.batch.chosen_index < len(step.batch.candidates)
    for key in ("objective", "qed", "molecular-weight", "sim-previous"):
        assert key in step.batch.candidates[0].properties
    with pytest.raises(UnknownIterationError):
        session.alternatives(1)
    with pytest.raises(UnknownIterationError):
        session.alternatives(-1)


def test_override_with_auto_choice_is_idempotent(session):
    session.advance(4)
    before = _steps_json(session)
    auto_index = session.steps[1].batch.chosen_index
    session.override(1, auto_index)
    after = _steps_json(session)
    assert after[2:] == before[2:]
    assert session.steps[1].provenance == "user-override"
    assert json.loads(after[1])["candidates"] == json.loads(before[1])["candidates"]


def test_override_changes_downstream_source(session):
    session.advance(4)
    auto_index = session.steps[1].batch.chosen_index
    other = (auto_index + 1) % len(session.steps[1].batch.candidates)
    chosen_tokens = session.steps[1].batch.candidates[other].tokens
    session.override(1, other)
    assert session.steps[1].batch.chosen_index == other
    assert session.steps[2].source == chosen_tokens
    assert len(session.steps) == 4
    assert session.archives and session.archives[0]["overridden_iteration"] == 1


def test_override_at_last_iteration_only_flips_provenance(session):
    session.advance(4)
    before = _steps_json(session)
    auto_index = session.steps[3].batch.chosen_index
    session.override(3, auto_index)
    assert len(session.steps) == 4
    assert session.steps[3].provenance == "user-override"
    assert _steps_json(session)[:3] == before[:3]


def test_finished_sessions_can_fork(session):
    session.advance(10)
    assert session.status == FINISHED
    auto = session.steps[0].batch.chosen_index
    other = (auto + 1) % len(session.steps[0].batch.candidates)
    session.override(0, other)
    assert session.status == FINISHED
    assert session.steps[0].batch.chosen_index == other


def test_override_validation(session):
    session.advance(2)
    with pytest.raises(UnknownIterationError):
        session.override(3, 0)
    with pytest.raises(InvalidCandidateError):
        session.override(0, 999)


def test_snapshot_restore_round_trip(world, session):
    session.advance(3)
    auto = session.steps[0].batch.chosen_index
    session.override(0, auto)
    snap = session.snapshot()
    again = Session.restore(snap, world.model)
    assert again.snapshot() == snap
    # restored sessions keep advancing deterministically
    session.advance(1)
    again.advance(1)
    assert _steps_json(session) == _steps_json(again)


def test_session_report_counts_generated(session):
    session.advance(2)
    report = session.report()
    assert report.total_generations == 12
    assert len(report.series) == 2

"""Generator guarantees and the injection oracle."""

from __future__ import annotations

import pytest

from sprintlint import (
    InfeasibleFixtureError,
    MetricConfig,
    default_registry,
    run_all,
)
from sprintlint.fixtures import (
    FixtureSpec,
    InjectionSpec,
    generate,
    inject,
    injection_from_dict,
    spec_from_dict,
)
from sprintlint.ingest import (
    IngestManifest,
    load_history,
    write_commits,
    write_issues,
    write_pulls,
    write_sprints,
    write_stats,
)

SMALL = FixtureSpec(seed=1, teams=1, developers_per_team=4, sprints=1,
                    sprint_length_days=2.0, stories_per_sprint=2,
                    commits_per_dev_per_sprint=10, pulls_per_sprint=2)

CONFIG = MetricConfig()
REGISTRY = default_registry()


def test_same_seed_same_history():
    a, _ = generate(FixtureSpec(seed=99, teams=1))
    b, _ = generate(FixtureSpec(seed=99, teams=1))
    assert a == b


def test_different_seed_different_history():
    a, _ = generate(FixtureSpec(seed=1, teams=1))
    b, _ = generate(FixtureSpec(seed=2, teams=1))
    assert a != b


def test_serialized_fixture_is_byte_identical(tmp_path):
    for sub in ("one", "two"):
        history, _ = generate(FixtureSpec(seed=5, teams=1))
        d = tmp_path / sub
        d.mkdir()
        write_commits(d / "commits.ndjson", history.commits)
        write_issues(d / "issues.json", history.stories)
        write_sprints(d / "sprints.json", history.sprints)
        write_pulls(d / "pulls.json", history.pulls)
        write_stats(d / "stats.csv", history.build_stats)
    for name in ("commits.ndjson", "issues.json", "sprints.json", "pulls.json", "stats.csv"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_default_spec_self_lints_perfect():
    _, certificate = generate(FixtureSpec())
    assert certificate.violation_free
    assert certificate.all_applicable_scores_100
    assert certificate.rng_algorithm == "mt19937"


def test_generated_fixture_round_trips_through_ingest(tmp_path):
    history, _ = generate(SMALL)
    history, _ = inject(history, InjectionSpec(last_minute_commits=2), seed=3)
    write_commits(tmp_path / "commits.ndjson", history.commits)
    write_issues(tmp_path / "issues.json", history.stories)
    write_sprints(tmp_path / "sprints.json", history.sprints)
    write_pulls(tmp_path / "pulls.json", history.pulls)
    write_stats(tmp_path / "stats.csv", history.build_stats)
    manifest = IngestManifest(
        commits_path=tmp_path / "commits.ndjson",
        issues_path=tmp_path / "issues.json",
        sprints_path=tmp_path / "sprints.json",
        pulls_path=tmp_path / "pulls.json",
        stats_path=tmp_path / "stats.csv",
    )
    reread, diagnostics = load_history(manifest)
    assert diagnostics == []
    assert reread == history


def test_single_developer_cannot_satisfy_hot_file_guarantee():
    with pytest.raises(InfeasibleFixtureError, match="developers"):
        generate(FixtureSpec(teams=1, developers_per_team=1))


def test_assignees_without_commits_infeasible():
    with pytest.raises(InfeasibleFixtureError, match="commit"):
        generate(FixtureSpec(teams=1, commits_per_dev_per_sprint=0))


def test_sprint_shorter_than_deadline_window_infeasible():
    with pytest.raises(InfeasibleFixtureError, match="window"):
        generate(FixtureSpec(teams=1, sprint_length_days=0.05))


def test_spec_validation():
    with pytest.raises(InfeasibleFixtureError):
        FixtureSpec(teams=-1)
    with pytest.raises(InfeasibleFixtureError):
        FixtureSpec(sprint_length_days=0.0)
    with pytest.raises(InfeasibleFixtureError):
        spec_from_dict({"nonsense": 3})


def test_empty_injection_returns_same_history():
    history, _ = generate(SMALL)
    after, ledger = inject(history, InjectionSpec(), seed=1)
    assert after is history
    assert ledger == {}


DIRECTIVES = {
    "collective-ownership": InjectionSpec(hot_files=(2, 12, 1)),
    "test-later": InjectionSpec(tdd_regressions=2),
    "huge-stories": InjectionSpec(huge_stories=(1, 10.0)),
    "multi-backlog-stories": InjectionSpec(neverending_stories=(2, 3)),
    "duplicate-stories": InjectionSpec(duplicate_stories=2),
    "last-minute-commits": InjectionSpec(last_minute_commits=3),
    "commit-activity": InjectionSpec(idle_developers=1),
    "daily-story-load": InjectionSpec(backlog_overflow=2),
    "fast-pull-requests": InjectionSpec(silent_fast_pulls=2),
}


@pytest.mark.parametrize("metric", sorted(DIRECTIVES))
def test_injection_oracle_round_trip(metric):
    base, _ = generate(SMALL)
    history, ledger = inject(base, DIRECTIVES[metric], seed=11)
    record = ledger[metric]
    results = run_all(REGISTRY, history, CONFIG)
    by_cell = {(r.metric, r.team, r.sprint): r for r in results}

    target = by_cell[(metric, record.team, record.sprint_id)]
    found = tuple(a for v in target.violations for a in v.artifacts)
    assert sorted(found) == sorted(record.artifacts)
    if metric == "daily-story-load":
        assert record.artifacts == ()
        assert target.score is not None and target.score < 100.0

    # cross-contamination freedom: every other metric stays at a perfect score
    for result in results:
        if result.metric == metric:
            continue
        assert result.score == 100.0, (result.metric, result.team, result.sprint, result.score)
        assert result.violations == ()


def test_neverending_membership_average_matches_spec_example():
    base, _ = generate(SMALL)
    history, ledger = inject(base, InjectionSpec(neverending_stories=(2, 3)), seed=4)
    record = ledger["multi-backlog-stories"]
    results = run_all(REGISTRY, history, CONFIG)
    target = next(
        r for r in results
        if (r.metric, r.team, r.sprint) == ("multi-backlog-stories", record.team, record.sprint_id)
    )
    assert target.inputs_echo["avg_in_sprints"] == 3.0
    assert len(target.violations) == 2


def test_injection_determinism():
    base, _ = generate(SMALL)
    a, ledger_a = inject(base, DIRECTIVES["last-minute-commits"], seed=21)
    b, ledger_b = inject(base, DIRECTIVES["last-minute-commits"], seed=21)
    assert a == b and ledger_a == ledger_b


def test_injection_feasibility_checks():
    base, _ = generate(SMALL)
    with pytest.raises(InfeasibleFixtureError, match="authors"):
        inject(base, InjectionSpec(hot_files=(1, 12, 5)), seed=1)  # too many authors
    with pytest.raises(InfeasibleFixtureError, match="edits"):
        inject(base, InjectionSpec(hot_files=(1, 2, 1)), seed=1)  # too few edits
    with pytest.raises(InfeasibleFixtureError, match="multiplier"):
        inject(base, InjectionSpec(huge_stories=(1, 1.5)), seed=1)  # cannot exceed threshold
    with pytest.raises(InfeasibleFixtureError, match="memberships"):
        inject(base, InjectionSpec(neverending_stories=(1, 1)), seed=1)


def test_injection_spec_json_round_trip():
    spec = InjectionSpec(hot_files=(1, 12, 2), duplicate_stories=3, huge_stories=(2, 12.0))
    assert injection_from_dict(spec.to_dict()) == spec
    with pytest.raises(InfeasibleFixtureError):
        injection_from_dict({"sabotage": 1})


def test_multiple_directives_in_one_injection():
    base, _ = generate(SMALL)
    combined = InjectionSpec(duplicate_stories=1, last_minute_commits=1)
    history, ledger = inject(base, combined, seed=8)
    assert set(ledger) == {"duplicate-stories", "last-minute-commits"}
    results = run_all(REGISTRY, history, CONFIG)
    for result in results:
        if result.metric in ledger:
            continue
        assert result.score == 100.0

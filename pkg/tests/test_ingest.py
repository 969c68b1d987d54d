"""Export readers/writers: round-trips, malformed-line collection, text helpers."""

from __future__ import annotations

import json

import pytest

from sprintlint import ParseError, build_history, count_checkboxes, story_text_length
from sprintlint.ingest import (
    IngestManifest,
    commit_to_dict,
    load_history,
    load_snapshot,
    read_commits,
    read_issues,
    read_pulls,
    read_sprints,
    read_stats,
    write_commits,
    write_issues,
    write_pulls,
    write_snapshot,
    write_sprints,
    write_stats,
)
from sprintlint.serialize import canonical_json
from conftest import DAY, T0, change, make_commit, make_pull, make_sprint, make_story


def test_count_checkboxes_empty():
    assert count_checkboxes("") == 0


def test_count_checkboxes_two_literal_items():
    assert count_checkboxes("- [ ] a\n- [x] b") == 2


def test_count_checkboxes_interleaved_body():
    # 7 real task items buried in a 50-line body; hand-counted
    lines = []
    for i in range(40):
        lines.append(f"some prose line {i}")
    lines.insert(3, "- [ ] first")
    lines.insert(9, "  - [x] second (indented)")
    lines.insert(14, "* [ ] third, star bullet")
    lines.insert(20, "\t- [X] fourth, tab indent")
    lines.insert(27, "- [ ] fifth")
    lines.insert(33, "* [x] sixth")
    lines.insert(41, "- [ ] seventh")
    # decoys that must not count
    lines.insert(5, "-[ ] missing space after dash")
    lines.insert(22, "- [] empty brackets")
    lines.insert(30, "1. [ ] numbered list is not a task bullet")
    body = "\n".join(lines)
    assert len(lines) == 50
    assert count_checkboxes(body) == 7


def test_story_text_length_normalizes_whitespace():
    assert story_text_length("a  b", "c\n\nd") == len("a b c d")
    assert story_text_length("title", "") == 5
    assert story_text_length("", "body") == 4


def _commit_line(cid="c1", team="alpha"):
    return {
        "id": cid,
        "author": "ann@example.org",
        "authored_at": "2015-01-12T14:03:00Z",
        "parents": [],
        "message": "first",
        "files": [{"path": "src/a.py", "added": 3, "deleted": 1}],
        "team": team,
    }


def test_read_commits_empty_file(tmp_path):
    path = tmp_path / "commits.ndjson"
    path.write_text("", encoding="utf-8")
    records, issues = read_commits(path)
    assert records == [] and issues == []


def test_read_commits_round_trips_fields(tmp_path):
    path = tmp_path / "commits.ndjson"
    raw = _commit_line()
    path.write_text(json.dumps(raw) + "\n", encoding="utf-8")
    records, issues = read_commits(path)
    assert issues == []
    (commit,) = records
    assert commit.id == "c1"
    assert commit.author == "ann@example.org"
    assert commit.message == "first"
    assert commit.team == "alpha"
    assert commit.files[0].path == "src/a.py"
    assert commit.files[0].lines_added == 3
    assert commit.files[0].lines_deleted == 1
    assert commit_to_dict(commit) == raw


def test_read_commits_collects_bad_line_with_number(tmp_path):
    path = tmp_path / "commits.ndjson"
    lines = [json.dumps(_commit_line(cid=f"c{i}")) for i in range(1, 101)]
    lines[56] = '{"id": "broken"'  # line 57
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    records, issues = read_commits(path)
    assert len(records) == 99
    assert len(issues) == 1
    assert issues[0].location == 57


def test_read_commits_missing_file_raises():
    with pytest.raises(ParseError):
        read_commits("/nonexistent/commits.ndjson")


def _story_entry(number=1, labels=(), history=None, body=""):
    return {
        "number": number,
        "title": f"Story {number}",
        "body": body,
        "state": "closed",
        "labels": list(labels),
        "milestone_history": history or [{"sprint_id": "s1", "assigned_at": "2015-01-05T00:00:00Z"}],
        "assignees": ["ann@example.org"],
        "created_at": "2015-01-04T00:00:00Z",
        "closed_at": "2015-01-18T00:00:00Z",
        "team": "alpha",
    }


def test_read_issues_preserves_duplicate_label(tmp_path):
    path = tmp_path / "issues.json"
    path.write_text(json.dumps([_story_entry(labels=["duplicate"])]), encoding="utf-8")
    records, issues = read_issues(path)
    assert issues == []
    assert records[0].labels == frozenset({"duplicate"})


def test_read_issues_empty_body_is_legal(tmp_path):
    path = tmp_path / "issues.json"
    path.write_text(json.dumps([_story_entry(body="")]), encoding="utf-8")
    records, issues = read_issues(path)
    assert issues == []
    assert records[0].body == ""


def test_read_issues_membership_order_preserved(tmp_path):
    history = [
        {"sprint_id": "s3", "assigned_at": "2015-01-05T00:00:00Z"},
        {"sprint_id": "s1", "assigned_at": "2015-01-06T00:00:00Z"},
        {"sprint_id": "s2", "assigned_at": "2015-01-07T00:00:00Z"},
    ]
    path = tmp_path / "issues.json"
    path.write_text(json.dumps([_story_entry(history=history)]), encoding="utf-8")
    records, issues = read_issues(path)
    assert issues == []
    assert records[0].sprint_memberships == ("s3", "s1", "s2")


def test_read_stats_direct_mapping(tmp_path):
    path = tmp_path / "stats.csv"
    path.write_text("commit_id,coverage_percent,complexity\nabc,81.5,120.0\n", encoding="utf-8")
    records, issues = read_stats(path)
    assert issues == []
    (row,) = records
    assert (row.commit_id, row.coverage_percent, row.complexity) == ("abc", 81.5, 120.0)


def test_read_stats_rejects_out_of_range_coverage(tmp_path):
    path = tmp_path / "stats.csv"
    path.write_text("commit_id,coverage_percent,complexity\nabc,101,5\n", encoding="utf-8")
    records, issues = read_stats(path)
    assert records == []
    assert len(issues) == 1 and "abc" in issues[0].message


def test_read_stats_unknown_commit_deferred_to_build(tmp_path):
    path = tmp_path / "stats.csv"
    path.write_text(
        "commit_id,coverage_percent,complexity\nc1,50,5\nc2,60,6\nghost,70,7\n",
        encoding="utf-8",
    )
    records, issues = read_stats(path)
    assert issues == [] and len(records) == 3
    commits = [make_commit("c1", T0), make_commit("c2", T0 + 1)]
    with pytest.raises(Exception, match="ghost"):
        build_history(commits=commits, build_stats=records)


def test_read_stats_requires_header(tmp_path):
    path = tmp_path / "stats.csv"
    path.write_text("a,b,c\n", encoding="utf-8")
    with pytest.raises(ParseError):
        read_stats(path)


def test_manifest_requires_a_source():
    with pytest.raises(ParseError):
        IngestManifest()


def test_manifest_rejects_duplicate_paths(tmp_path):
    path = tmp_path / "same.json"
    with pytest.raises(ParseError):
        IngestManifest(commits_path=path, issues_path=path)


def test_alias_and_team_maps_applied(tmp_path):
    commits = tmp_path / "commits.ndjson"
    raw = _commit_line()
    raw["author"] = "ann"
    raw["team"] = "repo-alpha"
    commits.write_text(json.dumps(raw) + "\n", encoding="utf-8")
    manifest = IngestManifest(
        commits_path=commits,
        team_map={"repo-alpha": "alpha"},
        alias_map={"ann": "ann@example.org"},
    )
    history, diagnostics = load_history(manifest)
    assert diagnostics == []
    assert history.teams == ("alpha",)
    assert history.commits[0].author == "ann@example.org"


def _sample_records():
    sprint = make_sprint(days=7.0)
    commits = [
        make_commit("c1", T0 + DAY, files=[change("src/a.py", 3, 1)]),
        make_commit("c2", T0 + 2 * DAY, parents=("c1",), files=[change("src/b.py")]),
    ]
    stories = [
        make_story(1, labels=("Duplicate", "bug"), assignees=("ann@example.org",)),
        make_story(2, state="open", body="- [ ] a task\nprose"),
    ]
    pulls = [
        make_pull(1, T0 + DAY, closed=T0 + 2 * DAY, comments=2, merged=True),
        make_pull(2, T0 + 3 * DAY),
    ]
    from sprintlint import BuildStats

    stats = [
        BuildStats(commit_id="c1", coverage_percent=50.0, complexity=10.0),
        BuildStats(commit_id="c2", coverage_percent=52.25, complexity=11.5),
    ]
    return commits, stories, [sprint], pulls, stats


def test_write_then_read_is_identity(tmp_path):
    commits, stories, sprints, pulls, stats = _sample_records()
    original = build_history(commits, stories, sprints, pulls, stats)
    write_commits(tmp_path / "commits.ndjson", original.commits)
    write_issues(tmp_path / "issues.json", original.stories)
    write_sprints(tmp_path / "sprints.json", original.sprints)
    write_pulls(tmp_path / "pulls.json", original.pulls)
    write_stats(tmp_path / "stats.csv", original.build_stats)
    manifest = IngestManifest(
        commits_path=tmp_path / "commits.ndjson",
        issues_path=tmp_path / "issues.json",
        sprints_path=tmp_path / "sprints.json",
        pulls_path=tmp_path / "pulls.json",
        stats_path=tmp_path / "stats.csv",
    )
    reread, diagnostics = load_history(manifest)
    assert diagnostics == []
    assert reread == original


def test_snapshot_round_trip(tmp_path):
    commits, stories, sprints, pulls, stats = _sample_records()
    original = build_history(commits, stories, sprints, pulls, stats)
    write_snapshot(tmp_path / "snap.json", original)
    assert load_snapshot(tmp_path / "snap.json") == original
    # snapshots are canonical: writing again yields identical bytes
    first = (tmp_path / "snap.json").read_bytes()
    write_snapshot(tmp_path / "snap2.json", original)
    assert (tmp_path / "snap2.json").read_bytes() == first


def test_unknown_extra_fields_ignored(tmp_path):
    raw = _commit_line()
    raw["committer_tz"] = "+0200"  # forward-compat field
    path = tmp_path / "commits.ndjson"
    path.write_text(json.dumps(raw) + "\n", encoding="utf-8")
    records, issues = read_commits(path)
    assert issues == [] and len(records) == 1


def test_read_sprints_and_pulls(tmp_path):
    sprints_path = tmp_path / "sprints.json"
    sprint = make_sprint()
    write_sprints(sprints_path, [sprint])
    records, issues = read_sprints(sprints_path)
    assert issues == [] and records == [sprint]

    pulls_path = tmp_path / "pulls.json"
    pull = make_pull(4, T0, closed=T0 + 120.0, comments=0, merged=True)
    write_pulls(pulls_path, [pull])
    records, issues = read_pulls(pulls_path)
    assert issues == [] and records == [pull]


def test_canonical_json_is_sorted_and_compact():
    assert canonical_json({"b": 1, "a": [1.5, None]}) == '{"a":[1.5,null],"b":1}'

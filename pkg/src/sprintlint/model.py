"""Immutable domain model for exported development data and metric results.

Everything here is constructed once (usually by the ingest module) and then
shared read-only by the detectors, the engine, and the scoring layer.
Timestamps are floats of UTC epoch seconds throughout.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from .errors import HistoryError, RecordError, UnknownSprintError

SECONDS_PER_DAY = 86400.0


class StoryState(str, Enum):
    OPEN = "open"
    CLOSED = "closed"


class Severity(str, Enum):
    INFORMATIONAL = "informational"
    VERY_LOW = "very_low"
    LOW = "low"
    NORMAL = "normal"
    HIGH = "high"


class Effort(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class DataSource(str, Enum):
    VERSION_CONTROL = "version_control"
    STORY_TRACKER = "story_tracker"
    PULL_REQUESTS = "pull_requests"
    COVERAGE_STATS = "coverage_stats"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise RecordError(message)


def _finite_ts(value: float, what: str) -> float:
    value = float(value)
    _require(math.isfinite(value), f"{what} must be a finite timestamp")
    return value


@dataclass(frozen=True)
class FileChange:
    """One file touched by a commit."""

    path: str
    lines_added: int
    lines_deleted: int

    def __post_init__(self) -> None:
        _require(bool(self.path), "file change path must be non-empty")
        _require(self.lines_added >= 0, f"lines_added < 0 for {self.path}")
        _require(self.lines_deleted >= 0, f"lines_deleted < 0 for {self.path}")


@dataclass(frozen=True)
class Commit:
    id: str
    author: str
    authored_at: float
    parents: tuple[str, ...]
    message: str
    files: tuple[FileChange, ...]
    team: str

    def __post_init__(self) -> None:
        _require(bool(self.id), "commit id must be non-empty")
        _require(bool(self.team), f"commit {self.id} has no team")
        _require(bool(self.author), f"commit {self.id} has no author")
        object.__setattr__(self, "author", self.author.lower())
        object.__setattr__(self, "authored_at", _finite_ts(self.authored_at, f"commit {self.id} authored_at"))
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "files", tuple(self.files))


@dataclass(frozen=True)
class BuildStats:
    """Per-commit coverage and complexity produced by external tooling."""

    commit_id: str
    coverage_percent: float
    complexity: float

    def __post_init__(self) -> None:
        _require(bool(self.commit_id), "build stats row has no commit id")
        _require(
            0.0 <= self.coverage_percent <= 100.0,
            f"coverage_percent out of [0,100] for commit {self.commit_id}",
        )
        _require(self.complexity >= 0.0, f"complexity < 0 for commit {self.commit_id}")


@dataclass(frozen=True)
class SprintMembership:
    """One entry of a story's backlog-assignment history."""

    sprint_id: str
    assigned_at: float

    def __post_init__(self) -> None:
        _require(bool(self.sprint_id), "membership has no sprint id")
        object.__setattr__(self, "assigned_at", _finite_ts(self.assigned_at, "membership assigned_at"))


@dataclass(frozen=True)
class UserStory:
    number: int
    title: str
    body: str
    state: StoryState
    labels: frozenset[str]
    milestones: tuple[SprintMembership, ...]
    assignees: frozenset[str]
    created_at: float
    closed_at: float | None
    team: str

    def __post_init__(self) -> None:
        _require(self.number > 0, f"story number must be positive, got {self.number}")
        _require(bool(self.team), f"story #{self.number} has no team")
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "milestones", tuple(self.milestones))
        object.__setattr__(self, "assignees", frozenset(a.lower() for a in self.assignees))
        seen = [m.sprint_id for m in self.milestones]
        _require(
            len(seen) == len(set(seen)),
            f"story #{self.number} ({self.team}) has duplicate sprint memberships",
        )
        if self.state is StoryState.CLOSED:
            _require(self.closed_at is not None, f"closed story #{self.number} lacks closed_at")
        else:
            _require(self.closed_at is None, f"open story #{self.number} carries closed_at")

    @property
    def sprint_memberships(self) -> tuple[str, ...]:
        """Sprint ids the story was assigned to, in assignment order."""
        return tuple(m.sprint_id for m in self.milestones)


@dataclass(frozen=True)
class Sprint:
    id: str
    title: str
    starts_at: float
    due_on: float
    team: str

    def __post_init__(self) -> None:
        _require(bool(self.id), "sprint id must be non-empty")
        _require(bool(self.team), f"sprint {self.id} has no team")
        _require(
            self.starts_at < self.due_on,
            f"sprint {self.id} must start before it is due",
        )

    @property
    def length_days(self) -> float:
        return (self.due_on - self.starts_at) / SECONDS_PER_DAY


@dataclass(frozen=True)
class PullRequest:
    number: int
    opened_at: float
    closed_at: float | None
    merged: bool
    comment_count: int
    team: str

    def __post_init__(self) -> None:
        _require(self.number > 0, f"pull request number must be positive, got {self.number}")
        _require(bool(self.team), f"pull request #{self.number} has no team")
        _require(self.comment_count >= 0, f"pull request #{self.number} comment_count < 0")
        if self.merged:
            _require(self.closed_at is not None, f"merged pull request #{self.number} lacks closed_at")
        if self.closed_at is not None:
            _require(
                self.closed_at >= self.opened_at,
                f"pull request #{self.number} closed before it was opened",
            )


@dataclass(frozen=True)
class MetricDescriptor:
    """The reusable definition of one conformance check, independent of any run."""

    name: str
    synopsis: str
    description: str
    data_sources: frozenset[DataSource]
    categories: frozenset[str]
    effort: Effort
    severity: Severity
    pitfalls: str

    def __post_init__(self) -> None:
        _require(bool(self.name), "metric descriptor needs a name")
        object.__setattr__(self, "data_sources", frozenset(self.data_sources))
        object.__setattr__(self, "categories", frozenset(self.categories))


@dataclass(frozen=True)
class Violation:
    """A pattern in the data that does not comply with the checked practice."""

    metric: str
    team: str
    sprint: str
    artifacts: tuple[str, ...]
    detail: str
    numeric_detail: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "artifacts", tuple(self.artifacts))
        _require(bool(self.artifacts), f"violation of {self.metric} carries no artifacts")
        object.__setattr__(self, "numeric_detail", dict(self.numeric_detail))


@dataclass(frozen=True)
class MetricResult:
    """Outcome of one metric for one team-sprint.

    `score` is None when the metric was not applicable (e.g. no stories in
    the sprint); `diagnostic` then says why. Scores are kept unrounded here;
    reports round for display.
    """

    metric: str
    team: str
    sprint: str
    violations: tuple[Violation, ...]
    score: float | None
    inputs_echo: Mapping[str, float] = field(default_factory=dict)
    diagnostic: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "violations", tuple(self.violations))
        object.__setattr__(self, "inputs_echo", dict(self.inputs_echo))
        if self.score is not None:
            _require(
                0.0 <= self.score <= 100.0,
                f"{self.metric} score {self.score} out of [0,100]",
            )

    @property
    def applicable(self) -> bool:
        return self.score is not None


@dataclass(frozen=True)
class SprintSlice:
    """The artifacts attributable to one team within one sprint window."""

    team: str
    sprint: Sprint
    commits: tuple[Commit, ...]
    stories: tuple[UserStory, ...]
    pulls: tuple[PullRequest, ...]


@dataclass(frozen=True)
class ProjectHistory:
    """Validated, immutable snapshot of every record in an export."""

    teams: tuple[str, ...]
    developers: Mapping[str, frozenset[str]]
    sprints: tuple[Sprint, ...]
    commits: tuple[Commit, ...]
    stories: tuple[UserStory, ...]
    pulls: tuple[PullRequest, ...]
    build_stats: tuple[BuildStats, ...]
    diagnostics: tuple[str, ...] = ()

    _sprint_by_id: dict[str, Sprint] = field(init=False, repr=False, compare=False)
    _stats_by_commit: dict[str, BuildStats] = field(init=False, repr=False, compare=False)
    _commit_by_id: dict[str, Commit] = field(init=False, repr=False, compare=False)
    _commits_by_team: dict[str, tuple[Commit, ...]] = field(init=False, repr=False, compare=False)
    _stories_by_team: dict[str, tuple[UserStory, ...]] = field(init=False, repr=False, compare=False)
    _pulls_by_team: dict[str, tuple[PullRequest, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_sprint_by_id", {s.id: s for s in self.sprints})
        object.__setattr__(self, "_stats_by_commit", {s.commit_id: s for s in self.build_stats})
        object.__setattr__(self, "_commit_by_id", {c.id: c for c in self.commits})
        by_team: dict[str, list[Commit]] = {t: [] for t in self.teams}
        for commit in self.commits:
            by_team[commit.team].append(commit)
        object.__setattr__(self, "_commits_by_team", {t: tuple(v) for t, v in by_team.items()})
        s_by_team: dict[str, list[UserStory]] = {t: [] for t in self.teams}
        for story in self.stories:
            s_by_team[story.team].append(story)
        object.__setattr__(self, "_stories_by_team", {t: tuple(v) for t, v in s_by_team.items()})
        p_by_team: dict[str, list[PullRequest]] = {t: [] for t in self.teams}
        for pull in self.pulls:
            p_by_team[pull.team].append(pull)
        object.__setattr__(self, "_pulls_by_team", {t: tuple(v) for t, v in p_by_team.items()})

    @property
    def stats_by_commit(self) -> Mapping[str, BuildStats]:
        return self._stats_by_commit

    def sprint(self, sprint_id: str) -> Sprint:
        try:
            return self._sprint_by_id[sprint_id]
        except KeyError:
            raise UnknownSprintError(f"unknown sprint id {sprint_id!r}") from None

    def sprints_of(self, team: str) -> tuple[Sprint, ...]:
        """Sprints of one team, ordered by due date (ties broken by id)."""
        return tuple(sorted((s for s in self.sprints if s.team == team), key=lambda s: (s.due_on, s.id)))

    def commit(self, commit_id: str) -> Commit:
        return self._commit_by_id[commit_id]


def build_history(
    commits: Iterable[Commit] = (),
    stories: Iterable[UserStory] = (),
    sprints: Iterable[Sprint] = (),
    pulls: Iterable[PullRequest] = (),
    build_stats: Iterable[BuildStats] = (),
) -> ProjectHistory:
    """Validate raw records and assemble the immutable snapshot.

    Checks primary-key uniqueness and cross-references, derives the team set
    and per-team developer sets, and canonicalizes collection order so the
    result is independent of input record order. Unknown commit parents are
    tolerated (shallow exports) but flagged in the diagnostics.
    """
    commits = sorted(commits, key=lambda c: c.id)
    stories = sorted(stories, key=lambda s: (s.team, s.number))
    sprints = sorted(sprints, key=lambda s: s.id)
    pulls = sorted(pulls, key=lambda p: (p.team, p.number))
    build_stats = sorted(build_stats, key=lambda b: b.commit_id)

    commit_ids: set[str] = set()
    for commit in commits:
        if commit.id in commit_ids:
            raise HistoryError(f"duplicate commit id {commit.id!r}")
        commit_ids.add(commit.id)

    sprint_ids: set[str] = set()
    for sprint in sprints:
        if sprint.id in sprint_ids:
            raise HistoryError(f"duplicate sprint id {sprint.id!r}")
        sprint_ids.add(sprint.id)

    story_keys: set[tuple[str, int]] = set()
    for story in stories:
        key = (story.team, story.number)
        if key in story_keys:
            raise HistoryError(f"duplicate story #{story.number} for team {story.team!r}")
        story_keys.add(key)
        for membership in story.milestones:
            if membership.sprint_id not in sprint_ids:
                raise HistoryError(
                    f"story #{story.number} ({story.team}) references unknown sprint "
                    f"{membership.sprint_id!r}"
                )

    pull_keys: set[tuple[str, int]] = set()
    for pull in pulls:
        key = (pull.team, pull.number)
        if key in pull_keys:
            raise HistoryError(f"duplicate pull request #{pull.number} for team {pull.team!r}")
        pull_keys.add(key)

    stat_ids: set[str] = set()
    for stat in build_stats:
        if stat.commit_id in stat_ids:
            raise HistoryError(f"duplicate build stats for commit {stat.commit_id!r}")
        stat_ids.add(stat.commit_id)
        if stat.commit_id not in commit_ids:
            raise HistoryError(f"build stats reference unknown commit {stat.commit_id!r}")

    diagnostics: list[str] = []
    for commit in commits:
        for parent in commit.parents:
            if parent not in commit_ids:
                diagnostics.append(
                    f"commit {commit.id} parent {parent} not in export (shallow history?)"
                )

    teams = sorted(
        {c.team for c in commits}
        | {s.team for s in stories}
        | {s.team for s in sprints}
        | {p.team for p in pulls}
    )
    developers: dict[str, set[str]] = {t: set() for t in teams}
    for commit in commits:
        developers[commit.team].add(commit.author)
    for story in stories:
        developers[story.team].update(story.assignees)

    return ProjectHistory(
        teams=tuple(teams),
        developers={t: frozenset(d) for t, d in developers.items()},
        sprints=tuple(sprints),
        commits=tuple(commits),
        stories=tuple(stories),
        pulls=tuple(pulls),
        build_stats=tuple(build_stats),
        diagnostics=tuple(diagnostics),
    )


def window(history: ProjectHistory, team: str, sprint_id: str) -> SprintSlice:
    """Filter the history down to one team-sprint.

    Commits and pull requests are attributed by timestamp within the closed
    interval [starts_at, due_on]; stories by backlog membership.
    """
    sprint = history.sprint(sprint_id)
    if sprint.team != team:
        raise UnknownSprintError(f"sprint {sprint_id!r} belongs to {sprint.team!r}, not {team!r}")
    lo, hi = sprint.starts_at, sprint.due_on
    commits = tuple(
        c for c in history._commits_by_team.get(team, ()) if lo <= c.authored_at <= hi
    )
    stories = tuple(
        s for s in history._stories_by_team.get(team, ()) if sprint_id in s.sprint_memberships
    )
    pulls = tuple(
        p for p in history._pulls_by_team.get(team, ()) if lo <= p.opened_at <= hi
    )
    return SprintSlice(team=team, sprint=sprint, commits=commits, stories=stories, pulls=pulls)

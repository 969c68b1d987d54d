"""The built-in conformance checks and their descriptors.

Each detector inspects one team-sprint slice, emits violations that point at
the offending artifacts (commit ids, story numbers, pull request numbers,
file paths, developer ids), and maps its operand counts through the metric's
rating function. A detector returns a result with no score when its inputs
simply are not present in the sprint (no stories, no closed pull requests),
so absence of data never masquerades as conformance or violation.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from . import config as cfg
from .config import MetricConfig
from .engine import (
    MetricRegistry,
    RatingFunction,
    RatingKind,
    RegisteredMetric,
    capped_linear,
    cutoff_parabola,
    ratio_linear,
    threshold_linear,
)
from .ingest import count_checkboxes, story_text_length
from .model import (
    BuildStats,
    DataSource,
    Effort,
    MetricDescriptor,
    MetricResult,
    ProjectHistory,
    Severity,
    Sprint,
    SprintSlice,
    Violation,
)

XP_PRACTICES = "XP Practices"
BACKLOG_MAINTENANCE = "Backlog Maintenance"
DEVELOPER_PRODUCTIVITY = "Developer Productivity"


def story_ref(number: int) -> str:
    return f"#{number}"


def pull_ref(number: int) -> str:
    return f"PR#{number}"


def _not_applicable(name: str, slice_: SprintSlice, reason: str) -> MetricResult:
    return MetricResult(
        metric=name,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=(),
        score=None,
        diagnostic=reason,
    )


@dataclass(frozen=True)
class FileEditProfile:
    """Edit pressure on one file within a sprint: how often, by how many people."""

    path: str
    edits: int
    authors: frozenset[str]


def file_edit_profiles(slice_: SprintSlice) -> list[FileEditProfile]:
    edits: dict[str, int] = {}
    authors: dict[str, set[str]] = {}
    for commit in slice_.commits:
        for change in commit.files:
            edits[change.path] = edits.get(change.path, 0) + 1
            authors.setdefault(change.path, set()).add(commit.author)
    return [
        FileEditProfile(path=path, edits=edits[path], authors=frozenset(authors[path]))
        for path in sorted(edits)
    ]


def detect_collective_ownership(slice_: SprintSlice, config: MetricConfig) -> MetricResult:
    """Flag files that absorbed many edits from too few people."""
    settings = config.for_metric(cfg.COLLECTIVE_OWNERSHIP)
    violations = []
    for profile in file_edit_profiles(slice_):
        if profile.edits >= settings.threshold_e and len(profile.authors) <= settings.threshold_a:
            violations.append(
                Violation(
                    metric=cfg.COLLECTIVE_OWNERSHIP,
                    team=slice_.team,
                    sprint=slice_.sprint.id,
                    artifacts=(profile.path,),
                    detail=(
                        f"{profile.path} was edited {profile.edits} times by only "
                        f"{len(profile.authors)} author(s)"
                    ),
                    numeric_detail={"edits": profile.edits, "authors": len(profile.authors)},
                )
            )
    return MetricResult(
        metric=cfg.COLLECTIVE_OWNERSHIP,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=tuple(violations),
        score=threshold_linear(len(violations), settings.weight),
        inputs_echo={
            "violations": len(violations),
            "weight": settings.weight,
            "threshold_e": settings.threshold_e,
            "threshold_a": settings.threshold_a,
        },
    )


def detect_test_later(
    slice_: SprintSlice, stats_by_commit: Mapping[str, BuildStats], config: MetricConfig
) -> MetricResult:
    """Flag commits that raised complexity while coverage fell against their parent.

    Merge commits and commits without stats for both sides are skipped;
    comparisons only make sense along a single parent edge.
    """
    settings = config.for_metric(cfg.TEST_LATER)
    with_stats = [c for c in slice_.commits if c.id in stats_by_commit]
    if not with_stats:
        return _not_applicable(cfg.TEST_LATER, slice_, "no commit in this sprint has build stats")
    violations = []
    for commit in with_stats:
        if len(commit.parents) != 1:
            continue
        parent_stats = stats_by_commit.get(commit.parents[0])
        if parent_stats is None:
            continue
        own = stats_by_commit[commit.id]
        if own.complexity > parent_stats.complexity and own.coverage_percent < parent_stats.coverage_percent:
            violations.append(
                Violation(
                    metric=cfg.TEST_LATER,
                    team=slice_.team,
                    sprint=slice_.sprint.id,
                    artifacts=(commit.id,),
                    detail=(
                        f"commit {commit.id} raised complexity "
                        f"({parent_stats.complexity:g} -> {own.complexity:g}) while coverage fell "
                        f"({parent_stats.coverage_percent:g}% -> {own.coverage_percent:g}%)"
                    ),
                    numeric_detail={
                        "complexity_delta": own.complexity - parent_stats.complexity,
                        "coverage_delta": own.coverage_percent - parent_stats.coverage_percent,
                    },
                )
            )
    return MetricResult(
        metric=cfg.TEST_LATER,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=tuple(violations),
        score=ratio_linear(len(violations), len(with_stats), settings.weight),
        inputs_echo={
            "violations": len(violations),
            "commits_with_stats": len(with_stats),
            "weight": settings.weight,
        },
    )


def detect_huge_stories(slice_: SprintSlice, config: MetricConfig) -> MetricResult:
    """Flag stories far above the sprint's average size or task count.

    Averages include the candidate stories themselves. A sprint with no
    checkboxes anywhere disables the task-count comparison.
    """
    settings = config.for_metric(cfg.HUGE_STORIES)
    stories = slice_.stories
    if not stories:
        return _not_applicable(cfg.HUGE_STORIES, slice_, "no stories in this sprint's backlog")
    lengths = {s.number: story_text_length(s.title, s.body) for s in stories}
    checkboxes = {s.number: count_checkboxes(s.body) for s in stories}
    avg_length = sum(lengths.values()) / len(stories)
    avg_checkboxes = sum(checkboxes.values()) / len(stories)
    violations = []
    for story in stories:
        too_long = lengths[story.number] > settings.threshold_length * avg_length
        too_many_tasks = (
            avg_checkboxes > 0
            and checkboxes[story.number] > settings.threshold_check * avg_checkboxes
        )
        if too_long or too_many_tasks:
            reasons = []
            if too_long:
                reasons.append(f"{lengths[story.number]} chars vs average {avg_length:.1f}")
            if too_many_tasks:
                reasons.append(f"{checkboxes[story.number]} tasks vs average {avg_checkboxes:.1f}")
            violations.append(
                Violation(
                    metric=cfg.HUGE_STORIES,
                    team=slice_.team,
                    sprint=slice_.sprint.id,
                    artifacts=(story_ref(story.number),),
                    detail=f"story #{story.number} is outsized: " + "; ".join(reasons),
                    numeric_detail={
                        "length": lengths[story.number],
                        "checkboxes": checkboxes[story.number],
                        "avg_length": avg_length,
                        "avg_checkboxes": avg_checkboxes,
                    },
                )
            )
    return MetricResult(
        metric=cfg.HUGE_STORIES,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=tuple(violations),
        score=threshold_linear(len(violations), settings.weight),
        inputs_echo={
            "violations": len(violations),
            "stories": len(stories),
            "avg_length": avg_length,
            "avg_checkboxes": avg_checkboxes,
            "threshold_length": settings.threshold_length,
            "threshold_check": settings.threshold_check,
            "weight": settings.weight,
        },
    )


def detect_multi_backlog(
    history: ProjectHistory, team: str, sprint: Sprint, config: MetricConfig
) -> MetricResult:
    """Flag stories that have been carried through too many sprint backlogs.

    Membership is counted over the story's whole assignment history up to and
    including the sprint under evaluation, so later churn never penalizes an
    earlier sprint retroactively.
    """
    settings = config.for_metric(cfg.MULTI_BACKLOG)
    backlog = [s for s in history.stories if s.team == team and sprint.id in s.sprint_memberships]
    slice_like = SprintSlice(team=team, sprint=sprint, commits=(), stories=tuple(backlog), pulls=())
    if not backlog:
        return _not_applicable(cfg.MULTI_BACKLOG, slice_like, "no stories in this sprint's backlog")
    violations = []
    counts = []
    for story in backlog:
        memberships = sum(
            1 for sid in story.sprint_memberships if history.sprint(sid).due_on <= sprint.due_on
        )
        if memberships > settings.threshold_amount:
            counts.append(memberships)
            violations.append(
                Violation(
                    metric=cfg.MULTI_BACKLOG,
                    team=team,
                    sprint=sprint.id,
                    artifacts=(story_ref(story.number),),
                    detail=f"story #{story.number} has been in {memberships} sprint backlogs",
                    numeric_detail={"sprint_count": memberships},
                )
            )
    avg_in_sprints = sum(counts) / len(counts) if counts else 1.0
    return MetricResult(
        metric=cfg.MULTI_BACKLOG,
        team=team,
        sprint=sprint.id,
        violations=tuple(violations),
        score=ratio_linear(len(violations), len(backlog), settings.weight, avg_in_sprints),
        inputs_echo={
            "violations": len(violations),
            "total_stories": len(backlog),
            "avg_in_sprints": avg_in_sprints,
            "threshold_amount": settings.threshold_amount,
            "weight": settings.weight,
        },
    )


def detect_duplicates(slice_: SprintSlice, config: MetricConfig) -> MetricResult:
    """Flag stories developers tagged with the duplicate label (case-insensitive)."""
    settings = config.for_metric(cfg.DUPLICATE_STORIES)
    stories = slice_.stories
    if not stories:
        return _not_applicable(cfg.DUPLICATE_STORIES, slice_, "no stories in this sprint's backlog")
    label = settings.duplicate_label.lower()
    violations = []
    for story in stories:
        if any(l.lower() == label for l in story.labels):
            violations.append(
                Violation(
                    metric=cfg.DUPLICATE_STORIES,
                    team=slice_.team,
                    sprint=slice_.sprint.id,
                    artifacts=(story_ref(story.number),),
                    detail=f"story #{story.number} is tagged as a duplicate",
                )
            )
    return MetricResult(
        metric=cfg.DUPLICATE_STORIES,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=tuple(violations),
        score=ratio_linear(len(violations), len(stories), settings.weight),
        inputs_echo={
            "duplicates": len(violations),
            "total_stories": len(stories),
            "weight": settings.weight,
        },
    )


def detect_last_minute(slice_: SprintSlice, config: MetricConfig) -> MetricResult:
    """Flag commits crammed into the final stretch before the sprint deadline."""
    settings = config.for_metric(cfg.LAST_MINUTE)
    commits = slice_.commits
    if not commits:
        return _not_applicable(cfg.LAST_MINUTE, slice_, "no commits in this sprint")
    due = slice_.sprint.due_on
    window_start = due - settings.last_minute_window_minutes * 60.0
    violations = []
    for commit in commits:
        if window_start <= commit.authored_at <= due:
            minutes_left = (due - commit.authored_at) / 60.0
            violations.append(
                Violation(
                    metric=cfg.LAST_MINUTE,
                    team=slice_.team,
                    sprint=slice_.sprint.id,
                    artifacts=(commit.id,),
                    detail=f"commit {commit.id} landed {minutes_left:.0f} min before the deadline",
                    numeric_detail={"minutes_before_due": minutes_left},
                )
            )
    return MetricResult(
        metric=cfg.LAST_MINUTE,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=tuple(violations),
        score=ratio_linear(len(violations), len(commits), settings.weight),
        inputs_echo={
            "violations": len(violations),
            "total_commits": len(commits),
            "window_minutes": settings.last_minute_window_minutes,
            "weight": settings.weight,
        },
    )


def detect_no_committing(
    slice_: SprintSlice, team_developers: frozenset[str], config: MetricConfig
) -> MetricResult:
    """Score the team's average commits per developer; name anyone who committed nothing.

    The score comes from the average alone. The zero-committer list is an
    informational violation for the humans doing context analysis.
    """
    settings = config.for_metric(cfg.COMMIT_ACTIVITY)
    if not team_developers:
        return _not_applicable(cfg.COMMIT_ACTIVITY, slice_, "team has no known developers")
    committed = {c.author for c in slice_.commits}
    silent = sorted(team_developers - committed)
    violations = ()
    if silent:
        violations = (
            Violation(
                metric=cfg.COMMIT_ACTIVITY,
                team=slice_.team,
                sprint=slice_.sprint.id,
                artifacts=tuple(silent),
                detail=f"{len(silent)} developer(s) made no commits this sprint: " + ", ".join(silent),
                numeric_detail={"zero_commit_developers": len(silent)},
            ),
        )
    per_dev = len(slice_.commits) / len(team_developers)
    return MetricResult(
        metric=cfg.COMMIT_ACTIVITY,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=violations,
        score=capped_linear(per_dev, settings.weight),
        inputs_echo={
            "commits": len(slice_.commits),
            "developers": len(team_developers),
            "commits_per_developer": per_dev,
            "weight": settings.weight,
        },
    )


def detect_daily_story_quota(
    slice_: SprintSlice, team_developer_count: int, config: MetricConfig
) -> MetricResult:
    """Rate the sprint's staffing quota (developers per backlog story per day).

    The quota feeds the cut-off parabola: an optimal band scores 100, both
    an overfull and a thin backlog fall away from it. This metric produces
    no violation artifacts; the score and echoed quota are the signal.
    """
    settings = config.for_metric(cfg.DAILY_STORY_LOAD)
    backlog_size = len(slice_.stories)
    if backlog_size == 0:
        return _not_applicable(cfg.DAILY_STORY_LOAD, slice_, "no stories in this sprint's backlog")
    length_days = slice_.sprint.length_days
    quota = team_developer_count / backlog_size / length_days
    return MetricResult(
        metric=cfg.DAILY_STORY_LOAD,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=(),
        score=cutoff_parabola(quota, settings.weight_a, settings.weight_b),
        inputs_echo={
            "developers": team_developer_count,
            "backlog_size": backlog_size,
            "sprint_length_days": length_days,
            "quota": quota,
            "weight_a": settings.weight_a,
            "weight_b": settings.weight_b,
        },
    )


def detect_fast_pulls(slice_: SprintSlice, config: MetricConfig) -> MetricResult:
    """Flag pull requests closed quickly with nobody commenting."""
    settings = config.for_metric(cfg.FAST_PULLS)
    closed = [p for p in slice_.pulls if p.closed_at is not None]
    if not closed:
        return _not_applicable(cfg.FAST_PULLS, slice_, "no closed pull requests in this sprint")
    window_seconds = settings.fast_pr_window_minutes * 60.0
    violations = []
    for pull in closed:
        open_seconds = pull.closed_at - pull.opened_at
        if open_seconds < window_seconds and pull.comment_count == 0:
            violations.append(
                Violation(
                    metric=cfg.FAST_PULLS,
                    team=slice_.team,
                    sprint=slice_.sprint.id,
                    artifacts=(pull_ref(pull.number),),
                    detail=(
                        f"pull request #{pull.number} was closed after "
                        f"{open_seconds / 60.0:.0f} min without any comments"
                    ),
                    numeric_detail={"open_minutes": open_seconds / 60.0},
                )
            )
    # the rating for speedy pulls carries no weight knob, only the time window
    return MetricResult(
        metric=cfg.FAST_PULLS,
        team=slice_.team,
        sprint=slice_.sprint.id,
        violations=tuple(violations),
        score=ratio_linear(len(violations), len(closed), 1.0),
        inputs_echo={
            "violations": len(violations),
            "total_closed_pulls": len(closed),
            "window_minutes": settings.fast_pr_window_minutes,
        },
    )


@dataclass(frozen=True)
class UnfinishedStories:
    """Stories still open in a sprint whose deadline has passed."""

    sprint_id: str
    sprint_title: str
    amount: int
    story_numbers: tuple[int, ...]
    total: int
    percent: float | None


def unfinished_stories(history: ProjectHistory, sprint_id: str, now: float) -> UnfinishedStories | None:
    """Report open stories left in a past-due sprint's backlog.

    Returns None while the sprint is not yet due. The percentage is the exact
    ratio of open to total backlog stories, or None for an empty backlog.
    """
    sprint = history.sprint(sprint_id)
    if sprint.due_on >= now:
        return None
    backlog = [
        s for s in history.stories if s.team == sprint.team and sprint_id in s.sprint_memberships
    ]
    open_numbers = tuple(sorted(s.number for s in backlog if s.state.value == "open"))
    total = len(backlog)
    percent = len(open_numbers) / total if total else None
    return UnfinishedStories(
        sprint_id=sprint.id,
        sprint_title=sprint.title,
        amount=len(open_numbers),
        story_numbers=open_numbers,
        total=total,
        percent=percent,
    )


# --- descriptors and the default registry -----------------------------------

DESCRIPTORS: dict[str, MetricDescriptor] = {
    cfg.COLLECTIVE_OWNERSHIP: MetricDescriptor(
        name=cfg.COLLECTIVE_OWNERSHIP,
        synopsis="Files edited heavily by only a few developers.",
        description=(
            "When any developer may change any part of the system, knowledge spreads and "
            "nobody becomes a single point of failure. A file that accumulates many edits "
            "from one or two people is a sign of siloed ownership: losing those people "
            "would stall that component. Each such file in a sprint counts as a violation."
        ),
        data_sources=frozenset({DataSource.VERSION_CONTROL}),
        categories=frozenset({XP_PRACTICES}),
        effort=Effort.LOW,
        severity=Severity.NORMAL,
        pitfalls=(
            "Edit counts say nothing about who understands the code; a generated or asset "
            "file touched by one person repeatedly is a common false positive."
        ),
    ),
    cfg.TEST_LATER: MetricDescriptor(
        name=cfg.TEST_LATER,
        synopsis="Commits growing complexity while coverage drops.",
        description=(
            "Writing tests first keeps coverage moving with the code. A commit that adds "
            "complexity while its coverage falls relative to the parent commit suggests "
            "production code was written without accompanying tests. Each such commit is "
            "a violation; the score is their share of all commits with stats."
        ),
        data_sources=frozenset({DataSource.VERSION_CONTROL, DataSource.COVERAGE_STATS}),
        categories=frozenset({XP_PRACTICES}),
        effort=Effort.MEDIUM,
        severity=Severity.NORMAL,
        pitfalls=(
            "Coverage deltas depend on external tooling and can dip for unrelated reasons "
            "(deleted tests, config changes); merge commits are excluded entirely."
        ),
    ),
    cfg.HUGE_STORIES: MetricDescriptor(
        name=cfg.HUGE_STORIES,
        synopsis="User stories far larger than their sprint's average.",
        description=(
            "A story should be small enough to skim and estimate. Stories whose text is a "
            "multiple of the sprint average, or which carry a multiple of the average "
            "task-checkbox count, were likely hard to estimate and should have been split."
        ),
        data_sources=frozenset({DataSource.STORY_TRACKER}),
        categories=frozenset({XP_PRACTICES}),
        effort=Effort.LOW,
        severity=Severity.LOW,
        pitfalls=(
            "Length is a proxy: a long story may simply be well documented, and a terse "
            "one may still hide too much work."
        ),
    ),
    cfg.MULTI_BACKLOG: MetricDescriptor(
        name=cfg.MULTI_BACKLOG,
        synopsis="Stories carried across multiple sprint backlogs.",
        description=(
            "A sprint backlog should only hold work the team can finish. A story that "
            "keeps reappearing sprint after sprint was either too big, blocked, or "
            "mis-prioritized, and it can block other teams that depend on it. The score "
            "weighs how many backlog stories are repeat offenders and how long they have "
            "been dragging on."
        ),
        data_sources=frozenset({DataSource.STORY_TRACKER}),
        categories=frozenset({BACKLOG_MAINTENANCE}),
        effort=Effort.LOW,
        severity=Severity.HIGH,
        pitfalls=(
            "Deliberately re-planned work (a story consciously moved once) looks the same "
            "as a neverending story; the assignment history needs human review."
        ),
    ),
    cfg.DUPLICATE_STORIES: MetricDescriptor(
        name=cfg.DUPLICATE_STORIES,
        synopsis="Stories tagged as suspected duplicates.",
        description=(
            "Overlapping stories risk the same feature being built twice by different "
            "people. This check counts backlog stories that developers or staff tagged "
            "with the duplicate label."
        ),
        data_sources=frozenset({DataSource.STORY_TRACKER}),
        categories=frozenset({BACKLOG_MAINTENANCE}),
        effort=Effort.LOW,
        severity=Severity.VERY_LOW,
        pitfalls=(
            "Only tagged duplicates are counted; untagged overlaps stay invisible, so a "
            "perfect score does not mean the backlog is duplicate-free."
        ),
    ),
    cfg.LAST_MINUTE: MetricDescriptor(
        name=cfg.LAST_MINUTE,
        synopsis="Commits made shortly before the sprint deadline.",
        description=(
            "Work should proceed at a steady, sustainable pace. Code that lands in the "
            "final minutes before the deadline cannot be reviewed, integrated, or "
            "discussed in time, and often signals a last-minute crunch. Commits inside "
            "the configured window before the due date count against the sprint's total."
        ),
        data_sources=frozenset({DataSource.VERSION_CONTROL}),
        categories=frozenset({DEVELOPER_PRODUCTIVITY}),
        effort=Effort.LOW,
        severity=Severity.NORMAL,
        pitfalls=(
            "Timestamps reflect when code was committed, not when it was written; a "
            "deadline push of long-finished work is indistinguishable from a crunch."
        ),
    ),
    cfg.COMMIT_ACTIVITY: MetricDescriptor(
        name=cfg.COMMIT_ACTIVITY,
        synopsis="Average commits per developer over the sprint.",
        description=(
            "Committing early and often keeps integration cheap and makes work visible "
            "to the rest of the team. This check scores the team's average commit count "
            "per developer and, as informational output, names developers who did not "
            "commit at all during the sprint."
        ),
        data_sources=frozenset({DataSource.VERSION_CONTROL}),
        categories=frozenset({DEVELOPER_PRODUCTIVITY}),
        effort=Effort.LOW,
        severity=Severity.NORMAL,
        pitfalls=(
            "Commit counts are not value: squashed branches, pairing, and non-code work "
            "all lower the count without meaning anyone was idle."
        ),
    ),
    cfg.DAILY_STORY_LOAD: MetricDescriptor(
        name=cfg.DAILY_STORY_LOAD,
        synopsis="Staffing quota of developers per backlog story per day.",
        description=(
            "The sprint backlog should match the team's capacity. This check computes "
            "developers divided by backlog size divided by sprint length and rates it on "
            "a parabola: an optimal band scores best, while an overfull backlog (tiny "
            "quota) or a near-empty one (huge quota) both fall off. It emits no "
            "violations; the quota itself is the signal."
        ),
        data_sources=frozenset({DataSource.STORY_TRACKER}),
        categories=frozenset({DEVELOPER_PRODUCTIVITY}),
        effort=Effort.LOW,
        severity=Severity.LOW,
        pitfalls=(
            "Stories are counted, not sized; five small stories and five epics produce "
            "the same quota."
        ),
    ),
    cfg.FAST_PULLS: MetricDescriptor(
        name=cfg.FAST_PULLS,
        synopsis="Pull requests closed quickly without comments.",
        description=(
            "Pull requests exist to let peers review and discuss changes before they "
            "land. One that is opened and closed within minutes, with no comments at "
            "all, almost certainly skipped review. The score is the share of such "
            "speedy, silent pulls among all closed pull requests in the sprint."
        ),
        data_sources=frozenset({DataSource.PULL_REQUESTS}),
        categories=frozenset({DEVELOPER_PRODUCTIVITY}),
        effort=Effort.LOW,
        severity=Severity.HIGH,
        pitfalls=(
            "Review can happen out of band (pairing, chat) and leave no comments; "
            "trivial changes legitimately merge fast."
        ),
    ),
}

RATING_FUNCTIONS: dict[str, RatingFunction] = {
    cfg.COLLECTIVE_OWNERSHIP: RatingFunction(RatingKind.THRESHOLD_LINEAR, {"weight": 10.0}),
    cfg.TEST_LATER: RatingFunction(RatingKind.RATIO_LINEAR, {"weight": 2.0}),
    cfg.HUGE_STORIES: RatingFunction(RatingKind.THRESHOLD_LINEAR, {"weight": 25.0}),
    cfg.MULTI_BACKLOG: RatingFunction(RatingKind.RATIO_LINEAR, {"weight": 1.0}),
    cfg.DUPLICATE_STORIES: RatingFunction(RatingKind.RATIO_LINEAR, {"weight": 1.0}),
    cfg.LAST_MINUTE: RatingFunction(RatingKind.RATIO_LINEAR, {"weight": 1.0}),
    cfg.COMMIT_ACTIVITY: RatingFunction(RatingKind.CAPPED_LINEAR, {"weight": 10.0}),
    cfg.DAILY_STORY_LOAD: RatingFunction(
        RatingKind.CUTOFF_PARABOLA, {"weight_a": 200.0, "weight_b": 100.0}
    ),
    cfg.FAST_PULLS: RatingFunction(RatingKind.RATIO_LINEAR, {"weight": 1.0}),
}


def default_registry() -> MetricRegistry:
    """All nine built-in metrics, in their canonical order."""
    registry = MetricRegistry()

    def adapt(name, call):
        registry.register(
            RegisteredMetric(descriptor=DESCRIPTORS[name], rating=RATING_FUNCTIONS[name], detector=call)
        )

    adapt(cfg.COLLECTIVE_OWNERSHIP, lambda h, s, c: detect_collective_ownership(s, c))
    adapt(cfg.TEST_LATER, lambda h, s, c: detect_test_later(s, h.stats_by_commit, c))
    adapt(cfg.HUGE_STORIES, lambda h, s, c: detect_huge_stories(s, c))
    adapt(cfg.MULTI_BACKLOG, lambda h, s, c: detect_multi_backlog(h, s.team, s.sprint, c))
    adapt(cfg.DUPLICATE_STORIES, lambda h, s, c: detect_duplicates(s, c))
    adapt(cfg.LAST_MINUTE, lambda h, s, c: detect_last_minute(s, c))
    adapt(
        cfg.COMMIT_ACTIVITY,
        lambda h, s, c: detect_no_committing(s, h.developers.get(s.team, frozenset()), c),
    )
    adapt(
        cfg.DAILY_STORY_LOAD,
        lambda h, s, c: detect_daily_story_quota(s, len(h.developers.get(s.team, frozenset())), c),
    )
    adapt(cfg.FAST_PULLS, lambda h, s, c: detect_fast_pulls(s, c))
    return registry

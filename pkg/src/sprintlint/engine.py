"""Rating functions, the metric registry, and the uniform evaluation pipeline.

Two function families map violation counts into bounded scores: linearly
decreasing threshold forms (a count or ratio of violations pushes the score
down from 100) and a cut-off parabola (an operating quota scores highest in
an optimal band and falls off on both sides). All outputs are clamped into
[0, 100].
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum

from .config import MetricConfig
from .errors import SprintLintError
from .model import (
    MetricDescriptor,
    MetricResult,
    ProjectHistory,
    SprintSlice,
    window,
)


class RatingKind(str, Enum):
    THRESHOLD_LINEAR = "threshold_linear"
    RATIO_LINEAR = "ratio_linear"
    CAPPED_LINEAR = "capped_linear"
    CUTOFF_PARABOLA = "cutoff_parabola"


@dataclass(frozen=True)
class RatingFunction:
    """Declarative description of how a metric maps its operands to a score."""

    kind: RatingKind
    parameters: Mapping[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameters", dict(self.parameters))


class ZeroTotalError(SprintLintError):
    """A ratio rating was asked to divide by a zero total; callers map this per metric."""


def clamp_score(value: float) -> float:
    return min(100.0, max(0.0, value))


def threshold_linear(count: float, weight: float) -> float:
    """Score 100 minus `weight` per violation, floored at 0."""
    return max(0.0, 100.0 - count * weight)


def ratio_linear(violations: float, total: float, weight: float, extra_factor: float = 1.0) -> float:
    """Score 100 minus the violation percentage, scaled by weight and an optional factor."""
    if total <= 0:
        raise ZeroTotalError("ratio rating needs a positive total")
    return max(0.0, 100.0 - (violations / total) * 100.0 * extra_factor * weight)


def capped_linear(value: float, weight: float) -> float:
    """Score proportional to `value`, capped at 100. Zero activity scores 0."""
    return min(100.0, value * weight)


def cutoff_parabola(quota: float, weight_a: float, weight_b: float) -> float:
    """Parabolic score peaking at quota = weight_a / (2 * weight_b).

    The upper cap keeps an optimal band at 100; the lower clamp keeps far-off
    quotas from going negative.
    """
    return clamp_score(weight_a * quota - weight_b * quota * quota)


Detector = Callable[[ProjectHistory, SprintSlice, MetricConfig], MetricResult]


@dataclass(frozen=True)
class RegisteredMetric:
    descriptor: MetricDescriptor
    rating: RatingFunction
    detector: Detector


class MetricRegistry:
    """Ordered, name-unique collection of metrics; iteration follows registration."""

    def __init__(self) -> None:
        self._by_name: dict[str, RegisteredMetric] = {}

    def register(self, metric: RegisteredMetric) -> None:
        name = metric.descriptor.name
        if name in self._by_name:
            raise SprintLintError(f"metric {name!r} registered twice")
        self._by_name[name] = metric

    def get(self, name: str) -> RegisteredMetric:
        try:
            return self._by_name[name]
        except KeyError:
            raise SprintLintError(f"metric {name!r} is not registered") from None

    def names(self) -> tuple[str, ...]:
        return tuple(self._by_name)

    def __iter__(self) -> Iterator[RegisteredMetric]:
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)


def evaluate(
    registry: MetricRegistry,
    name: str,
    history: ProjectHistory,
    team: str,
    sprint_id: str,
    config: MetricConfig,
    slice_: SprintSlice | None = None,
) -> MetricResult | None:
    """Run one metric over one team-sprint.

    Returns None when the metric is disabled in the config. Detector failures
    (including undefined denominators that escaped a detector) surface as a
    result with no score and a diagnostic, never as an exception.
    """
    metric = registry.get(name)
    if not config.for_metric(name).enabled:
        return None
    if slice_ is None:
        slice_ = window(history, team, sprint_id)
    try:
        return metric.detector(history, slice_, config)
    except Exception as exc:  # single-metric failures must not abort a run
        return MetricResult(
            metric=name,
            team=team,
            sprint=sprint_id,
            violations=(),
            score=None,
            diagnostic=f"detector failed: {exc}",
        )


def run_all(
    registry: MetricRegistry,
    history: ProjectHistory,
    config: MetricConfig,
) -> list[MetricResult]:
    """Evaluate every enabled metric for every (team, sprint).

    Output order is deterministic: team id, then sprint due date, then metric
    registration order.
    """
    results: list[MetricResult] = []
    for team in history.teams:
        for sprint in history.sprints_of(team):
            slice_ = window(history, team, sprint.id)
            for name in registry.names():
                result = evaluate(registry, name, history, team, sprint.id, config, slice_=slice_)
                if result is not None:
                    results.append(result)
    return results

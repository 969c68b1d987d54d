#!/usr/bin/env python3
# A guided tour: generate a synthetic project, lint it, break it, lint again.
#
# The generator builds a history that passes every check at the default
# configuration, which makes it a clean baseline for experiments: any
# violation you see afterwards is one you planted yourself.

from sprintlint import (
    MetricConfig,
    aggregate_all,
    default_registry,
    run_all,
)
from sprintlint.fixtures import FixtureSpec, InjectionSpec, generate, inject

config = MetricConfig()
registry = default_registry()

# -- 1. a clean project ------------------------------------------------------
#
# Two teams, six developers each, three two-day sprints. The defaults are
# deliberately balanced: ten commits per developer saturate the activity
# score, and 6 devs / 3 stories / 2 days puts the staffing quota exactly on
# the parabola's peak.

history, certificate = generate(FixtureSpec(seed=42))
print("generated:", len(history.commits), "commits,", len(history.stories), "stories,",
      len(history.sprints), "sprints across", len(history.teams), "teams")
print("self-lint certificate:", certificate.to_dict())
print()

results = run_all(registry, history, config)
scores = aggregate_all(results, registry, config)
print("clean baseline, per team-sprint overall scores:")
for score in scores:
    print(f"  {score.team}  {score.sprint}  overall={score.overall:.1f}")
print()

# -- 2. plant some violations -------------------------------------------------
#
# Each directive adds a self-contained team carrying exactly the requested
# bad artifacts; the ledger tells us what the detectors must find.

injection = InjectionSpec(
    hot_files=(1, 12, 1),        # one file, 12 edits, a single author
    last_minute_commits=3,       # three commits inside the deadline window
    silent_fast_pulls=2,         # two pull requests closed fast with no comments
)
history, ledger = inject(history, injection, seed=7)
print("injected violations:")
for metric, record in sorted(ledger.items()):
    print(f"  {metric}: {list(record.artifacts)} in {record.team} / {record.sprint_id}")
print()

# -- 3. lint again and compare with the ledger --------------------------------

results = run_all(registry, history, config)
print("what the detectors found:")
for result in results:
    if not result.violations:
        continue
    for violation in result.violations:
        print(f"  {result.metric} ({result.team}, {result.sprint}): {violation.detail}")
print()

for metric, record in sorted(ledger.items()):
    found = sorted(
        artifact
        for result in results
        if (result.metric, result.team, result.sprint) == (metric, record.team, record.sprint_id)
        for violation in result.violations
        for artifact in violation.artifacts
    )
    status = "OK" if found == sorted(record.artifacts) else "MISMATCH"
    print(f"  {status}: {metric} recovered {len(found)} of {len(record.artifacts)} planted artifacts")

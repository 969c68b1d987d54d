#!/usr/bin/env python3
# The past-due backlog query: which stories were left open when the sprint ended?
#
# This is the check humans usually run first after a deadline. We build a
# small tracker export by hand: one sprint, ten backlog stories, two of them
# still open after the due date.

from sprintlint import StoryState, build_history, unfinished_stories
from sprintlint.model import Sprint, SprintMembership, UserStory

DAY = 86400.0
START = 1_420_416_000.0  # 2015-01-05T00:00:00Z

sprint = Sprint(
    id="s12", title="Sprint 12", starts_at=START, due_on=START + 14 * DAY, team="blue",
)

OPEN = {129, 135}
stories = []
for number in (126, 127, 128, 129, 130, 132, 135, 137, 139, 141):
    is_open = number in OPEN
    stories.append(
        UserStory(
            number=number,
            title=f"Story {number}",
            body="",
            state=StoryState.OPEN if is_open else StoryState.CLOSED,
            labels=frozenset(),
            milestones=(SprintMembership(sprint_id="s12", assigned_at=START),),
            assignees=frozenset(),
            created_at=START - DAY,
            closed_at=None if is_open else START + 10 * DAY,
            team="blue",
        )
    )

history = build_history(stories=stories, sprints=[sprint])

# Two days after the deadline, the sprint is past due and the query reports
# the leftovers; before the deadline it stays silent.
after = unfinished_stories(history, "s12", now=START + 16 * DAY)
print("| Sprint    | Amount | Issues     | Total | Percent |")
print("|-----------|--------|------------|-------|---------|")
issues = ", ".join(f"#{n}" for n in after.story_numbers)
print(f"| {after.sprint_title} | {after.amount}      | {issues} | {after.total}    | {after.percent} |")

before = unfinished_stories(history, "s12", now=START + 2 * DAY)
print()
print("asked again mid-sprint:", "no result, sprint not due yet" if before is None else before)

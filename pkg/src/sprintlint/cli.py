"""Command-line entry point: ingest, lint, score, generate.

Exit codes follow lint-tool convention: 0 for success, 1 when a policy gate
(--fail-below) trips, 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .catalog import default_registry
from .config import MetricConfig, load_config
from .engine import run_all
from .errors import SprintLintError
from .fixtures import (
    FixtureSpec,
    InjectionSpec,
    generate,
    inject,
    injection_from_dict,
    ledger_to_dict,
    spec_from_dict,
)
from .ingest import (
    IngestManifest,
    load_history,
    load_snapshot,
    write_commits,
    write_issues,
    write_pulls,
    write_snapshot,
    write_sprints,
    write_stats,
)
from .report import TOOL_VERSION, build_report, render_json, render_markdown
from .scoring import aggregate_all, trend, trend_csv
from .serialize import canonical_json, parse_iso_utc

CONFIG_ENV_VAR = "SPRINTLINT_CONFIG"

EXIT_OK = 0
EXIT_POLICY = 1
EXIT_INPUT = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _resolve_config(path_arg: str | None) -> MetricConfig:
    path = path_arg or os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return MetricConfig()
    return load_config(path)


def _read_json_file(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SprintLintError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SprintLintError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise SprintLintError(f"{path} must contain a JSON object")
    return raw


def _manifest_from_args(args: argparse.Namespace) -> IngestManifest:
    team_map: dict[str, str] = {}
    alias_map: dict[str, str] = {}
    paths: dict[str, Path | None] = {
        "commits": None, "issues": None, "sprints": None, "pulls": None, "stats": None,
    }
    if args.manifest:
        raw = _read_json_file(args.manifest)
        base = Path(args.manifest).parent
        for key in paths:
            if raw.get(key) is not None:
                paths[key] = base / raw[key]
        team_map = dict(raw.get("team_map", {}))
        alias_map = dict(raw.get("alias_map", {}))
    for key in paths:
        value = getattr(args, key)
        if value is not None:
            paths[key] = Path(value)
    return IngestManifest(
        commits_path=paths["commits"],
        issues_path=paths["issues"],
        sprints_path=paths["sprints"],
        pulls_path=paths["pulls"],
        stats_path=paths["stats"],
        team_map=team_map,
        alias_map=alias_map,
    )


def cmd_ingest(args: argparse.Namespace) -> int:
    manifest = _manifest_from_args(args)
    history, diagnostics = load_history(manifest)
    parse_problems = [d for d in diagnostics if not d.endswith("(shallow history?)")]
    if parse_problems:
        for problem in parse_problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    write_snapshot(args.out, history, diagnostics)
    print(f"snapshot written to {args.out}")
    print(f"  teams:     {len(history.teams)}")
    print(f"  sprints:   {len(history.sprints)}")
    print(f"  commits:   {len(history.commits)}")
    print(f"  stories:   {len(history.stories)}")
    print(f"  pulls:     {len(history.pulls)}")
    print(f"  stats:     {len(history.build_stats)}")
    if diagnostics:
        print(f"  flags:     {len(diagnostics)}")
    return EXIT_OK


def cmd_lint(args: argparse.Namespace) -> int:
    history = load_snapshot(args.project)
    config = _resolve_config(args.config)
    registry = default_registry()
    now = parse_iso_utc(args.now, "--now") if args.now else None
    sprint_title = None if args.sprint == "all" else args.sprint
    report = build_report(history, registry, config, now=now, sprint_title=sprint_title)
    if args.format == "json":
        rendered = render_json(report, history)
    else:
        rendered = render_markdown(report, history, registry)
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    if args.fail_below is not None:
        failing = [
            s for s in report.scores if s.overall is not None and s.overall < args.fail_below
        ]
        if failing:
            for score in failing:
                print(
                    f"policy: {score.team} {score.sprint} scored {score.overall:.1f} "
                    f"< {args.fail_below}",
                    file=sys.stderr,
                )
            return EXIT_POLICY
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    history = load_snapshot(args.project)
    config = _resolve_config(args.config)
    registry = default_registry()
    results = run_all(registry, history, config)
    scores = aggregate_all(results, registry, config)
    csv_text = trend_csv(trend(history, results, scores))
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
        print(f"trend written to {args.out}")
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    spec = spec_from_dict(_read_json_file(args.spec)) if args.spec else FixtureSpec()
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    injection = (
        injection_from_dict(_read_json_file(args.inject)) if args.inject else InjectionSpec()
    )
    history, certificate = generate(spec)
    history, ledger = inject(history, injection, spec.seed)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_commits(out_dir / "commits.ndjson", history.commits)
    write_issues(out_dir / "issues.json", history.stories)
    write_sprints(out_dir / "sprints.json", history.sprints)
    write_pulls(out_dir / "pulls.json", history.pulls)
    write_stats(out_dir / "stats.csv", history.build_stats)
    ledger_doc = {
        "spec": spec.to_dict(),
        "injection": injection.to_dict(),
        "certificate": certificate.to_dict(),
        "ledger": ledger_to_dict(ledger, spec.seed),
    }
    (out_dir / "ledger.json").write_text(canonical_json(ledger_doc) + "\n", encoding="utf-8")
    print(f"fixture written to {out_dir}")
    print(f"  commits: {len(history.commits)}, stories: {len(history.stories)}, "
          f"sprints: {len(history.sprints)}, pulls: {len(history.pulls)}")
    if ledger:
        print(f"  injected metrics: {', '.join(sorted(ledger))}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sprintlint",
        description="Detect agile-process violations in exported development data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="parse export files into a validated snapshot")
    p_ingest.add_argument("--manifest", help="JSON manifest naming the export files")
    p_ingest.add_argument("--commits", help="newline-delimited commits file")
    p_ingest.add_argument("--issues", help="stories JSON array")
    p_ingest.add_argument("--sprints", help="sprints JSON array")
    p_ingest.add_argument("--pulls", help="pull requests JSON array")
    p_ingest.add_argument("--stats", help="per-commit stats CSV")
    p_ingest.add_argument("--out", required=True, help="snapshot output path")
    p_ingest.set_defaults(func=cmd_ingest)

    p_lint = sub.add_parser("lint", help="run every enabled metric and report violations")
    p_lint.add_argument("--project", required=True, help="snapshot from 'ingest'")
    p_lint.add_argument("--config", help=f"config JSON (default from ${CONFIG_ENV_VAR})")
    p_lint.add_argument("--sprint", default="all", help="limit to sprints with this title")
    p_lint.add_argument("--format", choices=("json", "markdown"), default="json")
    p_lint.add_argument("--out", help="write the report here instead of stdout")
    p_lint.add_argument("--fail-below", type=float, default=None,
                        help="exit 1 if any overall score is below this")
    p_lint.add_argument("--now", help="reference time (ISO-8601) for past-due checks")
    p_lint.set_defaults(func=cmd_lint)

    p_score = sub.add_parser("score", help="emit per-sprint trend series as CSV")
    p_score.add_argument("--project", required=True)
    p_score.add_argument("--config", help=f"config JSON (default from ${CONFIG_ENV_VAR})")
    p_score.add_argument("--out", help="CSV output path (default stdout)")
    p_score.set_defaults(func=cmd_score)

    p_gen = sub.add_parser("generate", help="write a synthetic fixture in the export formats")
    p_gen.add_argument("--spec", help="fixture spec JSON (defaults apply)")
    p_gen.add_argument("--inject", help="violation injection JSON")
    p_gen.add_argument("--seed", type=int, default=None, help="override the spec's seed")
    p_gen.add_argument("--out-dir", required=True)
    p_gen.set_defaults(func=cmd_generate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SprintLintError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())

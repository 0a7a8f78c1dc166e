"""Command line front end: ``probopp check <file>``.

Exit codes: 0 when every stated expectation holds, 1 when one fails,
2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .scenario import (
    Report,
    QueryResult,
    ScenarioError,
    emit_dot,
    fmt_point,
    load_scenario,
    parse_backend,
    run_scenario,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

_WORD = {True: "true", False: "false", None: "unknown"}


def result_dict(r: QueryResult) -> dict:
    out = {
        "index": r.index,
        "line": r.line,
        "query": r.query,
        "verdict": _WORD[r.verdict],
        "expect": _WORD[r.expect] if r.has_expect else None,
        "met": r.met,
        "witness": fmt_point(r.witness),
        "failed": r.failed,
        "notes": list(r.notes),
    }
    out.update(r.details)
    if r.dot is not None:
        out["dot"] = r.dot
    if r.seconds is not None:
        out["seconds"] = round(r.seconds, 6)
    return out


def report_dict(rep: Report) -> dict:
    return {
        "scenario": rep.source,
        "backend": rep.backend,
        "results": [result_dict(r) for r in rep.results],
        "ok": rep.ok,
    }


def render_text(rep: Report) -> str:
    lines = [f"scenario {rep.source} (backend {rep.backend})"]
    for r in rep.results:
        d = result_dict(r)
        head = f"[{r.index}] {r.query}: {d['verdict']}"
        if r.has_expect:
            head += f" (expect {d['expect']}: {'ok' if r.met else 'FAILED'})"
        lines.append(head)
        if d["failed"]:
            lines.append(f"    failed condition: {d['failed']}")
        if "conditions" in d:
            lines.append("    conditions: " + " ".join(f"{k}={v}" for k, v in d["conditions"].items()))
        if d["witness"] is not None:
            lines.append(f"    witness: ({', '.join(d['witness'])})")
        for key in ("stakes", "gains", "support"):
            if key in d:
                lines.append(f"    {key}: {', '.join(map(str, d[key]))}")
        for note in d["notes"]:
            lines.append(f"    note: {note}")
        if "dot" in d:
            lines.append(f"    dot: {d['dot']}")
        if "seconds" in d:
            lines.append(f"    time: {d['seconds']:.6f}s")
    met = sum(1 for r in rep.results if r.met)
    stated = sum(1 for r in rep.results if r.has_expect)
    lines.append(f"{met}/{stated} expectations met; {'ok' if rep.ok else 'FAILED'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="probopp", description="Check probabilistic squares and hexagons of opposition.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="run the queries of a scenario file")
    c.add_argument("file", type=Path)
    c.add_argument("--backend", choices=("exact", "lp", "grid", "auto"), help="override the scenario's backend")
    c.add_argument("--grid-step", metavar="1/m", help="grid spacing for the grid backend (default 1/20)")
    c.add_argument("--json", action="store_true", help="print the report as JSON")
    c.add_argument("--emit-dot", metavar="DIR", type=Path, help="write verified squares and hexagons as DOT files")
    c.add_argument("--timing", action="store_true", help="include per-query wall time (not deterministic)")
    return p


def check(args: argparse.Namespace, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        sc = load_scenario(args.file)
        backend = None
        if args.backend or args.grid_step:
            backend = parse_backend(args.backend or "grid", args.grid_step)
        rep = run_scenario(sc, backend, timing=args.timing)
    except (OSError, ScenarioError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    if args.emit_dot is not None:
        args.emit_dot.mkdir(parents=True, exist_ok=True)
        for r in rep.results:
            if r.structure is not None:
                emit_dot(r, args.emit_dot / f"q{r.index}.dot")
    if args.json:
        out.write(json.dumps(report_dict(rep), indent=2) + "\n")
    else:
        out.write(render_text(rep))
    return rep.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return check(args)


if __name__ == "__main__":
    sys.exit(main())

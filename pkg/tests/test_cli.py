import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from probopp.cli import main
from probopp.coherence import check_coherence
from probopp.scenario import (
    QueryError,
    ScenarioSyntaxError,
    emit_dot,
    load_scenario,
    parse_scenario,
    run_scenario,
)
from probopp.oppositions import NotAStructure

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = sorted((ROOT / "scenarios").glob("*.scn"))


def write(tmp_path, text, name="s.scn"):
    p = tmp_path / name
    p.write_text(text)
    return p


def run(capsys, *argv):
    code = main(["check", *map(str, argv)])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.name)
def test_bundled_scenarios_pass(capsys, path):
    code, out, _ = run(capsys, path)
    assert code == 0, out
    assert out.rstrip().endswith("ok")


def test_spec_example(tmp_path, capsys):
    p = write(tmp_path, """\
atoms P S
independent
event c1 = P | S
family F = [c1]
region RA = box [3/4, 1]
sentence A = (F, RA)
query acceptable A expect true
query verify_square A(3/4) E(3/4) I(3/4) O(3/4)
""")
    code, out, _ = run(capsys, p)
    assert code == 0
    assert "[2] verify_square A(3/4) E(3/4) I(3/4) O(3/4): true" in out


def test_failed_expectation_exit_one(tmp_path, capsys):
    p = write(tmp_path, "atoms P S\nevent c = P | S\nfamily F = [c]\nquery coherent F (1/2) expect false\n")
    code, out, _ = run(capsys, p)
    assert code == 1 and "FAILED" in out


def test_grid_unknown_only_fails_with_expectation(tmp_path, capsys):
    body = "atoms E H\nevent c = E | H\nevent d = !E | H\nfamily F = [c, d]\nsentence t = (F, box [0, 3/10] x [0, 3/10])\n"
    p = write(tmp_path, body + "query acceptable t\n")
    code, out, _ = run(capsys, p, "--backend", "grid", "--grid-step", "1/20")
    assert code == 0 and "acceptable t: unknown" in out
    p = write(tmp_path, body + "query acceptable t expect false\n")
    assert run(capsys, p, "--backend", "grid")[0] == 1
    assert run(capsys, p, "--backend", "exact")[0] == 0


def test_family_mismatch_is_semantic_error(tmp_path, capsys):
    p = write(tmp_path, """\
atoms P S
event c = P | S
event d = S | P
family F = [c]
family G = [d]
sentence s1 = (F, box [0, 1/2])
sentence s2 = (G, box [0, 1/2])
query acceptable s1
query contrary s1 s2 expect true
""")
    code, _, err = run(capsys, p)
    assert code == 2
    assert "query #2 (line 9)" in err and "FamilyMismatch" in err


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("atoms P S\nevent c = P | S | P\n", 2, 17),
        ("atoms P S\nevent c = P & | S\n", 2, 14),
        ("atoms P S\nevent c = P | S\nfamily F = [c]\nregion R = box [0, 1/2 x [0,1]\n", 4, 24),
        ("atoms P S\nevent c = P | Q\n", 2, 15),
        ("atoms P S\nfrobnicate\n", 2, 1),
        ("atoms P S\nevent c = P | S\nfamily F = [c]\nquery acceptable Nope\n", 4, 18),
        ("atoms P S\nevent c = P | S\nfamily F = [c]\nquery coherent F (1/2) expect maybe\n", 4, 31),
        ("event c = P | S\n", 1, 1),
        ("atoms P S\nevent c = P | S\nconstraint P\n", 3, 1),
        ("atoms P S\nregion R = box [1/2, 1/4]\n", 2, 12),
    ],
)
def test_parse_errors_have_line_and_column(text, line, col):
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_scenario(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_parse_error_exit_code(tmp_path, capsys):
    p = write(tmp_path, "atoms P S\nevent c = P | S | P\n")
    code, _, err = run(capsys, p)
    assert code == 2 and "s.scn:2:17" in err


def test_missing_file(tmp_path, capsys):
    assert run(capsys, tmp_path / "nope.scn")[0] == 2


def test_dimension_mismatch_is_query_error():
    sc = parse_scenario("atoms P S\nevent c = P | S\nfamily F = [c]\nsentence s = (F, box [0,1] x [0,1])\nquery acceptable s\n")
    with pytest.raises(QueryError) as info:
        run_scenario(sc)
    assert info.value.index == 1 and "DimensionMismatch" in str(info.value)


def test_unsupported_cell_is_query_error():
    sc = parse_scenario(
        "atoms P Q S\nevent a = P | S\nevent b = Q | S\nfamily F = [a, b]\n"
        "sentence s = (F, halfspace (1/2)*p1 + (1/2)*p2 >= 3/4)\nquery acceptable s\n"
    )
    with pytest.raises(QueryError, match="UnsupportedCellError"):
        run_scenario(sc)


def test_refuted_independence_is_query_error():
    sc = parse_scenario("atoms P S\nindependent\nevent a = P | S\nevent b = P & S | S\nfamily F = [a, b]\nquery g_coherent F full\n")
    with pytest.raises(QueryError, match="declared independent"):
        run_scenario(sc)


def test_json_mirrors_text(capsys):
    path = ROOT / "scenarios" / "pair.scn"
    _, text, _ = run(capsys, path)
    _, js, _ = run(capsys, path, "--json")
    data = json.loads(js)
    assert data["ok"] is True and data["backend"] == "auto"
    assert len(data["results"]) == text.count("\n[")
    book = data["results"][2]
    assert book["stakes"] == ["-1", "-1"] and book["gains"] == ["-1/10"]
    assert data["results"][3]["witness"] is not None
    assert all("/" in v or v.lstrip("-").isdigit() for v in data["results"][3]["witness"])


def test_reports_are_deterministic(capsys):
    for path in SCENARIOS:
        a = run(capsys, path, "--json")[1]
        b = run(capsys, path, "--json")[1]
        assert a == b


def test_timing_is_opt_in(capsys):
    path = ROOT / "scenarios" / "pair.scn"
    assert "time:" not in run(capsys, path)[1]
    assert "time:" in run(capsys, path, "--timing")[1]


def test_witnesses_recheck():
    for path in SCENARIOS:
        sc = load_scenario(path)
        rep = run_scenario(sc)
        for q, r in zip(sc.queries, rep.results):
            if r.witness is None:
                continue
            fam = _query_family(sc, q)
            assert check_coherence(fam, r.witness), (path.name, q.text)


def _query_family(sc, q):
    from probopp.scenario import _Runner

    runner = _Runner(sc, None)
    first = q.args[0]
    if isinstance(first, str):
        return sc.families[first]
    return runner.sentence(first).family


def test_emit_dot(tmp_path, capsys):
    out = tmp_path / "dot"
    code, text, _ = run(capsys, ROOT / "scenarios" / "hexagon.scn", "--emit-dot", out)
    assert code == 0
    files = sorted(p.name for p in out.iterdir())
    assert files == ["q1.dot", "q2.dot", "q4.dot"]
    dot = (out / "q1.dot").read_text()
    assert dot.count("->") == 15 and dot.count("[label=") == 6
    sq = tmp_path / "sq"
    run(capsys, ROOT / "scenarios" / "square.scn", "--emit-dot", sq)
    assert (sq / "q7.dot").read_text().count("->") == 6
    assert not (sq / "q9.dot").exists()


def test_emit_dot_rejects_unverified(tmp_path):
    rep = run_scenario(load_scenario(ROOT / "scenarios" / "square.scn"))
    with pytest.raises(NotAStructure):
        emit_dot(rep.results[8], tmp_path / "bad.dot")


def test_backend_line_and_override(tmp_path, capsys):
    p = write(tmp_path, "atoms P S\nbackend grid 1/4\nevent c = P | S\nfamily F = [c]\nquery acceptable A(3/4)\n")
    assert "backend grid 1/4" in run(capsys, p)[1]
    assert "backend lp" in run(capsys, p, "--backend", "lp")[1]


def test_console_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "probopp.cli", "check", str(ROOT / "scenarios" / "degenerate.scn")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "8/8 expectations met; ok" in proc.stdout


def test_rationals_in_decimal_form(tmp_path, capsys):
    p = write(tmp_path, "atoms P S\nevent c = P | S\nfamily F = [c]\nquery coherent F (0.75) expect true\n")
    assert run(capsys, p)[0] == 0
    sc = parse_scenario(p.read_text())
    assert sc.queries[0].args[1] == (F(3, 4),)

import io
import json
from pathlib import Path

import pytest

from exotica import cli, verify
from exotica.commands import render_verify
from exotica.trace import TraceLogger


async def test_table_checks_all_match():
    checks = await verify.gather_checks(verify.groups_for("tables"))
    failed = [c.name for c in checks if not c.ok]
    assert failed == []
    noted = {c.name: c.note for c in checks if c.note}
    assert set(noted) == {"B_18", "typeset bP order at n=3", "typeset matrix (det, sigma)"}


async def test_property_checks_all_hold():
    checks = await verify.gather_checks(verify.groups_for("properties"))
    assert [c.name for c in checks if not c.ok] == []
    assert {c.group for c in checks} >= {"ricci", "forms", "s-polynomials", "milnor", "jets", "euler"}
    ricci = {c.name: c for c in checks if c.group == "ricci"}
    assert ricci["second-derivative bracket of S"].note
    assert "conserved integral drift is O(h^2)" in ricci
    assert "conserved integral drift is O(dt)" in ricci


async def test_checks_come_back_in_group_order():
    groups = verify.groups_for("tables")
    first = [c.name for c in await verify.gather_checks(groups)]
    second = [c.name for c in await verify.gather_checks(groups)]
    assert first == second
    checks = await verify.gather_checks(groups)
    assert list(dict.fromkeys(c.group for c in checks)) == list(groups)


def test_scopes():
    assert list(verify.groups_for("tables")) == list(verify.TABLE_GROUPS)
    assert list(verify.groups_for("all")) == list(verify.TABLE_GROUPS) + list(verify.PROPERTY_GROUPS)


def test_run_verify_traces_each_check(tmp_path: Path):
    tracer = TraceLogger(tmp_path / "trace.jsonl")
    payload = verify.run_verify("tables", tracer)
    assert payload["passed"] is True
    assert payload["covered"] == list(verify.TABLE_GROUPS)
    assert payload["annotations"]
    lines = tracer.path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(payload["checks"])
    first = json.loads(lines[0])
    assert first["event"] == "check_result"
    assert first["group"] == "bordism"


def test_report_layout():
    payload = verify.run_verify("tables")
    lines = render_verify(payload).splitlines()
    assert lines[0].startswith("PASS  homotopy 1-sphere")
    assert any(line.startswith("note  Theta_n (n=9)") for line in lines)
    assert lines[-1].startswith(f"all {len(payload['checks'])} checks matched (tables: bordism, euler")


def test_failing_check_sets_exit_code(exotica_env: Path, monkeypatch: pytest.MonkeyPatch):
    broken = verify.Check("bernoulli", "B_2", "1/6", "1/7", False)
    monkeypatch.setitem(verify.TABLE_GROUPS, "bernoulli", lambda: [broken])
    out = io.StringIO()
    result = cli.run(["verify", "tables"], output=out, errors=io.StringIO())
    assert result.exit_code == 1
    text = out.getvalue()
    assert "FAIL  B_2" in text
    assert "1 of " in text.splitlines()[-1]

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from exotica.config import load_config
from exotica.trace import TraceLogger, open_tracer


def test_trace_logger_writes_events(tmp_path: Path):
    trace_path = tmp_path / "nested" / "trace.jsonl"
    tracer = TraceLogger(trace_path)

    tracer.log("check_result", {"name": "B_2", "printed": Fraction(1, 6)}, context={"group": "bernoulli"})
    tracer.log("step", {"step": 1, "min_det_g": np.float64(0.5)})

    lines = trace_path.read_text(encoding="utf-8").strip().splitlines()
    payloads = [json.loads(line) for line in lines]
    assert [p["event"] for p in payloads] == ["check_result", "step"]
    assert payloads[0]["printed"] == "1/6"
    assert payloads[0]["group"] == "bernoulli"
    assert payloads[1]["min_det_g"] == 0.5
    for payload in payloads:
        assert payload["schema_version"] == 1
        assert payload["run_id"] == tracer.run_id
        assert payload["ts"]


def test_open_tracer_follows_config(exotica_env: Path, monkeypatch):
    assert open_tracer(load_config()) is None
    monkeypatch.setenv("EXOTICA_TRACE_PATH", str(exotica_env / "trace.jsonl"))
    tracer = open_tracer(load_config())
    assert tracer is not None
    assert tracer.path.exists()

"""CLI contract: formats, determinism, exit codes."""

from __future__ import annotations

import io
import json

import pytest

from bigqh.cli import parse_complex, parse_path, run
from bigqh.potential import WDVVSolveError


def invoke(args, session):
    out = io.StringIO()
    code = run(args, session=session, stdout=out)
    return code, out.getvalue()


def test_parse_complex():
    assert parse_complex("1.5+3i") == 1.5 + 3j
    assert parse_complex("0.5+1j") == 0.5 + 1j
    assert parse_complex("2i") == 2j
    assert parse_complex("-4") == -4
    assert parse_complex("0.5,1") == 0.5 + 1j
    with pytest.raises(ValueError):
        parse_complex("abc")
    assert parse_path("0.5+1i;1+2i") == [0.5 + 1j, 1 + 2j]


def test_gw_table_text_nine_entries(session):
    code, out = invoke(["gw-table", "--max-degree", "1", "--format", "text"], session)
    assert code == 0
    assert out.count("N(") == 9
    assert "N(3,2,0,0)=1" in out and "N(0,0,1,1)=1" in out


def test_gw_table_json(session):
    code, out = invoke(["gw-table", "--max-degree", "1", "--format", "json"], session)
    assert code == 0
    data = json.loads(out)
    assert data["max_degree"] == 1
    assert len(data["entries"]) == 16  # full table includes the mirrors


def test_discriminant_t4_family(session):
    code, out = invoke(["discriminant", "--cycle", "2,1", "--alpha", "2"], session)
    assert code == 0
    assert "discriminant = 0" in out
    assert "TRUNCATION_NONSIMPLE" in out
    # the open alternative for the untruncated operator is reported, not resolved
    assert "non-simple or has discriminant valuation >= 2" in out


def test_classify_text(session):
    code, out = invoke(["classify", "--cycle", "2,0"], session)
    assert code == 0
    assert "TRUNCATION_SIMPLE" in out


def test_spectrum_origin(session):
    code, out = invoke(["spectrum", "--t", "0", "--q", "1", "--alpha", "2",
                        "--format", "json"], session)
    assert code == 0
    data = json.loads(out)
    evs = [complex(re, im) for re, im in data["eigenvalues"]]
    mags = sorted(abs(z) for z in evs)
    root = 4 * 2 ** 0.5
    assert mags[0] < 1e-9 and mags[1] < 1e-9
    assert all(abs(m - root) < 1e-9 for m in mags[2:])


def test_matrix_text(session):
    code, out = invoke(["matrix", "--cycle", "2,0", "--alpha", "2"], session)
    assert code == 0
    assert "1/6t2^3q" in out


def test_sweep_csv_shape(session):
    code, out = invoke(["sweep", "--cycle", "1,1", "--path", "0.5+1i;1+2i",
                        "--format", "csv"], session)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "frame,cycle,t_re,t_im,eig_index,re,im,residual"
    assert len(lines) == 1 + 6 * 3  # reference frame + two path frames
    assert lines[1].startswith("-1,1,1,")


def test_sweep_json_deterministic(session):
    args = ["sweep", "--cycle", "2,2", "--path", "1+2i", "--format", "json"]
    _, first = invoke(args, session)
    _, second = invoke(args, session)
    assert first == second


def test_usage_errors_exit_2(session, capsys):
    for args in (["discriminant"],                      # missing required --cycle
                 ["spectrum", "--t", "abc"],            # malformed complex
                 ["spectrum", "--t", "1+2i"],           # nonzero t without cycle
                 ["classify", "--cycle", "9,9"],        # no such diagram
                 ["classify", "--cycle", "1,0"],        # not a bulk cycle
                 ["gw-table", "--max-degree", "0"],
                 ["nonsense"]):
        with pytest.raises(SystemExit) as exc:
            run(args, session=session, stdout=io.StringIO())
        assert exc.value.code == 2, args
        capsys.readouterr()


def test_computation_errors_exit_3(capsys):
    class FailingSession:
        def table(self, *a, **k):
            raise WDVVSolveError("synthetic failure")

    code = run(["gw-table", "--max-degree", "2"], session=FailingSession(),
               stdout=io.StringIO())
    assert code == 3
    assert "computation error" in capsys.readouterr().err


def test_serve_port_env_override(session, monkeypatch):
    captured = {}

    def fake_serve(host, port, session, static_dir):
        captured.update(host=host, port=port)

    monkeypatch.setattr("bigqh.service.serve", fake_serve)
    monkeypatch.setenv("DUBROVIN_PORT", "4321")
    code = run(["serve", "--port", "1234"], session=session, stdout=io.StringIO())
    assert code == 0
    assert captured["port"] == 4321  # env var overrides the flag

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from sct import nsym, operad
from sct.cli import main
from sct.operad import TreeSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.rstrip("\n"), out.err


@pytest.mark.parametrize("argv,expected", [
    (["series", "--name", "kappa", "--weight", "2"], "S[0] + S[1,0,0] + S[2,0,0,0] - S[1,1,0,0,0]"),
    (["nsym", "--what", "K", "--degree", "4", "--basis", "R"], "-(R[1,3] + 2R[1,2,1] + 3R[1,1,2] + 5R[1,1,1,1])"),
    (["nsym", "--what", "g", "--degree", "3"], "S[3] + 2S[2,1] + S[1,2] + S[1,1,1]"),
    (["nsym", "--what", "s-in-K", "--degree", "3"], "K[3] + 2K[2,1] + K[1,2] + K[1,1,1]"),
    (["enumerate", "--kind", "prime", "--weight", "0"], "0"),
    (["enumerate", "--kind", "prime", "--weight", "2"], "1,1,0,0,0\n2,0,0,0"),
    (["cumulant", "--n", "2", "--mode", "bimodule"], "φ(a1a2) - φ(a1)φ(a2)"),
    (["cumulant", "--n", "2", "--mode", "speicher"], "-m[a1]m[a2] + m[a1a2]"),
    (["classical", "--n", "2"], "k1 = m1\nk2 = -m1^2 + m2"),
    (["classical", "--n", "3", "--what", "estar-formula"], "-e3* = e[3] + e[2,1]"),
    (["partition", "--op", "kreweras", "1,3,4|2|5,7|6|8"], "1,2|3|4,7,8|5,6"),
    (["partition", "--op", "moebius", "1,2,3"], "2"),
    (["partition", "--op", "moebius", "1|2|3", "1,2|3"], "-1"),
])
def test_text_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_format_flag_position(capsys):
    _, before, _ = run(capsys, "--format", "json", "series", "--name", "fc", "--weight", "1")
    _, after, _ = run(capsys, "series", "--name", "fc", "--weight", "1", "--format", "json")
    assert json.loads(before) == json.loads(after)


def test_json_envelope_and_round_trip(capsys):
    code, out, _ = run(capsys, "series", "--name", "gc", "--weight", "3", "--format", "json")
    env = json.loads(out)
    assert code == 0 and set(env) == {"command", "params", "result", "version"}
    res = env["result"]
    rebuilt = TreeSeries(res["weight"], {tuple(t["tree"]): t["num"] for t in res["terms"]})
    assert str(rebuilt) == res["text"] == str(operad.g_c(3))


def test_nsym_json_round_trip(capsys):
    _, out, _ = run(capsys, "nsym", "--what", "K", "--degree", "4", "--basis", "L", "--format", "json")
    res = json.loads(out)["result"]
    rebuilt = nsym.NSymElement({tuple(t["index"]): t["num"] for t in res["terms"]}, res["basis"])
    assert str(rebuilt) == res["text"]


def test_weight_cap(capsys, monkeypatch):
    monkeypatch.delenv("SCT_MAX_WEIGHT", raising=False)
    code, _, err = run(capsys, "series", "--name", "fc", "--weight", "11")
    assert code == 2 and "cap 10" in err
    monkeypatch.setenv("SCT_MAX_WEIGHT", "3")
    code, _, err = run(capsys, "enumerate", "--weight", "4")
    assert code == 2 and "cap 3" in err
    code, _, _ = run(capsys, "enumerate", "--weight", "4", "--max-weight", "4")
    assert code == 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["series", "--name", "kappa", "--weight", "2", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "partition", "--op", "kreweras", "1,3|2,4")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "classical", "--n", "1", "--what", "estar-formula")
    assert code == 2


def test_verify_reports_counts(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "classical", "--weight", "4")
    assert code == 0
    assert out.splitlines()[-1].endswith("passed, 0 failed")


def test_verify_failure_exit_code(capsys, monkeypatch):
    from sct import verify

    monkeypatch.setitem(verify.SUITES, "counting", lambda w: [verify.Check("broken", False)])
    code, out, _ = run(capsys, "verify", "--suite", "counting", "--weight", "2")
    assert code == 1 and "FAIL broken" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sct", "series", "--name", "kappa", "--weight", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "S[0] + S[1,0,0]"

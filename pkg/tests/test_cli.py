import io
import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftkernel.bessel import bessel_k
from shiftkernel.cli import (
    UsageError,
    emit_report,
    format_reports,
    parse_complex,
    parse_grid,
    report_from_dict,
    report_to_dict,
    run,
)
from shiftkernel.identities import make_report


def call(argv):
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("text,value", [
    ("1", 1), ("-2.5", -2.5), ("0+1i", 1j), ("1.5-2i", 1.5 - 2j), ("3i", 3j), ("-i", -1j), ("i", 1j),
    ("1e-3+2e2i", 1e-3 + 200j), ("2+i", 2 + 1j), (" 4-0.5j ", 4 - 0.5j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1+", "abc", "1+2", "i1", "--1"])
def test_parse_complex_rejects(text):
    with pytest.raises(UsageError):
        parse_complex(text)


@settings(max_examples=50)
@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_parse_complex_roundtrip(a, b):
    text = f"{a!r}{'+' if b >= 0 else '-'}{abs(b)!r}i"
    assert parse_complex(text) == complex(a, b)


def test_parse_grid():
    assert parse_grid("u=0.5:2:0.5") == ("u", [0.5, 1.0, 1.5, 2.0])
    assert parse_grid("rho=0.1:0.3:0.1") == ("rho", [0.1, 0.2, 0.3])
    assert parse_grid("n=2") == ("n", [2.0])
    for bad in ("u", "u=1:0:0.5", "u=0:1:0", "u=0:1", "u=a:b:c"):
        with pytest.raises(UsageError):
            parse_grid(bad)


def test_eval_besselk():
    code, out = call(["eval", "--fn", "besselk", "--nu", "0+1i", "--x", "1.0"])
    rec = json.loads(out)
    assert code == 0 and rec["value"] == [bessel_k(1j, 1.0).real, 0.0] and rec["error_estimate"] >= 0


@pytest.mark.parametrize("argv", [
    ["eval", "--fn", "gamma", "--z", "5"],
    ["eval", "--fn", "tricomiu", "--a", "1", "--b", "2", "--z", "2"],
    ["eval", "--fn", "legendrep", "--nu", "1", "--mu", "-1", "--x", "2"],
    ["eval", "--fn", "hyp2f1", "--a", "1", "--b", "1", "--c", "2", "--z", "-1"],
    ["eval", "--fn", "gegenbauer", "--k", "1", "--rho", "1", "--x", "0.5"],
    ["eval", "--fn", "hankel1", "--nu", "0.5", "--x", "1", "--format", "csv"],
    ["eval", "--fn", "parabolicd", "--nu", "0", "--z", "2", "--format", "plotdata"],
])
def test_eval_functions(argv):
    code, out = call(argv)
    assert code == 0 and out


def test_eval_missing_parameter_is_usage_error():
    assert call(["eval", "--fn", "besselk", "--nu", "1"])[0] == 2


def test_eval_bad_complex_is_usage_error():
    assert call(["eval", "--fn", "besselk", "--nu", "1+", "--x", "1"])[0] == 2


def test_eval_domain_error_exit_1():
    assert call(["eval", "--fn", "besselk", "--nu", "1", "--x", "-1"])[0] == 1


def test_kernel_all_methods():
    code, out = call(["kernel", "--u", "1", "--n", "2", "--k0", "0", "--sigma", "0", "--sigma-hat", "0",
                      "--method", "all"])
    rec = json.loads(out)
    assert code == 0
    assert [v["method"] for v in rec["values"]] == ["integral", "series", "closed"]
    assert len(rec["ratios"]) == 3
    for q in rec["ratios"]:
        assert abs(complex(*q["ratio"]) - 1) < 1e-9


def test_kernel_without_closed_form_still_succeeds():
    code, out = call(["kernel", "--u", "1", "--n", "2", "--k0", "1", "--sigma", "0.3", "--sigma-hat", "0.3"])
    rec = json.loads(out)
    assert code == 0 and rec["values"][2]["value"] is None


def test_verify_thm2_json():
    code, out = call(["verify", "--suite", "thm2", "--format", "json"])
    data = json.loads(out)
    assert isinstance(data, list) and len(data) == 3
    assert set(data[0]) == {"identity_id", "params", "lhs", "rhs", "abs_diff", "rel_diff", "ratio", "status", "notes"}
    # the series diverges, so the suite fails
    assert code == 1 and {d["status"] for d in data} == {"diverged"}


def test_verify_passing_suite_exit_0():
    assert call(["verify", "--suite", "c1"])[0] == 0


def test_verify_unknown_suite():
    assert call(["verify", "--suite", "nope"])[0] == 2


def test_single_report_json():
    r = make_report("c1", {"u": 1.0}, 1.0, 1.0, 1e-9)
    data = json.loads(format_reports([r], "json"))
    assert len(data) == 1 and data[0]["status"] == "match"


def test_csv_sorted_by_u():
    reps = [make_report("c1", {"u": u}, 1.0, 1.0, 1e-9) for u in (2.0, 0.5, 1.0)]
    lines = format_reports(reps, "csv").splitlines()
    assert lines[0].startswith("identity_id,param_u,lhs_re")
    assert [ln.split(",")[1] for ln in lines[1:]] == ["0.5", "1.0", "2.0"]


def test_plotdata_columns():
    reps = [make_report("c1", {"u": u}, 1.0 + u * 1e-3, 1.0, 1e-9) for u in (1.0, 0.5)]
    rows = [ln.split() for ln in format_reports(reps, "plotdata").splitlines() if not ln.startswith("#")]
    assert [float(r[0]) for r in rows] == [0.5, 1.0]
    assert abs(float(rows[0][1]) - 0.5e-3) < 1e-15


def test_json_roundtrip():
    reps = [make_report("x", {"sigma": 0.3 - 1j, "n": 2, "theorem": "T3"}, 1 + 2j, 3 - 1j, 1e-9, notes="a; b"),
            make_report("y", {"u": 1.0}, 0, 0, 1e-9)]
    back = [report_from_dict(d) for d in json.loads(format_reports(reps, "json"))]
    assert sorted(back, key=lambda r: r.identity_id) == reps


def test_report_from_dict_checks_fields():
    d = report_to_dict(make_report("x", {}, 1, 1, 1e-9))
    d["extra"] = 1
    with pytest.raises(ValueError):
        report_from_dict(d)


def test_emit_to_file_and_report_command(tmp_path):
    path = tmp_path / "r.json"
    assert run(["verify", "--suite", "c1", "--output", str(path)]) == 0
    code, out = call(["report", "--input", str(path), "--format", "csv"])
    assert code == 0 and out.count("\n") == 5
    code, out = call(["report", "--input", str(path)])
    assert out == path.read_text()


def test_report_bad_file_is_usage_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    assert call(["report", "--input", str(path)])[0] == 2


def test_io_failure_leaves_no_output(tmp_path):
    target = tmp_path / "missing" / "out.json"
    r = make_report("x", {}, 1, 1, 1e-9)
    assert emit_report([r], "json", str(target)) == 1
    assert not target.exists()


def test_io_failure_removes_partial_file(tmp_path, monkeypatch):
    target = tmp_path / "out.json"
    real_replace = os.replace

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    assert emit_report([make_report("x", {}, 1, 1, 1e-9)], "json", str(target)) == 1
    monkeypatch.setattr(os, "replace", real_replace)
    assert list(tmp_path.iterdir()) == []


def test_emit_requires_reports():
    with pytest.raises(ValueError):
        emit_report([], "json")


def test_grid_product_sweep():
    code, out = call(["grid", "--identity", "product", "--set", "theorem=T7", "--param", "u=0.5:2:0.5",
                      "--set", "rho=1", "--set", "rho_hat=2", "--format", "plotdata"])
    rows = [ln.split() for ln in out.splitlines() if not ln.startswith("#")]
    assert code == 0 and len(rows) == 4 and {r[-1] for r in rows} == {"constant-ratio"}


def test_grid_repeated_complex_values():
    code, out = call(["grid", "--identity", "hankel", "--set", "eta=0", "--set", "nu=0.5",
                      "--set", "nu=1+1i", "--param", "u=1:2:1"])
    assert code == 0 and len(json.loads(out)) == 4


def test_grid_usage_errors():
    assert call(["grid", "--identity", "thm1", "--set", "n=2.5", "--set", "sigma=0", "--set", "u=1"])[0] == 2
    assert call(["grid", "--identity", "thm1", "--set", "n=2"])[0] == 2
    assert call(["grid", "--identity", "thm1", "--set", "q=2"])[0] == 2


def test_deterministic_output():
    argv = ["verify", "--suite", "hankel", "--format", "csv"]
    assert call(argv) == call(argv)


def test_tolerance_override():
    code, out = call(["eval", "--fn", "besselk", "--nu", "0.3", "--x", "2", "--rel-tol", "1e-6"])
    assert code == 0
    assert call(["eval", "--fn", "besselk", "--nu", "0.3", "--x", "2", "--rel-tol", "-1"])[0] == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "shiftkernel", "eval", "--fn", "gamma", "--z", "4"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["value"][0] == pytest.approx(6.0)
    p = subprocess.run([sys.executable, "-m", "shiftkernel"], capture_output=True, text=True)
    assert p.returncode == 2

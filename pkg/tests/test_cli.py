import json
import subprocess
import sys

import pytest

from curvelim import jsonio as J
from curvelim.cli import main, run
from curvelim.vessel import one_dim_fixture

CONIC = {"D0": [["1/1", "0/1"], ["0/1", "1/1"]], "D1": [["1/1", "0/1"], ["0/1", "-1/1"]],
         "D2": [["0/1", "1/1"], ["1/1", "0/1"]]}


def term(exp, c):
    return {"exp": exp, "coeff": c}


def job(tmp_path, argv, data, name="job.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return run(argv + ["--input", str(path)])


def test_bezout(tmp_path):
    code, rep = job(tmp_path, ["bezout"], {"p": ["-1", "0", "1"], "q": ["0", "-1", "1"], "n": 2})
    assert code == 0
    assert rep["result"]["matrix"] == [["-1/1", "1/1"], ["1/1", "-1/1"]]
    assert rep["result"]["kernel_dim"] == 1


def test_resultant_and_image_line(tmp_path):
    code, rep = job(tmp_path, ["resultant"], {"p": ["-1", "0", "1"], "q": ["-4", "0", "1"]})
    assert code == 0 and rep["result"]["resultant"] == "9/1" and rep["result"]["abs_equal"]
    code, rep = job(tmp_path, ["image-line"], {"p0": ["1"], "p1": ["0", "1"], "p2": ["0", "0", "1"],
                                               "n": 2})
    assert code == 0
    poly = J.decode_poly(rep["result"]["polynomial"], 2)
    assert poly.degree() == 2


def test_curve_commands(tmp_path):
    x = {"x0": [1, 0, 0], "x1": [0, 1, 0], "x2": [0, 0, 1]}
    ident = {"detrep": CONIC, "n": 1, **{f"p{k}": [term(x[f"x{k}"], "1")] for k in range(3)}}
    code, rep = job(tmp_path, ["curve", "image", "--samples", "6"], ident)
    assert code == 0
    want = [term([2, 0, 0], "1/1"), term([0, 2, 0], "-1/1"), term([0, 0, 2], "-1/1")]
    assert J.decode_poly(rep["result"]["polynomial"], 3) == J.decode_poly(want, 3)
    code, rep = job(tmp_path, ["curve", "vn"], {"detrep": CONIC, "n": 3})
    assert code == 0 and rep["result"]["dim"] == 6
    pq = {"detrep": CONIC, "n": 1, "p": [term([0, 1, 0], "1")],
          "q": [term([1, 0, 0], "1"), term([0, 0, 1], "-1")]}
    code, rep = job(tmp_path, ["curve", "bezout"], pq)
    assert code == 0 and rep["result"]["reduced"] == [["-1/1", "1/1"], ["1/1", "-1/1"]]
    code, rep = job(tmp_path, ["curve", "common-zeros", "--samples", "6"], pq)
    assert code == 0 and rep["result"]["count"] == 1


def test_vessel_commands(tmp_path):
    V = {"vessel": J.encode_vessel(one_dim_fixture())}
    code, rep = job(tmp_path, ["vessel", "check"], V)
    assert code == 0 and rep["result"]["ok"]
    code, rep = job(tmp_path, ["vessel", "discriminant"], V)
    assert code == 0 and rep["result"]["in_equals_out"]
    parabola = {"p0": [term([0, 0], "1")], "p1": [term([1, 0], "1")],
                "p2": [term([2, 0], "1")], "n": 2}
    for cmd in ("transform", "reduce", "verify-theorems"):
        code, rep = job(tmp_path, ["vessel", cmd, "--samples", "5"], {**V, "map": parabola})
        assert code == 0, rep
    assert rep["result"]["ok"]


def test_perturbed_vessel_exits_3(tmp_path):
    V = J.encode_vessel(one_dim_fixture())
    V["gamma_in"] = [["2001/1000"]]
    code, rep = job(tmp_path, ["vessel", "check"], {"vessel": V})
    assert code == 3
    assert "gamma_in" in rep["error"] and rep["result"]["failing"] == ["gamma_in", "linkage"]


def test_input_errors_exit_2(tmp_path):
    code, rep = job(tmp_path, ["bezout"], "{not json")
    assert code == 2 and "line 1" in rep["error"]
    code, rep = job(tmp_path, ["bezout"], {"p": ["1/0"], "q": ["1"]})
    assert code == 2 and "$.p[0]" in rep["error"]
    code, rep = job(tmp_path, ["curve", "vn"], {"detrep": {"D0": [["1"]], "D1": [["1"]]}, "n": 1})
    assert code == 2 and "D2" in rep["error"]
    code, rep = run(["bezout", "--input", str(tmp_path / "missing.json")])
    assert code == 2


def test_printed_sigma_order_exits_3(tmp_path):
    from curvelim.vessel import vessel_fixture
    from curvelim.exact import I
    V = {"vessel": J.encode_vessel(vessel_fixture((1, 2, 3), (2, -1, 5), (2 * I, 1, 0)))}
    ident = {"p0": [term([0, 0], "1")], "p1": [term([1, 0], "1")], "p2": [term([0, 1], "1")],
             "n": 1}
    code, _ = job(tmp_path, ["vessel", "transform"], {**V, "map": ident})
    assert code == 0
    code, rep = job(tmp_path, ["vessel", "transform"], {**V, "map": ident, "sigma_order": "printed"})
    assert code == 3


@pytest.mark.parametrize("spec", [
    {"kind": "conic"},
    {"kind": "detrep", "m": 3},
    {"kind": "detrep-through-points", "m": 2, "points": [{"x": [5, 3, 4], "e": [1, 2]}]},
    {"kind": "planted-pair", "n": 2, "points": [[1, 2, -1]]},
    {"kind": "vessel-1d"},
    {"kind": "vessel", "diag1": [1, 2, 3], "diag2": [2, -1, 5],
     "coupling": [{"re": "0/1", "im": "2/1"}, "1", "0"]},
    {"kind": "prescribed-vessel", "m": 2, "points": [[{"re": "0/1", "im": "1/1"},
                                                       {"re": "1/1", "im": "1/1"}]],
     "phis": [[1, 0]], "basepoints": [{"y": [1, -1], "e": [1, 1]}]},
])
def test_fixtures_are_deterministic_and_round_trip(tmp_path, spec):
    code, rep = job(tmp_path, ["fixtures", "gen", "--seed", "7"], spec)
    assert code == 0, rep
    text = J.dumps(rep)
    assert json.loads(text) == rep
    code2, rep2 = job(tmp_path, ["fixtures", "gen", "--seed", "7"], spec, "again.json")
    assert J.dumps(rep2) == text


def test_main_writes_output_file(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"p": ["-1", "0", "1"], "q": ["-4", "0", "1"]}))
    out = tmp_path / "out.json"
    assert main(["resultant", "--input", str(src), "--output", str(out)]) == 0
    first = out.read_text()
    main(["resultant", "--input", str(src), "--output", str(out)])
    assert out.read_text() == first
    assert json.loads(first)["result"]["resultant"] == "9/1"


def test_module_entry_point(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"p": ["-1", "0", "1"], "q": ["0", "-1", "1"], "n": 2}))
    proc = subprocess.run([sys.executable, "-m", "curvelim", "bezout", "--input", str(src)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["kernel_dim"] == 1

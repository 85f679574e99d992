import json
import os
import subprocess
import sys

from latticeopt import jsonio as J
from latticeopt.cli import main

PLANE = {"P": [[1, 0], [0, 1]], "A": [[1, 1], [1, 0], [0, 1]], "b": [1, 0, 0]}
STRIPS = {
    "cone": {"rays": [[0, 1]]},
    "sets": [{"points": [[-1, 0], [0, 0]]}, {"points": [["-1/2", 0], ["1/2", 0]]}, {"points": [[0, 0], [1, 0]]}],
}
MARKET = {
    "d": 2,
    "K0": {"orthant": 2},
    "M": [[1, 0], [0, 1]],
    "scenarios": [{"p": "1/2", "KT": {"orthant": 2}}, {"p": "0.5", "KT": {"orthant": 2}}],
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lvo_solve_and_verify(tmp_path, capsys):
    prob = write(tmp_path, "plane.json", PLANE)
    code, out, _ = run(capsys, "lvo", "solve", prob)
    assert code == 0
    doc = J.loads(out)
    assert sorted(doc["primal"]["images"]) == [["0/1", "1/1"], ["1/1", "0/1"]]
    assert doc["certificate"] == {"weak_duality": True, "strong_duality": True}
    sol = write(tmp_path, "sol.json", doc)
    code, out, _ = run(capsys, "lvo", "verify", sol, sol)
    assert code == 0 and J.loads(out)["ok"] is True


def test_verify_rejects_a_wrong_point(tmp_path, capsys):
    code, out, _ = run(capsys, "lvo", "solve", write(tmp_path, "plane.json", PLANE))
    doc = J.loads(out)
    doc["primal"]["points"] = [["1/1", "1/1"]]
    bad = write(tmp_path, "bad.json", doc)
    code, out, _ = run(capsys, "lvo", "verify", bad, bad)
    assert code == 1 and J.loads(out)["minimizers"] is False


def test_output_is_deterministic(tmp_path, capsys):
    prob = write(tmp_path, "plane.json", PLANE)
    outs = [run(capsys, "lvo", "solve", prob, "--eps", "0")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    # re-parsing and re-emitting gives the same bytes
    assert J.dumps(J.loads(outs[0])) == outs[0]


def test_lattice_infimum_of_strips(tmp_path, capsys):
    fam = write(tmp_path, "fam.json", STRIPS)
    code, out, _ = run(capsys, "lattice", "inf", fam)
    assert code == 0
    doc = J.loads(out)
    got = J.upper_from_json(doc)
    ineqs = {(tuple(a), b) for a, b in got.hrep.ineqs}
    assert ineqs == {((1, 0), -1), ((-1, 0), -1), ((0, 1), 0)}


def test_lattice_other_operations(tmp_path, capsys):
    fam = write(tmp_path, "fam.json", STRIPS)
    for op in ("sup", "sum"):
        assert run(capsys, "lattice", op, fam)[0] == 0
    # weak minimality needs an interior, which the vertical ray lacks
    code, out, _ = run(capsys, "lattice", "wmin", fam)
    assert code == 1 and J.loads(out)["error"]["type"] == "ValueError"
    two = write(tmp_path, "two.json", {"cone": {"orthant": 2}, "sets": [{"points": [[0, 0]]}, {"points": [[1, 1]]}]})
    code, out, _ = run(capsys, "lattice", "relation", two)
    assert code == 0 and J.loads(out) == {"le_curly": True, "le_curlyeq": True}
    code, out, _ = run(capsys, "lattice", "residual", two)
    assert J.upper_from_json(J.loads(out)).vrep.points == ((-1, -1),)
    code, out, _ = run(capsys, "lattice", "wmin", two)
    assert code == 0 and [w["marker"] for w in J.loads(out)["wmin"]] == [None, None]


def test_calculus_commands(tmp_path, capsys):
    f = {"n": 1, "q": 1, "cone": {"orthant": 1}, "graph": {"ineqs": [{"a": [-1, 1], "b": 0}, {"a": [2, 1], "b": 0}]}}
    path = write(tmp_path, "f.json", f)
    code, out, _ = run(capsys, "calculus", "support", path, "--zstar", "1", "--x", "3")
    assert code == 0 and J.loads(out) == {"value": "3/1"}
    code, out, _ = run(capsys, "calculus", "subdiff", path, "--zstar", "1", "--x", "0", "--xstar", "1/2")
    assert J.loads(out) == {"member": True}
    code, out, _ = run(capsys, "calculus", "dirderiv", path, "--zstar", "1", "--x", "0", "--dir", "-1")
    assert J.upper_from_json(J.loads(out)).vrep.points == ((2,),)
    code, out, _ = run(capsys, "calculus", "conjugate", path, "--zstar", "1", "--xstar", "1")
    assert J.upper_from_json(J.loads(out)).vrep.points == ((0,),)


def test_risk_commands(tmp_path, capsys):
    mk = write(tmp_path, "market.json", MARKET)
    zero = write(tmp_path, "zero.json", {"X": [[0, 0], [0, 0]]})
    code, out, _ = run(capsys, "risk", "solve", mk, zero)
    assert code == 0
    rs = J.upper_from_json(J.loads(out)["risk_set"])
    assert rs.vrep.points == ((0, 0),)
    x = write(tmp_path, "x.json", [[1, -2], [-3, 1]])
    code, out, _ = run(capsys, "risk", "verify", mk, x)
    assert code == 0
    assert J.loads(out) == {"cross_route": True, "dual_representation": True, "market_compatible": True, "ok": True}


def test_report_files(tmp_path, capsys):
    prob = write(tmp_path, "plane.json", PLANE)
    rep = tmp_path / "rep"
    code, out, _ = run(capsys, "--report", str(rep), "lvo", "solve", prob)
    assert code == 0
    names = set(J.loads(out)["report"])
    for stem in ("upper_image", "geometric_dual"):
        for suffix in ("_vertices.csv", "_facets.csv", ".off", ".png"):
            assert stem + suffix in names
            assert (rep / (stem + suffix)).stat().st_size > 0
    assert "# lossy: true" in (rep / "upper_image.off").read_text()
    # the flag is also accepted after the subcommand
    code, out, _ = run(capsys, "lvo", "solve", prob, "--report", str(tmp_path / "r2"))
    assert code == 0 and (tmp_path / "r2" / "upper_image.png").exists()


def test_csv_and_off_formats(tmp_path, capsys):
    prob = write(tmp_path, "plane.json", PLANE)
    code, out, _ = run(capsys, "--format", "csv", "lvo", "solve", prob)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a1,a2,b" and "1/1,1/1,1/1" in lines
    code, out, _ = run(capsys, "lvo", "solve", prob, "--format", "off")
    assert code == 0 and out.startswith("OFF\n# lossy: true")
    target = tmp_path / "o.json"
    assert run(capsys, "lvo", "solve", prob, "--out", str(target))[0] == 0
    assert J.loads(target.read_text())["iterations"] >= 0


def test_exit_codes(tmp_path, capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    prob = write(tmp_path, "plane.json", PLANE)
    assert run(capsys, "lvo", "solve", prob, "--eps", "-1")[0] == 2
    code, out, _ = run(capsys, "lvo", "solve", prob, "--eps", "abc")
    assert code == 1 and J.loads(out)["error"]["type"] == "FormatError"
    bad = write(tmp_path, "bad.json", {"P": [[1, 0], [0, 1]], "A": [[1]], "b": [0]})
    code, out, _ = run(capsys, "lvo", "solve", bad)
    assert code == 1 and J.loads(out)["error"]["type"] == "DimensionError"
    infeasible = write(tmp_path, "inf.json", {"P": [[1], [0]], "A": [[1], [-1]], "b": [1, 0]})
    code, out, _ = run(capsys, "lvo", "solve", infeasible)
    assert code == 1 and J.loads(out)["error"]["type"] == "InfeasibleProblem"
    code, out, _ = run(capsys, "lvo", "solve", str(tmp_path / "missing.json"))
    assert code == 1
    mk = write(tmp_path, "market.json", MARKET)
    assert run(capsys, "--format", "csv", "risk", "verify", mk, mk)[0] == 1


def test_module_entry_point(tmp_path):
    prob = write(tmp_path, "plane.json", PLANE)
    env = dict(os.environ, LATTICEOPT_LOG="debug")
    res = subprocess.run([sys.executable, "-m", "latticeopt", "lvo", "solve", prob],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert J.loads(res.stdout)["iterations"] >= 0
    assert "DEBUG" in res.stderr

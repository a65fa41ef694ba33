import json
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from msbc import CaseKind, Instance, classify
from msbc.cli import BENCH_HEADER, CASES, generate, main, pick_case, sort_demo

E1 = Instance(1, 10, (1, 2, 3, 8, 9))
E3 = Instance(1, 4, (1, 6, 8))


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_e1(capsys, write):
    path = write("e1.json", E1.to_json())
    code, out, _ = run(capsys, "solve", "--input", path, "--verify")
    assert code == 0
    data = json.loads(out)
    assert data["cost"] == "4" and data["case"] == "Containing"
    assert data["y"] == ["1", "3", "5", "7", "9"]


def test_solve_to_file(capsys, write, tmp_path):
    path = write("e1.json", E1.to_json())
    dest = tmp_path / "sol.json"
    assert run(capsys, "solve", "--input", path, "--output", str(dest))[0] == 0
    assert json.loads(dest.read_text())["cost"] == "4"


def test_exit_codes(capsys, write):
    bad = write("bad.json", json.dumps({"z": "1", "beta": "12", "x": ["1", "2", "3"]}))
    code, _, err = run(capsys, "solve", "--input", bad)
    assert code == 2 and "infeasible" in err
    junk = write("junk.json", "{not json")
    assert run(capsys, "solve", "--input", junk)[0] == 1
    missing = write("missing.json", json.dumps({"z": "1", "beta": "2"}))
    assert run(capsys, "solve", "--input", missing)[0] == 1
    unsorted = write("u.json", json.dumps({"z": "1", "beta": "2", "x": ["3", "1"]}))
    assert run(capsys, "solve", "--input", unsorted)[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["solve", "--no-such-flag"])
    assert e.value.code == 1


def test_dump_d_series(capsys, write, tmp_path):
    path = write("e3.json", E3.to_json())
    code, out, _ = run(capsys, "solve", "--input", path, "--dump-d-series")
    assert code == 0
    series = json.loads(out)["d_series"].splitlines()
    assert series[0] == "j,D,Dc,Ds"
    assert series[1] == "1,inf,inf,inf" and series[2] == "2,3,2,1"
    csv = tmp_path / "d.csv"
    assert run(capsys, "solve", "--input", path, "--dump-d-series", str(csv))[0] == 0
    assert csv.read_text().splitlines()[2] == "2,3,2,1"
    # other cases have no series; the solve still succeeds
    e1 = write("e1.json", E1.to_json())
    code, _, err = run(capsys, "solve", "--input", e1, "--dump-d-series")
    assert code == 0 and "no D(j) series" in err


def test_verify(capsys, write):
    path = write("e1.json", E1.to_json())
    code, out, _ = run(capsys, "verify", "--input", path)
    assert code == 0 and json.loads(out)["optimal"]
    good = write("good.json", json.dumps({"y": ["1", "3", "5", "7", "9"], "cost": "4"}))
    assert run(capsys, "verify", "--input", path, "--solution", good)[0] == 0
    holes = write("holes.json", json.dumps({"y": ["1", "2", "3", "8", "9"]}))
    code, out, _ = run(capsys, "verify", "--input", path, "--solution", holes)
    assert code == 3 and not json.loads(out)["covers"]
    wasteful = write("w.json", json.dumps({"y": ["1", "3", "5", "7", "9"], "cost": "5"}))
    assert run(capsys, "verify", "--input", path, "--solution", wasteful)[0] == 3
    e3 = write("e3.json", E3.to_json())
    suboptimal = write("s.json", json.dumps(["1", "3", "6"]))
    code, out, _ = run(capsys, "verify", "--input", e3, "--solution", suboptimal)
    assert code == 3 and json.loads(out)["optimal"] is False
    assert run(capsys, "verify", "--input", path, "--solution", path + ".none")[0] == 1


def test_oracle_command(capsys, write):
    path = write("e3.json", E3.to_json())
    code, out, _ = run(capsys, "oracle", "--input", path)
    assert code == 0 and json.loads(out)["cost"] == "3"
    big = write("big.json", Instance(1, 2, tuple(range(11))).to_json())
    assert run(capsys, "oracle", "--input", big)[0] == 1


def test_gen_is_deterministic_and_on_case(capsys):
    for case in CASES:
        a = run(capsys, "gen", "--n", "40", "--seed", "3", "--case", case)[1]
        b = run(capsys, "gen", "--n", "40", "--seed", "3", "--case", case)[1]
        assert a == b
        inst = Instance.from_json(a)
        want = {"containing": {CaseKind.Containing},
                "one_sided": {CaseKind.OneSidedLeft, CaseKind.OneSidedRight},
                "general": {CaseKind.General},
                "all_outside": {CaseKind.AllOutside}}[case]
        assert classify(inst) in want
    assert run(capsys, "gen", "--seed", "3")[0] == 1
    assert run(capsys, "gen", "--n", "1", "--case", "general")[0] == 1


def test_generate_many_seeds():
    for seed in range(40):
        for case in CASES:
            n = 3 + seed % 9
            assert generate(case, n, seed) == generate(case, n, seed)
            assert classify(generate(case, n, seed)) is not CaseKind.InfeasibleCase
        assert pick_case(seed, 100) == pick_case(seed, 5000)


def test_bench(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--n", "16,32", "--repeat", "2", "--case", "general")
    lines = out.splitlines()
    assert code == 0 and lines[0] == BENCH_HEADER and len(lines) == 5
    assert [int(r.split(",")[0]) for r in lines[1:]] == [16, 32, 16, 32]
    dest = tmp_path / "b.csv"
    for _ in range(2):
        assert run(capsys, "bench", "--n", "16", "--output", str(dest))[0] == 0
    rows = dest.read_text().splitlines()
    assert rows[0] == BENCH_HEADER and rows.count(BENCH_HEADER) == 1 and len(rows) == 3


def test_sort_demo_examples(capsys, write):
    assert sort_demo(["3", "1", "2"]) == ["1", "2", "3"]
    code, out, _ = run(capsys, "sort-demo", "7", "7", "7")
    assert code == 0 and out.split() == ["7", "7", "7"]
    code, out, _ = run(capsys, "sort-demo", "0.5", "-2", "1/3", "10")
    assert out.split() == ["-2", "1/3", "0.5", "10"]
    nums = write("nums.txt", "5, 4\n9 1")
    assert run(capsys, "sort-demo", "--input", nums)[1].split() == ["1", "4", "5", "9"]
    assert run(capsys, "sort-demo", "3", "x")[0] == 1
    assert sort_demo([]) == []


def test_sort_demo_permutations():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 60)
        vals = [F(rng.randint(-500, 500), rng.choice([1, 2, 3, 7])) for _ in range(n)]
        if len(set(vals)) == 1:
            continue
        out = sort_demo(vals)
        assert out == sorted(vals)


def test_module_entry_point(write):
    path = write("e1.json", E1.to_json())
    proc = subprocess.run([sys.executable, "-m", "msbc", "solve", "--input", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["cost"] == "4"

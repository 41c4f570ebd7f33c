import json

import pytest

from lvrank.cli import main
from lvrank.graph import parse_edge_list


@pytest.fixture
def p3_file(tmp_path):
    f = tmp_path / "p3.txt"
    f.write_text("3 2\n0 1\n1 2\n")
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_rank_outputs_valid_json(capsys, p3_file):
    code, out = run(capsys, "rank", p3_file, "--ell", "2", "--seed", "3")
    obj = json.loads(out.out)
    assert code == 0 and obj["valid"] and len(obj["colours"]) == 3
    assert set(obj) >= {"n", "ell", "d", "delta", "k", "M", "b", "q", "colours", "palette_tags", "counts", "seed"}


def test_rank_bounded(capsys, p3_file):
    code, out = run(capsys, "rank", p3_file, "--delta", "2")
    assert code == 0 and json.loads(out.out)["delta"] == 2


def test_rank_deterministic(capsys, tmp_path):
    g = tmp_path / "g.txt"
    main(["gen", "random_d_degenerate", "--n", "120", "--d", "2", "--seed", "4", "--out", str(g)])
    _, a = run(capsys, "rank", str(g), "--ell", "3", "--seed", "1")
    _, b = run(capsys, "rank", str(g), "--ell", "3", "--seed", "1")
    assert a.out == b.out


def test_verify_valid_and_invalid(capsys, tmp_path, p3_file):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"colours": [1, 2, 1]}))
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1 2\n")
    assert run(capsys, "verify", p3_file, str(good))[0] == 0
    code, out = run(capsys, "verify", p3_file, str(bad), "--format", "json")
    assert code == 1
    assert json.loads(out.out)["violations"][0]["path"] == [0, 1, 2]


def test_verify_length_mismatch(capsys, tmp_path, p3_file):
    c = tmp_path / "c.json"
    c.write_text("[1, 2]")
    code, out = run(capsys, "verify", p3_file, str(c))
    assert code == 2 and "2 entries" in out.err


def test_ell_zero_is_usage_error(p3_file):
    with pytest.raises(SystemExit) as e:
        main(["rank", p3_file, "--ell", "0"])
    assert e.value.code == 2


def test_malformed_graph(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3 1\n0 x\n")
    code, out = run(capsys, "rank", str(f))
    assert code == 2 and "line 2" in out.err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "rank", str(tmp_path / "nope.txt"))[0] == 2


def test_exact(capsys, tmp_path):
    g = tmp_path / "q3.txt"
    main(["gen", "hypercube", "--n", "3", "--out", str(g)])
    code, out = run(capsys, "exact", str(g), "--ell", "2")
    assert code == 0 and json.loads(out.out)["value"] == 4
    code, out = run(capsys, "exact", str(g), "--ell", "2", "--method", "assign")
    assert code == 0 and json.loads(out.out)["value"] == 4
    code, out = run(capsys, "exact", str(g), "--ell", "3", "--budget", "3")
    assert code == 1 and json.loads(out.out)["value"] is None


def test_gen_power_paths(capsys, p3_file):
    code, out = run(capsys, "gen", "hypercube", "--n", "2")
    assert code == 0 and parse_edge_list(out.out).num_edges == 4
    code, out = run(capsys, "power", p3_file, "--ell", "2")
    assert parse_edge_list(out.out).num_edges == 3
    code, out = run(capsys, "paths", p3_file, "--ell", "2")
    assert out.out == "0 1\n0 1 2\n1 2\n"


def test_gen_bad_family_args(capsys):
    assert run(capsys, "gen", "random_d_degenerate_bounded_degree", "--n", "5", "--d", "3", "--delta", "1")[0] == 2


def test_bench_scaling_csv_and_json(capsys):
    code, out = run(capsys, "bench-scaling", "--n", "32", "64", "--ell", "2", "--trials", "2")
    lines = out.out.splitlines()
    assert code == 0 and lines[0].startswith("kind,family,n")
    assert len(lines) == 1 + 4 + 2
    code, out = run(capsys, "bench-scaling", "--n", "32", "--trials", "1", "--format", "json")
    obj = json.loads(out.out)
    assert len(obj["trials"]) == 1 and "wall_time" not in obj["trials"][0]


def test_bench_empty_grid(capsys):
    code, out = run(capsys, "bench-scaling")
    assert code == 0 and len(out.out.splitlines()) == 1


def test_bench_tail(capsys, tmp_path):
    dest = tmp_path / "tail.csv"
    code, _ = run(capsys, "bench-tail", "--n", "100", "--ell", "3", "--trials", "2", "--out", str(dest))
    assert code == 0 and len(dest.read_text().splitlines()) == 3

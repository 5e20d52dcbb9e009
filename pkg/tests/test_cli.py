import json

import pytest

from k3lat import serialize
from k3lat.cli import SCENARIOS, main
from k3lat.standard import hyperbolic_plane, k3_lattice


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_scenario_defect_table(capsys):
    code, out, _ = _run(capsys, ["scenario", "defect-table"])
    assert code == 0
    assert "PASS" in out and "failed: 0" in out


def test_scenario_dehn_twist_structured(capsys):
    code, out, _ = _run(capsys, ["--format", "structured",
                                 "scenario", "dehn-twist"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "k3lat/1"
    assert doc["kind"] == "scenario"
    assert doc["scenario"] == "dehn-twist"
    assert all(c["status"] == "pass" for c in doc["checks"])
    for c in doc["checks"]:
        assert set(c) >= {"name", "status", "expected", "computed", "anchor"}


def test_structured_output_is_deterministic(capsys):
    code1, out1, _ = _run(capsys, ["--format", "structured",
                                   "scenario", "defect-table"])
    code2, out2, _ = _run(capsys, ["--format", "structured",
                                   "scenario", "defect-table"])
    assert code1 == code2 == 0
    assert out1 == out2
    # a seed is accepted and must not change a single byte
    code3, out3, _ = _run(capsys, ["--format", "structured", "--seed", "99",
                                   "scenario", "defect-table"])
    assert code3 == 0 and out3 == out1


def test_unknown_scenario_fails_with_listing(capsys):
    code, _, err = _run(capsys, ["scenario", "bogus"])
    assert code == 2
    assert "unknown scenario" in err
    for name in SCENARIOS:
        assert name in err


def test_scenario_names_are_exactly_the_published_set():
    assert sorted(SCENARIOS) == sorted([
        "a4-example", "nikulin-involution",
        "nikulin-family-p2", "nikulin-family-p3",
        "nikulin-family-p5", "nikulin-family-p7",
        "defect-table", "dehn-twist", "genus-check",
        "model-prime-3", "model-prime-5", "model-prime-7",
    ])


def test_compute_defect(capsys):
    code, out, _ = _run(capsys, ["compute", "defect", "--p", "7", "--q", "6"])
    assert code == 0
    assert out.strip().splitlines()[-1] == "10"
    code, out, _ = _run(capsys, ["compute", "defect", "--p", "3", "--q", "1"])
    assert code == 0
    assert out.strip().splitlines()[-1] == "-2/3"


def test_compute_signature_and_disc(tmp_path, capsys):
    path = str(tmp_path / "k3.json")
    serialize.write_json_file(path, serialize.lattice_to_obj(k3_lattice()))
    code, out, _ = _run(capsys, ["compute", "signature", "--lattice", path])
    assert code == 0
    assert "3 19 0" in out
    code, out, _ = _run(capsys, ["compute", "disc", "--lattice", path])
    assert code == 0

    u2 = str(tmp_path / "u2.json")
    from k3lat.lattice import rescale
    serialize.write_json_file(
        u2, serialize.lattice_to_obj(rescale(hyperbolic_plane(), 2)))
    code, out, _ = _run(capsys, ["compute", "disc", "--lattice", u2])
    assert code == 0
    assert "2 2" in out


def test_parse_error_exits_2(tmp_path, capsys):
    path = str(tmp_path / "broken.json")
    with open(path, "w") as fh:
        fh.write('{"rank": 2,,}')
    code, _, err = _run(capsys, ["compute", "signature", "--lattice", path])
    assert code == 2
    assert "line" in err and "column" in err


def test_missing_file_exits_2(capsys):
    code, _, err = _run(capsys, ["compute", "signature", "--lattice", "/no/such.json"])
    assert code == 2
    assert "cannot read" in err


def test_decide_needs_group(capsys):
    code, _, err = _run(capsys, ["compute", "decide"])
    assert code == 2


def test_decide_need_isotypic_exits_2(tmp_path, capsys):
    # non-cyclic group without projector data
    from k3lat.groups import IsometryGroup
    from k3lat.standard import reflection
    k3 = k3_lattice()
    M = [[0] * 22 for _ in range(22)]
    M[0][2] = 1
    M[1][3] = 1
    M[2][0] = -1
    M[3][1] = -1
    for i in range(4, 22):
        M[i][i] = 1
    root = [0] * 22
    root[6] = 1
    G = IsometryGroup(k3, [M, reflection(k3.gram, root)])
    path = str(tmp_path / "grp.json")
    serialize.write_json_file(path, serialize.group_to_obj(G))
    code, _, err = _run(capsys, ["decide", "--group", path])
    assert code == 2
    assert "need-isotypic-data" in err


def test_example_emission_round_trip(tmp_path, capsys):
    out_dir = str(tmp_path)
    code, out, _ = _run(capsys, ["example", "nikulin-involution",
                                 "--out", out_dir])
    assert code == 0
    group_path = str(tmp_path / "nikulin-involution-group.json")
    code2, out2, _ = _run(capsys, ["decide", "--group", group_path])
    assert code2 == 0
    assert "yes" in out2


def test_bad_budget_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("K3R_BUDGET", "soon")
    code, _, err = _run(capsys, ["compute", "defect", "--p", "3", "--q", "1"])
    assert code == 2
    assert "K3R_BUDGET" in err

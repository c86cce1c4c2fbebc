import json
from random import Random

import pytest

from swaproute import TopologySpec, build, jsonio
from swaproute.circuits import random_layered_circuit
from swaproute.cli import run


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def p3(tmp_path):
    return write(tmp_path / "p3.json", {"format": 1, "n": 3, "edges": [[0, 1], [1, 2]]})


def read_json(path):
    return json.loads(path.read_text())


def test_topo_build_path4(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["topo", "build", "--kind", "path", "--n", "4", "--out", str(out)]) == 0
    doc = read_json(out)
    assert doc["format"] == 1
    assert doc["edges"] == [[0, 1], [1, 2], [2, 3]]
    assert doc["topology"] == {"kind": "path", "n": 4}


def test_topo_build_missing_param_is_usage_error(capsys):
    assert run(["topo", "build", "--kind", "path"]) == 2
    assert "error" in capsys.readouterr().err


def test_topo_build_invalid_brick_wall(capsys):
    code = run(["topo", "build", "--kind", "brick_wall",
                "--n1", "1", "--n2", "1", "--b1", "3", "--b2", "4"])
    assert code == 2
    assert "odd" in capsys.readouterr().err


def test_route_identity_gives_zero_rounds(tmp_path, p3):
    perm = write(tmp_path / "id.json", {"format": 1, "dest": [0, 1, 2]})
    out = tmp_path / "proto.json"
    assert run(["route", "--graph", p3, "--perm", perm, "--out", str(out)]) == 0
    assert read_json(out)["rounds"] == []


def test_route_reversal_round_trips_through_oracle(tmp_path, p3):
    perm = write(tmp_path / "rev.json", {"format": 1, "dest": [2, 1, 0]})
    out = tmp_path / "proto.json"
    assert run(["route", "--graph", p3, "--perm", perm, "--out", str(out)]) == 0
    assert len(read_json(out)["rounds"]) == 3


def test_oracle_rtmax_p3(tmp_path, p3):
    out = tmp_path / "rt.json"
    assert run(["oracle", "rtmax", "--graph", p3, "--out", str(out)]) == 0
    assert read_json(out)["rtmax"] == 3


def test_oracle_budget_refusal_exit_3(tmp_path, capsys):
    g = write(
        tmp_path / "p8.json",
        jsonio.graph_to_json(build(TopologySpec.make("path", n=8))) | {"format": 1},
    )
    assert run(["oracle", "rtmax", "--graph", g]) == 3
    assert "refused" in capsys.readouterr().err


def test_oracle_reduce_emits_circuit_and_alpha(tmp_path, p3):
    perm = write(tmp_path / "p.json", {"format": 1, "dest": [1, 2, 0]})
    out = tmp_path / "red.json"
    assert run(["oracle", "reduce", "--graph", p3, "--perm", perm, "-k", "4",
                "--out", str(out)]) == 0
    doc = read_json(out)
    assert doc["alpha"] == {"numerator": 2, "denominator": 1, "value": 2.0}
    assert len(doc["circuit"]["layers"]) == 2


def test_partition_cli(tmp_path, p3):
    out = tmp_path / "fams.json"
    assert run(["partition", "--graph", p3, "--out", str(out)]) == 0
    doc = read_json(out)
    assert doc["w"] == [[0, 1]]
    assert doc["wprime"] == [[1, 2]]


def test_compile_verify_pipeline(tmp_path, capsys):
    g = build(TopologySpec.make("grid", n1=2, n2=3))
    gp = write(tmp_path / "g.json", {"format": 1, **jsonio.graph_to_json(g)})
    c = random_layered_circuit(6, 4, Random(12))
    cp = write(tmp_path / "c.json", {"format": 1, **jsonio.circuit_to_json(c)})
    out = tmp_path / "res.json"
    for strategy in ("matching", "partition"):
        assert run(["compile", "--graph", gp, "--circuit", cp,
                    "--strategy", strategy, "--out", str(out)]) == 0
        err = capsys.readouterr().err
        assert "original_depth=" in err and "ratio=" in err and "bound=" in err
        assert run(["verify", "--original", cp, "--compiled", str(out),
                    "--graph", gp]) == 0


def test_verify_detects_tampering(tmp_path, capsys):
    g = build(TopologySpec.make("path", n=4))
    gp = write(tmp_path / "g.json", {"format": 1, **jsonio.graph_to_json(g)})
    c = random_layered_circuit(4, 3, Random(5))
    cp = write(tmp_path / "c.json", {"format": 1, **jsonio.circuit_to_json(c)})
    out = tmp_path / "res.json"
    assert run(["compile", "--graph", gp, "--circuit", cp, "--out", str(out)]) == 0
    capsys.readouterr()
    doc = read_json(out)
    # drop the last gate layer that contains a non-swap gate
    layers = doc["circuit"]["layers"]
    for i in range(len(layers) - 1, -1, -1):
        if any(gate["kind"] != "swap" for gate in layers[i]):
            del layers[i]
            break
    tampered = write(tmp_path / "tampered.json", doc)
    assert run(["verify", "--original", cp, "--compiled", tampered]) == 1


def test_malformed_json_exit_2_with_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[0, 1],')
    assert run(["oracle", "rtmax", "--graph", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_byte_identical_outputs(tmp_path, p3):
    perm = write(tmp_path / "perm.json", {"format": 1, "dest": [2, 0, 1]})
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(["route", "--graph", p3, "--perm", perm, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_report_writes_csv_and_figures(tmp_path, capsys):
    out_dir = tmp_path / "report"
    assert run(["report", "--out-dir", str(out_dir), "--seed", "1"]) == 0
    names = {p.name for p in out_dir.iterdir()}
    assert {"depth_ratios.csv", "depth_ratios.png",
            "partition_scaling.csv", "partition_scaling.png",
            "partition_quality.csv"} <= names
    header = (out_dir / "depth_ratios.csv").read_text().splitlines()[0]
    assert header.split(",")[:3] == ["topology", "strategy", "trial"]


def test_unsupported_format_version(tmp_path, capsys):
    g = write(tmp_path / "g.json", {"format": 99, "n": 2, "edges": [[0, 1]]})
    assert run(["oracle", "rtmax", "--graph", g]) == 2
    assert "unsupported format" in capsys.readouterr().err


def test_stdout_output(tmp_path, p3, capsys):
    perm = write(tmp_path / "id.json", {"format": 1, "dest": [0, 1, 2]})
    assert run(["route", "--graph", p3, "--perm", perm, "--out", "-"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["rounds"] == []

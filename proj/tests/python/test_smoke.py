import json
import os
import pathlib
import subprocess

import pytest

import coherence_lab as cl

SCHEMAS = pathlib.Path(os.environ.get("COHERENCE_LAB_SCHEMAS", pathlib.Path(__file__).parents[2] / "schemas"))
CLI = os.environ.get("COHERENCE_LAB_CLI")


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_graph_basics():
    g = cl.cycle(8)
    assert g.node_count == 8
    assert g.edge_count == 8
    assert g.is_connected()
    assert cl.perfect_tree(3, 2).node_count == 13
    assert cl.parse_graph("path:4").edge_count == 3
    lap = cl.cycle(3).laplacian()
    assert lap[0][0] == 2.0 and lap[0][1] == -1.0


def test_coherence_routes():
    g = cl.cycle(8)
    assert cl.coherence(g, [0, 4]) == pytest.approx(2.5, abs=1e-12)
    assert cl.coherence(g, [0, 4], method="resistance") == pytest.approx(2.5, abs=1e-12)
    assert cl.coherence(cl.path(2), [0], dynamics="nc") == pytest.approx(1.5, abs=1e-12)
    assert cl.coherence(cl.cycle(9), dynamics="free") == pytest.approx(80 / 24, abs=1e-12)
    report = cl.coherence_report(cl.cycle(4), [0, 2], dynamics="nc", kappa=[2.0, 3.0])
    assert report["kappa"] == [2.0, 3.0]
    assert report["dynamics"] == "noise_corrupted"


def test_resistance():
    g = cl.path(3)
    assert cl.resistance(g, 0, 2) == pytest.approx(2.0)
    assert cl.resistance_to_set(g, 1, [0, 2]) == pytest.approx(0.5)
    assert cl.resistance_after_edge(g, 0, 2, 1.0, 0, 2) == pytest.approx(2.0 / 3.0)


def test_select_and_closed_forms():
    r = cl.select(cl.cycle(6), 2)
    assert r["optimal_sets"] == [[0, 3], [1, 4], [2, 5]]
    assert r["value"] == pytest.approx(4 / 3)
    assert cl.cycle_nf_coherence([4, 4]) == pytest.approx(2.5)
    assert cl.path_nf_coherence([1, 2, 1]) == pytest.approx(1.25)
    assert cl.tree_omega(2, 4, 2, 4) == pytest.approx(67.0)
    opt = cl.tree_optimal_two(3, 4)
    assert opt["value"] == pytest.approx(183.25)
    assert cl.cycle_nc_optimal_value(10) == pytest.approx(7.0)
    assert cl.cycle_nc_two_coherence(10, 6) == pytest.approx(7.0)


def test_errors_carry_codes():
    with pytest.raises(cl.CoherenceError) as info:
        cl.coherence(cl.path(3), [5])
    assert info.value.code == "NodeOutOfRange"
    with pytest.raises(ValueError):
        cl.cycle_nc_optimal_value(9)


def test_simulate_is_seeded():
    a = cl.simulate(cl.path(2), [0], horizon=20.0, trials=4, seed=11)
    b = cl.simulate(cl.path(2), [0], horizon=20.0, trials=4, seed=11)
    assert a == b
    mean, se = a
    assert abs(mean - 0.5) < 5 * se + 0.05


def test_grow_tree_rows():
    rows = cl.grow_tree(4, 1)
    assert rows[0]["pair_id"] == 0
    assert rows[0]["d_xy"] == 4
    assert {r["step"] for r in rows} == {0, 1}


def test_in_process_cli_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    code, out, err = cl.run_cli(["coherence", "--graph", "cycle:8", "--leaders", "0,4"])
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, schema("coherence_report"))
    assert doc["value"] == pytest.approx(2.5)


@pytest.mark.skipif(CLI is None, reason="COHERENCE_LAB_CLI not set")
def test_cli_binary_outputs_validate():
    jsonschema = pytest.importorskip("jsonschema")

    def run(*args):
        return subprocess.run([CLI, *args], capture_output=True, text=True, check=False)

    for args in (
        ["coherence", "--graph", "cycle:8", "--leaders", "0,4", "--dynamics", "nf"],
        ["coherence", "--graph", "cycle:4", "--leaders", "0,2", "--dynamics", "nc", "--kappa", "2,3"],
        ["coherence", "--graph", "cycle:9", "--dynamics", "free"],
        ["coherence", "--graph", "cycle:8", "--leaders", "1,5", "--one-based", "--method", "closed-form"],
    ):
        p = run(*args)
        assert p.returncode == 0, p.stderr
        jsonschema.validate(json.loads(p.stdout), schema("coherence_report"))

    p = run("select", "--graph", "tree:2:4", "--k", "2", "--dynamics", "nf")
    assert p.returncode == 0, p.stderr
    doc = json.loads(p.stdout)
    jsonschema.validate(doc, schema("select_result"))
    assert any(s["d_xy"] == 4 and s["d_xr"] == 2 for s in doc["optimal_sets"])

    p = run("closed-form", "cycle-nc", "--n", "10")
    doc = json.loads(p.stdout)
    assert doc["i_opt"] == 6 and doc["value"] == 7.0

    p = run("coherence", "--graph", "file:missing.txt", "--leaders", "0")
    assert p.returncode == 2
    jsonschema.validate(json.loads(p.stderr), schema("error"))

import json

import numpy as np
import pytest

from arcwalk.cli import ConfigError, RunConfig, main, render, run
from arcwalk.io import emit_heatmap_csv, format_float


def run_json(config):
    return json.loads(render(run(config), "json"))


def test_emit_heatmap_identity():
    csv = emit_heatmap_csv(np.eye(2), [1, 2])
    assert csv == "l,1,2\n1,1.0,0.0\n2,0.0,1.0"


def test_emit_heatmap_three_community(three_fourier_avg):
    _, norm = three_fourier_avg
    csv = emit_heatmap_csv(norm, list(range(1, 22)))
    lines = csv.splitlines()
    assert len(lines) == 22
    assert lines[0] == "l," + ",".join(str(i) for i in range(1, 22))


def test_format_float_sig_digits():
    assert format_float(1.0) == "1.0"
    assert format_float(0.0) == "0.0"
    assert float(format_float(1 / 3)) == pytest.approx(1 / 3, abs=1e-12)


def test_detect_karate_hubs():
    doc = run_json(
        RunConfig(
            command="detect",
            graph_source="builtin:karate",
            coin="fourier",
            mode="average-infinite",
            threshold="auto",
        )
    )
    assert sorted(doc["payload"]["hubs"]) == [1, 34]
    assert doc["metadata"]["graph"]["nodes"] == 34
    assert doc["metadata"]["graph"]["arcs"] == 156
    assert doc["metadata"]["graph"]["betti"] == 45
    assert doc["payload"]["threshold"] == pytest.approx(1 / 156)


def test_spectrum_grover_degeneracy():
    doc = run_json(
        RunConfig(command="spectrum", graph_source="builtin:three_community", coin="grover")
    )
    deg = doc["payload"]["degeneracy"]
    assert (deg["plus_one"], deg["minus_one"]) == (20, 18)
    assert len(doc["payload"]["eigenvalues"]) == 78


def test_sweep_counts():
    doc = run_json(
        RunConfig(
            command="sweep",
            graph_source="builtin:three_community",
            coin="fourier",
            mode="average-infinite",
            q_list=(1e-4, 1 / 78, 1.0),
        )
    )
    assert [e["count"] for e in doc["payload"]["entries"]] == [1, 3, 21]


def test_average_row_modes_agree_roughly():
    base = dict(graph_source="builtin:three_community", coin="fourier", start=1)
    inf = run_json(RunConfig(command="average", mode="average-infinite", **base))
    fin = run_json(RunConfig(command="average", mode="average-finite", steps=100, **base))
    a = np.array(inf["payload"]["normalized"])
    b = np.array(fin["payload"]["normalized"])
    assert np.abs(a - b).max() < 0.1 * a.max()


def test_evolve_rows_sum_to_one():
    doc = run_json(
        RunConfig(command="evolve", graph_source="builtin:three_community", start=1, steps=5)
    )
    for row in doc["payload"]["rows"]:
        assert sum(row["probability"]) == pytest.approx(1.0, abs=1e-9)
    assert doc["payload"]["rows"][0]["probability"][0] == 1.0


def test_classical_payload():
    doc = run_json(
        RunConfig(command="classical", graph_source="builtin:karate", start=1, steps=10)
    )
    ns = doc["payload"]["normalized_stationary"]
    # serialized floats carry 12 significant digits
    assert all(v == pytest.approx(1 / 156, abs=1e-12) for v in ns)
    assert len(doc["payload"]["trace"]) == 10


def test_json_round_trip_is_stable():
    config = RunConfig(command="spectrum", graph_source="builtin:karate", coin="fourier")
    text = render(run(config), "json")
    reparsed = json.loads(text)
    assert json.dumps(reparsed, indent=2, sort_keys=True) + "\n" == text


def test_identical_config_is_byte_identical():
    config = RunConfig(
        command="detect", graph_source="builtin:three_community", mode="average-infinite"
    )
    assert render(run(config), "json") == render(run(config), "json")


def test_config_errors():
    with pytest.raises(ConfigError):
        run(RunConfig(command="bogus", graph_source="builtin:karate"))
    with pytest.raises(ConfigError):
        run(RunConfig(command="detect", graph_source="gopher:karate"))
    with pytest.raises(ConfigError):
        run(RunConfig(command="evolve", graph_source="builtin:karate"))  # no start
    with pytest.raises(ConfigError):
        run(RunConfig(command="detect", graph_source="builtin:karate", threshold="-1"))
    with pytest.raises(ConfigError):
        run(RunConfig(command="detect", graph_source="builtin:karate", mode="sideways"))


def test_main_writes_output(tmp_path):
    out = tmp_path / "partition.json"
    code = main(
        [
            "detect",
            "--graph",
            "builtin:karate",
            "--coin",
            "fourier",
            "--mode",
            "average-infinite",
            "--threshold",
            "auto",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert sorted(doc["payload"]["hubs"]) == [1, 34]


def test_main_csv_detect(tmp_path, capsys):
    code = main(
        ["detect", "--graph", "builtin:three_community", "--mode", "average-infinite", "--format", "csv"]
    )
    assert code == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "node,community,hub,margin,marginal"
    assert len(lines) == 22


def test_main_exit_codes(tmp_path, capsys):
    # config error: bad graph source scheme
    assert main(["spectrum", "--graph", "gopher:x"]) == 2
    # data error: unreadable path
    assert main(["spectrum", "--graph", "edgelist:/does/not/exist"]) == 3
    # data error: malformed pajek content
    bad = tmp_path / "bad.net"
    bad.write_text("*Edges\n1 2\n")
    assert main(["spectrum", "--graph", f"pajek:{bad}"]) == 3
    # config error: dense cap exceeded
    assert main(["spectrum", "--graph", "builtin:karate", "--dense-cap", "10"]) == 2
    capsys.readouterr()


def test_main_edgelist_file(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("1 2\n2 3\n1 3\n")
    doc_path = tmp_path / "out.json"
    assert (
        main(["spectrum", "--graph", f"edgelist:{path}", "--output", str(doc_path)]) == 0
    )
    doc = json.loads(doc_path.read_text())
    assert doc["metadata"]["graph"]["arcs"] == 6


def test_average_csv_matrix(capsys):
    assert (
        main(
            [
                "average",
                "--graph",
                "builtin:three_community",
                "--mode",
                "average-infinite",
                "--format",
                "csv",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0].startswith("l,1,2,")
    assert len(lines) == 22

import csv
import json

import numpy as np
import pytest

from knnselect.cli import main
from knnselect.core import write_csv


def _write(path, header, rows):
    write_csv(path, header, rows)
    return path


@pytest.fixture
def toy_csvs(tmp_path):
    rng = np.random.default_rng(7)
    codes = [0, 1] * 20
    noise = rng.normal(size=40) * 5
    rows = [[float(c), float(z), str(c)] for c, z in zip(codes, noise)]
    train = _write(tmp_path / "train.csv", ["x0", "x1", "label"], rows[:30])
    test = _write(tmp_path / "test.csv", ["x0", "x1", "label"], rows[30:])
    return train, test


def _read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_select_toy(toy_csvs, tmp_path):
    train, test = toy_csvs
    out = tmp_path / "res.json"
    preds = tmp_path / "pred.csv"
    code = main(["select", "--train", str(train), "--test", str(test), "--response", "label", "--k", "1",
                 "--out-json", str(out), "--out-predictions", str(preds)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["selected_variables"] == [0]
    assert payload["selected_names"] == ["x0"]
    assert payload["best_loss"] == 1.0
    assert payload["evaluations"] == 3
    assert payload["mode"] == "external"
    assert [r[1] for r in _read(preds)[1:]] == [str(c) for c in [0, 1] * 5]


def test_select_missing_response_flag_is_usage_error(toy_csvs, tmp_path):
    train, test = toy_csvs
    with pytest.raises(SystemExit) as info:
        main(["select", "--train", str(train), "--test", str(test), "--out-json", str(tmp_path / "o.json")])
    assert info.value.code == 2


def test_select_schema_mismatch(toy_csvs, tmp_path, capsys):
    train, _ = toy_csvs
    bad = _write(tmp_path / "bad.csv", ["x0", "zz", "label"], [[0.0, 1.0, "0"]])
    code = main(["select", "--train", str(train), "--test", str(bad), "--response", "label",
                 "--out-json", str(tmp_path / "o.json")])
    assert code == 1
    assert "SchemaMismatch" in capsys.readouterr().err


def test_select_without_test_labels_uses_internal_split(toy_csvs, tmp_path):
    train, _ = toy_csvs
    unlabeled = _write(tmp_path / "new.csv", ["x0", "x1"], [[0.0, 3.0], [1.0, -2.0]])
    out = tmp_path / "o.json"
    code = main(["select", "--train", str(train), "--test", str(unlabeled), "--response", "label", "--k", "1",
                 "--seed", "4", "--out-json", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["mode"] == "internal" and payload["train_fraction"] == 0.7
    assert payload["predictions"] == ["0", "1"]
    assert payload["eval_loss"] is None


def test_select_is_byte_deterministic(toy_csvs, tmp_path):
    train, test = toy_csvs
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        main(["select", "--train", str(train), "--test", str(test), "--response", "label", "--cv-k", "1,3",
              "--folds", "3", "--internal-split", "0.6", "--seed", "9", "--out-json", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_predict(toy_csvs, tmp_path):
    train, test = toy_csvs
    out = tmp_path / "p.csv"
    assert main(["predict", "--train", str(train), "--test", str(test), "--response", "label",
                 "--k", "3", "--metric", "manhattan", "--out", str(out)]) == 0
    rows = _read(out)
    assert rows[0] == ["row", "prediction"] and len(rows) == 11


def test_predict_bad_metric_is_usage_error(toy_csvs, tmp_path):
    train, test = toy_csvs
    with pytest.raises(SystemExit) as info:
        main(["predict", "--train", str(train), "--test", str(test), "--response", "label",
              "--metric", "cosine", "--out", str(tmp_path / "p.csv")])
    assert info.value.code == 2


def test_predict_regression_standardized(tmp_path):
    train = _write(tmp_path / "tr.csv", ["a", "y"], [[0.0, 1.0], [10.0, 2.0], [20.0, 3.0]])
    test = _write(tmp_path / "te.csv", ["a"], [[9.0]])
    out = tmp_path / "p.csv"
    assert main(["predict", "--train", str(train), "--test", str(test), "--response", "y", "--task", "reg",
                 "--k", "1", "--standardize", "--out", str(out)]) == 0
    assert _read(out)[1] == ["0", "2.0"]


def test_simulate_writes_csv_and_metadata(tmp_path):
    out = tmp_path / "sim.csv"
    assert main(["simulate", "--task", "class", "--n", "40", "--p", "6", "--signal", "3",
                 "--shuffle-columns", "--seed", "5", "--out", str(out)]) == 0
    rows = _read(out)
    assert len(rows) == 41 and rows[0][-1] == "y" and len(rows[0]) == 7
    meta = json.loads((tmp_path / "sim.csv.json").read_text())
    assert meta["seed"] == 5 and len(meta["signal_indices"]) == 3
    assert sorted(meta["permutation"]) == list(range(6))


def test_simulate_then_select_round_trip(tmp_path):
    data = tmp_path / "reg.csv"
    main(["simulate", "--task", "reg", "--n", "60", "--seed", "2", "--out", str(data)])
    out = tmp_path / "o.json"
    assert main(["select", "--train", str(data), "--test", str(data), "--response", "y", "--task", "reg",
                 "--k", "3", "--out-json", str(out)]) == 0
    assert json.loads(out.read_text())["evaluations"] == 45


def test_experiment_single_replicate(tmp_path):
    out, summary = tmp_path / "exp.csv", tmp_path / "sum.csv"
    assert main(["experiment", "--generator", "class", "--n", "60", "--replications", "1", "--k", "3",
                 "--out", str(out), "--out-summary", str(summary)]) == 0
    rows = _read(out)
    assert len(rows) == 2
    header = rows[0]
    indicators = [int(v) for h, v in zip(header, rows[1]) if h.startswith("sel_")]
    assert set(indicators) <= {0, 1}
    freq = {r[0]: float(r[2]) for r in _read(summary)[1:]}
    assert all(v in (0.0, 1.0) for v in freq.values())


def test_experiment_deterministic_and_consistent(tmp_path):
    outs = []
    for i in range(2):
        out, summary = tmp_path / f"e{i}.csv", tmp_path / f"s{i}.csv"
        main(["experiment", "--generator", "reg", "--task", "reg", "--replications", "4", "--k", "3",
              "--seed", "11", "--out", str(out), "--out-summary", str(summary)])
        outs.append((out.read_bytes(), summary.read_bytes()))
    assert outs[0] == outs[1]
    rows = _read(tmp_path / "e0.csv")
    header, body = rows[0], rows[1:]
    assert [int(r[1]) for r in body] == [12, 13, 14, 15]
    freq = {r[0]: float(r[2]) for r in _read(tmp_path / "s0.csv")[1:]}
    for name, value in freq.items():
        col = header.index(f"sel_{name}")
        assert value == pytest.approx(np.mean([int(r[col]) for r in body]), abs=1e-15)


def test_experiment_on_csv_data(toy_csvs, tmp_path):
    train, _ = toy_csvs
    out = tmp_path / "e.csv"
    assert main(["experiment", "--data", str(train), "--response", "label", "--replications", "2",
                 "--k", "1", "--mode", "external", "--out", str(out)]) == 0
    rows = _read(out)
    assert rows[0][-2:] == ["sel_x0", "sel_x1"] and len(rows) == 3


def test_experiment_failure_row(tmp_path, capsys):
    out = tmp_path / "e.csv"
    # k larger than the internal fitting partition: every replicate fails
    code = main(["experiment", "--generator", "class", "--n", "20", "--replications", "3", "--k", "15",
                 "--out", str(out)])
    assert code == 1
    rows = _read(out)
    assert len(rows) == 2 and rows[1][2].startswith("failed: KTooLarge")
    assert "KTooLarge" in capsys.readouterr().err


def test_benchmark_counts(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["benchmark", "--n", "60", "--p-list", "3,10", "--out", str(out)]) == 0
    rows = _read(out)
    assert rows[0] == ["n", "p", "evaluations", "seconds"]
    assert [int(r[2]) for r in rows[1:]] == [6, 55]
    assert all(float(r[3]) > 0 for r in rows[1:])


def test_benchmark_regression_stdout(capsys):
    assert main(["benchmark", "--task", "reg", "--n", "50", "--p-list", "10"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,p,evaluations,seconds" and lines[1].startswith("50,10,55,")


def test_cv_k(tmp_path, capsys):
    rng = np.random.default_rng(0)
    rows = [[float(v), "l"] for v in rng.normal(0, 0.1, 15)] + [[float(v), "r"] for v in rng.normal(9, 0.1, 15)]
    data = _write(tmp_path / "d.csv", ["x", "c"], rows)
    out = tmp_path / "cv.json"
    assert main(["cv-k", "--train", str(data), "--response", "c", "--k-list", "3,1", "--folds", "5",
                 "--out-json", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "1"
    payload = json.loads(out.read_text())
    assert payload["best_k"] == 1 and payload["mean_fold_loss"] == {"3": 1.0, "1": 1.0}


def test_cv_k_too_large(tmp_path):
    data = _write(tmp_path / "d.csv", ["x", "c"], [[float(i), "ab"[i % 2]] for i in range(10)])
    assert main(["cv-k", "--train", str(data), "--response", "c", "--k-list", "1,10", "--folds", "5"]) == 1

"""
Pruebas de extremo a extremo del CLI sobre datasets sintéticos
"""

import json

import numpy as np
import pytest

from cli import run_cli
from src.model import ModelConfig, build_model
from src.processors import encode, fold_split, load_dataset
from src.training import evaluate, load

TINY = ["--preset", "gradcheck", "--seed", "3", "--log-dir", ""]


@pytest.fixture(autouse=True)
def _workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def _run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def _train(capsys, ml100k_dir, tmp_path, *extra):
    checkpoint = tmp_path / "out" / "model.hbgnn"
    code, out, err = _run(capsys, "train", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                          "--fold", "1", "--batch-size", "8", "--checkpoint", str(checkpoint),
                          "--run-history", str(tmp_path / "runs.json"), *TINY, *extra)
    assert code == 0, err
    return checkpoint, out


# =============================================================================
# Códigos de salida
# =============================================================================

def test_usage_errors_exit_with_two(capsys):
    assert run_cli([]) == 2
    assert run_cli(["train", "--dataset-kind", "ml100k"]) == 2
    assert run_cli(["train", "--dataset-dir", "x", "--dataset-kind", "netflix"]) == 2
    assert run_cli(["train", "--dataset-dir", "x", "--dataset-kind", "ml100k", "--epochs", "-1"]) == 2
    assert run_cli(["train", "--dataset-dir", "x", "--dataset-kind", "ml100k", "--fold", "1",
                    "--split", "temporal"]) == 2
    assert "error" in capsys.readouterr().err


def test_help_exits_with_zero(capsys):
    assert run_cli(["--help"]) == 0
    assert "train" in capsys.readouterr().out


def test_library_error_exits_with_one(capsys, tmp_path):
    code, out, err = _run(capsys, "eval", "--dataset-dir", str(tmp_path / "missing"), "--dataset-kind", "ml100k",
                          "--checkpoint", str(tmp_path / "missing.hbgnn"), "--log-dir", "")
    assert code == 1
    assert out == ""
    assert err.strip().splitlines()[-1].startswith("hbgnn: error:")


# =============================================================================
# train / eval
# =============================================================================

def test_train_writes_artifacts(capsys, ml100k_dir, tmp_path):
    checkpoint, out = _train(capsys, ml100k_dir, tmp_path, "--epochs", "2")
    assert out == str(checkpoint)
    assert checkpoint.exists()
    history = (checkpoint.parent / "history.tsv").read_text(encoding="utf-8").splitlines()
    assert len(history) == 3

    ckpt = load(checkpoint)
    assert ckpt.config.link_dim == 4 and ckpt.config.seed == 3
    assert ckpt.metadata["split"] == "fold 1"
    assert ckpt.optimizer.step == 2 * 2

    runs = json.loads((tmp_path / "runs.json").read_text(encoding="utf-8"))
    assert runs[0]["model"] == "α-HBGNN" and runs[0]["epochs"] == 2


def test_eval_prints_test_rmse(capsys, ml100k_dir, tmp_path):
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    code, out, _ = _run(capsys, "eval", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                        "--fold", "1", "--checkpoint", str(checkpoint), "--log-dir", "")
    assert code == 0
    dataset = load_dataset("ml100k", ml100k_dir)
    expected = evaluate(load(checkpoint).to_model(), dataset, fold_split(dataset, 1).test)
    assert out == f"{expected:.6f}"


def test_zero_epochs_saves_fresh_model(capsys, ml100k_dir, tmp_path):
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "0")
    ckpt = load(checkpoint)
    assert ckpt.optimizer is None
    dataset = load_dataset("ml100k", ml100k_dir)
    fresh = build_model(ModelConfig.preset("gradcheck", seed=3), dataset.vocabs)
    for name, tensor in fresh.params.items():
        assert ckpt.params[name].numpy().tobytes() == tensor.numpy().tobytes()


def test_identical_invocations_are_byte_identical(capsys, ml100k_dir, tmp_path):
    first, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    first_bytes = first.read_bytes()
    second, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    assert second.read_bytes() == first_bytes


def test_config_file_and_flag_precedence(capsys, ml100k_dir, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("# receta pequeña\nvariant = beta\nattention = true\nbatch_size = 4\nepochs = 1\n",
                      encoding="utf-8")
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--config", str(config), "--no-attention")
    ckpt = load(checkpoint)
    assert ckpt.config.variant == "beta"
    assert ckpt.config.attention is False


def test_unknown_config_key_fails(capsys, ml100k_dir, tmp_path):
    config = tmp_path / "bad.cfg"
    config.write_text("dropout = 0.5\n", encoding="utf-8")
    code, _, err = _run(capsys, "train", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                        "--config", str(config), *TINY)
    assert code == 1
    assert "dropout" in err


def test_non_integer_epochs_in_config_fails(capsys, ml100k_dir, tmp_path):
    config = tmp_path / "bad.cfg"
    config.write_text("epochs = many\n", encoding="utf-8")
    code, _, err = _run(capsys, "train", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                        "--config", str(config), *TINY)
    assert code == 1
    assert "epochs" in err


def test_failed_history_write_leaves_no_checkpoint(capsys, ml100k_dir, tmp_path):
    blocked = tmp_path / "history_dir"
    blocked.mkdir()
    checkpoint = tmp_path / "out" / "model.hbgnn"
    code, _, err = _run(capsys, "train", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                        "--epochs", "1", "--batch-size", "8", "--checkpoint", str(checkpoint),
                        "--history", str(blocked), "--run-history", str(tmp_path / "runs.json"), *TINY)
    assert code == 1
    assert "error" in err
    assert not checkpoint.exists()
    assert not (tmp_path / "runs.json").exists()


# =============================================================================
# predict / export / transfer / cross-validate / report
# =============================================================================

def test_predict(capsys, ml100k_dir, tmp_path):
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    argv = ["predict", "--checkpoint", str(checkpoint), "--user-id", "1", "--age", "24",
            "--occupation", "technician", "--zip", "85711", "--gender", "M", "--movie-id", "2",
            "--genres", "Action|Thriller", "--log-dir", ""]
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert np.isfinite(float(out))

    code, clamped, _ = _run(capsys, *argv, "--clamp")
    assert code == 0 and 1.0 <= float(clamped) <= 5.0

    code, _, err = _run(capsys, *[a if a != "technician" else "astronaut" for a in argv])
    assert code == 1


def test_export_embeddings(capsys, ml100k_dir, tmp_path):
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    output = tmp_path / "profiles.tsv"
    code, out, _ = _run(capsys, "export-embeddings", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                        "--fold", "1", "--part", "test", "--checkpoint", str(checkpoint),
                        "--output", str(output), "--log-dir", "")
    assert code == 0 and out == str(output)
    lines = output.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 4 + 1
    assert len(lines[0].split("\t")) == 8 + 4


def test_transfer_then_eval(capsys, ml100k_dir, ml1m_dir, tmp_path):
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    output = tmp_path / "transfer.hbgnn"
    code, out, err = _run(capsys, "transfer", "--dataset-dir", str(ml1m_dir), "--dataset-kind", "ml1m",
                          "--checkpoint", str(checkpoint), "--output", str(output), "--epochs", "1",
                          "--batch-size", "4", "--run-history", str(tmp_path / "runs.json"), "--seed", "2",
                          "--log-dir", "")
    assert code == 0, err
    ckpt = load(output)
    assert ckpt.metadata["source"] == "ml100k"
    assert ckpt.metadata["split"] == "temporal"

    code, value, _ = _run(capsys, "eval", "--dataset-dir", str(ml1m_dir), "--dataset-kind", "ml1m",
                          "--checkpoint", str(output), "--log-dir", "")
    assert code == 0 and np.isfinite(float(value))

    runs = json.loads((tmp_path / "runs.json").read_text(encoding="utf-8"))
    assert runs[0]["model"] == "α-HBGNN*" and runs[0]["run_type"] == "transfer"


def test_eval_rejects_other_dataset(capsys, ml100k_dir, ml1m_dir, tmp_path):
    checkpoint, _ = _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    code, out, _ = _run(capsys, "eval", "--dataset-dir", str(ml1m_dir), "--dataset-kind", "ml1m",
                        "--checkpoint", str(checkpoint), "--log-dir", "")
    assert code == 1 and out == ""


def test_cross_validate(capsys, ml100k_dir, tmp_path):
    checkpoint = tmp_path / "best.hbgnn"
    code, out, err = _run(capsys, "cross-validate", "--dataset-dir", str(ml100k_dir), "--dataset-kind", "ml100k",
                          "--folds", "1,2", "--epochs", "1", "--batch-size", "8", "--checkpoint", str(checkpoint),
                          "--run-history", str(tmp_path / "runs.json"), *TINY)
    assert code == 0, err
    lines = out.splitlines()
    assert [line.split("\t")[0] for line in lines] == ["fold 1", "fold 2", "mean"]
    values = [float(line.split("\t")[1]) for line in lines]
    assert values[2] == pytest.approx((values[0] + values[1]) / 2, abs=1e-6)
    assert load(checkpoint).metadata["split"] in ("fold 1", "fold 2")


def test_report(capsys, ml100k_dir, tmp_path):
    _train(capsys, ml100k_dir, tmp_path, "--epochs", "1")
    code, out, _ = _run(capsys, "report", "--run-history", str(tmp_path / "runs.json"),
                        "--output-folder", str(tmp_path / "reports"), "--log-dir", "")
    assert code == 0
    assert out.endswith(".pdf")
    assert (tmp_path / "reports").is_dir()


def test_report_without_runs(capsys, tmp_path):
    code, _, err = _run(capsys, "report", "--run-history", str(tmp_path / "empty.json"),
                        "--output-folder", str(tmp_path / "reports"), "--log-dir", "")
    assert code == 1
    assert "hbgnn: error:" in err

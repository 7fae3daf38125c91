"""
Pruebas de archivos de configuración ``clave = valor`` y su aplicación sobre dataclasses
"""

import pytest

from src.model import ModelConfig
from src.training import TrainRunConfig
from src.utils.config_file import apply_overrides, read_config_file, split_known
from src.utils.exceptions import ConfigurationError


def test_read_ignores_comments_and_blank_lines(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# receta\n\nvariant = beta   # comentario\n  epochs=3\nmlp_widths = 16, 8, 4, 2, 1\n",
                    encoding="utf-8")
    assert read_config_file(path) == {"variant": "beta", "epochs": "3", "mlp_widths": "16, 8, 4, 2, 1"}


@pytest.mark.parametrize("content, line", [
    ("epochs = 3\nsolo texto\n", 2),
    ("epochs = 3\n\nepochs = 4\n", 3),
    ("= 4\n", 1),
])
def test_read_reports_line(tmp_path, content, line):
    path = tmp_path / "bad.cfg"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ConfigurationError) as error:
        read_config_file(path)
    assert f"bad.cfg:{line}" in error.value.message


def test_read_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        read_config_file(tmp_path / "absent.cfg")


def test_split_known():
    own, rest = split_known(ModelConfig, {"variant": "beta", "epochs": "2", "lr": "0.01"})
    assert own == {"variant": "beta"}
    assert rest == {"epochs": "2", "lr": "0.01"}


def test_apply_overrides_coerces_text():
    config = apply_overrides(ModelConfig, {
        "attention": "yes", "link_dim": "16", "mlp_widths": "8 8 4 2 1", "precision": "float64",
    })
    assert config.attention is True
    assert config.link_dim == 16
    assert config.mlp_widths == (8, 8, 4, 2, 1)
    assert config.precision == "float64"

    run = apply_overrides(TrainRunConfig, {"lr": "0.01", "epochs": "2"})
    assert run.lr == pytest.approx(0.01) and run.epochs == 2


def test_apply_overrides_keeps_base_values():
    base = ModelConfig.preset("gradcheck", seed=9)
    config = apply_overrides(ModelConfig, {"variant": "beta", "attention": False}, base=base)
    assert config.variant == "beta"
    assert config.seed == 9 and config.link_dim == base.link_dim


@pytest.mark.parametrize("values", [{"dropout": "0.5"}, {"attention": "maybe"}, {"link_dim": "wide"}])
def test_apply_overrides_rejects(values):
    with pytest.raises(ConfigurationError):
        apply_overrides(ModelConfig, values)

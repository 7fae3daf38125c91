"""
Pruebas del reporte PDF de resultados RMSE
"""

import math

from reportlab.platypus import TableStyle

from config import FULL_RECIPE_TARGET_RMSE
from src.pdf.components import apply_best_rmse_highlight, apply_reference_comparison_coloring
from src.pdf.generators.results import ResultsPDFGenerator, _format_rmse
from src.utils.run_history import RunEntry


def _entry(model, dataset, test_rmse, train_rmse=0.5, checkpoint="x.hbgnn"):
    return RunEntry(checkpoint=checkpoint, run_type="train", dataset=dataset, split="fold 1", model=model,
                    epochs=10, train_rmse=train_rmse, test_rmse=test_rmse, generated_date="2024-05-01T10:30:00")


ENTRIES = [
    _entry("α-HBGNN", "ml100k", 0.95, checkpoint="a.hbgnn"),
    _entry("α-HBGNN", "ml100k", 0.92, checkpoint="b.hbgnn"),
    _entry("MLP", "ml100k", 1.15, checkpoint="c.hbgnn"),
    _entry("α-HBGNN*", "ml1m", 0.88, checkpoint="d.hbgnn"),
    _entry("custom", "ml1m", float("nan"), checkpoint="e.hbgnn"),
]


def _commands(style, name):
    return [command for command in style.getCommands() if command[0] == name]


def test_format_rmse():
    assert _format_rmse(None) == "-"
    assert _format_rmse(math.nan) == "-"
    assert _format_rmse(0.91234) == "0.912"


def test_best_runs_keep_lowest_test_rmse(tmp_path):
    best = ResultsPDFGenerator(str(tmp_path))._best_runs(ENTRIES)
    assert best[("α-HBGNN", "ml100k")].checkpoint == "b.hbgnn"
    assert best[("custom", "ml1m")].checkpoint == "e.hbgnn"


def test_results_table(tmp_path):
    data = ResultsPDFGenerator(str(tmp_path))._build_results_table_data(ENTRIES)
    assert data[0] == ["Modelo", "ML-100K", "", "", "ML-1M", "", ""]
    assert data[1][1:4] == ["Train", "Test", "Ref. test"]
    # Etiquetas de referencia en su orden documentado, luego las demás
    assert [row[0] for row in data[2:]] == ["MLP", "α-HBGNN", "α-HBGNN*", "custom"]
    alpha = data[3]
    assert alpha[1:4] == ["0.500", "0.920", "0.927"]
    assert alpha[4:6] == ["-", "-"]
    assert data[5][1:] == ["-", "-", "-", "0.500", "-", "-"]


def test_target_achievement(tmp_path):
    generator = ResultsPDFGenerator(str(tmp_path))
    assert generator._calculate_target_achievement(ENTRIES) == (True, 0.92)
    worse = [_entry("α-HBGNN", "ml100k", FULL_RECIPE_TARGET_RMSE + 0.5)]
    within, _ = generator._calculate_target_achievement(worse)
    assert within is False
    # MLP y ML-1M no cuentan
    assert generator._calculate_target_achievement([ENTRIES[2], ENTRIES[3]]) == (None, None)


def test_best_highlight_picks_lowest_row():
    data = [["h"], ["h"], ["1.200"], ["0.900"], ["-"]]
    style = TableStyle([])
    apply_best_rmse_highlight(style, data, 0)
    backgrounds = _commands(style, "BACKGROUND")
    assert len(backgrounds) == 1
    assert backgrounds[0][1] == (0, 3)

    empty = TableStyle([])
    apply_best_rmse_highlight(empty, [["h"], ["h"], ["-"]], 0)
    assert empty.getCommands() == []


def test_reference_coloring_marks_worse_values():
    data = [["h", "h"], ["h", "h"], ["0.950", "0.927"], ["0.900", "0.927"], ["-", "0.927"]]
    style = TableStyle([])
    apply_reference_comparison_coloring(style, data, 0, 1)
    assert [command[1] for command in _commands(style, "TEXTCOLOR")] == [(0, 2)]


def test_generate(tmp_path):
    generator = ResultsPDFGenerator(str(tmp_path / "reports"))
    assert generator.generate([]) is None

    path = generator.generate(ENTRIES)
    assert path.endswith("RMSE_Results.pdf")
    with open(path, "rb") as f:
        assert f.read(5) == b"%PDF-"

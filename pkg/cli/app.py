"""
app.py - Interfaz de línea de comandos

Subcomandos: train, eval, transfer, export-embeddings, predict,
cross-validate y report. La salida estándar queda reservada para los
resultados (una ruta o un número por línea); los logs van a stderr y al
archivo rotado.

Códigos de salida: 0 éxito, 1 error de la biblioteca, 2 error de uso.
"""

import argparse
import logging
import math
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from config import (
    CHECKPOINT_FOLDER, CHECKPOINT_SUFFIX, DEFAULT_SEED, EMBEDDINGS_FILE_NAME, EPOCHS_ML100K, EPOCHS_ML1M,
    FINE_TUNE_EPOCHS, HISTORY_FILE_NAME, LOG_DIR, PRESETS, REPORTS_FOLDER, RUN_HISTORY_FILE,
)
from src.model import ModelConfig, build_model, predict_example
from src.model.config import ARCHITECTURES, PRECISIONS, VARIANTS
from src.optim import AmsGrad
from src.processors import RatingExample, Split, fold_split, load_dataset, subsample, temporal_split
from src.processors.dataset import PROVENANCES
from src.training import (
    Checkpoint, History, TrainRunConfig, check_vocabularies, cross_validate, evaluate, export_embeddings, load, save,
    select_examples, train, transfer, write_history,
)
from src.utils.config_file import apply_overrides, read_config_file
from src.utils.exceptions import ConfigurationError, DomainError, HBGNNError
from src.utils.logging_config import setup_logging
from src.utils.run_history import RunEntry, get_run_history_manager

logger = logging.getLogger(__name__)

PROG = "hbgnn"


class UsageError(Exception):
    """Argumentos inválidos (código de salida 2)"""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser que no termina el proceso ante un error de uso"""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# ============================================
# DEFINICIÓN DE ARGUMENTOS
# ============================================
def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"se esperaba un entero positivo, se recibió {text}")
    return value


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"se esperaba un entero >= 0, se recibió {text}")
    return value


def _int_list(text):
    try:
        return tuple(int(part) for part in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"se esperaba una lista de enteros, se recibió '{text}'")


def _add_common_flags(parser):
    group = parser.add_argument_group("generales")
    group.add_argument("--config", help="Archivo clave = valor con campos de ModelConfig / TrainRunConfig")
    group.add_argument("--seed", type=int, help=f"Semilla de toda la aleatoriedad (por defecto {DEFAULT_SEED})")
    group.add_argument("--log-dir", default=LOG_DIR, help="Carpeta del log rotado ('' lo desactiva)")
    group.add_argument("--verbose", action="store_true", help="Logging DEBUG (detalle por lote)")


def _add_data_flags(parser, splits=True):
    group = parser.add_argument_group("datos")
    group.add_argument("--dataset-dir", required=True, help="Directorio local de la distribución MovieLens")
    group.add_argument("--dataset-kind", required=True, choices=PROVENANCES)
    group.add_argument("--subsample", type=_positive_int, help="Usar solo N ratings elegidos al azar")
    if splits:
        exclusive = group.add_mutually_exclusive_group()
        exclusive.add_argument("--fold", type=int, help="Fold estándar 1..5 (solo ml100k)")
        exclusive.add_argument("--split", choices=("temporal", "all"),
                               help="temporal (80/20 por timestamp) o all (todo es entrenamiento)")


def _add_model_flags(parser):
    group = parser.add_argument_group("modelo")
    group.add_argument("--preset", choices=sorted(PRESETS), help="Dimensiones predefinidas (por defecto full)")
    group.add_argument("--variant", choices=VARIANTS)
    group.add_argument("--attention", dest="attention", action="store_true", default=None)
    group.add_argument("--no-attention", dest="attention", action="store_false")
    group.add_argument("--architecture", choices=ARCHITECTURES)
    group.add_argument("--precision", choices=sorted(PRECISIONS))
    group.add_argument("--link-dim", type=_positive_int)
    group.add_argument("--place-dim", type=_positive_int)
    group.add_argument("--encoder-hidden", type=_positive_int)
    group.add_argument("--mlp-widths", type=_int_list, help="Cinco anchos separados por comas, el último 1")
    group.add_argument("--rounds-link", type=_non_negative_int)
    group.add_argument("--rounds-place", type=_non_negative_int)


def _add_train_flags(parser, epochs_help):
    group = parser.add_argument_group("entrenamiento")
    group.add_argument("--epochs", type=_non_negative_int, help=epochs_help)
    group.add_argument("--batch-size", type=_positive_int)
    group.add_argument("--lr", type=float)
    group.add_argument("--weight-decay", type=float)
    group.add_argument("--lr-decay", type=float, help="Factor por época de la tasa de aprendizaje (1.0 = constante)")
    group.add_argument("--eval-every", type=_positive_int)
    group.add_argument("--history", help=f"Archivo de historial por época (por defecto {HISTORY_FILE_NAME} "
                                         f"junto al checkpoint)")
    group.add_argument("--run-history", default=RUN_HISTORY_FILE, help="Historial JSON de corridas")


def build_parser():
    parser = _Parser(prog=PROG, description="Recomendador de ratings MovieLens con grafos bipartitos jerárquicos")
    subparsers = parser.add_subparsers(dest="command", metavar="SUBCOMANDO")
    subparsers.required = True

    p = subparsers.add_parser("train", help="Entrena un modelo y escribe checkpoint e historial")
    _add_common_flags(p)
    _add_data_flags(p)
    _add_model_flags(p)
    _add_train_flags(p, "Épocas (0 guarda el modelo recién inicializado)")
    p.add_argument("--checkpoint", help="Checkpoint de salida")

    p = subparsers.add_parser("eval", help="Imprime el RMSE de prueba de un checkpoint")
    _add_common_flags(p)
    _add_data_flags(p)
    p.add_argument("--checkpoint", required=True)

    p = subparsers.add_parser("transfer", help="Transfiere un checkpoint a otro dataset y lo ajusta")
    _add_common_flags(p)
    _add_data_flags(p)
    _add_train_flags(p, f"Épocas de ajuste fino (por defecto {FINE_TUNE_EPOCHS})")
    p.add_argument("--checkpoint", required=True, help="Checkpoint pre-entrenado")
    p.add_argument("--output", help="Checkpoint de salida")

    p = subparsers.add_parser("export-embeddings", help="Exporta los perfiles de usuario N_u")
    _add_common_flags(p)
    _add_data_flags(p)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--part", choices=("all", "train", "test"), default="all",
                   help="Ratings a exportar de la partición elegida")
    p.add_argument("--movies", type=_int_list, help="Solo ratings de estas películas")
    p.add_argument("--output", default=EMBEDDINGS_FILE_NAME)

    p = subparsers.add_parser("predict", help="Imprime el rating predicho para un ejemplo")
    _add_common_flags(p)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--user-id", type=int, required=True)
    p.add_argument("--age", type=int, required=True)
    p.add_argument("--occupation", required=True)
    p.add_argument("--zip", required=True)
    p.add_argument("--gender", required=True)
    p.add_argument("--movie-id", type=int, required=True)
    p.add_argument("--genres", default="", help="Géneros separados por '|' o ','")
    p.add_argument("--clamp", action="store_true", help="Recorta la predicción a [1, 5]")

    p = subparsers.add_parser("cross-validate", help="Entrena un modelo por fold estándar de 100K")
    _add_common_flags(p)
    _add_data_flags(p, splits=False)
    _add_model_flags(p)
    _add_train_flags(p, f"Épocas por fold (por defecto {EPOCHS_ML100K})")
    p.add_argument("--folds", type=_int_list, default=(1, 2, 3, 4, 5))
    p.add_argument("--checkpoint", help="Checkpoint de salida del mejor fold")

    p = subparsers.add_parser("report", help="Genera el PDF de resultados desde el historial de corridas")
    _add_common_flags(p)
    p.add_argument("--run-history", default=RUN_HISTORY_FILE)
    p.add_argument("--output-folder", default=REPORTS_FOLDER)

    return parser


# ============================================
# CONFIGURACIÓN
# ============================================
_MODEL_FLAGS = ("variant", "attention", "architecture", "precision", "link_dim", "place_dim",
                "encoder_hidden", "mlp_widths", "rounds_link", "rounds_place")
_TRAIN_FLAGS = ("batch_size", "lr", "weight_decay", "eval_every", "lr_decay")


def _file_values(args):
    """Valores del archivo --config separados en (modelo, entrenamiento)"""
    if not args.config:
        return {}, {}
    values = read_config_file(args.config)
    model_keys = {f.name for f in fields(ModelConfig)}
    train_keys = {f.name for f in fields(TrainRunConfig)}
    unknown = sorted(set(values) - model_keys - train_keys - {"preset"})
    if unknown:
        raise ConfigurationError(", ".join(unknown), f"clave desconocida en {args.config}")
    model_values = {k: v for k, v in values.items() if k in model_keys or k == "preset"}
    train_values = {k: v for k, v in values.items() if k in train_keys}
    return model_values, train_values


def _flag_values(args, names):
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def resolve_model_config(args, file_values) -> ModelConfig:
    """Valores por defecto < archivo < banderas"""
    file_values = dict(file_values)
    preset = args.preset or file_values.pop("preset", "full")
    file_values.pop("preset", None)
    config = apply_overrides(ModelConfig, file_values, base=ModelConfig.preset(preset))
    overrides = _flag_values(args, _MODEL_FLAGS)
    if args.seed is not None:
        overrides["seed"] = args.seed
    return config.with_overrides(**overrides) if overrides else config


def resolve_epochs(args, file_values, default) -> int:
    if args.epochs is not None:
        return args.epochs
    if "epochs" in file_values:
        try:
            epochs = int(file_values["epochs"])
        except (TypeError, ValueError) as e:
            raise ConfigurationError("epochs", f"se esperaba un entero, se recibió {file_values['epochs']!r}",
                                     original_error=e)
        if epochs < 0:
            raise ConfigurationError("epochs", f"no puede ser negativo, se recibió {epochs}")
        return epochs
    return default


def resolve_train_config(args, file_values, epochs) -> TrainRunConfig:
    """TrainRunConfig de una corrida con al menos una época"""
    values = {k: v for k, v in file_values.items() if k != "epochs"}
    config = apply_overrides(TrainRunConfig, values, base=TrainRunConfig(epochs=epochs))
    overrides = _flag_values(args, _TRAIN_FLAGS)
    if args.seed is not None:
        overrides["seed"] = args.seed
    return apply_overrides(TrainRunConfig, overrides, base=config) if overrides else config


def _seed(args) -> int:
    return DEFAULT_SEED if args.seed is None else args.seed


# ============================================
# DATOS
# ============================================
def load_data(args):
    dataset = load_dataset(args.dataset_kind, args.dataset_dir)
    if args.subsample:
        dataset = subsample(dataset, args.subsample, _seed(args))
    return dataset


def resolve_split(args, dataset) -> Split:
    """
    Por defecto: fold 1 en 100K completo, partición temporal en cualquier otro caso.
    """
    if getattr(args, "fold", None) is not None:
        return fold_split(dataset, args.fold)
    split = getattr(args, "split", None)
    if split == "all":
        return Split(np.arange(len(dataset), dtype=np.int64), np.zeros(0, dtype=np.int64), label="all")
    if split is None and dataset.provenance == "ml100k" and not args.subsample:
        return fold_split(dataset, 1)
    return temporal_split(dataset)


def _default_checkpoint(label, kind, suffix=""):
    safe = label.replace("α", "alpha").replace("β", "beta").replace("*", "")
    return str(Path(CHECKPOINT_FOLDER) / f"{safe}_{kind}{suffix}{CHECKPOINT_SUFFIX}")


def _history_path(args, checkpoint_path) -> Path:
    return Path(args.history) if args.history else Path(checkpoint_path).parent / HISTORY_FILE_NAME


def _json_float(value):
    return None if value is None or math.isnan(value) else float(value)


def _record_run(args, checkpoint_path, run_type, dataset, split_label, model_label, history):
    entry = RunEntry(
        checkpoint=str(checkpoint_path),
        run_type=run_type,
        dataset=dataset.provenance,
        split=split_label,
        model=model_label,
        epochs=len(history),
        train_rmse=history.final_train_rmse if len(history) else math.nan,
        test_rmse=history.final_test_rmse if len(history) else math.nan,
    )
    get_run_history_manager(args.run_history).add_run(entry)


def _metadata(dataset, split, history):
    return {
        "dataset": dataset.provenance,
        "split": split.label,
        "epochs": len(history),
        "train_rmse": _json_float(history.final_train_rmse) if len(history) else None,
        "test_rmse": _json_float(history.final_test_rmse) if len(history) else None,
    }


# ============================================
# SUBCOMANDOS
# ============================================
def cmd_train(args) -> int:
    model_file, train_file = _file_values(args)
    config = resolve_model_config(args, model_file)
    default_epochs = EPOCHS_ML100K if args.dataset_kind == "ml100k" else EPOCHS_ML1M
    epochs = resolve_epochs(args, train_file, default_epochs)

    dataset = load_data(args)
    split = resolve_split(args, dataset)
    model = build_model(config, dataset.vocabs)

    history = History()
    optimizer_state = None
    if epochs > 0:
        cfg = resolve_train_config(args, train_file, epochs)
        optimizer = AmsGrad(model.params, cfg.optimizer_settings())
        model, history = train(model, dataset, split, cfg, optimizer)
        optimizer_state = optimizer.state
    else:
        logger.info("Épocas = 0: se guarda el modelo recién inicializado")

    checkpoint_path = args.checkpoint or _default_checkpoint(model.label, dataset.provenance)
    write_history(history, _history_path(args, checkpoint_path))
    save(Checkpoint.from_model(model, optimizer_state, _metadata(dataset, split, history)), checkpoint_path)
    _record_run(args, checkpoint_path, "train", dataset, split.label, model.label, history)

    print(checkpoint_path)
    return 0


def cmd_eval(args) -> int:
    ckpt = load(args.checkpoint)
    model = ckpt.to_model()
    dataset = load_data(args)
    check_vocabularies(model, dataset)
    split = resolve_split(args, dataset)
    positions = split.test if len(split.test) else split.train
    value = evaluate(model, dataset, positions)
    print(f"{value:.6f}")
    return 0


def cmd_transfer(args) -> int:
    _, train_file = _file_values(args)
    ckpt = load(args.checkpoint)
    dataset = load_data(args)
    split = resolve_split(args, dataset)
    model = transfer(ckpt, dataset, _seed(args))
    epochs = resolve_epochs(args, train_file, FINE_TUNE_EPOCHS)

    history = History()
    optimizer_state = None
    if epochs > 0:
        cfg = resolve_train_config(args, train_file, epochs)
        optimizer = AmsGrad(model.params, cfg.optimizer_settings())
        model, history = train(model, dataset, split, cfg, optimizer)
        optimizer_state = optimizer.state

    label = f"{model.label}*"
    output = args.output or _default_checkpoint(label, dataset.provenance, "_transfer")
    metadata = _metadata(dataset, split, history)
    metadata["source"] = ckpt.metadata.get("dataset")
    write_history(history, _history_path(args, output))
    save(Checkpoint.from_model(model, optimizer_state, metadata), output)
    _record_run(args, output, "transfer", dataset, split.label, label, history)

    print(output)
    return 0


def cmd_export(args) -> int:
    model = load(args.checkpoint).to_model()
    dataset = load_data(args)
    check_vocabularies(model, dataset)

    positions = None
    if args.part != "all":
        split = resolve_split(args, dataset)
        positions = split.train if args.part == "train" else split.test
    selected = select_examples(dataset, positions, args.movies)
    path = export_embeddings(model, dataset, selected, args.output)
    print(path)
    return 0


def cmd_predict(args) -> int:
    model = load(args.checkpoint).to_model()
    genres = tuple(name.strip() for name in args.genres.replace(",", "|").split("|") if name.strip())
    example = RatingExample(
        user_id=args.user_id,
        age=args.age,
        occupation=args.occupation,
        zip=args.zip,
        gender=args.gender,
        movie_id=args.movie_id,
        genres=genres,
        rating=0.0,
    )
    value = predict_example(model, example, clamp=args.clamp)
    print(f"{value:.6f}")
    return 0


def cmd_cross_validate(args) -> int:
    model_file, train_file = _file_values(args)
    config = resolve_model_config(args, model_file)
    epochs = resolve_epochs(args, train_file, EPOCHS_ML100K)
    if epochs < 1:
        raise ConfigurationError("epochs", "la validación cruzada requiere al menos una época")
    cfg = resolve_train_config(args, train_file, epochs)

    dataset = load_data(args)
    result = cross_validate(config, dataset, cfg, args.folds)
    best = result.best

    for fold in result.folds:
        print(f"fold {fold.fold}\t{fold.test_rmse:.6f}")
    print(f"mean\t{result.mean_test_rmse:.6f}")

    label = best.model.label
    checkpoint_path = args.checkpoint or _default_checkpoint(label, dataset.provenance, "_best_fold")
    split = Split(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), label=f"fold {best.fold}")
    metadata = _metadata(dataset, split, best.history)
    metadata["mean_test_rmse"] = _json_float(result.mean_test_rmse)
    write_history(best.history, _history_path(args, checkpoint_path))
    save(Checkpoint.from_model(best.model, best.optimizer.state, metadata), checkpoint_path)
    _record_run(args, checkpoint_path, "cross-validate", dataset, split.label, label, best.history)
    return 0


def cmd_report(args) -> int:
    from src.pdf import generate_results_report

    entries = get_run_history_manager(args.run_history).get_all_runs()
    if not entries:
        raise DomainError("report", f"no hay corridas registradas en {args.run_history}")
    print(generate_results_report(entries, args.output_folder))
    return 0


COMMANDS = {
    "train": cmd_train,
    "eval": cmd_eval,
    "transfer": cmd_transfer,
    "export-embeddings": cmd_export,
    "predict": cmd_predict,
    "cross-validate": cmd_cross_validate,
    "report": cmd_report,
}


def run_cli(argv=None) -> int:
    """
    Ejecuta un subcomando y retorna el código de salida del proceso.

    Los errores de la biblioteca se reducen a una línea en stderr; el
    detalle técnico queda en el log.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return 2
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    setup_logging(
        level=logging.DEBUG if args.verbose else logging.INFO,
        console_output=True,
        log_dir=args.log_dir or None,
    )

    try:
        return COMMANDS[args.command](args)
    except HBGNNError as e:
        logger.error(f"❌ {e.get_technical_details()}")
        print(f"{PROG}: error: {e.get_user_message()}", file=sys.stderr)
        return 1
    except OSError as e:
        logger.error(f"❌ Error de E/S: {e}", exc_info=True)
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 1

"""Operator CLI: data synthesis, training, evaluation, prediction, serving.

Report-producing commands write matplotlib figures next to their delimited
output: training emits curve PNGs beside the epoch-log CSV, `evaluate` emits
the ROC PNG and confusion heatmap beside the metrics and ROC CSVs, and
`feature-maps` renders the per-filter activation grid.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import figures
from .health import pipeline as health_pipeline
from .images import pipeline as image_pipeline
from .metrics import confusion, roc_auc, summary, write_roc_csv
from .models import (
    Mod1DConfig,
    Mod2DConfig,
    build_mod1d,
    build_mod2d,
    demented_score,
    extract_feature_maps,
    load_weights,
    predict_face,
    predict_health,
    save_weights,
    train,
    write_epoch_log,
)
from .synthdata import synth_health_records, write_image_corpus


@click.group()
def main():
    """Gamified dementia-screening toolkit."""


def _echo_epoch(row):
    click.echo(
        f"epoch {row.epoch:4d}  train_loss {row.train_loss:.4f}  "
        f"train_acc {row.train_acc:.4f}  val_loss {row.val_loss:.4f}  "
        f"val_acc {row.val_acc:.4f}"
    )


def _write_training_report(out_path: Path, log_rows):
    stem = out_path.with_suffix("")
    epochs_csv = Path(f"{stem}_epochs.csv")
    write_epoch_log(epochs_csv, log_rows)
    figures.save_training_curves(
        log_rows, Path(f"{stem}_accuracy.png"), Path(f"{stem}_loss.png")
    )
    click.echo(f"epoch log: {epochs_csv}")
    click.echo(f"figures:   {stem}_accuracy.png, {stem}_loss.png")


@main.command("synth-data")
@click.option("--kind", type=click.Choice(["health", "images"]), required=True)
@click.option("--n", type=int, default=1000, show_default=True,
              help="records (health) or train images per class (images)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True,
              help="CSV path (health) or corpus root directory (images)")
def synth_data(kind, n, seed, out):
    """Generate the seeded synthetic corpora used for desk-scale runs."""
    if kind == "health":
        records = synth_health_records(n, seed)
        health_pipeline.write_csv(out, records)
        demented = sum(r.dementia_label for r in records)
        click.echo(f"wrote {n} records ({demented} demented) to {out}")
    else:
        counts = write_image_corpus(out, n_train_per_class=n, seed=seed)
        click.echo(f"wrote image corpus to {out}: {json.dumps(counts)}")


@main.command("train-1d")
@click.option("--data", type=click.Path(exists=True), required=True, help="health CSV")
@click.option("--epochs", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--lr", type=float, default=0.001, show_default=True)
@click.option("--batch-size", type=int, default=32, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="weights file path")
def train_1d(data, epochs, seed, lr, batch_size, out):
    """Train the health-metrics network end to end from a CSV."""
    records = health_pipeline.read_csv(data)
    arrays = health_pipeline.prepare_training_arrays(records, seed=seed)

    def as_inputs(part):
        x, y = arrays[part]
        return health_pipeline.to_model_inputs(x), y

    model = build_mod1d(seed=seed)
    cfg = Mod1DConfig(learning_rate=lr, epochs=epochs, batch_size=batch_size, seed=seed)
    log_rows = train(model, as_inputs("train"), cfg, val_xy=as_inputs("validation"),
                     progress=_echo_epoch)
    from .models.training import evaluate_model

    test_loss, test_acc = evaluate_model(model, *as_inputs("test"))
    click.echo(f"test_loss {test_loss:.4f}  test_acc {test_acc:.4f}")
    out_path = Path(out)
    save_weights(model, "MOD1D", out_path, preprocessing=arrays["scaler"].to_dict())
    click.echo(f"weights:   {out_path}")
    _write_training_report(out_path, log_rows)


@main.command("train-2d")
@click.option("--data", type=click.Path(exists=True), required=True,
              help="image corpus root directory")
@click.option("--epochs", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--lr", type=float, default=0.0001, show_default=True)
@click.option("--batch-size", type=int, default=32, show_default=True)
@click.option("--image-size", type=int, default=224, show_default=True,
              help="input extent; 64 gives the fast smoke variant")
@click.option("--augment/--no-augment", default=True, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="weights file path")
def train_2d(data, epochs, seed, lr, batch_size, image_size, augment, out):
    """Train the facial-image network from a directory corpus."""
    samples, counts = image_pipeline.load_dataset(data, image_size=image_size)
    click.echo(f"loaded: {json.dumps(counts)}")
    model = build_mod2d(seed=seed, input_size=image_size)
    cfg = Mod2DConfig(learning_rate=lr, epochs=epochs, batch_size=batch_size, seed=seed)

    def batch_source(rng):
        return image_pipeline.batches(
            samples["train"], batch_size=batch_size, augment_on=augment, rng=rng
        )

    val_x = np.stack([s.pixels for s in samples["validation"]])
    val_y = np.array([s.label for s in samples["validation"]])
    log_rows = train(model, batch_source, cfg, val_xy=(val_x, val_y),
                     progress=_echo_epoch)
    out_path = Path(out)
    save_weights(model, "MOD2D", out_path)
    click.echo(f"weights:   {out_path}")
    _write_training_report(out_path, log_rows)


def _scores_for_evaluation(model, architecture, manifest, data):
    if architecture == "MOD1D":
        records = health_pipeline.read_csv(data)
        preprocessing = manifest.get("preprocessing")
        if preprocessing is None:
            raise click.ClickException("weights file lacks scaler statistics")
        scaler = health_pipeline.ScalerParams.from_dict(preprocessing)
        x = np.stack([health_pipeline.categorize(r) for r in records])
        y = np.array([r.dementia_label for r in records])
        scaled = scaler.transform(x).astype(np.float32).reshape(len(x), -1, 1)
        scores = []
        for start in range(0, len(scaled), 64):
            out = model.forward(scaled[start : start + 64], training=False)
            scores.append(demented_score(model, out))
        return np.concatenate(scores), y
    samples, _ = image_pipeline.load_dataset(data, image_size=model.input_shape[0])
    test = samples["test"]
    scores = []
    labels = []
    for xb, yb in image_pipeline.batches(test, batch_size=16):
        out = model.forward(xb, training=False)
        scores.append(demented_score(model, out))
        labels.append(yb)
    return np.concatenate(scores), np.concatenate(labels)


@main.command("evaluate")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--data", type=click.Path(exists=True), required=True,
              help="health CSV (1D weights) or image corpus root (2D weights)")
@click.option("--out-dir", type=click.Path(), default="evaluation", show_default=True)
def evaluate(model_path, data, out_dir):
    """Score a dataset and emit the metrics report, ROC CSV, and figures."""
    model, architecture, manifest = load_weights(model_path)
    scores, labels = _scores_for_evaluation(model, architecture, manifest, data)
    preds = (scores > 0.5).astype(int)
    cm = confusion(preds, labels)
    s = summary(cm)
    auc, points = roc_auc(scores, labels)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report_csv = out / "metrics.csv"
    with open(report_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["metric", "value"])
        writer.writerow(["accuracy", f"{s.accuracy:.6f}"])
        writer.writerow(["precision", f"{s.precision:.6f}"])
        writer.writerow(["recall", f"{s.recall:.6f}"])
        writer.writerow(["f1", f"{s.f1:.6f}"])
        writer.writerow(["roc_auc", f"{auc:.6f}"])
        writer.writerow(["tp", cm.tp])
        writer.writerow(["tn", cm.tn])
        writer.writerow(["fp", cm.fp])
        writer.writerow(["fn", cm.fn])
    write_roc_csv(out / "roc.csv", points)
    figures.save_roc_curve(points, auc, out / "roc.png")
    figures.save_confusion_figure(cm, out / "confusion.png")

    click.echo(f"samples   {cm.total}")
    click.echo(f"accuracy  {s.accuracy:.4f}")
    click.echo(f"precision {s.precision:.4f}")
    click.echo(f"recall    {s.recall:.4f}")
    click.echo(f"f1        {s.f1:.4f}")
    click.echo(f"roc_auc   {auc:.4f}")
    if s.degenerate:
        click.echo(f"degenerate metrics (zero denominator): {', '.join(s.degenerate)}")
    click.echo(f"report: {report_csv} (+ roc.csv, roc.png, confusion.png)")


@main.command("predict-health")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--age", type=float, required=True)
@click.option("--blood-oxygen", type=float, required=True)
@click.option("--heart-rate", type=float, required=True)
@click.option("--body-temp", type=float, required=True)
@click.option("--weight", type=float, required=True)
@click.option("--diabetic", type=click.IntRange(0, 1), required=True)
def predict_health_cmd(model_path, age, blood_oxygen, heart_rate, body_temp, weight,
                       diabetic):
    """Predict from one set of raw health metrics."""
    model, _, manifest = load_weights(model_path, expected_architecture="MOD1D")
    preprocessing = manifest.get("preprocessing")
    if preprocessing is None:
        raise click.ClickException("weights file lacks scaler statistics")
    scaler = health_pipeline.ScalerParams.from_dict(preprocessing)
    record = health_pipeline.HealthRecord(
        age=age, blood_oxygen=blood_oxygen, heart_rate=heart_rate,
        body_temp=body_temp, weight=weight, diabetic=diabetic,
    )
    result = predict_health(model, record, scaler)
    click.echo(json.dumps({"score": result.score, "label": result.label}))


@main.command("predict-face")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--image", "image_path", type=click.Path(exists=True), required=True)
def predict_face_cmd(model_path, image_path):
    """Predict from one facial image file."""
    model, _, _ = load_weights(model_path, expected_architecture="MOD2D")
    result = predict_face(model, Path(image_path).read_bytes())
    click.echo(json.dumps({"score": result.score, "label": result.label}))


@main.command("feature-maps")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--image", "image_path", type=click.Path(exists=True), required=True)
@click.option("--layer", type=int, required=True, help="conv layer index in the stack")
@click.option("--out-dir", type=click.Path(), default="feature_maps", show_default=True)
def feature_maps_cmd(model_path, image_path, layer, out_dir):
    """Render one conv layer's per-filter activation maps as a PNG grid."""
    model, _, _ = load_weights(model_path, expected_architecture="MOD2D")
    pixels = image_pipeline.decode_image_bytes(
        Path(image_path).read_bytes(), size=model.input_shape[0]
    )
    try:
        maps = extract_feature_maps(model, pixels, layer)
    except (ValueError, IndexError) as exc:
        raise click.ClickException(str(exc)) from exc
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid_path = out / f"layer{layer}_maps.png"
    figures.save_feature_map_grid(
        maps, grid_path, title=f"conv layer {layer}: {len(maps)} filters"
    )
    click.echo(f"{len(maps)} maps of {maps[0].shape[0]}x{maps[0].shape[1]} -> {grid_path}")


@main.command("serve")
@click.option("--port", type=int, default=None)
@click.option("--weights-1d", type=click.Path(exists=True), default=None)
@click.option("--weights-2d", type=click.Path(exists=True), default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="key=value config file; flags override its values")
@click.option("--static-dir", type=click.Path(), default=None,
              help="directory of built UI assets to serve at /")
def serve(port, weights_1d, weights_2d, config_path, static_dir):
    """Run the screening service."""
    import uvicorn

    from .service import ModelRegistry, ServiceConfig, SessionStore, create_app, load_config

    cfg = load_config(config_path) if config_path else ServiceConfig()
    if port is not None:
        cfg.port = port
    if weights_1d is not None:
        cfg.weights_1d = weights_1d
    if weights_2d is not None:
        cfg.weights_2d = weights_2d
    if not cfg.weights_1d or not cfg.weights_2d:
        raise click.ClickException("both --weights-1d and --weights-2d are required")
    registry = ModelRegistry.from_files(cfg.weights_1d, cfg.weights_2d)
    store = SessionStore(levels=cfg.levels, ttl_s=cfg.session_ttl_s)
    app = create_app(registry, store, static_dir=static_dir)
    click.echo(f"serving on port {cfg.port}")
    uvicorn.run(app, host="0.0.0.0", port=cfg.port, log_level="info")


if __name__ == "__main__":
    sys.exit(main())

"""Composable pipeline subcommands over staged artifact files.

The human labeling step splits the pipeline in two, so every stage reads and
writes files: extract -> preprocess -> corpus -> train -> vectorize ->
cluster -> (label) -> classify -> evaluate. Exit status 0 is success, 1 a
usage or configuration problem, 2 a data problem; data diagnostics go to
stderr as JSON lines.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import cluster as cl
from . import evaluate as ev
from .config import PipelineConfig
from .contexts import ContextConfig, build_corpus
from .extract import RawPage, extract_page_text, extract_tables
from .indexing import train_word_space, space_from_record, space_to_record
from .io import build_meta, read_json, read_jsonl, write_json, write_jsonl
from .preprocess import (
    EmptyTableError,
    PreprocessOptions,
    grid_from_record,
    grid_to_record,
    normalize_table,
)
from .synth import generate_corpus
from .vectorize import TableVector, table_vector


class CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


def _diag(message: str, **extra) -> None:
    record = {"level": "error", "message": message}
    record.update(extra)
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def _load_config(args) -> PipelineConfig:
    data = {}
    if getattr(args, "config", None):
        data = read_json(args.config)
    cfg = PipelineConfig.from_dict(data)
    for attr, key in (
        ("seed", "seed"),
        ("dim", "dim"),
        ("k", "k"),
        ("reps", "reps_m"),
        ("knn_k", "knn_k"),
        ("min_rows", "min_rows"),
        ("min_cols", "min_cols"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            setattr(cfg, key, value)
    contexts = getattr(args, "contexts", None)
    if contexts is not None:
        cfg.contexts = tuple(part.strip() for part in contexts.split(",") if part.strip())
    k_candidates = getattr(args, "k_candidates", None)
    if k_candidates is not None:
        cfg.k_candidates = tuple(int(x) for x in k_candidates.split(","))
    cfg.__post_init__()
    return cfg


def _parse_k(value: str):
    return value if value == "auto" else int(value)


def build_parser() -> _Parser:
    parser = _Parser(prog="tabletyper", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def stage(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="pipeline config JSON")
        p.add_argument("--seed", type=int)
        return p

    p = stage("synth", "generate the bundled synthetic benchmark corpus")
    p.add_argument("--out-pages", required=True)
    p.add_argument("--out-truth", required=True)
    p.add_argument("--per-type", type=int, default=200)

    p = stage("extract", "pages JSONL -> leaf tables + page text")
    p.add_argument("--in", dest="pages", nargs="+", required=True)
    p.add_argument("--out-tables", required=True)
    p.add_argument("--out-pagetext", required=True)
    p.add_argument("--min-rows", type=int)
    p.add_argument("--min-cols", type=int)

    p = stage("preprocess", "tables JSONL -> normalized grids")
    p.add_argument("--in", dest="tables", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-regularize", action="store_true")

    p = stage("corpus", "grids + page text -> context sentence file")
    p.add_argument("--grids", required=True)
    p.add_argument("--pagetext")
    p.add_argument("--out", required=True)
    p.add_argument("--contexts", help="comma list from t,c,h,a")

    p = stage("train", "sentence file -> word space JSON")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int)

    p = stage("vectorize", "grids + word space -> table vectors")
    p.add_argument("--grids", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--out", required=True)

    p = stage("cluster", "table vectors -> model + clusters for labeling")
    p.add_argument("--vectors", required=True)
    p.add_argument("--tables", required=True)
    p.add_argument("--grids", required=True)
    p.add_argument("--out-model", required=True)
    p.add_argument("--out-clusters", required=True)
    p.add_argument("--k", type=_parse_k, help="cluster count or 'auto'")
    p.add_argument("--k-candidates", help="comma list for k=auto")
    p.add_argument("--reps", type=int)

    p = stage("classify", "model + labels -> predictions, or supervised KNN")
    p.add_argument("--model")
    p.add_argument("--labels")
    p.add_argument("--train-vectors")
    p.add_argument("--train-truth")
    p.add_argument("--vectors")
    p.add_argument("--knn-k", type=int)
    p.add_argument("--out", required=True)

    p = stage("evaluate", "predictions vs groundtruth -> metrics JSON")
    p.add_argument("--predictions", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--out", required=True)

    p = stage("sweep", "grid of settings -> CSV of scores")
    p.add_argument("--grids", required=True)
    p.add_argument("--pagetext")
    p.add_argument("--truth", required=True)
    p.add_argument("--dims", required=True, help="comma list of dimensions")
    p.add_argument(
        "--contexts",
        dest="sweep_contexts",
        required=True,
        help="comma list of settings, e.g. c,c+h,t",
    )
    p.add_argument("--ks", required=True, help="comma list of cluster counts")
    p.add_argument("--out", required=True)
    p.add_argument("--folds", type=int, default=10)

    p = stage("serve-labeler", "serve the labeling UI over a clusters file")
    p.add_argument("--clusters", required=True)
    p.add_argument("--port", type=int, default=8350)
    p.add_argument("--labels-out")
    p.add_argument("--ui-dir", help="built frontend directory (default: ./frontend/dist)")

    return parser


def _read_pages(paths) -> list[RawPage]:
    return [
        RawPage(page_id=r["page_id"], url=r.get("url", ""), html=r["html"])
        for path in paths
        for r in read_jsonl(path)
    ]


def _indexed_inputs(name: str, paths) -> dict:
    if len(paths) == 1:
        return {name: paths[0]}
    return {f"{name}:{i}": path for i, path in enumerate(paths)}


def _read_grids(path):
    return [grid_from_record(r) for r in read_jsonl(path)]


def _read_vectors(path) -> list[TableVector]:
    return [
        TableVector(table_id=r["table_id"], values=np.asarray(r["vec"], dtype=np.float64))
        for r in read_jsonl(path)
    ]


def _read_truth(path) -> dict[str, str]:
    return {r["table_id"]: cl.validate_type(r["type"]) for r in read_jsonl(path)}


def _write_sidecar_meta(path: str, meta: dict) -> None:
    write_json(Path(str(path) + ".meta.json"), {}, meta=meta)


def _cmd_synth(args, cfg: PipelineConfig) -> int:
    pages, truth = generate_corpus(per_type=args.per_type, seed=cfg.seed)
    meta = build_meta("synth", cfg.to_dict(), {})
    write_jsonl(args.out_pages, pages, meta=meta)
    write_jsonl(args.out_truth, truth, meta=meta)
    return 0


def _cmd_extract(args, cfg: PipelineConfig) -> int:
    diagnostics: list[dict] = []
    tables_out = []
    text_out = []
    for page in _read_pages(args.pages):
        for table in extract_tables(page, cfg.min_rows, cfg.min_cols, diagnostics):
            tables_out.append(
                {
                    "table_id": table.table_id,
                    "page_id": table.page_id,
                    "html": table.html_fragment,
                    "rows": table.row_count,
                    "cols": table.col_count,
                }
            )
        text = extract_page_text(page, diagnostics)
        text_out.append({"page_id": text.page_id, "text": text.text})
    for record in diagnostics:
        _diag(record["error"], page_id=record["page_id"])
    meta = build_meta("extract", cfg.to_dict(), _indexed_inputs("pages", args.pages))
    write_jsonl(args.out_tables, tables_out, meta=meta)
    write_jsonl(args.out_pagetext, text_out, meta=meta)
    return 0


def _cmd_preprocess(args, cfg: PipelineConfig) -> int:
    from .extract import ExtractedTable

    opts = PreprocessOptions(regularize_digits=cfg.regularize_digits and not args.no_regularize)
    grids = []
    for path in args.tables:
        for record in read_jsonl(path):
            table = ExtractedTable(
                table_id=record["table_id"],
                page_id=record["page_id"],
                html_fragment=record["html"],
                row_count=record["rows"],
                col_count=record["cols"],
            )
            try:
                grids.append(grid_to_record(normalize_table(table, opts)))
            except EmptyTableError as exc:
                _diag(str(exc), table_id=record["table_id"])
    meta = build_meta("preprocess", cfg.to_dict(), _indexed_inputs("tables", args.tables))
    write_jsonl(args.out, grids, meta=meta)
    return 0


def _cmd_corpus(args, cfg: PipelineConfig) -> int:
    grids = _read_grids(args.grids)
    page_texts = []
    inputs = {"grids": args.grids}
    if args.pagetext:
        from .extract import PageText

        page_texts = [
            PageText(page_id=r["page_id"], text=r["text"]) for r in read_jsonl(args.pagetext)
        ]
        inputs["pagetext"] = args.pagetext
    ctx = cfg.context_config()
    with open(args.out, "w", encoding="utf-8") as handle:
        for sentence in build_corpus(grids, page_texts, ctx):
            handle.write(" ".join(sentence) + "\n")
    _write_sidecar_meta(args.out, build_meta("corpus", cfg.to_dict(), inputs))
    return 0


def _read_corpus(path):
    with open(path, "r", encoding="utf-8") as handle:
        return [line.split() for line in handle if line.strip()]


def _cmd_train(args, cfg: PipelineConfig) -> int:
    sentences = _read_corpus(args.corpus)
    space = train_word_space(sentences, cfg.ri_config())
    meta = build_meta("train", cfg.to_dict(), {"corpus": args.corpus})
    write_json(args.out, space_to_record(space), meta=meta)
    return 0


def _cmd_vectorize(args, cfg: PipelineConfig) -> int:
    space = space_from_record(read_json(args.space))
    records = []
    for grid in _read_grids(args.grids):
        vec = table_vector(grid, space)
        records.append({"table_id": vec.table_id, "vec": [float(x) for x in vec.values]})
    meta = build_meta("vectorize", cfg.to_dict(), {"grids": args.grids, "space": args.space})
    write_jsonl(args.out, records, meta=meta)
    return 0


def _cmd_cluster(args, cfg: PipelineConfig) -> int:
    vectors = _read_vectors(args.vectors)
    if cfg.k == "auto":
        k, _sweep = cl.select_k(vectors, candidates=cfg.k_candidates, seed=cfg.seed)
    else:
        k = cfg.k
    model = cl.kmeans_fit(vectors, k, seed=cfg.seed)
    silhouette = (
        cl.silhouette_score(vectors, model.assignments, seed=cfg.seed) if k > 1 else None
    )
    reps = cl.representatives(model, vectors, m=cfg.reps_m)
    html_by_id = {r["table_id"]: r["html"] for r in read_jsonl(args.tables)}
    grid_by_id = {r["table_id"]: r["cells"] for r in read_jsonl(args.grids)}
    inputs = {"vectors": args.vectors, "tables": args.tables, "grids": args.grids}
    meta = build_meta("cluster", cfg.to_dict(), inputs)
    sizes = {c: 0 for c in range(model.k)}
    for assigned in model.assignments.values():
        sizes[assigned] += 1
    write_json(
        args.out_model,
        {
            "k": model.k,
            "dim": int(model.centroids.shape[1]),
            "seed": model.seed,
            "silhouette": silhouette,
            "centroids": [[float(x) for x in row] for row in model.centroids],
            "assignments": dict(sorted(model.assignments.items())),
        },
        meta=meta,
    )
    write_json(
        args.out_clusters,
        {
            "clusters": [
                {
                    "id": c,
                    "size": sizes[c],
                    "representatives": [
                        {
                            "table_id": tid,
                            "html": html_by_id.get(tid, ""),
                            "grid": grid_by_id.get(tid, []),
                        }
                        for tid in reps[c]
                    ],
                }
                for c in range(model.k)
            ]
        },
        meta=meta,
    )
    return 0


def _model_from_record(record: dict) -> cl.ClusterModel:
    return cl.ClusterModel(
        k=record["k"],
        centroids=np.asarray(record["centroids"], dtype=np.float64),
        assignments={t: int(c) for t, c in record["assignments"].items()},
        inertia=0.0,
        seed=record.get("seed", 0),
    )


def _cmd_classify(args, cfg: PipelineConfig) -> int:
    if args.model:
        if not args.labels:
            raise CliUsageError("--model requires --labels")
        model = _model_from_record(read_json(args.model))
        raw = read_json(args.labels)
        labels = {int(c): cl.validate_type(t) for c, t in raw.items()}
        predictions = cl.apply_labels(model, labels)
        inputs = {"model": args.model, "labels": args.labels}
    elif args.train_vectors:
        if not (args.train_truth and args.vectors):
            raise CliUsageError("KNN mode needs --train-vectors, --train-truth and --vectors")
        train_vecs = _read_vectors(args.train_vectors)
        truth = _read_truth(args.train_truth)
        train_vecs = [v for v in train_vecs if v.table_id in truth]
        train_labels = [truth[v.table_id] for v in train_vecs]
        queries = _read_vectors(args.vectors)
        predicted = cl.knn_classify(train_vecs, train_labels, queries, k=cfg.knn_k)
        predictions = {q.table_id: p for q, p in zip(queries, predicted)}
        inputs = {
            "train_vectors": args.train_vectors,
            "train_truth": args.train_truth,
            "vectors": args.vectors,
        }
    else:
        raise CliUsageError("classify needs either --model/--labels or KNN inputs")
    meta = build_meta("classify", cfg.to_dict(), inputs)
    records = [
        {"table_id": tid, "type": predictions[tid]} for tid in sorted(predictions)
    ]
    write_jsonl(args.out, records, meta=meta)
    return 0


def _cmd_evaluate(args, cfg: PipelineConfig) -> int:
    predictions = {r["table_id"]: r["type"] for r in read_jsonl(args.predictions)}
    truth = _read_truth(args.truth)
    metrics = ev.score(predictions, truth)
    meta = build_meta(
        "evaluate", cfg.to_dict(), {"predictions": args.predictions, "truth": args.truth}
    )
    write_json(args.out, metrics.to_record(), meta=meta)
    return 0


def _parse_context_setting(setting: str) -> ContextConfig:
    letters = {part.strip() for part in setting.split("+") if part.strip()}
    unknown = letters - {"t", "c", "h", "a"}
    if unknown:
        raise CliUsageError(f"unknown context letters: {sorted(unknown)}")
    return ContextConfig(
        use_surrounding="t" in letters,
        use_cell="c" in letters,
        use_header="h" in letters,
        use_adjacent="a" in letters,
    )


def _cmd_sweep(args, cfg: PipelineConfig) -> int:
    grids = _read_grids(args.grids)
    page_texts = []
    inputs = {"grids": args.grids, "truth": args.truth}
    if args.pagetext:
        from .extract import PageText

        page_texts = [
            PageText(page_id=r["page_id"], text=r["text"]) for r in read_jsonl(args.pagetext)
        ]
        inputs["pagetext"] = args.pagetext
    truth = _read_truth(args.truth)
    dims = [int(x) for x in args.dims.split(",")]
    contexts = [_parse_context_setting(s) for s in args.sweep_contexts.split(",")]
    ks = [int(x) for x in args.ks.split(",")]
    rows = ev.parameter_sweep(
        grids,
        page_texts,
        truth,
        dims,
        contexts,
        ks,
        seed=cfg.seed,
        folds=args.folds,
        knn_k=cfg.knn_k,
        min_count=cfg.min_count,
        max_sentence_fraction=cfg.max_sentence_fraction,
        ri_window=cfg.ri_window,
    )
    fieldnames = list(rows[0]) if rows else ["dim", "contexts", "k"]
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    _write_sidecar_meta(args.out, build_meta("sweep", cfg.to_dict(), inputs))
    return 0


def _cmd_serve_labeler(args, cfg: PipelineConfig) -> int:
    from .server import serve_labeler

    ui_dir = Path(args.ui_dir) if args.ui_dir else Path("frontend/dist")
    if not (ui_dir / "index.html").exists():
        raise CliUsageError(
            f"no labeling UI at {ui_dir} (build the frontend or pass --ui-dir)"
        )
    clusters = Path(args.clusters)
    if not clusters.exists():
        raise FileNotFoundError(str(clusters))
    labels_out = Path(args.labels_out) if args.labels_out else None
    serve_labeler(ui_dir, clusters, labels_out, args.port)
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "extract": _cmd_extract,
    "preprocess": _cmd_preprocess,
    "corpus": _cmd_corpus,
    "train": _cmd_train,
    "vectorize": _cmd_vectorize,
    "cluster": _cmd_cluster,
    "classify": _cmd_classify,
    "evaluate": _cmd_evaluate,
    "sweep": _cmd_sweep,
    "serve-labeler": _cmd_serve_labeler,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(args)
    except (CliUsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args, cfg)
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _diag(f"{type(exc).__name__}: {exc}", command=args.command)
        return 2


if __name__ == "__main__":
    sys.exit(main())

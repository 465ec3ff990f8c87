"""Regenerate the committed test fixtures (3-cluster model + clusters file).

Runs the real pipeline over a small corpus restricted to three archetypes so
k-means with k=3 lands one cluster per type. Output goes to test/fixtures/.
"""

import json
from pathlib import Path

from tabletyper.cluster import kmeans_fit, representatives, silhouette_score
from tabletyper.contexts import ContextConfig, build_corpus
from tabletyper.extract import RawPage, extract_tables
from tabletyper.indexing import RIConfig, train_word_space
from tabletyper.preprocess import grid_to_record, normalize_table
from tabletyper.synth import generate_corpus
from tabletyper.vectorize import table_vector

OUT = Path(__file__).resolve().parent.parent / "test" / "fixtures"
KEEP = {"relational", "matrix", "non_data"}
SEED = 1


def main() -> None:
    pages, truth = generate_corpus(per_type=12, seed=SEED)
    truth_by_id = {t["table_id"]: t["type"] for t in truth}
    grids, tables = [], {}
    for record in pages:
        page = RawPage(**record)
        for table in extract_tables(page):
            if truth_by_id[table.table_id] not in KEEP:
                continue
            tables[table.table_id] = table.html_fragment
            grids.append(normalize_table(table))
    space = train_word_space(
        list(build_corpus(grids, [], ContextConfig(use_cell=True, rng_seed=SEED))),
        RIConfig(dim=64, seed=SEED),
    )
    vectors = [table_vector(g, space) for g in grids]
    model = kmeans_fit(vectors, 3, seed=SEED)
    reps = representatives(model, vectors, m=3)
    grid_records = {g.table_id: grid_to_record(g)["cells"] for g in grids}

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "model.json").write_text(
        json.dumps(
            {
                "k": model.k,
                "dim": int(model.centroids.shape[1]),
                "seed": model.seed,
                "silhouette": silhouette_score(vectors, model.assignments, seed=SEED),
                "centroids": [[float(x) for x in row] for row in model.centroids],
                "assignments": dict(sorted(model.assignments.items())),
            },
            indent=2,
            sort_keys=True,
        )
    )
    (OUT / "clusters.json").write_text(
        json.dumps(
            {
                "clusters": [
                    {
                        "id": c,
                        "size": sum(1 for v in model.assignments.values() if v == c),
                        "representatives": [
                            {"table_id": tid, "html": tables[tid], "grid": grid_records[tid]}
                            for tid in reps[c]
                        ],
                    }
                    for c in range(model.k)
                ]
            },
            indent=2,
            sort_keys=True,
        )
    )
    by_cluster = {}
    for tid, c in model.assignments.items():
        by_cluster.setdefault(c, set()).add(truth_by_id[tid])
    print("cluster purity:", {c: sorted(t) for c, t in sorted(by_cluster.items())})


if __name__ == "__main__":
    main()

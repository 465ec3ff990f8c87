"""JSON/JSONL artifact files with embedded provenance.

Every stage output carries a ``_meta`` object (config snapshot plus sha256
digests of its inputs): JSONL files put it on the first line, JSON files
under a top-level key. Readers skip it transparently. Writers are
deterministic — sorted keys, no timestamps — so identical inputs and config
produce byte-identical artifacts.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Iterator

META_KEY = "_meta"


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def write_jsonl(path: str | Path, records: Iterable[dict], meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        if meta is not None:
            handle.write(dumps({META_KEY: meta}) + "\n")
        for record in records:
            handle.write(dumps(record) + "\n")


def read_jsonl(path: str | Path) -> Iterator[dict]:
    """Yield data records, skipping any leading meta line."""
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            if META_KEY in record and len(record) == 1:
                continue
            yield record


def read_jsonl_meta(path: str | Path) -> dict | None:
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            if META_KEY in record and len(record) == 1:
                return record[META_KEY]
            return None
    return None


def write_json(path: str | Path, obj: dict, meta: dict | None = None) -> None:
    payload = dict(obj)
    if meta is not None:
        payload[META_KEY] = meta
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, ensure_ascii=False, indent=2)
        handle.write("\n")


def read_json(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    payload.pop(META_KEY, None)
    return payload


def read_json_meta(path: str | Path) -> dict | None:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle).get(META_KEY)


def build_meta(stage: str, config_snapshot: dict, inputs: dict[str, str | Path]) -> dict:
    """Provenance block: stage name, config, and input-file digests."""
    return {
        "stage": stage,
        "config": config_snapshot,
        "inputs": {name: sha256_file(p) for name, p in sorted(inputs.items())},
    }

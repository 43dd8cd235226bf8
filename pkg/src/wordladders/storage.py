"""Persistence: append-friendly JSON-lines collections plus per-prompt graph snapshots.

Appends are atomic per collection (one lock each); graph snapshots are written
whole via temp-file replace. Writer serialization per graph is the game
service's job; this layer only guarantees that readers never see torn files.
Records are collapsed on read by their identifier, keeping the latest version,
so state transitions can simply be appended.
"""

from __future__ import annotations

import copy
import json
import threading
from pathlib import Path
from urllib.parse import quote

from .privacy import ensure_pii_free

COLLECTION_IDS = {
    "users": "nickname",
    "matches": "match_id",
    "ladders": "ladder_id",
}


class StorageError(ValueError):
    pass


def _collapse(records: list[dict], id_field: str) -> list[dict]:
    latest: dict[str, dict] = {}
    order: list[str] = []
    for record in records:
        key = record.get(id_field)
        if key is None:
            raise StorageError(f"record without {id_field!r}: {record!r}")
        if key not in latest:
            order.append(key)
        latest[key] = record
    return [latest[key] for key in order]


class MemoryStore:
    """In-memory store with the same contract as the on-disk one."""

    def __init__(self):
        self._collections: dict[str, list[dict]] = {name: [] for name in COLLECTION_IDS}
        self._graphs: dict[tuple[str, str], dict] = {}
        self._lock = threading.Lock()

    def append(self, collection: str, record: dict) -> None:
        if collection not in COLLECTION_IDS:
            raise StorageError(f"unknown collection {collection!r}")
        ensure_pii_free(record)
        with self._lock:
            self._collections[collection].append(copy.deepcopy(record))

    def records(self, collection: str) -> list[dict]:
        if collection not in COLLECTION_IDS:
            raise StorageError(f"unknown collection {collection!r}")
        with self._lock:
            rows = [copy.deepcopy(r) for r in self._collections[collection]]
        return _collapse(rows, COLLECTION_IDS[collection])

    def save_graph(self, language: str, root: str, doc: dict) -> None:
        ensure_pii_free(doc)
        with self._lock:
            self._graphs[(language, root)] = copy.deepcopy(doc)

    def load_graph(self, language: str, root: str) -> dict | None:
        with self._lock:
            doc = self._graphs.get((language, root))
        return copy.deepcopy(doc) if doc is not None else None

    def graphs(self) -> list[dict]:
        with self._lock:
            return [copy.deepcopy(doc) for doc in self._graphs.values()]


class JsonlStore:
    """One JSON-lines file per collection under data_dir, graphs as JSON snapshots."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        (self.data_dir / "graphs").mkdir(exist_ok=True)
        self._locks = {name: threading.Lock() for name in COLLECTION_IDS}
        self._graph_lock = threading.Lock()

    def _collection_path(self, collection: str) -> Path:
        if collection not in COLLECTION_IDS:
            raise StorageError(f"unknown collection {collection!r}")
        return self.data_dir / f"{collection}.jsonl"

    def append(self, collection: str, record: dict) -> None:
        path = self._collection_path(collection)
        ensure_pii_free(record)
        line = json.dumps(record, ensure_ascii=False, sort_keys=True)
        with self._locks[collection]:
            with path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def records(self, collection: str) -> list[dict]:
        path = self._collection_path(collection)
        if not path.exists():
            return []
        with self._locks[collection]:
            lines = path.read_text(encoding="utf-8").splitlines()
        rows = [json.loads(line) for line in lines if line.strip()]
        return _collapse(rows, COLLECTION_IDS[collection])

    def _graph_path(self, language: str, root: str) -> Path:
        return self.data_dir / "graphs" / f"{language}__{quote(root, safe='')}.json"

    def save_graph(self, language: str, root: str, doc: dict) -> None:
        ensure_pii_free(doc)
        path = self._graph_path(language, root)
        tmp = path.with_suffix(".json.tmp")
        with self._graph_lock:
            tmp.write_text(
                json.dumps(doc, ensure_ascii=False, sort_keys=True), encoding="utf-8"
            )
            tmp.replace(path)

    def load_graph(self, language: str, root: str) -> dict | None:
        path = self._graph_path(language, root)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def graphs(self) -> list[dict]:
        docs = []
        for path in sorted((self.data_dir / "graphs").glob("*.json")):
            docs.append(json.loads(path.read_text(encoding="utf-8")))
        return docs

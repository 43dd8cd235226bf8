"""Turn a ladder dump into the specificity ratings dataset.

Pipeline: read ladders.jsonl from a service data directory, clean each ladder
(typo repair, non-word stripping), drop flagged non-taxonomic ladders, score
rung positions, aggregate per lemma, and write CSV or JSON.

Usage:
    python scripts/build_specificity_dataset.py --data-dir data \
        --norms fixtures/norms.tsv --taxonomy fixtures/taxonomy.tsv \
        --output specificity.csv
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from wordladders.cleaning import clean_batch
from wordladders.cli import build_assets
from wordladders.config import EngineConfig, load_config
from wordladders.ladder_graph import deserialize_graph
from wordladders.lexicon import Language
from wordladders.specificity import aggregate, export_specificity, ladder_specificity
from wordladders.storage import JsonlStore


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--data-dir", required=True, help="service data directory")
    parser.add_argument("--norms", required=True)
    parser.add_argument("--taxonomy", required=True)
    parser.add_argument("--blocklist", default=None)
    parser.add_argument("--config", default=None)
    parser.add_argument("--language", default="EN", choices=[l.value for l in Language])
    parser.add_argument("--format", default="csv", choices=["csv", "json"])
    parser.add_argument("--output", default=None, help="default stdout")
    parser.add_argument("--keep-bad", action="store_true",
                        help="include ladders flagged as non-taxonomic")
    args = parser.parse_args()

    config = load_config(args.config) if args.config else EngineConfig()
    language = Language(args.language)
    assets = build_assets(
        language, args.norms, args.taxonomy, args.blocklist, config, with_levels=False
    )[language]

    store = JsonlStore(args.data_dir)
    records = [
        r for r in store.records("ladders") if r.get("language") == language.value
    ]
    graphs = {}
    for doc in store.graphs():
        graph = deserialize_graph(doc)
        if graph.language is language:
            graphs[graph.root] = graph

    observations = []
    kept = flagged = 0
    for cleaned, report in clean_batch(
        records,
        lexicon=assets.entries,
        blocklist=assets.blocklist,
        kb=assets.kb,
        graph_lookup=graphs.get,
        tau=config.tau,
        n_threshold=config.n_threshold,
        kb_mode=config.kb_mode,
    ):
        if report.bad_ladder and not args.keep_bad:
            flagged += 1
            continue
        kept += 1
        observations.extend(ladder_specificity(cleaned).items())

    dataset = aggregate(observations, language, target=config.specificity_target)
    document = export_specificity(dataset, args.format)
    if args.output:
        Path(args.output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)
    print(
        f"# {kept} ladders kept, {flagged} flagged, {len(dataset)} lemmas rated",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Command line front door: serve the HTTP service, audit levels, clean ladder dumps."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cleaning import clean_batch
from .config import EngineConfig, load_config
from .levels import build_levels, export_levels
from .lexicon import (
    Language,
    apply_blocklist,
    load_blocklist,
    load_norms,
    load_taxonomy,
)
from .sessions import GameService, LanguageAssets
from .service import create_app, parse_tokens
from .storage import JsonlStore


def build_assets(
    language: Language,
    norms_path: str,
    taxonomy_path: str,
    blocklist_path: str | None,
    config: EngineConfig,
    with_levels: bool = True,
) -> dict[Language, LanguageAssets]:
    entries = load_norms(norms_path, language)
    blocklist = load_blocklist(blocklist_path) if blocklist_path else set()
    entries = apply_blocklist(entries, blocklist)
    kb = load_taxonomy(taxonomy_path, language)
    table = build_levels(entries, n_levels=config.n_levels) if with_levels else None
    return {language: LanguageAssets(kb=kb, entries=entries, table=table, blocklist=blocklist)}


def _add_asset_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--language", default="EN", choices=[l.value for l in Language])
    parser.add_argument("--norms", required=True, help="norms TSV (lemma pos concreteness frequency familiarity)")
    parser.add_argument("--taxonomy", required=True, help="taxonomy TSV (hyponym<TAB>hypernym)")
    parser.add_argument("--blocklist", default=None, help="one lemma per line")
    parser.add_argument("--config", default=None, help="key = value engine config file")


def cmd_serve(args: argparse.Namespace) -> int:
    config = load_config(args.config) if args.config else EngineConfig()
    language = Language(args.language)
    assets = build_assets(language, args.norms, args.taxonomy, args.blocklist, config)
    store = JsonlStore(args.data_dir)
    service = GameService(assets, config=config, store=store)
    tokens = parse_tokens(os.environ.get("WL_RESEARCH_TOKENS"))
    app = create_app(service, tokens, frontend_dir=args.frontend)
    port = args.port if args.port is not None else int(os.environ.get("WL_PORT", "8000"))

    import uvicorn

    uvicorn.run(app, host=args.host, port=port)
    return 0


def cmd_export_levels(args: argparse.Namespace) -> int:
    config = load_config(args.config) if args.config else EngineConfig()
    language = Language(args.language)
    assets = build_assets(language, args.norms, args.taxonomy, args.blocklist, config)
    sys.stdout.write(export_levels(assets[language].table, language))
    return 0


def cmd_clean(args: argparse.Namespace) -> int:
    config = load_config(args.config) if args.config else EngineConfig()
    language = Language(args.language)
    assets = build_assets(
        language, args.norms, args.taxonomy, args.blocklist, config, with_levels=False
    )[language]
    with open(args.ladders, encoding="utf-8") as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    records = [r for r in records if r.get("language", language.value) == language.value]
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        for _, report in clean_batch(
            records,
            lexicon=assets.entries,
            blocklist=assets.blocklist,
            kb=assets.kb,
            tau=config.tau,
            n_threshold=config.n_threshold,
            kb_mode=config.kb_mode,
        ):
            out.write(json.dumps(report.to_dict(), ensure_ascii=False) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="wordladders",
        description="Gamified hypernym/hyponym ladder collection service and tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=None, help="defaults to $WL_PORT or 8000")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data-dir", default="data", help="JSON-lines collections live here")
    serve.add_argument("--frontend", default=None,
                       help="serve this directory (the built web client) under /app")
    _add_asset_flags(serve)
    serve.set_defaults(func=cmd_serve)

    levels = sub.add_parser("export-levels", help="print the level table as TSV")
    _add_asset_flags(levels)
    levels.set_defaults(func=cmd_export_levels)

    clean = sub.add_parser("clean", help="clean a ladder dump to CleaningReport JSON lines")
    clean.add_argument("--ladders", required=True, help="ladder dump (JSON lines)")
    clean.add_argument("--output", default=None, help="report output path (default stdout)")
    _add_asset_flags(clean)
    clean.set_defaults(func=cmd_clean)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

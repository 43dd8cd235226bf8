"""HTTP facade: player endpoints, researcher export endpoints, bearer-token auth."""

from __future__ import annotations

import csv
import hmac
import io
import json
from dataclasses import dataclass
from typing import Iterable

from fastapi import Depends, FastAPI, Header, HTTPException, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, ConfigDict, Field

from .cleaning import clean_batch
from .ladder_graph import GameMode, Ladder, LadderError, serialize_graph
from .levels import AdvancementDueError
from .lexicon import Language
from .privacy import ensure_pii_free
from .scoring import present_score
from .sessions import (
    AlreadySubmittedError,
    DuplicateNicknameError,
    Education,
    ExpiredMatchError,
    GameService,
    NotParticipantError,
    ReadingHabits,
    SessionError,
    UnknownMatchError,
    UnknownUserError,
    UserProfile,
)
from .specificity import aggregate, ladder_specificity


@dataclass(frozen=True)
class ResearcherToken:
    token_id: str
    label: str = "research"


def parse_tokens(raw: str | None) -> list[ResearcherToken]:
    """Comma-separated ``token`` or ``token:label`` entries from the environment."""
    tokens = []
    for chunk in (raw or "").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        token_id, _, label = chunk.partition(":")
        tokens.append(ResearcherToken(token_id, label or "research"))
    return tokens


EXPORT_COLLECTIONS = ("users", "matches", "ladders", "graphs", "specificity")

_COLUMNS = {
    "users": (
        "nickname", "age", "education", "profession",
        "mother_tongue", "reading_habits", "language_pref",
    ),
    "matches": (
        "match_id", "mode", "language", "prompt", "participants", "started_at",
        "duration", "state", "results", "winner", "team_score",
    ),
    "ladders": (
        "ladder_id", "match_id", "nickname", "language", "mode", "prompt",
        "ascent", "descent", "duration_used", "score", "stars", "ul", "ulv",
        "npl", "validated_flags",
    ),
    "graphs": (
        "root", "language", "total_plays", "max_length",
        "nodes", "hyper_arcs", "hypo_arcs",
    ),
    "specificity": ("lemma", "language", "mean", "sd", "n", "target_reached"),
}

_FILTER_FIELDS = {name: set(columns) for name, columns in _COLUMNS.items()}
_RANGE_OPS = ("gte", "lte", "gt", "lt")
_RESERVED_PARAMS = {"collection", "format", "lines", "limit"}


class UserIn(BaseModel):
    """Registration payload; unknown fields (and thus any PII) are rejected."""

    model_config = ConfigDict(extra="forbid")

    nickname: str = Field(min_length=1)
    age: int = Field(ge=0)
    education: Education
    profession: str = Field(min_length=1)
    mother_tongue: str = Field(min_length=1)
    reading_habits: ReadingHabits
    language_pref: Language = Language.EN


class MatchIn(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: GameMode
    participants: list[str] = Field(min_length=1)
    language: Language = Language.EN


class LadderIn(BaseModel):
    model_config = ConfigDict(extra="forbid")

    nickname: str
    ascent: list[str] = Field(default_factory=list)
    descent: list[str] = Field(default_factory=list)


def _match_view(match) -> dict:
    record = match.to_record()
    record.pop("results")
    return record


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)


def _to_csv(rows: Iterable[dict], columns: tuple[str, ...]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def _coerce_like(value, raw: str):
    """Parse a filter literal to the type of the record value it is tested against."""
    if isinstance(value, bool):
        return raw.strip().lower() in ("true", "1", "yes")
    if isinstance(value, (int, float)):
        return float(raw)
    return raw


def _row_matches(row: dict, field: str, op: str, raw: str) -> bool:
    value = row.get(field)
    if value is None:
        return False
    try:
        literal = _coerce_like(value, raw)
    except ValueError:
        raise HTTPException(400, f"filter value {raw!r} is not comparable to {field!r}")
    if op == "eq":
        if isinstance(value, bool):
            return value == literal
        if isinstance(value, (int, float)):
            return float(value) == literal
        return str(value) == literal
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise HTTPException(400, f"range operator on non-numeric field {field!r}")
    value = float(value)
    return {
        "gte": value >= literal,
        "lte": value <= literal,
        "gt": value > literal,
        "lt": value < literal,
    }[op]


def create_app(
    service: GameService,
    tokens: list[ResearcherToken] | None = None,
    frontend_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="wordladders", version="0.1.0")
    app.state.service = service
    app.state.tokens = tokens or []
    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=frontend_dir, html=True), name="app")

    def require_token(authorization: str | None = Header(default=None)) -> ResearcherToken:
        if authorization and authorization.lower().startswith("bearer "):
            presented = authorization[7:].strip()
            for token in app.state.tokens:
                if hmac.compare_digest(presented, token.token_id):
                    return token
        raise HTTPException(401, "a valid research token is required")

    @app.get("/health")
    def health():
        return {"ok": True}

    # ------------------------------------------------------------- players

    @app.post("/users", status_code=201)
    def register(payload: UserIn):
        profile = UserProfile(
            nickname=payload.nickname.strip(),
            age=payload.age,
            education=payload.education,
            profession=payload.profession.strip().lower(),
            mother_tongue=payload.mother_tongue.strip().lower(),
            reading_habits=payload.reading_habits,
            language_pref=payload.language_pref,
        )
        try:
            nickname = service.register_user(profile)
        except DuplicateNicknameError as exc:
            raise HTTPException(409, str(exc))
        except SessionError as exc:
            raise HTTPException(400, str(exc))
        return {"nickname": nickname}

    @app.post("/matches", status_code=201)
    def start_match(payload: MatchIn):
        try:
            match = service.start_match(payload.participants, payload.mode, payload.language)
        except UnknownUserError as exc:
            raise HTTPException(404, str(exc))
        except AdvancementDueError as exc:
            raise HTTPException(409, str(exc))
        except SessionError as exc:
            raise HTTPException(400, str(exc))
        return _match_view(match)

    @app.post("/matches/{match_id}/ladder")
    def submit_ladder(match_id: str, payload: LadderIn):
        try:
            match = service.get_match(match_id)
            ladder = Ladder(
                prompt=match.prompt,
                ascent=payload.ascent,
                descent=payload.descent,
                language=match.language,
                mode=match.mode,
            )
            result = service.submit_ladder(match_id, payload.nickname, ladder)
        except UnknownMatchError as exc:
            raise HTTPException(404, str(exc))
        except ExpiredMatchError as exc:
            raise HTTPException(410, str(exc))
        except NotParticipantError as exc:
            raise HTTPException(403, str(exc))
        except AlreadySubmittedError as exc:
            raise HTTPException(409, str(exc))
        except (LadderError, SessionError) as exc:
            raise HTTPException(400, str(exc))
        body = result.to_dict()
        body["score_display"] = present_score(result.score)
        return body

    @app.get("/leaderboard")
    def leaderboard(request: Request):
        params = dict(request.query_params)
        language = params.pop("language", None)
        limit = params.pop("limit", None)
        facets = {}
        for key, value in params.items():
            facets[key] = value
        try:
            rows = service.leaderboard(
                facets=facets,
                language=Language(language) if language else None,
                limit=int(limit) if limit is not None else None,
            )
        except (SessionError, ValueError) as exc:
            raise HTTPException(400, str(exc))
        return rows

    # ----------------------------------------------------------- researchers

    def _collection_rows(collection: str) -> list[dict]:
        service.expire_stale_matches()
        if collection in ("users", "matches", "ladders"):
            if service.store is None:
                raise HTTPException(400, "service is running without a store")
            return service.store.records(collection)
        if collection == "graphs":
            with service._lock:
                return [serialize_graph(g) for _, g in sorted(service.graphs.items())]
        if collection == "specificity":
            return _specificity_rows()
        raise HTTPException(400, f"unknown collection {collection!r}")

    def _specificity_rows() -> list[dict]:
        rows: list[dict] = []
        if service.store is None:
            return rows
        ladder_records = service.store.records("ladders")
        for language, assets in sorted(service.assets.items()):
            records = [r for r in ladder_records if r.get("language") == language.value]
            observations: list[tuple[str, float]] = []
            cleaned_stream = clean_batch(
                records,
                lexicon=assets.entries,
                blocklist=assets.blocklist,
                kb=assets.kb,
                graph_lookup=lambda prompt, lang=language: service.find_graph(prompt, lang),
                tau=service.config.tau,
                n_threshold=service.config.n_threshold,
                kb_mode=service.config.kb_mode,
            )
            for cleaned, report in cleaned_stream:
                if report.bad_ladder:
                    continue
                observations.extend(ladder_specificity(cleaned).items())
            for record in aggregate(
                observations, language, target=service.config.specificity_target
            ):
                rows.append(
                    {
                        "lemma": record.lemma,
                        "language": record.language.value,
                        "mean": record.mean_specificity,
                        "sd": record.sd,
                        "n": record.n_observations,
                        "target_reached": record.target_reached,
                    }
                )
        return rows

    @app.get("/export/filter")
    def export_filter(request: Request, _token: ResearcherToken = Depends(require_token)):
        params = dict(request.query_params)
        collection = params.pop("collection", None)
        if collection not in EXPORT_COLLECTIONS:
            raise HTTPException(400, f"collection must be one of {EXPORT_COLLECTIONS}")
        fmt = params.pop("format", "json")
        if fmt not in ("csv", "json"):
            raise HTTPException(400, "format must be csv or json")
        lines = params.pop("lines", "false").lower() in ("true", "1", "yes")
        limit = params.pop("limit", None)

        filters: list[tuple[str, str, str]] = []
        for key, raw in params.items():
            field_name, _, op = key.partition("__")
            op = op or "eq"
            if op not in ("eq", *_RANGE_OPS):
                raise HTTPException(400, f"unknown filter operator {op!r}")
            if field_name not in _FILTER_FIELDS[collection]:
                raise HTTPException(
                    400, f"field {field_name!r} is not filterable on {collection}"
                )
            filters.append((field_name, op, raw))

        rows = _collection_rows(collection)
        for field_name, op, raw in filters:
            rows = [row for row in rows if _row_matches(row, field_name, op, raw)]
        if limit is not None:
            rows = rows[: int(limit)]
        for row in rows:
            ensure_pii_free(row)

        if fmt == "csv":
            return Response(
                _to_csv(rows, _COLUMNS[collection]),
                media_type="text/csv; charset=utf-8",
            )
        if lines:
            payload = "\n".join(
                json.dumps(row, ensure_ascii=False, sort_keys=True) for row in rows
            )
            return Response(payload + ("\n" if rows else ""), media_type="application/x-ndjson")
        return JSONResponse(rows)

    @app.get("/export/raw")
    def export_raw(
        word: str,
        language: Language = Language.EN,
        _token: ResearcherToken = Depends(require_token),
    ):
        try:
            assets = service.assets[language]
        except KeyError:
            raise HTTPException(400, f"language {language.value} is not loaded")
        graph = service.find_graph(word, language)
        if graph is None:
            from .lexicon import normalize_lemma

            if normalize_lemma(word) in assets.kb:
                graph = service.graph_for(word, language)
            else:
                raise HTTPException(404, f"no graph for word {word!r}")
        doc = serialize_graph(graph)
        ensure_pii_free(doc)
        return doc

    return app

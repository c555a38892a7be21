"""The HTTP surface: versioned JSON API over the store and analytics.

Every data endpoint requires a bearer API key and, when an allowlist is
configured, a source IP inside one of its CIDR blocks; only GET /healthz
is open. Aggregate responses are cached for a short TTL as rendered bytes,
so repeat requests within the TTL return byte-identical bodies.
"""

from __future__ import annotations

import asyncio
import hmac
import ipaddress
import logging
import threading
import time
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from starlette.exceptions import HTTPException as StarletteHTTPException
from starlette.middleware.base import BaseHTTPMiddleware

from . import analytics
from .analytics import EngagementWeights, Lexicon, WindowOutsideCrisis
from .config import AppConfig, ServiceSettings
from .models import TimeWindow, TrackingProfile, parse_rfc3339
from .serialize import (
    daily_overview_payload,
    dump_bytes,
    profile_payload,
    sentiment_summary_payload,
    series_point_payload,
    stats_payload,
    trending_payload,
    tweet_payload,
    weekly_payload,
)
from .store import InvalidCursor, TweetStore

logger = logging.getLogger(__name__)

API_PREFIX = "/api/v1"
DEFAULT_PAGE_SIZE = 50
MAX_TRENDING_K = 100


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def error_response(status: int, code: str, message: str) -> Response:
    body = dump_bytes({"error": {"code": code, "message": message}})
    return Response(content=body, status_code=status, media_type="application/json")


@dataclass(frozen=True)
class Principal:
    key_id: str
    source_ip: str


def authenticate(
    auth_header: str | None, source_ip: str, settings: ServiceSettings
) -> Principal:
    """Resolve the bearer key and source IP to a Principal.

    Raises ApiError 401 for a missing or unknown key and 403 for a valid
    key used from outside the allowlist. An empty allowlist admits any IP.
    """
    if not auth_header or not auth_header.startswith("Bearer "):
        raise ApiError(401, "unauthorized", "missing bearer API key")
    presented = auth_header[len("Bearer ") :]
    key_id = None
    for i, key in enumerate(settings.api_keys):
        if hmac.compare_digest(presented, key):
            key_id = f"key-{i}"
    if key_id is None:
        raise ApiError(401, "unauthorized", "unknown API key")
    if settings.ip_allowlist:
        try:
            addr = ipaddress.ip_address(source_ip)
        except ValueError:
            raise ApiError(403, "forbidden", "source address is not allowlisted")
        if not any(
            addr in ipaddress.ip_network(block) for block in settings.ip_allowlist
        ):
            raise ApiError(403, "forbidden", "source address is not allowlisted")
    return Principal(key_id=key_id, source_ip=source_ip)


class _AuthMiddleware(BaseHTTPMiddleware):
    def __init__(self, app, settings: ServiceSettings):
        super().__init__(app)
        self.settings = settings

    async def dispatch(self, request: Request, call_next):
        if request.url.path == "/healthz" or request.method == "OPTIONS":
            return await call_next(request)
        source_ip = request.client.host if request.client else ""
        try:
            principal = authenticate(
                request.headers.get("authorization"), source_ip, self.settings
            )
        except ApiError as exc:
            return error_response(exc.status, exc.code, exc.message)
        request.state.principal = principal
        logger.info("%s %s key=%s", request.method, request.url.path, principal.key_id)
        return await call_next(request)


class _TimeoutMiddleware(BaseHTTPMiddleware):
    def __init__(self, app, timeout: float):
        super().__init__(app)
        self.timeout = timeout

    async def dispatch(self, request: Request, call_next):
        try:
            return await asyncio.wait_for(call_next(request), timeout=self.timeout)
        except asyncio.TimeoutError:
            return error_response(504, "timeout", "request exceeded the time budget")


class TtlCache:
    """Rendered-bytes cache with per-entry expiry; safe under concurrency."""

    def __init__(self):
        self._entries: dict[object, tuple[float, bytes]] = {}
        self._lock = threading.Lock()

    def get(self, key: object) -> bytes | None:
        now = time.monotonic()
        with self._lock:
            entry = self._entries.get(key)
            if entry is None or entry[0] <= now:
                return None
            return entry[1]

    def put(self, key: object, body: bytes, ttl: float) -> None:
        if ttl <= 0:
            return
        now = time.monotonic()
        with self._lock:
            if len(self._entries) > 4096:
                self._entries = {
                    k: v for k, v in self._entries.items() if v[0] > now
                }
            self._entries[key] = (now + ttl, body)


def _check_params(request: Request, allowed: frozenset[str]) -> None:
    unknown = set(request.query_params.keys()) - allowed
    if unknown:
        raise ApiError(
            400, "unknown_param", f"unknown query parameters: {', '.join(sorted(unknown))}"
        )


def _parse_window(
    request: Request, profile: TrackingProfile
) -> TimeWindow:
    """Optional from/to query params; defaults to the crisis window."""
    raw_from = request.query_params.get("from")
    raw_to = request.query_params.get("to")
    try:
        start = profile.window.start if raw_from is None else parse_rfc3339(raw_from)
        end = profile.window.end if raw_to is None else parse_rfc3339(raw_to)
        return TimeWindow(start, end)
    except ValueError as exc:
        raise ApiError(400, "invalid_range", str(exc)) from exc


def _parse_int(request: Request, name: str, default: int, lo: int, hi: int) -> int:
    raw = request.query_params.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ApiError(400, "invalid_params", f"{name} must be an integer") from exc
    if not lo <= value <= hi:
        raise ApiError(400, "invalid_params", f"{name} must be in {lo}..{hi}")
    return value


def create_app(
    config: AppConfig,
    store: TweetStore | None = None,
    lexicon: Lexicon | None = None,
) -> FastAPI:
    settings = config.service
    if not settings.ip_allowlist:
        logger.warning("IP allowlist is empty: requests from any address are accepted")

    store = store if store is not None else TweetStore(config.store_path)
    if lexicon is None:
        lexicon = (
            Lexicon.load(config.lexicon_path)
            if config.lexicon_path
            else Lexicon.bundled()
        )
    cache = TtlCache()
    weights = EngagementWeights()
    profiles = {p.profile_id: p for p in config.profiles}

    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.lexicon = lexicon
    app.state.cache = cache

    def get_profile(profile_id: str) -> TrackingProfile:
        profile = profiles.get(profile_id)
        if profile is None:
            raise ApiError(404, "unknown_profile", f"no profile {profile_id!r}")
        return profile

    def json_bytes(body: bytes) -> Response:
        return Response(content=body, media_type="application/json")

    def cached(key: object, build) -> Response:
        body = cache.get(key)
        if body is None:
            body = dump_bytes(build())
            cache.put(key, body, settings.cache_ttl)
        return json_bytes(body)

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return error_response(exc.status_code, code, str(exc.detail))

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get(API_PREFIX + "/profiles")
    def get_profiles(request: Request):
        _check_params(request, frozenset())
        body = dump_bytes({"profiles": [profile_payload(p) for p in config.profiles]})
        return json_bytes(body)

    @app.get(API_PREFIX + "/profiles/{profile_id}/tweets")
    def get_tweets(profile_id: str, request: Request):
        _check_params(request, frozenset({"from", "to", "cursor", "page_size"}))
        profile = get_profile(profile_id)
        window = _parse_window(request, profile)
        page_size = _parse_int(request, "page_size", DEFAULT_PAGE_SIZE, 1, 1000)
        cursor = request.query_params.get("cursor")
        try:
            page = store.query(
                profile.profile_id, window, cursor=cursor, page_size=page_size
            )
        except InvalidCursor as exc:
            raise ApiError(400, "invalid_cursor", str(exc)) from exc
        body = dump_bytes(
            {
                "items": [tweet_payload(t) for t in page.items],
                "next_cursor": page.next_cursor,
            }
        )
        return json_bytes(body)

    @app.get(API_PREFIX + "/profiles/{profile_id}/sentiment")
    def get_sentiment(profile_id: str, request: Request):
        _check_params(request, frozenset({"granularity", "from", "to"}))
        profile = get_profile(profile_id)
        granularity = request.query_params.get("granularity")
        if granularity not in ("daily", "crisis"):
            raise ApiError(
                400, "invalid_params", "granularity must be 'daily' or 'crisis'"
            )
        if granularity == "crisis":
            key = ("sentiment-crisis", profile.profile_id)
            return cached(
                key,
                lambda: sentiment_summary_payload(
                    analytics.crisis_sentiment(store, profile, lexicon)
                ),
            )
        window = _parse_window(request, profile)
        key = ("sentiment-daily", profile.profile_id, window.start, window.end)

        def build():
            try:
                points = analytics.sentiment_series(store, profile, window, lexicon)
            except WindowOutsideCrisis as exc:
                raise ApiError(400, "invalid_range", str(exc)) from exc
            return {"points": [series_point_payload(p) for p in points]}

        return cached(key, build)

    @app.get(API_PREFIX + "/profiles/{profile_id}/overview")
    def get_overview(profile_id: str, request: Request):
        _check_params(request, frozenset({"date"}))
        profile = get_profile(profile_id)
        raw = request.query_params.get("date")
        if raw is None:
            raise ApiError(400, "invalid_params", "date parameter is required")
        try:
            day = date.fromisoformat(raw)
        except ValueError as exc:
            raise ApiError(400, "invalid_params", "date must be YYYY-MM-DD") from exc
        key = ("overview", profile.profile_id, day)

        def build():
            try:
                agg = analytics.daily_overview(store, profile, day, lexicon)
            except WindowOutsideCrisis as exc:
                raise ApiError(400, "invalid_range", str(exc)) from exc
            return daily_overview_payload(agg)

        return cached(key, build)

    @app.get(API_PREFIX + "/profiles/{profile_id}/weekly")
    def get_weekly(profile_id: str, request: Request):
        _check_params(request, frozenset({"from", "to"}))
        profile = get_profile(profile_id)
        window = _parse_window(request, profile)
        key = ("weekly", profile.profile_id, window.start, window.end)
        return cached(
            key,
            lambda: weekly_payload(analytics.weekly_counts(store, profile, window)),
        )

    @app.get(API_PREFIX + "/profiles/{profile_id}/trending")
    def get_trending(profile_id: str, request: Request):
        _check_params(request, frozenset({"k", "from", "to"}))
        profile = get_profile(profile_id)
        window = _parse_window(request, profile)
        k = _parse_int(request, "k", 10, 1, MAX_TRENDING_K)
        key = ("trending", profile.profile_id, window.start, window.end, k)

        def build():
            entries = analytics.trending(store, profile, window, k, weights)
            tweets = {
                e.tweet_id: store.get(profile.profile_id, e.tweet_id) for e in entries
            }
            return trending_payload(entries, tweets)

        return cached(key, build)

    @app.get(API_PREFIX + "/profiles/{profile_id}/stats")
    def get_stats(profile_id: str, request: Request):
        _check_params(request, frozenset({"from", "to"}))
        profile = get_profile(profile_id)
        window = _parse_window(request, profile)
        key = ("stats", profile.profile_id, window.start, window.end)
        return cached(
            key,
            lambda: stats_payload(analytics.descriptive_stats(store, profile, window)),
        )

    app.add_middleware(_TimeoutMiddleware, timeout=settings.request_timeout)
    app.add_middleware(_AuthMiddleware, settings=settings)
    if settings.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(settings.cors_origins),
            allow_methods=["GET"],
            allow_headers=["Authorization"],
        )
    return app

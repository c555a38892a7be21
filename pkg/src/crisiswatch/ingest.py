"""Tweet collection: replay files, the live stream client, and term matching.

Both source kinds yield RawRecord values in order; run_ingest validates
them, keeps the ones matching the profile's tracked terms, and writes them
to the store. Dedup is by tweet_id, so re-ingesting a file (or a stream
replaying records after a reconnect) never duplicates stored tweets.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator

import requests

from .analytics import tokenize
from .models import (
    IngestReport,
    RecordRejected,
    TrackTerm,
    TrackingProfile,
    Tweet,
    validate_tweet,
)
from .store import TweetStore

logger = logging.getLogger(__name__)

STREAM_TOKEN_ENV = "CRISISWATCH_STREAM_TOKEN"


class AuthenticationError(Exception):
    """The stream endpoint rejected our credentials; retrying cannot help."""


class StoreWriteError(Exception):
    """A store write failed mid-ingest. ``partial_report`` covers the
    records processed before the failure."""

    def __init__(self, partial_report: IngestReport, cause: Exception):
        self.partial_report = partial_report
        super().__init__(f"store write failed: {cause}")


@dataclass(frozen=True)
class RawRecord:
    """One record as pulled from a source, before validation.

    ``payload`` is the parsed JSON object, or None with ``error`` set when
    the line could not be parsed.
    """

    seq: int
    payload: dict | None = None
    error: str | None = None


class ReplaySource:
    """Deterministic source over a newline-delimited record file.

    Yields one record per non-empty line, in file order, then terminates.
    Malformed lines are yielded as parse-failure records so the ingest
    report can count them.
    """

    kind = "replay"

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def __iter__(self) -> Iterator[RawRecord]:
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    payload = json.loads(line)
                except ValueError:
                    yield RawRecord(seq=lineno, error="parse_error")
                    continue
                if not isinstance(payload, dict):
                    yield RawRecord(seq=lineno, error="parse_error")
                    continue
                yield RawRecord(seq=lineno, payload=payload)


def open_replay_source(path: str | Path) -> ReplaySource:
    """Open a replay file; raises OSError when the file cannot be read."""
    p = Path(path)
    with open(p, encoding="utf-8"):
        pass
    return ReplaySource(p)


@dataclass(frozen=True)
class StreamConfig:
    """Connection settings for the live stream endpoint.

    The endpoint serves newline-delimited JSON records (same schema as
    replay files) at ``url``; the tracked terms are sent as the ``terms``
    query parameter and the bearer token comes from ``token`` or, when
    unset, the CRISISWATCH_STREAM_TOKEN environment variable.
    """

    url: str
    terms: tuple[str, ...] = ()
    token: str | None = None
    initial_backoff: float = 1.0
    backoff_multiplier: float = 2.0
    max_backoff: float = 60.0
    max_reconnects: int | None = None
    request_timeout: float = 30.0

    def resolve_token(self) -> str | None:
        if self.token is not None:
            return self.token
        return os.environ.get(STREAM_TOKEN_ENV)


class StreamSource:
    """Long-lived source over a streaming HTTP endpoint.

    Reconnects with exponential backoff (doubling from ``initial_backoff``
    up to ``max_backoff``, reset after a successful connect) on transient
    failures; an auth rejection is fatal. A connection the server closes
    cleanly ends the stream. ``status`` surfaces the connection state.
    """

    kind = "stream"

    def __init__(self, config: StreamConfig):
        self.config = config
        self.status = "idle"

    def __iter__(self) -> Iterator[RawRecord]:
        cfg = self.config
        seq = 0
        backoff = cfg.initial_backoff
        failures = 0
        headers = {}
        token = cfg.resolve_token()
        if token:
            headers["Authorization"] = f"Bearer {token}"
        params = {"terms": ",".join(cfg.terms)} if cfg.terms else None
        while True:
            try:
                self.status = "connecting"
                resp = requests.get(
                    cfg.url,
                    headers=headers,
                    params=params,
                    stream=True,
                    timeout=cfg.request_timeout,
                )
                if resp.status_code in (401, 403):
                    self.status = "auth_rejected"
                    raise AuthenticationError(
                        f"stream endpoint returned {resp.status_code}"
                    )
                resp.raise_for_status()
                self.status = "connected"
                backoff = cfg.initial_backoff
                failures = 0
                for line in resp.iter_lines(decode_unicode=True):
                    if not line or not line.strip():
                        continue
                    seq += 1
                    try:
                        payload = json.loads(line)
                    except ValueError:
                        yield RawRecord(seq=seq, error="parse_error")
                        continue
                    if not isinstance(payload, dict):
                        yield RawRecord(seq=seq, error="parse_error")
                        continue
                    yield RawRecord(seq=seq, payload=payload)
                self.status = "ended"
                return
            except requests.RequestException as exc:
                self.status = "disconnected"
                failures += 1
                if (
                    cfg.max_reconnects is not None
                    and failures > cfg.max_reconnects
                ):
                    logger.warning("stream gave up after %d failures: %s", failures, exc)
                    return
                logger.info("stream disconnected (%s); retrying in %.1fs", exc, backoff)
                time.sleep(backoff)
                backoff = min(backoff * cfg.backoff_multiplier, cfg.max_backoff)


def open_stream_source(config: StreamConfig) -> StreamSource:
    return StreamSource(config)


def _phrase_in_tokens(tokens: list[str], phrase: list[str]) -> bool:
    if len(phrase) == 1:
        return phrase[0] in tokens
    n = len(phrase)
    return any(tokens[i : i + n] == phrase for i in range(len(tokens) - n + 1))


def match_terms(tweet: Tweet, profile: TrackingProfile) -> list[TrackTerm]:
    """Every profile term the tweet matches, in profile order.

    Hashtag terms match the tweet's hashtags; username terms match the
    author handle or any mention (case-insensitive); keyword terms match
    whole tokens of the text, never substrings, with multi-word keywords
    requiring consecutive tokens.
    """
    matched = []
    hashtags = set(tweet.hashtags)
    handles = {tweet.author_handle.lower(), *tweet.mentions}
    tokens: list[str] | None = None
    for term in profile.terms:
        if term.kind == "hashtag":
            hit = term.value in hashtags
        elif term.kind == "username":
            hit = term.value in handles
        else:
            if tokens is None:
                tokens = tokenize(tweet.text)
            hit = _phrase_in_tokens(tokens, term.value.split())
        if hit:
            matched.append(term)
    return matched


def run_ingest(
    source: Iterable[RawRecord],
    profile: TrackingProfile,
    store: TweetStore,
) -> IngestReport:
    """Validate, filter, and store every record the source yields.

    Accepted tweets are stored with matched_terms populated; records whose
    tweet_id is already stored count as duplicates; everything else is
    rejected with a reason code (validation code or ``no_match``). A store
    write failure aborts with StoreWriteError carrying the partial report.
    """
    if not profile.active:
        raise ValueError(f"profile {profile.profile_id!r} is not active")
    read = accepted = duplicate = 0
    rejections: list[tuple[int, str]] = []

    def report() -> IngestReport:
        return IngestReport(
            read_count=read,
            accepted_count=accepted,
            duplicate_count=duplicate,
            rejected_count=len(rejections),
            rejections=tuple(rejections),
        )

    for record in source:
        read += 1
        if record.error is not None:
            rejections.append((record.seq, record.error))
            continue
        try:
            tweet = validate_tweet(record.payload)
        except RecordRejected as exc:
            rejections.append((record.seq, exc.reason))
            continue
        terms = match_terms(tweet, profile)
        if not terms:
            rejections.append((record.seq, "no_match"))
            continue
        tweet = replace(tweet, matched_terms=tuple(terms))
        try:
            inserted = store.insert(profile.profile_id, tweet)
        except Exception as exc:
            read -= 1  # the failed record is not part of the totals
            raise StoreWriteError(report(), exc) from exc
        if inserted:
            accepted += 1
        else:
            duplicate += 1
    return report()

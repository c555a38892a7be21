"""Durable tweet storage with time-ordered, cursor-paginated queries.

The backend is an embedded SQLite file inside the store directory, keyed by
(profile_id, tweet_id) for dedup with a (profile_id, created_at, tweet_id)
index for time-range scans. WAL journaling gives one writer plus concurrent
readers, and every insert is its own committed transaction, so a reopen
after a process crash recovers exactly the inserts that returned.

Pagination is live, key-ordered iteration: a cursor encodes the last
returned (created_at, tweet_id) key, so rows inserted behind the cursor
while paging are skipped and new rows can only appear in not-yet-fetched
key ranges. Pages for a fixed snapshot are disjoint and cover the result.
"""

from __future__ import annotations

import base64
import binascii
import json
import sqlite3
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .models import (
    TimeWindow,
    TrackTerm,
    Tweet,
    format_rfc3339,
    parse_rfc3339,
)

MAX_PAGE_SIZE = 1000

_SCHEMA = """
CREATE TABLE IF NOT EXISTS tweets (
    profile_id TEXT NOT NULL,
    tweet_id TEXT NOT NULL,
    created_at TEXT NOT NULL,
    author_id TEXT NOT NULL,
    author_handle TEXT NOT NULL,
    text TEXT NOT NULL,
    like_count INTEGER NOT NULL,
    retweet_count INTEGER NOT NULL,
    retweet_of TEXT,
    mentions TEXT NOT NULL,
    hashtags TEXT NOT NULL,
    matched_terms TEXT NOT NULL,
    PRIMARY KEY (profile_id, tweet_id)
);
CREATE INDEX IF NOT EXISTS tweets_by_time
    ON tweets (profile_id, created_at, tweet_id);
"""

_COLUMNS = (
    "tweet_id, created_at, author_id, author_handle, text, "
    "like_count, retweet_count, retweet_of, mentions, hashtags, matched_terms"
)


class InvalidCursor(ValueError):
    """The pagination cursor is not one this store issued."""


class StoreClosed(RuntimeError):
    pass


@dataclass(frozen=True)
class Page:
    items: tuple[Tweet, ...]
    next_cursor: str | None


def _encode_cursor(created_at: str, tweet_id: str) -> str:
    raw = json.dumps([created_at, tweet_id]).encode()
    return base64.urlsafe_b64encode(raw).decode()


def _decode_cursor(cursor: str) -> tuple[str, str]:
    try:
        raw = base64.urlsafe_b64decode(cursor.encode())
        parts = json.loads(raw)
    except (binascii.Error, ValueError, UnicodeDecodeError) as exc:
        raise InvalidCursor("cursor is not decodable") from exc
    if (
        not isinstance(parts, list)
        or len(parts) != 2
        or not all(isinstance(p, str) for p in parts)
    ):
        raise InvalidCursor("cursor has the wrong shape")
    try:
        parse_rfc3339(parts[0])
    except ValueError as exc:
        raise InvalidCursor("cursor timestamp is invalid") from exc
    return parts[0], parts[1]


def _row_to_tweet(row: tuple) -> Tweet:
    return Tweet(
        tweet_id=row[0],
        created_at=parse_rfc3339(row[1]),
        author_id=row[2],
        author_handle=row[3],
        text=row[4],
        like_count=row[5],
        retweet_count=row[6],
        retweet_of=row[7],
        mentions=tuple(json.loads(row[8])),
        hashtags=tuple(json.loads(row[9])),
        matched_terms=tuple(TrackTerm.from_string(s) for s in json.loads(row[10])),
    )


class TweetStore:
    """File-backed store rooted at a directory; safe for one writer plus
    concurrent readers (each thread gets its own connection)."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._db_path = self.root / "tweets.db"
        self._local = threading.local()
        self._closed = False
        self._conns: list[sqlite3.Connection] = []
        self._conns_lock = threading.Lock()
        # Create the schema eagerly so reopening an empty store is cheap.
        self._conn()

    def _conn(self) -> sqlite3.Connection:
        if self._closed:
            raise StoreClosed("store is closed")
        conn = getattr(self._local, "conn", None)
        if conn is None:
            conn = sqlite3.connect(self._db_path, isolation_level=None)
            conn.execute("PRAGMA journal_mode=WAL")
            conn.execute("PRAGMA synchronous=NORMAL")
            conn.execute("PRAGMA busy_timeout=10000")
            conn.executescript(_SCHEMA)
            self._local.conn = conn
            with self._conns_lock:
                self._conns.append(conn)
        return conn

    def close(self) -> None:
        with self._conns_lock:
            for conn in self._conns:
                try:
                    conn.close()
                except sqlite3.Error:
                    pass
            self._conns.clear()
        self._closed = True
        self._local = threading.local()

    def __enter__(self) -> TweetStore:
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def insert(self, profile_id: str, tweet: Tweet) -> bool:
        """Insert one tweet; returns False when the id is already stored.

        The row is committed before the call returns, so it survives a
        process crash. A duplicate insert leaves the store unchanged.
        """
        cur = self._conn().execute(
            f"INSERT INTO tweets (profile_id, {_COLUMNS}) "
            "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?) "
            "ON CONFLICT (profile_id, tweet_id) DO NOTHING",
            (
                profile_id,
                tweet.tweet_id,
                format_rfc3339(tweet.created_at),
                tweet.author_id,
                tweet.author_handle,
                tweet.text,
                tweet.like_count,
                tweet.retweet_count,
                tweet.retweet_of,
                json.dumps(list(tweet.mentions)),
                json.dumps(list(tweet.hashtags)),
                json.dumps([t.as_string() for t in tweet.matched_terms]),
            ),
        )
        return cur.rowcount == 1

    def get(self, profile_id: str, tweet_id: str) -> Tweet | None:
        row = self._conn().execute(
            f"SELECT {_COLUMNS} FROM tweets WHERE profile_id = ? AND tweet_id = ?",
            (profile_id, tweet_id),
        ).fetchone()
        return _row_to_tweet(row) if row else None

    def query(
        self,
        profile_id: str,
        window: TimeWindow,
        cursor: str | None = None,
        page_size: int = 50,
    ) -> Page:
        """One page of tweets with created_at in the window, ordered by
        (created_at, tweet_id) ascending."""
        if not 1 <= page_size <= MAX_PAGE_SIZE:
            raise ValueError(f"page_size must be in 1..{MAX_PAGE_SIZE}")
        lo = format_rfc3339(window.start)
        hi = format_rfc3339(window.end)
        if cursor is not None:
            after_at, after_id = _decode_cursor(cursor)
            rows = self._conn().execute(
                f"SELECT {_COLUMNS} FROM tweets "
                "WHERE profile_id = ? AND created_at >= ? AND created_at < ? "
                "AND (created_at, tweet_id) > (?, ?) "
                "ORDER BY created_at, tweet_id LIMIT ?",
                (profile_id, lo, hi, after_at, after_id, page_size + 1),
            ).fetchall()
        else:
            rows = self._conn().execute(
                f"SELECT {_COLUMNS} FROM tweets "
                "WHERE profile_id = ? AND created_at >= ? AND created_at < ? "
                "ORDER BY created_at, tweet_id LIMIT ?",
                (profile_id, lo, hi, page_size + 1),
            ).fetchall()
        has_more = len(rows) > page_size
        rows = rows[:page_size]
        items = tuple(_row_to_tweet(r) for r in rows)
        next_cursor = _encode_cursor(rows[-1][1], rows[-1][0]) if has_more else None
        return Page(items=items, next_cursor=next_cursor)

    def count(self, profile_id: str, window: TimeWindow) -> int:
        row = self._conn().execute(
            "SELECT COUNT(*) FROM tweets "
            "WHERE profile_id = ? AND created_at >= ? AND created_at < ?",
            (profile_id, format_rfc3339(window.start), format_rfc3339(window.end)),
        ).fetchone()
        return row[0]

    def scan(self, profile_id: str, window: TimeWindow) -> Iterator[Tweet]:
        """Stream every tweet in the window in (created_at, tweet_id) order.

        Used by analytics for full-window passes without pagination.
        """
        cur = self._conn().execute(
            f"SELECT {_COLUMNS} FROM tweets "
            "WHERE profile_id = ? AND created_at >= ? AND created_at < ? "
            "ORDER BY created_at, tweet_id",
            (profile_id, format_rfc3339(window.start), format_rfc3339(window.end)),
        )
        while True:
            rows = cur.fetchmany(1024)
            if not rows:
                return
            for row in rows:
                yield _row_to_tweet(row)

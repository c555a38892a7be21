"""Domain types shared by every other module.

All types are immutable after construction and validate their invariants in
``__post_init__``, so any instance that exists is well-formed and safe to
share across threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone

HASHTAG_RE = re.compile(r"#(\w+)")
MENTION_RE = re.compile(r"@(\w+)")

MAX_TEXT_LEN = 4000

TERM_KINDS = ("hashtag", "keyword", "username")

# Sentiment label thresholds: positive above, negative below, neutral between.
POSITIVE_ABOVE = 0.1
NEGATIVE_BELOW = -0.1


class RecordRejected(Exception):
    """A raw record cannot become a Tweet. ``reason`` is a stable code."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(detail or reason)


class InvalidTerm(ValueError):
    """A tracking term is empty or malformed after normalization."""


def parse_rfc3339(value: str) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime.

    The result is truncated to second precision. Timestamps without an
    explicit UTC offset are rejected.
    """
    if not isinstance(value, str):
        raise ValueError("timestamp must be a string")
    s = value.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        raise ValueError(f"timestamp {value!r} has no UTC offset")
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def format_rfc3339(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _require_utc_seconds(name: str, dt: datetime) -> None:
    if not isinstance(dt, datetime) or dt.tzinfo is None:
        raise ValueError(f"{name} must be an aware datetime")
    if dt.utcoffset() != timedelta(0):
        raise ValueError(f"{name} must be in UTC")
    if dt.microsecond != 0:
        raise ValueError(f"{name} must have second precision")


@dataclass(frozen=True)
class TimeWindow:
    """Half-open UTC interval [start, end)."""

    start: datetime
    end: datetime

    def __post_init__(self):
        _require_utc_seconds("start", self.start)
        _require_utc_seconds("end", self.end)
        if self.start > self.end:
            raise ValueError("window start must not be after end")

    def contains(self, dt: datetime) -> bool:
        return self.start <= dt < self.end

    def contains_day(self, day: date) -> bool:
        days = self.days()
        return bool(days) and days[0] <= day <= days[-1]

    def days(self) -> list[date]:
        """Every UTC calendar day the window touches, in order."""
        if self.start >= self.end:
            return []
        first = self.start.date()
        last = (self.end - timedelta(microseconds=1)).date()
        out = []
        d = first
        while d <= last:
            out.append(d)
            d += timedelta(days=1)
        return out


@dataclass(frozen=True)
class TrackTerm:
    """One tracked search term: a hashtag, keyword, or username.

    Values are stored lowercase with the "#"/"@" sigil already stripped.
    """

    kind: str
    value: str

    def __post_init__(self):
        if self.kind not in TERM_KINDS:
            raise ValueError(f"unknown term kind {self.kind!r}")
        if not self.value:
            raise ValueError("term value must be non-empty")
        if self.value != self.value.lower():
            raise ValueError("term value must be lowercase")
        if self.kind in ("hashtag", "username"):
            if any(ch.isspace() for ch in self.value):
                raise ValueError(f"{self.kind} term must not contain whitespace")
            if "#" in self.value or "@" in self.value:
                raise ValueError(f"{self.kind} term must not contain sigils")

    def as_string(self) -> str:
        return f"{self.kind}:{self.value}"

    @classmethod
    def from_string(cls, s: str) -> TrackTerm:
        kind, _, value = s.partition(":")
        return cls(kind, value)


def normalize_term(kind: str, raw_value: str) -> TrackTerm:
    """Normalize operator input into a TrackTerm.

    Lowercases, trims, and strips the leading "#"/"@" sigil for hashtag and
    username terms. Keyword whitespace is collapsed to single spaces.
    """
    if kind not in TERM_KINDS:
        raise InvalidTerm(f"unknown term kind {kind!r}")
    value = raw_value.strip().lower()
    if kind == "hashtag":
        value = value.lstrip("#")
    elif kind == "username":
        value = value.lstrip("@")
    else:
        value = " ".join(value.split())
    if not value:
        raise InvalidTerm("empty_term")
    return TrackTerm(kind, value)


def extract_hashtags(text: str) -> tuple[str, ...]:
    """Every "#tag" occurrence in the text, lowercased, in order."""
    return tuple(m.lower() for m in HASHTAG_RE.findall(text))


def extract_mentions(text: str) -> tuple[str, ...]:
    """Every "@handle" occurrence in the text, lowercased, in order."""
    return tuple(m.lower() for m in MENTION_RE.findall(text))


@dataclass(frozen=True)
class Tweet:
    """One collected post.

    ``hashtags`` and ``mentions`` are derived from ``text`` at validation
    time (lowercased, sigils stripped); ``matched_terms`` is populated during
    ingest with the profile terms that caused collection.
    """

    tweet_id: str
    created_at: datetime
    author_id: str
    author_handle: str
    text: str
    like_count: int
    retweet_count: int
    retweet_of: str | None = None
    mentions: tuple[str, ...] = ()
    hashtags: tuple[str, ...] = ()
    matched_terms: tuple[TrackTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mentions", tuple(self.mentions))
        object.__setattr__(self, "hashtags", tuple(self.hashtags))
        object.__setattr__(self, "matched_terms", tuple(self.matched_terms))
        if not isinstance(self.tweet_id, str) or not self.tweet_id:
            raise ValueError("tweet_id must be a non-empty string")
        _require_utc_seconds("created_at", self.created_at)
        for name in ("author_id", "author_handle", "text"):
            if not isinstance(getattr(self, name), str):
                raise ValueError(f"{name} must be a string")
        if self.author_handle.startswith("@"):
            raise ValueError("author_handle must not carry a leading '@'")
        if len(self.text) > MAX_TEXT_LEN:
            raise ValueError(f"text longer than {MAX_TEXT_LEN} characters")
        for name in ("like_count", "retweet_count"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"{name} must be an integer")
            if v < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.retweet_of is not None:
            if not isinstance(self.retweet_of, str) or not self.retweet_of:
                raise ValueError("retweet_of must be a non-empty string")
            if self.retweet_of == self.tweet_id:
                raise ValueError("retweet_of must differ from tweet_id")
        for tag in self.hashtags:
            if "#" in tag or tag != tag.lower():
                raise ValueError(f"hashtag {tag!r} must be lowercase without '#'")

    @property
    def is_retweet(self) -> bool:
        return self.retweet_of is not None


_REQUIRED_STR_FIELDS = ("author_id", "author_handle", "text")
_COUNT_FIELDS = ("like_count", "retweet_count")


def validate_tweet(raw: object) -> Tweet:
    """Validate a parsed wire record and return a normalized Tweet.

    Raises RecordRejected with one of the stable reason codes: parse_error,
    missing_id, missing_field, bad_field, bad_timestamp, bad_count,
    negative_count, text_too_long, self_retweet.
    """
    if not isinstance(raw, dict):
        raise RecordRejected("parse_error", "record is not a JSON object")

    tweet_id = raw.get("tweet_id")
    if not isinstance(tweet_id, str) or not tweet_id:
        raise RecordRejected("missing_id", "tweet_id absent or empty")

    if "created_at" not in raw:
        raise RecordRejected("missing_field", "created_at absent")
    try:
        created_at = parse_rfc3339(raw["created_at"])
    except ValueError as exc:
        raise RecordRejected("bad_timestamp", str(exc)) from exc

    for name in _REQUIRED_STR_FIELDS:
        if name not in raw:
            raise RecordRejected("missing_field", f"{name} absent")
        if not isinstance(raw[name], str):
            raise RecordRejected("bad_field", f"{name} must be a string")
    text = raw["text"]
    if len(text) > MAX_TEXT_LEN:
        raise RecordRejected("text_too_long", f"text exceeds {MAX_TEXT_LEN} chars")

    for name in _COUNT_FIELDS:
        if name not in raw:
            raise RecordRejected("missing_field", f"{name} absent")
        v = raw[name]
        if not isinstance(v, int) or isinstance(v, bool):
            raise RecordRejected("bad_count", f"{name} must be an integer")
        if v < 0:
            raise RecordRejected("negative_count", f"{name} is negative")

    retweet_of = raw.get("retweet_of")
    if retweet_of is not None:
        if not isinstance(retweet_of, str) or not retweet_of:
            raise RecordRejected("bad_field", "retweet_of must be a non-empty string")
        if retweet_of == tweet_id:
            raise RecordRejected("self_retweet", "retweet_of equals tweet_id")

    try:
        return Tweet(
            tweet_id=tweet_id,
            created_at=created_at,
            author_id=raw["author_id"],
            author_handle=raw["author_handle"].lstrip("@"),
            text=text,
            like_count=raw["like_count"],
            retweet_count=raw["retweet_count"],
            retweet_of=retweet_of,
            mentions=extract_mentions(text),
            hashtags=extract_hashtags(text),
        )
    except ValueError as exc:
        raise RecordRejected("bad_field", str(exc)) from exc


def tweet_to_record(tweet: Tweet) -> dict:
    """Serialize a Tweet back to the wire record format.

    Derived fields (hashtags, mentions, matched_terms) are not part of the
    wire format; re-validating the record reproduces them from the text.
    """
    record = {
        "tweet_id": tweet.tweet_id,
        "created_at": format_rfc3339(tweet.created_at),
        "author_id": tweet.author_id,
        "author_handle": tweet.author_handle,
        "text": tweet.text,
        "like_count": tweet.like_count,
        "retweet_count": tweet.retweet_count,
    }
    if tweet.retweet_of is not None:
        record["retweet_of"] = tweet.retweet_of
    return record


@dataclass(frozen=True)
class TrackingProfile:
    """One monitored crisis: its tracked terms and time window."""

    profile_id: str
    name: str
    terms: tuple[TrackTerm, ...]
    window: TimeWindow
    active: bool = True

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.profile_id:
            raise ValueError("profile_id must be non-empty")
        if not self.terms:
            raise ValueError("profile must track at least one term")
        if self.window.start >= self.window.end:
            raise ValueError("crisis window must have start < end")


def label_for(value: float) -> str:
    if value > POSITIVE_ABOVE:
        return "positive"
    if value < NEGATIVE_BELOW:
        return "negative"
    return "neutral"


@dataclass(frozen=True)
class SentimentScore:
    """Bounded sentiment for one text: value in [-1, +1] plus label."""

    value: float
    label: str
    matched_tokens: int

    def __post_init__(self):
        if not -1.0 <= self.value <= 1.0:
            raise ValueError("sentiment value out of [-1, +1]")
        if self.label != label_for(self.value):
            raise ValueError(f"label {self.label!r} inconsistent with value")
        if self.matched_tokens < 0:
            raise ValueError("matched_tokens must be non-negative")
        if self.matched_tokens == 0 and (self.value != 0.0 or self.label != "neutral"):
            raise ValueError("zero matched tokens requires a neutral zero score")


@dataclass(frozen=True)
class SentimentHistogram:
    negative: int = 0
    neutral: int = 0
    positive: int = 0

    def __post_init__(self):
        if min(self.negative, self.neutral, self.positive) < 0:
            raise ValueError("histogram counts must be non-negative")

    @property
    def total(self) -> int:
        return self.negative + self.neutral + self.positive


@dataclass(frozen=True)
class DailyAggregate:
    """Per-day overview numbers behind the daily dashboard panel."""

    day: date
    tweet_count: int
    retweet_count: int
    unique_authors: int
    sentiment_mean: float | None
    histogram: SentimentHistogram

    def __post_init__(self):
        if self.histogram.total != self.tweet_count:
            raise ValueError("histogram must sum to tweet_count")
        if self.retweet_count > self.tweet_count:
            raise ValueError("retweet_count must not exceed tweet_count")
        if self.unique_authors > self.tweet_count:
            raise ValueError("unique_authors must not exceed tweet_count")
        if (self.sentiment_mean is None) != (self.tweet_count == 0):
            raise ValueError("sentiment_mean must be null exactly for empty days")
        if self.sentiment_mean is not None and not -1.0 <= self.sentiment_mean <= 1.0:
            raise ValueError("sentiment_mean out of [-1, +1]")


@dataclass(frozen=True)
class WeeklyAggregate:
    iso_year: int
    iso_week: int
    tweet_count: int

    def __post_init__(self):
        if not 1 <= self.iso_week <= 53:
            raise ValueError("iso_week must be in 1..53")
        if self.tweet_count < 0:
            raise ValueError("tweet_count must be non-negative")


@dataclass(frozen=True)
class TrendingEntry:
    tweet_id: str
    engagement: float
    rank: int

    def __post_init__(self):
        if self.engagement < 0:
            raise ValueError("engagement must be non-negative")
        if self.rank < 1:
            raise ValueError("rank must be 1-based")


@dataclass(frozen=True)
class DescriptiveStats:
    total_tweets: int
    total_retweets: int
    unique_authors: int
    total_mentions: int
    first_tweet_at: datetime | None
    last_tweet_at: datetime | None

    def __post_init__(self):
        if self.total_retweets > self.total_tweets:
            raise ValueError("total_retweets must not exceed total_tweets")
        if (self.first_tweet_at is None) != (self.last_tweet_at is None):
            raise ValueError("first/last timestamps must be null together")
        if self.first_tweet_at is not None and self.first_tweet_at > self.last_tweet_at:
            raise ValueError("first_tweet_at must not be after last_tweet_at")


@dataclass(frozen=True)
class IngestReport:
    """Outcome totals for one ingest run, with per-record rejection codes."""

    read_count: int
    accepted_count: int
    duplicate_count: int
    rejected_count: int
    rejections: tuple[tuple[int, str], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rejections", tuple(tuple(r) for r in self.rejections))
        total = self.accepted_count + self.duplicate_count + self.rejected_count
        if self.read_count != total:
            raise ValueError("read_count must equal accepted + duplicate + rejected")
        if self.rejected_count != len(self.rejections):
            raise ValueError("rejected_count must match rejection list length")

    def to_json(self) -> str:
        doc = {
            "read_count": self.read_count,
            "accepted_count": self.accepted_count,
            "duplicate_count": self.duplicate_count,
            "rejected_count": self.rejected_count,
            "rejections": [{"record": n, "reason": r} for n, r in self.rejections],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

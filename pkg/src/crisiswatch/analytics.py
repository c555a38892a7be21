"""Dashboard figures: sentiment scoring, daily/weekly rollups, trending,
and descriptive statistics.

Every operation here is a pure function of the store contents and its
arguments, so results are deterministic and safe to compute from any number
of concurrent request handlers.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .models import (
    DailyAggregate,
    DescriptiveStats,
    SentimentHistogram,
    SentimentScore,
    TimeWindow,
    TrackingProfile,
    TrendingEntry,
    Tweet,
    WeeklyAggregate,
    label_for,
)
from .store import TweetStore

TOKEN_RE = re.compile(r"[\w#@]+")

MIN_VALENCE = -5
MAX_VALENCE = 5

DEFAULT_LEXICON_RESOURCE = "sentiment_lexicon_en.txt"


class LexiconError(ValueError):
    """The lexicon file violates the token/valence format."""


class WindowOutsideCrisis(ValueError):
    """A requested window or day falls outside the profile's crisis window."""


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens with leading "#"/"@" sigils stripped.

    Splits on any character that is not a letter, digit, underscore, "#",
    or "@"; empty tokens are dropped.
    """
    tokens = []
    for raw in TOKEN_RE.findall(text):
        tok = raw.lstrip("#@").lower()
        if tok:
            tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class Lexicon:
    """Token -> integer valence map in [-5, +5], all tokens lowercase."""

    valences: Mapping[str, int]
    version: str = "unversioned"

    def __post_init__(self):
        object.__setattr__(self, "valences", MappingProxyType(dict(self.valences)))
        for token, valence in self.valences.items():
            if not token or token != token.lower():
                raise LexiconError(f"token {token!r} must be non-empty lowercase")
            if not isinstance(valence, int) or isinstance(valence, bool):
                raise LexiconError(f"valence for {token!r} must be an integer")
            if not MIN_VALENCE <= valence <= MAX_VALENCE:
                raise LexiconError(
                    f"valence {valence} for {token!r} out of [{MIN_VALENCE}, {MAX_VALENCE}]"
                )

    def __len__(self) -> int:
        return len(self.valences)

    @classmethod
    def load(cls, path: str | Path) -> Lexicon:
        """Load a lexicon file: one "token<TAB>valence" per line, "#" comment
        lines ignored. A "# version: X" comment sets the version string.
        Duplicate tokens are a load error."""
        version = "unversioned"
        valences: dict[str, int] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    comment = line.lstrip("#").strip()
                    if comment.lower().startswith("version:"):
                        version = comment.split(":", 1)[1].strip()
                    continue
                if "\t" not in line:
                    raise LexiconError(f"line {lineno}: expected token<TAB>valence")
                token, _, rest = line.partition("\t")
                token = token.strip()
                try:
                    valence = int(rest.strip())
                except ValueError as exc:
                    raise LexiconError(f"line {lineno}: valence is not an integer") from exc
                if token in valences:
                    raise LexiconError(f"line {lineno}: duplicate token {token!r}")
                valences[token] = valence
        return cls(valences=valences, version=version)

    @classmethod
    def bundled(cls) -> Lexicon:
        """The English valence list shipped with the package."""
        ref = resources.files("crisiswatch").joinpath("data", DEFAULT_LEXICON_RESOURCE)
        with resources.as_file(ref) as path:
            return cls.load(path)


def score_sentiment(text: str, lexicon: Lexicon) -> SentimentScore:
    """Mean lexicon valence of the text's tokens, normalized to [-1, +1].

    Every token occurrence present in the lexicon counts (repeats included).
    Texts with no lexicon hits score exactly (0, neutral, 0).
    """
    valences = lexicon.valences
    total = 0
    hits = 0
    for token in tokenize(text):
        v = valences.get(token)
        if v is not None:
            total += v
            hits += 1
    if hits == 0:
        return SentimentScore(value=0.0, label="neutral", matched_tokens=0)
    value = (total / hits) / MAX_VALENCE
    value = max(-1.0, min(1.0, value))
    return SentimentScore(value=value, label=label_for(value), matched_tokens=hits)


@dataclass(frozen=True)
class EngagementWeights:
    w_retweet: float = 2.0
    w_like: float = 1.0

    def __post_init__(self):
        if self.w_retweet <= 0 or self.w_like <= 0:
            raise ValueError("engagement weights must be positive")


def engagement(tweet: Tweet, weights: EngagementWeights = EngagementWeights()) -> float:
    return weights.w_retweet * tweet.retweet_count + weights.w_like * tweet.like_count


@dataclass(frozen=True)
class SentimentSeriesPoint:
    """One day of the sentiment-over-time series; mean is null on empty days."""

    day: date
    mean: float | None
    tweet_count: int
    histogram: SentimentHistogram

    def __post_init__(self):
        if self.histogram.total != self.tweet_count:
            raise ValueError("histogram must sum to tweet_count")
        if (self.mean is None) != (self.tweet_count == 0):
            raise ValueError("mean must be null exactly when the day is empty")


@dataclass(frozen=True)
class SentimentSummary:
    """Sentiment over a whole window, same shape as a series point."""

    window: TimeWindow
    mean: float | None
    tweet_count: int
    histogram: SentimentHistogram


def _require_within_crisis(profile: TrackingProfile, window: TimeWindow) -> None:
    if window.start < profile.window.start or window.end > profile.window.end:
        raise WindowOutsideCrisis(
            f"window [{window.start}, {window.end}) exceeds the crisis window"
        )


class _DayBucket:
    __slots__ = ("count", "value_sum", "neg", "neu", "pos", "retweets", "authors")

    def __init__(self):
        self.count = 0
        self.value_sum = 0.0
        self.neg = 0
        self.neu = 0
        self.pos = 0
        self.retweets = 0
        self.authors: set[str] = set()

    def add(self, tweet: Tweet, score: SentimentScore) -> None:
        self.count += 1
        self.value_sum += score.value
        if score.label == "negative":
            self.neg += 1
        elif score.label == "positive":
            self.pos += 1
        else:
            self.neu += 1
        if tweet.is_retweet:
            self.retweets += 1
        self.authors.add(tweet.author_id)

    def histogram(self) -> SentimentHistogram:
        return SentimentHistogram(negative=self.neg, neutral=self.neu, positive=self.pos)

    def mean(self) -> float | None:
        if self.count == 0:
            return None
        return max(-1.0, min(1.0, self.value_sum / self.count))


def _bucket_by_day(
    store: TweetStore, profile_id: str, window: TimeWindow, lexicon: Lexicon
) -> dict[date, _DayBucket]:
    buckets: dict[date, _DayBucket] = {}
    for tweet in store.scan(profile_id, window):
        day = tweet.created_at.date()
        bucket = buckets.get(day)
        if bucket is None:
            bucket = buckets[day] = _DayBucket()
        bucket.add(tweet, score_sentiment(tweet.text, lexicon))
    return buckets


def sentiment_series(
    store: TweetStore,
    profile: TrackingProfile,
    window: TimeWindow,
    lexicon: Lexicon,
) -> list[SentimentSeriesPoint]:
    """Per-day sentiment over the window, one point per UTC day.

    Days without tweets are present with a null mean so the dashboard can
    render a continuous axis. The window must lie within the profile's
    crisis window.
    """
    _require_within_crisis(profile, window)
    buckets = _bucket_by_day(store, profile.profile_id, window, lexicon)
    empty = _DayBucket()
    return [
        SentimentSeriesPoint(
            day=day,
            mean=(b := buckets.get(day, empty)).mean(),
            tweet_count=b.count,
            histogram=b.histogram(),
        )
        for day in window.days()
    ]


def crisis_sentiment(
    store: TweetStore, profile: TrackingProfile, lexicon: Lexicon
) -> SentimentSummary:
    """Sentiment over the full crisis window.

    The mean is computed over every tweet in the window, which equals the
    tweet-count-weighted mean of the daily means.
    """
    count = 0
    value_sum = 0.0
    neg = neu = pos = 0
    for tweet in store.scan(profile.profile_id, profile.window):
        score = score_sentiment(tweet.text, lexicon)
        count += 1
        value_sum += score.value
        if score.label == "negative":
            neg += 1
        elif score.label == "positive":
            pos += 1
        else:
            neu += 1
    mean = None if count == 0 else max(-1.0, min(1.0, value_sum / count))
    return SentimentSummary(
        window=profile.window,
        mean=mean,
        tweet_count=count,
        histogram=SentimentHistogram(negative=neg, neutral=neu, positive=pos),
    )


def daily_overview(
    store: TweetStore,
    profile: TrackingProfile,
    day: date,
    lexicon: Lexicon,
) -> DailyAggregate:
    """Counts, unique authors, and sentiment for one UTC day."""
    if not profile.window.contains_day(day):
        raise WindowOutsideCrisis(f"{day.isoformat()} is outside the crisis window")
    day_start = datetime(day.year, day.month, day.day, tzinfo=timezone.utc)
    day_window = TimeWindow(day_start, day_start + timedelta(days=1))
    bucket = _DayBucket()
    for tweet in store.scan(profile.profile_id, day_window):
        bucket.add(tweet, score_sentiment(tweet.text, lexicon))
    return DailyAggregate(
        day=day,
        tweet_count=bucket.count,
        retweet_count=bucket.retweets,
        unique_authors=len(bucket.authors),
        sentiment_mean=bucket.mean(),
        histogram=bucket.histogram(),
    )


def weekly_counts(
    store: TweetStore, profile: TrackingProfile, window: TimeWindow
) -> list[WeeklyAggregate]:
    """Tweet totals per ISO-8601 week, one entry per week the window touches.

    Weeks are keyed by (iso_year, iso_week) so series spanning a year
    boundary (including week 53) never collide; only tweets inside the
    window are counted, and empty weeks are listed with zero.
    """
    weeks: dict[tuple[int, int], int] = {}
    for day in window.days():
        iso = day.isocalendar()
        weeks.setdefault((iso[0], iso[1]), 0)
    for tweet in store.scan(profile.profile_id, window):
        iso = tweet.created_at.date().isocalendar()
        weeks[(iso[0], iso[1])] = weeks.get((iso[0], iso[1]), 0) + 1
    return [
        WeeklyAggregate(iso_year=y, iso_week=w, tweet_count=n)
        for (y, w), n in sorted(weeks.items())
    ]


def trending(
    store: TweetStore,
    profile: TrackingProfile,
    window: TimeWindow,
    k: int,
    weights: EngagementWeights = EngagementWeights(),
) -> list[TrendingEntry]:
    """Top-k tweets by engagement, descending.

    Ties prefer the later created_at, then the lexically smaller tweet_id.
    The returned order is invariant under scaling both weights by any
    positive constant.
    """
    if k < 1:
        raise ValueError("k must be at least 1")

    def sort_key(tweet: Tweet) -> tuple[float, float, str]:
        return (
            -engagement(tweet, weights),
            -tweet.created_at.timestamp(),
            tweet.tweet_id,
        )

    top = heapq.nsmallest(k, store.scan(profile.profile_id, window), key=sort_key)
    return [
        TrendingEntry(
            tweet_id=tweet.tweet_id,
            engagement=engagement(tweet, weights),
            rank=rank,
        )
        for rank, tweet in enumerate(top, start=1)
    ]


def descriptive_stats(
    store: TweetStore, profile: TrackingProfile, window: TimeWindow
) -> DescriptiveStats:
    """Window totals: tweets, retweets, unique authors, mentions, first/last."""
    total = retweets = mentions = 0
    authors: set[str] = set()
    first: datetime | None = None
    last: datetime | None = None
    for tweet in store.scan(profile.profile_id, window):
        total += 1
        if tweet.is_retweet:
            retweets += 1
        mentions += len(tweet.mentions)
        authors.add(tweet.author_id)
        if first is None:
            first = tweet.created_at
        last = tweet.created_at if last is None else max(last, tweet.created_at)
    return DescriptiveStats(
        total_tweets=total,
        total_retweets=retweets,
        unique_authors=len(authors),
        total_mentions=mentions,
        first_tweet_at=first,
        last_tweet_at=last,
    )

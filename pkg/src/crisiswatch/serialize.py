"""JSON payload builders shared by the HTTP service and the CLI reports.

All timestamps render as RFC 3339 UTC; rendering is key-sorted and compact
so identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json

from .analytics import SentimentSeriesPoint, SentimentSummary
from .models import (
    DailyAggregate,
    DescriptiveStats,
    SentimentHistogram,
    TimeWindow,
    TrackingProfile,
    TrendingEntry,
    Tweet,
    WeeklyAggregate,
    format_rfc3339,
)


def dump_bytes(payload: object) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def window_payload(window: TimeWindow) -> dict:
    return {"start": format_rfc3339(window.start), "end": format_rfc3339(window.end)}


def profile_payload(profile: TrackingProfile) -> dict:
    return {
        "profile_id": profile.profile_id,
        "name": profile.name,
        "window": window_payload(profile.window),
        "active": profile.active,
    }


def tweet_payload(tweet: Tweet) -> dict:
    return {
        "tweet_id": tweet.tweet_id,
        "created_at": format_rfc3339(tweet.created_at),
        "author_id": tweet.author_id,
        "author_handle": tweet.author_handle,
        "text": tweet.text,
        "like_count": tweet.like_count,
        "retweet_count": tweet.retweet_count,
        "retweet_of": tweet.retweet_of,
        "mentions": list(tweet.mentions),
        "hashtags": list(tweet.hashtags),
        "matched_terms": [t.as_string() for t in tweet.matched_terms],
    }


def histogram_payload(histogram: SentimentHistogram) -> dict:
    return {
        "negative": histogram.negative,
        "neutral": histogram.neutral,
        "positive": histogram.positive,
    }


def series_point_payload(point: SentimentSeriesPoint) -> dict:
    return {
        "date": point.day.isoformat(),
        "mean": point.mean,
        "tweet_count": point.tweet_count,
        "histogram": histogram_payload(point.histogram),
    }


def sentiment_summary_payload(summary: SentimentSummary) -> dict:
    return {
        "window": window_payload(summary.window),
        "mean": summary.mean,
        "tweet_count": summary.tweet_count,
        "histogram": histogram_payload(summary.histogram),
    }


def daily_overview_payload(agg: DailyAggregate) -> dict:
    return {
        "date": agg.day.isoformat(),
        "tweet_count": agg.tweet_count,
        "retweet_count": agg.retweet_count,
        "unique_authors": agg.unique_authors,
        "sentiment_mean": agg.sentiment_mean,
        "histogram": histogram_payload(agg.histogram),
    }


def weekly_payload(weeks: list[WeeklyAggregate]) -> dict:
    return {
        "weeks": [
            {"iso_year": w.iso_year, "iso_week": w.iso_week, "tweet_count": w.tweet_count}
            for w in weeks
        ]
    }


def trending_payload(entries: list[TrendingEntry], tweets: dict[str, Tweet]) -> dict:
    return {
        "entries": [
            {
                "rank": e.rank,
                "engagement": e.engagement,
                "tweet": tweet_payload(tweets[e.tweet_id]),
            }
            for e in entries
        ]
    }


def stats_payload(stats: DescriptiveStats) -> dict:
    return {
        "total_tweets": stats.total_tweets,
        "total_retweets": stats.total_retweets,
        "unique_authors": stats.unique_authors,
        "total_mentions": stats.total_mentions,
        "first_tweet_at": (
            None if stats.first_tweet_at is None else format_rfc3339(stats.first_tweet_at)
        ),
        "last_tweet_at": (
            None if stats.last_tweet_at is None else format_rfc3339(stats.last_tweet_at)
        ),
    }

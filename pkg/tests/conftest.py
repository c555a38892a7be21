from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

import pytest

from crisiswatch.analytics import Lexicon
from crisiswatch.models import (
    TimeWindow,
    TrackingProfile,
    Tweet,
    extract_hashtags,
    extract_mentions,
    normalize_term,
)
from crisiswatch.store import TweetStore

UTC = timezone.utc

WINDOW_START = datetime(2026, 3, 1, tzinfo=UTC)
WINDOW_END = datetime(2026, 3, 15, tzinfo=UTC)


@pytest.fixture
def store(tmp_path):
    with TweetStore(tmp_path / "store") as s:
        yield s


@pytest.fixture
def window():
    return TimeWindow(WINDOW_START, WINDOW_END)


@pytest.fixture
def profile(window):
    return TrackingProfile(
        profile_id="p1",
        name="Test crisis",
        terms=(
            normalize_term("hashtag", "#measles"),
            normalize_term("keyword", "vaccine"),
            normalize_term("username", "@cityhealth"),
        ),
        window=window,
        active=True,
    )


@pytest.fixture
def test_lexicon():
    """100-token lexicon with valences cycling through [-5, +5]."""
    valences = {f"w{i:03d}": (i % 11) - 5 for i in range(100)}
    return Lexicon(valences=valences, version="test-100")


def make_tweet(
    tweet_id: str,
    created_at: datetime,
    text: str = "hello world",
    author_id: str = "a1",
    author_handle: str = "handle1",
    like_count: int = 0,
    retweet_count: int = 0,
    retweet_of: str | None = None,
) -> Tweet:
    return Tweet(
        tweet_id=tweet_id,
        created_at=created_at,
        author_id=author_id,
        author_handle=author_handle,
        text=text,
        like_count=like_count,
        retweet_count=retweet_count,
        retweet_of=retweet_of,
        mentions=extract_mentions(text),
        hashtags=extract_hashtags(text),
    )


def random_tweets(
    rng: random.Random,
    n: int,
    start: datetime = WINDOW_START,
    end: datetime = WINDOW_END,
    lexicon_tokens: tuple[str, ...] = (),
) -> list[Tweet]:
    """Random tweets inside [start, end) mixing lexicon tokens with noise."""
    span = int((end - start).total_seconds())
    vocab = list(lexicon_tokens) + [f"noise{i}" for i in range(40)]
    authors = [f"a{i}" for i in range(max(2, n // 10))]
    tweets = []
    for i in range(n):
        words = [vocab[rng.randrange(len(vocab))] for _ in range(rng.randint(1, 12))]
        if rng.random() < 0.2:
            words.append("@handle" + str(rng.randrange(5)))
        if rng.random() < 0.3:
            words.append("#tag" + str(rng.randrange(5)))
        created = start + timedelta(seconds=rng.randrange(span))
        retweet_of = f"t{rng.randrange(i)}" if i and rng.random() < 0.25 else None
        tweets.append(
            make_tweet(
                tweet_id=f"t{i}",
                created_at=created,
                text=" ".join(words),
                author_id=authors[rng.randrange(len(authors))],
                like_count=rng.randrange(200),
                retweet_count=rng.randrange(60),
                retweet_of=retweet_of,
            )
        )
    return tweets


def insert_all(store: TweetStore, profile_id: str, tweets: list[Tweet]) -> None:
    for t in tweets:
        store.insert(profile_id, t)

"""Child process for the kill-and-reopen durability test.

Inserts N tweets, reports success on stdout, then dies via os._exit so no
connection cleanup or interpreter shutdown runs, as in a crash.
"""

import os
import sys
from datetime import datetime, timedelta, timezone

from crisiswatch.models import Tweet
from crisiswatch.store import TweetStore


def main() -> None:
    root, n = sys.argv[1], int(sys.argv[2])
    store = TweetStore(root)
    base = datetime(2026, 3, 1, tzinfo=timezone.utc)
    for i in range(n):
        store.insert(
            "p1",
            Tweet(
                tweet_id=f"d{i:07d}",
                created_at=base + timedelta(seconds=i),
                author_id="a1",
                author_handle="h1",
                text=f"durable record {i} #measles",
                like_count=i % 7,
                retweet_count=0,
                hashtags=("measles",),
            ),
        )
    sys.stdout.write(f"INSERTED {n}\n")
    sys.stdout.flush()
    os._exit(1)


if __name__ == "__main__":
    main()

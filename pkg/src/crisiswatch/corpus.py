"""Deterministic synthetic tweet corpora for desk-scale testing and demos.

The generated records follow the replay wire format and model a regional
disease-outbreak discussion. Every text carries at least one tracked
hashtag, so ingesting a generated file against the matching demo profile
accepts every record; the embedded vocabulary has known lexicon hits, which
keeps sentiment outcomes hand-checkable.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .models import TimeWindow, TrackingProfile, format_rfc3339, normalize_term

DEFAULT_START = datetime(2026, 3, 1, tzinfo=timezone.utc)

TRACKED_HASHTAGS = ("measles", "outbreak", "vaccination")

_HANDLES = (
    ("u1001", "cityhealth"),
    ("u1002", "regionnews"),
    ("u1003", "worriedparent42"),
    ("u1004", "clinicnurse"),
    ("u1005", "localteacher"),
    ("u1006", "riversideclinic"),
    ("u1007", "mark_the_medic"),
    ("u1008", "townhallwatch"),
    ("u1009", "askthedoc"),
    ("u1010", "neighbourly"),
)

_PLACES = ("northside", "riverdale", "hilltop", "westgate", "oldtown", "harborview")

# Emotion slots draw from the bundled lexicon so scores are predictable.
_NEGATIVE_WORDS = ("worried", "scared", "anxious", "upset", "stressed")
_POSITIVE_WORDS = ("hopeful", "grateful", "relieved", "calm", "thankful")

_TEMPLATES = (
    "Case update: {n} new reports near {place} this morning #outbreak",
    "Feeling {neg} about the news from {place} today #measles",
    "Stay safe everyone, wash your hands and check on neighbours #measles",
    "The clinic at {place} offers shots all week, walk-ins welcome #vaccination",
    "Rumors about {place} closures are false, trust official channels @cityhealth #measles",
    "School in {place} closed today as a precaution #outbreak",
    "So {neg} for the families affected, sending support #measles",
    "Our kid just got vaccinated at {place}, feeling {pos} #vaccination",
    "Thanks to the nurses at {place}, we are {pos} and recovering well #measles",
    "Public meeting at {place} hall tonight about the response #outbreak",
    "Please share only verified information, misinformation causes panic #measles",
    "Vaccination rates in {place} are improving week over week #vaccination",
)


def demo_profile(
    profile_id: str = "demo-outbreak",
    start: datetime = DEFAULT_START,
    days: int = 14,
) -> TrackingProfile:
    """The tracking profile matching generated corpora."""
    terms = [normalize_term("hashtag", tag) for tag in TRACKED_HASHTAGS]
    terms.append(normalize_term("username", "cityhealth"))
    terms.append(normalize_term("keyword", "vaccinated"))
    return TrackingProfile(
        profile_id=profile_id,
        name="Regional outbreak monitoring (synthetic)",
        terms=tuple(terms),
        window=TimeWindow(start, start + timedelta(days=days)),
        active=True,
    )


def generate_records(
    seed: int,
    days: int,
    per_day: int,
    start: datetime = DEFAULT_START,
) -> list[dict]:
    """Synthesize ``days * per_day`` wire records, reproducibly per seed."""
    if days <= 0 or per_day <= 0:
        raise ValueError("days and per_day must be positive")
    rng = random.Random(seed)
    records: list[dict] = []
    originals: list[dict] = []
    for day in range(days):
        day_start = start + timedelta(days=day)
        for _ in range(per_day):
            index = len(records)
            tweet_id = f"t{seed}-{index:07d}"
            author_id, handle = _HANDLES[rng.randrange(len(_HANDLES))]
            created = day_start + timedelta(seconds=rng.randrange(86400))
            like_count = rng.randint(0, 40)
            retweet_count = rng.randint(0, 12)
            if rng.random() < 0.04:  # occasional viral post
                like_count += rng.randint(200, 2000)
                retweet_count += rng.randint(50, 400)
            record = {
                "tweet_id": tweet_id,
                "created_at": format_rfc3339(created),
                "author_id": author_id,
                "author_handle": handle,
                "like_count": like_count,
                "retweet_count": retweet_count,
            }
            # Retweets reference non-retweet originals only, so the quoted
            # text never nests and always keeps its tracked hashtag.
            if originals and rng.random() < 0.25:
                original = originals[rng.randrange(len(originals))]
                record["retweet_of"] = original["tweet_id"]
                record["text"] = f"RT @{original['author_handle']}: {original['text']}"
            else:
                template = _TEMPLATES[rng.randrange(len(_TEMPLATES))]
                record["text"] = template.format(
                    n=rng.randint(1, 9),
                    place=_PLACES[rng.randrange(len(_PLACES))],
                    neg=_NEGATIVE_WORDS[rng.randrange(len(_NEGATIVE_WORDS))],
                    pos=_POSITIVE_WORDS[rng.randrange(len(_POSITIVE_WORDS))],
                )
                originals.append(record)
            records.append(record)
    return records


def write_replay_file(path: str | Path, records: list[dict]) -> None:
    """Write records as newline-delimited JSON, byte-stable per input."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")))
            fh.write("\n")

"""Operator command line: serve the API, ingest replay files, generate
synthetic corpora, and print offline reports.

Exit codes are stable: 0 success, 2 configuration or usage error, 3 domain
error (unknown profile, date outside the crisis window), 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import uvicorn

from . import __version__, analytics, corpus
from .analytics import EngagementWeights, Lexicon, WindowOutsideCrisis
from .config import ConfigError, load_config
from .ingest import StoreWriteError, open_replay_source, run_ingest
from .models import TimeWindow, parse_rfc3339
from .serialize import (
    sentiment_summary_payload,
    stats_payload,
    trending_payload,
    weekly_payload,
    window_payload,
)
from .service import create_app
from .store import TweetStore

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


def _positive_int(value: str) -> int:
    n = int(value)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crisiswatch",
        description="Tweet-stream monitoring and analytics for crisis teams.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service until interrupted")
    p.add_argument("--config", required=True, help="path to the YAML config file")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("ingest", help="ingest a replay file into the store")
    p.add_argument("--config", required=True)
    p.add_argument("--profile", required=True, help="profile id from the config")
    p.add_argument("replay_file", help="newline-delimited JSON records")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("gen-corpus", help="write a deterministic synthetic corpus")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--days", type=_positive_int, required=True)
    p.add_argument("--per-day", type=_positive_int, required=True)
    p.add_argument("--out", required=True, help="output replay file path")
    p.add_argument(
        "--start",
        default=None,
        help="first day (RFC 3339 UTC); defaults to the demo window start",
    )
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("report", help="print analytics for a profile as JSON")
    p.add_argument("--config", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--from", dest="window_from", default=None, help="RFC 3339 UTC")
    p.add_argument("--to", dest="window_to", default=None, help="RFC 3339 UTC")
    p.set_defaults(func=cmd_report)

    return parser


def cmd_serve(args) -> int:
    config = load_config(args.config)
    app = create_app(config)
    try:
        uvicorn.run(
            app,
            host=config.service.host,
            port=config.service.port,
            log_level="warning",
        )
    except SystemExit as exc:  # uvicorn startup failure (e.g. port in use)
        return int(exc.code or 1)
    return EXIT_OK


def cmd_ingest(args) -> int:
    config = load_config(args.config)
    profile = config.profile(args.profile)
    if profile is None:
        print(f"unknown profile {args.profile!r}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        source = open_replay_source(args.replay_file)
    except OSError as exc:
        print(f"cannot read replay file: {exc}", file=sys.stderr)
        return EXIT_IO
    with TweetStore(config.store_path) as store:
        try:
            report = run_ingest(source, profile, store)
        except StoreWriteError as exc:
            print(exc.partial_report.to_json())
            print(f"ingest aborted: {exc}", file=sys.stderr)
            return EXIT_IO
    print(report.to_json())
    return EXIT_OK


def cmd_gen_corpus(args) -> int:
    start = corpus.DEFAULT_START if args.start is None else parse_rfc3339(args.start)
    records = corpus.generate_records(
        seed=args.seed, days=args.days, per_day=args.per_day, start=start
    )
    try:
        corpus.write_replay_file(args.out, records)
    except OSError as exc:
        print(f"cannot write corpus: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_report(args) -> int:
    config = load_config(args.config)
    profile = config.profile(args.profile)
    if profile is None:
        print(f"unknown profile {args.profile!r}", file=sys.stderr)
        return EXIT_DOMAIN
    start = (
        profile.window.start
        if args.window_from is None
        else parse_rfc3339(args.window_from)
    )
    end = profile.window.end if args.window_to is None else parse_rfc3339(args.window_to)
    window = TimeWindow(start, end)
    lexicon = (
        Lexicon.load(config.lexicon_path) if config.lexicon_path else Lexicon.bundled()
    )
    weights = EngagementWeights()
    with TweetStore(config.store_path) as store:
        stats = analytics.descriptive_stats(store, profile, window)
        summary = analytics.crisis_sentiment(store, profile, lexicon)
        weeks = analytics.weekly_counts(store, profile, window)
        entries = analytics.trending(store, profile, window, 10, weights)
        tweets = {
            e.tweet_id: store.get(profile.profile_id, e.tweet_id) for e in entries
        }
    doc = {
        "profile_id": profile.profile_id,
        "window": window_payload(window),
        "stats": stats_payload(stats),
        "crisis_sentiment": sentiment_summary_payload(summary),
        "weekly": weekly_payload(weeks)["weeks"],
        "trending": trending_payload(entries, tweets)["entries"],
    }
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WindowOutsideCrisis as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

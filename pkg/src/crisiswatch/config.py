"""YAML configuration for the CLI and service.

A config file defines the tracked profiles, the store and lexicon paths,
and the service settings. Bind address, API keys, and the IP allowlist can
be overridden through environment variables so deployments keep secrets
out of the file.
"""

from __future__ import annotations

import ipaddress
import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .models import TimeWindow, TrackingProfile, normalize_term, parse_rfc3339

ENV_BIND = "CRISISWATCH_BIND"
ENV_API_KEYS = "CRISISWATCH_API_KEYS"
ENV_ALLOWLIST = "CRISISWATCH_ALLOWLIST"
ENV_CONFIG = "CRISISWATCH_CONFIG"

DEFAULT_REQUEST_TIMEOUT = 5.0
DEFAULT_CACHE_TTL = 30.0


class ConfigError(Exception):
    """The config file is missing, unreadable, or invalid."""


@dataclass(frozen=True)
class ServiceSettings:
    host: str = "127.0.0.1"
    port: int = 8000
    api_keys: tuple[str, ...] = ()
    ip_allowlist: tuple[str, ...] = ()
    cors_origins: tuple[str, ...] = ()
    request_timeout: float = DEFAULT_REQUEST_TIMEOUT
    cache_ttl: float = DEFAULT_CACHE_TTL

    def __post_init__(self):
        if not self.api_keys:
            raise ValueError("at least one API key must be configured")
        if self.request_timeout <= 0:
            raise ValueError("request_timeout must be positive")
        if self.cache_ttl < 0:
            raise ValueError("cache_ttl must be non-negative")
        for block in self.ip_allowlist:
            try:
                ipaddress.ip_network(block)
            except ValueError as exc:
                raise ValueError(f"invalid allowlist CIDR {block!r}: {exc}") from exc


@dataclass(frozen=True)
class AppConfig:
    store_path: Path
    profiles: tuple[TrackingProfile, ...]
    service: ServiceSettings
    lexicon_path: Path | None = None

    def profile(self, profile_id: str) -> TrackingProfile | None:
        for p in self.profiles:
            if p.profile_id == profile_id:
                return p
        return None


def _parse_profile(doc: dict) -> TrackingProfile:
    try:
        window = doc["window"]
        terms = []
        for term_doc in doc.get("terms", []):
            for kind, raw in term_doc.items():
                terms.append(normalize_term(kind, str(raw)))
        return TrackingProfile(
            profile_id=str(doc["id"]),
            name=str(doc.get("name", doc["id"])),
            terms=tuple(terms),
            window=TimeWindow(
                parse_rfc3339(window["start"]), parse_rfc3339(window["end"])
            ),
            active=bool(doc.get("active", True)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid profile definition: {exc}") from exc


def _split_csv(value: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in value.split(",") if part.strip())


def load_config(path: str | Path, env: dict | None = None) -> AppConfig:
    """Load and validate a config file, applying environment overrides."""
    env = os.environ if env is None else env
    try:
        with open(path, encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a mapping")

    if "store_path" not in doc:
        raise ConfigError("store_path is required")
    base = Path(path).resolve().parent
    store_path = (base / str(doc["store_path"])).resolve()
    lexicon_path = None
    if doc.get("lexicon_path"):
        lexicon_path = (base / str(doc["lexicon_path"])).resolve()
        if not lexicon_path.is_file():
            raise ConfigError(f"lexicon file {lexicon_path} does not exist")

    profiles = tuple(_parse_profile(p) for p in doc.get("profiles", []))
    seen: set[str] = set()
    for p in profiles:
        if p.profile_id in seen:
            raise ConfigError(f"duplicate profile id {p.profile_id!r}")
        seen.add(p.profile_id)

    svc = doc.get("service", {}) or {}
    if not isinstance(svc, dict):
        raise ConfigError("service section must be a mapping")

    bind = env.get(ENV_BIND) or svc.get("bind", "127.0.0.1:8000")
    host, _, port_str = str(bind).rpartition(":")
    if not host:
        raise ConfigError(f"bind address {bind!r} must be host:port")
    try:
        port = int(port_str)
    except ValueError as exc:
        raise ConfigError(f"bind port {port_str!r} is not an integer") from exc

    api_keys: tuple[str, ...]
    if env.get(ENV_API_KEYS):
        api_keys = _split_csv(env[ENV_API_KEYS])
    else:
        api_keys = tuple(str(k) for k in svc.get("api_keys", []))

    if env.get(ENV_ALLOWLIST) is not None:
        allowlist = _split_csv(env[ENV_ALLOWLIST])
    else:
        allowlist = tuple(str(b) for b in svc.get("ip_allowlist", []))

    try:
        settings = ServiceSettings(
            host=host,
            port=port,
            api_keys=api_keys,
            ip_allowlist=allowlist,
            cors_origins=tuple(str(o) for o in svc.get("cors_origins", [])),
            request_timeout=float(
                svc.get("request_timeout_seconds", DEFAULT_REQUEST_TIMEOUT)
            ),
            cache_ttl=float(svc.get("cache_ttl_seconds", DEFAULT_CACHE_TTL)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    return AppConfig(
        store_path=store_path,
        profiles=profiles,
        service=settings,
        lexicon_path=lexicon_path,
    )

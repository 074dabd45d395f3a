"""
On-disk coefficient cache for eta-quotient expansions.

The cache is advisory: a missing, stale or unreadable file only costs
recomputation. Entries are keyed by the canonical eta-quotient string and
expansion mode; a lookup is served by any stored entry of equal or larger
order.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from .series import TruncatedSeries

log = logging.getLogger(__name__)

FORMAT = "tcore-coefficient-cache"
VERSION = 1


def default_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "tcore" / "coefficients.json"


class CoefficientCache:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_path()
        self.entries: dict[str, TruncatedSeries] = {}
        self.dirty = False
        self._load()

    def _load(self):
        try:
            raw = json.loads(self.path.read_text())
        except FileNotFoundError:
            return
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache %s: %s", self.path, exc)
            return
        if raw.get("format") != FORMAT or raw.get("version") != VERSION:
            log.warning("ignoring cache %s with unknown format/version", self.path)
            return
        for key, ent in raw.get("entries", {}).items():
            try:
                coeffs = [int(x) for x in ent["coeffs"].split()]
                self.entries[key] = TruncatedSeries(coeffs, ent["order"])
            except (KeyError, ValueError, AttributeError):
                log.warning("dropping malformed cache entry %r", key)

    def lookup(self, key: str, order: int) -> TruncatedSeries | None:
        hit = self.entries.get(key)
        if hit is None or hit.order < order:
            return None
        return hit.truncate(order)

    def store(self, key: str, series: TruncatedSeries) -> None:
        old = self.entries.get(key)
        if old is None or old.order < series.order:
            self.entries[key] = series
            self.dirty = True

    def save(self) -> None:
        if not self.dirty:
            return
        payload = {
            "format": FORMAT,
            "version": VERSION,
            "entries": {
                key: {"order": s.order, "coeffs": " ".join(map(str, s.coeffs))}
                for key, s in sorted(self.entries.items())
            },
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".cache-")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, self.path)
        self.dirty = False

    def clear(self) -> None:
        self.entries.clear()
        self.dirty = False
        try:
            self.path.unlink()
        except FileNotFoundError:
            pass

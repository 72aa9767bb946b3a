"""SQLite Cache module.

This module provides the following classes:

- SqliteCache
"""

from __future__ import annotations

import json
import sqlite3
from datetime import datetime, timedelta, timezone
from typing import Any

_DATE_FORMAT = "%Y-%m-%d"


class SqliteCache:
    """A class for caching homology reports using SQLite.

    Reports are keyed by a digest of the input diagrams and the rank
    options, so a stored value is reused only for the same computation.
    Reports stored without an expiry are kept until :meth:`clear`.

    Args:
        db_name: Path of the database file, or ``:memory:``.
        expire: Number of days a report is kept, or None to keep it forever.
    """

    def __init__(self: SqliteCache, db_name: str = "twistkh_cache.db", expire: int | None = None) -> None:
        """Initialize a new SqliteCache and drop expired reports."""
        self.expire = expire
        self.con = sqlite3.connect(db_name)
        self.cur = self.con.cursor()
        self.cur.execute("CREATE TABLE IF NOT EXISTS reports (key TEXT PRIMARY KEY, json TEXT, expire TEXT)")
        self.cleanup()

    def __len__(self: SqliteCache) -> int:
        """Return the number of stored reports."""
        (count,) = self.cur.execute("SELECT COUNT(*) FROM reports").fetchone()
        return count

    def get(self: SqliteCache, key: str) -> Any | None:
        """Retrieve a report from the cache database.

        Args:
            key: The digest of the computation.

        Returns:
            The decoded report if found, or None if not found.
        """
        row = self.cur.execute("SELECT json FROM reports WHERE key = ?", (key,)).fetchone()
        return None if row is None else json.loads(row[0])

    def store(self: SqliteCache, key: str, value: Any) -> None:
        """Save a report, replacing any earlier one under the same key.

        Args:
            key: The digest of the computation.
            value: JSON-serializable report.
        """
        with self.con:
            self.cur.execute(
                "INSERT OR REPLACE INTO reports(key, json, expire) VALUES(?, ?, ?)",
                (key, json.dumps(value), self._expiry_date()),
            )

    def cleanup(self: SqliteCache) -> None:
        """Remove reports whose expiry date has passed."""
        today = datetime.now(tz=timezone.utc).strftime(_DATE_FORMAT)
        with self.con:
            self.cur.execute("DELETE FROM reports WHERE expire IS NOT NULL AND expire < ?", (today,))

    def clear(self: SqliteCache) -> None:
        """Remove every report."""
        with self.con:
            self.cur.execute("DELETE FROM reports")

    def _expiry_date(self: SqliteCache) -> str | None:
        if not self.expire:
            return None
        return (datetime.now(tz=timezone.utc) + timedelta(days=self.expire)).strftime(_DATE_FORMAT)

"""Test Cache module.

This module contains tests for SqliteCache objects.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from twistkh import api, exceptions, fixtures, sqlite_cache


class NoGet:
    """The NoGet object fakes storing data in the sqlite cache."""

    def store(self: NoGet, key: str, value: object) -> None:  # noqa: ARG002
        """Save no data."""
        return


class NoStore:
    """The NoStore object fakes getting data from the sqlite cache."""

    def get(self: NoStore, key: str) -> None:  # noqa: ARG002
        """Retrieve no data."""
        return


def test_no_get() -> None:
    """Test for retrieving failure."""
    m = api(cache=NoGet())
    left, right = fixtures.split_fixture("unknot0")

    with pytest.raises(exceptions.CacheError):
        m.homology(left, right)


def test_no_store() -> None:
    """Test for saving data error."""
    m = api(cache=NoStore())
    left, right = fixtures.split_fixture("unknot0")

    with pytest.raises(exceptions.CacheError):
        m.homology(left, right)


def test_sql_store() -> None:
    """Test for saving and retrieving a report."""
    cache = sqlite_cache.SqliteCache(":memory:")
    assert cache.get("key") is None
    cache.store("key", {"1/2": 2})
    assert cache.get("key") == {"1/2": 2}
    cache.store("key", {"0": 1})
    assert cache.get("key") == {"0": 1}


def test_expired_reports_removed() -> None:
    """Test for cleanup dropping reports past their expiry date."""
    cache = sqlite_cache.SqliteCache(":memory:", expire=1)
    cache.store("key", {"0": 1})
    cache.cleanup()
    assert cache.get("key") == {"0": 1}
    cache.cur.execute("UPDATE reports SET expire = '2000-01-01'")
    cache.cleanup()
    assert cache.get("key") is None
    assert len(cache) == 0


def test_reports_without_expiry_kept() -> None:
    """Test for cleanup keeping reports stored without an expiry."""
    cache = sqlite_cache.SqliteCache(":memory:")
    cache.store("a", {"0": 1})
    cache.store("b", {"1/2": 2})
    cache.cleanup()
    assert len(cache) == 2
    cache.clear()
    assert cache.get("a") is None


def test_session_uses_cache() -> None:
    """Test for homology being read back from the cache."""
    cache = sqlite_cache.SqliteCache(":memory:")
    m = api(cache=cache)
    left, right = fixtures.split_fixture("hopf")
    assert m.homology(left, right) == {Fraction(1, 2): 2}
    ((key, stored),) = cache.cur.execute("SELECT key, json FROM reports").fetchall()
    assert stored == '{"1/2": 2}'
    cache.store(key, {"3": 5})
    assert m.homology(left, right) == {Fraction(3): 5}
    assert m.homology(left, right, oracle=True) == {Fraction(1, 2): 2}

"""Project entry file."""

# Keep this at beginning of file to prevent circular import with session
__version__ = "0.1.0"


from twistkh import session, sqlite_cache
from twistkh.field import RankMode


def api(
    cache: sqlite_cache.SqliteCache | None = None,
    mode: RankMode = "exact",
    seed: int = 0,
    retries: int = 8,
) -> session.Session:
    """Entry function that sets up a session for repeated computations.

    Args:
        cache (SqliteCache): SqliteCache to store homology reports in.
        mode (str): Rank mode, ``exact`` or ``randomized``.
        seed (int): Seed of the random evaluation points.
        retries (int): Number of evaluation points tried in randomized mode.

    Returns:
        A :obj:`Session` object
    """
    return session.Session(cache=cache, mode=mode, seed=seed, retries=retries)

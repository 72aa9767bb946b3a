# ruff: noqa: TRY003, EM102
"""Session module.

This module provides the following classes:

- Session
"""

from __future__ import annotations

import hashlib
import json
import logging
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from twistkh import exceptions, sqlite_cache
from twistkh.cleaved import CleavedAlgebra
from twistkh.diagram import TangleDiagram, canonical_json
from twistkh.pairing import ChainComplex, box_tensor, twisted_khovanov
from twistkh.reduce import CancellationData, reduce_free_circles
from twistkh.type_a import TypeAStructure, build_m1
from twistkh.type_d import TypeDStructure, build_delta
from twistkh.weightmoves import WeightMove, find_weight_move

if TYPE_CHECKING:
    from twistkh.field import Polynomial, RankMode
    from twistkh.schemas.report import VerificationReport

logger = logging.getLogger(__name__)


class Session:
    """A class holding the shared state of repeated computations.

    One algebra is kept per number of axis points, so its generator catalog
    and relation spans are built once.

    Args:
        cache: An optional SqliteCache for homology reports.
        mode: Rank mode, ``exact`` or ``randomized``.
        seed: Seed of the random evaluation points.
        retries: Number of evaluation points tried in randomized mode.
    """

    def __init__(
        self: Session,
        cache: sqlite_cache.SqliteCache | None = None,
        mode: RankMode = "exact",
        seed: int = 0,
        retries: int = 8,
    ) -> None:
        """Initialize a Session with the provided cache and rank options."""
        self.cache = cache
        self.mode = mode
        self.seed = seed
        self.retries = retries
        self._algebras: dict[int, CleavedAlgebra] = {}

    def algebra(self: Session, n: int) -> CleavedAlgebra:
        """Return the shared algebra for ``2n`` axis points."""
        if n not in self._algebras:
            self._algebras[n] = CleavedAlgebra(n)
        return self._algebras[n]

    def type_d(self: Session, diagram: TangleDiagram) -> TypeDStructure:
        """Build the type D structure of a right tangle."""
        return build_delta(diagram, self.algebra(diagram.n))

    def type_a(self: Session, diagram: TangleDiagram) -> TypeAStructure:
        """Build the type A structure of a left tangle."""
        return build_m1(diagram, self.algebra(diagram.n))

    def pair(self: Session, left: TangleDiagram, right: TangleDiagram) -> ChainComplex:
        """Return the box tensor product of the structures of two tangles."""
        return box_tensor(self.type_a(left), self.type_d(right))

    def oracle(self: Session, left: TangleDiagram, right: TangleDiagram) -> ChainComplex:
        """Return the twisted Khovanov complex of the glued diagram."""
        return twisted_khovanov(left, right)

    def reduce(self: Session, diagram: TangleDiagram, *, reverse: bool = False) -> CancellationData:
        """Cancel the free circles out of the type D structure of a right tangle."""
        return reduce_free_circles(self.type_d(diagram), reverse=reverse)

    def weight_move(
        self: Session, diagram: TangleDiagram, crossing: int | str, weight: Polynomial
    ) -> tuple[WeightMove, VerificationReport]:
        """Move a weight across a crossing and check the resulting isomorphisms."""
        return find_weight_move(diagram, crossing, weight, self.algebra(diagram.n))

    def homology(
        self: Session, left: TangleDiagram, right: TangleDiagram, *, oracle: bool = False
    ) -> dict[Fraction, int]:
        """Return the homology ranks of a glued diagram by collapsed grading.

        Args:
            left: The left tangle.
            right: The right tangle.
            oracle: Use the whole-diagram complex instead of the box tensor.

        Returns:
            The nonzero ranks.

        Raises:
            CacheError: If the cache object lacks ``get`` or ``store``.
        """
        key = self._cache_key(left, right, oracle=oracle)
        cached = self._get_results_from_cache(key)
        if cached is not None:
            logger.debug("Homology cache hit for %s", key[:12])
            return {Fraction(z): r for z, r in cached.items()}
        complex_ = self.oracle(left, right) if oracle else self.pair(left, right)
        ranks = complex_.homology_ranks(self.mode, self.seed, self.retries)
        self._save_results_to_cache(key, {str(z): r for z, r in ranks.items()})
        return ranks

    def _cache_key(self: Session, left: TangleDiagram, right: TangleDiagram, *, oracle: bool) -> str:
        """Return the digest of a homology computation."""
        parts: list[Any] = []
        for diagram in (left, right):
            weights = [w.to_text(diagram.registry) for w in diagram.weights]
            parts.append([json.loads(canonical_json(diagram)), weights])
        parts.append([self.mode, self.seed, "oracle" if oracle else "box"])
        text = json.dumps(parts, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()

    def _get_results_from_cache(self: Session, key: str) -> Any | None:
        """Retrieve a cached report using the specified key.

        Raises:
            CacheError: If there is an issue with the cache object.
        """
        cached_response = None

        if self.cache is not None:
            try:
                cached_response = self.cache.get(key)
            except AttributeError as e:
                raise exceptions.CacheError(f"Cache object passed in is missing attribute: {e!r}") from e

        return cached_response

    def _save_results_to_cache(self: Session, key: str, data: Any) -> None:
        """Store a report in the cache using the specified key.

        Raises:
            CacheError: If there is an issue with the cache object.
        """
        if self.cache is not None:
            try:
                self.cache.store(key, data)
            except AttributeError as e:
                raise exceptions.CacheError(f"Cache object passed in is missing attribute: {e!r}") from e

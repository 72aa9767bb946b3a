"""Conftest module.

This module contains pytest fixtures.
"""

import pytest

from twistkh import api, fixtures
from twistkh.cleaved import CleavedAlgebra
from twistkh.diagram import TangleDiagram
from twistkh.session import Session
from twistkh.type_a import TypeAStructure, build_m1
from twistkh.type_d import TypeDStructure, build_delta


@pytest.fixture(scope="session")
def session() -> Session:
    """Twistkh api fixture."""
    return api()


@pytest.fixture(scope="session")
def algebra2(session: Session) -> CleavedAlgebra:
    """Algebra on four axis points fixture."""
    return session.algebra(2)


@pytest.fixture(scope="session")
def hopf_right() -> TangleDiagram:
    """Right half of the Hopf link fixture."""
    return fixtures.fixture("hopf_right")


@pytest.fixture(scope="session")
def hopf_left() -> TangleDiagram:
    """Left half of the Hopf link fixture."""
    return fixtures.fixture("hopf_left")


@pytest.fixture(scope="session")
def hopf_d(hopf_right: TangleDiagram, algebra2: CleavedAlgebra) -> TypeDStructure:
    """Type D structure of the right Hopf tangle fixture."""
    return build_delta(hopf_right, algebra2)


@pytest.fixture(scope="session")
def hopf_a(hopf_left: TangleDiagram, algebra2: CleavedAlgebra) -> TypeAStructure:
    """Type A structure of the left Hopf tangle fixture."""
    return build_m1(hopf_left, algebra2)


@pytest.fixture(scope="session")
def kink_right() -> TangleDiagram:
    """Right tangle with free circles fixture."""
    return fixtures.fixture("unknot_kink_right")

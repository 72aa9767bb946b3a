# ruff: noqa: RUF012
"""Complex module.

This module provides the following classes:

- GeneratorRecord
- DifferentialEntry
- ComplexDump
"""

from pydantic import Field

from twistkh.schemas import BaseModel


class GeneratorRecord(BaseModel):
    """A data model representing a generator of a chain complex.

    Attributes:
        id (int): Position of the generator.
        label (str): Printable label.
        zeta (str): Collapsed grading as a fraction.
    """

    id: int
    label: str
    zeta: str


class DifferentialEntry(BaseModel):
    """A data model representing a nonzero entry of the differential.

    Attributes:
        source (int): Id of the generator the entry leaves.
        target (int): Id of the generator the entry reaches.
        coeff (str): The field coefficient.
    """

    source: int = Field(alias="from")
    target: int = Field(alias="to")
    coeff: str


class ComplexDump(BaseModel):
    """A data model representing a chain complex and its homology.

    Attributes:
        variables (list[str]): Display names of the variables.
        generators (list[GeneratorRecord]): The generators.
        differential (list[DifferentialEntry]): Nonzero entries.
        homology (dict[str, int]): Nonzero homology ranks by collapsed grading.
    """

    variables: list[str] = []
    generators: list[GeneratorRecord] = []
    differential: list[DifferentialEntry] = []
    homology: dict[str, int] = {}

# ruff: noqa: RUF012
"""Job module.

This module provides the following classes:

- Job
"""

from typing import Literal

from pydantic import Field, model_validator

from twistkh.schemas import BaseModel

Command = Literal["build-d", "build-a", "verify", "pair", "homology", "reduce", "weightmove", "fixtures"]

# Number of diagram files each command reads.
INPUT_COUNTS: dict[str, int] = {
    "build-d": 1,
    "build-a": 1,
    "verify": 1,
    "pair": 2,
    "homology": 2,
    "reduce": 1,
    "weightmove": 1,
    "fixtures": 0,
}


class Job(BaseModel):
    """A data model representing one command line job.

    Attributes:
        command (str): The subcommand.
        inputs (list[str]): Diagram files, left before right for pairings.
        structure (str): ``d`` or ``a`` for ``verify``.
        mode (str): Rank mode, ``exact`` or ``randomized``.
        seed (int): Seed of the random evaluation points.
        json_output (bool): Emit JSON instead of text.
        max_states (int): Largest state count a structure may have.
        cache (str, optional): Path of the homology cache database.
        oracle (bool): Compute homology from the glued diagram.
        compare_oracle (bool): Compare a pairing with the glued diagram.
        closed_form (bool): Compare a reduction with the closed form.
        reverse (bool): Cancel mutual pairs in reverse order.
        crossing (str, optional): Crossing id for ``weightmove``.
        weight (list[str]): Arc variables summing to the moved weight.
        out (str): Output directory for ``fixtures``.
        names (list[str]): Fixture names, empty for all.
    """

    command: Command
    inputs: list[str] = []
    structure: Literal["d", "a"] = "d"
    mode: Literal["exact", "randomized"] = "exact"
    seed: int = Field(default=0, ge=0, lt=2**64)
    json_output: bool = False
    max_states: int = Field(default=20000, ge=1)
    cache: str | None = None
    oracle: bool = False
    compare_oracle: bool = False
    closed_form: bool = False
    reverse: bool = False
    crossing: str | None = None
    weight: list[str] = []
    out: str = "."
    names: list[str] = []

    @model_validator(mode="after")
    def _check_inputs(self: "Job") -> "Job":
        expected = INPUT_COUNTS[self.command]
        if len(self.inputs) != expected:
            msg = f"'{self.command}' takes {expected} diagram files, got {len(self.inputs)}"
            raise ValueError(msg)
        if self.command == "weightmove" and (self.crossing is None or not self.weight):
            msg = "'weightmove' needs a crossing and a weight"
            raise ValueError(msg)
        return self

"""Configuration models for bruhat-lab."""

import argparse
import re
from pathlib import Path
from typing import Literal

import pydantic
from craft_application.models import CraftBaseModel

from .errors import InvalidInputError, InvalidSystemError

# optional, read from the working directory
CONFIG_FILE = Path("bruhat-lab.yaml")

_GROUP_PATTERN = re.compile(r"^A(?P<rank>[1-9][0-9]*)$")

OutputFormat = Literal["json", "dot", "table"]


class SystemDescriptor(CraftBaseModel):
    """Pydantic model describing a Coxeter system.

    Exactly one of the two forms is allowed: ``{type: A, rank: n}`` or
    ``{coxeter_matrix: [[...], ...]}`` where ``0`` encodes an infinite entry.
    """

    type: Literal["A"] | None = None
    """Cartan type of a permutation-backed system."""

    rank: int | None = None
    """Rank of the type A system."""

    coxeter_matrix: list[list[int]] | None = None
    """Coxeter matrix of a root-lattice-backed system."""

    @pydantic.model_validator(mode="after")
    def _check_form(self) -> "SystemDescriptor":
        if self.coxeter_matrix is not None:
            if self.type is not None or self.rank is not None:
                raise ValueError("give either type/rank or coxeter_matrix, not both")
            return self
        if self.type is None or self.rank is None:
            raise ValueError("type A systems need both 'type' and 'rank'")
        if self.rank < 1:
            raise ValueError(f"rank must be at least 1, got {self.rank}")
        return self

    @classmethod
    def type_a(cls, rank: int) -> "SystemDescriptor":
        """Return the descriptor of the symmetric group on ``rank + 1`` letters."""
        return cls(type="A", rank=rank)

    @classmethod
    def from_group(cls, group: str) -> "SystemDescriptor":
        """Parse a group shorthand such as ``A3``."""
        match = _GROUP_PATTERN.match(group.strip())
        if not match:
            raise InvalidSystemError(
                f"Unknown group {group!r}",
                resolution="Use A<n>, or --matrix-file for other Coxeter systems.",
            )
        return cls.type_a(int(match.group("rank")))

    @classmethod
    def from_file(cls, path: Path) -> "SystemDescriptor":
        """Load a JSON or YAML system descriptor file."""
        try:
            return cls.from_yaml_file(path)
        except (OSError, pydantic.ValidationError) as err:
            raise InvalidSystemError(
                f"Could not load system descriptor {str(path)!r}: {err}",
            ) from err

    def __str__(self) -> str:
        if self.coxeter_matrix is not None:
            return f"coxeter_matrix={self.coxeter_matrix}"
        return f"{self.type}{self.rank}"


class LabConfig(CraftBaseModel):
    """Defaults for lab scans."""

    sample_size: int = 50
    """Number of elements drawn when a group is too large to scan fully."""

    seed: int = 0
    """Seed for sampled scopes."""

    workers: int = 4
    """Worker threads used by scans."""

    max_group_size: int = 5040
    """Largest group enumerated without an explicit ``--all``."""

    @classmethod
    def load(cls, path: Path = CONFIG_FILE) -> "LabConfig":
        """Load the lab configuration, falling back to defaults."""
        if path.exists():
            return cls.from_yaml_file(path)
        return cls()


class RunConfig(CraftBaseModel):
    """Everything a single command invocation needs."""

    system: SystemDescriptor
    elements: list[str] = []
    output_format: OutputFormat = "json"
    exhaustive: bool = False
    sample: int | None = None
    seed: int | None = None
    out: Path | None = None
    hasse: bool = False

    @classmethod
    def from_args(
        cls,
        parsed_args: argparse.Namespace,
        *,
        default_format: OutputFormat = "json",
    ) -> "RunConfig":
        """Build a run configuration from parsed command line arguments."""
        elements: list[str] = list(getattr(parsed_args, "w", None) or [])
        return cls(
            system=_system_from_args(parsed_args, elements),
            elements=elements,
            output_format=getattr(parsed_args, "format", None) or default_format,
            exhaustive=bool(getattr(parsed_args, "all", False)),
            sample=getattr(parsed_args, "sample", None),
            seed=getattr(parsed_args, "seed", None),
            out=getattr(parsed_args, "out", None),
            hasse=bool(getattr(parsed_args, "hasse", False)),
        )


def _system_from_args(
    parsed_args: argparse.Namespace,
    elements: list[str],
) -> SystemDescriptor:
    matrix_file: Path | None = getattr(parsed_args, "matrix_file", None)
    group: str | None = getattr(parsed_args, "group", None)
    type_: str | None = getattr(parsed_args, "type", None)
    rank: int | None = getattr(parsed_args, "rank", None)

    by_rank = type_ is not None or rank is not None
    given = [flag for flag in (matrix_file, group, by_rank) if flag]
    if len(given) > 1:
        raise InvalidInputError(
            "Give only one of --matrix-file, --group or --type/--rank",
        )
    if matrix_file:
        return SystemDescriptor.from_file(matrix_file)
    if group:
        return SystemDescriptor.from_group(group)
    if by_rank:
        if rank is None:
            raise InvalidInputError("--type needs --rank")
        try:
            return SystemDescriptor(type=type_ or "A", rank=rank)
        except pydantic.ValidationError as err:
            raise InvalidSystemError(f"Invalid system: {err}") from err

    # a one-line literal names its own symmetric group
    for literal in elements:
        text = literal.strip()
        if " " in text:
            continue
        if "," in text:
            return SystemDescriptor.type_a(len(text.split(",")) - 1)
        if text.isdigit() and len(text) > 1:
            return SystemDescriptor.type_a(len(text) - 1)
    return SystemDescriptor.type_a(3)

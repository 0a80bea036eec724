"""Non-tree outcomes shared by the randomized solvers."""

from __future__ import annotations

from dataclasses import dataclass

from .isolation import UniquenessReport


@dataclass(frozen=True)
class Fail:
    """The perturbation did not isolate; ``report`` holds the witness."""

    report: UniquenessReport
    seed: int


@dataclass(frozen=True)
class Disconnected:
    pass

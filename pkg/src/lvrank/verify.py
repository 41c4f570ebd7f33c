"""Violation semantics for l-vertex-rankings.

A path x_0..x_r (r <= ell) is a violation of a colouring when its endpoints
share a colour and no interior vertex has a larger one. A colouring is an
ell-vertex-ranking exactly when it has no violations.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph
from .paths import UPath, iter_paths


@dataclass(frozen=True)
class RankedColouring:
    colours: tuple[int, ...]
    tags: tuple[str, ...] | None = None  # e.g. 'L0', 'L3', 'phase2', 'split'

    def __post_init__(self):
        if any(c < 1 for c in self.colours):
            raise ValueError("colours must be positive integers")
        if self.tags is not None and len(self.tags) != len(self.colours):
            raise ValueError("one tag per vertex required")

    @classmethod
    def of(cls, colours: Sequence[int]) -> "RankedColouring":
        return cls(tuple(int(c) for c in colours))

    def __len__(self) -> int:
        return len(self.colours)

    @property
    def num_colours(self) -> int:
        return len(set(self.colours))


@dataclass(frozen=True)
class Violation:
    path: UPath
    colour: int

    def to_dict(self, col: RankedColouring) -> dict:
        return {
            "path": list(self.path),
            "colour": self.colour,
            "colours": [col.colours[v] for v in self.path],
        }


def _colours_of(g: Graph, col) -> tuple[int, ...]:
    colours = col.colours if isinstance(col, RankedColouring) else tuple(col)
    if len(colours) != g.n:
        raise ValueError(f"colouring covers {len(colours)} vertices, graph has {g.n}")
    if any(c is None for c in colours):
        raise ValueError("uncoloured vertex")
    return colours


def find_violations(g: Graph, ell: int, col) -> list[Violation]:
    """All violating canonical paths, in sorted order."""
    colours = _colours_of(g, col)
    found = sorted(iter_paths(g, ell, colours))
    return [Violation(p, colours[p[0]]) for p in found]


def first_violation(g: Graph, ell: int, col) -> Violation | None:
    colours = _colours_of(g, col)
    for p in iter_paths(g, ell, colours):
        return Violation(p, colours[p[0]])
    return None


def is_valid_ranking(g: Graph, ell: int, col) -> bool:
    return first_violation(g, ell, col) is None


def violation_report(violations: list[Violation], col: RankedColouring, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(
            {"valid": not violations, "violations": [v.to_dict(col) for v in violations]}
        )
    if not violations:
        return "valid\n"
    lines = [f"invalid: {len(violations)} violation(s)"]
    for v in violations:
        cs = " ".join(str(col.colours[x]) for x in v.path)
        lines.append(f"path {' '.join(map(str, v.path))} colours {cs}")
    return "\n".join(lines) + "\n"

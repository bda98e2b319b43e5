"""Shipped example problems."""

from __future__ import annotations

import json
from importlib import resources

from ..formats import ProblemFile, parse_problem

NAMES = (
    "zero",
    "full",
    "scalars",
    "unit-e12",
    "jordan",
    "diag2",
    "uppertri3",
    "strict-upper3",
)


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return resources.files(__name__).joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> ProblemFile:
    return parse_problem(json.loads(fixture_text(name)))

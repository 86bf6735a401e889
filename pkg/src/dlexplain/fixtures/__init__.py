"""Shipped example knowledge bases: trains, warehouse, prop.

`warehouse.dlkb` and `warehouse.prob` are the ingest output for
`warehouse_annotations.tsv` + `warehouse_mapping.tsv` over
`sumo_fragment.dlkb`; `scripts/make_fixtures.py` regenerates them.
"""

from __future__ import annotations

from pathlib import Path

from ..model import KnowledgeBase, LearningProblem
from ..text import parse_kb, parse_problem

_ROOT = Path(__file__).parent


def fixture_path(name: str) -> Path:
    path = _ROOT / name
    if not path.is_file():
        raise FileNotFoundError(f"no such fixture: {name}")
    return path


def load_kb(name: str) -> KnowledgeBase:
    return parse_kb(fixture_path(name).read_text(encoding="utf-8"))


def load_problem(name: str, kb: KnowledgeBase) -> LearningProblem:
    return parse_problem(fixture_path(name).read_text(encoding="utf-8"), kb.signature)

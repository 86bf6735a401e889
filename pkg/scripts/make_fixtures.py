#!/usr/bin/env python3
"""Regenerate the derived fixture files under src/dlexplain/fixtures/.

- trains.dlkb / trains.prob: ten-train east/west toy dataset.  Each train is
  an individual with hasCar edges to its cars; cars are typed by length,
  top (open/closed), body shape, load shape, load count and wheel count.
  Every eastbound train has a car that is both Closed and Short; no
  westbound train does.
- warehouse.dlkb / warehouse.prob: ingest output for the warehouse
  annotation table over the upper-ontology fragment.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from dlexplain.ingest import build_abox, emit_problem, parse_annotations, parse_mapping
from dlexplain.model import (
    ClassAssertion,
    KnowledgeBase,
    RoleAssertion,
    Signature,
)
from dlexplain.text import parse_kb, serialize_kb, serialize_problem

FIXTURES = ROOT / "src" / "dlexplain" / "fixtures"

TRAIN_CLASSES = [
    "Open", "Closed", "Short", "Long",
    "Rectangular", "UShaped", "BucketShaped", "HexagonShaped", "EllipseShaped",
    "SquareLoad", "TriangleLoad", "CircleLoad", "HexagonLoad", "RectangleLoad",
    "DiamondLoad",
    "OneLoad", "TwoLoads", "ThreeLoads",
    "TwoWheels", "ThreeWheels",
]

# train -> list of cars; each car is the list of classes it falls into.
# Eastbound trains each carry a car that is both Closed and Short; no
# westbound train does.  Every atomic class is supported by exactly as many
# east trains as west trains, so no single category separates the sides
# better than chance and the learner has to find the conjunctive pattern.
TRAINS: dict[str, list[list[str]]] = {
    "east1": [
        ["Short", "Open", "Rectangular", "SquareLoad", "OneLoad", "TwoWheels"],
        ["Short", "Closed", "Rectangular", "TriangleLoad", "OneLoad", "TwoWheels"],
        ["Long", "Open", "Rectangular", "HexagonLoad", "OneLoad", "ThreeWheels"],
        ["Long", "Open", "Rectangular", "CircleLoad", "ThreeLoads", "TwoWheels"],
    ],
    "east2": [
        ["Short", "Open", "UShaped", "TriangleLoad", "OneLoad", "TwoWheels"],
        ["Short", "Closed", "Rectangular", "RectangleLoad", "TwoLoads", "TwoWheels"],
        ["Long", "Open", "BucketShaped", "CircleLoad", "OneLoad", "TwoWheels"],
    ],
    "east3": [
        ["Short", "Open", "BucketShaped", "CircleLoad", "OneLoad", "TwoWheels"],
        ["Long", "Closed", "HexagonShaped", "TriangleLoad", "OneLoad", "ThreeWheels"],
        ["Short", "Closed", "Rectangular", "SquareLoad", "OneLoad", "TwoWheels"],
    ],
    "east4": [
        ["Short", "Open", "UShaped", "SquareLoad", "OneLoad", "TwoWheels"],
        ["Short", "Closed", "EllipseShaped", "DiamondLoad", "OneLoad", "TwoWheels"],
        ["Long", "Open", "Rectangular", "TriangleLoad", "TwoLoads", "ThreeWheels"],
        ["Short", "Open", "Rectangular", "CircleLoad", "OneLoad", "TwoWheels"],
    ],
    "east5": [
        ["Long", "Closed", "Rectangular", "SquareLoad", "OneLoad", "TwoWheels"],
        ["Short", "Closed", "Rectangular", "CircleLoad", "OneLoad", "TwoWheels"],
        ["Long", "Open", "Rectangular", "TriangleLoad", "OneLoad", "TwoWheels"],
    ],
    "west6": [
        ["Long", "Closed", "Rectangular", "CircleLoad", "OneLoad", "TwoWheels"],
        ["Short", "Open", "Rectangular", "TriangleLoad", "OneLoad", "TwoWheels"],
        ["Short", "Open", "Rectangular", "SquareLoad", "OneLoad", "TwoWheels"],
    ],
    "west7": [
        ["Short", "Open", "UShaped", "SquareLoad", "OneLoad", "TwoWheels"],
        ["Long", "Closed", "Rectangular", "TriangleLoad", "TwoLoads", "ThreeWheels"],
        ["Short", "Open", "BucketShaped", "CircleLoad", "OneLoad", "TwoWheels"],
        ["Long", "Open", "Rectangular", "HexagonLoad", "OneLoad", "TwoWheels"],
    ],
    "west8": [
        ["Long", "Closed", "Rectangular", "SquareLoad", "OneLoad", "ThreeWheels"],
        ["Short", "Open", "UShaped", "CircleLoad", "OneLoad", "TwoWheels"],
        ["Short", "Open", "Rectangular", "TriangleLoad", "OneLoad", "TwoWheels"],
    ],
    "west9": [
        ["Short", "Open", "BucketShaped", "DiamondLoad", "OneLoad", "TwoWheels"],
        ["Long", "Open", "Rectangular", "SquareLoad", "ThreeLoads", "ThreeWheels"],
        ["Long", "Closed", "HexagonShaped", "TriangleLoad", "OneLoad", "TwoWheels"],
        ["Short", "Open", "Rectangular", "CircleLoad", "OneLoad", "TwoWheels"],
    ],
    "west10": [
        ["Long", "Closed", "EllipseShaped", "CircleLoad", "TwoLoads", "TwoWheels"],
        ["Short", "Open", "Rectangular", "TriangleLoad", "OneLoad", "TwoWheels"],
        ["Long", "Open", "Rectangular", "RectangleLoad", "OneLoad", "TwoWheels"],
    ],
}


def make_trains() -> None:
    individuals = list(TRAINS)
    assertions = []
    for number, (train, cars) in enumerate(TRAINS.items(), start=1):
        for position, classes in enumerate(cars, start=1):
            car = f"car_{number}{position}"
            individuals.append(car)
            assertions.append(RoleAssertion("hasCar", train, car))
            assertions.extend(ClassAssertion(cls, car) for cls in classes)
    kb = KnowledgeBase.create(
        Signature.of(TRAIN_CLASSES, ["hasCar"], individuals),
        axioms=(),
        assertions=assertions,
    )
    (FIXTURES / "trains.dlkb").write_text(serialize_kb(kb), encoding="utf-8")

    positives = [t for t in TRAINS if t.startswith("east")]
    negatives = [t for t in TRAINS if t.startswith("west")]
    lines = [f"+ {t}" for t in positives] + [f"- {t}" for t in negatives]
    (FIXTURES / "trains.prob").write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def make_warehouse() -> None:
    background = parse_kb((FIXTURES / "sumo_fragment.dlkb").read_text(encoding="utf-8"))
    records = parse_annotations((FIXTURES / "warehouse_annotations.tsv").read_text(encoding="utf-8"))
    mapping = parse_mapping((FIXTURES / "warehouse_mapping.tsv").read_text(encoding="utf-8"))
    kb = build_abox(records, mapping, "contains", background)
    problem = emit_problem(records, {"p1", "p2", "p3"})
    (FIXTURES / "warehouse.dlkb").write_text(serialize_kb(kb), encoding="utf-8")
    order = [record.input_id for record in records]
    (FIXTURES / "warehouse.prob").write_text(serialize_problem(problem, order), encoding="utf-8")


if __name__ == "__main__":
    make_trains()
    make_warehouse()
    print("fixtures written to", FIXTURES)

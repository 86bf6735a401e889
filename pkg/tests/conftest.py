import random

import pytest

from dlexplain.fixtures import load_kb, load_problem
from dlexplain.model import (
    BOTTOM,
    TOP,
    And,
    Atomic,
    ClassExpression,
    Exists,
    Forall,
    Not,
    Or,
    Signature,
)
from dlexplain.reasoner import MaterializedKb, materialize


@pytest.fixture(scope="session")
def warehouse_kb():
    return load_kb("warehouse.dlkb")


@pytest.fixture(scope="session")
def warehouse_problem(warehouse_kb):
    return load_problem("warehouse.prob", warehouse_kb)


@pytest.fixture(scope="session")
def warehouse_mkb(warehouse_kb) -> MaterializedKb:
    return materialize(warehouse_kb)


@pytest.fixture(scope="session")
def trains_kb():
    return load_kb("trains.dlkb")


@pytest.fixture(scope="session")
def trains_problem(trains_kb):
    return load_problem("trains.prob", trains_kb)


@pytest.fixture(scope="session")
def trains_mkb(trains_kb) -> MaterializedKb:
    return materialize(trains_kb)


@pytest.fixture(scope="session")
def prop_kb():
    return load_kb("prop.dlkb")


@pytest.fixture(scope="session")
def prop_problem(prop_kb):
    return load_problem("prop.prob", prop_kb)


@pytest.fixture(scope="session")
def prop_mkb(prop_kb) -> MaterializedKb:
    return materialize(prop_kb)


# ---------------------------------------------------------------------------
# independent oracles (deliberately naive; no bitmasks, no memoization)
# ---------------------------------------------------------------------------


def naive_retrieve(mkb: MaterializedKb, expr: ClassExpression) -> frozenset[str]:
    """Reference instance retrieval by direct set recursion."""
    universe = mkb.universe
    if isinstance(expr, type(TOP)):
        return frozenset(universe)
    if isinstance(expr, type(BOTTOM)):
        return frozenset()
    if isinstance(expr, Atomic):
        return frozenset(a for a in universe if expr.name in mkb.types[a])
    if isinstance(expr, Not):
        return frozenset(universe) - naive_retrieve(mkb, expr.child)
    if isinstance(expr, And):
        return naive_retrieve(mkb, expr.left) & naive_retrieve(mkb, expr.right)
    if isinstance(expr, Or):
        return naive_retrieve(mkb, expr.left) | naive_retrieve(mkb, expr.right)
    if isinstance(expr, Exists):
        child = naive_retrieve(mkb, expr.child)
        return frozenset(a for a in universe if mkb.successors(expr.role, a) & child)
    if isinstance(expr, Forall):
        child = naive_retrieve(mkb, expr.child)
        return frozenset(a for a in universe if mkb.successors(expr.role, a) <= child)
    raise TypeError(expr)


def closure_oracle(classes, edges) -> dict[str, frozenset[str]]:
    """Reflexive-transitive closure by fixpoint iteration."""
    reach = {c: {c} for c in classes}
    changed = True
    while changed:
        changed = False
        for c in classes:
            for sub, sup in edges:
                if sub in reach[c] and sup not in reach[c]:
                    reach[c].add(sup)
                    changed = True
    return {c: frozenset(s) for c, s in reach.items()}


def quantifier_depth(expr: ClassExpression) -> int:
    """Deepest nesting of role restrictions; bounds model-checking cost."""
    if isinstance(expr, (Exists, Forall)):
        return 1 + quantifier_depth(expr.child)
    if isinstance(expr, Not):
        return quantifier_depth(expr.child)
    if isinstance(expr, (And, Or)):
        return max(quantifier_depth(expr.left), quantifier_depth(expr.right))
    return 0


def random_expression(rng: random.Random, sig: Signature, depth: int) -> ClassExpression:
    """Random well-formed expression over the signature, up to the given depth."""
    classes = sorted(sig.atomic_classes)
    roles = sorted(sig.roles)
    leaf_choices = ["atomic", "top", "bottom"]
    node_choices = ["atomic", "atomic", "not", "and", "or"] + (["exists", "forall"] * 2 if roles else [])
    kind = rng.choice(leaf_choices if depth <= 0 else node_choices)
    if kind == "top":
        return TOP
    if kind == "bottom":
        return BOTTOM
    if kind == "atomic":
        return Atomic(rng.choice(classes))
    if kind == "not":
        return Not(random_expression(rng, sig, depth - 1))
    if kind == "and":
        return And(random_expression(rng, sig, depth - 1), random_expression(rng, sig, depth - 1))
    if kind == "or":
        return Or(random_expression(rng, sig, depth - 1), random_expression(rng, sig, depth - 1))
    if kind == "exists":
        return Exists(rng.choice(roles), random_expression(rng, sig, depth - 1))
    return Forall(rng.choice(roles), random_expression(rng, sig, depth - 1))

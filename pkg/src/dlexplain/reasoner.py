"""Closed-world instance retrieval over a materialized knowledge base.

Materialization closes asserted class memberships upward through the atomic
subsumption hierarchy.  Retrieval then evaluates class expressions by plain
set algebra over the finite individual domain: absence of a fact counts as
falsity, universal restrictions hold vacuously for individuals without role
successors.  Extensions are computed on integer bitmasks so the learner can
score large candidate streams cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    And,
    Atomic,
    Bottom,
    ClassAssertion,
    ClassExpression,
    DlError,
    Exists,
    Forall,
    KnowledgeBase,
    LearningProblem,
    Not,
    Or,
    RoleAssertion,
    Top,
    canonicalize,
    hierarchy_cycles,
    render_raw,
    subclass_closure,
)


class UnknownIndividualError(DlError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown individual: {name}")


class MaterializedKb:
    """Immutable retrieval index for a knowledge base.

    `types` maps each individual to its atomic classes closed under the
    subsumption hierarchy; `role_succ` holds exactly the asserted role edges.
    Axioms that cannot drive materialization (a complex side, or hierarchy
    cycles) are reported in `diagnostics`.  The only mutable state is the
    extension memo, a pure cache: concurrent readers always obtain
    equivalent results.
    """

    def __init__(self, base: KnowledgeBase):
        self.base = base
        self.universe: frozenset[str] = base.signature.individuals
        closure = subclass_closure(base)

        types: dict[str, frozenset[str]] = {ind: frozenset() for ind in self.universe}
        succ: dict[tuple[str, str], set[str]] = {}
        for assertion in base.abox:
            if isinstance(assertion, ClassAssertion):
                types[assertion.individual] = types[assertion.individual] | closure[assertion.class_name]
            elif isinstance(assertion, RoleAssertion):
                succ.setdefault((assertion.role, assertion.subject), set()).add(assertion.object)
        self.types = types
        self.role_succ: dict[tuple[str, str], frozenset[str]] = {
            key: frozenset(values) for key, values in succ.items()
        }

        diagnostics = [
            f"axiom not used for retrieval (complex side): {render_raw(ax.sub)} => {render_raw(ax.sup)}"
            for ax in base.tbox
            if not ax.is_atomic
        ]
        diagnostics += [
            "cycle in atomic hierarchy: " + " = ".join(group) for group in hierarchy_cycles(base)
        ]
        self.diagnostics: tuple[str, ...] = tuple(diagnostics)

        # declared atomic hierarchy edges, exposed for the refinement operator
        sub_of: dict[str, set[str]] = {name: set() for name in base.signature.atomic_classes}
        sup_of: dict[str, set[str]] = {name: set() for name in base.signature.atomic_classes}
        for axiom in base.tbox:
            if axiom.is_atomic and axiom.sub != axiom.sup:
                sub_of[axiom.sup.name].add(axiom.sub.name)  # type: ignore[union-attr]
                sup_of[axiom.sub.name].add(axiom.sup.name)  # type: ignore[union-attr]
        self.direct_subclasses = {k: frozenset(v) for k, v in sub_of.items()}
        self.direct_superclasses = {k: frozenset(v) for k, v in sup_of.items()}

        # bitmask indexes for fast extension computation
        self._names = tuple(sorted(self.universe))
        self._index = {name: i for i, name in enumerate(self._names)}
        self._universe_mask = (1 << len(self._names)) - 1
        class_masks: dict[str, int] = {name: 0 for name in base.signature.atomic_classes}
        for ind, classes in types.items():
            bit = 1 << self._index[ind]
            for cls in classes:
                class_masks[cls] |= bit
        self._class_masks = class_masks
        role_edges: dict[str, dict[int, int]] = {role: {} for role in base.signature.roles}
        for (role, subject), objects in self.role_succ.items():
            mask = 0
            for obj in objects:
                mask |= 1 << self._index[obj]
            role_edges[role][self._index[subject]] = mask
        self._role_edges = role_edges
        self._memo: dict[ClassExpression, int] = {}

    def successors(self, role: str, individual: str) -> frozenset[str]:
        return self.role_succ.get((role, individual), frozenset())

    # -- bitmask evaluation ------------------------------------------------

    def extension_mask(self, expr: ClassExpression) -> int:
        """Extension of a canonical expression as a bitmask (memoized)."""
        memo = self._memo
        cached = memo.get(expr)
        if cached is not None:
            return cached
        if isinstance(expr, Top):
            mask = self._universe_mask
        elif isinstance(expr, Bottom):
            mask = 0
        elif isinstance(expr, Atomic):
            mask = self._class_masks[expr.name]
        elif isinstance(expr, Not):
            mask = self._universe_mask & ~self.extension_mask(expr.child)
        elif isinstance(expr, And):
            mask = self.extension_mask(expr.left) & self.extension_mask(expr.right)
        elif isinstance(expr, Or):
            mask = self.extension_mask(expr.left) | self.extension_mask(expr.right)
        elif isinstance(expr, Exists):
            child = self.extension_mask(expr.child)
            mask = 0
            for subject, objects in self._role_edges[expr.role].items():
                if objects & child:
                    mask |= 1 << subject
        elif isinstance(expr, Forall):
            child = self.extension_mask(expr.child)
            mask = self._universe_mask
            for subject, objects in self._role_edges[expr.role].items():
                if objects & ~child:
                    mask &= ~(1 << subject)
        else:
            raise TypeError(f"not a class expression: {expr!r}")
        memo[expr] = mask
        return mask

    def mask_to_names(self, mask: int) -> frozenset[str]:
        return frozenset(name for i, name in enumerate(self._names) if mask >> i & 1)

    def names_to_mask(self, names) -> int:
        mask = 0
        for name in names:
            if name not in self._index:
                raise UnknownIndividualError(name)
            mask |= 1 << self._index[name]
        return mask


def materialize(kb: KnowledgeBase) -> MaterializedKb:
    return MaterializedKb(kb)


def retrieve(mkb: MaterializedKb, expr: ClassExpression) -> frozenset[str]:
    """All individuals in the extension of `expr` under closed-world semantics."""
    return mkb.mask_to_names(mkb.extension_mask(canonicalize(expr)))


def instance_check(mkb: MaterializedKb, individual: str, expr: ClassExpression) -> bool:
    """Point query: does `individual` fall under `expr`?

    Evaluated directly on the individual, without computing full extensions
    except under role restrictions, where the filler extension is shared via
    the materialized-KB memo.
    """
    if individual not in mkb.universe:
        raise UnknownIndividualError(individual)
    return _check(mkb, individual, expr)


def _check(mkb: MaterializedKb, individual: str, expr: ClassExpression) -> bool:
    if isinstance(expr, Top):
        return True
    if isinstance(expr, Bottom):
        return False
    if isinstance(expr, Atomic):
        return expr.name in mkb.types[individual]
    if isinstance(expr, Not):
        return not _check(mkb, individual, expr.child)
    if isinstance(expr, And):
        return _check(mkb, individual, expr.left) and _check(mkb, individual, expr.right)
    if isinstance(expr, Or):
        return _check(mkb, individual, expr.left) or _check(mkb, individual, expr.right)
    if isinstance(expr, Exists):
        return any(_check(mkb, obj, expr.child) for obj in mkb.successors(expr.role, individual))
    if isinstance(expr, Forall):
        return all(_check(mkb, obj, expr.child) for obj in mkb.successors(expr.role, individual))
    raise TypeError(f"not a class expression: {expr!r}")


@dataclass(frozen=True)
class Coverage:
    """Confusion partition of the examples under one expression."""

    true_pos: frozenset[str]
    false_pos: frozenset[str]
    true_neg: frozenset[str]
    false_neg: frozenset[str]

    @property
    def tp(self) -> int:
        return len(self.true_pos)

    @property
    def fp(self) -> int:
        return len(self.false_pos)

    @property
    def tn(self) -> int:
        return len(self.true_neg)

    @property
    def fn(self) -> int:
        return len(self.false_neg)

    @property
    def accuracy(self) -> Fraction:
        total = self.tp + self.fp + self.tn + self.fn
        return Fraction(self.tp + self.tn, total)


def coverage(mkb: MaterializedKb, expr: ClassExpression, problem: LearningProblem) -> Coverage:
    """Partition the problem's examples by membership in `expr`."""
    pos_mask = mkb.names_to_mask(problem.positives)
    neg_mask = mkb.names_to_mask(problem.negatives)
    ext = mkb.extension_mask(canonicalize(expr))
    return Coverage(
        true_pos=mkb.mask_to_names(pos_mask & ext),
        false_pos=mkb.mask_to_names(neg_mask & ext),
        true_neg=mkb.mask_to_names(neg_mask & ~ext),
        false_neg=mkb.mask_to_names(pos_mask & ~ext),
    )

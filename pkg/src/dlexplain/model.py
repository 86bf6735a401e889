"""In-memory model of ALC knowledge bases.

Class expressions are immutable trees built from atomic classes, negation,
conjunction, disjunction and existential/universal role restrictions, plus
the Thing/Nothing constants used as search anchors.  Knowledge bases pair a
signature with a TBox (inclusion axioms) and an ABox (ground assertions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

IDENTIFIER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class DlError(Exception):
    """Base class for errors raised by this package."""


# ---------------------------------------------------------------------------
# class expressions
# ---------------------------------------------------------------------------


class ClassExpression:
    """Base class for expression nodes.  Concrete nodes are frozen dataclasses.

    Nodes cache their structural hash at construction; the search machinery
    deduplicates millions of candidate expressions through dict lookups, so
    rehashing whole subtrees on every lookup would dominate runtime.
    """

    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render_raw(self)


@dataclass(frozen=True, eq=False, slots=True)
class Top(ClassExpression):
    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash("Thing"))

    def __eq__(self, other: object) -> bool:
        return type(other) is Top

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class Bottom(ClassExpression):
    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash("Nothing"))

    def __eq__(self, other: object) -> bool:
        return type(other) is Bottom

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class Atomic(ClassExpression):
    name: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("Atomic", self.name)))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Atomic and other._hash == self._hash and other.name == self.name
        )

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class Not(ClassExpression):
    child: ClassExpression

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("Not", self.child._hash)))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Not and other._hash == self._hash and other.child == self.child
        )

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class And(ClassExpression):
    left: ClassExpression
    right: ClassExpression

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("And", self.left._hash, self.right._hash)))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is And
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class Or(ClassExpression):
    left: ClassExpression
    right: ClassExpression

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("Or", self.left._hash, self.right._hash)))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Or
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class Exists(ClassExpression):
    role: str
    child: ClassExpression

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("Exists", self.role, self.child._hash)))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Exists
            and other._hash == self._hash
            and other.role == self.role
            and other.child == self.child
        )

    __hash__ = ClassExpression.__hash__


@dataclass(frozen=True, eq=False, slots=True)
class Forall(ClassExpression):
    role: str
    child: ClassExpression

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("Forall", self.role, self.child._hash)))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Forall
            and other._hash == self._hash
            and other.role == self.role
            and other.child == self.child
        )

    __hash__ = ClassExpression.__hash__


TOP = Top()
BOTTOM = Bottom()


@lru_cache(maxsize=None)
def length(expr: ClassExpression) -> int:
    """Syntactic size: constants and atoms count 1, quantifiers 2, connectives 1."""
    if isinstance(expr, (Top, Bottom, Atomic)):
        return 1
    if isinstance(expr, Not):
        return 1 + length(expr.child)
    if isinstance(expr, (And, Or)):
        return 1 + length(expr.left) + length(expr.right)
    if isinstance(expr, (Exists, Forall)):
        return 2 + length(expr.child)
    raise TypeError(f"not a class expression: {expr!r}")


# Rendering lives here rather than in the text module because canonicalization
# orders conjuncts/disjuncts by their rendered form.

_LEVEL_OR = 0
_LEVEL_AND = 1
_LEVEL_UNARY = 2


def _level(expr: ClassExpression) -> int:
    if isinstance(expr, Or):
        return _LEVEL_OR
    if isinstance(expr, And):
        return _LEVEL_AND
    return _LEVEL_UNARY


def _wrap(expr: ClassExpression, minimum: int) -> str:
    text = render_raw(expr)
    if _level(expr) < minimum:
        return f"({text})"
    return text


@lru_cache(maxsize=None)
def render_raw(expr: ClassExpression) -> str:
    """Render without normalizing; chains of the same connective print flat."""
    if isinstance(expr, Top):
        return "Thing"
    if isinstance(expr, Bottom):
        return "Nothing"
    if isinstance(expr, Atomic):
        return expr.name
    if isinstance(expr, Not):
        return f"not {_wrap(expr.child, _LEVEL_UNARY)}"
    if isinstance(expr, Exists):
        return f"{expr.role} some {_wrap(expr.child, _LEVEL_UNARY)}"
    if isinstance(expr, Forall):
        return f"{expr.role} only {_wrap(expr.child, _LEVEL_UNARY)}"
    if isinstance(expr, And):
        parts = [_wrap(op, _LEVEL_AND) for op in _operands(expr, And)]
        return " and ".join(parts)
    if isinstance(expr, Or):
        parts = [_wrap(op, _LEVEL_OR) for op in _operands(expr, Or)]
        return " or ".join(parts)
    raise TypeError(f"not a class expression: {expr!r}")


def _operands(expr: ClassExpression, op: type) -> list[ClassExpression]:
    """Flatten nested applications of `op` into a left-to-right operand list."""
    out: list[ClassExpression] = []
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, op):
            stack.append(node.right)  # type: ignore[attr-defined]
            stack.append(node.left)  # type: ignore[attr-defined]
        else:
            out.append(node)
    return out


def _fold(op: type, operands: list[ClassExpression]) -> ClassExpression:
    expr = operands[-1]
    for item in reversed(operands[:-1]):
        expr = op(item, expr)
    return expr


def make_not(child: ClassExpression) -> ClassExpression:
    """Negation with double negations collapsed; child must be canonical."""
    if isinstance(child, Not):
        return child.child
    return Not(child)


def _make_chain(op: type, operands: Iterable[ClassExpression]) -> ClassExpression:
    flat: list[ClassExpression] = []
    for item in operands:
        if isinstance(item, op):
            flat.extend(_operands(item, op))
        else:
            flat.append(item)
    if len(flat) == 2:  # dominant case in refinement: expr ⊓ extra
        first, second = flat
        key_first, key_second = render_raw(first), render_raw(second)
        if key_first == key_second and first == second:
            return first
        return op(first, second) if key_first <= key_second else op(second, first)
    flat.sort(key=render_raw)
    deduped: list[ClassExpression] = []
    for item in flat:
        if not deduped or item != deduped[-1]:
            deduped.append(item)
    return _fold(op, deduped)


def make_and(operands: Iterable[ClassExpression]) -> ClassExpression:
    """Canonical conjunction of canonical operands (flattened, sorted, deduped)."""
    return _make_chain(And, operands)


def make_or(operands: Iterable[ClassExpression]) -> ClassExpression:
    """Canonical disjunction of canonical operands."""
    return _make_chain(Or, operands)


def merge_chain(
    op: type,
    ops_a: list[ClassExpression],
    keys_a: list[str],
    ops_b: list[ClassExpression],
    keys_b: list[str],
) -> ClassExpression:
    """Canonical chain from two operand lists already sorted by rendered text.

    Fast path for the refinement operator, which rebuilds conjunction chains
    constantly; equivalent to `make_and`/`make_or` on the concatenation.
    """
    merged: list[ClassExpression] = []
    i = j = 0
    len_a, len_b = len(ops_a), len(ops_b)
    while i < len_a and j < len_b:
        if keys_a[i] <= keys_b[j]:
            item = ops_a[i]
            i += 1
        else:
            item = ops_b[j]
            j += 1
        if not merged or item != merged[-1]:
            merged.append(item)
    for item in ops_a[i:]:
        if not merged or item != merged[-1]:
            merged.append(item)
    for item in ops_b[j:]:
        if not merged or item != merged[-1]:
            merged.append(item)
    return _fold(op, merged)


@lru_cache(maxsize=None)
def canonicalize(expr: ClassExpression) -> ClassExpression:
    """Equal-extension normal form.

    And/Or chains are flattened into right-leaning spines with operands
    sorted by rendered text and duplicates removed; double negations
    collapse.  Idempotent by construction.
    """
    if isinstance(expr, (Top, Bottom, Atomic)):
        return expr
    if isinstance(expr, Not):
        return make_not(canonicalize(expr.child))
    if isinstance(expr, And):
        return make_and([canonicalize(op) for op in _operands(expr, And)])
    if isinstance(expr, Or):
        return make_or([canonicalize(op) for op in _operands(expr, Or)])
    if isinstance(expr, Exists):
        return Exists(expr.role, canonicalize(expr.child))
    if isinstance(expr, Forall):
        return Forall(expr.role, canonicalize(expr.child))
    raise TypeError(f"not a class expression: {expr!r}")


def render_expression(expr: ClassExpression) -> str:
    """Canonical ASCII form; parsing it back yields `canonicalize(expr)`."""
    return render_raw(canonicalize(expr))


def atomic_names(expr: ClassExpression) -> frozenset[str]:
    """All atomic class names occurring in the expression."""
    if isinstance(expr, Atomic):
        return frozenset((expr.name,))
    if isinstance(expr, Not):
        return atomic_names(expr.child)
    if isinstance(expr, (And, Or)):
        return atomic_names(expr.left) | atomic_names(expr.right)
    if isinstance(expr, (Exists, Forall)):
        return atomic_names(expr.child)
    return frozenset()


def role_names(expr: ClassExpression) -> frozenset[str]:
    """All role names occurring in the expression."""
    if isinstance(expr, (Exists, Forall)):
        return frozenset((expr.role,)) | role_names(expr.child)
    if isinstance(expr, Not):
        return role_names(expr.child)
    if isinstance(expr, (And, Or)):
        return role_names(expr.left) | role_names(expr.right)
    return frozenset()


# ---------------------------------------------------------------------------
# signature, axioms, assertions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Finite, pairwise disjoint name sets for classes, roles and individuals."""

    atomic_classes: frozenset[str] = frozenset()
    roles: frozenset[str] = frozenset()
    individuals: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        for name in (*self.atomic_classes, *self.roles, *self.individuals):
            if not IDENTIFIER_RE.match(name):
                raise ValueError(f"invalid identifier: {name!r}")
        overlap = (
            (self.atomic_classes & self.roles)
            | (self.atomic_classes & self.individuals)
            | (self.roles & self.individuals)
        )
        if overlap:
            raise ValueError(f"names declared with more than one kind: {sorted(overlap)}")

    @staticmethod
    def of(
        classes: Iterable[str] = (),
        roles: Iterable[str] = (),
        individuals: Iterable[str] = (),
    ) -> "Signature":
        return Signature(frozenset(classes), frozenset(roles), frozenset(individuals))


@dataclass(frozen=True)
class Axiom:
    """Inclusion axiom: every instance of `sub` is an instance of `sup`."""

    sub: ClassExpression
    sup: ClassExpression

    @property
    def is_atomic(self) -> bool:
        return isinstance(self.sub, Atomic) and isinstance(self.sup, Atomic)


class Assertion:
    """Base class for ABox assertions."""

    __slots__ = ()


@dataclass(frozen=True)
class ClassAssertion(Assertion):
    class_name: str
    individual: str


@dataclass(frozen=True)
class RoleAssertion(Assertion):
    role: str
    subject: str
    object: str


@dataclass(frozen=True)
class LearningProblem:
    """Disjoint, non-empty sets of positively and negatively labeled individuals."""

    positives: frozenset[str]
    negatives: frozenset[str]

    def __post_init__(self) -> None:
        if not self.positives or not self.negatives:
            raise ValueError("positive and negative example sets must both be non-empty")
        overlap = self.positives & self.negatives
        if overlap:
            raise ValueError(f"examples labeled both positive and negative: {sorted(overlap)}")


@dataclass(frozen=True)
class KnowledgeBase:
    """Signature + TBox + ABox.  Use `KnowledgeBase.create` to normalize inputs.

    The stored TBox is deduplicated, canonicalized and sorted so that equal
    knowledge bases compare equal regardless of input order.
    """

    signature: Signature
    tbox: tuple[Axiom, ...] = ()
    abox: frozenset[Assertion] = frozenset()

    @staticmethod
    def create(
        signature: Signature,
        axioms: Iterable[Axiom] = (),
        assertions: Iterable[Assertion] = (),
    ) -> "KnowledgeBase":
        normalized = {Axiom(canonicalize(ax.sub), canonicalize(ax.sup)) for ax in axioms}
        ordered = tuple(sorted(normalized, key=lambda ax: (render_raw(ax.sub), render_raw(ax.sup))))
        return KnowledgeBase(signature, ordered, frozenset(assertions))


# ---------------------------------------------------------------------------
# operations over knowledge bases
# ---------------------------------------------------------------------------


def check_well_formed(kb: KnowledgeBase) -> list[str]:
    """Diagnostics for names used in the TBox/ABox but absent from the signature.

    An empty list means every used name is declared with the right kind.
    """
    sig = kb.signature
    out: list[str] = []

    def check_expr(expr: ClassExpression, where: str) -> None:
        for name in sorted(atomic_names(expr)):
            if name not in sig.atomic_classes:
                out.append(f"{where}: undeclared class {name}")
        for name in sorted(role_names(expr)):
            if name not in sig.roles:
                out.append(f"{where}: undeclared role {name}")

    for axiom in kb.tbox:
        where = f"axiom {render_raw(axiom.sub)} => {render_raw(axiom.sup)}"
        check_expr(axiom.sub, where)
        check_expr(axiom.sup, where)
    for assertion in sorted(kb.abox, key=_assertion_key):
        if isinstance(assertion, ClassAssertion):
            where = f"assertion {assertion.class_name}({assertion.individual})"
            if assertion.class_name not in sig.atomic_classes:
                out.append(f"{where}: undeclared class {assertion.class_name}")
            if assertion.individual not in sig.individuals:
                out.append(f"{where}: undeclared individual {assertion.individual}")
        elif isinstance(assertion, RoleAssertion):
            where = f"assertion {assertion.role}({assertion.subject}, {assertion.object})"
            if assertion.role not in sig.roles:
                out.append(f"{where}: undeclared role {assertion.role}")
            for ind in (assertion.subject, assertion.object):
                if ind not in sig.individuals:
                    out.append(f"{where}: undeclared individual {ind}")
    return out


def _assertion_key(assertion: Assertion) -> tuple:
    if isinstance(assertion, ClassAssertion):
        return (0, assertion.class_name, assertion.individual, "")
    assert isinstance(assertion, RoleAssertion)
    return (1, assertion.role, assertion.subject, assertion.object)


def atomic_edges(kb: KnowledgeBase) -> list[tuple[str, str]]:
    """Declared (sub, sup) pairs from axioms whose both sides are atomic."""
    edges = set()
    for axiom in kb.tbox:
        if axiom.is_atomic and axiom.sub != axiom.sup:
            edges.add((axiom.sub.name, axiom.sup.name))  # type: ignore[union-attr]
    return sorted(edges)


def subclass_closure(kb: KnowledgeBase) -> dict[str, frozenset[str]]:
    """Reflexive-transitive superclass sets over atomic subsumption axioms.

    Axioms with a complex side do not contribute (the materializer reports
    them).  Cycles are tolerated: members of a cycle subsume each other.
    """
    supers: dict[str, set[str]] = {name: set() for name in kb.signature.atomic_classes}
    for sub, sup in atomic_edges(kb):
        supers.setdefault(sub, set()).add(sup)
        supers.setdefault(sup, set())
    closure: dict[str, frozenset[str]] = {}
    for start in supers:
        seen = {start}
        stack = [start]
        while stack:
            for nxt in supers[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closure[start] = frozenset(seen)
    return closure


def hierarchy_cycles(kb: KnowledgeBase) -> list[tuple[str, ...]]:
    """Non-trivial mutual-subsumption groups in the atomic hierarchy, sorted."""
    closure = subclass_closure(kb)
    groups = set()
    for name, sups in closure.items():
        group = frozenset(other for other in sups if name in closure.get(other, frozenset()))
        if len(group) > 1:
            groups.add(group)
    return sorted(tuple(sorted(group)) for group in groups)

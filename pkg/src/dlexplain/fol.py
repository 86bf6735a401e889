"""Translation of class-inclusion axioms into first-order predicate logic.

An axiom ``C => D`` becomes ``forall x0.(t(C, x0) -> t(D, x0))`` where the
structural translation ``t`` maps atomic classes to unary predicates, role
restrictions to guarded quantifiers over a fresh variable (index i+1 under
index i), and the boolean connectives to their first-order counterparts.
Thing and Nothing map to dedicated true/false leaves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    And,
    Atomic,
    Axiom,
    Bottom,
    ClassExpression,
    Exists,
    Forall,
    Not,
    Or,
    Top,
)


class FolFormula:
    """Base class for first-order formula nodes; variables are indices (x0, x1, ...)."""

    __slots__ = ()

    def __str__(self) -> str:
        return render_fol(self)


@dataclass(frozen=True)
class FolTrue(FolFormula):
    pass


@dataclass(frozen=True)
class FolFalse(FolFormula):
    pass


@dataclass(frozen=True)
class Pred1(FolFormula):
    name: str
    var: int


@dataclass(frozen=True)
class Pred2(FolFormula):
    name: str
    var1: int
    var2: int


@dataclass(frozen=True)
class FolNot(FolFormula):
    child: FolFormula


@dataclass(frozen=True)
class FolAnd(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class FolOr(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class FolImplies(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class ForallVar(FolFormula):
    var: int
    body: FolFormula


@dataclass(frozen=True)
class ExistsVar(FolFormula):
    var: int
    body: FolFormula


def translate_class(expr: ClassExpression, var: int = 0) -> FolFormula:
    """Translate a class expression into a formula with one free variable."""
    if isinstance(expr, Top):
        return FolTrue()
    if isinstance(expr, Bottom):
        return FolFalse()
    if isinstance(expr, Atomic):
        return Pred1(expr.name, var)
    if isinstance(expr, Not):
        return FolNot(translate_class(expr.child, var))
    if isinstance(expr, And):
        return FolAnd(translate_class(expr.left, var), translate_class(expr.right, var))
    if isinstance(expr, Or):
        return FolOr(translate_class(expr.left, var), translate_class(expr.right, var))
    if isinstance(expr, Forall):
        return ForallVar(var + 1, FolImplies(Pred2(expr.role, var, var + 1), translate_class(expr.child, var + 1)))
    if isinstance(expr, Exists):
        return ExistsVar(var + 1, FolAnd(Pred2(expr.role, var, var + 1), translate_class(expr.child, var + 1)))
    raise TypeError(f"not a class expression: {expr!r}")


def translate_gci(axiom: Axiom) -> FolFormula:
    """``C => D`` becomes ``forall x0.(t(C, x0) -> t(D, x0))``."""
    return ForallVar(0, FolImplies(translate_class(axiom.sub, 0), translate_class(axiom.sup, 0)))


def render_fol(f: FolFormula) -> str:
    """ASCII rendering, fully parenthesized at every binary connective."""
    if isinstance(f, FolTrue):
        return "true"
    if isinstance(f, FolFalse):
        return "false"
    if isinstance(f, Pred1):
        return f"{f.name}(x{f.var})"
    if isinstance(f, Pred2):
        return f"{f.name}(x{f.var1},x{f.var2})"
    if isinstance(f, FolNot):
        return f"~{render_fol(f.child)}"
    if isinstance(f, FolAnd):
        return f"({render_fol(f.left)} & {render_fol(f.right)})"
    if isinstance(f, FolOr):
        return f"({render_fol(f.left)} | {render_fol(f.right)})"
    if isinstance(f, FolImplies):
        return f"({render_fol(f.left)} -> {render_fol(f.right)})"
    if isinstance(f, ForallVar):
        return f"forall x{f.var}.{render_fol(f.body)}"
    if isinstance(f, ExistsVar):
        return f"exists x{f.var}.{render_fol(f.body)}"
    raise TypeError(f"not a formula: {f!r}")

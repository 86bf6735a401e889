"""Top-down refinement search for separating class expressions.

Starting from Thing, a best-first loop repeatedly expands the highest-scoring
frontier node with a downward refinement operator and scores every new
candidate against the examples.  Scores trade predictive accuracy against a
linear length penalty, so shorter separating expressions surface first.  The
search is fully deterministic: ties break on length, then on rendered text.
"""

from __future__ import annotations

import heapq
import weakref
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    TOP,
    And,
    Atomic,
    ClassExpression,
    Exists,
    Forall,
    LearningProblem,
    Not,
    Or,
    Top,
    _operands,
    canonicalize,
    length,
    make_or,
    merge_chain,
    render_raw,
)
from .reasoner import Coverage, MaterializedKb, coverage

DEFAULT_LENGTH_PENALTY = Fraction(1, 100)


@dataclass(frozen=True)
class SearchConfig:
    max_expansions: int = 10000
    max_length: int = 10
    top_k: int = 10
    length_penalty: Fraction = DEFAULT_LENGTH_PENALTY
    noise: Fraction = Fraction(0)
    enable_disjunction: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "length_penalty", Fraction(self.length_penalty))
        object.__setattr__(self, "noise", Fraction(self.noise))
        if self.max_expansions <= 0 or self.max_length <= 0 or self.top_k <= 0:
            raise ValueError("max_expansions, max_length and top_k must be positive")
        if self.length_penalty < 0:
            raise ValueError("length_penalty must be non-negative")
        if not 0 <= self.noise < 1:
            raise ValueError("noise must lie in [0, 1)")


@dataclass(frozen=True)
class Solution:
    expression: ClassExpression
    coverage: Coverage
    length: int
    score: Fraction
    approximate: bool = False

    @property
    def rendered(self) -> str:
        return render_raw(self.expression)


@dataclass(frozen=True)
class SearchResult:
    solutions: tuple[Solution, ...]
    expansions_used: int
    exhausted: bool


def score(cov: Coverage, expr_length: int, cfg: SearchConfig) -> Fraction:
    """Predictive accuracy minus the linear length penalty."""
    return cov.accuracy - cfg.length_penalty * expr_length


# ---------------------------------------------------------------------------
# refinement operator
# ---------------------------------------------------------------------------

_TOP_REFS: "weakref.WeakKeyDictionary[MaterializedKb, dict]" = weakref.WeakKeyDictionary()


def top_refinements(mkb: MaterializedKb, cfg: SearchConfig) -> tuple[ClassExpression, ...]:
    """Refinements of Thing: hierarchy roots, negated leaves, role restrictions.

    Sorted by (length, rendered text); cached per materialized KB.
    """
    return tuple(expr for expr, _, _, _ in _top_table(mkb, cfg))


def _top_table(mkb: MaterializedKb, cfg: SearchConfig) -> list[tuple]:
    """(expr, length, operand list, operand render keys) per Thing refinement."""
    per_kb = _TOP_REFS.setdefault(mkb, {})
    key = (cfg.max_length, cfg.enable_disjunction)
    cached = per_kb.get(key)
    if cached is not None:
        return cached

    classes = mkb.base.signature.atomic_classes
    roots = sorted(name for name in classes if not mkb.direct_superclasses[name])
    leaves = sorted(name for name in classes if not mkb.direct_subclasses[name])
    generals: list[ClassExpression] = [Atomic(name) for name in roots]
    generals += [Not(Atomic(name)) for name in leaves]

    out: set[ClassExpression] = set(generals)
    for role in sorted(mkb.base.signature.roles):
        out.add(Exists(role, TOP))
        out.update(Forall(role, e) for e in generals)
    if cfg.enable_disjunction:
        for i, a in enumerate(roots):
            for b in roots[i + 1 :]:
                out.add(make_or([Atomic(a), Atomic(b)]))

    refs = sorted((e for e in out if length(e) <= cfg.max_length), key=_order_key)
    table = [(e, length(e), *_chain_parts(e)) for e in refs]
    per_kb[key] = table
    return table


def _chain_parts(expr: ClassExpression) -> tuple[list[ClassExpression], list[str]]:
    ops = _operands(expr, And) if isinstance(expr, And) else [expr]
    return ops, [render_raw(op) for op in ops]


def _order_key(expr: ClassExpression) -> tuple[int, str]:
    return (length(expr), render_raw(expr))


def rho(expr: ClassExpression, mkb: MaterializedKb, cfg: SearchConfig) -> list[ClassExpression]:
    """Downward refinements of a canonical expression, canonical and deduplicated.

    Atomic classes specialize to declared subclasses or grow a conjunct;
    negated atoms generalize the negated class upward; role fillers refine
    recursively; disjunctions may also drop an operand.  Every output has
    length at most `cfg.max_length`.
    """
    return sorted(_rho_set(expr, mkb, cfg), key=_order_key)


def _rho_set(expr: ClassExpression, mkb: MaterializedKb, cfg: SearchConfig) -> set[ClassExpression]:
    out = _refine(expr, mkb, cfg, cfg.max_length)
    out.discard(expr)
    return out


def _conjoined(expr: ClassExpression, mkb: MaterializedKb, cfg: SearchConfig, budget: int) -> set[ClassExpression]:
    """`expr and X` for X among the Thing refinements, within the length budget."""
    room = budget - length(expr) - 1
    expr_ops, expr_keys = _chain_parts(expr)
    out = set()
    for _, extra_length, extra_ops, extra_keys in _top_table(mkb, cfg):
        if extra_length > room:
            break  # sorted by length
        out.add(merge_chain(And, expr_ops, expr_keys, extra_ops, extra_keys))
    out.discard(expr)
    return out


def _admits_conjunct(expr: ClassExpression) -> bool:
    """Expression forms whose refinement rule includes growing a conjunct."""
    return isinstance(expr, (Atomic, Exists, Forall)) or (
        isinstance(expr, Not) and isinstance(expr.child, Atomic)
    )


def _refine(expr: ClassExpression, mkb: MaterializedKb, cfg: SearchConfig, budget: int) -> set[ClassExpression]:
    if isinstance(expr, Top):
        return {e for e in top_refinements(mkb, cfg) if length(e) <= budget}
    if isinstance(expr, And):
        operands = _operands(expr, And)
        keys = [render_raw(op) for op in operands]
        total = length(expr)
        # Growing any operand's conjunct yields the same chain-plus-extra
        # child regardless of position, so those children are built once
        # for the whole chain; per-operand work covers the remaining rules.
        if any(_admits_conjunct(op) for op in operands):
            out = _conjoined(expr, mkb, cfg, budget)
        else:
            out = set()
        for i, op in enumerate(operands):
            refined_ops = _refine_without_conjuncts(op, mkb, cfg, budget - (total - length(op)))
            if not refined_ops:
                continue
            rest = operands[:i] + operands[i + 1 :]
            rest_keys = keys[:i] + keys[i + 1 :]
            for refined in refined_ops:
                out.add(merge_chain(And, rest, rest_keys, *_chain_parts(refined)))
        return out
    out = _refine_without_conjuncts(expr, mkb, cfg, budget)
    if _admits_conjunct(expr):
        out |= _conjoined(expr, mkb, cfg, budget)
    return out


def _refine_without_conjuncts(
    expr: ClassExpression, mkb: MaterializedKb, cfg: SearchConfig, budget: int
) -> set[ClassExpression]:
    """Refinements other than the conjunct-growing rule (handled chain-wide)."""
    if isinstance(expr, Atomic):
        return {Atomic(name) for name in mkb.direct_subclasses.get(expr.name, frozenset())}
    if isinstance(expr, Not) and isinstance(expr.child, Atomic):
        return {Not(Atomic(name)) for name in mkb.direct_superclasses.get(expr.child.name, frozenset())}
    if isinstance(expr, Exists):
        return {Exists(expr.role, child) for child in _refine(expr.child, mkb, cfg, budget - 2)}
    if isinstance(expr, Forall):
        return {Forall(expr.role, child) for child in _refine(expr.child, mkb, cfg, budget - 2)}
    if isinstance(expr, Or):
        out: set[ClassExpression] = {expr.left, expr.right}
        total = length(expr)
        for refined in _refine(expr.left, mkb, cfg, budget - (total - length(expr.left))):
            out.add(make_or([refined, expr.right]))
        for refined in _refine(expr.right, mkb, cfg, budget - (total - length(expr.right))):
            out.add(make_or([expr.left, refined]))
        return out
    if isinstance(expr, Top):
        return {e for e in top_refinements(mkb, cfg) if length(e) <= budget}
    # Nothing and negations of complex expressions have no refinements here;
    # the operator never generates them from Thing.
    return set()


# ---------------------------------------------------------------------------
# best-first search
# ---------------------------------------------------------------------------


def search(mkb: MaterializedKb, problem: LearningProblem, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Learn separating expressions for the problem's examples.

    Expressions with accuracy at least ``1 - noise`` qualify as solutions and
    are ranked by (accuracy desc, length asc, rendered text asc).  When no
    candidate qualifies, the best-scoring candidates are returned instead,
    flagged approximate.  Output is deterministic for fixed inputs.
    """
    pos_mask = mkb.names_to_mask(problem.positives)
    neg_mask = mkb.names_to_mask(problem.negatives)
    total = len(problem.positives) + len(problem.negatives)
    penalty = cfg.length_penalty

    # Integer score key: hits/total - penalty*len, scaled by total*penalty.denominator.
    def score_key(hits: int, expr_length: int) -> int:
        return hits * penalty.denominator - penalty.numerator * expr_length * total

    def hits_of(expr: ClassExpression) -> int:
        ext = mkb.extension_mask(expr)
        return (ext & pos_mask).bit_count() + (neg_mask & ~ext).bit_count()

    # candidate bookkeeping: expr -> (hits, length, rendered)
    evaluated: dict[ClassExpression, tuple[int, int, str]] = {}
    heap: list[tuple[int, int, str, ClassExpression]] = []

    def admit(expr: ClassExpression) -> None:
        hits = hits_of(expr)
        expr_length = length(expr)
        rendered = render_raw(expr)
        evaluated[expr] = (hits, expr_length, rendered)
        heapq.heappush(heap, (-score_key(hits, expr_length), expr_length, rendered, expr))

    # The heap key (score, length, rendered text) is a total order over
    # distinct canonical expressions, so feeding children in set order keeps
    # the expansion sequence deterministic without sorting each batch.
    admit(TOP)
    expansions = 0
    while heap and expansions < cfg.max_expansions:
        _, _, _, expr = heapq.heappop(heap)
        expansions += 1
        for child in _rho_set(expr, mkb, cfg):
            if child not in evaluated:
                admit(child)

    # threshold: accuracy >= 1 - noise, i.e. hits * noise_den >= total * (noise_den - noise_num)
    noise = cfg.noise
    qualifying = [
        (hits, expr_length, rendered, expr)
        for expr, (hits, expr_length, rendered) in evaluated.items()
        if hits * noise.denominator >= total * (noise.denominator - noise.numerator)
    ]
    approximate = not qualifying
    if qualifying:
        qualifying.sort(key=lambda item: (-item[0], item[1], item[2]))
        chosen = qualifying[: cfg.top_k]
    else:
        pool = [
            (score_key(hits, expr_length), hits, expr_length, rendered, expr)
            for expr, (hits, expr_length, rendered) in evaluated.items()
        ]
        pool.sort(key=lambda item: (-item[0], item[2], item[3]))
        chosen = [(hits, expr_length, rendered, expr) for _, hits, expr_length, rendered, expr in pool[: cfg.top_k]]

    solutions = tuple(
        _solution(mkb, expr, problem, cfg, approximate) for _, _, _, expr in chosen
    )
    return SearchResult(solutions=solutions, expansions_used=expansions, exhausted=not heap)


def _solution(
    mkb: MaterializedKb,
    expr: ClassExpression,
    problem: LearningProblem,
    cfg: SearchConfig,
    approximate: bool,
) -> Solution:
    cov = coverage(mkb, expr, problem)
    expr_length = length(expr)
    return Solution(
        expression=expr,
        coverage=cov,
        length=expr_length,
        score=score(cov, expr_length, cfg),
        approximate=approximate,
    )


def verify_solution(
    mkb: MaterializedKb,
    expr: ClassExpression,
    problem: LearningProblem,
    cfg: SearchConfig = SearchConfig(),
) -> Solution:
    """Re-score a user-supplied expression as if the search had returned it."""
    canonical = canonicalize(expr)
    cov = coverage(mkb, canonical, problem)
    return Solution(
        expression=canonical,
        coverage=cov,
        length=length(canonical),
        score=score(cov, length(canonical), cfg),
        approximate=cov.accuracy < 1 - cfg.noise,
    )

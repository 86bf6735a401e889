"""Textual formats: class expressions, knowledge-base files and example files.

Expression surface syntax uses Manchester-style keywords::

    expr  := or
    or    := and {"or" and}
    and   := unary {"and" unary}
    unary := "not" unary | "Thing" | "Nothing" | Name
           | Name "some" unary | Name "only" unary | "(" expr ")"

Knowledge bases live in a line-oriented format (``#`` comments to end of
line): ``class N`` / ``role N`` / ``ind N`` declarations, ``sub A B`` atomic
subsumptions, ``gci <expr> => <expr>`` general axioms, ``type a A`` and
``rel R a b`` assertions.  Learning problems are ``+ name`` / ``- name``
lines.  All formats round-trip through the serializers below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    BOTTOM,
    IDENTIFIER_RE,
    TOP,
    And,
    Assertion,
    Atomic,
    Axiom,
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
    Signature,
    Top,
    canonicalize,
    render_raw,
)
from .model import render_expression as render_expression  # re-export

_KEYWORDS = frozenset({"and", "or", "not", "some", "only", "Thing", "Nothing"})
_IDENT_START = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz")
_IDENT_CONT = _IDENT_START | frozenset("0123456789_")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(DlError):
    """Syntax or name error with a 1-based source position."""

    def __init__(self, span: SourceSpan, message: str, expected: tuple[str, ...] = ()):
        self.span = span
        self.message = message
        self.expected = expected
        suffix = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{span}: {message}{suffix}")


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "name", "keyword", "lparen", "rparen", "end"
    text: str
    span: SourceSpan


def _tokenize(text: str, base_line: int = 1, base_column: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = base_line, base_column
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        span = SourceSpan(line, col)
        if ch == "(":
            tokens.append(_Token("lparen", "(", span))
            i += 1
            col += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ")", span))
            i += 1
            col += 1
            continue
        if ch in _IDENT_START:
            j = i
            while j < len(text) and text[j] in _IDENT_CONT:
                j += 1
            word = text[i:j]
            kind = "keyword" if word in _KEYWORDS else "name"
            tokens.append(_Token(kind, word, span))
            col += j - i
            i = j
            continue
        raise ParseError(span, f"unexpected character {ch!r}")
    tokens.append(_Token("end", "", SourceSpan(line, col)))
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[_Token], sig: Signature | None):
        self.tokens = tokens
        self.pos = 0
        self.sig = sig

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> ClassExpression:
        expr = self.parse_or()
        tail = self.peek()
        if tail.kind != "end":
            raise ParseError(tail.span, f"unexpected input {tail.text!r} after expression")
        return expr

    def parse_or(self) -> ClassExpression:
        operands = [self.parse_and()]
        while self.peek().text == "or":
            self.advance()
            operands.append(self.parse_and())
        expr = operands[-1]
        for item in reversed(operands[:-1]):
            expr = Or(item, expr)
        return expr

    def parse_and(self) -> ClassExpression:
        operands = [self.parse_unary()]
        while self.peek().text == "and":
            self.advance()
            operands.append(self.parse_unary())
        expr = operands[-1]
        for item in reversed(operands[:-1]):
            expr = And(item, expr)
        return expr

    def parse_unary(self) -> ClassExpression:
        tok = self.peek()
        if tok.text == "not":
            self.advance()
            return Not(self.parse_unary())
        if tok.text == "Thing":
            self.advance()
            return TOP
        if tok.text == "Nothing":
            self.advance()
            return BOTTOM
        if tok.kind == "lparen":
            self.advance()
            inner = self.parse_or()
            closing = self.advance()
            if closing.kind != "rparen":
                raise ParseError(closing.span, "unbalanced parenthesis", ("')'",))
            return inner
        if tok.kind == "name":
            self.advance()
            follow = self.peek()
            if follow.text in ("some", "only"):
                self.advance()
                self._require_role(tok)
                child = self.parse_unary()
                return Exists(tok.text, child) if follow.text == "some" else Forall(tok.text, child)
            self._require_class(tok)
            return Atomic(tok.text)
        raise ParseError(
            tok.span,
            f"expected a class expression, found {tok.text or 'end of input'!r}",
            ("name", "'not'", "'Thing'", "'Nothing'", "'('"),
        )

    def _require_role(self, tok: _Token) -> None:
        if self.sig is not None and tok.text not in self.sig.roles:
            raise ParseError(tok.span, f"unknown role {tok.text!r}")

    def _require_class(self, tok: _Token) -> None:
        if self.sig is not None and tok.text not in self.sig.atomic_classes:
            raise ParseError(tok.span, f"unknown class {tok.text!r}")


def parse_expression(
    text: str,
    sig: Signature | None = None,
    base_line: int = 1,
    base_column: int = 1,
) -> ClassExpression:
    """Parse a class expression; names are checked against `sig` when given."""
    tokens = _tokenize(text, base_line, base_column)
    return _ExprParser(tokens, sig).parse()


# ---------------------------------------------------------------------------
# knowledge-base files
# ---------------------------------------------------------------------------


def _logical_lines(text: str) -> list[tuple[int, int, str]]:
    """(line, start column, content) triples; comments stripped, blanks dropped."""
    out = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        no_comment = raw.split("#", 1)[0]
        content = no_comment.strip()
        if content:
            column = len(no_comment) - len(no_comment.lstrip()) + 1
            out.append((lineno, column, content))
    return out


def _check_identifier(name: str, lineno: int, what: str) -> None:
    if not IDENTIFIER_RE.match(name):
        raise ParseError(SourceSpan(lineno, 1), f"invalid {what} name {name!r}")


_DECL_KINDS = {"class": "class", "role": "role", "ind": "individual"}


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a knowledge-base file; all used names must be declared."""
    lines = _logical_lines(text)

    declared: dict[str, str] = {}  # name -> kind
    for lineno, column, content in lines:
        fields = content.split()
        if fields[0] in _DECL_KINDS:
            if len(fields) != 2:
                raise ParseError(SourceSpan(lineno, column), f"{fields[0]} line takes exactly one name")
            kind, name = _DECL_KINDS[fields[0]], fields[1]
            _check_identifier(name, lineno, kind)
            if declared.get(name, kind) != kind:
                raise ParseError(
                    SourceSpan(lineno, column),
                    f"{name!r} already declared as {declared[name]}, redeclared as {kind}",
                )
            declared[name] = kind

    sig = Signature.of(
        (n for n, k in declared.items() if k == "class"),
        (n for n, k in declared.items() if k == "role"),
        (n for n, k in declared.items() if k == "individual"),
    )

    def need(name: str, kind: str, lineno: int) -> None:
        if declared.get(name) != kind:
            raise ParseError(SourceSpan(lineno, 1), f"undeclared {kind} {name!r}")

    axioms: list[Axiom] = []
    assertions: list[Assertion] = []
    for lineno, column, content in lines:
        fields = content.split()
        head = fields[0]
        if head in _DECL_KINDS:
            continue
        if head == "sub":
            if len(fields) != 3:
                raise ParseError(SourceSpan(lineno, column), "sub line takes two class names")
            for name in fields[1:]:
                need(name, "class", lineno)
            axioms.append(Axiom(Atomic(fields[1]), Atomic(fields[2])))
        elif head == "gci":
            body = content[len("gci") :]
            if "=>" not in body:
                raise ParseError(SourceSpan(lineno, column), "gci line needs '=>' between the two expressions")
            left, right = body.split("=>", 1)
            left_col = column + len("gci") + (len(left) - len(left.lstrip()))
            right_col = column + len(content) - len(right) + (len(right) - len(right.lstrip()))
            sub = parse_expression(left.strip(), sig, base_line=lineno, base_column=left_col)
            sup = parse_expression(right.strip(), sig, base_line=lineno, base_column=right_col)
            axioms.append(Axiom(sub, sup))
        elif head == "type":
            if len(fields) != 3:
                raise ParseError(SourceSpan(lineno, column), "type line takes an individual and a class name")
            need(fields[1], "individual", lineno)
            need(fields[2], "class", lineno)
            assertions.append(ClassAssertion(fields[2], fields[1]))
        elif head == "rel":
            if len(fields) != 4:
                raise ParseError(SourceSpan(lineno, column), "rel line takes a role and two individuals")
            need(fields[1], "role", lineno)
            need(fields[2], "individual", lineno)
            need(fields[3], "individual", lineno)
            assertions.append(RoleAssertion(fields[1], fields[2], fields[3]))
        else:
            raise ParseError(
                SourceSpan(lineno, column),
                f"unknown directive {head!r}",
                ("class", "role", "ind", "sub", "gci", "type", "rel"),
            )

    return KnowledgeBase.create(sig, axioms, assertions)


def serialize_kb(kb: KnowledgeBase) -> str:
    """Deterministic text form; `parse_kb(serialize_kb(kb)) == kb`."""
    lines: list[str] = []
    lines += [f"class {name}" for name in sorted(kb.signature.atomic_classes)]
    lines += [f"role {name}" for name in sorted(kb.signature.roles)]
    lines += [f"ind {name}" for name in sorted(kb.signature.individuals)]

    subs = []
    gcis = []
    for axiom in kb.tbox:
        if axiom.is_atomic:
            subs.append(f"sub {render_raw(axiom.sub)} {render_raw(axiom.sup)}")
        else:
            gcis.append(f"gci {render_raw(axiom.sub)} => {render_raw(axiom.sup)}")
    lines += sorted(subs)
    lines += sorted(gcis)

    types = []
    rels = []
    for assertion in kb.abox:
        if isinstance(assertion, ClassAssertion):
            types.append(f"type {assertion.individual} {assertion.class_name}")
        else:
            assert isinstance(assertion, RoleAssertion)
            rels.append(f"rel {assertion.role} {assertion.subject} {assertion.object}")
    lines += sorted(types)
    lines += sorted(rels)

    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# learning-problem files
# ---------------------------------------------------------------------------


def parse_problem(text: str, sig: Signature) -> LearningProblem:
    """Parse ``+ name`` / ``- name`` lines into a learning problem."""
    positives: set[str] = set()
    negatives: set[str] = set()
    for lineno, column, content in _logical_lines(text):
        fields = content.split()
        if len(fields) != 2 or fields[0] not in ("+", "-"):
            raise ParseError(
                SourceSpan(lineno, column), f"expected '+ <individual>' or '- <individual>', got {content!r}"
            )
        name = fields[1]
        if name not in sig.individuals:
            raise ParseError(SourceSpan(lineno, column), f"unknown individual {name!r}")
        (positives if fields[0] == "+" else negatives).add(name)
    overlap = positives & negatives
    if overlap:
        raise ParseError(SourceSpan(1, 1), f"examples labeled both positive and negative: {sorted(overlap)}")
    if not positives or not negatives:
        raise ParseError(SourceSpan(1, 1), "need at least one positive and one negative example")
    return LearningProblem(frozenset(positives), frozenset(negatives))


_DL_SYMBOLS = {"Thing": "⊤", "Nothing": "⊥"}


def render_dl(expr: ClassExpression) -> str:
    """Display-only rendering in description-logic notation (never parsed)."""
    expr = canonicalize(expr)
    return _render_dl(expr)


def _render_dl(expr: ClassExpression) -> str:
    from .model import _operands  # chain flattening for display

    if isinstance(expr, (Top, Bottom)):
        return _DL_SYMBOLS[render_raw(expr)]
    if isinstance(expr, Atomic):
        return expr.name
    if isinstance(expr, Not):
        return "¬" + _dl_atomish(expr.child)
    if isinstance(expr, Exists):
        return "∃" + expr.role + "." + _dl_atomish(expr.child)
    if isinstance(expr, Forall):
        return "∀" + expr.role + "." + _dl_atomish(expr.child)
    if isinstance(expr, And):
        return "⊓".join(_dl_atomish(op) for op in _operands(expr, And))
    if isinstance(expr, Or):
        return "⊔".join(_dl_atomish(op) for op in _operands(expr, Or))
    raise TypeError(f"not a class expression: {expr!r}")


def _dl_atomish(expr: ClassExpression) -> str:
    text = _render_dl(expr)
    if isinstance(expr, (And, Or)):
        return f"({text})"
    return text


def serialize_problem(problem: LearningProblem, order: list[str] | None = None) -> str:
    """Deterministic text form; `order` fixes line order for listed names."""
    rank = {name: i for i, name in enumerate(order or [])}

    def key(name: str) -> tuple:
        return (rank.get(name, len(rank)), name)

    lines = [f"+ {name}" for name in sorted(problem.positives, key=key)]
    lines += [f"- {name}" for name in sorted(problem.negatives, key=key)]
    return "".join(line + "\n" for line in lines)

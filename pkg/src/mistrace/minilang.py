"""Lexer, parser, and AST for a small imperative tracing language.

The language covers exactly the control-flow shapes the misconception
catalog talks about: if/else-if/else chains, braced and unbraced bodies,
while / do-while / for loops, break and continue, integer and boolean
expressions, and a variadic ``print`` statement.  There are no functions,
arrays, string variables, or input statements.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterator, Optional, Union


class ParseError(Exception):
    """Raised for lexical or syntactic errors, with a source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

KEYWORDS = frozenset(
    ["if", "else", "while", "do", "for", "break", "continue", "print", "true", "false"]
)

# Multi-character operators first so lexing is maximal-munch.
_OPERATORS = [
    "<=", ">=", "==", "!=", "&&", "||", "++", "--", "+=", "-=", "*=",
    "<", ">", "=", "+", "-", "*", "/", "%", "!", "(", ")", "{", "}", ";", ",",
]


@dataclass(frozen=True, slots=True)
class Token:
    kind: str          # "int", "ident", "string", a keyword, or an operator
    text: str
    value: object      # int for "int", decoded str for "string", else None
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens. Raises ParseError on bad input."""
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                advance(1)
            continue
        start_line, start_col = line, col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            text = source[i:j]
            tokens.append(Token("int", text, int(text), start_line, start_col))
            advance(j - i)
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = text if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, None, start_line, start_col))
            advance(j - i)
            continue
        if ch == '"':
            j = i + 1
            decoded: list[str] = []
            while True:
                if j >= n or source[j] == "\n":
                    raise ParseError("unterminated string", start_line, start_col)
                c = source[j]
                if c == '"':
                    break
                if c == "\\":
                    if j + 1 >= n:
                        raise ParseError("unterminated string", start_line, start_col)
                    esc = source[j + 1]
                    table = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}
                    if esc not in table:
                        raise ParseError(f"bad escape '\\{esc}'", line, col)
                    decoded.append(table[esc])
                    j += 2
                    continue
                decoded.append(c)
                j += 1
            text = source[i : j + 1]
            tokens.append(Token("string", text, "".join(decoded), start_line, start_col))
            advance(j + 1 - i)
            continue
        for op in _OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token(op, op, None, start_line, start_col))
                advance(len(op))
                break
        else:
            raise ParseError(f"illegal character {ch!r}", start_line, start_col)
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Loc:
    line: int
    col: int


@dataclass(frozen=True, slots=True)
class IntLit:
    value: int
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class BoolLit:
    value: bool
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class StringLit:
    value: str
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Unary:
    op: str                      # "-" or "!"
    operand: "Expr"
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    node_id: int
    loc: Loc


Expr = Union[IntLit, BoolLit, Var, Unary, Binary]
PrintArg = Union[IntLit, BoolLit, Var, Unary, Binary, StringLit]

RELATIONAL_OPS = frozenset(["<", "<=", ">", ">="])


@dataclass(frozen=True, slots=True)
class Body:
    """A loop or branch body; remembers whether the source braced it."""

    statements: tuple["Stmt", ...]
    braced: bool


@dataclass(frozen=True, slots=True)
class Assign:
    target: str
    op: str                      # "=", "+=", "-=", "*="
    value: Expr
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class IncDec:
    target: str
    op: str                      # "++" or "--"
    prefix: bool
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Print:
    args: tuple[PrintArg, ...]
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Branch:
    cond: Expr
    body: Body


@dataclass(frozen=True, slots=True)
class If:
    branches: tuple[Branch, ...]     # one entry per if / else-if
    else_body: Optional[Body]
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class While:
    cond: Expr
    body: Body
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class DoWhile:
    body: Body
    cond: Expr
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class For:
    init: Optional["SimpleStmt"]
    cond: Optional[Expr]
    update: Optional["SimpleStmt"]
    body: Body
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Break:
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Continue:
    node_id: int
    loc: Loc


@dataclass(frozen=True, slots=True)
class Block:
    statements: tuple["Stmt", ...]
    node_id: int
    loc: Loc


SimpleStmt = Union[Assign, IncDec]
Stmt = Union[Assign, IncDec, Print, If, While, DoWhile, For, Break, Continue, Block]
LOOP_TYPES = (While, DoWhile, For)


@dataclass(frozen=True, slots=True)
class Program:
    statements: tuple[Stmt, ...]


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.next_id = 0
        self.loop_depth = 0

    def mint(self) -> int:
        i = self.next_id
        self.next_id += 1
        return i

    def peek(self, offset: int = 0) -> Optional[Token]:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def at(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("", "", None, 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col)
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            if tok is None:
                last = self.tokens[-1] if self.tokens else Token("", "", None, 1, 1)
                raise ParseError(f"expected '{kind}', found end of input", last.line, last.col)
            raise ParseError(f"expected '{kind}', found '{tok.text}'", tok.line, tok.col)
        self.pos += 1
        return tok

    @staticmethod
    def loc_of(tok: Token) -> Loc:
        return Loc(tok.line, tok.col)

    # --- statements ---

    def parse_program(self) -> Program:
        stmts = []
        while self.peek() is not None:
            stmts.append(self.parse_stmt())
        return Program(tuple(stmts))

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        assert tok is not None
        if tok.kind == "if":
            return self.parse_if()
        if tok.kind == "while":
            return self.parse_while()
        if tok.kind == "do":
            return self.parse_dowhile()
        if tok.kind == "for":
            return self.parse_for()
        if tok.kind == "print":
            stmt = self.parse_print()
            self.expect(";")
            return stmt
        if tok.kind == "break":
            if self.loop_depth == 0:
                raise ParseError("'break' outside a loop", tok.line, tok.col)
            self.take()
            self.expect(";")
            return Break(node_id=self.mint(), loc=self.loc_of(tok))
        if tok.kind == "continue":
            if self.loop_depth == 0:
                raise ParseError("'continue' outside a loop", tok.line, tok.col)
            self.take()
            self.expect(";")
            return Continue(node_id=self.mint(), loc=self.loc_of(tok))
        if tok.kind == "{":
            return self.parse_block()
        if tok.kind in ("ident", "++", "--"):
            stmt = self.parse_simple()
            self.expect(";")
            return stmt
        raise ParseError(f"unexpected '{tok.text}'", tok.line, tok.col)

    def parse_simple(self) -> SimpleStmt:
        """Assignment or increment/decrement, without the trailing ';'."""
        tok = self.peek()
        assert tok is not None
        if tok.kind in ("++", "--"):
            op = self.take()
            name = self.expect("ident")
            return IncDec(name.text, op.kind, True, node_id=self.mint(), loc=self.loc_of(op))
        name = self.expect("ident")
        nxt = self.peek()
        if nxt is not None and nxt.kind in ("++", "--"):
            self.take()
            return IncDec(name.text, nxt.kind, False, node_id=self.mint(), loc=self.loc_of(name))
        if nxt is not None and nxt.kind in ("=", "+=", "-=", "*="):
            self.take()
            value = self.parse_expr()
            return Assign(name.text, nxt.kind, value, node_id=self.mint(), loc=self.loc_of(name))
        where = nxt if nxt is not None else name
        raise ParseError("expected assignment or '++'/'--'", where.line, where.col)

    def parse_print(self) -> Print:
        kw = self.expect("print")
        self.expect("(")
        args: list[PrintArg] = [self.parse_print_arg()]
        while self.at(","):
            self.take()
            args.append(self.parse_print_arg())
        self.expect(")")
        return Print(tuple(args), node_id=self.mint(), loc=self.loc_of(kw))

    def parse_print_arg(self) -> PrintArg:
        if self.at("string"):
            tok = self.take()
            return StringLit(str(tok.value), node_id=self.mint(), loc=self.loc_of(tok))
        return self.parse_expr()

    def parse_body(self, in_loop: bool = False) -> Body:
        if in_loop:
            self.loop_depth += 1
        try:
            if self.at("{"):
                block = self.parse_block()
                return Body(block.statements, braced=True)
            stmt = self.parse_stmt()
            return Body((stmt,), braced=False)
        finally:
            if in_loop:
                self.loop_depth -= 1

    def parse_block(self) -> Block:
        opener = self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise ParseError("unterminated block", opener.line, opener.col)
            stmts.append(self.parse_stmt())
        self.expect("}")
        return Block(tuple(stmts), node_id=self.mint(), loc=self.loc_of(opener))

    def parse_if(self) -> If:
        kw = self.expect("if")
        node_id = self.mint()
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        branches = [Branch(cond, self.parse_body())]
        else_body: Optional[Body] = None
        # "else if" extends the chain; a bare "else" closes it.  The
        # recursive body parse gives dangling elses to the nearest if.
        while self.at("else"):
            self.take()
            if self.at("if"):
                self.take()
                self.expect("(")
                cond = self.parse_expr()
                self.expect(")")
                branches.append(Branch(cond, self.parse_body()))
            else:
                else_body = self.parse_body()
                break
        return If(tuple(branches), else_body, node_id=node_id, loc=self.loc_of(kw))

    def parse_while(self) -> While:
        kw = self.expect("while")
        node_id = self.mint()
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        body = self.parse_body(in_loop=True)
        return While(cond, body, node_id=node_id, loc=self.loc_of(kw))

    def parse_dowhile(self) -> DoWhile:
        kw = self.expect("do")
        node_id = self.mint()
        body = self.parse_body(in_loop=True)
        self.expect("while")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        self.expect(";")
        return DoWhile(body, cond, node_id=node_id, loc=self.loc_of(kw))

    def parse_for(self) -> For:
        kw = self.expect("for")
        node_id = self.mint()
        self.expect("(")
        init = None if self.at(";") else self.parse_simple()
        self.expect(";")
        cond = None if self.at(";") else self.parse_expr()
        self.expect(";")
        update = None if self.at(")") else self.parse_simple()
        self.expect(")")
        body = self.parse_body(in_loop=True)
        return For(init, cond, update, body, node_id=node_id, loc=self.loc_of(kw))

    # --- expressions, by descending precedence ---

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def _left_assoc(self, sub, ops: tuple[str, ...]) -> Expr:
        expr = sub()
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ops:
                return expr
            self.take()
            right = sub()
            expr = Binary(tok.kind, expr, right, node_id=self.mint(), loc=self.loc_of(tok))

    def parse_or(self) -> Expr:
        return self._left_assoc(self.parse_and, ("||",))

    def parse_and(self) -> Expr:
        return self._left_assoc(self.parse_equality, ("&&",))

    def parse_equality(self) -> Expr:
        return self._left_assoc(self.parse_relational, ("==", "!="))

    def parse_relational(self) -> Expr:
        return self._left_assoc(self.parse_additive, ("<", "<=", ">", ">="))

    def parse_additive(self) -> Expr:
        return self._left_assoc(self.parse_multiplicative, ("+", "-"))

    def parse_multiplicative(self) -> Expr:
        return self._left_assoc(self.parse_unary, ("*", "/", "%"))

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind in ("-", "!"):
            self.take()
            operand = self.parse_unary()
            return Unary(tok.kind, operand, node_id=self.mint(), loc=self.loc_of(tok))
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("", "", None, 1, 1)
            raise ParseError("expected expression, found end of input", last.line, last.col)
        if tok.kind == "int":
            self.take()
            return IntLit(int(tok.value), node_id=self.mint(), loc=self.loc_of(tok))  # type: ignore[arg-type]
        if tok.kind in ("true", "false"):
            self.take()
            return BoolLit(tok.kind == "true", node_id=self.mint(), loc=self.loc_of(tok))
        if tok.kind == "ident":
            self.take()
            return Var(tok.text, node_id=self.mint(), loc=self.loc_of(tok))
        if tok.kind == "(":
            self.take()
            expr = self.parse_expr()
            self.expect(")")
            return expr
        raise ParseError(f"expected expression, found '{tok.text}'", tok.line, tok.col)


def parse(source: str) -> Program:
    """Parse a source text into a Program.  Raises ParseError."""
    return _Parser(tokenize(source)).parse_program()


# ---------------------------------------------------------------------------
# Tree walking helpers
# ---------------------------------------------------------------------------

def child_bodies(stmt: Stmt) -> list[Body]:
    """All bodies directly attached to a statement."""
    if isinstance(stmt, If):
        out = [b.body for b in stmt.branches]
        if stmt.else_body is not None:
            out.append(stmt.else_body)
        return out
    if isinstance(stmt, (While, DoWhile, For)):
        return [stmt.body]
    return []


def child_statement_lists(stmt: Stmt) -> list[tuple[Stmt, ...]]:
    if isinstance(stmt, Block):
        return [stmt.statements]
    return [b.statements for b in child_bodies(stmt)]


def iter_statements(program: Program) -> Iterator[Stmt]:
    """Pre-order walk over every statement in the program."""
    stack: list[Stmt] = list(reversed(program.statements))
    while stack:
        stmt = stack.pop()
        yield stmt
        for lst in reversed(child_statement_lists(stmt)):
            stack.extend(reversed(lst))


def iter_statement_lists(program: Program) -> Iterator[tuple[Stmt, ...]]:
    """Every statement sequence: the top level, blocks, and bodies."""
    yield program.statements
    for stmt in iter_statements(program):
        yield from child_statement_lists(stmt)


def _iter_exprs(stmt: Stmt) -> Iterator[Expr]:
    def exprs_of(e) -> Iterator[Expr]:
        yield e
        if isinstance(e, Unary):
            yield from exprs_of(e.operand)
        elif isinstance(e, Binary):
            yield from exprs_of(e.left)
            yield from exprs_of(e.right)

    if isinstance(stmt, Assign):
        yield from exprs_of(stmt.value)
    elif isinstance(stmt, Print):
        for arg in stmt.args:
            if not isinstance(arg, StringLit):
                yield from exprs_of(arg)
    elif isinstance(stmt, If):
        for br in stmt.branches:
            yield from exprs_of(br.cond)
    elif isinstance(stmt, (While, DoWhile)):
        yield from exprs_of(stmt.cond)
    elif isinstance(stmt, For):
        if stmt.init is not None:
            yield from _iter_exprs(stmt.init)
        if stmt.cond is not None:
            yield from exprs_of(stmt.cond)
        if stmt.update is not None:
            yield from _iter_exprs(stmt.update)


def iter_nodes(program: Program) -> Iterator[object]:
    """Every node carrying a node_id, statements and expressions alike."""
    for stmt in iter_statements(program):
        yield stmt
        if isinstance(stmt, For):
            if stmt.init is not None:
                yield stmt.init
            if stmt.update is not None:
                yield stmt.update
        if isinstance(stmt, Print):
            for arg in stmt.args:
                yield arg
                if not isinstance(arg, StringLit):
                    yield from _subexprs(arg)
        else:
            for e in _iter_exprs(stmt):
                yield e


def _subexprs(e: Expr) -> Iterator[Expr]:
    if isinstance(e, Unary):
        yield e.operand
        yield from _subexprs(e.operand)
    elif isinstance(e, Binary):
        yield e.left
        yield from _subexprs(e.left)
        yield e.right
        yield from _subexprs(e.right)


def max_node_id(program: Program) -> int:
    best = -1
    for node in iter_nodes(program):
        nid = getattr(node, "node_id", None)
        if nid is not None and nid > best:
            best = nid
    return best


def structurally_equal(a: object, b: object) -> bool:
    """Structural equality ignoring node ids and source locations."""
    if type(a) is not type(b):
        return False
    if isinstance(a, tuple):
        return len(a) == len(b) and all(structurally_equal(x, y) for x, y in zip(a, b))  # type: ignore[arg-type]
    if not hasattr(a, "__dataclass_fields__"):
        return a == b
    for f in fields(a):  # type: ignore[arg-type]
        if f.name in ("node_id", "loc"):
            continue
        if not structurally_equal(getattr(a, f.name), getattr(b, f.name)):
            return False
    return True


# ---------------------------------------------------------------------------
# Feature extraction
# ---------------------------------------------------------------------------

FEATURE_NAMES = frozenset(
    [
        "if",
        "else",
        "else-if-chain",
        "if-without-else",
        "multi-way-selection",
        "unbraced-body",
        "while",
        "do-while",
        "for",
        "loop",
        "pretest-loop",
        "pre-increment",
        "incdec-update-loop",
        "nested-loops",
        "nested-if",
        "nested-if-in-loop",
        "consecutive-ifs",
        "complementary-consecutive-ifs",
        "break",
        "continue",
        "statement-after-selection",
        "statement-after-loop",
        "multi-statement-loop-body",
        "constant-trip-count-loop",
    ]
)

# Features that assert the mere presence of a construct.  These can only be
# gained, never lost, when statements are appended at the top level.
PRESENCE_FEATURES = frozenset(
    [
        "if", "else", "else-if-chain", "if-without-else", "multi-way-selection",
        "unbraced-body", "while", "do-while", "for", "loop", "pretest-loop",
        "pre-increment", "incdec-update-loop", "nested-loops", "nested-if",
        "nested-if-in-loop", "break", "continue", "multi-statement-loop-body",
        "constant-trip-count-loop",
    ]
)


def is_simple_if(stmt: Stmt) -> bool:
    return isinstance(stmt, If) and len(stmt.branches) == 1 and stmt.else_body is None


_COMPLEMENT_OPS = {"<": ">=", ">=": "<", ">": "<=", "<=": ">", "==": "!=", "!=": "=="}


def conditions_complementary(a: Expr, b: Expr) -> bool:
    """Syntactic complement: ``!(C)`` vs ``C`` or same operands under a
    complementary relational operator.  No semantic entailment."""
    if isinstance(a, Unary) and a.op == "!" and structurally_equal(a.operand, b):
        return True
    if isinstance(b, Unary) and b.op == "!" and structurally_equal(b.operand, a):
        return True
    if (
        isinstance(a, Binary)
        and isinstance(b, Binary)
        and a.op in _COMPLEMENT_OPS
        and _COMPLEMENT_OPS[a.op] == b.op
        and structurally_equal(a.left, b.left)
        and structurally_equal(a.right, b.right)
    ):
        return True
    return False


def _const_int(e: Optional[Expr]) -> Optional[int]:
    if isinstance(e, IntLit):
        return e.value
    if isinstance(e, Unary) and e.op == "-" and isinstance(e.operand, IntLit):
        return -e.operand.value
    return None


def constant_trip_count(loop: Stmt, bound: int = 10_000) -> Optional[int]:
    """Trip count of a for-loop whose header is a constant counting pattern,
    or None when the pattern does not apply or exceeds ``bound``."""
    if not isinstance(loop, For):
        return None
    if not isinstance(loop.init, Assign) or loop.init.op != "=":
        return None
    start = _const_int(loop.init.value)
    if start is None:
        return None
    var = loop.init.target
    cond = loop.cond
    if not isinstance(cond, Binary) or cond.op not in ("<", "<=", ">", ">=", "!=", "=="):
        return None
    if isinstance(cond.left, Var) and cond.left.name == var:
        limit = _const_int(cond.right)
        op = cond.op
    elif isinstance(cond.right, Var) and cond.right.name == var:
        limit = _const_int(cond.left)
        flip = {"<": ">", ">": "<", "<=": ">=", ">=": "<=", "==": "==", "!=": "!="}
        op = flip[cond.op]
    else:
        return None
    if limit is None:
        return None
    step = _update_delta(loop.update, var)
    if step is None or step == 0:
        return None
    compare = {
        "<": lambda v: v < limit,
        "<=": lambda v: v <= limit,
        ">": lambda v: v > limit,
        ">=": lambda v: v >= limit,
        "==": lambda v: v == limit,
        "!=": lambda v: v != limit,
    }[op]
    count = 0
    v = start
    while compare(v):
        count += 1
        if count > bound:
            return None
        v += step
    return count


def _update_delta(update: Optional[SimpleStmt], var: str) -> Optional[int]:
    """Constant additive step applied to ``var``, or None."""
    if isinstance(update, IncDec) and update.target == var:
        return 1 if update.op == "++" else -1
    if isinstance(update, Assign) and update.target == var:
        if update.op == "+=":
            return _const_int(update.value)
        if update.op == "-=":
            c = _const_int(update.value)
            return None if c is None else -c
        if update.op == "=":
            e = update.value
            if isinstance(e, Binary) and e.op in ("+", "-"):
                if isinstance(e.left, Var) and e.left.name == var:
                    c = _const_int(e.right)
                    if c is not None:
                        return c if e.op == "+" else -c
                if e.op == "+" and isinstance(e.right, Var) and e.right.name == var:
                    return _const_int(e.left)
    return None


def features(program: Program) -> frozenset[str]:
    """The set of construct features the program exhibits."""
    found: set[str] = set()

    def note(name: str) -> None:
        found.add(name)

    def scan_list(stmts: tuple[Stmt, ...], in_loop: bool) -> None:
        for idx, stmt in enumerate(stmts):
            rest = stmts[idx + 1 :]
            if isinstance(stmt, If):
                note("if")
                if stmt.else_body is not None:
                    note("else")
                else:
                    note("if-without-else")
                if len(stmt.branches) >= 2:
                    note("else-if-chain")
                if len(stmt.branches) >= 2 or stmt.else_body is not None:
                    note("multi-way-selection")
                if rest:
                    note("statement-after-selection")
                if in_loop:
                    note("nested-if-in-loop")
                nxt = stmts[idx + 1] if idx + 1 < len(stmts) else None
                if isinstance(nxt, If):
                    note("consecutive-ifs")
                    if (
                        is_simple_if(stmt)
                        and is_simple_if(nxt)
                        and conditions_complementary(stmt.branches[0].cond, nxt.branches[0].cond)
                    ):
                        note("complementary-consecutive-ifs")
                for body in child_bodies(stmt):
                    if any(isinstance(s, If) for s in body.statements):
                        note("nested-if")
            elif isinstance(stmt, LOOP_TYPES):
                note("loop")
                if isinstance(stmt, While):
                    note("while")
                    note("pretest-loop")
                elif isinstance(stmt, DoWhile):
                    note("do-while")
                else:
                    note("for")
                    note("pretest-loop")
                    if isinstance(stmt.update, IncDec):
                        note("incdec-update-loop")
                    if constant_trip_count(stmt) is not None:
                        note("constant-trip-count-loop")
                if rest:
                    note("statement-after-loop")
                if len(stmt.body.statements) >= 2:
                    note("multi-statement-loop-body")
                if any(isinstance(inner, LOOP_TYPES) for inner in _descendants(stmt)):
                    note("nested-loops")
            elif isinstance(stmt, Break):
                note("break")
            elif isinstance(stmt, Continue):
                note("continue")
            if isinstance(stmt, IncDec) and stmt.prefix:
                note("pre-increment")
            if isinstance(stmt, For):
                for part in (stmt.init, stmt.update):
                    if isinstance(part, IncDec) and part.prefix:
                        note("pre-increment")
            for body in child_bodies(stmt):
                if not body.braced:
                    note("unbraced-body")
                scan_list(body.statements, in_loop or isinstance(stmt, LOOP_TYPES))
            if isinstance(stmt, Block):
                scan_list(stmt.statements, in_loop)

    scan_list(program.statements, in_loop=False)
    return frozenset(found)


def _descendants(stmt: Stmt) -> Iterator[Stmt]:
    for lst in child_statement_lists(stmt):
        for s in lst:
            yield s
            yield from _descendants(s)


# ---------------------------------------------------------------------------
# Pretty printer
# ---------------------------------------------------------------------------

_PRECEDENCE = {
    "||": 1, "&&": 2, "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5, "*": 6, "/": 6, "%": 6,
}
_UNARY_PRECEDENCE = 7


def _fmt_expr(e: PrintArg, parent_prec: int = 0, right_side: bool = False) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StringLit):
        escaped = e.value.replace("\\", "\\\\").replace('"', '\\"')
        escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{escaped}"'
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        inner = _fmt_expr(e.operand, _UNARY_PRECEDENCE)
        text = f"{e.op}{inner}"
        return f"({text})" if parent_prec > _UNARY_PRECEDENCE else text
    assert isinstance(e, Binary)
    prec = _PRECEDENCE[e.op]
    left = _fmt_expr(e.left, prec)
    # All binary operators are left-associative, so a right child at the
    # same precedence needs parentheses.
    right = _fmt_expr(e.right, prec + 1)
    text = f"{left} {e.op} {right}"
    needs = prec < parent_prec or (right_side and prec == parent_prec)
    return f"({text})" if needs else text


def _fmt_simple(stmt: SimpleStmt) -> str:
    if isinstance(stmt, Assign):
        return f"{stmt.target} {stmt.op} {_fmt_expr(stmt.value)}"
    if stmt.prefix:
        return f"{stmt.op}{stmt.target}"
    return f"{stmt.target}{stmt.op}"


def _ends_with_open_if(stmt: Stmt) -> bool:
    """True when the statement's textual tail is an else-less if that a
    following 'else' token would capture."""
    if isinstance(stmt, If):
        if stmt.else_body is None:
            return True
        tail = stmt.else_body
    elif isinstance(stmt, (While, For)):
        tail = stmt.body
    else:
        return False
    if tail.braced or not tail.statements:
        return False
    return _ends_with_open_if(tail.statements[0])


def _fmt_body(body: Body, indent: int, guard_else: bool = False) -> list[str]:
    pad = "  " * indent
    force_braces = body.braced or len(body.statements) != 1
    if not force_braces and guard_else and _ends_with_open_if(body.statements[0]):
        force_braces = True
    if force_braces:
        lines = [pad + "{"]
        for stmt in body.statements:
            lines.extend(_fmt_stmt(stmt, indent + 1))
        lines.append(pad + "}")
        return lines
    return _fmt_stmt(body.statements[0], indent + 1)


def _fmt_stmt(stmt: Stmt, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(stmt, (Assign, IncDec)):
        return [pad + _fmt_simple(stmt) + ";"]
    if isinstance(stmt, Print):
        args = ", ".join(_fmt_expr(a) for a in stmt.args)
        return [pad + f"print({args});"]
    if isinstance(stmt, Break):
        return [pad + "break;"]
    if isinstance(stmt, Continue):
        return [pad + "continue;"]
    if isinstance(stmt, Block):
        lines = [pad + "{"]
        for s in stmt.statements:
            lines.extend(_fmt_stmt(s, indent + 1))
        lines.append(pad + "}")
        return lines
    if isinstance(stmt, If):
        lines: list[str] = []
        for i, br in enumerate(stmt.branches):
            kw = "if" if i == 0 else "else if"
            lines.append(pad + f"{kw} ({_fmt_expr(br.cond)})")
            later = i + 1 < len(stmt.branches) or stmt.else_body is not None
            lines.extend(_fmt_body(br.body, indent, guard_else=later))
        if stmt.else_body is not None:
            lines.append(pad + "else")
            lines.extend(_fmt_body(stmt.else_body, indent))
        return lines
    if isinstance(stmt, While):
        lines = [pad + f"while ({_fmt_expr(stmt.cond)})"]
        lines.extend(_fmt_body(stmt.body, indent))
        return lines
    if isinstance(stmt, DoWhile):
        lines = [pad + "do"]
        lines.extend(_fmt_body(stmt.body, indent))
        lines.append(pad + f"while ({_fmt_expr(stmt.cond)});")
        return lines
    if isinstance(stmt, For):
        init = _fmt_simple(stmt.init) if stmt.init is not None else ""
        cond = _fmt_expr(stmt.cond) if stmt.cond is not None else ""
        update = _fmt_simple(stmt.update) if stmt.update is not None else ""
        lines = [pad + f"for ({init}; {cond}; {update})"]
        lines.extend(_fmt_body(stmt.body, indent))
        return lines
    raise TypeError(f"unknown statement {stmt!r}")


def pretty_print(program: Program) -> str:
    """Render a program as parseable source text."""
    lines: list[str] = []
    for stmt in program.statements:
        lines.extend(_fmt_stmt(stmt, 0))
    return "\n".join(lines) + ("\n" if lines else "")

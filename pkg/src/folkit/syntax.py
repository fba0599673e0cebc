"""Concrete syntax: signatures, terms, formulas, parsing and printing.

Terms and formulas are immutable trees compared structurally.  Variables
are positive indices (surface form ``xN``); parameters are interned names
(surface form ``$name``) drawn from an open-ended set.  The only formula
constructors are atoms, implication and the index-shifting universal
quantifier; every piece of surface sugar (``~``, ``=``, ``forall xi``)
is expanded at parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "ParseError",
    "Signature",
    "Term",
    "Var",
    "Param",
    "App",
    "Formula",
    "Atom",
    "Implies",
    "Forall",
    "FALSE",
    "FALSE_NAME",
    "EQ_NAME",
    "parse_signature",
    "parse_term",
    "parse_formula",
    "print_term",
    "print_formula",
    "check_term",
    "check_formula",
]

FALSE_NAME = "false"
EQ_NAME = "eq"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VAR_RE = re.compile(r"x([0-9]+)")
_PARAM_RE = re.compile(r"\$([A-Za-z0-9_]+)")


class ParseError(ValueError):
    """Raised on malformed source text for any of the file formats."""


def _valid_symbol(name: str) -> bool:
    if name == "forall":
        return False
    return _NAME_RE.fullmatch(name) is not None and _VAR_RE.fullmatch(name) is None


@dataclass(frozen=True)
class Signature:
    """Function and predicate symbols with arities.

    The 0-ary predicate ``false`` is always present.  The 2-ary predicate
    ``eq`` is present exactly when ``with_equality`` is set; declaring it
    explicitly turns the flag on.
    """

    functions: dict[str, int] = field(default_factory=dict)
    predicates: dict[str, int] = field(default_factory=dict)
    with_equality: bool = False

    def __post_init__(self) -> None:
        preds = dict(self.predicates)
        if preds.setdefault(FALSE_NAME, 0) != 0:
            raise ValueError("reserved predicate 'false' must have arity 0")
        eq_arity = preds.get(EQ_NAME)
        if eq_arity is not None and eq_arity != 2:
            raise ValueError("reserved predicate 'eq' must have arity 2")
        with_eq = self.with_equality or eq_arity is not None
        if with_eq:
            preds[EQ_NAME] = 2
        fns = dict(self.functions)
        for name, arity in list(fns.items()) + list(preds.items()):
            if not _valid_symbol(name):
                raise ValueError(f"invalid symbol name {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"negative arity for {name!r}")
        overlap = set(fns) & set(preds)
        if overlap:
            raise ValueError(f"duplicate name across functions and predicates: {sorted(overlap)}")
        object.__setattr__(self, "functions", fns)
        object.__setattr__(self, "predicates", preds)
        object.__setattr__(self, "with_equality", with_eq)


class Term:
    """Base class for term nodes (Var, Param, App)."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True, slots=True)
class Param(Term):
    name: str


@dataclass(frozen=True, slots=True)
class App(Term):
    symbol: str
    args: tuple[Term, ...] = ()


class Formula:
    """Base class for formula nodes (Atom, Implies, Forall)."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    symbol: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    body: Formula


FALSE = Atom(FALSE_NAME, ())


def check_term(t: Term, sig: Signature) -> None:
    """Raise ValueError unless every applied symbol is declared with matching arity."""
    if isinstance(t, App):
        arity = sig.functions.get(t.symbol)
        if arity is None:
            raise ValueError(f"unknown function symbol {t.symbol!r}")
        if arity != len(t.args):
            raise ValueError(f"arity mismatch: {t.symbol} expects {arity}, got {len(t.args)}")
        for a in t.args:
            check_term(a, sig)


def check_formula(f: Formula, sig: Signature) -> None:
    if isinstance(f, Atom):
        arity = sig.predicates.get(f.symbol)
        if arity is None:
            raise ValueError(f"unknown predicate symbol {f.symbol!r}")
        if arity != len(f.args):
            raise ValueError(f"arity mismatch: {f.symbol} expects {arity}, got {len(f.args)}")
        for a in f.args:
            check_term(a, sig)
    elif isinstance(f, Implies):
        check_formula(f.lhs, sig)
        check_formula(f.rhs, sig)
    elif isinstance(f, Forall):
        check_formula(f.body, sig)
    else:
        raise ValueError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Printing (canonical, fully parenthesized; round-trips through the parser)

def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Param):
        return f"${t.name}"
    return f"{t.symbol}({','.join(print_term(a) for a in t.args)})"


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        if f.symbol == FALSE_NAME and not f.args:
            return FALSE_NAME
        return f"{f.symbol}({','.join(print_term(a) for a in f.args)})"
    if isinstance(f, Implies):
        return f"({print_formula(f.lhs)} -> {print_formula(f.rhs)})"
    return f"(forall {print_formula(f.body)})"


# ---------------------------------------------------------------------------
# Tokenizer shared by the term/formula grammars

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<punct>[(),=~])|(?P<param>\$[A-Za-z0-9_]+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r} at position {m.start('bad')}")
        tok = m.group("arrow") or m.group("punct") or m.group("param") or m.group("name")
        if tok is not None:
            tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.sig = sig

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")

    # -- terms --------------------------------------------------------------

    def term(self) -> Term:
        tok = self.next()
        if tok.startswith("$"):
            return Param(tok[1:])
        m = _VAR_RE.fullmatch(tok)
        if m is not None:
            index = int(m.group(1))
            if index < 1:
                raise ParseError(f"malformed variable {tok!r}: index must be positive")
            return Var(index)
        if _NAME_RE.fullmatch(tok) is None:
            raise ParseError(f"expected a term, got {tok!r}")
        arity = self.sig.functions.get(tok)
        if arity is None:
            raise ParseError(f"unknown function symbol {tok!r}")
        args = self.app_args()
        if len(args) != arity:
            raise ParseError(f"arity mismatch: {tok} expects {arity}, got {len(args)}")
        return App(tok, args)

    def app_args(self) -> tuple[Term, ...]:
        self.expect("(")
        if self.peek() == ")":
            self.next()
            return ()
        args = [self.term()]
        while self.peek() == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    # -- formulas -----------------------------------------------------------

    def formula(self) -> Formula:
        lhs = self.formula_unit()
        if self.peek() == "->":
            self.next()
            return Implies(lhs, self.formula())
        return lhs

    def formula_unit(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "~":
            self.next()
            return Implies(self.formula_unit(), FALSE)
        if tok == "(":
            self.next()
            if self.peek() == "forall":
                self.next()
                nxt = self.peek()
                m = _VAR_RE.fullmatch(nxt) if nxt is not None else None
                if m is not None:
                    self.next()
                    index = int(m.group(1))
                    if index < 1:
                        raise ParseError(f"malformed variable {nxt!r}: index must be positive")
                    body = self.formula()
                    self.expect(")")
                    from .subst import forall_var

                    return forall_var(body, index)
                body = self.formula()
                self.expect(")")
                return Forall(body)
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atom_or_equation()

    def atom_or_equation(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.startswith("$") or _VAR_RE.fullmatch(tok) is not None or tok in self.sig.functions:
            lhs = self.term()
            return self.equation(lhs)
        if _NAME_RE.fullmatch(tok) is None:
            raise ParseError(f"expected a formula, got {tok!r}")
        self.next()
        arity = self.sig.predicates.get(tok)
        if arity is None:
            raise ParseError(f"unknown predicate symbol {tok!r}")
        if tok == FALSE_NAME and self.peek() != "(":
            return FALSE
        args = self.app_args()
        if len(args) != arity:
            raise ParseError(f"arity mismatch: {tok} expects {arity}, got {len(args)}")
        return Atom(tok, args)

    def equation(self, lhs: Term) -> Formula:
        self.expect("=")
        if not self.sig.with_equality:
            raise ParseError("'=' used in a signature without equality")
        rhs = self.term()
        return Atom(EQ_NAME, (lhs, rhs))


def parse_term(text: str, sig: Signature) -> Term:
    p = _Parser(text, sig)
    t = p.term()
    p.done()
    return t


def parse_formula(text: str, sig: Signature) -> Formula:
    p = _Parser(text, sig)
    f = p.formula()
    p.done()
    return f


# ---------------------------------------------------------------------------
# Signature files

def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_signature(text: str) -> Signature:
    """Parse the signature file format.

    Lines: optional ``with-equality`` first, then ``fn NAME ARITY`` and
    ``pred NAME ARITY`` in any order; ``#`` starts a comment.
    """
    functions: dict[str, int] = {}
    predicates: dict[str, int] = {}
    with_equality = False
    seen_decl = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        if line == "with-equality":
            if seen_decl or with_equality:
                raise ParseError(f"line {lineno}: with-equality must be the first directive")
            with_equality = True
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("fn", "pred"):
            raise ParseError(f"line {lineno}: expected 'fn NAME ARITY' or 'pred NAME ARITY'")
        kind, name, arity_text = parts
        try:
            arity = int(arity_text)
        except ValueError:
            raise ParseError(f"line {lineno}: arity must be an integer, got {arity_text!r}") from None
        if arity < 0:
            raise ParseError(f"line {lineno}: negative arity for {name!r}")
        if not _valid_symbol(name):
            raise ParseError(f"line {lineno}: invalid symbol name {name!r}")
        seen_decl = True
        if name == FALSE_NAME:
            if kind != "pred" or arity != 0:
                raise ParseError(f"line {lineno}: reserved name 'false' must be a 0-ary predicate")
            continue
        if name == EQ_NAME:
            if kind != "pred" or arity != 2:
                raise ParseError(f"line {lineno}: reserved name 'eq' must be a 2-ary predicate")
            with_equality = True
            continue
        table = functions if kind == "fn" else predicates
        if name in functions or name in predicates:
            raise ParseError(f"line {lineno}: duplicate name {name!r}")
        table[name] = arity
    return Signature(functions, predicates, with_equality)

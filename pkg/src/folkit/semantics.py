"""Finite structures, evaluation, valuation audits, countermodel search.

A structure interprets every function symbol as a total table over a
finite carrier and every predicate as a relation; ``false`` is the empty
relation and ``eq``, when present, is forced to the identity.  Parameters
evaluate to themselves, so taking the parameter set to be the carrier
makes every element nameable and lets the quantifier range over carrier
elements in place of arbitrary terms.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .proof import Theory, has_params
from .subst import (
    forall_n,
    free_vars,
    instantiate,
    min_rank,
    single_subst,
    subst_formula,
)
from .syntax import (
    EQ_NAME,
    FALSE,
    FALSE_NAME,
    App,
    Atom,
    Forall,
    Formula,
    Implies,
    Param,
    ParseError,
    Signature,
    Term,
    Var,
    check_formula,
    print_formula,
    strip_comment,
)

__all__ = [
    "EvalError",
    "SearchLimit",
    "Structure",
    "AtomicValuation",
    "eval_term",
    "eval_formula",
    "ConditionReport",
    "AuditReport",
    "induced_valuation_check",
    "count_structures",
    "enumerate_structures",
    "find_countermodel",
    "herbrand_eval",
    "DEFAULT_CEILING",
    "parse_model",
    "print_model",
    "parse_env",
]

DEFAULT_CEILING = 1_000_000

_ELEMENT_RE = re.compile(r"[A-Za-z0-9_]+")

Env = tuple[str, ...]


class EvalError(ValueError):
    """Raised when evaluation preconditions fail (short environment,
    unknown symbol, parameter outside the carrier, bad Herbrand input)."""


class SearchLimit(RuntimeError):
    """Countermodel enumeration would exceed the configured ceiling."""

    def __init__(self, count: int, ceiling: int):
        super().__init__(
            f"enumeration of {count} candidates exceeds the ceiling of {ceiling}"
        )
        self.count = count
        self.ceiling = ceiling


@dataclass(frozen=True, eq=True)
class Structure:
    """Finite carrier with function tables and predicate relations.

    Use :meth:`make` to build a validated structure; it checks totality
    and arities against a signature and fills in the fixed tables for
    ``false`` and ``eq``.
    """

    domain: tuple[str, ...]
    fn_tables: dict[str, dict[tuple[str, ...], str]] = field(default_factory=dict)
    pred_tables: dict[str, frozenset[tuple[str, ...]]] = field(default_factory=dict)

    @classmethod
    def make(
        cls,
        sig: Signature,
        domain: tuple[str, ...] | list[str],
        fn_tables: dict[str, dict[tuple[str, ...], str]] | None = None,
        pred_tables: dict[str, frozenset[tuple[str, ...]] | set[tuple[str, ...]]] | None = None,
    ) -> Structure:
        domain = tuple(domain)
        if not domain:
            raise ValueError("the carrier must be nonempty")
        if len(set(domain)) != len(domain):
            raise ValueError("carrier elements must be distinct")
        for m in domain:
            if _ELEMENT_RE.fullmatch(m) is None:
                raise ValueError(f"invalid carrier element {m!r}")
        fn_tables = dict(fn_tables or {})
        pred_tables = {name: frozenset(t) for name, t in (pred_tables or {}).items()}

        for name in fn_tables:
            if name not in sig.functions:
                raise ValueError(f"table for undeclared function {name!r}")
        for name, arity in sig.functions.items():
            table = fn_tables.get(name)
            if table is None:
                raise ValueError(f"missing table for function {name!r}")
            expected = set(itertools.product(domain, repeat=arity))
            if set(table) != expected:
                raise ValueError(f"table for {name!r} is not total over the carrier")
            for value in table.values():
                if value not in domain:
                    raise ValueError(f"table for {name!r} maps outside the carrier")

        forced = {FALSE_NAME: frozenset()}
        if sig.with_equality:
            forced[EQ_NAME] = frozenset((m, m) for m in domain)
        for name, table in forced.items():
            supplied = pred_tables.get(name)
            if supplied is not None and supplied != table:
                raise ValueError(f"the table for {name!r} is fixed and cannot be overridden")
            pred_tables[name] = table
        for name, tuples in pred_tables.items():
            arity = sig.predicates.get(name)
            if arity is None:
                raise ValueError(f"table for undeclared predicate {name!r}")
            for entry in tuples:
                if len(entry) != arity or any(m not in domain for m in entry):
                    raise ValueError(f"bad entry {entry!r} in table for {name!r}")
        for name, arity in sig.predicates.items():
            pred_tables.setdefault(name, frozenset())
        return cls(domain, fn_tables, pred_tables)


def eval_term(t: Term, structure: Structure, env: Env) -> str:
    ty = type(t)
    if ty is Var:
        if t.index > len(env):
            raise EvalError(
                f"environment of length {len(env)} is too short for x{t.index}"
            )
        return env[t.index - 1]
    if ty is Param:
        if t.name not in structure.domain:
            raise EvalError(f"parameter {t.name!r} is not a carrier element")
        return t.name
    table = structure.fn_tables.get(t.symbol)
    if table is None:
        raise EvalError(f"no table for function {t.symbol!r}")
    return table[tuple(eval_term(a, structure, env) for a in t.args)]


def eval_formula(f: Formula, structure: Structure, env: Env) -> bool:
    ty = type(f)
    if ty is Atom:
        table = structure.pred_tables.get(f.symbol)
        if table is None:
            raise EvalError(f"no table for predicate {f.symbol!r}")
        return tuple(eval_term(a, structure, env) for a in f.args) in table
    if ty is Implies:
        return (not eval_formula(f.lhs, structure, env)) or eval_formula(
            f.rhs, structure, env
        )
    if ty is Forall:
        body = f.body
        return all(
            eval_formula(body, structure, (m,) + tuple(env)) for m in structure.domain
        )
    raise EvalError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Perfect-valuation audit

@dataclass
class ConditionReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class AuditReport:
    conditions: tuple[ConditionReport, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def summary(self) -> str:
        lines = []
        for k, cond in enumerate(self.conditions, 1):
            status = "PASS" if cond.ok else "FAIL"
            lines.append(f"condition {k} ({cond.name}): {status} checked={cond.checked}")
            lines.extend(f"  counterexample: {text}" for text in cond.failures[:3])
        return "\n".join(lines)


def induced_valuation_check(
    structure: Structure,
    env: Env,
    samples: list[Formula],
    terms: list[Term],
    eval_fn=eval_formula,
) -> AuditReport:
    """Audit the truth set ``{A : eval_fn(A, structure, env)}`` against the
    conditions that make a set of formulas behave as the truths of a
    structure, on the given samples.

    The falsum must be excluded; implications must be decided materially;
    a quantified sample must hold exactly when every instance over the
    supplied terms and all carrier parameters holds; in carriers with
    equality, the closed reflexivity and replacement sentences must hold
    for quantifier depths up to the largest sample rank.  ``eval_fn``
    exists so tests can audit a deliberately broken evaluator.
    """
    env = tuple(env)
    falsum = ConditionReport("falsum excluded")
    falsum.checked = 1
    if eval_fn(FALSE, structure, env):
        falsum.failures.append("false evaluates true")

    material = ConditionReport("implication is material")
    for sample in samples:
        if not isinstance(sample, Implies):
            continue
        material.checked += 1
        whole = eval_fn(sample, structure, env)
        parts = (not eval_fn(sample.lhs, structure, env)) or eval_fn(
            sample.rhs, structure, env
        )
        if whole != parts:
            material.failures.append(print_formula(sample))

    instantiation = ConditionReport("universal instantiation")
    witnesses: list[Term] = list(terms) + [Param(m) for m in structure.domain]
    for sample in samples:
        if not isinstance(sample, Forall):
            continue
        instantiation.checked += 1
        whole = eval_fn(sample, structure, env)
        body = sample.body
        bad: str | None = None
        every = True
        for t in witnesses:
            inst = subst_formula(body, instantiate(t))
            if not eval_fn(inst, structure, env):
                every = False
                bad = print_formula(inst)
                break
        if whole and not every:
            instantiation.failures.append(
                f"{print_formula(sample)} holds but instance {bad} fails"
            )
        elif every and not whole:
            instantiation.failures.append(
                f"every instance of {print_formula(sample)} holds but the quantified formula fails"
            )

    reflexivity = ConditionReport("equality reflexivity")
    replacement = ConditionReport("equality replacement")
    if EQ_NAME in structure.pred_tables:
        max_n = max((min_rank(s) for s in samples), default=0)
        for n in range(max_n + 1):
            for j in range(1, max_n + 2):
                f = forall_n(Atom(EQ_NAME, (Var(j), Var(j))), n)
                if min_rank(f) > len(env):
                    continue
                reflexivity.checked += 1
                if not eval_fn(f, structure, env):
                    reflexivity.failures.append(print_formula(f))
        for n in range(max_n + 1):
            for sample in samples:
                for x, y in ((1, 1), (1, 2), (2, 1)):
                    f = forall_n(
                        Implies(
                            Atom(EQ_NAME, (Var(x), Var(y))),
                            Implies(sample, single_subst(sample, Var(y), x)),
                        ),
                        n,
                    )
                    if min_rank(f) > len(env):
                        continue
                    replacement.checked += 1
                    if not eval_fn(f, structure, env):
                        replacement.failures.append(print_formula(f))

    return AuditReport((falsum, material, instantiation, reflexivity, replacement))


# ---------------------------------------------------------------------------
# Exhaustive structure enumeration and countermodel search

def _table_symbols(sig: Signature) -> tuple[list[tuple[str, int]], list[tuple[str, int]]]:
    preds = [
        (name, arity)
        for name, arity in sorted(sig.predicates.items())
        if name not in (FALSE_NAME, EQ_NAME)
    ]
    fns = sorted(sig.functions.items())
    return preds, fns


def count_structures(sig: Signature, size: int) -> int:
    preds, fns = _table_symbols(sig)
    count = 1
    for _, arity in preds:
        count *= 2 ** (size**arity)
    for _, arity in fns:
        count *= size ** (size**arity)
    return count


def enumerate_structures(sig: Signature, size: int):
    """Yield every structure with carrier {"0", ..., str(size-1)}.

    Deterministic order: lexicographic over the table encoding, predicate
    membership bits (per sorted predicate, per tuple) before function
    entries; ``false`` stays empty and ``eq`` stays the identity.
    """
    domain = tuple(str(i) for i in range(size))
    preds, fns = _table_symbols(sig)
    fixed: dict[str, frozenset[tuple[str, ...]]] = {FALSE_NAME: frozenset()}
    if sig.with_equality:
        fixed[EQ_NAME] = frozenset((m, m) for m in domain)
    pred_choices = []
    for name, arity in preds:
        tuples = list(itertools.product(domain, repeat=arity))
        pred_choices.append(
            [
                frozenset(itertools.compress(tuples, bits))
                for bits in itertools.product((False, True), repeat=len(tuples))
            ]
        )
    fn_choices = []
    for name, arity in fns:
        tuples = list(itertools.product(domain, repeat=arity))
        fn_choices.append(
            [
                dict(zip(tuples, values))
                for values in itertools.product(domain, repeat=len(tuples))
            ]
        )
    for pred_pick in itertools.product(*pred_choices):
        pred_tables = dict(fixed)
        pred_tables.update({name: table for (name, _), table in zip(preds, pred_pick)})
        for fn_pick in itertools.product(*fn_choices):
            fn_tables = {name: table for (name, _), table in zip(fns, fn_pick)}
            yield Structure(domain, fn_tables, pred_tables)


def find_countermodel(
    theory: Theory,
    formula: Formula,
    sig: Signature,
    max_size: int,
    ceiling: int = DEFAULT_CEILING,
) -> tuple[Structure, Env] | None:
    """Search carriers of size 1..max_size for a structure satisfying the
    theory together with an environment falsifying the formula.  Returns
    the enumeration-order-least hit, or None when the search space is
    exhausted.  Refuses searches whose candidate count exceeds the ceiling.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    if has_params(formula):
        raise ValueError("countermodel search needs a parameter-free formula")
    rank = min_rank(formula)
    total = sum(count_structures(sig, k) * k**rank for k in range(1, max_size + 1))
    if total > ceiling:
        raise SearchLimit(total, ceiling)
    sentences = [f for _, f in theory.sentences]
    for size in range(1, max_size + 1):
        for structure in enumerate_structures(sig, size):
            if all(eval_formula(s, structure, ()) for s in sentences):
                for env in itertools.product(structure.domain, repeat=rank):
                    if not eval_formula(formula, structure, env):
                        return structure, env
    return None


# ---------------------------------------------------------------------------
# Herbrand evaluation over constants

@dataclass(frozen=True)
class AtomicValuation:
    """The chosen true ground atoms; the falsum is never among them."""

    atoms: frozenset[Atom]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        for atom in self.atoms:
            if not isinstance(atom, Atom):
                raise ValueError(f"not an atomic formula: {atom!r}")
            if atom == FALSE:
                raise ValueError("the falsum cannot be a true atom")
            if free_vars(atom) or has_params(atom):
                raise ValueError(f"atom is not closed: {print_formula(atom)}")


def herbrand_eval(valuation: AtomicValuation, formula: Formula, sig: Signature) -> bool:
    """Evaluate a closed formula with atoms true exactly when chosen and
    the quantifier ranging over the signature's constant terms.  Only
    equality-free signatures whose function symbols are all constants
    have a finite term universe, so anything else is rejected."""
    if sig.with_equality:
        raise EvalError("herbrand evaluation requires a signature without equality")
    bad = [name for name, arity in sig.functions.items() if arity > 0]
    if bad:
        raise EvalError(f"non-constant function symbols have an infinite term universe: {sorted(bad)}")
    if has_params(formula) or min_rank(formula) != 0:
        raise EvalError("herbrand evaluation needs a closed, parameter-free formula")
    check_formula(formula, sig)
    for atom in valuation.atoms:
        check_formula(atom, sig)
    constants = [App(name) for name in sorted(sig.functions)]

    def go(f: Formula) -> bool:
        ty = type(f)
        if ty is Atom:
            return f in valuation.atoms
        if ty is Implies:
            return (not go(f.lhs)) or go(f.rhs)
        if not constants:
            raise EvalError("empty universe: no constants to quantify over")
        return all(go(subst_formula(f.body, instantiate(c))) for c in constants)

    return go(formula)


# ---------------------------------------------------------------------------
# Model files: "domain e1 e2 ...", "fn NAME: a b -> c", "pred NAME: a b",
# optional "env e1 e2 ...".

def parse_model(text: str, sig: Signature) -> tuple[Structure, Env | None]:
    domain: tuple[str, ...] | None = None
    fn_tables: dict[str, dict[tuple[str, ...], str]] = {}
    pred_tables: dict[str, set[tuple[str, ...]]] = {}
    env: Env | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if parts[0] == "domain":
            if domain is not None:
                raise ParseError(f"line {lineno}: duplicate domain line")
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: the carrier must be nonempty")
            domain = tuple(parts[1:])
            continue
        if domain is None:
            raise ParseError(f"line {lineno}: the domain line must come first")
        if parts[0] == "env":
            if env is not None:
                raise ParseError(f"line {lineno}: duplicate env line")
            env = tuple(parts[1:])
            for m in env:
                if m not in domain:
                    raise ParseError(f"line {lineno}: env element {m!r} not in the domain")
            continue
        if parts[0] == "fn":
            rest = line[len("fn") :].strip()
            if ":" not in rest:
                raise ParseError(f"line {lineno}: expected 'fn NAME: tuple -> element'")
            name, mapping = rest.split(":", 1)
            name = name.strip()
            if "->" not in mapping:
                raise ParseError(f"line {lineno}: expected 'fn NAME: tuple -> element'")
            args_text, value_text = mapping.rsplit("->", 1)
            args = tuple(args_text.split())
            value_parts = value_text.split()
            if len(value_parts) != 1:
                raise ParseError(f"line {lineno}: expected a single result element")
            table = fn_tables.setdefault(name, {})
            if args in table:
                raise ParseError(f"line {lineno}: duplicate entry for {name}{args}")
            table[args] = value_parts[0]
            continue
        if parts[0] == "pred":
            rest = line[len("pred") :].strip()
            if ":" not in rest:
                raise ParseError(f"line {lineno}: expected 'pred NAME: tuple'")
            name, tuple_text = rest.split(":", 1)
            pred_tables.setdefault(name.strip(), set()).add(tuple(tuple_text.split()))
            continue
        raise ParseError(f"line {lineno}: unrecognized model line {line!r}")
    if domain is None:
        raise ParseError("missing domain line")
    try:
        structure = Structure.make(sig, domain, fn_tables, pred_tables)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return structure, env


def print_model(structure: Structure, env: Env | None = None) -> str:
    lines = ["domain " + " ".join(structure.domain)]
    for name in sorted(structure.fn_tables):
        table = structure.fn_tables[name]
        for args in sorted(table):
            args_text = (" " + " ".join(args)) if args else ""
            lines.append(f"fn {name}:{args_text} -> {table[args]}")
    for name in sorted(structure.pred_tables):
        if name in (FALSE_NAME, EQ_NAME):
            continue
        for entry in sorted(structure.pred_tables[name]):
            lines.append(f"pred {name}: {' '.join(entry)}")
    if env is not None:
        lines.append(("env " + " ".join(env)).rstrip())
    return "\n".join(lines) + "\n"


def parse_env(text: str, structure: Structure) -> Env:
    env = tuple(text.split())
    for m in env:
        if m not in structure.domain:
            raise ParseError(f"env element {m!r} not in the domain")
    return env

"""Ordinary lambda-terms with their reduction strategies.

Terms are built from :class:`Var` (de Bruijn index), :class:`Free`,
:class:`Lam` and :class:`App`.  Redex positions are addressed by *paths*,
tuples over ``"b"`` (abstraction body), ``"f"`` (function) and ``"a"``
(argument).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from taylorlam._core import (
    ZERO, App, Free, Lam, LinApp, ParseError, TokenStream, Var,
    count_occurrences, fresh_name, free_names, resolve, shift,
)

Term = Union[Var, Free, Lam, App]

__all__ = [
    "Term", "Var", "Free", "Lam", "App", "ParseError", "StrategyKind",
    "HeadDecomposition", "parse", "render", "free_vars", "substitute",
    "instantiate", "head_decompose", "head_step", "left_parallel_step",
    "lambda_successors", "leftmost_step", "redex_sites", "classify",
    "is_beta_nf", "is_head_nf", "is_non_erasing_nf", "is_lambda_I",
]


class StrategyKind(enum.Enum):
    BETA = "beta"
    HEAD = "head"
    LEFT = "left"
    NON_ERASING = "non-erasing"
    ERASING = "erasing"
    SIGMA1 = "sigma1"
    EPSILON_NE = "epsilon-ne"


# --- parsing and rendering --------------------------------------------------

def parse(text: str) -> Term:
    """Parse surface syntax such as ``(\\x. x x) (\\x. x x)``."""
    ts = TokenStream(text)
    t = _parse_term(ts, [])
    ts.finish()
    return t


def _parse_term(ts: TokenStream, env: list[str]) -> Term:
    if ts.at("\\"):
        ts.next()
        names = [ts.expect_name()]
        while ts.peek()[0] == "name":
            names.append(ts.next()[1])
        ts.expect(".")
        body = _parse_term(ts, env + names)
        for name in reversed(names):
            body = Lam(body, name)
        return body
    t = _parse_atom(ts, env)
    while True:
        kind, value, _ = ts.peek()
        if kind == "name" or (kind == "sym" and value == "("):
            t = App(t, _parse_atom(ts, env))
        elif ts.at("\\"):
            # a trailing abstraction swallows the rest of the application
            t = App(t, _parse_term(ts, env))
        else:
            return t


def _parse_atom(ts: TokenStream, env: list[str]) -> Term:
    kind, value, pos = ts.next()
    if kind == "name":
        return resolve(value, env)
    if kind == "sym" and value == "(":
        t = _parse_term(ts, env)
        ts.expect(")")
        return t
    raise ParseError(f"expected a term, found {value or 'end of input'!r}", pos)


def render(t: Term) -> str:
    """Surface syntax with fresh binder names and minimal parentheses."""
    avoid = set(free_names(t))
    return _render(t, [], avoid)


def _render(t, env: list[str], avoid: set) -> str:
    if isinstance(t, Var):
        return env[len(env) - 1 - t.index]
    if isinstance(t, Free):
        return t.name
    if isinstance(t, Lam):
        name = fresh_name(t.hint, avoid | set(env))
        return f"\\{name}. {_render(t.body, env + [name], avoid)}"
    fun = _render(t.fun, env, avoid)
    if isinstance(t.fun, Lam):
        fun = f"({fun})"
    arg = _render(t.arg, env, avoid)
    if isinstance(t.arg, (Lam, App)):
        arg = f"({arg})"
    return f"{fun} {arg}"


# --- variables and substitution --------------------------------------------

def free_vars(t: Term) -> frozenset:
    return free_names(t)


def substitute(m: Term, x: str, n: Term) -> Term:
    """Capture-avoiding ``m[n/x]`` for the free name ``x``."""
    def go(t, depth):
        if isinstance(t, Free):
            return shift(n, depth) if t.name == x else t
        if isinstance(t, Var):
            return t
        if isinstance(t, Lam):
            return Lam(go(t.body, depth + 1), t.hint)
        return App(go(t.fun, depth), go(t.arg, depth))
    return go(m, 0)


def instantiate(body: Term, arg: Term) -> Term:
    """Contract the binder of ``body`` (index 0) with ``arg``."""
    def go(t, depth):
        if isinstance(t, Var):
            if t.index == depth:
                return shift(arg, depth)
            if t.index > depth:
                return Var(t.index - 1)
            return t
        if isinstance(t, Free):
            return t
        if isinstance(t, Lam):
            return Lam(go(t.body, depth + 1), t.hint)
        return App(go(t.fun, depth), go(t.arg, depth))
    return go(body, 0)


# --- head decomposition ------------------------------------------------------

@dataclass(frozen=True)
class HeadDecomposition:
    """``\\x1..xm. core N1..Nn``; ``kind`` says what sort of head ``core`` is.

    ``core`` and ``args`` live under the ``m`` binders.  For rigid terms the
    arguments are monomials (tuples).
    """

    binders: tuple
    core: object
    args: tuple
    kind: str  # "redex" | "variable" | "zero"

    @property
    def is_redex(self) -> bool:
        return self.kind == "redex"

    def reassemble(self):
        if self.kind == "zero":
            return ZERO
        t = self.core
        for a in self.args:
            t = LinApp(t, a) if isinstance(a, tuple) else App(t, a)
        for hint in reversed(self.binders):
            t = Lam(t, hint)
        return t


def head_decompose(t: Term) -> HeadDecomposition:
    binders = []
    while isinstance(t, Lam):
        binders.append(t.hint)
        t = t.body
    args = []
    while isinstance(t, App) and not isinstance(t.fun, Lam):
        args.append(t.arg)
        t = t.fun
    kind = "redex" if isinstance(t, App) else "variable"
    return HeadDecomposition(tuple(binders), t, tuple(reversed(args)), kind)


def is_head_nf(t: Term) -> bool:
    return head_decompose(t).kind == "variable"


def head_redex_path(t: Term):
    """Path to the head redex, or ``None`` for a head-normal form."""
    path = []
    while isinstance(t, Lam):
        path.append("b")
        t = t.body
    while isinstance(t, App) and not isinstance(t.fun, Lam):
        path.append("f")
        t = t.fun
    return tuple(path) if isinstance(t, App) else None


def head_step(t: Term) -> Term:
    """One step of the head-reduction function (identity on head-normal forms)."""
    path = head_redex_path(t)
    if path is None:
        return t
    return replace_at(t, path, lambda r: instantiate(r.fun.body, r.arg))


# --- redex sites and contextual relations ----------------------------------

def redex_sites(t: Term, path: tuple = ()) -> Iterator[tuple[tuple, str]]:
    """Yield ``(path, rule)`` in leftmost-outermost order.

    ``rule`` is ``"ne"`` or ``"e"`` for a non-erasing or erasing beta redex,
    and ``"sigma1"`` for the permutation rule.
    """
    if isinstance(t, Lam):
        yield from redex_sites(t.body, path + ("b",))
    elif isinstance(t, App):
        if isinstance(t.fun, Lam):
            yield path, ("ne" if count_occurrences(t.fun.body, 0) else "e")
        elif isinstance(t.fun, App) and isinstance(t.fun.fun, Lam):
            yield path, "sigma1"
        yield from redex_sites(t.fun, path + ("f",))
        yield from redex_sites(t.arg, path + ("a",))


def subterm_at(t: Term, path: tuple) -> Term:
    for step in path:
        t = t.body if step == "b" else t.fun if step == "f" else t.arg
    return t


def replace_at(t: Term, path: tuple, f: Callable[[Term], Term]) -> Term:
    if not path:
        return f(t)
    step, rest = path[0], path[1:]
    if step == "b":
        return Lam(replace_at(t.body, rest, f), t.hint)
    if step == "f":
        return App(replace_at(t.fun, rest, f), t.arg)
    return App(t.fun, replace_at(t.arg, rest, f))


def contract(redex: Term, rule: str) -> Term:
    if rule == "sigma1":
        # ((\x.M) N) P -> (\x. M P) N; the shift keeps P's variables outside x
        inner = redex.fun
        return App(Lam(App(inner.fun.body, shift(redex.arg, 1)), inner.fun.hint), inner.arg)
    return instantiate(redex.fun.body, redex.arg)


_RULES = {
    StrategyKind.BETA: ("ne", "e"),
    StrategyKind.NON_ERASING: ("ne",),
    StrategyKind.ERASING: ("e",),
    StrategyKind.SIGMA1: ("sigma1",),
    StrategyKind.EPSILON_NE: ("ne", "sigma1"),
}


def steps(t: Term, kind: StrategyKind) -> list[tuple[tuple, str, Term]]:
    """All one-step reducts with their redex path and rule, leftmost first."""
    if kind not in _RULES:
        raise ValueError(f"{kind.value} is a deterministic strategy, not a relation")
    rules = _RULES[kind]
    return [(p, r, replace_at(t, p, lambda x, r=r: contract(x, r)))
            for p, r in redex_sites(t) if r in rules]


def lambda_successors(t: Term, kind: StrategyKind) -> frozenset:
    return frozenset(r for _, _, r in steps(t, kind))


def leftmost_step(t: Term, kind: StrategyKind = StrategyKind.BETA):
    """The leftmost-outermost reduct under ``kind``, or ``None`` at a normal form."""
    rules = _RULES[kind]
    for p, r in redex_sites(t):
        if r in rules:
            return replace_at(t, p, lambda x: contract(x, r))
    return None


def is_beta_nf(t: Term) -> bool:
    return not any(r != "sigma1" for _, r in redex_sites(t))


def is_non_erasing_nf(t: Term) -> bool:
    return not any(r == "ne" for _, r in redex_sites(t))


def is_lambda_I(t: Term) -> bool:
    if isinstance(t, Lam):
        return count_occurrences(t.body, 0) > 0 and is_lambda_I(t.body)
    if isinstance(t, App):
        return is_lambda_I(t.fun) and is_lambda_I(t.arg)
    return True


def left_parallel_step(t: Term) -> Term:
    """One step of the left-parallel reduction function."""
    if is_beta_nf(t):
        return t
    d = head_decompose(t)
    if d.kind == "redex":
        return head_step(t)
    return HeadDecomposition(
        d.binders, d.core, tuple(left_parallel_step(a) for a in d.args), d.kind
    ).reassemble()


@dataclass(frozen=True)
class Classification:
    is_beta_nf: bool
    is_head_nf: bool
    is_non_erasing_nf: bool
    is_lambda_I: bool
    is_closed: bool


def classify(t: Term) -> Classification:
    return Classification(
        is_beta_nf=is_beta_nf(t),
        is_head_nf=is_head_nf(t),
        is_non_erasing_nf=is_non_erasing_nf(t),
        is_lambda_I=is_lambda_I(t),
        is_closed=not free_names(t),
    )

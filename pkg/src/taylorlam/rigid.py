"""Rigid resource terms: argument lists are ordered and substitution is positional.

A rigid expression is a term built from ``LinApp`` nodes, or a monomial
(a Python tuple of terms); ``ZERO`` is the absorbing empty result.  Use the smart constructors
:func:`lam`, :func:`linapp` and :func:`mono`; they collapse anything that
contains ``ZERO`` to ``ZERO``.

Surface syntax: ``<c>(a1, ..., an)``, ``()``, ``\\x. a`` and ``0``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from taylorlam._core import (
    ZERO, Free, Lam, LinApp, ParseError, TokenStream, Var, count_occurrences,
    fresh_name, free_names, resolve, shift,
)
from taylorlam.syntax import HeadDecomposition

__all__ = [
    "ZERO", "lam", "linapp", "mono", "parse_rigid", "render_rigid",
    "occurrences", "rigid_substitute", "rigid_beta", "r_successors", "r_steps",
    "r_normal_form", "is_r_normal", "rigid_head_decompose", "rigid_head_step",
    "rigid_left_parallel_step", "rigid_sigma1_successors", "is_positive_rigid",
    "rigid_steps", "rigid_erasing_successors", "rigid_non_erasing_successors",
]


def lam(body, hint: str = "x"):
    return ZERO if body is ZERO else Lam(body, hint)


def linapp(fun, args):
    if fun is ZERO or args is ZERO or any(a is ZERO for a in args):
        return ZERO
    return LinApp(fun, tuple(args))


def mono(items):
    items = tuple(items)
    return ZERO if any(a is ZERO for a in items) else items


# --- surface syntax ---------------------------------------------------------

def parse_rigid(text: str):
    """Parse a rigid term, or a monomial when the text starts with ``(``."""
    ts = TokenStream(text)
    if ts.at("("):
        e = _parse_mono(ts, [])
    else:
        e = _parse_term(ts, [])
    ts.finish()
    return e


def _parse_term(ts: TokenStream, env: list[str]):
    kind, value, pos = ts.peek()
    if ts.at("\\"):
        ts.next()
        names = [ts.expect_name()]
        while ts.peek()[0] == "name":
            names.append(ts.next()[1])
        ts.expect(".")
        body = _parse_term(ts, env + names)
        for name in reversed(names):
            body = lam(body, name)
        return body
    if kind == "num":
        ts.next()
        if value != "0":
            raise ParseError(f"unexpected number {value!r}", pos)
        return ZERO
    if kind == "name":
        ts.next()
        return resolve(value, env)
    if ts.at("<"):
        ts.next()
        fun = _parse_term(ts, env)
        ts.expect(">")
        return linapp(fun, _parse_mono(ts, env))
    raise ParseError(f"expected a rigid term, found {value or 'end of input'!r}", pos)


def _parse_mono(ts: TokenStream, env: list[str]):
    ts.expect("(")
    items = []
    if not ts.at(")"):
        items.append(_parse_term(ts, env))
        while ts.at(","):
            ts.next()
            items.append(_parse_term(ts, env))
    ts.expect(")")
    return mono(items)


def render_rigid(e) -> str:
    avoid = set(free_names(e)) if e is not ZERO else set()
    if isinstance(e, tuple):
        return _render_mono(e, [], avoid)
    return _render(e, [], avoid)


def _render(e, env, avoid) -> str:
    if e is ZERO:
        return "0"
    if isinstance(e, Var):
        return env[len(env) - 1 - e.index]
    if isinstance(e, Free):
        return e.name
    if isinstance(e, Lam):
        name = fresh_name(e.hint, avoid | set(env))
        return f"\\{name}. {_render(e.body, env + [name], avoid)}"
    return f"<{_render(e.fun, env, avoid)}>{_render_mono(e.args, env, avoid)}"


def _render_mono(m, env, avoid) -> str:
    if m is ZERO:
        return "0"
    return "(" + ", ".join(_render(a, env, avoid) for a in m) + ")"


# --- substitution -----------------------------------------------------------

def occurrences(e, x) -> int:
    """Free occurrences of ``x`` (a free name, or a de Bruijn index) in ``e``."""
    if e is ZERO:
        return 0
    return count_occurrences(e, x)


def _positional(e, target, resources, lower: bool):
    it = iter(resources)

    def go(e, depth):
        if isinstance(e, Var):
            if isinstance(target, int):
                if e.index == target + depth:
                    return shift(next(it), depth)
                if lower and e.index > target + depth:
                    return Var(e.index - 1)
            return e
        if isinstance(e, Free):
            return shift(next(it), depth) if e.name == target else e
        if isinstance(e, Lam):
            return lam(go(e.body, depth + 1), e.hint)
        if isinstance(e, LinApp):
            fun = go(e.fun, depth)
            return linapp(fun, tuple(go(a, depth) for a in e.args))
        if isinstance(e, tuple):
            return mono(go(a, depth) for a in e)
        return e

    return go(e, 0)


def rigid_substitute(e, x, resources):
    """``e[resources/x]``: positional when the counts agree, ``ZERO`` otherwise.

    Occurrences of ``x`` are consumed left to right, so the function part of
    a linear application takes a prefix of ``resources``.
    """
    if resources is ZERO or e is ZERO:
        return ZERO
    if occurrences(e, x) != len(resources):
        return ZERO
    return _positional(e, x, resources, lower=False)


def rigid_beta(body, args):
    """Contract ``<\\x. body>args``."""
    if args is ZERO or occurrences(body, 0) != len(args):
        return ZERO
    return _positional(body, 0, args, lower=True)


# --- contextual one-step relations -----------------------------------------

def _r_base(e):
    if isinstance(e, LinApp) and isinstance(e.fun, Lam):
        return rigid_beta(e.fun.body, e.args)
    return None


def _sigma1_base(e):
    # <<\x.a>b>q -> <\x.<a>q>b
    if isinstance(e, LinApp) and isinstance(e.fun, LinApp) and isinstance(e.fun.fun, Lam):
        inner = e.fun
        body = linapp(inner.fun.body, shift(e.args, 1))
        return linapp(lam(body, inner.fun.hint), inner.args)
    return None


def _contextual(e, base, path=()) -> Iterator[tuple[tuple, object]]:
    """Yield ``(path, reduct)`` for every redex of ``base``, outermost first.

    Path steps: ``"b"`` body, ``"f"`` function, ``i`` (int) argument position.
    """
    if isinstance(e, tuple):
        for i, a in enumerate(e):
            for p, r in _contextual(a, base, path + (i,)):
                yield p, mono(e[:i] + (r,) + e[i + 1:])
        return
    r = base(e)
    if r is not None:
        yield path, r
    if isinstance(e, Lam):
        for p, r in _contextual(e.body, base, path + ("b",)):
            yield p, lam(r, e.hint)
    elif isinstance(e, LinApp):
        for p, r in _contextual(e.fun, base, path + ("f",)):
            yield p, linapp(r, e.args)
        for i, a in enumerate(e.args):
            for p, r in _contextual(a, base, path + (i,)):
                yield p, linapp(e.fun, e.args[:i] + (r,) + e.args[i + 1:])


def r_steps(e) -> list[tuple[tuple, object]]:
    return list(_contextual(e, _r_base))


def r_successors(e) -> frozenset:
    return frozenset(r for _, r in _contextual(e, _r_base))


def rigid_sigma1_successors(e) -> frozenset:
    return frozenset(r for _, r in _contextual(e, _sigma1_base))


def _erasing_base(x):
    if isinstance(x, LinApp) and isinstance(x.fun, Lam) and not occurrences(x.fun.body, 0):
        return rigid_beta(x.fun.body, x.args)
    return None


def _non_erasing_base(x):
    if isinstance(x, LinApp) and isinstance(x.fun, Lam) and occurrences(x.fun.body, 0):
        return rigid_beta(x.fun.body, x.args)
    return None


def _eps_base(x):
    r = _non_erasing_base(x)
    return r if r is not None else _sigma1_base(x)


_RIGID_BASES = {
    "beta": _r_base, "non-erasing": _non_erasing_base, "erasing": _erasing_base,
    "sigma1": _sigma1_base, "epsilon-ne": _eps_base,
}


def rigid_steps(e, kind: str = "beta") -> list[tuple[tuple, object]]:
    """``(path, reduct)`` for every redex of ``kind``, outermost first.

    ``kind`` is one of beta, non-erasing, erasing, sigma1, epsilon-ne.
    """
    if kind not in _RIGID_BASES:
        raise ValueError(f"unknown rigid relation {kind!r}")
    return list(_contextual(e, _RIGID_BASES[kind]))


def rigid_erasing_successors(e) -> frozenset:
    return frozenset(r for _, r in _contextual(e, _erasing_base))


def rigid_non_erasing_successors(e) -> frozenset:
    return frozenset(r for _, r in _contextual(e, _non_erasing_base))


def is_r_normal(e) -> bool:
    return next(_contextual(e, _r_base), None) is None


@lru_cache(maxsize=1 << 16)
def r_normal_form(e):
    """The unique normal form under rigid reduction, computed innermost-first."""
    if isinstance(e, tuple):
        return mono(r_normal_form(a) for a in e)
    if isinstance(e, Lam):
        return lam(r_normal_form(e.body), e.hint)
    if isinstance(e, LinApp):
        fun = r_normal_form(e.fun)
        args = mono(r_normal_form(a) for a in e.args)
        t = linapp(fun, args)
        if t is not ZERO and isinstance(fun, Lam):
            return r_normal_form(rigid_beta(fun.body, args))
        return t
    return e


# --- head and left-parallel strategies -------------------------------------

def rigid_head_decompose(e) -> HeadDecomposition:
    if e is ZERO:
        return HeadDecomposition((), ZERO, (), "zero")
    binders = []
    while isinstance(e, Lam):
        binders.append(e.hint)
        e = e.body
    args = []
    while isinstance(e, LinApp) and not isinstance(e.fun, Lam):
        args.append(e.args)
        e = e.fun
    kind = "redex" if isinstance(e, LinApp) else "variable"
    return HeadDecomposition(tuple(binders), e, tuple(reversed(args)), kind)


def _rebuild(binders, core, args):
    t = core
    for a in args:
        t = linapp(t, a)
    for hint in reversed(binders):
        t = lam(t, hint)
    return t


def rigid_head_step(e):
    """One step of the head resource reduction; the identity on head-normal forms."""
    if isinstance(e, tuple):
        return mono(rigid_head_step(a) for a in e)
    d = rigid_head_decompose(e)
    if d.kind != "redex":
        return e
    return _rebuild(d.binders, rigid_beta(d.core.fun.body, d.core.args), d.args)


def rigid_left_parallel_step(e):
    """One step of the left-parallel resource reduction."""
    if isinstance(e, tuple):
        return mono(rigid_left_parallel_step(a) for a in e)
    if is_r_normal(e):
        return e
    d = rigid_head_decompose(e)
    if d.kind == "redex":
        return rigid_head_step(e)
    return _rebuild(d.binders, d.core, [rigid_left_parallel_step(a) for a in d.args])


def is_positive_rigid(e) -> bool:
    """No empty monomial anywhere in argument position (and not ``ZERO``)."""
    if e is ZERO:
        return False
    if isinstance(e, tuple):
        return all(is_positive_rigid(a) for a in e)
    if isinstance(e, Lam):
        return is_positive_rigid(e.body)
    if isinstance(e, LinApp):
        return bool(e.args) and is_positive_rigid(e.fun) and all(
            is_positive_rigid(a) for a in e.args)
    return True

"""Multiset resource terms and finite formal sums with natural coefficients.

Resource terms are ``Var``, ``Free``, ``Lam`` and ``MApp`` nodes; a bag is a
tuple kept in canonical order, so structural equality is multiset equality.
Reduction maps a term to a :class:`Sum`; the empty sum is zero.

Surface syntax: ``<s>[t1, ..., tn]``, ``[]``, ``\\x. s``; sums print as
``2*s + t``.
"""
from __future__ import annotations

import enum
import itertools
from functools import lru_cache
from typing import Iterable, Iterator

from taylorlam._core import (
    Free, Lam, MApp, ParseError, TokenStream, Var, bag_of, count_occurrences,
    fresh_name, free_names, key_of, resolve, shift,
)

__all__ = [
    "Sum", "ResStrategyKind", "parse_resource", "parse_sum", "render_resource",
    "render_sum", "n_linear_substitute", "res_beta", "partial_successors",
    "res_successors", "res_steps", "sum_successors", "partial_normal_form",
    "nf_eps_nonerasing", "parallel_successors", "sum_parallel_successors",
    "is_positive_res",
]


class Sum:
    """An immutable finite formal sum ``c1*e1 + ... + cn*en`` with ``ci >= 1``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, items: Iterable[tuple[object, int]] = ()):
        terms: dict = {}
        for e, c in items:
            if c < 0:
                raise ValueError("coefficients are natural numbers")
            if c:
                terms[e] = terms.get(e, 0) + c
        self._terms = terms
        self._hash = None

    @classmethod
    def of(cls, e, coefficient: int = 1) -> "Sum":
        return cls(((e, coefficient),))

    def items(self) -> list[tuple[object, int]]:
        return sorted(self._terms.items(), key=lambda kv: key_of(kv[0]))

    def support(self) -> list:
        return [e for e, _ in self.items()]

    def coefficient(self, e) -> int:
        return self._terms.get(e, 0)

    def mass(self) -> int:
        return sum(self._terms.values())

    def __contains__(self, e) -> bool:
        return e in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[object, int]]:
        return iter(self.items())

    def __add__(self, other: "Sum") -> "Sum":
        return Sum(itertools.chain(self._terms.items(), other._terms.items()))

    def __mul__(self, k: int) -> "Sum":
        return Sum((e, c * k) for e, c in self._terms.items())

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Sum) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Sum({self.items()!r})"

    def replace_one(self, e, sigma: "Sum") -> "Sum":
        """Rewrite one copy of the support element ``e`` to ``sigma``."""
        terms = dict(self._terms)
        terms[e] -= 1
        return Sum(itertools.chain(terms.items(), sigma._terms.items()))

    def map(self, f) -> "Sum":
        """Linear extension of ``f`` (which returns a ``Sum``)."""
        out: dict = {}
        for e, c in self._terms.items():
            for x, k in f(e)._terms.items():
                out[x] = out.get(x, 0) + c * k
        return Sum(out.items())


ZERO_SUM = Sum()


def lam_sum(sigma: Sum, hint: str = "x") -> Sum:
    return Sum((Lam(e, hint), c) for e, c in sigma._terms.items())


def app_sum(funs: Sum, bags: Sum) -> Sum:
    return Sum((MApp(f, b), c * k)
               for f, c in funs._terms.items() for b, k in bags._terms.items())


def bag_sum(parts: list[Sum]) -> Sum:
    """Multilinear product of sums of terms into a sum of bags."""
    acc = {(): 1}
    for part in parts:
        nxt: dict = {}
        for prefix, c in acc.items():
            for t, k in part._terms.items():
                key = prefix + (t,)
                nxt[key] = nxt.get(key, 0) + c * k
        acc = nxt
        if not acc:
            return ZERO_SUM
    return Sum((bag_of(b), c) for b, c in acc.items())


def _replace_in_bag(bag: tuple, i: int, sigma: Sum) -> Sum:
    rest = bag[:i] + bag[i + 1:]
    return Sum((bag_of(rest + (t,)), c) for t, c in sigma._terms.items())


# --- surface syntax ---------------------------------------------------------

def parse_resource(text: str):
    """Parse a resource term, or a bag when the text starts with ``[``."""
    ts = TokenStream(text)
    e = _parse_bag(ts, []) if ts.at("[") else _parse_term(ts, [])
    ts.finish()
    return e


def parse_sum(text: str) -> Sum:
    ts = TokenStream(text)
    kind, value, _ = ts.peek()
    if kind == "num" and value == "0" and ts.tokens[ts.i + 1][0] == "eof":
        return ZERO_SUM
    items = []
    while True:
        c = 1
        kind, value, _ = ts.peek()
        if kind == "num":
            ts.next()
            ts.expect("*")
            c = int(value)
        e = _parse_bag(ts, []) if ts.at("[") else _parse_term(ts, [])
        items.append((e, c))
        if not ts.at("+"):
            break
        ts.next()
    ts.finish()
    return Sum(items)


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
            body = Lam(body, name)
        return body
    if kind == "name":
        ts.next()
        return resolve(value, env)
    if ts.at("<"):
        ts.next()
        fun = _parse_term(ts, env)
        ts.expect(">")
        return MApp(fun, _parse_bag(ts, env))
    raise ParseError(f"expected a resource term, found {value or 'end of input'!r}", pos)


def _parse_bag(ts: TokenStream, env: list[str]) -> tuple:
    ts.expect("[")
    items = []
    if not ts.at("]"):
        items.append(_parse_term(ts, env))
        while ts.at(","):
            ts.next()
            items.append(_parse_term(ts, env))
    ts.expect("]")
    return bag_of(items)


def render_resource(e) -> str:
    avoid = set(free_names(e))
    if isinstance(e, tuple):
        return _render_bag(e, [], avoid)
    return _render(e, [], avoid)


def render_sum(sigma: Sum) -> str:
    if not sigma:
        return "0"
    parts = []
    for e, c in sigma:
        text = render_resource(e)
        parts.append(text if c == 1 else f"{c}*{text}")
    return " + ".join(parts)


def _render(e, env, avoid) -> str:
    if isinstance(e, Var):
        return env[len(env) - 1 - e.index]
    if isinstance(e, Free):
        return e.name
    if isinstance(e, Lam):
        name = fresh_name(e.hint, avoid | set(env))
        return f"\\{name}. {_render(e.body, env + [name], avoid)}"
    return f"<{_render(e.fun, env, avoid)}>{_render_bag(e.bag, env, avoid)}"


def _render_bag(bag, env, avoid) -> str:
    return "[" + ", ".join(_render(t, env, avoid) for t in bag) + "]"


# --- n-linear substitution ---------------------------------------------------

def _splits(indices: tuple, counts: list[int]) -> Iterator[list[tuple]]:
    """Ordered partitions of ``indices`` into blocks of the given sizes."""
    if not counts:
        if not indices:
            yield []
        return
    first, rest = counts[0], counts[1:]
    for block in itertools.combinations(indices, first):
        remaining = tuple(i for i in indices if i not in block)
        for tail in _splits(remaining, rest):
            yield [block] + tail


def _nl(e, target, us: tuple, depth: int, lower: bool) -> Sum:
    n = len(us)
    if isinstance(e, Var):
        if isinstance(target, int) and e.index == target + depth:
            return Sum.of(shift(us[0], depth)) if n == 1 else ZERO_SUM
        if n:
            return ZERO_SUM
        if lower and isinstance(target, int) and e.index > target + depth:
            return Sum.of(Var(e.index - 1))
        return Sum.of(e)
    if isinstance(e, Free):
        if e.name == target:
            return Sum.of(shift(us[0], depth)) if n == 1 else ZERO_SUM
        return Sum.of(e) if n == 0 else ZERO_SUM
    if isinstance(e, Lam):
        return lam_sum(_nl(e.body, target, us, depth + 1, lower), e.hint)
    parts = (e.fun,) + e.bag if isinstance(e, MApp) else e
    counts = [count_occurrences(p, target, depth) for p in parts]
    if sum(counts) != n:
        return ZERO_SUM
    out: dict = {}
    for split in _splits(tuple(range(n)), counts):
        sums = [_nl(p, target, tuple(us[i] for i in block), depth, lower)
                for p, block in zip(parts, split)]
        if not all(sums):
            continue
        if isinstance(e, MApp):
            piece = app_sum(sums[0], bag_sum(sums[1:]))
        else:
            piece = bag_sum(sums)
        for x, c in piece._terms.items():
            out[x] = out.get(x, 0) + c
    return Sum(out.items())


def n_linear_substitute(e, x, bag) -> Sum:
    """The n-linear substitution of the bag for ``x`` (a free name or an index).

    Zero unless ``x`` occurs exactly ``len(bag)`` times; otherwise the sum over
    all ways of distributing the bag over the occurrences.
    """
    return _nl(e, x, tuple(bag), 0, lower=False)


def res_beta(body, bag) -> Sum:
    """Contract ``<\\x. body>bag``."""
    return _nl(body, 0, tuple(bag), 0, lower=True)


# --- one-step relations -----------------------------------------------------

class ResStrategyKind(enum.Enum):
    PARTIAL = "partial"
    PARTIAL_SIGMA1 = "sigma1"
    PARTIAL_NON_ERASING = "non-erasing"
    PARTIAL_ERASING = "erasing"
    EPSILON_NE = "epsilon-ne"


def _is_beta_redex(e) -> bool:
    return isinstance(e, MApp) and isinstance(e.fun, Lam)


def _sigma1(e) -> Sum:
    inner = e.fun
    body = MApp(inner.fun.body, shift(e.bag, 1))
    return Sum.of(MApp(Lam(body, inner.fun.hint), inner.bag))


def _base(kind: ResStrategyKind):
    def base(e):
        if _is_beta_redex(e):
            erasing = count_occurrences(e.fun.body, 0) == 0
            if (kind is ResStrategyKind.PARTIAL
                    or (kind is ResStrategyKind.PARTIAL_ERASING and erasing)
                    or (kind in (ResStrategyKind.PARTIAL_NON_ERASING,
                                 ResStrategyKind.EPSILON_NE) and not erasing)):
                return "e" if erasing else "ne", res_beta(e.fun.body, e.bag)
        elif (isinstance(e, MApp) and isinstance(e.fun, MApp) and isinstance(e.fun.fun, Lam)
              and kind in (ResStrategyKind.PARTIAL_SIGMA1, ResStrategyKind.EPSILON_NE)):
            return "sigma1", _sigma1(e)
        return None
    return base


def _contextual(e, base, path=()) -> Iterator[tuple[tuple, str, Sum]]:
    if isinstance(e, tuple):
        for i, t in enumerate(e):
            if i and e[i - 1] == t:
                continue
            for p, rule, sigma in _contextual(t, base, path + (i,)):
                yield p, rule, _replace_in_bag(e, i, sigma)
        return
    hit = base(e)
    if hit is not None:
        yield path, hit[0], hit[1]
    if isinstance(e, Lam):
        for p, rule, sigma in _contextual(e.body, base, path + ("b",)):
            yield p, rule, lam_sum(sigma, e.hint)
    elif isinstance(e, MApp):
        for p, rule, sigma in _contextual(e.fun, base, path + ("f",)):
            yield p, rule, app_sum(sigma, Sum.of(e.bag))
        for p, rule, sigma in _contextual(e.bag, base, path):
            yield p, rule, app_sum(Sum.of(e.fun), sigma)


def res_steps(e, kind: ResStrategyKind) -> list[tuple[tuple, str, Sum]]:
    """``(path, rule, reduct)`` for every redex of ``kind``, outermost first."""
    return list(_contextual(e, _base(kind)))


@lru_cache(maxsize=1 << 15)
def res_successors(e, kind: ResStrategyKind = ResStrategyKind.PARTIAL) -> frozenset:
    return frozenset(sigma for _, _, sigma in _contextual(e, _base(kind)))


def partial_successors(e) -> frozenset:
    return res_successors(e, ResStrategyKind.PARTIAL)


def sum_successors(sigma: Sum, kind: ResStrategyKind) -> frozenset:
    """One step on a sum: rewrite a single copy of one support element."""
    return frozenset(sigma.replace_one(e, tau)
                     for e in sigma.support() for tau in res_successors(e, kind))


# --- normal forms -------------------------------------------------------------

def _linear(fn):
    def wrapper(e):
        if isinstance(e, Sum):
            return e.map(fn)
        return fn(e)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.cache_clear = fn.cache_clear
    return wrapper


@lru_cache(maxsize=1 << 16)
def _partial_nf(e) -> Sum:
    if isinstance(e, tuple):
        return bag_sum([_partial_nf(t) for t in e])
    if isinstance(e, Lam):
        return lam_sum(_partial_nf(e.body), e.hint)
    if isinstance(e, MApp):
        shapes = app_sum(_partial_nf(e.fun), _partial_nf(e.bag))
        return shapes.map(
            lambda t: res_beta(t.fun.body, t.bag).map(_partial_nf)
            if _is_beta_redex(t) else Sum.of(t))
    return Sum.of(e)


@lru_cache(maxsize=1 << 16)
def _eps_ne_nf(e) -> Sum:
    if isinstance(e, tuple):
        return bag_sum([_eps_ne_nf(t) for t in e])
    if isinstance(e, Lam):
        return lam_sum(_eps_ne_nf(e.body), e.hint)
    if isinstance(e, MApp):
        return app_sum(_eps_ne_nf(e.fun), _eps_ne_nf(e.bag)).map(_eps_ne_fire)
    return Sum.of(e)


def _eps_ne_fire(t) -> Sum:
    # t has normal function and bag; only the root can be a redex
    if _is_beta_redex(t) and count_occurrences(t.fun.body, 0):
        return res_beta(t.fun.body, t.bag).map(_eps_ne_nf)
    if isinstance(t.fun, MApp) and isinstance(t.fun.fun, Lam):
        return _sigma1(t).map(_eps_ne_nf)
    return Sum.of(t)


partial_normal_form = _linear(_partial_nf)
partial_normal_form.__doc__ = "The unique ->d normal form (a sum, possibly zero)."
nf_eps_nonerasing = _linear(_eps_ne_nf)
nf_eps_nonerasing.__doc__ = "The unique non-erasing epsilon normal form (possibly zero)."


# --- parallel reduction -------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def parallel_successors(e) -> frozenset:
    """Every sum reachable from ``e`` in one parallel non-erasing epsilon step."""
    if isinstance(e, tuple):
        choices = [parallel_successors(t) for t in e]
        return frozenset(bag_sum(list(c)) for c in itertools.product(*choices))
    if isinstance(e, Lam):
        return frozenset(lam_sum(s, e.hint) for s in parallel_successors(e.body))
    if not isinstance(e, MApp):
        return frozenset((Sum.of(e),))
    funs = parallel_successors(e.fun)
    bags = parallel_successors(e.bag)
    out = {app_sum(f, b) for f in funs for b in bags}
    if _is_beta_redex(e) and count_occurrences(e.fun.body, 0):
        for body in parallel_successors(e.fun.body):
            for b in bags:
                out.add(_bilinear(body, b, lambda s, u: res_beta(s, u)))
    if isinstance(e.fun, MApp) and isinstance(e.fun.fun, Lam):
        inner = e.fun
        for body in parallel_successors(inner.fun.body):
            for t in parallel_successors(inner.bag):
                for q in bags:
                    out.add(_sigma1_sum(body, t, q, inner.fun.hint))
    return frozenset(out)


def _bilinear(left: Sum, right: Sum, f) -> Sum:
    acc = ZERO_SUM
    for a, c in left:
        for b, k in right:
            acc = acc + f(a, b) * (c * k)
    return acc


def _sigma1_sum(body: Sum, t: Sum, q: Sum, hint: str) -> Sum:
    return Sum((MApp(Lam(MApp(s, shift(qb, 1)), hint), tb), c * k * j)
               for s, c in body for tb, k in t for qb, j in q)


def sum_parallel_successors(sigma: Sum, limit: int = 20000) -> frozenset:
    """Parallel step on a sum: every copy of every support element steps
    independently (``limit`` caps the number of combinations tried)."""
    choices = []
    for e, c in sigma.items():
        options = sorted(parallel_successors(e), key=lambda s: [key_of(x) for x in s.support()])
        choices.append(itertools.combinations_with_replacement(options, c))
    out = set()
    for combo in itertools.islice(itertools.product(*choices), limit):
        acc = ZERO_SUM
        for copies in combo:
            for tau in copies:
                acc = acc + tau
        out.add(acc)
    return frozenset(out)


def is_positive_res(e) -> bool:
    """No empty bag anywhere in argument position."""
    if isinstance(e, tuple):
        return all(is_positive_res(t) for t in e)
    if isinstance(e, Lam):
        return is_positive_res(e.body)
    if isinstance(e, MApp):
        return bool(e.bag) and is_positive_res(e.fun) and all(
            is_positive_res(t) for t in e.bag)
    return True

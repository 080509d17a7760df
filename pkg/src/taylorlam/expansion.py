"""Bounded enumeration of rigid and multiset approximants of lambda-terms.

Both expansions are infinite, so every enumerator takes a :class:`Budget`
and yields approximants by increasing size, ties broken by the canonical
structural key.  The module also holds the constructive inverses used for
anti-reduction: given an approximant of a reduct, rebuild an approximant of
the redex side that reduces to it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from taylorlam._core import (
    ZERO, App, Free, Lam, LinApp, MApp, Var, bag_of, count_occurrences, key_of,
    shift,
)
from taylorlam.resource import Sum, _sigma1, app_sum, bag_sum, lam_sum, res_beta
from taylorlam.rigid import lam, linapp, mono, occurrences, rigid_beta, rigid_substitute
from taylorlam.syntax import head_decompose, head_redex_path, is_beta_nf

__all__ = [
    "Budget", "rigid_expand", "iter_rigid_expand", "is_rigid_approximant",
    "taylor_support_expand", "iter_taylor_expand", "is_taylor_approximant",
    "represents", "forget", "rigid_substitution_image", "invert_substitution",
    "rigid_preimage", "resource_preimage", "rigid_fire_at", "fire_mirrored",
    "left_preimage", "minimal_rigid", "unit_rigid", "unit_taylor",
]


@dataclass(frozen=True)
class Budget:
    """Limits for approximant search, plus fuel for reductions."""

    max_size: int = 10
    max_count: int = 200
    max_steps: int = 200

    def __post_init__(self):
        for name in ("max_size", "max_count", "max_steps"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    def to_dict(self) -> dict:
        return {"max_size": self.max_size, "max_count": self.max_count,
                "max_steps": self.max_steps}


# --- enumeration ---------------------------------------------------------------

class _Enumerator:
    """Approximants of exact size, memoized per (subterm, size)."""

    def __init__(self, multiset: bool):
        self.multiset = multiset
        self.exact: dict = {}
        self.bags: dict = {}
        self.pools: dict = {}

    def of_size(self, m, n: int) -> list:
        key = (m, n)
        hit = self.exact.get(key)
        if hit is not None:
            return hit
        if isinstance(m, (Var, Free)):
            out = [m] if n == 1 else []
        elif isinstance(m, Lam):
            out = [Lam(b, m.hint) for b in self.of_size(m.body, n - 1)] if n > 1 else []
        else:
            out = []
            node = MApp if self.multiset else LinApp
            for k in range(1, n):
                funs = self.of_size(m.fun, k)
                if not funs:
                    continue
                args = self.monomials(m.arg, n - 1 - k)
                out.extend(node(f, a) for f in funs for a in args)
        self.exact[key] = out
        return out

    def monomials(self, q, n: int) -> list:
        if self.multiset:
            return self._multisets(q, n, 0)
        key = (q, n)
        hit = self.bags.get(key)
        if hit is not None:
            return hit
        out = [()] if n == 0 else []
        for k in range(1, n + 1):
            heads = self.of_size(q, k)
            if heads:
                out.extend((h,) + rest for h in heads for rest in self.monomials(q, n - k))
        self.bags[key] = out
        return out

    def _pool(self, q, n: int) -> list:
        key = (q, n)
        pool = self.pools.get(key)
        if pool is None:
            pool = [t for k in range(1, n + 1) for t in self.of_size(q, k)]
            self.pools[key] = pool
        return pool

    def _multisets(self, q, n: int, start: int) -> list:
        key = (q, n, start)
        hit = self.bags.get(key)
        if hit is not None:
            return hit
        if n == 0:
            out = [()]
        else:
            out = []
            pool = self._pool(q, n)
            for i in range(start, len(pool)):
                t = pool[i]
                if t.size <= n:
                    out.extend((t,) + rest for rest in self._multisets(q, n - t.size, i))
        self.bags[key] = out
        return out


def _iter_expand(m, max_size: int, multiset: bool) -> Iterator:
    enum = _Enumerator(multiset)
    for n in range(1, max_size + 1):
        yield from sorted(enum.of_size(m, n), key=key_of)


def iter_rigid_expand(m, max_size: int) -> Iterator:
    """Lazily yield the rigid approximants of ``m`` up to ``max_size``."""
    return _iter_expand(m, max_size, multiset=False)


def iter_taylor_expand(m, max_size: int) -> Iterator:
    return _iter_expand(m, max_size, multiset=True)


def rigid_expand(m, budget: Budget) -> list:
    """Rigid approximants of size at most ``max_size``, capped at ``max_count``."""
    return list(itertools.islice(iter_rigid_expand(m, budget.max_size), budget.max_count))


def taylor_support_expand(m, budget: Budget) -> list:
    """Multiset approximants of size at most ``max_size``, capped at ``max_count``.

    Without truncation this is the deduplicated image of :func:`rigid_expand`
    under :func:`forget`; it is enumerated directly so that the cap counts
    distinct multiset terms.
    """
    return list(itertools.islice(iter_taylor_expand(m, budget.max_size), budget.max_count))


def _is_approximant(a, m, node) -> bool:
    if isinstance(m, (Var, Free)):
        return a == m
    if isinstance(m, Lam):
        return isinstance(a, Lam) and _is_approximant(a.body, m.body, node)
    if not isinstance(a, node):
        return False
    args = a.args if node is LinApp else a.bag
    return _is_approximant(a.fun, m.fun, node) and all(
        _is_approximant(c, m.arg, node) for c in args)


def is_rigid_approximant(a, m) -> bool:
    """``a`` belongs to the rigid expansion of ``m``."""
    return a is not ZERO and _is_approximant(a, m, LinApp)


def is_taylor_approximant(s, m) -> bool:
    """``s`` belongs to the Taylor support of ``m``; bag order never matters."""
    return _is_approximant(s, m, MApp)


# --- representation -------------------------------------------------------------

def forget(a):
    """The multiset term represented by the rigid expression ``a``."""
    if a is ZERO:
        raise ValueError("zero represents no resource term")
    if isinstance(a, tuple):
        return bag_of(forget(c) for c in a)
    if isinstance(a, Lam):
        return Lam(forget(a.body), a.hint)
    if isinstance(a, LinApp):
        return MApp(forget(a.fun), tuple(forget(c) for c in a.args))
    return a


def represents(a, s) -> bool:
    """``a`` is one ordered reading of ``s``."""
    if a is ZERO:
        return False
    if isinstance(a, tuple):
        if not isinstance(s, tuple) or len(a) != len(s):
            return False
        return _match(list(a), list(s))
    if isinstance(a, (Var, Free)):
        return a == s
    if isinstance(a, Lam):
        return isinstance(s, Lam) and represents(a.body, s.body)
    if isinstance(a, LinApp):
        return isinstance(s, MApp) and represents(a.fun, s.fun) and represents(a.args, s.bag)
    return False


def _match(items: list, targets: list) -> bool:
    # find a permutation pairing every item with a target it represents
    if not items:
        return not targets
    first, rest = items[0], items[1:]
    for i, t in enumerate(targets):
        if (i == 0 or targets[i - 1] != t) and represents(first, t):
            if _match(rest, targets[:i] + targets[i + 1:]):
                return True
    return False


# --- substitution images ----------------------------------------------------------

def rigid_substitution_image(m, x: str, n, budget: Budget) -> list:
    """Non-zero ``a[bs/x]`` for ``a`` approximating ``m``, ``bs`` a list of
    approximants of ``n``, keeping results of size at most ``max_size``."""
    pool = list(iter_rigid_expand(n, budget.max_size))
    out = set()
    for a in iter_rigid_expand(m, budget.max_size):
        k = occurrences(a, x)
        room = budget.max_size - a.size + k
        for seq in _sequences(pool, k, room):
            r = rigid_substitute(a, x, seq)
            if r is not ZERO and r.size <= budget.max_size:
                out.add(r)
    return sorted(out, key=lambda e: (e.size, key_of(e)))[:budget.max_count]


def _sequences(pool: list, k: int, room: int) -> Iterator[tuple]:
    if k == 0:
        yield ()
        return
    for b in pool:
        if b.size <= room:
            for rest in _sequences(pool, k - 1, room - b.size):
                yield (b,) + rest


# --- constructive inversion -------------------------------------------------------

def invert_substitution(p, b, target, depth: int = 0):
    """Split an approximant ``b`` of ``p[q/target]`` into ``(a, resources)``.

    ``a`` approximates ``p`` and ``resources`` approximate ``q``, listed in the
    left-to-right order of the occurrences of ``target`` in ``a``; substituting
    them back gives ``b``.  ``target`` is a free name, or ``0`` for the binder
    of a contracted redex (indices above it were lowered in ``b``).
    """
    found: list = []

    def go(p, b, depth):
        if isinstance(p, Var):
            if isinstance(target, int) and p.index == target + depth:
                found.append(shift(b, -depth))
            return p
        if isinstance(p, Free):
            if p.name == target:
                found.append(shift(b, -depth))
            return p
        if isinstance(p, Lam):
            return Lam(go(p.body, b.body, depth + 1), p.hint)
        fun = go(p.fun, b.fun, depth)
        if isinstance(b, LinApp):
            return LinApp(fun, tuple(go(p.arg, c, depth) for c in b.args))
        return MApp(fun, tuple(go(p.arg, c, depth) for c in b.bag))

    a = go(p, b, depth)
    return a, tuple(found)


def _app_parts(b):
    return (b.fun, b.args, LinApp) if isinstance(b, LinApp) else (b.fun, b.bag, MApp)


def _preimage(m, path: tuple, b, base):
    if not path:
        return base(m, b)
    step, rest = path[0], path[1:]
    if step == "b":
        return Lam(_preimage(m.body, rest, b.body, base), b.hint)
    fun, args, node = _app_parts(b)
    if step == "f":
        return node(_preimage(m.fun, rest, fun, base), args)
    return node(fun, tuple(_preimage(m.arg, rest, c, base) for c in args))


def rigid_preimage(m, path: tuple, b):
    """An approximant of ``m`` whose redex copies at ``path`` fire to ``b``.

    ``m`` has a beta-redex at ``path`` and ``b`` approximates the reduct.
    """
    def base(m, b):
        a, res = invert_substitution(m.fun.body, b, 0)
        return LinApp(Lam(a, m.fun.hint), res)
    return _preimage(m, path, b, base)


def resource_preimage(m, path: tuple, rule: str, t):
    """Multiset counterpart of :func:`rigid_preimage`; ``rule`` may be ``"sigma1"``."""
    def base(m, t):
        if rule == "sigma1":
            # t approximates (\x. M P) N; rebuild an approximant of ((\x.M) N) P
            inner = t.fun.body
            return MApp(MApp(Lam(inner.fun, t.fun.hint), t.bag), shift(inner.bag, -1))
        a, res = invert_substitution(m.fun.body, t, 0)
        return MApp(Lam(a, m.fun.hint), res)
    return _preimage(m, path, t, base)


def rigid_fire_at(a, path: tuple):
    """Contract every copy of the redex at ``path`` (a lambda-level path)."""
    if a is ZERO:
        return ZERO
    if not path:
        return rigid_beta(a.fun.body, a.args)
    step, rest = path[0], path[1:]
    if step == "b":
        return lam(rigid_fire_at(a.body, rest), a.hint)
    if step == "f":
        return linapp(rigid_fire_at(a.fun, rest), a.args)
    return linapp(a.fun, mono(rigid_fire_at(c, rest) for c in a.args))


def fire_mirrored(s, path: tuple, rule: str) -> tuple[Sum, bool]:
    """Fire every copy in ``s`` of the redex at the lambda-level ``path``.

    Returns the resulting sum and whether any copy was an erasing redex.
    """
    if not path:
        if rule == "sigma1":
            return _sigma1(s), False
        erasing = count_occurrences(s.fun.body, 0) == 0
        return res_beta(s.fun.body, s.bag), erasing
    step, rest = path[0], path[1:]
    if step == "b":
        sigma, e = fire_mirrored(s.body, rest, rule)
        return lam_sum(sigma, s.hint), e
    if step == "f":
        sigma, e = fire_mirrored(s.fun, rest, rule)
        return app_sum(sigma, Sum.of(s.bag)), e
    parts, erased = [], False
    for c in s.bag:
        sigma, e = fire_mirrored(c, rest, rule)
        parts.append(sigma)
        erased = erased or e
    return app_sum(Sum.of(s.fun), bag_sum(parts)), erased


def left_preimage(m, b):
    """An approximant ``a`` of ``m`` whose left-parallel step gives ``b``.

    ``b`` approximates the left-parallel step of ``m``.
    """
    if is_beta_nf(m):
        return b
    path = head_redex_path(m)
    if path is not None:
        return rigid_preimage(m, path, b)
    d = head_decompose(m)
    for _ in d.binders:
        b = b.body
    monos = []
    while isinstance(b, LinApp):
        monos.append(b.args)
        b = b.fun
    monos.reverse()
    t = d.core
    for q, args in zip(d.args, monos):
        t = LinApp(t, tuple(left_preimage(q, c) for c in args))
    for hint in reversed(d.binders):
        t = Lam(t, hint)
    return t


# --- canonical small approximants -------------------------------------------------

def minimal_rigid(m):
    """The approximant taking every argument list empty."""
    if isinstance(m, Lam):
        return Lam(minimal_rigid(m.body), m.hint)
    if isinstance(m, App):
        return LinApp(minimal_rigid(m.fun), ())
    return m


def unit_rigid(m):
    """The approximant taking exactly one copy of every argument (positive)."""
    if isinstance(m, Lam):
        return Lam(unit_rigid(m.body), m.hint)
    if isinstance(m, App):
        return LinApp(unit_rigid(m.fun), (unit_rigid(m.arg),))
    return m


def unit_taylor(m):
    if isinstance(m, Lam):
        return Lam(unit_taylor(m.body), m.hint)
    if isinstance(m, App):
        return MApp(unit_taylor(m.fun), (unit_taylor(m.arg),))
    return m

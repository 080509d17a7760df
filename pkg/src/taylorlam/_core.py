"""Nameless term nodes shared by every calculus in the package.

Bound variables are de Bruijn indices, free variables are interned names.
Binder names survive only as rendering hints and never take part in
equality, so alpha-equivalent terms are equal Python values.

Nodes compute their hash and canonical sort key once, at construction.
"""
from __future__ import annotations

import re
import sys
import threading
from dataclasses import dataclass, field
from typing import Iterable, Union

_FREE_LOCK = threading.Lock()
_FREE_NAMES: dict[str, int] = {}


def intern_free(name: str) -> str:
    """Register ``name`` in the append-only free-name table."""
    with _FREE_LOCK:
        if name not in _FREE_NAMES:
            _FREE_NAMES[name] = len(_FREE_NAMES)
    return sys.intern(name)


def free_name_table() -> dict[str, int]:
    with _FREE_LOCK:
        return dict(_FREE_NAMES)


@dataclass(frozen=True, slots=True)
class Var:
    index: int
    _hash: int = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", (1, self.index))
        object.__setattr__(self, "_hash", hash(self._key))

    def __hash__(self):
        return self._hash

    @property
    def size(self) -> int:
        return 1


@dataclass(frozen=True, slots=True)
class Free:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "name", intern_free(self.name))
        object.__setattr__(self, "_key", (2, self.name))
        object.__setattr__(self, "_hash", hash(self._key))

    def __hash__(self):
        return self._hash

    @property
    def size(self) -> int:
        return 1


@dataclass(frozen=True, slots=True)
class Lam:
    body: object
    hint: str = field(default="x", compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "size", 1 + size_of(self.body))
        object.__setattr__(self, "_key", (3, key_of(self.body)))
        object.__setattr__(self, "_hash", hash((3, hash(self.body))))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class App:
    """Ordinary lambda application."""

    fun: object
    arg: object
    size: int = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "size", 1 + self.fun.size + self.arg.size)
        object.__setattr__(self, "_key", (4, self.fun._key, self.arg._key))
        object.__setattr__(self, "_hash", hash((4, self.fun._hash, self.arg._hash)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class LinApp:
    """Rigid linear application ``<fun>(a1, ..., an)``; ``args`` keeps its order."""

    fun: object
    args: tuple
    size: int = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(
            self, "size", 1 + self.fun.size + sum(a.size for a in self.args))
        object.__setattr__(
            self, "_key", (5, self.fun._key, tuple(a._key for a in self.args)))
        object.__setattr__(
            self, "_hash", hash((5, self.fun._hash, tuple(a._hash for a in self.args))))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class MApp:
    """Multiset application ``<fun>[t1, ..., tn]``; ``bag`` is stored sorted."""

    fun: object
    bag: tuple
    size: int = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bag", bag_of(self.bag))
        object.__setattr__(
            self, "size", 1 + self.fun.size + sum(t.size for t in self.bag))
        object.__setattr__(
            self, "_key", (6, self.fun._key, tuple(t._key for t in self.bag)))
        object.__setattr__(
            self, "_hash", hash((6, self.fun._hash, tuple(t._hash for t in self.bag))))

    def __hash__(self):
        return self._hash


class _Zero:
    """The absorbing zero of the rigid calculus (also the empty sum's witness)."""

    __slots__ = ()
    _instance = None
    size = 0
    _key = (0,)

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()

Node = Union[Var, Free, Lam, App, LinApp, MApp, _Zero]


def size_of(e) -> int:
    if isinstance(e, tuple):
        return sum(size_of(x) for x in e)
    return e.size


def key_of(e) -> tuple:
    if isinstance(e, tuple):
        return (7, tuple(key_of(x) for x in e))
    return e._key


def bag_of(items: Iterable) -> tuple:
    return tuple(sorted(items, key=key_of))


def shift(e, d: int, cutoff: int = 0):
    """Add ``d`` to every loose de Bruijn index >= ``cutoff``."""
    if d == 0:
        return e
    if isinstance(e, Var):
        if e.index >= cutoff:
            if e.index + d < 0:
                raise ValueError("negative de Bruijn index after shift")
            return Var(e.index + d)
        return e
    if isinstance(e, Lam):
        return Lam(shift(e.body, d, cutoff + 1), e.hint)
    if isinstance(e, App):
        return App(shift(e.fun, d, cutoff), shift(e.arg, d, cutoff))
    if isinstance(e, LinApp):
        return LinApp(shift(e.fun, d, cutoff), tuple(shift(a, d, cutoff) for a in e.args))
    if isinstance(e, MApp):
        return MApp(shift(e.fun, d, cutoff), tuple(shift(t, d, cutoff) for t in e.bag))
    if isinstance(e, tuple):
        return tuple(shift(x, d, cutoff) for x in e)
    return e  # Free, ZERO


def children(e) -> tuple:
    if isinstance(e, Lam):
        return (e.body,)
    if isinstance(e, App):
        return (e.fun, e.arg)
    if isinstance(e, LinApp):
        return (e.fun,) + e.args
    if isinstance(e, MApp):
        return (e.fun,) + e.bag
    if isinstance(e, tuple):
        return e
    return ()


def count_occurrences(e, target, depth: int = 0) -> int:
    """Free occurrences of ``target`` (a de Bruijn index or a free name)."""
    if isinstance(e, Var):
        return int(isinstance(target, int) and e.index == target + depth)
    if isinstance(e, Free):
        return int(e.name == target)
    if isinstance(e, Lam):
        return count_occurrences(e.body, target, depth + 1)
    return sum(count_occurrences(c, target, depth) for c in children(e))


def free_names(e) -> frozenset:
    if isinstance(e, Free):
        return frozenset((e.name,))
    out = frozenset()
    for c in children(e):
        out |= free_names(c)
    return out


def free_name_order(e) -> list:
    """Free names in first-occurrence (left-to-right) order."""
    seen: dict[str, None] = {}

    def walk(x):
        if isinstance(x, Free):
            seen.setdefault(x.name)
        for c in children(x):
            walk(c)

    walk(e)
    return list(seen)


def loose_indices(e, depth: int = 0) -> frozenset:
    if isinstance(e, Var):
        return frozenset((e.index - depth,)) if e.index >= depth else frozenset()
    if isinstance(e, Lam):
        return loose_indices(e.body, depth + 1)
    out = frozenset()
    for c in children(e):
        out |= loose_indices(c, depth)
    return out


def fresh_name(hint: str, avoid) -> str:
    name = hint
    while name in avoid:
        name += "'"
    return name


def subterms(e):
    """Pre-order iterator over all term nodes below (and including) ``e``."""
    stack = [e]
    while stack:
        x = stack.pop()
        if not isinstance(x, tuple):
            yield x
        stack.extend(reversed(children(x)))


# --- surface-syntax lexing -------------------------------------------------

NAME_RE = r"[a-zA-Z][a-zA-Z0-9_']*"
_TOKEN_RE = re.compile(
    rf"\s*(?:(?P<name>{NAME_RE})|(?P<num>[0-9]+)|(?P<sym>[\\λ.()<>\[\],+*]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split ``text`` into ``(kind, value, position)`` triples."""
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        kind, v, _ = self.peek()
        return kind == "sym" and (v == value or (value == "\\" and v == "λ"))

    def expect(self, value: str):
        kind, v, pos = self.next()
        if not (kind == "sym" and (v == value or (value == "\\" and v == "λ"))):
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def expect_name(self) -> str:
        kind, v, pos = self.next()
        if kind != "name":
            raise ParseError(f"expected a name, found {v or 'end of input'!r}", pos)
        return v

    def finish(self):
        kind, v, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {v!r}", pos)


def resolve(name: str, env: list[str]):
    """Map a surface name to ``Var`` (innermost binder wins) or ``Free``."""
    for i in range(len(env) - 1, -1, -1):
        if env[i] == name:
            return Var(len(env) - 1 - i)
    return Free(name)

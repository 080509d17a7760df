"""Normalization analyses through approximants, with independent oracles.

:func:`analyze` is a semi-decision: it answers Yes with a checked witness
approximant or Unknown.  :func:`oracle` reduces the lambda-term directly and
can also answer No when it finds a cycle.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field, replace

from taylorlam._core import (
    App, Free, Lam, LinApp, MApp, Var, free_name_order, subterms,
)
from taylorlam.expansion import (
    Budget, is_rigid_approximant, is_taylor_approximant, iter_rigid_expand,
    iter_taylor_expand, minimal_rigid, resource_preimage, rigid_preimage,
    unit_rigid, unit_taylor,
)
from taylorlam.resource import (
    Sum, is_positive_res, nf_eps_nonerasing, render_resource, render_sum,
)
from taylorlam.rigid import (
    ZERO, is_positive_rigid, r_normal_form, render_rigid, rigid_head_step,
    rigid_left_parallel_step,
)
from taylorlam.syntax import (
    StrategyKind, contract, head_decompose, head_redex_path, head_step,
    instantiate, is_lambda_I, lambda_successors, left_parallel_step,
    redex_sites, render, replace_at,
)

__all__ = [
    "Outcome", "Property", "Verdict", "analyze", "oracle", "in_S",
    "check_conservation", "close_term", "render_any", "reduction_chain",
    "strong_witness",
]


# oracles give up (Unknown) once a reduct grows past this many nodes
TERM_SIZE_LIMIT = 2000


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Property(enum.Enum):
    HEAD = "head"
    SOLVABLE = "solvable"
    BETA = "beta"
    STRONG = "strong"


@dataclass(frozen=True)
class Verdict:
    property: str
    outcome: Outcome
    witness: object = None
    trace: tuple = ()
    budget: dict = field(default_factory=dict)
    reason: str = ""

    def __post_init__(self):
        if self.outcome is Outcome.YES and self.witness is None:
            raise ValueError("a Yes verdict needs a witness")

    def to_dict(self) -> dict:
        kind, text = witness_text(self.witness)
        return {
            "property": self.property,
            "outcome": self.outcome.value,
            "witness": text,
            "witness_kind": kind,
            "trace": list(self.trace),
            "budget": dict(self.budget),
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _kind_of(e) -> str:
    for node in subterms(e):
        if isinstance(node, LinApp):
            return "rigid"
        if isinstance(node, MApp):
            return "resource"
    return "lambda"


def render_any(e) -> str:
    """Surface syntax for any value the package produces."""
    if isinstance(e, Sum):
        return render_sum(e)
    if e is ZERO:
        return "0"
    kind = _kind_of(e)
    if kind == "rigid":
        return render_rigid(e)
    if kind == "resource":
        return render_resource(e)
    return render(e)


def witness_text(w) -> tuple:
    if w is None:
        return None, None
    if isinstance(w, (Var, Free, Lam, App, LinApp, MApp, Sum)) or w is ZERO:
        return ("sum" if isinstance(w, Sum) else _kind_of(w)), render_any(w)
    return "text", str(w)


# --- closing open terms -----------------------------------------------------------

def _abstract(t, name: str, depth: int = 0):
    if isinstance(t, Free):
        return Var(depth) if t.name == name else t
    if isinstance(t, Var):
        return Var(t.index + 1) if t.index >= depth else t
    if isinstance(t, Lam):
        return Lam(_abstract(t.body, name, depth + 1), t.hint)
    return App(_abstract(t.fun, name, depth), _abstract(t.arg, name, depth))


def close_term(m):
    """Abstract the free names of ``m`` in order of first occurrence."""
    for name in reversed(free_name_order(m)):
        m = Lam(_abstract(m, name), name)
    return m


# --- reduction chains ----------------------------------------------------------------

def _first_site(t, rules):
    for path, rule in redex_sites(t):
        if rule in rules:
            return path, rule
    return None


def reduction_chain(m, rules, fuel: int):
    """Leftmost-outermost chain using ``rules``; ``None`` if fuel runs out.

    Returns ``[(term, path, rule), ...]`` and the final normal form.
    """
    chain = []
    t = m
    for _ in range(fuel + 1):
        site = _first_site(t, rules)
        if site is None:
            return chain, t
        if len(chain) == fuel:
            return None
        path, rule = site
        chain.append((t, path, rule))
        t = replace_at(t, path, lambda r: contract(r, rule))
    return None


def _head_chain(m, fuel: int):
    chain = []
    t = m
    for _ in range(fuel):
        path = head_redex_path(t)
        if path is None:
            return chain, t
        chain.append((t, path, "beta"))
        t = head_step(t)
    return (chain, t) if head_redex_path(t) is None else None


def _anti_reduce_rigid(chain, b):
    for t, path, _ in reversed(chain):
        b = rigid_preimage(t, path, b)
    return b


def _anti_reduce_resource(chain, s):
    for t, path, rule in reversed(chain):
        s = resource_preimage(t, path, rule, s)
    return s


def strong_witness(m, fuel: int):
    """A positive Taylor approximant with a non-zero normal form, built by
    anti-reduction along a non-erasing epsilon chain, or ``None``."""
    found = reduction_chain(m, ("ne", "sigma1"), fuel)
    if found is None:
        return None
    chain, nf = found
    s = _anti_reduce_resource(chain, unit_taylor(nf))
    if is_taylor_approximant(s, m) and is_positive_res(s) and nf_eps_nonerasing(s):
        return s, chain, nf
    return None


# --- analyze ---------------------------------------------------------------------------

def _rigid_trace(a, step) -> tuple:
    out = [render_rigid(a)]
    for _ in range(a.size + 1):
        nxt = step(a)
        if nxt == a:
            break
        a = nxt
        out.append(render_rigid(a))
    return tuple(out)


def _head_ok(a) -> bool:
    return r_normal_form(a) is not ZERO


def _beta_ok(a) -> bool:
    nf = r_normal_form(a)
    return nf is not ZERO and is_positive_rigid(nf)


def analyze(m, prop, budget: Budget | None = None, guided: bool = True) -> Verdict:
    """Search the expansion of ``m`` for an approximant certifying ``prop``.

    Approximants are tried in enumeration order.  When the budget is spent
    and ``guided`` is set, a witness is also constructed from a bounded
    lambda-level reduction to normal form, followed back by anti-reduction;
    every witness is checked before it is returned.
    """
    prop = Property(prop)
    budget = budget or Budget()
    if prop is Property.SOLVABLE:
        closed = close_term(m)
        v = analyze(closed, Property.HEAD, budget, guided)
        return replace(v, property=prop.value,
                       reason=f"closure {render(closed)}: {v.reason}")

    if prop is Property.STRONG:
        tried = 0
        for s in itertools.islice(iter_taylor_expand(m, budget.max_size), budget.max_count):
            tried += 1
            if not is_positive_res(s):
                continue
            nf = nf_eps_nonerasing(s)
            if nf:
                return Verdict(prop.value, Outcome.YES, s,
                               (render_resource(s), render_sum(nf)), budget.to_dict(),
                               f"positive approximant with non-zero normal form ({tried} tried)")
    else:
        ok = _head_ok if prop is Property.HEAD else _beta_ok
        step = rigid_head_step if prop is Property.HEAD else rigid_left_parallel_step
        tried = 0
        for a in itertools.islice(iter_rigid_expand(m, budget.max_size), budget.max_count):
            tried += 1
            if ok(a):
                return Verdict(prop.value, Outcome.YES, a, _rigid_trace(a, step),
                               budget.to_dict(), f"enumerated approximant ({tried} tried)")

    if guided:
        try:
            v = _guided(m, prop, budget)
        except RecursionError:
            v = None
        if v is not None:
            return v
    return Verdict(prop.value, Outcome.UNKNOWN, None, (), budget.to_dict(),
                   f"budget exhausted after {tried} approximants")


def _guided(m, prop: Property, budget: Budget):
    fuel = budget.max_steps
    if prop is Property.STRONG:
        found = strong_witness(m, fuel)
        if found is None:
            return None
        s, chain, nf = found
        trace = tuple(render(t) for t, _, _ in chain) + (render(nf), render_resource(s))
        return Verdict(prop.value, Outcome.YES, s, trace, budget.to_dict(),
                       f"anti-reduction along {len(chain)} non-erasing epsilon steps")
    if prop is Property.HEAD:
        found = _head_chain(m, fuel)
        if found is None:
            return None
        chain, hnf = found
        a = _anti_reduce_rigid(chain, minimal_rigid(hnf))
        if not (is_rigid_approximant(a, m) and _head_ok(a)):
            return None
        step = rigid_head_step
    else:
        found = reduction_chain(m, ("ne", "e"), fuel)
        if found is None:
            return None
        chain, nf = found
        a = _anti_reduce_rigid(chain, unit_rigid(nf))
        if not (is_rigid_approximant(a, m) and _beta_ok(a)):
            return None
        step = rigid_left_parallel_step
    return Verdict(prop.value, Outcome.YES, a, _rigid_trace(a, step), budget.to_dict(),
                   f"anti-reduction along {len(chain)} beta steps")


# --- oracles ------------------------------------------------------------------------

def _iterate(m, step, done, fuel: int, prop: str) -> Verdict:
    seen = {m}
    trace = [render(m)]
    t = m
    for _ in range(fuel):
        if done(t):
            return Verdict(prop, Outcome.YES, t, tuple(trace), {"fuel": fuel},
                           f"normal form after {len(trace) - 1} steps")
        t = step(t)
        if t.size > TERM_SIZE_LIMIT:
            return Verdict(prop, Outcome.UNKNOWN, None, tuple(trace), {"fuel": fuel},
                           f"reduct exceeds {TERM_SIZE_LIMIT} nodes")
        trace.append(render(t))
        if t in seen:
            return Verdict(prop, Outcome.NO, t, tuple(trace), {"fuel": fuel},
                           "deterministic strategy revisits a term")
        seen.add(t)
    if done(t):
        return Verdict(prop, Outcome.YES, t, tuple(trace), {"fuel": fuel},
                       f"normal form after {len(trace) - 1} steps")
    return Verdict(prop, Outcome.UNKNOWN, None, tuple(trace), {"fuel": fuel}, "fuel exhausted")


def _strong_oracle(m, fuel: int) -> Verdict:
    prop = Property.STRONG.value
    colour = {m: 1}
    stack = [(m, iter(sorted(lambda_successors(m, StrategyKind.BETA), key=_key)))]
    normal = None
    while stack:
        t, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            if not colour.get(t) == 2 and not lambda_successors(t, StrategyKind.BETA):
                normal = normal or t
            colour[t] = 2
            stack.pop()
            continue
        c = colour.get(nxt)
        if c == 1:
            path = tuple(render(x) for x, _ in stack) + (render(nxt),)
            return Verdict(prop, Outcome.NO, nxt, path, {"fuel": fuel},
                           "cycle in the beta-reduction graph")
        if c == 2:
            continue
        if len(colour) >= fuel or nxt.size > TERM_SIZE_LIMIT:
            return Verdict(prop, Outcome.UNKNOWN, None, (), {"fuel": fuel},
                           f"graph exceeds {fuel} terms")
        colour[nxt] = 1
        stack.append((nxt, iter(sorted(lambda_successors(nxt, StrategyKind.BETA), key=_key))))
    return Verdict(prop, Outcome.YES, normal, (), {"fuel": fuel},
                   f"finite acyclic graph of {len(colour)} terms")


def _key(t):
    return t._key


def oracle(m, prop, fuel: int = 1000) -> Verdict:
    """Decide ``prop`` by reducing ``m`` itself (three-valued)."""
    prop = Property(prop)
    try:
        return _oracle(m, prop, fuel)
    except RecursionError:
        return Verdict(prop.value, Outcome.UNKNOWN, None, (), {"fuel": fuel},
                       "term grew beyond the recursion limit")


def _oracle(m, prop: Property, fuel: int) -> Verdict:
    if prop is Property.HEAD:
        return _iterate(m, head_step, lambda t: head_redex_path(t) is None, fuel, prop.value)
    if prop is Property.BETA:
        return _iterate(m, left_parallel_step,
                        lambda t: _first_site(t, ("ne", "e")) is None, fuel, prop.value)
    if prop is Property.STRONG:
        return _strong_oracle(m, fuel)
    v = _oracle(close_term(m), Property.HEAD, fuel)
    return replace(v, property=prop.value)


# --- the inductive set S ------------------------------------------------------------

class _OutOfFuel(Exception):
    pass


def in_S(m, fuel: int = 2000) -> Verdict:
    """Membership in the inductive set S, clause by clause.

    Each term matches exactly one clause and the premises are conjunctive,
    so meeting a term again while it is still being decided means it has no
    finite derivation.
    """
    memo: dict = {}
    active: set = set()
    left = [fuel]

    def go(t) -> bool:
        if t in memo:
            return memo[t]
        if t in active:
            return False
        left[0] -= 1
        if left[0] < 0:
            raise _OutOfFuel
        active.add(t)
        d = head_decompose(t)
        if d.kind == "variable":
            premises = list(d.args)
        else:
            redex = d.core
            rest = instantiate(redex.fun.body, redex.arg)
            for a in d.args:
                rest = App(rest, a)
            premises = [redex.arg, rest]
        result = all(go(p) for p in premises)
        active.discard(t)
        memo[t] = result
        return result

    try:
        result = go(m)
    except (_OutOfFuel, RecursionError):
        return Verdict("S", Outcome.UNKNOWN, None, (), {"fuel": fuel}, "fuel exhausted")
    used = fuel - left[0]
    if result:
        return Verdict("S", Outcome.YES, m, (), {"fuel": fuel},
                       f"derivation with {used} clause applications")
    return Verdict("S", Outcome.NO, None, (), {"fuel": fuel},
                   "a premise depends on itself")


# --- conservation ------------------------------------------------------------------

def check_conservation(m, fuel: int = 2000) -> Verdict:
    """Compare the normalization and strong-normalization oracles on a lambda-I term.

    Yes: both definite and equal.  No: definite disagreement.
    Unknown: at least one oracle ran out of fuel.
    """
    if not is_lambda_I(m):
        raise ValueError(f"not a lambda-I term: {render(m)}")
    beta = oracle(m, Property.BETA, fuel)
    strong = oracle(m, Property.STRONG, fuel)
    summary = f"beta {beta.outcome.value}, strong {strong.outcome.value}"
    if Outcome.UNKNOWN in (beta.outcome, strong.outcome):
        outcome = Outcome.UNKNOWN
    elif beta.outcome is strong.outcome:
        outcome = Outcome.YES
    else:
        outcome = Outcome.NO
    return Verdict("conservation", outcome, summary, (), {"fuel": fuel}, summary)

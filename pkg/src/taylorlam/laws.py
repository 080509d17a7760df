"""Seeded property checks for the metatheory, with bounded statements.

Every law checks a bounded version of its statement on ``cases`` random
instances drawn from a :class:`random.Random` seeded by the law name and
seed.  Failing instances are shrunk to a smallest failing subterm.  Some cases do not meet a law's hypothesis; those count as
*vacuous*.  Cases that hit an exploration cap count as *inconclusive*.
Neither kind is a failure.
"""
from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass, field

from taylorlam._core import (
    App, Free, Lam, LinApp, MApp, Var, count_occurrences, loose_indices, subterms,
)
from taylorlam.expansion import (
    Budget, fire_mirrored, invert_substitution, is_rigid_approximant,
    is_taylor_approximant, left_preimage, resource_preimage, rigid_expand,
    rigid_fire_at, rigid_preimage, rigid_substitution_image,
    taylor_support_expand,
)
from taylorlam.resource import (
    ResStrategyKind, Sum, is_positive_res, n_linear_substitute, nf_eps_nonerasing,
    parallel_successors, partial_successors, res_successors,
    sum_parallel_successors, sum_successors,
)
from taylorlam.rigid import (
    ZERO, is_positive_rigid, is_r_normal, parse_rigid, r_normal_form, r_successors,
    render_rigid, rigid_erasing_successors, rigid_substitute, rigid_head_step, rigid_left_parallel_step,
    rigid_non_erasing_successors, rigid_sigma1_successors,
)
from taylorlam.syntax import (
    contract, head_redex_path, head_step, is_beta_nf, left_parallel_step,
    redex_sites, replace_at, substitute,
)

__all__ = ["LawReport", "check_law", "LAWS", "ACCEPTANCE_LAWS", "random_lambda",
           "random_lambda_I", "random_rigid", "random_resource",
           "CONFLUENCE_COUNTEREXAMPLE", "rigid_normal_forms"]

FREE_NAMES = ("x", "y", "z")
LAMBDA_BUDGET = Budget(max_size=9, max_count=40)
SMALL_BUDGET = Budget(max_size=7, max_count=12)
GRAPH_CAP = 3000


@dataclass
class LawReport:
    law: str
    cases: int
    seed: int
    size_bound: int
    failures: list = field(default_factory=list)
    vacuous: int = 0
    inconclusive: int = 0
    elapsed: float = 0.0
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"law": self.law, "cases": self.cases, "seed": self.seed,
                "size_bound": self.size_bound, "passed": self.passed,
                "failures": list(self.failures), "vacuous": self.vacuous,
                "inconclusive": self.inconclusive, "details": list(self.details)}

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.failures)})"
        return (f"{self.law}: {status}; {self.cases} cases, {self.vacuous} vacuous, "
                f"{self.inconclusive} inconclusive, seed {self.seed}, "
                f"size bound {self.size_bound}")


class Vacuous(Exception):
    """The instance does not satisfy the law's hypothesis."""


class Inconclusive(Exception):
    """An exploration cap was hit before the statement could be checked."""


# --- random generators ---------------------------------------------------------

def _leaf(rng, depth):
    if depth and rng.random() < 0.7:
        return Var(rng.randrange(depth))
    return Free(rng.choice(FREE_NAMES))


def _split(rng, total: int, parts: int) -> list[int]:
    """Random composition of ``total`` into ``parts`` positive integers."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_lambda(rng, size: int, depth: int = 0, lambda_I: bool = False):
    """A random lambda-term of exactly ``size`` nodes (redexes favoured)."""
    if size <= 1:
        return _leaf(rng, depth)
    if size == 2 or rng.random() < 0.3:
        return _random_abstraction(rng, size, depth, lambda_I)
    k = rng.randint(1, size - 2)
    if k >= 2 and rng.random() < 0.4:
        fun = _random_abstraction(rng, k, depth, lambda_I)
    else:
        fun = random_lambda(rng, k, depth, lambda_I)
    return App(fun, random_lambda(rng, size - 1 - k, depth, lambda_I))


def _random_abstraction(rng, size, depth, lambda_I):
    for _ in range(20):
        body = random_lambda(rng, size - 1, depth + 1, lambda_I)
        if not lambda_I or count_occurrences(body, 0):
            return Lam(body, rng.choice(("u", "v", "w")))
    if size >= 3:
        return App(random_lambda(rng, 1, depth, lambda_I),
                   random_lambda(rng, size - 2, depth, lambda_I))
    return _leaf(rng, depth)


def random_lambda_I(rng, size: int):
    while True:
        t = random_lambda(rng, rng.randint(1, size), lambda_I=True)
        if _is_lambda_I(t):
            return t


def _is_lambda_I(t) -> bool:
    if isinstance(t, Lam):
        return count_occurrences(t.body, 0) > 0 and _is_lambda_I(t.body)
    if isinstance(t, App):
        return _is_lambda_I(t.fun) and _is_lambda_I(t.arg)
    return True


def _random_res(rng, size, depth, node, positive):
    if size <= 1:
        return _leaf(rng, depth)
    if size == 2 or rng.random() < 0.3:
        return Lam(_random_res(rng, size - 1, depth + 1, node, positive),
                   rng.choice(("u", "v", "w")))
    room = size - 1
    low = 1 if positive else 0
    width = rng.randint(low, min(3, room - 1)) if room - 1 >= low else 0
    sizes = _split(rng, room, width + 1)
    fsize, asizes = sizes[0], sizes[1:]
    if fsize >= 2 and rng.random() < 0.45:
        fun = Lam(_random_res(rng, fsize - 1, depth + 1, node, positive), "u")
    else:
        fun = _random_res(rng, fsize, depth, node, positive)
    args = tuple(_random_res(rng, s, depth, node, positive) for s in asizes)
    return node(fun, args)


def _random_approximant(rng, m, node, positive):
    if isinstance(m, Lam):
        return Lam(_random_approximant(rng, m.body, node, positive), m.hint)
    if isinstance(m, App):
        width = rng.choice((1, 1, 2) if positive else (0, 1, 1, 2))
        return node(_random_approximant(rng, m.fun, node, positive),
                    tuple(_random_approximant(rng, m.arg, node, positive)
                          for _ in range(width)))
    return m


def _random_expr(rng, size, node, positive):
    # half direct, half approximants of random lambda-terms (their bag
    # widths often match the number of occurrences, so redexes survive)
    if rng.random() < 0.5:
        for _ in range(20):
            m = random_lambda(rng, rng.randint(1, size))
            a = _random_approximant(rng, m, node, positive)
            if a.size <= size:
                return a
    return _random_res(rng, rng.randint(1, size), 0, node, positive)


def random_rigid(rng, size: int, positive: bool = False):
    return _random_expr(rng, size, LinApp, positive)


def random_resource(rng, size: int, positive: bool = False):
    return _random_expr(rng, size, MApp, positive)


def _random_beta_step(rng, m, rules):
    sites = [(p, r) for p, r in redex_sites(m) if r in rules]
    if not sites:
        raise Vacuous
    path, rule = rng.choice(sites)
    return path, rule, replace_at(m, path, lambda r: contract(r, rule))


def _lambda_with_redex(rng, size, rules):
    for _ in range(50):
        m = random_lambda(rng, rng.randint(3, max(3, size)))
        if any(r in rules for _, r in redex_sites(m)):
            return m
    raise Vacuous


# --- law bodies -----------------------------------------------------------------
# each body takes the case (a tuple) and returns None or a failure message

def _law_taysub(case):
    m, x, n = case
    target = substitute(m, x, n)
    for r in rigid_substitution_image(m, x, n, LAMBDA_BUDGET):
        if not is_rigid_approximant(r, target):
            return f"image element {render_rigid(r)} does not approximate M[N/x]"
    for b in rigid_expand(target, LAMBDA_BUDGET):
        a, res = invert_substitution(m, b, x)
        if not (is_rigid_approximant(a, m) and all(is_rigid_approximant(c, n) for c in res)
                and rigid_substitute(a, x, res) == b):
            return f"{render_rigid(b)} is not a substitution instance"
    return None


def _law_subres(case):
    m, x, n = case
    target = substitute(m, x, n)
    pool = taylor_support_expand(n, SMALL_BUDGET)[:6]
    for s in taylor_support_expand(m, Budget(max_size=8, max_count=20)):
        k = count_occurrences(s, x)
        if k > 3:
            continue
        for bag in itertools.combinations_with_replacement(pool, k):
            for t in n_linear_substitute(s, x, bag).support():
                if not is_taylor_approximant(t, target):
                    return "substitution result outside the Taylor support of M[N/x]"
    for t in taylor_support_expand(target, LAMBDA_BUDGET):
        s, res = invert_substitution(m, t, x)
        if not (is_taylor_approximant(s, m) and all(is_taylor_approximant(c, n) for c in res)
                and t in n_linear_substitute(s, x, res)):
            return "Taylor element of M[N/x] not produced by substitution"
    return None


def _law_antired1(case):
    m, path, _rule, n = case
    for b in rigid_expand(n, LAMBDA_BUDGET):
        a = rigid_preimage(m, path, b)
        if not is_rigid_approximant(a, m):
            return f"preimage of {render_rigid(b)} is not an approximant of M"
        if rigid_fire_at(a, path) != b:
            return f"preimage of {render_rigid(b)} does not reduce to it"
    return None


def _law_commH(case):
    (m,) = case
    hm = head_step(m)
    for a in rigid_expand(m, LAMBDA_BUDGET):
        h = rigid_head_step(a)
        if h is not ZERO and not is_rigid_approximant(h, hm):
            return f"H_r({render_rigid(a)}) does not approximate H(M)"
    path = head_redex_path(m)
    for b in rigid_expand(hm, LAMBDA_BUDGET):
        a = b if path is None else rigid_preimage(m, path, b)
        if not is_rigid_approximant(a, m) or rigid_head_step(a) != b:
            return f"{render_rigid(b)} is not H_r of an approximant of M"
    return None


def _law_commL(case):
    (m,) = case
    lm = left_parallel_step(m)
    for a in rigid_expand(m, LAMBDA_BUDGET):
        step = rigid_left_parallel_step(a)
        if step is not ZERO and not is_rigid_approximant(step, lm):
            return f"L_r({render_rigid(a)}) does not approximate L(M)"
    for b in rigid_expand(lm, LAMBDA_BUDGET):
        a = left_preimage(m, b)
        if not is_rigid_approximant(a, m) or rigid_left_parallel_step(a) != b:
            return f"{render_rigid(b)} is not L_r of an approximant of M"
    return None


def _law_forcingL(case):
    (m,) = case
    hits = [a for a in rigid_expand(m, LAMBDA_BUDGET)
            if is_positive_rigid(a) and is_r_normal(a)]
    if not hits:
        raise Vacuous
    if not is_beta_nf(m):
        return f"positive normal approximant {render_rigid(hits[0])} of a non-normal term"
    return None


def _law_standL(case):
    (a,) = case
    nf = r_normal_form(a)
    for _ in range(a.size + 1):
        if a == nf:
            return None
        a = rigid_left_parallel_step(a)
    return "iterating L_r does not reach the normal form"


def _law_nftohnf(case):
    (a,) = case
    if r_normal_form(a) is ZERO:
        raise Vacuous
    for _ in range(a.size + 1):
        nxt = rigid_head_step(a)
        if nxt is ZERO:
            return "H_r reaches zero although the normal form is not zero"
        if nxt == a:
            return None
        a = nxt
    return "H_r does not stabilise"


def _law_subject_expansion(case):
    m, path, rule, n = case
    for t0 in taylor_support_expand(n, LAMBDA_BUDGET):
        s = resource_preimage(m, path, rule, t0)
        if not is_taylor_approximant(s, m):
            return "preimage is not in the Taylor support of M"
        sigma, erased = fire_mirrored(s, path, rule)
        if t0 not in sigma:
            return "preimage does not reduce to a sum containing the target"
        if not all(is_taylor_approximant(t, n) for t in sigma.support()):
            return "reduct leaves the Taylor support of N"
        if is_positive_res(t0) and erased:
            return "positive target needed an erasing step"
    return None


def _law_subject_reduction(case):
    m, path, rule, n = case
    for s in taylor_support_expand(m, LAMBDA_BUDGET):
        sigma, erased = fire_mirrored(s, path, rule)
        if not all(is_taylor_approximant(t, n) for t in sigma.support()):
            return "reduct leaves the Taylor support of N"
        if is_positive_res(s) and erased:
            return "positive approximant needed an erasing step"
    return None


def _law_pres(case):
    (s,) = case
    for sigma in partial_successors(s):
        if not all(is_positive_res(t) for t in sigma.support()):
            return "a reduct of a positive term is not positive"
    return None


def _law_epresnf(case):
    (s,) = case
    relevant = False
    for sigma in res_successors(s, ResStrategyKind.PARTIAL_ERASING):
        if sigma and not nf_eps_nonerasing(sigma):
            relevant = True
            if nf_eps_nonerasing(s):
                return "erasing step hides a zero normal form"
    if not relevant:
        raise Vacuous
    return None


def _law_taysn(case):
    (m,) = case
    from taylorlam.analysis import strong_witness
    found = strong_witness(m, 60)
    if found is None:
        raise Vacuous
    s, _, _ = found
    if not any(is_positive_res(t) for t in nf_eps_nonerasing(s).support()):
        return "normal form of the witness has no positive element"
    return None


def _term_normal_forms(s, memo, active):
    """Normal-form sums of ``s`` under non-erasing epsilon steps."""
    if s in memo:
        return memo[s]
    if s in active:
        raise _Cycle
    active.add(s)
    succ = res_successors(s, ResStrategyKind.EPSILON_NE)
    if not succ:
        out = frozenset((Sum.of(s),))
    else:
        acc = set()
        for sigma in succ:
            acc |= _sum_normal_forms(sigma, memo, active)
            if len(acc) > GRAPH_CAP:
                raise Inconclusive
        out = frozenset(acc)
    active.discard(s)
    memo[s] = out
    return out


def _sum_normal_forms(sigma, memo, active):
    options = [(_term_normal_forms(t, memo, active), c) for t, c in sigma]
    acc = {Sum()}
    for nfs, c in options:
        nxt = set()
        for base in acc:
            for copies in itertools.combinations_with_replacement(sorted(nfs, key=hash), c):
                total = base
                for x in copies:
                    total = total + x
                nxt.add(total)
                if len(nxt) > GRAPH_CAP:
                    raise Inconclusive
        acc = nxt
    return acc


class _Cycle(Exception):
    pass


def _law_snce(case):
    (s,) = case
    try:
        nfs = _term_normal_forms(s, {}, set())
    except _Cycle:
        return "the reduction graph has a cycle"
    if len(nfs) != 1:
        return f"{len(nfs)} distinct normal forms"
    if next(iter(nfs)) != nf_eps_nonerasing(s):
        return "normal form differs from the innermost computation"
    return None


def _reachable_sums(start: Sum, cap: int):
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in sum_successors(cur, ResStrategyKind.EPSILON_NE):
            if nxt not in seen:
                if len(seen) >= cap:
                    raise Inconclusive
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _law_parallel_confluence(case):
    (s,) = case
    par = parallel_successors(s)
    one = res_successors(s, ResStrategyKind.EPSILON_NE)
    if not one <= par:
        return "a one-step reduct is not a parallel reduct"
    reach = _reachable_sums(Sum.of(s), GRAPH_CAP)
    if not par <= reach:
        return "a parallel reduct is not reachable by single steps"
    ordered = sorted(par, key=lambda x: [t._key for t in x.support()])[:8]
    for a, b in itertools.combinations(ordered, 2):
        if not (sum_parallel_successors(a, 4000) & sum_parallel_successors(b, 4000)):
            return "two parallel reducts have no common parallel reduct"
    return None


def _closure(start, step, cap):
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in step(cur):
            if nxt not in seen:
                if len(seen) >= cap:
                    raise Inconclusive
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _res_term_steps(t, kind):
    out = set()
    for sigma in res_successors(t, kind):
        out.update(sigma.support())
    return out


def _postponement(s, erasing, non_erasing):
    targets = set()
    for t in erasing(s):
        for u in _closure(t, non_erasing, GRAPH_CAP):
            targets.add(u)
    if not targets:
        raise Vacuous
    covered = set()
    for t_prime in _closure(s, non_erasing, GRAPH_CAP):
        covered |= erasing(t_prime)
    missing = targets - covered
    if missing:
        return f"{len(missing)} reducts cannot be reached with erasure postponed"
    return None


def _law_postponement(case):
    (s,) = case
    return _postponement(
        s,
        lambda t: _res_term_steps(t, ResStrategyKind.PARTIAL_ERASING),
        lambda t: _res_term_steps(t, ResStrategyKind.EPSILON_NE))


def _law_postponement_rigid(case):
    (a,) = case

    def non_erasing(e):
        return {x for x in rigid_non_erasing_successors(e) | rigid_sigma1_successors(e)
                if x is not ZERO}

    def erasing(e):
        return {x for x in rigid_erasing_successors(e) if x is not ZERO}

    return _postponement(a, erasing, non_erasing)


CONFLUENCE_COUNTEREXAMPLE = (
    r"<\y. <<\x. <x>(x)>(y, y)>(y)>(\f. <z>(f), \f. <z>(), \f. <z>())")
_SIGMA_FIRST = (
    ("sigma1", r"<\y. <\x. <<x>(x)>(y)>(y, y)>(\f. <z>(f), \f. <z>(), \f. <z>())"),
    ("r", r"<\x. <<x>(x)>(\f. <z>(f))>(\f. <z>(), \f. <z>())"),
    ("r", r"<<\f. <z>()>(\f. <z>())>(\f. <z>(f))"),
    ("r", "0"),
)
_R_FIRST = (
    ("r", r"<<\x. <x>(x)>(\f. <z>(f), \f. <z>())>(\f. <z>())"),
    ("sigma1", r"<\x. <<x>(x)>(\f. <z>())>(\f. <z>(f), \f. <z>())"),
)


def rigid_normal_forms(e, memo=None) -> frozenset:
    """All normal forms reachable under rigid reduction plus the rigid sigma rule."""
    memo = {} if memo is None else memo
    if e in memo:
        return memo[e]
    succ = r_successors(e) | rigid_sigma1_successors(e) if e is not ZERO else frozenset()
    out = frozenset((e,)) if not succ else frozenset().union(
        *(rigid_normal_forms(x, memo) for x in succ))
    memo[e] = out
    return out


def _replay(start, seq, details):
    cur = start
    for rule, text in seq:
        nxt = parse_rigid(text)
        pool = rigid_sigma1_successors(cur) if rule == "sigma1" else r_successors(cur)
        if nxt not in pool:
            return None
        details.append(f"--{rule}--> {render_rigid(nxt)}")
        cur = nxt
    return cur


def _rigid_confluence_failure(report: LawReport):
    s = parse_rigid(CONFLUENCE_COUNTEREXAMPLE)
    report.details.append(f"s = {render_rigid(s)}")
    report.details.append("sigma1-first sequence:")
    end = _replay(s, _SIGMA_FIRST, report.details)
    if end is not ZERO:
        report.failures.append({"case": render_rigid(s),
                                "message": "sigma1-first sequence does not reach 0"})
    report.details.append("r-first sequence:")
    mid = _replay(s, _R_FIRST, report.details)
    if mid is None:
        report.failures.append({"case": render_rigid(s),
                                "message": "r-first sequence does not replay"})
        return
    nf = r_normal_form(mid)
    report.details.append(f"--r*--> {render_rigid(nf)}")
    if nf is ZERO:
        report.failures.append({"case": render_rigid(s),
                                "message": "r-first sequence reaches 0"})


# --- registry -----------------------------------------------------------------

def _gen_subst(rng, size):
    m = random_lambda(rng, rng.randint(1, size))
    n = random_lambda(rng, rng.randint(1, max(1, size // 2)))
    return (m, "x", n)


def _gen_step(rules):
    def gen(rng, size):
        m = _lambda_with_redex(rng, size, rules)
        return (m,) + _random_beta_step(rng, m, rules)
    return gen


def _gen_lambda(rng, size):
    return (random_lambda(rng, rng.randint(1, size)),)


def _with_redex(make, has_redex, tries: int = 40):
    # laws about reduction say nothing about normal forms; retry a few times
    def gen(rng, size):
        t = make(rng, size)
        for _ in range(tries):
            if has_redex(t):
                break
            t = make(rng, size)
        return (t,)
    return gen


def _res_redex(kind):
    return lambda t: bool(res_successors(t, kind))


_gen_resource = _with_redex(random_resource, _res_redex(ResStrategyKind.EPSILON_NE))
# an erasing step with a non-empty bag gives 0, which postpones trivially
_gen_erasable = _with_redex(random_resource, lambda t: any(
    res_successors(t, ResStrategyKind.PARTIAL_ERASING)))
_gen_zeroing = _with_redex(random_resource, lambda t: any(
    sigma and not nf_eps_nonerasing(sigma)
    for sigma in res_successors(t, ResStrategyKind.PARTIAL_ERASING)))
_gen_positive_resource = _with_redex(
    lambda rng, size: random_resource(rng, size, positive=True),
    _res_redex(ResStrategyKind.PARTIAL))
_gen_rigid_redex = _with_redex(random_rigid, lambda a: not is_r_normal(a))
_gen_rigid_live = _with_redex(
    random_rigid, lambda a: not is_r_normal(a) and r_normal_form(a) is not ZERO)
_gen_rigid_erasable = _with_redex(
    random_rigid, lambda a: any(x is not ZERO for x in rigid_erasing_successors(a)))


# name -> (generator, body, default size bound)
LAWS = {
    "Taysub": (_gen_subst, _law_taysub, 8),
    "subres": (_gen_subst, _law_subres, 8),
    "antired1": (_gen_step(("ne", "e")), _law_antired1, 8),
    "commH": (_gen_lambda, _law_commH, 8),
    "commL": (_gen_lambda, _law_commL, 8),
    "forcingL": (_gen_lambda, _law_forcingL, 8),
    "standL": (_gen_rigid_redex, _law_standL, 14),
    "nftohnf": (_gen_rigid_live, _law_nftohnf, 14),
    "subject-expansion": (_gen_step(("ne", "sigma1")), _law_subject_expansion, 8),
    "subject-reduction": (_gen_step(("ne", "sigma1")), _law_subject_reduction, 8),
    "pres": (_gen_positive_resource, _law_pres, 14),
    "epresnf": (_gen_zeroing, _law_epresnf, 14),
    "Taysn": (_gen_lambda, _law_taysn, 8),
    "snce": (_gen_resource, _law_snce, 14),
    "parallel-confluence": (_gen_resource, _law_parallel_confluence, 14),
    "postponement": (_gen_erasable, _law_postponement, 14),
    "postponement-rigid": (_gen_rigid_erasable, _law_postponement_rigid, 14),
    "rigid-confluence-failure": (None, None, 0),
}

ACCEPTANCE_LAWS = (
    "Taysub", "subres", "antired1", "commH", "commL", "forcingL", "standL",
    "nftohnf", "subject-expansion", "subject-reduction", "pres", "epresnf",
    "snce", "parallel-confluence", "postponement",
)


def _render_case(case) -> list:
    from taylorlam.analysis import render_any
    out = []
    for part in case:
        if isinstance(part, (Var, Free, Lam, App, LinApp, MApp)):
            out.append(render_any(part))
        else:
            out.append(repr(part))
    return out


def _run(body, case):
    try:
        return body(case)
    except (Vacuous, Inconclusive):
        return None


def _shrink(body, case):
    """Replace the first component by its smallest failing closed subterm."""
    head = case[0]
    if not isinstance(head, (Lam, App, LinApp, MApp)) or len(case) != 1:
        return case
    candidates = sorted((t for t in set(subterms(head))
                         if t != head and not loose_indices(t)), key=lambda t: t.size)
    for t in candidates:
        if _run(body, (t,)):
            return (t,)
    return case


def check_law(law: str, cases: int = 200, seed: int = 0,
              size_bound: int | None = None) -> LawReport:
    """Run ``cases`` random instances of ``law``; see :data:`LAWS` for names."""
    if law not in LAWS:
        raise ValueError(f"unknown law {law!r}; known: {', '.join(LAWS)}")
    gen, body, default_bound = LAWS[law]
    bound = default_bound if size_bound is None else size_bound
    start = time.perf_counter()
    if law == "rigid-confluence-failure":
        report = LawReport(law, 1, seed, bound)
        _rigid_confluence_failure(report)
        report.elapsed = time.perf_counter() - start
        return report
    report = LawReport(law, cases, seed, bound)
    rng = random.Random(f"{law}:{seed}")
    for _ in range(cases):
        try:
            case = gen(rng, bound)
            message = body(case)
        except Vacuous:
            report.vacuous += 1
            continue
        except Inconclusive:
            report.inconclusive += 1
            continue
        if message:
            shrunk = _shrink(body, case)
            report.failures.append({"case": _render_case(shrunk),
                                    "message": _run(body, shrunk) or message})
    report.elapsed = time.perf_counter() - start
    return report

"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict with its runtime; the lines
are printed in the pytest terminal summary, and also when this file is run
directly with ``python tests/test_acceptance.py``.
"""

import json
import math
import random
import sys
import time
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oracles import permutation_substitute  # noqa: E402
from taylorlam._core import count_occurrences  # noqa: E402
from taylorlam.analysis import (  # noqa: E402
    Outcome, analyze, check_conservation, close_term, in_S, oracle,
)
from taylorlam.expansion import Budget  # noqa: E402
from taylorlam.laws import (  # noqa: E402
    ACCEPTANCE_LAWS, CONFLUENCE_COUNTEREXAMPLE, check_law, random_lambda_I,
    random_resource, random_rigid,
)
from taylorlam.resource import n_linear_substitute  # noqa: E402
from taylorlam.rigid import (  # noqa: E402
    ZERO, is_r_normal, parse_rigid, r_normal_form, r_successors,
    rigid_sigma1_successors,
)
from taylorlam.syntax import is_beta_nf, parse  # noqa: E402

CORPUS = json.loads((Path(__file__).parent / "data" / "verdicts.json").read_text())
SEED = 7
RESULTS: list[str] = []


def record(number, title, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = (f"criterion {number} {status}: {title} "
            f"({elapsed:.3f}s, limit {limit:g}s){'; ' + detail if detail else ''}")
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def best_time(fn, repeat=5):
    best, value = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


# 1 -------------------------------------------------------------------------------

def test_1_rigid_omega_reduces_to_zero():
    term = parse_rigid(r"<\x. <x>(x)>(\x. <x>(x))")

    def run():
        r_normal_form.cache_clear()
        return r_normal_form(term)

    elapsed, nf = best_time(run)
    record(1, "rigid Omega approximant normalizes to 0", nf is ZERO, elapsed, 0.001)


# 2 -------------------------------------------------------------------------------

def test_2_rigid_reduction_terminates_and_is_confluent():
    rng = random.Random(SEED)
    terms = [random_rigid(rng, 20) for _ in range(1000)]

    @lru_cache(maxsize=None)
    def normal_forms(e):
        succ = r_successors(e)
        for r in succ:
            if r is not ZERO and r.size >= e.size:
                raise AssertionError("a step did not decrease size")
        if not succ:
            return frozenset((e,))
        return frozenset().union(*(normal_forms(r) for r in succ))

    start = time.perf_counter()
    bad = [e for e in terms if e is not ZERO and normal_forms(e) != {r_normal_form(e)}]
    elapsed = time.perf_counter() - start
    reducible = sum(1 for e in terms if e is not ZERO and not is_r_normal(e))
    record(2, "1000 rigid terms of size <= 20 are SN and confluent", not bad, elapsed, 30,
           f"{reducible} reducible, max size {max(e.size for e in terms if e is not ZERO)}")


# 3 -------------------------------------------------------------------------------

def test_3_law_suite():
    start = time.perf_counter()
    reports = [check_law(name, cases=200, seed=SEED) for name in ACCEPTANCE_LAWS]
    elapsed = time.perf_counter() - start
    failing = [r.law for r in reports if not r.passed]
    for r in reports:
        print("   ", r.summary())
    bounds = sorted({r.size_bound for r in reports})
    record(3, f"{len(reports)} laws x 200 cases, size bounds {bounds}", not failing,
           elapsed, 300, f"failing: {failing}" if failing else "0 failures")


# 4 -------------------------------------------------------------------------------

SIGMA_FIRST = [
    ("sigma1", r"<\y. <\x. <<x>(x)>(y)>(y, y)>(\f. <z>(f), \f. <z>(), \f. <z>())"),
    ("r", r"<\x. <<x>(x)>(\f. <z>(f))>(\f. <z>(), \f. <z>())"),
    ("r", r"<<\f. <z>()>(\f. <z>())>(\f. <z>(f))"),
    ("r", "0"),
]
R_FIRST = [
    ("r", r"<<\x. <x>(x)>(\f. <z>(f), \f. <z>())>(\f. <z>())"),
    ("sigma1", r"<\x. <<x>(x)>(\f. <z>())>(\f. <z>(f), \f. <z>())"),
]


def test_4_rigid_confluence_counterexample():
    start_term = parse_rigid(CONFLUENCE_COUNTEREXAMPLE)
    sigma_first = [(rule, parse_rigid(t)) for rule, t in SIGMA_FIRST]
    r_first = [(rule, parse_rigid(t)) for rule, t in R_FIRST]

    def replay(seq):
        cur = start_term
        for rule, nxt in seq:
            pool = rigid_sigma1_successors(cur) if rule == "sigma1" else r_successors(cur)
            if nxt not in pool:
                return None
            cur = nxt
        return cur

    def run():
        r_normal_form.cache_clear()
        zero_end = replay(sigma_first)
        mid = replay(r_first)
        if mid is None:
            return zero_end, None, 0
        # two further r steps, each forced
        cur, steps = mid, 0
        while not is_r_normal(cur):
            (cur,) = r_successors(cur)
            steps += 1
        return zero_end, cur, steps

    elapsed, (zero_end, nonzero, steps) = best_time(run)
    ok = zero_end is ZERO and nonzero is not None and nonzero is not ZERO and steps == 2
    record(4, "rigid sigma1/r counterexample reaches 0 and a non-zero normal form", ok,
           elapsed, 0.001)


# 5 -------------------------------------------------------------------------------

def test_5_n_linear_substitution_oracle():
    rng = random.Random(SEED)
    start = time.perf_counter()
    checked, mismatches, by_n = 0, 0, [0] * 5
    while checked < 500:
        # stratify by occurrence count so that every n up to 4 is exercised
        want = checked % 5
        e = random_resource(rng, 12)
        while count_occurrences(e, "x") != want:
            e = random_resource(rng, 12)
        bag = [random_resource(rng, 4) for _ in range(want)]
        got = n_linear_substitute(e, "x", bag)
        if got != permutation_substitute(e, "x", bag) or got.mass() != math.factorial(want):
            mismatches += 1
        # a bag of the wrong length must give zero
        if n_linear_substitute(e, "x", bag + [bag[0] if bag else e]):
            mismatches += 1
        checked += 1
        by_n[want] += 1
    elapsed = time.perf_counter() - start
    record(5, "partition recursion equals permutation sum, mass n!", mismatches == 0,
           elapsed, 60, f"500 cases, occurrence counts 0..4: {by_n}")


# 6 -------------------------------------------------------------------------------

def test_6_corpus_cross_checks():
    budget = Budget(**CORPUS["budget"])
    fuel, s_fuel = CORPUS["oracle_fuel"], CORPUS["in_S_fuel"]
    problems = []
    start = time.perf_counter()
    for row in CORPUS["rows"]:
        m = parse(row["term"])
        a = {p: analyze(m, p, budget) for p in ("head", "beta", "strong", "solvable")}
        o = {p: oracle(m, p, fuel) for p in ("head", "beta", "strong")}
        s = in_S(m, s_fuel).outcome
        for p, want in row["analyze"].items():
            if a[p].outcome.value != want:
                problems.append(f"{row['name']}: analyze {p}")
        for p, want in row["oracle"].items():
            if o[p].outcome.value != want:
                problems.append(f"{row['name']}: oracle {p}")
        if s.value != row["in_S"]:
            problems.append(f"{row['name']}: in_S")
        for p in ("head", "beta", "strong"):
            if a[p].outcome is Outcome.YES and o[p].outcome is not Outcome.YES:
                problems.append(f"{row['name']}: unsound {p}")
            if o[p].outcome is Outcome.NO and a[p].outcome is Outcome.YES:
                problems.append(f"{row['name']}: {p} yes against oracle no")
        if s is Outcome.YES and o["strong"].outcome is not Outcome.YES:
            problems.append(f"{row['name']}: S member not strongly normalizing")
        if a["strong"].outcome is Outcome.YES and s is not Outcome.YES:
            problems.append(f"{row['name']}: strong witness outside S")
    elapsed = time.perf_counter() - start
    record(6, f"golden verdict table on {len(CORPUS['rows'])} corpus terms", not problems,
           elapsed, 60, "; ".join(problems))


# 7 -------------------------------------------------------------------------------

def _lambda_I_with_redex(rng, size):
    # most small lambda-I terms are already normal; retry for a redex
    t = random_lambda_I(rng, size)
    for _ in range(60):
        if not is_beta_nf(t):
            break
        t = random_lambda_I(rng, size)
    return t


def test_7_conservation():
    rng = random.Random(SEED)
    terms = [_lambda_I_with_redex(rng, 10) for _ in range(300)]
    divergers = [parse(row["term"]) for row in CORPUS["rows"] if row.get("lambda_I")]
    start = time.perf_counter()
    verdicts = [check_conservation(m) for m in terms]
    extra = [check_conservation(m) for m in divergers]
    elapsed = time.perf_counter() - start
    counts = {o: sum(v.outcome is o for v in verdicts) for o in Outcome}
    reducible = sum(not is_beta_nf(m) for m in terms)
    ok = counts[Outcome.NO] == 0 and all(v.outcome is not Outcome.NO for v in extra)
    record(7, "300 lambda-I terms: beta-normalizable iff strongly normalizable", ok,
           elapsed, 120,
           f"{reducible} with a redex, max size {max(m.size for m in terms)}; "
           f"agree {counts[Outcome.YES]}, disagree {counts[Outcome.NO]}, "
           f"undecided {counts[Outcome.UNKNOWN]}; corpus divergers: "
           + ", ".join(v.reason for v in extra))


# 8 -------------------------------------------------------------------------------

def test_8_solvability():
    budget = Budget(**CORPUS["budget"])
    start = time.perf_counter()
    bad = []
    for row in CORPUS["rows"]:
        m = parse(row["term"])
        if analyze(m, "solvable", budget).outcome is not analyze(
                close_term(m), "head", budget).outcome:
            bad.append(row["name"])
    elapsed = time.perf_counter() - start
    record(8, "solvable agrees with head normalization of the closure", not bad,
           elapsed, 10, ", ".join(bad))


def main() -> int:
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError:
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

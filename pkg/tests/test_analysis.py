import json
from pathlib import Path

import pytest

from conftest import OMEGA
from taylorlam.analysis import (
    Outcome, Property, Verdict, analyze, check_conservation, close_term, in_S, oracle,
)
from taylorlam.expansion import Budget, is_rigid_approximant, is_taylor_approximant
from taylorlam.resource import parse_resource
from taylorlam.rigid import parse_rigid
from taylorlam.syntax import (
    is_beta_nf, is_non_erasing_nf, left_parallel_step, parse, render,
)

CORPUS = json.loads((Path(__file__).parent / "data" / "verdicts.json").read_text())
ROWS = CORPUS["rows"]
BUDGET = Budget(**CORPUS["budget"])
YES, NO, UNKNOWN = Outcome.YES, Outcome.NO, Outcome.UNKNOWN


def P(text):
    return parse(text)


class TestVerdict:
    def test_yes_needs_witness(self):
        with pytest.raises(ValueError):
            Verdict("head", YES)

    def test_json_witness_reparses(self):
        v = analyze(P(f"x ({OMEGA})"), "head", Budget(6))
        doc = json.loads(v.to_json())
        assert doc["outcome"] == "yes" and doc["witness_kind"] == "rigid"
        assert parse_rigid(doc["witness"]) == v.witness

    def test_strong_witness_is_resource(self):
        v = analyze(P(r"(\x. x) y"), "strong")
        assert v.to_dict()["witness_kind"] == "resource"
        assert parse_resource(v.to_dict()["witness"]) == v.witness


class TestAnalyze:
    def test_identity(self):
        v = analyze(P(r"\x. x"), Property.HEAD)
        assert v.outcome is YES and v.witness == parse_rigid(r"\x. x")

    def test_x_omega(self):
        m = P(f"x ({OMEGA})")
        v = analyze(m, "head", Budget(6))
        assert v.outcome is YES and v.witness == parse_rigid("<x>()")
        for size in (4, 8, 11):
            assert analyze(m, "beta", Budget(size, 300)).outcome is UNKNOWN

    def test_non_erasing_normal_diverger(self):
        m = P(r"((\y. \x. x x) z) (\x. x x)")
        assert analyze(m, "strong").outcome is UNKNOWN

    def test_never_says_no(self):
        for row in ROWS:
            for prop in ("head", "beta", "strong", "solvable"):
                assert analyze(P(row["term"]), prop, Budget(6, 40)).outcome is not NO

    def test_enumeration_only(self):
        # K I applied to Omega needs a wide witness; the pure search may miss it
        m = P(rf"(\x y. x) (\x. x) ({OMEGA})")
        v = analyze(m, "beta", Budget(10, 200), guided=False)
        assert v.outcome in (YES, UNKNOWN)
        if v.outcome is YES:
            assert is_rigid_approximant(v.witness, m)

    def test_solvable_uses_closure(self):
        m = P(f"x ({OMEGA})")
        assert close_term(m) == P(rf"\x. x ({OMEGA})")
        assert analyze(m, "solvable").outcome is YES


class TestOracle:
    def test_omega_head(self):
        assert oracle(P(OMEGA), "head").outcome is NO

    def test_erased_omega(self):
        m = P(rf"(\x. y) ({OMEGA})")
        v = oracle(m, "beta")
        assert v.outcome is YES and v.witness == P("y")
        assert oracle(m, "strong").outcome is NO

    def test_fuel(self):
        assert oracle(P(r"(\x. x x x) (\x. x x x)"), "head", fuel=5).outcome is UNKNOWN


class TestInS:
    def test_variable(self):
        assert in_S(P("x")).outcome is YES

    def test_omega(self):
        assert in_S(P(OMEGA), fuel=200).outcome in (NO, UNKNOWN)

    def test_redex_under_binder(self):
        assert in_S(P(r"\x. (\y. y) x")).outcome is YES


class TestConservation:
    def test_omega(self):
        v = check_conservation(P(OMEGA))
        assert v.outcome is YES and "beta no" in v.reason and "strong no" in v.reason

    def test_normalizing(self):
        v = check_conservation(P(r"\x. (\y. y y) x"))
        assert v.outcome is YES and "beta yes" in v.reason and "strong yes" in v.reason

    def test_rejects_non_lambda_I(self):
        with pytest.raises(ValueError):
            check_conservation(P(r"\x. y"))


@pytest.mark.parametrize("row", ROWS, ids=[r["name"] for r in ROWS])
class TestCorpus:
    def test_golden_verdicts(self, row):
        m = P(row["term"])
        for prop, want in row["analyze"].items():
            assert analyze(m, prop, BUDGET).outcome.value == want, prop
        for prop, want in row["oracle"].items():
            assert oracle(m, prop, CORPUS["oracle_fuel"]).outcome.value == want, prop
        assert in_S(m, CORPUS["in_S_fuel"]).outcome.value == row["in_S"]

    def test_soundness(self, row):
        m = P(row["term"])
        for prop in ("head", "beta", "strong"):
            a = analyze(m, prop, BUDGET)
            o = oracle(m, prop, CORPUS["oracle_fuel"])
            if a.outcome is YES:
                assert o.outcome is YES
            if o.outcome is NO:
                assert a.outcome is not YES
            if o.outcome is YES:
                # completeness at the recorded budget
                assert a.outcome is YES

    def test_witnesses_approximate_the_term(self, row):
        m = P(row["term"])
        for prop in ("head", "beta"):
            v = analyze(m, prop, BUDGET)
            if v.outcome is YES:
                assert is_rigid_approximant(v.witness, m)
        v = analyze(m, "strong", BUDGET)
        if v.outcome is YES:
            assert is_taylor_approximant(v.witness, m)

    def test_left_steps_bounded_by_witness(self, row):
        m = P(row["term"])
        v = analyze(m, "beta", BUDGET)
        if v.outcome is not YES:
            return
        steps = len(v.trace) - 1
        t = m
        for _ in range(steps):
            t = left_parallel_step(t)
        assert is_beta_nf(t), render(t)

    def test_S_consistency(self, row):
        m = P(row["term"])
        s = in_S(m, CORPUS["in_S_fuel"]).outcome
        if s is YES:
            assert oracle(m, "strong", CORPUS["oracle_fuel"]).outcome is YES
        if analyze(m, "strong", BUDGET).outcome is YES:
            assert s is YES

    def test_solvable_matches_closure(self, row):
        m = P(row["term"])
        assert (analyze(m, "solvable", BUDGET).outcome
                is analyze(close_term(m), "head", BUDGET).outcome)

    def test_extra_facts(self, row):
        m = P(row["term"])
        if "non_erasing_nf" in row:
            assert is_non_erasing_nf(m) is row["non_erasing_nf"]
        if row.get("normal_form"):
            assert oracle(m, "beta").witness == P(row["normal_form"])

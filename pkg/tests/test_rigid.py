from functools import lru_cache

import pytest
from hypothesis import given

from conftest import rigid_terms
from strategies import rigid_text
from taylorlam._core import Free, LinApp
from taylorlam.laws import CONFLUENCE_COUNTEREXAMPLE, rigid_normal_forms
from taylorlam.rigid import (
    ZERO, is_positive_rigid, is_r_normal, lam, linapp, mono, occurrences, parse_rigid,
    r_normal_form, r_steps, r_successors, render_rigid, rigid_head_decompose,
    rigid_head_step, rigid_left_parallel_step, rigid_sigma1_successors, rigid_steps,
    rigid_substitute,
)

R = parse_rigid
RIGID_OMEGA = r"<\x. <x>(x)>(\x. <x>(x))"


@lru_cache(maxsize=None)
def all_normal_forms(e):
    """Every normal form reachable by any order of rigid steps."""
    succ = r_successors(e) if e is not ZERO else frozenset()
    if not succ:
        return frozenset((e,))
    return frozenset().union(*(all_normal_forms(x) for x in succ))


class TestConstruction:
    def test_zero_absorbs(self):
        assert lam(ZERO) is ZERO
        assert linapp(ZERO, (Free("x"),)) is ZERO
        assert linapp(Free("x"), ZERO) is ZERO
        assert mono((Free("x"), ZERO)) is ZERO

    def test_monomials_are_ordered(self):
        assert R("<x>(y, z)") != R("<x>(z, y)")

    def test_parse_monomial(self):
        assert R("(u, v)") == (Free("u"), Free("v"))
        assert R("()") == ()

    def test_parse_zero(self):
        assert R("0") is ZERO

    def test_size(self):
        assert R("x").size == 1
        assert R(r"\x. x").size == 2
        assert R("<x>(y, z)").size == 4

    @given(rigid_text)
    def test_round_trip(self, text):
        e = R(text)
        assert R(render_rigid(e)) == e


class TestSubstitution:
    def test_occurrences(self):
        assert occurrences(R("<x>(x)"), "x") == 2
        assert occurrences(R(r"\x. <x>(x)"), "x") == 0
        assert occurrences(R("y"), "x") == 0

    def test_positional(self):
        assert rigid_substitute(R("<x>(x)"), "x", R("(u, v)")) == R("<u>(v)")

    def test_length_mismatch(self):
        assert rigid_substitute(R("x"), "x", ()) is ZERO
        assert rigid_substitute(R("<x>(x)"), "x", (R(r"\x. <x>(x)"),)) is ZERO

    @given(rigid_text, rigid_text)
    def test_zero_unless_lengths_match(self, text, arg):
        e, b = R(text), R(arg)
        for k in range(3):
            out = rigid_substitute(e, "x", (b,) * k)
            if occurrences(e, "x") != k:
                assert out is ZERO


class TestReduction:
    def test_rigid_omega_reduces_to_zero(self):
        assert r_successors(R(RIGID_OMEGA)) == {ZERO}
        assert r_normal_form(R(RIGID_OMEGA)) is ZERO

    def test_identity_redex(self):
        assert r_successors(R(r"<\x. x>(y)")) == {R("y")}

    def test_normal(self):
        assert r_successors(R("x")) == frozenset()
        assert r_normal_form(R("<x>()")) == R("<x>()")

    def test_normal_form_is_order_independent(self):
        e = R(r"<\x. <x>(x)>(\y. y, z)")
        assert all_normal_forms(e) == {r_normal_form(e)} == {R("z")}

    @pytest.mark.parametrize("e", rigid_terms(150, seed=3), ids=render_rigid)
    def test_steps_decrease_size_and_agree(self, e):
        for _, r in r_steps(e):
            assert r is ZERO or r.size < e.size
        assert all_normal_forms(e) == {r_normal_form(e)}

    def test_rigid_steps_kinds(self):
        e = R(r"<\x. y>(<\x. x>(z))")
        assert [r for _, r in rigid_steps(e, "erasing")] == [ZERO]
        assert [r for _, r in rigid_steps(e, "non-erasing")] == [R(r"<\x. y>(z)")]
        with pytest.raises(ValueError):
            rigid_steps(e, "head")


class TestHead:
    def test_decompose_variable(self):
        d = rigid_head_decompose(R(r"\x. <<y>(a)>(b)"))
        assert d.binders == ("x",) and d.core == Free("y")
        assert d.args == ((Free("a"),), (Free("b"),))

    def test_decompose_redex(self):
        e = R(r"<\x. x>(y)")
        d = rigid_head_decompose(e)
        assert d.is_redex and d.core == e and d.args == ()

    def test_decompose_zero(self):
        assert rigid_head_decompose(ZERO).kind == "zero"

    def test_head_step(self):
        assert rigid_head_step(R(RIGID_OMEGA)) is ZERO
        hnf = R(r"<x>(<\y. y>(z))")
        assert rigid_head_step(hnf) == hnf
        assert rigid_head_step(ZERO) is ZERO

    def test_left_parallel_step(self):
        assert rigid_left_parallel_step(R(r"<x>(<\y. y>(z))")) == R("<x>(z)")
        assert rigid_left_parallel_step(R(r"\x. x")) == R(r"\x. x")
        assert rigid_left_parallel_step(R(r"<\x. x>(y)")) == R("y")

    @pytest.mark.parametrize("e", rigid_terms(100, seed=5), ids=render_rigid)
    def test_left_parallel_reaches_normal_form(self, e):
        nf = r_normal_form(e)
        for _ in range(e.size + 1):
            if e == nf:
                break
            e = rigid_left_parallel_step(e)
        assert e == nf

    @pytest.mark.parametrize("e", rigid_terms(100, seed=6), ids=render_rigid)
    def test_head_iteration_avoids_zero_for_live_terms(self, e):
        if r_normal_form(e) is ZERO:
            return
        for _ in range(e.size + 1):
            e = rigid_head_step(e)
            assert e is not ZERO
        assert rigid_head_decompose(e).kind == "variable"


class TestSigma1:
    def test_rule_instance(self):
        assert rigid_sigma1_successors(R(r"<<\x. x>(y)>(z)")) == {R(r"<\x. <x>(z)>(y)")}

    def test_none(self):
        assert rigid_sigma1_successors(R("<x>(y)")) == frozenset()

    def test_counterexample_first_step(self):
        s = R(CONFLUENCE_COUNTEREXAMPLE)
        assert rigid_sigma1_successors(s) == {
            R(r"<\y. <\x. <<x>(x)>(y)>(y, y)>(\f. <z>(f), \f. <z>(), \f. <z>())")}

    def test_counterexample_has_zero_and_nonzero_normal_forms(self):
        s = R(CONFLUENCE_COUNTEREXAMPLE)
        nfs = rigid_normal_forms(s)
        assert ZERO in nfs
        assert R(r"<<z>(\f. <z>())>(\f. <z>())") in nfs

    def test_r_first_sequence(self):
        s = R(CONFLUENCE_COUNTEREXAMPLE)
        s1 = R(r"<<\x. <x>(x)>(\f. <z>(f), \f. <z>())>(\f. <z>())")
        s2 = R(r"<\x. <<x>(x)>(\f. <z>())>(\f. <z>(f), \f. <z>())")
        assert s1 in r_successors(s)
        assert s2 in rigid_sigma1_successors(s1)
        # two more r steps reach a non-zero normal form
        (s3,) = r_successors(s2)
        (s4,) = r_successors(s3)
        assert is_r_normal(s4) and s4 is not ZERO


class TestPositivity:
    def test_examples(self):
        assert not is_positive_rigid(R("<x>()"))
        assert is_positive_rigid(R("<x>(y)"))
        assert not is_positive_rigid(R(r"\x. <x>(<y>())"))

    def test_zero_is_not_positive(self):
        assert not is_positive_rigid(ZERO)


def test_linapp_is_the_node_type():
    assert isinstance(R("<x>(y)"), LinApp)

import random

import pytest

from conftest import OMEGA, lambda_terms
from taylorlam._core import LinApp, MApp
from taylorlam.expansion import (
    Budget, forget, is_rigid_approximant, is_taylor_approximant, iter_rigid_expand,
    represents, rigid_expand, rigid_substitution_image, taylor_support_expand,
)
from taylorlam.laws import _random_approximant
from taylorlam.resource import parse_resource, render_resource
from taylorlam.rigid import ZERO, parse_rigid, render_rigid
from taylorlam.syntax import parse, render, substitute

P, R, D = parse, parse_rigid, parse_resource


class TestBudget:
    @pytest.mark.parametrize("bad", [0, -1, 1.5, True, "3"])
    def test_rejects_non_positive(self, bad):
        with pytest.raises(ValueError):
            Budget(max_size=bad)

    def test_defaults(self):
        assert Budget().to_dict() == {"max_size": 10, "max_count": 200, "max_steps": 200}


class TestRigidExpand:
    def test_abstraction_without_application(self):
        assert rigid_expand(P(r"\x. x"), Budget(3, 5)) == [R(r"\x. x")]

    def test_widths_in_order(self):
        assert rigid_expand(P("x y"), Budget(4, 10)) == [R("<x>()"), R("<x>(y)"), R("<x>(y, y)")]

    @pytest.mark.parametrize("size", [2, 5, 9])
    def test_x_omega_contains_empty_application(self, size):
        assert R("<x>()") in rigid_expand(P(f"x ({OMEGA})"), Budget(size, 50))

    def test_order_is_by_size(self):
        sizes = [a.size for a in rigid_expand(P(OMEGA), Budget(9, 100))]
        assert sizes == sorted(sizes)

    def test_count_cap(self):
        assert len(rigid_expand(P(OMEGA), Budget(12, 7))) == 7

    def test_membership(self):
        assert is_rigid_approximant(R("<x>()"), P("x y"))
        assert not is_rigid_approximant(R("<x>(z)"), P("x y"))
        assert is_rigid_approximant(R(r"\x. <x>(x)"), P(r"\x. x x"))
        assert not is_rigid_approximant(ZERO, P("x"))

    @pytest.mark.parametrize("m", lambda_terms(30, seed=21), ids=render)
    def test_sound_and_complete(self, m):
        budget = Budget(8, 10_000)
        out = rigid_expand(m, budget)
        assert all(is_rigid_approximant(a, m) for a in out)
        assert len(set(out)) == len(out)
        rng = random.Random(render(m))
        for _ in range(20):
            a = _random_approximant(rng, m, LinApp, False)
            if a.size <= budget.max_size:
                assert a in out


class TestTaylorExpand:
    def test_abstraction(self):
        assert taylor_support_expand(P(r"\x. x"), Budget(3, 5)) == [D(r"\x. x")]

    def test_widths(self):
        assert taylor_support_expand(P("x y"), Budget(4, 10)) == [
            D("<x>[]"), D("<x>[y]"), D("<x>[y, y]")]

    def test_omega_smallest_element(self):
        # the smallest element uses empty bags; width one everywhere needs size 9
        out = taylor_support_expand(P(OMEGA), Budget(9, 500))
        assert out[0] == D(r"<\x. <x>[]>[]") and out[0].size == 4
        full = D(r"<\x. <x>[x]>[\x. <x>[x]]")
        assert full.size == 9 and full in out
        assert full not in taylor_support_expand(P(OMEGA), Budget(8, 500))

    def test_membership(self):
        xo = P(f"x ({OMEGA})")
        assert is_taylor_approximant(D("<x>[]"), xo)
        assert not is_taylor_approximant(D("<y>[]"), xo)
        assert is_taylor_approximant(D("<x>[y, y]"), P("x y"))

    @pytest.mark.parametrize("m", lambda_terms(30, seed=22), ids=render)
    def test_is_image_of_rigid_expansion(self, m):
        budget = Budget(8, 10_000)
        rigid = {forget(a) for a in rigid_expand(m, budget)}
        assert set(taylor_support_expand(m, budget)) == rigid

    @pytest.mark.parametrize("m", lambda_terms(20, seed=23), ids=render)
    def test_rigid_terms_represent_one_multiset(self, m):
        for a in rigid_expand(m, Budget(7, 200)):
            matches = [s for s in taylor_support_expand(m, Budget(7, 10_000))
                       if represents(a, s)]
            assert matches == [forget(a)]


class TestRepresentation:
    def test_variable(self):
        assert represents(R("x"), D("x"))

    def test_permutation(self):
        assert represents(R("(u, v)"), D("[v, u]"))

    def test_length_mismatch(self):
        assert not represents(R("(u, v)"), D("[u]"))

    def test_forget(self):
        assert forget(R("(v, u)")) == D("[u, v]")
        assert forget(R("<x>(y, y)")) == D("<x>[y, y]")
        assert forget(R(r"\x. <x>(x)")) == D(r"\x. <x>[x]")
        assert isinstance(forget(R("<x>(y)")), MApp)

    def test_forget_zero(self):
        with pytest.raises(ValueError):
            forget(ZERO)


class TestSubstitutionImage:
    B = Budget(5, 10)

    def test_variable(self):
        assert rigid_substitution_image(P("x"), "x", P("y"), self.B) == [R("y")]

    def test_absent_name(self):
        assert rigid_substitution_image(P("z"), "x", P("y"), self.B) == [R("z")]

    def test_self_application(self):
        # <x>(x,...,x) with k arguments takes k+1 copies of y, so every width survives
        out = rigid_substitution_image(P("x x"), "x", P("y"), self.B)
        assert out == [R("<y>()"), R("<y>(y)"), R("<y>(y, y)"), R("<y>(y, y, y)")]
        assert out == rigid_expand(P("y y"), self.B)

    @pytest.mark.parametrize("m", lambda_terms(15, seed=24), ids=render)
    def test_image_approximates_substituted_term(self, m):
        n = P(r"\z. z z")
        target = substitute(m, "x", n)
        for a in rigid_substitution_image(m, "x", n, Budget(7, 30)):
            assert is_rigid_approximant(a, target)


def test_lazy_enumeration_is_infinite_for_applications():
    it = iter_rigid_expand(P("x y"), 30)
    first = [next(it) for _ in range(25)]
    assert first[-1] == LinApp(P("x"), (P("y"),) * 24)
    assert render_rigid(first[0]) == "<x>()"
    assert render_resource(D("<x>[]")) == "<x>[]"

"""Prim, the unit map and the coBar tower on small exact examples."""

import pytest

from koszulab.complexes import Window, cohomology_dims, is_quasi_iso, quasi_iso_failures
from koszulab.operadic import (CobarStage, CobarTower, CutoffPolicy, bracket_rank_on_cohomology, certified_floor,
                               chevalley, cobar_stage, fiber_degree_bound, prim_lie, stabilization_bound, unit_map)
from koszulab.verifysuite import corpus

W6 = Window(-6, -1)


def window_dims(c, w):
    h = cohomology_dims(c)
    return {n: h.get(n, 0) for n in range(w.lo, w.hi + 1)}


def nonzero(d):
    return {n: v for n, v in d.items() if v}


@pytest.fixture(scope="module")
def towers():
    return {c.name: c for c in corpus.tower_corpus()}


class TestPrim:
    def test_trivial_coalgebra_gives_free_lie(self, towers):
        p = prim_lie(towers["triv(-2)"], CutoffPolicy(W6))
        assert nonzero(window_dims(p.complex, W6)) == {-1: 1, -2: 1}
        assert bracket_rank_on_cohomology(p, W6) == {-2: 1}

    def test_abelian_round_trip(self, towers):
        p = prim_lie(towers["Chev(ab1(-1))"], CutoffPolicy(W6))
        assert nonzero(window_dims(p.complex, W6)) == {-1: 1}
        assert not bracket_rank_on_cohomology(p, W6)

    @pytest.mark.parametrize("name", sorted(corpus.LIE))
    def test_unit_is_quasi_iso(self, name):
        g = corpus.LIE[name]()
        cut = CutoffPolicy(W6)
        c = chevalley(g, cut)
        p = prim_lie(c, cut, with_bracket=False)
        assert is_quasi_iso(unit_map(g, c, p), W6)

    def test_prim_is_a_lie_algebra(self):
        cut = CutoffPolicy(W6)
        p = prim_lie(chevalley(corpus.semidirect(), cut), cut)
        assert not p.check()

    def test_weak_conservativity_counterexample(self):
        # same Prim dims, different bracket on cohomology
        cut = CutoffPolicy(W6)
        a = prim_lie(chevalley(corpus.free_odd(), cut), cut)
        b = prim_lie(chevalley(corpus.LIE["ab2(-1,-2)"](), cut), cut)
        assert window_dims(a.complex, W6) == window_dims(b.complex, W6)
        assert bracket_rank_on_cohomology(a, W6) != bracket_rank_on_cohomology(b, W6)


class TestTowerBounds:
    def test_stabilization_bound(self):
        assert [stabilization_bound(-k) for k in (1, 2, 3, 5, 6, 12, 13)] == [0, 1, 2, 2, 3, 3, 4]

    def test_fiber_and_floor(self):
        assert [fiber_degree_bound(n) for n in (1, 2, 3)] == [-3, -4, -5]
        assert certified_floor(3) == -5


class TestCobar:
    def test_stage_zero_is_carrier(self, towers):
        for c in towers.values():
            st, f = cobar_stage(c, 0, CutoffPolicy(W6))
            assert f is None
            assert window_dims(st, W6) == window_dims(c.complex, W6)

    def test_stage_one_of_trivial(self, towers):
        w = Window(-3, -1)
        st, _ = cobar_stage(towers["triv(-2)"], 1, CutoffPolicy(w))
        assert window_dims(st, w) == {-3: 1, -2: 1, -1: 0}

    def test_cosimplicial_identities(self, towers):
        t = CobarTower(towers["triv(-2)"], -8, 2)
        for k in range(3):
            assert not t.check_cosimplicial(k)
        for n in range(3):
            d = CobarStage(t, n).complex.d
            for k, m in d.items():
                if k + 1 in d:
                    assert (d[k + 1] @ m).is_zero()

    @pytest.mark.parametrize("n", [1, 2])
    def test_tower_map_above_fiber_bound(self, towers, n):
        w = Window(-n - 1, -1)
        for c in towers.values():
            _, f = cobar_stage(c, n, CutoffPolicy(w))
            assert is_quasi_iso(f, w)

    def test_literal_bound_fails_at_stage_two(self, towers):
        w = Window(-5, -1)
        for c in towers.values():
            _, f = cobar_stage(c, 2, CutoffPolicy(w))
            assert quasi_iso_failures(f, w) == [(-5, 0, 1, 0)]

    def test_prim_matches_shifted_tower(self, towers):
        w = Window(-4, -1)
        c = towers["triv(-2)"]
        p = prim_lie(c, CutoffPolicy(w), with_bracket=False)
        tower = CobarStage(CobarTower(c, -7, 2), 2).complex
        h = cohomology_dims(tower)
        assert window_dims(p.complex, w) == {n: h.get(n - 1, 0) for n in range(w.lo, w.hi + 1)}

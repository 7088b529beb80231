import pytest

from koszulab.basecat import BaseObject
from koszulab.complexes import Complex, Window, cohomology_dims
from koszulab.filtrations import (CoFilteredObject, FilteredObject, GradedObject, add_cofil, add_fil, assgr,
                                  check_fundamental_diagram, chevalley_fil, cochevalley_cofil, decay_threshold,
                                  graded_product_dims, graded_sum_dims, is_decaying, is_stabilizing, oblv,
                                  projection, stabilization_threshold, sub_object)
from koszulab.operadic import CutoffPolicy, dual_lie
from koszulab.verifysuite import corpus

W = Window(-6, -1)
C = Window(1, 6)


def point(n, name="x"):
    return BaseObject.from_complex(Complex.point(n, name))


def flat(obj):
    return {n: v for n, v in cohomology_dims(obj.complex).items() if v}


class TestAdd:
    def test_add_fil(self):
        f = add_fil(point(-1))
        assert f.top == 1
        g = assgr(f)
        assert flat(g.pieces[1]) == {-1: 1} and g.extent == 2

    def test_add_zero(self):
        assert add_fil(BaseObject.zero()).top == 0
        assert oblv(add_cofil(BaseObject.zero())).is_zero()

    def test_constant_tower_stabilizes(self):
        c = add_cofil(point(2))
        assert stabilization_threshold(c, C) == 1
        assert is_decaying(assgr(c), C)
        assert flat(oblv(c, C)) == {2: 1}

    def test_graded_indices_positive(self):
        with pytest.raises(ValueError):
            GradedObject({0: point(0)})

    def test_stage_maps_required(self):
        with pytest.raises(ValueError):
            FilteredObject({1: point(0), 2: point(0)})
        with pytest.raises(ValueError):
            CoFilteredObject({1: point(0), 3: point(0)})


class TestChevalleyFiltration:
    def test_stages_grow(self):
        fil = chevalley_fil(corpus.LIE["ab1(-1)"](), CutoffPolicy(W))
        dims = [fil.stages[n].complex.total_dim() for n in range(1, fil.top + 1)]
        assert dims == sorted(dims) and dims[0] == 1

    def test_pieces_are_sym_powers(self):
        fil = chevalley_fil(corpus.LIE["ab1(-1)"](), CutoffPolicy(W))
        g = assgr(fil)
        for n in range(1, 4):
            assert flat(g.pieces[n]) == {-2 * n: 1}

    @pytest.mark.parametrize("name", ["free1", "semidirect", "ab2(-1,-2)"])
    def test_fundamental_diagram(self, name):
        rep = check_fundamental_diagram(corpus.LIE[name](), "chevalley", W)
        assert rep.ok, rep.table()


class TestCochevalleyTower:
    def test_tower_stabilizes(self):
        h = dual_lie(corpus.LIE["ab2(-1,-2)"]())
        cof = cochevalley_cofil(h, CutoffPolicy.for_window(1, 6))
        assert is_stabilizing(cof, C) and is_decaying(assgr(cof), C)
        clip = lambda d: {n: v for n, v in d.items() if C.lo <= n <= C.hi}
        assert clip(flat(oblv(cof, C))) == clip(flat(cof.total.carrier))

    def test_short_tower_does_not_stabilize(self):
        h = dual_lie(corpus.LIE["ab1(-1)"]())
        cof = cochevalley_cofil(h, CutoffPolicy.for_window(1, 6), extent=2)
        assert stabilization_threshold(cof, C) is None
        assert decay_threshold(assgr(cof), C) is None

    @pytest.mark.parametrize("name", ["free1", "semidirect", "ab1(-2)"])
    def test_fundamental_diagram(self, name):
        rep = check_fundamental_diagram(dual_lie(corpus.LIE[name]()), "cochevalley", C)
        assert rep.ok, rep.table()

    def test_unknown_functor(self):
        with pytest.raises(ValueError):
            check_fundamental_diagram(corpus.free_odd(), "prim", W)


class TestSumProduct:
    def test_decaying_sum_equals_product(self):
        g = GradedObject({1: point(1, "a"), 2: point(3, "b")}, extent=4)
        assert decay_threshold(g, C) == 3
        assert graded_sum_dims(g, C) == graded_product_dims(g, C)

    def test_projection_of_sub_object(self):
        v = BaseObject.from_complex(Complex({1: ["a", "b"]}))
        small = sub_object(v, ["a"])
        assert projection(v, small).source is v.complex

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulab.basecat import BaseObject, compactly_supported_cohomology, connectivity_check
from koszulab.complexes import Complex, cohomology_dims, tensor
from koszulab.operadic import (AxiomViolation, CutoffPolicy, HypothesisViolation, StrictLieAlgebra, chevalley, cochev_stage, cochevalley,
                               dual_colie, dual_comcoalg, dual_lie, free_lie, stage_projection, structure_from_json,
                               sym_power, trivial_colie, trivial_comcoalg, trivial_lie, witt_dimensions)
from koszulab.operadic.freelie import free_lie_dimensions, is_lyndon, lyndon_words
from koszulab.ranmodel import DiagonalCoLieFamily
from koszulab.verifysuite import corpus

W8 = CutoffPolicy.for_window(-8, -1)
C8 = CutoffPolicy.for_window(1, 8)


def vect(space):
    return BaseObject.from_complex(Complex(space))


def window_dims(c, lo, hi):
    h = cohomology_dims(c)
    return {n: h.get(n, 0) for n in range(lo, hi + 1)}


class TestSym:
    def test_odd_square_vanishes(self):
        assert sym_power(vect({-1: ["x"]}), 2).is_zero()

    def test_even_cube(self):
        assert sym_power(vect({-2: ["x"]}), 3).complex.dims() == {-6: 1}

    def test_binomial(self):
        assert sym_power(vect({-2: ["x", "y"]}), 2).complex.total_dim() == 3

    @given(st.integers(0, 3), st.integers(0, 3), st.integers(1, 4))
    def test_dimension_count(self, even, odd, m):
        from math import comb
        v = vect({-2: ["e%d" % i for i in range(even)], -1: ["o%d" % i for i in range(odd)]})
        expect = sum(comb(even + k - 1, k) * comb(odd, m - k) for k in range(m + 1)) if even else comb(odd, m)
        assert sym_power(v, m).complex.total_dim() == expect


class TestFreeLie:
    def test_one_even_generator(self):
        assert free_lie_dimensions([-2], 3) == {(1, -2): 1}

    def test_one_odd_generator(self):
        g = free_lie(vect({-1: ["x"]}), 3)
        assert g.complex.dims() == {-2: 1, -1: 1}
        assert not g.check()

    def test_two_even_generators(self):
        dims = free_lie_dimensions([-2, -2], 3)
        by_length = {l: sum(v for (k, _), v in dims.items() if k == l) for l in (1, 2, 3)}
        assert by_length == {1: 2, 2: 1, 3: 2}

    @given(st.lists(st.sampled_from([-1, -2, -3]), min_size=1, max_size=3), st.integers(1, 4))
    def test_lyndon_basis_matches_witt(self, degs, length):
        assert free_lie_dimensions(degs, length) == witt_dimensions(degs, length)

    @given(st.lists(st.sampled_from([-1, -2]), min_size=1, max_size=2))
    def test_free_lie_axioms(self, degs):
        names = ["g%d" % i for i in range(len(degs))]
        space = {}
        for n, d in zip(names, degs):
            space.setdefault(d, []).append(n)
        g = free_lie(vect(space), 3)
        assert not g.check()

    def test_lyndon_words(self):
        words = lyndon_words(2, 3)
        assert all(is_lyndon(w) for w in words)
        assert len(words) == 2


class TestStructures:
    def test_trivial_structures(self):
        g = trivial_lie(vect({-1: ["x"]}))
        assert not g.table and not g.check()
        c = trivial_comcoalg(vect({-2: ["x"]}))
        assert c.is_conilpotent()

    def test_corpus_axioms(self):
        for g in corpus.lie_corpus():
            assert not g.check(), g.name
        for h in corpus.colie_corpus():
            assert not h.check(), h.name

    def test_jacobi_violation_detected(self):
        br = {("a", "b"): {"c": 1}, ("b", "c"): {"a": 1}, ("a", "c"): {"b": 1}}
        with pytest.raises(AxiomViolation):
            StrictLieAlgebra(vect({-2: ["a", "b", "c"]}), br)

    def test_duals_round_trip(self):
        for g in corpus.lie_corpus() + [f.to_lie() for f in corpus.lie_families()]:
            h = dual_lie(g)
            assert not h.check()
            assert dual_colie(h).table == g.table

    @pytest.mark.parametrize("name", ["semidirect", "free1"])
    def test_dual_coalgebra_is_an_algebra(self, name):
        # odd letters meeting a nonzero differential exercise the pairing sign
        c = chevalley(corpus.LIE[name](), W8)
        assert not dual_comcoalg(c).check()

    def test_dual_coalgebra_over_finran(self):
        fam = corpus.lie_families()[2]
        assert not dual_comcoalg(chevalley(fam.to_lie(), W8)).check()

    def test_json_round_trip(self):
        for g in corpus.lie_corpus():
            back = structure_from_json(g.to_json())
            assert back.table == g.table and back.complex == g.complex
        c = chevalley(corpus.LIE["ab1(-1)"](), W8)
        assert structure_from_json(c.to_json()).table == c.table


class TestChevalley:
    def test_abelian(self):
        c = chevalley(trivial_lie(vect({-1: ["x"]})), W8)
        assert not c.complex.d
        assert {n: v for n, v in c.complex.dims().items() if n >= -8} == {-2: 1, -4: 1, -6: 1, -8: 1}

    def test_free_odd(self):
        c = chevalley(corpus.free_odd(), W8)
        assert window_dims(c.complex, -8, -1) == {n: int(n == -2) for n in range(-8, 0)}

    def test_weight_bound(self):
        c = chevalley(corpus.LIE["ab2(-1,-2)"](), W8)
        for x, w in c.weight.items():
            assert c.carrier.degree(x) <= -w

    def test_axioms_and_cutoff(self):
        for g in corpus.lie_corpus():
            c = chevalley(g, W8)
            assert not c.check()
            assert c.cutoff.window == W8.window and c.cutoff.max_weight

    def test_factorization_stalk(self):
        fam = corpus.lie_families()[0]
        c = chevalley(fam.to_lie(), W8)
        single = chevalley(corpus.LIE["ab1(-1)"](), W8).complex
        both = tensor(single, single)
        assert window_dims(c.carrier.stalk(frozenset("ab")), -8, -1) == window_dims(both, -8, -1)

    def test_chev_of_family_is_cA(self):
        for fam in corpus.lie_families():
            assert connectivity_check(chevalley(fam.to_lie(), W8).carrier, "c_cA")

    def test_degree_zero_warns(self):
        with pytest.warns(UserWarning, match="degree 0"):
            chevalley(corpus.sl2(), W8)


class TestCochevalley:
    def test_trivial(self):
        a = cochevalley(trivial_colie(vect({1: ["x"]})), C8)
        assert not a.complex.d
        assert {n: v for n, v in a.complex.dims().items() if n <= 8} == {2: 1, 4: 1, 6: 1, 8: 1}

    def test_dual_free_odd(self):
        a = cochevalley(dual_lie(corpus.free_odd()), C8)
        assert window_dims(a.complex, 1, 8) == {n: int(n == 2) for n in range(1, 9)}

    def test_two_point_family(self):
        fam = DiagonalCoLieFamily(("a", "b"), {p: trivial_colie(vect({1: ["x"]})) for p in "ab"})
        a = cochevalley(fam.to_colie(), C8)
        assert a.carrier.stalk(frozenset("ab")).dims().get(4) == 1
        h = cohomology_dims(compactly_supported_cohomology(a.carrier))
        assert (h.get(2), h.get(4)) == (2, 3)

    def test_degree_zero_rejected(self):
        with pytest.raises(HypothesisViolation):
            cochevalley(trivial_colie(vect({0: ["x"]})), C8)

    def test_axioms(self):
        for h in corpus.colie_corpus():
            assert not cochevalley(h, C8).check()

    def test_stage_one(self):
        h = dual_lie(corpus.LIE["semidirect"]())
        st1 = cochev_stage(h, 1, C8)
        assert st1.complex.total_dim() == h.complex.total_dim()

    def test_stages_converge(self):
        h = dual_lie(corpus.LIE["ab2(-1,-2)"]())
        full = window_dims(cochevalley(h, C8).complex, 1, 8)
        assert window_dims(cochev_stage(h, 8, C8).complex, 1, 8) == full

    def test_stage_support(self):
        fam = corpus.colie_families()[3]
        for i in (1, 2):
            st_i = cochev_stage(fam.to_colie(), i, C8)
            assert all(len(t) <= i for t in st_i.carrier.support())

    def test_stage_projection_is_chain_map(self):
        h = dual_lie(corpus.LIE["semidirect"]())
        stage_projection(cochev_stage(h, 3, C8), cochev_stage(h, 2, C8))

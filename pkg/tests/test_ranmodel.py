import pytest

from koszulab.basecat import BaseObject, compactly_supported_cohomology, finran, verdier_dual
from koszulab.complexes import Complex, ComplexError, Window, cohomology_dims
from koszulab.operadic import CutoffPolicy, chevalley, cochevalley, dual_comcoalg, dual_lie, trivial_colie
from koszulab.ranmodel import (DiagonalCoLieFamily, DiagonalLieFamily, FactorizationWitness, abelian_on_subset,
                               check_triple, compactly_supported_colie, disjoint_pairs, extend_by_zero,
                               is_factorization_algebra, is_factorization_coalgebra, restrict_to_open,
                               stalkwise_equal)
from koszulab.verifysuite import corpus

W = Window(-6, -1)
CUT = CutoffPolicy(W)
CCUT = CutoffPolicy.for_window(1, 6)


def family(*names, points="abc"):
    return DiagonalLieFamily(tuple(points[:len(names)]), {p: corpus.LIE[n]() for p, n in zip(points, names)})


class TestPairs:
    def test_counts(self):
        # unordered disjoint pairs of nonempty subsets of an n-set: (3^n - 2^(n+1) + 1) / 2
        for n in (1, 2, 3, 4):
            assert len(list(disjoint_pairs(finran("abcd"[:n])))) == (3 ** n - 2 ** (n + 1) + 1) // 2

    def test_witness_validation(self):
        with pytest.raises(ValueError):
            FactorizationWitness(frozenset("a"), frozenset("ab"), 0, (1, 0))


class TestFactorization:
    @pytest.mark.parametrize("names", [("ab1(-1)", "ab1(-1)"), ("ab2(-1,-2)", "free1"),
                                       ("ab1(-1)", "semidirect", "ab1(-2)")])
    def test_chev_of_diagonal_is_factorizable(self, names):
        c = chevalley(family(*names).to_lie(), CUT)
        assert is_factorization_coalgebra(c, W) is True

    def test_triple_component(self):
        c = chevalley(family("ab1(-1)", "ab1(-2)", "ab1(-1)").to_lie(), CUT)
        a, b, d = (frozenset(x) for x in "abc")
        assert check_triple(c, a, b, d, W)

    def test_offdiagonal_witness(self):
        c = chevalley(corpus.offdiagonal_lie(), CUT)
        res = is_factorization_coalgebra(c, W)
        assert not res
        assert {res.s1, res.s2} == {frozenset("a"), frozenset("b")}
        assert res.degree == -2 and res.dims == (1, 0)
        assert res.to_json()["degree"] == -2

    def test_cochev_of_diagonal_is_factorizable(self):
        fam = DiagonalCoLieFamily(("a", "b"), {p: dual_lie(corpus.LIE["ab1(-1)"]()) for p in "ab"})
        assert is_factorization_algebra(cochevalley(fam.to_colie(), CCUT), CCUT.window) is True

    def test_needs_finran(self):
        with pytest.raises(ComplexError):
            is_factorization_coalgebra(chevalley(corpus.LIE["ab1(-1)"](), CUT))


class TestDuality:
    def test_verdier_of_chev_matches_cochev(self):
        fam = family("ab1(-1)", "ab2(-1,-2)")
        lhs = dual_comcoalg(chevalley(fam.to_lie(), CUT))
        rhs = cochevalley(fam.dual().to_colie(), CCUT)
        assert stalkwise_equal(lhs.carrier, rhs.carrier, CCUT.window)

    def test_verdier_of_carrier(self):
        fam = family("ab1(-2)", "ab1(-2)")
        assert stalkwise_equal(verdier_dual(fam.to_lie().carrier), fam.dual().to_colie().carrier)

    def test_cstar_of_cochev_is_cochev_of_cstar(self):
        fam = DiagonalCoLieFamily(("a", "b"), {p: trivial_colie(BaseObject.from_complex(Complex.point(1, "x")))
                                               for p in "ab"})
        lhs = compactly_supported_cohomology(cochevalley(fam.to_colie(), CCUT).carrier)
        rhs = cochevalley(compactly_supported_colie(fam), CCUT).complex
        hl, hr = cohomology_dims(lhs), cohomology_dims(rhs)
        assert all(hl.get(n, 0) == hr.get(n, 0) for n in range(1, 7))


class TestOpen:
    def test_restrict_then_extend(self):
        f = chevalley(family("ab1(-1)", "ab1(-1)", "ab1(-2)").to_lie(), CUT).carrier
        r = restrict_to_open(f, ["a", "b"])
        assert r.base == finran("ab")
        assert all(t <= frozenset("ab") for t in r.support())
        e = extend_by_zero(r, ["a", "b", "c"])
        assert e.base == f.base

    def test_chev_commutes_with_restriction(self):
        fam = family("ab1(-1)", "free1", "ab1(-2)")
        whole = restrict_to_open(chevalley(fam.to_lie(), CUT).carrier, ["a", "c"])
        sub = DiagonalLieFamily(("a", "c"), {"a": fam.entries["a"], "c": fam.entries["c"]})
        assert stalkwise_equal(whole, chevalley(sub.to_lie(), CUT).carrier, W)

    def test_bad_open(self):
        f = abelian_on_subset("ab", "ab", -2)
        with pytest.raises(ComplexError):
            restrict_to_open(f, ["z"])
        with pytest.raises(ComplexError):
            restrict_to_open(f, [])

    def test_extension_needs_old_points(self):
        with pytest.raises(ComplexError):
            DiagonalCoLieFamily(("a",), {"a": dual_lie(corpus.LIE["ab1(-1)"]())}).extended(["b"])

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulab.basecat import (BaseMismatch, BaseObject, compactly_supported_cohomology, connectivity_check,
                              convolve, diagonal_embed, finran, graded, omega, stratum_inclusion, verdier_dual)
from koszulab.complexes import Complex, ComplexError, cohomology_dims, cone, tensor

X2 = finran(["a", "b"])
X3 = finran(["a", "b", "c"])


def on(base, stalks):
    """BaseObject from {subset string: {degree: dim}}."""
    out = {}
    for key, dims in stalks.items():
        out[frozenset(key)] = Complex({n: ["%s_%s%d_%d" % (key, "m" if n < 0 else "", abs(n), i)
                                           for i in range(k)] for n, k in dims.items()})
    return BaseObject.from_stalks(base, out)


def stalk_dims(f):
    return {"".join(sorted(t)): s.dims() for t, s in f.stalks().items() if not s.is_zero()}


def brute_convolve(f, g):
    """(f ⊗★ g)(S) dims by enumerating every pair S1 ∪ S2 = S."""
    out = {}
    for s1, a in f.stalks().items():
        for s2, b in g.stalks().items():
            key = "".join(sorted(s1 | s2))
            acc = out.setdefault(key, {})
            for n, v in tensor(a, b).dims().items():
                acc[n] = acc.get(n, 0) + v
    return {k: {n: v for n, v in d.items() if v} for k, d in out.items() if any(d.values())}


subsets3 = st.sampled_from(["a", "b", "c", "ab", "ac", "bc", "abc"])


@st.composite
def sheaves(draw, base=X3):
    keys = draw(st.lists(subsets3, max_size=3, unique=True))
    return on(base, {k: {draw(st.integers(-3, -1)): draw(st.integers(1, 2))} for k in keys})


class TestConvolve:
    def test_equal_singletons(self):
        f = on(X2, {"a": {0: 1}})
        assert stalk_dims(convolve(f, f)) == {"a": {0: 1}}

    def test_disjoint_singletons(self):
        f, g = on(X2, {"a": {-1: 1}}), on(X2, {"b": {-2: 1}})
        assert stalk_dims(convolve(f, g)) == {"ab": {-3: 1}}

    @given(sheaves(), sheaves(), sheaves())
    def test_associative(self, f, g, h):
        left = stalk_dims(convolve(convolve(f, g), h))
        right = stalk_dims(convolve(f, convolve(g, h)))
        assert left == right

    @given(sheaves(), sheaves())
    def test_matches_union_formula(self, f, g):
        assert stalk_dims(convolve(f, g)) == brute_convolve(f, g)

    def test_base_mismatch(self):
        with pytest.raises(BaseMismatch):
            convolve(on(X2, {"a": {0: 1}}), on(X3, {"a": {0: 1}}))

    def test_graded_tensor_is_index_additive(self):
        g = graded()
        f = BaseObject.from_complex(Complex.point(0, "x"), tag=(None, 1), base=g)
        h = BaseObject.from_complex(Complex.point(0, "y"), tag=(None, 2), base=g)
        assert set(convolve(f, h).tags.values()) == {(None, 3)}


class TestVerdier:
    def test_example(self):
        d = verdier_dual(on(X2, {"a": {-2: 1}}))
        assert stalk_dims(d) == {"a": {2: 1}}

    @given(sheaves())
    def test_involution(self, f):
        dd = verdier_dual(verdier_dual(f))
        assert stalk_dims(dd) == stalk_dims(f)

    @given(sheaves(), sheaves())
    def test_monoidal_on_finite_supports(self, f, g):
        lhs = stalk_dims(verdier_dual(convolve(f, g)))
        rhs = stalk_dims(convolve(verdier_dual(f), verdier_dual(g)))
        assert lhs == rhs

    def test_needs_finran(self):
        with pytest.raises(BaseMismatch):
            verdier_dual(BaseObject.from_complex(Complex.point(0)))


class TestCompactSupport:
    def test_examples(self):
        f = on(X2, {"a": {0: 1}, "b": {0: 1}, "ab": {0: 1}})
        assert compactly_supported_cohomology(f).total_dim() == 3
        assert compactly_supported_cohomology(f, 1).total_dim() == 2

    @given(sheaves())
    def test_monotone(self, f):
        dims = [compactly_supported_cohomology(f, n).total_dim() for n in range(4)]
        assert dims == sorted(dims)
        assert dims[3] == f.complex.total_dim()

    @given(sheaves(), st.integers(1, 3))
    def test_stratum_cofiber(self, f, k):
        c = cone(stratum_inclusion(f, k))
        expect = {}
        for t, s in f.stalks().items():
            if len(t) == k:
                for n, v in cohomology_dims(s).items():
                    expect[n] = expect.get(n, 0) + v
        got = {n: v for n, v in cohomology_dims(c).items() if v}
        assert got == {n: v for n, v in expect.items() if v}

    def test_omega(self):
        assert compactly_supported_cohomology(omega(X3)).dims() == {0: 7}


class TestConnectivity:
    def test_doubleton_degree_minus_two(self):
        f = on(X2, {"ab": {-2: 1}})
        assert connectivity_check(f, "c_L")
        res = connectivity_check(f, "c_cA")
        assert not res and res.subset == frozenset("ab") and res.degree == -2 and res.bound == -3

    def test_zero(self):
        z = BaseObject.zero(X2)
        for mode in ("c_L", "c_cA", ("at_least", 5)):
            assert connectivity_check(z, mode)

    def test_chev_of_singleton_family(self):
        from koszulab.operadic import CutoffPolicy, chevalley
        from koszulab.ranmodel import DiagonalLieFamily
        from koszulab.verifysuite.corpus import LIE
        fam = DiagonalLieFamily(("a",), {"a": LIE["ab2(-1,-2)"]()})
        c = chevalley(fam.to_lie(), CutoffPolicy.for_window(-8, -1))
        assert connectivity_check(c.carrier, "c_cA")

    def test_at_least(self):
        f = on(X2, {"a": {2: 1}, "ab": {1: 1}})
        assert connectivity_check(f, ("at_least", 1))
        assert not connectivity_check(f, ("at_least", 2))


class TestDiagonal:
    def test_single_point(self):
        f = diagonal_embed(finran(["a"]), {"a": Complex.point(-1)})
        assert len(f.support()) == 1

    def test_zero_family(self):
        assert diagonal_embed(X2, {"a": Complex.zero(), "b": Complex.zero()}).is_zero()

    def test_support_on_diagonal(self):
        f = diagonal_embed(X3, {p: Complex.point(-1, "x") for p in "abc"})
        assert all(len(t) == 1 for t in f.support())
        assert all(f.stalk(frozenset(s)).is_zero() for s in ("ab", "abc"))

    def test_missing_point(self):
        with pytest.raises(ComplexError):
            diagonal_embed(X2, {"a": Complex.point(0)})

    @given(sheaves())
    def test_json_round_trip(self, f):
        assert stalk_dims(BaseObject.from_json(f.to_json())) == stalk_dims(f)

    def test_no_empty_stalk(self):
        with pytest.raises(ComplexError):
            X2.validate_tag(frozenset())

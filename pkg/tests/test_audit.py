from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulab.verifysuite.audit import (atiyah_bott_generators, atiyah_bott_series, bound_audit, cover_sums, covers,
                                        sym_dimension_series)


class TestCovers:
    def test_small(self):
        assert sorted(covers(2, 2)) == sorted([(1, 1), (1, 1), (1, 2), (2, 1), (2, 2), (2, 1), (1, 2)])

    @pytest.mark.parametrize("size,parts", [(1, 1), (2, 3), (3, 2), (3, 3)])
    def test_count_is_inclusion_exclusion(self, size, parts):
        # ordered k-tuples of nonempty subsets covering an n-set
        expect = sum((-1) ** j * comb(size, j) * (2 ** (size - j) - 1) ** parts for j in range(size + 1))
        assert len(covers(size, parts)) == expect

    @pytest.mark.parametrize("size,parts", [(1, 3), (3, 1), (3, 3), (4, 2)])
    def test_sums(self, size, parts):
        assert sorted({sum(c) for c in covers(size, parts)}) == list(cover_sums(size, parts))


class TestBoundAudit:
    @pytest.mark.parametrize("d", [1, 2])
    def test_all_chains_hold(self, d):
        rep = bound_audit(d, max_parts=3, max_size=3, max_stage=3)
        assert rep.ok, rep.table()
        assert rep.cases


class TestAtiyahBott:
    def test_genus_zero(self):
        assert atiyah_bott_series([1], 0, 8) == [1, 0, 1, 0, 2, 0, 2, 0, 3]

    def test_genus_one(self):
        # (1 + t^3)^2 / ((1 - t^2)(1 - t^4))
        assert atiyah_bott_series([1], 1, 8) == [1, 0, 1, 2, 2, 2, 3, 4, 4]

    def test_empty_product(self):
        assert atiyah_bott_series([], 3, 4) == [1, 0, 0, 0, 0]

    def test_generators(self):
        assert atiyah_bott_generators([1, 2], 1) == {2: 1, 3: 2, 4: 2, 5: 2, 6: 1}

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            atiyah_bott_series([0], 1, 4)
        with pytest.raises(ValueError):
            atiyah_bott_series([1], -1, 4)
        with pytest.raises(ValueError):
            atiyah_bott_series([1], 1, 0)

    @settings(max_examples=15)
    @given(st.lists(st.integers(1, 3), max_size=2), st.integers(0, 2), st.integers(1, 10))
    def test_matches_sym_count(self, exps, genus, order):
        assert atiyah_bott_series(exps, genus, order) == sym_dimension_series(exps, genus, order)

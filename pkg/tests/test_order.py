import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addbasis import (
    COUNTEREXAMPLE,
    CUBES,
    SQUARES,
    Explicit,
    SubseqSpec,
    SweepConfig,
    order_bounds,
    random_stability_sweep,
    stability_probe,
)


class TestOrderBounds:
    def test_counterexample(self):
        rep = order_bounds(COUNTEREXAMPLE, 10**4, 5)
        assert (rep.upper, rep.lower, rep.witness) == (3, 3, 21)
        assert rep.witness_fold == 2
        assert rep.certified_lower and rep.zero_in_set

    def test_squares(self):
        rep = order_bounds(SQUARES, 10**4, 6)
        assert (rep.upper, rep.lower, rep.witness) == (4, 4, 7)

    def test_cubes(self):
        rep = order_bounds(CUBES, 10**4, 10)
        assert (rep.upper, rep.lower, rep.witness) == (9, 9, 23)

    def test_hmax_exhausted(self):
        # 3-fold squares still has gaps, so the data certifies order > 3
        rep = order_bounds(SQUARES, 10**4, 3)
        assert rep.upper is None
        assert (rep.lower, rep.witness) == (4, 7)
        assert rep.certified_lower

    def test_scan_rows(self):
        rep = order_bounds(SQUARES, 100, 6)
        assert [(r.h, r.covered) for r in rep.scan] == [
            (1, False),
            (2, False),
            (3, False),
            (4, True),
        ]
        assert rep.scan[2].first_gap == 7

    def test_binary_set(self):
        rep = order_bounds(Explicit((0, 1)), 5, 5)
        assert (rep.upper, rep.lower, rep.witness) == (5, 5, 5)

    def test_no_zero_never_covers(self):
        rep = order_bounds(Explicit((1,)), 3, 4)
        assert rep.upper is None
        assert not rep.zero_in_set

    def test_lower_monotone_in_bound(self):
        small = order_bounds(COUNTEREXAMPLE, 2000, 5)
        large = order_bounds(COUNTEREXAMPLE, 10**4, 5)
        assert small.lower <= large.lower

    def test_hmax_precondition(self):
        with pytest.raises(ValueError):
            order_bounds(SQUARES, 100, 0)


class TestStabilityProbe:
    def test_gap_filling_augmentation_keeps_witnesses(self):
        family = SubseqSpec(2, 10, 1, start=2, count=4)
        rep = stability_probe(
            COUNTEREXAMPLE, tuple(range(11, 22)), 3, family, 210000
        )
        assert 20001 in rep.survivors and 200001 in rep.survivors
        assert rep.survivors == (201, 2001, 20001, 200001)
        assert rep.probe_fold == 2
        assert "ruled out" in rep.conclusion

    def test_empty_augmentation(self):
        family = SubseqSpec(2, 10, 1, start=1, count=4)
        rep = stability_probe(COUNTEREXAMPLE, (), 3, family, 21000)
        assert rep.survivors == (21, 201, 2001, 20001)
        assert rep.added == ()

    def test_h_two_reduces_to_membership(self):
        family = SubseqSpec(a=1, base=None, c=2, start=1, count=3)  # 3, 4, 5
        rep = stability_probe(Explicit((0, 1)), (5,), 2, family, 10)
        assert rep.survivors == (3, 4)
        verdicts = {v.n: v.in_sumset for v in rep.verdicts}
        assert verdicts == {3: False, 4: False, 5: True}

    def test_absorbed_witness(self):
        # F = {21} puts the first witness inside 2(A ∪ F): 21 = 21 + 0
        family = SubseqSpec(2, 10, 1, start=1, count=2)
        rep = stability_probe(COUNTEREXAMPLE, (21,), 3, family, 2100)
        assert rep.survivors == (201,)

    def test_term_beyond_bound(self):
        family = SubseqSpec(2, 10, 1, start=1, count=4)
        with pytest.raises(ValueError):
            stability_probe(COUNTEREXAMPLE, (), 3, family, 2100)

    def test_h_precondition(self):
        with pytest.raises(ValueError):
            stability_probe(COUNTEREXAMPLE, (), 1, SubseqSpec(2, 10, 1, count=1), 100)

    @settings(max_examples=20, deadline=None)
    @given(
        st.sets(st.integers(0, 1000), max_size=4),
        st.sets(st.integers(0, 1000), max_size=4),
    )
    def test_monotone_augmentation(self, f_small, f_extra):
        f_large = f_small | f_extra
        family = SubseqSpec(2, 10, 1, start=2, count=3)
        small = stability_probe(COUNTEREXAMPLE, tuple(f_small), 3, family, 21000)
        large = stability_probe(COUNTEREXAMPLE, tuple(f_large), 3, family, 21000)
        # growing F can only create representations, never destroy them
        assert set(large.survivors) <= set(small.survivors)


class TestSweep:
    def test_short_sweep_survives(self):
        family = SubseqSpec(2, 10, 1, start=3, count=2)
        rep = random_stability_sweep(
            COUNTEREXAMPLE, 3, family, 21000, SweepConfig(runs=10, seed=7)
        )
        assert rep.all_runs_survived
        assert rep.terms == (2001, 20001)
        assert len(rep.runs) == 10

    def test_deterministic_under_seed(self):
        family = SubseqSpec(2, 10, 1, start=3, count=2)
        cfg = SweepConfig(runs=5, seed=123)
        a = random_stability_sweep(COUNTEREXAMPLE, 3, family, 21000, cfg)
        b = random_stability_sweep(COUNTEREXAMPLE, 3, family, 21000, cfg)
        assert a == b

    def test_runs_precondition(self):
        with pytest.raises(ValueError):
            random_stability_sweep(
                COUNTEREXAMPLE,
                3,
                SubseqSpec(2, 10, 1, count=1),
                2100,
                SweepConfig(runs=0),
            )

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from addbasis import (
    COUNTEREXAMPLE,
    SATURATION_LIMIT,
    Augment,
    Explicit,
    Interval,
    PrefixBitset,
    complement_witnesses,
    full_mask,
    iterate_sumset,
    materialize,
    pair_sumset,
    pairsum_contains,
    representation_count,
)
from strategies import set_exprs


def brute_fold(elements, h, bound):
    """Enumerate all h-tuple sums <= bound, the slow way."""
    elems = sorted(e for e in elements if e <= bound)
    cur = {0}
    for _ in range(h):
        nxt = set()
        for s in cur:
            for a in elems:
                t = s + a
                if t > bound:
                    break
                nxt.add(t)
        cur = nxt
    return cur


class TestPairSumset:
    def test_tiny(self):
        p = materialize(Explicit((0, 1)), 3)
        assert pair_sumset(p, p, 3).to_list() == [0, 1, 2]

    def test_counterexample_head_misses_21(self):
        head = materialize(COUNTEREXAMPLE, 21)
        got = pair_sumset(head, head, 21)
        assert got.to_list() == list(range(21))  # 21 itself is absent

    def test_zero_is_identity(self):
        zero = PrefixBitset(50, 1)
        q = materialize(Interval(3, 17), 50)
        assert pair_sumset(zero, q, 50) == q

    def test_bound_mismatch(self):
        p = materialize(Explicit((0, 1)), 5)
        q = materialize(Explicit((0, 1)), 9)
        with pytest.raises(ValueError):
            pair_sumset(p, q, 9)

    @given(set_exprs, set_exprs, st.integers(0, 300))
    def test_commutes(self, a, b, bound):
        p = materialize(a, bound)
        q = materialize(b, bound)
        assert pair_sumset(p, q, bound) == pair_sumset(q, p, bound)

    @given(set_exprs, st.integers(0, 300), st.integers(1, 64))
    def test_chunking_is_bit_identical(self, expr, bound, chunk):
        p = materialize(expr, bound)
        plain = pair_sumset(p, p, bound)
        assert pair_sumset(p, p, bound, chunk_size=chunk) == plain

    @given(set_exprs, st.integers(0, 3), st.integers(1, 16))
    def test_chunked_iteration_is_bit_identical(self, expr, h, chunk):
        bound = 200
        plain = iterate_sumset(expr, h, bound)
        assert iterate_sumset(expr, h, bound, chunk_size=chunk) == plain

    def test_chunk_size_precondition(self):
        p = materialize(Explicit((0, 1)), 5)
        with pytest.raises(ValueError):
            pair_sumset(p, p, 5, chunk_size=0)


class TestIterateSumset:
    def test_zero_fold_is_singleton_zero(self):
        res = iterate_sumset(Explicit(()), 0, 10)
        assert res.bits.to_list() == [0]

    def test_one_fold_is_the_prefix(self):
        res = iterate_sumset(COUNTEREXAMPLE, 1, 120)
        assert res.bits == materialize(COUNTEREXAMPLE, 120)

    def test_counterexample_three_fold_full(self):
        res = iterate_sumset(COUNTEREXAMPLE, 3, 10**4)
        assert res.bits.is_full()

    def test_counterexample_two_fold_misses_20001(self):
        res = iterate_sumset(COUNTEREXAMPLE, 2, 20001)
        assert 20001 not in res.bits

    def test_squares_four_fold_full(self):
        assert iterate_sumset(parse("squares"), 4, 10**4).bits.is_full()

    def test_empty_set_folds_empty(self):
        assert iterate_sumset(Explicit(()), 0, 10).bits.to_list() == [0]
        assert iterate_sumset(Explicit(()), 2, 10).bits.popcount() == 0

    def test_negative_fold(self):
        with pytest.raises(ValueError):
            iterate_sumset(COUNTEREXAMPLE, -1, 10)

    @settings(max_examples=30)
    @given(set_exprs, st.integers(0, 3), st.integers(0, 250))
    def test_matches_brute_force(self, expr, h, bound):
        bits = materialize(expr, bound)
        assume(bits.popcount() <= 80)
        got = iterate_sumset(expr, h, bound)
        assert set(got.bits.members()) == brute_fold(bits.members(), h, bound)

    @settings(max_examples=25)
    @given(set_exprs, st.integers(0, 200), st.integers(0, 5))
    def test_square_and_multiply_identical(self, expr, bound, h):
        linear = iterate_sumset(expr, h, bound)
        doubled = iterate_sumset(expr, h, bound, square_and_multiply=True)
        assert linear == doubled

    def test_fold_associativity(self):
        bound = 2000
        for expr in (COUNTEREXAMPLE, parse("squares"), parse("explicit{0,3,5}")):
            two = iterate_sumset(expr, 2, bound).bits
            four_a = pair_sumset(two, two, bound)
            three = iterate_sumset(expr, 3, bound).bits
            base = materialize(expr, bound)
            four_b = pair_sumset(base, three, bound)
            assert four_a == iterate_sumset(expr, 4, bound).bits == four_b

    @settings(max_examples=25)
    @given(set_exprs, st.integers(1, 4), st.integers(0, 250))
    def test_monotone_in_h_with_zero(self, expr, h, bound):
        withzero = Augment(expr, (0,))
        small = iterate_sumset(withzero, h, bound).bits
        large = iterate_sumset(withzero, h + 1, bound).bits
        assert small.mask & ~large.mask == 0


def parse(text):
    from addbasis import parse_set_expr

    return parse_set_expr(text)


class TestRepresentationCount:
    def test_tiny_pair(self):
        assert representation_count(Explicit((0, 1)), 2, 1) == 2

    def test_counterexample_gap(self):
        assert representation_count(COUNTEREXAMPLE, 2, 21) == 0

    def test_squares_pairs_of_25(self):
        # ordered pairs of squares summing to 25: (0,25),(25,0),(9,16),(16,9)
        assert representation_count(parse("squares"), 2, 25) == 4

    def test_single_fold(self):
        assert representation_count(parse("squares"), 1, 9) == 1
        assert representation_count(parse("squares"), 1, 7) == 0

    def test_preconditions(self):
        with pytest.raises(ValueError):
            representation_count(COUNTEREXAMPLE, 0, 5)
        with pytest.raises(ValueError):
            representation_count(COUNTEREXAMPLE, 2, -1)

    def test_saturation_cap(self):
        # interval [0,60], h=40: counts blow far past 2^64 and must clamp
        big = representation_count(Interval(0, 60), 40, 30)
        assert big == SATURATION_LIMIT

    @settings(max_examples=20)
    @given(set_exprs, st.integers(1, 3), st.integers(0, 120))
    def test_positive_iff_member(self, expr, h, n):
        bits = materialize(expr, n)
        assume(bits.popcount() <= 60)
        member = n in iterate_sumset(expr, h, n).bits
        assert (representation_count(expr, h, n) > 0) == member


class TestPairsumContains:
    @settings(max_examples=30)
    @given(set_exprs, set_exprs, st.integers(0, 200))
    def test_matches_kernel(self, a, b, bound):
        p = materialize(a, bound)
        q = materialize(b, bound)
        full = pair_sumset(p, q, bound)
        for n in range(0, bound + 1, 7):
            assert pairsum_contains(p, q, n) == (n in full)

    def test_bound_mismatch(self):
        p = materialize(Explicit((0,)), 5)
        with pytest.raises(ValueError):
            pairsum_contains(p, p, 6)


class TestComplementWitnesses:
    def test_counterexample_two_fold(self):
        wl = complement_witnesses(COUNTEREXAMPLE, 2, 2100)
        assert wl.gaps == (21, 201, 2001)
        assert not wl.truncated

    def test_three_squares_gaps(self):
        wl = complement_witnesses(parse("squares"), 3, 100)
        assert wl.gaps == (7, 15, 23, 28, 31, 39, 47, 55, 60, 63, 71, 79, 87, 92, 95)

    def test_binary_five_fold_covers(self):
        wl = complement_witnesses(parse("explicit{0,1}"), 5, 5)
        assert wl.gaps == ()

    def test_truncation(self):
        wl = complement_witnesses(parse("explicit{0,1}"), 1, 50, limit=3)
        assert wl.gaps == (2, 3, 4)
        assert wl.truncated and wl.limit == 3

    def test_limit_precondition(self):
        with pytest.raises(ValueError):
            complement_witnesses(COUNTEREXAMPLE, 2, 100, limit=0)

    def test_gaps_certify_as_zero_count(self):
        wl = complement_witnesses(COUNTEREXAMPLE, 2, 2100)
        for g in wl.gaps:
            assert representation_count(COUNTEREXAMPLE, 2, g) == 0

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moranspec.tiling import (IntervalUnion, tile_decide, tiles_by_periodic_set,
                              two_stage_support)


def test_interval_union_normalization():
    u = IntervalUnion(((F(1), F(2)), (F(0), F(1))))
    assert u.intervals == ((F(0), F(2)),)       # touching intervals merge
    assert u.total_length == 2
    with pytest.raises(ValueError):
        IntervalUnion(((F(0), F(2)), (F(1), F(3))))
    with pytest.raises(ValueError):
        IntervalUnion(((F(1), F(1)),))


def test_two_stage_support_examples():
    assert two_stage_support(2, 2, 1, 4).intervals == (
        (F(0), F(1, 4)), (F(1, 2), F(3, 4)))
    # t1 = t2 collapses to a single block
    assert two_stage_support(3, 5, 5, 4).intervals == ((F(0), F(15, 4)),)
    assert two_stage_support(3, 6, 2, 6).intervals == (
        (F(0), F(1, 3)), (F(1), F(4, 3)), (F(2), F(7, 3)))
    with pytest.raises(ValueError):
        two_stage_support(2, 1, 3, 4)


def test_tiles_by_periodic_set_examples():
    k = IntervalUnion(((F(0), F(1)), (F(2), F(3))))
    assert tiles_by_periodic_set(k, (0, 1), 4).ok
    failed = tiles_by_periodic_set(k, (0,), 2)
    assert not failed.ok and failed.multiplicity == 2
    assert 0 <= failed.failure_point < 2
    # the constructed lattice of the (2, 2, 1, 4) support
    support = two_stage_support(2, 2, 1, 4)
    assert tiles_by_periodic_set(support, (0, F(1, 4)), 1).ok


def test_tiles_certificate_reports_gaps():
    k = IntervalUnion(((F(0), F(1)),))
    cert = tiles_by_periodic_set(k, (0,), 2)
    assert not cert.ok and cert.multiplicity == 0
    assert 1 <= cert.failure_point < 2


def test_tiles_validates_digits():
    k = IntervalUnion(((F(0), F(1)),))
    with pytest.raises(ValueError):
        tiles_by_periodic_set(k, (0, 2), 2)


def test_tile_decide_examples():
    yes = tile_decide(2, 3, 5, 6, 2)
    assert yes.tiles and yes.residue is None
    assert yes.digits == (F(0), F(2, 5), F(4, 5))
    assert yes.period == F(12, 5)
    no = tile_decide(2, 2, 4, 1, 3)
    assert not no.tiles and no.residue == 1
    trivial = tile_decide(3, 2, 4, 5, 5)
    assert trivial.tiles and trivial.support.intervals == ((F(0), F(15, 4)),)


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=-5, max_value=5),
       st.integers(min_value=0, max_value=3))
def test_tiling_invariant_under_translation_and_digit_rotation(shift, rot):
    k = two_stage_support(2, 2, 1, 4).translate(shift)
    digits = [F(0), F(1, 4)]
    rotated = [(d + rot * F(1, 4)) % 1 for d in digits]
    assert tiles_by_periodic_set(k, rotated, 1).ok


def test_length_conservation_when_tiling():
    for p1, t1, t2, b1 in ((2, 2, 1, 4), (3, 6, 2, 6), (4, 6, 3, 5), (2, 5, 5, 3)):
        k = two_stage_support(p1, t1, t2, b1)
        t = t1 // t2
        c = F(t2, b1)
        digits = [c * i for i in range(t)]
        period = c * t * p1
        cert = tiles_by_periodic_set(k, digits, period)
        assert cert.ok
        assert k.total_length * len(digits) == period


def test_interval_union_contains():
    u = IntervalUnion(((F(0), F(1)), (F(2), F(3))))
    assert u.contains(F(1, 2)) and u.contains(2)
    assert not u.contains(1) and not u.contains(F(3))

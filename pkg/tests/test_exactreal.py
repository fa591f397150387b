import random

from gmpy2 import mpq

from weihrauch_lab.exactreal import (
    atan_shift,
    atan_shift_interval,
    ceil_q,
    dyadic,
    floor_q,
    rv_approx,
    rv_convex,
    rv_enclosure,
    rv_leq,
    tan_shift,
    tan_shift_interval,
)


def test_fixed_points():
    assert tan_shift(mpq(1, 2)) == 0
    assert atan_shift(mpq(0)) == mpq(1, 2)
    assert atan_shift(mpq(1)) == mpq(3, 4)
    assert atan_shift(mpq(-1)) == mpq(1, 4)


def test_enclosure_width_contract():
    v = tan_shift(mpq(2, 3))
    for k in (5, 10, 20, 40):
        lo, hi = v.enclosure(k)
        assert hi - lo <= dyadic(k)
        assert lo <= hi
    # tan(pi/6) = 1/sqrt(3) ~ 0.5773
    lo, hi = v.enclosure(30)
    assert mpq(5773, 10000) < hi and lo < mpq(5774, 10000)


def test_transport_roundtrip_100_random():
    rng = random.Random(42)
    for _ in range(100):
        x = mpq(rng.randrange(1, 2 ** 12), 2 ** 12)
        if x == mpq(1, 2):
            continue
        back = atan_shift(tan_shift(x))
        lo, hi = rv_enclosure(back, 24)
        assert lo - dyadic(20) <= x <= hi + dyadic(20)


def test_transport_monotone():
    rng = random.Random(9)
    for _ in range(60):
        a = mpq(rng.randrange(1, 4000), 4096)
        b = mpq(rng.randrange(1, 4000), 4096)
        if a == b:
            continue
        a, b = min(a, b), max(a, b)
        fa, fb = tan_shift(a), tan_shift(b)
        assert rv_leq(fa, fb)
        ka = rv_approx(fa, 30)
        kb = rv_approx(fb, 30)
        assert ka < kb


def test_interval_versions_are_enclosures():
    got = tan_shift_interval(mpq(1, 3), mpq(1, 3), 80)
    assert got is not None
    lo, hi = got
    assert lo <= hi and hi - lo < dyadic(40)
    # outside the domain: refuse
    assert tan_shift_interval(mpq(-1, 2), mpq(1, 4), 80) is None
    assert tan_shift_interval(mpq(1, 4), mpq(5, 4), 80) is None
    lo2, hi2 = atan_shift_interval(mpq(-50), mpq(50), 80)
    assert 0 < lo2 <= hi2 < 1


def test_convex_and_ceil():
    assert rv_convex(mpq(0), mpq(1), mpq(1, 2)) == mpq(1, 2)
    m = rv_convex(tan_shift(mpq(1, 3)), tan_shift(mpq(2, 3)), mpq(1, 2))
    lo, hi = rv_enclosure(m, 30)
    assert lo <= 0 <= hi  # symmetric around 1/2, so midpoint is 0
    assert ceil_q(mpq(5, 2)) == 3
    assert ceil_q(mpq(-5, 2)) == -2
    assert ceil_q(mpq(4)) == 4
    assert floor_q(mpq(5, 2)) == 2

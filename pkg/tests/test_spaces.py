import random

import pytest
from gmpy2 import mpq

from weihrauch_lab.baire import Name, decode_rational
from weihrauch_lab.exactreal import dyadic
from weihrauch_lab.spaces import (
    DELAY,
    EAGER,
    SCHEDULES,
    SHUFFLE,
    InvalidTruth,
    MalformedPolygon,
    Schedule,
    covered_hull,
    decode_interval_token,
    delta_n,
    eval_polygon,
    interval_token,
    merge_union,
    polygon_fn,
    polygon_token,
    psi_minus_n,
    psi_minus_real,
    psi_minus_unit,
    rho,
    rho_greater,
    rho_greater_ext,
    rho_less,
    theta_open,
)
from weihrauch_lab.spaces import INF


def seeded(kind, seed):
    return Schedule(kind, seed=seed)


def test_delta_n_encode_verify():
    nm = delta_n.encode(7, EAGER)
    assert nm.query(5) == (7,) * 5
    assert delta_n.verify(7, nm, 10)
    assert not delta_n.verify(3, delta_n.encode(4, EAGER), 10)


def test_psi_minus_n_forced_tokens():
    nm = psi_minus_n.encode(("cofinite", frozenset({0, 2})), EAGER)
    toks = set(nm.query(16))
    assert toks == {1, 3, 0}


def test_rho_encode_within_modulus():
    x = mpq(1, 3)
    for s in SCHEDULES:
        nm = rho.encode(x, seeded(s.kind, 5))
        for k in range(12):
            q = decode_rational(nm[k])
            assert abs(q - x) <= dyadic(k)
        assert rho.verify(x, nm, 20)


def test_rho_verify_rejects_far_value():
    nm = rho.encode(mpq(1, 2), EAGER)
    assert not rho.verify(mpq(3, 4), nm, 10)


def test_rho_less_prefix_sup_property():
    rng = random.Random(2)
    for _ in range(50):
        x = mpq(rng.randrange(-(2 ** 10), 2 ** 10), rng.randrange(1, 2 ** 10))
        for s in SCHEDULES:
            nm = rho_less.encode(x, seeded(s.kind, rng.randrange(999)))
            toks = [decode_rational(t) for t in nm.query(120)]
            assert all(q <= x for q in toks)
            assert max(toks) >= x - dyadic(20)
            assert rho_less.verify(x, nm, 20)


def test_rho_less_strict_monotone():
    nm = rho_less.encode(mpq(2, 3), SHUFFLE, strict=True)
    toks = [decode_rational(t) for t in nm.query(30)]
    assert all(a < b for a, b in zip(toks, toks[1:]))
    assert all(q < mpq(2, 3) for q in toks)


def test_rho_greater_and_ext():
    nm = rho_greater.encode(mpq(1, 4), DELAY)
    toks = [decode_rational(t) for t in nm.query(30)]
    assert all(q >= mpq(1, 4) for q in toks)
    assert rho_greater.verify(mpq(1, 4), nm, 18)
    inf_name = rho_greater_ext.encode(INF, EAGER)
    assert rho_greater_ext.verify(INF, inf_name, 10)
    fin = rho_greater_ext.encode(mpq(3, 2), SHUFFLE)
    assert rho_greater_ext.verify(mpq(3, 2), fin, 18)
    assert not rho_greater_ext.verify(INF, fin, 10)


@pytest.mark.parametrize("kind", ["eager", "delay", "shuffle"])
def test_psi_minus_unit_roundtrip(kind):
    rng = random.Random(kind)
    for trial in range(40):
        a = mpq(rng.randrange(0, 60), 64)
        b = a + mpq(rng.randrange(0, 64 - int(a * 64)), 64)
        truth = ((a, min(b, mpq(1))),)
        nm = psi_minus_unit.encode(truth, seeded(kind, trial))
        assert psi_minus_unit.verify(truth, nm, 16)


def test_psi_minus_unit_disjointness_exact():
    rng = random.Random(17)
    for trial in range(200):
        a = mpq(rng.randrange(0, 64), 64)
        b = min(a + mpq(rng.randrange(0, 32), 64), mpq(1))
        truth = ((a, b),)
        s = seeded(rng.choice(["eager", "delay", "shuffle"]), trial)
        nm = psi_minus_unit.encode(truth, s)
        for tok in nm.query(48):
            item = decode_interval_token(tok)
            if item is None:
                continue
            lo, lc, hi, hc = item
            # exact disjointness from [a,b]
            assert hi < a or (hi == a and not hc) or lo > b or (lo == b and not lc)


def test_psi_minus_real_infinite_endpoints():
    truth = ((mpq(2), INF),)  # the set [2, inf)
    for s in SCHEDULES:
        nm = psi_minus_real.encode(truth, seeded(s.kind, 3))
        assert psi_minus_real.verify(truth, nm, 14)
    two_sided = ((INF, mpq(-1)), (mpq(1), mpq(2)))
    nm = psi_minus_real.encode(two_sided, EAGER)
    assert psi_minus_real.verify(two_sided, nm, 14)


def test_theta_open_and_hull():
    truth = ((mpq(1, 4), mpq(3, 4)),)
    for s in SCHEDULES:
        nm = theta_open.encode(truth, seeded(s.kind, 8))
        assert theta_open.verify(truth, nm, 12)
    items = [decode_interval_token(interval_token(0, mpq(1, 3), absorb_lo=True)),
             decode_interval_token(interval_token(mpq(2, 3), 1, absorb_hi=True))]
    q, r = covered_hull(items)
    assert (q, r) == (mpq(1, 3), mpq(2, 3))


def test_merge_union_adjacency():
    a = (mpq(0), True, mpq(1, 2), False)
    b = (mpq(1, 2), True, mpq(1), True)
    assert len(merge_union([a, b])) == 1
    c = (mpq(1, 2), False, mpq(1), True)
    assert len(merge_union([a, c])) == 2  # both open at 1/2: the point is missing


def test_polygon_eval_examples():
    # constant zero polygon
    flat = Name.constant(polygon_token([(mpq(0), mpq(0)), (mpq(1), mpq(0))]))
    assert eval_polygon(flat, mpq(1, 2), 3) == 0
    # f(x) = x - 1/2 exactly, at 3/4
    line = Name.constant(polygon_token([(mpq(0), mpq(-1, 2)), (mpq(1), mpq(1, 2))]))
    for k in range(5):
        assert eval_polygon(line, mpq(3, 4), k) == mpq(1, 4)


def test_polygon_stage_vertex_value():
    # staged approximant to zero set [a,b]: at the second left cut point the
    # value is -2^-2
    from weihrauch_lab.spaces import plateau_polygon_stages
    stage = plateau_polygon_stages(mpq(1, 3), mpq(2, 3))
    qs = [mpq(1, 3) - mpq(1, 3) * dyadic(j + 1) for j in range(4)]
    rs = [mpq(2, 3) + mpq(1, 3) * dyadic(j + 1) for j in range(4)]
    verts = stage(3, qs, rs)
    lookup = dict(verts)
    assert lookup[qs[1]] == -dyadic(2)


def test_polygon_encode_verify_all_schedules():
    truth = (mpq(1, 3), mpq(2, 3), False)
    for s in SCHEDULES:
        nm = polygon_fn.encode(truth, seeded(s.kind, 4))
        assert polygon_fn.verify(truth, nm, 10), s
    flipped = (mpq(1, 2), mpq(1, 2), True)
    nm = polygon_fn.encode(flipped, DELAY)
    assert polygon_fn.verify(flipped, nm, 10)
    assert not polygon_fn.verify((mpq(1, 3), mpq(2, 3), False), nm, 10)


def test_polygon_consecutive_distance():
    truth = (mpq(1, 4), mpq(5, 8), False)
    nm = polygon_fn.encode(truth, seeded("shuffle", 11))
    from weihrauch_lab.spaces import _sup_distance, decode_polygon_token
    prev = None
    for n in range(20):
        verts = decode_polygon_token(nm[n])
        if prev is not None:
            assert _sup_distance(prev, verts) <= 3 * dyadic(n)
        prev = verts


def test_malformed_polygon():
    bad = Name.constant(polygon_token([(mpq(0), mpq(-1)), (mpq(1, 2), mpq(0)),
                                       (mpq(1, 4), mpq(1)), (mpq(1), mpq(1))]))
    with pytest.raises(MalformedPolygon):
        eval_polygon(bad, mpq(1, 2), 0)


def test_invalid_truths():
    with pytest.raises(InvalidTruth):
        psi_minus_unit.encode((), EAGER)
    with pytest.raises(InvalidTruth):
        polygon_fn.encode((mpq(0), mpq(1, 2), False), EAGER)
    with pytest.raises(InvalidTruth):
        psi_minus_n.encode(("finite", frozenset()), EAGER)


def test_schedule_determinism():
    s = seeded("shuffle", 123)
    a = psi_minus_unit.encode(((mpq(1, 3), mpq(1, 2)),), s).query(64)
    b = psi_minus_unit.encode(((mpq(1, 3), mpq(1, 2)),), s).query(64)
    assert a == b

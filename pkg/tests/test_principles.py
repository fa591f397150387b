import random

import pytest
from gmpy2 import mpq

from weihrauch_lab.baire import run
from weihrauch_lab.exactreal import dyadic, rv_approx
from weihrauch_lab.principles import (
    PRINCIPLES,
    EmptyOutput,
    make_instance,
    oracle_answer,
    parallel_problem,
    c_open_realizer,
    principle,
)
from weihrauch_lab.spaces import DELAY, EAGER, SCHEDULES, SHUFFLE, InvalidTruth, Schedule


class Cfg:
    den_bound = 64
    set_bound = 32


def seeded_rng(*key):
    return random.Random(":".join(map(str, key)))


def check_oracle(pid, trials=25, k=20):
    prob = principle(pid)
    rng = seeded_rng("gen", pid)
    truths = prob.corners() + [prob.gen(rng, Cfg) for _ in range(trials)]
    for i, truth in enumerate(truths):
        sched = SCHEDULES[i % 3]
        inst = make_instance(prob, truth, Schedule(sched.kind, seed=i))
        for policy in prob.policies:
            out = oracle_answer(inst, policy, seeded_rng("pol", pid, i, policy))
            value = prob.decode_output(out, k)
            v = prob.admissible(truth, value, k)
            assert v, (pid, prob.describe(truth), policy, v.reason)


@pytest.mark.parametrize("pid", sorted(PRINCIPLES))
def test_oracle_soundness(pid):
    check_oracle(pid)


@pytest.mark.parametrize("pid", sorted(PRINCIPLES))
def test_encode_verify_roundtrip(pid):
    prob = principle(pid)
    rng = seeded_rng("rt", pid)
    truths = prob.corners() + [prob.gen(rng, Cfg) for _ in range(10)]
    for i, truth in enumerate(truths):
        for sched in SCHEDULES:
            inst = make_instance(prob, truth, Schedule(sched.kind, seed=i))
            assert prob.verify_input(truth, inst.name, 12), (pid, prob.describe(truth), sched)


@pytest.mark.parametrize("pid", sorted(PRINCIPLES))
def test_grammar_roundtrip(pid):
    prob = principle(pid)
    rng = seeded_rng("gram", pid)
    for truth in prob.corners() + [prob.gen(rng, Cfg) for _ in range(5)]:
        text = prob.describe(truth)
        if "~" in text or text.startswith("pairs-over"):
            continue  # transported truths have no literal grammar
        again = prob.parse(text)
        assert prob.describe(again) == text, (pid, text)


def test_llpo_zero_sequence_both_accepted():
    llpo = principle("llpo")
    truth = ("allzero",)
    assert llpo.admissible(truth, 0, 20)
    assert llpo.admissible(truth, 1, 20)
    forced = ("nonzero", 4, 7)
    assert llpo.admissible(forced, 1, 20)
    assert not llpo.admissible(forced, 0, 20)


def test_bf_bounds():
    bf = principle("bf")
    truth = (mpq(5, 2), True)
    assert bf.admissible(truth, mpq(3), 20)
    assert not bf.admissible(truth, mpq(2), 20)
    assert bf.admissible(truth, 3, 20)  # integer bounds embed


def test_ivt_tolerance():
    ivt = principle("ivt")
    truth = (mpq(1, 3), mpq(2, 3), False)
    assert ivt.admissible(truth, mpq(34, 100), 6)
    assert not ivt.admissible(truth, mpq(90, 100), 6)


def test_policy_diversity():
    for pid in ("ci", "bi", "ivt", "ck"):
        prob = principle(pid)
        rng = seeded_rng("div", pid)
        for _ in range(20):
            truth = prob.gen(rng, Cfg)
            lo, hi = (truth[0], truth[1]) if pid != "ck" else (truth[0][0], truth[-1][1])
            width = mpq(hi) - mpq(lo)
            if width < dyadic(4):
                continue
            a = prob.oracle_value(truth, "least", rng)
            b = prob.oracle_value(truth, "greatest", rng)
            assert rv_approx(a, 30) < rv_approx(b, 30)


def test_domain_rejection_at_construction():
    with pytest.raises(InvalidTruth):
        make_instance(principle("ci-"), (mpq(1, 2), mpq(1, 2)))
    with pytest.raises(InvalidTruth):
        make_instance(principle("llpo"), ("nonzero", 3, 0))
    with pytest.raises(InvalidTruth):
        make_instance(principle("cn"), ("finite", frozenset()))
    with pytest.raises(InvalidTruth):
        make_instance(principle("bct"), ("list", (((mpq(0), mpq(1, 2)),),)))


def test_oracle_empty_output():
    with pytest.raises(EmptyOutput):
        principle("cn")._pick(iter(()), "least", seeded_rng("x"))


def test_c_open_realizer_examples():
    copen = principle("copen")
    t = c_open_realizer()
    # padding, padding, (1/4,3/4) -> rho-name of 1/2
    from weihrauch_lab.baire import Name, decode_rational
    from weihrauch_lab.spaces import open_interval_token
    listing = Name.from_tokens([0, 0, open_interval_token(mpq(1, 4), mpq(3, 4))])
    out = run(t, listing)
    assert decode_rational(out[20]) == mpq(1, 2)
    full = Name.from_tokens([open_interval_token(mpq(0), mpq(1))])
    assert decode_rational(run(t, full)[5]) == mpq(1, 2)
    # delayed: first non-empty interval (1/8,1/4) at position 50
    toks = [0] * 50 + [open_interval_token(mpq(1, 8), mpq(1, 4))]
    assert decode_rational(run(t, Name.from_tokens(toks))[10]) == mpq(3, 16)


def test_c_open_realizer_all_schedules():
    copen = principle("copen")
    t = c_open_realizer()
    rng = seeded_rng("copen")
    for i in range(30):
        truth = copen.gen(rng, Cfg)
        for sched in SCHEDULES:
            inst = make_instance(copen, truth, Schedule(sched.kind, seed=i))
            out = run(t, inst.name)
            val = copen.decode_output(out, 20)
            assert copen.admissible(truth, val, 20)


def test_parallel_problem_roundtrip():
    base = principle("cn")
    par = parallel_problem(base, width=4)
    truths = (("cofinite", frozenset({0})), ("cofinite", frozenset({0, 1, 2})),
              ("finite", frozenset({3})), ("cofinite", frozenset()))
    inst = make_instance(par, truths, EAGER)
    assert par.verify_input(truths, inst.name, 10)
    out = oracle_answer(inst, "least", seeded_rng("p"))
    vals = par.decode_output(out, 10)
    assert vals == (1, 3, 3, 0)
    assert par.admissible(truths, vals, 10)
    mixed = par.oracle_value(truths, "alternate", seeded_rng("m"))
    assert par.admissible(truths, mixed, 10)

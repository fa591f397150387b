import random

from gmpy2 import mpq

from weihrauch_lab.baire import Name, encode_rational
from weihrauch_lab.machines import (
    EagerMaxMachine,
    LlpoMachine,
    LpoMachine,
    MidpointMachine,
    RebetLpoMachine,
    SilentMachine,
    adversary_bf,
    adversary_biminus,
    count_mind_changes,
    machine_tape,
    replay_certificate,
)
from weihrauch_lab.principles import make_instance, principle
from weihrauch_lab.spaces import EAGER, SCHEDULES, Schedule


def test_lpo_machine_bets():
    ones = Name.constant(1)
    assert count_mind_changes(LpoMachine, ones, 100) == 0
    assert set(machine_tape(LpoMachine, ones, 100)) == {1}
    p = Name.from_tokens([1, 1, 0], tail=1)
    assert count_mind_changes(LpoMachine, p, 100) == 1
    assert set(machine_tape(LpoMachine, p, 100)) == {0}
    first = Name.from_tokens([0], tail=7)
    assert count_mind_changes(LpoMachine, first, 50) == 1


def test_llpo_machine():
    zeros = Name.constant(0)
    assert count_mind_changes(LlpoMachine, zeros, 100) == 0
    assert set(machine_tape(LlpoMachine, zeros, 100)) == {0}
    even = Name.from_tokens([0, 0, 0, 0, 7], tail=0)  # non-zero at index 4
    assert count_mind_changes(LlpoMachine, even, 100) == 1
    assert set(machine_tape(LlpoMachine, even, 100)) == {1}
    odd = Name.from_tokens([0, 0, 0, 5], tail=0)
    assert count_mind_changes(LlpoMachine, odd, 100) == 0
    assert set(machine_tape(LlpoMachine, odd, 100)) == {0}


def test_machines_admissible_over_principles():
    rng = random.Random("mc")

    class Cfg:
        den_bound = 64
        set_bound = 32

    for pid, factory in (("lpo", LpoMachine), ("llpo", LlpoMachine)):
        prob = principle(pid)
        worst = 0
        for i in range(200):
            truth = prob.gen(rng, Cfg) if i >= len(prob.corners()) else prob.corners()[i]
            for sched in SCHEDULES:
                inst = make_instance(prob, truth, Schedule(sched.kind, seed=i))
                changes = count_mind_changes(factory, inst.name, 64)
                worst = max(worst, changes)
                tape = machine_tape(factory, inst.name, 64)
                assert len(set(tape)) == 1
                assert prob.admissible(truth, tape[0], 20), (pid, prob.describe(truth))
        assert worst == 1  # the bet is genuinely revised on some instance


def test_rebet_machine_flagged():
    p = Name.from_tokens([1, 0, 1], tail=1)
    assert count_mind_changes(RebetLpoMachine, p, 50) >= 2


def test_adversary_bf_defeats_eager_max():
    for budget in range(4):
        cert = adversary_bf(EagerMaxMachine, budget)
        assert cert.conclusive and cert.forced_count >= budget + 1
        assert replay_certificate(EagerMaxMachine, cert)


def test_adversary_bf_inconclusive_on_silent_and_lpo():
    assert not adversary_bf(SilentMachine, 0, step_cap=128).conclusive
    assert not adversary_bf(LpoMachine, 0, step_cap=128).conclusive


def test_adversary_bf_budget_zero():
    cert = adversary_bf(EagerMaxMachine, 0)
    assert cert.conclusive and cert.forced_count >= 1


def test_adversary_biminus_defeats_midpoint():
    for budget in range(4):
        cert = adversary_biminus(MidpointMachine, budget)
        assert cert.conclusive and cert.forced_count >= budget + 1, budget
        assert replay_certificate(MidpointMachine, cert)


def test_adversary_biminus_inconclusive_on_silent():
    assert not adversary_biminus(SilentMachine, 1, step_cap=256).conclusive


def test_adversary_transcripts_stay_valid():
    # bf: the fed rationals are eventually constant, hence bounded
    cert = adversary_bf(EagerMaxMachine, 2)
    from weihrauch_lab.baire import decode_rational
    vals = [decode_rational(t) for t in cert.transcript]
    assert max(vals) >= vals[-1]
    # bi-: lower cuts increase, upper cuts decrease, and sup < inf
    cert2 = adversary_biminus(MidpointMachine, 2)
    lows = [decode_rational(t) for t in cert2.transcript[0::2]]
    highs = [decode_rational(t) for t in cert2.transcript[1::2]]
    assert all(a <= b for a, b in zip(lows, lows[1:]))
    assert all(a >= b for a, b in zip(highs, highs[1:]))
    assert max(lows) < min(highs)

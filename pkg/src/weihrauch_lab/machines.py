"""Limit machines with revisable output and bounded mind changes.

A MindChangeMachine consumes input tokens one at a time and maintains a
committed output tape.  It may append, or revise: replace the tape from
some position on.  Each revision is one mind change, no matter how far
back it reaches.  The limit semantics: on a valid total input every tape
position is eventually stable and the stable tape is a valid output name.

The adversaries drive any purported bounded-mind-change realizer of the
boundedness problems into more revisions than its budget, by extending the
input exactly when the machine commits.  Every transcript they feed is a
prefix of a valid input, so a sound realizer has no excuse: either it
commits (and is forced to revise), or it stalls past the step cap, which
refutes productivity instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .baire import Name, decode_rational, encode_rational

__all__ = [
    "Append", "Revise", "MindChangeMachine",
    "LpoMachine", "LlpoMachine", "RebetLpoMachine",
    "EagerMaxMachine", "MidpointMachine", "SilentMachine",
    "count_mind_changes", "machine_tape", "AdversaryCertificate",
    "adversary_bf", "adversary_biminus", "replay_certificate",
    "MACHINE_FAMILIES",
]


@dataclass(frozen=True)
class Append:
    tokens: tuple


@dataclass(frozen=True)
class Revise:
    pos: int
    tokens: tuple  # new tape suffix from pos on


class MindChangeMachine:
    """Base machine: subclasses implement _step(token) -> action list."""

    name = "machine"

    def __init__(self):
        self.tape: list[int] = []
        self.mind_changes = 0
        self.steps = 0

    def advance(self, token: int):
        actions = self._step(token)
        for act in actions:
            if isinstance(act, Append):
                self.tape.extend(act.tokens)
            elif isinstance(act, Revise):
                if act.pos < 0 or act.pos > len(self.tape):
                    raise ValueError("revision position outside the tape")
                # moving the output head backwards is one mind change,
                # regardless of how many positions it jumps
                self.tape[act.pos:] = list(act.tokens)
                self.mind_changes += 1
            else:
                raise TypeError(f"unknown action {act!r}")
        self.steps += 1
        return actions

    def _step(self, token):
        raise NotImplementedError


class LpoMachine(MindChangeMachine):
    """Bets there is no zero (answer 1); one revision if a zero shows up."""

    name = "lpo"

    def __init__(self):
        super().__init__()
        self.decided = False

    def _step(self, token):
        if not self.decided and token == 0:
            self.decided = True
            return [Revise(0, (0,) * (len(self.tape) + 1))]
        return [Append(((0,) if self.decided else (1,)))]


class LlpoMachine(MindChangeMachine):
    """Bets on answer 0; revises to 1 when an even position is non-zero."""

    name = "llpo"

    def __init__(self):
        super().__init__()
        self.pos = 0
        self.flipped = False

    def _step(self, token):
        i = self.pos
        self.pos += 1
        if not self.flipped and token != 0 and i % 2 == 0:
            self.flipped = True
            return [Revise(0, (1,) * (len(self.tape) + 1))]
        return [Append(((1,) if self.flipped else (0,)))]


class RebetLpoMachine(LpoMachine):
    """Faulty variant: after revising to 0, re-bets 1 on a later non-zero."""

    name = "lpo-rebet"

    def _step(self, token):
        if self.decided and token != 0 and self.mind_changes < 2:
            self.decided = False
            return [Revise(0, (1,) * (len(self.tape) + 1))]
        return super()._step(token)


class EagerMaxMachine(MindChangeMachine):
    """Purported bound-above realizer: outputs the rounded-up maximum seen
    so far, revising whenever it is exceeded.  Output tokens are plain
    naturals (integer bounds)."""

    name = "eager-max"

    def __init__(self):
        super().__init__()
        self.bound = None

    def _step(self, token):
        q = decode_rational(token)
        b = max(0, -((-q.numerator) // q.denominator))
        if self.bound is None:
            self.bound = b
            return [Append((b,))]
        if b > self.bound:
            self.bound = b
            return [Revise(0, (b,) * (len(self.tape) + 1))]
        return [Append((self.bound,))]


class MidpointMachine(MindChangeMachine):
    """Purported two-sided-bound realizer: bets on the midpoint of the
    current bracket and revises when the bet is expelled.  Consumes
    interleaved lower/upper cut tokens; emits a fast-Cauchy name."""

    name = "midpoint"

    def __init__(self):
        super().__init__()
        self.pos = 0
        self.lo = None
        self.hi = None
        self.bet = None

    def _step(self, token):
        q = decode_rational(token)
        if self.pos % 2 == 0:
            self.lo = q if self.lo is None else max(self.lo, q)
        else:
            self.hi = q if self.hi is None else min(self.hi, q)
        self.pos += 1
        if self.lo is None or self.hi is None or self.lo > self.hi:
            return []
        if self.bet is None:
            self.bet = self.lo + (self.hi - self.lo) / 2
            return [Append((encode_rational(self.bet),))]
        if not (self.lo <= self.bet <= self.hi):
            self.bet = self.lo + (self.hi - self.lo) / 2
            return [Revise(0, (encode_rational(self.bet),) * (len(self.tape) + 1))]
        return [Append((encode_rational(self.bet),))]


class SilentMachine(MindChangeMachine):
    name = "silent"

    def _step(self, token):
        return []


def count_mind_changes(factory, name: Name, depth: int) -> int:
    m = factory()
    for tok in name.query(depth):
        m.advance(tok)
    return m.mind_changes


def machine_tape(factory, name: Name, depth: int):
    m = factory()
    for tok in name.query(depth):
        m.advance(tok)
    return tuple(m.tape)


# ---------------------------------------------------------------------------
# adversaries

@dataclass(frozen=True)
class AdversaryCertificate:
    game: str
    machine: str
    budget: int
    transcript: tuple  # input tokens fed
    revisions: tuple   # (step index, old tape, new tape)
    forced_count: int
    conclusive: bool
    reason: str = ""

    def to_json(self):
        return {
            "game": self.game,
            "machine": self.machine,
            "budget": self.budget,
            "transcript": list(self.transcript),
            "revisions": [{"step": s, "old": list(o), "new": list(n)}
                          for s, o, n in self.revisions],
            "forcedCount": self.forced_count,
            "conclusive": self.conclusive,
            "reason": self.reason,
        }


def _drive(machine, token, transcript, revisions):
    old = tuple(machine.tape)
    actions = machine.advance(token)
    transcript.append(token)
    # only a revision of committed output counts as a forced mind change
    if old and any(isinstance(a, Revise) for a in actions):
        revisions.append((len(transcript) - 1, old, tuple(machine.tape)))


def adversary_bf(factory, budget: int, step_cap: int = 2048) -> AdversaryCertificate:
    """Force budget+1 revisions out of a purported bound-above realizer.

    Feeds zeros until the machine commits a bound b, then feeds b+1 until
    it revises, and repeats.  Every transcript prefix extends to a valid
    input (the fed sequence is eventually constant, hence bounded)."""
    machine = factory()
    transcript, revisions = [], []
    feed = mpq(0)
    while len(transcript) < step_cap:
        _drive(machine, encode_rational(feed), transcript, revisions)
        if len(revisions) >= budget + 1:
            return AdversaryCertificate(
                "bf", machine.name, budget, tuple(transcript), tuple(revisions),
                len(revisions), True)
        if machine.tape:
            feed = mpq(int(machine.tape[0]) + 1)
    return AdversaryCertificate(
        "bf", machine.name, budget, tuple(transcript), tuple(revisions),
        len(revisions), False,
        reason="machine never committed enough bounds within the step cap "
               "(a sound realizer must answer on this valid input)")


def adversary_biminus(factory, budget: int, step_cap: int = 4096) -> AdversaryCertificate:
    """Force budget+1 revisions out of a purported proper-interval realizer.

    Feeds cuts for [0,1]; once the machine pins its answer to a precision
    finer than a quarter of the current bracket, the cuts switch to a
    proper sub-interval of the wider side, disjoint from the pinned
    neighbourhood."""
    machine = factory()
    transcript, revisions = [], []
    lo_t, hi_t = mpq(0), mpq(1)     # current target interval
    fed_lo, fed_hi = None, None     # extremes fed so far
    i = 0
    while len(transcript) < step_cap:
        # feed one lower and one upper cut approaching the target
        step = mpq(1, 2 ** min(i + 2, 40))
        q = lo_t - step
        if fed_lo is not None:
            q = max(q, fed_lo)
        r = hi_t + step
        if fed_hi is not None:
            r = min(r, fed_hi)
        fed_lo = q if fed_lo is None else max(fed_lo, q)
        fed_hi = r if fed_hi is None else min(fed_hi, r)
        _drive(machine, encode_rational(q), transcript, revisions)
        _drive(machine, encode_rational(r), transcript, revisions)
        i += 1
        if len(revisions) >= budget + 1:
            return AdversaryCertificate(
                "bi-", machine.name, budget, tuple(transcript), tuple(revisions),
                len(revisions), True)
        if machine.tape:
            j = len(machine.tape) - 1
            eps = mpq(1, 2 ** j)
            width = fed_hi - fed_lo
            if 4 * eps < width / 2:
                x = decode_rational(machine.tape[j])
                left_room = (x - eps) - fed_lo
                right_room = fed_hi - (x + eps)
                if left_room >= right_room:
                    side_lo, side_hi = fed_lo, x - eps
                else:
                    side_lo, side_hi = x + eps, fed_hi
                w = side_hi - side_lo
                lo_t, hi_t = side_lo + w / 4, side_hi - w / 4
    return AdversaryCertificate(
        "bi-", machine.name, budget, tuple(transcript), tuple(revisions),
        len(revisions), False,
        reason="machine never pinned an answer within the step cap "
               "(a sound realizer must converge on this valid input)")


def replay_certificate(factory, cert: AdversaryCertificate) -> bool:
    """Re-run the machine on the recorded transcript and reproduce the
    revision events bit for bit."""
    machine = factory()
    transcript, revisions = [], []
    for tok in cert.transcript:
        _drive(machine, tok, transcript, revisions)
    return tuple(revisions) == cert.revisions


MACHINE_FAMILIES = {
    "bf": {
        "eager-max": EagerMaxMachine,
        "silent": SilentMachine,
        "lpo": LpoMachine,  # misused on purpose: never emits a bound
    },
    "bi-": {
        "midpoint": MidpointMachine,
        "silent": SilentMachine,
    },
}

"""Randomized instance generation and the master reduction checker.

Every trial is reproducible from (seed, trial index, schedule, policy).
A trial runs the full pipeline: encode the instance under a schedule,
adapt it with K, answer the target side with a ground-truth oracle under
a policy, adapt back with H, and judge the decoded output against the
source problem's admissible-output relation at the requested precision.

On top of that, the checker independently verifies K's output name
against the witness's transported truth: a ground-truth oracle shields K
from scrutiny in the main pipeline (nothing downstream needs to read K's
name), so without this check a broken K could hide behind a correct
transport.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field

from .baire import CountingName, NonProductive
from .principles import DecodeError, Instance, make_instance
from .reductions import DomainViolation, ReductionWitness, assemble
from .spaces import SCHEDULES, InvalidTruth, Schedule

__all__ = [
    "GeneratorConfig", "TrialReport", "WitnessReport", "MachineReport",
    "gen_instances", "check_reduction", "check_machine",
]


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 7
    den_bound: int = 2 ** 16
    set_bound: int = 32
    delay: int = 8
    schedule_mix: tuple = (0.4, 0.3, 0.3)  # eager / fixed-delay / seeded-shuffle

    def rng(self, *key):
        return random.Random(":".join(map(str, (self.seed,) + key)))


@dataclass
class TrialReport:
    witness: str
    trial: int
    instance: str
    policy: str
    schedule: str
    precision: int
    queries: int
    verdict: str  # Accept | Reject | NonProductive
    reason: str = ""
    value: str = ""
    elapsed: float = 0.0

    def to_json(self):
        return asdict(self)


@dataclass
class WitnessReport:
    witness: str
    seed: int
    trials: int
    runs: int = 0
    accepts: int = 0
    rejects: int = 0
    nonproductive: int = 0
    kverify_failures: int = 0
    failures: list = field(default_factory=list)  # first few TrialReports
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.rejects == 0 and self.nonproductive == 0 \
            and self.kverify_failures == 0 and self.runs > 0

    def to_json(self):
        return {
            "witness": self.witness,
            "seed": self.seed,
            "trials": self.trials,
            "runs": self.runs,
            "accepts": self.accepts,
            "rejects": self.rejects,
            "nonProductive": self.nonproductive,
            "kVerifyFailures": self.kverify_failures,
            "failures": [f.to_json() for f in self.failures],
            "elapsed": round(self.elapsed, 3),
            "passed": self.passed,
        }


def _truths(problem, cfg: GeneratorConfig, count: int):
    """Corner cases first, then seeded random truths; deterministic."""
    corners = problem.corners()
    out = list(corners[:count])
    i = len(out)
    while len(out) < count:
        out.append(problem.gen(cfg.rng(problem.pid, i), cfg))
        i += 1
    return out


def _pick_schedule(cfg: GeneratorConfig, trial: int) -> Schedule:
    r = cfg.rng("sched", trial).random()
    e, d, _ = cfg.schedule_mix
    kind = "eager" if r < e else ("delay" if r < e + d else "shuffle")
    return Schedule(kind, cfg.delay, seed=cfg.seed * 1000003 + trial)


def gen_instances(problem, cfg: GeneratorConfig, count: int,
                  schedule: Schedule | None = None):
    out = []
    for i, truth in enumerate(_truths(problem, cfg, count)):
        sched = schedule or _pick_schedule(cfg, i)
        out.append(make_instance(problem, truth, sched))
    return out


def check_reduction(witness: ReductionWitness, cfg: GeneratorConfig,
                    trials: int = 200, precision: int = 20,
                    schedules="all", policies=None,
                    kverify_every: int = 4, kverify_precision: int = 8,
                    fail_fast: bool = False, max_failures: int = 5) -> WitnessReport:
    """trials x policies x schedules soundness run for one witness."""
    report = WitnessReport(witness.wid, cfg.seed, trials)
    t0 = time.time()
    source, target = witness.source, witness.target
    pols = tuple(policies) if policies else target.policies
    truths = _truths(source, cfg, trials)

    def scheds(i):
        if schedules == "all":
            return [Schedule(s.kind, cfg.delay, seed=cfg.seed * 1000003 + i)
                    for s in SCHEDULES]
        return [_pick_schedule(cfg, i)]

    for i, truth in enumerate(truths):
        for sched in scheds(i):
            base = make_instance(source, truth, sched)
            spy = CountingName(base.name)
            inst = Instance(source, truth, spy, sched, base.label)
            t_inst = None
            for policy in pols:
                t1 = time.time()
                rng = cfg.rng("oracle", i, sched.kind, policy)
                tr = TrialReport(witness.wid, i, base.label, policy, sched.kind,
                                 precision, 0, "?")
                try:
                    out, t_inst, _ = assemble(witness, inst, policy, rng)
                    value = source.decode_output(out, precision)
                    verdict = source.admissible(truth, value, precision)
                    tr.value = str(value)
                    tr.verdict = "Accept" if verdict else "Reject"
                    tr.reason = verdict.reason
                except (NonProductive, DomainViolation, DecodeError) as exc:
                    tr.verdict = "NonProductive"
                    tr.reason = str(exc)
                tr.queries = spy.max_depth
                tr.elapsed = time.time() - t1
                report.runs += 1
                if tr.verdict == "Accept":
                    report.accepts += 1
                else:
                    if tr.verdict == "Reject":
                        report.rejects += 1
                    else:
                        report.nonproductive += 1
                    if len(report.failures) < max_failures:
                        report.failures.append(tr)
                    if fail_fast:
                        report.elapsed = time.time() - t0
                        return report
            # independent check of K's output against the transported truth
            if t_inst is not None and (i < 4 or i % kverify_every == 0):
                try:
                    kv = target.verify_input(t_inst.truth, t_inst.name,
                                             kverify_precision)
                except NonProductive as exc:
                    kv = None
                    reason = str(exc)
                if kv is None or not kv:
                    report.kverify_failures += 1
                    tr = TrialReport(witness.wid, i, base.label, "-", sched.kind,
                                     kverify_precision, spy.max_depth, "Reject",
                                     reason=("K-output verification: "
                                             + (kv.reason if kv is not None else reason)))
                    if len(report.failures) < max_failures:
                        report.failures.append(tr)
                    if fail_fast:
                        report.elapsed = time.time() - t0
                        return report
    report.elapsed = time.time() - t0
    return report


@dataclass
class MachineReport:
    machine: str
    principle: str
    trials: int
    max_mind_changes: int = 0
    inadmissible: int = 0
    runs: int = 0
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.inadmissible == 0 and self.runs > 0

    def to_json(self):
        return asdict(self) | {"passed": self.passed}


def check_machine(factory, problem, cfg: GeneratorConfig, trials: int = 1000,
                  depth: int = 64, precision: int = 20) -> MachineReport:
    """Mind-change counts and admissibility of the limit output."""
    from .machines import count_mind_changes, machine_tape
    name = getattr(factory, "name", getattr(factory, "__name__", "machine"))
    report = MachineReport(str(name), problem.pid, trials)
    t0 = time.time()
    for i, truth in enumerate(_truths(problem, cfg, trials)):
        sched = _pick_schedule(cfg, i)
        inst = make_instance(problem, truth, sched)
        changes = count_mind_changes(factory, inst.name, depth)
        report.max_mind_changes = max(report.max_mind_changes, changes)
        tape = machine_tape(factory, inst.name, depth)
        ok = (len(tape) > 0 and len(set(tape)) == 1
              and problem.admissible(truth, tape[0], precision))
        if not ok:
            report.inadmissible += 1
        report.runs += 1
    report.elapsed = time.time() - t0
    return report

from weihrauch_lab.harness import (
    GeneratorConfig,
    check_machine,
    check_reduction,
    gen_instances,
)
from weihrauch_lab.machines import LlpoMachine, LpoMachine, RebetLpoMachine
from weihrauch_lab.principles import principle
from weihrauch_lab.reductions import SABOTAGED, witness
from weihrauch_lab.spaces import EAGER


def test_gen_deterministic_and_corners():
    cfg = GeneratorConfig(seed=1)
    a = gen_instances(principle("llpo"), cfg, 6)
    b = gen_instances(principle("llpo"), cfg, 6)
    assert [x.label for x in a] == [y.label for y in b]
    assert a[0].truth == ("allzero",)  # mandated corner case first
    ci = gen_instances(principle("ci"), cfg, 3)
    assert any(t.truth[0] == t.truth[1] for t in ci)  # degenerate interval


def test_check_reduction_small_run():
    cfg = GeneratorConfig(seed=7)
    rep = check_reduction(witness("cn<=bf"), cfg, trials=12, precision=20)
    assert rep.passed, [f.to_json() for f in rep.failures]
    assert rep.runs == 12 * 3 * len(witness("cn<=bf").target.policies)
    assert all(f == [] for f in [rep.failures])


def test_check_reduction_reports_queries():
    cfg = GeneratorConfig(seed=3)
    rep = check_reduction(witness("ci<=bi"), cfg, trials=4, precision=16)
    assert rep.passed
    # the pipeline consumed finitely many input tokens and recorded it
    assert rep.to_json()["runs"] == rep.runs


def test_sabotaged_witness_caught_with_reproduction_data():
    cfg = GeneratorConfig(seed=7)
    rep = check_reduction(SABOTAGED["ci-<=cn!stage-m-center"], cfg,
                          trials=40, precision=20)
    assert not rep.passed
    assert rep.failures
    f = rep.failures[0].to_json()
    assert f["witness"] == "ci-<=cn!stage-m-center"
    assert f["schedule"] in ("eager", "delay", "shuffle")
    # replaying the same (seed, trial) reproduces the verdict
    rep2 = check_reduction(SABOTAGED["ci-<=cn!stage-m-center"], cfg,
                           trials=40, precision=20)
    g = rep2.failures[0].to_json()
    f.pop("elapsed"), g.pop("elapsed")
    assert g == f


def test_check_machine():
    cfg = GeneratorConfig(seed=5)
    rep = check_machine(LpoMachine, principle("lpo"), cfg, trials=60)
    assert rep.passed and rep.max_mind_changes == 1
    rep2 = check_machine(LlpoMachine, principle("llpo"), cfg, trials=60)
    assert rep2.passed and rep2.max_mind_changes == 1
    rep3 = check_machine(RebetLpoMachine, principle("lpo"), cfg, trials=60)
    assert rep3.max_mind_changes >= 2

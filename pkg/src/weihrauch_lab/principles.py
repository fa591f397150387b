"""The choice, boundedness and omniscience problems, with oracle realizers.

Each problem is a multi-valued map between represented spaces.  All of them
(except open choice) are discontinuous, so no honest transformer can
realize them; the test harness instead uses *oracle realizers*: answers
computed from the symbolic ground truth of an instance under a selection
policy.  An oracle realizer plays the role of the arbitrary realizer G in
a reduction trial, and `admissible` is the referee that judges outputs.

Ground truth is symbolic and finite: intervals by their (possibly
transported, hence CReal) endpoints, subsets of N by a finite set plus a
finite/cofinite tag, omniscience inputs by the position of the decisive
entry.  This keeps every verifier exact and terminating.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .baire import (
    Name,
    decode_rational,
    encode_rational,
    pair,
    project,
    tuple_inf,
    unpair,
)
from .exactreal import dyadic, rv_convex, rv_enclosure, rv_is_exact, rv_leq
from .spaces import (
    ACCEPT,
    EAGER,
    INF,
    InvalidTruth,
    PADDING,
    Schedule,
    Verdict,
    decode_interval_token,
    delta_n,
    interval_token,
    polygon_fn,
    psi_minus_n,
    psi_minus_real,
    psi_minus_unit,
    reject,
    rho,
    rho_greater,
    rho_greater_ext,
    rho_less,
    theta_open,
)
from .baire import PrefixTransformer

__all__ = [
    "EmptyOutput", "DecodeError", "Instance", "Problem",
    "PRINCIPLES", "principle", "make_instance", "oracle_answer",
    "parallel_problem", "product_problem", "c_open_realizer",
    "parse_q", "fmt_q",
]


class EmptyOutput(Exception):
    """The ground truth violates the problem's domain predicate."""


class DecodeError(ValueError):
    """An output name does not parse in the problem's output format."""


def parse_q(text: str) -> mpq:
    text = text.strip()
    if "/" in text:
        n, d = text.split("/")
        return mpq(int(n), int(d))
    return mpq(int(text))


def fmt_q(v) -> str:
    if rv_is_exact(v):
        return str(mpq(v))
    lo, hi = rv_enclosure(v, 20)
    return f"~{float((lo + hi) / 2):.6f}"


@dataclass(frozen=True)
class Instance:
    problem: "Problem"
    truth: object
    name: Name
    schedule: Schedule
    label: str


def make_instance(problem: "Problem", truth, schedule: Schedule = EAGER) -> Instance:
    problem.check(truth)
    name = problem.encode(truth, schedule)
    return Instance(problem, truth, name, schedule, problem.describe(truth))


def oracle_answer(instance: Instance, policy: str, rng=None) -> Name:
    """A valid output name for some admissible answer, chosen by policy."""
    prob = instance.problem
    value = prob.oracle_value(instance.truth, policy, rng or random.Random(0))
    return prob.encode_output(value)


class Problem:
    pid = "?"
    pretty = "?"
    anchor = ""
    policies: tuple[str, ...] = ()
    in_format = "?"
    out_format = "?"

    # -- domain / instances
    def check(self, truth):
        raise NotImplementedError

    def encode(self, truth, schedule) -> Name:
        raise NotImplementedError

    def verify_input(self, truth, name, k) -> Verdict:
        raise NotImplementedError

    def gen(self, rng, cfg):
        raise NotImplementedError

    def corners(self):
        return []

    # -- outputs
    def admissible(self, truth, value, k) -> Verdict:
        raise NotImplementedError

    def decode_output(self, name, k):
        raise NotImplementedError

    def encode_output(self, value) -> Name:
        raise NotImplementedError

    def oracle_value(self, truth, policy, rng):
        raise NotImplementedError

    # -- text
    def describe(self, truth) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def describe_in_token(self, tok) -> str:
        return str(tok)

    def describe_out_token(self, tok) -> str:
        return str(tok)

    def __repr__(self):
        return f"<problem {self.pid}>"


# ---------------------------------------------------------------------------
# output helpers

def _decode_nat(name, k) -> int:
    toks = name.query(8)
    if len(set(toks)) != 1:
        raise DecodeError(f"discrete output is not constant: {toks}")
    return toks[0]


def _decode_real(name, k) -> mpq:
    return decode_rational(name[k])


def _nat_output(value) -> Name:
    return delta_n.encode(int(value), EAGER)


def _real_output(value) -> Name:
    return rho.encode(value, EAGER)


def _within(value, lo, hi, tol) -> bool:
    """lo - tol <= value <= hi + tol with RealValue bounds."""
    v = mpq(value)
    if lo is not INF and not rv_leq(lo, v + tol):
        return False
    if hi is not INF and not rv_leq(v - tol, hi):
        return False
    return True


def _interval_policy_value(lo, hi, policy, rng):
    if policy == "least":
        return lo
    if policy == "greatest":
        return hi
    if policy == "midpoint":
        return rv_convex(lo, hi, mpq(1, 2))
    if policy == "random":
        return rv_convex(lo, hi, mpq(rng.randrange(0, 257), 256))
    raise ValueError(f"unknown interval policy {policy}")


# ---------------------------------------------------------------------------
# omniscience

class LPO(Problem):
    pid = "lpo"
    pretty = "LPO"
    anchor = "Def 2.5"
    policies = ("least",)  # single-valued
    in_format = "raw sequence"
    out_format = "delta_n"

    # truth: ("zero", i) -- first zero at index i; ("nozero",)
    def check(self, truth):
        if truth[0] == "zero":
            if truth[1] < 0:
                raise InvalidTruth("zero index must be a natural")
        elif truth[0] != "nozero":
            raise InvalidTruth(f"bad LPO truth {truth}")

    def encode(self, truth, schedule):
        rng = random.Random(f"lpo:{schedule.seed}:{schedule.kind}")
        fillers = [rng.randrange(1, 10) for _ in range(4096)]

        def f(i):
            if truth[0] == "zero":
                z = truth[1]
                if i == z:
                    return 0
                if i > z and schedule.kind == "shuffle" and fillers[i % 4096] == 9:
                    return 0  # later zeros are allowed, the first one decides
            return fillers[i % 4096]
        return Name.from_index_fn(f, label=f"lpo:{self.describe(truth)}")

    def verify_input(self, truth, name, k):
        if truth[0] == "zero":
            z = truth[1]
            toks = name.query(z + 1)
            if any(t == 0 for t in toks[:z]) or toks[z] != 0:
                return reject("zero position disagrees with the truth")
        else:
            if any(t == 0 for t in name.query(max(k, 16))):
                return reject("claimed zero-free, but a zero appears")
        return ACCEPT

    def answer_of(self, truth) -> int:
        return 0 if truth[0] == "zero" else 1

    def admissible(self, truth, value, k):
        want = self.answer_of(truth)
        return ACCEPT if value == want else reject(f"LPO answer {value}, expected {want}")

    decode_output = staticmethod(_decode_nat)
    encode_output = staticmethod(_nat_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return self.answer_of(truth)

    def gen(self, rng, cfg):
        if rng.random() < 0.4:
            return ("nozero",)
        return ("zero", rng.randrange(0, 24))

    def corners(self):
        return [("nozero",), ("zero", 0), ("zero", 4)]

    def describe(self, truth):
        return "nozero" if truth[0] == "nozero" else f"zero@{truth[1]}"

    def parse(self, text):
        text = text.strip()
        if text == "nozero":
            return ("nozero",)
        if text.startswith("zero@"):
            return ("zero", int(text[5:]))
        raise ValueError(f"bad LPO instance {text!r}")


class LLPO(Problem):
    pid = "llpo"
    pretty = "LLPO"
    anchor = "Def 2.5"
    policies = ("least", "greatest", "random")
    in_format = "raw sequence (at most one non-zero entry)"
    out_format = "delta_n"

    # truth: ("allzero",) or ("nonzero", index, value)
    def check(self, truth):
        if truth[0] == "nonzero":
            if truth[2] == 0:
                raise InvalidTruth("the designated entry must be non-zero")
        elif truth[0] != "allzero":
            raise InvalidTruth(f"bad LLPO truth {truth}")

    def encode(self, truth, schedule):
        if truth[0] == "allzero":
            return Name.constant(0, label="llpo:allzero")
        _, idx, val = truth
        return Name.from_index_fn(lambda i: val if i == idx else 0,
                                  label=f"llpo:{self.describe(truth)}")

    def verify_input(self, truth, name, k):
        toks = name.query(max(k, 16))
        nz = [(i, t) for i, t in enumerate(toks) if t != 0]
        if truth[0] == "allzero":
            return ACCEPT if not nz else reject(f"unexpected non-zero {nz[0]}")
        if nz and nz[0] != (truth[1], truth[2]):
            return reject("non-zero entry disagrees with the truth")
        return ACCEPT

    def admissible_set(self, truth):
        if truth[0] == "allzero":
            return (0, 1)
        return (1,) if truth[1] % 2 == 0 else (0,)

    def admissible(self, truth, value, k):
        ok = self.admissible_set(truth)
        return ACCEPT if value in ok else reject(f"LLPO answer {value} not in {ok}")

    decode_output = staticmethod(_decode_nat)
    encode_output = staticmethod(_nat_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        ok = self.admissible_set(truth)
        if policy == "least":
            return min(ok)
        if policy == "greatest":
            return max(ok)
        return rng.choice(ok)

    def gen(self, rng, cfg):
        if rng.random() < 0.25:
            return ("allzero",)
        return ("nonzero", rng.randrange(0, 24), rng.randrange(1, 50))

    def corners(self):
        return [("allzero",), ("nonzero", 4, 7), ("nonzero", 3, 5)]

    def describe(self, truth):
        return "allzero" if truth[0] == "allzero" else f"nonzero@{truth[1]}={truth[2]}"

    def parse(self, text):
        text = text.strip()
        if text == "allzero":
            return ("allzero",)
        if text.startswith("nonzero@"):
            pos, val = text[8:].split("=")
            return ("nonzero", int(pos), int(val))
        raise ValueError(f"bad LLPO instance {text!r}")


# ---------------------------------------------------------------------------
# discrete choice

def _parse_nat_list(text):
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(t) for t in text.split(","))


class CofiniteChoice(Problem):
    pid = "cf"
    pretty = "C_F"
    anchor = "Def 3.1(1)"
    policies = ("least", "second", "random")
    in_format = "psi_minus_n"
    out_format = "delta_n"

    # truth: ("cofinite", frozenset excluded)
    def check(self, truth):
        kind, s = truth
        if kind != "cofinite":
            raise InvalidTruth("co-finite choice needs a co-finite set")

    def encode(self, truth, schedule):
        return psi_minus_n.encode(truth, schedule)

    def verify_input(self, truth, name, k):
        return psi_minus_n.verify(truth, name, k)

    def _members(self, truth):
        kind, s = truth
        if kind == "finite":
            yield from sorted(s)
            return
        n = 0
        while True:
            if n not in s:
                yield n
            n += 1

    def _pick(self, gen, policy, rng):
        members = []
        for v in gen:
            members.append(v)
            if len(members) >= 8:
                break
        if not members:
            raise EmptyOutput("the set has no members")
        if policy == "least":
            return members[0]
        if policy == "second":
            return members[1] if len(members) > 1 else members[0]
        return rng.choice(members)

    def admissible(self, truth, value, k):
        kind, s = truth
        ok = (value not in s) if kind == "cofinite" else (value in s)
        return ACCEPT if ok else reject(f"{value} is not a member of the set")

    decode_output = staticmethod(_decode_nat)
    encode_output = staticmethod(_nat_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return self._pick(self._members(truth), policy, rng)

    def gen(self, rng, cfg):
        size = rng.randrange(0, min(32, cfg.set_bound) + 1)
        return ("cofinite", frozenset(rng.randrange(0, 64) for _ in range(size)))

    def corners(self):
        return [("cofinite", frozenset()), ("cofinite", frozenset({0, 4})),
                ("cofinite", frozenset(range(32)))]

    def describe(self, truth):
        return "exclude=" + ",".join(map(str, sorted(truth[1])))

    def parse(self, text):
        text = text.strip()
        if not text.startswith("exclude="):
            raise ValueError(f"bad C_F instance {text!r}")
        return ("cofinite", _parse_nat_list(text[8:]))

    def describe_in_token(self, tok):
        return psi_minus_n.describe_token(tok)


class DiscreteChoice(CofiniteChoice):
    pid = "cn"
    pretty = "C_N"
    anchor = "Def 3.1(2)"

    # truth: ("cofinite", excluded) | ("finite", members) | ("upper", t0)
    # | ("pairset", bct_truth).  "upper" is the co-finite set {n : n >= t0},
    # the shape produced by the stage-recording translations; "pairset" is
    # the set of pair codes <n,m> with ball m inside set n of a covering
    # family, the shape produced by the category-theorem translation.
    def check(self, truth):
        kind = truth[0]
        if kind == "finite":
            if not truth[1]:
                raise InvalidTruth("discrete choice needs a non-empty set")
        elif kind == "upper":
            if truth[1] < 0:
                raise InvalidTruth("bad threshold")
        elif kind == "pairset":
            pass  # non-empty by the category theorem; oracle re-checks
        elif kind != "cofinite":
            raise InvalidTruth(f"bad C_N truth {truth}")

    @staticmethod
    def _normal(truth):
        if truth[0] == "upper":
            return ("cofinite", frozenset(range(truth[1])))
        return truth

    def contains(self, truth, n) -> bool:
        truth = self._normal(truth)
        kind, payload = truth
        if kind == "cofinite":
            return n not in payload
        if kind == "finite":
            return n in payload
        return pair_in_covering(payload, n)

    def encode(self, truth, schedule):
        return psi_minus_n.encode(self._normal(truth), schedule)

    def verify_input(self, truth, name, k):
        truth = self._normal(truth)
        if truth[0] != "pairset":
            return psi_minus_n.verify(truth, name, k)
        needed = {n for n in range(max(k, 8)) if not self.contains(truth, n)}
        depth, seen = 8, set()
        while True:
            for tok in name.query(min(depth, 4096)):
                if tok == PADDING:
                    continue
                n = tok - 1
                if self.contains(truth, n):
                    return reject(f"name excludes {n}, which belongs to the set")
                seen.add(n)
            if needed <= seen:
                return ACCEPT
            if depth >= 4096:
                from .baire import NonProductive
                raise NonProductive(f"missing complement elements {sorted(needed - seen)[:4]}")
            depth *= 2

    def _members(self, truth):
        truth = self._normal(truth)
        if truth[0] != "pairset":
            yield from super()._members(truth)
            return
        n = 0
        while True:
            if self.contains(truth, n):
                yield n
            n += 1
            if n > 10 ** 6:
                raise EmptyOutput("no member found in the search window")

    def admissible(self, truth, value, k):
        if self.contains(truth, value):
            return ACCEPT
        return reject(f"{value} is not a member of the set")

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return self._pick(self._members(truth), policy, rng)

    def gen(self, rng, cfg):
        r = rng.random()
        if r < 0.5:
            return super().gen(rng, cfg)
        if r < 0.75:
            return ("upper", rng.randrange(0, 24))
        size = rng.randrange(1, 6)
        return ("finite", frozenset(rng.randrange(0, 48) for _ in range(size)) or frozenset({0}))

    def corners(self):
        return [("cofinite", frozenset()), ("cofinite", frozenset({0, 1, 2})),
                ("finite", frozenset({5})), ("upper", 7)]

    def describe(self, truth):
        if truth[0] == "pairset":
            return "pairs-over(" + PRINCIPLES["bct"].describe(truth[1]) + ")"
        truth = truth if truth[0] != "upper" else self._normal(truth)
        if truth[0] == "cofinite":
            return "complement=" + ",".join(map(str, sorted(truth[1])))
        return "members=" + ",".join(map(str, sorted(truth[1])))

    def parse(self, text):
        text = text.strip()
        if text.startswith("complement="):
            return ("cofinite", _parse_nat_list(text[11:]))
        if text.startswith("members="):
            return ("finite", _parse_nat_list(text[8:]))
        raise ValueError(f"bad C_N instance {text!r}")


# ---------------------------------------------------------------------------
# boundedness

class BoundAbove(Problem):
    pid = "bf"
    pretty = "B_F"
    anchor = "Def 3.2(1)"
    policies = ("least", "tight", "slack", "random")
    in_format = "rho_less"
    out_format = "rho"

    # truth: (sup, attained)
    def check(self, truth):
        sup, attained = truth
        mpq(sup)

    def encode(self, truth, schedule):
        sup, attained = truth
        return rho_less.encode(sup, schedule, attained=attained)

    def verify_input(self, truth, name, k):
        return rho_less.verify(truth[0], name, k)

    def admissible(self, truth, value, k):
        # integer bounds embed into the reals, so plain naturals (delta_n
        # style answers) are accepted alongside decoded rho values
        sup = truth[0]
        if not rv_leq(sup, mpq(value) + dyadic(k - 1)):
            return reject(f"{value} is below the supremum")
        return ACCEPT

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        sup = mpq(truth[0])
        if policy in ("least", "tight"):
            return sup
        if policy == "slack":
            return sup + 1
        return sup + mpq(rng.randrange(0, 1025), 256)

    def gen(self, rng, cfg):
        num = rng.randrange(-4 * cfg.den_bound, 4 * cfg.den_bound)
        den = rng.randrange(1, cfg.den_bound)
        return (mpq(num, den), rng.random() < 0.5)

    def corners(self):
        return [(mpq(5, 2), True), (mpq(0), True), (mpq(-1), False)]

    def describe(self, truth):
        sup, attained = truth
        return f"sup={sup}" + ("" if attained else " unattained")

    def parse(self, text):
        text = text.strip()
        attained = True
        if text.endswith("unattained"):
            attained = False
            text = text[: -len("unattained")].strip()
        if not text.startswith("sup="):
            raise ValueError(f"bad B_F instance {text!r}")
        return (parse_q(text[4:]), attained)

    def describe_in_token(self, tok):
        return rho_less.describe_token(tok)

    def describe_out_token(self, tok):
        return rho.describe_token(tok)


class Sup(BoundAbove):
    pid = "b"
    pretty = "B"
    anchor = "Def 3.2(5)"
    policies = ("least",)

    def admissible(self, truth, value, k):
        sup = truth[0]
        tol = dyadic(k - 1)
        if not (rv_leq(sup, mpq(value) + tol) and rv_leq(mpq(value) - tol, sup)):
            return reject(f"{value} is not the supremum")
        return ACCEPT

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return mpq(truth[0])

    def describe(self, truth):
        return f"x={truth[0]}"

    def parse(self, text):
        text = text.strip()
        if not text.startswith("x="):
            raise ValueError(f"bad B instance {text!r}")
        return (parse_q(text[2:]), True)


def _parse_interval(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad interval {text!r}")
    a, b = text[1:-1].split(",")
    lo = INF if a.strip() in ("-inf", "inf") else parse_q(a)
    hi = INF if b.strip() in ("inf", "+inf") else parse_q(b)
    return lo, hi


class BoundedInterval(Problem):
    """B_I: two-sided bounds as a pair of a lower and an upper cut name."""
    pid = "bi"
    pretty = "B_I"
    anchor = "Def 3.2(2)"
    policies = ("least", "greatest", "midpoint", "random")
    in_format = "pair(rho_less, rho_greater)"
    out_format = "rho"
    proper = False
    lo_range = (mpq(-4), mpq(4))

    def check(self, truth):
        a, b = truth
        if self.proper:
            if not rv_leq(a, b) or (rv_is_exact(a) and rv_is_exact(b) and mpq(a) == mpq(b)):
                raise InvalidTruth("proper bounds need a < b")
        else:
            if not rv_leq(a, b):
                raise InvalidTruth("bounds need a <= b")

    def encode(self, truth, schedule):
        a, b = truth
        return pair(rho_less.encode(a, schedule),
                    rho_greater.encode(b, schedule))

    def verify_input(self, truth, name, k):
        a, b = truth
        left, right = unpair(name)
        v = rho_less.verify(a, left, k)
        if not v:
            return v
        return rho_greater.verify(b, right, k)

    def admissible(self, truth, value, k):
        a, b = truth
        tol = dyadic(k - 1)
        if _within(value, a, b, tol):
            return ACCEPT
        return reject(f"{value} outside [{fmt_q(a)},{fmt_q(b)}] +- 2^-{k-1}")

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return _interval_policy_value(truth[0], truth[1], policy, rng)

    def gen(self, rng, cfg):
        lo, hi = self.lo_range
        span = hi - lo
        a = lo + span * mpq(rng.randrange(0, cfg.den_bound), cfg.den_bound)
        width = span * mpq(rng.randrange(1 if self.proper else 0, cfg.den_bound // 4),
                           cfg.den_bound)
        return (a, min(a + width, hi))

    def corners(self):
        if self.proper:
            return [(mpq(9, 20), mpq(1, 2)), (mpq(0), mpq(1)), (mpq(3, 10), mpq(31, 100))]
        return [(mpq(1, 2), mpq(1, 2)), (mpq(1, 3), mpq(2, 3)), (mpq(-1), mpq(1))]

    def describe(self, truth):
        return f"[{fmt_q(truth[0])},{fmt_q(truth[1])}]"

    def parse(self, text):
        lo, hi = _parse_interval(text)
        if lo is INF or hi is INF:
            raise ValueError("bounds must be finite")
        return (lo, hi)

    def describe_in_token(self, tok):
        return rho_less.describe_token(tok)

    def describe_out_token(self, tok):
        return rho.describe_token(tok)


class BoundedIntervalProper(BoundedInterval):
    pid = "bi-"
    pretty = "B_I^-"
    anchor = "Def 3.2(3)"
    proper = True


class BoundedIntervalUnit(BoundedInterval):
    """Bounds inside [0,1]; the shape produced by interval-choice codings."""
    pid = "bi01"
    pretty = "B_I over [0,1]"
    anchor = "Lemma 3.5"
    lo_range = (mpq(0), mpq(1))

    def gen(self, rng, cfg):
        d = 64
        a = mpq(rng.randrange(1, d - 1), d)
        b = a + mpq(rng.randrange(1 if self.proper else 0, d - int(a * d)), d)
        return (a, min(b, mpq(d - 1, d)))

    def corners(self):
        if self.proper:
            return [(mpq(9, 20), mpq(1, 2)), (mpq(1, 64), mpq(63, 64)), (mpq(0), mpq(1))]
        return [(mpq(1, 2), mpq(1, 2)), (mpq(1, 3), mpq(2, 3))]


class BoundedIntervalUnitProper(BoundedIntervalUnit):
    pid = "bi01-"
    pretty = "B_I^- over [0,1]"
    proper = True


class BoundedIntervalPlus(BoundedInterval):
    pid = "bi+"
    pretty = "B_I^+"
    anchor = "Def 3.2(4)"
    in_format = "pair(rho_less, rho_greater_ext)"

    def check(self, truth):
        a, b = truth
        if b is INF:
            return
        super().check(truth)

    def encode(self, truth, schedule):
        a, b = truth
        return pair(rho_less.encode(a, schedule), rho_greater_ext.encode(b, schedule))

    def verify_input(self, truth, name, k):
        a, b = truth
        left, right = unpair(name)
        v = rho_less.verify(a, left, k)
        if not v:
            return v
        return rho_greater_ext.verify(b, right, k)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        a, b = truth
        if b is not INF:
            return _interval_policy_value(a, b, policy, rng)
        if policy == "least":
            return a
        if policy == "greatest":
            return mpq(a) + 2
        if policy == "midpoint":
            return mpq(a) + 1
        return mpq(a) + mpq(rng.randrange(0, 1025), 256)

    def gen(self, rng, cfg):
        if rng.random() < 0.3:
            num = rng.randrange(-2 * cfg.den_bound, 2 * cfg.den_bound)
            return (mpq(num, cfg.den_bound), INF)
        return super().gen(rng, cfg)

    def corners(self):
        return [(mpq(2), INF), (mpq(0), mpq(0)), (mpq(-1), mpq(1))]

    def describe(self, truth):
        a, b = truth
        return f"[{fmt_q(a)},{'inf' if b is INF else fmt_q(b)}]"

    def parse(self, text):
        lo, hi = _parse_interval(text)
        if lo is INF:
            raise ValueError("lower bound must be finite")
        return (lo, hi)


# ---------------------------------------------------------------------------
# interval / compact / closed choice

class IntervalChoice(Problem):
    pid = "ci"
    pretty = "C_I"
    anchor = "Def 3.1(3)"
    policies = ("least", "greatest", "midpoint", "random")
    in_format = "psi_minus_unit"
    out_format = "rho"
    proper = False

    def check(self, truth):
        a, b = truth
        if not rv_leq(mpq(0), a) or not rv_leq(b, mpq(1)) or not rv_leq(a, b):
            raise InvalidTruth("need 0 <= a <= b <= 1")
        if self.proper and rv_is_exact(a) and rv_is_exact(b) and mpq(a) == mpq(b):
            raise InvalidTruth("proper interval choice needs a < b")

    def encode(self, truth, schedule):
        return psi_minus_unit.encode((truth,), schedule)

    def verify_input(self, truth, name, k):
        return psi_minus_unit.verify((truth,), name, k)

    def admissible(self, truth, value, k):
        a, b = truth
        tol = dyadic(k - 1)
        if _within(value, a, b, tol):
            return ACCEPT
        return reject(f"{value} outside [{fmt_q(a)},{fmt_q(b)}] +- 2^-{k-1}")

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return _interval_policy_value(truth[0], truth[1], policy, rng)

    def gen(self, rng, cfg):
        d = 64
        a = mpq(rng.randrange(0, d), d)
        b = a + mpq(rng.randrange(1 if self.proper else 0, d + 1 - int(a * d)), d)
        return (a, min(b, mpq(1)))

    def corners(self):
        if self.proper:
            return [(mpq(9, 20), mpq(1, 2)), (mpq(0), mpq(1)), (mpq(49, 100), mpq(51, 100))]
        return [(mpq(1, 2), mpq(1, 2)), (mpq(1, 3), mpq(2, 3)), (mpq(0), mpq(1))]

    def describe(self, truth):
        return f"[{fmt_q(truth[0])},{fmt_q(truth[1])}]"

    def parse(self, text):
        lo, hi = _parse_interval(text)
        if lo is INF or hi is INF:
            raise ValueError("interval endpoints must be finite")
        return (lo, hi)

    def describe_in_token(self, tok):
        return psi_minus_unit.describe_token(tok)


class ProperIntervalChoice(IntervalChoice):
    pid = "ci-"
    pretty = "C_I^-"
    anchor = "Def 3.1(4)"
    proper = True


class CompactChoice(Problem):
    pid = "ck"
    pretty = "C_K"
    anchor = "Def 3.1(5)"
    policies = ("least", "greatest", "midpoint", "random")
    in_format = "psi_minus_unit"
    out_format = "rho"

    # truth: tuple of disjoint closed components (a, b) in [0,1], sorted
    def check(self, truth):
        if not truth:
            raise InvalidTruth("compact choice needs a non-empty set")
        prev = None
        for a, b in truth:
            if not (0 <= mpq(a) <= mpq(b) <= 1):
                raise InvalidTruth("components must sit inside [0,1]")
            if prev is not None and mpq(a) <= prev:
                raise InvalidTruth("components must be sorted and disjoint")
            prev = mpq(b)

    def encode(self, truth, schedule):
        return psi_minus_unit.encode(truth, schedule)

    def verify_input(self, truth, name, k):
        return psi_minus_unit.verify(truth, name, k)

    def admissible(self, truth, value, k):
        tol = dyadic(k - 1)
        for a, b in truth:
            if _within(value, a, b, tol):
                return ACCEPT
        return reject(f"{value} not within 2^-{k-1} of the set")

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        if policy == "least":
            return truth[0][0]
        if policy == "greatest":
            return truth[-1][1]
        if policy == "midpoint":
            comp = truth[len(truth) // 2]
            return rv_convex(comp[0], comp[1], mpq(1, 2))
        comp = truth[rng.randrange(len(truth))]
        return rv_convex(comp[0], comp[1], mpq(rng.randrange(0, 257), 256))

    def gen(self, rng, cfg):
        d = 32
        cuts = sorted(rng.sample(range(d + 1), rng.choice((2, 2, 4, 6))))
        comps = []
        for i in range(0, len(cuts) - 1, 2):
            comps.append((mpq(cuts[i], d), mpq(cuts[i + 1], d)))
        return tuple(comps)

    def corners(self):
        return [((mpq(1, 2), mpq(1, 2)),),
                ((mpq(0), mpq(1, 4)), (mpq(1, 2), mpq(3, 4))),
                ((mpq(0), mpq(1)),)]

    def describe(self, truth):
        return "u".join(f"[{fmt_q(a)},{fmt_q(b)}]" for a, b in truth)

    def parse(self, text):
        comps = tuple(_parse_interval(part) for part in text.strip().split("u"))
        return tuple((mpq(a), mpq(b)) for a, b in comps)

    def describe_in_token(self, tok):
        return psi_minus_unit.describe_token(tok)


class ClosedChoice(Problem):
    pid = "ca"
    pretty = "C_A"
    anchor = "Def 3.1(6)"
    policies = ("least", "greatest", "midpoint", "random")
    in_format = "psi_minus_real"
    out_format = "rho"

    # truth: tuple of components (lo|INF, hi|INF), sorted, disjoint
    def check(self, truth):
        if not truth:
            raise InvalidTruth("closed choice needs a non-empty set")
        for lo, hi in truth:
            if lo is not INF and hi is not INF and not rv_leq(lo, hi):
                raise InvalidTruth("component endpoints out of order")

    def encode(self, truth, schedule):
        return psi_minus_real.encode(truth, schedule)

    def verify_input(self, truth, name, k):
        return psi_minus_real.verify(truth, name, k)

    def admissible(self, truth, value, k):
        tol = dyadic(k - 1)
        for lo, hi in truth:
            if _within(value, lo, hi, tol):
                return ACCEPT
        return reject(f"{value} not within 2^-{k-1} of the set")

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    @staticmethod
    def _point_in(comp, which, rng):
        lo, hi = comp
        if lo is INF and hi is INF:
            return mpq(0)
        if lo is INF:
            return mpq(hi) - (1 if which == "least" else 0)
        if hi is INF:
            return mpq(lo) + (1 if which == "greatest" else 0)
        if which == "least":
            return lo
        if which == "greatest":
            return hi
        if which == "midpoint":
            return rv_convex(lo, hi, mpq(1, 2))
        return rv_convex(lo, hi, mpq(rng.randrange(0, 257), 256))

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        if policy == "least":
            return self._point_in(truth[0], "least", rng)
        if policy == "greatest":
            return self._point_in(truth[-1], "greatest", rng)
        if policy == "midpoint":
            return self._point_in(truth[len(truth) // 2], "midpoint", rng)
        return self._point_in(truth[rng.randrange(len(truth))], "random", rng)

    def gen(self, rng, cfg):
        d = 16
        vals = sorted(rng.sample(range(-4 * d, 4 * d), rng.choice((2, 2, 4))))
        comps = [(mpq(vals[i], d), mpq(vals[i + 1], d)) for i in range(0, len(vals) - 1, 2)]
        r = rng.random()
        if r < 0.2:
            comps[-1] = (comps[-1][0], INF)
        elif r < 0.4:
            comps[0] = (INF, comps[0][1])
        return tuple(comps)

    def corners(self):
        return [((mpq(2), INF),), ((mpq(0), mpq(0)),), ((INF, mpq(-1)), (mpq(1), mpq(2)))]

    def describe(self, truth):
        def side(v, s):
            return s if v is INF else fmt_q(v)
        return "u".join(f"[{side(lo, '-inf')},{side(hi, 'inf')}]" for lo, hi in truth)

    def parse(self, text):
        return tuple(_parse_interval(part) for part in text.strip().split("u"))

    def describe_in_token(self, tok):
        return psi_minus_real.describe_token(tok)


class OpenChoice(Problem):
    pid = "copen"
    pretty = "C_O"
    anchor = "Def 9.1"
    policies = ("midpoint", "random")
    in_format = "theta_open"
    out_format = "rho"

    def check(self, truth):
        if not truth:
            raise InvalidTruth("open choice needs a non-empty open set")
        for a, b in truth:
            if not (0 <= mpq(a) < mpq(b) <= 1):
                raise InvalidTruth("components must be non-trivial open intervals in [0,1]")

    def encode(self, truth, schedule):
        return theta_open.encode(truth, schedule)

    def verify_input(self, truth, name, k):
        return theta_open.verify(truth, name, k)

    def admissible(self, truth, value, k):
        tol = dyadic(k - 1)
        for a, b in truth:
            if _within(value, a, b, tol):
                return ACCEPT
        return reject(f"{value} not within 2^-{k-1} of the open set")

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        if policy == "midpoint":
            a, b = truth[0]
            return (mpq(a) + mpq(b)) / 2
        a, b = truth[rng.randrange(len(truth))]
        t = mpq(rng.randrange(1, 256), 256)
        return mpq(a) + t * (mpq(b) - mpq(a))

    def gen(self, rng, cfg):
        d = 32
        a = mpq(rng.randrange(0, d - 1), d)
        b = a + mpq(rng.randrange(1, d - int(a * d)), d)
        return ((a, min(b, mpq(1))),)

    def corners(self):
        return [((mpq(1, 4), mpq(3, 4)),), ((mpq(0), mpq(1)),), ((mpq(1, 8), mpq(1, 4)),)]

    def describe(self, truth):
        return "u".join(f"({fmt_q(a)},{fmt_q(b)})" for a, b in truth)

    def parse(self, text):
        comps = []
        for part in text.strip().split("u"):
            part = part.strip()
            if not (part.startswith("(") and part.endswith(")")):
                raise ValueError(f"bad open interval {part!r}")
            a, b = part[1:-1].split(",")
            comps.append((parse_q(a), parse_q(b)))
        return tuple(comps)

    def describe_in_token(self, tok):
        return theta_open.describe_token(tok)


# ---------------------------------------------------------------------------
# Baire category over [0,1]

def ball_index(m):
    """Fixed enumeration of rational open balls of [0,1]: index -> item
    (lo, lo_closed, hi, hi_closed), or None for the empty ball."""
    i, j = divmod(m, 8)
    d = 8
    lo = mpq(i % (d + 1), d) - mpq(1, 2 * d) * (j % 3)
    width = mpq((j % 4) + 1, d)
    hi = lo + width
    lo2, hi2 = max(lo, mpq(0)), min(hi, mpq(1))
    if lo2 >= hi2:
        return None
    return (lo2, lo <= 0, hi2, hi >= 1)


def pair_in_covering(bct_truth, code) -> bool:
    """Is <n,m> = code in {<n,m> : ball m non-empty and inside set n}?"""
    from .baire import nat_unpair
    n, m = nat_unpair(code)
    ball = ball_index(m)
    if ball is None:
        return False
    comps = PRINCIPLES["bct"].set_at(bct_truth, n)
    if not comps:
        return False
    blo, blc, bhi, bhc = ball
    for a, b in comps:
        if mpq(a) <= blo and bhi <= mpq(b):
            return True
    return False


class BaireCategory(Problem):
    pid = "bct"
    pretty = "BCT"
    anchor = "Def 5.1"
    policies = ("least", "second", "random")
    in_format = "tuple_inf(psi_minus_unit)"
    out_format = "delta_n"

    # truth: ("list", (set_0, set_1, ...)) with set_i a tuple of closed
    # components, union covering [0,1]; or ("threshold", t0): empty below
    # t0, the whole space from t0 on.
    def check(self, truth):
        kind = truth[0]
        if kind == "threshold":
            if truth[1] < 0:
                raise InvalidTruth("bad threshold")
            return
        if kind != "list":
            raise InvalidTruth(f"bad BCT truth {truth}")
        sets = truth[1]
        if not sets:
            raise InvalidTruth("need at least one closed set")
        items = []
        for comps in sets:
            for a, b in comps:
                items.append((mpq(a), True, mpq(b), True))
        from .spaces import covers_closed
        if not covers_closed(items, mpq(0), mpq(1)):
            raise InvalidTruth("the sets do not cover [0,1]")

    def set_at(self, truth, n):
        if truth[0] == "threshold":
            return None if n < truth[1] else ((mpq(0), mpq(1)),)
        sets = truth[1]
        return sets[n] if n < len(sets) else None  # None = empty set

    def _coord_name(self, truth, n, schedule):
        comps = self.set_at(truth, n)
        if comps is None or len(comps) == 0:
            # empty set: the complement is everything
            return Name.constant(interval_token(mpq(0), mpq(1), True, True),
                                 label=f"flood:{n}")
        sub = Schedule(schedule.kind, schedule.delay, schedule.seed * 131 + n)
        return psi_minus_unit.encode(tuple(comps), sub)

    def encode(self, truth, schedule):
        cache = {}

        def coord(i):
            if i not in cache:
                cache[i] = self._coord_name(truth, i, schedule)
            return cache[i]
        return tuple_inf(coord)

    def verify_input(self, truth, name, k, window=None):
        if truth[0] == "threshold":
            window = window or truth[1] + 2
        else:
            window = window or len(truth[1]) + 1
        for n in range(window):
            comps = self.set_at(truth, n)
            coord = project(name, n)
            if comps is None or len(comps) == 0:
                items = [decode_interval_token(t) for t in coord.query(16)]
                items = [it for it in items if it is not None]
                from .spaces import covers_closed
                if not covers_closed(items, dyadic(k), 1 - dyadic(k)):
                    return reject(f"coordinate {n} should flood the empty set")
            elif comps == ((mpq(0), mpq(1)),):
                if any(t != PADDING for t in coord.query(16)):
                    return reject(f"coordinate {n} names the whole space, must stay silent")
            else:
                v = psi_minus_unit.verify(tuple(comps), coord, max(4, k // 2))
                if not v:
                    return reject(f"coordinate {n}: {v.reason}")
        return ACCEPT

    def admissible_indices(self, truth, bound=64):
        # relative interior in [0,1] is non-empty iff some component is a
        # non-degenerate interval
        if truth[0] == "threshold":
            return range(truth[1], bound)
        return [n for n, comps in enumerate(truth[1])
                if any(mpq(a) < mpq(b) for a, b in comps)]

    def admissible(self, truth, value, k):
        if truth[0] == "threshold":
            return ACCEPT if value >= truth[1] else reject(
                f"index {value} names an empty set (threshold {truth[1]})")
        ok = self.admissible_indices(truth)
        return ACCEPT if value in ok else reject(f"set {value} has empty interior")

    decode_output = staticmethod(_decode_nat)
    encode_output = staticmethod(_nat_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        idx = list(self.admissible_indices(truth))
        if not idx:
            raise EmptyOutput("no set with interior (domain violation)")
        if policy == "least":
            return idx[0]
        if policy == "second":
            return idx[1] if len(idx) > 1 else idx[0]
        return rng.choice(idx)

    def gen(self, rng, cfg):
        d = 8
        n_sets = rng.choice((1, 2, 2, 3, 4))
        cuts = sorted(rng.sample(range(1, d), min(d - 1, n_sets - 1))) if n_sets > 1 else []
        bounds = [mpq(0)] + [mpq(c, d) for c in cuts] + [mpq(1)]
        sets = [((bounds[i], bounds[i + 1]),) for i in range(len(bounds) - 1)]
        rng.shuffle(sets)
        if rng.random() < 0.4:
            sets.insert(rng.randrange(len(sets) + 1), ((mpq(1, 2), mpq(1, 2)),))
        return ("list", tuple(sets))

    def corners(self):
        return [("list", (((mpq(0), mpq(1)),),)),
                ("list", (((mpq(1, 2), mpq(1, 2)),), ((mpq(0), mpq(1)),))),
                ("list", (((mpq(0), mpq(1, 2)),), ((mpq(1, 2), mpq(1)),))),
                ("threshold", 3)]

    def describe(self, truth):
        if truth[0] == "threshold":
            return f"threshold={truth[1]}"
        def one(comps):
            if not comps:
                return "empty"
            return "u".join(f"[{fmt_q(a)},{fmt_q(b)}]" for a, b in comps)
        return ";".join(one(c) for c in truth[1])

    def parse(self, text):
        text = text.strip()
        if text.startswith("threshold="):
            return ("threshold", int(text[10:]))
        sets = []
        for part in text.split(";"):
            part = part.strip()
            if part == "empty":
                sets.append(())
            else:
                sets.append(tuple(_parse_interval(c) for c in part.split("u")))
        return ("list", tuple(sets))

    def describe_in_token(self, tok):
        return psi_minus_unit.describe_token(tok)


# ---------------------------------------------------------------------------
# intermediate value theorem

class IVT(Problem):
    pid = "ivt"
    pretty = "IVT"
    anchor = "Def 7.1"
    policies = ("least", "greatest", "midpoint", "random")
    in_format = "polygon_fn"
    out_format = "rho"

    # truth: (a, b, flip) -- the function vanishes exactly on [a,b]
    def check(self, truth):
        a, b, flip = truth
        if not rv_leq(a, b):
            raise InvalidTruth("zero set endpoints out of order")
        if rv_is_exact(a) and not (0 < mpq(a)):
            raise InvalidTruth("zero set must sit strictly inside (0,1)")
        if rv_is_exact(b) and not (mpq(b) < 1):
            raise InvalidTruth("zero set must sit strictly inside (0,1)")

    def encode(self, truth, schedule):
        return polygon_fn.encode(truth, schedule)

    def verify_input(self, truth, name, k):
        return polygon_fn.verify(truth, name, k)

    def admissible(self, truth, value, k):
        a, b, _ = truth
        tol = dyadic(k - 1)
        if _within(value, a, b, tol):
            return ACCEPT
        return reject(f"{value} not within 2^-{k-1} of the zero set")

    decode_output = staticmethod(_decode_real)
    encode_output = staticmethod(_real_output)

    def oracle_value(self, truth, policy, rng):
        self.check(truth)
        return _interval_policy_value(truth[0], truth[1], policy, rng)

    def gen(self, rng, cfg):
        d = 32
        a = mpq(rng.randrange(1, d - 1), d)
        b = a + mpq(rng.randrange(0, d - 1 - int(a * d) + 1), d)
        b = min(b, mpq(d - 1, d))
        return (a, b, rng.random() < 0.3)

    def corners(self):
        return [(mpq(1, 2), mpq(1, 2), False), (mpq(1, 3), mpq(2, 3), False),
                (mpq(1, 4), mpq(1, 4), False), (mpq(1, 3), mpq(2, 3), True)]

    def describe(self, truth):
        a, b, flip = truth
        return f"zeroset=[{fmt_q(a)},{fmt_q(b)}]" + (" flip" if flip else "")

    def parse(self, text):
        text = text.strip()
        flip = False
        if text.endswith("flip"):
            flip = True
            text = text[:-4].strip()
        if not text.startswith("zeroset="):
            raise ValueError(f"bad IVT instance {text!r}")
        lo, hi = _parse_interval(text[8:])
        return (lo, hi, flip)

    def describe_in_token(self, tok):
        return polygon_fn.describe_token(tok)


# ---------------------------------------------------------------------------
# combinators

class ProductProblem(Problem):
    """Finite product f x g: paired inputs, paired outputs."""

    def __init__(self, left: Problem, right: Problem):
        self.left = left
        self.right = right
        self.pid = f"{left.pid}x{right.pid}"
        self.pretty = f"{left.pretty} x {right.pretty}"
        self.anchor = left.anchor
        self.policies = tuple(p for p in left.policies if p in right.policies) or ("least",)
        self.in_format = f"pair({left.in_format}, {right.in_format})"
        self.out_format = f"pair({left.out_format}, {right.out_format})"

    def check(self, truth):
        self.left.check(truth[0])
        self.right.check(truth[1])

    def encode(self, truth, schedule):
        sub = Schedule(schedule.kind, schedule.delay, schedule.seed + 1)
        return pair(self.left.encode(truth[0], schedule),
                    self.right.encode(truth[1], sub))

    def verify_input(self, truth, name, k):
        l, r = unpair(name)
        v = self.left.verify_input(truth[0], l, k)
        if not v:
            return v
        return self.right.verify_input(truth[1], r, k)

    def admissible(self, truth, value, k):
        v = self.left.admissible(truth[0], value[0], k)
        if not v:
            return v
        return self.right.admissible(truth[1], value[1], k)

    def decode_output(self, name, k):
        l, r = unpair(name)
        return (self.left.decode_output(l, k), self.right.decode_output(r, k))

    def encode_output(self, value):
        return pair(self.left.encode_output(value[0]), self.right.encode_output(value[1]))

    def oracle_value(self, truth, policy, rng):
        return (self.left.oracle_value(truth[0], policy, rng),
                self.right.oracle_value(truth[1], policy, rng))

    def gen(self, rng, cfg):
        return (self.left.gen(rng, cfg), self.right.gen(rng, cfg))

    def corners(self):
        lc, rc = self.left.corners(), self.right.corners()
        return [(l, rc[i % len(rc)]) for i, l in enumerate(lc)] + [(lc[0], rc[-1])]

    def describe(self, truth):
        return f"{self.left.describe(truth[0])} | {self.right.describe(truth[1])}"

    def parse(self, text):
        l, r = text.split("|")
        return (self.left.parse(l), self.right.parse(r))


class ParallelProblem(Problem):
    """Countably many independent instances, presented as a tupled name.

    Finite truth vectors are extended countably by cycling modulo their
    width, so coordinate i names truths[i % width].
    """

    def __init__(self, base: Problem, width: int = 10):
        self.base = base
        self.width = width
        self.pid = f"par({base.pid},{width})"
        self.pretty = f"{base.pretty}^"
        self.anchor = "Def 2.6"
        self.policies = base.policies + (("alternate",) if len(base.policies) > 1 else ())
        self.in_format = f"tuple_inf({base.in_format})"
        self.out_format = f"tuple_inf({base.out_format})"

    def check(self, truth):
        if len(truth) != self.width:
            raise InvalidTruth(f"expected {self.width} coordinates")
        for t in truth:
            self.base.check(t)

    def encode(self, truth, schedule):
        cache = {}

        def coord(i):
            if i not in cache:
                sub = Schedule(schedule.kind, schedule.delay, schedule.seed * 257 + (i % self.width))
                cache[i] = self.base.encode(truth[i % self.width], sub)
            return cache[i]
        return tuple_inf(coord)

    def verify_input(self, truth, name, k):
        for i in range(self.width):
            v = self.base.verify_input(truth[i], project(name, i), k)
            if not v:
                return reject(f"coordinate {i}: {v.reason}")
        return ACCEPT

    def admissible(self, truth, value, k):
        for i in range(self.width):
            v = self.base.admissible(truth[i], value[i], k)
            if not v:
                return reject(f"coordinate {i}: {v.reason}")
        return ACCEPT

    def decode_output(self, name, k):
        return tuple(self.base.decode_output(project(name, i), k) for i in range(self.width))

    def encode_output(self, value):
        cache = {}

        def coord(i):
            if i not in cache:
                cache[i] = self.base.encode_output(value[i % self.width])
            return cache[i]
        return tuple_inf(coord)

    def oracle_value(self, truth, policy, rng):
        vals = []
        pols = self.base.policies
        for i, t in enumerate(truth):
            p = pols[i % len(pols)] if policy == "alternate" else policy
            vals.append(self.base.oracle_value(t, p, rng))
        return tuple(vals)

    def gen(self, rng, cfg):
        return tuple(self.base.gen(rng, cfg) for _ in range(self.width))

    def corners(self):
        base_corners = self.base.corners()
        corner = tuple(base_corners[i % len(base_corners)] for i in range(self.width))
        return [corner]

    def describe(self, truth):
        return " || ".join(self.base.describe(t) for t in truth)

    def parse(self, text):
        parts = text.split("||")
        if len(parts) != self.width:
            raise ValueError(f"expected {self.width} coordinates")
        return tuple(self.base.parse(p) for p in parts)


def product_problem(left, right):
    return ProductProblem(left, right)


def parallel_problem(base, width=10):
    return ParallelProblem(base, width)


# ---------------------------------------------------------------------------
# open choice has a genuine realizer

def c_open_realizer() -> PrefixTransformer:
    """The one computable choice: scan the positive-information name and
    answer the center of the first non-empty listed interval."""
    from .spaces import decode_open_interval_token

    def fn(prefix):
        center = None
        for tok in prefix:
            item = decode_open_interval_token(tok)
            if item is not None:
                center = (item[0] + item[2]) / 2
                break
        if center is None:
            return ()
        # a rho-name of the (rational) center: constant
        tok = encode_rational(center)
        return (tok,) * len(prefix)
    return PrefixTransformer("c_open", fn)


# ---------------------------------------------------------------------------
# registry

def _build_registry():
    probs = [
        LPO(), LLPO(), CofiniteChoice(), DiscreteChoice(),
        BoundAbove(), Sup(),
        BoundedInterval(), BoundedIntervalProper(),
        BoundedIntervalUnit(), BoundedIntervalUnitProper(), BoundedIntervalPlus(),
        IntervalChoice(), ProperIntervalChoice(), CompactChoice(), ClosedChoice(),
        OpenChoice(), BaireCategory(), IVT(),
    ]
    return {p.pid: p for p in probs}


PRINCIPLES = _build_registry()


def principle(pid: str) -> Problem:
    if pid not in PRINCIPLES:
        raise KeyError(f"unknown principle {pid!r}")
    return PRINCIPLES[pid]

"""Representations: how points, sets and functions are coded into names.

Each format fixes what a token means and what information order is
allowed.  Encoders turn symbolic ground truth into names under an
information schedule (eager / fixed-delay / seeded-shuffle); verifiers
check a candidate name against ground truth at a requested precision.
Schedules only reorder or delay information, never change what is named;
they exist because a transformer that silently assumes eager information
is wrong, and adversarial schedules are the cheapest way to prove it.

Formats:
  delta_n            constant sequence n,n,n,...
  rho                fast Cauchy: token k is a rational within 2^-k
  rho_less/greater   monotone rational approximations from below/above
  rho_greater_ext    as rho_greater but over Q u {+inf}
  psi_minus_n        enumeration of the complement of a subset of N (n+1
                     coding, 0 padding)
  psi_minus_unit     enumeration of rational open-in-[0,1] intervals
                     exhausting the complement of a closed subset
  psi_minus_real     the same over R, with optionally infinite endpoints
  theta_open         positive information: intervals exhausting an open set
  polygon_fn         rational polygons converging fast in sup norm
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .baire import (
    Name,
    NonProductive,
    PADDING,
    decode_rational,
    encode_rational,
    nat_to_seq,
    seq_to_nat,
)
from .exactreal import dyadic, rv_approx, rv_enclosure, rv_is_exact, rv_leq, rv_lt

__all__ = [
    "Schedule", "EAGER", "DELAY", "SHUFFLE", "SCHEDULES",
    "Verdict", "ACCEPT", "reject",
    "InvalidTruth", "MalformedPolygon",
    "delta_n", "rho", "rho_less", "rho_greater", "rho_greater_ext",
    "psi_minus_n", "psi_minus_unit", "psi_minus_real", "theta_open", "polygon_fn",
    "interval_token", "decode_interval_token",
    "real_interval_token", "decode_real_interval_token",
    "open_interval_token", "decode_open_interval_token",
    "polygon_token", "decode_polygon_token",
    "eval_polygon", "plateau_polygon_stages", "covered_hull",
    "VERIFY_BUDGET",
]

VERIFY_BUDGET = 4096

INF = "inf"  # sentinel for +/- infinite endpoints (signed by position)


class InvalidTruth(ValueError):
    """The symbolic ground truth does not belong to the space."""


class MalformedPolygon(ValueError):
    """Polygon vertices are not x-monotone over [0,1]."""


@dataclass(frozen=True)
class Schedule:
    kind: str = "eager"  # eager | delay | shuffle
    delay: int = 8
    seed: int = 0

    def short(self):
        return self.kind


EAGER = Schedule("eager")
DELAY = Schedule("delay")
SHUFFLE = Schedule("shuffle")
SCHEDULES = (EAGER, DELAY, SHUFFLE)


def stair(schedule: Schedule):
    """Nondecreasing unbounded index map controlling information release."""
    if schedule.kind == "eager":
        return lambda n: n
    if schedule.kind == "delay":
        d = schedule.delay
        return lambda n: max(0, n - d)
    if schedule.kind == "shuffle":
        steps = [0]
        rng = random.Random(f"stair:{schedule.seed}")

        def g(n):
            # pauses but never skips: enumeration items may not be dropped
            while len(steps) <= n:
                jump = rng.choice((0, 0, 1, 1)) if len(steps) % 4 else 1
                steps.append(steps[-1] + jump)
            return steps[n]
        return g
    raise ValueError(f"unknown schedule {schedule.kind}")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


ACCEPT = Verdict(True)


def reject(reason: str) -> Verdict:
    return Verdict(False, reason)


# ---------------------------------------------------------------------------
# finite unions of rational intervals with open/closed ends
#
# item = (lo, lo_closed, hi, hi_closed); lo/hi are mpq or INF sentinels
# (INF at position lo means -inf, at position hi means +inf).

def item_nonempty(item) -> bool:
    lo, lc, hi, hc = item
    if lo is INF or hi is INF:
        return True
    return lo < hi or (lo == hi and lc and hc)


def merge_union(items):
    """Disjoint, sorted, maximal components of a finite union."""
    items = [it for it in items if item_nonempty(it)]
    items.sort(key=lambda it: ((0, mpq(0)) if it[0] is INF else (1, it[0])))
    out = []
    for lo, lc, hi, hc in items:
        if out:
            plo, plc, phi, phc = out[-1]
            # previous reaches this item?
            joined = False
            if phi is INF:
                joined = True
            elif lo is INF:
                joined = True
            elif lo < phi or (lo == phi and (lc or phc)):
                joined = True
            if joined:
                if phi is INF:
                    nhi, nhc = INF, False
                elif hi is INF:
                    nhi, nhc = INF, False
                elif hi > phi:
                    nhi, nhc = hi, hc
                elif hi == phi:
                    nhi, nhc = hi, hc or phc
                else:
                    nhi, nhc = phi, phc
                out[-1] = (plo, plc, nhi, nhc)
                continue
        out.append((lo, lc, hi, hc))
    return out


def _contains(comp, v) -> bool:
    """Does component contain the (finite, exact-or-CReal) value v?"""
    lo, lc, hi, hc = comp
    if lo is not INF:
        if rv_is_exact(v) and mpq(v) == lo:
            if not lc:
                return False
        elif not rv_lt(lo, v):
            return False
    if hi is not INF:
        if rv_is_exact(v) and mpq(v) == hi:
            if not hc:
                return False
        elif not rv_lt(v, hi):
            return False
    return True


def covers_closed(items, a, b) -> bool:
    """[a, b] subseteq union(items)?  a <= b finite RealValues."""
    for comp in merge_union(items):
        if _contains(comp, a) and _contains(comp, b):
            return True
    return False


def intersects_closed(item, a, b) -> bool:
    """item intersects the closed interval [a, b] (endpoints RealValue,
    a may be -inf / b may be +inf given as INF)."""
    lo, lc, hi, hc = item
    if not item_nonempty(item):
        return False
    # need some x with  lo <' x <'' hi  and  a <= x <= b
    if hi is not INF and a is not INF:
        if rv_is_exact(a) and mpq(a) == hi:
            if not hc:
                return False
        elif not rv_lt(a, hi):
            return False
    if lo is not INF and b is not INF:
        if rv_is_exact(b) and mpq(b) == lo:
            if not lc:
                return False
        elif not rv_lt(lo, b):
            return False
    return True


def covered_hull(items):
    """(sup of the initial covered segment from 0, inf of the final
    covered segment to 1) for a union of open-in-[0,1] intervals.

    Returns exact rationals (q, r): q = sup{x : [0,x] subset union} or 0,
    r = inf{y : [y,1] subset union} or 1.
    """
    comps = merge_union(items)
    q = mpq(0)
    r = mpq(1)
    for lo, lc, hi, hc in comps:
        if (lo is INF or lo < 0 or (lo == 0 and lc)) and hi is not INF:
            q = max(q, min(hi, mpq(1)))
        if (hi is INF or hi > 1 or (hi == 1 and hc)) and lo is not INF:
            r = min(r, max(lo, mpq(0)))
    return q, r


# ---------------------------------------------------------------------------
# token coders

def interval_token(lo, hi, absorb_lo=False, absorb_hi=False) -> int:
    flags = (1 if absorb_lo else 0) | (2 if absorb_hi else 0)
    return 1 + seq_to_nat([encode_rational(lo), encode_rational(hi), flags])


def decode_interval_token(tok: int):
    """Token -> item over [0,1], or None for padding/junk."""
    if tok == PADDING:
        return None
    seq = nat_to_seq(tok - 1)
    if len(seq) != 3 or seq[2] > 3:
        return None
    lo, hi, flags = decode_rational(seq[0]), decode_rational(seq[1]), seq[2]
    lc = bool(flags & 1)
    hc = bool(flags & 2)
    if lc or lo < 0:
        lo, lc = mpq(0), True
    if hc or hi > 1:
        hi, hc = mpq(1), True
    item = (lo, lc, hi, hc)
    return item if item_nonempty(item) else None


def _endpoint_code(v):
    # v is mpq, or INF meaning the infinite end on that side
    if v is INF:
        return [1, 0]
    return [0, encode_rational(v)]


def real_interval_token(lo, hi) -> int:
    """Open interval over R; lo/hi rationals or INF (for -inf / +inf)."""
    return 1 + seq_to_nat(_endpoint_code(lo) + _endpoint_code(hi))


def decode_real_interval_token(tok: int):
    if tok == PADDING:
        return None
    seq = nat_to_seq(tok - 1)
    if len(seq) != 4 or seq[0] > 1 or seq[2] > 1:
        return None
    lo = INF if seq[0] else decode_rational(seq[1])
    hi = INF if seq[2] else decode_rational(seq[3])
    if lo is not INF and hi is not INF and lo >= hi:
        return None  # empty open interval, e.g. the (inf, inf) convention
    return (lo, False, hi, False)


def open_interval_token(lo, hi) -> int:
    return 1 + seq_to_nat([encode_rational(lo), encode_rational(hi)])


def decode_open_interval_token(tok: int):
    if tok == PADDING:
        return None
    seq = nat_to_seq(tok - 1)
    if len(seq) != 2:
        return None
    lo, hi = decode_rational(seq[0]), decode_rational(seq[1])
    if lo >= hi:
        return None
    return (lo, False, hi, False)


def polygon_token(vertices) -> int:
    flat = []
    for x, y in vertices:
        flat.append(encode_rational(x))
        flat.append(encode_rational(y))
    return seq_to_nat(flat)


def decode_polygon_token(tok: int):
    """Token -> vertex list; raises MalformedPolygon unless the vertices
    are strictly x-increasing spanning [0, 1]."""
    seq = nat_to_seq(tok)
    if len(seq) % 2 or len(seq) < 4:
        raise MalformedPolygon(f"vertex list of length {len(seq)}")
    verts = [(decode_rational(seq[i]), decode_rational(seq[i + 1]))
             for i in range(0, len(seq), 2)]
    xs = [v[0] for v in verts]
    if xs[0] != 0 or xs[-1] != 1 or any(xs[i] >= xs[i + 1] for i in range(len(xs) - 1)):
        raise MalformedPolygon("vertices not strictly x-monotone over [0,1]")
    return verts


def eval_vertices(verts, x) -> mpq:
    x = mpq(x)
    if not (0 <= x <= 1):
        raise ValueError("evaluation point outside [0,1]")
    for i in range(len(verts) - 1):
        (x0, y0), (x1, y1) = verts[i], verts[i + 1]
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise AssertionError("unreachable: vertex span checked at decode")


def eval_polygon(name: Name, x, k: int) -> mpq:
    """Evaluate the k-th listed polygon exactly at rational x.

    By the format invariant the result is within 2^-k of the limit
    function's value at x."""
    return eval_vertices(decode_polygon_token(name[k]), x)


# ---------------------------------------------------------------------------
# format singletons

class _Format:
    rid: str = "?"

    def encode(self, truth, schedule: Schedule) -> Name:
        raise NotImplementedError

    def verify(self, truth, name: Name, k: int, budget: int = VERIFY_BUDGET) -> Verdict:
        raise NotImplementedError

    def describe_token(self, tok: int) -> str:
        return str(tok)

    def __repr__(self):
        return f"<format {self.rid}>"


class DeltaN(_Format):
    """n is named by the constant sequence n, n, n, ..."""
    rid = "delta_n"

    def encode(self, truth, schedule):
        n = int(truth)
        if n < 0:
            raise InvalidTruth("delta_n names naturals only")
        return Name.constant(n, label=f"delta_n:{n}")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        n = int(truth)
        got = name.query(8)
        if any(t != n for t in got):
            return reject(f"expected constant {n}, saw {got}")
        return ACCEPT

    def describe_token(self, tok):
        return str(tok)


def _jitter(schedule, pos, scale):
    if schedule.kind == "eager":
        return mpq(0)
    rng = random.Random(f"jitter:{schedule.seed}:{schedule.kind}:{pos}")
    return scale * mpq(rng.randrange(-3, 4), 4)


class Rho(_Format):
    """Fast Cauchy names: token k is a rational within 2^-k of the point."""
    rid = "rho"

    def encode(self, truth, schedule):
        if not rv_is_exact(truth):
            v = truth

            def f(i):
                return encode_rational(rv_approx(v, i + 1))
            return Name.from_index_fn(f, label="rho")
        x = mpq(truth)

        def f(i):
            return encode_rational(x + _jitter(schedule, i, dyadic(i + 1)))
        return Name.from_index_fn(f, label=f"rho:{x}")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        q = decode_rational(name[k])
        tol = dyadic(k) + dyadic(k)
        lo, hi = rv_enclosure(truth, k + 4)
        if q < lo - tol or q > hi + tol:
            return reject(f"token {k} decodes to {q}, not within 2*2^-{k} of the point")
        return ACCEPT

    def describe_token(self, tok):
        return str(decode_rational(tok))


class RhoLess(_Format):
    """Rational sequences with sup equal to the named real.

    encode emits a monotone (optionally strictly increasing) sequence whose
    rate of approach is schedule-controlled; attained=True additionally
    reaches the value exactly.
    """
    rid = "rho_less"

    def encode(self, truth, schedule, attained=False, strict=False):
        x = mpq(truth)
        g = stair(schedule)
        if strict and attained:
            raise InvalidTruth("a strictly increasing sequence cannot attain its sup")

        def base(j):
            if attained and j >= 3:
                return x
            return x - dyadic(j)

        def f(i):
            q = base(g(i))
            if strict:
                q = q - dyadic(i + g(i) + 1)
            return encode_rational(q)
        return Name.from_index_fn(f, label=f"rho<:{x}")

    def verify(self, truth, name: Name, k, budget=VERIFY_BUDGET):
        best = None
        depth = 8
        while True:
            toks = name.query(min(depth, budget))
            for tok in toks:
                q = decode_rational(tok)
                if not rv_leq(q, truth):
                    return reject(f"lower approximation {q} exceeds the point")
                best = q if best is None else max(best, q)
            if best is not None and rv_leq(truth, best + dyadic(k)):
                return ACCEPT
            if depth >= budget:
                raise NonProductive(
                    f"rho_less name did not reach within 2^-{k} in {budget} tokens")
            depth *= 2

    def describe_token(self, tok):
        return str(decode_rational(tok))


class RhoGreater(_Format):
    rid = "rho_greater"

    def encode(self, truth, schedule, attained=False, strict=False):
        x = mpq(truth)
        g = stair(schedule)

        def base(j):
            if attained and j >= 3:
                return x
            return x + dyadic(j)

        def f(i):
            q = base(g(i))
            if strict:
                q = q + dyadic(i + g(i) + 1)
            return encode_rational(q)
        return Name.from_index_fn(f, label=f"rho>:{x}")

    def verify(self, truth, name: Name, k, budget=VERIFY_BUDGET):
        best = None
        depth = 8
        while True:
            toks = name.query(min(depth, budget))
            for tok in toks:
                q = decode_rational(tok)
                if not rv_leq(truth, q):
                    return reject(f"upper approximation {q} undercuts the point")
                best = q if best is None else min(best, q)
            if best is not None and rv_leq(best - dyadic(k), truth):
                return ACCEPT
            if depth >= budget:
                raise NonProductive(
                    f"rho_greater name did not reach within 2^-{k} in {budget} tokens")
            depth *= 2

    def describe_token(self, tok):
        return str(decode_rational(tok))


class RhoGreaterExt(_Format):
    """rho_greater over Q u {+inf}; token 0-tagged values, the constant
    infinity sequence is the only name of +inf."""
    rid = "rho_greater_ext"

    @staticmethod
    def token_of(v):
        return 1 if v is INF else 2 + encode_rational(v)

    @staticmethod
    def value_of(tok):
        if tok == 1:
            return INF
        if tok >= 2:
            return decode_rational(tok - 2)
        return None  # padding has no reading here

    def encode(self, truth, schedule, strict=False):
        if truth is INF:
            return Name.constant(1, label="rho>ext:inf")
        x = mpq(truth)
        g = stair(schedule)

        def f(i):
            q = x + dyadic(g(i)) + (dyadic(i + g(i) + 1) if strict else 0)
            return self.token_of(q)
        return Name.from_index_fn(f, label=f"rho>ext:{x}")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        if truth is INF:
            if any(t != 1 for t in name.query(8)):
                return reject("not the constant-infinity name")
            return ACCEPT
        best = None
        depth = 8
        while True:
            toks = name.query(min(depth, budget))
            for tok in toks:
                v = self.value_of(tok)
                if v is None:
                    return reject("unreadable extended-rational token")
                if v is INF:
                    continue
                if not rv_leq(truth, v):
                    return reject(f"upper approximation {v} undercuts the point")
                best = v if best is None else min(best, v)
            if best is not None and rv_leq(best - dyadic(k), truth):
                return ACCEPT
            if depth >= budget:
                raise NonProductive("rho_greater_ext name stalled")
            depth *= 2

    def describe_token(self, tok):
        v = self.value_of(tok)
        return "inf" if v is INF else str(v)


class PsiMinusN(_Format):
    """Negative information on A subseteq N: the tokens enumerate N\\A
    shifted by one; 0 is padding."""
    rid = "psi_minus_n"

    def encode(self, truth, schedule):
        # truth: ("cofinite", frozenset excluded) or ("finite", frozenset members)
        kind, s = truth
        g = stair(schedule)
        rng = random.Random(f"psi:{schedule.seed}")
        if kind == "cofinite":
            base = sorted(s)
            if schedule.kind == "shuffle":
                rng.shuffle(base)

            def item(j):
                return base[j] + 1 if j < len(base) else PADDING
        elif kind == "finite":
            if not s:
                raise InvalidTruth("finite member set must be non-empty")
            members = frozenset(s)

            def nonmember(j):
                # j-th natural outside the member set
                n, seen = 0, 0
                while True:
                    if n not in members:
                        if seen == j:
                            return n
                        seen += 1
                    n += 1

            def item(j):
                return nonmember(j) + 1
        else:
            raise InvalidTruth(f"unknown subset description {kind}")

        return Name.from_index_fn(lambda i: item(g(i)), label=f"psi-:{kind}")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        kind, s = truth
        def in_a(n):
            return (n not in s) if kind == "cofinite" else (n in s)
        needed = ({n for n in s if n < max(k, 8)} if kind == "cofinite"
                  else {n for n in range(max(k, 8)) if n not in s})
        seen = set()
        depth = 8
        while True:
            for tok in name.query(min(depth, budget)):
                if tok == PADDING:
                    continue
                n = tok - 1
                if in_a(n):
                    return reject(f"name excludes {n}, which belongs to the set")
                seen.add(n)
            if needed <= seen:
                return ACCEPT
            if depth >= budget:
                raise NonProductive(f"complement elements {needed - seen} never enumerated")
            depth *= 2

    def describe_token(self, tok):
        return "pad" if tok == PADDING else f"excl {tok - 1}"


def _fmt_item(item):
    if item is None:
        return "pad"
    lo, lc, hi, hc = item
    l = "-inf" if lo is INF else str(lo)
    h = "+inf" if hi is INF else str(hi)
    return f"{'[' if lc else '('}{l},{h}{']' if hc else ')'}"


class PsiMinusUnit(_Format):
    """Closed A subseteq [0,1] by an enumeration of rational open-in-[0,1]
    intervals whose union is [0,1]\\A (endpoint absorption via flags)."""
    rid = "psi_minus_unit"

    def encode(self, truth, schedule):
        # truth: tuple of (a, b) closed rational intervals, sorted, disjoint
        comps = [(mpq(a), mpq(b)) for a, b in truth]
        if not comps:
            raise InvalidTruth("closed set must be non-empty")
        for (a, b) in comps:
            if not (0 <= a <= b and b <= 1):
                raise InvalidTruth(f"component [{a},{b}] outside [0,1]")
        gaps = []
        prev = None
        for (a, b) in comps:
            if prev is None:
                if a > 0:
                    gaps.append(("left", mpq(0), a))
            else:
                gaps.append(("mid", prev, a))
            prev = b
        if prev < 1:
            gaps.append(("right", prev, mpq(1)))

        g = stair(schedule)
        growing = schedule.kind == "shuffle"

        def item(j):
            if not gaps:
                return PADDING
            gap = gaps[j % len(gaps)]
            stage = j // len(gaps)
            kind, lo, hi = gap
            shrink = dyadic(stage + 2) * (hi - lo) if growing else mpq(0)
            if kind == "left":
                return interval_token(mpq(0), hi - shrink, absorb_lo=True) \
                    if hi - shrink > 0 else PADDING
            if kind == "right":
                return interval_token(lo + shrink, mpq(1), absorb_hi=True) \
                    if lo + shrink < 1 else PADDING
            l2, h2 = lo + shrink / 2, hi - shrink / 2
            return interval_token(l2, h2) if l2 < h2 else PADDING

        return Name.from_index_fn(lambda i: item(g(i)), label="psi-unit")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        comps = list(truth)
        tol = dyadic(k)
        items = []
        depth = 8
        while True:
            items = [decode_interval_token(t) for t in name.query(min(depth, budget))]
            items = [it for it in items if it is not None]
            for it in items:
                for (a, b) in comps:
                    if intersects_closed(it, a, b):
                        return reject(f"listed interval {_fmt_item(it)} meets the set")
            if self._covered(items, comps, tol):
                return ACCEPT
            if depth >= budget:
                raise NonProductive("complement not exhausted within budget")
            depth *= 2

    @staticmethod
    def _covered(items, comps, tol):
        # every gap of the truth set must be covered up to tol margins
        lows = [a for a, _ in comps]
        highs = [b for _, b in comps]
        checks = []
        first_a, last_b = lows[0], highs[-1]
        checks.append((mpq(0), first_a, "left"))
        for i in range(len(comps) - 1):
            checks.append((highs[i], lows[i + 1], "mid"))
        checks.append((last_b, mpq(1), "right"))
        for lo, hi, kind in checks:
            lo_m = lo if kind == "left" else _shift_up(lo, tol)
            hi_m = hi if kind == "right" else _shift_down(hi, tol)
            if not _gap_covered(items, lo_m, hi_m):
                return False
        return True

    def describe_token(self, tok):
        return _fmt_item(decode_interval_token(tok))


def _shift_up(v, tol):
    if rv_is_exact(v):
        return mpq(v) + tol
    lo, hi = rv_enclosure(v, 40)
    return hi + tol


def _shift_down(v, tol):
    if rv_is_exact(v):
        return mpq(v) - tol
    lo, hi = rv_enclosure(v, 40)
    return lo - tol


def _gap_covered(items, lo, hi):
    if lo > hi:
        return True
    return covers_closed(items, lo, hi)


class PsiMinusReal(_Format):
    """Closed non-empty A subseteq R by enumeration of open rational
    intervals (endpoints possibly infinite) exhausting the complement."""
    rid = "psi_minus_real"

    # truth: tuple of components (lo, hi) with lo=INF meaning -inf,
    # hi=INF meaning +inf; sorted; finite values mpq.

    def encode(self, truth, schedule):
        comps = list(truth)
        if not comps:
            raise InvalidTruth("closed set must be non-empty")
        gaps = []
        prev = None
        for lo, hi in comps:
            if prev is None:
                if lo is not INF:
                    gaps.append((INF, lo))
            else:
                gaps.append((prev, lo))
            prev = hi
        if prev is not INF:
            gaps.append((prev, INF))
        g = stair(schedule)
        growing = schedule.kind == "shuffle"

        def item(j):
            if not gaps:
                return PADDING
            lo, hi = gaps[j % len(gaps)]
            stage = j // len(gaps)
            if growing and lo is not INF and hi is not INF:
                shrink = dyadic(stage + 2) * (hi - lo)
                l2, h2 = lo + shrink / 2, hi - shrink / 2
                return real_interval_token(l2, h2) if l2 < h2 else PADDING
            return real_interval_token(lo, hi)

        return Name.from_index_fn(lambda i: item(g(i)), label="psi-real")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        comps = list(truth)
        tol = dyadic(k)
        depth = 8
        while True:
            items = [decode_real_interval_token(t) for t in name.query(min(depth, budget))]
            items = [it for it in items if it is not None]
            for it in items:
                for lo, hi in comps:
                    a = lo if lo is not INF else INF
                    b = hi if hi is not INF else INF
                    if intersects_closed(it, a, b):
                        return reject(f"listed interval {_fmt_item(it)} meets the set")
            if self._covered(items, comps, tol):
                return ACCEPT
            if depth >= budget:
                raise NonProductive("complement not exhausted within budget")
            depth *= 2

    @staticmethod
    def _covered(items, comps, tol):
        window = mpq(4)
        checks = []
        first_lo = comps[0][0]
        last_hi = comps[-1][1]
        if first_lo is not INF:
            checks.append((_shift_down(first_lo, window), _shift_down(first_lo, tol)))
        for i in range(len(comps) - 1):
            hi_i = comps[i][1]
            lo_n = comps[i + 1][0]
            checks.append((_shift_up(hi_i, tol), _shift_down(lo_n, tol)))
        if last_hi is not INF:
            checks.append((_shift_up(last_hi, tol), _shift_up(last_hi, window)))
        return all(_gap_covered(items, lo, hi) for lo, hi in checks)

    def describe_token(self, tok):
        return _fmt_item(decode_real_interval_token(tok))


class ThetaOpen(_Format):
    """Positive information: enumeration of rational open intervals whose
    union is the open set; padding allowed."""
    rid = "theta_open"

    def encode(self, truth, schedule):
        comps = [(mpq(a), mpq(b)) for a, b in truth]
        for a, b in comps:
            if not (0 <= a < b <= 1):
                raise InvalidTruth(f"({a},{b}) is not a rational open interval in [0,1]")
        if not comps:
            raise InvalidTruth("open choice needs a non-empty open set")
        g = stair(schedule)
        growing = schedule.kind != "eager"

        def item(j):
            lo, hi = comps[j % len(comps)]
            stage = j // len(comps)
            if growing:
                shrink = dyadic(stage + 3) * (hi - lo)
                lo, hi = lo + shrink, hi - shrink
            return open_interval_token(lo, hi) if lo < hi else PADDING

        # lead with schedule-dependent padding so "first non-empty listed
        # interval" genuinely depends on the schedule
        lead = 0 if schedule.kind == "eager" else (schedule.delay if schedule.kind == "delay"
                                                   else random.Random(f"lead:{schedule.seed}").randrange(0, 12))

        def f(i):
            return PADDING if i < lead else item(g(i - lead))
        return Name.from_index_fn(f, label="theta")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        comps = list(truth)
        tol = dyadic(k)
        depth = 8
        while True:
            items = [decode_open_interval_token(t) for t in name.query(min(depth, budget))]
            items = [it for it in items if it is not None]
            for it in items:
                lo, lc, hi, hc = it
                inside = any(a <= lo and hi <= b for a, b in comps)
                if not inside:
                    return reject(f"listed interval {_fmt_item(it)} not inside the open set")
            ok = all(_gap_covered(items, mpq(a) + tol, mpq(b) - tol) for a, b in comps)
            if ok:
                return ACCEPT
            if depth >= budget:
                raise NonProductive("open set not exhausted within budget")
            depth *= 2

    def describe_token(self, tok):
        return _fmt_item(decode_open_interval_token(tok))


# ---------------------------------------------------------------------------
# polygon names

def plateau_polygon_stages(a, b, flip=False):
    """Paper-style approximants to a function vanishing exactly on [a,b]:
    stage n interpolates cut points approaching a from below and b from
    above with heights -2^-(j+1) / 2^-(j+1)."""
    a, b = mpq(a), mpq(b)

    def stage(n, qs, rs):
        sgn = -1 if flip else 1
        left = [(mpq(0), mpq(-sgn))]
        left += [(q, sgn * -dyadic(j + 1)) for j, q in enumerate(qs[: n + 1])]
        right = [(r, sgn * dyadic(j + 1)) for j, r in enumerate(rs[: n + 1])]
        right.reverse()
        right += [(mpq(1), mpq(sgn))]
        return left + right
    return stage


class PolygonFn(_Format):
    """Continuous functions on [0,1] by fast-converging rational polygons.

    Ground truth carries the zero set and orientation, not the full graph:
    truth = (a, b, flip) meaning f vanishes exactly on [a,b], with
    f(0) < 0 < f(1) (flip=False) or f(0) > 0 > f(1) (flip=True).
    """
    rid = "polygon_fn"

    def encode(self, truth, schedule):
        a, b, flip = mpq(truth[0]), mpq(truth[1]), bool(truth[2])
        if not (0 < a <= b < 1):
            raise InvalidTruth("zero set must sit strictly inside (0,1)")
        if schedule.kind == "eager":
            sgn = -1 if flip else 1
            verts = [(mpq(0), mpq(-sgn)), (a, mpq(0))]
            if b > a:
                verts.append((b, mpq(0)))
            verts.append((mpq(1), mpq(sgn)))
            tok = polygon_token(verts)
            return Name.constant(tok, label="polygon:exact")
        # position i must carry a polygon within 2^-i of the limit, so the
        # schedule may only run AHEAD of the required stage, never behind
        stage = plateau_polygon_stages(a, b, flip)
        rng = random.Random(f"polyjit:{schedule.seed}")

        def stage_of(i):
            if schedule.kind == "delay":
                return i
            while len(rng_cache) <= i:
                rng_cache.append(rng.randrange(0, 3))
            return i + rng_cache[i]
        rng_cache: list[int] = []

        def cuts(n):
            qs = [a - a * dyadic(j + 1) for j in range(n + 1)]
            rs = [b + (1 - b) * dyadic(j + 1) for j in range(n + 1)]
            return qs, rs

        def f(i):
            j = stage_of(i)
            qs, rs = cuts(j)
            return polygon_token(stage(j, qs, rs))
        return Name.from_index_fn(f, label="polygon:staged")

    def verify(self, truth, name, k, budget=VERIFY_BUDGET):
        a, b, flip = truth
        sgn = -1 if flip else 1
        tol = dyadic(k)
        kk = max(k, 4)
        try:
            verts_prev = None
            for n in range(kk + 1):
                verts = decode_polygon_token(name[n])
                # small on the zero set
                for t in (mpq(a), mpq(b), (mpq(a) + mpq(b)) / 2):
                    if abs(eval_vertices(verts, t)) > dyadic(n):
                        return reject(f"stage {n} is not within 2^-{n} of 0 on the zero set")
                if verts_prev is not None:
                    d = _sup_distance(verts_prev, verts)
                    if d > dyadic(n - 1) + dyadic(n):
                        return reject(f"stages {n-1},{n} are {d} apart in sup norm")
                verts_prev = verts
        except MalformedPolygon as exc:
            return reject(f"malformed polygon: {exc}")
        # orientation at the endpoints
        v = decode_polygon_token(name[kk])
        if not (sgn * eval_vertices(v, mpq(0)) < 0 < sgn * eval_vertices(v, mpq(1))):
            return reject("endpoint signs do not match the orientation")
        # the zero set must not extend beyond [a,b] by more than tol:
        # witness a certified nonzero value just outside
        for point in (mpq(a) - tol, mpq(b) + tol):
            if not (0 <= point <= 1):
                continue
            certified = False
            # slow schedules push the certifying stage well past k
            for n in range(1, max(6 * kk, 48)):
                val = eval_vertices(decode_polygon_token(name[n]), point)
                if abs(val) > dyadic(n):
                    certified = True
                    break
            if not certified:
                return reject(f"no certified sign at {point}, zero set may overshoot")
        return ACCEPT

    def describe_token(self, tok):
        try:
            return f"polygon<{len(decode_polygon_token(tok))} vertices>"
        except MalformedPolygon:
            return "polygon<malformed>"


def _sup_distance(v1, v2):
    xs = sorted({x for x, _ in v1} | {x for x, _ in v2})
    return max(abs(eval_vertices(v1, x) - eval_vertices(v2, x)) for x in xs)


delta_n = DeltaN()
rho = Rho()
rho_less = RhoLess()
rho_greater = RhoGreater()
rho_greater_ext = RhoGreaterExt()
psi_minus_n = PsiMinusN()
psi_minus_unit = PsiMinusUnit()
psi_minus_real = PsiMinusReal()
theta_open = ThetaOpen()
polygon_fn = PolygonFn()

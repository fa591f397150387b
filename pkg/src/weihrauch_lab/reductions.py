"""The reduction witness library.

A ReductionWitness packages a reducibility claim `source <= target` as two
runnable prefix transformers: K adapts an input name of the source problem
into an input name of the target, and H adapts an answer back.  A *strong*
witness assembles as H(G(K(p))); a *weak* witness as H(pair(p, G(K(p)))),
giving H direct access to the original input.  Strongness is enforced by
construction: the assembled pipeline of a strong witness simply has no
channel carrying p into H.

Because the target problems have no computable realizers, the harness
stands in an oracle realizer for G.  The oracle answers from the ground
truth of the *target-side* instance, which each witness must therefore
exhibit: `transport` maps the source instance (symbolic truth plus its
concrete name) to the exact symbolic truth denoted by K's output.  A wrong
transport is a harness bug, so the checker independently verifies K's
output against the transported truth in every trial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from gmpy2 import mpq

from .baire import (
    Name,
    PADDING,
    PrefixTransformer,
    compose_transformers,
    decode_rational,
    encode_rational,
    nat_pair,
    nat_unpair,
    pair,
    run,
)
from .exactreal import (
    atan_shift,
    atan_shift_interval,
    ceil_q,
    dyadic,
    floor_q,
    tan_shift,
    tan_shift_interval,
)
from .principles import (
    Instance,
    PRINCIPLES,
    ball_index,
    principle,
    product_problem,
    parallel_problem,
)
from .spaces import (
    INF,
    covered_hull,
    decode_interval_token,
    decode_polygon_token,
    eval_vertices,
    interval_token,
    item_nonempty,
    plateau_polygon_stages,
    polygon_token,
    real_interval_token,
)

__all__ = [
    "DomainViolation", "ReductionWitness", "assemble",
    "WITNESSES", "SABOTAGED", "witness", "compose", "parallelize",
]


class DomainViolation(Exception):
    """The scanned input provably violates the source problem's domain."""


@dataclass(frozen=True)
class ReductionWitness:
    wid: str
    source: object
    target: object
    K: PrefixTransformer
    H: PrefixTransformer
    strength: str  # "strong" | "weak"
    anchor: str
    transport: object  # Instance -> target truth
    note: str = ""

    def __repr__(self):
        return f"<{self.wid} ({self.strength})>"


def assemble(w: ReductionWitness, instance: Instance, policy: str, rng=None,
             budget=None):
    """Run one reduction trial pipeline, returning (output name,
    target-side instance, oracle answer name)."""
    from .baire import DEFAULT_BUDGET
    budget = budget or DEFAULT_BUDGET
    rng = rng or random.Random(0)
    k_name = run(w.K, instance.name, budget)
    t_truth = w.transport(instance)
    t_inst = Instance(w.target, t_truth, k_name, instance.schedule,
                      w.target.describe(t_truth))
    g_value = w.target.oracle_value(t_truth, policy, rng)
    g_name = w.target.encode_output(g_value)
    h_in = g_name if w.strength == "strong" else pair(instance.name, g_name)
    out = run(w.H, h_in, budget)
    return out, t_inst, g_name


# ---------------------------------------------------------------------------
# prefix plumbing

def split_pair(prefix):
    return prefix[0::2], prefix[1::2]


def interleave(u, v):
    """Largest pair-prefix determined by component prefixes u, v."""
    out = []
    for i in range(max(len(u), len(v))):
        if i < len(u):
            out.append(u[i])
        else:
            break
        if i < len(v):
            out.append(v[i])
        else:
            break
    return tuple(out)


def coord_prefix(prefix, i):
    out = []
    j = 0
    while True:
        m = nat_pair(i, j)
        if m >= len(prefix):
            return tuple(out)
        out.append(prefix[m])
        j += 1


def tuple_prefix(coord_out):
    """Largest tuple-prefix determined by per-coordinate output prefixes.
    coord_out(i) -> tuple; must be defined for every i."""
    out = []
    m = 0
    while True:
        i, j = nat_unpair(m)
        c = coord_out(i)
        if j >= len(c):
            return tuple(out)
        out.append(c[j])
        m += 1


def _rationals(prefix):
    return [decode_rational(t) for t in prefix]


def _const_out(token, length):
    return (token,) * length


# ---------------------------------------------------------------------------
# B_F <=sW C_F  (enumerate everything below some q_i out of the set)

def _k_bf_to_cf(prefix):
    out = []
    hi = -1  # largest natural excluded so far
    for tok in prefix:
        q = decode_rational(tok)
        m = floor_q(q)
        if m > hi:
            out.extend(n + 1 for n in range(hi + 1, m + 1))
            hi = m
        else:
            out.append(PADDING)
    return out


def _h_nat_to_rho(prefix):
    if not prefix:
        return ()
    return _const_out(encode_rational(mpq(prefix[0])), len(prefix))


def _t_bf_to_cf(inst):
    sup, attained = inst.truth
    top = floor_q(sup) if attained else ceil_q(sup) - 1
    return ("cofinite", frozenset(range(0, top + 1)))


def w_bf_to_cf():
    return ReductionWitness(
        "bf<=cf", principle("bf"), principle("cf"),
        PrefixTransformer("K:bf<=cf", _k_bf_to_cf),
        PrefixTransformer("H:bf<=cf", _h_nat_to_rho),
        "strong", "Prop 3.3", _t_bf_to_cf,
        note="any member of the co-finite set is an upper bound")


# ---------------------------------------------------------------------------
# C_F <=sW B_F  (read the enumeration as a rational sequence)

def _k_cf_to_bf(prefix):
    return [encode_rational(mpq(tok)) for tok in prefix]


def _h_round_up_to_nat(prefix):
    # read the rho answer at index 2, round up; the bound stays valid
    if len(prefix) < 3:
        return ()
    q = decode_rational(prefix[2])
    n = max(0, ceil_q(q + dyadic(2)))
    return _const_out(n, len(prefix))


def _t_cf_to_bf(inst):
    _, s = inst.truth
    return (mpq(max(s) + 1 if s else 0), True)


def w_cf_to_bf():
    return ReductionWitness(
        "cf<=bf", principle("cf"), principle("bf"),
        PrefixTransformer("K:cf<=bf", _k_cf_to_bf),
        PrefixTransformer("H:cf<=bf", _h_round_up_to_nat),
        "strong", "Prop 3.3", _t_cf_to_bf,
        note="a bound on the enumerated tokens clears every excluded number")


# ---------------------------------------------------------------------------
# C_N <=W B_F  (record candidate-dismissal stages; weak: replay needs p)

class _CandidateScan:
    """The candidate algorithm: dismiss the current candidate whenever its
    code is enumerated, recording dismissal stages."""

    def __init__(self):
        self.seen = set()
        self.candidate = 0
        self.last = 0
        self.stage = 0

    def feed(self, tok):
        if tok != PADDING:
            self.seen.add(tok - 1)
            if tok - 1 == self.candidate:
                c = 0
                while c in self.seen:
                    c += 1
                self.candidate = c
                self.last = self.stage
        self.stage += 1


def _k_cn_to_bf(prefix):
    scan = _CandidateScan()
    out = []
    for tok in prefix:
        scan.feed(tok)
        out.append(encode_rational(mpq(scan.last)))
    return out


def _least_missing(tokens):
    seen = {t - 1 for t in tokens if t != PADDING}
    k = 0
    while k in seen:
        k += 1
    return k


def _h_cn_to_bf(prefix):
    p_toks, g_toks = split_pair(prefix)
    if len(g_toks) < 3:
        return ()
    m = max(0, ceil_q(decode_rational(g_toks[2]) + dyadic(2)))
    if len(p_toks) < m + 1:
        return ()
    return _const_out(_least_missing(p_toks[: m + 1]), len(prefix))


def _simulate_scan(name, contains, cap=4096):
    scan = _CandidateScan()
    depth = 8
    while True:
        toks = name.query(min(depth, cap))
        scan = _CandidateScan()
        for tok in toks:
            scan.feed(tok)
            if contains(scan.candidate):
                # the candidate is never enumerated again: no more dismissals
                return scan.last
        if depth >= cap:
            raise DomainViolation("candidate scan found no member within the cap")
        depth *= 2


def _t_cn_to_bf(inst):
    prob = inst.problem
    last = _simulate_scan(inst.name, lambda n: prob.contains(inst.truth, n))
    return (mpq(last), True)


def w_cn_to_bf():
    return ReductionWitness(
        "cn<=bf", principle("cn"), principle("bf"),
        PrefixTransformer("K:cn<=bf", _k_cn_to_bf),
        PrefixTransformer("H:cn<=bf", _h_cn_to_bf),
        "weak", "Prop 3.3", _t_cn_to_bf,
        note="the answer is replayed from the original input up to the bound")


# ---------------------------------------------------------------------------
# C_N x C_N <=W C_N  (one discrete-choice query answers both coordinates)

def _k_cn_pair(prefix):
    p1, p2 = split_pair(prefix)
    s1, s2 = _CandidateScan(), _CandidateScan()
    out = []
    hi = -1
    for t1, t2 in zip(p1, p2):
        s1.feed(t1)
        s2.feed(t2)
        m = max(s1.last, s2.last)
        if m > hi:
            out.extend(n + 1 for n in range(hi + 1, m + 1))
            hi = m
        else:
            out.append(PADDING)
    return out


def _h_cn_pair(prefix):
    orig, g_toks = split_pair(prefix)
    if not g_toks:
        return ()
    k = g_toks[0]  # delta_n token: a member of {n : n > both stage sups}
    p1, p2 = split_pair(orig)
    if len(p1) < k + 1 or len(p2) < k + 1:
        return ()
    a1 = _least_missing(p1[: k + 1])
    a2 = _least_missing(p2[: k + 1])
    return interleave(_const_out(a1, len(prefix)), _const_out(a2, len(prefix)))


def _t_cn_pair(inst):
    prob = inst.problem
    from .baire import unpair
    n1, n2 = unpair(inst.name)
    l1 = _simulate_scan(n1, lambda n: prob.left.contains(inst.truth[0], n))
    l2 = _simulate_scan(n2, lambda n: prob.right.contains(inst.truth[1], n))
    return ("upper", max(l1, l2) + 1)


def w_cn_idempotent():
    cn = principle("cn")
    return ReductionWitness(
        "cnxcn<=cn", product_problem(cn, cn), cn,
        PrefixTransformer("K:cnxcn<=cn", _k_cn_pair),
        PrefixTransformer("H:cnxcn<=cn", _h_cn_pair),
        "weak", "Prop 3.4", _t_cn_pair,
        note="coordinatewise max of the stage records feeds one query")


# ---------------------------------------------------------------------------
# B_I <=sW B_I' and back: transport through tan(pi x - pi/2)

def _monotone_image_k(enclose, guard):
    """K for cut transport: running extremum of the cuts, imaged through a
    strictly increasing map with outward rounding at depth-driven precision.

    enclose(lo, hi, prec) -> rational (lo, hi) enclosure or None;
    guard(q) -> True when the map is defined at q."""

    def fn(prefix):
        lows, highs = split_pair(prefix)
        lo_out, hi_out = [], []
        m = None
        for i, q in enumerate(_rationals(lows)):
            m = q if m is None else max(m, q)
            if guard(m):
                iv = enclose(m, m, 4 * (i + 8))
                if iv is not None:
                    lo_out.append(encode_rational(iv[0]))
                    continue
            if lo_out:
                lo_out.append(lo_out[-1])
        m = None
        for i, r in enumerate(_rationals(highs)):
            m = r if m is None else min(m, r)
            if guard(m):
                iv = enclose(m, m, 4 * (i + 8))
                if iv is not None:
                    hi_out.append(encode_rational(iv[1]))
                    continue
            if hi_out:
                hi_out.append(hi_out[-1])
        return interleave(tuple(lo_out), tuple(hi_out))
    return fn


def _monotone_image_h(enclose):
    """H for answer transport: refine the incoming fast-Cauchy name until
    the image enclosure is tight enough for each output position."""

    def fn(prefix):
        out = []
        j = 0
        while True:
            tok = None
            for m in range(min(j + 2, len(prefix)), len(prefix)):
                t = decode_rational(prefix[m])
                iv = enclose(t - dyadic(m), t + dyadic(m), 4 * (j + 16))
                if iv is not None and iv[1] - iv[0] <= dyadic(j):
                    tok = encode_rational((iv[0] + iv[1]) / 2)
                    break
            if tok is None:
                return tuple(out)
            out.append(tok)
            j += 1
    return fn


def w_bi_transport():
    """Both directions of the [0,1] <-> R transport of interval bounds."""
    bi, bi01 = principle("bi"), principle("bi01")

    def t_to_unit(inst):
        a, b = inst.truth
        fa = atan_shift(a)
        return (fa, fa if b == a else atan_shift(b))

    def t_from_unit(inst):
        a, b = inst.truth
        fa = tan_shift(a)
        return (fa, fa if b == a else tan_shift(b))

    to_unit = ReductionWitness(
        "bi<=bi'", bi, bi01,
        PrefixTransformer("K:bi<=bi'",
                          _monotone_image_k(atan_shift_interval, lambda q: True)),
        PrefixTransformer("H:bi<=bi'", _monotone_image_h(tan_shift_interval)),
        "strong", "Lemma 3.5", t_to_unit,
        note="bounds travel through the inverse homeomorphism, answers back")
    from_unit = ReductionWitness(
        "bi'<=bi", bi01, bi,
        PrefixTransformer("K:bi'<=bi",
                          _monotone_image_k(tan_shift_interval,
                                            lambda q: 0 < q < 1)),
        PrefixTransformer("H:bi'<=bi", _monotone_image_h(atan_shift_interval)),
        "strong", "Lemma 3.5", t_from_unit)
    return to_unit, from_unit


# ---------------------------------------------------------------------------
# C_I <=sW B_I  (covered-hull cuts from the complement listing)

def _k_ci_to_bi(prefix):
    items = []
    lo_out, hi_out = [], []
    for tok in prefix:
        item = decode_interval_token(tok)
        if item is not None:
            items.append(item)
        q, r = covered_hull(items)
        lo_out.append(encode_rational(q))
        hi_out.append(encode_rational(r))
    return interleave(tuple(lo_out), tuple(hi_out))


def _h_identity(prefix):
    return prefix


def w_ci_to_bi():
    return ReductionWitness(
        "ci<=bi", principle("ci"), principle("bi01"),
        PrefixTransformer("K:ci<=bi", _k_ci_to_bi),
        PrefixTransformer("H:ci<=bi", _h_identity),
        "strong", "Prop 3.6", lambda inst: inst.truth,
        note="sup of the covered initial segment / inf of the covered final one")


# ---------------------------------------------------------------------------
# B_I' <=sW C_I  (and the proper variant): cuts become interval complements

def _k_bi_to_ci(prefix):
    lows, highs = split_pair(prefix)
    out = []
    for i in range(len(lows)):
        q = decode_rational(lows[i])
        out.append(interval_token(mpq(0), min(q, mpq(1)), absorb_lo=True)
                   if q > 0 else PADDING)
        if i < len(highs):
            r = decode_rational(highs[i])
            out.append(interval_token(max(r, mpq(0)), mpq(1), absorb_hi=True)
                       if r < 1 else PADDING)
    return out


def w_bi_to_ci():
    return ReductionWitness(
        "bi'<=ci", principle("bi01"), principle("ci"),
        PrefixTransformer("K:bi'<=ci", _k_bi_to_ci),
        PrefixTransformer("H:bi'<=ci", _h_identity),
        "strong", "Prop 3.6", lambda inst: inst.truth,
        note="[0,q_i) and (r_i,1] exhaust the complement of [a,b]")


def w_biminus_to_ciminus():
    return ReductionWitness(
        "bi-'<=ci-", principle("bi01-"), principle("ci-"),
        PrefixTransformer("K:bi-'<=ci-", _k_bi_to_ci),
        PrefixTransformer("H:bi-'<=ci-", _h_identity),
        "strong", "Prop 3.6", lambda inst: inst.truth)


# ---------------------------------------------------------------------------
# B_I+ <=sW C_A  ((-inf,q_i) and (r_i,inf); empty upper interval at r=inf)

def _k_biplus_to_ca(prefix):
    from .spaces import rho_greater_ext
    lows, highs = split_pair(prefix)
    out = []
    for i in range(len(lows)):
        q = decode_rational(lows[i])
        out.append(real_interval_token(INF, q))
        if i < len(highs):
            r = rho_greater_ext.value_of(highs[i])
            out.append(PADDING if r is None or r is INF else real_interval_token(r, INF))
    return out


def _t_biplus_to_ca(inst):
    a, b = inst.truth
    return ((a, INF if b is INF else b),)


def w_biplus_to_ca():
    return ReductionWitness(
        "bi+<=ca", principle("bi+"), principle("ca"),
        PrefixTransformer("K:bi+<=ca", _k_biplus_to_ca),
        PrefixTransformer("H:bi+<=ca", _h_identity),
        "strong", "Prop 3.6", _t_biplus_to_ca,
        note="the infinite upper bound contributes empty intervals only")


# ---------------------------------------------------------------------------
# proper interval choice <=W discrete choice, via the center-guessing scan

class _CenterScan:
    """Guess the center of the current bounds; dismiss the guess when a new
    bound expels it, recording dismissal stages."""

    def __init__(self):
        self.guess = None
        self.last = 0
        self.stage = 0

    def feed(self, q, r):
        if q > r:
            raise DomainViolation(f"lower bound {q} exceeds upper bound {r}")
        if self.guess is None:
            self.guess = q + (r - q) / 2  # stage 0: last stays 0
        elif q > self.guess or r < self.guess:
            self.guess = q + (r - q) / 2
            self.last = self.stage
        self.stage += 1


def _stage_tokens_to_psi(stages):
    """Turn a nondecreasing stage sequence into a co-finite enumeration of
    {n : n <= sup stages} (the shape C_N consumes)."""
    out = []
    hi = -1
    for m in stages:
        if m > hi:
            out.extend(n + 1 for n in range(hi + 1, m + 1))
            hi = m
        else:
            out.append(PADDING)
    return out


def _k_bicuts_to_cn(prefix):
    lows, highs = split_pair(prefix)
    scan = _CenterScan()
    stages = []
    for q, r in zip(_rationals(lows), _rationals(highs)):
        scan.feed(q, r)
        stages.append(scan.last)
    return _stage_tokens_to_psi(stages)


def _h_bicuts_to_cn(prefix):
    orig, g_toks = split_pair(prefix)
    if not g_toks:
        return ()
    k = g_toks[0]
    lows, highs = split_pair(orig)
    if min(len(lows), len(highs)) < k + 1:
        return ()
    scan = _CenterScan()
    for q, r in list(zip(_rationals(lows), _rationals(highs)))[: k + 1]:
        scan.feed(q, r)
    return _const_out(encode_rational(scan.guess), len(prefix))


def _simulate_center_scan(cut_pairs_iter, lo, hi, cap=4096):
    scan = _CenterScan()
    for n, (q, r) in enumerate(cut_pairs_iter):
        scan.feed(q, r)
        if mpq(lo) <= scan.guess <= mpq(hi):
            return scan.last
        if n >= cap:
            break
    raise DomainViolation("center scan did not stabilize within the cap")


def _t_bicuts_to_cn(inst):
    from .baire import unpair
    a, b = inst.truth
    lo_name, hi_name = unpair(inst.name)

    def pairs():
        i = 0
        while True:
            yield decode_rational(lo_name[i]), decode_rational(hi_name[i])
            i += 1
    return ("upper", _simulate_center_scan(pairs(), a, b) + 1)


def w_bicuts_to_cn():
    """B_I^- (as cuts) <=W C_N: the inner step of Prop 3.7."""
    return ReductionWitness(
        "bi-<=cn", principle("bi-"), principle("cn"),
        PrefixTransformer("K:bi-<=cn", _k_bicuts_to_cn),
        PrefixTransformer("H:bi-<=cn", _h_bicuts_to_cn),
        "weak", "Prop 3.7", _t_bicuts_to_cn,
        note="replays the whole guessing run; the stage-m center may be stale")


def _ci_items_to_cuts(tokens):
    items = []
    for tok in tokens:
        item = decode_interval_token(tok)
        if item is not None:
            items.append(item)
        yield covered_hull(items)


def _k_ciminus_to_cn(prefix):
    scan = _CenterScan()
    stages = []
    for q, r in _ci_items_to_cuts(prefix):
        scan.feed(q, r)
        stages.append(scan.last)
    return _stage_tokens_to_psi(stages)


def _h_ciminus_to_cn(prefix):
    orig, g_toks = split_pair(prefix)
    if not g_toks:
        return ()
    k = g_toks[0]
    if len(orig) < k + 1:
        return ()
    scan = _CenterScan()
    for q, r in list(_ci_items_to_cuts(orig[: k + 1])):
        scan.feed(q, r)
    return _const_out(encode_rational(scan.guess), len(prefix))


def _t_ciminus_to_cn(inst):
    a, b = inst.truth

    def gen_pairs():
        items = []
        i = 0
        while True:
            item = decode_interval_token(inst.name[i])
            if item is not None:
                items.append(item)
            yield covered_hull(items)
            i += 1
    return ("upper", _simulate_center_scan(gen_pairs(), a, b) + 1)


def w_ciminus_to_cn():
    return ReductionWitness(
        "ci-<=cn", principle("ci-"), principle("cn"),
        PrefixTransformer("K:ci-<=cn", _k_ciminus_to_cn),
        PrefixTransformer("H:ci-<=cn", _h_ciminus_to_cn),
        "weak", "Prop 3.7", _t_ciminus_to_cn,
        note="interval listing -> hull cuts -> center guessing -> stage bound")


# ---------------------------------------------------------------------------
# LPO <=W B_F  (swap entries, bound the first relevant index, inspect)

def _k_lpo_to_bf(prefix):
    out = []
    found = None
    for i, tok in enumerate(prefix):
        # entrywise swap: the question "is there a zero?" becomes "is the
        # swapped sequence non-zero somewhere?"
        if tok == 0 and found is None:
            found = i
        out.append(encode_rational(mpq(found if found is not None else 0)))
    return out


def _h_lpo_to_bf(prefix):
    p_toks, g_toks = split_pair(prefix)
    if len(g_toks) < 3:
        return ()
    y = max(0, ceil_q(decode_rational(g_toks[2]) + dyadic(2)))
    if len(p_toks) < y + 1:
        return ()
    ans = 0 if any(t == 0 for t in p_toks[: y + 1]) else 1
    return _const_out(ans, len(prefix))


def _t_lpo_to_bf(inst):
    truth = inst.truth
    x = truth[1] if truth[0] == "zero" else 0
    return (mpq(x), True)


def w_lpo_to_bf():
    return ReductionWitness(
        "lpo<=bf", principle("lpo"), principle("bf"),
        PrefixTransformer("K:lpo<=bf", _k_lpo_to_bf),
        PrefixTransformer("H:lpo<=bf", _h_lpo_to_bf),
        "weak", "Prop 3.8", _t_lpo_to_bf,
        note="the bound is a search modulus; the verdict needs the input")


# ---------------------------------------------------------------------------
# LLPO <=sW B_I^-  (the three-interval construction)

def _llpo_cuts(prefix, clamp):
    los, his = [], []
    mode = None  # None | ("even", n) | ("odd", n)
    for i, tok in enumerate(prefix):
        if tok != 0 and mode is None:
            mode = ("even" if i % 2 == 0 else "odd", i)
        q = -dyadic(i)
        r = 1 + dyadic(i)
        if mode is not None:
            kind, n = mode
            if kind == "even" and i >= n:
                r = mpq(1, 4) + dyadic(i)
            if kind == "odd" and i >= n:
                q = mpq(3, 4) - dyadic(i)
        if clamp:
            q, r = max(q, mpq(0)), min(r, mpq(1))
        los.append(encode_rational(q))
        his.append(encode_rational(r))
    return interleave(tuple(los), tuple(his))


def _k_llpo_cuts(prefix):
    return _llpo_cuts(prefix, clamp=False)


def _k_llpo_cuts_unit(prefix):
    return _llpo_cuts(prefix, clamp=True)


def _h_llpo_decide(prefix):
    # interleaved semidecisions on the oracle's point z:
    #   z in [0, 3/4)  ->  the odd side is all zero  ->  answer 1
    #   z in (1/4, 1]  ->  the even side is all zero ->  answer 0
    for k in range(1, len(prefix)):
        t = decode_rational(prefix[k])
        if t + dyadic(k) < mpq(3, 4):
            return _const_out(1, len(prefix))
        if t - dyadic(k) > mpq(1, 4):
            return _const_out(0, len(prefix))
    return ()


def _t_llpo_to_biminus(inst):
    truth = inst.truth
    if truth[0] == "allzero":
        return (mpq(0), mpq(1))
    return (mpq(0), mpq(1, 4)) if truth[1] % 2 == 0 else (mpq(3, 4), mpq(1))


def w_llpo_to_biminus():
    return ReductionWitness(
        "llpo<=bi-", principle("llpo"), principle("bi-"),
        PrefixTransformer("K:llpo<=bi-", _k_llpo_cuts),
        PrefixTransformer("H:llpo<=bi-", _h_llpo_decide),
        "strong", "Prop 3.8", _t_llpo_to_biminus,
        note="any point of the produced interval decides a safe side")


def _w_llpo_to_bi01minus():
    return ReductionWitness(
        "llpo<=bi01-", principle("llpo"), principle("bi01-"),
        PrefixTransformer("K:llpo<=bi01-", _k_llpo_cuts_unit),
        PrefixTransformer("H:llpo<=bi01-", _h_llpo_decide),
        "strong", "Prop 3.8", _t_llpo_to_biminus,
        note="cuts clamped into [0,1] so interval choice can consume them")


def w_llpo_to_ciminus():
    return compose(_w_llpo_to_bi01minus(), w_biminus_to_ciminus(),
                   wid="llpo<=ci-", anchor="Prop 3.8 + Prop 3.6")


# ---------------------------------------------------------------------------
# BCT <=sW C_N over [0,1]

def _items_intersect(it1, it2) -> bool:
    lo1, lc1, hi1, hc1 = it1
    lo2, lc2, hi2, hc2 = it2
    if not (item_nonempty(it1) and item_nonempty(it2)):
        return False
    # sup of lower constraints must lie below inf of upper constraints
    if hi1 is not INF and lo2 is not INF:
        if hi1 < lo2 or (hi1 == lo2 and not (hc1 and lc2)):
            return False
    if hi2 is not INF and lo1 is not INF:
        if hi2 < lo1 or (hi2 == lo1 and not (hc2 and lc1)):
            return False
    return True


def _k_bct_to_cn(prefix):
    """Round-robin semidecision of P = {<n,m> : ball m empty or it meets
    the listed complement of set n}, enumerated as negative information."""
    coord_items = {}
    pending = {}  # coordinate -> list of (code, ball)
    out = []
    certified = set()

    def certify(code):
        certified.add(code)
        out.append(code + 1)

    for pos, tok in enumerate(prefix):
        emitted = len(out)
        # the pair code `pos` enters the race
        n, m = nat_unpair(pos)
        ball = ball_index(m)
        if ball is None:
            certify(pos)
        else:
            hit = any(_items_intersect(it, ball) for it in coord_items.get(n, ()))
            if hit:
                certify(pos)
            else:
                pending.setdefault(n, []).append((pos, ball))
        # the token itself may unlock pending pairs of its coordinate
        i, _ = nat_unpair(pos)
        item = decode_interval_token(tok)
        if item is not None:
            coord_items.setdefault(i, []).append(item)
            still = []
            for code, b in pending.get(i, ()):
                if _items_intersect(item, b):
                    certify(code)
                else:
                    still.append((code, b))
            pending[i] = still
        if len(out) == emitted:
            out.append(PADDING)
    return out


def _h_bct_to_cn(prefix):
    if not prefix:
        return ()
    n, _ = nat_unpair(prefix[0])
    return _const_out(n, len(prefix))


def _t_bct_to_cn(inst):
    return ("pairset", inst.truth)


def w_bct_to_cn():
    return ReductionWitness(
        "bct<=cn", principle("bct"), principle("cn"),
        PrefixTransformer("K:bct<=cn", _k_bct_to_cn),
        PrefixTransformer("H:bct<=cn", _h_bct_to_cn),
        "strong", "Thm 5.2", _t_bct_to_cn,
        note="a surviving pair <n,m> certifies ball m inside set n")


# ---------------------------------------------------------------------------
# B_F <=W BCT over [0,1]

_FLOOD_TOKEN = None


def _flood_token():
    global _FLOOD_TOKEN
    if _FLOOD_TOKEN is None:
        _FLOOD_TOKEN = interval_token(mpq(0), mpq(1), True, True)
    return _FLOOD_TOKEN


def _k_bf_to_bct(prefix):
    qs = _rationals(prefix)
    # running maxima: coordinate i floods once some early q exceeds i
    out = []
    running = []
    best = None
    for q in qs:
        best = q if best is None else max(best, q)
        running.append(best)
    for pos in range(len(prefix)):
        i, j = nat_unpair(pos)
        out.append(_flood_token() if running[j] > i else PADDING)
    return out


def _h_bf_to_bct(prefix):
    return _h_nat_to_rho(prefix)


def _t_bf_to_bct(inst):
    sup, _ = inst.truth
    return ("threshold", max(0, ceil_q(sup)))


def w_bf_to_bct():
    return ReductionWitness(
        "bf<=bct", principle("bf"), principle("bct"),
        PrefixTransformer("K:bf<=bct", _k_bf_to_bct),
        PrefixTransformer("H:bf<=bct", _h_bf_to_bct),
        "strong", "Thm 5.2", _t_bf_to_bct,
        note="sets below the supremum are emptied; a fat set is a bound")


# ---------------------------------------------------------------------------
# IVT <=sW B_I  (certified-sign bracket search)

class _SignSearch:
    """Stage-gated search for a shrinking bracket with certified opposite
    signs, evaluated on the polygon prefix.

    Probes are snapped to the dyadic grid 2^-(stage+2), which keeps all
    emitted cut points small exact rationals; edge probes at geometric
    offsets from the current bracket walk past zero plateaus, where the
    middle probes can never certify a sign."""

    def __init__(self, prefix):
        self.prefix = prefix
        self.polys = {}
        self.evals = {}
        self.signs = {}  # x -> (deepest stage tried, sign or 0)

    def poly(self, k):
        if k not in self.polys:
            self.polys[k] = decode_polygon_token(self.prefix[k])
        return self.polys[k]

    def value(self, x, k):
        key = (x, k)
        if key not in self.evals:
            self.evals[key] = eval_vertices(self.poly(k), x)
        return self.evals[key]

    def certify(self, x, kmax):
        """Certified sign of f(x) using stage values 1..kmax, or 0.
        A sign is asserted only when |f_k(x)| > 2^-k, so it is never wrong."""
        tried, sign = self.signs.get(x, (0, 0))
        if sign or tried >= kmax:
            return sign
        for k in range(tried + 1, kmax + 1):
            if k >= len(self.prefix):
                kmax = k - 1
                break
            val = self.value(x, k)
            if abs(val) > dyadic(k):
                sign = 1 if val > 0 else -1
                break
        self.signs[x] = (kmax, sign)
        return sign

    @staticmethod
    def _snap(x, grid):
        lo = mpq(floor_q(x * grid), grid)
        return (lo, lo + mpq(1, grid))

    def run(self):
        lo_out, hi_out = [], []
        u, v = mpq(0), mpq(1)
        su = sv = 0
        for stage in range(1, len(self.prefix)):
            if su == 0:
                su = self.certify(mpq(0), stage)
            if sv == 0:
                sv = self.certify(mpq(1), stage)
            if su != 0 and sv != 0:
                grid = 2 ** (stage + 2)
                w = v - u
                raw = [u + w * mpq(t, 4) for t in (1, 2, 3)]
                levels = set(range(2, 9)) | set(range(max(2, stage - 8), stage + 1))
                for lev in levels:
                    off = w * dyadic(lev)
                    raw.append(u + off)
                    raw.append(v - off)
                cand = set()
                for x in raw:
                    cand.update(self._snap(x, grid))
                best_u, best_v = u, v
                for x in cand:
                    if not (u < x < v):
                        continue
                    s = self.certify(x, stage)
                    if s == su and x > best_u:
                        best_u = x
                    elif s == sv and x < best_v:
                        best_v = x
                if best_u < best_v:
                    u, v = best_u, best_v
            lo_out.append(encode_rational(u))
            hi_out.append(encode_rational(v))
        return interleave(tuple(lo_out), tuple(hi_out))


def _k_ivt_to_bi(prefix):
    return _SignSearch(prefix).run()


def _t_ivt_to_bi(inst):
    a, b, _ = inst.truth
    return (a, b)


def w_ivt_to_bi():
    return ReductionWitness(
        "ivt<=bi", principle("ivt"), principle("bi01"),
        PrefixTransformer("K:ivt<=bi", _k_ivt_to_bi),
        PrefixTransformer("H:ivt<=bi", _h_identity),
        "strong", "Thm 7.3", _t_ivt_to_bi,
        note="signs are asserted only when a stage value clears 2^-stage")


# ---------------------------------------------------------------------------
# B_I' <=sW IVT  (build the polygon family from the cuts)

def _k_bi_to_ivt(prefix):
    lows, highs = split_pair(prefix)
    left_pts, right_pts = [], []
    best = None
    for i, q in enumerate(_rationals(lows)):
        best = q if best is None else max(best, q)
        s = best - dyadic(i + 1)
        if 0 < s and (not left_pts or s > left_pts[-1]):
            left_pts.append(s)
    best = None
    for i, r in enumerate(_rationals(highs)):
        best = r if best is None else min(best, r)
        t = best + dyadic(i + 1)
        if t < 1 and (not right_pts or t < right_pts[-1]):
            right_pts.append(t)
    out = []
    j = 0
    while len(left_pts) > j and len(right_pts) > j:
        verts = [(mpq(0), mpq(-1))]
        verts += [(left_pts[i], -dyadic(i + 1)) for i in range(j + 1)]
        verts += [(right_pts[i], dyadic(i + 1)) for i in range(j, -1, -1)]
        verts += [(mpq(1), mpq(1))]
        out.append(polygon_token(verts))
        j += 1
    return tuple(out)


def _t_bi_to_ivt(inst):
    a, b = inst.truth
    return (a, b, False)


def w_bi_to_ivt():
    return ReductionWitness(
        "bi'<=ivt", principle("bi01"), principle("ivt"),
        PrefixTransformer("K:bi'<=ivt", _k_bi_to_ivt),
        PrefixTransformer("H:bi'<=ivt", _h_identity),
        "strong", "Thm 7.3", _t_bi_to_ivt,
        note="the polygon family vanishes exactly between the cut limits")


# ---------------------------------------------------------------------------
# composition and parallelization

def compose(w1: ReductionWitness, w2: ReductionWitness, wid=None, anchor=None):
    """w1: f <= g composed with w2: g <= h, yielding f <= h."""
    if w1.target.pid != w2.source.pid:
        raise ValueError(f"cannot compose {w1.wid} with {w2.wid}: "
                         f"{w1.target.pid} != {w2.source.pid}")
    wid = wid or f"[{w1.wid};{w2.wid}]"
    strength = "strong" if (w1.strength, w2.strength) == ("strong", "strong") else "weak"
    K = compose_transformers(w2.K, w1.K, tid=f"K:{wid}")

    if strength == "strong":
        H = compose_transformers(w1.H, w2.H, tid=f"H:{wid}")
    else:
        def h_fn(prefix):
            p, z = split_pair(prefix)
            mid_in = w1.K.step(p)
            h2_in = z if w2.strength == "strong" else interleave(mid_in, z)
            mid_out = w2.H.step(h2_in)
            h1_in = mid_out if w1.strength == "strong" else interleave(p, mid_out)
            return w1.H.step(h1_in)
        H = PrefixTransformer(f"H:{wid}", h_fn)

    def transport(inst):
        mid_truth = w1.transport(inst)
        mid_inst = Instance(w1.target, mid_truth, run(w1.K, inst.name),
                            inst.schedule, w1.target.describe(mid_truth))
        return w2.transport(mid_inst)

    return ReductionWitness(wid, w1.source, w2.target, K, H, strength,
                            anchor or f"{w1.anchor}; {w2.anchor}", transport,
                            note=f"composition of {w1.wid} and {w2.wid}")


def parallelize(w: ReductionWitness, width: int = 10, wid=None):
    """Coordinatewise application: f^ <= g^ through tupled names."""
    src = parallel_problem(w.source, width)
    tgt = parallel_problem(w.target, width)
    wid = wid or f"par({w.wid},{width})"

    def k_fn(prefix):
        cache = {}

        def coord(i):
            if i not in cache:
                cache[i] = w.K.step(coord_prefix(prefix, i))
            return cache[i]
        return tuple_prefix(coord)

    if w.strength == "strong":
        def h_fn(prefix):
            cache = {}

            def coord(i):
                if i not in cache:
                    cache[i] = w.H.step(coord_prefix(prefix, i))
                return cache[i]
            return tuple_prefix(coord)
    else:
        def h_fn(prefix):
            p, z = split_pair(prefix)
            cache = {}

            def coord(i):
                if i not in cache:
                    cache[i] = w.H.step(
                        interleave(coord_prefix(p, i), coord_prefix(z, i)))
                return cache[i]
            return tuple_prefix(coord)

    def transport(inst):
        from .baire import project
        truths = []
        for i in range(width):
            sub = Instance(w.source, inst.truth[i], project(inst.name, i),
                           inst.schedule, w.source.describe(inst.truth[i]))
            truths.append(w.transport(sub))
        return tuple(truths)

    return ReductionWitness(wid, src, tgt,
                            PrefixTransformer(f"K:{wid}", k_fn),
                            PrefixTransformer(f"H:{wid}", h_fn),
                            w.strength, "Prop 2.7", transport,
                            note=f"parallelization of {w.wid}")


# ---------------------------------------------------------------------------
# registry

def _build():
    to_unit, from_unit = w_bi_transport()
    ws = [
        w_bf_to_cf(), w_cf_to_bf(), w_cn_to_bf(), w_cn_idempotent(),
        to_unit, from_unit,
        w_ci_to_bi(), w_bi_to_ci(), w_biminus_to_ciminus(), w_biplus_to_ca(),
        w_bicuts_to_cn(), w_ciminus_to_cn(),
        w_lpo_to_bf(), w_llpo_to_biminus(), w_llpo_to_ciminus(),
        w_bct_to_cn(), w_bf_to_bct(),
        w_ivt_to_bi(), w_bi_to_ivt(),
    ]
    return {w.wid: w for w in ws}


WITNESSES = _build()


def witness(wid: str) -> ReductionWitness:
    if wid not in WITNESSES:
        raise KeyError(f"unknown witness {wid!r}")
    return WITNESSES[wid]


# ---------------------------------------------------------------------------
# sabotaged variants: each must be caught by the default checking suite

def _with_h(w, wid, fn):
    return replace(w, wid=wid, H=PrefixTransformer(f"H:{wid}", fn))


def _with_k(w, wid, fn):
    return replace(w, wid=wid, K=PrefixTransformer(f"K:{wid}", fn))


def _build_sabotaged():
    out = {}

    # off by one: the chosen member is decremented out of the set
    def h_bf_cf_bad(prefix):
        if not prefix:
            return ()
        return _const_out(encode_rational(mpq(max(prefix[0] - 1, 0))), len(prefix))
    out["bf<=cf!off-by-one"] = _with_h(witness("bf<=cf"), "bf<=cf!off-by-one", h_bf_cf_bad)

    # rounds the bound down instead of up
    def h_cf_bf_bad(prefix):
        if len(prefix) < 3:
            return ()
        n = max(0, floor_q(decode_rational(prefix[2]) - dyadic(2)))
        return _const_out(n, len(prefix))
    out["cf<=bf!round-down"] = _with_h(witness("cf<=bf"), "cf<=bf!round-down", h_cf_bf_bad)

    # forgets the enumeration history, looking only at the last position
    def h_cn_bf_bad(prefix):
        p_toks, g_toks = split_pair(prefix)
        if len(g_toks) < 3:
            return ()
        m = max(0, ceil_q(decode_rational(g_toks[2]) + dyadic(2)))
        if len(p_toks) < m + 1:
            return ()
        return _const_out(_least_missing(p_toks[m: m + 1]), len(prefix))
    out["cn<=bf!amnesia"] = _with_h(witness("cn<=bf"), "cn<=bf!amnesia", h_cn_bf_bad)

    # reuses the first coordinate's answer for both
    def h_cnxcn_bad(prefix):
        orig, g_toks = split_pair(prefix)
        if not g_toks:
            return ()
        k = g_toks[0]
        p1, _ = split_pair(orig)
        if len(p1) < k + 1:
            return ()
        a1 = _least_missing(p1[: k + 1])
        return interleave(_const_out(a1, len(prefix)), _const_out(a1, len(prefix)))
    out["cnxcn<=cn!clone"] = _with_h(witness("cnxcn<=cn"), "cnxcn<=cn!clone", h_cnxcn_bad)

    # drops the inverse transport: answers in the wrong coordinates
    out["bi<=bi'!no-transport"] = _with_h(witness("bi<=bi'"), "bi<=bi'!no-transport",
                                          _h_identity)

    # emits untransported cuts while claiming transported bounds
    out["bi'<=bi!stale-cuts"] = _with_k(witness("bi'<=bi"), "bi'<=bi!stale-cuts",
                                        lambda prefix: prefix)

    # drifts every answer an eighth to the left
    def h_ci_bi_bad(prefix):
        return tuple(encode_rational(decode_rational(t) - mpq(1, 8)) for t in prefix)
    out["ci<=bi!drift"] = _with_h(witness("ci<=bi"), "ci<=bi!drift", h_ci_bi_bad)

    # swaps the hull cuts: lower bound reported as upper
    def k_ci_bi_bad(prefix):
        items = []
        lo_out, hi_out = [], []
        for tok in prefix:
            item = decode_interval_token(tok)
            if item is not None:
                items.append(item)
            q, r = covered_hull(items)
            lo_out.append(encode_rational(r))
            hi_out.append(encode_rational(q))
        return interleave(tuple(lo_out), tuple(hi_out))
    out["ci<=bi!swapped"] = _with_k(witness("ci<=bi"), "ci<=bi!swapped", k_ci_bi_bad)

    # the classic staleness bug: uses the stage-m center without replaying
    def h_ciminus_bad(prefix):
        orig, g_toks = split_pair(prefix)
        if not g_toks:
            return ()
        k = g_toks[0]
        if len(orig) < k + 1:
            return ()
        cuts = list(_ci_items_to_cuts(orig[: k + 1]))
        q, r = cuts[-1]
        return _const_out(encode_rational(q + (r - q) / 2), len(prefix))
    out["ci-<=cn!stage-m-center"] = _with_h(witness("ci-<=cn"), "ci-<=cn!stage-m-center",
                                            h_ciminus_bad)

    # skips the entrywise swap, deciding the wrong question
    def k_lpo_bad(prefix):
        out_toks = []
        found = None
        for i, tok in enumerate(prefix):
            if tok != 0 and found is None:
                found = i
            out_toks.append(encode_rational(mpq(found if found is not None else 0)))
        return out_toks
    out["lpo<=bf!no-swap"] = _with_k(witness("lpo<=bf"), "lpo<=bf!no-swap", k_lpo_bad)

    # answers the wrong parity side
    def h_llpo_bad(prefix):
        res = _h_llpo_decide(prefix)
        return tuple(1 - t for t in res)
    out["llpo<=bi-!swapped"] = _with_h(witness("llpo<=bi-"), "llpo<=bi-!swapped", h_llpo_bad)

    # unpairs the wrong component
    def h_bct_bad(prefix):
        if not prefix:
            return ()
        _, m = nat_unpair(prefix[0])
        return _const_out(m, len(prefix))
    out["bct<=cn!wrong-side"] = _with_h(witness("bct<=cn"), "bct<=cn!wrong-side", h_bct_bad)

    # undershoots the returned index by one
    def h_bf_bct_bad(prefix):
        if not prefix:
            return ()
        return _const_out(encode_rational(mpq(max(prefix[0] - 1, 0))), len(prefix))
    out["bf<=bct!undershoot"] = _with_h(witness("bf<=bct"), "bf<=bct!undershoot", h_bf_bct_bad)

    # emits lower intervals on the wrong side of the bound
    def k_biplus_bad(prefix):
        from .spaces import rho_greater_ext
        lows, highs = split_pair(prefix)
        toks = []
        for i in range(len(lows)):
            q = decode_rational(lows[i])
            toks.append(real_interval_token(q, INF))
            if i < len(highs):
                r = rho_greater_ext.value_of(highs[i])
                toks.append(PADDING if r is None or r is INF
                            else real_interval_token(r, INF))
        return toks
    out["bi+<=ca!wrong-side"] = _with_k(witness("bi+<=ca"), "bi+<=ca!wrong-side", k_biplus_bad)

    # asserts signs from raw stage values without the 2^-stage margin
    def k_ivt_bad(prefix):
        search = _SignSearch(prefix)

        def certify(x, kmax):
            for k in range(1, kmax + 1):
                if k >= len(prefix):
                    return 0
                v = search.value(x, k)
                if v != 0:
                    return 1 if v > 0 else -1
            return 0
        search.certify = certify
        return search.run()
    out["ivt<=bi!rash-signs"] = _with_k(witness("ivt<=bi"), "ivt<=bi!rash-signs", k_ivt_bad)

    # builds the polygons upside down
    def k_bi_ivt_bad(prefix):
        toks = _k_bi_to_ivt(prefix)
        flipped = []
        for tok in toks:
            verts = decode_polygon_token(tok)
            flipped.append(polygon_token([(x, -y) for x, y in verts]))
        return tuple(flipped)
    out["bi'<=ivt!upside-down"] = _with_k(witness("bi'<=ivt"), "bi'<=ivt!upside-down",
                                          k_bi_ivt_bad)

    return out


SABOTAGED = _build_sabotaged()

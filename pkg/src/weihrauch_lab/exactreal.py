"""Exact rational helpers and computable reals via certified enclosures.

Ground-truth values in this library are either exact rationals (gmpy2.mpq)
or CReal objects: reals presented by an enclosure oracle that returns a
rational interval of width <= 2^-k on demand.  CReal values arise from the
strictly monotone homeomorphism (0,1) -> R used to transport interval
bounds, so the library also exposes certified rational enclosures of

    fwd(x)  = tan(pi*x - pi/2)          on (0,1)
    inv(y)  = atan(y)/pi + 1/2          on R

built on mpmath's directed-rounding interval kernel.
"""

from __future__ import annotations

from gmpy2 import mpq
from mpmath import libmp as _L

__all__ = [
    "QONE", "QZERO", "dyadic", "ceil_q", "floor_q",
    "CReal", "as_real", "rv_is_exact", "rv_exact", "rv_enclosure", "rv_approx",
    "rv_leq", "rv_lt", "rv_convex",
    "tan_shift_interval", "atan_shift_interval",
    "tan_shift", "atan_shift",
]

QZERO = mpq(0)
QONE = mpq(1)
QHALF = mpq(1, 2)

_MAX_REFINE_ATTEMPTS = 48


def dyadic(k: int) -> mpq:
    return mpq(1, 2 ** k) if k >= 0 else mpq(2 ** (-k))


def ceil_q(q) -> int:
    q = mpq(q)
    return int(-((-q.numerator) // q.denominator))


def floor_q(q) -> int:
    q = mpq(q)
    return int(q.numerator // q.denominator)


def _to_mpf(q, prec, rnd):
    q = mpq(q)
    return _L.from_rational(int(q.numerator), int(q.denominator), prec, rnd)


def _to_q(x) -> mpq:
    p, q = _L.to_rational(x)
    return mpq(int(p), int(q))


def _q_interval(lo, hi, prec):
    return (_to_mpf(lo, prec, "d"), _to_mpf(hi, prec, "u"))


def _pi(prec):
    return (_L.mpf_pi(prec, "d"), _L.mpf_pi(prec, "u"))


def _widen(lo, hi, prec):
    # mpmath's interval transcendentals are only faithfully rounded; their
    # endpoints can miss the true value by an ulp, so pad generously
    pad = dyadic(prec - 8) * (1 + abs(lo) + abs(hi))
    return lo - pad, hi + pad


def tan_shift_interval(xlo, xhi, prec):
    """Certified enclosure of tan(pi*x - pi/2) over [xlo, xhi].

    Returns a rational (lo, hi) pair, or None when the argument interval
    is not certifiably inside (0, 1) at this precision.
    """
    xlo, xhi = mpq(xlo), mpq(xhi)
    if not (0 < xlo <= xhi < 1):
        return None
    pi = _pi(prec)
    d = _q_interval(xlo - QHALF, xhi - QHALF, prec)
    t = _L.mpi_mul(pi, d, prec)
    # stay on the monotone branch: |t| < pi/2, checked exactly
    halfpi_lo = _to_q(pi[0]) / 2
    if not (-halfpi_lo < _to_q(t[0]) and _to_q(t[1]) < halfpi_lo):
        return None
    v = _L.mpi_tan(t, prec)
    return _widen(_to_q(v[0]), _to_q(v[1]), prec)


def atan_shift_interval(ylo, yhi, prec):
    """Certified enclosure of atan(y)/pi + 1/2 over [ylo, yhi]."""
    pi = _pi(prec)
    a = _L.mpi_atan(_q_interval(mpq(ylo), mpq(yhi), prec), prec)
    r = _L.mpi_add(_L.mpi_div(a, pi, prec), _q_interval(QHALF, QHALF, prec), prec)
    return _widen(_to_q(r[0]), _to_q(r[1]), prec)


class CReal:
    """A real number given by a rational-enclosure oracle.

    enclosure(k) returns nested rational bounds (lo, hi) with
    hi - lo <= 2^-k.  Instances memoize their best enclosure; queries are
    deterministic.
    """

    __slots__ = ("_refine", "_k", "_lo", "_hi", "label")

    def __init__(self, refine, label="creal"):
        self._refine = refine
        self._k = -1
        self._lo = None
        self._hi = None
        self.label = label

    def enclosure(self, k: int):
        if k > self._k:
            lo, hi = self._refine(k)
            if self._lo is not None:
                lo, hi = max(lo, self._lo), min(hi, self._hi)
            if hi < lo:
                raise AssertionError(f"inconsistent enclosures for {self.label}")
            self._lo, self._hi, self._k = lo, hi, k
        return self._lo, self._hi

    def approx(self, k: int) -> mpq:
        lo, hi = self.enclosure(k + 1)
        return (lo + hi) / 2

    def __repr__(self):
        lo, hi = self.enclosure(20)
        return f"<CReal {self.label}~{float((lo + hi) / 2):.6f}>"


def as_real(v):
    return v if isinstance(v, CReal) else mpq(v)


def rv_is_exact(v) -> bool:
    return not isinstance(v, CReal)


def rv_exact(v) -> mpq:
    if isinstance(v, CReal):
        raise ValueError("not an exact rational")
    return mpq(v)


def rv_enclosure(v, k: int):
    if isinstance(v, CReal):
        return v.enclosure(k)
    q = mpq(v)
    return q, q


def rv_approx(v, k: int) -> mpq:
    return v.approx(k) if isinstance(v, CReal) else mpq(v)


def rv_leq(a, b, fuel: int = 192) -> bool:
    """Decide a <= b for exact/CReal mixtures.

    Refines until the order is certain; equality is only reachable in the
    all-exact case, which is decided directly.
    """
    if rv_is_exact(a) and rv_is_exact(b):
        return mpq(a) <= mpq(b)
    if a is b:
        return True
    k = 8
    while k <= fuel:
        alo, ahi = rv_enclosure(a, k)
        blo, bhi = rv_enclosure(b, k)
        if ahi <= blo:
            return True
        if bhi < alo:
            return False
        k *= 2
    raise NonTerminatingComparison(f"order of {a!r} and {b!r} undecided at fuel {fuel}")


def rv_lt(a, b, fuel: int = 192) -> bool:
    if rv_is_exact(a) and rv_is_exact(b):
        return mpq(a) < mpq(b)
    return rv_leq(a, b, fuel)


class NonTerminatingComparison(Exception):
    pass


def rv_convex(a, b, t):
    """a + t*(b - a) for rational t; exact when both endpoints are exact."""
    t = mpq(t)
    if rv_is_exact(a) and rv_is_exact(b):
        return mpq(a) + t * (mpq(b) - mpq(a))

    def refine(k):
        alo, ahi = rv_enclosure(a, k + 4)
        blo, bhi = rv_enclosure(b, k + 4)
        vals = [alo + t * (blo - alo), alo + t * (bhi - alo),
                ahi + t * (blo - ahi), ahi + t * (bhi - ahi)]
        return min(vals), max(vals)

    return CReal(refine, label="convex")


def _refined(fn, k, start_extra=16):
    """Run an interval computation at escalating precision until the
    result has width <= 2^-k.  fn(prec) -> (lo, hi) or None to escalate."""
    tol = dyadic(k)
    prec = 2 * k + start_extra
    for _ in range(_MAX_REFINE_ATTEMPTS):
        out = fn(prec)
        if out is not None and out[1] - out[0] <= tol:
            return out
        prec = 2 * prec + 16
    raise NonProductiveReal(f"enclosure did not converge at k={k}")


class NonProductiveReal(Exception):
    pass


def tan_shift(x):
    """tan(pi*x - pi/2) as a RealValue; exact 0 at x = 1/2."""
    if rv_is_exact(x) and mpq(x) == QHALF:
        return QZERO

    def refine(k):
        def attempt(prec):
            xlo, xhi = rv_enclosure(x, max(k + 8, prec // 2))
            return tan_shift_interval(xlo, xhi, prec)
        return _refined(attempt, k)

    return CReal(refine, label=f"fwd({x})")


def atan_shift(y):
    """atan(y)/pi + 1/2 as a RealValue; exact at y in {-1, 0, 1}."""
    if rv_is_exact(y):
        q = mpq(y)
        if q == 0:
            return QHALF
        if q == 1:
            return mpq(3, 4)
        if q == -1:
            return mpq(1, 4)

    def refine(k):
        def attempt(prec):
            ylo, yhi = rv_enclosure(y, max(k + 8, prec // 2))
            return atan_shift_interval(ylo, yhi, prec)
        return _refined(attempt, k)

    return CReal(refine, label=f"inv({y})")

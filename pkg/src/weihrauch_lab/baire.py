"""Names of Baire space and prefix-monotone stream transformers.

A Name is a demand-driven infinite sequence of naturals, queryable to any
finite depth.  A PrefixTransformer maps finite input prefixes to finite
output prefixes, monotonically; it is the computational substance of every
reduction in this library.  This module also fixes the shared codings:
the Cantor pairing on naturals, interleaving/tupling of names, and the
bijective coding of exact rationals into naturals that every rational
sequence format uses.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from math import isqrt

from gmpy2 import mpq

__all__ = [
    "NonProductive",
    "Name",
    "CountingName",
    "PrefixTransformer",
    "scan_transformer",
    "identity_transformer",
    "compose_transformers",
    "run",
    "pair",
    "unpair",
    "tuple_inf",
    "project",
    "nat_pair",
    "nat_unpair",
    "zigzag",
    "unzigzag",
    "seq_to_nat",
    "nat_to_seq",
    "encode_rational",
    "decode_rational",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 2 ** 16

# Padding convention: the token 0 carries no information in enumeration
# formats (set elements are coded n+1).
PADDING = 0


class NonProductive(Exception):
    """An input-depth budget ran out before the requested output depth.

    Signals divergence, or an input outside a transformer's domain.
    """


class Name:
    """An element of Baire space, memoized and thread-safe.

    query(d) returns the prefix p(0)..p(d-1) as a tuple.  Repeated queries
    are deterministic and prefix-coherent by construction: tokens are
    computed once and cached.
    """

    __slots__ = ("_fill", "_cache", "_lock", "label")

    def __init__(self, fill, label=""):
        # fill(cache, depth) -> list of tokens extending cache to >= depth,
        # or raising NonProductive.
        self._fill = fill
        self._cache: list[int] = []
        self._lock = threading.Lock()
        self.label = label

    def query(self, depth: int) -> tuple[int, ...]:
        if depth <= len(self._cache):
            return tuple(self._cache[:depth])
        with self._lock:
            while len(self._cache) < depth:
                new = self._fill(self._cache, depth)
                if len(new) <= len(self._cache):
                    raise NonProductive(
                        f"name {self.label!r} stalled at depth {len(self._cache)}"
                    )
                for tok in new[len(self._cache):]:
                    if not isinstance(tok, int) or tok < 0:
                        raise ValueError(f"non-natural token {tok!r} in {self.label!r}")
                self._cache = list(new)
            return tuple(self._cache[:depth])

    def __getitem__(self, i: int) -> int:
        return self.query(i + 1)[i]

    def __repr__(self):
        shown = ",".join(map(str, self._cache[:8]))
        return f"<Name {self.label} {shown}{',...' if self._cache else ''}>"

    @staticmethod
    def from_index_fn(f, label=""):
        def fill(cache, depth):
            return list(cache) + [f(i) for i in range(len(cache), depth)]
        return Name(fill, label)

    @staticmethod
    def constant(value: int, label=None):
        return Name.from_index_fn(lambda i: value, label if label is not None else f"const:{value}")

    @staticmethod
    def from_tokens(tokens, tail=PADDING, label="literal"):
        toks = list(tokens)

        def f(i):
            return toks[i] if i < len(toks) else tail
        return Name.from_index_fn(f, label)


class CountingName(Name):
    """Wrapper that records the deepest query made to the underlying name."""

    __slots__ = ("base", "max_depth")

    def __init__(self, base: Name, label=""):
        self.base = base
        self.max_depth = 0

        def fill(cache, depth):
            if depth > self.max_depth:
                self.max_depth = depth
            return list(base.query(depth))
        super().__init__(fill, label or ("spy:" + base.label))


class PrefixTransformer:
    """A monotone finite-prefix to finite-prefix map.

    step(u) must satisfy: u a prefix of v implies step(u) a prefix of
    step(v).  All transformers here recompute from the full prefix, so
    monotonicity reduces to determinism of an append-only computation.
    """

    __slots__ = ("tid", "_fn")

    def __init__(self, tid: str, fn):
        self.tid = tid
        self._fn = fn

    def step(self, prefix) -> tuple[int, ...]:
        return tuple(self._fn(tuple(prefix)))

    def __repr__(self):
        return f"<PrefixTransformer {self.tid}>"


def scan_transformer(tid, init, consume):
    """Transformer from a token-wise state machine.

    consume(state, token) -> (state, iterable of emitted tokens).  The
    recomputation from scratch on every step call keeps the map pure.
    """
    def fn(prefix):
        state = init()
        out = []
        for tok in prefix:
            state, emitted = consume(state, tok)
            out.extend(emitted)
        return out
    return PrefixTransformer(tid, fn)


def identity_transformer(tid="id"):
    return PrefixTransformer(tid, lambda prefix: prefix)


def compose_transformers(outer: PrefixTransformer, inner: PrefixTransformer, tid=None):
    t = tid or f"{outer.tid}*{inner.tid}"
    return PrefixTransformer(t, lambda prefix: outer.step(inner.step(prefix)))


def run(t: PrefixTransformer, p: Name, budget: int = DEFAULT_BUDGET) -> Name:
    """Evaluate a transformer on a name, yielding the output name.

    Queries only finitely much of p per output depth; raises NonProductive
    once `budget` input tokens have been consumed without the output
    reaching the requested depth.
    """
    state = {"in_depth": 0, "out": ()}

    def fill(cache, depth):
        while len(state["out"]) < depth:
            if state["in_depth"] >= budget:
                raise NonProductive(
                    f"run({t.tid}) exhausted input budget {budget} at output depth "
                    f"{len(state['out'])} (wanted {depth})"
                )
            state["in_depth"] = min(budget, max(8, 2 * state["in_depth"]))
            new = t.step(p.query(state["in_depth"]))
            if new[: len(state["out"])] != state["out"]:
                raise AssertionError(f"transformer {t.tid} violated monotonicity")
            state["out"] = new
        return list(state["out"])

    return Name(fill, label=f"run({t.tid})")


# ---------------------------------------------------------------------------
# pairing and tupling

def pair(p: Name, q: Name) -> Name:
    """Interleaving pairing: result r has r(2n)=p(n), r(2n+1)=q(n)."""
    return Name.from_index_fn(
        lambda i: p[i // 2] if i % 2 == 0 else q[i // 2],
        label=f"pair({p.label},{q.label})",
    )


def unpair(r: Name) -> tuple[Name, Name]:
    left = Name.from_index_fn(lambda i: r[2 * i], label=f"left({r.label})")
    right = Name.from_index_fn(lambda i: r[2 * i + 1], label=f"right({r.label})")
    return left, right


def nat_pair(i: int, n: int) -> int:
    s = i + n
    return s * (s + 1) // 2 + n


def nat_unpair(m: int) -> tuple[int, int]:
    s = (isqrt(8 * m + 1) - 1) // 2
    n = m - s * (s + 1) // 2
    return s - n, n


def tuple_inf(ps) -> Name:
    """Infinite tupling: result r has r(nat_pair(i, n)) = ps(i)(n)."""
    def f(m):
        i, n = nat_unpair(m)
        return ps(i)[n]
    return Name.from_index_fn(f, label="tuple_inf")


def project(r: Name, i: int) -> Name:
    return Name.from_index_fn(lambda n: r[nat_pair(i, n)], label=f"proj{i}({r.label})")


# ---------------------------------------------------------------------------
# rational coding
#
# Naturals code rationals bijectively through the canonical continued
# fraction [a0; a1..ak] (ai >= 1, ak >= 2), flattened to the sequence
# (zigzag(a0), a1-1, .., a_{k-1}-1, ak-2) and serialized by a base-3
# sequence code.  Both round trips are exact identities and code size is
# linear in the bit size of numerator and denominator.

def zigzag(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def unzigzag(n: int) -> int:
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


def _nat_to_bits(n: int) -> list[int]:
    # bijection N <-> {0,1}*: binary of n+1 with the leading 1 stripped
    m = n + 1
    bits = []
    while m > 1:
        bits.append(m & 1)
        m >>= 1
    bits.reverse()
    return bits


def _bits_to_nat(bits) -> int:
    m = 1
    for b in bits:
        m = (m << 1) | b
    return m - 1


def seq_to_nat(seq) -> int:
    """Bijection: nonempty sequences of naturals <-> naturals.

    Terms become binary strings joined by a separator letter; the letter
    string is read in bijective base 3.
    """
    letters = []
    for j, term in enumerate(seq):
        if j:
            letters.append(2)
        letters.extend(_nat_to_bits(term))
    n = 0
    for d in reversed(letters):
        n = 3 * n + d + 1
    return n


def nat_to_seq(n: int) -> list[int]:
    letters = []
    while n:
        d = n % 3
        if d == 0:
            d = 3
        letters.append(d - 1)
        n = (n - d) // 3
    parts = [[]]
    for letter in letters:
        if letter == 2:
            parts.append([])
        else:
            parts[-1].append(letter)
    return [_bits_to_nat(bits) for bits in parts]


@lru_cache(maxsize=1 << 16)
def encode_rational(q) -> int:
    q = mpq(q)
    a0 = q.numerator // q.denominator  # floor
    frac = q - a0
    terms = []
    while frac != 0:
        r = 1 / frac
        a = r.numerator // r.denominator
        terms.append(int(a))
        frac = r - a
    seq = [zigzag(int(a0))]
    if terms:
        seq.extend(t - 1 for t in terms[:-1])
        seq.append(terms[-1] - 2)
    return seq_to_nat(seq)


@lru_cache(maxsize=1 << 16)
def decode_rational(n: int):
    seq = nat_to_seq(n)
    a0 = unzigzag(seq[0])
    tail = seq[1:]
    if not tail:
        return mpq(a0)
    terms = [t + 1 for t in tail[:-1]] + [tail[-1] + 2]
    value = mpq(terms[-1])
    for a in reversed(terms[:-1]):
        value = a + 1 / value
    return a0 + 1 / value


def pair_names_of(*names: Name) -> Name:
    """Left-nested pairing of finitely many names."""
    out = names[0]
    for nm in names[1:]:
        out = pair(out, nm)
    return out

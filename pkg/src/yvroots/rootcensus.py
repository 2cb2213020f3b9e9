"""Sturm-chain root counting and isolation, and the Q_n root census.

Counting uses half-open intervals (lo, hi]: the number of distinct real roots
of a squarefree p in (lo, hi] is V(lo) - V(hi), where V(x) is the number of
sign variations of the Sturm chain at x.  All endpoints are rationals and all
midpoints are dyadic, so every comparison is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactpoly import (
    IntPoly,
    RationalLike,
    cauchy_bound,
    derivative,
    divmod_pseudo,
    exact_div,
    format_rational,
    gcd_primitive,
    primitive_part,
    sign_at,
    Z,
)
from .yvgen import YVCache, generate

__all__ = [
    "NotSquarefree",
    "CommonRootDetected",
    "SturmChain",
    "IsolatingInterval",
    "RootCensus",
    "build_sturm",
    "count_in",
    "sign_variations",
    "isolate",
    "refine",
    "census",
    "verify_count_theorems",
    "verify_interlacing",
    "predicted_counts",
]


class NotSquarefree(ValueError):
    """The polynomial has a repeated factor (gcd(p, p') is not constant)."""


class CommonRootDetected(ArithmeticError):
    """Two polynomials expected to be coprime share a root."""


@dataclass(frozen=True)
class SturmChain:
    """p_0 = p, p_1 = p', p_{k+1} = -rem(p_{k-1}, p_k) up to positive factors."""

    polys: tuple[IntPoly, ...]

    @property
    def target(self) -> IntPoly:
        return self.polys[0]

    def variations(self, x: RationalLike) -> int:
        return sign_variations(self, x)

    def __len__(self) -> int:
        return len(self.polys)


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open (lo, hi] holding exactly one root of some polynomial."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo < x <= self.hi

    def disjoint(self, other: "IsolatingInterval") -> bool:
        return self.hi <= other.lo or other.hi <= self.lo

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    def __float__(self) -> float:
        return float(self.midpoint)


def build_sturm(p: IntPoly) -> SturmChain:
    """Sturm chain of a squarefree polynomial, content removed at each step."""
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    p0 = primitive_part(p)
    if p0.degree == 0:
        return SturmChain((p0,))
    chain = [p0, primitive_part(derivative(p0))]
    while chain[-1].degree > 0:
        r, s = divmod_pseudo(chain[-2], chain[-1])
        if r.is_zero():
            raise NotSquarefree(f"gcd(p, p') has degree {chain[-1].degree}")
        r = primitive_part(r)
        # r is a multiple of rem(chain[-2], chain[-1]) by a factor of sign s
        chain.append(-r if s > 0 else r)
    return SturmChain(tuple(chain))


def sign_variations(chain: SturmChain, x: RationalLike) -> int:
    x = Fraction(x)
    v, last = 0, 0
    for q in chain.polys:
        s = sign_at(q, x)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def count_in(chain: SturmChain, lo: RationalLike, hi: RationalLike) -> int:
    """Distinct real roots of the chain's target in (lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("count_in needs lo < hi")
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def _enclosure(p: IntPoly) -> Fraction:
    # Cauchy bound rounded up to a power of two, so bisection points stay
    # short dyadics
    b = math.ceil(cauchy_bound(p))
    return Fraction(1 << (b - 1).bit_length())


def _variations_at_infinity(chain: SturmChain, sign: int) -> int:
    v, last = 0, 0
    for q in chain.polys:
        s = 1 if q.lead > 0 else -1
        if sign < 0 and q.degree % 2:
            s = -s
        if last and s != last:
            v += 1
        last = s
    return v


def _isolate_with_chain(chain: SturmChain) -> list[IsolatingInterval]:
    p = chain.target
    if p.degree < 1:
        return []
    B = _enclosure(p)
    cache: dict[Fraction, int] = {}
    # no root of p lies beyond 2**e, so V is constant out there
    e = p.root_radius_log2
    far = Fraction(2) ** e if e is not None else Fraction(0)
    v_plus, v_minus = _variations_at_infinity(chain, 1), _variations_at_infinity(chain, -1)

    def V(x: Fraction) -> int:
        if x >= far and x > 0:
            return v_plus
        if x <= -far and x < 0:
            return v_minus
        v = cache.get(x)
        if v is None:
            v = cache[x] = sign_variations(chain, x)
        return v

    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        k = V(lo) - V(hi)
        if k == 0:
            continue
        if k == 1:
            out.append(IsolatingInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda iv: iv.lo)
    return out


def _right_sign(p: IntPoly, x: Fraction) -> int:
    # sign of p just to the right of x; x is at worst a simple root
    s = sign_at(p, x)
    return s if s else sign_at(derivative(p), x)


def _bisect(p: IntPoly, iv: IsolatingInterval, s_lo: int) -> IsolatingInterval:
    mid = iv.midpoint
    s = sign_at(p, mid)
    if s == 0:
        # root is exactly mid; keep it as the right endpoint
        return IsolatingInterval(max(iv.lo, mid - iv.width / 4), mid)
    if s == s_lo:
        return IsolatingInterval(mid, iv.hi)
    return IsolatingInterval(iv.lo, mid)


def refine(p: IntPoly, iv: IsolatingInterval, width: RationalLike) -> IsolatingInterval:
    """Shrink ``iv`` by dyadic bisection until its width is at most ``width``.

    ``iv`` must isolate a simple root of ``p``.  Only signs of ``p`` are used:
    p keeps one sign on (lo, root) and the other on (root, hi].
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    s_lo = _right_sign(p, iv.lo)
    while iv.width > width:
        nxt = _bisect(p, iv, s_lo)
        if nxt.lo != iv.lo:
            s_lo = _right_sign(p, nxt.lo)
        iv = nxt
    return iv


def _shrink_until(p: IntPoly, iv: IsolatingInterval, ok) -> IsolatingInterval:
    s_lo = _right_sign(p, iv.lo)
    while not ok(iv):
        nxt = _bisect(p, iv, s_lo)
        if nxt.lo != iv.lo:
            s_lo = _right_sign(p, nxt.lo)
        iv = nxt
    return iv


@lru_cache(maxsize=256)
def _split_zero(p: IntPoly) -> tuple[bool, IntPoly, SturmChain]:
    # (p(0) == 0, p with the root at 0 removed, chain of the remainder)
    if p.is_zero():
        raise ValueError("zero polynomial")
    has_zero = p.degree >= 1 and p[0] == 0
    rest = exact_div(p, Z) if has_zero else p
    if has_zero and rest[0] == 0:
        raise NotSquarefree("double root at 0")
    return has_zero, rest, build_sturm(rest)


def isolate(p: IntPoly) -> list[IsolatingInterval]:
    """Pairwise-disjoint isolating intervals for all real roots, in order.

    A root at 0 is split off first and given its own interval (-d, d] with d
    a power of two small enough to miss every other root.
    """
    has_zero, rest, chain = _split_zero(p)
    ivs = _isolate_with_chain(chain)
    if not has_zero:
        return ivs
    neg, pos = [], []
    for iv in ivs:
        if iv.lo < 0 < iv.hi:
            # rest(0) != 0, so cutting at 0 keeps the root on one side
            if _right_sign(rest, iv.lo) != sign_at(rest, 0):
                iv = IsolatingInterval(iv.lo, 0)
            else:
                iv = IsolatingInterval(0, iv.hi)
        (neg if iv.hi <= 0 else pos).append(iv)
    if neg:
        neg[-1] = _shrink_until(rest, neg[-1], lambda iv: iv.hi < 0)
    if pos:
        pos[0] = _shrink_until(rest, pos[0], lambda iv: iv.lo > 0)
    gap = Fraction(1)
    if neg:
        gap = min(gap, -neg[-1].hi)
    if pos:
        gap = min(gap, pos[0].lo)
    d = Fraction(1)
    while d > gap:
        d /= 2
    return neg + [IsolatingInterval(-d, d)] + pos


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class RootCensus:
    n: int
    total: int
    negative: int
    positive: int
    has_zero_root: bool
    min_root: IsolatingInterval | None
    max_root: IsolatingInterval | None

    def __post_init__(self):
        if self.total != self.negative + self.positive + int(self.has_zero_root):
            raise ValueError("census counts are inconsistent")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "negative": self.negative,
            "positive": self.positive,
            "zero": self.has_zero_root,
            "min": self.min_root.to_json() if self.min_root else None,
            "max": self.max_root.to_json() if self.max_root else None,
        }


def predicted_counts(n: int) -> tuple[int, int, int]:
    """(total, negative, positive) real-root counts claimed for Q_n."""
    total = (n + 1) // 2
    negative = (n + 1) // 3
    positive = n // 6 if n % 2 == 0 else (n + 3) // 6
    return total, negative, positive


@lru_cache(maxsize=64)
def _census_poly(p: IntPoly) -> tuple[int, int, bool, tuple[IsolatingInterval, ...]]:
    has_zero, rest, chain = _split_zero(p)
    if rest.degree < 1:
        negative = positive = 0
    else:
        B = _enclosure(rest)
        negative = count_in(chain, -B, 0)
        positive = count_in(chain, 0, B)
    return negative, positive, has_zero, tuple(isolate(p))


def census(n: int, cache: YVCache | None = None) -> RootCensus:
    """Real-root counts of Q_n by sign, with extreme isolating intervals."""
    p = generate(n, cache)
    negative, positive, has_zero, ivs = _census_poly(p)
    total = negative + positive + int(has_zero)
    if len(ivs) != total:
        raise AssertionError(f"isolation found {len(ivs)} roots of Q_{n}, counting found {total}")
    return RootCensus(
        n=n,
        total=total,
        negative=negative,
        positive=positive,
        has_zero_root=has_zero,
        min_root=ivs[0] if ivs else None,
        max_root=ivs[-1] if ivs else None,
    )


def roots_of(n: int, cache: YVCache | None = None) -> list[IsolatingInterval]:
    """Isolating intervals for the real roots of Q_n."""
    return list(_census_poly(generate(n, cache))[3])


def verify_count_theorems(n: int, cache: YVCache | None = None) -> tuple[bool, bool]:
    c = census(n, cache)
    total, negative, positive = predicted_counts(n)
    return c.total == total, (c.negative, c.positive) == (negative, positive)


def _separate(
    pa: IntPoly, a: Sequence[IsolatingInterval], pb: IntPoly, b: Sequence[IsolatingInterval]
) -> tuple[list[IsolatingInterval], list[IsolatingInterval]]:
    a, b = list(a), list(b)
    while True:
        clash = False
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if not x.disjoint(y):
                    clash = True
                    a[i] = x = refine(pa, x, x.width / 2)
                    b[j] = y = refine(pb, y, y.width / 2)
        if not clash:
            return a, b


def verify_interlacing(n: int, cache: YVCache | None = None) -> tuple[bool, bool]:
    """Interlacing of the real roots of Q_{n-1} and Q_{n+1}.

    First flag: after separating the two interval lists, their merged order
    alternates and begins and ends with a root of Q_{n+1}.  Second flag:
    min Z_{n+1} < min Z_{n-1} and max Z_{n-1} < max Z_{n+1}, vacuously true
    when Q_{n-1} has no real roots.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pm, pp = generate(n - 1, cache), generate(n + 1, cache)
    if gcd_primitive(pm, pp).degree > 0:
        raise CommonRootDetected(f"Q_{n - 1} and Q_{n + 1} share a root")
    inner, outer = _separate(pm, roots_of(n - 1, cache), pp, roots_of(n + 1, cache))
    merged = sorted([(iv.lo, "in") for iv in inner] + [(iv.lo, "out") for iv in outer])
    labels = [t for _, t in merged]
    alternates = bool(labels) and all(
        t == ("out" if i % 2 == 0 else "in") for i, t in enumerate(labels)
    ) and labels[-1] == "out"
    if not inner:
        extremes = True
    else:
        extremes = outer[0].hi <= inner[0].lo and inner[-1].hi <= outer[-1].lo
    return alternates, extremes

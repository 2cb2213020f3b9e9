"""Yablonskii-Vorob'ev polynomials: generation, caching and structural checks.

The polynomials come from the differential-difference recurrence

    Q_{n+1} Q_{n-1} = z Q_n^2 - 4 (Q_n Q_n'' - (Q_n')^2),   Q_0 = 1, Q_1 = z,

solved for Q_{n+1} by exact division.  Results live in a YVCache, which can
persist itself as a JSON document of canonical coefficient arrays.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .exactpoly import (
    ONE,
    Z,
    IntPoly,
    NotDivisible,
    derivative,
    exact_div,
    from_canonical,
    gcd_primitive,
    sign_at,
    to_canonical,
)

__all__ = [
    "YVCache",
    "CacheError",
    "RecurrenceDivisionFailure",
    "RecursionDivisionFailure",
    "StructureReport",
    "default_cache",
    "generate",
    "next_poly",
    "verify_structure",
    "lowest_coeff_by_recursion",
    "sign_at_zero_predicted",
    "verify_wronskian_identities",
    "coprimality_report",
    "expected_degree",
]

CACHE_VERSION = 1


class RecurrenceDivisionFailure(ArithmeticError):
    """The recurrence numerator was not divisible by Q_{n-1}."""


class RecursionDivisionFailure(ArithmeticError):
    """x_{n+1} * x_{n-1} = c * x_n^2 did not divide exactly."""


class CacheError(OSError):
    """Cache file unreadable, malformed, or holding a wrong polynomial."""


def expected_degree(n: int) -> int:
    return n * (n + 1) // 2


@dataclass
class YVCache:
    """Map from index n to Q_n, optionally backed by a JSON file.

    Entries 0 and 1 are always present.  ``generate`` holds ``lock`` while
    extending the table; reads of existing entries need no lock.
    """

    entries: dict[int, IntPoly] = field(default_factory=dict)
    source_path: Path | None = None
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False, compare=False)
    dirty: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.source_path is not None:
            self.source_path = Path(self.source_path)
        self.entries.setdefault(0, ONE)
        self.entries.setdefault(1, Z)
        if self.entries[0] != ONE or self.entries[1] != Z:
            raise CacheError("cache entries 0 and 1 must be 1 and z")

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def __getitem__(self, n: int) -> IntPoly:
        return self.entries[n]

    @property
    def max_index(self) -> int:
        return max(self.entries)

    # -- persistence -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "polys": {str(n): to_canonical(p) for n, p in sorted(self.entries.items())},
        }

    @classmethod
    def from_json(cls, doc: dict, source_path: Path | None = None) -> "YVCache":
        if not isinstance(doc, dict) or doc.get("version") != CACHE_VERSION:
            raise CacheError(f"unsupported cache document (version {doc.get('version') if isinstance(doc, dict) else None!r})")
        polys = doc.get("polys")
        if not isinstance(polys, dict):
            raise CacheError("cache document has no 'polys' object")
        entries = {}
        for key, coeffs in polys.items():
            try:
                n = int(key)
                p = from_canonical(coeffs)
            except (TypeError, ValueError) as exc:
                raise CacheError(f"bad cache entry {key!r}: {exc}") from None
            if n < 0 or p.degree != expected_degree(n) or not p.is_monic():
                raise CacheError(f"cache entry {n} is not a monic polynomial of degree {expected_degree(n)}")
            entries[n] = p
        return cls(entries=entries, source_path=source_path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "YVCache":
        """Read ``path``; a missing file yields an empty cache bound to it."""
        path = Path(path)
        if not path.exists():
            return cls(source_path=path)
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CacheError(f"{path}: not valid JSON ({exc})") from None
        return cls.from_json(doc, source_path=path)

    def save(self, path: str | os.PathLike | None = None) -> Path:
        """Write the cache atomically (temp file in the same directory, then rename)."""
        target = Path(path) if path is not None else self.source_path
        if target is None:
            raise CacheError("no path to save the cache to")
        target.parent.mkdir(parents=True, exist_ok=True)
        with self.lock:
            doc = self.to_json()
        fd, tmp = tempfile.mkstemp(prefix=target.name + ".", suffix=".tmp", dir=target.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, target)
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise
        self.dirty = False
        return target


_default_cache = YVCache()


def default_cache() -> YVCache:
    """Process-wide in-memory cache used when callers pass none."""
    return _default_cache


def next_poly(q_prev: IntPoly, q_cur: IntPoly) -> IntPoly:
    """One step of the recurrence: Q_{n+1} from Q_{n-1} and Q_n."""
    d1 = derivative(q_cur)
    d2 = derivative(d1)
    rhs = (q_cur * q_cur).shift(1)
    rhs = rhs - (q_cur * d2 - d1 * d1).scale(4)
    try:
        return exact_div(rhs, q_prev)
    except NotDivisible as exc:
        raise RecurrenceDivisionFailure(str(exc)) from exc


def generate(n: int, cache: YVCache | None = None) -> IntPoly:
    """Return Q_n, filling in every missing intermediate in ``cache``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cache = _default_cache if cache is None else cache
    p = cache.entries.get(n)
    if p is not None:
        return p
    with cache.lock:
        entries = cache.entries
        k = max(k for k in range(1, n + 1) if k in entries and k - 1 in entries)
        while k < n:
            q = next_poly(entries[k - 1], entries[k])
            k += 1
            if entries.get(k) is None:
                entries[k] = q
                cache.dirty = True
            elif entries[k] != q:
                raise RecurrenceDivisionFailure(f"cached Q_{k} disagrees with the recurrence")
        return entries[n]


@dataclass(frozen=True)
class StructureReport:
    n: int
    degree: int
    monic: bool
    degree_ok: bool
    z3_structure: str | None  # "Z[z^3]", "z*Z[z^3]" or None if neither holds
    z3_ok: bool
    lowest_coeff: int
    sign_at_zero: int

    @property
    def ok(self) -> bool:
        return self.monic and self.degree_ok and self.z3_ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "monic": self.monic,
            "degree_ok": self.degree_ok,
            "z3_structure": self.z3_structure,
            "z3_ok": self.z3_ok,
            "lowest_coeff": str(self.lowest_coeff),
            "sign_at_zero": self.sign_at_zero,
        }


def _residue_class(p: IntPoly) -> int | None:
    # the r in {0,1,2} with every nonzero coefficient at an exponent = r mod 3
    r = None
    for e, c in enumerate(p.coeffs):
        if c:
            if r is None:
                r = e % 3
            elif e % 3 != r:
                return None
    return r


def verify_structure(n: int, cache: YVCache | None = None) -> StructureReport:
    """Degree, monicity, z^3 structure and lowest coefficient of Q_n.

    Never raises on a failed check; the flags carry the outcome.
    """
    p = generate(n, cache)
    deg_expected = expected_degree(n)
    r = _residue_class(p)
    target = deg_expected % 3
    z3 = {0: "Z[z^3]", 1: "z*Z[z^3]"}.get(r) if r is not None else None
    z3_ok = r == target and (r == 1) == (n % 3 == 1)
    return StructureReport(
        n=n,
        degree=p.degree,
        monic=p.is_monic(),
        degree_ok=p.degree == deg_expected,
        z3_structure=z3,
        z3_ok=z3_ok,
        lowest_coeff=p[1] if n % 3 == 1 else p[0],
        sign_at_zero=sign_at(p, 0),
    )


def lowest_coeff_by_recursion(n: int) -> int:
    """x_n from x_{k+1} x_{k-1} = c_k x_k^2 alone, x_0 = x_1 = 1.

    c_k is 2k+1, 4 or -(2k+1) for k = 0, 1, 2 (mod 3).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = 1, 1
    if n == 0:
        return prev
    for k in range(1, n):
        c = (2 * k + 1, 4, -(2 * k + 1))[k % 3]
        q, r = divmod(c * cur * cur, prev)
        if r:
            raise RecursionDivisionFailure(f"x_{k + 1}: {c}*x_{k}^2 not divisible by x_{k - 1}")
        prev, cur = cur, q
    return cur


_SIGN_MOD12 = (1, 0, 1, -1, 0, -1, -1, 0, -1, 1, 0, 1)


def sign_at_zero_predicted(n: int) -> int:
    """Tabulated sign of Q_n(0) by n mod 12."""
    return _SIGN_MOD12[n % 12]


def verify_wronskian_identities(n: int, cache: YVCache | None = None) -> tuple[bool, bool, bool]:
    """Check the first three Wronskian-type identities linking Q_{n-1}, Q_n, Q_{n+1}.

    Each is tested as an exact polynomial equality (difference is zero).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    qm, q, qp = (generate(k, cache) for k in (n - 1, n, n + 1))
    c = 2 * n + 1
    qm1, qm2, qm3 = derivative(qm, 1), derivative(qm, 2), derivative(qm, 3)
    qp1, qp2, qp3 = derivative(qp, 1), derivative(qp, 2), derivative(qp, 3)
    q1, q2 = derivative(q, 1), derivative(q, 2)
    first = qp1 * qm - qp * qm1 - (q * q).scale(c)
    second = qp2 * qm - qp * qm2 - (q * q1).scale(2 * c)
    third = qp3 * qm - qp * qm3 - (q1 * q1).scale(2 * c) - (q * q2).scale(c)
    return first.is_zero(), second.is_zero(), third.is_zero()


def coprimality_report(n: int, cache: YVCache | None = None) -> tuple[bool, bool, bool]:
    """(Q_n squarefree, Q_{n-1} and Q_n coprime, Q_{n-1} and Q_{n+1} coprime)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    qm, q, qp = (generate(k, cache) for k in (n - 1, n, n + 1))
    return (
        gcd_primitive(q, derivative(q)).degree == 0,
        gcd_primitive(qm, q).degree == 0,
        gcd_primitive(qm, qp).degree == 0,
    )

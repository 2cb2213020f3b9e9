"""Exact dense univariate polynomials over Z and reduced rational functions.

A polynomial is stored as a tuple of Python ints, lowest degree first, with
no trailing zeros.  Every operation is a pure function of its inputs; nothing
here touches floating point.

    >>> p = IntPoly([4, 0, 0, 1])
    >>> str(p)
    'z^3 + 4'
    >>> eval_at(p, Fraction(-2))
    Fraction(-4, 1)
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

__all__ = [
    "IntPoly",
    "RationalFunction",
    "NotDivisible",
    "DegreeZero",
    "ZERO",
    "ONE",
    "Z",
    "arith",
    "derivative",
    "exact_div",
    "divmod_pseudo",
    "content",
    "primitive_part",
    "gcd_primitive",
    "eval_at",
    "sign_at",
    "cauchy_bound",
    "rf_arith",
    "rf_derivative",
    "to_canonical",
    "from_canonical",
    "format_rational",
    "parse_rational",
]

RationalLike = Union[Fraction, int]


class NotDivisible(ArithmeticError):
    """Raised by exact_div when the divisor leaves a nonzero remainder."""


class DegreeZero(ValueError):
    """Raised when an operation needs a non-constant polynomial."""


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Immutable dense polynomial with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``z**i``.  The zero polynomial has an
    empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"integer coefficient expected, got {c!r}")
            cs.append(c)
        object.__setattr__(self, "coeffs", _strip(cs))

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPoly":
        # trusted constructor: coeffs already stripped ints
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls._raw((c,) if c else ())

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPoly":
        if not c:
            return ZERO
        return cls._raw((0,) * degree + (c,))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- operators -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else arith(self, other, "sub")

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else arith(other, self, "sub")

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        return NotImplemented if other is None else arith(self, other, "mul")

    __rmul__ = __mul__

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-c for c in self.coeffs))

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: int) -> "IntPoly":
        if not c:
            return ZERO
        return IntPoly._raw(tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return IntPoly._raw((0,) * k + self.coeffs)

    def deriv(self, order: int = 1) -> "IntPoly":
        return derivative(self, order)

    # -- cached root-location data --------------------------------------

    @cached_property
    def root_radius_log2(self) -> int | None:
        """Exponent e with every complex root strictly inside |z| < 2**e.

        Fujiwara's bound evaluated on bit lengths.  ``None`` for constants
        and for monomials (whose only root is 0).
        """
        cs = self.coeffs
        d = len(cs) - 1
        if d < 1:
            return None
        lb = abs(cs[-1]).bit_length()
        best = None
        for i in range(1, d + 1):
            a = cs[d - i]
            if a:
                # |a/lead| < 2**(bl(a) - lb + 1)
                e = -((lb - abs(a).bit_length() - 1) // i)  # ceil((bl-lb+1)/i)
                if best is None or e > best:
                    best = e
        if best is None:
            return None
        return best + 1


ZERO = IntPoly._raw(())
ONE = IntPoly._raw((1,))
Z = IntPoly._raw((0, 1))


def _coerce(x) -> IntPoly | None:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return IntPoly.constant(x)
    return None


# ---------------------------------------------------------------------------
# ring operations


def _convolve(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    # Schoolbook product.  Swap in Kronecker substitution or Karatsuba here
    # if degrees well beyond a few hundred ever matter.
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return out


def arith(p: IntPoly, q: IntPoly, kind: str) -> IntPoly:
    """Exact ``add``, ``sub`` or ``mul`` of two polynomials."""
    a, b = p.coeffs, q.coeffs
    if kind == "mul":
        if not a or not b:
            return ZERO
        return IntPoly._raw(tuple(_convolve(a, b)))
    if kind == "add":
        sign = 1
    elif kind == "sub":
        sign = -1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    if sign == 1:
        for i, c in enumerate(b):
            out[i] += c
    else:
        for i, c in enumerate(b):
            out[i] -= c
    return IntPoly._raw(_strip(out))


def derivative(p: IntPoly, order: int = 1) -> IntPoly:
    """Formal derivative of ``p`` iterated ``order`` times."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order == 0:
        return p
    cs = p.coeffs
    if len(cs) <= order:
        return ZERO
    out = []
    for i in range(order, len(cs)):
        f = 1
        for k in range(i - order + 1, i + 1):
            f *= k
        out.append(f * cs[i])
    return IntPoly._raw(tuple(out))


def exact_div(p: IntPoly, q: IntPoly) -> IntPoly:
    """Return ``r`` with ``q * r == p``; raise NotDivisible otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    dq = q.degree
    if p.degree < dq:
        raise NotDivisible(f"deg {p.degree} < deg {dq}")
    rem = list(p.coeffs)
    lq = q.coeffs[-1]
    qc = q.coeffs
    out = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq]
        if not c:
            continue
        t, r = divmod(c, lq)
        if r:
            raise NotDivisible(f"leading coefficient {c} not divisible by {lq}")
        out[k] = t
        for j in range(dq + 1):
            rem[k + j] -= t * qc[j]
    if any(rem[:dq]):
        raise NotDivisible("nonzero remainder")
    return IntPoly._raw(_strip(out))


def divmod_pseudo(a: IntPoly, b: IntPoly) -> tuple[IntPoly, int]:
    """Remainder of ``m * a`` by ``b`` for some nonzero integer ``m``.

    Returns ``(r, s)`` with ``deg r < deg b`` and ``s = sign(m)``.  The scale
    factor is kept as small as the leading coefficients allow, so that only
    the sign of ``m`` is meaningful to callers.
    """
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = b.degree
    bc = b.coeffs
    lb = bc[-1]
    r = list(a.coeffs)
    sign = 1
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if not c:
            continue
        g = math.gcd(c, lb)
        mul, t = lb // g, c // g
        if mul != 1:
            if mul == -1:
                r = [-x for x in r[: k + db + 1]]
            else:
                r = [mul * x for x in r[: k + db + 1]]
            if mul < 0:
                sign = -sign
        else:
            del r[k + db + 1 :]
        for j in range(db + 1):
            r[k + j] -= t * bc[j]
    return IntPoly._raw(_strip(r[:db] if len(r) > db else r)), sign


def content(p: IntPoly) -> int:
    """Positive gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in p.coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def primitive_part(p: IntPoly) -> IntPoly:
    """``p`` divided by its content, sign preserved."""
    g = content(p)
    if g <= 1:
        return p
    return IntPoly._raw(tuple(c // g for c in p.coeffs))


def _normalize_sign(p: IntPoly) -> IntPoly:
    return -p if p.lead < 0 else p


def gcd_primitive(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd of ``p`` and ``q`` with positive leading coefficient.

    Runs a pseudo-remainder sequence and removes the content of every
    remainder before continuing, which keeps coefficient growth linear in
    practice.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    a, b = primitive_part(p), primitive_part(q)
    if a.degree < b.degree:
        a, b = b, a
    while b:
        if b.degree == 0:
            return ONE
        r, _ = divmod_pseudo(a, b)
        a, b = b, primitive_part(r)
    return _normalize_sign(a)


# ---------------------------------------------------------------------------
# evaluation


def _homogeneous(p: IntPoly, num: int, den: int) -> int:
    # den**deg(p) * p(num/den), den > 0
    cs = p.coeffs
    acc = cs[-1]
    if den == 1:
        for c in reversed(cs[:-1]):
            acc = acc * num + c
        return acc
    dp = 1
    if den & (den - 1) == 0:
        k = den.bit_length() - 1
        shift = 0
        for c in reversed(cs[:-1]):
            shift += k
            acc = acc * num + (c << shift)
        return acc
    for c in reversed(cs[:-1]):
        dp *= den
        acc = acc * num + c * dp
    return acc


def eval_at(p: IntPoly, x: RationalLike) -> Fraction:
    """Exact value of ``p`` at the rational point ``x`` (Horner)."""
    x = Fraction(x)
    if p.is_zero():
        return Fraction(0)
    num, den = x.numerator, x.denominator
    return Fraction(_homogeneous(p, num, den), den ** p.degree)


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def sign_at(p: IntPoly, x: RationalLike) -> int:
    """Sign of ``p(x)`` in {-1, 0, 1}.

    Points outside the cached root radius are decided by the leading term
    alone; everything else goes through an integer-only homogeneous Horner.
    """
    cs = p.coeffs
    if not cs:
        return 0
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    if num == 0:
        return _sgn(cs[0])
    e = p.root_radius_log2
    d = len(cs) - 1
    if d == 0 or e is None or _abs_at_least_pow2(num, den, e):
        s = _sgn(cs[-1])
        return -s if (num < 0 and d % 2) else s
    return _sgn(_homogeneous(p, num, den))


def _abs_at_least_pow2(num: int, den: int, e: int) -> bool:
    # |num/den| >= 2**e
    if e >= 0:
        return abs(num) >= den << e
    return abs(num) << -e >= den


def cauchy_bound(p: IntPoly) -> Fraction:
    """``1 + max|a_i| / |a_d|``; every root satisfies |z| < bound."""
    if p.degree < 1:
        raise DegreeZero("cauchy_bound needs degree >= 1")
    m = max(abs(c) for c in p.coeffs[:-1])
    return 1 + Fraction(m, abs(p.lead))


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Reduced quotient ``num / den`` of integer polynomials.

    Normal form: ``gcd(num, den)`` is constant, the integer contents share no
    factor, and ``den`` has a positive leading coefficient.  Zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: IntPoly = ONE, *, reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_poly(cls, p: IntPoly) -> "RationalFunction":
        return cls(p, ONE, reduced=True)

    @classmethod
    def log_derivative(cls, p: IntPoly) -> "RationalFunction":
        """``p' / p``."""
        return cls(derivative(p), p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __add__(self, other):
        return rf_arith(self, _rf(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return rf_arith(self, _rf(other), "sub")

    def __rsub__(self, other):
        return rf_arith(_rf(other), self, "sub")

    def __mul__(self, other):
        return rf_arith(self, _rf(other), "mul")

    __rmul__ = __mul__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, reduced=True)

    def deriv(self) -> "RationalFunction":
        return rf_derivative(self)

    def __call__(self, x: RationalLike) -> Fraction:
        """Value at ``x``; ZeroDivisionError at a pole."""
        d = eval_at(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return eval_at(self.num, x) / d


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, IntPoly):
        return RationalFunction.from_poly(x)
    if isinstance(x, int):
        return RationalFunction.from_poly(IntPoly.constant(x))
    raise TypeError(f"cannot convert {type(x).__name__} to RationalFunction")


def _finish(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    # divide out the common integer content, make den lead positive
    if num.is_zero():
        return ZERO, ONE
    g = math.gcd(content(num), content(den))
    if den.lead < 0:
        g = -g
    if g != 1:
        num = IntPoly._raw(tuple(c // g for c in num.coeffs))
        den = IntPoly._raw(tuple(c // g for c in den.coeffs))
    return num, den


def _reduce(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if num.is_zero():
        return ZERO, ONE
    if den.degree > 0 and num.degree >= 0:
        g = gcd_primitive(num, den)
        if g.degree > 0:
            num, den = exact_div(num, g), exact_div(den, g)
    return _finish(num, den)


def _mul_reduced(a, b, c, d) -> tuple[IntPoly, IntPoly]:
    # (a/b) * (c/d) with both factors reduced
    g1 = gcd_primitive(a, d) if a and d.degree > 0 else ONE
    g2 = gcd_primitive(c, b) if c and b.degree > 0 else ONE
    if g1.degree > 0:
        a, d = exact_div(a, g1), exact_div(d, g1)
    if g2.degree > 0:
        c, b = exact_div(c, g2), exact_div(b, g2)
    return _finish(a * c, b * d)


def _add_reduced(a, b, c, d) -> tuple[IntPoly, IntPoly]:
    # a/b + c/d with both summands reduced (Henrici)
    if a.is_zero():
        return c, d
    if c.is_zero():
        return a, b
    g = gcd_primitive(b, d) if b.degree > 0 and d.degree > 0 else ONE
    if g.degree == 0:
        return _finish(a * d + c * b, b * d)
    b1, d1 = exact_div(b, g), exact_div(d, g)
    t = a * d1 + c * b1
    if t.is_zero():
        return ZERO, ONE
    g2 = gcd_primitive(t, g)
    if g2.degree > 0:
        t, g = exact_div(t, g2), exact_div(g, g2)
    return _finish(t, b1 * d1 * g)


def rf_arith(a: RationalFunction, b: RationalFunction, kind: str) -> RationalFunction:
    """Reduced ``add``, ``sub`` or ``mul`` of two rational functions."""
    if kind == "add":
        n, d = _add_reduced(a.num, a.den, b.num, b.den)
    elif kind == "sub":
        n, d = _add_reduced(a.num, a.den, -b.num, b.den)
    elif kind == "mul":
        if a.is_zero() or b.is_zero():
            return RationalFunction(ZERO, ONE, reduced=True)
        n, d = _mul_reduced(a.num, a.den, b.num, b.den)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return RationalFunction(n, d, reduced=True)


def rf_derivative(a: RationalFunction) -> RationalFunction:
    """Reduced quotient-rule derivative."""
    num, den = a.num, a.den
    if den.degree == 0:
        return RationalFunction(derivative(num), den, reduced=False)
    dden = derivative(den)
    # den = g*u, den' = g*v  =>  (num/den)' = (num'*u - num*v) / (g*u^2),
    # and the only possible common factor of the new numerator sits in g.
    g = gcd_primitive(den, dden)
    if g.degree > 0:
        u, v = exact_div(den, g), exact_div(dden, g)
    else:
        u, v, g = den, dden, ONE
    t = derivative(num) * u - num * v
    if t.is_zero():
        return RationalFunction(ZERO, ONE, reduced=True)
    # u and v may still share an integer factor with g through content
    gu = u * u
    if g.degree > 0:
        g2 = gcd_primitive(t, g)
        if g2.degree > 0:
            t, g = exact_div(t, g2), exact_div(g, g2)
    n, d = _finish(t, g * gu)
    return RationalFunction(n, d, reduced=True)


# ---------------------------------------------------------------------------
# text forms


def to_canonical(p: IntPoly) -> list[str]:
    """Decimal coefficient strings, lowest degree first."""
    return [str(c) for c in p.coeffs]


def from_canonical(data: Sequence[str]) -> IntPoly:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    out = []
    for s in data:
        if not isinstance(s, str):
            raise ValueError(f"coefficient must be a decimal string, got {s!r}")
        t = s.strip()
        if not t or not t.lstrip("-").isdigit():
            raise ValueError(f"malformed coefficient {s!r}")
        out.append(int(t))
    return IntPoly(out)


def format_poly(p: IntPoly, var: str = "z") -> str:
    """Human form, highest degree first: ``z^6 + 20z^3 - 80``."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import grid_sign_changes, lemma_increments, power_of_two_root_radius
from yvroots.exactpoly import IntPoly, cauchy_bound, eval_at, sign_at
from yvroots.rootcensus import (
    CommonRootDetected,
    IsolatingInterval,
    NotSquarefree,
    RootCensus,
    build_sturm,
    census,
    count_in,
    isolate,
    predicted_counts,
    refine,
    roots_of,
    verify_count_theorems,
    verify_interlacing,
)
from yvroots.yvgen import YVCache, generate, sign_at_zero_predicted

Q2 = IntPoly([4, 0, 0, 1])
Q3 = IntPoly([-80, 0, 0, 20, 0, 0, 1])
Z2M1 = IntPoly([-1, 0, 1])
CBRT4 = 4 ** (1 / 3)


def real_cbrt(u):
    return math.copysign(abs(u) ** (1 / 3), u)


# -- Sturm chains -------------------------------------------------------------


def test_chain_textbook():
    ch = build_sturm(Z2M1)
    assert ch.polys == (Z2M1, IntPoly([0, 1]), IntPoly([1]))


def test_chain_q2():
    ch = build_sturm(Q2)
    assert len(ch) == 3
    # -rem(z^3 + 4, 3z^2) = -4
    assert ch.polys[-1].degree == 0 and ch.polys[-1].lead < 0
    assert count_in(ch, -5, 5) == 1


def test_chain_not_squarefree():
    with pytest.raises(NotSquarefree):
        build_sturm(IntPoly([0, 0, 1]))
    with pytest.raises(NotSquarefree):
        isolate(IntPoly([0, 0, 1]))
    with pytest.raises(NotSquarefree):
        build_sturm(IntPoly([1, 2, 1]))


def test_chain_of_constant():
    assert count_in(build_sturm(IntPoly([5])), -1, 1) == 0
    assert isolate(IntPoly([5])) == []


@pytest.mark.parametrize(
    "p, lo, hi, k",
    [(Z2M1, -2, 2, 2), (Q2, -5, 0, 1), (Q2, 0, 5, 0), (Z2M1, -1, 1, 1), (Z2M1, 1, 2, 0)],
)
def test_count_in(p, lo, hi, k):
    assert count_in(build_sturm(p), lo, hi) == k


def test_count_in_rejects_empty():
    with pytest.raises(ValueError):
        count_in(build_sturm(Z2M1), 1, 1)


# -- isolation and refinement ---------------------------------------------------


def test_isolate_z2m1():
    ivs = isolate(Z2M1)
    assert len(ivs) == 2
    assert -1 in ivs[0] and 1 in ivs[1]


def test_isolate_q2():
    (iv,) = isolate(Q2)
    assert iv.lo < -CBRT4 <= iv.hi
    # hand sign change: Q_2(-2) = -4 < 0 < 3 = Q_2(-1)
    assert eval_at(Q2, -2) == -4 and eval_at(Q2, -1) == 3


def test_isolate_q3():
    # u = z^3 solves u^2 + 20u - 80 = 0
    roots = sorted(real_cbrt(-10 + s * math.sqrt(180)) for s in (-1, 1))
    assert roots[0] == pytest.approx(-2.861, abs=1e-3)
    assert roots[1] == pytest.approx(1.506, abs=1e-3)
    ivs = [refine(Q3, iv, Fraction(1, 2**20)) for iv in isolate(Q3)]
    assert len(ivs) == 2
    for iv, r in zip(ivs, roots):
        assert float(iv.lo) - 1e-9 < r < float(iv.hi) + 1e-9


def test_isolate_q4_zero_root():
    q4 = IntPoly([0, 11200, 0, 0, 0, 0, 0, 60, 0, 0, 1])
    ivs = isolate(q4)
    assert len(ivs) == 2
    assert 0 in ivs[1]
    assert ivs[0].hi <= ivs[1].lo
    # the nonic factor has one real root, with z^3 the real root of u^3 + 60u^2 + 11200
    import sympy

    u = [float(r) for r in sympy.Poly([1, 60, 0, 11200], sympy.Symbol("u")).real_roots()]
    assert len(u) == 1 and u[0] == pytest.approx(-62.84, abs=1e-2)
    iv = refine(q4, ivs[0], Fraction(1, 2**30))
    assert float(iv.lo) < real_cbrt(u[0]) < float(iv.hi) + 1e-9


def test_single_root_on_either_side_of_zero():
    # the initial enclosure isolates a lone root without bisecting at 0
    for p in (IntPoly([0, 3, 1]), IntPoly([0, -3, 1])):
        ivs = isolate(p)
        assert len(ivs) == 2
        assert ivs[0].hi <= ivs[1].lo


def test_refine_q2():
    (iv,) = isolate(Q2)
    r = refine(Q2, iv, Fraction(1, 2**20))
    assert r.width <= Fraction(1, 2**20)
    assert float(r.lo) <= -1.58740105 <= float(r.hi)
    assert sign_at(Q2, r.lo) * sign_at(Q2, r.hi) < 0


def test_refine_hits_rational_root():
    ivs = isolate(Z2M1)
    r = refine(Z2M1, ivs[1], Fraction(1, 2**10))
    assert 1 in r and r.width <= Fraction(1, 2**10)


def test_refine_noop_when_already_narrow():
    (iv,) = isolate(Q2)
    assert refine(Q2, iv, iv.width) == iv
    assert refine(Q2, iv, iv.width * 4) == iv


def test_interval_validation():
    with pytest.raises(ValueError):
        IsolatingInterval(1, 1)
    iv = IsolatingInterval(Fraction(-1, 2), 3)
    assert iv.to_json() == ["-1/2", "3/1"]
    assert 3 in iv and Fraction(-1, 2) not in iv


# random squarefree polynomials with known rational roots (b z - a)

roots_st = st.lists(
    st.tuples(st.integers(-40, 40), st.integers(1, 6)).map(lambda t: Fraction(t[0], t[1])),
    min_size=1,
    max_size=7,
    unique=True,
)


def poly_from_roots(rs, extra=IntPoly([1])):
    p = extra
    for r in rs:
        p = p * IntPoly([-r.numerator, r.denominator])
    return p


@given(roots_st, st.booleans())
@settings(max_examples=60, deadline=None)
def test_isolate_known_roots(rs, with_complex_pair):
    extra = IntPoly([3, 1, 1]) if with_complex_pair else IntPoly([1])
    p = poly_from_roots(rs, extra)
    ivs = isolate(p)
    rs = sorted(rs)
    assert len(ivs) == len(rs)
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi <= b.lo
    for iv, r in zip(ivs, rs):
        assert r in iv
    ch = build_sturm(p)
    B = cauchy_bound(p)
    assert count_in(ch, -B, B) == len(rs)
    for iv, r in zip(ivs, rs):
        t = refine(p, iv, Fraction(1, 2**16))
        assert r in t and t.width <= Fraction(1, 2**16)


@pytest.mark.parametrize("n", range(2, 15))
def test_isolating_endpoints_change_sign(n, cache):
    # nonzero roots of Q_n are irrational, so refined endpoints are never roots
    p = generate(n, cache)
    for iv in roots_of(n, cache):
        if 0 in iv and p[0] == 0:
            continue
        t = refine(p, iv, iv.width / 2)
        assert sign_at(p, t.lo) * sign_at(p, t.hi) < 0


# -- census ---------------------------------------------------------------------


def test_census_n20(cache):
    c = census(20, cache)
    assert (c.total, c.negative, c.positive, c.has_zero_root) == (10, 7, 3, False)


def test_census_n21(cache):
    c = census(21, cache)
    assert (c.total, c.negative, c.positive) == (11, 7, 4)


def test_census_n1(cache):
    c = census(1, cache)
    assert (c.total, c.negative, c.positive, c.has_zero_root) == (1, 0, 0, True)
    assert 0 in c.min_root and c.min_root == c.max_root


def test_census_n0(cache):
    c = census(0, cache)
    assert c.total == 0 and c.min_root is None
    assert c.to_json() == {"n": 0, "total": 0, "negative": 0, "positive": 0,
                           "zero": False, "min": None, "max": None}


def test_census_json_schema(cache):
    d = census(3, cache).to_json()
    assert set(d) == {"n", "total", "negative", "positive", "zero", "min", "max"}
    lo, hi = (Fraction(s) for s in d["min"])
    assert lo < -2.8609 < hi
    assert all("/" in s for s in d["min"] + d["max"])


def test_census_rejects_inconsistent_counts():
    with pytest.raises(ValueError):
        RootCensus(n=0, total=2, negative=1, positive=0, has_zero_root=False, min_root=None, max_root=None)


@pytest.mark.parametrize("n, flags", [(5, (True, True)), (0, (True, True)), (2, (True, True))])
def test_count_theorem_examples(n, flags, cache):
    assert verify_count_theorems(n, cache) == flags


def test_predicted_counts():
    assert predicted_counts(5) == (3, 2, 1)
    assert predicted_counts(20) == (10, 7, 3)
    assert predicted_counts(21) == (11, 7, 4)
    assert predicted_counts(0) == (0, 0, 0)


def test_census_q2_root(cache):
    c = census(2, cache)
    assert c.min_root == c.max_root
    assert c.min_root.lo < -CBRT4 <= c.min_root.hi


@pytest.mark.parametrize("n", range(0, 9))
def test_grid_oracle_small(n, cache):
    p = generate(n, cache)
    assert grid_sign_changes(list(p.coeffs)) == census(n, cache).total


def test_grid_oracle_radius_inside_cauchy(cache):
    for n in range(1, 9):
        p = generate(n, cache)
        assert power_of_two_root_radius(list(p.coeffs)) <= cauchy_bound(p) + 1


@pytest.mark.parametrize("n", range(2, 25))
def test_lemma_increments(n, cache):
    below, above = census(n - 1, cache), census(n + 1, cache)
    s_p, s_q = sign_at_zero_predicted(n - 1), sign_at_zero_predicted(n + 1)
    inc = lemma_increments(s_p, s_q, s_p == 0, s_q == 0)
    assert (above.negative - below.negative, above.positive - below.positive) == inc
    # the same increments, collapsed to residues of n
    assert inc[0] == (0 if n % 6 in (0, 3) else 1)
    assert inc[1] == (1 if n % 3 == 2 else 0)


# -- interlacing ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 20])
def test_interlacing_examples(n, cache):
    assert verify_interlacing(n, cache) == (True, True)


def test_interlacing_n3_by_roots(cache):
    w = Fraction(1, 2**12)
    (q2,) = [refine(cache[2], iv, w) for iv in roots_of(2, cache)]
    q4 = [refine(cache[4], iv, w) for iv in roots_of(4, cache)]
    # Q_4 roots: about -3.973 and 0; Q_2 root: -cbrt(4)
    assert q4[0].hi <= q2.lo and q2.hi <= q4[1].lo


def test_interlacing_detects_shared_root():
    c = YVCache()
    generate(3, c)
    # pretend Q_2 and Q_0 share a root
    c.entries[0] = IntPoly([4, 0, 0, 1])
    with pytest.raises(CommonRootDetected):
        verify_interlacing(1, c)


def test_interlacing_detects_non_alternation():
    c = YVCache()
    generate(4, c)
    # two roots in a row from the same polynomial
    c.entries[1] = IntPoly([-1, 0, 1]) * IntPoly([-3, 1]) * IntPoly([-5, 1]) * IntPoly([-7, 1])
    alt, _ = verify_interlacing(2, c)
    assert not alt


def test_grid_oracle_self_check():
    # roots -1, 0, 1/2, 3 and a complex pair
    p = IntPoly([0, 1]) * IntPoly([1, 1]) * IntPoly([-1, 2]) * IntPoly([-3, 1])
    assert grid_sign_changes(list(p.coeffs)) == 4
    assert grid_sign_changes(list((p * IntPoly([1, 0, 1])).coeffs)) == 4
    assert grid_sign_changes([1, 0, 1]) == 0
    # Fujiwara gives |z| <= 2 here; the radius must be strict
    assert power_of_two_root_radius([-1, 0, 1]) == 4

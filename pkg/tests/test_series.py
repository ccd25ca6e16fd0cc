from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fglab.errors import NonNilpotentSubstitution
from fglab.scalars import QQ, ZZ
from fglab.series import INF, LaurentSeries, TruncSeries, VarTable, laurent_invert, residue, reversion

XY = VarTable.of("x", "y")
T = VarTable.of("t")


def var(name, vt, trunc, ring=ZZ):
    return TruncSeries.var(ring, vt, name, trunc)


def uni(coeffs, name="x", trunc=None, ring=ZZ):
    return TruncSeries.univariate(ring, coeffs, name, trunc)


def test_product_examples():
    x, y = var("x", XY, 2), var("y", XY, 2)
    assert ((x + y) * (x - y)).truncate(2) == (x * x - y * y).truncate(2)
    assert ((x + y).mul_trunc(x - y, 2)).terms == {(2, 0): 1, (0, 2): -1}
    x1 = var("x", XY, 1)
    assert (1 + x1) * (1 + x1) == (1 + 2 * x1)
    assert x1.mul_trunc(var("y", XY, 1), 1).is_zero()


def test_substitution_examples():
    x, y = var("x", XY, 2), var("y", XY, 2)
    f = TruncSeries(ZZ, XY, 2, {(2, 0): 1})
    assert f.substitute({"x": x + y}) == (x * x + 2 * x * y + y * y).truncate(2)
    assert TruncSeries.var(ZZ, VarTable.of("x"), "x").substitute({"x": TruncSeries.zero(ZZ, VarTable.of("x"))}).is_zero()
    t = var("t", T, 3)
    g = uni([1, 1, 1], trunc=INF).substitute({"x": t + t * t}, T)
    assert g.truncate(3).terms == {(0,): 1, (1,): 1, (2,): 2, (3,): 2}


def test_substitution_needs_nilpotent_value():
    t = var("t", T, 3)
    with pytest.raises(NonNilpotentSubstitution):
        uni([0, 1, 1], trunc=3).substitute({"x": 1 + t}, T)


def test_reversion_examples():
    assert reversion(uni([0, 1, 1], trunc=4)).terms == {(1,): 1, (2,): -1, (3,): 2, (4,): -5}
    assert reversion(uni([0, 1], trunc=4)).terms == {(1,): 1}
    assert reversion(uni([0, 2], trunc=3, ring=QQ)).terms == {(1,): Fraction(1, 2)}


def _sympy_reversion(coeffs, n):
    x, y = sympy.symbols("x y")
    # Lagrange inversion: [y^k] g^{-1}(y) = (1/k) [x^{k-1}] (x/g(x))^k
    g = sum(sympy.Rational(c) * x ** k for k, c in enumerate(coeffs))
    out = {}
    for k in range(1, n + 1):
        h = sympy.series((x / g) ** k, x, 0, k).removeO()
        c = sympy.Poly(h, x).coeff_monomial(x ** (k - 1)) / k
        if c:
            out[k] = Fraction(int(c.p), int(c.q))
    return out


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5))
def test_reversion_matches_lagrange_inversion(tail):
    coeffs = [0, 1] + tail
    n = len(coeffs) - 1
    g = uni(coeffs, trunc=n, ring=QQ)
    r = reversion(g)
    assert {e[0]: c for e, c in r.terms.items()} == _sympy_reversion(coeffs, n)
    # composing both ways gives x
    assert g.compose(r).terms == {(1,): 1}
    assert r.compose(g).terms == {(1,): 1}


series_coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


@settings(max_examples=50, deadline=None)
@given(series_coeffs, series_coeffs, series_coeffs)
def test_ring_axioms(a, b, c):
    N = 5
    A, B, C = (uni(v, trunc=N) for v in (a, b, c))
    assert (A * B).truncate(N) == (B * A).truncate(N)
    assert ((A * B) * C).truncate(N) == (A * (B * C)).truncate(N)
    assert (A * (B + C)).truncate(N) == (A * B + A * C).truncate(N)
    assert A + B - B == A


@settings(max_examples=40, deadline=None)
@given(series_coeffs, series_coeffs)
def test_product_matches_sympy(a, b):
    N = 5
    x = sympy.symbols("x")
    A, B = uni(a, trunc=N), uni(b, trunc=N)
    pa = sum(c * x ** k for k, c in enumerate(a))
    pb = sum(c * x ** k for k, c in enumerate(b))
    ref = sympy.Poly(sympy.expand(pa * pb), x)
    want = {k: int(ref.coeff_monomial(x ** k)) for k in range(N + 1)}
    got = (A * B).truncate(N)
    assert {k: got[(k,)] for k in range(N + 1)} == want


def test_laurent_inverse_examples():
    body = VarTable.of()
    t = LaurentSeries.build(ZZ, "t", body, 4, {(1,): 1})
    assert laurent_invert(t).terms == {(-1,): 1}
    u = LaurentSeries.build(ZZ, "t", body, 4, {(1,): 1, (2,): 1})
    inv = laurent_invert(u)
    # geometric series: 1/(t(1+t)) = t^-1 - 1 + t - t^2 + ...
    for k in range(-1, inv.trunc + 1):
        assert inv[(k,)] == (-1) ** (k + 1)
    lam_body = VarTable.of("l", caps={"l": 1})
    v = LaurentSeries.build(ZZ, "t", lam_body, 4, {(1, 0): 1, (0, 1): 1})
    assert laurent_invert(v).terms == {(-1, 0): 1, (-2, 1): -1}


def test_residue_examples():
    body = VarTable.of()
    assert residue(LaurentSeries.build(ZZ, "t", body, 3, {(-1,): 1})).terms == {(): 1}
    assert residue(LaurentSeries.build(ZZ, "t", body, 3, {(0,): 1, (1,): 1})).is_zero()
    assert residue(LaurentSeries.build(ZZ, "t", body, 3, {(-2,): 1, (-1,): 1})).terms == {(): 1}


def test_json_round_trip():
    x, y = var("x", XY, 4, QQ), var("y", XY, 4, QQ)
    s = x * y + x.scale(Fraction(-3, 7)) + y ** 3
    back = TruncSeries.from_json(s.to_json())
    assert back == s and back.trunc == s.trunc

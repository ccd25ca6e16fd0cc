import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fglab.cobordism import ProjProductRing
from fglab.errors import BadRepresentatives, TruncationError
from fglab.fgl import formal_inverse
from fglab.operations import (
    check_reps,
    chp_gamma,
    chp_specialize,
    default_reps,
    sq_agrees_with_st,
    steenrod_gamma,
    steenrod_st,
    symmetric_phi,
    tom_dieck_sq,
)
from fglab.operations.steenrod import XT, _D_series, _data
from fglab.series import LaurentSeries, TruncSeries


def test_representatives():
    assert default_reps(2) == (-1,)
    assert default_reps(3) == (1, -1)
    assert default_reps(5, 2) == (2, 4, 3, 1)
    with pytest.raises(BadRepresentatives):
        check_reps(3, (1, 1))
    with pytest.raises(BadRepresentatives):
        check_reps(4, (1, 3, 5))
    with pytest.raises(BadRepresentatives):
        default_reps(7)


def _direct_gamma(ctx, reps):
    """x * prod_j F(x, [i_j](t)) expanded directly in (x, t)."""
    F = ctx.F_U
    R = F.ring
    T = ctx.trunc + len(reps) + 1
    x = TruncSeries.var(R, XT, "x", T)
    t = TruncSeries.var(R, XT, "t", T)
    from fglab.fgl import n_series

    out = x
    for i in reps:
        it = n_series(F, i).substitute({"x": t}, XT)
        out = out * F.F.substitute({"x": x, "y": it}, XT)
    return out


@pytest.mark.parametrize("p,reps", [(2, (-1,)), (3, (1, -1))])
def test_gamma_matches_direct_expansion(ctx3, p, reps):
    g = steenrod_gamma(ctx3, p, reps)
    ref = _direct_gamma(ctx3, reps)
    # the homogeneous series is complete in (x, t)-degree p + N, matching b-weight N
    R, N = ctx3.ring, ctx3.trunc

    def low(c):
        return {b: v for b, v in c.items() if R.deg(b) <= N}

    for e in set(g.terms) | set(ref.terms):
        if sum(e) <= p + N:
            assert low(g[e]) == low(ref[e]), e


def test_p2_gamma_uses_formal_inverse(ctx3):
    # for p = 2 the single factor is x +_F chi(t)
    F = ctx3.F_U
    chi = formal_inverse(F)
    x = TruncSeries.var(F.ring, XT, "x", 4)
    t = TruncSeries.var(F.ring, XT, "t", 4)
    ref = x * F.F.substitute({"x": x, "y": chi.substitute({"x": t}, XT)}, XT)
    g = steenrod_gamma(ctx3, 2)
    for e in ref.terms:
        if sum(e) <= 2:
            assert {b: v for b, v in ref[e].items() if F.ring.deg(b) <= 3} == g[e]


@pytest.mark.parametrize("p,reps", [(2, (-1,)), (3, (1, -1)), (5, (2, 4, 3, 1)), (5, (1, 2, 3, 4))])
def test_chp_congruence(ctx3, p, reps):
    assert chp_specialize(steenrod_gamma(ctx3, p, reps), p) == chp_gamma(p)


def test_st_of_one(ctx3):
    R = ProjProductRing.make(ctx3.F_U, [2])
    st_ = steenrod_st(ctx3, 2, None, R.one())
    assert st_.series.terms == {(0, 0): st_.series.ring.one()}
    assert symmetric_phi(ctx3, 2, None, R.one()).series.is_zero()
    sq = tom_dieck_sq(ctx3, 2, None, R.one())
    assert sq.integral and sq.series.terms == st_.series.terms


def test_st_needs_finite_factors(ctx3):
    R = ProjProductRing.make(ctx3.F_U, [None, None], trunc=3)
    with pytest.raises(TruncationError):
        steenrod_st(ctx3, 2, None, R.z(0))


def test_phi_on_p1_class(ctx3):
    R = ProjProductRing.make(ctx3.F_U, [])
    e = R.element({(): ctx3.pn[1]})
    st_ = steenrod_st(ctx3, 2, None, e)
    phi = symmetric_phi(ctx3, 2, None, e)
    assert phi.series.min_exp() is not None and max(phi.series.exponents()) < 0
    d = _data(ctx3, 2, None)
    D = _D_series(d, st_.series.vars, ctx3.trunc)
    rest = st_.series - D * phi.series
    assert rest.negative_part().is_zero()
    # uniqueness: any change of Phi reappears in negative degree
    for (l, *J), c in phi.series.terms.items():
        bumped = dict(phi.series.terms)
        bumped[(l, *J)] = d.ring.add(c, d.ring.one())
        other = LaurentSeries._raw(d.ring, phi.series.vars, phi.series.trunc, bumped)
        assert not (st_.series - D * other).negative_part().is_zero()


def test_sq_mod_two_is_total_square(ctx3):
    R = ProjProductRing.make(ctx3.F_U, [2])
    sq = tom_dieck_sq(ctx3, 2, None, R.z(0))
    red = chp_specialize(sq.series, 2)
    # t z + z^2, with t recording the cohomological degree
    assert red.terms == {(1, 1): 1, (0, 2): 1}


def _basis_sample(ctx, n):
    R = ProjProductRing.make(ctx.F_U, [n])
    for w in range(ctx.trunc + 1):
        for a in ctx.basis(w):
            for i in range(n + 1):
                yield R.element({(i,): a})


@pytest.mark.parametrize("p", [2, 3])
def test_symmetric_division_small(ctx3, p):
    for n in range(3):
        for e in _basis_sample(ctx3, n):
            phi = symmetric_phi(ctx3, p, None, e)
            assert phi.series.is_zero() or max(phi.series.exponents()) < 0
            sq = tom_dieck_sq(ctx3, p, None, e)
            assert sq.integral
            assert sq_agrees_with_st(ctx3, p, None, e)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.sampled_from([2, 3]))
def test_st_minus_d_phi_has_no_negative_part(coeffs, p):
    from fglab.lazard import build_ctx

    ctx = _ctx_cache.setdefault(3, build_ctx(3))
    R = ProjProductRing.make(ctx.F_U, [2, 1])
    e = R.element({(1, 0): coeffs[0], (1, 1): coeffs[1], (2, 0): ctx.ring.scale_int(ctx.a(1, 1), coeffs[2])})
    st_ = steenrod_st(ctx, p, None, e)
    phi = symmetric_phi(ctx, p, None, e)
    D = _D_series(_data(ctx, p, None), st_.series.vars, ctx.trunc)
    assert (st_.series - D * phi.series).negative_part().is_zero()


_ctx_cache: dict = {}

from fractions import Fraction
from math import factorial

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition

from fglab.errors import NotInLattice
from fglab.fgl import check_fgl, invariant_form, multiplicative_fgl, n_series
from fglab.lazard import (
    LazardCtx,
    apply_phi,
    build_ctx,
    evaluate_a_combination,
    express_in_a_monomials,
    lazard_morphism,
    lazard_rank,
    member,
)
from fglab.scalars import QQ, RingMap, specialize_to_zero


def _sympy_universal(N):
    """beta(beta^-1 x + beta^-1 y) with sympy, beta = x + b1 x^2 + ... + bN x^(N+1)."""
    x, y, u = sympy.symbols("x y u")
    bs = sympy.symbols(f"b1:{N + 1}")
    beta = u + sum(b * u ** (k + 2) for k, b in enumerate(bs))
    # invert beta by fixed-point iteration: v = x - sum b_k v^(k+1)
    v = x
    for _ in range(N + 1):
        v = sympy.expand(x - sum(b * v ** (k + 2) for k, b in enumerate(bs)))
        v = _trunc(v, [x], N + 1)
    vy = v.subs(x, y)
    s = v + vy
    F = sympy.expand(beta.subs(u, s))
    return _trunc(F, [x, y], N + 1), bs, (x, y)


def _trunc(expr, gens, N):
    p = sympy.Poly(sympy.expand(expr), *gens)
    return sum(c * sympy.prod(g ** e for g, e in zip(gens, m)) for m, c in p.terms() if sum(m) <= N)


@pytest.fixture(scope="module")
def sym3():
    return _sympy_universal(3)


def _to_sympy(ctx, raw, bs):
    return sum(c * sympy.prod(b ** e for b, e in zip(bs, exp)) for exp, c in raw.items())


def test_universal_law_matches_sympy(ctx3, sym3):
    F, bs, (x, y) = sym3
    P = sympy.Poly(F, x, y)
    for (i, j), c in ctx3.F_U.F.terms.items():
        assert sympy.expand(_to_sympy(ctx3, c, bs) - P.coeff_monomial(x ** i * y ** j)) == 0
    assert len([m for m in P.monoms() if P.coeff_monomial(m) != 0]) == len(ctx3.F_U.F.terms)


def test_small_values(ctx2):
    R = ctx2.ring
    b1 = R.gen("b1")
    assert R.eq(ctx2.a(1, 1), R.scale_int(b1, 2))
    assert R.eq(ctx2.a(1, 2), ctx2.a(2, 1))
    assert R.eq(ctx2.pn[1], R.scale_int(b1, -2))
    assert ctx2.pn[0] == R.one()


def test_universal_law_is_an_fgl(ctx4):
    assert check_fgl(ctx4.F_U).ok


def test_invariant_form_gives_projective_classes(ctx4):
    w = invariant_form(ctx4.F_U)
    for n in range(ctx4.trunc + 1):
        assert ctx4.ring.eq(w[(n,)], ctx4.pn[n])


def test_specialization_to_multiplicative_law(ctx5):
    # b_k -> (-1)^k/(k+1)! turns beta into 1 - exp(-x), whose conjugate of + is x + y - xy
    R = ctx5.ring
    imgs = tuple((f"b{k}", Fraction((-1) ** k, factorial(k + 1))) for k in range(1, ctx5.trunc + 1))
    f = RingMap(R, QQ, imgs)
    G = ctx5.F_U.change_ring(f)
    M = multiplicative_fgl(QQ, ctx5.trunc)
    assert G.F.truncate(ctx5.trunc) == M.F.truncate(ctx5.trunc)


@pytest.fixture(scope="module")
def ctx6():
    return build_ctx(6)


@pytest.mark.parametrize("n", range(0, 7))
def test_ranks_are_partition_numbers(ctx6, n):
    assert lazard_rank(ctx6, n) == int(partition(n))


def test_rank_against_rational_span(ctx4):
    # the Q-span of the degree-n a-monomials has the same dimension as the HNF lattice
    for n in range(ctx4.trunc + 1):
        rows = [ctx4.vector(ctx4.a_monomial_poly(m), n) for m in ctx4.a_monomials(n)]
        r = sympy.Matrix(rows).rank() if rows else 0
        if n == 0:
            r = 1
        assert r == lazard_rank(ctx4, n)


def test_member_examples(ctx2):
    R = ctx2.ring
    b1 = R.gen("b1")
    assert member(ctx2, R.scale_int(b1, 2))
    assert not member(ctx2, b1)
    assert member(ctx2, b1, [2])
    a11 = ctx2.a(1, 1)
    assert member(ctx2, R.add(R.mul(a11, a11), R.scale_int(R.mul(a11, a11), 3)))


def test_express_in_a_monomials(ctx2):
    R = ctx2.ring
    b1 = R.gen("b1")
    assert express_in_a_monomials(ctx2, R.scale_int(b1, 2)) == {((1, 1),): 1}
    assert express_in_a_monomials(ctx2, R.zero()) == {}
    assert express_in_a_monomials(ctx2, ctx2.pn[1]) == {((1, 1),): -1}
    with pytest.raises(NotInLattice):
        express_in_a_monomials(ctx2, b1)


def test_expression_evaluates_back(ctx4):
    for n in range(1, 5):
        for x in ctx4.basis(n):
            combo = express_in_a_monomials(ctx4, x)
            assert ctx4.ring.eq(evaluate_a_combination(ctx4, combo), x)


def test_apply_phi_adams(ctx2):
    # [k] is an endomorphism of F_U, so the conjugated law is F_U again and phi fixes [P^1]
    F = ctx2.F_U
    for k in (2, 3):
        m = lazard_morphism(ctx2, F, n_series(F, k), inverted=[k])
        one = apply_phi(ctx2, m, ctx2.ring.one())
        assert one.ring.eq(one.value, one.ring.one())
        v = apply_phi(ctx2, m, ctx2.pn[1])
        assert v.ring.eq(v.value, v.ring.coerce(ctx2.pn[1], ctx2.ring))


def test_apply_phi_ln_augmentation(ctx3):
    from fglab.operations import ln_morphism

    m = ln_morphism(ctx3)
    T = m.target.ring
    aug = specialize_to_zero(T, [g for g in T.gens if g.startswith("B")])
    for n in range(ctx3.trunc + 1):
        v = apply_phi(ctx3, m, ctx3.pn[n])
        back = aug(v.value)
        assert aug.target.eq(back, aug.target.coerce(ctx3.pn[n], ctx3.ring))


def test_context_json_round_trip(ctx3):
    back = LazardCtx.from_json(ctx3.to_json())
    assert back.trunc == ctx3.trunc
    assert back.F_U.F == ctx3.F_U.F
    for n in range(4):
        assert back.lattice(n).to_json() == ctx3.lattice(n).to_json()

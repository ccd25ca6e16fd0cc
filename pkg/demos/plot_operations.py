"""
Operations on cobordism of projective spaces
============================================

Landweber-Novikov, Adams and Steenrod operations side by side.
"""

from fglab import ProjProductRing, build_ctx, multiplicative_fgl
from fglab.operations import adams, ln_component, steenrod_st, symmetric_phi, tom_dieck_sq
from fglab.scalars import ZZ

# Adams operations on K_0 of P^inf x P^inf
M = multiplicative_fgl(ZZ, 6)
R = ProjProductRing.make(M, [None, None], trunc=6)
z = R.z(0)
for k in range(1, 4):
    print(f"Psi_{k}(z) =", adams(M, k, z))

# Landweber-Novikov: S^(1) of the point class on P^2
ctx = build_ctx(4)
P2 = ProjProductRing.make(ctx.F_U, [2])
h = P2.z(0)
print("S^(1)(z) on P^2 =", ln_component(ctx, (1,), h))
print("S^(2)(z) on P^2 =", ln_component(ctx, (2,), h))

# total Steenrod operation at p = 2 and its symmetric part
c3 = build_ctx(3)
P = ProjProductRing.make(c3.F_U, [2])
e = P.z(0)
print("St(z) =", steenrod_st(c3, 2, (-1,), e))
print("Phi(z) =", symmetric_phi(c3, 2, (-1,), e))
sq = tom_dieck_sq(c3, 2, (-1,), e)
print("Sq(z) =", sq, " integral:", sq.integral)

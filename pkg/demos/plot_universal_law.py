"""
The universal formal group law and its Lazard lattice
=====================================================

Twist the additive law by beta(x) = x + b1 x^2 + ... and look at what comes out.
"""

from fglab import build_ctx, check_fgl, logarithm
from fglab.lazard import lazard_rank, member

# build the universal law to total degree 5
ctx = build_ctx(5)
F = ctx.F_U
print("F_U up to x^2 y:", F.F.truncate(3))
print(check_fgl(F))

# coefficients a_ij live in Z[b1, b2, ...]
print("a11 =", ctx.ring.fmt(ctx.a(1, 1)))
print("a12 =", ctx.ring.fmt(ctx.a(1, 2)))

# the classes of projective spaces are the coefficients of the invariant form
for n in range(4):
    print(f"[P^{n}] =", ctx.ring.fmt(ctx.pn[n]))

# lattice ranks count partitions
print("ranks:", [lazard_rank(ctx, n) for n in range(6)])

# b1 alone is not in the Lazard ring, but 2 b1 is
b1 = ctx.ring.gen("b1")
print("b1 in L:", member(ctx, b1), " 2 b1 in L:", member(ctx, ctx.ring.scale_int(b1, 2)))

# here the logarithm is the compositional inverse of beta
print("log_F =", logarithm(F))

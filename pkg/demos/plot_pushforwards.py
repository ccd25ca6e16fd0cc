"""
Push-forwards along projective bundles
======================================

Residues compute push-forwards, and products of projective spaces carry the ring.
"""

from fglab import ProjProductRing, TruncSeries, VarTable, additive_fgl, build_ctx, pushforward_projbundle
from fglab.cobordism import blowup_correction
from fglab.scalars import ZZ
from fglab.series import INF

ctx = build_ctx(4)
F = ctx.F_U
zero = TruncSeries.zero(F.ring, VarTable.of(), INF)

# a trivial bundle of rank n+1 over a point gives the class of P^n
for n in range(4):
    val = pushforward_projbundle(F, None, [zero] * (n + 1))
    print(f"push of 1 from P^{n}:", val)

# the additive law forgets everything except degree
A = additive_fgl(ZZ, 6)
t = TruncSeries.var(ZZ, VarTable.of("t"), "t")
print("additive, f = t^3 on P^3:", pushforward_projbundle(A, t ** 3, [TruncSeries.zero(ZZ, VarTable.of(), INF)] * 4))

# products of projective spaces: z is the hyperplane class
R = ProjProductRing.make(F, [1, 2])
z1, z2 = R.z(0), R.z(1)
print("z1 * z2^2 =", z1 * z2 ** 2)
print("[P^1] * [P^1] =", pushforward_projbundle(F, None, [zero, zero]) ** 2)

# the blow-up correction for two trivial summands
print("blow-up correction:", blowup_correction(F, [zero, zero]))

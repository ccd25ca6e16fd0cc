"""Exact formal group law calculus for algebraic cobordism of products of projective spaces."""

__version__ = "0.1.0"

from .scalars import QQ, ZZ, ModP, PolyRing, RingMap
from .series import LaurentSeries, TruncSeries, VarTable
from .fgl import (
    FglMorphism,
    FormalGroupLaw,
    additive_fgl,
    adams_morphism,
    check_fgl,
    logarithm,
    multiplicative_fgl,
    n_series,
    reparametrize,
)
from .lazard import LazardCtx, build_ctx
from .cobordism import CobElement, ProjProductRing, pushforward_projbundle

__all__ = [
    "__version__",
    "QQ",
    "ZZ",
    "ModP",
    "PolyRing",
    "RingMap",
    "LaurentSeries",
    "TruncSeries",
    "VarTable",
    "FglMorphism",
    "FormalGroupLaw",
    "additive_fgl",
    "adams_morphism",
    "check_fgl",
    "logarithm",
    "multiplicative_fgl",
    "n_series",
    "reparametrize",
    "LazardCtx",
    "build_ctx",
    "CobElement",
    "ProjProductRing",
    "pushforward_projbundle",
]

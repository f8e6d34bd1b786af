"""Exact arithmetic for Banach-Hecke algebras, twisted Satake transforms and
weakly admissible filtered isocrystals."""

from .cocycle import CocycleSpec, GroupRingElt
from .hecke import AffElt, HeckeAlgebra, HeckeElt
from .isocrystal import (
    FilteredIsocrystal,
    Flag,
    FrobeniusSpec,
    construct_admissible,
    gl2_classify,
    is_weakly_admissible,
)
from .polygon import Polygon, newton_above_hodge, polygon_of
from .root_datum import RootDatum, WeylElt
from .satake import Satake, check_prop44, gl_symmetric_map
from .scalars import FieldInvariants, LaurentPoly, LScalar, NumericRing, RationalRing, SymbolicRing

__version__ = "0.1.0"

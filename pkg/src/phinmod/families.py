"""The 49 normal-form families.

Crystalline families are ``Cris1``..``Cris26``; families with monodromy of
rank one are ``R1_1``..``R1_20`` and of rank two ``R2_1``..``R2_3``.
Vectors are written in the standard basis e1, e2, e3 of their shape.
"""

from fractions import Fraction as F

from .catalog import (
    Catalog,
    CatalogEntry,
    Constraint,
    FamilyId,
    ReducibilityKind,
    coordinate_span as E,
)
from .module import ShapeId

DEC = ReducibilityKind.DECOMPOSABLE
NS = ReducibilityKind.NON_SPLIT
IRR = (ReducibilityKind.IRREDUCIBLE, [])

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def _fixed(v):
    return lambda L: v


def _plane(a, b):
    return lambda L: (a, b)


def _ns_if(*pairs):
    """Non-split with every submodule whose condition holds, else irreducible."""
    subs = [span for condition, span in pairs if condition]
    return (NS, subs) if subs else IRR


def _c(text, fn):
    return Constraint(text, fn)


# -- crystalline, one eigenvalue ------------------------------------------

V_THIRD = _c("v(lambda) = (r+s)/3", lambda r, s, v: v[0] == F(r + s, 3))

_CRYS_SINGLE = [
    CatalogEntry(
        FamilyId.CRIS1, ShapeId.CRYS2, ("lambda",), (),
        fil_s=_fixed(E1), fil_r=_plane(E1, E3),
        constraints=(V_THIRD, _c("s = 2r", lambda r, s, v: s == 2 * r)),
        submodules=lambda h, v, L: (DEC, [E(1, 2), E(3)]),
    ),
    CatalogEntry(
        FamilyId.CRIS2, ShapeId.CRYS3, ("lambda",), (),
        fil_s=_fixed(E1), fil_r=_plane(E1, E3),
        constraints=(V_THIRD, _c("s >= 2r", lambda r, s, v: s >= 2 * r)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r, E(3))),
    ),
    CatalogEntry(
        FamilyId.CRIS3, ShapeId.CRYS3, ("lambda",), (),
        fil_s=_fixed(E2), fil_r=_plane(E1, E2),
        constraints=(V_THIRD, _c("s <= 2r", lambda r, s, v: s <= 2 * r)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r, E(2, 3))),
    ),
    CatalogEntry(
        FamilyId.CRIS4, ShapeId.CRYS3, ("lambda",), ("any",),
        fil_s=_fixed(E1), fil_r=lambda L: (E1, (0, 1, L[0])),
        constraints=(V_THIRD,),
        submodules=lambda h, v, L: IRR,
    ),
]

# -- crystalline, a double eigenvalue lambda and a simple lambda3 ---------

DOUBLE_SUM = _c("2v(lambda) + v(lambda3) = r+s", lambda r, s, v: 2 * v[0] + v[1] == r + s)

_CRYS_DOUBLE = [
    CatalogEntry(
        FamilyId.CRIS5, ShapeId.CRYS4, ("lambda", "lambda3"), (),
        fil_s=_fixed((1, 0, 1)), fil_r=_plane((1, 0, 1), E2),
        constraints=(DOUBLE_SUM, _c("v(lambda) = r", lambda r, s, v: v[0] == r),
                     _c("v(lambda3) = s-r", lambda r, s, v: v[1] == s - r)),
        submodules=lambda h, v, L: (DEC, [E(2), E(1, 3)]),
    ),
    CatalogEntry(
        FamilyId.CRIS6, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed(E3), fil_r=_plane(E1, E3),
        constraints=(DOUBLE_SUM, _c("v(lambda) = r/2", lambda r, s, v: v[0] == F(r, 2)),
                     _c("v(lambda3) = s", lambda r, s, v: v[1] == s)),
        submodules=lambda h, v, L: (DEC, [E(3), E(1, 2)]),
    ),
    CatalogEntry(
        FamilyId.CRIS7, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed(E1), fil_r=_plane(E1, E2),
        constraints=(DOUBLE_SUM, _c("v(lambda) = (r+s)/2", lambda r, s, v: v[0] == F(r + s, 2)),
                     _c("v(lambda3) = 0", lambda r, s, v: v[1] == 0)),
        submodules=lambda h, v, L: (DEC, [E(3), E(1, 2)]),
    ),
    CatalogEntry(
        FamilyId.CRIS8, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed(E1), fil_r=_plane(E1, E3),
        constraints=(DOUBLE_SUM, _c("v(lambda) = s/2", lambda r, s, v: v[0] == F(s, 2)),
                     _c("v(lambda3) = r", lambda r, s, v: v[1] == r)),
        submodules=lambda h, v, L: (DEC, [E(3), E(1, 2)]),
    ),
    CatalogEntry(
        FamilyId.CRIS9, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed(E1), fil_r=_plane(E1, (0, 1, 1)),
        constraints=(DOUBLE_SUM,
                     _c("s/2 <= v(lambda) <= (r+s)/2", lambda r, s, v: F(s, 2) <= v[0] <= F(r + s, 2))),
        submodules=lambda h, v, L: _ns_if((v[0] == F(h.s, 2), E(1, 2)),
                                          (v[0] == F(h.total, 2), E(3))),
    ),
    CatalogEntry(
        FamilyId.CRIS10, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed((0, 1, 1)), fil_r=_plane((0, 1, 1), E1),
        constraints=(DOUBLE_SUM,
                     _c("r/2 <= v(lambda) <= r", lambda r, s, v: F(r, 2) <= v[0] <= r)),
        submodules=lambda h, v, L: _ns_if((v[0] == F(h.r, 2), E(1, 2)),
                                          (v[0] == h.r, E(2, 3))),
    ),
    CatalogEntry(
        FamilyId.CRIS11, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed((1, 0, 1)), fil_r=_plane((1, 0, 1), E2),
        constraints=(DOUBLE_SUM,
                     _c("r <= v(lambda) <= (r+s)/2", lambda r, s, v: r <= v[0] <= F(r + s, 2))),
        submodules=lambda h, v, L: _ns_if((v[0] == h.r, E(2)),
                                          (v[0] == F(h.total, 2), E(3))),
    ),
    CatalogEntry(
        FamilyId.CRIS12, ShapeId.CRYS5, ("lambda", "lambda3"), (),
        fil_s=_fixed((1, 0, 1)), fil_r=_plane(E1, E3),
        constraints=(DOUBLE_SUM,
                     _c("r/2 <= v(lambda) <= s/2", lambda r, s, v: F(r, 2) <= v[0] <= F(s, 2))),
        submodules=lambda h, v, L: _ns_if((v[0] == F(h.r, 2), E(1, 2)),
                                          (v[0] == F(h.s, 2), E(3))),
    ),
    CatalogEntry(
        FamilyId.CRIS13, ShapeId.CRYS5, ("lambda", "lambda3"), ("nonzero",),
        fil_s=_fixed((1, 0, 1)), fil_r=lambda L: ((1, 0, 1), (0, 1, L[0])),
        constraints=(DOUBLE_SUM,
                     _c("r/2 <= v(lambda) <= (r+s)/2", lambda r, s, v: F(r, 2) <= v[0] <= F(r + s, 2))),
        submodules=lambda h, v, L: _ns_if((v[0] == F(h.r, 2), E(1, 2)),
                                          (v[0] == F(h.total, 2), E(3))),
    ),
]

# -- crystalline, three distinct eigenvalues ------------------------------

TRIPLE_SUM = _c("v1 + v2 + v3 = r+s", lambda r, s, v: sum(v) == r + s)
ORDERED = _c("v1 >= v2 >= v3 >= 0", lambda r, s, v: v[0] >= v[1] >= v[2] >= 0)
LAMBDAS = ("lambda1", "lambda2", "lambda3")
SUM = (1, 1, 1)
SWAP12, SWAP13, SWAP23 = (2, 1, 3), (3, 2, 1), (1, 3, 2)


def _dec_extra(base, condition, extra):
    return (DEC, base + (extra if condition else []))


_CRYS_DISTINCT = [
    CatalogEntry(
        FamilyId.CRIS14, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed(E1), fil_r=_plane(E1, E2),
        constraints=(TRIPLE_SUM, _c("(v1, v2, v3) = (s, r, 0)",
                                    lambda r, s, v: tuple(v) == (s, r, 0))),
        submodules=lambda h, v, L: (DEC, [E(1), E(2), E(3), E(1, 2), E(1, 3), E(2, 3)]),
    ),
    CatalogEntry(
        FamilyId.CRIS15, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed(E1), fil_r=_plane(E1, (0, 1, 1)),
        constraints=(TRIPLE_SUM, ORDERED, _c("v1 = s", lambda r, s, v: v[0] == s),
                     _c("v2 + v3 = r", lambda r, s, v: v[1] + v[2] == r)),
        submodules=lambda h, v, L: _dec_extra([E(1), E(2, 3)], v[2] == 0, [E(3), E(1, 3)]),
        swaps=(SWAP23,),
    ),
    CatalogEntry(
        FamilyId.CRIS16, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((1, 1, 0)), fil_r=_plane(E1, E2),
        constraints=(TRIPLE_SUM, ORDERED, _c("v2 >= r", lambda r, s, v: v[1] >= r),
                     _c("v3 = 0", lambda r, s, v: v[2] == 0)),
        submodules=lambda h, v, L: _dec_extra([E(3), E(1, 2)], v[1] == h.r, [E(2), E(2, 3)]),
        swaps=(SWAP12,),
    ),
    CatalogEntry(
        FamilyId.CRIS17, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((1, 1, 0)), fil_r=_plane((1, 1, 0), E3),
        constraints=(TRIPLE_SUM, ORDERED, _c("v3 = r", lambda r, s, v: v[2] == r),
                     _c("s >= 2r", lambda r, s, v: s >= 2 * r)),
        submodules=lambda h, v, L: (DEC, [E(3), E(1, 2)]),
        swaps=(SWAP12,),
    ),
    CatalogEntry(
        FamilyId.CRIS18, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((1, 1, 0)), fil_r=_plane((1, 1, 0), (0, 1, 1)),
        constraints=(TRIPLE_SUM, ORDERED, _c("v1 <= s", lambda r, s, v: v[0] <= s),
                     _c("v3 <= r", lambda r, s, v: v[2] <= r)),
        submodules=lambda h, v, L: _ns_if((v[2] == 0, E(3)), (v[2] == h.r, E(1, 2)),
                                          (v[0] == h.s, E(2, 3))),
        swaps=(SWAP12,),
    ),
    CatalogEntry(
        FamilyId.CRIS19, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((0, 1, 1)), fil_r=_plane((0, 1, 1), E1),
        constraints=(TRIPLE_SUM, ORDERED, _c("v1 = r", lambda r, s, v: v[0] == r),
                     _c("s <= 2r", lambda r, s, v: s <= 2 * r)),
        submodules=lambda h, v, L: (DEC, [E(1), E(2, 3)]),
        swaps=(SWAP23,),
    ),
    CatalogEntry(
        FamilyId.CRIS20, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((0, 1, 1)), fil_r=_plane((0, 1, 1), (1, 0, 1)),
        constraints=(TRIPLE_SUM, ORDERED, _c("v1 <= r", lambda r, s, v: v[0] <= r),
                     _c("s <= 2r", lambda r, s, v: s <= 2 * r)),
        submodules=lambda h, v, L: _ns_if((v[0] == h.r, E(2, 3))),
        swaps=(SWAP23,),
    ),
    CatalogEntry(
        FamilyId.CRIS21, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((1, 0, 1)), fil_r=_plane((1, 0, 1), E2),
        constraints=(TRIPLE_SUM, ORDERED, _c("v2 = r", lambda r, s, v: v[1] == r),
                     _c("v1 + v3 = s", lambda r, s, v: v[0] + v[2] == s)),
        submodules=lambda h, v, L: _dec_extra([E(2), E(1, 3)], v[0] == h.s, [E(3), E(2, 3)]),
        swaps=(SWAP13,),
    ),
    CatalogEntry(
        FamilyId.CRIS22, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed((1, 0, 1)), fil_r=_plane((1, 0, 1), (0, 1, 1)),
        constraints=(TRIPLE_SUM, ORDERED, _c("v1 <= s", lambda r, s, v: v[0] <= s),
                     _c("v2 <= r", lambda r, s, v: v[1] <= r)),
        submodules=lambda h, v, L: _ns_if((v[2] == 0, E(3)), (v[1] == h.r, E(1, 3)),
                                          (v[0] == h.s, E(2, 3))),
        swaps=(SWAP13,),
    ),
    CatalogEntry(
        FamilyId.CRIS23, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed(SUM), fil_r=_plane(SUM, E1),
        constraints=(TRIPLE_SUM, ORDERED, _c("r <= v1 <= s", lambda r, s, v: r <= v[0] <= s)),
        submodules=lambda h, v, L: _ns_if((v[2] == 0, E(3)), (v[0] == h.r, E(1)),
                                          (v[0] == h.s, E(2, 3))),
        swaps=(SWAP23,),
    ),
    CatalogEntry(
        FamilyId.CRIS24, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed(SUM), fil_r=_plane(SUM, E2),
        constraints=(TRIPLE_SUM, ORDERED, _c("v2 >= r", lambda r, s, v: v[1] >= r)),
        submodules=lambda h, v, L: _ns_if((v[2] == 0, E(3)), (v[1] == h.r, E(2)),
                                          (v[0] == h.s, E(2, 3))),
        swaps=(SWAP13,),
    ),
    CatalogEntry(
        FamilyId.CRIS25, ShapeId.CRYS6, LAMBDAS, (),
        fil_s=_fixed(SUM), fil_r=_plane(SUM, E3),
        constraints=(TRIPLE_SUM, ORDERED, _c("v3 >= r", lambda r, s, v: v[2] >= r),
                     _c("s >= 2r", lambda r, s, v: s >= 2 * r)),
        submodules=lambda h, v, L: _ns_if((v[2] == h.r, E(3))),
        swaps=(SWAP12,),
    ),
    CatalogEntry(
        FamilyId.CRIS26, ShapeId.CRYS6, LAMBDAS, ("not01",),
        fil_s=_fixed(SUM), fil_r=lambda L: (SUM, (0, 1, L[0])),
        constraints=(TRIPLE_SUM, ORDERED, _c("v1 <= s", lambda r, s, v: v[0] <= s)),
        submodules=lambda h, v, L: _ns_if((v[2] == 0, E(3)), (v[0] == h.s, E(2, 3))),
    ),
]

# -- monodromy of rank one ------------------------------------------------

V_S12 = _c("v(lambda) = (r+s-1)/3", lambda r, s, v: v[0] == F(r + s - 1, 3))
V_S34 = _c("v(lambda) = (r+s-2)/3", lambda r, s, v: v[0] == F(r + s - 2, 3))
V_S5 = _c("2v(lambda) + v(lambda2) = r+s-1", lambda r, s, v: 2 * v[0] + v[1] == r + s - 1)
RANK1_5_NAMES = ("lambda", "lambda2")


def _e1_plus_l_e3(L):
    return (1, 0, L[0])


def _e1_e2_l_e3(L):
    return (1, 1, L[0])


def _bottom_top(h, v, low, high, at_low, at_high):
    """Non-split submodules at the two ends of a valuation interval."""
    subs = []
    if v[0] == low:
        subs.extend(at_low)
    if v[0] == high:
        subs.extend(at_high)
    return (NS, subs) if subs else IRR


_RANK1 = [
    CatalogEntry(
        FamilyId.R1_1, ShapeId.RANK1_1, ("lambda",), ("any",),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), E2),
        constraints=(V_S12, _c("s = 2r+1", lambda r, s, v: s == 2 * r + 1)),
        submodules=lambda h, v, L: (DEC, [E(2), E(1, 3)]),
    ),
    CatalogEntry(
        FamilyId.R1_2, ShapeId.RANK1_1, ("lambda",), ("any", "any"),
        fil_s=_fixed((1, 1, 0)), fil_r=lambda L: ((1, 1, 0), (0, L[0], L[1])),
        constraints=(V_S12, _c("s >= 2r+1", lambda r, s, v: s >= 2 * r + 1)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r + 1, [(0, L[0], L[1])])),
        projective=True,
    ),
    CatalogEntry(
        FamilyId.R1_3, ShapeId.RANK1_2, ("lambda",), ("any",),
        fil_s=_fixed(E2), fil_r=lambda L: (E2, (1, 0, L[0])),
        constraints=(V_S12, _c("s <= 2r-2", lambda r, s, v: s <= 2 * r - 2)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r - 2, E(2, 3))),
    ),
    CatalogEntry(
        FamilyId.R1_4, ShapeId.RANK1_2, ("lambda",), ("any",),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), E2),
        constraints=(V_S12, _c("s <= 2r+1", lambda r, s, v: s <= 2 * r + 1)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r + 1, E(1, 3))),
    ),
    CatalogEntry(
        FamilyId.R1_5, ShapeId.RANK1_2, ("lambda",), ("nonzero",),
        fil_s=lambda L: (1, L[0], 0), fil_r=lambda L: ((1, L[0], 0), E3),
        constraints=(V_S12, _c("s >= 2r+1", lambda r, s, v: s >= 2 * r + 1)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r + 1, E(3))),
    ),
    CatalogEntry(
        FamilyId.R1_6, ShapeId.RANK1_2, ("lambda",), ("nonzero", "any"),
        fil_s=lambda L: (1, L[0], 0), fil_r=lambda L: ((1, L[0], 0), (0, 1, L[1])),
        constraints=(V_S12,),
        submodules=lambda h, v, L: IRR,
    ),
    CatalogEntry(
        FamilyId.R1_7, ShapeId.RANK1_3, ("lambda",), ("any",),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), E2),
        constraints=(V_S34, _c("s = 2r-1", lambda r, s, v: s == 2 * r - 1)),
        submodules=lambda h, v, L: (DEC, [E(2), E(1, 3)]),
    ),
    CatalogEntry(
        FamilyId.R1_8, ShapeId.RANK1_3, ("lambda",), ("any", "any"),
        fil_s=lambda L: (L[0], L[1], L[1]), fil_r=_plane(E1, (0, 1, 1)),
        constraints=(V_S34, _c("s <= 2r-1", lambda r, s, v: s <= 2 * r - 1)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r - 1, [(L[0], L[1], 0), E3])),
        projective=True,
    ),
    CatalogEntry(
        FamilyId.R1_9, ShapeId.RANK1_4, ("lambda",), ("nonzero",),
        fil_s=lambda L: (0, 1, L[0]), fil_r=lambda L: ((0, 1, L[0]), E1),
        constraints=(V_S34, _c("s <= 2r-1", lambda r, s, v: s <= 2 * r - 1)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r - 1, E(2, 3))),
    ),
    CatalogEntry(
        FamilyId.R1_10, ShapeId.RANK1_4, ("lambda",), ("any",),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), E2),
        constraints=(V_S34, _c("s >= 2r-1", lambda r, s, v: s >= 2 * r - 1)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r - 1, E(2))),
    ),
    CatalogEntry(
        FamilyId.R1_11, ShapeId.RANK1_4, ("lambda",), ("any",),
        fil_s=_e1_plus_l_e3, fil_r=_plane(E1, E3),
        constraints=(V_S34, _c("s >= 2r+2", lambda r, s, v: s >= 2 * r + 2)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r + 2, E(3))),
    ),
    CatalogEntry(
        FamilyId.R1_12, ShapeId.RANK1_4, ("lambda",), ("any", "nonzero"),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), (0, 1, L[1])),
        constraints=(V_S34,),
        submodules=lambda h, v, L: IRR,
    ),
    CatalogEntry(
        FamilyId.R1_13, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_fixed(E2), fil_r=lambda L: (E2, (1, 0, L[0])),
        constraints=(V_S5, _c("v(lambda) = (r-1)/2", lambda r, s, v: v[0] == F(r - 1, 2)),
                     _c("v(lambda2) = s", lambda r, s, v: v[1] == s)),
        submodules=lambda h, v, L: _dec_extra([E(2), E(1, 3)], h.r == 1, [E(3), E(2, 3)]),
    ),
    CatalogEntry(
        FamilyId.R1_14, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_e1_plus_l_e3, fil_r=_plane(E1, E3),
        constraints=(V_S5, _c("v(lambda) = (r+s-1)/2", lambda r, s, v: v[0] == F(r + s - 1, 2)),
                     _c("v(lambda2) = 0", lambda r, s, v: v[1] == 0)),
        submodules=lambda h, v, L: _dec_extra([E(2), E(1, 3)], h.s == h.r + 1, [E(3), E(2, 3)]),
    ),
    CatalogEntry(
        FamilyId.R1_15, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_fixed((0, 1, 1)), fil_r=lambda L: ((0, 1, 1), (1, 0, L[0])),
        constraints=(V_S5, _c("(r-1)/2 <= v(lambda) <= r-1",
                              lambda r, s, v: F(r - 1, 2) <= v[0] <= r - 1)),
        submodules=lambda h, v, L: (
            (NS, [E(3), E(2, 3), E(1, 3)]) if h.r == 1
            else _bottom_top(h, v, F(h.r - 1, 2), h.r - 1, [E(1, 3)], [E(2, 3)])
        ),
    ),
    CatalogEntry(
        FamilyId.R1_16, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), E2),
        constraints=(V_S5, _c("v(lambda) = (s-1)/2", lambda r, s, v: v[0] == F(s - 1, 2)),
                     _c("v(lambda2) = r", lambda r, s, v: v[1] == r)),
        submodules=lambda h, v, L: (DEC, [E(2), E(1, 3)]),
    ),
    CatalogEntry(
        FamilyId.R1_17, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_e1_plus_l_e3, fil_r=lambda L: (_e1_plus_l_e3(L), (0, 1, 1)),
        constraints=(V_S5, _c("(s-1)/2 <= v(lambda) <= (r+s-1)/2",
                              lambda r, s, v: F(s - 1, 2) <= v[0] <= F(r + s - 1, 2))),
        submodules=lambda h, v, L: _bottom_top(
            h, v, F(h.s - 1, 2), F(h.total - 1, 2), [E(1, 3)],
            [E(2), E(2, 3)] if h.s == h.r + 1 else [E(2)]),
    ),
    CatalogEntry(
        FamilyId.R1_18, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_e1_e2_l_e3, fil_r=lambda L: (_e1_e2_l_e3(L), E2),
        constraints=(V_S5, _c("(r-1)/2 <= v(lambda) <= (s-1)/2",
                              lambda r, s, v: F(r - 1, 2) <= v[0] <= F(s - 1, 2))),
        submodules=lambda h, v, L: _bottom_top(
            h, v, F(h.r - 1, 2), F(h.s - 1, 2),
            [E(3), E(1, 3)] if h.r == 1 else [E(1, 3)], [E(2)]),
    ),
    CatalogEntry(
        FamilyId.R1_19, ShapeId.RANK1_5, RANK1_5_NAMES, ("any",),
        fil_s=_e1_e2_l_e3, fil_r=_plane((1, 1, 0), E3),
        constraints=(V_S5, _c("r <= v(lambda) <= (r+s-1)/2",
                              lambda r, s, v: r <= v[0] <= F(r + s - 1, 2))),
        submodules=lambda h, v, L: (
            (NS, [E(2), E(3), E(2, 3)]) if h.s == h.r + 1
            else _bottom_top(h, v, h.r, F(h.total - 1, 2), [E(3)], [E(2)])
        ),
    ),
    CatalogEntry(
        FamilyId.R1_20, ShapeId.RANK1_5, RANK1_5_NAMES, ("any", "nonzero"),
        fil_s=_e1_e2_l_e3, fil_r=lambda L: (_e1_e2_l_e3(L), (0, 1, L[1])),
        constraints=(V_S5, _c("(r-1)/2 <= v(lambda) <= (r+s-1)/2",
                              lambda r, s, v: F(r - 1, 2) <= v[0] <= F(r + s - 1, 2))),
        submodules=lambda h, v, L: _bottom_top(
            h, v, F(h.r - 1, 2), F(h.total - 1, 2),
            [E(3), E(1, 3)] if h.r == 1 else [E(1, 3)],
            [E(2), E(2, 3)] if h.s == h.r + 1 else [E(2)]),
    ),
]

# -- monodromy of rank two ------------------------------------------------

V_RANK2 = _c("v(lambda) = (r+s-3)/3", lambda r, s, v: v[0] == F(r + s - 3, 3))

_RANK2 = [
    CatalogEntry(
        FamilyId.R2_1, ShapeId.RANK2, ("lambda",), ("any", "any"),
        fil_s=lambda L: (0, 1, L[0]), fil_r=lambda L: ((0, 1, L[0]), (1, 0, L[1])),
        constraints=(V_RANK2, _c("s <= 2r-3", lambda r, s, v: s <= 2 * r - 3)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r - 3, E(2, 3))),
    ),
    CatalogEntry(
        FamilyId.R2_2, ShapeId.RANK2, ("lambda",), ("any", "any"),
        fil_s=lambda L: (1, L[0], L[1]), fil_r=lambda L: ((1, L[0], L[1]), E3),
        constraints=(V_RANK2, _c("s >= 2r+3", lambda r, s, v: s >= 2 * r + 3)),
        submodules=lambda h, v, L: _ns_if((h.s == 2 * h.r + 3, E(3))),
    ),
    CatalogEntry(
        FamilyId.R2_3, ShapeId.RANK2, ("lambda",), ("any", "any", "any"),
        fil_s=lambda L: (1, L[0], L[1]), fil_r=lambda L: ((1, L[0], L[1]), (0, 1, L[2])),
        constraints=(V_RANK2,),
        submodules=lambda h, v, L: (NS, [E(3), E(2, 3)]) if h.s == 2 else IRR,
    ),
]

FAMILY_ENTRIES = _CRYS_SINGLE + _CRYS_DOUBLE + _CRYS_DISTINCT + _RANK1 + _RANK2

CATALOG = Catalog(FAMILY_ENTRIES)

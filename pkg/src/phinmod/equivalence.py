"""When two family instances describe isomorphic modules.

Permutations are written ``(p1, p2, p3)`` meaning ``lambda_k = lambda'_{p_k}``
for the instances on the left and right of the relation.
"""

from collections import deque
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from .catalog import Catalog, FamilyId, FamilyInstance
from .valued_field import FieldElement

Permutation = Tuple[int, int, int]
Node = Tuple[FamilyId, Tuple[FieldElement, ...], Tuple[FieldElement, ...]]

# Cris26: eigenvalue permutation and the induced map on the parameter
CRIS26_RELATIONS: List[Tuple[Permutation, Callable[[FieldElement], FieldElement]]] = [
    ((1, 2, 3), lambda L: L),
    ((2, 3, 1), lambda L: 1 - 1 / L),
    ((3, 1, 2), lambda L: 1 / (1 - L)),
    ((1, 3, 2), lambda L: 1 / L),
    ((3, 2, 1), lambda L: L / (L - 1)),
    ((2, 1, 3), lambda L: 1 - L),
]

# (family i, family j, permutation) with Cris_i(lambda) ~ Cris_j(lambda')
CROSS_FAMILY: List[Tuple[FamilyId, FamilyId, Permutation]] = [
    (FamilyId.CRIS17, FamilyId.CRIS19, (3, 2, 1)),
    (FamilyId.CRIS17, FamilyId.CRIS19, (2, 3, 1)),
    (FamilyId.CRIS17, FamilyId.CRIS21, (1, 3, 2)),
    (FamilyId.CRIS17, FamilyId.CRIS21, (3, 1, 2)),
    (FamilyId.CRIS19, FamilyId.CRIS21, (2, 1, 3)),
    (FamilyId.CRIS19, FamilyId.CRIS21, (2, 3, 1)),
    (FamilyId.CRIS18, FamilyId.CRIS20, (2, 3, 1)),
    (FamilyId.CRIS18, FamilyId.CRIS22, (1, 3, 2)),
    (FamilyId.CRIS20, FamilyId.CRIS22, (2, 1, 3)),
    (FamilyId.CRIS23, FamilyId.CRIS24, (2, 1, 3)),
    (FamilyId.CRIS23, FamilyId.CRIS24, (2, 3, 1)),
    (FamilyId.CRIS23, FamilyId.CRIS25, (3, 2, 1)),
    (FamilyId.CRIS23, FamilyId.CRIS25, (3, 1, 2)),
    (FamilyId.CRIS24, FamilyId.CRIS25, (1, 3, 2)),
    (FamilyId.CRIS24, FamilyId.CRIS25, (2, 3, 1)),
]


def permutes_to(left: Sequence[FieldElement], right: Sequence[FieldElement],
                perm: Sequence[int]) -> bool:
    """lambda_k == lambda'_{perm[k]} for every k."""
    return len(left) == len(right) == len(perm) and all(
        left[k] == right[perm[k] - 1] for k in range(len(perm))
    )


def apply_permutation(right: Sequence[FieldElement], perm: Sequence[int]) -> Tuple[FieldElement, ...]:
    """The left-hand eigenvalues determined by ``right`` through ``perm``."""
    return tuple(right[p - 1] for p in perm)


def _projective_equal(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> bool:
    """Equality of points of P^1 given by homogeneous coordinates."""
    return a[0] * b[1] == a[1] * b[0]


def _unpermute(left: Sequence[FieldElement], perm: Sequence[int]) -> Tuple[FieldElement, ...]:
    """The right-hand eigenvalues with ``left == apply_permutation(right, perm)``."""
    right: List[Optional[FieldElement]] = [None] * len(perm)
    for k, p in enumerate(perm):
        right[p - 1] = left[k]
    return tuple(right)


def cross_family_permutations(i: FamilyId, j: FamilyId) -> List[Permutation]:
    return [perm for a, b, perm in CROSS_FAMILY if (a, b) == (i, j)]


def _neighbours(node: Node, catalog: Catalog) -> Iterator[Node]:
    """Instances one generating relation away from ``node``."""
    family, eigen, fil = node
    for perm in catalog.get(family).swaps:
        yield family, apply_permutation(eigen, perm), fil
        yield family, _unpermute(eigen, perm), fil
    for i, j, perm in CROSS_FAMILY:
        if family is i:
            yield j, _unpermute(eigen, perm), fil
        if family is j:
            yield i, apply_permutation(eigen, perm), fil
    if family is FamilyId.CRIS26:
        L = fil[0]
        if not L.is_zero() and L != 1:
            for perm, relation in CRIS26_RELATIONS:
                yield family, _unpermute(eigen, perm), (relation(L),)


def orbit(instance: FamilyInstance, catalog: Optional[Catalog] = None) -> List[FamilyInstance]:
    """Every instance reachable from ``instance`` by composing the relations.

    The generators are the in-family swaps, the cross-family permutations and
    the Cris26 relations, each usable in both directions. Projective
    parameters are kept as given, so the orbit lists one representative per
    homogeneous coordinate vector.
    """
    if catalog is None:
        from .families import CATALOG
        catalog = CATALOG
    start: Node = (instance.id, tuple(instance.eigen_params), tuple(instance.fil_params))
    seen = {start}
    queue = deque([start])
    while queue:
        for following in _neighbours(queue.popleft(), catalog):
            if following not in seen:
                seen.add(following)
                queue.append(following)
    return [FamilyInstance(family, eigen, fil, instance.hodge) for family, eigen, fil in seen]


def param_equivalent(a: FamilyInstance, b: FamilyInstance,
                     catalog: Optional[Catalog] = None) -> bool:
    """Whether two instances denote isomorphic modules.

    Args:
        a: First instance
        b: Second instance
        catalog: Catalog supplying per-family swaps (defaults to CATALOG)

    Returns:
        True iff b lies in the orbit of a, comparing projective parameters
        as points of P^1
    """
    if catalog is None:
        from .families import CATALOG
        catalog = CATALOG
    if a.hodge != b.hodge or a.field != b.field:
        return False
    projective = catalog.get(b.id).projective
    for candidate in orbit(a, catalog):
        if candidate.id is not b.id or candidate.eigen_params != b.eigen_params:
            continue
        if projective and _projective_equal(candidate.fil_params, b.fil_params):
            return True
        if not projective and candidate.fil_params == b.fil_params:
            return True
    return False

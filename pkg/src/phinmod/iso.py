"""Isomorphism of filtered (phi, N)-modules, independent of the catalog.

An isomorphism a -> b is an invertible P with P phi_a = phi_b P,
P N_a = N_b P, P(L1_a) = L1_b and P(L2_a) = L2_b. All conditions but
invertibility are linear in P; invertibility is decided exactly on a
finite grid.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .error_handler import PhinModError
from .linalg import Matrix, find_invertible, intertwiner_space
from .logger import logger
from .module import DIM, PhiNModule, ShapeId, ensure_valid, standard_monodromy, standard_phi
from .valued_field import FieldSpec, make_field


@dataclass(frozen=True)
class IsoWitness:
    """An invertible intertwiner carrying module a onto module b."""

    P: Matrix

    def check(self, a: PhiNModule, b: PhiNModule) -> List[str]:
        """The defining equations that fail; empty for a valid witness."""
        P = self.P
        failures = []
        if P.determinant().is_zero():
            failures.append("P is singular")
            return failures
        if P @ a.phi != b.phi @ P:
            failures.append("P phi_a != phi_b P")
        if P @ a.N != b.N @ P:
            failures.append("P N_a != N_b P")
        if a.fil.L1.image(P) != b.fil.L1:
            failures.append("P(Fil^s a) != Fil^s b")
        if a.fil.L2.image(P) != b.fil.L2:
            failures.append("P(Fil^r a) != Fil^r b")
        return failures

    def to_json(self) -> dict:
        return {"P": self.P.to_strings()}


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Optional[IsoWitness] = None
    reason: str = ""

    def __bool__(self):
        return self.isomorphic

    def to_json(self, with_witness: bool = False) -> dict:
        doc = {"isomorphic": self.isomorphic}
        if self.reason:
            doc["reason"] = self.reason
        if with_witness and self.witness is not None:
            doc["witness"] = self.witness.to_json()
        return doc


def are_isomorphic(a: PhiNModule, b: PhiNModule) -> IsoResult:
    """Decide whether two modules are isomorphic.

    Args:
        a: First module
        b: Second module

    Returns:
        IsoResult with a verified witness when isomorphic

    Raises:
        ModuleValidationError: for an invalid input module
    """
    ensure_valid(a)
    ensure_valid(b)
    if a.field != b.field:
        return IsoResult(False, reason="different coefficient fields")
    if a.hodge != b.hodge:
        return IsoResult(False, reason="different Hodge types")
    containments = [(w, b.fil.L1) for w in a.fil.L1.basis]
    containments += [(w, b.fil.L2) for w in a.fil.L2.basis]
    basis = intertwiner_space([(a.phi, b.phi), (a.N, b.N)], containments)
    logger.debug(f"intertwiner space preserving the filtration has dimension {len(basis)}")
    found = find_invertible(None, basis, a.field, DIM)
    if found is None:
        return IsoResult(False, reason="no invertible intertwiner preserves the filtration")
    witness = IsoWitness(found[0])
    failures = witness.check(a, b)
    if failures:
        raise PhinModError("isomorphism witness failed verification: " + "; ".join(failures))
    return IsoResult(True, witness)


@dataclass(frozen=True)
class CommutantLemma:
    """The expected commutant of a standard (phi, N).

    Attributes:
        zeros: Entries (row, column), 1-based, that vanish
        equal: Groups of entries that coincide
        dim: Dimension of the commutant
    """

    zeros: Tuple[Tuple[int, int], ...]
    equal: Tuple[Tuple[Tuple[int, int], ...], ...]
    dim: int


_UPPER = ((1, 2), (1, 3), (2, 3))
_OFF_DIAGONAL = _UPPER + ((2, 1), (3, 1), (3, 2))

COMMUTANT_LEMMAS: Dict[ShapeId, CommutantLemma] = {
    ShapeId.CRYS1: CommutantLemma((), (), 9),
    ShapeId.CRYS2: CommutantLemma(((1, 2), (1, 3), (3, 2)), (((1, 1), (2, 2)),), 5),
    ShapeId.CRYS3: CommutantLemma(_UPPER, (((1, 1), (2, 2), (3, 3)), ((2, 1), (3, 2))), 3),
    ShapeId.CRYS4: CommutantLemma(((1, 3), (2, 3), (3, 1), (3, 2)), (), 5),
    ShapeId.CRYS5: CommutantLemma(_UPPER + ((3, 1), (3, 2)), (((1, 1), (2, 2)),), 3),
    ShapeId.CRYS6: CommutantLemma(_OFF_DIAGONAL, (), 3),
    ShapeId.RANK1_1: CommutantLemma(_UPPER + ((2, 1), (3, 1)), (((1, 1), (3, 3)),), 3),
    ShapeId.RANK1_2: CommutantLemma(_UPPER + ((2, 1), (3, 1)), (((1, 1), (2, 2), (3, 3)),), 2),
    ShapeId.RANK1_3: CommutantLemma(_UPPER + ((3, 1), (3, 2)), (((1, 1), (3, 3)),), 3),
    ShapeId.RANK1_4: CommutantLemma(_UPPER + ((3, 1), (3, 2)), (((1, 1), (2, 2), (3, 3)),), 2),
    ShapeId.RANK1_5: CommutantLemma(_OFF_DIAGONAL, (((1, 1), (3, 3)),), 2),
    ShapeId.RANK2: CommutantLemma(_OFF_DIAGONAL, (((1, 1), (2, 2), (3, 3)),), 1),
}


def sample_eigen(field: FieldSpec, shape: ShapeId) -> List:
    """Fixed eigenvalue parameters that keep ``shape`` nondegenerate."""
    p = field.prime
    return {1: [1], 2: [1, p + 1], 3: [p * p, p, 1]}[shape.eigen_count]


def _lemma_mismatches(basis: Sequence[Matrix], lemma: CommutantLemma) -> List[str]:
    found = []
    if len(basis) != lemma.dim:
        found.append(f"dimension {len(basis)} != {lemma.dim}")
    for P in basis:
        for i, j in lemma.zeros:
            if not P[i - 1, j - 1].is_zero():
                found.append(f"P{i}{j} != 0")
        for group in lemma.equal:
            first = P[group[0][0] - 1, group[0][1] - 1]
            for i, j in group[1:]:
                if P[i - 1, j - 1] != first:
                    found.append(f"P{group[0][0]}{group[0][1]} != P{i}{j}")
    return sorted(set(found))


def _permutation_mismatches(field: FieldSpec) -> List[str]:
    """Intertwiners between diagonal phis with permuted eigenvalues are monomial."""
    eigen = sample_eigen(field, ShapeId.CRYS6)
    a = standard_phi(field, ShapeId.CRYS6, eigen)
    zero = standard_monodromy(field, 0)
    found = []
    for sigma in permutations(range(DIM)):
        b = standard_phi(field, ShapeId.CRYS6, [eigen[i] for i in sigma])
        basis = intertwiner_space([(a, b), (zero, zero)])
        if len(basis) != DIM:
            found.append(f"permutation {sigma}: dimension {len(basis)} != {DIM}")
            continue
        # P a = b P forces P_kj = 0 unless b_k = a_j, i.e. j = sigma(k)
        for P in basis:
            for k in range(DIM):
                for j in range(DIM):
                    if j != sigma[k] and not P[k, j].is_zero():
                        found.append(f"permutation {sigma}: P{k + 1}{j + 1} != 0")
    return sorted(set(found))


def commutant_shape_check(shape: ShapeId, field: Optional[FieldSpec] = None) -> List[str]:
    """Compare the brute-force commutant of a standard shape with its lemma.

    Args:
        shape: One of the twelve standard shapes
        field: Coefficient field (default Q(2^(1/6)))

    Returns:
        Mismatch descriptions; empty when the shape checks out
    """
    field = field or make_field(2, 6)
    phi = standard_phi(field, shape, sample_eigen(field, shape))
    N = standard_monodromy(field, shape.n_rank)
    basis = intertwiner_space([(phi, phi), (N, N)])
    found = _lemma_mismatches(basis, COMMUTANT_LEMMAS[shape])
    if shape is ShapeId.CRYS6:
        found.extend(_permutation_mismatches(field))
    return found

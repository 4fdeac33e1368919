"""Filtered (phi, N)-modules of dimension 3 and their invariants.

The filtration of Hodge type (0, r, s) is the flag L1 in L2:
``Fil^i = D`` for i <= 0, ``L2`` for 0 < i <= r, ``L1`` for r < i <= s and
0 above s.
"""

from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .error_handler import (
    DimensionError,
    HodgeTypeError,
    InconsistentFamilyError,
    ModuleValidationError,
)
from .linalg import Matrix, Subspace, determinant, echelon_basis, restrict_operator
from .logger import logger
from .valued_field import FieldElement, FieldSpec

DIM = 3


@dataclass(frozen=True)
class HodgeType:
    """Hodge-Tate weights (0, r, s) with 0 < r < s."""

    r: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.s, int)) or not 0 < self.r < self.s:
            raise HodgeTypeError(f"Hodge type requires 0<r<s, got r={self.r}, s={self.s}")

    @property
    def total(self) -> int:
        return self.r + self.s

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s}


@dataclass(frozen=True)
class Filtration:
    """The flag L1 (dimension 1, Fil^s) inside L2 (dimension 2, Fil^r)."""

    L1: Subspace
    L2: Subspace

    @classmethod
    def from_vectors(cls, field: FieldSpec, fil_s: Sequence, fil_r: Sequence) -> "Filtration":
        return cls(echelon_basis(field, [fil_s], DIM), echelon_basis(field, fil_r, DIM))

    def violations(self) -> List[str]:
        found = []
        if self.L1.dim != 1:
            found.append(f"Fil^s must be a line, got dimension {self.L1.dim}")
        if self.L2.dim != 2:
            found.append(f"Fil^r must be a plane, got dimension {self.L2.dim}")
        if self.L1.ambient_dim != DIM or self.L2.ambient_dim != DIM:
            found.append("filtration is not inside a 3-dimensional space")
        elif not found and not self.L2.contains(self.L1):
            found.append("Fil^s is not contained in Fil^r")
        return found

    def transported(self, transition: Matrix) -> "Filtration":
        """T(L1) inside T(L2)."""
        return Filtration(self.L1.image(transition), self.L2.image(transition))


@dataclass(frozen=True)
class JordanHint:
    """Eigenvalues of phi and C with C phi C^-1 lower triangular."""

    eigenvalues: Tuple[FieldElement, ...]
    change_of_basis: Optional[Matrix] = None


@dataclass(frozen=True)
class PhiNModule:
    """A 3-dimensional filtered (phi, N)-module over the model field."""

    field: FieldSpec
    hodge: HodgeType
    phi: Matrix
    N: Matrix
    fil: Filtration
    jordan_hint: Optional[JordanHint] = dataclass_field(default=None, compare=False)

    @property
    def n_rank(self) -> int:
        return self.N.rank()

    def transported(self, transition: Matrix) -> "PhiNModule":
        """The same module written in the basis given by ``transition``.

        phi and N are conjugated by T and the filtration is carried to T(L).
        """
        inverse = transition.inverse()
        hint = self.jordan_hint
        if hint is not None:
            base = hint.change_of_basis or Matrix.identity(self.field, DIM)
            hint = JordanHint(hint.eigenvalues, base @ inverse)
        return PhiNModule(
            field=self.field,
            hodge=self.hodge,
            phi=transition @ self.phi @ inverse,
            N=transition @ self.N @ inverse,
            fil=self.fil.transported(transition),
            jordan_hint=hint,
        )


class ShapeId(Enum):
    """The twelve standard shapes of (phi, N)."""

    CRYS1 = "crys1"
    CRYS2 = "crys2"
    CRYS3 = "crys3"
    CRYS4 = "crys4"
    CRYS5 = "crys5"
    CRYS6 = "crys6"
    RANK1_1 = "rank1_1"
    RANK1_2 = "rank1_2"
    RANK1_3 = "rank1_3"
    RANK1_4 = "rank1_4"
    RANK1_5 = "rank1_5"
    RANK2 = "rank2"

    @property
    def n_rank(self) -> int:
        if self.value.startswith("crys"):
            return 0
        return 1 if self.value.startswith("rank1") else 2

    @property
    def eigen_count(self) -> int:
        """Number of eigenvalue parameters of the standard phi."""
        if self in (ShapeId.CRYS4, ShapeId.CRYS5, ShapeId.RANK1_5):
            return 2
        return 3 if self is ShapeId.CRYS6 else 1


def standard_monodromy(field: FieldSpec, n_rank: int) -> Matrix:
    """N = 0, N e1 = e3, or the chain e1 -> e2 -> e3."""
    if n_rank == 0:
        return Matrix.zeros(field, DIM, DIM)
    if n_rank == 1:
        return Matrix(field, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    if n_rank == 2:
        return Matrix(field, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    raise DimensionError(f"monodromy rank {n_rank} impossible in dimension 3")


def standard_phi(field: FieldSpec, shape: ShapeId, eigen: Sequence[FieldElement]) -> Matrix:
    """The standard Frobenius of ``shape`` for the given eigenvalue parameters."""
    if len(eigen) != shape.eigen_count:
        raise DimensionError(f"{shape.value} takes {shape.eigen_count} eigenvalues, got {len(eigen)}")
    p = field.prime
    lam = field.element(eigen[0])
    z = field.zero
    if shape is ShapeId.CRYS1:
        return Matrix.diagonal(field, [lam, lam, lam])
    if shape is ShapeId.CRYS2:
        return Matrix(field, [[lam, z, z], [1, lam, z], [z, z, lam]])
    if shape is ShapeId.CRYS3:
        return Matrix(field, [[lam, z, z], [1, lam, z], [z, 1, lam]])
    if shape is ShapeId.CRYS4:
        return Matrix.diagonal(field, [lam, lam, eigen[1]])
    if shape is ShapeId.CRYS5:
        return Matrix(field, [[lam, z, z], [1, lam, z], [z, z, eigen[1]]])
    if shape is ShapeId.CRYS6:
        return Matrix.diagonal(field, list(eigen))
    if shape is ShapeId.RANK1_1:
        return Matrix.diagonal(field, [p * lam, lam, lam])
    if shape is ShapeId.RANK1_2:
        return Matrix(field, [[p * lam, z, z], [z, lam, z], [z, 1, lam]])
    if shape is ShapeId.RANK1_3:
        return Matrix.diagonal(field, [p * lam, p * lam, lam])
    if shape is ShapeId.RANK1_4:
        return Matrix(field, [[p * lam, z, z], [1, p * lam, z], [z, z, lam]])
    if shape is ShapeId.RANK1_5:
        return Matrix.diagonal(field, [p * lam, eigen[1], lam])
    return Matrix.diagonal(field, [p * p * lam, p * lam, lam])


def validate_module(m: PhiNModule) -> List[str]:
    """Check the defining invariants of a filtered (phi, N)-module.

    Args:
        m: The module to check

    Returns:
        Human-readable violations; empty when the module is valid
    """
    violations: List[str] = []
    if m.phi.shape != (DIM, DIM) or m.N.shape != (DIM, DIM):
        return [f"phi and N must be {DIM}x{DIM}"]
    if m.phi.field != m.field or m.N.field != m.field:
        violations.append("matrices are over a different field than the module")
        return violations
    if determinant(m.phi).is_zero():
        violations.append("phi not invertible")
    if not m.N.power(DIM).is_zero():
        violations.append("N not nilpotent")
    if m.N @ m.phi != (m.phi @ m.N).scale(m.field.prime):
        violations.append("N phi != p phi N")
    violations.extend(m.fil.violations())
    return violations


def ensure_valid(m: PhiNModule) -> PhiNModule:
    """Raise ModuleValidationError unless ``m`` is valid."""
    violations = validate_module(m)
    if violations:
        raise ModuleValidationError(violations)
    return m


def hodge_invariant(u: Subspace, fil: Filtration, h: HodgeType) -> int:
    """t_H(U) = s dim(U n L1) + r (dim(U n L2) - dim(U n L1))."""
    d1 = u.intersect(fil.L1).dim
    d2 = u.intersect(fil.L2).dim
    return h.s * d1 + h.r * (d2 - d1)


def newton_invariant(u: Subspace, phi: Matrix) -> Fraction:
    """t_N(U) = v(det(phi|U)); zero for the zero subspace.

    Raises:
        NotInvariantError: if U is not phi-stable
    """
    if u.dim == 0:
        return Fraction(0)
    return determinant(restrict_operator(phi, u)).valuation()


@dataclass(frozen=True)
class SubobjectFamily:
    """All k-dimensional U with V in U in W; each is (phi, N)-stable.

    Attributes:
        fixed: V
        ambient: W
        dim: k
        newton: The common value of t_N on the family
    """

    fixed: Subspace
    ambient: Subspace
    dim: int
    newton: Fraction

    @property
    def is_isolated(self) -> bool:
        return self.fixed.dim == self.dim == self.ambient.dim

    def sample(self, rng: np.random.Generator, attempts: int = 50) -> Subspace:
        """A random member of the family."""
        if self.fixed.dim == self.dim:
            return self.fixed
        if self.ambient.dim == self.dim:
            return self.ambient
        for _ in range(attempts):
            extra = [self.ambient.random_vector(rng) for _ in range(self.dim - self.fixed.dim)]
            member = self.fixed.join(echelon_basis(self.fixed.field, extra, self.fixed.ambient_dim))
            if member.dim == self.dim:
                return member
        raise InconsistentFamilyError("could not sample a member of the family")

    def members(self, rng: np.random.Generator, count: int) -> List[Subspace]:
        return [self.sample(rng) for _ in range(count)]

    def describe(self) -> dict:
        return {
            "fixed": self.fixed.to_strings(),
            "ambient": self.ambient.to_strings(),
            "dim": self.dim,
            "newton": str(self.newton),
        }


def build_family(phi: Matrix, N: Matrix, fixed: Subspace, ambient: Subspace, dim: int,
                 checks: int = 2) -> SubobjectFamily:
    """Construct a family and spot-check it on random members.

    Args:
        phi: Frobenius
        N: Monodromy
        fixed: V
        ambient: W
        dim: k with dim V <= k <= dim W
        checks: Number of random members verified

    Returns:
        The SubobjectFamily with its Newton invariant

    Raises:
        InconsistentFamilyError: on a non-stable member or a varying t_N
    """
    if not (fixed.dim <= dim <= ambient.dim and ambient.contains(fixed)):
        raise InconsistentFamilyError("family requires V in W and dim V <= k <= dim W")
    rng = np.random.default_rng(0)
    candidate = SubobjectFamily(fixed, ambient, dim, Fraction(0))
    members = candidate.members(rng, 1 if candidate.is_isolated else checks)
    newton_values = set()
    for member in members:
        if not (member.is_invariant(phi) and member.is_invariant(N)):
            raise InconsistentFamilyError(f"member {member} is not (phi, N)-stable")
        newton_values.add(newton_invariant(member, phi))
    if len(newton_values) != 1:
        raise InconsistentFamilyError(f"Newton invariant varies on family: {sorted(newton_values)}")
    return SubobjectFamily(fixed, ambient, dim, newton_values.pop())


# (fixed coordinates, ambient coordinates, k) per standard shape, 1-based
_FAMILY_TABLE = {
    ShapeId.CRYS1: [((), (1, 2, 3), 1), ((), (1, 2, 3), 2)],
    ShapeId.CRYS2: [((), (2, 3), 1), ((2,), (1, 2, 3), 2)],
    ShapeId.CRYS3: [((3,), (3,), 1), ((2, 3), (2, 3), 2)],
    ShapeId.CRYS4: [((), (1, 2), 1), ((3,), (3,), 1), ((3,), (1, 2, 3), 2), ((1, 2), (1, 2), 2)],
    ShapeId.CRYS5: [((2,), (2,), 1), ((3,), (3,), 1), ((1, 2), (1, 2), 2), ((2, 3), (2, 3), 2)],
    ShapeId.CRYS6: [((i,), (i,), 1) for i in (1, 2, 3)]
    + [(pair, pair, 2) for pair in ((1, 2), (1, 3), (2, 3))],
    ShapeId.RANK1_1: [((), (2, 3), 1), ((2, 3), (2, 3), 2), ((1, 3), (1, 3), 2)],
    ShapeId.RANK1_2: [((3,), (3,), 1), ((1, 3), (1, 3), 2), ((2, 3), (2, 3), 2)],
    ShapeId.RANK1_3: [((2,), (2,), 1), ((3,), (3,), 1), ((3,), (1, 2, 3), 2)],
    ShapeId.RANK1_4: [((2,), (2,), 1), ((3,), (3,), 1), ((2, 3), (2, 3), 2)],
    ShapeId.RANK1_5: [((2,), (2,), 1), ((3,), (3,), 1), ((2, 3), (2, 3), 2), ((1, 3), (1, 3), 2)],
    ShapeId.RANK2: [((3,), (3,), 1), ((2, 3), (2, 3), 2)],
}


def invariant_families(phi: Matrix, N: Matrix, shape: ShapeId) -> List[SubobjectFamily]:
    """All nontrivial proper (phi, N)-stable subspaces of a standard pair.

    Args:
        phi: Standard Frobenius of ``shape``
        N: Standard monodromy of ``shape``
        shape: The standard shape

    Returns:
        The families covering every invariant subspace of dimension 1 and 2
    """
    if shape not in _FAMILY_TABLE:
        raise DimensionError(f"unrecognized shape {shape!r}")
    field = phi.field
    families = []
    for fixed, ambient, k in _FAMILY_TABLE[shape]:
        families.append(build_family(
            phi, N,
            Subspace.coordinate(field, DIM, fixed),
            Subspace.coordinate(field, DIM, ambient),
            k,
        ))
    logger.debug(f"{shape.value}: {len(families)} invariant families")
    return families


def _greedy_dims(f: SubobjectFamily, fil: Filtration) -> Tuple[int, int]:
    free = f.dim - f.fixed.dim
    d1 = min(f.ambient.intersect(fil.L1).dim, f.fixed.intersect(fil.L1).dim + free)
    d2 = min(f.ambient.intersect(fil.L2).dim, f.fixed.intersect(fil.L2).dim + free)
    return d1, d2


def family_max_hodge(f: SubobjectFamily, fil: Filtration, h: HodgeType) -> int:
    """Largest t_H over the members of ``f``.

    Filling U from W n L1 first and then from W n L2 maximizes both
    intersection dimensions at once, since L1 is inside L2 and s > r > 0.
    """
    d1, d2 = _greedy_dims(f, fil)
    return (h.s - h.r) * d1 + h.r * d2


def family_max_member(f: SubobjectFamily, fil: Filtration) -> Subspace:
    """A member of ``f`` attaining family_max_hodge."""
    member = f.fixed
    for source in (f.ambient.intersect(fil.L1), f.ambient.intersect(fil.L2), f.ambient):
        for v in source.basis:
            if member.dim == f.dim:
                return member
            grown = member.join(echelon_basis(member.field, [v], member.ambient_dim))
            if grown.dim > member.dim:
                member = grown
    return member

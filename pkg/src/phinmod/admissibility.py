"""Weak admissibility of filtered (phi, N)-modules.

A module is admissible when t_H(D) = t_N(D) and t_H(U) <= t_N(U) for
every (phi, N)-stable subspace U. The stable subspaces of a standard pair
come in a handful of families, and the largest t_H on a family has a
closed form, so the decision is exact and needs no enumeration.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .linalg import Matrix, Subspace, intertwiner_space, nullspace
from .logger import logger
from .module import (
    DIM,
    PhiNModule,
    SubobjectFamily,
    family_max_hodge,
    family_max_member,
    hodge_invariant,
    invariant_families,
    newton_invariant,
)
from .normalizer import NormalForm, normalize_module


@dataclass(frozen=True)
class AdmissibilityResult:
    """Verdict of is_admissible with its evidence.

    Attributes:
        admissible: The verdict
        hodge_total: t_H(D) = r + s
        newton_total: t_N(D) = v(det phi)
        witness: Violating family in the module's own coordinates
        violating: A member of ``witness`` breaking t_H <= t_N
        witness_hodge: max t_H over the witness family
        witness_newton: t_N of the witness family
        normal_form: The standard form the decision was made on
    """

    admissible: bool
    hodge_total: int
    newton_total: Fraction
    normal_form: NormalForm
    witness: Optional[SubobjectFamily] = None
    violating: Optional[Subspace] = None
    witness_hodge: Optional[int] = None
    witness_newton: Optional[Fraction] = None

    def __bool__(self):
        return self.admissible

    def describe(self) -> str:
        if self.admissible:
            return "admissible"
        if self.witness is not None and self.witness.dim == DIM:
            return f"not admissible: t_H(D)={self.hodge_total} != t_N(D)={self.newton_total}"
        return (f"not admissible: subobject of dimension {self.violating.dim} has "
                f"t_H={self.witness_hodge} > t_N={self.witness_newton}")

    def to_json(self) -> dict:
        doc = {
            "admissible": self.admissible,
            "t_H": self.hodge_total,
            "t_N": str(self.newton_total),
            "shape": self.normal_form.shape.value,
        }
        if not self.admissible:
            doc["witness"] = {
                "family": self.witness.describe(),
                "subspace": self.violating.to_strings(),
                "t_H": self.witness_hodge,
                "t_N": str(self.witness_newton),
            }
        return doc


def _pull_back(family: SubobjectFamily, inverse: Matrix) -> SubobjectFamily:
    return SubobjectFamily(family.fixed.image(inverse), family.ambient.image(inverse),
                           family.dim, family.newton)


def is_admissible(m: PhiNModule) -> AdmissibilityResult:
    """Decide weak admissibility.

    Args:
        m: A valid module whose (phi, N) can be normalized

    Returns:
        AdmissibilityResult; on failure the witness family and a concrete
        violating subspace are expressed in ``m``'s coordinates

    Raises:
        ModuleValidationError: for an invalid module
        NormalizationError: when (phi, N) has no standard form
    """
    nf = normalize_module(m)
    std = nf.module
    hodge_total = m.hodge.total
    newton_total = newton_invariant(Subspace.full(m.field, DIM), m.phi)
    if hodge_total != newton_total:
        full = Subspace.full(m.field, DIM)
        logger.debug(f"t_H(D)={hodge_total} differs from t_N(D)={newton_total}")
        return AdmissibilityResult(
            False, hodge_total, newton_total, nf,
            witness=SubobjectFamily(full, full, DIM, newton_total),
            violating=full, witness_hodge=hodge_total, witness_newton=newton_total,
        )
    inverse = nf.transition.inverse()
    for family in invariant_families(std.phi, std.N, nf.shape):
        best = family_max_hodge(family, std.fil, m.hodge)
        if best > family.newton:
            member = family_max_member(family, std.fil)
            logger.debug(f"violating family of dimension {family.dim}: {best} > {family.newton}")
            return AdmissibilityResult(
                False, hodge_total, newton_total, nf,
                witness=_pull_back(family, inverse),
                violating=member.image(inverse),
                witness_hodge=best, witness_newton=family.newton,
            )
    return AdmissibilityResult(True, hodge_total, newton_total, nf)


def sample_invariant_subspaces(m: PhiNModule, count: int,
                               rng: np.random.Generator) -> List[Subspace]:
    """Random (phi, N)-stable subspaces of ``m`` in its own coordinates.

    Members are drawn from every invariant family in turn.
    """
    nf = normalize_module(m)
    families = invariant_families(nf.module.phi, nf.module.N, nf.shape)
    inverse = nf.transition.inverse()
    samples = []
    for i in range(count):
        family = families[i % len(families)]
        samples.append(family.sample(rng).image(inverse))
    return samples


def random_stable_subspaces(m: PhiNModule, count: int,
                            rng: np.random.Generator) -> List[Subspace]:
    """Proper (phi, N)-stable subspaces found without the invariant family table.

    Kernels and images of random members of the commutant of (phi, N) are
    stable; random lines and planes are kept only when they happen to be.
    """
    field = m.field
    commuting = intertwiner_space([(m.phi, m.phi), (m.N, m.N)])
    full = Subspace.full(field, DIM)
    found = []
    for _ in range(count):
        c = Matrix.zeros(field, DIM, DIM)
        for b in commuting:
            k = int(rng.integers(-1, 2))
            if k:
                c = c + b.scale(k)
        spanned = [full.random_vector(rng) for _ in range(int(rng.integers(1, DIM)))]
        candidates = (
            Subspace.span(field, nullspace(c.rows, DIM, field), DIM),
            Subspace.span(field, c.columns(), DIM),
            Subspace.span(field, spanned, DIM),
        )
        for u in candidates:
            if 0 < u.dim < DIM and u.is_invariant(m.phi) and u.is_invariant(m.N):
                found.append(u)
    return found


def oracle_violations(m: PhiNModule, count: int, rng: np.random.Generator) -> List[Subspace]:
    """Sampled stable subspaces with t_H > t_N, recomputed from scratch.

    Samples come from the invariant family table and, separately, from
    ``random_stable_subspaces``, so a family missing from the table still
    shows up. Invariants are computed directly on ``m`` rather than on the
    standard form.
    """
    table = sample_invariant_subspaces(m, count, rng)
    for u in table:
        assert u.is_invariant(m.phi) and u.is_invariant(m.N), "sampled subspace is not stable"
    bad = []
    for u in table + random_stable_subspaces(m, count, rng):
        if hodge_invariant(u, m.fil, m.hodge) > newton_invariant(u, m.phi):
            bad.append(u)
    return bad


def witness_is_concrete(m: PhiNModule, result: AdmissibilityResult) -> bool:
    """Check that an inadmissibility verdict carries a real counterexample."""
    if result.admissible or result.violating is None:
        return False
    u = result.violating
    if not (u.is_invariant(m.phi) and u.is_invariant(m.N)):
        return False
    hodge = hodge_invariant(u, m.fil, m.hodge)
    newton = newton_invariant(u, m.phi)
    if u.dim == DIM:
        return hodge != newton
    return hodge > newton

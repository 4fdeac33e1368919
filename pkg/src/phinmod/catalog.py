"""Catalog of normal-form families of admissible modules.

A family fixes a standard shape of (phi, N), a filtration pattern that is
affine in its filtration parameters, valuation constraints on the
eigenvalues, and a rule giving the submodule structure.
"""

from dataclasses import dataclass, field as dataclass_field, replace
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .error_handler import CatalogConstraintError, FieldError, ModuleFormatError
from .linalg import Subspace, echelon_basis
from .logger import logger
from .module import (
    DIM,
    Filtration,
    HodgeType,
    PhiNModule,
    ShapeId,
    standard_monodromy,
    standard_phi,
)
from .valued_field import FieldElement, FieldSpec, make_field

VectorPattern = Callable[[Sequence[FieldElement]], Sequence]


class FamilyId(Enum):
    """Identifiers of the 49 families."""

    CRIS1 = "Cris1"
    CRIS2 = "Cris2"
    CRIS3 = "Cris3"
    CRIS4 = "Cris4"
    CRIS5 = "Cris5"
    CRIS6 = "Cris6"
    CRIS7 = "Cris7"
    CRIS8 = "Cris8"
    CRIS9 = "Cris9"
    CRIS10 = "Cris10"
    CRIS11 = "Cris11"
    CRIS12 = "Cris12"
    CRIS13 = "Cris13"
    CRIS14 = "Cris14"
    CRIS15 = "Cris15"
    CRIS16 = "Cris16"
    CRIS17 = "Cris17"
    CRIS18 = "Cris18"
    CRIS19 = "Cris19"
    CRIS20 = "Cris20"
    CRIS21 = "Cris21"
    CRIS22 = "Cris22"
    CRIS23 = "Cris23"
    CRIS24 = "Cris24"
    CRIS25 = "Cris25"
    CRIS26 = "Cris26"
    R1_1 = "R1_1"
    R1_2 = "R1_2"
    R1_3 = "R1_3"
    R1_4 = "R1_4"
    R1_5 = "R1_5"
    R1_6 = "R1_6"
    R1_7 = "R1_7"
    R1_8 = "R1_8"
    R1_9 = "R1_9"
    R1_10 = "R1_10"
    R1_11 = "R1_11"
    R1_12 = "R1_12"
    R1_13 = "R1_13"
    R1_14 = "R1_14"
    R1_15 = "R1_15"
    R1_16 = "R1_16"
    R1_17 = "R1_17"
    R1_18 = "R1_18"
    R1_19 = "R1_19"
    R1_20 = "R1_20"
    R2_1 = "R2_1"
    R2_2 = "R2_2"
    R2_3 = "R2_3"

    @property
    def n_rank(self) -> int:
        if self.value.startswith("Cris"):
            return 0
        return 1 if self.value.startswith("R1") else 2

    @property
    def number(self) -> int:
        return int(self.value.replace("Cris", "").split("_")[-1])

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        try:
            return cls(text)
        except ValueError:
            raise ModuleFormatError(f"unknown family id {text!r}", "id") from None


@dataclass(frozen=True)
class FamilyInstance:
    """A family together with concrete parameters.

    Attributes:
        id: The family
        eigen_params: lambda, (lambda, lambda3), (lambda, lambda2) or
            (lambda1, lambda2, lambda3) depending on the shape
        fil_params: The filtration parameters of the pattern
        hodge: The Hodge type
    """

    id: FamilyId
    eigen_params: Tuple[FieldElement, ...]
    fil_params: Tuple[FieldElement, ...]
    hodge: HodgeType

    @property
    def field(self) -> FieldSpec:
        return self.eigen_params[0].field

    def valuations(self) -> Tuple[Fraction, ...]:
        return tuple(x.valuation() for x in self.eigen_params)

    def to_json(self) -> dict:
        return {
            "id": self.id.value,
            "eigen_params": [x.to_strings() for x in self.eigen_params],
            "fil_params": [x.to_strings() for x in self.fil_params],
            "hodge": self.hodge.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict, field: FieldSpec) -> "FamilyInstance":
        """Parse the text encoding.

        Raises:
            ModuleFormatError: naming the offending field
        """
        for key in ("id", "eigen_params", "hodge"):
            if key not in doc:
                raise ModuleFormatError(f"missing field {key!r}", key)
        try:
            eigen = tuple(field.parse(x) for x in doc["eigen_params"])
            fil = tuple(field.parse(x) for x in doc.get("fil_params", []))
        except (FieldError, ValueError, ZeroDivisionError, TypeError) as e:
            raise ModuleFormatError(f"bad parameter: {e}", "params") from e
        try:
            r, s = int(doc["hodge"]["r"]), int(doc["hodge"]["s"])
        except (KeyError, TypeError, ValueError) as e:
            raise ModuleFormatError("expected {r, s}", "hodge") from e
        return cls(FamilyId.parse(doc["id"]), eigen, fil, HodgeType(r, s))

    def __str__(self):
        eigen = ", ".join(repr(x) for x in self.eigen_params)
        fil = ", ".join(repr(x) for x in self.fil_params)
        return f"{self.id.value}(r={self.hodge.r}, s={self.hodge.s}; {eigen}; {fil})"


class ReducibilityKind(Enum):
    DECOMPOSABLE = "Decomposable"
    NON_SPLIT = "NonSplitReducible"
    IRREDUCIBLE = "Irreducible"


@dataclass(frozen=True)
class ReducibilityReport:
    """Submodule structure of a family instance."""

    kind: ReducibilityKind
    submodules: Tuple[Subspace, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "submodules": [u.to_strings() for u in self.submodules]}


# A submodule rule returns the kind and spanning vectors of each submodule
SubmoduleRule = Callable[[HodgeType, Tuple[Fraction, ...], Sequence[FieldElement]],
                         Tuple[ReducibilityKind, List[List[Sequence]]]]


@dataclass(frozen=True)
class Constraint:
    """A valuation condition, with the text echoed by enumerate."""

    text: str
    holds: Callable[[int, int, Tuple[Fraction, ...]], bool]


# t_N(D) = sum(weights[i] * v(eigen[i])) + offset for each shape
NEWTON_WEIGHTS: Dict[ShapeId, Tuple[Tuple[int, ...], int]] = {
    ShapeId.CRYS1: ((3,), 0),
    ShapeId.CRYS2: ((3,), 0),
    ShapeId.CRYS3: ((3,), 0),
    ShapeId.CRYS4: ((2, 1), 0),
    ShapeId.CRYS5: ((2, 1), 0),
    ShapeId.CRYS6: ((1, 1, 1), 0),
    ShapeId.RANK1_1: ((3,), 1),
    ShapeId.RANK1_2: ((3,), 1),
    ShapeId.RANK1_3: ((3,), 2),
    ShapeId.RANK1_4: ((3,), 2),
    ShapeId.RANK1_5: ((2, 1), 1),
    ShapeId.RANK2: ((3,), 3),
}


def eigen_violations(shape: ShapeId, eigen: Sequence[FieldElement]) -> List[str]:
    """Conditions on the eigenvalues that keep the shape what it is."""
    found = [f"eigenvalue {i + 1} is zero" for i, x in enumerate(eigen) if x.is_zero()]
    if found:
        return found
    if shape in (ShapeId.CRYS4, ShapeId.CRYS5) and eigen[0] == eigen[1]:
        found.append("lambda and lambda3 must differ")
    if shape is ShapeId.CRYS6 and len({x for x in eigen}) != 3:
        found.append("lambda1, lambda2, lambda3 must be distinct")
    if shape is ShapeId.RANK1_5:
        p = eigen[0].field.prime
        if eigen[1] == eigen[0] or eigen[1] == p * eigen[0]:
            found.append("lambda2 must differ from lambda and p*lambda")
    return found


@dataclass(frozen=True)
class CatalogEntry:
    """One normal-form family.

    Attributes:
        id: Family identifier
        shape: Standard shape of (phi, N)
        eigen_names: Names of the eigenvalue parameters
        fil_domains: ``"any"``, ``"nonzero"`` or ``"not01"`` per filtration
            parameter
        fil_s: Pattern of the Fil^s line, affine in the parameters
        fil_r: Pattern of two vectors spanning Fil^r; when it varies with
            the parameters its first vector is the Fil^s vector
        constraints: Valuation conditions
        submodules: The reducibility rule
        swaps: Eigenvalue permutations giving isomorphic instances
        projective: The filtration parameters form a point of P^1
    """

    id: FamilyId
    shape: ShapeId
    eigen_names: Tuple[str, ...]
    fil_domains: Tuple[str, ...]
    fil_s: VectorPattern
    fil_r: Callable[[Sequence[FieldElement]], Tuple[Sequence, Sequence]]
    constraints: Tuple[Constraint, ...]
    submodules: SubmoduleRule
    swaps: Tuple[Tuple[int, ...], ...] = ()
    projective: bool = False

    @property
    def n_rank(self) -> int:
        return self.shape.n_rank

    def filtration(self, field: FieldSpec, params: Sequence[FieldElement]) -> Filtration:
        return Filtration(
            echelon_basis(field, [self.fil_s(params)], DIM),
            echelon_basis(field, list(self.fil_r(params)), DIM),
        )

    def param_violations(self, fi: FamilyInstance) -> List[str]:
        found = []
        if len(fi.eigen_params) != len(self.eigen_names):
            return [f"expected {len(self.eigen_names)} eigenvalue parameters, got {len(fi.eigen_params)}"]
        if len(fi.fil_params) != len(self.fil_domains):
            return [f"expected {len(self.fil_domains)} filtration parameters, got {len(fi.fil_params)}"]
        found.extend(eigen_violations(self.shape, fi.eigen_params))
        for i, (x, domain) in enumerate(zip(fi.fil_params, self.fil_domains)):
            name = f"L{i + 1}" if len(self.fil_domains) > 1 else "L"
            if domain == "nonzero" and x.is_zero():
                found.append(f"{name} must be nonzero")
            if domain == "not01" and (x.is_zero() or x == 1):
                found.append(f"{name} must lie outside {{0,1}}")
        if self.projective and all(x.is_zero() for x in fi.fil_params):
            found.append("projective parameters must not all vanish")
        return found

    def valuation_violations(self, hodge: HodgeType, valuations: Tuple[Fraction, ...]) -> List[str]:
        return [c.text for c in self.constraints if not c.holds(hodge.r, hodge.s, valuations)]


@dataclass(frozen=True)
class EnumeratedFamily:
    """A family with satisfiable constraints for a Hodge type."""

    id: FamilyId
    constraints: Tuple[str, ...]
    ranges: Dict[str, Tuple[Fraction, Fraction]] = dataclass_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id.value,
            "constraints": list(self.constraints),
            "valuation_ranges": {k: [str(lo), str(hi)] for k, (lo, hi) in self.ranges.items()},
        }


class Catalog:
    """Immutable collection of catalog entries in fixed order."""

    def __init__(self, entries: Iterable[CatalogEntry]):
        self._entries: Dict[FamilyId, CatalogEntry] = {}
        for entry in entries:
            self._entries[entry.id] = entry

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    def get(self, family: FamilyId) -> CatalogEntry:
        return self._entries[family]

    def for_shape(self, shape: ShapeId) -> List[CatalogEntry]:
        return [e for e in self if e.shape is shape]

    def replace(self, family: FamilyId, **changes) -> "Catalog":
        """A copy with one entry altered (used for fault injection)."""
        return Catalog(replace(e, **changes) if e.id is family else e for e in self)

    def violations(self, fi: FamilyInstance) -> List[str]:
        entry = self.get(fi.id)
        found = entry.param_violations(fi)
        if found:
            return found
        return entry.valuation_violations(fi.hodge, fi.valuations())

    def instantiate(self, fi: FamilyInstance, check: bool = True) -> PhiNModule:
        """The representative module of a family instance.

        Args:
            fi: The instance
            check: Reject parameters outside the family's constraints

        Raises:
            CatalogConstraintError: listing each violated constraint
        """
        entry = self.get(fi.id)
        if check:
            found = self.violations(fi)
            if found:
                raise CatalogConstraintError(fi.id.value, found)
        field = fi.field
        return PhiNModule(
            field=field,
            hodge=fi.hodge,
            phi=standard_phi(field, entry.shape, fi.eigen_params),
            N=standard_monodromy(field, entry.n_rank),
            fil=entry.filtration(field, fi.fil_params),
        )

    def reducibility(self, fi: FamilyInstance) -> ReducibilityReport:
        """Submodule structure of a valid instance."""
        entry = self.get(fi.id)
        kind, spans = entry.submodules(fi.hodge, fi.valuations(), fi.fil_params)
        field = fi.field
        return ReducibilityReport(kind, tuple(echelon_basis(field, span, DIM) for span in spans))

    def enumerate_families(self, hodge: HodgeType, n_rank: Optional[int] = None,
                           ramification: int = 6) -> List[EnumeratedFamily]:
        """Families whose valuation constraints are satisfiable for ``hodge``.

        Valuations range over the (1/e)Z grid in [0, r+s]; the last
        eigenvalue valuation is fixed by t_N(D) = r + s.
        """
        grid_field = make_field(2, ramification)
        grid = grid_field.grid_valuations(0, hodge.total)
        found = []
        for entry in self:
            if n_rank is not None and entry.n_rank != n_rank:
                continue
            solutions = list(valuation_solutions(entry, hodge, grid, ramification))
            if not solutions:
                continue
            ranges = {
                name: (min(v[i] for v in solutions), max(v[i] for v in solutions))
                for i, name in enumerate(entry.eigen_names)
            }
            found.append(EnumeratedFamily(entry.id, tuple(c.text for c in entry.constraints), ranges))
        logger.debug(f"enumerate r={hodge.r} s={hodge.s} rank={n_rank}: {len(found)} families")
        return found


def valuation_solutions(entry: CatalogEntry, hodge: HodgeType, grid: List[Fraction],
                        ramification: int):
    """Valuation tuples on the grid meeting every constraint of ``entry``."""
    weights, offset = NEWTON_WEIGHTS[entry.shape]
    target = hodge.total - offset
    for head in product(grid, repeat=len(weights) - 1):
        rest = target - sum(w * v for w, v in zip(weights, head))
        last = Fraction(rest, weights[-1])
        if last < 0 or (last * ramification).denominator != 1:
            continue
        valuations = tuple(head) + (last,)
        if not entry.valuation_violations(hodge, valuations):
            yield valuations


def coordinate_span(*indices: int) -> List[List[int]]:
    """Spanning vectors of E(e_i : i in indices), 1-based."""
    return [[1 if j == i - 1 else 0 for j in range(DIM)] for i in indices]

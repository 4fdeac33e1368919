"""Identify an admissible module as an instance of a catalog family.

After normalization, (phi, N) is standard and only its commutant C may
still act. The filtration is matched against a family pattern in two
linear steps inside C: first the Fil^s line, then Fil^r while the line
is held fixed.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from .admissibility import is_admissible
from .catalog import Catalog, CatalogEntry, FamilyInstance
from .error_handler import (
    AmbiguousMatchError,
    CatalogConstraintError,
    ErrorHandler,
    NoFamilyMatchError,
    NotAdmissibleError,
)
from .equivalence import param_equivalent
from .families import CATALOG
from .linalg import Matrix, echelon_basis, find_invertible, intertwiner_space, solve_affine
from .logger import logger
from .module import DIM, PhiNModule, ShapeId
from .normalizer import NormalForm
from .valued_field import FieldElement, FieldSpec

Vector = Tuple[FieldElement, ...]


@dataclass(frozen=True)
class Classification:
    """A family instance and the basis change reaching its representative.

    ``module.transported(transition)`` equals the instantiated representative.
    """

    instance: FamilyInstance
    transition: Matrix

    def to_json(self) -> dict:
        return {"family": self.instance.to_json(), "transition": self.transition.to_strings()}


def commutant(phi: Matrix, N: Matrix) -> List[Matrix]:
    """Basis of the matrices commuting with both phi and N."""
    return intertwiner_space([(phi, phi), (N, N)])


def _vec(field: FieldSpec, v: Sequence) -> Vector:
    return tuple(field.element(x) for x in v)


def _affine_parts(pattern, field: FieldSpec, count: int) -> Tuple[Vector, List[Vector]]:
    """Split an affine vector pattern into constant and per-parameter parts."""
    zero = [field.zero] * count
    base = _vec(field, pattern(zero))
    parts = []
    for k in range(count):
        unit = list(zero)
        unit[k] = field.one
        shifted = _vec(field, pattern(unit))
        parts.append(tuple(a - b for a, b in zip(shifted, base)))
    return base, parts


def _pattern_is_plane(entry: CatalogEntry, field: FieldSpec) -> bool:
    """Whether Fil^r of the pattern is the same plane for every parameter."""
    count = len(entry.fil_domains)
    zero = [field.zero] * count
    reference = echelon_basis(field, list(entry.fil_r(zero)), DIM)
    for k in range(count):
        unit = list(zero)
        unit[k] = field.one
        if echelon_basis(field, list(entry.fil_r(unit)), DIM) != reference:
            return False
    return True


def _combination(basis: Sequence[Matrix], coords: Sequence[FieldElement], field: FieldSpec) -> Matrix:
    result = Matrix.zeros(field, DIM, DIM)
    for c, m in zip(coords, basis):
        if not c.is_zero():
            result = result + m.scale(c)
    return result


def _solve_in_commutant(basis: Sequence[Matrix], rows: List[List[FieldElement]],
                        rhs: List[FieldElement], field: FieldSpec):
    """Solve for (q, extra unknowns) and pick an invertible Q = sum q_j P_j.

    Returns:
        (Q, full solution vector) or None
    """
    ncols = len(rows[0])
    particular, null = solve_affine(rows, rhs, ncols, field)
    if particular is None:
        return None
    m = len(basis)
    base = _combination(basis, particular[:m], field)
    directions = [_combination(basis, n[:m], field) for n in null]
    found = find_invertible(base, directions, field, DIM)
    if found is None:
        return None
    q_matrix, point = found
    solution = list(particular)
    for c, n in zip(point, null):
        if c:
            solution = [s + c * x for s, x in zip(solution, n)]
    return q_matrix, solution


def _step_line(basis, w1: Vector, c1: Vector, d1: List[Vector], field: FieldSpec):
    """Find Q in C with Q w1 = v1(L) for the parameters L in the line pattern."""
    used = [k for k, d in enumerate(d1) if any(not x.is_zero() for x in d)]
    images = [P.apply(w1) for P in basis]
    rows = []
    for i in range(DIM):
        row = [img[i] for img in images] + [-d1[k][i] for k in used]
        rows.append(row)
    solved = _solve_in_commutant(basis, rows, list(c1), field)
    if solved is None:
        return None
    Q, solution = solved
    values = dict(zip(used, solution[len(basis):]))
    return Q, values


def _step_plane(basis, v1: Vector, w: Vector, entry: CatalogEntry, plane_mode: bool,
                field: FieldSpec, count: int):
    """Find Q in C fixing the line v1 and carrying Fil^r onto the pattern."""
    m = len(basis)
    line_images = [P.apply(v1) for P in basis]
    plane_images = [P.apply(w) for P in basis]
    rows: List[List[FieldElement]] = []
    rhs: List[FieldElement] = []
    if plane_mode:
        target = echelon_basis(field, list(entry.fil_r([field.zero] * count)), DIM)
        used: List[int] = []
        width = m + 1
        for i in range(DIM):
            rows.append([img[i] for img in line_images] + [-v1[i]])
            rhs.append(field.zero)
        for f in target.annihilator():
            rows.append([sum((a * b for a, b in zip(f, img)), field.zero) for img in plane_images]
                        + [field.zero])
            rhs.append(field.zero)
    else:
        c2, d2 = _affine_parts(lambda L: entry.fil_r(L)[1], field, count)
        used = [k for k, d in enumerate(d2) if any(not x.is_zero() for x in d)]
        width = m + 2 + len(used)
        for i in range(DIM):
            rows.append([img[i] for img in line_images] + [-v1[i], field.zero]
                        + [field.zero] * len(used))
            rhs.append(field.zero)
        for i in range(DIM):
            rows.append([img[i] for img in plane_images] + [field.zero, -v1[i]]
                        + [-d2[k][i] for k in used])
            rhs.append(c2[i])
    assert all(len(r) == width for r in rows)
    solved = _solve_in_commutant(basis, rows, rhs, field)
    if solved is None:
        return None
    Q, solution = solved
    offset = m + 2
    return Q, {k: solution[offset + j] for j, k in enumerate(used)}


def _normalize_projective(params: List[FieldElement]) -> List[FieldElement]:
    lead = next((x for x in params if not x.is_zero()), None)
    if lead is None:
        return params
    return [x / lead for x in params]


def _permutation_matrix(field: FieldSpec, sigma: Sequence[int]) -> Matrix:
    """Pi with Pi e_sigma(k) = e_k."""
    return Matrix(field, [[1 if j == sigma[k] else 0 for j in range(DIM)] for k in range(DIM)])


def _orderings(nf: NormalForm) -> List[Tuple[Tuple[FieldElement, ...], Matrix]]:
    field = nf.module.field
    if nf.shape is not ShapeId.CRYS6:
        return [(nf.eigen, Matrix.identity(field, DIM))]
    out = []
    for sigma in permutations(range(DIM)):
        out.append((tuple(nf.eigen[i] for i in sigma), _permutation_matrix(field, sigma)))
    return out


def match_entry(entry: CatalogEntry, module: PhiNModule, eigen: Tuple[FieldElement, ...],
                basis: Sequence[Matrix], catalog: Catalog) -> Optional[Tuple[FamilyInstance, Matrix]]:
    """Try to carry a standard module onto one family's pattern.

    Args:
        entry: The candidate family
        module: Module with standard (phi, N) of ``entry.shape``
        eigen: Eigenvalue parameters in the order of ``module.phi``
        basis: Basis of the commutant of (phi, N)
        catalog: Catalog used to check constraints

    Returns:
        (instance, Q) with module.transported(Q) equal to the representative,
        or None when the module is not in this family

    Raises:
        CatalogConstraintError: when the filtration fits the pattern but the
            parameters violate the family's constraints
    """
    field = module.field
    count = len(entry.fil_domains)
    c1, d1 = _affine_parts(entry.fil_s, field, count)
    step1 = _step_line(basis, module.fil.L1.basis[0], c1, d1, field)
    if step1 is None:
        return None
    q1, values = step1
    moved = module.fil.transported(q1)
    v1 = moved.L1.basis[0]
    w = next(b for b in moved.L2.basis if not moved.L1.contains_vector(b))
    plane_mode = _pattern_is_plane(entry, field)
    step2 = _step_plane(basis, v1, w, entry, plane_mode, field, count)
    if step2 is None:
        return None
    q2, more = step2
    values.update(more)
    params = [values.get(k, field.zero) for k in range(count)]
    if entry.projective:
        params = _normalize_projective(params)
    instance = FamilyInstance(entry.id, tuple(eigen), tuple(params), module.hodge)
    transition = q2 @ q1
    if module.fil.transported(transition) != entry.filtration(field, params):
        return None
    violations = catalog.violations(instance)
    if violations:
        raise CatalogConstraintError(entry.id.value, violations)
    return instance, transition


def find_matches(nf: NormalForm, catalog: Catalog = CATALOG) -> List[Classification]:
    """Every (family, eigenvalue order) the normal form matches."""
    matches = []
    for eigen, perm in _orderings(nf):
        module = nf.module.transported(perm)
        basis = commutant(module.phi, module.N)
        for entry in catalog.for_shape(nf.shape):
            found = ErrorHandler.safe_call(match_entry, entry, module, eigen, basis, catalog,
                                           errors=(CatalogConstraintError,))
            if found is not None:
                instance, q = found
                matches.append(Classification(instance, q @ perm @ nf.transition))
    return matches


def classify(m: PhiNModule, catalog: Catalog = CATALOG) -> Classification:
    """Identify an admissible module with a family instance.

    Args:
        m: An admissible module
        catalog: The family catalog

    Returns:
        The Classification; ``m.transported(transition)`` is the
        representative of ``instance``

    Raises:
        NotAdmissibleError: for an inadmissible module
        NoFamilyMatchError: when no family matches
        AmbiguousMatchError: when two non-equivalent families match
    """
    result = is_admissible(m)
    if not result.admissible:
        raise NotAdmissibleError(result.describe(), witness=result)
    matches = find_matches(result.normal_form, catalog)
    if not matches:
        raise NoFamilyMatchError(f"no family matches module of shape {result.normal_form.shape.value}")
    first = matches[0]
    for other in matches[1:]:
        if not param_equivalent(first.instance, other.instance, catalog):
            raise AmbiguousMatchError(f"{first.instance} and {other.instance} both match")
    logger.debug(f"classified as {first.instance} ({len(matches)} equivalent matches)")
    return first

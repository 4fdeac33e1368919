"""Bring (phi, N) to one of the twelve standard shapes.

Every transition T returned here satisfies ``T phi T^-1 = standard`` and
``T N T^-1 = standard N``; a module is carried along by ``transported(T)``.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .error_handler import NormalizationError
from .linalg import Matrix, Subspace, determinant, nullspace
from .logger import logger
from .module import (
    DIM,
    JordanHint,
    PhiNModule,
    ShapeId,
    ensure_valid,
    standard_monodromy,
    standard_phi,
)
from .valued_field import FieldElement, FieldSpec


def _unit_vector(field: FieldSpec, j: int) -> Tuple[FieldElement, ...]:
    return tuple(field.one if i == j else field.zero for i in range(DIM))


def _first_moved(field: FieldSpec, m: Matrix) -> Tuple[FieldElement, ...]:
    """The first standard basis vector not killed by ``m``."""
    for j in range(DIM):
        e = _unit_vector(field, j)
        if any(not x.is_zero() for x in m.apply(e)):
            return e
    raise NormalizationError("expected a nonzero operator")


def _independent_of(field: FieldSpec, candidates: Sequence, span: Sequence) -> Tuple[FieldElement, ...]:
    base = Subspace.span(field, span, DIM)
    for v in candidates:
        if not base.contains_vector(v):
            return tuple(v)
    raise NormalizationError("no independent vector available")


def align_monodromy(N: Matrix) -> Tuple[Matrix, Matrix]:
    """Carry a nilpotent N to its standard form.

    Args:
        N: Nilpotent 3x3 monodromy

    Returns:
        (standard N for its rank, transition T with T N T^-1 = standard)

    Raises:
        NormalizationError: if N is not nilpotent
    """
    field = N.field
    if not N.power(DIM).is_zero():
        raise NormalizationError("N not nilpotent")
    rank = N.rank()
    if rank == 0:
        return standard_monodromy(field, 0), Matrix.identity(field, DIM)
    if rank == 1:
        b1 = _first_moved(field, N)
        b3 = N.apply(b1)
        b2 = _independent_of(field, nullspace(N.rows, DIM, field), [b3])
        columns = [b1, b2, b3]
    else:
        b1 = _first_moved(field, N @ N)
        b2 = N.apply(b1)
        columns = [b1, b2, N.apply(b2)]
    transition = Matrix.from_columns(field, columns).inverse()
    standard = standard_monodromy(field, rank)
    assert transition @ N @ transition.inverse() == standard
    return standard, transition


def _is_lower_triangular(m: Matrix) -> bool:
    return all(m[i, j].is_zero() for i in range(DIM) for j in range(i + 1, DIM))


def _is_upper_triangular(m: Matrix) -> bool:
    return all(m[i, j].is_zero() for i in range(DIM) for j in range(i))


def _check_eigenvalues(phi: Matrix, eigen: Sequence[FieldElement]) -> None:
    """Verify that ``eigen`` is the characteristic-root multiset of phi."""
    field = phi.field
    if len(eigen) != DIM:
        raise NormalizationError(f"expected {DIM} eigenvalues, got {len(eigen)}")
    trace = phi[0, 0] + phi[1, 1] + phi[2, 2]
    minors = field.zero
    for i in range(DIM):
        for j in range(i + 1, DIM):
            minors = minors + phi[i, i] * phi[j, j] - phi[i, j] * phi[j, i]
    a, b, c = (field.element(x) for x in eigen)
    if (a + b + c != trace or a * b + a * c + b * c != minors
            or a * b * c != determinant(phi)):
        raise NormalizationError("supplied eigenvalues do not match the characteristic polynomial")


def _eigenvalues(phi: Matrix, hint: Optional[JordanHint]) -> Tuple[Matrix, Matrix, List[FieldElement]]:
    """(working phi, transition into it, eigenvalue multiset)."""
    field = phi.field
    transition = Matrix.identity(field, DIM)
    if hint is not None and hint.change_of_basis is not None:
        transition = hint.change_of_basis
        phi = transition @ phi @ transition.inverse()
    if hint is not None and hint.eigenvalues:
        eigen = [field.element(x) for x in hint.eigenvalues]
    elif _is_lower_triangular(phi) or _is_upper_triangular(phi):
        eigen = [phi[i, i] for i in range(DIM)]
    else:
        raise NormalizationError(
            "eigenvalues not available: supply a triangular phi or a jordan hint"
        )
    _check_eigenvalues(phi, eigen)
    return phi, transition, eigen


def _distinct(eigen: Sequence[FieldElement]) -> List[Tuple[FieldElement, int]]:
    counted: List[Tuple[FieldElement, int]] = []
    for x in eigen:
        for i, (y, k) in enumerate(counted):
            if x == y:
                counted[i] = (y, k + 1)
                break
        else:
            counted.append((x, 1))
    return counted


def eigen_order_key(x: FieldElement):
    """Valuation descending, ties by the encoding order."""
    return (-x.valuation(), x.sort_key())


def _crystalline(phi: Matrix, hint: Optional[JordanHint]) -> Tuple[ShapeId, List[FieldElement], Matrix]:
    field = phi.field
    phi, pre, eigen = _eigenvalues(phi, hint)
    identity = Matrix.identity(field, DIM)
    counted = sorted(_distinct(eigen), key=lambda item: -item[1])
    lam = counted[0][0]
    M = phi - identity.scale(lam)
    if len(counted) == 1:
        rank = M.rank()
        if rank == 0:
            return ShapeId.CRYS1, [lam], pre
        if rank == 1:
            b1 = _first_moved(field, M)
            b2 = M.apply(b1)
            b3 = _independent_of(field, nullspace(M.rows, DIM, field), [b2])
            shape = ShapeId.CRYS2
        else:
            b1 = _first_moved(field, M @ M)
            b2 = M.apply(b1)
            b3 = M.apply(b2)
            shape = ShapeId.CRYS3
        columns, params = [b1, b2, b3], [lam]
    elif len(counted) == 2:
        lam3 = counted[1][0]
        kernel3 = nullspace((phi - identity.scale(lam3)).rows, DIM, field)
        if M.rank() == 1:
            kernel = nullspace(M.rows, DIM, field)
            columns = [kernel[0], kernel[1], kernel3[0]]
            shape = ShapeId.CRYS4
        else:
            kernel_m = Subspace.span(field, nullspace(M.rows, DIM, field), DIM)
            b1 = _independent_of(field, nullspace((M @ M).rows, DIM, field), kernel_m.basis)
            columns = [b1, M.apply(b1), kernel3[0]]
            shape = ShapeId.CRYS5
        params = [lam, lam3]
    else:
        params = sorted(eigen, key=eigen_order_key)
        columns = [nullspace((phi - identity.scale(mu)).rows, DIM, field)[0] for mu in params]
        shape = ShapeId.CRYS6
    transition = Matrix.from_columns(field, columns).inverse() @ pre
    return shape, params, transition


def _rank1(phi: Matrix) -> Tuple[ShapeId, List[FieldElement], Matrix]:
    """Rank-1 reduction; phi is [[px,0,0],[u,y,0],[v,w,x]] when N e1 = e3."""
    field = phi.field
    p = field.prime
    x, u, v = phi[2, 2], phi[1, 0], phi[2, 0]
    y, w = phi[1, 1], phi[2, 1]
    if any(not phi[i, j].is_zero() for i, j in ((0, 1), (0, 2), (1, 2))) or phi[0, 0] != p * x:
        raise NormalizationError("phi incompatible with N phi = p phi N")
    one_p = field.one - p
    if y == x and w.is_zero():
        shape, eigen = ShapeId.RANK1_1, [x]
        P = [[1, 0, 0], [u / (x * one_p), 1, 0], [v / (x * one_p), 0, 1]]
    elif y == x:
        shape, eigen = ShapeId.RANK1_2, [x]
        P = [[1, 0, 0],
             [u * w / (x * one_p), w, 0],
             [(v * x * one_p - u * w) / (x * x * one_p * one_p), 0, 1]]
    elif y == p * x and u.is_zero():
        shape, eigen = ShapeId.RANK1_3, [x]
        P = [[1, 0, 0], [0, 1, 0], [v / (x * one_p), w / (x * one_p), 1]]
    elif y == p * x:
        shape, eigen = ShapeId.RANK1_4, [x]
        P = [[u, 0, 0],
             [0, 1, 0],
             [(u * u * w + u * v * x * one_p) / (x * x * one_p * one_p), u * w / (x * one_p), u]]
    else:
        shape, eigen = ShapeId.RANK1_5, [x, y]
        P = [[1, 0, 0],
             [u / (y - p * x), 1, 0],
             [(v * x - v * y + u * w) / (x * (x - y) * one_p), w / (x - y), 1]]
    return shape, eigen, Matrix(field, P)


def _rank2(phi: Matrix) -> Tuple[ShapeId, List[FieldElement], Matrix]:
    """Rank-2 reduction; phi is [[p^2x,0,0],[py,px,0],[z,y,x]] on the chain basis."""
    field = phi.field
    p = field.prime
    x, y, z = phi[2, 2], phi[2, 1], phi[2, 0]
    expected = Matrix(field, [[p * p * x, 0, 0], [p * y, p * x, 0], [z, y, x]])
    if phi != expected:
        raise NormalizationError("phi incompatible with N phi = p phi N")
    one_p = field.one - p
    a = y / (x * one_p)
    b = (p * y * y + z * x * one_p) / (x * x * one_p * (field.one - p * p))
    return ShapeId.RANK2, [x], Matrix(field, [[1, 0, 0], [a, 1, 0], [b, a, 1]])


def normalize_phi(phi: Matrix, n_rank: int,
                  jordan_hint: Optional[JordanHint] = None) -> Tuple[ShapeId, Matrix, Matrix]:
    """Reduce phi to a standard shape, keeping the standard N fixed.

    Args:
        phi: Frobenius, already written in the basis where N is standard
        n_rank: Rank of N (0, 1 or 2)
        jordan_hint: Eigenvalues (and optionally a triangularizing basis)
            for the crystalline case

    Returns:
        (shape, standard phi, transition)

    Raises:
        NormalizationError: when eigenvalues are unavailable or phi does
            not commute with N up to p
    """
    shape, eigen, transition = _normalize(phi, n_rank, jordan_hint)
    standard = standard_phi(phi.field, shape, eigen)
    if transition @ phi @ transition.inverse() != standard:
        raise NormalizationError(f"reduction to {shape.value} failed to reach the standard form")
    return shape, standard, transition


def _normalize(phi: Matrix, n_rank: int, hint: Optional[JordanHint]):
    if n_rank == 0:
        return _crystalline(phi, hint)
    if n_rank == 1:
        return _rank1(phi)
    if n_rank == 2:
        return _rank2(phi)
    raise NormalizationError(f"monodromy rank {n_rank} impossible in dimension 3")


@dataclass(frozen=True)
class NormalForm:
    """A module rewritten in a standard basis.

    Attributes:
        shape: The standard shape of (phi, N)
        eigen: Eigenvalue parameters of the standard phi
        module: The transported module (standard phi and N)
        transition: T with module == original.transported(T)
    """

    shape: ShapeId
    eigen: Tuple[FieldElement, ...]
    module: PhiNModule
    transition: Matrix


def normalize_module(m: PhiNModule) -> NormalForm:
    """Validate ``m`` and carry it to its standard shape."""
    ensure_valid(m)
    standard_n, t_n = align_monodromy(m.N)
    aligned_phi = t_n @ m.phi @ t_n.inverse()
    n_rank = m.N.rank()
    hint = m.jordan_hint
    if hint is not None and hint.change_of_basis is not None:
        hint = JordanHint(hint.eigenvalues, hint.change_of_basis @ t_n.inverse())
    shape, _, t_phi = normalize_phi(aligned_phi, n_rank, hint)
    transition = t_phi @ t_n
    module = m.transported(transition)
    if module.N != standard_n:
        raise NormalizationError("Frobenius reduction moved the standard monodromy")
    eigen = _eigen_of_standard(module.phi, shape)
    logger.debug(f"normalized to {shape.value} with eigenvalues {eigen}")
    return NormalForm(shape, eigen, module, transition)


def _eigen_of_standard(phi: Matrix, shape: ShapeId) -> Tuple[FieldElement, ...]:
    if shape is ShapeId.CRYS6:
        return (phi[0, 0], phi[1, 1], phi[2, 2])
    if shape in (ShapeId.CRYS4, ShapeId.CRYS5):
        return (phi[0, 0], phi[2, 2])
    if shape is ShapeId.RANK1_5:
        return (phi[2, 2], phi[1, 1])
    return (phi[2, 2],)

"""Exact matrices and subspaces over the model field.

Matrices act on column vectors: entry ``[i][j]`` is the coefficient of
``e_i`` in ``T(e_j)``. Subspaces carry the reduced row-echelon form of a
spanning set (the reduced column-echelon form of the basis matrix), so
equality and hashing are structural. Elimination runs on sympy
``DomainMatrix`` over the number field ``QQ<p^(1/e)>``.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .error_handler import DimensionError, NotInvariantError
from .valued_field import FieldElement, FieldSpec

Vector = Tuple[FieldElement, ...]


def _as_vector(field: FieldSpec, values: Iterable) -> Vector:
    return tuple(field.element(v) for v in values)


def to_domain_matrix(rows: Sequence[Sequence[FieldElement]], ncols: int,
                     field: FieldSpec) -> DomainMatrix:
    """Rows of field elements as a dense DomainMatrix over ``field.domain``."""
    converted = [[field.to_domain(x) for x in r] for r in rows]
    return DomainMatrix(converted, (len(converted), ncols), field.domain)


def _from_domain_rows(dm: DomainMatrix, field: FieldSpec) -> List[List[FieldElement]]:
    return [[field.from_domain(a) for a in r] for r in dm.to_list()]


def rref(rows: Sequence[Sequence[FieldElement]], ncols: int,
         field: FieldSpec) -> Tuple[List[List[FieldElement]], List[int]]:
    """Reduced row-echelon form.

    Args:
        rows: The matrix rows
        ncols: Number of columns (needed when ``rows`` is empty)
        field: Coefficient field

    Returns:
        (nonzero reduced rows, pivot column of each row)
    """
    if not rows:
        return [], []
    reduced, pivots = to_domain_matrix(rows, ncols, field).rref()
    pivots = list(pivots)
    return _from_domain_rows(reduced, field)[:len(pivots)], pivots


def nullspace(rows: Sequence[Sequence[FieldElement]], ncols: int,
              field: FieldSpec) -> List[Vector]:
    """Basis of {x : A x = 0}, one vector per free column of the echelon form."""
    if not rows:
        return [tuple(field.one if i == j else field.zero for j in range(ncols))
                for i in range(ncols)]
    basis = to_domain_matrix(rows, ncols, field).nullspace()
    vectors = []
    for r in _from_domain_rows(basis, field):
        # the last nonzero entry sits at the vector's free column
        scale = next(x for x in reversed(r) if not x.is_zero()).inverse()
        vectors.append(tuple(x * scale for x in r))
    return vectors


def solve_affine(rows: Sequence[Sequence[FieldElement]], rhs: Sequence[FieldElement],
                 ncols: int, field: FieldSpec) -> Tuple[Optional[Vector], List[Vector]]:
    """Solve A x = b exactly.

    Returns:
        (particular solution or None when inconsistent, nullspace basis of A)
    """
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1, field)
    if ncols in pivots:
        return None, nullspace(rows, ncols, field)
    x = [field.zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return tuple(x), nullspace(rows, ncols, field)


class Matrix:
    """An exact matrix over a FieldSpec, immutable and hashable."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence]):
        rows = tuple(_as_vector(field, r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, field: FieldSpec, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence]) -> "Matrix":
        columns = [_as_vector(field, c) for c in columns]
        return cls(field, [[c[i] for c in columns] for i in range(len(columns[0]))])

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int) -> "Matrix":
        """The matrix unit E_ij (0-based)."""
        return cls(field, [[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)])

    # -- shape and access -------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> FieldElement:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def entries(self) -> List[FieldElement]:
        """Entries in row-major order."""
        return [x for r in self.rows for x in r]

    # -- arithmetic -------------------------------------------------------

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = self.field.element(c)
        return Matrix(self.field, [[c * a for a in r] for r in self.rows])

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [self.apply(c) for c in other.columns()]
            return Matrix.from_columns(self.field, cols)
        return self.apply(other)

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.field, self.rows)

    def power(self, n: int) -> "Matrix":
        result = Matrix.identity(self.field, self.nrows)
        for _ in range(n):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def determinant(self) -> FieldElement:
        return determinant(self)

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols, self.field)[1])

    def to_domain_matrix(self) -> DomainMatrix:
        return to_domain_matrix(self.rows, self.ncols, self.field)

    def inverse(self) -> "Matrix":
        """Exact inverse.

        Raises:
            DimensionError: if not square or singular
        """
        if not self.is_square():
            raise DimensionError("inverse of non-square matrix")
        try:
            inverse = self.to_domain_matrix().inv()
        except DMNonInvertibleMatrixError:
            raise DimensionError("matrix is singular")
        return Matrix(self.field, _from_domain_rows(inverse, self.field))

    def conjugate(self, transition: "Matrix") -> "Matrix":
        """T M T^-1."""
        return transition @ self @ transition.inverse()

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(repr(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"

    def to_strings(self) -> List[List[List[str]]]:
        """Text encoding: nested arrays of FieldElement encodings."""
        return [[x.to_strings() for x in r] for r in self.rows]


def determinant(m: Matrix) -> FieldElement:
    """Exact determinant.

    Raises:
        DimensionError: for non-square input
    """
    if not m.is_square():
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    return m.field.from_domain(m.to_domain_matrix().det())


@dataclass(frozen=True)
class Subspace:
    """A subspace of E^n stored by its canonical echelon basis.

    Attributes:
        field: Coefficient field
        ambient_dim: n
        basis: Reduced echelon basis vectors (pivot entries equal 1)
    """

    field: FieldSpec
    ambient_dim: int
    basis: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return echelon_basis(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def span(cls, field: FieldSpec, vectors: Sequence[Sequence], n: Optional[int] = None) -> "Subspace":
        return echelon_basis(field, vectors, n)

    @classmethod
    def coordinate(cls, field: FieldSpec, n: int, indices: Sequence[int]) -> "Subspace":
        """E(e_i : i in indices), 1-based as in the module notation."""
        vectors = [[1 if j == i - 1 else 0 for j in range(n)] for i in indices]
        return echelon_basis(field, vectors, n)

    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(b) if not x.is_zero()) for b in self.basis]

    def coordinates(self, v: Sequence[FieldElement]) -> Optional[Vector]:
        """Coordinates of v in the echelon basis, or None when v is outside."""
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        coords = tuple(v[p] for p in self.pivots())
        rebuilt = [self.field.zero] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            rebuilt = [r + c * x for r, x in zip(rebuilt, b)]
        if any(a != b for a, b in zip(rebuilt, v)):
            return None
        return coords

    def contains_vector(self, v: Sequence[FieldElement]) -> bool:
        return self.coordinates(v) is not None

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def annihilator(self) -> List[Vector]:
        """Linear functionals vanishing on the subspace."""
        return nullspace(self.basis, self.ambient_dim, self.field)

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return echelon_basis(self.field, list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        functionals = self.annihilator() + other.annihilator()
        return echelon_basis(self.field, nullspace(functionals, self.ambient_dim, self.field),
                             self.ambient_dim)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def image(self, m: Matrix) -> "Subspace":
        """m(U)."""
        return echelon_basis(self.field, [m.apply(v) for v in self.basis], m.nrows)

    def is_invariant(self, m: Matrix) -> bool:
        return all(self.contains_vector(m.apply(v)) for v in self.basis)

    def random_vector(self, rng: np.random.Generator, size: int = 5) -> Vector:
        """A random combination of the basis with small integer weights."""
        out = [self.field.zero] * self.ambient_dim
        for b in self.basis:
            c = int(rng.integers(-size, size + 1))
            if c:
                out = [o + c * x for o, x in zip(out, b)]
        return tuple(out)

    def to_strings(self) -> List[List[List[str]]]:
        return [[x.to_strings() for x in b] for b in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={list(self.basis)})"


def echelon_basis(field: FieldSpec, vectors: Sequence[Sequence], n: Optional[int] = None) -> Subspace:
    """Canonical reduced echelon basis of the span of ``vectors``.

    Args:
        field: Coefficient field
        vectors: Spanning vectors (may be empty or dependent)
        n: Ambient dimension, required when ``vectors`` is empty

    Returns:
        The spanned Subspace

    Raises:
        DimensionError: for vectors of different lengths
    """
    vectors = [_as_vector(field, v) for v in vectors]
    if n is None:
        if not vectors:
            raise DimensionError("ambient dimension needed for an empty span")
        n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionError("vectors do not share the ambient dimension")
    reduced, _ = rref(vectors, n, field)
    return Subspace(field, n, tuple(tuple(r) for r in reduced))


def lattice(a: Subspace, b: Subspace, op: str):
    """Subspace lattice operations.

    Args:
        a: First subspace
        b: Second subspace
        op: ``"intersect"``, ``"sum"`` or ``"contains"`` (does a contain b)

    Returns:
        Subspace for intersect/sum, bool for contains
    """
    if op == "intersect":
        return a.intersect(b)
    if op == "sum":
        return a.join(b)
    if op == "contains":
        return a.contains(b)
    raise ValueError(f"unknown lattice operation {op!r}")


def restrict_operator(m: Matrix, u: Subspace) -> Matrix:
    """Matrix of m on an invariant subspace u in u's echelon basis.

    Raises:
        NotInvariantError: if m(u) is not inside u
    """
    if u.ambient_dim != m.nrows or not m.is_square():
        raise DimensionError("operator and subspace do not fit")
    if u.dim == 0:
        raise DimensionError("restriction to the zero subspace")
    columns = []
    for b in u.basis:
        coords = u.coordinates(m.apply(b))
        if coords is None:
            raise NotInvariantError("subspace is not invariant under the operator")
        columns.append(coords)
    return Matrix.from_columns(m.field, columns)


def quotient_operator(m: Matrix, u: Subspace) -> Matrix:
    """Matrix of the map induced by m on D/u.

    The complement is spanned by the standard vectors at u's non-pivot
    positions, which makes m block triangular in the adapted basis.
    """
    n = m.nrows
    free = [i for i in range(n) if i not in u.pivots()]
    field = m.field
    adapted = Matrix.from_columns(field, list(u.basis) + [
        [1 if j == i else 0 for j in range(n)] for i in free
    ])
    block = adapted.inverse() @ m @ adapted
    k = u.dim
    return Matrix(field, [r[k:] for r in block.rows[k:]])


def _unknown_matrix_rows(n: int, coefficients: Sequence[Tuple[int, int, FieldElement]],
                         field: FieldSpec) -> List[FieldElement]:
    row = [field.zero] * (n * n)
    for i, j, c in coefficients:
        row[i * n + j] = row[i * n + j] + c
    return row


def intertwiner_space(pairs: Sequence[Tuple[Matrix, Matrix]],
                      containments: Sequence[Tuple[Sequence[FieldElement], Subspace]] = ()) -> List[Matrix]:
    """Basis of {P : P A_i = B_i P for all i, P w in S for all (w, S)}.

    Args:
        pairs: (A_i, B_i) square matrices of one size
        containments: extra linear conditions ``P w in S``

    Returns:
        Basis matrices of the solution space
    """
    if not pairs:
        raise DimensionError("at least one pair is required")
    field = pairs[0][0].field
    n = pairs[0][0].nrows
    for a, b in pairs:
        if a.shape != (n, n) or b.shape != (n, n):
            raise DimensionError("intertwiner pairs must be square of equal size")
    equations = []
    for a, b in pairs:
        for i in range(n):
            for k in range(n):
                # (P A)_ik - (B P)_ik = sum_j P_ij A_jk - sum_j B_ij P_jk
                coeffs = [(i, j, a[j, k]) for j in range(n)]
                coeffs += [(j, k, -b[i, j]) for j in range(n)]
                equations.append(_unknown_matrix_rows(n, coeffs, field))
    for w, target in containments:
        for f in target.annihilator():
            # f . (P w) = sum_ij f_i P_ij w_j
            coeffs = [(i, j, f[i] * w[j]) for i in range(n) for j in range(n)]
            equations.append(_unknown_matrix_rows(n, coeffs, field))
    solutions = nullspace(equations, n * n, field)
    return [Matrix(field, [s[i * n:(i + 1) * n] for i in range(n)]) for s in solutions]


def simplex_grid(count: int, degree: int = 3) -> List[Tuple[int, ...]]:
    """Integer points c >= 0 with sum(c) <= degree, smallest first.

    A polynomial of total degree <= ``degree`` in ``count`` variables that
    vanishes on all of these points is identically zero.
    """
    points = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(count), total):
            point = [0] * count
            for i in combo:
                point[i] += 1
            points.append(tuple(point))
    return points


def find_invertible(base: Optional[Matrix], directions: Sequence[Matrix],
                    field: FieldSpec, n: int) -> Optional[Tuple[Matrix, Tuple[int, ...]]]:
    """Find an invertible member of ``base + span(directions)``.

    The determinant is a polynomial of total degree <= n in the direction
    coordinates, so checking the simplex grid of that degree decides
    whether an invertible member exists.

    Args:
        base: Affine offset (None for a linear space)
        directions: Spanning directions
        field: Coefficient field
        n: Matrix size

    Returns:
        (invertible matrix, grid point) or None when every member is singular
    """
    if base is None and not directions:
        return None
    start = base if base is not None else Matrix.zeros(field, n, n)
    for point in simplex_grid(len(directions), n):
        candidate = start
        for c, d in zip(point, directions):
            if c:
                candidate = candidate + d.scale(c)
        if not determinant(candidate).is_zero():
            return candidate, point
    return None

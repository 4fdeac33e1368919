"""Tests for exact linear algebra over the model field."""

import pytest

from src.phinmod.error_handler import DimensionError, NotInvariantError
from src.phinmod.linalg import (
    Matrix,
    Subspace,
    echelon_basis,
    find_invertible,
    intertwiner_space,
    lattice,
    nullspace,
    quotient_operator,
    restrict_operator,
    simplex_grid,
    solve_affine,
)


def test_determinant_and_inverse(field):
    """Test det and inverse on a matrix with a non-rational entry."""
    u = field.uniformizer
    m = Matrix(field, [[u, 1, 0], [0, 1, 0], [2, 0, 1]])
    assert m.determinant() == u
    assert m @ m.inverse() == Matrix.identity(field, 3)


def test_singular_inverse_raises(field):
    """Test that inverting a singular matrix fails loudly."""
    m = Matrix(field, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert m.determinant().is_zero()
    assert m.rank() == 2
    with pytest.raises(DimensionError):
        m.inverse()


def test_determinant_needs_row_swap(field):
    """Test elimination when the leading entry vanishes."""
    m = Matrix(field, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert m.determinant() == -1


def test_apply_and_columns(field):
    """Test that [T]_ij is the e_i coefficient of T(e_j)."""
    m = Matrix(field, [[1, 2, 0], [0, 1, 0], [0, 0, 3]])
    e2 = (field.zero, field.one, field.zero)
    assert m.apply(e2) == m.column(1)
    assert m.column(1) == (2, 1, 0)


def test_nullspace_and_solve(field):
    """Test homogeneous and affine solving."""
    rows = [[field.element(x) for x in r] for r in [[1, 1, 0], [0, 0, 1]]]
    null = nullspace(rows, 3, field)
    assert null == [(-1, 1, 0)]
    x, null = solve_affine(rows, [field.element(2), field.element(5)], 3, field)
    assert x == (2, 0, 5)
    inconsistent, _ = solve_affine(
        [[field.one, field.zero], [field.one, field.zero]], [field.one, field.zero], 2, field
    )
    assert inconsistent is None


class TestSubspace:

    def test_echelon_basis_is_canonical(self, field):
        """Test that different spanning sets give equal subspaces."""
        a = echelon_basis(field, [[1, 1, 0], [0, 1, 0]])
        b = echelon_basis(field, [[2, 0, 0], [3, 5, 0], [1, 1, 0]])
        assert a == b
        assert a == Subspace.coordinate(field, 3, [1, 2])

    def test_lattice_operations(self, field):
        """Test intersection, sum and containment."""
        a = Subspace.coordinate(field, 3, [1, 2])
        b = echelon_basis(field, [[0, 1, 1], [1, 0, 0]])
        meet = lattice(a, b, "intersect")
        assert meet == Subspace.coordinate(field, 3, [1])
        assert lattice(a, b, "sum") == Subspace.full(field, 3)
        assert lattice(a, meet, "contains")
        assert not lattice(meet, a, "contains")
        with pytest.raises(ValueError):
            lattice(a, b, "union")

    def test_mixed_dimensions_refused(self, field):
        """Test that vectors of different lengths are refused."""
        with pytest.raises(DimensionError):
            echelon_basis(field, [[1, 0], [1, 0, 0]])

    def test_image_and_invariance(self, field):
        """Test images under a matrix and invariance."""
        N = Matrix(field, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        e1 = Subspace.coordinate(field, 3, [1])
        assert e1.image(N) == Subspace.coordinate(field, 3, [2])
        assert Subspace.coordinate(field, 3, [2, 3]).is_invariant(N)
        assert not e1.is_invariant(N)


def test_restrict_and_quotient(field):
    """Test the induced operators on an invariant line and its quotient."""
    phi = Matrix(field, [[2, 0, 0], [1, 2, 0], [0, 0, 5]])
    u = Subspace.coordinate(field, 3, [2, 3])
    restricted = restrict_operator(phi, u)
    assert restricted == Matrix(field, [[2, 0], [0, 5]])
    assert quotient_operator(phi, u) == Matrix(field, [[2]])
    with pytest.raises(NotInvariantError):
        restrict_operator(phi, Subspace.coordinate(field, 3, [1]))


def test_intertwiner_space_of_diagonal(field):
    """Test that the commutant of a regular diagonal matrix is diagonal."""
    d = Matrix.diagonal(field, [1, 2, 3])
    basis = intertwiner_space([(d, d)])
    assert len(basis) == 3
    assert all(P[i, j].is_zero() for P in basis for i in range(3) for j in range(3) if i != j)


def test_intertwiner_space_with_containment(field):
    """Test the extra condition P w in S."""
    identity = Matrix.identity(field, 3)
    line = Subspace.coordinate(field, 3, [1])
    e1 = (field.one, field.zero, field.zero)
    basis = intertwiner_space([(identity, identity)], [(e1, line)])
    # first column in E e1: 9 - 2 free entries
    assert len(basis) == 7


def test_simplex_grid():
    """Test the grid used to decide invertibility."""
    grid = simplex_grid(2, 3)
    assert grid[0] == (0, 0)
    assert len(grid) == 10
    assert all(sum(p) <= 3 for p in grid)


def test_find_invertible(field):
    """Test the invertibility search on a pencil."""
    e11 = Matrix.unit(field, 3, 0, 0)
    e22 = Matrix.unit(field, 3, 1, 1)
    e33 = Matrix.unit(field, 3, 2, 2)
    found = find_invertible(None, [e11, e22, e33], field, 3)
    assert found is not None
    assert not found[0].determinant().is_zero()
    assert find_invertible(None, [e11, e22], field, 3) is None
    assert find_invertible(None, [], field, 3) is None
